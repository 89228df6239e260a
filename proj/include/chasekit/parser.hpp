#pragma once

#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "chasekit/atom.hpp"
#include "chasekit/errors.hpp"
#include "chasekit/instance.hpp"
#include "chasekit/rule.hpp"
#include "chasekit/term.hpp"

namespace chasekit {

// A parsed rule ontology plus the source line of each rule, for diagnostics.
struct SourceOntology {
  RuleOntology ontology;
  std::vector<std::size_t> rule_lines;
};

namespace detail {

enum class TokenKind {
  Name,      // identifier starting with a letter
  Number,    // digit string
  Quoted,    // "..." string constant
  Blank,     // the reserved constant _
  NullLit,   // _:name labeled null
  Star,      // the reserved constant *
  LParen,
  RParen,
  Comma,
  Dot,
  Slash,
  Arrow,     // ->
  Question,  // ?
  ColonDash, // :-
  AtWord,    // @database / @query (text holds the word)
  End,
};

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  std::size_t line = 0;
  std::size_t col = 0;
};

class Lexer {
 public:
  explicit Lexer(const std::string& input) : input_(input) { advance(); }

  const Token& peek() const { return current_; }

  Token next() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& message, std::size_t line,
                         std::size_t col) const {
    throw ParseError(message, line, col);
  }

  bool at_end() const { return pos_ >= input_.size(); }

  char look() const { return input_[pos_]; }

  char take() {
    char c = input_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  static bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
  static bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

  void advance() {
    // Skip whitespace and # comments.
    while (!at_end()) {
      char c = look();
      if (c == '#') {
        while (!at_end() && look() != '\n') take();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        take();
      } else {
        break;
      }
    }
    current_.line = line_;
    current_.col = col_;
    current_.text.clear();
    if (at_end()) {
      current_.kind = TokenKind::End;
      return;
    }
    char c = take();
    switch (c) {
      case '(': current_.kind = TokenKind::LParen; return;
      case ')': current_.kind = TokenKind::RParen; return;
      case ',': current_.kind = TokenKind::Comma; return;
      case '.': current_.kind = TokenKind::Dot; return;
      case '/': current_.kind = TokenKind::Slash; return;
      case '?': current_.kind = TokenKind::Question; return;
      case '*': current_.kind = TokenKind::Star; return;
      case '-':
        if (!at_end() && look() == '>') {
          take();
          current_.kind = TokenKind::Arrow;
          return;
        }
        fail("expected '>' after '-'", current_.line, current_.col);
      case ':':
        if (!at_end() && look() == '-') {
          take();
          current_.kind = TokenKind::ColonDash;
          return;
        }
        fail("expected '-' after ':'", current_.line, current_.col);
      case '@': {
        if (at_end() || !is_name_start(look())) {
          fail("expected a word after '@'", current_.line, current_.col);
        }
        while (!at_end() && is_name_char(look())) current_.text += take();
        current_.kind = TokenKind::AtWord;
        return;
      }
      case '_': {
        if (!at_end() && look() == ':') {
          take();
          if (at_end() || !is_name_char(look())) {
            fail("expected a name after '_:'", current_.line, current_.col);
          }
          while (!at_end() && is_name_char(look())) current_.text += take();
          current_.kind = TokenKind::NullLit;
          return;
        }
        if (!at_end() && is_name_char(look())) {
          fail("identifiers may not start with '_'", current_.line,
               current_.col);
        }
        current_.kind = TokenKind::Blank;
        return;
      }
      case '"': {
        while (!at_end() && look() != '"' && look() != '\n') {
          current_.text += take();
        }
        if (at_end() || look() != '"') {
          fail("unterminated string constant", current_.line, current_.col);
        }
        take();
        if (current_.text.empty()) {
          fail("empty string constant", current_.line, current_.col);
        }
        current_.kind = TokenKind::Quoted;
        return;
      }
      default:
        if (is_digit(c)) {
          current_.text += c;
          while (!at_end() && is_digit(look())) current_.text += take();
          if (!at_end() && is_name_start(look())) {
            fail("a constant may not mix digits and letters without quotes",
                 current_.line, current_.col);
          }
          current_.kind = TokenKind::Number;
          return;
        }
        if (is_name_start(c)) {
          current_.text += c;
          while (!at_end() && is_name_char(look())) current_.text += take();
          current_.kind = TokenKind::Name;
          return;
        }
        fail(std::string("unexpected character '") + c + "'", current_.line,
             current_.col);
    }
  }

  const std::string& input_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  Token current_;
};

inline bool uppercase_initial(const std::string& name) {
  return !name.empty() && std::isupper(static_cast<unsigned char>(name[0]));
}

// Shared arity bookkeeping with positioned errors.
class ArityRegistry {
 public:
  void record(const std::string& kind, const std::string& name,
              std::size_t arity, std::size_t line, std::size_t col) {
    auto [it, inserted] = arities_.emplace(name, arity);
    if (!inserted && it->second != arity) {
      throw ParseError(kind + " " + name + " used with arity " +
                           std::to_string(arity) + " but previously " +
                           std::to_string(it->second),
                       line, col);
    }
  }

  const std::map<std::string, std::size_t>& all() const { return arities_; }

 private:
  std::map<std::string, std::size_t> arities_;
};

class Parser {
 public:
  explicit Parser(const std::string& input) : lexer_(input) {}

  SourceOntology parse_ontology() {
    std::vector<Rule> rules;
    std::vector<std::size_t> rule_lines;
    while (lexer_.peek().kind != TokenKind::End) {
      if (lexer_.peek().kind == TokenKind::AtWord) {
        parse_declaration();
        continue;
      }
      rule_lines.push_back(lexer_.peek().line);
      rules.push_back(parse_rule());
    }
    Schema db;
    for (const auto& [name, arity] : db_decl_) db.declare(name, arity);
    Schema query;
    for (const auto& [name, arity] : query_decl_) query.declare(name, arity);
    SourceOntology out;
    out.ontology = RuleOntology(std::move(rules), std::move(db), std::move(query));
    out.rule_lines = std::move(rule_lines);
    return out;
  }

  Instance parse_facts() {
    Instance out;
    while (lexer_.peek().kind != TokenKind::End) {
      Token start = lexer_.peek();
      Atom fact = parse_atom(/*in_fact=*/true);
      expect(TokenKind::Dot, "expected '.' after a fact");
      if (!fact.is_ground()) {
        throw ParseError("fact is not ground", start.line, start.col);
      }
      out.insert(std::move(fact));
    }
    return out;
  }

  Query parse_query() {
    expect(TokenKind::Question, "a query starts with '?'");
    expect(TokenKind::ColonDash, "expected ':-' after '?'");
    std::vector<Atom> atoms;
    atoms.push_back(parse_atom(/*in_fact=*/false, /*in_query=*/true));
    while (lexer_.peek().kind == TokenKind::Comma) {
      lexer_.next();
      atoms.push_back(parse_atom(/*in_fact=*/false, /*in_query=*/true));
    }
    expect(TokenKind::Dot, "expected '.' at the end of the query");
    if (lexer_.peek().kind != TokenKind::End) {
      fail_here("text after the end of the query");
    }
    return Query(std::move(atoms));
  }

 private:
  [[noreturn]] void fail_at(const Token& t, const std::string& message) const {
    throw ParseError(message, t.line, t.col);
  }

  [[noreturn]] void fail_here(const std::string& message) {
    fail_at(lexer_.peek(), message);
  }

  Token expect(TokenKind kind, const std::string& message) {
    if (lexer_.peek().kind != kind) fail_here(message);
    return lexer_.next();
  }

  void parse_declaration() {
    Token at = lexer_.next();
    std::map<std::string, std::size_t>* target = nullptr;
    if (at.text == "database") {
      target = &db_decl_;
    } else if (at.text == "query") {
      target = &query_decl_;
    } else {
      fail_at(at, "unknown declaration '@" + at.text + "'");
    }
    while (true) {
      Token name = expect(TokenKind::Name, "expected a relation name");
      expect(TokenKind::Slash, "expected '/' in a relation signature");
      Token arity_tok =
          expect(TokenKind::Number, "expected an arity after '/'");
      std::size_t arity = 0;
      try {
        arity = std::stoul(arity_tok.text);
      } catch (const std::exception&) {
        fail_at(arity_tok, "arity out of range");
      }
      relations_.record("relation", name.text, arity, name.line, name.col);
      auto [it, inserted] = target->emplace(name.text, arity);
      if (!inserted && it->second != arity) {
        fail_at(name, "relation " + name.text + " declared twice with "
                          "different arities");
      }
      if (lexer_.peek().kind != TokenKind::Comma) break;
      lexer_.next();
    }
  }

  Rule parse_rule() {
    std::vector<Atom> body;
    if (lexer_.peek().kind != TokenKind::Arrow) {
      body.push_back(parse_atom(false));
      while (lexer_.peek().kind == TokenKind::Comma) {
        lexer_.next();
        body.push_back(parse_atom(false));
      }
    }
    Token arrow = expect(TokenKind::Arrow, "expected '->' in a rule");
    std::vector<Term> declared;
    if (lexer_.peek().kind == TokenKind::Name &&
        lexer_.peek().text == "exists") {
      lexer_.next();
      while (true) {
        Token var = expect(TokenKind::Name, "expected a variable after "
                                            "'exists'");
        if (!uppercase_initial(var.text)) {
          fail_at(var, "existential variables start with an uppercase letter");
        }
        declared.push_back(Term::variable(var.text));
        if (lexer_.peek().kind != TokenKind::Comma) break;
        lexer_.next();
      }
      expect(TokenKind::Dot, "expected '.' after the existential variables");
    }
    std::vector<Atom> head;
    head.push_back(parse_atom(false));
    while (lexer_.peek().kind == TokenKind::Comma) {
      lexer_.next();
      head.push_back(parse_atom(false));
    }
    expect(TokenKind::Dot, "expected '.' at the end of a rule");

    // Existential declarations must be exactly the head-only variables.
    std::set<Term> body_vars;
    for (const Term& v : detail::variables_in_order(body)) body_vars.insert(v);
    std::set<Term> head_vars;
    for (const Term& v : detail::variables_in_order(head)) head_vars.insert(v);
    std::set<Term> declared_set(declared.begin(), declared.end());
    for (const Term& v : declared) {
      if (body_vars.count(v)) {
        fail_at(arrow, "existential variable " + v.name() +
                           " also occurs in the body");
      }
      if (!head_vars.count(v)) {
        fail_at(arrow, "existential variable " + v.name() +
                           " does not occur in the head");
      }
    }
    for (const Term& v : head_vars) {
      if (!body_vars.count(v) && !declared_set.count(v)) {
        fail_at(arrow, "variable " + v.name() +
                           " occurs only in the head; declare it with "
                           "'exists'");
      }
    }
    return Rule(std::move(body), std::move(head));
  }

  Atom parse_atom(bool in_fact, bool in_query = false) {
    Token name = lexer_.next();
    if (name.kind != TokenKind::Name) {
      fail_at(name, "expected a relation name");
    }
    if (name.text == "exists") {
      fail_at(name, "'exists' is a reserved word");
    }
    std::vector<Term> terms;
    if (lexer_.peek().kind == TokenKind::LParen) {
      lexer_.next();
      terms.push_back(parse_term(in_fact, in_query));
      while (lexer_.peek().kind == TokenKind::Comma) {
        lexer_.next();
        terms.push_back(parse_term(in_fact, in_query));
      }
      expect(TokenKind::RParen, "expected ')' after the atom's terms");
    }
    relations_.record("relation", name.text, terms.size(), name.line,
                      name.col);
    return Atom(name.text, std::move(terms));
  }

  Term parse_term(bool in_fact, bool in_query) {
    Token t = lexer_.next();
    switch (t.kind) {
      case TokenKind::Blank:
        return Term::blank();
      case TokenKind::Star:
        fail_at(t, "'*' is a reserved constant");
      case TokenKind::Number:
        return Term::constant(t.text);
      case TokenKind::Quoted:
        if (t.text == "*") fail_at(t, "'*' is a reserved constant");
        return Term::constant(t.text);
      case TokenKind::NullLit:
        if (!in_fact) {
          fail_at(t, "null literals are only allowed in fact files");
        }
        return Term::null(t.text);
      case TokenKind::Name: {
        if (t.text == "exists") fail_at(t, "'exists' is a reserved word");
        if (uppercase_initial(t.text)) {
          if (in_fact) fail_at(t, "fact is not ground");
          return Term::variable(t.text);
        }
        if (lexer_.peek().kind == TokenKind::LParen) {
          if (!in_fact) {
            fail_at(t, in_query ? "function terms are not allowed in queries"
                                : "function terms are not allowed in rules");
          }
          lexer_.next();
          std::vector<Term> args;
          if (lexer_.peek().kind != TokenKind::RParen) {
            args.push_back(parse_term(in_fact, in_query));
            while (lexer_.peek().kind == TokenKind::Comma) {
              lexer_.next();
              args.push_back(parse_term(in_fact, in_query));
            }
          }
          expect(TokenKind::RParen, "expected ')' after function arguments");
          std::size_t arity = args.size();
          functions_.record("function", t.text, arity, t.line, t.col);
          return Term::func(SkolemSymbol{t.text, arity}, std::move(args));
        }
        return Term::constant(t.text);
      }
      default:
        fail_at(t, "expected a term");
    }
  }

  Lexer lexer_;
  ArityRegistry relations_;
  ArityRegistry functions_;
  std::map<std::string, std::size_t> db_decl_;
  std::map<std::string, std::size_t> query_decl_;
};

}  // namespace detail

// Parses an ontology document: @database/@query declarations and rules.
inline SourceOntology parse_ontology(const std::string& text) {
  return detail::Parser(text).parse_ontology();
}

// Parses a fact file: ground atoms (function terms and _:nulls allowed),
// one '.'-terminated per line, set semantics.
inline Instance parse_facts(const std::string& text) {
  return detail::Parser(text).parse_facts();
}

// Parses a Boolean query "? :- atom, ..., atom.".
inline Query parse_query(const std::string& text) {
  return detail::Parser(text).parse_query();
}

}  // namespace chasekit
