#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace chasekit {

// A Skolem function symbol: a name plus a fixed arity.
struct SkolemSymbol {
  std::string name;
  std::size_t arity = 0;

  friend bool operator==(const SkolemSymbol& a, const SkolemSymbol& b) {
    return a.name == b.name && a.arity == b.arity;
  }
  friend bool operator<(const SkolemSymbol& a, const SkolemSymbol& b) {
    return a.name != b.name ? a.name < b.name : a.arity < b.arity;
  }
};

// An immutable first-order term. Constants, variables, labeled nulls and
// Skolem-function symbols live in disjoint name spaces, distinguished by the
// constructor tag. Copies are cheap (shared structure).
class Term {
 public:
  enum class Kind { Constant, Variable, Null, Func };

  Term() : Term(constant("_uninit")) {}

  static Term constant(std::string name) {
    return Term(Kind::Constant, std::move(name), {});
  }
  static Term variable(std::string name) {
    return Term(Kind::Variable, std::move(name), {});
  }
  static Term null(std::string name) {
    return Term(Kind::Null, std::move(name), {});
  }
  static Term func(const SkolemSymbol& symbol, std::vector<Term> args) {
    if (args.size() != symbol.arity) {
      throw std::invalid_argument("function symbol " + symbol.name +
                                  " expects " + std::to_string(symbol.arity) +
                                  " arguments, got " +
                                  std::to_string(args.size()));
    }
    return Term(Kind::Func, symbol.name, std::move(args));
  }

  // Reserved constants: the tuple-filler blank and the fresh critical-database
  // constant. Both are outside the lexical space of user-written constants.
  static const Term& blank() {
    static const Term t = constant("_");
    return t;
  }
  static const Term& star() {
    static const Term t = constant("*");
    return t;
  }

  Kind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  const std::vector<Term>& args() const { return node_->args; }

  bool is_constant() const { return kind() == Kind::Constant; }
  bool is_variable() const { return kind() == Kind::Variable; }
  bool is_null() const { return kind() == Kind::Null; }
  bool is_func() const { return kind() == Kind::Func; }
  bool is_blank() const { return is_constant() && name() == "_"; }

  SkolemSymbol symbol() const {
    if (!is_func()) throw std::logic_error("symbol() on a non-function term");
    return SkolemSymbol{name(), args().size()};
  }

  // True when no variable occurs anywhere in the term.
  bool is_ground() const {
    if (is_variable()) return false;
    for (const Term& a : args()) {
      if (!a.is_ground()) return false;
    }
    return true;
  }

  friend bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind() || a.name() != b.name()) return false;
    return a.args() == b.args();
  }
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }
  friend bool operator<(const Term& a, const Term& b) {
    return compare(a, b) < 0;
  }

  // Canonical total order: constructor tag, then symbol name, then arguments.
  static int compare(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return 0;
    if (a.kind() != b.kind()) {
      return static_cast<int>(a.kind()) < static_cast<int>(b.kind()) ? -1 : 1;
    }
    if (int c = a.name().compare(b.name()); c != 0) return c < 0 ? -1 : 1;
    const auto& xs = a.args();
    const auto& ys = b.args();
    for (std::size_t i = 0; i < std::min(xs.size(), ys.size()); ++i) {
      if (int c = compare(xs[i], ys[i]); c != 0) return c;
    }
    if (xs.size() != ys.size()) return xs.size() < ys.size() ? -1 : 1;
    return 0;
  }

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::vector<Term> args;
  };

  Term(Kind kind, std::string name, std::vector<Term> args)
      : node_(std::make_shared<const Node>(
            Node{kind, std::move(name), std::move(args)})) {}

  std::shared_ptr<const Node> node_;
};

// Number of function applications on the deepest path of a ground term.
// Constants and labeled nulls have height 0; a nullary function term has
// height 1 (one level above constants).
inline std::size_t term_height(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Constant:
    case Term::Kind::Null:
      return 0;
    case Term::Kind::Variable:
      throw std::invalid_argument("term_height: term is not ground");
    case Term::Kind::Func: {
      std::size_t deepest = 0;
      for (const Term& a : t.args()) {
        deepest = std::max(deepest, term_height(a));
      }
      return deepest + 1;
    }
  }
  throw std::logic_error("unreachable");
}

// Collects every Skolem symbol occurring in a term.
inline void collect_symbols(const Term& t, std::vector<SkolemSymbol>& out) {
  if (t.is_func()) {
    out.push_back(t.symbol());
    for (const Term& a : t.args()) collect_symbols(a, out);
  }
}

}  // namespace chasekit
