#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "chasekit/analysis.hpp"
#include "chasekit/chase.hpp"
#include "chasekit/errors.hpp"
#include "chasekit/homomorphism.hpp"
#include "chasekit/instance.hpp"
#include "chasekit/rule.hpp"
#include "chasekit/skolem.hpp"
#include "chasekit/term.hpp"

namespace chasekit {

namespace detail {

// Width of the preorder layout of the complete m-ary tree of the given
// depth: sum of m^i for i in [0, depth].
inline std::size_t window_width(std::size_t m, std::size_t depth) {
  std::size_t width = 0;
  std::size_t level = 1;
  for (std::size_t i = 0; i <= depth; ++i) {
    width += level;
    level *= m;
  }
  return width;
}

// Preorder paths (child index sequences) of the complete m-ary tree of the
// given depth; the j-th path is the node stored at slot j of a window.
inline std::vector<std::vector<std::size_t>> preorder_paths(
    std::size_t m, std::size_t depth) {
  std::vector<std::vector<std::size_t>> out{{}};
  if (depth == 0) return out;
  for (std::size_t child = 0; child < m; ++child) {
    for (auto tail : preorder_paths(m, depth - 1)) {
      tail.insert(tail.begin(), child);
      out.push_back(std::move(tail));
    }
  }
  return out;
}

// 0-based slot of a tree path within the preorder layout at the given depth.
inline std::size_t path_slot(std::size_t m, std::size_t depth,
                             const std::vector<std::size_t>& path,
                             std::size_t from = 0) {
  if (from == path.size()) return 0;
  std::size_t child_width = window_width(m, depth - 1);
  return 1 + path[from] * child_width + path_slot(m, depth - 1, path, from + 1);
}

}  // namespace detail

// Parameters of the term-to-tuple encoding used by the rewrite: terms of
// height at most H over function symbols of arity at most m are laid out as
// the preorder of a depth-H complete m-ary tree, blanks filling the unused
// slots. l is the tuple width; s the width of one depth-(H-1) child window.
struct EncodingParams {
  std::size_t height = 0;  // H
  std::size_t max_fn_arity = 0;  // m
  std::size_t tuple_width = 1;  // l
  std::size_t child_width = 0;  // s
  std::map<std::string, Term> func_constants;        // symbol name -> constant
  std::map<std::string, SkolemSymbol> constant_symbols;  // constant name -> symbol

  // Builds parameters for a Skolem signature, minting one fresh constant per
  // function symbol. Minted names may not collide with the given constants.
  static EncodingParams create(std::size_t height,
                               const std::vector<SkolemSymbol>& signature,
                               const std::set<Term>& user_constants = {}) {
    EncodingParams p;
    p.height = height;
    for (const SkolemSymbol& f : signature) {
      p.max_fn_arity = std::max(p.max_fn_arity, f.arity);
    }
    p.tuple_width = detail::window_width(p.max_fn_arity, height);
    p.child_width =
        p.max_fn_arity == 0
            ? 0
            : height == 0 ? 0
                          : detail::window_width(p.max_fn_arity, height - 1);
    if (p.max_fn_arity >= 1 &&
        (p.tuple_width - 1) % p.max_fn_arity != 0) {
      throw std::logic_error("encoding widths are inconsistent");
    }
    for (const SkolemSymbol& f : signature) {
      if (p.func_constants.count(f.name)) {
        throw std::invalid_argument("duplicate function symbol " + f.name);
      }
      std::string name = "c_" + f.name;
      if (user_constants.count(Term::constant(name))) {
        throw std::invalid_argument(
            "constant " + name +
            " collides with the reserved function-constant namespace");
      }
      p.func_constants.emplace(f.name, Term::constant(name));
      p.constant_symbols.emplace(name, f);
    }
    return p;
  }
};

namespace detail {

inline void encode_window(const Term& t, std::size_t depth,
                          const EncodingParams& p, std::vector<Term>& out) {
  std::size_t width = window_width(p.max_fn_arity, depth);
  if (t.is_variable()) {
    throw std::invalid_argument("cannot encode a non-ground term");
  }
  if (t.is_func()) {
    SkolemSymbol sym = t.symbol();
    auto it = p.func_constants.find(sym.name);
    if (it == p.func_constants.end()) {
      throw std::invalid_argument("function symbol " + sym.name +
                                  " is not in the encoding signature");
    }
    if (sym.arity > p.max_fn_arity || (depth == 0 && sym.arity > 0)) {
      throw std::invalid_argument(
          "term too large: encoding would exceed the tuple width");
    }
    out.push_back(it->second);
    if (depth == 0) return;
    std::size_t child_w = window_width(p.max_fn_arity, depth - 1);
    for (const Term& arg : t.args()) encode_window(arg, depth - 1, p, out);
    for (std::size_t c = sym.arity; c < p.max_fn_arity; ++c) {
      out.insert(out.end(), child_w, Term::blank());
    }
    return;
  }
  // Constant or labeled null leaf.
  if (t.is_variable()) {
    throw std::invalid_argument("cannot encode a non-ground term");
  }
  if (t.is_blank()) {
    throw std::invalid_argument("cannot encode the reserved blank");
  }
  if (t.is_constant() && p.constant_symbols.count(t.name())) {
    throw std::invalid_argument(
        "constant " + t.name() +
        " collides with the reserved function-constant namespace");
  }
  out.push_back(t);
  out.insert(out.end(), width - 1, Term::blank());
}

inline Term decode_window(const std::vector<Term>& tuple, std::size_t offset,
                          std::size_t depth, const EncodingParams& p) {
  const Term& root = tuple[offset];
  if (root.is_blank()) {
    throw MalformedEncoding("blank at a term root slot");
  }
  if (root.is_variable() || root.is_func()) {
    throw MalformedEncoding("tuple slots must be constants or nulls");
  }
  std::size_t width = window_width(p.max_fn_arity, depth);
  auto sym_it = root.is_constant() ? p.constant_symbols.find(root.name())
                                   : p.constant_symbols.end();
  if (sym_it == p.constant_symbols.end()) {
    for (std::size_t i = 1; i < width; ++i) {
      if (!tuple[offset + i].is_blank()) {
        throw MalformedEncoding("trailing symbols after a leaf");
      }
    }
    return root;
  }
  const SkolemSymbol& sym = sym_it->second;
  if (depth == 0) {
    if (sym.arity > 0) {
      throw MalformedEncoding("function symbol truncated at a leaf slot");
    }
    return Term::func(sym, {});
  }
  std::size_t child_w = window_width(p.max_fn_arity, depth - 1);
  std::vector<Term> args;
  for (std::size_t c = 0; c < p.max_fn_arity; ++c) {
    std::size_t child_offset = offset + 1 + c * child_w;
    if (c < sym.arity) {
      args.push_back(decode_window(tuple, child_offset, depth - 1, p));
    } else {
      for (std::size_t i = 0; i < child_w; ++i) {
        if (!tuple[child_offset + i].is_blank()) {
          throw MalformedEncoding("symbols beyond the arity of " + sym.name);
        }
      }
    }
  }
  return Term::func(sym, std::move(args));
}

}  // namespace detail

// Encodes a ground term of height at most H as its l-tuple.
inline std::vector<Term> encode_term(const Term& t, const EncodingParams& p) {
  std::vector<Term> out;
  out.reserve(p.tuple_width);
  detail::encode_window(t, p.height, p, out);
  return out;
}

// Decodes an l-tuple back to the ground term it encodes.
inline Term decode_tuple(const std::vector<Term>& tuple,
                         const EncodingParams& p) {
  if (tuple.size() != p.tuple_width) {
    throw MalformedEncoding("tuple width " + std::to_string(tuple.size()) +
                            " does not match the encoding width " +
                            std::to_string(p.tuple_width));
  }
  return detail::decode_window(tuple, 0, p.height, p);
}

namespace detail {

// Deterministic fresh component-variable names: base_1, base_2, ... with a
// trailing underscore appended while a rule variable already owns the name.
inline Term component_variable(const std::string& base, std::size_t index,
                               const std::set<std::string>& rule_vars) {
  std::string name = base + "_" + std::to_string(index);
  while (rule_vars.count(name)) name += "_";
  return Term::variable(name);
}

inline std::set<std::string> rule_variable_names(const Rule& rule) {
  std::set<std::string> names;
  for (const Term& v : variables_in_order(rule.body())) names.insert(v.name());
  for (const Term& v : variables_in_order(rule.head())) names.insert(v.name());
  return names;
}

}  // namespace detail

// The per-term tuple pattern used when translating a rule. Constants encode
// as themselves; in a rule with existentials a frontier variable occupies the
// slots of the depth-(H-1) subwindow (tree-path aligned, blanks forced at
// depth-H slots), an existential variable becomes its function constant
// followed by the frontier subwindows, and every other variable spreads over
// the full tuple width.
inline std::vector<Term> tau(const Term& t, const Rule& rule,
                             const EncodingParams& p) {
  if (t.is_constant() || t.is_null()) {
    return encode_term(t, p);
  }
  if (!t.is_variable()) {
    throw std::invalid_argument("rules contain only constants and variables");
  }
  std::set<std::string> rule_vars = detail::rule_variable_names(rule);
  const std::vector<Term>& frontier = rule.frontier();
  bool is_frontier =
      std::find(frontier.begin(), frontier.end(), t) != frontier.end();
  bool is_existential =
      std::find(rule.existentials().begin(), rule.existentials().end(), t) !=
      rule.existentials().end();

  if (!rule.has_existentials() || (!is_frontier && !is_existential)) {
    std::vector<Term> out;
    out.reserve(p.tuple_width);
    for (std::size_t i = 1; i <= p.tuple_width; ++i) {
      out.push_back(detail::component_variable(t.name(), i, rule_vars));
    }
    return out;
  }
  if (is_frontier) {
    if (p.height == 0) {
      throw std::invalid_argument(
          "height 0 cannot encode the terms an existential rule introduces");
    }
    std::vector<Term> out(p.tuple_width, Term::blank());
    auto paths = detail::preorder_paths(p.max_fn_arity, p.height - 1);
    for (std::size_t j = 0; j < paths.size(); ++j) {
      std::size_t slot = detail::path_slot(p.max_fn_arity, p.height, paths[j]);
      out[slot] = detail::component_variable(t.name(), j + 1, rule_vars);
    }
    return out;
  }
  // An existential needs its Skolem symbol, which is named after the rule's
  // position in the ontology; use the rule-index overload.
  throw std::invalid_argument(
      "tau for an existential variable needs the rule index");
}

// Variant used by the rewrite: the rule's 1-based index names the Skolem
// symbol an existential variable maps to.
inline std::vector<Term> tau(const Term& t, const Rule& rule,
                             std::size_t rule_index_1based,
                             const EncodingParams& p) {
  bool is_existential =
      std::find(rule.existentials().begin(), rule.existentials().end(), t) !=
      rule.existentials().end();
  if (!t.is_variable() || !is_existential) return tau(t, rule, p);

  std::set<std::string> rule_vars = detail::rule_variable_names(rule);
  auto it = p.func_constants.find(
      skolem_symbol_name(rule_index_1based, t.name()));
  if (it == p.func_constants.end()) {
    throw std::invalid_argument("existential " + t.name() +
                                " has no function constant in the parameters");
  }
  if (p.height == 0 && !rule.frontier().empty()) {
    throw std::invalid_argument(
        "height 0 cannot encode the terms an existential rule introduces");
  }
  std::vector<Term> out;
  out.reserve(p.tuple_width);
  out.push_back(it->second);
  for (const Term& x : rule.frontier()) {
    for (std::size_t j = 1; j <= p.child_width; ++j) {
      out.push_back(detail::component_variable(x.name(), j, rule_vars));
    }
  }
  if (out.size() > p.tuple_width) {
    throw std::invalid_argument(
        "frontier wider than the parameters' maximum function arity");
  }
  out.insert(out.end(), p.tuple_width - out.size(), Term::blank());
  return out;
}

struct NormalizeResult {
  RuleOntology ontology;
  // Original database relation -> renamed input relation, for rewriting the
  // relation names of input fact files.
  std::map<std::string, std::string> fact_renaming;
};

namespace detail {

inline std::string fresh_name(std::string base,
                              const std::set<std::string>& taken) {
  while (taken.count(base)) base += "_";
  return base;
}

}  // namespace detail

// Makes an ontology normal: any database relation that is also a query
// relation or occurs in a rule head is renamed in the database schema, and a
// copy rule R_in(x) -> R(x) feeds the old symbol. Copy rules come first so
// existing rules keep their positions relative to each other.
inline NormalizeResult normalize(const RuleOntology& ontology) {
  std::set<std::string> heads;
  for (const Rule& r : ontology.rules()) {
    for (const Atom& a : r.head()) heads.insert(a.relation());
  }
  std::set<std::string> taken;
  for (const auto& [name, arity] : ontology.full_schema().relations()) {
    (void)arity;
    taken.insert(name);
  }

  NormalizeResult result;
  Schema new_db;
  std::vector<Rule> copy_rules;
  for (const auto& [relation, arity] : ontology.db_schema().relations()) {
    bool clash = ontology.query_schema().contains(relation) ||
                 heads.count(relation) != 0;
    if (!clash) {
      new_db.declare(relation, arity);
      continue;
    }
    std::string renamed = detail::fresh_name(relation + "_in", taken);
    taken.insert(renamed);
    new_db.declare(renamed, arity);
    result.fact_renaming.emplace(relation, renamed);
    std::vector<Term> vars;
    for (std::size_t i = 1; i <= arity; ++i) {
      vars.push_back(Term::variable("X" + std::to_string(i)));
    }
    copy_rules.emplace_back(std::vector<Atom>{Atom(renamed, vars)},
                            std::vector<Atom>{Atom(relation, vars)});
  }
  std::vector<Rule> rules = std::move(copy_rules);
  rules.insert(rules.end(), ontology.rules().begin(), ontology.rules().end());
  result.ontology =
      RuleOntology(std::move(rules), std::move(new_db),
                   ontology.query_schema());
  return result;
}

struct RewriteOutput {
  RuleOntology ontology;
  // Original relation symbol -> starred symbol of arity l * arity(R). The
  // identity when the input has no function symbols at all.
  std::map<std::string, std::string> symbol_map;
  EncodingParams params;
};

namespace detail {

inline std::vector<Term> numbered_variables(const std::string& base,
                                            std::size_t count) {
  std::vector<Term> out;
  out.reserve(count);
  for (std::size_t i = 1; i <= count; ++i) {
    out.push_back(Term::variable(base + std::to_string(i)));
  }
  return out;
}

}  // namespace detail

// Compiles a height-H-bounded normal ontology into one with the same
// database and query behaviour whose rule set is weakly acyclic. Ground
// terms travel as l-tuples through starred copies of the relations; fresh
// Dom/Map relations decode the tuples back into the query relations, with
// existentials confined to the tuple-to-null allocation rules.
inline RewriteOutput build_rewrite(const RuleOntology& ontology,
                                   std::size_t height) {
  if (!ontology.is_normal()) {
    throw std::invalid_argument("build_rewrite requires a normal ontology");
  }
  std::vector<SkolemSymbol> signature = skolem_signature(ontology);
  std::set<Term> user_constants = ontology.rule_constants();
  EncodingParams params =
      EncodingParams::create(height, signature, user_constants);
  const std::size_t m = params.max_fn_arity;
  const std::size_t ell = params.tuple_width;

  RewriteOutput out;
  out.params = params;
  if (signature.empty()) {
    // No Skolem symbols at all: the chase never invents terms, so the
    // ontology is already weakly acyclic and the encoding is the identity.
    out.ontology = ontology;
    for (const auto& [relation, arity] : ontology.full_schema().relations()) {
      (void)arity;
      out.symbol_map.emplace(relation, relation);
    }
    return out;
  }
  if (height == 0 && m > 0) {
    throw std::invalid_argument(
        "height 0 cannot encode the terms an existential rule introduces");
  }

  std::set<std::string> taken;
  for (const auto& [name, arity] : ontology.full_schema().relations()) {
    (void)arity;
    taken.insert(name);
  }
  for (const auto& [relation, arity] : ontology.full_schema().relations()) {
    (void)arity;
    std::string starred = detail::fresh_name(relation + "_star", taken);
    taken.insert(starred);
    out.symbol_map.emplace(relation, starred);
  }
  std::string dom_rel = detail::fresh_name("Dom_star", taken);
  taken.insert(dom_rel);
  std::string map_rel = detail::fresh_name("Map", taken);
  taken.insert(map_rel);

  bool has_nullary = false;
  for (const SkolemSymbol& f : signature) has_nullary |= f.arity == 0;
  std::string const_rel;
  if (has_nullary) {
    const_rel = detail::fresh_name("Const_star", taken);
    taken.insert(const_rel);
  }

  std::vector<Rule> rules;

  // Copy-in rules: each database fact becomes its tuple encoding.
  for (const auto& [relation, arity] : ontology.db_schema().relations()) {
    std::vector<Term> vars = detail::numbered_variables("X", arity);
    std::vector<Term> head_terms;
    for (const Term& v : vars) {
      head_terms.push_back(v);
      head_terms.insert(head_terms.end(), ell - 1, Term::blank());
    }
    rules.emplace_back(
        std::vector<Atom>{Atom(relation, vars)},
        std::vector<Atom>{Atom(out.symbol_map.at(relation), head_terms)});
  }

  // Translated rules: every term becomes its tau pattern, every relation its
  // starred copy; existentials disappear into function constants.
  for (std::size_t i = 0; i < ontology.rules().size(); ++i) {
    const Rule& rule = ontology.rules()[i];
    auto translate_atoms = [&](const std::vector<Atom>& atoms) {
      std::vector<Atom> result;
      for (const Atom& atom : atoms) {
        std::vector<Term> tuple;
        for (const Term& t : atom.terms()) {
          std::vector<Term> enc = tau(t, rule, i + 1, params);
          tuple.insert(tuple.end(), enc.begin(), enc.end());
        }
        result.emplace_back(out.symbol_map.at(atom.relation()),
                            std::move(tuple));
      }
      return result;
    };
    rules.emplace_back(translate_atoms(rule.body()),
                       translate_atoms(rule.head()));
  }

  // Domain collection: every tuple seen in a query relation is a candidate
  // for decoding.
  for (const auto& [relation, arity] : ontology.query_schema().relations()) {
    if (arity == 0) continue;
    std::vector<Atom> body_atoms;
    std::vector<Atom> head_atoms;
    std::vector<Term> tuple;
    std::vector<std::vector<Term>> windows;
    for (std::size_t pos = 1; pos <= arity; ++pos) {
      std::vector<Term> window =
          detail::numbered_variables("V" + std::to_string(pos) + "_", ell);
      tuple.insert(tuple.end(), window.begin(), window.end());
      windows.push_back(std::move(window));
    }
    body_atoms.emplace_back(out.symbol_map.at(relation), tuple);
    for (auto& window : windows) {
      head_atoms.emplace_back(dom_rel, std::move(window));
    }
    rules.emplace_back(std::move(body_atoms), std::move(head_atoms));
  }

  // Null allocation: one fresh null per tuple rooted at a positive-arity
  // function constant.
  for (std::size_t i = 0; i < ontology.rules().size(); ++i) {
    const Rule& rule = ontology.rules()[i];
    for (const Term& z : rule.existentials()) {
      SkolemSymbol sym{skolem_symbol_name(i + 1, z.name()),
                       rule.frontier().size()};
      if (sym.arity == 0) continue;
      std::vector<Term> rest = detail::numbered_variables("W", ell - 1);
      std::set<std::string> rest_names;
      for (const Term& w : rest) rest_names.insert(w.name());
      std::vector<Term> dom_terms{params.func_constants.at(sym.name)};
      dom_terms.insert(dom_terms.end(), rest.begin(), rest.end());
      std::vector<Term> map_terms = dom_terms;
      map_terms.push_back(
          Term::variable(detail::fresh_name(z.name(), rest_names)));
      rules.emplace_back(std::vector<Atom>{Atom(dom_rel, dom_terms)},
                         std::vector<Atom>{Atom(map_rel, map_terms)});
    }
  }

  if (has_nullary) {
    // Genuine-constant collection guards tuple self-decoding: without it a
    // nullary function constant would decode to itself instead of a null.
    for (const auto& [relation, arity] : ontology.db_schema().relations()) {
      if (arity == 0) continue;
      std::vector<Term> vars = detail::numbered_variables("X", arity);
      std::vector<Atom> head_atoms;
      for (const Term& v : vars) {
        head_atoms.emplace_back(const_rel, std::vector<Term>{v});
      }
      rules.emplace_back(std::vector<Atom>{Atom(relation, vars)},
                         std::move(head_atoms));
    }
    for (const Term& c : user_constants) {
      rules.emplace_back(std::vector<Atom>{},
                         std::vector<Atom>{Atom(const_rel, {c})});
    }
    for (std::size_t i = 0; i < ontology.rules().size(); ++i) {
      const Rule& rule = ontology.rules()[i];
      for (const Term& z : rule.existentials()) {
        SkolemSymbol sym{skolem_symbol_name(i + 1, z.name()),
                         rule.frontier().size()};
        if (sym.arity != 0) continue;
        std::vector<Term> dom_terms{params.func_constants.at(sym.name)};
        dom_terms.insert(dom_terms.end(), ell - 1, Term::blank());
        std::vector<Term> map_terms = dom_terms;
        map_terms.push_back(Term::variable(z.name()));
        rules.emplace_back(std::vector<Atom>{Atom(dom_rel, dom_terms)},
                           std::vector<Atom>{Atom(map_rel, map_terms)});
      }
    }
  }

  // Constant self-decoding: a tuple holding a lone genuine constant maps to
  // that constant.
  {
    Term x = Term::variable("X");
    std::vector<Term> dom_terms{x};
    dom_terms.insert(dom_terms.end(), ell - 1, Term::blank());
    std::vector<Term> map_terms = dom_terms;
    map_terms.push_back(x);
    std::vector<Atom> body_atoms{Atom(dom_rel, dom_terms)};
    if (has_nullary) {
      body_atoms.emplace_back(const_rel, std::vector<Term>{x});
    }
    rules.emplace_back(std::move(body_atoms),
                       std::vector<Atom>{Atom(map_rel, map_terms)});
  }

  // Decoding: query relations are reconstituted from starred tuples via the
  // allocation map.
  for (const auto& [relation, arity] : ontology.query_schema().relations()) {
    std::vector<Atom> body_atoms;
    std::vector<Term> tuple;
    std::vector<Term> decoded = detail::numbered_variables("X", arity);
    std::vector<std::vector<Term>> windows;
    for (std::size_t pos = 1; pos <= arity; ++pos) {
      std::vector<Term> window =
          detail::numbered_variables("V" + std::to_string(pos) + "_", ell);
      tuple.insert(tuple.end(), window.begin(), window.end());
      windows.push_back(std::move(window));
    }
    body_atoms.emplace_back(out.symbol_map.at(relation), tuple);
    for (std::size_t pos = 0; pos < arity; ++pos) {
      std::vector<Term> map_terms = windows[pos];
      map_terms.push_back(decoded[pos]);
      body_atoms.emplace_back(map_rel, std::move(map_terms));
    }
    rules.emplace_back(std::move(body_atoms),
                       std::vector<Atom>{Atom(relation, decoded)});
  }

  out.ontology = RuleOntology(std::move(rules), ontology.db_schema(),
                              ontology.query_schema());
  return out;
}

// Pointwise tuple encoding of an instance: R(t1..tn) becomes
// R_star([t1]..[tn]).
inline Instance encode_instance(const Instance& instance,
                                const EncodingParams& params,
                                const std::map<std::string, std::string>& map) {
  Instance out;
  for (const Atom& fact : instance) {
    std::vector<Term> tuple;
    for (const Term& t : fact.terms()) {
      std::vector<Term> enc = encode_term(t, params);
      tuple.insert(tuple.end(), enc.begin(), enc.end());
    }
    out.insert(Atom(map.at(fact.relation()), std::move(tuple)));
  }
  return out;
}

// The schema of starred relation symbols with their widened arities.
inline Schema starred_schema(const RuleOntology& original,
                             const std::map<std::string, std::string>& map,
                             const EncodingParams& params) {
  Schema out;
  for (const auto& [relation, arity] : original.full_schema().relations()) {
    out.declare(map.at(relation), arity * params.tuple_width);
  }
  return out;
}

// Renames fact relations; relations missing from the map pass through.
inline Instance rename_relations(const Instance& instance,
                                 const std::map<std::string, std::string>& map) {
  Instance out;
  for (const Atom& fact : instance) {
    auto it = map.find(fact.relation());
    out.insert(it == map.end() ? fact : Atom(it->second, fact.terms()));
  }
  return out;
}

// Checks that two ontologies agree on one database: their query-schema
// restrictions of the chase are homomorphically equivalent, and (optionally)
// every supplied query gets the same Boolean answer. The second ontology's
// copy of the database is renamed through db_renaming first (the normalize
// step's fact renaming). Guard exhaustion propagates as GuardExhausted.
inline bool verify_equivalence(
    const RuleOntology& o1, const RuleOntology& o2, const Instance& database,
    const std::vector<Query>& queries, const ChaseGuard& guard,
    const std::map<std::string, std::string>& db_renaming = {}) {
  Instance db2 = rename_relations(database, db_renaming);
  Instance w1 = worldview(o1, database, guard);
  Instance w2 = worldview(o2, db2, guard);
  if (!is_hom_equivalent(w1, w2)) return false;
  for (const Query& q : queries) {
    if (entails_bcq(database, o1, q, guard) !=
        entails_bcq(db2, o2, q, guard)) {
      return false;
    }
  }
  return true;
}

}  // namespace chasekit
