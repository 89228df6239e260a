#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "chasekit/atom.hpp"
#include "chasekit/errors.hpp"
#include "chasekit/term.hpp"

namespace chasekit {

namespace detail {

// Sorts atoms canonically and removes duplicates (set semantics).
inline std::vector<Atom> normalize_atom_set(std::vector<Atom> atoms) {
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  return atoms;
}

inline void collect_variables(const Term& t, std::vector<Term>& out,
                              std::set<Term>& seen) {
  if (t.is_variable()) {
    if (seen.insert(t).second) out.push_back(t);
    return;
  }
  for (const Term& a : t.args()) collect_variables(a, out, seen);
}

// Variables of an atom list in first-occurrence order (atoms in stored
// order, arguments left to right).
inline std::vector<Term> variables_in_order(const std::vector<Atom>& atoms) {
  std::vector<Term> out;
  std::set<Term> seen;
  for (const Atom& atom : atoms) {
    for (const Term& t : atom.terms()) collect_variables(t, out, seen);
  }
  return out;
}

}  // namespace detail

// An existential rule body -> exists z . head. The body may be empty, the
// head may not. Variables are rule-local. The frontier (variables shared by
// body and head) is kept in first-body-occurrence order over the canonically
// sorted body; head-only variables are the existentials.
class Rule {
 public:
  Rule(std::vector<Atom> body, std::vector<Atom> head)
      : body_(detail::normalize_atom_set(std::move(body))),
        head_(detail::normalize_atom_set(std::move(head))) {
    if (head_.empty()) {
      throw std::invalid_argument("a rule must have a nonempty head");
    }
    for (const Atom& a : body_) {
      for (const Term& t : a.terms()) {
        if (t.is_func()) {
          throw std::invalid_argument(
              "function terms are not allowed in rules");
        }
      }
    }
    for (const Atom& a : head_) {
      for (const Term& t : a.terms()) {
        if (t.is_func()) {
          throw std::invalid_argument(
              "function terms are not allowed in rules");
        }
      }
    }
    std::vector<Term> body_vars = detail::variables_in_order(body_);
    std::vector<Term> head_vars = detail::variables_in_order(head_);
    std::set<Term> head_var_set(head_vars.begin(), head_vars.end());
    std::set<Term> body_var_set(body_vars.begin(), body_vars.end());
    for (const Term& v : body_vars) {
      if (head_var_set.count(v)) frontier_.push_back(v);
    }
    for (const Term& v : head_vars) {
      if (!body_var_set.count(v)) existentials_.push_back(v);
    }
    std::sort(existentials_.begin(), existentials_.end());
  }

  const std::vector<Atom>& body() const { return body_; }
  const std::vector<Atom>& head() const { return head_; }
  const std::vector<Term>& frontier() const { return frontier_; }
  const std::vector<Term>& existentials() const { return existentials_; }
  bool has_existentials() const { return !existentials_.empty(); }

  friend bool operator==(const Rule& a, const Rule& b) {
    return a.body_ == b.body_ && a.head_ == b.head_;
  }
  friend bool operator!=(const Rule& a, const Rule& b) { return !(a == b); }

 private:
  std::vector<Atom> body_;
  std::vector<Atom> head_;
  std::vector<Term> frontier_;
  std::vector<Term> existentials_;
};

// An ontology: a rule sequence plus the database schema D (input relations)
// and the query schema Q (output relations). Relations used in rules but in
// neither D nor Q are auxiliary. Rule order is significant (it names Skolem
// symbols), so it is preserved.
class RuleOntology {
 public:
  RuleOntology() = default;
  RuleOntology(std::vector<Rule> rules, Schema db, Schema query)
      : rules_(std::move(rules)),
        db_(std::move(db)),
        query_(std::move(query)) {
    // One arity per relation name across rules and both schemas.
    Schema all = db_;
    for (const auto& [name, arity] : query_.relations()) {
      all.declare(name, arity);
    }
    for (const Rule& r : rules_) {
      for (const Atom& a : r.body()) all.declare(a.relation(), a.arity());
      for (const Atom& a : r.head()) all.declare(a.relation(), a.arity());
    }
    full_ = std::move(all);
  }

  const std::vector<Rule>& rules() const { return rules_; }
  const Schema& db_schema() const { return db_; }
  const Schema& query_schema() const { return query_; }

  // Every relation mentioned by the ontology, with arities.
  const Schema& full_schema() const { return full_; }

  // Normal: D and Q are disjoint and no database relation occurs in a head.
  bool is_normal() const {
    for (const auto& [name, arity] : db_.relations()) {
      (void)arity;
      if (query_.contains(name)) return false;
    }
    for (const Rule& r : rules_) {
      for (const Atom& a : r.head()) {
        if (db_.contains(a.relation())) return false;
      }
    }
    return true;
  }

  // Constants occurring in the rule set.
  std::set<Term> rule_constants() const {
    std::set<Term> out;
    for (const Rule& r : rules_) {
      for (const Atom& a : r.body()) {
        for (const Term& t : a.terms()) {
          if (t.is_constant()) out.insert(t);
        }
      }
      for (const Atom& a : r.head()) {
        for (const Term& t : a.terms()) {
          if (t.is_constant()) out.insert(t);
        }
      }
    }
    return out;
  }

  friend bool operator==(const RuleOntology& a, const RuleOntology& b) {
    return a.rules_ == b.rules_ && a.db_ == b.db_ && a.query_ == b.query_;
  }
  friend bool operator!=(const RuleOntology& a, const RuleOntology& b) {
    return !(a == b);
  }

 private:
  std::vector<Rule> rules_;
  Schema db_;
  Schema query_;
  Schema full_;
};

// A Boolean conjunctive query: a set of atoms over constants and variables,
// all variables read existentially.
struct Query {
  std::vector<Atom> atoms;

  explicit Query(std::vector<Atom> a = {})
      : atoms(detail::normalize_atom_set(std::move(a))) {}

  friend bool operator==(const Query& a, const Query& b) {
    return a.atoms == b.atoms;
  }
};

}  // namespace chasekit
