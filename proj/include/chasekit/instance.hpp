#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "chasekit/atom.hpp"
#include "chasekit/errors.hpp"
#include "chasekit/term.hpp"

namespace chasekit {

// A finite set of ground atoms with set semantics and canonical iteration
// order. Inserting the same relation name at two arities is an error.
class Instance {
 public:
  Instance() = default;
  explicit Instance(const std::vector<Atom>& facts) {
    for (const Atom& a : facts) insert(a);
  }

  bool insert(const Atom& fact) {
    if (!fact.is_ground()) {
      throw std::invalid_argument("instances hold ground atoms only: " +
                                  fact.relation());
    }
    auto [it, inserted] = arities_.emplace(fact.relation(), fact.arity());
    if (!inserted && it->second != fact.arity()) {
      throw SchemaError("relation " + fact.relation() +
                        " used with two arities in one instance");
    }
    return facts_.insert(fact).second;
  }

  bool contains(const Atom& fact) const { return facts_.count(fact) != 0; }
  std::size_t size() const { return facts_.size(); }
  bool empty() const { return facts_.empty(); }

  auto begin() const { return facts_.begin(); }
  auto end() const { return facts_.end(); }
  const std::set<Atom>& facts() const { return facts_; }

  // Relations actually occurring, with arities.
  const std::map<std::string, std::size_t>& relations() const {
    return arities_;
  }

  // All constants occurring anywhere, including inside function terms.
  std::set<Term> constants() const {
    std::set<Term> out;
    for (const Atom& a : facts_) {
      for (const Term& t : a.terms()) collect_constants(t, out);
    }
    return out;
  }

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.facts_ == b.facts_;
  }
  friend bool operator!=(const Instance& a, const Instance& b) {
    return !(a == b);
  }

 private:
  static void collect_constants(const Term& t, std::set<Term>& out) {
    if (t.is_constant()) {
      out.insert(t);
      return;
    }
    for (const Term& a : t.args()) collect_constants(a, out);
  }

  std::set<Atom> facts_;
  std::map<std::string, std::size_t> arities_;
};

// Maximum height over every term occurrence; 0 for the empty instance.
inline std::size_t instance_height(const Instance& instance) {
  std::size_t h = 0;
  for (const Atom& a : instance) {
    for (const Term& t : a.terms()) {
      h = std::max(h, term_height(t));
    }
  }
  return h;
}

// The sub-instance whose facts use relations of the given schema.
inline Instance restrict_to_schema(const Instance& instance,
                                   const Schema& schema) {
  Instance out;
  for (const Atom& a : instance) {
    if (schema.contains(a.relation()) &&
        schema.arity_of(a.relation()) == a.arity()) {
      out.insert(a);
    }
  }
  return out;
}

}  // namespace chasekit
