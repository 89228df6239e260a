#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "chasekit/errors.hpp"
#include "chasekit/term.hpp"

namespace chasekit {

// A relational atom: relation symbol applied to a tuple of terms. Arity is
// the tuple width; one relation name must keep one arity within any context
// that aggregates atoms (Schema/Instance/RuleOntology enforce this).
class Atom {
 public:
  Atom(std::string relation, std::vector<Term> terms)
      : relation_(std::move(relation)), terms_(std::move(terms)) {}

  const std::string& relation() const { return relation_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t arity() const { return terms_.size(); }

  bool is_ground() const {
    for (const Term& t : terms_) {
      if (!t.is_ground()) return false;
    }
    return true;
  }

  static int compare(const Atom& a, const Atom& b) {
    if (int c = a.relation_.compare(b.relation_); c != 0) return c < 0 ? -1 : 1;
    if (a.arity() != b.arity()) return a.arity() < b.arity() ? -1 : 1;
    for (std::size_t i = 0; i < a.arity(); ++i) {
      if (int c = Term::compare(a.terms_[i], b.terms_[i]); c != 0) return c;
    }
    return 0;
  }

  friend bool operator==(const Atom& a, const Atom& b) {
    return compare(a, b) == 0;
  }
  friend bool operator!=(const Atom& a, const Atom& b) { return !(a == b); }
  friend bool operator<(const Atom& a, const Atom& b) {
    return compare(a, b) < 0;
  }

 private:
  std::string relation_;
  std::vector<Term> terms_;
};

// A set of relation symbols with arities. Declaring a name twice with
// different arities is an error.
class Schema {
 public:
  Schema() = default;

  void declare(const std::string& relation, std::size_t arity) {
    auto [it, inserted] = relations_.emplace(relation, arity);
    if (!inserted && it->second != arity) {
      throw SchemaError("relation " + relation + " declared with arity " +
                        std::to_string(arity) + " but already has arity " +
                        std::to_string(it->second));
    }
  }

  bool contains(const std::string& relation) const {
    return relations_.count(relation) != 0;
  }
  std::size_t arity_of(const std::string& relation) const {
    auto it = relations_.find(relation);
    if (it == relations_.end()) {
      throw SchemaError("relation " + relation + " is not in the schema");
    }
    return it->second;
  }

  bool empty() const { return relations_.empty(); }
  std::size_t size() const { return relations_.size(); }
  const std::map<std::string, std::size_t>& relations() const {
    return relations_;
  }

  friend bool operator==(const Schema& a, const Schema& b) {
    return a.relations_ == b.relations_;
  }
  friend bool operator!=(const Schema& a, const Schema& b) {
    return !(a == b);
  }

 private:
  std::map<std::string, std::size_t> relations_;
};

}  // namespace chasekit
