#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "chasekit/atom.hpp"
#include "chasekit/term.hpp"

namespace chasekit {

// A finite mapping from variables and null-like terms (labeled nulls and
// ground function terms, which act as nulls) to ground terms. Constants are
// never in the domain; application is the identity on them.
class Substitution {
 public:
  Substitution() = default;

  bool bind(const Term& from, const Term& to) {
    if (from.is_constant()) {
      throw std::invalid_argument(
          "substitution domain cannot contain constants");
    }
    auto [it, inserted] = map_.emplace(from, to);
    return inserted || it->second == to;
  }

  std::optional<Term> lookup(const Term& t) const {
    auto it = map_.find(t);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }

  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }
  const std::map<Term, Term>& entries() const { return map_; }

  friend bool operator==(const Substitution& a, const Substitution& b) {
    return a.map_ == b.map_;
  }

 private:
  std::map<Term, Term> map_;
};

// Applies a substitution to a term. An exact-match key is replaced as a
// whole (this is how null-like function terms are remapped); otherwise
// function terms are rewritten recursively (this is how rule variables
// inside Skolem terms are instantiated). Unmapped variables stay intact.
inline Term apply_substitution(const Substitution& h, const Term& t) {
  if (t.is_constant()) return t;
  if (auto hit = h.lookup(t)) return *hit;
  if (t.is_func()) {
    std::vector<Term> args;
    args.reserve(t.args().size());
    bool changed = false;
    for (const Term& a : t.args()) {
      args.push_back(apply_substitution(h, a));
      changed = changed || args.back() != a;
    }
    if (!changed) return t;
    return Term::func(t.symbol(), std::move(args));
  }
  return t;
}

inline Atom apply_substitution(const Substitution& h, const Atom& atom) {
  std::vector<Term> terms;
  terms.reserve(atom.terms().size());
  for (const Term& t : atom.terms()) {
    terms.push_back(apply_substitution(h, t));
  }
  return Atom(atom.relation(), std::move(terms));
}

inline std::vector<Atom> apply_substitution(const Substitution& h,
                                            const std::vector<Atom>& atoms) {
  std::vector<Atom> out;
  out.reserve(atoms.size());
  for (const Atom& a : atoms) out.push_back(apply_substitution(h, a));
  return out;
}

}  // namespace chasekit
