#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chasekit/atom.hpp"
#include "chasekit/instance.hpp"
#include "chasekit/substitution.hpp"
#include "chasekit/term.hpp"

namespace chasekit {

namespace detail {

// Constants match only themselves; variables, labeled nulls and ground
// function terms (null-like) are remappable as whole units.
inline bool is_mappable(const Term& t) {
  if (t.is_constant()) return false;
  if (t.is_func() && !t.is_ground()) {
    throw std::invalid_argument(
        "homomorphism source contains a non-ground function term");
  }
  return true;
}

struct MatchState {
  std::map<Term, Term> bound;
};

inline bool match_atom(const Atom& pattern, const Atom& fact,
                       MatchState& state, std::vector<Term>& trail) {
  if (pattern.relation() != fact.relation() ||
      pattern.arity() != fact.arity()) {
    return false;
  }
  for (std::size_t i = 0; i < pattern.arity(); ++i) {
    const Term& p = pattern.terms()[i];
    const Term& f = fact.terms()[i];
    if (!is_mappable(p)) {
      if (p != f) return false;
      continue;
    }
    auto it = state.bound.find(p);
    if (it != state.bound.end()) {
      if (it->second != f) return false;
    } else {
      state.bound.emplace(p, f);
      trail.push_back(p);
    }
  }
  return true;
}

inline void undo(MatchState& state, std::vector<Term>& trail,
                 std::size_t mark) {
  while (trail.size() > mark) {
    state.bound.erase(trail.back());
    trail.pop_back();
  }
}

class Matcher {
 public:
  Matcher(std::vector<Atom> src, const Instance& dst) : src_(std::move(src)) {
    for (const Atom& fact : dst) {
      by_relation_[fact.relation()].push_back(fact);
    }
  }

  // Enumerates all substitutions h with h(src) contained in dst, in a
  // deterministic order. Stops early when emit returns false. Returns false
  // when enumeration was cut short.
  bool enumerate(const std::function<bool(const Substitution&)>& emit) {
    used_.assign(src_.size(), false);
    return descend(0, emit);
  }

 private:
  // Most-constrained-atom-first: among unmatched atoms prefer the one with
  // the fewest unbound argument terms, then the smallest relation extent,
  // then canonical order.
  std::size_t pick_next() const {
    std::size_t best = src_.size();
    std::size_t best_unbound = 0, best_extent = 0;
    for (std::size_t i = 0; i < src_.size(); ++i) {
      if (used_[i]) continue;
      std::size_t unbound = 0;
      for (const Term& t : src_[i].terms()) {
        if (is_mappable(t) && !state_.bound.count(t)) ++unbound;
      }
      auto it = by_relation_.find(src_[i].relation());
      std::size_t extent = it == by_relation_.end() ? 0 : it->second.size();
      if (best == src_.size() || unbound < best_unbound ||
          (unbound == best_unbound && extent < best_extent)) {
        best = i;
        best_unbound = unbound;
        best_extent = extent;
      }
    }
    return best;
  }

  bool descend(std::size_t matched,
               const std::function<bool(const Substitution&)>& emit) {
    if (matched == src_.size()) {
      Substitution h;
      for (const auto& [from, to] : state_.bound) h.bind(from, to);
      return emit(h);
    }
    std::size_t i = pick_next();
    used_[i] = true;
    auto it = by_relation_.find(src_[i].relation());
    if (it != by_relation_.end()) {
      for (const Atom& fact : it->second) {
        std::size_t mark = trail_.size();
        if (match_atom(src_[i], fact, state_, trail_)) {
          if (!descend(matched + 1, emit)) {
            undo(state_, trail_, mark);
            used_[i] = false;
            return false;
          }
        }
        undo(state_, trail_, mark);
      }
    }
    used_[i] = false;
    return true;
  }

  std::vector<Atom> src_;
  std::map<std::string, std::vector<Atom>> by_relation_;
  MatchState state_;
  std::vector<Term> trail_;
  std::vector<bool> used_;
};

}  // namespace detail

// Enumerates every homomorphism from the atom set into the ground instance.
// Constants are fixed; variables, labeled nulls and ground function terms map
// to ground terms. The callback returns false to stop enumeration.
inline void enumerate_homomorphisms(
    const std::vector<Atom>& src, const Instance& dst,
    const std::function<bool(const Substitution&)>& emit) {
  detail::Matcher matcher(src, dst);
  matcher.enumerate(emit);
}

// Complete backtracking search; returns one homomorphism if any exists.
inline std::optional<Substitution> find_homomorphism(
    const std::vector<Atom>& src, const Instance& dst) {
  std::optional<Substitution> found;
  enumerate_homomorphisms(src, dst, [&](const Substitution& h) {
    found = h;
    return false;
  });
  return found;
}

// Checks h(src) is contained in dst.
inline bool is_homomorphism(const Substitution& h,
                            const std::vector<Atom>& src, const Instance& dst) {
  for (const Atom& a : src) {
    if (!dst.contains(apply_substitution(h, a))) return false;
  }
  return true;
}

// Two ground instances are homomorphically equivalent when each maps into
// the other (constants fixed, null-like terms remappable).
inline bool is_hom_equivalent(const Instance& a, const Instance& b) {
  std::vector<Atom> a_atoms(a.begin(), a.end());
  std::vector<Atom> b_atoms(b.begin(), b.end());
  return find_homomorphism(a_atoms, b).has_value() &&
         find_homomorphism(b_atoms, a).has_value();
}

}  // namespace chasekit
