#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "chasekit/chase.hpp"
#include "chasekit/instance.hpp"
#include "chasekit/rule.hpp"
#include "chasekit/skolem.hpp"
#include "chasekit/term.hpp"

namespace chasekit {

using BigNat = boost::multiprecision::cpp_int;

// A relation argument position, 1-based.
struct Position {
  std::string relation;
  std::size_t index = 1;

  friend bool operator==(const Position& a, const Position& b) {
    return a.relation == b.relation && a.index == b.index;
  }
  friend bool operator<(const Position& a, const Position& b) {
    return a.relation != b.relation ? a.relation < b.relation
                                    : a.index < b.index;
  }
};

// Position dependency graph of a rule set. A regular edge propagates a
// frontier variable from a body position to a head position; a special edge
// runs from a frontier variable's body position to an existential variable's
// head position. Parallel regular and special edges may coexist.
struct DependencyGraph {
  std::set<Position> nodes;
  std::set<std::pair<Position, Position>> regular_edges;
  std::set<std::pair<Position, Position>> special_edges;
};

namespace detail {

inline void positions_of_variable(const std::vector<Atom>& atoms,
                                  const Term& v,
                                  std::set<Position>& out) {
  for (const Atom& atom : atoms) {
    for (std::size_t i = 0; i < atom.arity(); ++i) {
      if (atom.terms()[i] == v) {
        out.insert(Position{atom.relation(), i + 1});
      }
    }
  }
}

}  // namespace detail

inline DependencyGraph dependency_graph(const std::vector<Rule>& rules) {
  DependencyGraph g;
  for (const Rule& rule : rules) {
    for (const Atom& atom : rule.body()) {
      for (std::size_t i = 0; i < atom.arity(); ++i) {
        g.nodes.insert(Position{atom.relation(), i + 1});
      }
    }
    for (const Atom& atom : rule.head()) {
      for (std::size_t i = 0; i < atom.arity(); ++i) {
        g.nodes.insert(Position{atom.relation(), i + 1});
      }
    }
  }
  for (const Rule& rule : rules) {
    std::set<Position> existential_targets;
    for (const Term& z : rule.existentials()) {
      detail::positions_of_variable(rule.head(), z, existential_targets);
    }
    for (const Term& x : rule.frontier()) {
      std::set<Position> sources;
      detail::positions_of_variable(rule.body(), x, sources);
      std::set<Position> targets;
      detail::positions_of_variable(rule.head(), x, targets);
      for (const Position& from : sources) {
        for (const Position& to : targets) {
          g.regular_edges.emplace(from, to);
        }
        for (const Position& to : existential_targets) {
          g.special_edges.emplace(from, to);
        }
      }
    }
  }
  return g;
}

struct WeakAcyclicityResult {
  bool weakly_acyclic = true;
  // For a negative verdict: a shortest cycle through a special edge, as the
  // visited position sequence (first == last), with a parallel flag marking
  // which steps necessarily use a special edge.
  std::vector<Position> cycle;
  std::vector<bool> special_step;
};

namespace detail {

// Deterministic BFS shortest path from -> to (may be equal: empty path).
inline std::optional<std::vector<Position>> shortest_path(
    const std::map<Position, std::set<Position>>& adjacency,
    const Position& from, const Position& to) {
  if (from == to) return std::vector<Position>{from};
  std::map<Position, Position> parent;
  std::deque<Position> queue{from};
  std::set<Position> seen{from};
  while (!queue.empty()) {
    Position cur = queue.front();
    queue.pop_front();
    auto it = adjacency.find(cur);
    if (it == adjacency.end()) continue;
    for (const Position& next : it->second) {
      if (!seen.insert(next).second) continue;
      parent.emplace(next, cur);
      if (next == to) {
        std::vector<Position> path{to};
        Position walk = to;
        while (walk != from) {
          walk = parent.at(walk);
          path.push_back(walk);
        }
        std::reverse(path.begin(), path.end());
        return path;
      }
      queue.push_back(next);
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Weak acyclicity: no dependency-graph cycle passes through a special edge.
// A negative verdict carries a shortest such cycle (ties broken by canonical
// order of the position sequence).
inline WeakAcyclicityResult is_weakly_acyclic(const RuleOntology& ontology) {
  DependencyGraph g = dependency_graph(ontology.rules());
  std::map<Position, std::set<Position>> adjacency;
  for (const auto& [from, to] : g.regular_edges) adjacency[from].insert(to);
  for (const auto& [from, to] : g.special_edges) adjacency[from].insert(to);

  WeakAcyclicityResult result;
  std::optional<std::vector<Position>> best;
  for (const auto& [from, to] : g.special_edges) {
    auto back = detail::shortest_path(adjacency, to, from);
    if (!back) continue;
    std::vector<Position> cycle{from};
    cycle.insert(cycle.end(), back->begin(), back->end());
    if (!best || cycle.size() < best->size() ||
        (cycle.size() == best->size() && cycle < *best)) {
      best = cycle;
    }
  }
  if (best) {
    result.weakly_acyclic = false;
    result.cycle = *best;
    for (std::size_t i = 0; i + 1 < best->size(); ++i) {
      auto edge = std::make_pair((*best)[i], (*best)[i + 1]);
      bool special_only = g.special_edges.count(edge) != 0 &&
                          g.regular_edges.count(edge) == 0;
      result.special_step.push_back(i == 0 || special_only);
    }
  }
  return result;
}

// The critical database: every database relation filled with all tuples over
// the constants of the rule set plus the fresh constant `*`.
inline Instance critical_database(const RuleOntology& ontology) {
  std::set<Term> constants = ontology.rule_constants();
  constants.insert(Term::star());
  std::vector<Term> domain(constants.begin(), constants.end());

  Instance out;
  for (const auto& [relation, arity] : ontology.db_schema().relations()) {
    std::vector<std::size_t> counter(arity, 0);
    while (true) {
      std::vector<Term> tuple;
      tuple.reserve(arity);
      for (std::size_t i = 0; i < arity; ++i) tuple.push_back(domain[counter[i]]);
      out.insert(Atom(relation, std::move(tuple)));
      std::size_t i = 0;
      for (; i < arity; ++i) {
        if (++counter[i] < domain.size()) break;
        counter[i] = 0;
      }
      if (i == arity) break;
    }
  }
  return out;
}

// Size of a rule set: relation-symbol occurrences plus term occurrences over
// all body and head atoms.
inline std::size_t sigma_size(const std::vector<Rule>& rules) {
  std::size_t n = 0;
  for (const Rule& rule : rules) {
    for (const Atom& a : rule.body()) n += 1 + a.arity();
    for (const Atom& a : rule.head()) n += 1 + a.arity();
  }
  return n;
}

// A height-bound specification: exp:K applies the K-fold exponential tower
// to the rule-set size, const:C ignores the size, height:H is a literal
// height bound.
struct BoundSpec {
  enum class Kind { ExpK, Const, Height } kind = Kind::Const;
  std::size_t value = 0;

  static BoundSpec exp_k(std::size_t k) { return {Kind::ExpK, k}; }
  static BoundSpec constant(std::size_t c) { return {Kind::Const, c}; }
  static BoundSpec height(std::size_t h) { return {Kind::Height, h}; }
};

// A big natural that saturates once an exponent tower leaves any range a
// chase could ever reach; evaluation stays total.
struct BoundValue {
  BigNat value;
  bool saturated = false;

  bool fits_size_t() const {
    return !saturated &&
           value <= BigNat(std::numeric_limits<std::size_t>::max());
  }
};

// exp_0(n) = n, exp_k(n) = 2^exp_{k-1}(n).
inline BoundValue eval_bound(const BoundSpec& spec, std::size_t n) {
  constexpr std::size_t kSaturationBits = std::size_t(1) << 22;
  switch (spec.kind) {
    case BoundSpec::Kind::Const:
    case BoundSpec::Kind::Height:
      return BoundValue{BigNat(spec.value), false};
    case BoundSpec::Kind::ExpK: {
      BoundValue v{BigNat(n), false};
      for (std::size_t i = 0; i < spec.value; ++i) {
        if (v.value > BigNat(kSaturationBits)) {
          return BoundValue{0, true};
        }
        v.value = BigNat(1) << static_cast<std::size_t>(v.value);
      }
      return v;
    }
  }
  throw std::logic_error("unreachable");
}

struct BoundednessVerdict {
  enum class Kind { Bounded, NotBounded, Unknown } kind = Kind::Unknown;
  // Bounded: the observed chase height of the critical database and its
  // fact count.
  std::size_t max_height = 0;
  std::size_t chase_size = 0;
  // NotBounded: a term exceeding the bound and the stage it appeared at.
  std::optional<Term> witness;
  std::size_t witness_stage = 0;
  // Unknown: stages run before giving up.
  std::size_t stages_run = 0;
};

// Decides whether every database's chase stays within the evaluated height
// bound, by chasing the critical database under a height guard. The chase of
// the critical database dominates the height of every other database's
// chase, so exceeding there is both sound and complete for a negative
// verdict. If the evaluated bound is too large to guard against, the run
// relies on max_stages and can return Unknown.
inline BoundednessVerdict check_bounded(
    const RuleOntology& ontology, const BoundSpec& spec,
    std::optional<std::size_t> max_stages = std::nullopt) {
  BoundValue bound = eval_bound(spec, sigma_size(ontology.rules()));
  ChaseGuard guard;
  if (bound.fits_size_t()) {
    guard.max_height = static_cast<std::size_t>(bound.value);
  }
  guard.max_stages = max_stages;
  guard.allow_unbounded = true;

  ChaseResult chase = run_chase(critical_database(ontology), ontology, guard);
  BoundednessVerdict verdict;
  switch (chase.status) {
    case ChaseStatus::Fixpoint:
      verdict.kind = BoundednessVerdict::Kind::Bounded;
      verdict.max_height = instance_height(chase.instance);
      verdict.chase_size = chase.instance.size();
      break;
    case ChaseStatus::HeightExceeded:
      verdict.kind = BoundednessVerdict::Kind::NotBounded;
      verdict.witness = chase.witness;
      verdict.witness_stage = chase.witness_stage.value_or(chase.stages);
      break;
    case ChaseStatus::StageLimit:
      verdict.kind = BoundednessVerdict::Kind::Unknown;
      verdict.stages_run = chase.stages;
      break;
  }
  return verdict;
}

// Worst-case fact count of any chase with term height at most H over c base
// constants: terms per height via T(0) = c, T(h) = c + sum_f T(h-1)^arity(f)
// (nullary symbols contribute 1), then summed over relation arities.
inline BigNat chase_size_bound(const RuleOntology& ontology, std::size_t max_height,
                               std::size_t num_constants) {
  std::vector<SkolemSymbol> signature = skolem_signature(ontology);
  BigNat terms = num_constants;
  for (std::size_t h = 0; h < max_height; ++h) {
    BigNat next = num_constants;
    for (const SkolemSymbol& f : signature) {
      next += boost::multiprecision::pow(terms,
                                         static_cast<unsigned>(f.arity));
    }
    terms = next;
  }
  BigNat total = 0;
  for (const auto& [relation, arity] : ontology.full_schema().relations()) {
    (void)relation;
    total += boost::multiprecision::pow(terms, static_cast<unsigned>(arity));
  }
  return total;
}

}  // namespace chasekit
