#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "chasekit/errors.hpp"
#include "chasekit/homomorphism.hpp"
#include "chasekit/instance.hpp"
#include "chasekit/rule.hpp"
#include "chasekit/skolem.hpp"
#include "chasekit/substitution.hpp"

namespace chasekit {

// Termination guards for the chase. At least one guard must be set unless
// the caller explicitly accepts potential nontermination.
struct ChaseGuard {
  std::optional<std::size_t> max_height;
  std::optional<std::size_t> max_stages;
  bool allow_unbounded = false;

  void validate() const {
    if (!max_height && !max_stages && !allow_unbounded) {
      throw std::invalid_argument(
          "chase guard: set max_height or max_stages, or explicitly allow an "
          "unbounded run");
    }
  }

  static ChaseGuard unbounded() { return ChaseGuard{{}, {}, true}; }
  static ChaseGuard height(std::size_t h) { return ChaseGuard{h, {}, false}; }
  static ChaseGuard stages(std::size_t s) { return ChaseGuard{{}, s, false}; }
};

enum class ChaseStatus { Fixpoint, HeightExceeded, StageLimit };

struct ChaseResult {
  Instance instance;
  std::size_t stages = 0;
  ChaseStatus status = ChaseStatus::Fixpoint;
  // Set for HeightExceeded: a canonically-least term from the first stage
  // whose height exceeds the guard.
  std::optional<Term> witness;
  // Set for HeightExceeded: the stage at which the witness appeared.
  std::optional<std::size_t> witness_stage;
};

// One breadth-first stage: the input plus every fact derivable from it by a
// single application of any rule under any substitution. Empty-body rules
// fire on the empty substitution every stage (idempotent under set
// semantics).
inline Instance chase_stage(const Instance& instance,
                            const std::vector<SkolemRule>& rules) {
  Instance next = instance;
  for (const SkolemRule& rule : rules) {
    enumerate_homomorphisms(rule.body, instance, [&](const Substitution& h) {
      for (const Atom& head_atom : rule.head) {
        next.insert(apply_substitution(h, head_atom));
      }
      return true;
    });
  }
  return next;
}

namespace detail {

// Canonically-least term (over argument positions of added facts) whose
// height exceeds the bound, if any.
inline std::optional<Term> height_offender(const Instance& before,
                                           const Instance& after,
                                           std::size_t max_height) {
  std::optional<Term> worst;
  for (const Atom& fact : after) {
    if (before.contains(fact)) continue;
    for (const Term& t : fact.terms()) {
      if (term_height(t) > max_height) {
        if (!worst || t < *worst) worst = t;
      }
    }
  }
  return worst;
}

}  // namespace detail

// Runs the stage function to fixpoint or until a guard trips. The reported
// stage count is the index of the first stage that added nothing (an empty
// rule set is a fixpoint at stage 0). The database must use database-schema
// relations unless skip_schema_check is set.
inline ChaseResult run_chase(const Instance& database,
                             const RuleOntology& ontology,
                             const ChaseGuard& guard,
                             bool skip_schema_check = false) {
  guard.validate();
  if (!skip_schema_check) {
    for (const Atom& fact : database) {
      if (!ontology.db_schema().contains(fact.relation()) ||
          ontology.db_schema().arity_of(fact.relation()) != fact.arity()) {
        throw SchemaError("database fact " + fact.relation() + "/" +
                          std::to_string(fact.arity()) +
                          " is not in the database schema");
      }
    }
  }
  std::vector<SkolemRule> rules = skolemize(ontology);

  ChaseResult result;
  result.instance = database;
  if (rules.empty()) {
    result.stages = 0;
    result.status = ChaseStatus::Fixpoint;
    return result;
  }
  std::size_t stage = 0;
  while (true) {
    if (guard.max_stages && stage >= *guard.max_stages) {
      result.stages = stage;
      result.status = ChaseStatus::StageLimit;
      return result;
    }
    ++stage;
    Instance next = chase_stage(result.instance, rules);
    if (next.size() == result.instance.size()) {
      result.stages = stage;
      result.status = ChaseStatus::Fixpoint;
      return result;
    }
    if (guard.max_height) {
      if (auto offender = detail::height_offender(result.instance, next,
                                                  *guard.max_height)) {
        result.instance = std::move(next);
        result.stages = stage;
        result.status = ChaseStatus::HeightExceeded;
        result.witness = offender;
        result.witness_stage = stage;
        return result;
      }
    }
    result.instance = std::move(next);
  }
}

enum class Entailment { True, False, Unknown };

// Boolean conjunctive query answering against the chase. True from a partial
// (guard-stopped) chase is sound; a guard stop without a match is Unknown.
inline Entailment entails_bcq(const Instance& database,
                              const RuleOntology& ontology, const Query& query,
                              const ChaseGuard& guard,
                              bool skip_schema_check = false) {
  ChaseResult chase = run_chase(database, ontology, guard, skip_schema_check);
  bool matched = find_homomorphism(query.atoms, chase.instance).has_value();
  if (matched) return Entailment::True;
  return chase.status == ChaseStatus::Fixpoint ? Entailment::False
                                               : Entailment::Unknown;
}

// The chase restricted to the query schema. Requires a fixpoint; a guard
// stop raises GuardExhausted with no partial result.
inline Instance worldview(const RuleOntology& ontology,
                          const Instance& database, const ChaseGuard& guard) {
  ChaseResult chase = run_chase(database, ontology, guard);
  if (chase.status != ChaseStatus::Fixpoint) {
    throw GuardExhausted("worldview: chase stopped on a guard after " +
                             std::to_string(chase.stages) + " stage(s)",
                         chase.stages);
  }
  return restrict_to_schema(chase.instance, ontology.query_schema());
}

}  // namespace chasekit
