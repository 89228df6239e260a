#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "chasekit/rule.hpp"
#include "chasekit/substitution.hpp"
#include "chasekit/term.hpp"

namespace chasekit {

// A rule whose head existentials have been replaced by Skolem terms. Bodies
// still contain only variables and constants; heads may contain function
// terms over the frontier variables.
struct SkolemRule {
  std::vector<Atom> body;
  std::vector<Atom> head;
  std::size_t rule_index = 0;  // 1-based index of the originating rule

  friend bool operator==(const SkolemRule& a, const SkolemRule& b) {
    return a.body == b.body && a.head == b.head;
  }
};

// Names are sk_<1-based rule index>_<variable>, with the variable's first
// character lowercased: variables are uppercase-initial in the surface
// syntax, and the lowercase-initial name keeps the symbol in the constant /
// function lexical class. Lowercasing only the first character is
// injective on uppercase-initial names, so distinct existentials of one
// rule never collide.
inline std::string skolem_symbol_name(std::size_t rule_index_1based,
                                      const std::string& variable_name) {
  std::string suffix = variable_name;
  if (!suffix.empty()) {
    suffix[0] = static_cast<char>(
        std::tolower(static_cast<unsigned char>(suffix[0])));
  }
  return "sk_" + std::to_string(rule_index_1based) + "_" + suffix;
}

// Replaces each existential variable z of each rule by the function term
// sk_<ruleIndex>_<z>(frontier), with the frontier in its canonical
// (first-body-occurrence) order. Rules without existentials pass through.
inline std::vector<SkolemRule> skolemize(const RuleOntology& ontology) {
  std::vector<SkolemRule> out;
  out.reserve(ontology.rules().size());
  for (std::size_t i = 0; i < ontology.rules().size(); ++i) {
    const Rule& rule = ontology.rules()[i];
    SkolemRule sk;
    sk.rule_index = i + 1;
    sk.body = rule.body();
    if (!rule.has_existentials()) {
      sk.head = rule.head();
    } else {
      Substitution h;
      for (const Term& z : rule.existentials()) {
        SkolemSymbol sym{skolem_symbol_name(i + 1, z.name()),
                         rule.frontier().size()};
        h.bind(z, Term::func(sym, rule.frontier()));
      }
      sk.head = detail::normalize_atom_set(apply_substitution(h, rule.head()));
    }
    out.push_back(std::move(sk));
  }
  return out;
}

// The Skolem signature introduced for an ontology: one symbol per
// existential variable, in rule order then variable order.
inline std::vector<SkolemSymbol> skolem_signature(const RuleOntology& o) {
  std::vector<SkolemSymbol> out;
  for (std::size_t i = 0; i < o.rules().size(); ++i) {
    const Rule& rule = o.rules()[i];
    for (const Term& z : rule.existentials()) {
      out.push_back(SkolemSymbol{skolem_symbol_name(i + 1, z.name()),
                                 rule.frontier().size()});
    }
  }
  return out;
}

}  // namespace chasekit
