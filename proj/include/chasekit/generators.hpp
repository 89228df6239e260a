#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "chasekit/atom.hpp"
#include "chasekit/instance.hpp"
#include "chasekit/parser.hpp"
#include "chasekit/rule.hpp"
#include "chasekit/term.hpp"

namespace chasekit {

// Parameters of the generated linear-order ontologies: k selects the target
// bound class, n the length of the seed order.
struct OrderParams {
  std::size_t k = 0;
  std::size_t n = 2;

  // Number of doubling levels stacked on the seed order.
  std::size_t levels() const { return k % 2 == 0 ? k / 2 + 1 : k / 2 + 2; }

  // Seed order length: n itself for even k, ceil(log2 n) for odd k.
  std::size_t base_length() const {
    if (k % 2 == 0) return n;
    std::size_t length = 1;
    std::size_t reach = 2;
    while (reach < n) {
      reach *= 2;
      ++length;
    }
    return length;
  }
};

// Builds the ontology whose chase constructs a chain of binary strings,
// squaring the string count at each level: level i turns the order
// Min_{i-1}/Max_{i-1}/Succ_{i-1} into a lexicographic order of the strings
// obtained by repeatedly concatenating pairs, finalized into
// Min_i/Max_i/Succ_i. D is empty; Q exposes the last level's order.
inline RuleOntology gen_order_ontology(const OrderParams& params) {
  if (params.n < 2) {
    throw std::invalid_argument("the seed order needs at least 2 elements");
  }
  const std::size_t levels = params.levels();
  const std::size_t base = params.base_length();
  const Term zero = Term::constant("0");
  const Term one = Term::constant("1");

  auto rel = [](const std::string& stem, std::size_t level) {
    return stem + "_" + std::to_string(level);
  };

  std::vector<Rule> rules;

  // Seed order over the constants 0 .. base-1, as ground empty-body rules.
  rules.emplace_back(std::vector<Atom>{},
                     std::vector<Atom>{Atom(rel("Min", 0), {zero})});
  rules.emplace_back(
      std::vector<Atom>{},
      std::vector<Atom>{
          Atom(rel("Max", 0), {Term::constant(std::to_string(base - 1))})});
  if (base >= 2) {
    std::vector<Atom> chain;
    for (std::size_t i = 0; i + 1 < base; ++i) {
      chain.emplace_back(rel("Succ", 0),
                         std::vector<Term>{
                             Term::constant(std::to_string(i)),
                             Term::constant(std::to_string(i + 1))});
    }
    rules.emplace_back(std::vector<Atom>{}, std::move(chain));
  }

  const Term V = Term::variable("V");
  const Term W = Term::variable("W");
  const Term X = Term::variable("X");
  const Term X2 = Term::variable("X2");
  const Term Y = Term::variable("Y");
  const Term Y2 = Term::variable("Y2");
  const Term Z = Term::variable("Z");
  const Term Z2 = Term::variable("Z2");
  const Term Mn = Term::variable("Mn");
  const Term Mx = Term::variable("Mx");

  for (std::size_t i = 1; i <= levels; ++i) {
    const std::string bs = rel("BS", i);
    const std::string comb = rel("C", i);
    const std::string succ_here = rel("Succ_star", i);
    const std::string min_here = rel("Min_star", i);
    const std::string max_here = rel("Max_star", i);
    const std::string succ_prev = rel("Succ", i - 1);
    const std::string min_prev = rel("Min", i - 1);
    const std::string max_prev = rel("Max", i - 1);
    const std::string succ_out = rel("Succ", i);
    const std::string min_out = rel("Min", i);
    const std::string max_out = rel("Max", i);

    // Seed: the one-character strings exist at the first stage.
    rules.emplace_back(
        std::vector<Atom>{Atom(min_prev, {V})},
        std::vector<Atom>{Atom(bs, {V, zero}), Atom(bs, {V, one})});
    // Base order on the one-character strings.
    rules.emplace_back(
        std::vector<Atom>{Atom(min_prev, {V})},
        std::vector<Atom>{Atom(succ_here, {V, zero, one}),
                          Atom(min_here, {V, zero}),
                          Atom(max_here, {V, one})});
    // Combination: concatenate any two stage-v strings.
    rules.emplace_back(
        std::vector<Atom>{Atom(bs, {V, X}), Atom(bs, {V, Y})},
        std::vector<Atom>{Atom(comb, {V, X, Y, Z})});
    // Propagation: concatenations are the strings of the next stage.
    rules.emplace_back(
        std::vector<Atom>{Atom(comb, {V, X, Y, Z}), Atom(succ_prev, {V, W})},
        std::vector<Atom>{Atom(bs, {W, Z})});
    // Lexicographic successor, same prefix: succ(x.y) = x.y' when y -> y'.
    rules.emplace_back(
        std::vector<Atom>{Atom(comb, {V, X, Y, Z}), Atom(comb, {V, X, Y2, Z2}),
                          Atom(succ_here, {V, Y, Y2}),
                          Atom(succ_prev, {V, W})},
        std::vector<Atom>{Atom(succ_here, {W, Z, Z2})});
    // Lexicographic successor with carry: succ(x.max) = x'.min when x -> x'.
    rules.emplace_back(
        std::vector<Atom>{Atom(comb, {V, X, Mx, Z}), Atom(comb, {V, X2, Mn, Z2}),
                          Atom(succ_here, {V, X, X2}), Atom(max_here, {V, Mx}),
                          Atom(min_here, {V, Mn}), Atom(succ_prev, {V, W})},
        std::vector<Atom>{Atom(succ_here, {W, Z, Z2})});
    // Least and greatest string of the next stage.
    rules.emplace_back(
        std::vector<Atom>{Atom(comb, {V, Mn, Mn, Z}), Atom(min_here, {V, Mn}),
                          Atom(succ_prev, {V, W})},
        std::vector<Atom>{Atom(min_here, {W, Z})});
    rules.emplace_back(
        std::vector<Atom>{Atom(comb, {V, Mx, Mx, Z}), Atom(max_here, {V, Mx}),
                          Atom(succ_prev, {V, W})},
        std::vector<Atom>{Atom(max_here, {W, Z})});
    // Finalization: the order at the last stage is the level's output.
    rules.emplace_back(
        std::vector<Atom>{Atom(succ_here, {V, X, Y}), Atom(max_prev, {V})},
        std::vector<Atom>{Atom(succ_out, {X, Y})});
    rules.emplace_back(
        std::vector<Atom>{Atom(min_here, {V, X}), Atom(max_prev, {V})},
        std::vector<Atom>{Atom(min_out, {X})});
    rules.emplace_back(
        std::vector<Atom>{Atom(max_here, {V, X}), Atom(max_prev, {V})},
        std::vector<Atom>{Atom(max_out, {X})});
  }

  // The combination rule declares its existential implicitly via the Rule
  // constructor (head-only variable). Rebuild with an explicit marker is not
  // needed: Z occurs only in the head of the combination rule.
  Schema query;
  query.declare(rel("Min", levels), 1);
  query.declare(rel("Max", levels), 1);
  query.declare(rel("Succ", levels), 2);
  return RuleOntology(std::move(rules), Schema(), std::move(query));
}

// A named, reusable example: an ontology, optionally a sample database and
// the facts its chase is expected to produce.
struct Fixture {
  std::string name;
  RuleOntology ontology;
  std::optional<Instance> sample_database;
  std::optional<Instance> expected_facts;
};

namespace detail {

inline Fixture make_fixture(const std::string& name,
                            const std::string& ontology_text,
                            const std::string& database_text = "",
                            const std::string& expected_text = "") {
  Fixture f;
  f.name = name;
  f.ontology = parse_ontology(ontology_text).ontology;
  if (!database_text.empty()) f.sample_database = parse_facts(database_text);
  if (!expected_text.empty()) f.expected_facts = parse_facts(expected_text);
  return f;
}

}  // namespace detail

// The built-in fixtures. "example1" is a two-rule ontology whose chase of
// {R(a,a)} reaches a 5-fact fixpoint; "example2_O0" is its normal form with
// query schema {R}; "example2_rewritten" is the weakly acyclic compilation
// of example2_O0 at height 2; "nonterminating" grows a fresh chain forever.
inline std::vector<Fixture> fixtures() {
  std::vector<Fixture> out;

  out.push_back(detail::make_fixture(
      "example1",
      "@database R/2\n"
      "@query R/2, S/2\n"
      "R(X,X) -> exists Y,Z . S(X,Y), S(Y,Z).\n"
      "R(X,Y), S(X,Z) -> exists V . R(Z,V).\n",
      "R(a,a).\n",
      "R(a,a).\n"
      "S(a,sk_1_y(a)).\n"
      "S(sk_1_y(a),sk_1_z(a)).\n"
      "R(sk_1_y(a),sk_2_v(sk_1_y(a))).\n"
      "R(sk_1_z(a),sk_2_v(sk_1_z(a))).\n"));

  out.push_back(detail::make_fixture(
      "example2_O0",
      "@database D/2\n"
      "@query R/2\n"
      "D(X,Y) -> R(X,Y).\n"
      "R(X,X) -> exists Y,Z . S(X,Y), S(Y,Z).\n"
      "R(X,Y), S(X,Z) -> exists V . R(Z,V).\n",
      "D(a,a).\n",
      "D(a,a).\n"
      "R(a,a).\n"
      "S(a,sk_2_y(a)).\n"
      "S(sk_2_y(a),sk_2_z(a)).\n"
      "R(sk_2_y(a),sk_3_v(sk_2_y(a))).\n"
      "R(sk_2_z(a),sk_3_v(sk_2_z(a))).\n"));

  out.push_back(detail::make_fixture(
      "example2_rewritten",
      "@database D/2\n"
      "@query R/2\n"
      "D(X1,X2) -> D_star(X1,_,_,X2,_,_).\n"
      "D_star(X1,X2,X3,Y1,Y2,Y3) -> R_star(X1,X2,X3,Y1,Y2,Y3).\n"
      "R_star(X1,X2,_,X1,X2,_) -> "
      "S_star(X1,X2,_,fy,X1,X2), S_star(fy,X1,X2,fz,X1,X2).\n"
      "R_star(X1,X2,X3,Y1,Y2,Y3), S_star(X1,X2,X3,Z1,Z2,_) -> "
      "R_star(Z1,Z2,_,fv,Z1,Z2).\n"
      "R_star(V1,V2,V3,W1,W2,W3) -> Dom_star(V1,V2,V3), Dom_star(W1,W2,W3).\n"
      "Dom_star(fy,U1,U2) -> exists Y . Map(fy,U1,U2,Y).\n"
      "Dom_star(fz,U1,U2) -> exists Z . Map(fz,U1,U2,Z).\n"
      "Dom_star(fv,U1,U2) -> exists V . Map(fv,U1,U2,V).\n"
      "Dom_star(X,_,_) -> Map(X,_,_,X).\n"
      "R_star(V1,V2,V3,W1,W2,W3), Map(V1,V2,V3,X1), Map(W1,W2,W3,X2) -> "
      "R(X1,X2).\n",
      "D(a,a).\n"));

  out.push_back(detail::make_fixture(
      "nonterminating",
      "@database R/2\n"
      "@query R/2\n"
      "R(X,Y) -> exists Z . R(Y,Z).\n",
      "R(a,b).\n"));

  return out;
}

// Fixture lookup by name.
inline std::optional<Fixture> find_fixture(const std::string& name) {
  for (Fixture& f : fixtures()) {
    if (f.name == name) return std::move(f);
  }
  return std::nullopt;
}

}  // namespace chasekit
