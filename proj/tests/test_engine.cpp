#include <catch2/catch_amalgamated.hpp>

#include "support/test_support.hpp"

using namespace chasekit;

namespace {

Term cst(const std::string& n) { return Term::constant(n); }
Term var(const std::string& n) { return Term::variable(n); }

const Fixture& example1() {
  static Fixture fx = *find_fixture("example1");
  return fx;
}

Term sk1y(const Term& t) {
  return Term::func(SkolemSymbol{"sk_1_y", 1}, {t});
}
Term sk1z(const Term& t) {
  return Term::func(SkolemSymbol{"sk_1_z", 1}, {t});
}
Term sk2v(const Term& t) {
  return Term::func(SkolemSymbol{"sk_2_v", 1}, {t});
}

Instance example1_fixpoint() {
  Term a = cst("a");
  Instance expected;
  expected.insert(Atom("R", {a, a}));
  expected.insert(Atom("S", {a, sk1y(a)}));
  expected.insert(Atom("S", {sk1y(a), sk1z(a)}));
  expected.insert(Atom("R", {sk1y(a), sk2v(sk1y(a))}));
  expected.insert(Atom("R", {sk1z(a), sk2v(sk1z(a))}));
  return expected;
}

}  // namespace

TEST_CASE("skolemization of the bundled rules") {
  std::vector<SkolemRule> rules = skolemize(example1().ontology);
  REQUIRE(rules.size() == 2);

  // Rule 1: R(X,X) -> exists Y,Z . S(X,Y), S(Y,Z); frontier (X).
  Term x = var("X");
  std::vector<Atom> head1{Atom("S", {x, sk1y(x)}),
                          Atom("S", {sk1y(x), sk1z(x)})};
  std::sort(head1.begin(), head1.end());
  CHECK(rules[0].body == std::vector<Atom>{Atom("R", {x, x})});
  CHECK(rules[0].head == head1);

  // Rule 2: R(X,Y), S(X,Z) -> exists V . R(Z,V); frontier for the head (Z).
  Term z = var("Z");
  CHECK(rules[1].head == std::vector<Atom>{Atom("R", {z, sk2v(z)})});
  for (const Atom& atom : rules[1].head) {
    for (const Term& t : atom.terms()) {
      if (t.is_func()) {
        CHECK(t.symbol().arity == 1);
        CHECK(t.args() == std::vector<Term>{z});
      }
    }
  }
}

TEST_CASE("datalog rules pass through skolemization unchanged") {
  SourceOntology src = parse_ontology("R(X,Y) -> S(Y,X).");
  std::vector<SkolemRule> rules = skolemize(src.ontology);
  REQUIRE(rules.size() == 1);
  CHECK(rules[0].body == src.ontology.rules()[0].body());
  CHECK(rules[0].head == src.ontology.rules()[0].head());
}

TEST_CASE("single chase stage") {
  std::vector<SkolemRule> rules = skolemize(example1().ontology);
  Term a = cst("a");
  Instance start;
  start.insert(Atom("R", {a, a}));

  Instance stage1 = chase_stage(start, rules);
  CHECK(stage1.size() == 3);
  CHECK(stage1.contains(Atom("R", {a, a})));
  CHECK(stage1.contains(Atom("S", {a, sk1y(a)})));
  CHECK(stage1.contains(Atom("S", {sk1y(a), sk1z(a)})));

  CHECK(chase_stage(Instance{}, rules) == Instance{});

  Instance fixpoint = example1_fixpoint();
  CHECK(chase_stage(fixpoint, rules) == fixpoint);
}

TEST_CASE("full chase of the bundled example") {
  ChaseResult r = run_chase(*example1().sample_database, example1().ontology,
                            ChaseGuard::unbounded());
  CHECK(r.status == ChaseStatus::Fixpoint);
  CHECK(r.stages == 4);
  CHECK(r.instance.size() == 5);
  CHECK(r.instance == example1_fixpoint());
  CHECK(instance_height(r.instance) == 2);
}

TEST_CASE("empty rule set returns the database at stage zero") {
  SourceOntology src = parse_ontology("@database R/2\n");
  Instance db = parse_facts("R(a,b).\nR(b,c).");
  ChaseResult r = run_chase(db, src.ontology, ChaseGuard::unbounded());
  CHECK(r.status == ChaseStatus::Fixpoint);
  CHECK(r.stages == 0);
  CHECK(r.instance == db);
}

TEST_CASE("height guard stops a growing chain with a witness") {
  const Fixture fx = *find_fixture("nonterminating");
  ChaseResult r =
      run_chase(*fx.sample_database, fx.ontology, ChaseGuard::height(2));
  CHECK(r.status == ChaseStatus::HeightExceeded);
  REQUIRE(r.witness.has_value());
  CHECK(term_height(*r.witness) == 3);
  REQUIRE(r.witness_stage.has_value());
  CHECK(*r.witness_stage == 3);
}

TEST_CASE("stage guard stops without a fixpoint") {
  const Fixture fx = *find_fixture("nonterminating");
  ChaseResult r =
      run_chase(*fx.sample_database, fx.ontology, ChaseGuard::stages(4));
  CHECK(r.status == ChaseStatus::StageLimit);
  CHECK(r.stages == 4);
}

TEST_CASE("database schema is enforced unless overridden") {
  SourceOntology src = parse_ontology("@database R/2\nR(X,Y) -> P(X).");
  Instance bad = parse_facts("T(a).");
  CHECK_THROWS_AS(run_chase(bad, src.ontology, ChaseGuard::unbounded()),
                  SchemaError);
  ChaseResult r = run_chase(bad, src.ontology, ChaseGuard::unbounded(),
                            /*skip_schema_check=*/true);
  CHECK(r.status == ChaseStatus::Fixpoint);
}

TEST_CASE("query entailment answers") {
  Query q1 = parse_query("? :- S(X,Y), S(Y,Z).");
  CHECK(entails_bcq(*example1().sample_database, example1().ontology, q1,
                    ChaseGuard::unbounded()) == Entailment::True);

  SourceOntology empty_rules = parse_ontology("@database R/2\n@query R/2\n");
  Instance db = parse_facts("R(a,b).");
  Query q2 = parse_query("? :- R(X,X).");
  CHECK(entails_bcq(db, empty_rules.ontology, q2, ChaseGuard::unbounded()) ==
        Entailment::False);

  const Fixture nonterm = *find_fixture("nonterminating");
  Query q3 = parse_query("? :- R(X,X).");
  CHECK(entails_bcq(*nonterm.sample_database, nonterm.ontology, q3,
                    ChaseGuard::stages(10)) == Entailment::Unknown);

  // A query satisfied inside a partial chase still answers True.
  Query q4 = parse_query("? :- R(X,Y), R(Y,Z).");
  CHECK(entails_bcq(*nonterm.sample_database, nonterm.ontology, q4,
                    ChaseGuard::stages(10)) == Entailment::True);
}

TEST_CASE("worldview restricts the chase to the query schema") {
  const Fixture fx = *find_fixture("example2_O0");
  Instance view =
      worldview(fx.ontology, *fx.sample_database, ChaseGuard::unbounded());
  CHECK(!view.empty());
  for (const Atom& fact : view) CHECK(fact.relation() == "R");
  Instance full =
      run_chase(*fx.sample_database, fx.ontology, ChaseGuard::unbounded())
          .instance;
  CHECK(view == restrict_to_schema(full, fx.ontology.query_schema()));

  // Empty query schema gives an empty worldview.
  SourceOntology no_q = parse_ontology("@database R/2\nR(X,Y) -> P(X).");
  CHECK(worldview(no_q.ontology, parse_facts("R(a,b)."),
                  ChaseGuard::unbounded()) == Instance{});

  // Empty database with body-bearing rules only: nothing derivable.
  CHECK(worldview(example1().ontology, Instance{}, ChaseGuard::unbounded()) ==
        Instance{});

  // Guard exhaustion raises instead of returning a partial view.
  const Fixture nonterm = *find_fixture("nonterminating");
  CHECK_THROWS_AS(worldview(nonterm.ontology, *nonterm.sample_database,
                            ChaseGuard::stages(5)),
                  GuardExhausted);
}

TEST_CASE("stages are monotone") {
  std::vector<SkolemRule> rules = skolemize(example1().ontology);
  Instance current = *example1().sample_database;
  for (int i = 0; i < 6; ++i) {
    Instance next = chase_stage(current, rules);
    for (const Atom& fact : current) CHECK(next.contains(fact));
    current = next;
  }
}

TEST_CASE("chase is independent of rule order") {
  // Swap the two rules of the bundled example. Skolem symbols follow the
  // rule index, so the swapped ontology names them sk_1_v / sk_2_y / sk_2_z;
  // the fact sets must agree up to that renaming, which hom-equivalence
  // detects on ground instances.
  SourceOntology swapped = parse_ontology(
      "@database R/2\n"
      "@query R/2, S/2\n"
      "R(X,Y), S(X,Z) -> exists V . R(Z,V).\n"
      "R(X,X) -> exists Y,Z . S(X,Y), S(Y,Z).\n");
  ChaseResult a = run_chase(*example1().sample_database, example1().ontology,
                            ChaseGuard::unbounded());
  ChaseResult b = run_chase(*example1().sample_database, swapped.ontology,
                            ChaseGuard::unbounded());
  CHECK(a.instance.size() == b.instance.size());
  CHECK(is_hom_equivalent(a.instance, b.instance));

  // With the SAME skolemized rules, permuting the rule list changes nothing.
  std::vector<SkolemRule> rules = skolemize(example1().ontology);
  std::vector<SkolemRule> reversed(rules.rbegin(), rules.rend());
  Instance i1 = *example1().sample_database;
  Instance i2 = i1;
  for (int s = 0; s < 5; ++s) {
    i1 = chase_stage(i1, rules);
    i2 = chase_stage(i2, reversed);
    CHECK(i1 == i2);
  }
}

TEST_CASE("existential-free chases match the naive datalog oracle") {
  std::mt19937 rng(606);
  for (int round = 0; round < 20; ++round) {
    RuleOntology o =
        testsupport::random_ontology(rng, /*allow_existentials=*/false, 5);
    Instance db = testsupport::random_database(rng, o, 8);
    ChaseResult r = run_chase(db, o, ChaseGuard::unbounded());
    REQUIRE(r.status == ChaseStatus::Fixpoint);
    Instance oracle = testsupport::datalog_fixpoint(o, db);
    INFO(print_ontology(o) << print_instance(db));
    CHECK(r.instance == oracle);
  }
}

TEST_CASE("critical database dominates instance height") {
  std::mt19937 rng(707);
  int both_fixpoint = 0;
  for (int round = 0; round < 50; ++round) {
    RuleOntology o = testsupport::random_ontology(rng, true);
    Instance db = testsupport::random_database(rng, o);
    ChaseResult plain = run_chase(db, o, ChaseGuard::stages(6));
    ChaseResult critical =
        run_chase(critical_database(o), o, ChaseGuard::stages(6));
    if (plain.status == ChaseStatus::Fixpoint &&
        critical.status == ChaseStatus::Fixpoint) {
      ++both_fixpoint;
      CHECK(instance_height(plain.instance) <=
            instance_height(critical.instance));
    }
  }
  CHECK(both_fixpoint > 10);
}

TEST_CASE("partial-chase true answers carry a checkable witness") {
  const Fixture nonterm = *find_fixture("nonterminating");
  ChaseResult r = run_chase(*nonterm.sample_database, nonterm.ontology,
                            ChaseGuard::stages(10));
  Query q = parse_query("? :- R(X,Y), R(Y,Z).");
  auto h = find_homomorphism(q.atoms, r.instance);
  REQUIRE(h.has_value());
  for (const Atom& atom : q.atoms) {
    CHECK(r.instance.contains(apply_substitution(*h, atom)));
  }
}
