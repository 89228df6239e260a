#include <catch2/catch_amalgamated.hpp>

#include "support/test_support.hpp"

using namespace chasekit;

namespace {

Term cst(const std::string& n) { return Term::constant(n); }
Term var(const std::string& n) { return Term::variable(n); }

}  // namespace

TEST_CASE("parse a rule with existentials") {
  SourceOntology src =
      parse_ontology("R(X,X) -> exists Y,Z . S(X,Y), S(Y,Z).");
  REQUIRE(src.ontology.rules().size() == 1);
  const Rule& rule = src.ontology.rules()[0];
  REQUIRE(rule.frontier().size() == 1);
  CHECK(rule.frontier()[0] == var("X"));
  REQUIRE(rule.existentials().size() == 2);
  CHECK(rule.existentials()[0] == var("Y"));
  CHECK(rule.existentials()[1] == var("Z"));
  CHECK(rule.body().size() == 1);
  CHECK(rule.head().size() == 2);
}

TEST_CASE("arity conflicts are rejected with a position") {
  try {
    parse_ontology("R(X,Y) -> R(X).");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    std::string msg = e.what();
    CHECK(msg.find("R") != std::string::npos);
    CHECK(msg.find("arity") != std::string::npos);
    // Diagnostics carry a line:column location.
    CHECK(msg.find("1:") != std::string::npos);
  }
}

TEST_CASE("empty-body ground rules parse") {
  SourceOntology src = parse_ontology("-> P(c).");
  REQUIRE(src.ontology.rules().size() == 1);
  const Rule& rule = src.ontology.rules()[0];
  CHECK(rule.body().empty());
  REQUIRE(rule.head().size() == 1);
  CHECK(rule.head()[0] == Atom("P", {cst("c")}));
}

TEST_CASE("declarations populate the schemas") {
  SourceOntology src = parse_ontology(
      "# a comment\n"
      "@database R/2\n"
      "@query R/2, S/2\n"
      "R(X,X) -> exists Y,Z . S(X,Y), S(Y,Z).\n");
  CHECK(src.ontology.db_schema().contains("R"));
  CHECK(src.ontology.db_schema().arity_of("R") == 2);
  CHECK(src.ontology.query_schema().contains("S"));
  CHECK(src.ontology.query_schema().size() == 2);
}

TEST_CASE("existential declarations are validated both ways") {
  // Declared variable also occurs in the body.
  CHECK_THROWS_AS(parse_ontology("R(X,Y) -> exists Y . S(X,Y)."), ParseError);
  // Declared variable missing from the head.
  CHECK_THROWS_AS(parse_ontology("R(X) -> exists Y . S(X)."), ParseError);
  // Head-only variable that was never declared.
  CHECK_THROWS_AS(parse_ontology("R(X) -> S(X,Y)."), ParseError);
}

TEST_CASE("facts parse including functional terms") {
  Instance facts = parse_facts("R(a,a).");
  CHECK(facts.size() == 1);
  CHECK(facts.contains(Atom("R", {cst("a"), cst("a")})));

  Instance skolem_fact = parse_facts("S(a, sk_1_y(a)).");
  REQUIRE(skolem_fact.size() == 1);
  const Atom& fact = *skolem_fact.begin();
  CHECK(fact.relation() == "S");
  CHECK(term_height(fact.terms()[1]) == 1);
  CHECK(fact.terms()[1] ==
        Term::func(SkolemSymbol{"sk_1_y", 1}, {cst("a")}));

  // Duplicates collapse under set semantics.
  CHECK(parse_facts("P(a).\nP(a).\n").size() == 1);

  // Null literals are accepted in facts.
  Instance with_null = parse_facts("R(a, _:n1).");
  REQUIRE(with_null.size() == 1);
  CHECK(with_null.begin()->terms()[1] == Term::null("n1"));
}

TEST_CASE("non-ground facts are rejected") {
  CHECK_THROWS_AS(parse_facts("R(a,X)."), ParseError);
}

TEST_CASE("queries parse") {
  Query q1 = parse_query("? :- S(X,Y), S(Y,Z).");
  CHECK(q1.atoms.size() == 2);

  Query q2 = parse_query("? :- R(a,X).");
  REQUIRE(q2.atoms.size() == 1);
  CHECK(q2.atoms[0].terms()[0] == cst("a"));
  CHECK(q2.atoms[0].terms()[1] == var("X"));

  CHECK_THROWS_AS(parse_query("?- R(X)"), ParseError);
}

TEST_CASE("reserved tokens are rejected") {
  // The star constant is reserved for the analysis module.
  CHECK_THROWS_AS(parse_facts("R(*, a)."), ParseError);
  CHECK_THROWS_AS(parse_ontology("R(X, *) -> S(X)."), ParseError);
  // "exists" is a keyword, not an identifier.
  CHECK_THROWS_AS(parse_ontology("exists(X) -> S(X)."), ParseError);
  // Null literals belong to facts only.
  CHECK_THROWS_AS(parse_ontology("R(X, _:n) -> S(X)."), ParseError);
  CHECK_THROWS_AS(parse_query("? :- R(_:n)."), ParseError);
  // Functional terms belong to facts only.
  CHECK_THROWS_AS(parse_ontology("R(f(X)) -> S(X)."), ParseError);
  CHECK_THROWS_AS(parse_query("? :- R(f(a))."), ParseError);
}

TEST_CASE("syntax errors carry line and column") {
  try {
    parse_ontology("R(X) -> S(X).\nT(Y -> U(Y).\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("2:") != std::string::npos);
  }
}

TEST_CASE("printing skolem terms uses the rule-index naming") {
  Term inner = Term::func(SkolemSymbol{"sk_1_y", 1}, {cst("a")});
  CHECK(print_term(Term::func(SkolemSymbol{"sk_2_v", 1}, {cst("a")})) ==
        "sk_2_v(a)");
  CHECK(print_term(Term::func(SkolemSymbol{"sk_2_v", 1}, {inner})) ==
        "sk_2_v(sk_1_y(a))");
}

TEST_CASE("printing quotes awkward constants") {
  CHECK(print_term(cst("a")) == "a");
  CHECK(print_term(cst("42")) == "42");
  CHECK(print_term(cst("Upper")) == "\"Upper\"");
  CHECK(print_term(cst("two words")) == "\"two words\"");
  CHECK(print_term(cst("_")) == "_");
  CHECK(print_term(Term::null("n7")) == "_:n7");
}

TEST_CASE("ontology round-trips through print and parse") {
  for (const Fixture& fx : fixtures()) {
    std::string text = print_ontology(fx.ontology);
    SourceOntology again = parse_ontology(text);
    INFO("fixture " << fx.name << "\n" << text);
    CHECK(again.ontology == fx.ontology);
    // Printing the reparse is byte-identical.
    CHECK(print_ontology(again.ontology) == text);
  }
}

TEST_CASE("random ontologies round-trip") {
  std::mt19937 rng(404);
  for (int round = 0; round < 60; ++round) {
    RuleOntology o = testsupport::random_ontology(rng, true);
    std::string text = print_ontology(o);
    SourceOntology again = parse_ontology(text);
    INFO(text);
    CHECK(again.ontology == o);
  }
}

TEST_CASE("random instances round-trip") {
  std::mt19937 rng(505);
  for (int round = 0; round < 40; ++round) {
    RuleOntology o = testsupport::random_ontology(rng, true);
    Instance db = testsupport::random_database(rng, o);
    CHECK(parse_facts(print_instance(db)) == db);
  }
  // Chase output with functional terms round-trips too.
  Fixture fx = *find_fixture("example1");
  Instance chase =
      run_chase(*fx.sample_database, fx.ontology, ChaseGuard::unbounded())
          .instance;
  CHECK(parse_facts(print_instance(chase)) == chase);
}

TEST_CASE("printing is insensitive to construction order") {
  Instance forward, backward;
  std::vector<Atom> facts{Atom("R", {cst("a"), cst("b")}),
                          Atom("R", {cst("b"), cst("a")}),
                          Atom("S", {cst("c")})};
  for (const Atom& f : facts) forward.insert(f);
  for (auto it = facts.rbegin(); it != facts.rend(); ++it) {
    backward.insert(*it);
  }
  CHECK(print_instance(forward) == print_instance(backward));

  // Atom order inside a rule is canonicalized as well.
  SourceOntology a = parse_ontology("R(X,Y), S(Y) -> T(X).");
  SourceOntology b = parse_ontology("S(Y), R(X,Y) -> T(X).");
  CHECK(print_ontology(a.ontology) == print_ontology(b.ontology));
}

TEST_CASE("query round-trips") {
  Query q = parse_query("? :- S(X,Y), S(Y,Z), R(a,X).");
  CHECK(parse_query(print_query(q)) == q);
}
