#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include "support/test_support.hpp"

using namespace chasekit;
using testsupport::CliResult;
using testsupport::TempDir;
using testsupport::run_cli;

namespace {

const std::string kExample1 =
    "@database R/2\n"
    "@query R/2, S/2\n"
    "R(X,X) -> exists Y,Z . S(X,Y), S(Y,Z).\n"
    "R(X,Y), S(X,Z) -> exists V . R(Z,V).\n";

const std::string kNonterminating =
    "@database R/2\n@query R/2\nR(X,Y) -> exists Z . R(Y,Z).\n";

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("cli chase reaches the recorded fixpoint") {
  TempDir dir;
  std::string onto = dir.write("o.rules", kExample1);
  std::string data = dir.write("d.facts", "R(a,a).\n");
  CliResult r = run_cli("chase --ontology " + onto + " --data " + data);
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "status: fixpoint\n"));
  CHECK(contains(r.output, "stages: 4\n"));
  CHECK(contains(r.output, "fact_count: 5\n"));
  CHECK(contains(r.output, "max_height: 2\n"));
  CHECK(contains(r.output, "R(a,a).\n"));
  CHECK(contains(r.output, "S(a,sk_1_y(a)).\n"));
  CHECK(contains(r.output, "S(sk_1_y(a),sk_1_z(a)).\n"));
  CHECK(contains(r.output, "R(sk_1_y(a),sk_2_v(sk_1_y(a))).\n"));
  CHECK(contains(r.output, "R(sk_1_z(a),sk_2_v(sk_1_z(a))).\n"));
}

TEST_CASE("cli chase honors the stage guard") {
  TempDir dir;
  std::string onto = dir.write("o.rules", kNonterminating);
  std::string data = dir.write("d.facts", "R(a,b).\n");
  CliResult r = run_cli("chase --ontology " + onto + " --data " + data +
                        " --max-steps 10");
  CHECK(r.exit_code == 3);
  CHECK(contains(r.output, "status: stage-limit\n"));

  CliResult h = run_cli("chase --ontology " + onto + " --data " + data +
                        " --max-height 2");
  CHECK(h.exit_code == 3);
  CHECK(contains(h.output, "status: height-exceeded\n"));
  CHECK(contains(h.output, "witness: "));
}

TEST_CASE("cli chase with no rules echoes the facts") {
  TempDir dir;
  std::string onto = dir.write("empty.rules", "# no rules\n");
  std::string data = dir.write("d.facts", "R(a,b).\nS(c).\n");
  CliResult r = run_cli("chase --ontology " + onto + " --data " + data);
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "stages: 0\n"));
  CHECK(contains(r.output, "fact_count: 2\n"));
  CHECK(contains(r.output, "R(a,b).\n"));
  CHECK(contains(r.output, "S(c).\n"));
}

TEST_CASE("cli chase rejects malformed input with exit 1") {
  TempDir dir;
  std::string onto = dir.write("bad.rules", "R(X -> S(X).\n");
  std::string data = dir.write("d.facts", "R(a).\n");
  CliResult r = run_cli("chase --ontology " + onto + " --data " + data);
  CHECK(r.exit_code == 1);

  std::string good = dir.write("good.rules", "R(X,Y) -> S(X).\n");
  std::string bad_data = dir.write("bad.facts", "R(a,X).\n");
  CliResult r2 = run_cli("chase --ontology " + good + " --data " + bad_data);
  CHECK(r2.exit_code == 1);

  // Arity mismatch between facts and rules.
  std::string narrow = dir.write("narrow.facts", "R(a).\n");
  CliResult r3 = run_cli("chase --ontology " + good + " --data " + narrow);
  CHECK(r3.exit_code == 1);
}

TEST_CASE("cli chase json output carries the same fields") {
  TempDir dir;
  std::string onto = dir.write("o.rules", kExample1);
  std::string data = dir.write("d.facts", "R(a,a).\n");
  CliResult r = run_cli("chase --ontology " + onto + " --data " + data +
                        " --format json");
  CHECK(r.exit_code == 0);
  nlohmann::json j = nlohmann::json::parse(r.output);
  CHECK(j["status"] == "fixpoint");
  CHECK(j["stages"] == 4);
  CHECK(j["fact_count"] == 5);
  CHECK(j["max_height"] == 2);
  CHECK(j["facts"].size() == 5);
}

TEST_CASE("cli query answers") {
  TempDir dir;
  std::string onto = dir.write("o.rules", kExample1);
  std::string data = dir.write("d.facts", "R(a,a).\n");
  std::string q1 = dir.write("q1.query", "? :- S(X,Y), S(Y,Z).\n");
  CliResult r1 = run_cli("query --ontology " + onto + " --data " + data +
                         " --query " + q1);
  CHECK(r1.exit_code == 0);
  CHECK(r1.output == "true\n");

  std::string empty = dir.write("empty.rules", "@database R/2\n@query R/2\n");
  std::string d2 = dir.write("d2.facts", "R(a,b).\n");
  std::string q2 = dir.write("q2.query", "? :- R(X,X).\n");
  CliResult r2 = run_cli("query --ontology " + empty + " --data " + d2 +
                         " --query " + q2);
  CHECK(r2.exit_code == 0);
  CHECK(r2.output == "false\n");

  std::string nonterm = dir.write("n.rules", kNonterminating);
  std::string d3 = dir.write("d3.facts", "R(a,b).\n");
  CliResult r3 = run_cli("query --ontology " + nonterm + " --data " + d3 +
                         " --query " + q2 + " --max-steps 5");
  CHECK(r3.exit_code == 3);
  CHECK(r3.output == "unknown\n");
}

TEST_CASE("cli weak acyclicity check") {
  TempDir dir;
  std::string onto = dir.write("o.rules", kExample1);
  CliResult r = run_cli("check wa --ontology " + onto);
  CHECK(r.exit_code == 2);
  CHECK(contains(r.output, "verdict: not-wa\n"));
  CHECK(contains(r.output, "cycle: (R,1) (S,2) (R,1)\n"));

  std::string datalog = dir.write("dl.rules", "R(X,Y) -> S(Y,X).\n");
  CliResult ok = run_cli("check wa --ontology " + datalog);
  CHECK(ok.exit_code == 0);
  CHECK(contains(ok.output, "verdict: wa\n"));
}

TEST_CASE("cli boundedness check") {
  TempDir dir;
  std::string onto = dir.write("o.rules", kExample1);
  CliResult ok = run_cli("check bounded --ontology " + onto +
                         " --delta const:2");
  CHECK(ok.exit_code == 0);
  CHECK(contains(ok.output, "verdict: bounded\n"));
  CHECK(contains(ok.output, "max_height: 2\n"));
  CHECK(contains(ok.output, "chase_size: 5\n"));

  CliResult no = run_cli("check bounded --ontology " + onto +
                         " --delta const:1");
  CHECK(no.exit_code == 2);
  CHECK(contains(no.output, "verdict: not-bounded\n"));
  CHECK(contains(no.output, "witness: sk_2_v(sk_1_y(*))\n"));
  CHECK(contains(no.output, "witness_stage: 2\n"));

  std::string nonterm = dir.write("n.rules", kNonterminating);
  CliResult grow = run_cli("check bounded --ontology " + nonterm +
                           " --delta const:3");
  CHECK(grow.exit_code == 2);
  CHECK(contains(grow.output, "verdict: not-bounded\n"));

  CliResult unknown = run_cli("check bounded --ontology " + nonterm +
                              " --delta exp:2 --max-steps 5");
  CHECK(unknown.exit_code == 3);
  CHECK(contains(unknown.output, "verdict: unknown\n"));

  CliResult bad = run_cli("check bounded --ontology " + onto +
                          " --delta nonsense:9");
  CHECK(bad.exit_code == 1);
}

TEST_CASE("cli rewrite emits the ten-rule compilation and its map") {
  TempDir dir;
  std::string onto = dir.write(
      "o0.rules",
      "@database D/2\n@query R/2\n"
      "D(X,Y) -> R(X,Y).\n"
      "R(X,X) -> exists Y,Z . S(X,Y), S(Y,Z).\n"
      "R(X,Y), S(X,Z) -> exists V . R(Z,V).\n");
  std::string out = dir.path("rewritten.rules");
  CliResult r = run_cli("rewrite --ontology " + onto + " --height 2 -o " +
                        out);
  CHECK(r.exit_code == 0);

  SourceOntology rewritten = parse_ontology(testsupport::read_file(out));
  CHECK(rewritten.ontology.rules().size() == 10);
  CHECK(is_weakly_acyclic(rewritten.ontology).weakly_acyclic);
  Fixture golden = *find_fixture("example2_rewritten");
  CHECK(testsupport::isomorphic_ontologies(rewritten.ontology,
                                           golden.ontology));

  std::string map_text = testsupport::read_file(out + ".map");
  CHECK(contains(map_text, "R -> R_star\n"));
  CHECK(contains(map_text, "S -> S_star\n"));
  CHECK(contains(map_text, "D -> D_star\n"));
}

TEST_CASE("cli rewrite of a datalog ontology is the identity") {
  TempDir dir;
  std::string text =
      "@database P/2\n@query Q/2\nP(X,Y) -> Q(Y,X).\n";
  std::string onto = dir.write("dl.rules", text);
  std::string out = dir.path("dl_out.rules");
  CliResult r =
      run_cli("rewrite --ontology " + onto + " --height 3 -o " + out);
  CHECK(r.exit_code == 0);
  SourceOntology a = parse_ontology(text);
  SourceOntology b = parse_ontology(testsupport::read_file(out));
  CHECK(a.ontology == b.ontology);
}

TEST_CASE("cli rewrite verifies equivalence on supplied databases") {
  TempDir dir;
  std::string onto = dir.write(
      "o0.rules",
      "@database D/2\n@query R/2\n"
      "D(X,Y) -> R(X,Y).\n"
      "R(X,X) -> exists Y,Z . S(X,Y), S(Y,Z).\n"
      "R(X,Y), S(X,Z) -> exists V . R(Z,V).\n");
  std::string data = dir.write("d.facts", "D(a,a).\n");
  std::string out = dir.path("verified.rules");
  CliResult r = run_cli("rewrite --ontology " + onto +
                        " --height 2 --verify " + data + " -o " + out);
  CHECK(r.exit_code == 0);

  // A non-normal input is normalized first; verification renames the facts.
  std::string raw = dir.write("raw.rules", kExample1);
  std::string rdata = dir.write("r.facts", "R(a,a).\n");
  std::string out2 = dir.path("normalized.rules");
  CliResult r2 = run_cli("rewrite --ontology " + raw +
                         " --height 2 --verify " + rdata + " -o " + out2);
  CHECK(r2.exit_code == 0);

  // Verifying a nonterminating input reports guard exhaustion, exit 3.
  std::string nonterm = dir.write("n.rules", kNonterminating);
  std::string ndata = dir.write("nd.facts", "R(a,b).\n");
  std::string out3 = dir.path("nonterm.rules");
  CliResult r3 = run_cli("rewrite --ontology " + nonterm +
                         " --height 2 --verify " + ndata +
                         " --max-steps 20 -o " + out3);
  CHECK(r3.exit_code == 3);
}

TEST_CASE("cli gen-order writes a chaseable ontology") {
  TempDir dir;
  std::string out = dir.path("order.rules");
  CliResult r = run_cli("gen-order --k 0 --n 2 -o " + out);
  CHECK(r.exit_code == 0);

  SourceOntology o = parse_ontology(testsupport::read_file(out));
  ChaseResult chase = run_chase(Instance{}, o.ontology,
                                ChaseGuard::unbounded());
  REQUIRE(chase.status == ChaseStatus::Fixpoint);
  std::size_t chain_edges = 0;
  std::set<Term> elements;
  for (const Atom& fact : chase.instance) {
    if (fact.relation() == "Succ_1") {
      ++chain_edges;
      elements.insert(fact.terms()[0]);
      elements.insert(fact.terms()[1]);
    }
  }
  CHECK(chain_edges == 3);
  CHECK(elements.size() == 4);

  CliResult bad = run_cli("gen-order --k 0 --n 1 -o " + dir.path("x.rules"));
  CHECK(bad.exit_code == 1);
}

TEST_CASE("cli fixture output is byte-stable") {
  TempDir dir;
  std::string out1 = dir.path("f1.rules");
  std::string out2 = dir.path("f2.rules");
  CHECK(run_cli("fixture example1 -o " + out1).exit_code == 0);
  CHECK(run_cli("fixture example1 -o " + out2).exit_code == 0);
  std::string text1 = testsupport::read_file(out1);
  CHECK(text1 == testsupport::read_file(out2));
  CHECK(parse_ontology(text1).ontology ==
        find_fixture("example1")->ontology);

  CliResult list = run_cli("fixture --list");
  CHECK(list.exit_code == 0);
  CHECK(contains(list.output, "example1"));
  CHECK(contains(list.output, "example2_O0"));
  CHECK(contains(list.output, "example2_rewritten"));
  CHECK(contains(list.output, "nonterminating"));

  CliResult missing = run_cli("fixture no_such -o " + dir.path("y.rules"));
  CHECK(missing.exit_code == 1);

  // Sample data and expected chase are exported on demand.
  std::string dpath = dir.path("ex1.facts");
  std::string epath = dir.path("ex1.expected");
  CHECK(run_cli("fixture example1 -o " + dir.path("ex1.rules") +
                " --data-out " + dpath + " --expected-out " + epath)
            .exit_code == 0);
  CHECK(parse_facts(testsupport::read_file(dpath)) ==
        parse_facts("R(a,a)."));
  CHECK(parse_facts(testsupport::read_file(epath)).size() == 5);
}

TEST_CASE("cli size-bound prints the combinatorial bound") {
  TempDir dir;
  std::string onto = dir.write("o.rules", kExample1);
  CliResult r = run_cli("size-bound --ontology " + onto +
                        " --height 2 --constants 1");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "338\n");
}

TEST_CASE("cli commands are deterministic") {
  TempDir dir;
  std::string onto = dir.write("o.rules", kExample1);
  std::string data = dir.write("d.facts", "R(a,a).\n");
  std::string cmd = "chase --ontology " + onto + " --data " + data;
  CliResult first = run_cli(cmd);
  CliResult second = run_cli(cmd);
  CHECK(first.output == second.output);
  CHECK(first.exit_code == second.exit_code);

  CliResult wa1 = run_cli("check wa --ontology " + onto);
  CliResult wa2 = run_cli("check wa --ontology " + onto);
  CHECK(wa1.output == wa2.output);
}

TEST_CASE("cli json check output") {
  TempDir dir;
  std::string onto = dir.write("o.rules", kExample1);
  CliResult wa = run_cli("check wa --ontology " + onto + " --format json");
  CHECK(wa.exit_code == 2);
  nlohmann::json j = nlohmann::json::parse(wa.output);
  CHECK(j["verdict"] == "not-wa");
  CHECK(j["cycle"].size() == 3);
  CHECK(j["cycle"][0]["relation"] == "R");
  CHECK(j["cycle"][0]["index"] == 1);

  CliResult b = run_cli("check bounded --ontology " + onto +
                        " --delta const:2 --format json");
  CHECK(b.exit_code == 0);
  nlohmann::json jb = nlohmann::json::parse(b.output);
  CHECK(jb["verdict"] == "bounded");
  CHECK(jb["max_height"] == 2);
  CHECK(jb["chase_size"] == 5);
}
