// Command-line surface for the chase toolkit: run the chase, answer Boolean
// queries, check weak acyclicity and height-boundedness, compile ontologies
// into weakly acyclic form, and emit generated ontologies and fixtures.
//
// Exit codes: 0 success / positive verdict / true-false answer; 1 input or
// parse error; 2 negative verdict or failed verification; 3 guard exhaustion
// or unknown.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chasekit/chasekit.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNegative = 2;
constexpr int kExitUnknown = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

chasekit::ChaseGuard make_guard(std::optional<std::size_t> max_height,
                                std::optional<std::size_t> max_steps) {
  if (!max_height && !max_steps) return chasekit::ChaseGuard::unbounded();
  chasekit::ChaseGuard guard;
  guard.max_height = max_height;
  guard.max_stages = max_steps;
  return guard;
}

// Facts must agree with the ontology's arities wherever the relation is
// known; unknown relations pass through (the chase simply never touches
// them).
void validate_fact_arities(const chasekit::Instance& facts,
                           const chasekit::RuleOntology& ontology) {
  const chasekit::Schema& schema = ontology.full_schema();
  for (const chasekit::Atom& fact : facts) {
    if (schema.contains(fact.relation()) &&
        schema.arity_of(fact.relation()) != fact.arity()) {
      throw chasekit::SchemaError(
          "fact " + chasekit::print_atom(fact) + " uses arity " +
          std::to_string(fact.arity()) + " but the ontology declares " +
          fact.relation() + "/" +
          std::to_string(schema.arity_of(fact.relation())));
    }
  }
}

chasekit::BoundSpec parse_bound_spec(const std::string& text) {
  auto parse_number = [&](const std::string& digits) {
    if (digits.empty()) throw std::invalid_argument("bound spec: " + text);
    for (char c : digits) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        throw std::invalid_argument("bound spec: " + text);
      }
    }
    return static_cast<std::size_t>(std::stoull(digits));
  };
  if (text.rfind("exp:", 0) == 0) {
    return chasekit::BoundSpec::exp_k(parse_number(text.substr(4)));
  }
  if (text.rfind("const:", 0) == 0) {
    std::size_t c = parse_number(text.substr(6));
    if (c == 0) throw std::invalid_argument("const bound must be positive");
    return chasekit::BoundSpec::constant(c);
  }
  if (text.rfind("height:", 0) == 0) {
    return chasekit::BoundSpec::height(parse_number(text.substr(7)));
  }
  throw std::invalid_argument("bound spec must be exp:K, const:C or height:H");
}

struct CommonIo {
  std::string ontology_path;
  std::string data_path;
  std::string query_path;
  std::string output_path;
  std::string format = "text";
  std::optional<std::size_t> max_height;
  std::optional<std::size_t> max_steps;
};

int cmd_chase(const CommonIo& io) {
  chasekit::RuleOntology ontology =
      chasekit::parse_ontology(read_file(io.ontology_path)).ontology;
  chasekit::Instance data = chasekit::parse_facts(read_file(io.data_path));
  validate_fact_arities(data, ontology);
  chasekit::ChaseResult result =
      chasekit::run_chase(data, ontology, make_guard(io.max_height, io.max_steps),
                          /*skip_schema_check=*/true);
  if (io.format == "json") {
    write_output(io.output_path,
                 chasekit::render_chase_result_json(result).dump(2) + "\n");
  } else {
    write_output(io.output_path, chasekit::render_chase_result_text(result));
  }
  return result.status == chasekit::ChaseStatus::Fixpoint ? kExitOk
                                                          : kExitUnknown;
}

int cmd_query(const CommonIo& io) {
  chasekit::RuleOntology ontology =
      chasekit::parse_ontology(read_file(io.ontology_path)).ontology;
  chasekit::Instance data = chasekit::parse_facts(read_file(io.data_path));
  validate_fact_arities(data, ontology);
  chasekit::Query query = chasekit::parse_query(read_file(io.query_path));
  for (const chasekit::Atom& atom : query.atoms) {
    const chasekit::Schema& schema = ontology.full_schema();
    if (schema.contains(atom.relation()) &&
        schema.arity_of(atom.relation()) != atom.arity()) {
      throw chasekit::SchemaError(
          "query atom " + chasekit::print_atom(atom) +
          " disagrees with the declared arity of " + atom.relation());
    }
    if (!ontology.query_schema().relations().empty() &&
        !ontology.query_schema().contains(atom.relation())) {
      std::cerr << "warning: query uses " << atom.relation()
                << ", which is not in the query schema\n";
    }
  }
  chasekit::Entailment answer = chasekit::entails_bcq(
      data, ontology, query, make_guard(io.max_height, io.max_steps),
      /*skip_schema_check=*/true);
  std::string text = answer == chasekit::Entailment::True    ? "true"
                     : answer == chasekit::Entailment::False ? "false"
                                                             : "unknown";
  if (io.format == "json") {
    nlohmann::json j;
    j["answer"] = text;
    write_output(io.output_path, j.dump(2) + "\n");
  } else {
    write_output(io.output_path, text + "\n");
  }
  return answer == chasekit::Entailment::Unknown ? kExitUnknown : kExitOk;
}

int cmd_check_wa(const CommonIo& io) {
  chasekit::RuleOntology ontology =
      chasekit::parse_ontology(read_file(io.ontology_path)).ontology;
  chasekit::WeakAcyclicityResult result =
      chasekit::is_weakly_acyclic(ontology);
  if (io.format == "json") {
    write_output(io.output_path,
                 chasekit::render_wa_json(result).dump(2) + "\n");
  } else {
    write_output(io.output_path, chasekit::render_wa_text(result));
  }
  return result.weakly_acyclic ? kExitOk : kExitNegative;
}

int cmd_check_bounded(const CommonIo& io, const std::string& delta) {
  chasekit::RuleOntology ontology =
      chasekit::parse_ontology(read_file(io.ontology_path)).ontology;
  chasekit::BoundSpec spec = parse_bound_spec(delta);
  chasekit::BoundednessVerdict verdict =
      chasekit::check_bounded(ontology, spec, io.max_steps);
  if (io.format == "json") {
    write_output(io.output_path,
                 chasekit::render_bounded_json(verdict).dump(2) + "\n");
  } else {
    write_output(io.output_path, chasekit::render_bounded_text(verdict));
  }
  switch (verdict.kind) {
    case chasekit::BoundednessVerdict::Kind::Bounded: return kExitOk;
    case chasekit::BoundednessVerdict::Kind::NotBounded: return kExitNegative;
    case chasekit::BoundednessVerdict::Kind::Unknown: return kExitUnknown;
  }
  return kExitUnknown;
}

int cmd_rewrite(const CommonIo& io, std::size_t height,
                const std::vector<std::string>& verify_paths) {
  chasekit::RuleOntology original =
      chasekit::parse_ontology(read_file(io.ontology_path)).ontology;
  chasekit::NormalizeResult normalized = chasekit::normalize(original);
  chasekit::RewriteOutput rewritten =
      chasekit::build_rewrite(normalized.ontology, height);

  write_output(io.output_path, chasekit::print_ontology(rewritten.ontology));
  if (!io.output_path.empty()) {
    std::ostringstream map_text;
    map_text << "# relation encoding\n";
    for (const auto& [from, to] : rewritten.symbol_map) {
      map_text << from << " -> " << to << "\n";
    }
    if (!normalized.fact_renaming.empty()) {
      map_text << "# database input renaming\n";
      for (const auto& [from, to] : normalized.fact_renaming) {
        map_text << from << " -> " << to << "\n";
      }
    }
    write_output(io.output_path + ".map", map_text.str());
  }

  if (verify_paths.empty()) return kExitOk;
  chasekit::ChaseGuard guard =
      chasekit::ChaseGuard::stages(io.max_steps.value_or(1000));
  for (const std::string& path : verify_paths) {
    chasekit::Instance db = chasekit::parse_facts(read_file(path));
    validate_fact_arities(db, original);
    try {
      if (!chasekit::verify_equivalence(original, rewritten.ontology, db, {},
                                        guard, normalized.fact_renaming)) {
        std::cerr << "verification failed on " << path << "\n";
        return kExitNegative;
      }
    } catch (const chasekit::GuardExhausted& e) {
      std::cerr << "verification inconclusive on " << path << ": " << e.what()
                << "\n";
      return kExitUnknown;
    }
  }
  return kExitOk;
}

int cmd_gen_order(std::size_t k, std::size_t n, const std::string& out_path) {
  chasekit::RuleOntology ontology =
      chasekit::gen_order_ontology(chasekit::OrderParams{k, n});
  write_output(out_path, chasekit::print_ontology(ontology));
  return kExitOk;
}

int cmd_fixture(const std::string& name, bool list, const std::string& out,
                const std::string& data_out, const std::string& expected_out) {
  if (list) {
    std::string text;
    for (const chasekit::Fixture& f : chasekit::fixtures()) {
      text += f.name + "\n";
    }
    write_output(out, text);
    return kExitOk;
  }
  std::optional<chasekit::Fixture> fixture = chasekit::find_fixture(name);
  if (!fixture) {
    std::cerr << "error: unknown fixture '" << name << "'\n";
    return kExitInput;
  }
  write_output(out, chasekit::print_ontology(fixture->ontology));
  if (!data_out.empty()) {
    if (!fixture->sample_database) {
      std::cerr << "error: fixture has no sample database\n";
      return kExitInput;
    }
    write_output(data_out, chasekit::print_instance(*fixture->sample_database));
  }
  if (!expected_out.empty()) {
    if (!fixture->expected_facts) {
      std::cerr << "error: fixture has no expected facts\n";
      return kExitInput;
    }
    write_output(expected_out,
                 chasekit::print_instance(*fixture->expected_facts));
  }
  return kExitOk;
}

int cmd_size_bound(const CommonIo& io, std::size_t height,
                   std::size_t constants) {
  chasekit::RuleOntology ontology =
      chasekit::parse_ontology(read_file(io.ontology_path)).ontology;
  chasekit::BigNat bound =
      chasekit::chase_size_bound(ontology, height, constants);
  write_output(io.output_path, bound.str() + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Existential-rule toolkit: chase, queries, acyclicity and "
               "boundedness checks, weakly acyclic compilation, generators"};
  app.require_subcommand(1);

  CommonIo io;
  std::string delta;
  std::size_t height = 0;
  std::size_t constants = 1;
  std::size_t gen_k = 0;
  std::size_t gen_n = 2;
  std::vector<std::string> verify_paths;
  std::string fixture_name;
  std::string fixture_data_out;
  std::string fixture_expected_out;
  bool fixture_list = false;

  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", io.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    cmd->add_option("-o,--output", io.output_path,
                    "Write output to this file instead of stdout");
  };
  auto add_guards = [&](CLI::App* cmd) {
    cmd->add_option("--max-height", io.max_height,
                    "Stop when a term exceeds this height");
    cmd->add_option("--max-steps", io.max_steps,
                    "Stop after this many chase stages");
  };

  CLI::App* chase = app.add_subcommand("chase", "Run the chase to fixpoint");
  chase->add_option("--ontology", io.ontology_path, "Ontology file")
      ->required();
  chase->add_option("--data", io.data_path, "Fact file")->required();
  add_guards(chase);
  add_format(chase);

  CLI::App* query =
      app.add_subcommand("query", "Answer a Boolean conjunctive query");
  query->add_option("--ontology", io.ontology_path, "Ontology file")
      ->required();
  query->add_option("--data", io.data_path, "Fact file")->required();
  query->add_option("--query", io.query_path, "Query file")->required();
  add_guards(query);
  add_format(query);

  CLI::App* check = app.add_subcommand("check", "Static analyses");
  check->require_subcommand(1);
  CLI::App* check_wa =
      check->add_subcommand("wa", "Weak acyclicity of the rule set");
  check_wa->add_option("--ontology", io.ontology_path, "Ontology file")
      ->required();
  add_format(check_wa);
  CLI::App* check_bounded = check->add_subcommand(
      "bounded", "Height boundedness via the critical database");
  check_bounded->add_option("--ontology", io.ontology_path, "Ontology file")
      ->required();
  check_bounded
      ->add_option("--delta", delta, "Bound: exp:K, const:C or height:H")
      ->required();
  check_bounded->add_option("--max-steps", io.max_steps,
                            "Give up (unknown) after this many stages");
  add_format(check_bounded);

  CLI::App* rewrite = app.add_subcommand(
      "rewrite", "Compile a height-bounded ontology to a weakly acyclic one");
  rewrite->add_option("--ontology", io.ontology_path, "Ontology file")
      ->required();
  rewrite->add_option("--height", height, "Height bound the input satisfies")
      ->required();
  rewrite->add_option("-o,--output", io.output_path, "Output ontology file")
      ->required();
  rewrite->add_option("--verify", verify_paths,
                      "Fact files to verify equivalence on");
  rewrite->add_option("--max-steps", io.max_steps,
                      "Stage budget for verification chases (default 1000)");

  CLI::App* gen_order = app.add_subcommand(
      "gen-order", "Generate a doubling linear-order ontology");
  gen_order->add_option("--k", gen_k, "Bound class index")
      ->capture_default_str();
  gen_order->add_option("--n", gen_n, "Seed order length")->required();
  gen_order->add_option("-o,--output", io.output_path, "Output file");

  CLI::App* fixture =
      app.add_subcommand("fixture", "Emit a built-in example ontology");
  fixture->add_option("name", fixture_name, "Fixture name");
  fixture->add_flag("--list", fixture_list, "List fixture names");
  fixture->add_option("-o,--output", io.output_path, "Output file");
  fixture->add_option("--data-out", fixture_data_out,
                      "Also write the sample database here");
  fixture->add_option("--expected-out", fixture_expected_out,
                      "Also write the expected chase facts here");

  CLI::App* size_bound = app.add_subcommand(
      "size-bound", "Upper bound on the chase size at a given height");
  size_bound->add_option("--ontology", io.ontology_path, "Ontology file")
      ->required();
  size_bound->add_option("--height", height, "Height bound")->required();
  size_bound
      ->add_option("--constants", constants, "Number of constants available")
      ->required();
  add_format(size_bound);

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(chase)) return cmd_chase(io);
    if (app.got_subcommand(query)) return cmd_query(io);
    if (app.got_subcommand(check)) {
      if (check->got_subcommand(check_wa)) return cmd_check_wa(io);
      return cmd_check_bounded(io, delta);
    }
    if (app.got_subcommand(rewrite))
      return cmd_rewrite(io, height, verify_paths);
    if (app.got_subcommand(gen_order))
      return cmd_gen_order(gen_k, gen_n, io.output_path);
    if (app.got_subcommand(fixture)) {
      if (!fixture_list && fixture_name.empty()) {
        std::cerr << "error: give a fixture name or --list\n";
        return kExitInput;
      }
      return cmd_fixture(fixture_name, fixture_list, io.output_path,
                         fixture_data_out, fixture_expected_out);
    }
    if (app.got_subcommand(size_bound))
      return cmd_size_bound(io, height, constants);
  } catch (const chasekit::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const chasekit::SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const chasekit::GuardExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUnknown;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
