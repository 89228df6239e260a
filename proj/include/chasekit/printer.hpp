#pragma once

#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "chasekit/analysis.hpp"
#include "chasekit/atom.hpp"
#include "chasekit/chase.hpp"
#include "chasekit/instance.hpp"
#include "chasekit/rule.hpp"
#include "chasekit/term.hpp"

namespace chasekit {

namespace detail {

inline bool bare_constant_name(const std::string& name) {
  if (name.empty()) return false;
  if (name == "_" || name == "*") return true;
  if (name == "exists") return false;
  bool all_digits = true;
  for (char c : name) {
    if (!std::isdigit(static_cast<unsigned char>(c))) all_digits = false;
  }
  if (all_digits) return true;
  if (!std::islower(static_cast<unsigned char>(name[0]))) return false;
  for (char c : name) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

}  // namespace detail

inline std::string print_term(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Constant: {
      const std::string& name = t.name();
      if (detail::bare_constant_name(name)) return name;
      if (name.find('"') != std::string::npos ||
          name.find('\n') != std::string::npos) {
        throw std::invalid_argument("constant name cannot be printed: " +
                                    name);
      }
      return "\"" + name + "\"";
    }
    case Term::Kind::Variable:
      return t.name();
    case Term::Kind::Null:
      return "_:" + t.name();
    case Term::Kind::Func: {
      std::string out = t.name() + "(";
      bool first = true;
      for (const Term& arg : t.args()) {
        if (!first) out += ",";
        first = false;
        out += print_term(arg);
      }
      return out + ")";
    }
  }
  throw std::logic_error("unreachable term kind");
}

inline std::string print_atom(const Atom& a) {
  if (a.arity() == 0) return a.relation();
  std::string out = a.relation() + "(";
  bool first = true;
  for (const Term& t : a.terms()) {
    if (!first) out += ",";
    first = false;
    out += print_term(t);
  }
  return out + ")";
}

namespace detail {

inline std::string print_atom_list(const std::vector<Atom>& atoms) {
  std::string out;
  bool first = true;
  for (const Atom& a : atoms) {
    if (!first) out += ", ";
    first = false;
    out += print_atom(a);
  }
  return out;
}

}  // namespace detail

inline std::string print_rule(const Rule& r) {
  std::string out;
  if (!r.body().empty()) {
    out += detail::print_atom_list(r.body());
    out += " ";
  }
  out += "-> ";
  if (r.has_existentials()) {
    out += "exists ";
    bool first = true;
    for (const Term& v : r.existentials()) {
      if (!first) out += ",";
      first = false;
      out += v.name();
    }
    out += " . ";
  }
  out += detail::print_atom_list(r.head());
  out += ".";
  return out;
}

inline std::string print_query(const Query& q) {
  std::string out = "? :- ";
  bool first = true;
  for (const Atom& a : q.atoms) {
    if (!first) out += ", ";
    first = false;
    out += print_atom(a);
  }
  return out + ".";
}

namespace detail {

inline std::string print_schema_decl(const std::string& keyword,
                                     const Schema& schema) {
  if (schema.relations().empty()) return "";
  std::string out = keyword + " ";
  bool first = true;
  for (const auto& [name, arity] : schema.relations()) {
    if (!first) out += ", ";
    first = false;
    out += name + "/" + std::to_string(arity);
  }
  return out + "\n";
}

}  // namespace detail

// Canonical ontology text: sorted declarations, then the rules in sequence
// order, one per line. Structurally equal ontologies print byte-identically.
inline std::string print_ontology(const RuleOntology& o) {
  std::string out;
  out += detail::print_schema_decl("@database", o.db_schema());
  out += detail::print_schema_decl("@query", o.query_schema());
  for (const Rule& r : o.rules()) {
    out += print_rule(r);
    out += "\n";
  }
  return out;
}

// Canonical fact text: one fact per line in the instance's total order.
inline std::string print_instance(const Instance& instance) {
  std::string out;
  for (const Atom& fact : instance) {
    out += print_atom(fact);
    out += ".\n";
  }
  return out;
}

namespace detail {

inline std::string chase_status_name(ChaseStatus status) {
  switch (status) {
    case ChaseStatus::Fixpoint: return "fixpoint";
    case ChaseStatus::HeightExceeded: return "height-exceeded";
    case ChaseStatus::StageLimit: return "stage-limit";
  }
  throw std::logic_error("unreachable chase status");
}

}  // namespace detail

// Flat key/value rendering of a chase result; facts indented underneath.
inline std::string render_chase_result_text(const ChaseResult& result) {
  std::ostringstream out;
  out << "status: " << detail::chase_status_name(result.status) << "\n";
  out << "stages: " << result.stages << "\n";
  out << "fact_count: " << result.instance.size() << "\n";
  out << "max_height: " << instance_height(result.instance) << "\n";
  if (result.witness) {
    out << "witness: " << print_term(*result.witness) << "\n";
    out << "witness_stage: " << *result.witness_stage << "\n";
  }
  out << "facts:\n";
  for (const Atom& fact : result.instance) {
    out << "  " << print_atom(fact) << ".\n";
  }
  return out.str();
}

inline nlohmann::json render_chase_result_json(const ChaseResult& result) {
  nlohmann::json j;
  j["status"] = detail::chase_status_name(result.status);
  j["stages"] = result.stages;
  j["fact_count"] = result.instance.size();
  j["max_height"] = instance_height(result.instance);
  if (result.witness) {
    j["witness"] = print_term(*result.witness);
    j["witness_stage"] = *result.witness_stage;
  }
  std::vector<std::string> facts;
  for (const Atom& fact : result.instance) facts.push_back(print_atom(fact));
  j["facts"] = facts;
  return j;
}

inline std::string print_position(const Position& p) {
  return "(" + p.relation + "," + std::to_string(p.index) + ")";
}

inline std::string render_wa_text(const WeakAcyclicityResult& r) {
  std::ostringstream out;
  out << "verdict: " << (r.weakly_acyclic ? "wa" : "not-wa") << "\n";
  if (!r.weakly_acyclic) {
    out << "cycle:";
    for (const Position& p : r.cycle) out << " " << print_position(p);
    out << "\n";
  }
  return out.str();
}

inline nlohmann::json render_wa_json(const WeakAcyclicityResult& r) {
  nlohmann::json j;
  j["verdict"] = r.weakly_acyclic ? "wa" : "not-wa";
  if (!r.weakly_acyclic) {
    nlohmann::json cycle = nlohmann::json::array();
    for (const Position& p : r.cycle) {
      cycle.push_back({{"relation", p.relation}, {"index", p.index}});
    }
    j["cycle"] = cycle;
  }
  return j;
}

inline std::string render_bounded_text(const BoundednessVerdict& v) {
  std::ostringstream out;
  switch (v.kind) {
    case BoundednessVerdict::Kind::Bounded:
      out << "verdict: bounded\n";
      out << "max_height: " << v.max_height << "\n";
      out << "chase_size: " << v.chase_size << "\n";
      break;
    case BoundednessVerdict::Kind::NotBounded:
      out << "verdict: not-bounded\n";
      out << "witness: " << print_term(*v.witness) << "\n";
      out << "witness_stage: " << v.witness_stage << "\n";
      break;
    case BoundednessVerdict::Kind::Unknown:
      out << "verdict: unknown\n";
      out << "stages_run: " << v.stages_run << "\n";
      break;
  }
  return out.str();
}

inline nlohmann::json render_bounded_json(const BoundednessVerdict& v) {
  nlohmann::json j;
  switch (v.kind) {
    case BoundednessVerdict::Kind::Bounded:
      j["verdict"] = "bounded";
      j["max_height"] = v.max_height;
      j["chase_size"] = v.chase_size;
      break;
    case BoundednessVerdict::Kind::NotBounded:
      j["verdict"] = "not-bounded";
      j["witness"] = print_term(*v.witness);
      j["witness_stage"] = v.witness_stage;
      break;
    case BoundednessVerdict::Kind::Unknown:
      j["verdict"] = "unknown";
      j["stages_run"] = v.stages_run;
      break;
  }
  return j;
}

}  // namespace chasekit
