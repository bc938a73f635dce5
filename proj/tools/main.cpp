// Batch front end: parsing, proof checking, the three evaluators, the S2S
// translation and the regular-set decisions, with stable exit codes for
// scripting:
//   0  success / checked true
//   1  well-formed but false or rejected
//   2  usage error
//   3  input format error
// Results go to stdout (or --out FILE), diagnostics to stderr.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ipc2/interval.hpp"
#include "ipc2/kripke.hpp"
#include "ipc2/proof.hpp"
#include "ipc2/regular.hpp"
#include "ipc2/s2s.hpp"
#include "ipc2/syntax.hpp"
#include "ipc2/topology.hpp"

namespace {

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json read_json(const std::string& path) {
  try {
    return nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw InputError("'" + path + "': " + e.what());
  }
}

ipc2::FormulaPtr parse_formula(const std::string& text) {
  try {
    return ipc2::parse(text);
  } catch (const ipc2::ParseError& e) {
    throw InputError(e.what());
  }
}

// {"worlds": [...], "leq": [[a,b],...], "domains": "principal" | {world: [[w,...],...]}}
ipc2::KripkeFrame frame_from_json(const nlohmann::json& j) {
  std::vector<std::string> worlds = j.at("worlds").get<std::vector<std::string>>();
  std::vector<std::pair<std::string, std::string>> leq;
  for (const auto& pair : j.at("leq")) leq.emplace_back(pair.at(0), pair.at(1));
  const auto& dom = j.at("domains");
  if (dom.is_string() && dom.get<std::string>() == "principal")
    return ipc2::KripkeFrame::principal(std::move(worlds), leq);
  if (!dom.is_object()) throw InputError("frame: \"domains\" must be \"principal\" or an object");

  auto name_index = [&](const std::string& n) {
    for (std::size_t i = 0; i < worlds.size(); ++i)
      if (worlds[i] == n) return static_cast<int>(i);
    throw InputError("frame: unknown world '" + n + "'");
  };
  std::vector<std::vector<ipc2::WorldMask>> domains(worlds.size());
  for (const auto& [world, families] : dom.items()) {
    int w = name_index(world);
    for (const auto& family : families) {
      ipc2::WorldMask m = 0;
      for (const auto& member : family) m |= 1u << name_index(member.get<std::string>());
      domains[w].push_back(m);
    }
  }
  return ipc2::KripkeFrame(std::move(worlds), leq, std::move(domains));
}

ipc2::FinitePoset poset_from_json(const nlohmann::json& j) {
  std::vector<std::string> elements = j.at("elements").get<std::vector<std::string>>();
  std::vector<std::pair<std::string, std::string>> leq;
  for (const auto& pair : j.at("leq")) leq.emplace_back(pair.at(0), pair.at(1));
  return ipc2::FinitePoset(std::move(elements), leq);
}

// {prop: [world, ...], ...}
ipc2::WorldValuation world_valuation_from_json(const nlohmann::json& j,
                                               const ipc2::KripkeFrame& frame) {
  ipc2::WorldValuation v;
  for (const auto& [prop, worlds] : j.items()) {
    ipc2::WorldMask m = 0;
    for (const auto& w : worlds) m |= 1u << frame.world_index(w.get<std::string>());
    v.emplace(ipc2::Proposition(prop), m);
  }
  return v;
}

ipc2::TopoValuation topo_valuation_from_json(const nlohmann::json& j,
                                             const ipc2::FinitePoset& poset) {
  ipc2::TopoValuation v;
  for (const auto& [prop, elems] : j.items()) {
    ipc2::ElemMask m = 0;
    for (const auto& e : elems) m |= 1u << poset.index(e.get<std::string>());
    v.emplace(ipc2::Proposition(prop), ipc2::OpenSet(poset, m));
  }
  return v;
}

// {prop: [[[l_num,l_den],[r_num,r_den]], ...], ...}
ipc2::IntervalValuation interval_valuation_from_json(const nlohmann::json& j) {
  ipc2::IntervalValuation v;
  for (const auto& [prop, intervals] : j.items()) {
    std::vector<ipc2::DyInterval> parts;
    for (const auto& iv : intervals) {
      auto num_den = [&](const nlohmann::json& pair) {
        return ipc2::Dyadic::from_fraction(pair.at(0).get<long long>(),
                                           pair.at(1).get<long long>());
      };
      parts.push_back({num_den(iv.at(0)), num_den(iv.at(1))});
    }
    v.emplace(ipc2::Proposition(prop), ipc2::DyadicOpenSet::of(std::move(parts)));
  }
  return v;
}

std::string world_set_string(const ipc2::KripkeFrame& f, ipc2::WorldMask m) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < f.world_count(); ++i)
    if ((m >> i) & 1u) {
      if (!first) out += ", ";
      out += f.world_names()[i];
      first = false;
    }
  return out + "}";
}

std::string elem_set_string(const ipc2::FinitePoset& p, ipc2::ElemMask m) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < p.size(); ++i)
    if ((m >> i) & 1u) {
      if (!first) out += ", ";
      out += p.names()[i];
      first = false;
    }
  return out + "}";
}

struct Output {
  std::string path;  // empty: stdout

  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << text;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Second-order intuitionistic propositional logic toolkit"};
  app.require_subcommand(1);

  std::string out_path;
  app.add_option("--out", out_path, "Write results to FILE instead of stdout");

  // parse FILE
  auto* cmd_parse = app.add_subcommand("parse", "Parse a formula file and dump its tree");
  std::string parse_file;
  cmd_parse->add_option("file", parse_file, "File containing one formula")->required();

  // check-proof FILE --calculus VARIANT
  auto* cmd_check = app.add_subcommand("check-proof", "Check a proof tree in JSON form");
  std::string proof_file;
  std::string calculus = "ipc2";
  cmd_check->add_option("file", proof_file, "Proof JSON file")->required();
  cmd_check->add_option("--calculus", calculus, "ipc2 | ipc2-minus | ipc2-cd | ipc")
      ->check(CLI::IsMember({"ipc2", "ipc2-minus", "ipc2-cd", "ipc"}));

  // eval kripke|topo|interval
  auto* cmd_eval = app.add_subcommand("eval", "Evaluate a formula in one of the semantics");
  cmd_eval->require_subcommand(1);
  std::string model_file, formula_text, valuation_file;
  int pool_depth = 2;

  auto* eval_kripke = cmd_eval->add_subcommand("kripke", "Evaluate over a Kripke frame");
  eval_kripke->add_option("frame", model_file, "Frame JSON file")->required();
  eval_kripke->add_option("formula", formula_text, "Formula text")->required();
  eval_kripke->add_option("--valuation", valuation_file, "Valuation JSON file");

  auto* eval_topo = cmd_eval->add_subcommand("topo", "Evaluate over the opens of a finite poset");
  eval_topo->add_option("poset", model_file, "Poset JSON file")->required();
  eval_topo->add_option("formula", formula_text, "Formula text")->required();
  eval_topo->add_option("--valuation", valuation_file, "Valuation JSON file");

  auto* eval_interval = cmd_eval->add_subcommand("interval", "Sandwich evaluation over (0,1)");
  eval_interval->add_option("formula", formula_text, "Formula text")->required();
  eval_interval->add_option("--valuation", valuation_file, "Valuation JSON file");
  eval_interval->add_option("--pool-depth", pool_depth, "Quantifier pool depth (1..3)");

  // translate FORMULA [--rationals] [--wrap] [--expand-subset]
  auto* cmd_translate = app.add_subcommand("translate", "Compile a formula to S2S");
  std::string translate_text;
  bool flag_rationals = false, flag_wrap = false, flag_expand_subset = false;
  cmd_translate->add_option("formula", translate_text, "Formula text")->required();
  cmd_translate->add_flag("--rationals", flag_rationals, "Replace U guards by the rational-path guard");
  cmd_translate->add_flag("--wrap", flag_wrap, "Emit the closed truth sentence");
  cmd_translate->add_flag("--expand-subset", flag_expand_subset, "Expand subset atoms at emission");

  // regular closed|encode|member
  auto* cmd_regular = app.add_subcommand("regular", "Decisions on regular node sets");
  cmd_regular->require_subcommand(1);
  std::string dfa_file, intervals_spec, rational_text;

  auto* reg_closed = cmd_regular->add_subcommand("closed", "Check the closedness condition");
  reg_closed->add_option("dfa", dfa_file, "DFA JSON file")->required();

  auto* reg_encode = cmd_regular->add_subcommand("encode", "Encode a closed set as a DFA");
  reg_encode->add_option("--intervals", intervals_spec, "e.g. \"1/4..1/2;3/4\"")->required();

  auto* reg_member = cmd_regular->add_subcommand("member", "Test membership of a rational");
  reg_member->add_option("dfa", dfa_file, "DFA JSON file")->required();
  reg_member->add_option("--rational", rational_text, "e.g. \"1/3\"")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  Output out{out_path};
  try {
    if (*cmd_parse) {
      auto phi = parse_formula(read_file(parse_file));
      out.write(ipc2::dump(phi) + "\n");
      return kExitTrue;
    }

    if (*cmd_check) {
      auto tree = ipc2::proof_from_json(read_json(proof_file));
      auto verdict = ipc2::check_proof(tree, ipc2::variant_from_name(calculus));
      if (verdict.accepted) {
        out.write("accepted\n");
        return kExitTrue;
      }
      out.write("rejected at " + verdict.path_string() + ": " +
                ipc2::reject_reason_name(verdict.reason) + " (" + verdict.detail + ")\n");
      return kExitFalse;
    }

    if (*eval_kripke) {
      auto frame = frame_from_json(read_json(model_file));
      auto phi = parse_formula(formula_text);
      ipc2::WorldValuation v;
      if (!valuation_file.empty()) v = world_valuation_from_json(read_json(valuation_file), frame);
      auto result = ipc2::eval_kripke(frame, v, phi);
      out.write(world_set_string(frame, result) + "\n");
      return result == frame.full_mask() ? kExitTrue : kExitFalse;
    }

    if (*eval_topo) {
      auto poset = poset_from_json(read_json(model_file));
      auto phi = parse_formula(formula_text);
      ipc2::TopoValuation v;
      if (!valuation_file.empty()) v = topo_valuation_from_json(read_json(valuation_file), poset);
      auto result = ipc2::eval_topo(poset, v, phi);
      out.write(elem_set_string(poset, result.mask()) + "\n");
      return result.mask() == poset.full_mask() ? kExitTrue : kExitFalse;
    }

    if (*eval_interval) {
      auto phi = ipc2::desugar(parse_formula(formula_text));
      ipc2::IntervalValuation v;
      if (!valuation_file.empty()) v = interval_valuation_from_json(read_json(valuation_file));
      auto pool = ipc2::QuantifierPool::generate(pool_depth);
      auto s = ipc2::eval_sandwich(phi, v, pool);
      out.write("lower: " + s.lower.str() + "\nupper: " + s.upper.str() + "\n");
      // upper != (0,1) refutes truth in (0,1); the sandwich never certifies it.
      return s.upper.is_full() ? kExitTrue : kExitFalse;
    }

    if (*cmd_translate) {
      auto phi = ipc2::desugar(parse_formula(translate_text));
      auto tr = ipc2::s2s::translate(phi);
      auto f = tr.formula;
      if (flag_rationals) f = ipc2::s2s::rational_mode(f);
      if (flag_wrap) f = ipc2::s2s::wrap_truth(f, static_cast<int>(tr.props.size()));
      out.write(ipc2::s2s::emit(f, flag_expand_subset) + "\n");
      return kExitTrue;
    }

    if (*reg_closed) {
      auto dfa = ipc2::RegularNodeSet::from_json(read_json(dfa_file));
      bool closed = ipc2::decide_closed(dfa);
      out.write(closed ? "true\n" : "false\n");
      return closed ? kExitTrue : kExitFalse;
    }

    if (*reg_encode) {
      auto c = ipc2::ClosedDyadicSet::parse_spec(intervals_spec);
      auto dfa = ipc2::encode_closed_set(c);
      out.write(dfa.to_json().dump(2) + "\n");
      return kExitTrue;
    }

    if (*reg_member) {
      auto dfa = ipc2::RegularNodeSet::from_json(read_json(dfa_file));
      auto slash = rational_text.find('/');
      long long num = std::stoll(rational_text.substr(0, slash));
      long long den = slash == std::string::npos ? 1 : std::stoll(rational_text.substr(slash + 1));
      bool member = ipc2::member_r(dfa, ipc2::Rational(num, den));
      out.write(member ? "true\n" : "false\n");
      return member ? kExitTrue : kExitFalse;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }

  std::cerr << "error: no subcommand selected\n";
  return kExitUsage;
}
