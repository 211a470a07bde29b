#ifndef ALWB_TOOLS_CLI_HPP
#define ALWB_TOOLS_CLI_HPP

#include "alwb/alwb.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace alwb::cli {

enum Exit : int { kValid = 0, kInvalid = 1, kUnknown = 2, kError = 3 };

struct Config {
  std::uint64_t scenario_budget = kDefaultScenarioBudget;
  std::uint64_t search_bound = 32;
  bool machine = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::uint64_t budget_from_env() {
  const char* env = std::getenv("ALWB_SCENARIO_BUDGET");
  if (!env || !*env) return kDefaultScenarioBudget;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || v == 0) throw UsageError("ALWB_SCENARIO_BUDGET must be a positive integer");
  return v;
}

inline std::string read_all(std::istream& in) { return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()}; }

// Text from the positional argument, or from --file (a path, or - for stdin).
inline std::string input_text(const std::string& positional, const std::string& file, std::istream& in) {
  if (!file.empty() && !positional.empty()) throw UsageError("give either an argument or --file, not both");
  if (file.empty() && positional.empty()) throw UsageError("missing input");
  if (file == "-") return read_all(in);
  if (!file.empty()) {
    std::ifstream f(file);
    if (!f) throw UsageError("cannot read " + file);
    return read_all(f);
  }
  return positional;
}

inline std::string var_label(std::size_t v, const std::map<std::size_t, std::string>& names) {
  auto it = names.find(v);
  return it != names.end() ? it->second : "p" + std::to_string(v);
}

inline int report(std::ostream& out, const Verdict& v, bool machine, const std::map<std::size_t, std::string>& names = {}) {
  if (v.is_valid()) {
    out << (machine ? "verdict=valid\n" : "VALID\n");
    return kValid;
  }
  if (v.is_unknown()) {
    if (machine) out << "verdict=unknown\nbound=" << v.bound << "\n";
    else out << "UNKNOWN_UP_TO_BOUND=" << v.bound << "\n";
    return kUnknown;
  }
  const Model& m = *v.model;
  std::vector<std::pair<std::string, std::string>> entries;
  for (const auto& [var, el] : v.witness) entries.emplace_back(var_label(var, names), m.format(el));
  if (!m.is_mv() && m.interprets_f()) entries.emplace_back("f", m.format(m.point()));
  if (machine) {
    out << "verdict=invalid\nmodel=" << m.spec() << "\n";
    for (const auto& [k, val] : entries) out << k << "=" << val << "\n";
  } else {
    out << "INVALID\nwitness: ";
    for (std::size_t i = 0; i < entries.size(); ++i) out << (i ? ", " : "") << entries[i].first << "=" << entries[i].second;
    out << "\nmodel: " << m.spec() << "\n";
  }
  return kInvalid;
}

}  // namespace detail

/// Runs one command line (without the program name) and returns the exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in = std::cin) {
  CLI::App app{"Decision and proof tools for Abelian logic and its pointed extensions", "alwb"};
  app.require_subcommand(1);
  Config cfg;
  std::string budget_text;
  app.add_flag("--machine", cfg.machine, "key=value output");
  app.add_option("--budget", budget_text, "scenario budget (default ALWB_SCENARIO_BUDGET or 2^20)");

  std::string logic_name, model_spec, text, file, assign, formula_text, consecution_text, map_name, rule_name, seq;
  std::size_t cutoff = 0;
  std::uint64_t n_cap = 4, length = 0;
  std::string build_start;

  auto* decide_cmd = app.add_subcommand("decide", "decide a consecution in a logic or a model");
  decide_cmd->add_option("--logic", logic_name);
  decide_cmd->add_option("--model", model_spec);
  decide_cmd->add_option("--bound", cfg.search_bound, "search bound for discrete models");
  decide_cmd->add_option("consecution", text);
  decide_cmd->add_option("--file", file, "read the consecution from a file (- for stdin)");

  auto* eval_cmd = app.add_subcommand("eval", "evaluate a formula in a model");
  eval_cmd->add_option("--model", model_spec)->required();
  eval_cmd->add_option("--assign", assign);
  eval_cmd->add_option("--formula", text);
  eval_cmd->add_option("--file", file);

  auto* translate_cmd = app.add_subcommand("translate", "apply luk2lu or flip");
  translate_cmd->add_option("--map", map_name)->required()->check(CLI::IsMember({"luk2lu", "flip"}));
  translate_cmd->add_option("--formula", formula_text);
  translate_cmd->add_option("--consecution", consecution_text);

  auto* approx_cmd = app.add_subcommand("approx", "decide a finite approximant of an infinitary rule");
  approx_cmd->add_option("--rule", rule_name)->required()->check(CLI::IsMember({"arch", "archv", "idc", "idcv", "hay", "lu"}));
  approx_cmd->add_option("--n", cutoff)->required();
  approx_cmd->add_option("--logic", logic_name);
  approx_cmd->add_option("--model", model_spec);
  approx_cmd->add_option("--bound", cfg.search_bound);

  auto* proof_cmd = app.add_subcommand("check-proof", "check a Hilbert-style proof file");
  proof_cmd->add_option("path", text);
  proof_cmd->add_option("--file", file);

  auto* sds_cmd = app.add_subcommand("sds-check", "check or build a strongly decreasing sequence prefix");
  sds_cmd->add_option("--model", model_spec)->required();
  sds_cmd->add_option("--seq", seq, "comma separated elements");
  sds_cmd->add_option("--ncap", n_cap);
  sds_cmd->add_option("--build", build_start, "start value for a halving sequence");
  sds_cmd->add_option("--length", length);

  auto* verify_cmd = app.add_subcommand("witness-verify", "check that an assignment refutes a consecution");
  verify_cmd->add_option("--model", model_spec)->required();
  verify_cmd->add_option("--assign", assign)->required();
  verify_cmd->add_option("consecution", text);
  verify_cmd->add_option("--file", file);

  std::vector<const char*> argv{"alwb"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : kError;
  }

  const bool machine = cfg.machine;
  try {
    cfg.scenario_budget = budget_text.empty() ? detail::budget_from_env() : std::stoull(budget_text);
    if (cfg.scenario_budget == 0) throw UsageError("budget must be positive");
    DecideOptions opt{cfg.scenario_budget};

    auto pick_logic = [&]() -> const LogicId& {
      auto found = find_logic(logic_name);
      if (found.notice) err << "note: " << *found.notice << "\n";
      return *found.logic;
    };
    auto need_one_target = [&]() {
      if (logic_name.empty() == model_spec.empty()) throw UsageError("give exactly one of --logic or --model");
    };

    if (*decide_cmd) {
      need_one_target();
      Consecution c = parse_consecution(detail::input_text(text, file, in));
      if (!logic_name.empty()) return detail::report(out, decide(pick_logic(), c, opt), machine);
      return detail::report(out, decide_in_model(parse_model(model_spec), c, cfg.search_bound, opt), machine);
    }

    if (*eval_cmd) {
      Model m = parse_model(model_spec);
      auto parsed = parse_assignment(m, assign);
      if (parsed.f_value && !(m.interprets_f() && parsed.f_value->coords == m.point().coords))
        throw UsageError("f is fixed by the model point");
      Formula x = parse_formula(detail::input_text(text, file, in));
      Element value = evaluate(m, parsed.values, x);
      bool designated = m.designated(value);
      if (machine) out << "value=" << m.format(value) << "\ndesignated=" << (designated ? "true" : "false") << "\n";
      else out << m.format(value) << ", " << (designated ? "designated" : "not designated") << "\n";
      return 0;
    }

    if (*translate_cmd) {
      if (formula_text.empty() == consecution_text.empty()) throw UsageError("give exactly one of --formula or --consecution");
      std::string result;
      if (!formula_text.empty()) {
        Formula x = parse_formula(formula_text);
        result = print_formula(map_name == "flip" ? tau_flip(x) : tau_luk_to_lu(x));
      } else {
        Consecution c = parse_consecution(consecution_text);
        result = print_consecution(map_name == "flip" ? tau_flip(c) : tau_luk_to_lu(c));
      }
      out << (machine ? "result=" : "") << result << "\n";
      return 0;
    }

    if (*approx_cmd) {
      need_one_target();
      RuleName r = rule_schema(rule_name).name;
      auto names = schema_variable_names(r, cutoff);
      if (!logic_name.empty()) return detail::report(out, approx_decide(r, cutoff, pick_logic(), opt), machine, names);
      return detail::report(out, approx_decide(r, cutoff, parse_model(model_spec), cfg.search_bound, opt), machine, names);
    }

    if (*proof_cmd) {
      if (!text.empty() && !file.empty()) throw UsageError("give either a path or --file, not both");
      std::string body = detail::input_text("", text.empty() ? file : text, in);
      ProofResult res = check_proof(parse_proof(body));
      if (res.accepted) {
        out << (machine ? "result=accepted\n" : "ACCEPTED\n");
        return 0;
      }
      if (machine) out << "result=rejected\nstep=" << res.step << "\nreason=" << res.reason << "\n";
      else out << "REJECTED at step " << res.step << ": " << res.reason << "\n";
      return 1;
    }

    if (*sds_cmd) {
      Model m = parse_model(model_spec);
      std::vector<Element> prefix;
      if (!build_start.empty()) {
        if (!seq.empty()) throw UsageError("give either --seq or --build");
        prefix = build_sd_sequence(m, parse_rational(build_start), length == 0 ? 1 : length);
      } else {
        if (seq.empty()) throw UsageError("missing --seq");
        for (auto item : alwb::detail::split_top(seq, ',')) prefix.push_back(parse_element(m, item));
      }
      bool ok = check_strongly_decreasing(m, prefix, n_cap);
      std::string rendered;
      for (std::size_t i = 0; i < prefix.size(); ++i) rendered += (i ? ", " : "") + m.format(prefix[i]);
      if (machine) out << "sequence=" << rendered << "\nstrongly_decreasing=" << (ok ? "true" : "false") << "\nn_cap=" << n_cap << "\n";
      else out << (ok ? "STRONGLY_DECREASING" : "NOT_STRONGLY_DECREASING") << " (n_cap=" << n_cap << "): " << rendered << "\n";
      return ok ? 0 : 1;
    }

    if (*verify_cmd) {
      Model m = parse_model(model_spec);
      auto parsed = parse_assignment(m, assign);
      if (parsed.f_value && !(m.interprets_f() && parsed.f_value->coords == m.point().coords))
        throw UsageError("f is fixed by the model point");
      Consecution c = parse_consecution(detail::input_text(text, file, in));
      bool ok = refutes(m, parsed.values, c);
      if (machine) {
        out << "refutes=" << (ok ? "true" : "false") << "\n";
        for (std::size_t i = 0; i < c.premises.size(); ++i) out << "premise" << i << "=" << m.format(evaluate(m, parsed.values, c.premises[i])) << "\n";
        out << "conclusion=" << m.format(evaluate(m, parsed.values, c.conclusion)) << "\n";
      } else {
        out << (ok ? "REFUTES" : "DOES_NOT_REFUTE") << "\n";
      }
      return ok ? 0 : 1;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}

}  // namespace alwb::cli

#endif  // ALWB_TOOLS_CLI_HPP
