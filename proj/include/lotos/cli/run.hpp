#pragma once

// Command-line driver. Results go to `out`, diagnostics to `err`.
//
// Exit codes: 0 success / property holds / contract passes; 1 property
// fails or contract violated; 2 usage, parse, validation or I/O error;
// 3 exploration budget exceeded.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "lotos/adl/config.hpp"
#include "lotos/contracts/check.hpp"
#include "lotos/io.hpp"
#include "lotos/semantics/lts.hpp"
#include "lotos/syntax/adl_parser.hpp"
#include "lotos/syntax/asc_parser.hpp"
#include "lotos/syntax/parser.hpp"
#include "lotos/syntax/printer.hpp"
#include "lotos/syntax/transform.hpp"
#include "lotos/verify/aut.hpp"
#include "lotos/verify/checks.hpp"

namespace lotos::cli {

enum ExitCode : int { kOk = 0, kFails = 1, kError = 2, kBudget = 3 };

enum class Format { text, json };

struct RunConfig {
  Format format = Format::text;
  std::string input;
  semantics::ExplorationBudget budget;
  std::string output;          // lts -o, adl --emit-lot
  bool deadlock = false;
  std::string reach;           // pattern text
  std::string safety;          // monitor path
  bool no_hide = false;
  std::string facts;
};

namespace detail {

using nlohmann::ordered_json;

class Runner {
 public:
  Runner(const RunConfig& cfg, std::ostream& out, std::ostream& err) : cfg_(cfg), out_(out), err_(err) {}

  int check() {
    auto spec = load_spec(cfg_.input);
    if (json()) {
      ordered_json j{{"command", "check"}, {"file", cfg_.input}, {"ok", spec.has_value()}};
      j["diagnostics"] = diagnostics_json(last_diags_);
      if (spec)
        j["specification"] = {{"name", spec->name},
                              {"gates", spec->top_gates},
                              {"sorts", spec->sorts.size()},
                              {"processes", spec->processes.size()}};
      emit(j);
    } else if (spec) {
      out_ << cfg_.input << ": ok (specification " << spec->name << ", " << spec->processes.size()
           << " process(es), " << spec->sorts.size() << " sort(s))\n";
    }
    return spec ? kOk : kError;
  }

  int lts() {
    auto spec = load_spec(cfg_.input);
    if (!spec) return kError;
    auto lts = explore(*spec);
    if (!lts) return exploration_code_;
    std::string aut = verify::export_aut(*lts);
    if (cfg_.output == "-") {
      out_ << aut;
      err_ << "states: " << lts->num_states << "\ntransitions: " << lts->transitions.size() << "\n";
      return kOk;
    }
    if (!cfg_.output.empty() && !write_file(cfg_.output, aut)) return kError;
    if (json()) {
      ordered_json j{{"command", "lts"},
                     {"file", cfg_.input},
                     {"states", lts->num_states},
                     {"transitions", lts->transitions.size()},
                     {"output", cfg_.output.empty() ? ordered_json() : ordered_json(cfg_.output)}};
      emit(j);
    } else {
      out_ << "states: " << lts->num_states << "\ntransitions: " << lts->transitions.size() << "\n";
    }
    return kOk;
  }

  int verify() {
    auto spec = load_spec(cfg_.input);
    if (!spec) return kError;
    if (cfg_.no_hide) *spec = syntax::strip_hiding(*spec);

    std::optional<verify::LabelPattern> pattern;
    std::optional<verify::Monitor> monitor;
    std::string property, subject;
    if (!cfg_.reach.empty()) {
      try {
        pattern = verify::parse_pattern(cfg_.reach);
      } catch (const verify::PatternError& e) {
        err_ << "error: " << e.what() << "\n";
        return kError;
      }
      property = "reach";
      subject = verify::to_string(*pattern);
    } else if (!cfg_.safety.empty()) {
      auto text = read_input(cfg_.safety);
      if (!text) return kError;
      auto m = verify::parse_monitor(*text);
      if (!m.ok()) {
        report(cfg_.safety, m.diagnostics);
        return kError;
      }
      monitor = std::move(*m.value);
      property = "safety";
      subject = monitor->name;
    } else {
      property = "deadlock";
    }

    auto lts = explore(*spec);
    if (!lts) return exploration_code_;
    verify::VerifyResult r = pattern   ? verify::check_reachable(*lts, *pattern)
                             : monitor ? verify::check_safety(*lts, *monitor)
                                       : verify::check_deadlock(*lts);
    const char* evidence_name = property == "reach" ? "witness" : "counterexample";
    if (json()) {
      ordered_json j{{"command", "verify"}, {"file", cfg_.input}, {"property", property}};
      if (!subject.empty()) j["subject"] = subject;
      j["no_hide"] = cfg_.no_hide;
      j["verdict"] = r.holds() ? "holds" : "fails";
      j["evidence"] = r.evidence ? trace_json(*r.evidence) : ordered_json();
      j["explored_states"] = r.explored_states;
      j["states"] = lts->num_states;
      j["transitions"] = lts->transitions.size();
      emit(j);
    } else {
      out_ << property;
      if (!subject.empty()) out_ << " " << subject;
      out_ << ": " << (r.holds() ? "holds" : "fails") << " (" << lts->num_states << " states, "
           << lts->transitions.size() << " transitions, " << r.explored_states << " explored)\n";
      if (r.evidence)
        out_ << evidence_name << " (" << r.evidence->size() << " step(s)): " << verify::to_string(*r.evidence)
             << "\n";
    }
    return r.holds() ? kOk : kFails;
  }

  int contract() {
    auto text = read_input(cfg_.input);
    if (!text) return kError;
    auto asc = syntax::parse_asc(*text);
    if (!asc.ok()) {
      report(cfg_.input, asc.diagnostics);
      return kError;
    }
    auto facts_text = read_input(cfg_.facts);
    if (!facts_text) return kError;
    auto facts = contracts::parse_facts(*facts_text);
    if (!facts.ok()) {
      report(cfg_.facts, facts.diagnostics);
      return kError;
    }
    auto base_dir = std::filesystem::path(cfg_.input).parent_path();
    if (base_dir.empty()) base_dir = ".";
    contracts::ContractReport rep = contracts::check_asc(*asc, *facts, base_dir, cfg_.budget);
    if (rep.bc && !rep.bc->diagnostics.empty()) report(rep.bc->ref.path, rep.bc->diagnostics);
    if (json())
      emit(report_json(rep));
    else
      print_report(rep);
    return rep.passed() ? kOk : kFails;
  }

  int adl() {
    auto text = read_input(cfg_.input);
    if (!text) return kError;
    auto base_dir = std::filesystem::path(cfg_.input).parent_path();
    if (base_dir.empty()) base_dir = ".";
    auto cfg = syntax::parse_adl(*text, base_dir);
    if (!cfg.ok()) {
      report(cfg_.input, cfg.diagnostics);
      return kError;
    }
    auto diags = adl::validate_config(*cfg);
    for (const auto& d : diags) err_ << cfg_.input << ": error [" << d.code << "] " << d.detail << "\n";
    std::optional<syntax::Specification> flat;
    if (diags.empty()) {
      auto f = adl::flatten(*cfg);
      flat = f.spec;
      if (flat && !cfg_.output.empty() && !write_file(cfg_.output, syntax::to_string(*flat))) return kError;
    }
    auto names = [&](adl::ElementKind k) {
      std::vector<std::string> v;
      for (const auto& e : cfg->elements)
        if (e.kind == k) v.push_back(e.name);
      return v;
    };
    if (json()) {
      ordered_json j{{"command", "adl"}, {"file", cfg_.input}, {"configuration", cfg->name}, {"valid", diags.empty()}};
      j["diagnostics"] = ordered_json::array();
      for (const auto& d : diags) j["diagnostics"].push_back({{"code", d.code}, {"detail", d.detail}});
      j["components"] = names(adl::ElementKind::component);
      j["connectors"] = names(adl::ElementKind::connector);
      j["top_gates"] = flat ? ordered_json(flat->top_gates) : ordered_json();
      j["emitted"] = flat && !cfg_.output.empty() ? ordered_json(cfg_.output) : ordered_json();
      emit(j);
    } else if (flat) {
      out_ << "configuration " << cfg->name << ": valid (" << names(adl::ElementKind::component).size()
           << " component(s), " << names(adl::ElementKind::connector).size() << " connector(s))\n";
      out_ << "top gates: [";
      for (std::size_t i = 0; i < flat->top_gates.size(); ++i) out_ << (i ? ", " : "") << flat->top_gates[i];
      out_ << "]\n";
      if (!cfg_.output.empty()) out_ << "wrote " << cfg_.output << "\n";
    }
    return diags.empty() ? kOk : kError;
  }

 private:
  bool json() const { return cfg_.format == Format::json; }

  void emit(const ordered_json& j) { out_ << j.dump(2) << "\n"; }

  std::optional<std::string> read_input(const std::string& path) {
    auto text = read_text_file(path);
    if (!text) err_ << path << ": error [" << syntax::code::io << "] cannot read file\n";
    return text;
  }

  bool write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (f << content) return true;
    err_ << path << ": error [" << syntax::code::io << "] cannot write file\n";
    return false;
  }

  void report(const std::string& file, const std::vector<syntax::Diagnostic>& diags) {
    for (const auto& d : diags) err_ << file << ":" << d << "\n";
  }

  std::optional<syntax::Specification> load_spec(const std::string& path) {
    last_diags_.clear();
    auto text = read_text_file(path);
    if (!text) {
      last_diags_.push_back({syntax::Severity::error, {}, "cannot read file", syntax::code::io});
      report(path, last_diags_);
      return std::nullopt;
    }
    auto spec = syntax::parse_spec(*text);
    last_diags_ = spec.diagnostics;
    report(path, last_diags_);
    return spec.value;
  }

  std::optional<semantics::Lts> explore(const syntax::Specification& spec) {
    try {
      return semantics::generate_lts(spec, cfg_.budget);
    } catch (const semantics::BudgetExceeded& e) {
      err_ << cfg_.input << ": error [budget-exceeded] " << e.what() << "\n";
      exploration_code_ = kBudget;
    } catch (const semantics::UnguardedRecursion& e) {
      err_ << cfg_.input << ": error [unguarded-recursion] " << e.what() << "\n";
      exploration_code_ = kError;
    }
    return std::nullopt;
  }

  static ordered_json diagnostics_json(const std::vector<syntax::Diagnostic>& diags) {
    ordered_json a = ordered_json::array();
    for (const auto& d : diags)
      a.push_back({{"line", d.location.line},
                   {"column", d.location.column},
                   {"severity", d.severity == syntax::Severity::error ? "error" : "warning"},
                   {"code", d.code},
                   {"message", d.message}});
    return a;
  }

  static ordered_json trace_json(const verify::Trace& t) {
    ordered_json a = ordered_json::array();
    for (const auto& x : t) a.push_back(semantics::render(x));
    return a;
  }

  static ordered_json report_json(const contracts::ContractReport& rep) {
    ordered_json j{{"command", "contract"}, {"component", rep.component}, {"passed", rep.passed()}};
    ordered_json witness = ordered_json::array();
    for (const auto& [v, t] : rep.sc.witness) witness.push_back({{"variable", v}, {"term", t}});
    j["sc"] = {{"holds", rep.sc.holds}, {"witness", witness}};
    j["ic_violations"] = ordered_json::array();
    for (const auto& v : rep.ic_violations)
      j["ic_violations"].push_back({{"constraint", v.constraint}, {"elements", v.elements}, {"detail", v.detail}});
    if (!rep.bc) {
      j["bc"] = nullptr;
      return j;
    }
    const auto& bc = *rep.bc;
    ordered_json b{{"specification", bc.ref.spec_name}, {"path", bc.ref.path}, {"passed", bc.passed()}};
    b["diagnostics"] = diagnostics_json(bc.diagnostics);
    b["gate_errors"] = bc.gate_errors;
    b["exploration_error"] = bc.exploration_error ? ordered_json(*bc.exploration_error) : ordered_json();
    b["states"] = bc.states;
    b["transitions"] = bc.transitions;
    if (bc.deadlock) {
      b["deadlock_free"] = bc.deadlock->holds();
      b["counterexample"] = bc.deadlock->evidence ? trace_json(*bc.deadlock->evidence) : ordered_json();
    } else {
      b["deadlock_free"] = nullptr;
      b["counterexample"] = nullptr;
    }
    j["bc"] = b;
    return j;
  }

  void print_report(const contracts::ContractReport& rep) {
    out_ << "component " << rep.component << ": " << (rep.passed() ? "PASS" : "FAIL") << "\n";
    out_ << "  sc: " << (rep.sc.holds ? "holds" : "fails");
    if (!rep.sc.witness.empty()) {
      out_ << " {";
      for (std::size_t i = 0; i < rep.sc.witness.size(); ++i)
        out_ << (i ? ", " : "") << rep.sc.witness[i].first << " = " << rep.sc.witness[i].second;
      out_ << "}";
    }
    out_ << "\n  ic: " << (rep.ic_violations.empty() ? "ok" : std::to_string(rep.ic_violations.size()) + " violation(s)")
         << "\n";
    for (const auto& v : rep.ic_violations) out_ << "    " << v.constraint << ": " << v.detail << "\n";
    if (!rep.bc) {
      out_ << "  bc: none\n";
      return;
    }
    const auto& bc = *rep.bc;
    out_ << "  bc: " << bc.ref.spec_name << " from \"" << bc.ref.path << "\": " << (bc.passed() ? "ok" : "failed") << "\n";
    if (syntax::has_errors(bc.diagnostics)) out_ << "    specification has " << bc.diagnostics.size() << " error(s)\n";
    for (const auto& g : bc.gate_errors) out_ << "    " << g << "\n";
    if (bc.exploration_error) out_ << "    " << *bc.exploration_error << "\n";
    if (bc.deadlock) {
      out_ << "    " << bc.states << " states, " << bc.transitions << " transitions, deadlock "
           << (bc.deadlock->holds() ? "free" : "reachable") << "\n";
      if (bc.deadlock->evidence) out_ << "    counterexample: " << verify::to_string(*bc.deadlock->evidence) << "\n";
    }
  }

  const RunConfig& cfg_;
  std::ostream& out_;
  std::ostream& err_;
  std::vector<syntax::Diagnostic> last_diags_;
  int exploration_code_ = kError;
};

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"LOTOS specifications, architecture configurations and design-component contracts", "lotosadl"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

  auto* check = app.add_subcommand("check", "Parse and validate a specification");
  check->add_option("file", cfg.input, ".lot file")->required();

  auto* lts = app.add_subcommand("lts", "Generate the LTS and export it in .aut format");
  lts->add_option("file", cfg.input, ".lot file")->required();
  lts->add_option("--max-states", cfg.budget.max_states, "State budget")->check(CLI::PositiveNumber);
  lts->add_option("--max-transitions", cfg.budget.max_transitions, "Transition budget")->check(CLI::PositiveNumber);
  lts->add_option("-o,--output", cfg.output, ".aut output path ('-' for standard output)");

  auto* ver = app.add_subcommand("verify", "Check a property on the LTS");
  ver->add_option("file", cfg.input, ".lot file")->required();
  auto* dl = ver->add_flag("--deadlock", cfg.deadlock, "Deadlock freedom");
  auto* re = ver->add_option("--reach", cfg.reach, "Reachability of an action pattern, e.g. 'terClt !* !*'");
  auto* sa = ver->add_option("--safety", cfg.safety, "Safety monitor file");
  dl->excludes(re)->excludes(sa);
  re->excludes(sa);
  ver->add_flag("--no-hide", cfg.no_hide, "Remove every hide operator before exploration");
  ver->add_option("--max-states", cfg.budget.max_states, "State budget")->check(CLI::PositiveNumber);
  ver->add_option("--max-transitions", cfg.budget.max_transitions, "Transition budget")->check(CLI::PositiveNumber);

  auto* con = app.add_subcommand("contract", "Check a design-component contract");
  con->add_option("file", cfg.input, ".asc file")->required();
  con->add_option("--facts", cfg.facts, ".facts file")->required();

  auto* adl = app.add_subcommand("adl", "Validate and flatten an architecture configuration");
  adl->add_option("file", cfg.input, ".adl file")->required();
  adl->add_option("--emit-lot", cfg.output, "Write the flattened specification");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
    if (ver->parsed() && !cfg.deadlock && cfg.reach.empty() && cfg.safety.empty())
      throw CLI::ValidationError("verify", "one of --deadlock, --reach or --safety is required");
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run 'lotosadl --help' for usage\n";
    return kError;
  }
  cfg.format = format == "json" ? Format::json : Format::text;

  detail::Runner runner(cfg, out, err);
  if (check->parsed()) return runner.check();
  if (lts->parsed()) return runner.lts();
  if (ver->parsed()) return runner.verify();
  if (con->parsed()) return runner.contract();
  return runner.adl();
}

}  // namespace lotos::cli
