#pragma once

// Combined contract check: structural query, interface constraints and the
// behavioral specification (validated, explored, checked for deadlock, and
// matched against the interface's port ids).

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lotos/contracts/contract.hpp"
#include "lotos/contracts/facts.hpp"
#include "lotos/io.hpp"
#include "lotos/semantics/lts.hpp"
#include "lotos/syntax/parser.hpp"
#include "lotos/verify/checks.hpp"

namespace lotos::contracts {

struct BcReport {
  BehaviorRef ref;
  std::vector<syntax::Diagnostic> diagnostics;  // io, parse and validation errors
  std::vector<std::string> gate_errors;         // consistency with the interface contract
  std::optional<std::string> exploration_error; // budget exceeded or unguarded recursion
  std::optional<verify::VerifyResult> deadlock;
  std::size_t states = 0;
  std::size_t transitions = 0;

  bool passed() const {
    return !syntax::has_errors(diagnostics) && gate_errors.empty() && !exploration_error && deadlock &&
           deadlock->holds();
  }
};

struct ContractReport {
  std::string component;
  QueryResult sc;
  std::vector<Violation> ic_violations;
  std::optional<BcReport> bc;

  bool passed() const { return sc.holds && ic_violations.empty() && (!bc || bc->passed()); }
};

// Checks a behavioral specification that is already loaded. `spec_text` is
// the file content; `ic` supplies the port ids the top gates must match.
inline BcReport check_behavior(const BehaviorRef& ref, const std::string& spec_text, const InterfaceContract& ic,
                               const semantics::ExplorationBudget& budget = {}) {
  BcReport r;
  r.ref = ref;
  auto parsed = syntax::parse_spec(spec_text);
  if (!parsed.ok()) {
    r.diagnostics = parsed.diagnostics;
    return r;
  }
  const syntax::Specification& spec = *parsed;
  if (spec.name != ref.spec_name)
    r.gate_errors.push_back("specification is named '" + spec.name + "', contract expects '" + ref.spec_name + "'");
  std::set<std::string> ports;
  for (const auto& p : ic.in_ports) ports.insert(p.id);
  for (const auto& p : ic.out_ports) ports.insert(p.id);
  for (const auto& g : spec.top_gates)
    if (!ports.count(g)) r.gate_errors.push_back("gate '" + g + "' is not a port of the interface contract");
  try {
    semantics::Lts lts = semantics::generate_lts(spec, budget);
    r.states = lts.num_states;
    r.transitions = lts.transitions.size();
    r.deadlock = verify::check_deadlock(lts);
  } catch (const std::exception& e) {
    r.exploration_error = e.what();
  }
  return r;
}

// `base_dir` resolves a relative behavioral-contract path (normally the
// directory of the .asc file).
inline ContractReport check_asc(const AscContract& asc, const FactBase& base,
                                const std::filesystem::path& base_dir = ".",
                                const semantics::ExplorationBudget& budget = {}) {
  ContractReport report;
  report.component = asc.name;
  report.sc = eval_query(base, asc.sc);
  report.ic_violations = check_interface(asc.ic);
  if (asc.bc) {
    std::filesystem::path path = asc.bc->path;
    if (path.is_relative()) path = base_dir / path;
    if (auto text = read_text_file(path)) {
      report.bc = check_behavior(*asc.bc, *text, asc.ic, budget);
    } else {
      BcReport missing;
      missing.ref = *asc.bc;
      missing.diagnostics.push_back({syntax::Severity::error, {}, "cannot read behavioral contract '" + path.string() + "'",
                                     syntax::code::io});
      report.bc = std::move(missing);
    }
  }
  return report;
}

}  // namespace lotos::contracts
