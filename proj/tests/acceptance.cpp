// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "lotos/adl/config.hpp"
#include "lotos/cli/run.hpp"
#include "lotos/contracts/check.hpp"
#include "lotos/contracts/facts.hpp"
#include "lotos/syntax/adl_parser.hpp"
#include "lotos/syntax/asc_parser.hpp"
#include "lotos/syntax/printer.hpp"
#include "lotos/syntax/transform.hpp"
#include "lotos/verify/bisim.hpp"
#include "lotos/verify/checks.hpp"
#include "lotos/verify/monitor.hpp"
#include "lotos/verify/pattern.hpp"
#include "oracles.hpp"
#include "random_expr.hpp"

using namespace lotos;
using semantics::Lts;

namespace {

// Collects reasons for failure; a criterion passes when none were recorded.
struct Check {
  std::vector<std::string> problems;

  void require(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }
};

Lts lts_of(const syntax::BehaviorExpr& b) {
  auto spec = gen::context();
  spec.top_behavior = b;
  return semantics::generate_lts(spec);
}

bool bisimilar(const Lts& a, const Lts& b) { return verify::bisim_equiv(a, b).holds(); }

std::string labels_in_order(const Lts& lts) {
  std::string s;
  for (const auto& t : lts.transitions) s += lts.label_text(t) + ";";
  return s;
}

void client_server(Check& c) {
  auto spec = oracle::load("client_server.lot");
  // Counts come from the reference interpreter before the library engine runs.
  auto ref = oracle::explore(spec);
  c.require(ref.states == 4 && ref.transitions.size() == 4, "reference interpreter does not give 4/4");
  auto lts = semantics::generate_lts(spec);
  c.require(lts.num_states == 4 && lts.transitions.size() == 4, "library LTS is not 4/4");
  c.require(labels_in_order(lts) == "invClt !s1 !op1;invSrv !s1 !op1;terSrv !s1 !r1;terClt !s1 !r1;",
            "cycle labels differ: " + labels_in_order(lts));
  bool cycle = lts.transitions.size() == 4;
  for (std::size_t k = 0; cycle && k < 4; ++k)
    cycle = lts.transitions[k].source == k && lts.transitions[k].target == (k + 1) % 4;
  c.require(cycle, "transitions do not form the 0-1-2-3-0 cycle");
  c.require(bisimilar(lts, oracle::to_lts(ref)), "library LTS not bisimilar to reference");
  c.require(verify::check_deadlock(lts).holds(), "deadlock check fails");
}

void multicast(Check& c) {
  auto monitor = verify::parse_monitor(*read_text_file(oracle::corpus("multicast_order.mon")));
  c.require(monitor.ok(), "monitor does not parse");
  if (!monitor.ok()) return;
  auto ordered = semantics::generate_lts(syntax::strip_hiding(oracle::load("multicast.lot")));
  c.require(verify::check_safety(ordered, *monitor).holds(), "ordering property fails with ServiceOrdering");
  auto unordered = semantics::generate_lts(syntax::strip_hiding(oracle::load("mutations/multicast_unordered.lot")));
  auto r = verify::check_safety(unordered, *monitor);
  c.require(!r.holds() && r.evidence && !r.evidence->empty(), "ordering property does not fail without ServiceOrdering");
  if (r.evidence) {
    std::vector<std::string> labels;
    for (const auto& a : *r.evidence) labels.push_back(semantics::render(a));
    c.require(!oracle::run_trace(unordered, labels).empty(), "counterexample is not a trace of the LTS");
  }
}

void observer(Check& c) {
  auto facts = contracts::parse_facts(*read_text_file(oracle::corpus("observer.facts")));
  c.require(facts.ok(), "facts do not parse");
  if (!facts.ok()) return;
  auto run = [&](const std::string& file, const std::string& dir) -> std::optional<contracts::ContractReport> {
    auto asc = syntax::parse_asc(*read_text_file(oracle::corpus(file)));
    if (!asc.ok()) return std::nullopt;
    return contracts::check_asc(*asc, *facts, oracle::corpus(dir));
  };
  auto base = run("observer.asc", ".");
  c.require(base && base->passed(), "observer contract does not pass");
  c.require(base && base->sc.witness == contracts::Binding{{"s", "Subject"}, {"o", "Observer"}}, "unexpected sc witness");

  struct Mutation {
    const char* file;
    const char* code;
  };
  for (auto [file, code] : {Mutation{"mutations/observer_duplicate_port.asc", "C1"},
                            Mutation{"mutations/observer_no_external_change.asc", "C3"},
                            Mutation{"mutations/observer_no_notify_out.asc", "C3"}}) {
    auto rep = run(file, "mutations");
    bool exact = rep && !rep->passed() && rep->ic_violations.size() == 1 && rep->ic_violations[0].constraint == code &&
                 rep->sc.holds && rep->bc && rep->bc->passed();
    c.require(exact, std::string(file) + " does not fail with exactly " + code);
  }
  auto bad = syntax::parse_asc(*read_text_file(oracle::corpus("mutations/observer_misspelled_predicate.asc")));
  c.require(!bad.ok() && bad.diagnostics.size() == 1 && bad.diagnostics[0].code == syntax::code::unknown_predicate,
            "misspelled predicate not reported as unknown-predicate");
}

void algebraic_laws(Check& c) {
  using namespace syntax;
  gen::ExprGen g(4);
  int samples = 0;
  for (int k = 0; k < 60; ++k, ++samples) {
    auto x = g.expr(1 + k % 4), y = g.expr(1 + (k + 2) % 4);
    std::string shown = syntax::to_string(x) + " / " + syntax::to_string(y);
    c.require(bisimilar(lts_of(choice(x, y)), lts_of(choice(y, x))), "choice commutativity: " + shown);
    c.require(bisimilar(lts_of(choice(x, stop())), lts_of(x)), "choice unit: " + shown);
    c.require(bisimilar(lts_of(par(x, SyncSet::interleave(), y)), lts_of(par(y, SyncSet::interleave(), x))),
              "interleave commutativity: " + shown);
    c.require(bisimilar(lts_of(seq(exit_(), x)), lts_of(internal(x))), "exit enabling: " + shown);
  }
  c.require(samples >= 50, "fewer than 50 samples");
}

void interleaving(Check& c) {
  for (int m = 1; m <= 5; ++m)
    for (int n = 1; n <= 5; ++n) {
      auto lts = lts_of(syntax::par(gen::chain("l", m), syntax::SyncSet::interleave(), gen::chain("r", n)));
      bool ok = lts.num_states == static_cast<std::size_t>((m + 1) * (n + 1)) &&
                lts.transitions.size() == static_cast<std::size_t>(m * (n + 1) + n * (m + 1));
      c.require(ok, "counts differ for m=" + std::to_string(m) + ", n=" + std::to_string(n));
    }
}

void queries(Check& c) {
  gen::FactGen g(31337);
  for (int k = 0; k < 200; ++k) {
    auto base = g.base(12);
    auto q = g.query(4);
    auto mine = contracts::eval_query(base, q);
    auto brute = oracle::brute_query(base, q);
    c.require(mine.holds == brute.holds && mine.witness == brute.witness, "disagreement on " + contracts::to_string(q));
  }
}

void determinism(Check& c) {
  std::vector<Lts> small;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(LOTOSADL_CORPUS_DIR)) {
    if (entry.path().extension() != ".lot") continue;
    auto text = read_text_file(entry.path().string());
    auto spec = syntax::parse_spec(*text);
    if (!spec.ok() || !syntax::validate_spec(*spec).empty()) continue;
    auto a = verify::export_aut(semantics::generate_lts(*spec));
    auto b = verify::export_aut(semantics::generate_lts(*syntax::parse_spec(*read_text_file(entry.path().string()))));
    c.require(a == b, "non-identical .aut for " + entry.path().filename().string());
    std::ostringstream first, second, ignored;
    cli::run({"lts", entry.path().string(), "-o", "-"}, first, ignored);
    cli::run({"lts", entry.path().string(), "-o", "-"}, second, ignored);
    c.require(first.str() == second.str() && first.str() == a,
              "command-line .aut differs between runs for " + entry.path().filename().string());
    auto lts = semantics::generate_lts(*spec);
    if (lts.num_states <= 200) small.push_back(lts);
  }
  gen::ExprGen g(808);
  for (int k = 0; k < 200; ++k) {
    auto lts = lts_of(g.expr(1 + k % 4));
    if (lts.num_states <= 200) small.push_back(lts);
  }
  for (const auto& lts : small) {
    auto dead = oracle::brute_deadlocks(lts);
    auto expected = oracle::shortest_to_state(lts, [&](std::size_t s) { return dead[s]; });
    auto r = verify::check_deadlock(lts);
    bool ok = r.holds() ? !expected : (expected && r.evidence && r.evidence->size() == *expected);
    c.require(ok, "deadlock counterexample length differs from BFS");
    for (const auto& label : lts.labels) {
      if (!label.is_observable()) continue;
      // A pattern without offers matches the gate with any offers.
      std::set<std::size_t> sources;
      for (const auto& t : lts.transitions)
        if (lts.action(t) == label || (label.offers.empty() && lts.action(t).gate == label.gate))
          sources.insert(t.source);
      auto dist = oracle::shortest_to_state(lts, [&](std::size_t s) { return sources.count(s) > 0; });
      auto reach = verify::check_reachable(lts, verify::parse_pattern(semantics::render(label)));
      c.require(reach.holds() && reach.evidence && dist && reach.evidence->size() == *dist + 1,
                "reach witness length differs from BFS for " + semantics::render(label));
    }
  }
}

void adl_round_trip(Check& c) {
  for (const std::string name : {"client_server", "multicast"}) {
    auto cfg = syntax::parse_adl(*read_text_file(oracle::corpus(name + ".adl")), LOTOSADL_CORPUS_DIR);
    c.require(cfg.ok(), name + ".adl does not parse");
    if (!cfg.ok()) continue;
    auto flat = adl::flatten(*cfg);
    c.require(flat.ok(), name + ".adl does not flatten");
    if (!flat.ok()) continue;
    auto hand = semantics::generate_lts(oracle::load(name + ".lot"));
    c.require(bisimilar(semantics::generate_lts(*flat.spec), hand), name + " flattening not bisimilar");
  }
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<void(Check&)> body;
    double limit_seconds;  // 0 for no time bound
  };
  const std::vector<Criterion> criteria{
      {1, "client/server LTS is the 4-state cycle and deadlock free", client_server, 1.0},
      {2, "multicast ordering holds with ServiceOrdering and fails without it", multicast, 5.0},
      {3, "observer contract passes and each mutation fails as expected", observer, 0},
      {4, "algebraic laws hold on generated expressions", algebraic_laws, 0},
      {5, "interleaving state and transition counts", interleaving, 0},
      {6, "query evaluation agrees with brute-force enumeration", queries, 0},
      {7, "deterministic export and shortest evidence", determinism, 0},
      {8, "flattened configurations are bisimilar to hand-written specifications", adl_round_trip, 0},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Check c;
    auto start = std::chrono::steady_clock::now();
    try {
      cr.body(c);
    } catch (const std::exception& e) {
      c.problems.push_back(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (cr.limit_seconds > 0 && secs >= cr.limit_seconds) {
      std::ostringstream os;
      os << "took " << secs << " s, limit " << cr.limit_seconds << " s";
      c.problems.push_back(os.str());
    }
    bool pass = c.problems.empty();
    failed += !pass;
    std::printf("%s criterion %d: %s (%.3f s)\n", pass ? "PASS" : "FAIL", cr.id, cr.title, secs);
    for (std::size_t k = 0; k < c.problems.size() && k < 5; ++k) std::printf("    %s\n", c.problems[k].c_str());
  }
  return failed == 0 ? 0 : 1;
}
