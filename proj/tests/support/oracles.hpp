#pragma once

// Brute-force oracles for queries and shortest paths, plus small helpers
// shared by the unit tests and the acceptance runner.

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "brute_sos.hpp"
#include "lotos/contracts/query.hpp"
#include "lotos/io.hpp"
#include "lotos/semantics/lts.hpp"
#include "lotos/syntax/parser.hpp"
#include "lotos/verify/aut.hpp"

#ifndef LOTOSADL_CORPUS_DIR
#define LOTOSADL_CORPUS_DIR "corpus"
#endif

namespace oracle {

inline std::string corpus(const std::string& name) { return std::string(LOTOSADL_CORPUS_DIR) + "/" + name; }

inline Specification load(const std::string& corpus_name) {
  auto text = lotos::read_text_file(corpus(corpus_name));
  if (!text) throw std::runtime_error("cannot read " + corpus_name);
  auto r = parse_spec(*text);
  if (!r.ok()) throw std::runtime_error("corpus file does not parse: " + corpus_name);
  return *r;
}

// Specification whose top behavior is `text`, with gates a, b, c and the
// given extra declarations.
inline Specification spec_of(const std::string& behavior, const std::string& where = "",
                             const std::string& sorts = "") {
  std::string text = "specification T [a, b, c] : noexit :=\n";
  if (!sorts.empty()) text += "sorts " + sorts + "\n";
  text += "behaviour " + behavior + "\n";
  if (!where.empty()) text += "where " + where + "\n";
  text += "endspec\n";
  auto r = parse_spec(text);
  if (!r.ok()) {
    std::string msg = "test specification does not parse: " + behavior;
    for (const auto& d : r.diagnostics) msg += "\n  " + d.message;
    throw std::runtime_error(msg);
  }
  return *r;
}

inline lotos::semantics::Lts lts_of(const std::string& behavior, const std::string& where = "",
                                    const std::string& sorts = "") {
  return lotos::semantics::generate_lts(spec_of(behavior, where, sorts));
}

// Oracle graph as an Lts (labels interned by text) for bisimulation checks.
inline lotos::semantics::Lts to_lts(const Graph& g) {
  lotos::semantics::Lts lts;
  lts.num_states = g.states;
  std::map<std::string, std::size_t> ids;
  for (const auto& [s, l, t] : g.transitions) ids.emplace(l, 0);
  for (auto& [text, id] : ids) {
    id = lts.labels.size();
    lts.labels.push_back(lotos::verify::parse_label(text));
  }
  for (const auto& [s, l, t] : g.transitions) lts.transitions.push_back({s, ids.at(l), t});
  return lts;
}

// ---------------------------------------------------------------------------
// Queries: enumerate every assignment of the witness-order variables over
// the base's term universe, in lexicographic order, and test each directly.

struct QueryAnswer {
  bool holds = false;
  std::vector<std::pair<std::string, std::string>> witness;
};

inline QueryAnswer brute_query(const lotos::contracts::FactBase& base, const lotos::contracts::Query& q) {
  std::vector<std::string> vars;
  for (const auto& a : q.conjuncts)
    for (const auto& t : a.args)
      if (t.variable && std::find(vars.begin(), vars.end(), t.name) == vars.end()) vars.push_back(t.name);
  for (const auto& v : q.exists_vars)
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);

  std::set<std::string> universe_set;
  for (const auto& f : base) universe_set.insert(f.args.begin(), f.args.end());
  std::vector<std::string> universe(universe_set.begin(), universe_set.end());

  std::vector<std::size_t> idx(vars.size(), 0);
  if (!vars.empty() && universe.empty()) return {};
  for (;;) {
    std::map<std::string, std::string> env;
    for (std::size_t i = 0; i < vars.size(); ++i) env[vars[i]] = universe[idx[i]];
    bool ok = true;
    for (const auto& a : q.conjuncts) {
      lotos::contracts::Fact f{a.predicate, {}};
      for (const auto& t : a.args) f.args.push_back(t.variable ? env.at(t.name) : t.name);
      if (!base.contains(f)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      QueryAnswer ans{true, {}};
      for (const auto& v : vars) ans.witness.emplace_back(v, env.at(v));
      return ans;
    }
    // Odometer increment, last variable fastest.
    std::size_t k = vars.size();
    while (k > 0) {
      if (++idx[k - 1] < universe.size()) break;
      idx[k - 1] = 0;
      --k;
    }
    if (k == 0) return {};
  }
}

// ---------------------------------------------------------------------------
// Shortest paths: plain BFS over an adjacency list, returning the minimal
// number of transitions from the initial state to any state satisfying
// `target`, or nullopt.

inline std::optional<std::size_t> shortest_to_state(const lotos::semantics::Lts& lts,
                                                    const std::function<bool(std::size_t)>& target) {
  std::vector<std::vector<std::size_t>> adj(lts.num_states);
  for (const auto& t : lts.transitions) adj[t.source].push_back(t.target);
  std::vector<std::size_t> dist(lts.num_states, SIZE_MAX);
  std::deque<std::size_t> q{0};
  dist[0] = 0;
  while (!q.empty()) {
    std::size_t s = q.front();
    q.pop_front();
    if (target(s)) return dist[s];
    for (std::size_t t : adj[s])
      if (dist[t] == SIZE_MAX) {
        dist[t] = dist[s] + 1;
        q.push_back(t);
      }
  }
  return std::nullopt;
}

// States that are deadlocked per the definition: no outgoing transitions
// and not entered exclusively by exit transitions.
inline std::vector<bool> brute_deadlocks(const lotos::semantics::Lts& lts) {
  std::vector<bool> has_out(lts.num_states, false), has_in(lts.num_states, false), non_exit_in(lts.num_states, false);
  for (const auto& t : lts.transitions) {
    has_out[t.source] = true;
    has_in[t.target] = true;
    if (lts.label_text(t) != "exit") non_exit_in[t.target] = true;
  }
  std::vector<bool> dead(lts.num_states);
  for (std::size_t s = 0; s < lts.num_states; ++s) dead[s] = !has_out[s] && (!has_in[s] || non_exit_in[s]);
  return dead;
}

// Every consecutive label of `trace` is a transition from the current state
// (some choice of targets), starting at the initial state. Returns the set
// of states the trace can end in.
inline std::set<std::size_t> run_trace(const lotos::semantics::Lts& lts, const std::vector<std::string>& trace) {
  std::set<std::size_t> cur{0};
  for (const auto& label : trace) {
    std::set<std::size_t> next;
    for (const auto& t : lts.transitions)
      if (cur.count(t.source) && lts.label_text(t) == label) next.insert(t.target);
    cur = std::move(next);
  }
  return cur;
}

}  // namespace oracle
