#pragma once

// Property checks on explicit LTSs. Every search is breadth-first over
// transitions in the LTS's list order, so evidence traces are shortest and
// ties follow the canonical transition order.

#include <map>
#include <utility>
#include <vector>

#include "lotos/semantics/lts.hpp"
#include "lotos/verify/monitor.hpp"
#include "lotos/verify/pattern.hpp"
#include "lotos/verify/result.hpp"

namespace lotos::verify {

using semantics::Lts;
using semantics::StateId;

namespace detail {

// Parent transition of every state in a BFS tree from the initial state.
struct BfsTree {
  std::vector<std::size_t> parent;  // transition index, kNone for the root/unreached
  std::vector<StateId> order;       // states in discovery order
};

inline BfsTree bfs(const Lts& lts) {
  BfsTree tree;
  tree.parent.assign(lts.num_states, kNone);
  std::vector<bool> seen(lts.num_states, false);
  auto out = lts.outgoing();
  seen[Lts::initial] = true;
  tree.order.push_back(Lts::initial);
  for (std::size_t head = 0; head < tree.order.size(); ++head) {
    for (std::size_t ti : out[tree.order[head]]) {
      StateId t = lts.transitions[ti].target;
      if (seen[t]) continue;
      seen[t] = true;
      tree.parent[t] = ti;
      tree.order.push_back(t);
    }
  }
  return tree;
}

inline Trace path_to(const Lts& lts, const BfsTree& tree, StateId s) {
  Trace t;
  while (tree.parent[s] != kNone) {
    const auto& tr = lts.transitions[tree.parent[s]];
    t.push_back(lts.action(tr));
    s = tr.source;
  }
  return Trace(t.rbegin(), t.rend());
}

}  // namespace detail

// A terminated state has at least one incoming transition and all of them
// are exit actions; such states are not deadlocks.
inline std::vector<bool> terminated_states(const Lts& lts) {
  std::vector<int> incoming(lts.num_states, 0), by_exit(lts.num_states, 0);
  for (const auto& t : lts.transitions) {
    ++incoming[t.target];
    if (lts.action(t).is_terminate()) ++by_exit[t.target];
  }
  std::vector<bool> out(lts.num_states);
  for (std::size_t s = 0; s < lts.num_states; ++s) out[s] = incoming[s] > 0 && incoming[s] == by_exit[s];
  return out;
}

inline VerifyResult check_deadlock(const Lts& lts) {
  auto tree = detail::bfs(lts);
  auto out = lts.outgoing();
  auto terminated = terminated_states(lts);
  VerifyResult r;
  r.explored_states = tree.order.size();
  for (StateId s : tree.order) {
    if (out[s].empty() && !terminated[s]) {
      r.verdict = Verdict::fails;
      r.evidence = detail::path_to(lts, tree, s);
      return r;
    }
  }
  return r;
}

// Holds iff some reachable transition matches; the witness ends with the
// first such transition on a shortest path.
inline VerifyResult check_reachable(const Lts& lts, const LabelPattern& p) {
  auto tree = detail::bfs(lts);
  auto out = lts.outgoing();
  VerifyResult r;
  r.explored_states = tree.order.size();
  for (StateId s : tree.order) {
    for (std::size_t ti : out[s]) {
      if (!p.matches(lts.action(lts.transitions[ti]))) continue;
      Trace w = detail::path_to(lts, tree, s);
      w.push_back(lts.action(lts.transitions[ti]));
      r.evidence = std::move(w);
      return r;
    }
  }
  r.verdict = Verdict::fails;
  return r;
}

// Synchronous product with the monitor; fails iff a bad monitor state is
// reachable, with a shortest violating trace as counterexample.
inline VerifyResult check_safety(const Lts& lts, const Monitor& m) {
  using Node = std::pair<StateId, std::size_t>;
  VerifyResult r;
  auto out = lts.outgoing();
  std::vector<Node> nodes{{Lts::initial, m.initial}};
  std::vector<std::pair<std::size_t, std::size_t>> back{{detail::kNone, detail::kNone}};  // (parent node, transition)
  std::map<Node, std::size_t> index{{nodes[0], 0}};

  auto trace_to = [&](std::size_t n) {
    Trace t;
    while (back[n].first != detail::kNone) {
      t.push_back(lts.action(lts.transitions[back[n].second]));
      n = back[n].first;
    }
    return Trace(t.rbegin(), t.rend());
  };

  if (m.is_bad(m.initial)) {
    r.verdict = Verdict::fails;
    r.evidence = Trace{};
    r.explored_states = 1;
    return r;
  }
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    auto [s, q] = nodes[head];
    for (std::size_t ti : out[s]) {
      const auto& tr = lts.transitions[ti];
      Node next{tr.target, m.next(q, lts.action(tr))};
      auto [it, fresh] = index.try_emplace(next, nodes.size());
      if (!fresh) continue;
      nodes.push_back(next);
      back.emplace_back(head, ti);
      if (m.is_bad(next.second)) {
        r.verdict = Verdict::fails;
        r.evidence = trace_to(it->second);
        r.explored_states = nodes.size();
        return r;
      }
    }
  }
  r.explored_states = nodes.size();
  return r;
}

}  // namespace lotos::verify
