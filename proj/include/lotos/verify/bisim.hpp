#pragma once

// Strong bisimulation by signature-based partition refinement. Internal
// actions are ordinary labels here. Labels of different LTSs are identified
// by their rendered text.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "lotos/semantics/lts.hpp"
#include "lotos/verify/result.hpp"

namespace lotos::verify {

using semantics::Lts;
using semantics::StateId;

namespace detail {

// Graph over a disjoint union of LTSs with labels interned by text.
struct LabelledGraph {
  std::size_t num_states = 0;
  std::vector<std::string> label_text;
  std::vector<Action> label_action;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> out;  // (label, target)

  std::size_t add(const Lts& lts) {
    std::size_t offset = num_states;
    num_states += lts.num_states;
    out.resize(num_states);
    std::vector<std::size_t> local(lts.labels.size());
    for (std::size_t i = 0; i < lts.labels.size(); ++i) {
      std::string text = semantics::render(lts.labels[i]);
      auto it = std::find(label_text.begin(), label_text.end(), text);
      if (it == label_text.end()) {
        label_text.push_back(text);
        label_action.push_back(lts.labels[i]);
        it = label_text.end() - 1;
      }
      local[i] = static_cast<std::size_t>(it - label_text.begin());
    }
    for (const auto& t : lts.transitions) out[offset + t.source].emplace_back(local[t.label], offset + t.target);
    return offset;
  }
};

// Block ids per refinement round; rounds.back() is the coarsest stable
// partition. Round 0 puts every state in one block.
inline std::vector<std::vector<std::size_t>> refine(const LabelledGraph& g) {
  std::vector<std::vector<std::size_t>> rounds{std::vector<std::size_t>(g.num_states, 0)};
  std::size_t blocks = g.num_states ? 1 : 0;
  for (;;) {
    const auto& cur = rounds.back();
    using Signature = std::pair<std::size_t, std::vector<std::pair<std::string, std::size_t>>>;
    std::vector<Signature> sig(g.num_states);
    for (std::size_t s = 0; s < g.num_states; ++s) {
      sig[s].first = cur[s];
      for (auto [l, t] : g.out[s]) sig[s].second.emplace_back(g.label_text[l], cur[t]);
      std::sort(sig[s].second.begin(), sig[s].second.end());
      sig[s].second.erase(std::unique(sig[s].second.begin(), sig[s].second.end()), sig[s].second.end());
    }
    std::map<Signature, std::size_t> ids;
    std::vector<std::size_t> next(g.num_states);
    for (std::size_t s = 0; s < g.num_states; ++s) next[s] = ids.try_emplace(sig[s], ids.size()).first->second;
    if (ids.size() == blocks) return rounds;
    blocks = ids.size();
    rounds.push_back(std::move(next));
  }
}

inline std::size_t split_round(const std::vector<std::vector<std::size_t>>& rounds, std::size_t p, std::size_t q) {
  for (std::size_t k = 0; k < rounds.size(); ++k)
    if (rounds[k][p] != rounds[k][q]) return k;
  return rounds.size();
}

// Follows the refinement history to a label sequence after which one side
// can perform a step the other cannot match.
inline Trace distinguishing_trace(const LabelledGraph& g, const std::vector<std::vector<std::size_t>>& rounds,
                                  std::size_t p, std::size_t q) {
  Trace trace;
  for (;;) {
    std::size_t k = split_round(rounds, p, q);
    if (k == 0 || k >= rounds.size()) return trace;
    const auto& prev = rounds[k - 1];
    // A step of `a` whose (label, previous block) `b` lacks.
    auto unmatched = [&](std::size_t a, std::size_t b) -> std::optional<std::pair<std::size_t, std::size_t>> {
      for (auto [l, t] : g.out[a]) {
        bool matched = false;
        for (auto [l2, t2] : g.out[b])
          if (l2 == l && prev[t2] == prev[t]) matched = true;
        if (!matched) return std::make_pair(l, t);
      }
      return std::nullopt;
    };
    bool swapped = false;
    auto step = unmatched(p, q);
    if (!step) {
      step = unmatched(q, p);
      swapped = true;
      std::swap(p, q);
    }
    if (!step) return trace;
    auto [label, target] = *step;
    trace.push_back(g.label_action[label]);
    // Continue with the answer of the other side that separates earliest.
    std::size_t best = kNone, best_round = kNone;
    for (auto [l2, t2] : g.out[q]) {
      if (l2 != label) continue;
      std::size_t r = split_round(rounds, target, t2);
      if (r < best_round) {
        best_round = r;
        best = t2;
      }
    }
    if (best == kNone) return trace;
    p = swapped ? best : target;
    q = swapped ? target : best;
  }
}

}  // namespace detail

// Holds iff the initial states are strongly bisimilar. On failure the
// evidence is a distinguishing trace: after it, the last label can be
// performed by one system but not matched by the other.
inline VerifyResult bisim_equiv(const Lts& a, const Lts& b) {
  detail::LabelledGraph g;
  std::size_t oa = g.add(a), ob = g.add(b);
  auto rounds = detail::refine(g);
  VerifyResult r;
  r.explored_states = g.num_states;
  if (rounds.back()[oa] == rounds.back()[ob]) return r;
  r.verdict = Verdict::fails;
  r.evidence = detail::distinguishing_trace(g, rounds, oa, ob);
  return r;
}

// Quotient under strong bisimulation. Blocks are numbered breadth-first from
// the initial block, visiting successors by label text and then by the
// smallest original state in the target block; the result is canonical.
inline Lts minimize(const Lts& lts) {
  detail::LabelledGraph g;
  g.add(lts);
  const auto block = detail::refine(g).back();
  std::size_t nblocks = 0;
  for (auto b : block) nblocks = std::max(nblocks, b + 1);

  std::vector<std::size_t> rep(nblocks, lts.num_states);
  for (std::size_t s = 0; s < lts.num_states; ++s) rep[block[s]] = std::min(rep[block[s]], s);

  // (label text, target block) per block, via any member (all members agree).
  std::vector<std::vector<std::tuple<std::string, std::size_t, std::size_t>>> edges(nblocks);
  for (std::size_t bl = 0; bl < nblocks; ++bl) {
    std::set<std::tuple<std::string, std::size_t, std::size_t>> uniq;
    for (auto [l, t] : g.out[rep[bl]]) uniq.emplace(g.label_text[l], rep[block[t]], l);
    edges[bl].assign(uniq.begin(), uniq.end());
  }

  std::vector<std::size_t> number(nblocks, detail::kNone);
  std::vector<std::size_t> order{block[Lts::initial]};
  number[block[Lts::initial]] = 0;
  for (std::size_t head = 0; head < order.size(); ++head)
    for (const auto& [text, target_rep, l] : edges[order[head]]) {
      std::size_t tb = block[target_rep];
      if (number[tb] == detail::kNone) {
        number[tb] = order.size();
        order.push_back(tb);
      }
    }

  Lts out;
  out.num_states = order.size();
  std::map<std::string, std::size_t> label_index;
  for (std::size_t bl : order)
    for (const auto& [text, target_rep, l] : edges[bl]) label_index.emplace(text, 0);
  for (auto& [text, idx] : label_index) {
    idx = out.labels.size();
    auto it = std::find(g.label_text.begin(), g.label_text.end(), text);
    out.labels.push_back(g.label_action[static_cast<std::size_t>(it - g.label_text.begin())]);
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::vector<std::tuple<std::string, std::size_t>> targets;
    for (const auto& [text, target_rep, l] : edges[order[i]]) targets.emplace_back(text, number[block[target_rep]]);
    std::sort(targets.begin(), targets.end());
    for (const auto& [text, t] : targets) out.transitions.push_back({i, label_index.at(text), t});
  }
  return out;
}

}  // namespace lotos::verify
