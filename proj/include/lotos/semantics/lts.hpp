#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "lotos/semantics/action.hpp"
#include "lotos/semantics/sos.hpp"

namespace lotos::semantics {

using StateId = std::size_t;

struct Transition {
  StateId source = 0;
  std::size_t label = 0;  // index into Lts::labels
  StateId target = 0;

  bool operator==(const Transition&) const = default;
};

// Explicit labelled transition system. State 0 is initial; states are
// numbered in breadth-first discovery order. Transitions are grouped by
// source in ascending order; within a source they follow the canonical
// order (rendered label, then target state form).
struct Lts {
  std::size_t num_states = 1;
  std::vector<Action> labels;  // distinct, sorted by rendered text
  std::vector<Transition> transitions;

  static constexpr StateId initial = 0;

  const Action& action(const Transition& t) const { return labels[t.label]; }
  std::string label_text(const Transition& t) const { return render(labels[t.label]); }

  // Outgoing transition indices per state, in list order.
  std::vector<std::vector<std::size_t>> outgoing() const {
    std::vector<std::vector<std::size_t>> out(num_states);
    for (std::size_t i = 0; i < transitions.size(); ++i) out[transitions[i].source].push_back(i);
    return out;
  }
};

struct ExplorationBudget {
  std::size_t max_states = 100000;
  std::size_t max_transitions = 500000;
};

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::size_t frontier, std::size_t limit)
      : std::runtime_error("state-space bound exceeded: " + what + " limit " + std::to_string(limit) +
                           " reached with " + std::to_string(frontier) + " state(s) still unexplored"),
        frontier_(frontier),
        limit_(limit) {}
  std::size_t frontier() const { return frontier_; }
  std::size_t limit() const { return limit_; }

 private:
  std::size_t frontier_;
  std::size_t limit_;
};

// Result of exploration with the state forms retained, for diagnostics and tests.
struct Exploration {
  Lts lts;
  std::vector<BehaviorExpr> states;
};

inline Exploration explore(const Specification& spec, const BehaviorExpr& start,
                           const ExplorationBudget& budget = {}) {
  if (budget.max_states == 0 || budget.max_transitions == 0)
    throw std::invalid_argument("exploration budget must be positive");
  Exploration ex;
  std::unordered_map<std::string, StateId> ids;
  std::map<Action, std::size_t> label_ids;
  std::vector<Transition> raw;

  BehaviorExpr init = normalize(start);
  ids.emplace(state_key(init), 0);
  ex.states.push_back(init);

  for (StateId s = 0; s < ex.states.size(); ++s) {
    for (auto& step : successors(ex.states[s], spec)) {
      std::string key = state_key(step.target);
      auto [it, fresh] = ids.try_emplace(std::move(key), ex.states.size());
      if (fresh) {
        if (ex.states.size() >= budget.max_states)
          throw BudgetExceeded("max_states", ex.states.size() - s, budget.max_states);
        ex.states.push_back(std::move(step.target));
      }
      auto [lit, _] = label_ids.try_emplace(step.action, label_ids.size());
      raw.push_back({s, lit->second, it->second});
      if (raw.size() > budget.max_transitions)
        throw BudgetExceeded("max_transitions", ex.states.size() - s, budget.max_transitions);
    }
  }

  // Relabel so that label indices follow rendered-text order.
  std::vector<std::pair<std::string, const Action*>> sorted;
  for (const auto& [a, _] : label_ids) sorted.emplace_back(render(a), &a);
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> remap(label_ids.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    ex.lts.labels.push_back(*sorted[i].second);
    remap[label_ids.at(*sorted[i].second)] = i;
  }
  for (auto& t : raw) t.label = remap[t.label];
  ex.lts.transitions = std::move(raw);
  ex.lts.num_states = ex.states.size();
  return ex;
}

// Breadth-first closure of the SOS from the top-level behavior.
// Throws BudgetExceeded or UnguardedRecursion.
inline Lts generate_lts(const Specification& spec, const ExplorationBudget& budget = {}) {
  return explore(spec, spec.top_behavior, budget).lts;
}

}  // namespace lotos::semantics
