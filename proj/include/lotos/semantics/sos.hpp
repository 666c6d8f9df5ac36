#pragma once

// Structural operational semantics of the Basic LOTOS subset.
//
// States are closed behavior expressions. Process instantiations stay
// folded inside states and are unfolded only while computing successors,
// which keeps recursive processes finite. Receive offers are expanded into
// one step per value of their sort, with the value substituted into the
// continuation.

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lotos/semantics/action.hpp"
#include "lotos/syntax/ast.hpp"

namespace lotos::semantics {

using syntax::BehaviorExpr;
using syntax::Specification;

class UnguardedRecursion : public std::runtime_error {
 public:
  explicit UnguardedRecursion(std::string process)
      : std::runtime_error("unguarded recursion in process '" + process + "'"), process_(std::move(process)) {}
  const std::string& process() const { return process_; }

 private:
  std::string process_;
};

// Consecutive unfoldings allowed without reaching an action.
inline constexpr int kMaxUnfoldDepth = 1000;

struct Step {
  Action action;
  BehaviorExpr target;
};

using GateMap = std::map<std::string, std::string>;

namespace detail {

inline void collect_gates(const BehaviorExpr& b, std::set<std::string>& out) {
  using namespace syntax;
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Prefix>) {
          if (!n.action.internal) out.insert(n.action.gate);
          collect_gates(n.rest, out);
        } else if constexpr (std::is_same_v<T, Choice> || std::is_same_v<T, Seq> || std::is_same_v<T, Disrupt>) {
          collect_gates(n.left, out);
          collect_gates(n.right, out);
        } else if constexpr (std::is_same_v<T, Par>) {
          out.insert(n.sync.gates.begin(), n.sync.gates.end());
          collect_gates(n.left, out);
          collect_gates(n.right, out);
        } else if constexpr (std::is_same_v<T, Hide>) {
          out.insert(n.gates.begin(), n.gates.end());
          collect_gates(n.body, out);
        } else if constexpr (std::is_same_v<T, Inst>) {
          out.insert(n.gates.begin(), n.gates.end());
        }
      },
      b->v);
}

inline std::string rename(const GateMap& m, const std::string& g) {
  auto it = m.find(g);
  return it == m.end() ? g : it->second;
}

}  // namespace detail

// Simultaneous gate renaming. Gates bound by `hide` are renamed apart when a
// substituted gate would otherwise be captured.
inline BehaviorExpr substitute_gates(const BehaviorExpr& b, const GateMap& m) {
  using namespace syntax;
  if (m.empty()) return b;
  return std::visit(
      [&](const auto& n) -> BehaviorExpr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Stop> || std::is_same_v<T, Exit>) {
          return b;
        } else if constexpr (std::is_same_v<T, Prefix>) {
          ActionExpr a = n.action;
          if (!a.internal) a.gate = detail::rename(m, a.gate);
          return make(Prefix{std::move(a), substitute_gates(n.rest, m)}, b->span);
        } else if constexpr (std::is_same_v<T, Choice>) {
          return make(Choice{substitute_gates(n.left, m), substitute_gates(n.right, m)}, b->span);
        } else if constexpr (std::is_same_v<T, Seq>) {
          return make(Seq{substitute_gates(n.left, m), substitute_gates(n.right, m)}, b->span);
        } else if constexpr (std::is_same_v<T, Disrupt>) {
          return make(Disrupt{substitute_gates(n.left, m), substitute_gates(n.right, m)}, b->span);
        } else if constexpr (std::is_same_v<T, Par>) {
          SyncSet s = n.sync;
          for (auto& g : s.gates) g = detail::rename(m, g);
          return make(Par{substitute_gates(n.left, m), std::move(s), substitute_gates(n.right, m)}, b->span);
        } else if constexpr (std::is_same_v<T, Inst>) {
          GateList g = n.gates;
          for (auto& x : g) x = detail::rename(m, x);
          return make(Inst{n.process, std::move(g)}, b->span);
        } else {
          static_assert(std::is_same_v<T, Hide>);
          GateMap inner = m;
          for (const auto& g : n.gates) inner.erase(g);
          if (inner.empty()) return b;
          std::set<std::string> targets;
          for (const auto& [from, to] : inner) targets.insert(to);
          std::set<std::string> used = targets;
          detail::collect_gates(n.body, used);
          GateList hidden = n.gates;
          for (auto& g : hidden) {
            if (!targets.count(g)) continue;
            std::string fresh;
            for (int k = 1;; ++k) {
              fresh = g + "#" + std::to_string(k);
              if (!used.count(fresh)) break;
            }
            used.insert(fresh);
            inner[g] = fresh;
            g = fresh;
          }
          return make(Hide{std::move(hidden), substitute_gates(n.body, inner)}, b->span);
        }
      },
      b->v);
}

// Replaces free occurrences of variable `var` in send offers by `value`.
inline BehaviorExpr substitute_value(const BehaviorExpr& b, const std::string& var, const std::string& value) {
  using namespace syntax;
  return std::visit(
      [&](const auto& n) -> BehaviorExpr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Stop> || std::is_same_v<T, Exit> || std::is_same_v<T, Inst>) {
          return b;
        } else if constexpr (std::is_same_v<T, Prefix>) {
          ActionExpr a = n.action;
          bool rebinds = false;
          for (auto& o : a.offers) {
            if (auto* s = std::get_if<SendOffer>(&o)) {
              if (s->kind == SendOffer::Kind::variable && s->name == var) {
                s->kind = SendOffer::Kind::value;
                s->name = value;
              }
            } else if (std::get<ReceiveOffer>(o).variable == var) {
              rebinds = true;
            }
          }
          BehaviorExpr rest = rebinds ? n.rest : substitute_value(n.rest, var, value);
          return make(Prefix{std::move(a), std::move(rest)}, b->span);
        } else if constexpr (std::is_same_v<T, Choice>) {
          return make(Choice{substitute_value(n.left, var, value), substitute_value(n.right, var, value)}, b->span);
        } else if constexpr (std::is_same_v<T, Seq>) {
          return make(Seq{substitute_value(n.left, var, value), substitute_value(n.right, var, value)}, b->span);
        } else if constexpr (std::is_same_v<T, Disrupt>) {
          return make(Disrupt{substitute_value(n.left, var, value), substitute_value(n.right, var, value)},
                      b->span);
        } else if constexpr (std::is_same_v<T, Par>) {
          return make(Par{substitute_value(n.left, var, value), n.sync, substitute_value(n.right, var, value)},
                      b->span);
        } else {
          static_assert(std::is_same_v<T, Hide>);
          return make(Hide{n.gates, substitute_value(n.body, var, value)}, b->span);
        }
      },
      b->v);
}

// Canonical state form. Sorts and deduplicates gate sets, turns an empty
// explicit synchronization set into "|||", merges directly nested hides, and
// drops hides over stop/exit. None of these change the derivable steps.
// Unchanged subtrees are shared with the input.
inline BehaviorExpr normalize(const BehaviorExpr& b) {
  using namespace syntax;
  auto canon = [](GateList g) {
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
  };
  return std::visit(
      [&](const auto& n) -> BehaviorExpr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Stop> || std::is_same_v<T, Exit> || std::is_same_v<T, Inst>) {
          return b;
        } else if constexpr (std::is_same_v<T, Prefix>) {
          BehaviorExpr rest = normalize(n.rest);
          if (rest.identity() == n.rest.identity()) return b;
          return make(Prefix{n.action, rest}, b->span);
        } else if constexpr (std::is_same_v<T, Par>) {
          BehaviorExpr l = normalize(n.left), r = normalize(n.right);
          SyncSet s = n.sync;
          if (s.kind == SyncSet::Kind::gates) {
            s.gates = canon(std::move(s.gates));
            if (s.gates.empty()) s = SyncSet::interleave();
          }
          if (l.identity() == n.left.identity() && r.identity() == n.right.identity() && s == n.sync) return b;
          return make(Par{l, std::move(s), r}, b->span);
        } else if constexpr (std::is_same_v<T, Hide>) {
          BehaviorExpr body = normalize(n.body);
          GateList g = n.gates;
          if (const auto* inner = as<Hide>(body)) {
            g.insert(g.end(), inner->gates.begin(), inner->gates.end());
            body = inner->body;
          }
          if (is<Stop>(body) || is<Exit>(body)) return body;
          g = canon(std::move(g));
          if (body.identity() == n.body.identity() && g == n.gates) return b;
          return make(Hide{std::move(g), body}, b->span);
        } else {
          BehaviorExpr l = normalize(n.left), r = normalize(n.right);
          if (l.identity() == n.left.identity() && r.identity() == n.right.identity()) return b;
          return make(T{l, r}, b->span);
        }
      },
      b->v);
}

// Injective serialization of a state form; its ordering is the state
// ordering used for tie-breaks during exploration.
inline void write_key(std::string& out, const BehaviorExpr& b) {
  using namespace syntax;
  auto gates = [&](const GateList& g) {
    out += '[';
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (i) out += ',';
      out += g[i];
    }
    out += ']';
  };
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Stop>) {
          out += "stop";
        } else if constexpr (std::is_same_v<T, Exit>) {
          out += "exit";
        } else if constexpr (std::is_same_v<T, Inst>) {
          out += n.process;
          gates(n.gates);
        } else if constexpr (std::is_same_v<T, Prefix>) {
          if (n.action.internal) {
            out += "i";
          } else {
            out += n.action.gate;
            for (const auto& o : n.action.offers) {
              if (const auto* s = std::get_if<SendOffer>(&o)) {
                out += s->kind == SendOffer::Kind::value ? "!" : "!$";
                out += s->name;
              } else {
                const auto& r = std::get<ReceiveOffer>(o);
                out += "?" + r.variable + ":" + r.sort;
              }
            }
          }
          out += ";";
          write_key(out, n.rest);
        } else if constexpr (std::is_same_v<T, Hide>) {
          out += "hide";
          gates(n.gates);
          out += '(';
          write_key(out, n.body);
          out += ')';
        } else {
          out += '(';
          write_key(out, n.left);
          if constexpr (std::is_same_v<T, Choice>)
            out += "[]";
          else if constexpr (std::is_same_v<T, Seq>)
            out += ">>";
          else if constexpr (std::is_same_v<T, Disrupt>)
            out += "[>";
          else {
            switch (n.sync.kind) {
              case SyncSet::Kind::none:
                out += "|||";
                break;
              case SyncSet::Kind::full:
                out += "||";
                break;
              case SyncSet::Kind::gates:
                out += '|';
                gates(n.sync.gates);
                out += '|';
                break;
            }
          }
          write_key(out, n.right);
          out += ')';
        }
      },
      b->v);
}

inline std::string state_key(const BehaviorExpr& b) {
  std::string s;
  write_key(s, b);
  return s;
}

namespace detail {

class Stepper {
 public:
  explicit Stepper(const Specification& spec) : spec_(spec) {}

  std::vector<Step> steps(const BehaviorExpr& b) { return go(b, 0); }

 private:
  std::vector<Step> go(const BehaviorExpr& b, int depth) {
    using namespace syntax;
    std::vector<Step> out;
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Stop>) {
          } else if constexpr (std::is_same_v<T, Exit>) {
            out.push_back({Action::terminate(), stop()});
          } else if constexpr (std::is_same_v<T, Prefix>) {
            prefix_steps(n, out);
          } else if constexpr (std::is_same_v<T, Choice>) {
            out = go(n.left, depth);
            auto r = go(n.right, depth);
            out.insert(out.end(), r.begin(), r.end());
          } else if constexpr (std::is_same_v<T, Par>) {
            par_steps(n, depth, out);
          } else if constexpr (std::is_same_v<T, Hide>) {
            for (auto& s : go(n.body, depth)) {
              bool hidden = s.action.is_observable() &&
                            std::find(n.gates.begin(), n.gates.end(), s.action.gate) != n.gates.end();
              out.push_back({hidden ? Action::internal() : std::move(s.action), make(Hide{n.gates, s.target})});
            }
          } else if constexpr (std::is_same_v<T, Seq>) {
            for (auto& s : go(n.left, depth)) {
              if (s.action.is_terminate())
                out.push_back({Action::internal(), n.right});
              else
                out.push_back({std::move(s.action), make(Seq{s.target, n.right})});
            }
          } else if constexpr (std::is_same_v<T, Disrupt>) {
            for (auto& s : go(n.left, depth)) {
              if (s.action.is_terminate())
                out.push_back(std::move(s));
              else
                out.push_back({std::move(s.action), make(Disrupt{s.target, n.right})});
            }
            auto r = go(n.right, depth);
            out.insert(out.end(), r.begin(), r.end());
          } else {
            static_assert(std::is_same_v<T, Inst>);
            inst_steps(n, depth, out);
          }
        },
        b->v);
    return out;
  }

  void prefix_steps(const syntax::Prefix& n, std::vector<Step>& out) {
    using namespace syntax;
    if (n.action.internal) {
      out.push_back({Action::internal(), n.rest});
      return;
    }
    // Odometer over the receive offers' sorts.
    std::vector<const SortDecl*> domains;
    for (const auto& o : n.action.offers)
      if (const auto* r = std::get_if<ReceiveOffer>(&o)) {
        const SortDecl* s = spec_.find_sort(r->sort);
        if (!s || s->values.empty()) return;
        domains.push_back(s);
      }
    std::vector<std::size_t> pick(domains.size(), 0);
    for (;;) {
      std::vector<Value> values;
      std::vector<std::pair<std::string, std::string>> bindings;
      std::size_t k = 0;
      for (const auto& o : n.action.offers) {
        if (const auto* s = std::get_if<SendOffer>(&o)) {
          const SortDecl* sort = spec_.sort_of_value(s->name);
          values.push_back({sort ? sort->name : std::string{}, s->name});
        } else {
          const auto& r = std::get<ReceiveOffer>(o);
          const auto& v = domains[k]->values[pick[k]];
          values.push_back({domains[k]->name, v});
          bindings.emplace_back(r.variable, v);
          ++k;
        }
      }
      BehaviorExpr target = n.rest;
      std::set<std::string> done;
      // A variable received twice in one action is bound by its last occurrence.
      for (auto it = bindings.rbegin(); it != bindings.rend(); ++it)
        if (done.insert(it->first).second) target = substitute_value(target, it->first, it->second);
      out.push_back({Action::observable(n.action.gate, std::move(values)), std::move(target)});
      std::size_t i = 0;
      while (i < pick.size() && ++pick[i] == domains[i]->values.size()) pick[i++] = 0;
      if (i == pick.size()) break;
    }
  }

  void par_steps(const syntax::Par& n, int depth, std::vector<Step>& out) {
    using namespace syntax;
    auto left = go(n.left, depth);
    auto right = go(n.right, depth);
    auto synchronizes = [&](const Action& a) {
      return a.is_terminate() || (a.is_observable() && n.sync.contains(a.gate));
    };
    for (const auto& l : left)
      if (!synchronizes(l.action)) out.push_back({l.action, make(Par{l.target, n.sync, n.right})});
    for (const auto& r : right)
      if (!synchronizes(r.action)) out.push_back({r.action, make(Par{n.left, n.sync, r.target})});
    for (const auto& l : left) {
      if (!synchronizes(l.action)) continue;
      for (const auto& r : right)
        if (l.action == r.action) out.push_back({l.action, make(Par{l.target, n.sync, r.target})});
    }
  }

  void inst_steps(const syntax::Inst& n, int depth, std::vector<Step>& out) {
    const syntax::ProcessDef* p = spec_.find_process(n.process);
    if (!p) throw std::logic_error("unknown process '" + n.process + "'");
    if (depth >= kMaxUnfoldDepth) throw UnguardedRecursion(n.process);
    for (const auto& [name, gates] : unfolding_)
      if (name == n.process && *gates == n.gates) throw UnguardedRecursion(n.process);
    GateMap m;
    for (std::size_t i = 0; i < p->formal_gates.size() && i < n.gates.size(); ++i)
      if (p->formal_gates[i] != n.gates[i]) m[p->formal_gates[i]] = n.gates[i];
    unfolding_.emplace_back(n.process, &n.gates);
    try {
      out = go(substitute_gates(p->body, m), depth + 1);
    } catch (...) {
      unfolding_.pop_back();
      throw;
    }
    unfolding_.pop_back();
  }

  const Specification& spec_;
  std::vector<std::pair<std::string, const syntax::GateList*>> unfolding_;
};

}  // namespace detail

// All SOS-derivable steps of `state`, with targets in normal form. The
// result is a set: duplicates are removed and the order is canonical
// (rendered label, then target state key).
inline std::vector<Step> successors(const BehaviorExpr& state, const Specification& spec) {
  detail::Stepper stepper(spec);
  std::vector<Step> raw = stepper.steps(state);
  std::vector<std::tuple<std::string, std::string, std::size_t>> order;
  order.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    raw[i].target = normalize(raw[i].target);
    order.emplace_back(render(raw[i].action), state_key(raw[i].target), i);
  }
  std::sort(order.begin(), order.end());
  std::vector<Step> out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& [label, key, idx] = order[i];
    if (i > 0 && std::get<0>(order[i - 1]) == label && std::get<1>(order[i - 1]) == key &&
        raw[std::get<2>(order[i - 1])].action == raw[idx].action)
      continue;
    out.push_back(std::move(raw[idx]));
  }
  return out;
}

}  // namespace lotos::semantics
