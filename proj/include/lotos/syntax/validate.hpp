#pragma once

// Static well-formedness of a parsed Specification: name resolution, gate
// scoping, gate-list arity, sort references, and receive-variable binding.

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "lotos/syntax/ast.hpp"

namespace lotos::syntax {

namespace detail {

class Validator {
 public:
  Validator(const Specification& spec, std::vector<Diagnostic>& out, bool check_gates)
      : spec_(spec), out_(out), check_gates_(check_gates) {}

  void behavior(const BehaviorExpr& b, std::vector<Identifier>& gates, std::vector<Identifier>& vars) {
    const SourceSpan span = b->span;
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Prefix>) {
            action(n.action, span, gates, vars);
            std::size_t mark = vars.size();
            for (const auto& o : n.action.offers)
              if (const auto* r = std::get_if<ReceiveOffer>(&o)) vars.push_back(r->variable);
            behavior(n.rest, gates, vars);
            vars.resize(mark);
          } else if constexpr (std::is_same_v<T, Choice> || std::is_same_v<T, Seq> ||
                               std::is_same_v<T, Disrupt>) {
            behavior(n.left, gates, vars);
            behavior(n.right, gates, vars);
          } else if constexpr (std::is_same_v<T, Par>) {
            if (n.sync.kind == SyncSet::Kind::gates)
              for (const auto& g : n.sync.gates) gate(g, span, gates);
            behavior(n.left, gates, vars);
            behavior(n.right, gates, vars);
          } else if constexpr (std::is_same_v<T, Hide>) {
            std::size_t mark = gates.size();
            gates.insert(gates.end(), n.gates.begin(), n.gates.end());
            behavior(n.body, gates, vars);
            gates.resize(mark);
          } else if constexpr (std::is_same_v<T, Inst>) {
            instantiation(n, span, gates);
          }
        },
        b->v);
  }

 private:
  void error(SourceSpan at, std::string msg, const char* code) {
    out_.push_back({Severity::error, at, std::move(msg), code});
  }

  void gate(const Identifier& g, SourceSpan at, const std::vector<Identifier>& gates) {
    if (!check_gates_) return;
    if (std::find(gates.begin(), gates.end(), g) == gates.end())
      error(at, "unknown gate '" + g + "'", code::unknown_gate);
  }

  void action(const ActionExpr& a, SourceSpan at, const std::vector<Identifier>& gates,
              const std::vector<Identifier>& vars) {
    if (a.internal) return;
    gate(a.gate, at, gates);
    for (const auto& o : a.offers) {
      if (const auto* s = std::get_if<SendOffer>(&o)) {
        if (s->kind == SendOffer::Kind::variable) {
          if (std::find(vars.begin(), vars.end(), s->name) == vars.end())
            error(at, "unbound variable '" + s->name + "'", code::unbound_variable);
        } else if (!spec_.sort_of_value(s->name)) {
          error(at, "unbound variable '" + s->name + "' (not a declared value)", code::unbound_variable);
        }
      } else {
        const auto& r = std::get<ReceiveOffer>(o);
        if (!spec_.find_sort(r.sort)) error(at, "unknown sort '" + r.sort + "'", code::unknown_sort);
      }
    }
  }

  void instantiation(const Inst& n, SourceSpan at, const std::vector<Identifier>& gates) {
    for (const auto& g : n.gates) gate(g, at, gates);
    const ProcessDef* p = spec_.find_process(n.process);
    if (!p) {
      error(at, "unknown process '" + n.process + "'", code::unknown_process);
      return;
    }
    if (p->formal_gates.size() != n.gates.size())
      error(at,
            "gate-arity mismatch: process '" + n.process + "' expects " +
                std::to_string(p->formal_gates.size()) + " gate(s), got " + std::to_string(n.gates.size()),
            code::arity);
  }

  const Specification& spec_;
  std::vector<Diagnostic>& out_;
  bool check_gates_;
};

inline void check_distinct(const std::vector<Identifier>& names, SourceSpan at, const std::string& what,
                           std::vector<Diagnostic>& out) {
  std::set<Identifier> seen;
  for (const auto& n : names)
    if (!seen.insert(n).second)
      out.push_back({Severity::error, at, "duplicate " + what + " '" + n + "'", code::duplicate});
}

inline void check_declarations(const Specification& spec, std::vector<Diagnostic>& out) {
  check_distinct(spec.top_gates, {1, 1, 1, 1}, "gate", out);
  std::set<Identifier> sorts, values, procs;
  for (const auto& s : spec.sorts) {
    if (!sorts.insert(s.name).second)
      out.push_back({Severity::error, s.span, "duplicate sort '" + s.name + "'", code::duplicate});
    if (s.values.empty())
      out.push_back({Severity::error, s.span, "sort '" + s.name + "' has no values", code::syntax});
    for (const auto& v : s.values)
      if (!values.insert(v).second)
        out.push_back({Severity::error, s.span, "duplicate value '" + v + "'", code::duplicate});
  }
  for (const auto& p : spec.processes) {
    if (!procs.insert(p.name).second)
      out.push_back({Severity::error, p.span, "duplicate process '" + p.name + "'", code::duplicate});
    check_distinct(p.formal_gates, p.span, "formal gate", out);
  }
}

}  // namespace detail

// Empty iff the specification is well formed; one diagnostic per violation.
inline std::vector<Diagnostic> validate_spec(const Specification& spec) {
  std::vector<Diagnostic> out;
  detail::check_declarations(spec, out);
  detail::Validator v(spec, out, true);
  for (const auto& p : spec.processes) {
    std::vector<Identifier> gates = p.formal_gates, vars;
    v.behavior(p.body, gates, vars);
  }
  std::vector<Identifier> gates = spec.top_gates, vars;
  if (!spec.top_behavior.empty()) v.behavior(spec.top_behavior, gates, vars);
  return out;
}

// Name resolution for a free-standing behavior expression. Gate scoping is
// not checked because there is no enclosing gate list.
inline std::vector<Diagnostic> validate_behavior(const BehaviorExpr& b, const Specification& context) {
  std::vector<Diagnostic> out;
  detail::Validator v(context, out, false);
  std::vector<Identifier> gates, vars;
  v.behavior(b, gates, vars);
  return out;
}

}  // namespace lotos::syntax
