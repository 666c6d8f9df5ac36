#pragma once

// Architecture configurations: components and connectors bound to LOTOS
// processes, composed with the parallel operators and hide.
//
// The composition is kept as a BehaviorExpr restricted to three node kinds:
// Inst with no gates (a reference to an element by name), Par and Hide.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lotos/syntax/ast.hpp"

namespace lotos::adl {

using syntax::BehaviorExpr;
using syntax::GateList;
using syntax::Identifier;

enum class ElementKind { component, connector };

inline const char* to_string(ElementKind k) { return k == ElementKind::component ? "component" : "connector"; }

struct ArchElement {
  ElementKind kind = ElementKind::component;
  Identifier name;
  Identifier process;
  GateList gates;

  bool operator==(const ArchElement&) const = default;
};

struct ArchConfig {
  Identifier name;
  std::vector<ArchElement> elements;
  BehaviorExpr composition;
  std::vector<syntax::SortDecl> sorts;
  std::vector<syntax::ProcessDef> process_defs;

  const ArchElement* find(const Identifier& n) const {
    for (const auto& e : elements)
      if (e.name == n) return &e;
    return nullptr;
  }
  const syntax::ProcessDef* find_process(const Identifier& n) const {
    for (const auto& p : process_defs)
      if (p.name == n) return &p;
    return nullptr;
  }
};

namespace diag {
inline constexpr const char* duplicate_name = "duplicate-name";
inline constexpr const char* too_few_components = "too-few-components";
inline constexpr const char* no_connector = "no-connector";
inline constexpr const char* coupling = "direct-component-coupling";
inline constexpr const char* unresolved = "unresolved-element";
inline constexpr const char* gate_mismatch = "gate-mismatch";
}  // namespace diag

struct ConfigDiagnostic {
  std::string code;
  std::string detail;

  bool operator==(const ConfigDiagnostic&) const = default;
};

namespace detail {

// Elements below a composition node, with the gates still visible there.
struct Reach {
  std::vector<std::pair<const ArchElement*, std::set<Identifier>>> components;
  bool has_connector = false;
};

class ConfigChecker {
 public:
  ConfigChecker(const ArchConfig& cfg, std::vector<ConfigDiagnostic>& out) : cfg_(cfg), out_(out) {}

  Reach walk(const BehaviorExpr& e) {
    Reach r;
    if (e.empty()) return r;
    if (const auto* i = syntax::as<syntax::Inst>(e)) {
      const ArchElement* el = cfg_.find(i->process);
      if (!el || !i->gates.empty()) {
        if (reported_.insert(i->process).second)
          out_.push_back({diag::unresolved, "composition refers to undeclared element '" + i->process + "'"});
        return r;
      }
      if (el->kind == ElementKind::connector)
        r.has_connector = true;
      else
        r.components.emplace_back(el, std::set<Identifier>(el->gates.begin(), el->gates.end()));
      return r;
    }
    if (const auto* h = syntax::as<syntax::Hide>(e)) {
      r = walk(h->body);
      for (auto& [el, gates] : r.components)
        for (const auto& g : h->gates) gates.erase(g);
      return r;
    }
    if (const auto* p = syntax::as<syntax::Par>(e)) {
      Reach l = walk(p->left), rr = walk(p->right);
      if (p->sync.kind != syntax::SyncSet::Kind::none) coupling(l, p->sync, rr);
      r.components = std::move(l.components);
      r.components.insert(r.components.end(), rr.components.begin(), rr.components.end());
      r.has_connector = l.has_connector || rr.has_connector;
      return r;
    }
    out_.push_back({diag::unresolved, "composition admits only element names, parallel operators and hide"});
    return r;
  }

 private:
  void coupling(const Reach& l, const syntax::SyncSet& sync, const Reach& r) {
    bool direct = false;
    for (const auto& [a, ga] : l.components)
      for (const auto& [b, gb] : r.components) {
        std::vector<Identifier> shared;
        for (const auto& g : ga)
          if (gb.count(g) && sync.contains(g)) shared.push_back(g);
        if (shared.empty()) continue;
        direct = true;
        std::string gates;
        for (const auto& g : shared) gates += (gates.empty() ? "" : ", ") + g;
        out_.push_back({diag::coupling, "components '" + a->name + "' and '" + b->name +
                                            "' synchronize directly on " + gates});
      }
    if (!direct && !l.components.empty() && !r.components.empty() && !l.has_connector && !r.has_connector)
      out_.push_back({diag::coupling, "components '" + l.components.front().first->name + "' and '" +
                                          r.components.front().first->name +
                                          "' are composed with no connector between them"});
  }

  const ArchConfig& cfg_;
  std::vector<ConfigDiagnostic>& out_;
  std::set<Identifier> reported_;
};

}  // namespace detail

// One diagnostic per violated configuration constraint, in a fixed order:
// names, element bindings, counts, then the composition tree.
inline std::vector<ConfigDiagnostic> validate_config(const ArchConfig& cfg) {
  std::vector<ConfigDiagnostic> out;
  std::map<Identifier, int> seen;
  for (const auto& e : cfg.elements)
    if (++seen[e.name] == 2) out.push_back({diag::duplicate_name, "element name '" + e.name + "' declared more than once"});

  for (const auto& e : cfg.elements) {
    const syntax::ProcessDef* p = cfg.find_process(e.process);
    if (!p) {
      out.push_back({diag::unresolved, std::string(to_string(e.kind)) + " '" + e.name + "' is bound to undefined process '" +
                                           e.process + "'"});
    } else if (p->formal_gates.size() != e.gates.size()) {
      out.push_back({diag::gate_mismatch, std::string(to_string(e.kind)) + " '" + e.name + "' passes " +
                                              std::to_string(e.gates.size()) + " gate(s) to process '" + e.process +
                                              "', which takes " + std::to_string(p->formal_gates.size())});
    }
  }

  auto count = [&](ElementKind k) {
    return std::count_if(cfg.elements.begin(), cfg.elements.end(), [k](const ArchElement& e) { return e.kind == k; });
  };
  if (auto n = count(ElementKind::component); n < 2)
    out.push_back({diag::too_few_components, "a configuration needs at least 2 components, found " + std::to_string(n)});
  if (count(ElementKind::connector) < 1) out.push_back({diag::no_connector, "a configuration needs at least 1 connector"});

  if (cfg.composition.empty())
    out.push_back({diag::unresolved, "configuration has no composition"});
  else
    detail::ConfigChecker(cfg, out).walk(cfg.composition);
  return out;
}

namespace detail {

inline BehaviorExpr instantiate(const ArchConfig& cfg, const BehaviorExpr& e) {
  if (const auto* i = syntax::as<syntax::Inst>(e)) {
    const ArchElement* el = cfg.find(i->process);
    return syntax::make(syntax::Inst{el->process, el->gates}, e->span);
  }
  if (const auto* h = syntax::as<syntax::Hide>(e)) return syntax::make(syntax::Hide{h->gates, instantiate(cfg, h->body)}, e->span);
  const auto& p = std::get<syntax::Par>(e->v);
  return syntax::make(syntax::Par{instantiate(cfg, p.left), p.sync, instantiate(cfg, p.right)}, e->span);
}

inline void free_gates(const ArchConfig& cfg, const BehaviorExpr& e, const std::set<Identifier>& hidden, GateList& out) {
  if (const auto* i = syntax::as<syntax::Inst>(e)) {
    for (const auto& g : cfg.find(i->process)->gates)
      if (!hidden.count(g) && std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
  } else if (const auto* h = syntax::as<syntax::Hide>(e)) {
    std::set<Identifier> inner = hidden;
    inner.insert(h->gates.begin(), h->gates.end());
    free_gates(cfg, h->body, inner, out);
  } else if (const auto* p = syntax::as<syntax::Par>(e)) {
    free_gates(cfg, p->left, hidden, out);
    free_gates(cfg, p->right, hidden, out);
  }
}

}  // namespace detail

struct FlattenResult {
  std::optional<syntax::Specification> spec;
  std::vector<ConfigDiagnostic> diagnostics;

  bool ok() const { return spec.has_value(); }
};

// Replaces element names by instantiations of their processes. The top gates
// are the gates left unhidden, in order of first appearance.
inline FlattenResult flatten(const ArchConfig& cfg) {
  FlattenResult r;
  for (const auto& d : validate_config(cfg))
    if (d.code == diag::unresolved || d.code == diag::gate_mismatch) r.diagnostics.push_back(d);
  if (!r.diagnostics.empty()) return r;
  syntax::Specification spec;
  spec.name = cfg.name;
  spec.sorts = cfg.sorts;
  spec.processes = cfg.process_defs;
  spec.top_behavior = detail::instantiate(cfg, cfg.composition);
  detail::free_gates(cfg, cfg.composition, {}, spec.top_gates);
  r.spec = std::move(spec);
  return r;
}

}  // namespace lotos::adl
