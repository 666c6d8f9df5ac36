#pragma once

// Abstract syntax of the Basic LOTOS subset with finite-sort value offers.
//
// Behavior expressions are immutable trees shared through BehaviorExpr
// handles. Structural equality ignores source spans, so a reparsed tree
// compares equal to the original regardless of layout.

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lotos/syntax/diagnostic.hpp"

namespace lotos::syntax {

using Identifier = std::string;
using GateList = std::vector<Identifier>;

// "!e": e names either a declared sort value or a variable bound by an
// enclosing receive. The parser decides which by scope.
struct SendOffer {
  enum class Kind { value, variable };
  Kind kind = Kind::value;
  Identifier name;

  bool operator==(const SendOffer&) const = default;
};

// "?x:S"
struct ReceiveOffer {
  Identifier variable;
  Identifier sort;

  bool operator==(const ReceiveOffer&) const = default;
};

using OfferExpr = std::variant<SendOffer, ReceiveOffer>;

struct ActionExpr {
  bool internal = false;  // the action "i"; gate and offers are empty
  Identifier gate;
  std::vector<OfferExpr> offers;

  static ActionExpr make_internal() { return ActionExpr{true, {}, {}}; }
  static ActionExpr comm(Identifier g, std::vector<OfferExpr> offers = {}) {
    return ActionExpr{false, std::move(g), std::move(offers)};
  }

  bool operator==(const ActionExpr&) const = default;
};

// The three parallel forms: "|||" (none), "||" (full), "|[g,...]|" (gates).
struct SyncSet {
  enum class Kind { none, full, gates };
  Kind kind = Kind::none;
  GateList gates;

  static SyncSet interleave() { return {Kind::none, {}}; }
  static SyncSet all() { return {Kind::full, {}}; }
  static SyncSet on(GateList g) { return {Kind::gates, std::move(g)}; }

  bool contains(const Identifier& g) const {
    switch (kind) {
      case Kind::none:
        return false;
      case Kind::full:
        return true;
      case Kind::gates:
        for (const auto& x : gates)
          if (x == g) return true;
        return false;
    }
    return false;
  }

  bool operator==(const SyncSet&) const = default;
};

struct BehaviorNode;

class BehaviorExpr {
 public:
  BehaviorExpr() = default;
  explicit BehaviorExpr(std::shared_ptr<const BehaviorNode> node) : node_(std::move(node)) {}

  const BehaviorNode& node() const { return *node_; }
  const BehaviorNode* operator->() const { return node_.get(); }
  bool empty() const { return node_ == nullptr; }
  const void* identity() const { return node_.get(); }

  friend bool operator==(const BehaviorExpr& a, const BehaviorExpr& b);

 private:
  std::shared_ptr<const BehaviorNode> node_;
};

struct Stop {
  bool operator==(const Stop&) const = default;
};
struct Exit {
  bool operator==(const Exit&) const = default;
};
struct Prefix {
  ActionExpr action;
  BehaviorExpr rest;
  bool operator==(const Prefix&) const = default;
};
struct Choice {
  BehaviorExpr left, right;
  bool operator==(const Choice&) const = default;
};
struct Par {
  BehaviorExpr left;
  SyncSet sync;
  BehaviorExpr right;
  bool operator==(const Par&) const = default;
};
struct Hide {
  GateList gates;
  BehaviorExpr body;
  bool operator==(const Hide&) const = default;
};
struct Seq {  // ">>"
  BehaviorExpr left, right;
  bool operator==(const Seq&) const = default;
};
struct Disrupt {  // "[>"
  BehaviorExpr left, right;
  bool operator==(const Disrupt&) const = default;
};
struct Inst {
  Identifier process;
  GateList gates;
  bool operator==(const Inst&) const = default;
};

using BehaviorVariant = std::variant<Stop, Exit, Prefix, Choice, Par, Hide, Seq, Disrupt, Inst>;

struct BehaviorNode {
  BehaviorVariant v;
  SourceSpan span;
};

inline bool operator==(const BehaviorExpr& a, const BehaviorExpr& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  return a.node_->v == b.node_->v;
}

template <typename T>
const T* as(const BehaviorExpr& b) {
  return std::get_if<T>(&b->v);
}

template <typename T>
bool is(const BehaviorExpr& b) {
  return std::holds_alternative<T>(b->v);
}

inline BehaviorExpr make(BehaviorVariant v, SourceSpan span = {}) {
  return BehaviorExpr(std::make_shared<const BehaviorNode>(BehaviorNode{std::move(v), span}));
}

// Convenience constructors, mostly for tests and synthesized trees.
inline BehaviorExpr stop() { return make(Stop{}); }
inline BehaviorExpr exit_() { return make(Exit{}); }
inline BehaviorExpr prefix(ActionExpr a, BehaviorExpr rest) {
  return make(Prefix{std::move(a), std::move(rest)});
}
inline BehaviorExpr prefix(const Identifier& gate, BehaviorExpr rest) {
  return prefix(ActionExpr::comm(gate), std::move(rest));
}
inline BehaviorExpr internal(BehaviorExpr rest) {
  return prefix(ActionExpr::make_internal(), std::move(rest));
}
inline BehaviorExpr choice(BehaviorExpr l, BehaviorExpr r) {
  return make(Choice{std::move(l), std::move(r)});
}
inline BehaviorExpr par(BehaviorExpr l, SyncSet s, BehaviorExpr r) {
  return make(Par{std::move(l), std::move(s), std::move(r)});
}
inline BehaviorExpr hide(GateList g, BehaviorExpr body) {
  return make(Hide{std::move(g), std::move(body)});
}
inline BehaviorExpr seq(BehaviorExpr l, BehaviorExpr r) {
  return make(Seq{std::move(l), std::move(r)});
}
inline BehaviorExpr disrupt(BehaviorExpr l, BehaviorExpr r) {
  return make(Disrupt{std::move(l), std::move(r)});
}
inline BehaviorExpr inst(Identifier p, GateList g) {
  return make(Inst{std::move(p), std::move(g)});
}

enum class Functionality { noexit, exit };

struct SortDecl {
  Identifier name;
  std::vector<Identifier> values;
  SourceSpan span;

  bool operator==(const SortDecl& o) const { return name == o.name && values == o.values; }
};

struct ProcessDef {
  Identifier name;
  GateList formal_gates;
  Functionality functionality = Functionality::noexit;
  BehaviorExpr body;
  SourceSpan span;

  bool operator==(const ProcessDef& o) const {
    return name == o.name && formal_gates == o.formal_gates &&
           functionality == o.functionality && body == o.body;
  }
};

struct Specification {
  Identifier name;
  GateList top_gates;
  Functionality functionality = Functionality::noexit;
  std::vector<SortDecl> sorts;
  std::vector<ProcessDef> processes;
  BehaviorExpr top_behavior;

  const ProcessDef* find_process(const Identifier& n) const {
    for (const auto& p : processes)
      if (p.name == n) return &p;
    return nullptr;
  }
  const SortDecl* find_sort(const Identifier& n) const {
    for (const auto& s : sorts)
      if (s.name == n) return &s;
    return nullptr;
  }
  // Sort owning a value literal, or nullptr. Value names are unique across sorts.
  const SortDecl* sort_of_value(const Identifier& v) const {
    for (const auto& s : sorts)
      for (const auto& x : s.values)
        if (x == v) return &s;
    return nullptr;
  }

  bool operator==(const Specification& o) const {
    return name == o.name && top_gates == o.top_gates && functionality == o.functionality &&
           sorts == o.sorts && processes == o.processes && top_behavior == o.top_behavior;
  }
};

}  // namespace lotos::syntax
