#pragma once

// Pretty-printer for the concrete syntax. Output reparses to a structurally
// equal tree; parentheses are inserted only where precedence requires them.
//
// Precedence, loosest to tightest:
//   hide ... in   >>   [>   ||| || |[..]|   []   ;   primaries
// Binary operators associate to the left.

#include <sstream>
#include <string>

#include "lotos/syntax/ast.hpp"

namespace lotos::syntax {

namespace detail {

enum Level : int { kHide = 0, kSeq = 1, kDisrupt = 2, kPar = 3, kChoice = 4, kPrefix = 5, kPrimary = 6 };

inline int level_of(const BehaviorExpr& b) {
  struct V {
    int operator()(const Stop&) const { return kPrimary; }
    int operator()(const Exit&) const { return kPrimary; }
    int operator()(const Inst&) const { return kPrimary; }
    int operator()(const Prefix&) const { return kPrefix; }
    int operator()(const Choice&) const { return kChoice; }
    int operator()(const Par&) const { return kPar; }
    int operator()(const Disrupt&) const { return kDisrupt; }
    int operator()(const Seq&) const { return kSeq; }
    int operator()(const Hide&) const { return kHide; }
  };
  return std::visit(V{}, b->v);
}

inline void print_gates(std::ostream& os, const GateList& gates) {
  for (std::size_t i = 0; i < gates.size(); ++i) os << (i ? ", " : "") << gates[i];
}

}  // namespace detail

inline std::string to_string(const ActionExpr& a) {
  if (a.internal) return "i";
  std::string s = a.gate;
  for (const auto& o : a.offers) {
    if (const auto* snd = std::get_if<SendOffer>(&o))
      s += " !" + snd->name;
    else {
      const auto& rcv = std::get<ReceiveOffer>(o);
      s += " ?" + rcv.variable + ":" + rcv.sort;
    }
  }
  return s;
}

inline std::string to_string(const SyncSet& s) {
  switch (s.kind) {
    case SyncSet::Kind::none:
      return "|||";
    case SyncSet::Kind::full:
      return "||";
    case SyncSet::Kind::gates: {
      std::ostringstream os;
      os << "|[";
      detail::print_gates(os, s.gates);
      os << "]|";
      return os.str();
    }
  }
  return "|||";
}

inline void print(std::ostream& os, const BehaviorExpr& b, int min_level = detail::kHide);

namespace detail {

struct Printer {
  std::ostream& os;

  void binary(const BehaviorExpr& l, const std::string& op, const BehaviorExpr& r, int lvl) const {
    print(os, l, lvl);
    os << ' ' << op << ' ';
    print(os, r, lvl + 1);
  }

  void operator()(const Stop&) const { os << "stop"; }
  void operator()(const Exit&) const { os << "exit"; }
  void operator()(const Inst& n) const {
    os << n.process;
    if (!n.gates.empty()) {
      os << '[';
      print_gates(os, n.gates);
      os << ']';
    }
  }
  void operator()(const Prefix& n) const {
    os << to_string(n.action) << "; ";
    print(os, n.rest, kPrefix);
  }
  void operator()(const Choice& n) const { binary(n.left, "[]", n.right, kChoice); }
  void operator()(const Par& n) const { binary(n.left, to_string(n.sync), n.right, kPar); }
  void operator()(const Disrupt& n) const { binary(n.left, "[>", n.right, kDisrupt); }
  void operator()(const Seq& n) const { binary(n.left, ">>", n.right, kSeq); }
  void operator()(const Hide& n) const {
    os << "hide ";
    print_gates(os, n.gates);
    os << " in ";
    print(os, n.body, kHide);
  }
};

}  // namespace detail

inline void print(std::ostream& os, const BehaviorExpr& b, int min_level) {
  bool parens = detail::level_of(b) < min_level;
  if (parens) os << '(';
  std::visit(detail::Printer{os}, b->v);
  if (parens) os << ')';
}

inline std::string to_string(const BehaviorExpr& b) {
  std::ostringstream os;
  print(os, b);
  return os.str();
}

inline const char* to_string(Functionality f) { return f == Functionality::exit ? "exit" : "noexit"; }

inline std::string to_string(const Specification& spec) {
  std::ostringstream os;
  os << "specification " << spec.name;
  if (!spec.top_gates.empty()) {
    os << " [";
    detail::print_gates(os, spec.top_gates);
    os << ']';
  }
  os << " : " << to_string(spec.functionality) << " :=\n";
  if (!spec.sorts.empty()) {
    os << "  sorts\n";
    for (const auto& s : spec.sorts) {
      os << "    " << s.name << " = {";
      detail::print_gates(os, s.values);
      os << "}\n";
    }
  }
  os << "  behaviour\n    ";
  print(os, spec.top_behavior);
  os << '\n';
  if (!spec.processes.empty()) {
    os << "  where\n";
    for (const auto& p : spec.processes) {
      os << "    process " << p.name;
      if (!p.formal_gates.empty()) {
        os << " [";
        detail::print_gates(os, p.formal_gates);
        os << ']';
      }
      os << " : " << to_string(p.functionality) << " :=\n      ";
      print(os, p.body);
      os << "\n    endproc\n";
    }
  }
  os << "endspec\n";
  return os.str();
}

}  // namespace lotos::syntax
