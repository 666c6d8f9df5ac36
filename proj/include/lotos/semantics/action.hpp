#pragma once

#include <compare>
#include <string>
#include <vector>

namespace lotos::semantics {

// A concrete value of a finite sort. The sort tag takes part in equality, so
// offers of different sorts never match in synchronization.
struct Value {
  std::string sort;
  std::string name;

  auto operator<=>(const Value&) const = default;
};

struct Action {
  enum class Kind { internal, terminate, observable };
  Kind kind = Kind::internal;
  std::string gate;
  std::vector<Value> offers;

  static Action internal() { return {Kind::internal, {}, {}}; }
  static Action terminate() { return {Kind::terminate, {}, {}}; }
  static Action observable(std::string gate, std::vector<Value> offers = {}) {
    return {Kind::observable, std::move(gate), std::move(offers)};
  }

  bool is_internal() const { return kind == Kind::internal; }
  bool is_terminate() const { return kind == Kind::terminate; }
  bool is_observable() const { return kind == Kind::observable; }

  auto operator<=>(const Action&) const = default;
};

// Canonical rendering, shared by state ordering and `.aut` export:
// "i", "exit", or the gate followed by " !value" per offer.
inline std::string render(const Action& a) {
  switch (a.kind) {
    case Action::Kind::internal:
      return "i";
    case Action::Kind::terminate:
      return "exit";
    case Action::Kind::observable:
      break;
  }
  std::string s = a.gate;
  for (const auto& v : a.offers) s += " !" + v.name;
  return s;
}

}  // namespace lotos::semantics
