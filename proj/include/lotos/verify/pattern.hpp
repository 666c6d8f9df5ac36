#pragma once

#include <cctype>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lotos/semantics/action.hpp"

namespace lotos::verify {

// Pattern over actions. Text forms:
//   i                internal action
//   exit             successful termination
//   *                any observable action
//   gate             any action on `gate`, whatever its offers
//   gate !v !*       exactly two offers, the first equal to v
// A '*' gate matches every gate. Spaces before '!' are optional.
struct LabelPattern {
  enum class Kind { internal, terminate, observable };
  Kind kind = Kind::observable;
  std::optional<std::string> gate;                               // nullopt: wildcard
  std::optional<std::vector<std::optional<std::string>>> offers;  // nullopt: any offers

  bool matches(const semantics::Action& a) const {
    switch (kind) {
      case Kind::internal:
        return a.is_internal();
      case Kind::terminate:
        return a.is_terminate();
      case Kind::observable:
        break;
    }
    if (!a.is_observable()) return false;
    if (gate && *gate != a.gate) return false;
    if (!offers) return true;
    if (offers->size() != a.offers.size()) return false;
    for (std::size_t i = 0; i < offers->size(); ++i)
      if ((*offers)[i] && *(*offers)[i] != a.offers[i].name) return false;
    return true;
  }
};

class PatternError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline std::string to_string(const LabelPattern& p) {
  switch (p.kind) {
    case LabelPattern::Kind::internal:
      return "i";
    case LabelPattern::Kind::terminate:
      return "exit";
    case LabelPattern::Kind::observable:
      break;
  }
  std::string s = p.gate ? *p.gate : "*";
  if (p.offers)
    for (const auto& o : *p.offers) s += " !" + (o ? *o : std::string("*"));
  return s;
}

inline LabelPattern parse_pattern(std::string_view text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto word = [&]() -> std::string {
    skip();
    if (pos < text.size() && text[pos] == '*') {
      ++pos;
      return "*";
    }
    std::size_t start = pos;
    while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) ++pos;
    if (start == pos) throw PatternError("malformed label pattern '" + std::string(text) + "'");
    return std::string(text.substr(start, pos - start));
  };

  LabelPattern p;
  std::string head = word();
  skip();
  bool more = pos < text.size();
  if (head == "i" && !more) {
    p.kind = LabelPattern::Kind::internal;
    return p;
  }
  if (head == "exit" && !more) {
    p.kind = LabelPattern::Kind::terminate;
    return p;
  }
  if (head != "*") p.gate = head;
  if (!more) return p;
  p.offers.emplace();
  while (pos < text.size()) {
    if (text[pos] != '!') throw PatternError("expected '!' in label pattern '" + std::string(text) + "'");
    ++pos;
    std::string v = word();
    p.offers->push_back(v == "*" ? std::nullopt : std::optional<std::string>(v));
    skip();
  }
  return p;
}

}  // namespace lotos::verify
