#pragma once

// Deterministic safety monitors.
//
// File format (one directive per line, '#' starts a comment):
//
//   monitor <Name>
//   states <s1>, <s2>, ...
//   initial <s>
//   bad <s>, ...              (may be empty)
//   <from> -> <to> : <label pattern>
//   end
//
// Transitions are tried in file order; the first whose source is the
// current state and whose pattern matches the action wins. Actions matched
// by no transition leave the monitor where it is.

#include <algorithm>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "lotos/syntax/diagnostic.hpp"
#include "lotos/verify/pattern.hpp"

namespace lotos::verify {

struct MonitorTransition {
  std::size_t from = 0;
  LabelPattern pattern;
  std::size_t to = 0;
};

struct Monitor {
  std::string name;
  std::vector<std::string> states;
  std::size_t initial = 0;
  std::set<std::size_t> bad;
  std::vector<MonitorTransition> transitions;

  std::size_t next(std::size_t state, const semantics::Action& a) const {
    for (const auto& t : transitions)
      if (t.from == state && t.pattern.matches(a)) return t.to;
    return state;
  }

  bool is_bad(std::size_t s) const { return bad.count(s) > 0; }
};

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_names(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in{std::string(s)};
  while (std::getline(in, cur, ',')) {
    std::string t = trim(cur);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

}  // namespace detail

inline syntax::ParseResult<Monitor> parse_monitor(std::string_view text) {
  using syntax::Diagnostic;
  using syntax::Severity;
  syntax::ParseResult<Monitor> r;
  Monitor m;
  bool have_header = false, have_states = false, have_initial = false, ended = false;
  std::string initial_name;
  std::vector<std::pair<std::size_t, std::string>> bad_names;
  struct Pending {
    std::size_t line;
    std::string from, to, pattern;
  };
  std::vector<Pending> pending;

  auto error = [&](std::size_t line, std::string msg) {
    r.diagnostics.push_back({Severity::error, {line, 1, line, 1}, std::move(msg), syntax::code::syntax});
  };

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = detail::trim(raw.substr(0, raw.find('#')));
    if (s.empty()) continue;
    if (ended) {
      error(line, "text after 'end'");
      break;
    }
    std::string head = s.substr(0, s.find_first_of(" \t"));
    std::string rest = detail::trim(std::string_view(s).substr(head.size()));
    if (head == "monitor") {
      m.name = rest;
      have_header = true;
    } else if (head == "states") {
      m.states = detail::split_names(rest);
      have_states = !m.states.empty();
    } else if (head == "initial") {
      initial_name = rest;
      have_initial = true;
    } else if (head == "bad") {
      for (auto& b : detail::split_names(rest)) bad_names.emplace_back(line, b);
    } else if (head == "end") {
      ended = true;
    } else {
      std::size_t arrow = s.find("->"), colon = s.find(':');
      if (arrow == std::string::npos || colon == std::string::npos || colon < arrow) {
        error(line, "expected '<from> -> <to> : <pattern>'");
        continue;
      }
      pending.push_back({line, detail::trim(std::string_view(s).substr(0, arrow)),
                         detail::trim(std::string_view(s).substr(arrow + 2, colon - arrow - 2)),
                         detail::trim(std::string_view(s).substr(colon + 1))});
    }
  }
  if (!have_header) error(1, "missing 'monitor <name>' header");
  if (!have_states) error(line ? line : 1, "missing 'states' declaration");
  if (!have_initial) error(line ? line : 1, "missing 'initial' declaration");
  if (!ended) error(line ? line : 1, "missing 'end'");

  auto index = [&](const std::string& n, std::size_t at) -> std::size_t {
    auto it = std::find(m.states.begin(), m.states.end(), n);
    if (it == m.states.end()) {
      error(at, "unknown monitor state '" + n + "'");
      return 0;
    }
    return static_cast<std::size_t>(it - m.states.begin());
  };
  if (have_initial && have_states) m.initial = index(initial_name, 1);
  for (const auto& [at, b] : bad_names) m.bad.insert(index(b, at));
  for (const auto& p : pending) {
    MonitorTransition t;
    t.from = index(p.from, p.line);
    t.to = index(p.to, p.line);
    try {
      t.pattern = parse_pattern(p.pattern);
    } catch (const PatternError& e) {
      error(p.line, e.what());
    }
    m.transitions.push_back(std::move(t));
  }
  if (!syntax::has_errors(r.diagnostics)) r.value = std::move(m);
  return r;
}

}  // namespace lotos::verify
