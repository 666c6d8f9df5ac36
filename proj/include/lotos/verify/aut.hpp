#pragma once

// Aldebaran (.aut) interchange:
//
//   des (0, <transitions>, <states>)
//   (<src>, "<label>", <dst>)
//   ...

#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "lotos/semantics/lts.hpp"

namespace lotos::verify {

using semantics::Lts;

inline std::string export_aut(const Lts& lts) {
  std::ostringstream os;
  os << "des (0, " << lts.transitions.size() << ", " << lts.num_states << ")\n";
  for (const auto& t : lts.transitions) os << '(' << t.source << ", \"" << lts.label_text(t) << "\", " << t.target << ")\n";
  return os.str();
}

class AutError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inverse of render(). Sort tags are not part of the text and come back empty.
inline semantics::Action parse_label(std::string_view text) {
  using semantics::Action;
  if (text == "i") return Action::internal();
  if (text == "exit") return Action::terminate();
  std::size_t bang = text.find(" !");
  Action a = Action::observable(std::string(text.substr(0, bang)));
  while (bang != std::string_view::npos) {
    std::size_t start = bang + 2;
    bang = text.find(" !", start);
    a.offers.push_back({"", std::string(text.substr(start, bang == std::string_view::npos ? bang : bang - start))});
  }
  return a;
}

// Reads an .aut file. Transition order is preserved; labels are interned
// and sorted by text like generated LTSs.
inline Lts read_aut(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) -> AutError {
    return AutError("aut line " + std::to_string(lineno) + ": " + msg);
  };

  Lts lts;
  std::size_t declared_transitions = 0;
  bool header = false;
  std::map<std::string, std::size_t> label_ids;
  struct Raw {
    std::size_t src;
    std::string label;
    std::size_t dst;
  };
  std::vector<Raw> raw;

  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!header) {
      unsigned long long init = 0, trans = 0, states = 0;
      if (std::sscanf(line.c_str(), " des ( %llu , %llu , %llu )", &init, &trans, &states) != 3)
        throw fail("expected 'des (initial, transitions, states)'");
      if (init != 0) throw fail("initial state must be 0");
      if (states == 0) throw fail("an LTS has at least one state");
      lts.num_states = states;
      declared_transitions = trans;
      header = true;
      continue;
    }
    std::size_t open = line.find('('), c1 = line.find(','), c2 = line.rfind(','), close = line.rfind(')');
    if (open == std::string::npos || c1 == std::string::npos || c2 == c1 || close == std::string::npos)
      throw fail("malformed transition");
    std::string label(line.substr(c1 + 1, c2 - c1 - 1));
    std::size_t q1 = label.find('"'), q2 = label.rfind('"');
    if (q1 != std::string::npos && q2 > q1)
      label = label.substr(q1 + 1, q2 - q1 - 1);
    else {
      std::size_t b = label.find_first_not_of(' '), e = label.find_last_not_of(' ');
      label = b == std::string::npos ? "" : label.substr(b, e - b + 1);
    }
    Raw r;
    try {
      r.src = std::stoul(line.substr(open + 1, c1 - open - 1));
      r.dst = std::stoul(line.substr(c2 + 1, close - c2 - 1));
    } catch (const std::exception&) {
      throw fail("malformed state number");
    }
    if (r.src >= lts.num_states || r.dst >= lts.num_states) throw fail("state number out of range");
    r.label = std::move(label);
    label_ids.emplace(r.label, 0);
    raw.push_back(std::move(r));
  }
  if (!header) throw AutError("aut: missing header");
  if (raw.size() != declared_transitions)
    throw AutError("aut: header declares " + std::to_string(declared_transitions) + " transitions, found " +
                   std::to_string(raw.size()));
  for (auto& [text, id] : label_ids) {
    id = lts.labels.size();
    lts.labels.push_back(parse_label(text));
  }
  for (const auto& r : raw) lts.transitions.push_back({r.src, label_ids.at(r.label), r.dst});
  return lts;
}

}  // namespace lotos::verify
