#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "lotos/semantics/action.hpp"

namespace lotos::verify {

using semantics::Action;

namespace detail {
inline constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
}

// Labels from the initial state to a distinguished state.
using Trace = std::vector<Action>;

enum class Verdict { holds, fails };

struct VerifyResult {
  Verdict verdict = Verdict::holds;
  std::optional<Trace> evidence;
  std::size_t explored_states = 0;  // states (or product states) visited

  bool holds() const { return verdict == Verdict::holds; }
};

inline std::string to_string(const Trace& t) {
  std::string s = "[";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ", ";
    s += semantics::render(t[i]);
  }
  return s + "]";
}

}  // namespace lotos::verify
