#pragma once

#include "lotos/syntax/ast.hpp"

namespace lotos::syntax {

// Removes every hide operator, exposing the hidden gates' actions.
inline BehaviorExpr strip_hiding(const BehaviorExpr& b) {
  if (b.empty()) return b;
  return std::visit(
      [&](const auto& n) -> BehaviorExpr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Hide>) {
          return strip_hiding(n.body);
        } else if constexpr (std::is_same_v<T, Prefix>) {
          return make(Prefix{n.action, strip_hiding(n.rest)}, b->span);
        } else if constexpr (std::is_same_v<T, Par>) {
          return make(Par{strip_hiding(n.left), n.sync, strip_hiding(n.right)}, b->span);
        } else if constexpr (std::is_same_v<T, Choice> || std::is_same_v<T, Seq> || std::is_same_v<T, Disrupt>) {
          return make(T{strip_hiding(n.left), strip_hiding(n.right)}, b->span);
        } else {
          return b;
        }
      },
      b->v);
}

inline Specification strip_hiding(Specification spec) {
  spec.top_behavior = strip_hiding(spec.top_behavior);
  for (auto& p : spec.processes) p.body = strip_hiding(p.body);
  return spec;
}

}  // namespace lotos::syntax
