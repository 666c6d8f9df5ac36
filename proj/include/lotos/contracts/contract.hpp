#pragma once

#include <optional>
#include <string>

#include "lotos/contracts/interface.hpp"
#include "lotos/contracts/query.hpp"

namespace lotos::contracts {

// Behavioral part: a LOTOS specification loaded from a `.lot` file.
struct BehaviorRef {
  std::string spec_name;
  std::string path;  // relative paths resolve against the contract file's directory

  bool operator==(const BehaviorRef&) const = default;
};

// Abstract specification contract: component name, free-text assertion
// (kept, not evaluated), structural query, interface tuple, behavior.
struct AscContract {
  std::string name;
  std::optional<std::string> assertion;
  Query sc;
  InterfaceContract ic;
  std::optional<BehaviorRef> bc;

  bool operator==(const AscContract&) const = default;
};

}  // namespace lotos::contracts
