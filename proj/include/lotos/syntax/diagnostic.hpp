#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace lotos::syntax {

// 1-based line/column; a default span (0,0) marks a synthesized node.
struct SourceSpan {
  std::size_t line = 0;
  std::size_t column = 0;
  std::size_t end_line = 0;
  std::size_t end_column = 0;

  bool operator==(const SourceSpan&) const = default;
};

enum class Severity { error, warning };

// Stable diagnostic codes. The string form is what tools and tests match on.
namespace code {
inline constexpr const char* lexical = "lexical-error";
inline constexpr const char* syntax = "syntax-error";
inline constexpr const char* duplicate = "duplicate-definition";
inline constexpr const char* unknown_process = "unknown-process";
inline constexpr const char* unknown_sort = "unknown-sort";
inline constexpr const char* unknown_gate = "unknown-gate";
inline constexpr const char* arity = "gate-arity-mismatch";
inline constexpr const char* unbound_variable = "unbound-variable";
inline constexpr const char* library = "library-unsupported";
inline constexpr const char* unknown_predicate = "unknown-predicate";
inline constexpr const char* predicate_arity = "predicate-arity";
inline constexpr const char* malformed_ic = "malformed-ic";
inline constexpr const char* io = "io-error";
}  // namespace code

struct Diagnostic {
  Severity severity = Severity::error;
  SourceSpan location;
  std::string message;
  std::string code;

  bool operator==(const Diagnostic&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, const Diagnostic& d) {
  os << d.location.line << ':' << d.location.column << ": "
     << (d.severity == Severity::error ? "error" : "warning") << " [" << d.code
     << "] " << d.message;
  return os;
}

inline bool has_errors(const std::vector<Diagnostic>& diags) {
  for (const auto& d : diags)
    if (d.severity == Severity::error) return true;
  return false;
}

// Either a parsed value or the diagnostics explaining why there is none.
// Warnings may accompany a value.
template <typename T>
struct ParseResult {
  std::optional<T> value;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return value.has_value(); }
  explicit operator bool() const { return ok(); }
  const T& operator*() const { return *value; }
  T& operator*() { return *value; }
  const T* operator->() const { return &*value; }
};

}  // namespace lotos::syntax
