#pragma once

// Ground facts over the closed predicate vocabulary of design-component
// structure: entity predicates (classes, aspects) and relationship
// predicates (inheritance, association, invocation, aspect weaving).
// Aspect predicates are stored and queried only.
//
// `.facts` files hold one fact per line, `pred(arg1, arg2).`, with `#`
// line comments.

#include <array>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lotos/syntax/parser_base.hpp"

namespace lotos::contracts {

struct PredicateInfo {
  std::string_view name;
  std::size_t arity;
};

inline constexpr std::array<PredicateInfo, 13> kVocabulary{{
    {"abstract_class", 1},
    {"abstract_aspect", 1},
    {"class", 1},
    {"aspect", 1},
    {"inherit", 2},
    {"associate", 2},
    {"aggregate", 2},
    {"invoke", 4},
    {"new", 3},
    {"return", 3},
    {"declare_parent", 3},
    {"call", 3},
    {"advice", 3},
}};

inline std::optional<std::size_t> predicate_arity(std::string_view name) {
  for (const auto& p : kVocabulary)
    if (p.name == name) return p.arity;
  return std::nullopt;
}

struct Fact {
  std::string predicate;
  std::vector<std::string> args;

  auto operator<=>(const Fact&) const = default;
};

inline std::string to_string(const Fact& f) {
  std::string s = f.predicate + "(";
  for (std::size_t i = 0; i < f.args.size(); ++i) s += (i ? ", " : "") + f.args[i];
  return s + ")";
}

class FactError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline void check_fact(const Fact& f) {
  auto arity = predicate_arity(f.predicate);
  if (!arity) throw FactError("unknown predicate '" + f.predicate + "'");
  if (*arity != f.args.size())
    throw FactError("predicate '" + f.predicate + "' takes " + std::to_string(*arity) + " argument(s), got " +
                    std::to_string(f.args.size()));
}

// Set of facts, ordered by predicate then arguments lexicographically.
class FactBase {
 public:
  using const_iterator = std::set<Fact>::const_iterator;

  void insert(Fact f) {
    check_fact(f);
    facts_.insert(std::move(f));
  }

  std::size_t size() const { return facts_.size(); }
  bool empty() const { return facts_.empty(); }
  bool contains(const Fact& f) const { return facts_.count(f) > 0; }
  const_iterator begin() const { return facts_.begin(); }
  const_iterator end() const { return facts_.end(); }

  // Facts of one predicate, in argument order.
  std::pair<const_iterator, const_iterator> with_predicate(const std::string& pred) const {
    return {facts_.lower_bound(Fact{pred, {}}), facts_.lower_bound(Fact{pred + '\0', {}})};
  }

  // Every ground term occurring in some fact, sorted.
  std::set<std::string> universe() const {
    std::set<std::string> u;
    for (const auto& f : facts_) u.insert(f.args.begin(), f.args.end());
    return u;
  }

 private:
  std::set<Fact> facts_;
};

// base ∪ {f}; throws FactError for an unknown predicate or wrong arity.
inline FactBase assert_fact(FactBase base, Fact f) {
  base.insert(std::move(f));
  return base;
}

namespace detail {

class FactsParser : public syntax::ParserBase {
 public:
  explicit FactsParser(std::string_view text) : ParserBase(text, {.hash_comments = true}) {}

  FactBase parse() {
    FactBase base;
    while (peek().kind != syntax::TokenKind::end) {
      syntax::Token head = peek();
      Fact f;
      f.predicate = expect_ident("predicate name");
      expect_punct('(');
      f.args = ident_list("term");
      expect_punct(')');
      expect_punct('.');
      auto arity = predicate_arity(f.predicate);
      if (!arity) fail(head, "unknown predicate '" + f.predicate + "'", syntax::code::unknown_predicate);
      if (*arity != f.args.size())
        fail(head, "predicate '" + f.predicate + "' takes " + std::to_string(*arity) + " argument(s)",
             syntax::code::predicate_arity);
      base.insert(std::move(f));
    }
    return base;
  }

  using ParserBase::collect_diagnostics;
};

}  // namespace detail

inline syntax::ParseResult<FactBase> parse_facts(std::string_view text) {
  detail::FactsParser p(text);
  syntax::ParseResult<FactBase> r;
  try {
    FactBase b = p.parse();
    r.diagnostics = p.collect_diagnostics();
    if (!syntax::has_errors(r.diagnostics)) r.value = std::move(b);
  } catch (const syntax::ParseAbort&) {
    r.diagnostics = p.collect_diagnostics();
  }
  return r;
}

}  // namespace lotos::contracts
