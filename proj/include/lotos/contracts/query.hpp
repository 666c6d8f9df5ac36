#pragma once

// Existential-conjunctive queries over a FactBase:
//
//   exists x1, ..., xn : p1(t, ...) and ... and pk(t, ...)
//
// A term is a variable or a ground identifier. No negation, disjunction or
// universal quantification.
//
// Witness order: variables are ordered by first occurrence in the conjunct
// list, followed by declared variables that occur in no conjunct; the first
// witness is the lexicographically smallest satisfying assignment in that
// variable order. Variables that occur in no conjunct range over the base's
// term universe.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lotos/contracts/facts.hpp"

namespace lotos::contracts {

struct Term {
  bool variable = false;
  std::string name;

  static Term var(std::string n) { return {true, std::move(n)}; }
  static Term ground(std::string n) { return {false, std::move(n)}; }

  bool operator==(const Term&) const = default;
};

struct Atom {
  std::string predicate;
  std::vector<Term> args;

  bool operator==(const Atom&) const = default;
};

struct Query {
  std::vector<std::string> exists_vars;
  std::vector<Atom> conjuncts;

  bool operator==(const Query&) const = default;
};

using Binding = std::vector<std::pair<std::string, std::string>>;  // (variable, term) in witness order

struct QueryResult {
  bool holds = false;
  Binding witness;
};

inline std::string to_string(const Query& q) {
  std::string s;
  if (!q.exists_vars.empty()) {
    s = "exists ";
    for (std::size_t i = 0; i < q.exists_vars.size(); ++i) s += (i ? ", " : "") + q.exists_vars[i];
    s += " : ";
  }
  for (std::size_t i = 0; i < q.conjuncts.size(); ++i) {
    if (i) s += " and ";
    s += q.conjuncts[i].predicate + "(";
    for (std::size_t j = 0; j < q.conjuncts[i].args.size(); ++j)
      s += (j ? ", " : "") + q.conjuncts[i].args[j].name;
    s += ")";
  }
  return s;
}

// Variable order used for witnesses (see header comment).
inline std::vector<std::string> witness_order(const Query& q) {
  std::vector<std::string> order;
  auto add = [&](const std::string& v) {
    for (const auto& x : order)
      if (x == v) return;
    order.push_back(v);
  };
  for (const auto& a : q.conjuncts)
    for (const auto& t : a.args)
      if (t.variable) add(t.name);
  for (const auto& v : q.exists_vars) add(v);
  return order;
}

namespace detail {

class QuerySearch {
 public:
  QuerySearch(const FactBase& base, const Query& q) : base_(base), q_(q) {}

  std::optional<std::map<std::string, std::string>> run() {
    if (search(0)) return bindings_;
    return std::nullopt;
  }

 private:
  bool search(std::size_t i) {
    if (i == q_.conjuncts.size()) return bind_free();
    const Atom& atom = q_.conjuncts[i];
    auto [lo, hi] = base_.with_predicate(atom.predicate);
    for (auto it = lo; it != hi; ++it) {
      if (it->args.size() != atom.args.size()) continue;
      std::vector<std::string> fresh;
      bool ok = true;
      for (std::size_t k = 0; k < atom.args.size() && ok; ++k) {
        const Term& t = atom.args[k];
        const std::string& value = it->args[k];
        if (!t.variable) {
          ok = t.name == value;
        } else if (auto b = bindings_.find(t.name); b != bindings_.end()) {
          ok = b->second == value;
        } else {
          bindings_.emplace(t.name, value);
          fresh.push_back(t.name);
        }
      }
      if (ok && search(i + 1)) return true;
      for (const auto& v : fresh) bindings_.erase(v);
    }
    return false;
  }

  bool bind_free() {
    std::vector<std::string> unbound;
    for (const auto& v : q_.exists_vars)
      if (!bindings_.count(v)) unbound.push_back(v);
    if (unbound.empty()) return true;
    auto universe = base_.universe();
    if (universe.empty()) return false;
    for (const auto& v : unbound) bindings_.emplace(v, *universe.begin());
    return true;
  }

  const FactBase& base_;
  const Query& q_;
  std::map<std::string, std::string> bindings_;
};

}  // namespace detail

inline QueryResult eval_query(const FactBase& base, const Query& q) {
  QueryResult r;
  auto found = detail::QuerySearch(base, q).run();
  if (!found) return r;
  r.holds = true;
  for (const auto& v : witness_order(q)) r.witness.emplace_back(v, found->at(v));
  return r;
}

}  // namespace lotos::contracts
