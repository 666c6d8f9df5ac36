#pragma once

// `.adl` configuration files:
//
//   configuration <Name>
//     use "<path>.lot"                          processes (and sorts) to bind
//     sorts { S = {v1, ...} ... }               optional, merged with the .lot sorts
//     components { <name> = <Process>[g1, ...] ... }
//     connectors { <name> = <Process>[g1, ...] ... }
//     composition { <expr> }
//   end
//
// <expr> uses element names, "|||", "||", "|[g, ...]|", "hide g, ... in"
// and parentheses, with the precedence of behavior expressions. Entries in
// a block may be separated by commas or just whitespace.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "lotos/adl/config.hpp"
#include "lotos/io.hpp"
#include "lotos/syntax/parser.hpp"

namespace lotos::syntax {

struct AdlFile {
  adl::ArchConfig config;
  std::optional<std::string> use_path;
};

namespace detail {

class AdlParser : public SpecParser {
 public:
  using SpecParser::SpecParser;

  AdlFile file() {
    AdlFile f;
    expect_keyword("configuration");
    f.config.name = expect_ident("configuration name");
    if (accept_keyword("use")) {
      if (peek().kind != TokenKind::string) fail_expected("quoted .lot path");
      f.use_path = take().text;
    }
    if (accept_keyword("sorts")) {
      expect_punct('{');
      if (!peek().is_punct('}')) sort_block(f.config.sorts);
      expect_punct('}');
    }
    expect_keyword("components");
    elements(adl::ElementKind::component, f.config.elements);
    expect_keyword("connectors");
    elements(adl::ElementKind::connector, f.config.elements);
    expect_keyword("composition");
    expect_punct('{');
    f.config.composition = composition();
    expect_punct('}');
    expect_keyword("end");
    if (peek().kind != TokenKind::end) fail_expected("end of input");
    return f;
  }

 private:
  void elements(adl::ElementKind kind, std::vector<adl::ArchElement>& out) {
    expect_punct('{');
    while (!accept_punct('}')) {
      adl::ArchElement e;
      e.kind = kind;
      e.name = expect_ident(std::string(adl::to_string(kind)) + " name");
      expect_punct('=');
      e.process = expect_ident("process name");
      if (accept_punct('[')) {
        e.gates = ident_list("gate");
        expect_punct(']');
      }
      out.push_back(std::move(e));
      accept_punct(',');
    }
  }

  BehaviorExpr composition() {
    Token start = peek();
    BehaviorExpr e = expression();
    check_composition(e, start);
    return e;
  }

  void check_composition(const BehaviorExpr& e, const Token& at) {
    if (const auto* i = as<Inst>(e)) {
      if (!i->gates.empty()) fail(at, "composition refers to elements by name; gates belong in the element declaration");
    } else if (const auto* h = as<Hide>(e)) {
      check_composition(h->body, at);
    } else if (const auto* p = as<Par>(e)) {
      check_composition(p->left, at);
      check_composition(p->right, at);
    } else {
      fail(at, "composition admits only element names, parallel operators and hide");
    }
  }
};

inline void merge_sorts(std::vector<SortDecl>& into, const std::vector<SortDecl>& extra,
                        std::vector<Diagnostic>& diags) {
  for (const auto& s : extra) {
    auto it = std::find_if(into.begin(), into.end(), [&](const SortDecl& x) { return x.name == s.name; });
    if (it == into.end())
      into.push_back(s);
    else if (it->values != s.values)
      diags.push_back({Severity::error, s.span, "sort '" + s.name + "' conflicts with the imported declaration",
                       code::duplicate});
  }
}

}  // namespace detail

// Parses a configuration without loading its `use` file.
inline ParseResult<AdlFile> parse_adl_unresolved(std::string_view text) {
  detail::AdlParser p(text);
  ParseResult<AdlFile> r;
  try {
    AdlFile f = p.file();
    r.diagnostics = p.collect_diagnostics();
    if (!has_errors(r.diagnostics)) r.value = std::move(f);
  } catch (const ParseAbort&) {
    r.diagnostics = p.collect_diagnostics();
  }
  return r;
}

// Parses a configuration and binds the processes and sorts of its `use`
// file, resolved against `base_dir`. Sorts declared in the configuration
// are appended after the imported ones.
inline ParseResult<adl::ArchConfig> parse_adl(std::string_view text, const std::filesystem::path& base_dir = ".") {
  ParseResult<adl::ArchConfig> r;
  auto file = parse_adl_unresolved(text);
  r.diagnostics = file.diagnostics;
  if (!file.ok()) return r;
  adl::ArchConfig cfg = std::move(file->config);
  std::vector<SortDecl> local = std::move(cfg.sorts);
  cfg.sorts.clear();
  if (file->use_path) {
    std::filesystem::path path = *file->use_path;
    if (path.is_relative()) path = base_dir / path;
    auto lot = read_text_file(path);
    if (!lot) {
      r.diagnostics.push_back({Severity::error, {1, 1, 1, 1}, "cannot read '" + path.string() + "'", code::io});
      return r;
    }
    auto spec = parse_spec(*lot);
    if (!spec.ok()) {
      for (auto d : spec.diagnostics) {
        d.message = path.string() + ":" + std::to_string(d.location.line) + ":" + std::to_string(d.location.column) +
                    ": " + d.message;
        d.location = {1, 1, 1, 1};
        r.diagnostics.push_back(std::move(d));
      }
      return r;
    }
    cfg.sorts = spec->sorts;
    cfg.process_defs = spec->processes;
  }
  detail::merge_sorts(cfg.sorts, local, r.diagnostics);
  if (!has_errors(r.diagnostics)) r.value = std::move(cfg);
  return r;
}

}  // namespace lotos::syntax
