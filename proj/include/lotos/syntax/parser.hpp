#pragma once

// Recursive-descent parser for `.lot` specifications.
//
//   spec     := 'specification' Id [gates] [':' func] [':='] [library] [sorts]
//               'behaviour' expr ['where' process*] 'endspec'
//   process  := 'process' Id [gates] ':' func ':=' expr ('endproc' | 'endprocess')
//   sorts    := 'sorts' (Id '=' '{' Id {',' Id} '}' [';' | ','])+
//   expr     := seq
//   seq      := disrupt {'>>' disrupt}
//   disrupt  := par {'[>' par}
//   par      := choice {('|||' | '||' | '|[' gates ']|') choice}
//   choice   := prefix {'[]' prefix}
//   prefix   := action ';' prefix | primary
//   action   := 'i' | Id {'!' Id | '?' Id ':' Id}
//   primary  := 'stop' | 'exit' | '(' expr ')' | 'hide' gates 'in' expr | Id ['[' gates ']']
//
// Keywords are case-insensitive; identifiers are case-sensitive.

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "lotos/syntax/ast.hpp"
#include "lotos/syntax/parser_base.hpp"
#include "lotos/syntax/validate.hpp"

namespace lotos::syntax {

namespace detail {

inline bool is_reserved(const Token& t) {
  for (std::string_view kw : {"specification", "behaviour", "behavior", "where", "endspec", "process", "endproc",
                              "endprocess", "noexit", "exit", "stop", "hide", "in", "sorts", "library", "endlib"})
    if (t.is_keyword(kw)) return true;
  return false;
}

class SpecParser : public ParserBase {
 public:
  using ParserBase::ParserBase;

  // Sorts visible to value literals; set before parsing behaviors.
  const Specification* context = nullptr;

  Specification specification() {
    Specification spec;
    context = &spec;
    expect_keyword("specification");
    spec.name = expect_ident("specification name");
    if (peek().is_punct('[')) spec.top_gates = gate_list();
    if (accept_punct(':')) {
      if (peek().is_punct('=')) {
        take();
      } else {
        spec.functionality = functionality();
        accept_define();
      }
    }
    if (peek().is_keyword("library")) library_stanza();
    if (accept_keyword("sorts")) sort_block(spec.sorts);
    if (!accept_keyword("behaviour") && !accept_keyword("behavior")) fail_expected("'behaviour'");
    spec.top_behavior = expression();
    if (accept_keyword("where"))
      while (peek().is_keyword("process")) spec.processes.push_back(process_def());
    expect_keyword("endspec");
    if (peek().kind != TokenKind::end) fail_expected("end of input");
    return spec;
  }

  BehaviorExpr standalone_behavior() {
    BehaviorExpr b = expression();
    if (peek().kind != TokenKind::end) fail_expected("end of input");
    return b;
  }

  using ParserBase::collect_diagnostics;
  using ParserBase::lexical_errors;

 protected:
  Functionality functionality() {
    if (accept_keyword("noexit")) return Functionality::noexit;
    if (accept_keyword("exit")) return Functionality::exit;
    fail_expected("'noexit' or 'exit'");
  }

  void library_stanza() {
    Token at = take();
    while (peek().kind != TokenKind::end && !peek().is_keyword("endlib")) take();
    expect_keyword("endlib");
    diags_.push_back({Severity::error, span_from(at.span),
                      "library imports are not supported; declare sorts inline with "
                      "'sorts NAME = {v1, ...}'",
                      code::library});
  }

  void sort_block(std::vector<SortDecl>& sorts) {
    do {
      SortDecl s;
      SourceSpan start = peek().span;
      s.name = expect_ident("sort name");
      expect_punct('=');
      expect_punct('{');
      s.values = ident_list("sort value");
      expect_punct('}');
      s.span = span_from(start);
      sorts.push_back(std::move(s));
      if (!accept_punct(';')) accept_punct(',');
    } while (peek().is_ident() && !is_reserved(peek()));
  }

  ProcessDef process_def() {
    ProcessDef p;
    SourceSpan start = peek().span;
    expect_keyword("process");
    p.name = expect_ident("process name");
    if (peek().is_punct('[')) p.formal_gates = gate_list();
    expect_punct(':');
    p.functionality = functionality();
    if (!accept_define()) fail_expected("':='");
    p.body = expression();
    if (!accept_keyword("endproc") && !accept_keyword("endprocess")) fail_expected("'endproc'");
    p.span = span_from(start);
    return p;
  }

  GateList gate_list() {
    expect_punct('[');
    GateList g = ident_list("gate");
    expect_punct(']');
    return g;
  }

  BehaviorExpr expression() { return sequence(); }

  BehaviorExpr sequence() {
    SourceSpan start = peek().span;
    BehaviorExpr left = disruption();
    while (peek().is_punct('>') && peek(1).is_punct('>')) {
      take();
      take();
      BehaviorExpr right = disruption();
      left = make(Seq{left, right}, span_from(start));
    }
    return left;
  }

  BehaviorExpr disruption() {
    SourceSpan start = peek().span;
    BehaviorExpr left = parallel();
    while (peek().is_punct('[') && peek(1).is_punct('>')) {
      take();
      take();
      BehaviorExpr right = parallel();
      left = make(Disrupt{left, right}, span_from(start));
    }
    return left;
  }

  bool parallel_operator(SyncSet& out) {
    if (!peek().is_punct('|')) return false;
    if (peek(1).is_punct('[')) {
      take();
      take();
      GateList g = ident_list("gate");
      expect_punct(']');
      expect_punct('|');
      out = SyncSet::on(std::move(g));
      return true;
    }
    if (peek(1).is_punct('|')) {
      take();
      take();
      if (accept_punct('|'))
        out = SyncSet::interleave();
      else
        out = SyncSet::all();
      return true;
    }
    fail_expected("parallel operator");
  }

  BehaviorExpr parallel() {
    SourceSpan start = peek().span;
    BehaviorExpr left = choice_level();
    SyncSet s;
    while (parallel_operator(s)) {
      BehaviorExpr right = choice_level();
      left = make(Par{left, s, right}, span_from(start));
    }
    return left;
  }

  BehaviorExpr choice_level() {
    SourceSpan start = peek().span;
    BehaviorExpr left = prefix_level();
    while (peek().is_punct('[') && peek(1).is_punct(']')) {
      take();
      take();
      BehaviorExpr right = prefix_level();
      left = make(Choice{left, right}, span_from(start));
    }
    return left;
  }

  bool starts_action() {
    const Token& t = peek();
    if (!t.is_ident()) return false;
    const Token& n = peek(1);
    bool follows = n.is_punct(';') || n.is_punct('!') || n.is_punct('?');
    if (t.is_keyword("i")) return n.is_punct(';');
    return follows && !is_reserved(t);
  }

  BehaviorExpr prefix_level() {
    if (!starts_action()) return primary();
    SourceSpan start = peek().span;
    ActionExpr a = action();
    expect_punct(';');
    std::size_t mark = scope_.size();
    for (const auto& o : a.offers)
      if (const auto* r = std::get_if<ReceiveOffer>(&o)) scope_.push_back(r->variable);
    BehaviorExpr rest = prefix_level();
    scope_.resize(mark);
    return make(Prefix{std::move(a), rest}, span_from(start));
  }

  ActionExpr action() {
    Token g = take();
    if (g.is_keyword("i")) return ActionExpr::make_internal();
    ActionExpr a = ActionExpr::comm(g.text);
    for (;;) {
      if (accept_punct('!')) {
        SendOffer s;
        s.name = expect_ident("value or variable");
        bool bound = std::find(scope_.begin(), scope_.end(), s.name) != scope_.end();
        bool literal = context && context->sort_of_value(s.name);
        s.kind = (bound || !literal) ? SendOffer::Kind::variable : SendOffer::Kind::value;
        a.offers.emplace_back(std::move(s));
      } else if (accept_punct('?')) {
        ReceiveOffer r;
        r.variable = expect_ident("variable");
        expect_punct(':');
        r.sort = expect_ident("sort name");
        a.offers.emplace_back(std::move(r));
      } else {
        return a;
      }
    }
  }

  BehaviorExpr primary() {
    const Token& t = peek();
    SourceSpan start = t.span;
    if (accept_keyword("stop")) return make(Stop{}, span_from(start));
    if (accept_keyword("exit")) return make(Exit{}, span_from(start));
    if (accept_punct('(')) {
      BehaviorExpr inner = expression();
      expect_punct(')');
      return inner;
    }
    if (accept_keyword("hide")) {
      GateList g = ident_list("gate");
      expect_keyword("in");
      BehaviorExpr body = expression();
      return make(Hide{std::move(g), body}, span_from(start));
    }
    if (t.is_ident() && !is_reserved(t)) {
      Identifier name = take().text;
      GateList gates;
      // "P [] Q" is a choice and "P [> Q" a disrupt, not a gate list.
      if (peek().is_punct('[') && !peek(1).is_punct(']') && !peek(1).is_punct('>')) gates = gate_list();
      return make(Inst{std::move(name), std::move(gates)}, span_from(start));
    }
    fail_expected("behavior expression");
  }

  std::vector<Identifier> scope_;
};

}  // namespace detail

// Parses without static validation; syntax and lexical errors only.
inline ParseResult<Specification> parse_spec_unchecked(std::string_view text) {
  detail::SpecParser p(text);
  ParseResult<Specification> r;
  try {
    Specification spec = p.specification();
    r.diagnostics = p.collect_diagnostics();
    if (!has_errors(r.diagnostics)) r.value = std::move(spec);
  } catch (const ParseAbort&) {
    r.diagnostics = p.collect_diagnostics();
  }
  return r;
}

// Parses and validates. On success the diagnostics list is empty.
inline ParseResult<Specification> parse_spec(std::string_view text) {
  ParseResult<Specification> r = parse_spec_unchecked(text);
  if (!r.ok()) return r;
  auto diags = validate_spec(*r);
  if (has_errors(diags)) {
    r.value.reset();
    r.diagnostics = std::move(diags);
  }
  return r;
}

// Parses a behavior expression against the declarations of `context`.
inline ParseResult<BehaviorExpr> parse_behavior(std::string_view text, const Specification& context) {
  detail::SpecParser p(text);
  p.context = &context;
  ParseResult<BehaviorExpr> r;
  try {
    BehaviorExpr b = p.standalone_behavior();
    r.diagnostics = p.collect_diagnostics();
    if (!has_errors(r.diagnostics)) {
      auto diags = validate_behavior(b, context);
      if (has_errors(diags))
        r.diagnostics = std::move(diags);
      else
        r.value = std::move(b);
    }
  } catch (const ParseAbort&) {
    r.diagnostics = p.collect_diagnostics();
  }
  return r;
}

inline ParseResult<BehaviorExpr> parse_behavior(std::string_view text) {
  static const Specification empty{};
  return parse_behavior(text, empty);
}

}  // namespace lotos::syntax
