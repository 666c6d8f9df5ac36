#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lotos/syntax/lexer.hpp"

namespace lotos::syntax {

// Thrown internally to unwind after the first syntax error; never escapes
// the public parse functions.
struct ParseAbort {};

class ParserBase {
 public:
  explicit ParserBase(std::string_view text, LexerOptions opts = {}) : lex_(text, opts) {}

 protected:
  const Token& peek(std::size_t k = 0) { return lex_.peek(k); }

  Token take() {
    Token t = lex_.next();
    last_ = t.span;
    return t;
  }

  SourceSpan span_from(const SourceSpan& start) const {
    return {start.line, start.column, last_.end_line, last_.end_column};
  }

  [[noreturn]] void fail(const Token& at, const std::string& msg, const char* code = code::syntax) {
    diags_.push_back({Severity::error, at.span, msg, code});
    throw ParseAbort{};
  }

  [[noreturn]] void fail_expected(const std::string& what) {
    const Token& t = peek();
    std::string found = t.kind == TokenKind::end ? "end of input" : "'" + t.text + "'";
    fail(t, "expected " + what + ", found " + found);
  }

  bool accept_punct(char c) {
    if (!peek().is_punct(c)) return false;
    take();
    return true;
  }

  void expect_punct(char c) {
    if (!accept_punct(c)) fail_expected(std::string("'") + c + "'");
  }

  bool accept_keyword(std::string_view kw) {
    if (!peek().is_keyword(kw)) return false;
    take();
    return true;
  }

  void expect_keyword(std::string_view kw) {
    if (!accept_keyword(kw)) fail_expected("'" + std::string(kw) + "'");
  }

  std::string expect_ident(const std::string& what = "identifier") {
    if (!peek().is_ident()) fail_expected(what);
    return take().text;
  }

  // ":=" possibly written with a space between ':' and '='.
  bool accept_define() {
    if (peek().is_punct(':') && peek(1).is_punct('=')) {
      take();
      take();
      return true;
    }
    return false;
  }

  // Comma-separated identifiers; at least one.
  std::vector<std::string> ident_list(const std::string& what) {
    std::vector<std::string> out{expect_ident(what)};
    while (accept_punct(',')) out.push_back(expect_ident(what));
    return out;
  }

  // Lexical diagnostics come first so the earliest cause is reported first.
  std::vector<Diagnostic> collect_diagnostics() const {
    std::vector<Diagnostic> all = lex_.diagnostics();
    all.insert(all.end(), diags_.begin(), diags_.end());
    return all;
  }

  bool lexical_errors() const { return !lex_.diagnostics().empty(); }

  Lexer lex_;
  std::vector<Diagnostic> diags_;
  SourceSpan last_;
};

}  // namespace lotos::syntax
