#pragma once

#include <cctype>
#include <deque>
#include <string>
#include <string_view>
#include <vector>

#include "lotos/syntax/diagnostic.hpp"

namespace lotos::syntax {

enum class TokenKind { identifier, string, punct, end };

struct Token {
  TokenKind kind = TokenKind::end;
  std::string text;  // identifier text, string contents (unquoted), or the punctuation char
  SourceSpan span;
  std::size_t offset = 0;      // byte offset of the first character
  bool space_before = false;   // whitespace or a comment precedes this token

  bool is_punct(char c) const { return kind == TokenKind::punct && text.size() == 1 && text[0] == c; }
  bool is_ident() const { return kind == TokenKind::identifier; }
  // Keywords are case-insensitive ("Endproc", "endproc", "ENDPROC").
  bool is_keyword(std::string_view kw) const {
    if (kind != TokenKind::identifier || text.size() != kw.size()) return false;
    for (std::size_t i = 0; i < kw.size(); ++i)
      if (std::tolower(static_cast<unsigned char>(text[i])) != kw[i]) return false;
    return true;
  }
};

struct LexerOptions {
  bool hash_comments = false;  // '#' to end of line (facts and monitor files)
};

// Pull lexer with arbitrary lookahead. Punctuation is emitted one character
// at a time; the parser assembles multi-character operators ("|||", "|[",
// ">>", "[>", ":=") so that forms like "P[a]|||Q" need no lexer context.
class Lexer {
 public:
  explicit Lexer(std::string_view text, LexerOptions opts = {}) : text_(text), opts_(opts) {}

  const Token& peek(std::size_t k = 0) {
    while (buffer_.size() <= k) buffer_.push_back(scan());
    return buffer_[k];
  }

  Token next() {
    peek();
    Token t = std::move(buffer_.front());
    buffer_.pop_front();
    return t;
  }

  const std::vector<Diagnostic>& diagnostics() const { return diags_; }

  // Reads raw text up to the '}' balancing an already-consumed '{'.
  // Only valid when no lookahead is buffered.
  bool raw_block(std::string& out) {
    if (!buffer_.empty()) return false;
    int depth = 1;
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '{') ++depth;
      if (c == '}' && --depth == 0) {
        out = std::string(text_.substr(start, pos_ - start));
        advance();
        return true;
      }
      advance();
    }
    return false;
  }

  SourceSpan here() const { return {line_, col_, line_, col_}; }

  // Span covering the whole input, used to clamp synthesized locations.
  SourceSpan end_span() const { return {line_, col_, line_, col_}; }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  bool skip_trivia() {
    bool skipped = false;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
        skipped = true;
        continue;
      }
      if (opts_.hash_comments && c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
        skipped = true;
        continue;
      }
      if (pos_ + 1 < text_.size() && ((c == '(' && text_[pos_ + 1] == '*') ||
                                      (c == '/' && text_[pos_ + 1] == '*'))) {
        char closer = c == '(' ? ')' : '/';
        SourceSpan open = here();
        advance();
        advance();
        bool closed = false;
        while (pos_ + 1 < text_.size()) {
          if (text_[pos_] == '*' && text_[pos_ + 1] == closer) {
            advance();
            advance();
            closed = true;
            break;
          }
          advance();
        }
        if (!closed) {
          while (pos_ < text_.size()) advance();
          diags_.push_back({Severity::error, open, "unterminated comment", code::lexical});
        }
        skipped = true;
        continue;
      }
      break;
    }
    return skipped;
  }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  Token scan() {
    for (;;) {
      bool space = skip_trivia();
      Token t;
      t.space_before = space;
      t.offset = pos_;
      SourceSpan start = here();
      if (pos_ >= text_.size()) {
        t.kind = TokenKind::end;
        t.span = start;
        return t;
      }
      char c = text_[pos_];
      if (ident_char(c)) {
        while (pos_ < text_.size() && ident_char(text_[pos_])) {
          t.text.push_back(text_[pos_]);
          advance();
        }
        t.kind = TokenKind::identifier;
      } else if (c == '"') {
        advance();
        bool closed = false;
        while (pos_ < text_.size() && text_[pos_] != '\n') {
          if (text_[pos_] == '"') {
            closed = true;
            advance();
            break;
          }
          t.text.push_back(text_[pos_]);
          advance();
        }
        if (!closed) diags_.push_back({Severity::error, start, "unterminated string", code::lexical});
        t.kind = TokenKind::string;
      } else if (std::string_view(";[]|>!?:=,(){}*@-.<&").find(c) != std::string_view::npos) {
        t.text.push_back(c);
        advance();
        t.kind = TokenKind::punct;
      } else {
        std::string shown = (static_cast<unsigned char>(c) < 0x80) ? std::string(1, c) : "non-ASCII byte";
        diags_.push_back({Severity::error, start, "unexpected character '" + shown + "'", code::lexical});
        advance();
        // skip UTF-8 continuation bytes so one glyph yields one diagnostic
        while (pos_ < text_.size() && (static_cast<unsigned char>(text_[pos_]) & 0xC0) == 0x80) advance();
        continue;
      }
      t.span = {start.line, start.column, line_, col_};
      return t;
    }
  }

  std::string_view text_;
  LexerOptions opts_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  std::deque<Token> buffer_;
  std::vector<Diagnostic> diags_;
};

}  // namespace lotos::syntax
