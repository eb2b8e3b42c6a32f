#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "binomid/error.hpp"

namespace binomid {

/// Half-open byte range [offset, end_offset) with 1-based line/column of
/// both ends.
struct SourceSpan {
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t offset = 0;
  std::size_t end_line = 1;
  std::size_t end_column = 1;
  std::size_t end_offset = 0;

  std::string to_string() const;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, SourceSpan span, std::vector<std::string> expected = {});

  const SourceSpan& span() const { return span_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  SourceSpan span_;
  std::vector<std::string> expected_;
};

enum class TokenKind { Ident, Int, String, Punct, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  SourceSpan span;
};

/// Splits UTF-8 text into identifiers, integers, double-quoted strings and
/// punctuation (`::`, `==`, `>=`, `..`, `=>` and single characters). `#`
/// starts a comment that runs to the end of the line.
std::vector<Token> tokenize(std::string_view text);

/// Cursor over a token vector with the usual expect/accept helpers.
class TokenStream {
 public:
  explicit TokenStream(std::string_view text);

  const Token& peek(std::size_t ahead = 0) const;
  const Token& next();
  bool at_end() const { return peek().kind == TokenKind::End; }

  bool is_punct(std::string_view p, std::size_t ahead = 0) const;
  bool is_ident(std::string_view word, std::size_t ahead = 0) const;
  bool accept_punct(std::string_view p);
  bool accept_ident(std::string_view word);

  const Token& expect_punct(std::string_view p);
  const Token& expect_keyword(std::string_view word);
  const Token& expect_ident(std::string_view what = "name");
  /// Optionally signed integer literal.
  long long expect_int(std::string_view what = "integer");
  /// Identifier possibly joined to adjacent `-name`/`-digits` pieces with no
  /// whitespace in between (e.g. `proof-eq1`).
  std::string expect_dashed_name(SourceSpan* span = nullptr);

  [[noreturn]] void fail(const std::string& message, std::vector<std::string> expected = {}) const;
  [[noreturn]] void fail_at(const Token& tok, const std::string& message,
                            std::vector<std::string> expected = {}) const;

  /// Span from the start of `from` to the end of the previously consumed token.
  SourceSpan span_from(const SourceSpan& from) const;

  std::string_view source() const { return source_; }

 private:
  std::string_view source_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

std::string describe(const Token& tok);

}  // namespace binomid
