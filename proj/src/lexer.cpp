#include "binomid/lexer.hpp"

#include <cctype>

namespace binomid {

std::string SourceSpan::to_string() const {
  return std::to_string(line) + ":" + std::to_string(column);
}

namespace {

std::string format_message(const std::string& message, const SourceSpan& span,
                           const std::vector<std::string>& expected) {
  std::string out = span.to_string() + ": " + message;
  if (!expected.empty()) {
    out += " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) out += i + 1 == expected.size() ? " or " : ", ";
      out += expected[i];
    }
    out += ")";
  }
  return out;
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

}  // namespace

ParseError::ParseError(const std::string& message, SourceSpan span, std::vector<std::string> expected)
    : Error(format_message(message, span, expected)), span_(span), expected_(std::move(expected)) {}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  std::size_t line = 1;
  std::size_t col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t s = 0; s < n; ++s) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  auto start_span = [&] {
    SourceSpan s;
    s.line = line;
    s.column = col;
    s.offset = i;
    return s;
  };
  auto close_span = [&](SourceSpan& s) {
    s.end_line = line;
    s.end_column = col;
    s.end_offset = i;
  };

  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    Token tok;
    tok.span = start_span();
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      tok.kind = TokenKind::Ident;
      tok.text = std::string(text.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      tok.kind = TokenKind::Int;
      tok.text = std::string(text.substr(i, j - i));
      advance(j - i);
    } else if (c == '"') {
      std::size_t j = i + 1;
      while (j < text.size() && text[j] != '"' && text[j] != '\n') ++j;
      if (j >= text.size() || text[j] != '"') {
        close_span(tok.span);
        tok.span.end_offset = text.size();
        throw ParseError("unterminated string literal", tok.span);
      }
      tok.kind = TokenKind::String;
      tok.text = std::string(text.substr(i + 1, j - i - 1));
      advance(j + 1 - i);
    } else {
      static constexpr std::string_view kTwo[] = {"::", "==", ">=", "..", "=>"};
      tok.kind = TokenKind::Punct;
      bool matched = false;
      for (auto two : kTwo) {
        if (text.substr(i, 2) == two) {
          tok.text = std::string(two);
          advance(2);
          matched = true;
          break;
        }
      }
      if (!matched) {
        static constexpr std::string_view kOne = "()[]{},*+-^/=:;";
        if (kOne.find(c) == std::string_view::npos) {
          advance(1);
          close_span(tok.span);
          throw ParseError(std::string("unexpected character '") + c + "'", tok.span);
        }
        tok.text = std::string(1, c);
        advance(1);
      }
    }
    close_span(tok.span);
    out.push_back(std::move(tok));
  }
  Token end;
  end.kind = TokenKind::End;
  end.span = start_span();
  close_span(end.span);
  out.push_back(end);
  return out;
}

std::string describe(const Token& tok) {
  switch (tok.kind) {
    case TokenKind::End: return "end of input";
    case TokenKind::String: return "string \"" + tok.text + "\"";
    default: return "'" + tok.text + "'";
  }
}

TokenStream::TokenStream(std::string_view text) : source_(text), tokens_(tokenize(text)) {}

const Token& TokenStream::peek(std::size_t ahead) const {
  std::size_t idx = pos_ + ahead;
  return idx < tokens_.size() ? tokens_[idx] : tokens_.back();
}

const Token& TokenStream::next() {
  const Token& t = peek();
  if (pos_ < tokens_.size() - 1) ++pos_;
  return t;
}

bool TokenStream::is_punct(std::string_view p, std::size_t ahead) const {
  const Token& t = peek(ahead);
  return t.kind == TokenKind::Punct && t.text == p;
}

bool TokenStream::is_ident(std::string_view word, std::size_t ahead) const {
  const Token& t = peek(ahead);
  return t.kind == TokenKind::Ident && t.text == word;
}

bool TokenStream::accept_punct(std::string_view p) {
  if (!is_punct(p)) return false;
  next();
  return true;
}

bool TokenStream::accept_ident(std::string_view word) {
  if (!is_ident(word)) return false;
  next();
  return true;
}

const Token& TokenStream::expect_punct(std::string_view p) {
  if (!is_punct(p)) fail("unexpected " + describe(peek()), {"'" + std::string(p) + "'"});
  return next();
}

const Token& TokenStream::expect_keyword(std::string_view word) {
  if (!is_ident(word)) fail("unexpected " + describe(peek()), {"'" + std::string(word) + "'"});
  return next();
}

const Token& TokenStream::expect_ident(std::string_view what) {
  if (peek().kind != TokenKind::Ident) fail("unexpected " + describe(peek()), {std::string(what)});
  return next();
}

long long TokenStream::expect_int(std::string_view what) {
  bool negative = false;
  if (is_punct("-") && peek(1).kind == TokenKind::Int) {
    next();
    negative = true;
  }
  if (peek().kind != TokenKind::Int) fail("unexpected " + describe(peek()), {std::string(what)});
  const Token& t = next();
  long long v = 0;
  try {
    v = std::stoll(t.text);
  } catch (const std::exception&) {
    fail_at(t, "integer literal out of range");
  }
  return negative ? -v : v;
}

std::string TokenStream::expect_dashed_name(SourceSpan* span) {
  const Token& first = expect_ident("name");
  if (span) *span = first.span;
  std::string name = first.text;
  std::size_t end = first.span.end_offset;
  while (is_punct("-") && peek().span.offset == end &&
         (peek(1).kind == TokenKind::Ident || peek(1).kind == TokenKind::Int) &&
         peek(1).span.offset == end + 1) {
    next();
    const Token& piece = next();
    name += "-" + piece.text;
    end = piece.span.end_offset;
  }
  if (span) *span = span_from(*span);
  return name;
}

void TokenStream::fail(const std::string& message, std::vector<std::string> expected) const {
  fail_at(peek(), message, std::move(expected));
}

void TokenStream::fail_at(const Token& tok, const std::string& message, std::vector<std::string> expected) const {
  throw ParseError(message, tok.span, std::move(expected));
}

SourceSpan TokenStream::span_from(const SourceSpan& from) const {
  SourceSpan s = from;
  const Token& last = pos_ == 0 ? tokens_.front() : tokens_[pos_ - 1];
  s.end_line = last.span.end_line;
  s.end_column = last.span.end_column;
  s.end_offset = last.span.end_offset;
  return s;
}

}  // namespace binomid
