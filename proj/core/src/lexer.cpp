//  Copyright 2026 The fpop Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#include "fpop/lexer.hpp"

#include <cctype>
#include <charconv>

namespace fpop {

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Ident: return "identifier";
    case TokenKind::Int: return "integer";
    case TokenKind::String: return "string";
    case TokenKind::Underscore: return "'_'";
    case TokenKind::Colon: return "':'";
    case TokenKind::Comma: return "','";
    case TokenKind::Arrow: return "'-->'";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::LBrace: return "'{'";
    case TokenKind::RBrace: return "'}'";
    case TokenKind::Dot: return "'.'";
    case TokenKind::Eq: return "'='";
    case TokenKind::Le: return "'<='";
    case TokenKind::Lt: return "'<'";
    case TokenKind::Ge: return "'>='";
    case TokenKind::Gt: return "'>'";
    case TokenKind::Plus: return "'+'";
    case TokenKind::Newline: return "end of line";
    case TokenKind::Eof: return "end of file";
  }
  return "?";
}

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  LexResult run() {
    while (i_ < src_.size()) {
      char c = src_[i_];
      if (c == '\n') {
        newline();
        continue;
      }
      if (c == ' ' || c == '\t' || c == '\r') {
        advance();
        continue;
      }
      if (starts_with("-->")) {
        emit(TokenKind::Arrow, 3);
        continue;
      }
      if (starts_with("--")) {
        while (i_ < src_.size() && src_[i_] != '\n') advance();
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c)) ||
          (c == '-' && i_ + 1 < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_ + 1])))) {
        number();
        continue;
      }
      if (ident_start(c)) {
        identifier();
        continue;
      }
      if (c == '"') {
        string();
        continue;
      }
      if (starts_with("<=")) {
        emit(TokenKind::Le, 2);
      } else if (starts_with(">=")) {
        emit(TokenKind::Ge, 2);
      } else {
        switch (c) {
          case ':': emit(TokenKind::Colon, 1); break;
          case ',': emit(TokenKind::Comma, 1); break;
          case '(': emit(TokenKind::LParen, 1); ++depth_; break;
          case ')': emit(TokenKind::RParen, 1); if (depth_ > 0) --depth_; break;
          case '{': emit(TokenKind::LBrace, 1); ++depth_; break;
          case '}': emit(TokenKind::RBrace, 1); if (depth_ > 0) --depth_; break;
          case '.': emit(TokenKind::Dot, 1); break;
          case '=': emit(TokenKind::Eq, 1); break;
          case '<': emit(TokenKind::Lt, 1); break;
          case '>': emit(TokenKind::Gt, 1); break;
          case '+': emit(TokenKind::Plus, 1); break;
          default:
            out_.diagnostics.push_back(
                {pos(), Severity::Error, std::string("unknown token '") + c + "'"});
            advance();
        }
      }
    }
    if (!out_.tokens.empty() && out_.tokens.back().kind != TokenKind::Newline) {
      out_.tokens.push_back({TokenKind::Newline, "", 0, pos()});
    }
    out_.tokens.push_back({TokenKind::Eof, "", 0, pos()});
    return std::move(out_);
  }

 private:
  SourcePos pos() const { return {line_, col_}; }

  void advance() {
    if (src_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }

  bool starts_with(std::string_view s) const { return src_.substr(i_).starts_with(s); }

  void emit(TokenKind kind, std::size_t len) {
    Token t{kind, std::string(src_.substr(i_, len)), 0, pos()};
    for (std::size_t k = 0; k < len; ++k) advance();
    out_.tokens.push_back(std::move(t));
  }

  void number() {
    SourcePos p = pos();
    std::size_t start = i_;
    if (src_[i_] == '-') advance();
    while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) advance();
    std::string_view text = src_.substr(start, i_ - start);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{}) {
      out_.diagnostics.push_back({p, Severity::Error, "integer literal out of range"});
    }
    out_.tokens.push_back({TokenKind::Int, std::string(text), v, p});
  }

  void identifier() {
    SourcePos p = pos();
    std::size_t start = i_;
    while (i_ < src_.size() && ident_char(src_[i_])) advance();
    std::string text(src_.substr(start, i_ - start));
    TokenKind kind = text == "_" ? TokenKind::Underscore : TokenKind::Ident;
    out_.tokens.push_back({kind, std::move(text), 0, p});
  }

  void string() {
    SourcePos p = pos();
    advance();
    std::string text;
    while (i_ < src_.size() && src_[i_] != '"' && src_[i_] != '\n') {
      if (src_[i_] == '\\' && i_ + 1 < src_.size()) {
        advance();
        char e = src_[i_];
        text += e == 'n' ? '\n' : e == 't' ? '\t' : e;
      } else {
        text += src_[i_];
      }
      advance();
    }
    if (i_ >= src_.size() || src_[i_] != '"') {
      out_.diagnostics.push_back({p, Severity::Error, "unterminated string literal"});
    } else {
      advance();
    }
    out_.tokens.push_back({TokenKind::String, std::move(text), 0, p});
  }

  // Decides whether the newline at i_ ends a declaration.
  void newline() {
    SourcePos p = pos();
    advance();
    if (out_.tokens.empty() || out_.tokens.back().kind == TokenKind::Newline) return;
    if (depth_ > 0) return;
    switch (out_.tokens.back().kind) {
      case TokenKind::Comma:
      case TokenKind::Arrow:
      case TokenKind::Colon:
      case TokenKind::Plus:
      case TokenKind::Eq:
      case TokenKind::Le:
      case TokenKind::Lt:
      case TokenKind::Ge:
      case TokenKind::Gt:
      case TokenKind::Dot:
        return;
      default: break;
    }
    // Find the next line that is neither blank nor comment-only.
    std::size_t j = i_;
    while (j < src_.size()) {
      std::size_t k = j;
      while (k < src_.size() && (src_[k] == ' ' || src_[k] == '\t' || src_[k] == '\r')) ++k;
      bool blank = k >= src_.size() || src_[k] == '\n';
      bool comment = !blank && src_.substr(k).starts_with("--") && !src_.substr(k).starts_with("-->");
      if (!blank && !comment) {
        bool indented = k > j;
        if (indented || src_.substr(k).starts_with("-->")) return;
        break;
      }
      while (k < src_.size() && src_[k] != '\n') ++k;
      j = k + 1;
    }
    out_.tokens.push_back({TokenKind::Newline, "", 0, p});
  }

  std::string_view src_;
  std::size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
  int depth_ = 0;
  LexResult out_;
};

}  // namespace

LexResult lex(std::string_view source) { return Lexer(source).run(); }

}  // namespace fpop
