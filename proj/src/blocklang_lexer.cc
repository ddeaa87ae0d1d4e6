#include <array>
#include <cctype>
#include <utility>

#include "stylefmt/blocklang.hpp"

namespace stylefmt::blocklang {

namespace {

struct Keyword {
  std::string_view text;
  TokenType type;
};

constexpr std::array<Keyword, 6> kKeywords{{
    {"func", kFunc},
    {"if", kIf},
    {"else", kElse},
    {"while", kWhile},
    {"return", kReturn},
    {"var", kVar},
}};

// Longest match first.
constexpr std::array<Keyword, 22> kPunctuation{{
    {"==", kEq},     {"!=", kNe},     {"<=", kLe},    {">=", kGe},
    {"&&", kAnd},    {"||", kOr},     {"(", kLParen}, {")", kRParen},
    {"{", kLBrace},  {"}", kRBrace},  {",", kComma},  {";", kSemi},
    {":", kColon},   {"=", kAssign},  {"+", kPlus},   {"-", kMinus},
    {"*", kStar},    {"/", kSlash},   {"%", kPercent}, {"<", kLt},
    {">", kGt},      {"!", kNot},
}};

Vocabulary make_token_vocabulary() {
  Vocabulary v;
  v.names.resize(kTokenTypeCount);
  v.names[kId] = "ID";
  v.names[kNum] = "NUM";
  v.names[kString] = "STRING";
  for (const auto& k : kKeywords) v.names[k.type] = "'" + std::string(k.text) + "'";
  for (const auto& p : kPunctuation) v.names[p.type] = "'" + std::string(p.text) + "'";
  v.names[kLineComment] = "LINE_COMMENT";
  v.names[kBlockComment] = "BLOCK_COMMENT";
  v.names[kWhitespace] = "WS";
  return v;
}

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    while (pos_ < text_.size()) next();
    return std::move(tokens_);
  }

 private:
  void next() {
    const std::size_t start = pos_;
    const Position at = here_;
    char c = text_[pos_];

    if (c == ' ' || c == '\n') {
      while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\n')) advance();
      emit_hidden(kWhitespace, HiddenKind::kWhitespace, start, at);
      return;
    }
    if (c == '/' && peek(1) == '/') {
      while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      emit_hidden(kLineComment, HiddenKind::kComment, start, at);
      return;
    }
    if (c == '/' && peek(1) == '*') {
      advance();
      advance();
      while (true) {
        if (pos_ >= text_.size()) throw SyntaxError("unterminated comment", at.line, at.col);
        if (text_[pos_] == '*' && peek(1) == '/') {
          advance();
          advance();
          break;
        }
        advance();
      }
      emit_hidden(kBlockComment, HiddenKind::kComment, start, at);
      return;
    }
    if (is_ident_start(c)) {
      while (pos_ < text_.size() && is_ident_char(text_[pos_])) advance();
      std::string_view word = text_.substr(start, pos_ - start);
      for (const auto& k : kKeywords) {
        if (k.text == word) {
          emit(k.type, true, start, at);
          return;
        }
      }
      emit(kId, false, start, at);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
      if (pos_ + 1 < text_.size() && text_[pos_] == '.' &&
          std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
        advance();
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
      }
      emit(kNum, false, start, at);
      return;
    }
    if (c == '"') {
      advance();
      while (true) {
        if (pos_ >= text_.size() || text_[pos_] == '\n') {
          throw SyntaxError("unterminated string", at.line, at.col);
        }
        if (text_[pos_] == '\\' && pos_ + 1 < text_.size() && text_[pos_ + 1] != '\n') {
          advance();
        } else if (text_[pos_] == '"') {
          advance();
          break;
        }
        advance();
      }
      emit(kString, false, start, at);
      return;
    }
    for (const auto& p : kPunctuation) {
      if (text_.substr(pos_, p.text.size()) == p.text) {
        for (std::size_t i = 0; i < p.text.size(); ++i) advance();
        emit(p.type, true, start, at);
        return;
      }
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", at.line, at.col);
  }

  char peek(std::size_t ahead) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++here_.line;
      here_.col = 0;
    } else {
      ++here_.col;
    }
    ++pos_;
  }

  void emit(TokenType type, bool literal, std::size_t start, Position at) {
    Token t;
    t.type = type;
    t.text = std::string(text_.substr(start, pos_ - start));
    t.line = at.line;
    t.col = at.col;
    t.is_literal = literal;
    tokens_.push_back(std::move(t));
  }

  void emit_hidden(TokenType type, HiddenKind kind, std::size_t start, Position at) {
    emit(type, false, start, at);
    tokens_.back().channel = Channel::kHidden;
    tokens_.back().hidden_kind = kind;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Position here_;
  std::vector<Token> tokens_;
};

}  // namespace

const Vocabulary& token_vocabulary() {
  static const Vocabulary v = make_token_vocabulary();
  return v;
}

std::vector<Token> tokenize(std::string_view text) {
  std::string normalized = normalize_text(text);
  return Lexer(normalized).run();
}

}  // namespace stylefmt::blocklang
