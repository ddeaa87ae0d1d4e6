#include <array>

#include "stylefmt/blocklang.hpp"

namespace stylefmt::blocklang {

namespace {

Vocabulary make_rules_a() {
  return {{"program", "funcDecl", "param", "block", "statement", "expr", "primary"}};
}

Vocabulary make_rules_b() {
  return {{"compilationUnit", "item", "funcDecl", "formalParams", "paramList",
           "param", "typeSuffix", "block", "blockStatement", "statement",
           "ifStatement", "elseIfClause", "elseClause", "whileStatement", "parExpr",
           "returnStatement", "varDecl", "assignment", "exprStatement", "expr",
           "orExpr", "andExpr", "eqExpr", "relExpr", "addExpr", "mulExpr",
           "unaryExpr", "primary", "call", "arguments", "argList"}};
}

// Shared token cursor and error reporting.
class ParserBase {
 public:
  explicit ParserBase(std::span<const Token> tokens) : tokens_(tokens) {}

 protected:
  bool at_end() const { return pos_ >= tokens_.size(); }
  int peek(std::size_t ahead = 0) const {
    return pos_ + ahead < tokens_.size() ? tokens_[pos_ + ahead].type : -1;
  }
  bool at(int type) const { return peek() == type; }

  void consume() {
    if (at_end()) fail("unexpected end of input");
    b_.leaf(static_cast<int>(pos_), tokens_[pos_].type);
    ++pos_;
  }

  void expect(int type) {
    if (!at(type)) {
      fail("expected " + std::string(token_vocabulary().name(type)));
    }
    consume();
  }

  [[noreturn]] void fail(const std::string& what) const {
    if (at_end()) {
      Position p = tokens_.empty() ? Position{} : tokens_.back().end();
      throw SyntaxError(what + " at end of input", p.line, p.col);
    }
    const Token& t = tokens_[pos_];
    throw SyntaxError(what + ", found '" + t.text + "'", t.line, t.col);
  }

  // True when an '=' occurs at bracket depth 0 before the statement ends.
  bool assignment_ahead() const {
    int depth = 0;
    for (std::size_t i = pos_; i < tokens_.size(); ++i) {
      switch (tokens_[i].type) {
        case kLParen:
          ++depth;
          break;
        case kRParen:
          if (--depth < 0) return false;
          break;
        case kAssign:
          if (depth == 0) return true;
          break;
        case kSemi:
        case kLBrace:
        case kRBrace:
          if (depth == 0) return false;
          break;
        default:
          break;
      }
    }
    return false;
  }

  static int binary_precedence(int type) {
    switch (type) {
      case kOr: return 1;
      case kAnd: return 2;
      case kEq: case kNe: return 3;
      case kLt: case kGt: case kLe: case kGe: return 4;
      case kPlus: case kMinus: return 5;
      case kStar: case kSlash: case kPercent: return 6;
      default: return 0;
    }
  }

  std::span<const Token> tokens_;
  std::size_t pos_ = 0;
  TreeBuilder b_;
};

class ParserA : ParserBase {
 public:
  using ParserBase::ParserBase;

  ParseTree run() {
    b_.open(rules_a::kProgram);
    while (!at_end()) {
      if (at(kFunc)) {
        func_decl();
      } else {
        statement();
      }
    }
    b_.close();
    return b_.finish();
  }

 private:
  void func_decl() {
    b_.open(rules_a::kFuncDecl);
    expect(kFunc);
    expect(kId);
    expect(kLParen);
    if (!at(kRParen)) {
      param();
      while (at(kComma)) {
        consume();
        param();
      }
    }
    expect(kRParen);
    block();
    b_.close();
  }

  void param() {
    b_.open(rules_a::kParam, 1);
    expect(kId);
    if (at(kColon)) {
      b_.set_alt(2);
      consume();
      expect(kId);
    }
    b_.close();
  }

  void block() {
    b_.open(rules_a::kBlock);
    expect(kLBrace);
    while (!at(kRBrace)) {
      if (at_end()) fail("expected '}'");
      statement();
    }
    consume();
    b_.close();
  }

  void statement() {
    b_.open(rules_a::kStatement);
    switch (peek()) {
      case kLBrace:
        b_.set_alt(1);
        block();
        break;
      case kIf:
        b_.set_alt(2);
        consume();
        expect(kLParen);
        expr(1);
        expect(kRParen);
        statement();
        // Else-if arms stay flat so every arm sits at the same depth.
        while (at(kElse) && peek(1) == kIf) {
          consume();
          consume();
          expect(kLParen);
          expr(1);
          expect(kRParen);
          statement();
        }
        if (at(kElse)) {
          consume();
          statement();
        }
        break;
      case kWhile:
        b_.set_alt(3);
        consume();
        expect(kLParen);
        expr(1);
        expect(kRParen);
        statement();
        break;
      case kReturn:
        b_.set_alt(4);
        consume();
        if (!at(kSemi)) expr(1);
        expect(kSemi);
        break;
      case kVar:
        b_.set_alt(5);
        consume();
        expect(kId);
        expect(kAssign);
        expr(1);
        expect(kSemi);
        break;
      default:
        expr(1);
        if (at(kAssign)) {
          b_.set_alt(6);
          consume();
          expr(1);
        } else {
          b_.set_alt(7);
        }
        expect(kSemi);
        break;
    }
    b_.close();
  }

  // Precedence climbing; binary nodes adopt their left operand.
  void expr(int min_prec) {
    unary();
    while (true) {
      int prec = binary_precedence(peek());
      if (prec == 0 || prec < min_prec) break;
      b_.open_wrapping_last(rules_a::kExpr, 9 - prec);
      consume();
      expr(prec + 1);
      b_.close();
    }
  }

  void unary() {
    if (at(kMinus) || at(kNot)) {
      b_.open(rules_a::kExpr, 2);
      consume();
      unary();
      b_.close();
      return;
    }
    b_.open(rules_a::kExpr, 1);
    primary();
    b_.close();
  }

  void primary() {
    b_.open(rules_a::kPrimary);
    switch (peek()) {
      case kId:
        if (peek(1) == kLParen) {
          b_.set_alt(1);
          consume();
          consume();
          if (!at(kRParen)) {
            expr(1);
            while (at(kComma)) {
              consume();
              expr(1);
            }
          }
          expect(kRParen);
        } else {
          b_.set_alt(2);
          consume();
        }
        break;
      case kNum:
        b_.set_alt(3);
        consume();
        break;
      case kString:
        b_.set_alt(4);
        consume();
        break;
      case kLParen:
        b_.set_alt(5);
        consume();
        expr(1);
        expect(kRParen);
        break;
      default:
        fail("expected an expression");
    }
    b_.close();
  }
};

class ParserB : ParserBase {
 public:
  using ParserBase::ParserBase;

  ParseTree run() {
    using namespace rules_b;
    b_.open(kCompilationUnit);
    while (!at_end()) {
      b_.open(kItem, at(kFunc) ? 1 : 2);
      if (at(kFunc)) {
        func_decl();
      } else {
        statement();
      }
      b_.close();
    }
    b_.close();
    return b_.finish();
  }

 private:
  void func_decl() {
    b_.open(rules_b::kFuncDecl);
    expect(kFunc);
    expect(kId);
    b_.open(rules_b::kFormalParams);
    expect(kLParen);
    if (!at(kRParen)) {
      b_.open(rules_b::kParamList);
      param();
      while (at(kComma)) {
        consume();
        param();
      }
      b_.close();
    }
    expect(kRParen);
    b_.close();
    block();
    b_.close();
  }

  void param() {
    b_.open(rules_b::kParam);
    expect(kId);
    if (at(kColon)) {
      b_.open(rules_b::kTypeSuffix);
      consume();
      expect(kId);
      b_.close();
    }
    b_.close();
  }

  void block() {
    b_.open(rules_b::kBlock);
    expect(kLBrace);
    while (!at(kRBrace)) {
      if (at_end()) fail("expected '}'");
      b_.open(rules_b::kBlockStatement);
      statement();
      b_.close();
    }
    consume();
    b_.close();
  }

  void par_expr() {
    b_.open(rules_b::kParExpr);
    expect(kLParen);
    expr();
    expect(kRParen);
    b_.close();
  }

  // Else-if arms are sibling clauses so every arm sits at the same depth.
  void if_statement() {
    using namespace rules_b;
    b_.open(kIfStatement);
    consume();
    par_expr();
    statement();
    while (at(kElse) && peek(1) == kIf) {
      b_.open(kElseIfClause);
      consume();
      consume();
      par_expr();
      statement();
      b_.close();
    }
    if (at(kElse)) {
      b_.open(kElseClause);
      consume();
      statement();
      b_.close();
    }
    b_.close();
  }

  void statement() {
    using namespace rules_b;
    b_.open(kStatement);
    switch (peek()) {
      case kLBrace:
        b_.set_alt(1);
        block();
        break;
      case kIf:
        b_.set_alt(2);
        if_statement();
        break;
      case kWhile:
        b_.set_alt(3);
        b_.open(kWhileStatement);
        consume();
        par_expr();
        statement();
        b_.close();
        break;
      case kReturn:
        b_.set_alt(4);
        b_.open(kReturnStatement);
        consume();
        if (!at(kSemi)) expr();
        expect(kSemi);
        b_.close();
        break;
      case kVar:
        b_.set_alt(5);
        b_.open(kVarDecl);
        consume();
        expect(kId);
        expect(kAssign);
        expr();
        expect(kSemi);
        b_.close();
        break;
      default:
        if (assignment_ahead()) {
          b_.set_alt(6);
          b_.open(kAssignment);
          expr();
          expect(kAssign);
          expr();
        } else {
          b_.set_alt(7);
          b_.open(kExprStatement);
          expr();
        }
        expect(kSemi);
        b_.close();
        break;
    }
    b_.close();
  }

  void expr() {
    b_.open(rules_b::kExpr);
    level(1);
    b_.close();
  }

  // One rule per precedence level: operand (op operand)*.
  void level(int prec) {
    static constexpr std::array<int, 7> kRuleForLevel{
        -1, rules_b::kOrExpr, rules_b::kAndExpr, rules_b::kEqExpr,
        rules_b::kRelExpr, rules_b::kAddExpr, rules_b::kMulExpr};
    if (prec > 6) {
      unary();
      return;
    }
    b_.open(kRuleForLevel[prec]);
    level(prec + 1);
    while (binary_precedence(peek()) == prec) {
      consume();
      level(prec + 1);
    }
    b_.close();
  }

  void unary() {
    if (at(kMinus) || at(kNot)) {
      b_.open(rules_b::kUnaryExpr, 1);
      consume();
      unary();
      b_.close();
      return;
    }
    b_.open(rules_b::kUnaryExpr, 2);
    primary();
    b_.close();
  }

  void primary() {
    using namespace rules_b;
    b_.open(kPrimary);
    switch (peek()) {
      case kId:
        if (peek(1) == kLParen) {
          b_.set_alt(1);
          b_.open(kCall);
          consume();
          b_.open(kArguments);
          consume();
          if (!at(kRParen)) {
            b_.open(kArgList);
            expr();
            while (at(kComma)) {
              consume();
              expr();
            }
            b_.close();
          }
          expect(kRParen);
          b_.close();
          b_.close();
        } else {
          b_.set_alt(2);
          consume();
        }
        break;
      case kNum:
        b_.set_alt(3);
        consume();
        break;
      case kString:
        b_.set_alt(4);
        consume();
        break;
      case kLParen:
        b_.set_alt(5);
        consume();
        expr();
        expect(kRParen);
        break;
      default:
        fail("expected an expression");
    }
    b_.close();
  }
};

}  // namespace

const Vocabulary& rule_vocabulary(Variant variant) {
  static const Vocabulary a = make_rules_a();
  static const Vocabulary b = make_rules_b();
  return variant == Variant::kA ? a : b;
}

ParseTree parse(std::span<const Token> tokens, Variant variant) {
  if (variant == Variant::kA) return ParserA(tokens).run();
  return ParserB(tokens).run();
}

Provider::Provider(Variant variant) : variant_(variant) {}

std::string_view Provider::id() const {
  return variant_ == Variant::kA ? kVariantAId : kVariantBId;
}

const Vocabulary& Provider::token_vocabulary() const {
  return blocklang::token_vocabulary();
}

const Vocabulary& Provider::rule_vocabulary() const {
  return blocklang::rule_vocabulary(variant_);
}

std::vector<Token> Provider::tokenize(std::string_view text) const {
  return blocklang::tokenize(text);
}

ParseTree Provider::parse(std::span<const Token> tokens) const {
  return blocklang::parse(tokens, variant_);
}

}  // namespace stylefmt::blocklang
