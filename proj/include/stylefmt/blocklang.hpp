#pragma once

// blocklang: a small brace-delimited demo language with two grammars that
// accept the same sentences but factor the parse tree differently.
//
//   variant A  flat, left-recursive expression tree, argument and parameter
//              lists are direct children of the call / function node
//   variant B  list-wrapper rules (paramList, argList, ...), one rule per
//              precedence level, statement kinds as separate rules

#include <string>
#include <string_view>
#include <vector>

#include "stylefmt/syntax.hpp"

namespace stylefmt::blocklang {

enum TokenType : int {
  kId,
  kNum,
  kString,
  kFunc,
  kIf,
  kElse,
  kWhile,
  kReturn,
  kVar,
  kLParen,
  kRParen,
  kLBrace,
  kRBrace,
  kComma,
  kSemi,
  kColon,
  kAssign,
  kPlus,
  kMinus,
  kStar,
  kSlash,
  kPercent,
  kEq,
  kNe,
  kLt,
  kGt,
  kLe,
  kGe,
  kAnd,
  kOr,
  kNot,
  kLineComment,
  kBlockComment,
  kWhitespace,
  kTokenTypeCount
};

enum class Variant { kA, kB };

namespace rules_a {
enum : int { kProgram, kFuncDecl, kParam, kBlock, kStatement, kExpr, kPrimary, kCount };
}  // namespace rules_a

namespace rules_b {
enum : int {
  kCompilationUnit,
  kItem,
  kFuncDecl,
  kFormalParams,
  kParamList,
  kParam,
  kTypeSuffix,
  kBlock,
  kBlockStatement,
  kStatement,
  kIfStatement,
  kElseIfClause,
  kElseClause,
  kWhileStatement,
  kParExpr,
  kReturnStatement,
  kVarDecl,
  kAssignment,
  kExprStatement,
  kExpr,
  kOrExpr,
  kAndExpr,
  kEqExpr,
  kRelExpr,
  kAddExpr,
  kMulExpr,
  kUnaryExpr,
  kPrimary,
  kCall,
  kArguments,
  kArgList,
  kCount
};
}  // namespace rules_b

const Vocabulary& token_vocabulary();
const Vocabulary& rule_vocabulary(Variant variant);

// Tokens over the normalized form of `text`.
std::vector<Token> tokenize(std::string_view text);
ParseTree parse(std::span<const Token> tokens, Variant variant);

class Provider final : public TreeProvider {
 public:
  explicit Provider(Variant variant);

  std::string_view id() const override;
  const Vocabulary& token_vocabulary() const override;
  const Vocabulary& rule_vocabulary() const override;
  std::vector<Token> tokenize(std::string_view text) const override;
  ParseTree parse(std::span<const Token> tokens) const override;
  std::optional<int> line_comment_type() const override { return kLineComment; }

  Variant variant() const { return variant_; }

 private:
  Variant variant_;
};

inline constexpr std::string_view kVariantAId = "blocklang-a";
inline constexpr std::string_view kVariantBId = "blocklang-b";

}  // namespace stylefmt::blocklang
