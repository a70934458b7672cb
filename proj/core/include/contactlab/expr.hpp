#pragma once

// Coordinate expression language.
//
//   expr    := term (('+' | '-') term)*
//   term    := ('-' | '+') term | unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' unary)?          right associative
//   primary := number | ident | ident '(' expr ')' | '(' expr ')'
//
// Identifiers are left unresolved by the parser and bound afterwards to a
// chart coordinate, a named parameter, or one of the reserved constants
// `pi` and `e`.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "contactlab/jet.hpp"

namespace contactlab {

enum class TokenKind {
  number,
  identifier,
  plus,
  minus,
  star,
  slash,
  caret,
  lparen,
  rparen,
  comma,
  end,
};

struct Token {
  TokenKind kind;
  std::string text;
  double number = 0.0;
  std::size_t offset = 0;

  bool operator==(const Token&) const = default;
};

// The final token is always TokenKind::end.
std::vector<Token> tokenize(std::string_view src);

struct ExprNode {
  enum class Kind {
    constant,
    name,        // unresolved identifier
    coordinate,  // bound: index into the chart
    parameter,   // bound: looked up in the parameter table at evaluation
    negate,
    add,
    sub,
    mul,
    div,
    pow,
    call,
  };

  Kind kind = Kind::constant;
  double value = 0.0;
  std::string name;  // identifier / function name
  int index = -1;    // coordinate index
  UnaryFn fn = UnaryFn::exp;
  std::shared_ptr<const ExprNode> lhs;  // also the operand of negate / call
  std::shared_ptr<const ExprNode> rhs;
  std::size_t offset = 0;
};

using ParamTable = std::map<std::string, double, std::less<>>;

// Names an expression may refer to.
struct SymbolTable {
  std::vector<std::string> coordinates;
  std::vector<std::string> parameters;
};

class Expr {
 public:
  Expr();  // the constant 0
  Expr(std::shared_ptr<const ExprNode> root, std::shared_ptr<const std::string> source);

  static Expr constant(double value);

  const ExprNode& root() const noexcept { return *root_; }
  const std::shared_ptr<const ExprNode>& root_ptr() const noexcept { return root_; }
  const std::string& source() const noexcept { return *source_; }

  bool is_zero_constant() const noexcept;
  bool depends_on_coordinates() const;

 private:
  std::shared_ptr<const ExprNode> root_;
  std::shared_ptr<const std::string> source_;
};

// Parses a complete token stream into an unbound expression.
Expr parse(const std::vector<Token>& tokens, std::string_view source = {});
// Parses a comma-separated list of expressions.
std::vector<Expr> parse_list(const std::vector<Token>& tokens, std::string_view source = {});

Expr parse(std::string_view src);

// Resolves every identifier; throws ParseError naming the offset of the
// first unknown identifier.
Expr bind(const Expr& e, const SymbolTable& symbols);

Expr compile(std::string_view src, const SymbolTable& symbols);

// Fully parenthesized rendering; parse(print(e)) reproduces the structure
// of an unbound expression.
std::string print(const Expr& e);

bool structurally_equal(const ExprNode& a, const ExprNode& b);
inline bool structurally_equal(const Expr& a, const Expr& b) {
  return structurally_equal(a.root(), b.root());
}

std::optional<UnaryFn> function_by_name(std::string_view name);
std::string_view function_name(UnaryFn fn);

bool is_reserved_name(std::string_view name);

// Evaluates e in jet arithmetic: coordinate k is lifted to the jet of x_k
// at point[k], parameters and constants enter as constant jets.
Jet evaluate(const Expr& e, std::span<const double> point, const ParamTable& params, int order);

}  // namespace contactlab
