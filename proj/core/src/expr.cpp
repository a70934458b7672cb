#include "contactlab/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include "contactlab/errors.hpp"

namespace contactlab {

namespace {

constexpr std::pair<std::string_view, UnaryFn> kFunctions[] = {
    {"exp", UnaryFn::exp},   {"ln", UnaryFn::ln},     {"sin", UnaryFn::sin},
    {"cos", UnaryFn::cos},   {"sinh", UnaryFn::sinh}, {"cosh", UnaryFn::cosh},
    {"tanh", UnaryFn::tanh}, {"sqrt", UnaryFn::sqrt},
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

}  // namespace

std::optional<UnaryFn> function_by_name(std::string_view name) {
  for (const auto& [n, fn] : kFunctions) {
    if (n == name) return fn;
  }
  return std::nullopt;
}

std::string_view function_name(UnaryFn fn) {
  for (const auto& [n, f] : kFunctions) {
    if (f == fn) return n;
  }
  return "?";
}

bool is_reserved_name(std::string_view name) {
  return name == "e" || name == "pi" || function_by_name(name).has_value();
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (digit(c) || (c == '.' && i + 1 < src.size() && digit(src[i + 1]))) {
      while (i < src.size() && digit(src[i])) ++i;
      if (i < src.size() && src[i] == '.') {
        ++i;
        while (i < src.size() && digit(src[i])) ++i;
      }
      // An exponent only when digits follow, so "2e" lexes as 2 then e.
      if (i < src.size() && (src[i] == 'e' || src[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < src.size() && (src[j] == '+' || src[j] == '-')) ++j;
        if (j < src.size() && digit(src[j])) {
          i = j;
          while (i < src.size() && digit(src[i])) ++i;
        }
      }
      Token t{TokenKind::number, std::string(src.substr(start, i - start)), 0.0, start};
      t.number = std::strtod(t.text.c_str(), nullptr);
      out.push_back(std::move(t));
      continue;
    }
    if (ident_start(c)) {
      while (i < src.size() && ident_char(src[i])) ++i;
      out.push_back({TokenKind::identifier, std::string(src.substr(start, i - start)), 0.0, start});
      continue;
    }
    TokenKind kind;
    switch (c) {
      case '+': kind = TokenKind::plus; break;
      case '-': kind = TokenKind::minus; break;
      case '*': kind = TokenKind::star; break;
      case '/': kind = TokenKind::slash; break;
      case '^': kind = TokenKind::caret; break;
      case '(': kind = TokenKind::lparen; break;
      case ')': kind = TokenKind::rparen; break;
      case ',': kind = TokenKind::comma; break;
      default:
        throw ParseError(std::string("illegal character '") + c + "'", start);
    }
    out.push_back({kind, std::string(1, c), 0.0, start});
    ++i;
  }
  out.push_back({TokenKind::end, "", 0.0, src.size()});
  return out;
}

Expr::Expr() : Expr(constant(0.0)) {}

Expr::Expr(std::shared_ptr<const ExprNode> root, std::shared_ptr<const std::string> source)
    : root_(std::move(root)), source_(std::move(source)) {}

Expr Expr::constant(double value) {
  auto node = std::make_shared<ExprNode>();
  node->kind = ExprNode::Kind::constant;
  node->value = value;
  std::ostringstream os;
  os.precision(17);
  os << value;
  return Expr(std::move(node), std::make_shared<const std::string>(os.str()));
}

bool Expr::is_zero_constant() const noexcept {
  return root_->kind == ExprNode::Kind::constant && root_->value == 0.0;
}

namespace {

bool node_depends_on_coordinates(const ExprNode& n) {
  switch (n.kind) {
    case ExprNode::Kind::coordinate:
    case ExprNode::Kind::name:
      return true;
    case ExprNode::Kind::constant:
    case ExprNode::Kind::parameter:
      return false;
    default:
      return (n.lhs && node_depends_on_coordinates(*n.lhs)) ||
             (n.rhs && node_depends_on_coordinates(*n.rhs));
  }
}

using NodePtr = std::shared_ptr<const ExprNode>;

class Parser {
 public:
  explicit Parser(const std::vector<Token>& tokens) : tokens_(tokens) {
    if (tokens_.empty() || tokens_.back().kind != TokenKind::end) {
      throw ParseError("token stream must end with an end token", 0);
    }
  }

  NodePtr expression() {
    NodePtr lhs = term();
    while (peek().kind == TokenKind::plus || peek().kind == TokenKind::minus) {
      const Token& op = next();
      NodePtr rhs = term();
      lhs = binary(op.kind == TokenKind::plus ? ExprNode::Kind::add : ExprNode::Kind::sub,
                   lhs, rhs, op.offset);
    }
    return lhs;
  }

  const Token& peek() const { return tokens_[pos_]; }

  const Token& next() {
    const Token& t = tokens_[pos_];
    if (t.kind != TokenKind::end) ++pos_;
    return t;
  }

  void expect(TokenKind kind, const char* what) {
    if (peek().kind != kind) {
      throw ParseError(std::string("expected ") + what + describe(peek()), peek().offset);
    }
    next();
  }

  static std::string describe(const Token& t) {
    if (t.kind == TokenKind::end) return ", found end of input";
    return ", found '" + t.text + "'";
  }

 private:
  static NodePtr binary(ExprNode::Kind kind, NodePtr lhs, NodePtr rhs, std::size_t offset) {
    auto n = std::make_shared<ExprNode>();
    n->kind = kind;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    n->offset = offset;
    return n;
  }

  NodePtr term() {
    if (peek().kind == TokenKind::minus) {
      const Token& op = next();
      auto n = std::make_shared<ExprNode>();
      n->kind = ExprNode::Kind::negate;
      n->lhs = term();
      n->offset = op.offset;
      return n;
    }
    if (peek().kind == TokenKind::plus) {
      next();
      return term();
    }
    NodePtr lhs = unary();
    while (peek().kind == TokenKind::star || peek().kind == TokenKind::slash) {
      const Token& op = next();
      NodePtr rhs = unary();
      lhs = binary(op.kind == TokenKind::star ? ExprNode::Kind::mul : ExprNode::Kind::div,
                   lhs, rhs, op.offset);
    }
    return lhs;
  }

  NodePtr unary() {
    if (peek().kind == TokenKind::minus) {
      const Token& op = next();
      auto n = std::make_shared<ExprNode>();
      n->kind = ExprNode::Kind::negate;
      n->lhs = unary();
      n->offset = op.offset;
      return n;
    }
    if (peek().kind == TokenKind::plus) {
      next();
      return unary();
    }
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (peek().kind == TokenKind::caret) {
      const Token& op = next();
      NodePtr exponent = unary();
      return binary(ExprNode::Kind::pow, base, exponent, op.offset);
    }
    return base;
  }

  NodePtr primary() {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::number: {
        next();
        auto n = std::make_shared<ExprNode>();
        n->kind = ExprNode::Kind::constant;
        n->value = t.number;
        n->offset = t.offset;
        return n;
      }
      case TokenKind::identifier: {
        next();
        if (peek().kind == TokenKind::lparen) {
          auto fn = function_by_name(t.text);
          if (!fn) throw ParseError("unknown function '" + t.text + "'", t.offset);
          next();
          auto n = std::make_shared<ExprNode>();
          n->kind = ExprNode::Kind::call;
          n->fn = *fn;
          n->name = t.text;
          n->lhs = expression();
          n->offset = t.offset;
          expect(TokenKind::rparen, "')' to close call");
          return n;
        }
        if (function_by_name(t.text)) {
          throw ParseError("function '" + t.text + "' used without an argument", t.offset);
        }
        auto n = std::make_shared<ExprNode>();
        n->kind = ExprNode::Kind::name;
        n->name = t.text;
        n->offset = t.offset;
        return n;
      }
      case TokenKind::lparen: {
        next();
        NodePtr inner = expression();
        expect(TokenKind::rparen, "')'");
        return inner;
      }
      case TokenKind::rparen:
        throw ParseError("unbalanced ')'", t.offset);
      case TokenKind::end:
        throw ParseError("unexpected end of input", t.offset);
      default:
        throw ParseError("unexpected token '" + t.text + "'", t.offset);
    }
  }

  const std::vector<Token>& tokens_;
  std::size_t pos_ = 0;
};

std::shared_ptr<const std::string> share(std::string_view s) {
  return std::make_shared<const std::string>(s);
}

}  // namespace

bool Expr::depends_on_coordinates() const { return node_depends_on_coordinates(*root_); }

Expr parse(const std::vector<Token>& tokens, std::string_view source) {
  Parser p(tokens);
  NodePtr root = p.expression();
  if (p.peek().kind == TokenKind::rparen) {
    throw ParseError("unbalanced ')'", p.peek().offset);
  }
  if (p.peek().kind != TokenKind::end) {
    throw ParseError("unexpected token '" + p.peek().text + "'", p.peek().offset);
  }
  return Expr(std::move(root), share(source));
}

std::vector<Expr> parse_list(const std::vector<Token>& tokens, std::string_view source) {
  Parser p(tokens);
  std::vector<Expr> out;
  auto src = share(source);
  while (true) {
    out.emplace_back(p.expression(), src);
    if (p.peek().kind == TokenKind::comma) {
      p.next();
      continue;
    }
    if (p.peek().kind != TokenKind::end) {
      throw ParseError("expected ',' or end of list" + Parser::describe(p.peek()), p.peek().offset);
    }
    return out;
  }
}

Expr parse(std::string_view src) { return parse(tokenize(src), src); }

namespace {

NodePtr bind_node(const NodePtr& n, const SymbolTable& symbols) {
  if (n->kind == ExprNode::Kind::name) {
    auto out = std::make_shared<ExprNode>(*n);
    for (std::size_t k = 0; k < symbols.coordinates.size(); ++k) {
      if (symbols.coordinates[k] == n->name) {
        out->kind = ExprNode::Kind::coordinate;
        out->index = static_cast<int>(k);
        return out;
      }
    }
    for (const auto& p : symbols.parameters) {
      if (p == n->name) {
        out->kind = ExprNode::Kind::parameter;
        return out;
      }
    }
    if (n->name == "pi") {
      out->kind = ExprNode::Kind::constant;
      out->value = std::numbers::pi;
      return out;
    }
    if (n->name == "e") {
      out->kind = ExprNode::Kind::constant;
      out->value = std::numbers::e;
      return out;
    }
    throw ParseError("unknown identifier '" + n->name + "'", n->offset);
  }
  if (!n->lhs && !n->rhs) return n;
  auto out = std::make_shared<ExprNode>(*n);
  if (n->lhs) out->lhs = bind_node(n->lhs, symbols);
  if (n->rhs) out->rhs = bind_node(n->rhs, symbols);
  return out;
}

void print_node(const ExprNode& n, std::ostream& os) {
  switch (n.kind) {
    case ExprNode::Kind::constant: {
      std::ostringstream num;
      num.precision(17);
      num << n.value;
      if (n.value < 0 || std::signbit(n.value)) {
        os << "(" << num.str() << ")";
      } else {
        os << num.str();
      }
      return;
    }
    case ExprNode::Kind::name:
    case ExprNode::Kind::coordinate:
    case ExprNode::Kind::parameter:
      os << n.name;
      return;
    case ExprNode::Kind::negate:
      os << "(-";
      print_node(*n.lhs, os);
      os << ")";
      return;
    case ExprNode::Kind::call:
      os << function_name(n.fn) << "(";
      print_node(*n.lhs, os);
      os << ")";
      return;
    default: {
      const char* op = "?";
      switch (n.kind) {
        case ExprNode::Kind::add: op = " + "; break;
        case ExprNode::Kind::sub: op = " - "; break;
        case ExprNode::Kind::mul: op = " * "; break;
        case ExprNode::Kind::div: op = " / "; break;
        case ExprNode::Kind::pow: op = " ^ "; break;
        default: break;
      }
      os << "(";
      print_node(*n.lhs, os);
      os << op;
      print_node(*n.rhs, os);
      os << ")";
    }
  }
}

}  // namespace

Expr bind(const Expr& e, const SymbolTable& symbols) {
  return Expr(bind_node(e.root_ptr(), symbols), share(e.source()));
}

Expr compile(std::string_view src, const SymbolTable& symbols) {
  return bind(parse(src), symbols);
}

std::string print(const Expr& e) {
  std::ostringstream os;
  print_node(e.root(), os);
  return os.str();
}

bool structurally_equal(const ExprNode& a, const ExprNode& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ExprNode::Kind::constant:
      return a.value == b.value;
    case ExprNode::Kind::name:
    case ExprNode::Kind::parameter:
      return a.name == b.name;
    case ExprNode::Kind::coordinate:
      return a.index == b.index;
    case ExprNode::Kind::call:
      if (a.fn != b.fn) return false;
      break;
    default:
      break;
  }
  if (static_cast<bool>(a.lhs) != static_cast<bool>(b.lhs)) return false;
  if (static_cast<bool>(a.rhs) != static_cast<bool>(b.rhs)) return false;
  if (a.lhs && !structurally_equal(*a.lhs, *b.lhs)) return false;
  if (a.rhs && !structurally_equal(*a.rhs, *b.rhs)) return false;
  return true;
}

namespace {

class Evaluator {
 public:
  Evaluator(const Expr& e, std::span<const double> point, const ParamTable& params, int order)
      : expr_(e), point_(point), params_(params), order_(order),
        dim_(static_cast<int>(point.size())) {}

  Jet eval(const ExprNode& n) const {
    switch (n.kind) {
      case ExprNode::Kind::constant:
        return Jet::constant(n.value, dim_, order_);
      case ExprNode::Kind::name:
        fail(n, "unbound identifier '" + n.name + "'");
      case ExprNode::Kind::coordinate:
        if (n.index < 0 || n.index >= dim_) {
          fail(n, "coordinate '" + n.name + "' outside the evaluation point");
        }
        if (order_ == 0) return Jet::constant(point_[n.index], dim_, 0);
        return Jet::variable(point_[n.index], n.index, dim_, order_);
      case ExprNode::Kind::parameter: {
        auto it = params_.find(n.name);
        if (it == params_.end()) fail(n, "parameter '" + n.name + "' has no value");
        return Jet::constant(it->second, dim_, order_);
      }
      case ExprNode::Kind::negate:
        return -eval(*n.lhs);
      case ExprNode::Kind::add:
        return eval(*n.lhs) + eval(*n.rhs);
      case ExprNode::Kind::sub:
        return eval(*n.lhs) - eval(*n.rhs);
      case ExprNode::Kind::mul:
        return eval(*n.lhs) * eval(*n.rhs);
      case ExprNode::Kind::div: {
        Jet num = eval(*n.lhs);
        Jet den = eval(*n.rhs);
        return guarded(n, [&] { return num / den; });
      }
      case ExprNode::Kind::pow:
        return power(n);
      case ExprNode::Kind::call: {
        Jet arg = eval(*n.lhs);
        return guarded(n, [&] { return apply(n.fn, arg); });
      }
    }
    fail(n, "malformed expression node");
  }

 private:
  Jet power(const ExprNode& n) const {
    Jet base = eval(*n.lhs);
    if (!node_depends_on_coordinates(*n.rhs)) {
      const double c = eval(*n.rhs).value();
      return guarded(n, [&] { return pow(base, c); });
    }
    Jet exponent = eval(*n.rhs);
    return guarded(n, [&] { return exp(exponent * log(base)); });
  }

  template <class F>
  Jet guarded(const ExprNode& n, F&& f) const {
    try {
      return f();
    } catch (const DomainError& err) {
      fail(n, err.what());
    }
  }

  [[noreturn]] void fail(const ExprNode& n, const std::string& what) const {
    std::ostringstream os;
    os.precision(17);
    os << "expression '" << expr_.source() << "' at offset " << n.offset << ": " << what
       << " at point (";
    for (std::size_t k = 0; k < point_.size(); ++k) {
      if (k) os << ", ";
      os << point_[k];
    }
    os << ")";
    throw EvalError(os.str());
  }

  const Expr& expr_;
  std::span<const double> point_;
  const ParamTable& params_;
  int order_;
  int dim_;
};

}  // namespace

Jet evaluate(const Expr& e, std::span<const double> point, const ParamTable& params, int order) {
  if (order < 0) throw OrderError("negative evaluation order");
  return Evaluator(e, point, params, order).eval(e.root());
}

}  // namespace contactlab
