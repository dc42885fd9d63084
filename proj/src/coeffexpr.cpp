#include "greensign/coeffexpr.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "greensign/error.hpp"

namespace greensign {

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;

NodePtr make_constant(double v) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::Kind::Constant;
  n->value = v;
  return n;
}

const NodePtr& zero_node() {
  static const NodePtr z = make_constant(0.0);
  return z;
}

bool is_literal(const ExprNode& n) {
  return n.kind == ExprNode::Kind::Constant || n.kind == ExprNode::Kind::Pi;
}

double literal_value(const ExprNode& n) {
  return n.kind == ExprNode::Kind::Pi ? std::numbers::pi : n.value;
}

bool is_const_equal(const ExprNode& n, double v) {
  return n.kind == ExprNode::Kind::Constant && n.value == v;
}

constexpr std::array<std::pair<std::string_view, FuncKind>, 10> kFunctions{{
    {"sin", FuncKind::Sin},
    {"cos", FuncKind::Cos},
    {"tan", FuncKind::Tan},
    {"sinh", FuncKind::Sinh},
    {"cosh", FuncKind::Cosh},
    {"tanh", FuncKind::Tanh},
    {"exp", FuncKind::Exp},
    {"log", FuncKind::Log},
    {"sqrt", FuncKind::Sqrt},
    {"abs", FuncKind::Abs},
}};

double apply_func(FuncKind f, double x) {
  switch (f) {
    case FuncKind::Sin: return std::sin(x);
    case FuncKind::Cos: return std::cos(x);
    case FuncKind::Tan: return std::tan(x);
    case FuncKind::Sinh: return std::sinh(x);
    case FuncKind::Cosh: return std::cosh(x);
    case FuncKind::Tanh: return std::tanh(x);
    case FuncKind::Exp: return std::exp(x);
    case FuncKind::Log:
      if (x <= 0.0) throw DomainError("log of non-positive argument");
      return std::log(x);
    case FuncKind::Sqrt:
      if (x < 0.0) throw DomainError("sqrt of negative argument");
      return std::sqrt(x);
    case FuncKind::Abs: return std::fabs(x);
  }
  return 0.0;
}

double apply_binary(BinaryOp op, double l, double r) {
  switch (op) {
    case BinaryOp::Add: return l + r;
    case BinaryOp::Sub: return l - r;
    case BinaryOp::Mul: return l * r;
    case BinaryOp::Div:
      if (r == 0.0) throw DomainError("division by zero");
      return l / r;
    case BinaryOp::Pow:
      if (l == 0.0 && r < 0.0) throw DomainError("zero raised to a negative power");
      return std::pow(l, r);
  }
  return 0.0;
}

double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string("non-finite result in ") + what);
  return v;
}

double eval_node(const ExprNode& n, double t) {
  switch (n.kind) {
    case ExprNode::Kind::Constant: return n.value;
    case ExprNode::Kind::Variable: return t;
    case ExprNode::Kind::Pi: return std::numbers::pi;
    case ExprNode::Kind::Negate: return -eval_node(*n.lhs, t);
    case ExprNode::Kind::Binary:
      return checked(apply_binary(n.op, eval_node(*n.lhs, t), eval_node(*n.rhs, t)), "arithmetic");
    case ExprNode::Kind::Function:
      return checked(apply_func(n.func, eval_node(*n.lhs, t)), "function application");
  }
  return 0.0;
}

// Folds two literals when the result is finite; otherwise returns null.
NodePtr try_fold(BinaryOp op, const ExprNode& l, const ExprNode& r) {
  if (!is_literal(l) || !is_literal(r)) return nullptr;
  try {
    double v = apply_binary(op, literal_value(l), literal_value(r));
    if (std::isfinite(v)) return make_constant(v);
  } catch (const DomainError&) {
  }
  return nullptr;
}

NodePtr make_binary(BinaryOp op, NodePtr l, NodePtr r) {
  if (auto folded = try_fold(op, *l, *r)) return folded;
  switch (op) {
    case BinaryOp::Add:
      if (is_const_equal(*l, 0.0)) return r;
      if (is_const_equal(*r, 0.0)) return l;
      break;
    case BinaryOp::Sub:
      if (is_const_equal(*r, 0.0)) return l;
      if (is_const_equal(*l, 0.0)) return (-CoefficientExpr::wrap(r)).shared_node();
      break;
    case BinaryOp::Mul:
      if (is_const_equal(*l, 0.0) || is_const_equal(*r, 0.0)) return zero_node();
      if (is_const_equal(*l, 1.0)) return r;
      if (is_const_equal(*r, 1.0)) return l;
      break;
    case BinaryOp::Div:
      if (is_const_equal(*r, 1.0)) return l;
      if (is_const_equal(*l, 0.0) && is_literal(*r) && literal_value(*r) != 0.0) return zero_node();
      break;
    case BinaryOp::Pow:
      if (is_const_equal(*r, 0.0)) return make_constant(1.0);
      if (is_const_equal(*r, 1.0)) return l;
      break;
  }
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::Kind::Binary;
  n->op = op;
  n->lhs = std::move(l);
  n->rhs = std::move(r);
  return n;
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  CoefficientExpr parse() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("empty expression", pos_);
    CoefficientExpr e = parse_sum();
    skip_space();
    if (pos_ < text_.size()) throw ParseError(unexpected(), pos_);
    return e;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  std::string unexpected() const {
    if (pos_ >= text_.size()) return "unexpected end of input";
    return std::string("unexpected character '") + text_[pos_] + "'";
  }

  CoefficientExpr parse_sum() {
    CoefficientExpr lhs = parse_product();
    for (;;) {
      char c = peek();
      if (c == '+') {
        ++pos_;
        lhs = lhs + parse_product();
      } else if (c == '-') {
        ++pos_;
        lhs = lhs - parse_product();
      } else {
        return lhs;
      }
    }
  }

  CoefficientExpr parse_product() {
    CoefficientExpr lhs = parse_unary();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        lhs = lhs * parse_unary();
      } else if (c == '/') {
        ++pos_;
        lhs = lhs / parse_unary();
      } else {
        return lhs;
      }
    }
  }

  CoefficientExpr parse_unary() {
    char c = peek();
    if (c == '-') {
      ++pos_;
      return -parse_unary();
    }
    if (c == '+') {
      ++pos_;
      return parse_unary();
    }
    return parse_power();
  }

  CoefficientExpr parse_power() {
    CoefficientExpr base = parse_primary();
    if (peek() == '^') {
      ++pos_;
      return pow(base, parse_unary());
    }
    return base;
  }

  CoefficientExpr parse_primary() {
    char c = peek();
    if (c == '\0') throw ParseError("unexpected end of input", pos_);
    if (c == '(') {
      ++pos_;
      CoefficientExpr inner = parse_sum();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier();
    throw ParseError(unexpected(), pos_);
  }

  void expect(char c) {
    if (peek() != c) throw ParseError(std::string("expected '") + c + "', " + unexpected(), pos_);
    ++pos_;
  }

  CoefficientExpr parse_number() {
    std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t mantissa = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) throw ParseError("malformed number", start);
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t save = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) {
        // Not an exponent; leave the 'e' for the identifier check below.
        pos_ = save;
      }
    }
    if (pos_ < text_.size() &&
        (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '(')) {
      throw ParseError("implicit multiplication is not supported, use '*'", pos_);
    }
    std::string literal(text_.substr(start, pos_ - start));
    return CoefficientExpr::constant(std::strtod(literal.c_str(), nullptr));
  }

  CoefficientExpr parse_identifier() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::string_view name = text_.substr(start, pos_ - start);
    if (name == "t") return CoefficientExpr::variable();
    if (name == "pi") return CoefficientExpr::pi();
    for (const auto& [fname, kind] : kFunctions) {
      if (name == fname) {
        expect('(');
        CoefficientExpr arg = parse_sum();
        expect(')');
        return apply(kind, arg);
      }
    }
    throw ParseError("unknown identifier '" + std::string(name) + "'", start);
  }
};

void unparse_into(const ExprNode& n, std::string& out) {
  switch (n.kind) {
    case ExprNode::Kind::Constant: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", n.value);
      if (n.value < 0.0) {
        out += '(';
        out += buf;
        out += ')';
      } else {
        out += buf;
      }
      return;
    }
    case ExprNode::Kind::Variable: out += 't'; return;
    case ExprNode::Kind::Pi: out += "pi"; return;
    case ExprNode::Kind::Negate:
      out += "(-";
      unparse_into(*n.lhs, out);
      out += ')';
      return;
    case ExprNode::Kind::Binary: {
      static constexpr char ops[] = {'+', '-', '*', '/', '^'};
      out += '(';
      unparse_into(*n.lhs, out);
      out += ops[static_cast<int>(n.op)];
      unparse_into(*n.rhs, out);
      out += ')';
      return;
    }
    case ExprNode::Kind::Function:
      out += function_name(n.func);
      out += '(';
      unparse_into(*n.lhs, out);
      out += ')';
      return;
  }
}

}  // namespace

// ---------------------------------------------------------------------------

CoefficientExpr::CoefficientExpr() : node_(zero_node()) {}

CoefficientExpr CoefficientExpr::wrap(std::shared_ptr<const ExprNode> node) {
  return CoefficientExpr(std::move(node));
}

CoefficientExpr CoefficientExpr::constant(double value) {
  if (value == 0.0) return CoefficientExpr();
  return CoefficientExpr(make_constant(value));
}

CoefficientExpr CoefficientExpr::variable() {
  static const NodePtr v = [] {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::Variable;
    return n;
  }();
  return CoefficientExpr(v);
}

CoefficientExpr CoefficientExpr::pi() {
  static const NodePtr p = [] {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::Pi;
    return n;
  }();
  return CoefficientExpr(p);
}

CoefficientExpr CoefficientExpr::operator-() const {
  if (is_literal(*node_)) return constant(-literal_value(*node_));
  if (node_->kind == ExprNode::Kind::Negate) return CoefficientExpr(node_->lhs);
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::Kind::Negate;
  n->lhs = node_;
  return CoefficientExpr(n);
}

CoefficientExpr operator+(const CoefficientExpr& l, const CoefficientExpr& r) {
  return CoefficientExpr(make_binary(BinaryOp::Add, l.node_, r.node_));
}
CoefficientExpr operator-(const CoefficientExpr& l, const CoefficientExpr& r) {
  return CoefficientExpr(make_binary(BinaryOp::Sub, l.node_, r.node_));
}
CoefficientExpr operator*(const CoefficientExpr& l, const CoefficientExpr& r) {
  return CoefficientExpr(make_binary(BinaryOp::Mul, l.node_, r.node_));
}
CoefficientExpr operator/(const CoefficientExpr& l, const CoefficientExpr& r) {
  return CoefficientExpr(make_binary(BinaryOp::Div, l.node_, r.node_));
}
CoefficientExpr pow(const CoefficientExpr& base, const CoefficientExpr& exponent) {
  return CoefficientExpr(make_binary(BinaryOp::Pow, base.node_, exponent.node_));
}

CoefficientExpr apply(FuncKind f, const CoefficientExpr& arg) {
  if (is_literal(*arg.node_)) {
    try {
      double v = apply_func(f, literal_value(*arg.node_));
      if (std::isfinite(v)) return CoefficientExpr::constant(v);
    } catch (const DomainError&) {
    }
  }
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::Kind::Function;
  n->func = f;
  n->lhs = arg.node_;
  return CoefficientExpr(n);
}

bool CoefficientExpr::is_constant() const { return node_->kind == ExprNode::Kind::Constant; }
bool CoefficientExpr::is_zero() const { return is_const_equal(*node_, 0.0); }
double CoefficientExpr::constant_value() const { return node_->value; }

std::string_view function_name(FuncKind f) {
  for (const auto& [name, kind] : kFunctions) {
    if (kind == f) return name;
  }
  return "?";
}

CoefficientExpr parse_expr(std::string_view text) {
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (static_cast<unsigned char>(text[i]) > 127) throw ParseError("non-ASCII character", i);
  }
  return Parser(text).parse();
}

double eval(const CoefficientExpr& e, double t) {
  if (!std::isfinite(t)) throw DomainError("evaluation point is not finite");
  return eval_node(e.node(), t);
}

CoefficientExpr differentiate(const CoefficientExpr& e) {
  using K = ExprNode::Kind;
  const ExprNode& n = e.node();
  const CoefficientExpr one = CoefficientExpr::constant(1.0);
  switch (n.kind) {
    case K::Constant:
    case K::Pi: return CoefficientExpr();
    case K::Variable: return one;
    case K::Negate: return -differentiate(CoefficientExpr::wrap(n.lhs));
    case K::Binary: {
      CoefficientExpr u = CoefficientExpr::wrap(n.lhs);
      CoefficientExpr v = CoefficientExpr::wrap(n.rhs);
      switch (n.op) {
        case BinaryOp::Add: return differentiate(u) + differentiate(v);
        case BinaryOp::Sub: return differentiate(u) - differentiate(v);
        case BinaryOp::Mul: return differentiate(u) * v + u * differentiate(v);
        case BinaryOp::Div:
          return (differentiate(u) * v - u * differentiate(v)) / pow(v, CoefficientExpr::constant(2.0));
        case BinaryOp::Pow: {
          CoefficientExpr du = differentiate(u);
          CoefficientExpr dv = differentiate(v);
          if (dv.is_zero()) return v * pow(u, v - one) * du;
          if (du.is_zero()) return e * apply(FuncKind::Log, u) * dv;
          return e * (dv * apply(FuncKind::Log, u) + v * du / u);
        }
      }
      break;
    }
    case K::Function: {
      CoefficientExpr u = CoefficientExpr::wrap(n.lhs);
      CoefficientExpr du = differentiate(u);
      if (du.is_zero()) return CoefficientExpr();
      const CoefficientExpr two = CoefficientExpr::constant(2.0);
      switch (n.func) {
        case FuncKind::Sin: return apply(FuncKind::Cos, u) * du;
        case FuncKind::Cos: return -(apply(FuncKind::Sin, u) * du);
        case FuncKind::Tan: return du / pow(apply(FuncKind::Cos, u), two);
        case FuncKind::Sinh: return apply(FuncKind::Cosh, u) * du;
        case FuncKind::Cosh: return apply(FuncKind::Sinh, u) * du;
        case FuncKind::Tanh: return du / pow(apply(FuncKind::Cosh, u), two);
        case FuncKind::Exp: return e * du;
        case FuncKind::Log: return du / u;
        case FuncKind::Sqrt: return du / (two * e);
        case FuncKind::Abs: return u / e * du;
      }
      break;
    }
  }
  return CoefficientExpr();
}

CoefficientExpr differentiate(const CoefficientExpr& e, int k) {
  CoefficientExpr d = e;
  for (int i = 0; i < k; ++i) d = differentiate(d);
  return d;
}

std::string unparse(const CoefficientExpr& e) {
  std::string out;
  unparse_into(e.node(), out);
  return out;
}

}  // namespace greensign
