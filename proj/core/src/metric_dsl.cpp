#include <cvlab/metric_dsl.hpp>

#include <cvlab/errors.hpp>

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace cvlab {

namespace {

std::string describe_found(std::string_view src, std::size_t pos) {
  if (pos >= src.size()) return "end of input";
  return "'" + std::string(1, src[pos]) + "'";
}

}  // namespace

ExprPtr make_constant(double value) {
  if (!std::isfinite(value) || value < 0.0 || std::signbit(value))
    throw InvalidParameter("expression constants must be finite and >= 0");
  return std::make_shared<const ExprNode>(ExprNode{ConstantNode{value}});
}

ExprPtr make_variable(Variable v) {
  return std::make_shared<const ExprNode>(ExprNode{VariableNode{v}});
}

ExprPtr make_unary(UnaryOp op, ExprPtr arg) {
  return std::make_shared<const ExprNode>(
      ExprNode{UnaryNode{op, std::move(arg)}});
}

ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs) {
  return std::make_shared<const ExprNode>(
      ExprNode{BinaryNode{op, std::move(lhs), std::move(rhs)}});
}

MetricExpr::MetricExpr(ExprPtr root, std::string source)
    : root_(std::move(root)), source_(std::move(source)) {}

MetricExpr::MetricExpr(ExprPtr root) : root_(std::move(root)) {
  source_ = serialize(*root_);
}

std::string_view to_string(UnaryOp op) {
  switch (op) {
    case UnaryOp::Neg: return "-";
    case UnaryOp::Exp: return "exp";
    case UnaryOp::Log: return "log";
    case UnaryOp::Sqrt: return "sqrt";
    case UnaryOp::Sin: return "sin";
    case UnaryOp::Cos: return "cos";
    case UnaryOp::Cosh: return "cosh";
    case UnaryOp::Sinh: return "sinh";
    case UnaryOp::Tanh: return "tanh";
  }
  return "?";
}

std::string_view to_string(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Pow: return "^";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Parser

namespace {

constexpr std::array<std::pair<std::string_view, UnaryOp>, 8> kFunctions{{
    {"exp", UnaryOp::Exp},
    {"log", UnaryOp::Log},
    {"sqrt", UnaryOp::Sqrt},
    {"sin", UnaryOp::Sin},
    {"cos", UnaryOp::Cos},
    {"cosh", UnaryOp::Cosh},
    {"sinh", UnaryOp::Sinh},
    {"tanh", UnaryOp::Tanh},
}};

const std::vector<std::string>& operand_tokens() {
  static const std::vector<std::string> v{"number", "'t'",   "'theta'",
                                          "function", "'('", "'-'"};
  return v;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  ExprPtr parse() {
    ExprPtr e = expression();
    skip_space();
    if (pos_ != src_.size())
      throw ParseError(pos_, {"operator", "end of input"},
                       describe_found(src_, pos_));
    return e;
  }

 private:
  void skip_space() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c))
      throw ParseError(pos_, {std::string("'") + c + "'"},
                       describe_found(src_, pos_));
  }

  ExprPtr expression() {
    ExprPtr lhs = signed_term();
    for (;;) {
      if (accept('+')) {
        lhs = make_binary(BinaryOp::Add, lhs, signed_term());
      } else if (accept('-')) {
        lhs = make_binary(BinaryOp::Sub, lhs, signed_term());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr signed_term() {
    if (accept('-')) return make_unary(UnaryOp::Neg, signed_term());
    return term();
  }

  ExprPtr term() {
    ExprPtr lhs = factor();
    for (;;) {
      if (accept('*')) {
        lhs = make_binary(BinaryOp::Mul, lhs, factor());
      } else if (accept('/')) {
        lhs = make_binary(BinaryOp::Div, lhs, factor());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr factor() {
    ExprPtr b = base();
    if (accept('^')) return make_binary(BinaryOp::Pow, b, factor());
    return b;
  }

  ExprPtr base() {
    skip_space();
    if (pos_ >= src_.size())
      throw ParseError(pos_, operand_tokens(), "end of input");
    const char c = src_[pos_];
    if (c == '-') {
      ++pos_;
      return make_unary(UnaryOp::Neg, base());
    }
    if (c == '(') {
      ++pos_;
      ExprPtr e = expression();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
      return identifier();
    throw ParseError(pos_, operand_tokens(), describe_found(src_, pos_));
  }

  ExprPtr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t mantissa = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) throw ParseError(start, {"digit"}, describe_found(src_, pos_));
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (digits() == 0)
        throw ParseError(pos_, {"exponent digits"}, describe_found(src_, pos_));
    }
    double value = 0.0;
    const char* first = src_.data() + start;
    const char* last = src_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || !std::isfinite(value))
      throw ParseError(start, {"representable number"},
                       "'" + std::string(first, last) + "'");
    return make_constant(value);
  }

  ExprPtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
            src_[pos_] == '_'))
      ++pos_;
    const std::string_view name = src_.substr(start, pos_ - start);
    if (name == "t") return make_variable(Variable::T);
    if (name == "theta") return make_variable(Variable::Theta);
    for (const auto& [fname, op] : kFunctions) {
      if (fname == name) {
        expect('(');
        ExprPtr arg = expression();
        expect(')');
        return make_unary(op, std::move(arg));
      }
    }
    throw UnknownIdentifier(start, std::string(name));
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Evaluation

Jet2 checked(Jet2 j, const char* what) {
  if (!isfinite(j))
    throw OverflowError(std::string("non-finite result in ") + what);
  return j;
}

bool is_integer(double x) { return std::nearbyint(x) == x; }

Jet2 eval_node(const ExprNode& node, double t, double theta);

Jet2 eval_unary(const UnaryNode& u, double t, double theta) {
  const Jet2 a = eval_node(*u.arg, t, theta);
  switch (u.op) {
    case UnaryOp::Neg: return -a;
    case UnaryOp::Exp: return checked(exp(a), "exp");
    case UnaryOp::Log:
      if (a.value <= 0.0) throw DomainError("log of a nonpositive value");
      return checked(log(a), "log");
    case UnaryOp::Sqrt:
      if (a.value < 0.0) throw DomainError("sqrt of a negative value");
      return checked(sqrt(a), "sqrt");
    case UnaryOp::Sin: return checked(sin(a), "sin");
    case UnaryOp::Cos: return checked(cos(a), "cos");
    case UnaryOp::Cosh: return checked(cosh(a), "cosh");
    case UnaryOp::Sinh: return checked(sinh(a), "sinh");
    case UnaryOp::Tanh: return checked(tanh(a), "tanh");
  }
  throw DomainError("unknown unary operator");
}

Jet2 eval_binary(const BinaryNode& b, double t, double theta) {
  const Jet2 x = eval_node(*b.lhs, t, theta);
  const Jet2 y = eval_node(*b.rhs, t, theta);
  switch (b.op) {
    case BinaryOp::Add: return checked(x + y, "+");
    case BinaryOp::Sub: return checked(x - y, "-");
    case BinaryOp::Mul: return checked(x * y, "*");
    case BinaryOp::Div:
      if (y.value == 0.0) throw DomainError("division by zero");
      return checked(x / y, "/");
    case BinaryOp::Pow: {
      const bool constant_exponent = y.d1 == 0.0 && y.d2 == 0.0;
      if (constant_exponent && is_integer(y.value) &&
          std::fabs(y.value) <= 1 << 20) {
        const int n = static_cast<int>(y.value);
        if (x.value == 0.0 && n < 0)
          throw DomainError("negative power of zero");
        return checked(pow_int(x, n), "^");
      }
      if (x.value <= 0.0)
        throw DomainError("non-integer power of a nonpositive base");
      return checked(pow(x, y), "^");
    }
  }
  throw DomainError("unknown binary operator");
}

Jet2 eval_node(const ExprNode& node, double t, double theta) {
  return std::visit(
      [&](const auto& n) -> Jet2 {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, ConstantNode>) {
          return Jet2::constant(n.value);
        } else if constexpr (std::is_same_v<N, VariableNode>) {
          return n.var == Variable::T ? Jet2::variable(t)
                                      : Jet2::constant(theta);
        } else if constexpr (std::is_same_v<N, UnaryNode>) {
          return eval_unary(n, t, theta);
        } else {
          return eval_binary(n, t, theta);
        }
      },
      node.data);
}

void write(std::string& out, const ExprNode& node) {
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, ConstantNode>) {
          char buf[64];
          auto res = std::to_chars(buf, buf + sizeof buf, n.value);
          out.append(buf, res.ptr);
        } else if constexpr (std::is_same_v<N, VariableNode>) {
          out += n.var == Variable::T ? "t" : "theta";
        } else if constexpr (std::is_same_v<N, UnaryNode>) {
          if (n.op == UnaryOp::Neg) {
            out += "(-";
            write(out, *n.arg);
            out += ")";
          } else {
            out += to_string(n.op);
            out += "(";
            write(out, *n.arg);
            out += ")";
          }
        } else {
          out += "(";
          write(out, *n.lhs);
          out += " ";
          out += to_string(n.op);
          out += " ";
          write(out, *n.rhs);
          out += ")";
        }
      },
      node.data);
}

}  // namespace

MetricExpr parse_metric(std::string_view source) {
  Parser parser(source);
  return MetricExpr(parser.parse(), std::string(source));
}

Jet2 eval_jet(const MetricExpr& expr, double t, double theta) {
  return eval_node(expr.root(), t, theta);
}

std::string serialize(const ExprNode& node) {
  std::string out;
  write(out, node);
  return out;
}

std::string serialize(const MetricExpr& expr) { return serialize(expr.root()); }

bool structurally_equal(const ExprNode& a, const ExprNode& b) {
  if (a.data.index() != b.data.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using N = std::decay_t<decltype(x)>;
        const auto& y = std::get<N>(b.data);
        if constexpr (std::is_same_v<N, ConstantNode>) {
          return x.value == y.value;
        } else if constexpr (std::is_same_v<N, VariableNode>) {
          return x.var == y.var;
        } else if constexpr (std::is_same_v<N, UnaryNode>) {
          return x.op == y.op && structurally_equal(*x.arg, *y.arg);
        } else {
          return x.op == y.op && structurally_equal(*x.lhs, *y.lhs) &&
                 structurally_equal(*x.rhs, *y.rhs);
        }
      },
      a.data);
}

}  // namespace cvlab
