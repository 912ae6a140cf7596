#include "paracontact/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <optional>

namespace paracontact {

struct ScalarExpr::Node {
  Op op = Op::Constant;
  double number = 0.0;
  int coord = -1;
  std::optional<ScalarExpr> a;  // empty for leaves
  std::optional<ScalarExpr> b;
};

namespace {

using Op = ScalarExpr::Op;

std::string format_number(double v) {
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::string_view function_name(Op op) {
  switch (op) {
    case Op::Exp: return "exp";
    case Op::Ln: return "ln";
    case Op::Sqrt: return "sqrt";
    case Op::Sin: return "sin";
    case Op::Cos: return "cos";
    default: return {};
  }
}

bool lookup_function(std::string_view name, Op& op) {
  static constexpr std::array<std::pair<std::string_view, Op>, 5> table{{
      {"exp", Op::Exp}, {"ln", Op::Ln}, {"sqrt", Op::Sqrt}, {"sin", Op::Sin}, {"cos", Op::Cos},
  }};
  for (const auto& [n, o] : table) {
    if (n == name) {
      op = o;
      return true;
    }
  }
  return false;
}

class Parser {
 public:
  Parser(std::string_view src, std::span<const std::string> coords)
      : src_(src), coords_(coords) {}

  ScalarExpr parse() {
    ScalarExpr e = expr();
    skip_ws();
    if (pos_ < src_.size()) {
      throw ParseError("unexpected '" + std::string(1, src_[pos_]) + "'", pos_);
    }
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= src_.size()) {
        throw ParseError(std::string("expected '") + c + "' but reached end of input", pos_);
      }
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
  }

  ScalarExpr expr() {
    ScalarExpr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = ScalarExpr::binary(Op::Add, lhs, term());
      } else if (accept('-')) {
        lhs = ScalarExpr::binary(Op::Sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  ScalarExpr term() {
    ScalarExpr lhs = factor();
    for (;;) {
      if (accept('*')) {
        lhs = ScalarExpr::binary(Op::Mul, lhs, factor());
      } else if (accept('/')) {
        lhs = ScalarExpr::binary(Op::Div, lhs, factor());
      } else {
        return lhs;
      }
    }
  }

  ScalarExpr factor() {
    if (accept('-')) return ScalarExpr::unary(Op::Neg, factor());
    ScalarExpr b = base();
    if (accept('^')) {
      skip_ws();
      double sign = 1.0;
      if (accept('-')) {
        sign = -1.0;
      } else {
        accept('+');
      }
      skip_ws();
      const std::size_t at = pos_;
      double p = 0.0;
      if (!number(p)) throw ParseError("exponent must be a numeric constant", at);
      b = ScalarExpr::power(b, sign * p);
    }
    return b;
  }

  bool number(double& out) {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.')) {
      ++pos_;
    }
    if (pos_ == start) return false;
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
      if (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) {
        while (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) ++p;
        pos_ = p;
      }
    }
    auto res = std::from_chars(src_.data() + start, src_.data() + pos_, out);
    if (res.ec != std::errc() || res.ptr != src_.data() + pos_) {
      throw ParseError("malformed number '" + std::string(src_.substr(start, pos_ - start)) + "'",
                       start);
    }
    return true;
  }

  ScalarExpr base() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
    const std::size_t start = pos_;
    const char c = src_[pos_];
    double value = 0.0;
    if (number(value)) return ScalarExpr(value);
    if (c == '(') {
      ++pos_;
      ScalarExpr inner = expr();
      expect(')');
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        ++pos_;
      }
      const std::string_view name = src_.substr(start, pos_ - start);
      Op fn{};
      if (lookup_function(name, fn)) {
        skip_ws();
        if (pos_ >= src_.size() || src_[pos_] != '(') {
          throw ParseError("expected '(' after function '" + std::string(name) + "'", pos_);
        }
        ++pos_;
        ScalarExpr arg = expr();
        expect(')');
        return ScalarExpr::unary(fn, arg);
      }
      for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (coords_[i] == name) return ScalarExpr::coordinate(static_cast<int>(i));
      }
      throw UnknownIdentifierError(std::string(name), start);
    }
    throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
  }

  std::string_view src_;
  std::span<const std::string> coords_;
  std::size_t pos_ = 0;
};

[[noreturn]] void domain(const std::string& what) { throw DomainError(what); }

}  // namespace

ParseError::ParseError(std::string message, std::size_t position)
    : std::runtime_error("parse error at column " + std::to_string(position + 1) + ": " +
                         message),
      detail_(std::move(message)),
      position_(position) {}

UnknownIdentifierError::UnknownIdentifierError(std::string token, std::size_t position)
    : ParseError("unknown identifier '" + token + "'", position), token_(std::move(token)) {}

ScalarExpr::ScalarExpr() : ScalarExpr(0.0) {}

ScalarExpr::ScalarExpr(double value) {
  auto n = std::make_shared<Node>();
  n->op = Op::Constant;
  n->number = value;
  node_ = std::move(n);
}

ScalarExpr::ScalarExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

ScalarExpr ScalarExpr::coordinate(int index) {
  auto n = std::make_shared<Node>();
  n->op = Op::Coordinate;
  n->coord = index;
  return ScalarExpr(std::shared_ptr<const Node>(std::move(n)));
}

ScalarExpr ScalarExpr::unary(Op op, ScalarExpr arg) {
  if (op == Op::Neg && arg.op() == Op::Constant) return ScalarExpr(-arg.number());
  auto n = std::make_shared<Node>();
  n->op = op;
  n->a = std::move(arg);
  return ScalarExpr(std::shared_ptr<const Node>(std::move(n)));
}

ScalarExpr ScalarExpr::binary(Op op, ScalarExpr lhs, ScalarExpr rhs) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->a = std::move(lhs);
  n->b = std::move(rhs);
  return ScalarExpr(std::shared_ptr<const Node>(std::move(n)));
}

ScalarExpr ScalarExpr::power(ScalarExpr base, double exponent) {
  auto n = std::make_shared<Node>();
  n->op = Op::Pow;
  n->number = exponent;
  n->a = std::move(base);
  return ScalarExpr(std::shared_ptr<const Node>(std::move(n)));
}

ScalarExpr::Op ScalarExpr::op() const { return node_->op; }
double ScalarExpr::number() const { return node_->number; }
int ScalarExpr::coordinate_index() const { return node_->coord; }
const ScalarExpr& ScalarExpr::lhs() const { return node_->a.value(); }
const ScalarExpr& ScalarExpr::rhs() const { return node_->b.value(); }

bool ScalarExpr::is_constant(double value) const {
  return op() == Op::Constant && number() == value;
}

int ScalarExpr::max_coordinate() const {
  switch (op()) {
    case Op::Constant: return -1;
    case Op::Coordinate: return coordinate_index();
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div: return std::max(lhs().max_coordinate(), rhs().max_coordinate());
    default: return lhs().max_coordinate();
  }
}

double ScalarExpr::evaluate(std::span<const double> point) const {
  switch (op()) {
    case Op::Constant: return number();
    case Op::Coordinate: return point[static_cast<std::size_t>(coordinate_index())];
    case Op::Neg: return -lhs().evaluate(point);
    case Op::Exp: return std::exp(lhs().evaluate(point));
    case Op::Ln: {
      const double v = lhs().evaluate(point);
      if (!(v > 0.0)) domain("ln of non-positive value " + std::to_string(v));
      return std::log(v);
    }
    case Op::Sqrt: {
      const double v = lhs().evaluate(point);
      if (v < 0.0) domain("sqrt of negative value " + std::to_string(v));
      return std::sqrt(v);
    }
    case Op::Sin: return std::sin(lhs().evaluate(point));
    case Op::Cos: return std::cos(lhs().evaluate(point));
    case Op::Add: return lhs().evaluate(point) + rhs().evaluate(point);
    case Op::Sub: return lhs().evaluate(point) - rhs().evaluate(point);
    case Op::Mul: return lhs().evaluate(point) * rhs().evaluate(point);
    case Op::Div: {
      const double d = rhs().evaluate(point);
      if (d == 0.0) domain("division by zero");
      return lhs().evaluate(point) / d;
    }
    case Op::Pow: {
      const double v = lhs().evaluate(point);
      const double p = number();
      if (v < 0.0 && p != std::round(p)) domain("non-integer power of a negative value");
      if (v == 0.0 && p < 0.0) domain("negative power of zero");
      return std::pow(v, p);
    }
  }
  return 0.0;
}

Jet ScalarExpr::compose(std::span<const Jet> args) const {
  if (args.empty()) throw std::invalid_argument("compose: no coordinate jets supplied");
  switch (op()) {
    case Op::Constant: return args[0].constant(number());
    case Op::Coordinate: {
      const auto i = static_cast<std::size_t>(coordinate_index());
      if (i >= args.size()) throw std::out_of_range("compose: coordinate index out of range");
      return args[i];
    }
    case Op::Neg: return -lhs().compose(args);
    case Op::Exp: return exp(lhs().compose(args));
    case Op::Ln: return log(lhs().compose(args));
    case Op::Sqrt: return sqrt(lhs().compose(args));
    case Op::Sin: return sin(lhs().compose(args));
    case Op::Cos: return cos(lhs().compose(args));
    case Op::Add: return lhs().compose(args) + rhs().compose(args);
    case Op::Sub: return lhs().compose(args) - rhs().compose(args);
    case Op::Mul: return lhs().compose(args) * rhs().compose(args);
    case Op::Div: return lhs().compose(args) / rhs().compose(args);
    case Op::Pow: return pow(lhs().compose(args), number());
  }
  return args[0].constant(0.0);
}

std::string ScalarExpr::to_string(std::span<const std::string> coords) const {
  switch (op()) {
    case Op::Constant: {
      const std::string s = format_number(number());
      return number() < 0.0 ? "(" + s + ")" : s;
    }
    case Op::Coordinate: {
      const auto i = static_cast<std::size_t>(coordinate_index());
      return i < coords.size() ? coords[i] : "x" + std::to_string(i);
    }
    case Op::Neg: return "(-" + lhs().to_string(coords) + ")";
    case Op::Exp:
    case Op::Ln:
    case Op::Sqrt:
    case Op::Sin:
    case Op::Cos:
      return std::string(function_name(op())) + "(" + lhs().to_string(coords) + ")";
    case Op::Add: return "(" + lhs().to_string(coords) + " + " + rhs().to_string(coords) + ")";
    case Op::Sub: return "(" + lhs().to_string(coords) + " - " + rhs().to_string(coords) + ")";
    case Op::Mul: return "(" + lhs().to_string(coords) + " * " + rhs().to_string(coords) + ")";
    case Op::Div: return "(" + lhs().to_string(coords) + " / " + rhs().to_string(coords) + ")";
    case Op::Pow: {
      std::string b = lhs().to_string(coords);
      if (lhs().op() == Op::Pow) b = "(" + b + ")";
      return b + "^" + format_number(number());
    }
  }
  return {};
}

bool operator==(const ScalarExpr& a, const ScalarExpr& b) {
  if (a.node_ == b.node_) return true;
  if (a.op() != b.op()) return false;
  switch (a.op()) {
    case Op::Constant: return a.number() == b.number();
    case Op::Coordinate: return a.coordinate_index() == b.coordinate_index();
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    case Op::Pow: return a.number() == b.number() && a.lhs() == b.lhs();
    default: return a.lhs() == b.lhs();
  }
}

ScalarExpr operator+(ScalarExpr a, ScalarExpr b) {
  return ScalarExpr::binary(Op::Add, std::move(a), std::move(b));
}
ScalarExpr operator-(ScalarExpr a, ScalarExpr b) {
  return ScalarExpr::binary(Op::Sub, std::move(a), std::move(b));
}
ScalarExpr operator*(ScalarExpr a, ScalarExpr b) {
  return ScalarExpr::binary(Op::Mul, std::move(a), std::move(b));
}
ScalarExpr operator/(ScalarExpr a, ScalarExpr b) {
  return ScalarExpr::binary(Op::Div, std::move(a), std::move(b));
}
ScalarExpr operator-(ScalarExpr a) { return ScalarExpr::unary(Op::Neg, std::move(a)); }

ScalarExpr parse_expr(std::string_view source, std::span<const std::string> coords) {
  return Parser(source, coords).parse();
}

std::vector<Jet> coordinate_jets(std::span<const double> point, int order) {
  const int n = static_cast<int>(point.size());
  auto space = JetSpace::get(n, order);
  std::vector<Jet> vars;
  vars.reserve(point.size());
  for (int i = 0; i < n; ++i) vars.push_back(Jet::variable(space, order, i, point[i]));
  return vars;
}

Jet jet_eval(const ScalarExpr& expr, std::span<const double> point, int order) {
  if (order < 0) throw std::invalid_argument("jet_eval: negative order");
  if (expr.max_coordinate() >= static_cast<int>(point.size())) {
    throw std::out_of_range("jet_eval: expression references a coordinate outside the point");
  }
  const auto vars = coordinate_jets(point, order);
  return expr.compose(vars);
}

}  // namespace paracontact
