#include "gaugekit/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "gaugekit/error.hpp"

namespace gaugekit {

namespace {

bool is_identifier(std::string_view name) {
  if (name.empty()) return false;
  const auto head = static_cast<unsigned char>(name.front());
  if (!std::isalpha(head) && head != '_') return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    const auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || u == '_';
  });
}

std::size_t arity_of(NodeKind kind) {
  switch (kind) {
    case NodeKind::constant:
    case NodeKind::variable:
    case NodeKind::parameter:
      return 0;
    case NodeKind::negate:
    case NodeKind::power:
    case NodeKind::sin:
    case NodeKind::cos:
    case NodeKind::exp:
    case NodeKind::sqrt:
      return 1;
    case NodeKind::add:
    case NodeKind::subtract:
    case NodeKind::multiply:
    case NodeKind::divide:
      return 2;
  }
  return 0;
}

const char* function_name(NodeKind kind) {
  switch (kind) {
    case NodeKind::sin: return "sin";
    case NodeKind::cos: return "cos";
    case NodeKind::exp: return "exp";
    case NodeKind::sqrt: return "sqrt";
    default: return nullptr;
  }
}

std::string format_number(double v) {
  if (v == std::trunc(v) && std::fabs(v) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.0f", v);
    return buf;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

// ---------------------------------------------------------------------------
// ParamSet

ParamSet::ParamSet(std::initializer_list<std::pair<const std::string, double>> values) {
  for (const auto& [name, value] : values) set(name, value);
}

void ParamSet::set(const std::string& name, double value) {
  if (!is_identifier(name)) throw std::invalid_argument("invalid parameter name: '" + name + "'");
  const bool coordinate_like = name.size() > 1 && name[0] == 'x' &&
                               name.find_first_not_of("0123456789", 1) == std::string::npos;
  if (coordinate_like || name == "sin" || name == "cos" || name == "exp" || name == "sqrt") {
    throw std::invalid_argument("parameter name '" + name + "' is reserved");
  }
  if (!std::isfinite(value)) throw std::invalid_argument("parameter " + name + " is not finite");
  values_[name] = value;
}

std::optional<double> ParamSet::find(std::string_view name) const {
  const auto it = values_.find(name);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

double ParamSet::at(std::string_view name) const {
  if (auto v = find(name)) return *v;
  throw MissingParameterError(std::string(name));
}

// ---------------------------------------------------------------------------
// Expr nodes

struct Expr::Node {
  NodeKind kind = NodeKind::constant;
  double value = 0.0;
  Variable var{};
  int exponent = 0;
  std::string name;
  std::array<Expr, 2> args;
  std::ptrdiff_t offset = -1;
};

Expr::Expr() : Expr(0.0) {}

Expr::Expr(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("expression constant is not finite");
  auto n = std::make_shared<Node>(Node{NodeKind::constant, value, {}, 0, {}, {Expr(nullptr), Expr(nullptr)}, -1});
  node_ = std::move(n);
}

Expr Expr::constant(double value) { return Expr(value); }

Expr Expr::variable(Variable v) {
  if (v.index < 0 || (v.kind != VarKind::isospin && v.index > 3)) {
    throw std::out_of_range("variable index out of range: " + std::to_string(v.index));
  }
  auto n = std::make_shared<Node>(Node{NodeKind::variable, 0.0, v, 0, {}, {Expr(nullptr), Expr(nullptr)}, -1});
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::coordinate(int mu) { return variable({VarKind::coordinate, mu}); }
Expr Expr::momentum(int mu) { return variable({VarKind::momentum, mu}); }
Expr Expr::isospin(int a) { return variable({VarKind::isospin, a}); }

Expr Expr::parameter(std::string name) {
  if (!is_identifier(name)) throw std::invalid_argument("invalid parameter name: '" + name + "'");
  const bool coordinate_like = name.size() > 1 && name[0] == 'x' &&
                               name.find_first_not_of("0123456789", 1) == std::string::npos;
  if (coordinate_like || name == "sin" || name == "cos" || name == "exp" || name == "sqrt") {
    throw std::invalid_argument("parameter name '" + name + "' is reserved");
  }
  auto n = std::make_shared<Node>(Node{NodeKind::parameter, 0.0, {}, 0, std::move(name), {Expr(nullptr), Expr(nullptr)}, -1});
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::unary(NodeKind kind, Expr arg, std::ptrdiff_t offset) {
  if (arity_of(kind) != 1 || kind == NodeKind::power) {
    throw std::invalid_argument("Expr::unary: not a unary node kind");
  }
  auto n = std::make_shared<Node>(Node{kind, 0.0, {}, 0, {}, {std::move(arg), Expr(nullptr)}, offset});
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::binary(NodeKind kind, Expr lhs, Expr rhs, std::ptrdiff_t offset) {
  if (arity_of(kind) != 2) throw std::invalid_argument("Expr::binary: not a binary node kind");
  auto n = std::make_shared<Node>(Node{kind, 0.0, {}, 0, {}, {std::move(lhs), std::move(rhs)}, offset});
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::power(Expr base, int exponent, std::ptrdiff_t offset) {
  auto n = std::make_shared<Node>(Node{NodeKind::power, 0.0, {}, exponent, {}, {std::move(base), Expr(nullptr)}, offset});
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

NodeKind Expr::kind() const { return node_->kind; }
double Expr::constant_value() const { return node_->value; }
Variable Expr::variable() const { return node_->var; }
const std::string& Expr::parameter_name() const { return node_->name; }
int Expr::exponent() const { return node_->exponent; }
std::size_t Expr::arity() const { return arity_of(node_->kind); }
std::ptrdiff_t Expr::source_offset() const { return node_->offset; }

const Expr& Expr::child(std::size_t i) const {
  if (i >= arity()) throw std::out_of_range("Expr::child");
  return node_->args[i];
}

std::size_t Expr::node_count() const {
  std::unordered_set<const void*> seen;
  std::vector<const Expr*> stack{this};
  while (!stack.empty()) {
    const Expr* e = stack.back();
    stack.pop_back();
    if (!seen.insert(e->id()).second) continue;
    for (std::size_t i = 0; i < e->arity(); ++i) stack.push_back(&e->child(i));
  }
  return seen.size();
}

bool Expr::depends_on(Variable v) const {
  std::unordered_set<const void*> seen;
  std::vector<const Expr*> stack{this};
  while (!stack.empty()) {
    const Expr* e = stack.back();
    stack.pop_back();
    if (!seen.insert(e->id()).second) continue;
    if (e->kind() == NodeKind::variable && e->variable() == v) return true;
    for (std::size_t i = 0; i < e->arity(); ++i) stack.push_back(&e->child(i));
  }
  return false;
}

void Expr::collect_parameters(std::set<std::string>& out) const {
  std::unordered_set<const void*> seen;
  std::vector<const Expr*> stack{this};
  while (!stack.empty()) {
    const Expr* e = stack.back();
    stack.pop_back();
    if (!seen.insert(e->id()).second) continue;
    if (e->kind() == NodeKind::parameter) out.insert(e->parameter_name());
    for (std::size_t i = 0; i < e->arity(); ++i) stack.push_back(&e->child(i));
  }
}

namespace {

void write_expr(const Expr& e, std::string& out, std::size_t limit) {
  if (out.size() >= limit) return;
  auto sub = [&](const Expr& c) { write_expr(c, out, limit); };
  switch (e.kind()) {
    case NodeKind::constant: {
      const double v = e.constant_value();
      if (v < 0 || (v == 0 && std::signbit(v))) {
        out += "(-" + format_number(-v) + ")";
      } else {
        out += format_number(v);
      }
      return;
    }
    case NodeKind::variable: {
      const Variable v = e.variable();
      switch (v.kind) {
        case VarKind::coordinate: out += "x" + std::to_string(v.index); return;
        case VarKind::momentum: out += "pi_" + std::to_string(v.index); return;
        case VarKind::isospin: out += "I_" + std::to_string(v.index + 1); return;
      }
      return;
    }
    case NodeKind::parameter: out += e.parameter_name(); return;
    case NodeKind::negate:
      out += "(-";
      sub(e.child(0));
      out += ")";
      return;
    case NodeKind::add:
    case NodeKind::subtract:
    case NodeKind::multiply:
    case NodeKind::divide: {
      const char* op = e.kind() == NodeKind::add        ? " + "
                       : e.kind() == NodeKind::subtract ? " - "
                       : e.kind() == NodeKind::multiply ? "*"
                                                        : "/";
      out += "(";
      sub(e.child(0));
      out += op;
      sub(e.child(1));
      out += ")";
      return;
    }
    case NodeKind::power:
      out += "(";
      sub(e.child(0));
      out += "^" + std::to_string(e.exponent()) + ")";
      return;
    case NodeKind::sin:
    case NodeKind::cos:
    case NodeKind::exp:
    case NodeKind::sqrt:
      out += function_name(e.kind());
      out += "(";
      sub(e.child(0));
      out += ")";
      return;
  }
}

}  // namespace

std::string Expr::to_string(std::size_t max_length) const {
  std::string out;
  write_expr(*this, out, max_length);
  if (out.size() > max_length) {
    out.resize(max_length);
    out += "...";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Folding arithmetic

Expr operator-(const Expr& a) {
  if (a.is_constant()) return Expr(-a.constant_value());
  if (a.kind() == NodeKind::negate) return a.child(0);
  return Expr::unary(NodeKind::negate, a);
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.is_constant() && b.is_constant()) return Expr(a.constant_value() + b.constant_value());
  return Expr::binary(NodeKind::add, a, b);
}

Expr operator-(const Expr& a, const Expr& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return -b;
  if (a.is_constant() && b.is_constant()) return Expr(a.constant_value() - b.constant_value());
  return Expr::binary(NodeKind::subtract, a, b);
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_zero() || b.is_zero()) return Expr(0.0);
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  if (a.is_constant() && b.is_constant()) return Expr(a.constant_value() * b.constant_value());
  if (a.is_constant() && a.constant_value() == -1.0) return -b;
  if (b.is_constant() && b.constant_value() == -1.0) return -a;
  return Expr::binary(NodeKind::multiply, a, b);
}

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_one()) return a;
  if (a.is_zero() && !b.is_zero()) return Expr(0.0);
  if (a.is_constant() && b.is_constant() && b.constant_value() != 0.0) {
    const double q = a.constant_value() / b.constant_value();
    if (std::isfinite(q)) return Expr(q);
  }
  return Expr::binary(NodeKind::divide, a, b);
}

Expr pow(const Expr& base, int exponent) {
  if (exponent == 0) return Expr(1.0);
  if (exponent == 1) return base;
  if (base.is_constant()) {
    const double v = std::pow(base.constant_value(), exponent);
    if (std::isfinite(v)) return Expr(v);
  }
  return Expr::power(base, exponent);
}

namespace {
Expr fold_function(NodeKind kind, const Expr& a, double (*fn)(double)) {
  if (a.is_constant()) {
    const double v = fn(a.constant_value());
    if (std::isfinite(v)) return Expr(v);
  }
  return Expr::unary(kind, a);
}
}  // namespace

Expr sin(const Expr& a) { return fold_function(NodeKind::sin, a, [](double v) { return std::sin(v); }); }
Expr cos(const Expr& a) { return fold_function(NodeKind::cos, a, [](double v) { return std::cos(v); }); }
Expr exp(const Expr& a) { return fold_function(NodeKind::exp, a, [](double v) { return std::exp(v); }); }
Expr sqrt(const Expr& a) { return fold_function(NodeKind::sqrt, a, [](double v) { return std::sqrt(v); }); }

// ---------------------------------------------------------------------------
// Differentiation

namespace {

class Differentiator {
 public:
  explicit Differentiator(Variable v) : var_(v) {}

  Expr operator()(const Expr& e) {
    if (auto it = memo_.find(e.id()); it != memo_.end()) return it->second;
    Expr d = derive(e);
    memo_.emplace(e.id(), d);
    return d;
  }

 private:
  Expr derive(const Expr& e) {
    switch (e.kind()) {
      case NodeKind::constant:
      case NodeKind::parameter:
        return Expr(0.0);
      case NodeKind::variable:
        return Expr(e.variable() == var_ ? 1.0 : 0.0);
      case NodeKind::negate:
        return -(*this)(e.child(0));
      case NodeKind::add:
        return (*this)(e.child(0)) + (*this)(e.child(1));
      case NodeKind::subtract:
        return (*this)(e.child(0)) - (*this)(e.child(1));
      case NodeKind::multiply: {
        const Expr& a = e.child(0);
        const Expr& b = e.child(1);
        return (*this)(a) * b + a * (*this)(b);
      }
      case NodeKind::divide: {
        const Expr& a = e.child(0);
        const Expr& b = e.child(1);
        const Expr da = (*this)(a);
        const Expr db = (*this)(b);
        if (db.is_zero()) return da / b;
        return (da * b - a * db) / pow(b, 2);
      }
      case NodeKind::power: {
        const Expr& a = e.child(0);
        const int n = e.exponent();
        return Expr(static_cast<double>(n)) * pow(a, n - 1) * (*this)(a);
      }
      case NodeKind::sin:
        return cos(e.child(0)) * (*this)(e.child(0));
      case NodeKind::cos:
        return -(sin(e.child(0)) * (*this)(e.child(0)));
      case NodeKind::exp:
        return e * (*this)(e.child(0));
      case NodeKind::sqrt:
        return (*this)(e.child(0)) / (Expr(2.0) * e);
    }
    throw std::logic_error("differentiate: unknown node kind");
  }

  Variable var_;
  std::unordered_map<const void*, Expr> memo_;
};

}  // namespace

Expr differentiate(const Expr& e, Variable v) { return Differentiator(v)(e); }

Expr differentiate(const Expr& e, int mu) {
  if (mu < 0 || mu > 3) throw std::out_of_range("coordinate index outside 0..3");
  return differentiate(e, Variable{VarKind::coordinate, mu});
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  Expr parse_all() {
    Expr e = parse_expr();
    skip_space();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, ParseError::Kind kind = ParseError::Kind::syntax) const {
    throw ParseError(kind, msg, pos_);
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    for (;;) {
      skip_space();
      const auto at = static_cast<std::ptrdiff_t>(pos_);
      if (accept('+')) {
        lhs = Expr::binary(NodeKind::add, lhs, parse_term(), at);
      } else if (accept('-')) {
        lhs = Expr::binary(NodeKind::subtract, lhs, parse_term(), at);
      } else {
        return lhs;
      }
    }
  }

  Expr parse_term() {
    Expr lhs = parse_unary();
    for (;;) {
      skip_space();
      const auto at = static_cast<std::ptrdiff_t>(pos_);
      if (accept('*')) {
        lhs = Expr::binary(NodeKind::multiply, lhs, parse_unary(), at);
      } else if (accept('/')) {
        lhs = Expr::binary(NodeKind::divide, lhs, parse_unary(), at);
      } else {
        return lhs;
      }
    }
  }

  // '^' binds tighter than unary minus: -x^2 == -(x^2).
  Expr parse_unary() {
    skip_space();
    const auto at = static_cast<std::ptrdiff_t>(pos_);
    if (accept('-')) return Expr::unary(NodeKind::negate, parse_unary(), at);
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    skip_space();
    const auto at = static_cast<std::ptrdiff_t>(pos_);
    if (accept('^')) return Expr::power(base, parse_exponent(), at);
    return base;
  }

  // Integer exponent, right-associative: x^2^3 == x^8.
  int parse_exponent() {
    skip_space();
    const std::size_t start = pos_;
    bool negative = false;
    if (pos_ < src_.size() && (src_[pos_] == '-' || src_[pos_] == '+')) {
      negative = src_[pos_] == '-';
      ++pos_;
    }
    long long value = 0;
    const char* first = src_.data() + pos_;
    const char* last = src_.data() + src_.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr == first) fail("expected integer exponent");
    pos_ += static_cast<std::size_t>(ptr - first);
    if (pos_ < src_.size() && (src_[pos_] == '.' || src_[pos_] == 'e' || src_[pos_] == 'E')) {
      pos_ = start;
      fail("exponent must be an integer");
    }
    if (negative) value = -value;
    skip_space();
    if (accept('^')) {
      const int inner = parse_exponent();
      if (inner < 0) {
        if (value != 1 && value != -1) fail("exponent must be an integer");
        value = (inner % 2 == 0) ? 1 : value;
      } else {
        long long r = 1;
        for (int i = 0; i < inner; ++i) {
          r *= value;
          if (r > std::numeric_limits<int>::max() || r < std::numeric_limits<int>::min()) {
            fail("exponent out of range");
          }
        }
        value = r;
      }
    }
    if (value > std::numeric_limits<int>::max() || value < std::numeric_limits<int>::min()) {
      fail("exponent out of range");
    }
    return static_cast<int>(value);
  }

  Expr parse_primary() {
    skip_space();
    if (pos_ >= src_.size()) fail("expected expression");
    const char c = src_[pos_];
    const auto at = static_cast<std::ptrdiff_t>(pos_);
    if (c == '(') {
      ++pos_;
      Expr inner = parse_expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        ++pos_;
      }
      const std::string_view name = src_.substr(start, pos_ - start);
      skip_space();
      if (pos_ < src_.size() && src_[pos_] == '(') {
        NodeKind kind;
        if (name == "sin") kind = NodeKind::sin;
        else if (name == "cos") kind = NodeKind::cos;
        else if (name == "exp") kind = NodeKind::exp;
        else if (name == "sqrt") kind = NodeKind::sqrt;
        else {
          pos_ = start;
          fail("unknown function '" + std::string(name) + "'", ParseError::Kind::unknown_function);
        }
        ++pos_;
        Expr arg = parse_expr();
        if (!accept(')')) fail("expected ')'");
        return Expr::unary(kind, arg, at);
      }
      if (name.size() >= 2 && name[0] == 'x' &&
          std::all_of(name.begin() + 1, name.end(), [](char d) { return d >= '0' && d <= '9'; })) {
        if (name.size() != 2 || name[1] > '3') {
          pos_ = start;
          fail("coordinate index outside 0..3: '" + std::string(name) + "'",
               ParseError::Kind::coordinate_index);
        }
        return Expr::coordinate(name[1] - '0');
      }
      return Expr::parameter(std::string(name));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Expr parse_number() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.')) ++pos_;
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
      if (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) {
        pos_ = p;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      }
    }
    double value = 0.0;
    const char* first = src_.data() + start;
    const char* last = src_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
      pos_ = start;
      fail("malformed number");
    }
    return Expr::constant(value);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view source) { return Parser(source).parse_all(); }

// ---------------------------------------------------------------------------
// Compiled evaluation

CompiledExpr::CompiledExpr() : CompiledExpr(Expr(0.0), ParamSet{}) {}

CompiledExpr::CompiledExpr(const Expr& e, const ParamSet& params)
    : CompiledExpr(std::span<const Expr>(&e, 1), params) {}

CompiledExpr::CompiledExpr(std::span<const Expr> outputs, const ParamSet& params) {
  std::unordered_map<const void*, int> reg;
  // Iterative post-order so deep derivative trees cannot overflow the stack.
  struct Frame {
    const Expr* e;
    bool expanded;
  };
  for (const Expr& root : outputs) {
    std::vector<Frame> stack{{&root, false}};
    while (!stack.empty()) {
      Frame f = stack.back();
      stack.pop_back();
      if (reg.count(f.e->id())) continue;
      if (!f.expanded && f.e->arity() > 0) {
        stack.push_back({f.e, true});
        for (std::size_t i = f.e->arity(); i-- > 0;) stack.push_back({&f.e->child(i), false});
        continue;
      }
      Instruction ins{f.e->kind(), VarKind::coordinate, -1, -1, 0, 0.0};
      switch (f.e->kind()) {
        case NodeKind::constant:
          ins.value = f.e->constant_value();
          break;
        case NodeKind::parameter:
          ins.op = NodeKind::constant;
          ins.value = params.at(f.e->parameter_name());
          break;
        case NodeKind::variable:
          ins.var_kind = f.e->variable().kind;
          ins.operand0 = f.e->variable().index;
          break;
        case NodeKind::power:
          ins.exponent = f.e->exponent();
          ins.operand0 = reg.at(f.e->child(0).id());
          break;
        default:
          ins.operand0 = reg.at(f.e->child(0).id());
          if (f.e->arity() == 2) ins.operand1 = reg.at(f.e->child(1).id());
          break;
      }
      reg.emplace(f.e->id(), static_cast<int>(code_.size()));
      code_.push_back(ins);
      origin_.push_back(*f.e);
    }
    outputs_.push_back(reg.at(root.id()));
  }
}

void CompiledExpr::fail(std::size_t instruction, double value) const {
  const Expr& where = origin_[instruction];
  std::string msg = "domain error: '" + where.to_string(160) + "' evaluates to " + (std::isnan(value) ? std::string("nan") : std::to_string(value));
  if (where.source_offset() >= 0) msg += " (source offset " + std::to_string(where.source_offset()) + ")";
  throw DomainError(msg);
}

const double* CompiledExpr::run(const VariableValues& v) const {
  thread_local std::vector<double> regs;
  if (regs.size() < code_.size()) regs.resize(code_.size());
  for (std::size_t i = 0; i < code_.size(); ++i) {
    const Instruction& ins = code_[i];
    double r = 0.0;
    switch (ins.op) {
      case NodeKind::constant:
      case NodeKind::parameter:
        r = ins.value;
        break;
      case NodeKind::variable: {
        const auto idx = static_cast<std::size_t>(ins.operand0);
        std::span<const double> src;
        switch (ins.var_kind) {
          case VarKind::coordinate: src = v.x; break;
          case VarKind::momentum: src = v.momentum; break;
          case VarKind::isospin: src = v.isospin; break;
        }
        if (idx >= src.size()) throw std::out_of_range("variable not supplied: " + origin_[i].to_string(40));
        r = src[idx];
        break;
      }
      case NodeKind::negate: r = -regs[ins.operand0]; break;
      case NodeKind::add: r = regs[ins.operand0] + regs[ins.operand1]; break;
      case NodeKind::subtract: r = regs[ins.operand0] - regs[ins.operand1]; break;
      case NodeKind::multiply: r = regs[ins.operand0] * regs[ins.operand1]; break;
      case NodeKind::divide:
        if (regs[ins.operand1] == 0.0) fail(i, regs[ins.operand0] / regs[ins.operand1]);
        r = regs[ins.operand0] / regs[ins.operand1];
        break;
      case NodeKind::power: {
        const double b = regs[ins.operand0];
        const int n = ins.exponent;
        if (n == 2) r = b * b;
        else if (n == 3) r = b * b * b;
        else r = std::pow(b, n);
        break;
      }
      case NodeKind::sin: r = std::sin(regs[ins.operand0]); break;
      case NodeKind::cos: r = std::cos(regs[ins.operand0]); break;
      case NodeKind::exp: r = std::exp(regs[ins.operand0]); break;
      case NodeKind::sqrt:
        if (regs[ins.operand0] < 0.0) fail(i, std::sqrt(regs[ins.operand0]));
        r = std::sqrt(regs[ins.operand0]);
        break;
    }
    if (!std::isfinite(r)) fail(i, r);
    regs[i] = r;
  }
  return regs.data();
}

double CompiledExpr::operator()(const VariableValues& v) const { return run(v)[outputs_.front()]; }

void CompiledExpr::evaluate_into(const VariableValues& v, std::span<double> out) const {
  if (out.size() != outputs_.size()) throw std::invalid_argument("CompiledExpr: output size mismatch");
  const double* regs = run(v);
  for (std::size_t i = 0; i < outputs_.size(); ++i) out[i] = regs[outputs_[i]];
}

double CompiledExpr::operator()(std::span<const double, 4> x) const {
  return (*this)(VariableValues{x, {}, {}});
}

double evaluate(const Expr& e, std::span<const double, 4> x, const ParamSet& params) {
  return CompiledExpr(e, params)(x);
}

double evaluate(const Expr& e, const VariableValues& values, const ParamSet& params) {
  return CompiledExpr(e, params)(values);
}

}  // namespace gaugekit
