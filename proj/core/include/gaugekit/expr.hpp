#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gaugekit {

//! Kinds of independent variable an expression may depend on.
//
//  Field potentials only use `coordinate` (contravariant x^mu). The bracket
//  engine extends the same trees to phase space with covariant momenta pi_mu
//  and internal (isospin) coordinates I^a.
enum class VarKind : std::uint8_t { coordinate, momentum, isospin };

struct Variable {
  VarKind kind = VarKind::coordinate;
  int index = 0;

  friend bool operator==(const Variable&, const Variable&) = default;
};

//! Named real parameters referenced by expressions (e.g. a field magnitude B).
class ParamSet {
 public:
  ParamSet() = default;
  ParamSet(std::initializer_list<std::pair<const std::string, double>> values);

  // Throws std::invalid_argument for a non-identifier name or non-finite value.
  void set(const std::string& name, double value);

  std::optional<double> find(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name).has_value(); }
  // Throws MissingParameterError.
  double at(std::string_view name) const;

  const std::map<std::string, double, std::less<>>& values() const noexcept { return values_; }

 private:
  std::map<std::string, double, std::less<>> values_;
};

enum class NodeKind : std::uint8_t {
  constant,
  variable,
  parameter,
  negate,
  add,
  subtract,
  multiply,
  divide,
  power,
  sin,
  cos,
  exp,
  sqrt,
};

//! Immutable scalar expression tree.
//
//  Copies share structure. The arithmetic operators and math functions fold
//  constants and drop additive/multiplicative identities, which keeps
//  repeated derivatives small; the `unary`/`binary`/`power` factories build
//  nodes verbatim and are what the parser uses.
class Expr {
 public:
  Expr();  // constant 0
  Expr(double value);  // NOLINT(google-explicit-constructor)

  static Expr constant(double value);
  static Expr variable(Variable v);
  static Expr coordinate(int mu);
  static Expr momentum(int mu);
  static Expr isospin(int a);
  static Expr parameter(std::string name);

  static Expr unary(NodeKind kind, Expr arg, std::ptrdiff_t offset = -1);
  static Expr binary(NodeKind kind, Expr lhs, Expr rhs, std::ptrdiff_t offset = -1);
  static Expr power(Expr base, int exponent, std::ptrdiff_t offset = -1);

  NodeKind kind() const;
  double constant_value() const;
  Variable variable() const;
  const std::string& parameter_name() const;
  int exponent() const;
  std::size_t arity() const;
  const Expr& child(std::size_t i) const;
  // Byte offset in the parsed source, or -1 for synthesized nodes.
  std::ptrdiff_t source_offset() const;

  bool is_constant() const { return kind() == NodeKind::constant; }
  bool is_zero() const { return is_constant() && constant_value() == 0.0; }
  bool is_one() const { return is_constant() && constant_value() == 1.0; }

  // Number of nodes counting shared subtrees once.
  std::size_t node_count() const;
  bool depends_on(Variable v) const;
  void collect_parameters(std::set<std::string>& out) const;

  // Fully parenthesized text that `parse` reads back to an equivalent tree
  // (for coordinate-only expressions). Output longer than `max_length` is
  // truncated with "...".
  std::string to_string(std::size_t max_length = static_cast<std::size_t>(-1)) const;

  // Identity of the shared node; used for memoization.
  const void* id() const noexcept { return node_.get(); }

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

Expr operator-(const Expr& a);
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr pow(const Expr& base, int exponent);
Expr sin(const Expr& a);
Expr cos(const Expr& a);
Expr exp(const Expr& a);
Expr sqrt(const Expr& a);

// Throws ParseError (see ParseError::offset).
Expr parse(std::string_view source);

// Exact symbolic derivative.
Expr differentiate(const Expr& e, Variable v);
// Derivative with respect to the contravariant coordinate x^mu.
Expr differentiate(const Expr& e, int mu);

//! Values of every variable kind at one point.
struct VariableValues {
  std::span<const double> x;         // x^0..x^3
  std::span<const double> momentum;  // pi_0..pi_3
  std::span<const double> isospin;   // I^1..I^n (0-based storage)
};

//! Flattened, parameter-bound form of one or more Exprs for repeated
//  evaluation.
//
//  All outputs share one instruction tape, so subtrees common to several
//  outputs (typical of derivative tables) are evaluated once per call. Every
//  intermediate is checked for finiteness; a failure raises DomainError
//  naming the offending subexpression and its source offset when known.
//  Binding throws MissingParameterError for a parameter absent from `params`.
class CompiledExpr {
 public:
  CompiledExpr();  // one output, constant 0
  CompiledExpr(const Expr& e, const ParamSet& params);
  CompiledExpr(std::span<const Expr> outputs, const ParamSet& params);

  // First output.
  double operator()(const VariableValues& v) const;
  double operator()(std::span<const double, 4> x) const;
  // All outputs; `out.size()` must equal output_count().
  void evaluate_into(const VariableValues& v, std::span<double> out) const;

  std::size_t output_count() const noexcept { return outputs_.size(); }
  std::size_t size() const noexcept { return code_.size(); }

 private:
  struct Instruction {
    NodeKind op;
    VarKind var_kind;
    int operand0;  // register or variable index
    int operand1;
    int exponent;
    double value;
  };

  [[noreturn]] void fail(std::size_t instruction, double value) const;
  const double* run(const VariableValues& v) const;

  std::vector<Instruction> code_;
  std::vector<Expr> origin_;
  std::vector<int> outputs_;
};

// Convenience evaluation; compiles on every call.
double evaluate(const Expr& e, std::span<const double, 4> x, const ParamSet& params = {});
double evaluate(const Expr& e, const VariableValues& values, const ParamSet& params = {});

}  // namespace gaugekit
