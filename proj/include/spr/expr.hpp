#pragma once

// Exact symbolic scalar expressions on a coordinate chart.
//
// An Expr is an immutable tree. Trees built by the parser keep their shape;
// trees produced by simplify() (and by arithmetic on already simplified
// operands) are in canonical form: an expanded rational function over the
// coordinate symbols and the elementary-function atoms, reduced by a
// multivariate polynomial gcd. Two equal rational expressions therefore
// simplify to identical trees.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace spr {

namespace detail {
struct Node;
struct RatFunc;
}  // namespace detail

enum class Function { Sin, Cos, Sinh, Cosh, Exp, Ln, Sqrt };

[[nodiscard]] std::string_view function_name(Function f);
[[nodiscard]] std::optional<Function> function_from_name(std::string_view name);

class Expr {
 public:
  enum class Kind { Rational, Symbol, Negation, Sum, Product, Quotient, Power, Apply };

  Expr();  // the constant 0
  Expr(int value);  // NOLINT(google-explicit-constructor)
  Expr(long long value);  // NOLINT(google-explicit-constructor)

  static Expr rational(long long num, long long den);
  /// Exact rational from "p" or "p/q" (arbitrary precision).
  static Expr rational(std::string_view text);
  static Expr symbol(int index, std::string name);
  static Expr apply(Function f, const Expr& arg);

  // Raw tree constructors; no simplification is performed.
  static Expr make_sum(std::vector<Expr> terms);
  static Expr make_product(std::vector<Expr> factors);
  static Expr make_quotient(Expr num, Expr den);
  static Expr make_power(Expr base, int exponent);
  static Expr make_negation(Expr e);

  [[nodiscard]] Kind kind() const;
  [[nodiscard]] const std::vector<Expr>& children() const;
  [[nodiscard]] int symbol_index() const;
  [[nodiscard]] const std::string& symbol_name() const;
  [[nodiscard]] Function function() const;
  [[nodiscard]] int exponent() const;
  /// "p" or "p/q" for Rational nodes.
  [[nodiscard]] std::string rational_text() const;

  /// True when the tree is in canonical (simplified) form.
  [[nodiscard]] bool is_canonical() const;
  /// Canonical form with a zero numerator.
  [[nodiscard]] bool is_symbolic_zero() const;
  /// Value of a canonical expression that is a rational constant.
  [[nodiscard]] std::optional<double> constant_value() const;
  [[nodiscard]] bool is_constant() const;
  [[nodiscard]] bool depends_on(int coord) const;

  [[nodiscard]] std::string str() const;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);
  Expr& operator+=(const Expr& b) { return *this = *this + b; }
  Expr& operator-=(const Expr& b) { return *this = *this - b; }
  Expr& operator*=(const Expr& b) { return *this = *this * b; }
  Expr& operator/=(const Expr& b) { return *this = *this / b; }

  /// Structural identity of the trees.
  friend bool identical(const Expr& a, const Expr& b);

  [[nodiscard]] const detail::Node& node() const { return *node_; }
  explicit Expr(std::shared_ptr<const detail::Node> node) : node_(std::move(node)) {}

 private:
  std::shared_ptr<const detail::Node> node_;
};

/// Integer power; simplified when the base is canonical.
[[nodiscard]] Expr pow(const Expr& base, int exponent);
[[nodiscard]] Expr sin(const Expr& e);
[[nodiscard]] Expr cos(const Expr& e);
[[nodiscard]] Expr sinh(const Expr& e);
[[nodiscard]] Expr cosh(const Expr& e);
[[nodiscard]] Expr exp(const Expr& e);
[[nodiscard]] Expr ln(const Expr& e);
[[nodiscard]] Expr sqrt(const Expr& e);

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at offset " + std::to_string(offset)), offset(offset) {}
  std::size_t offset;
};

struct EvalError : std::runtime_error {
  EvalError(const std::string& what, std::string subexpr)
      : std::runtime_error(what + ": " + subexpr), subexpression(std::move(subexpr)) {}
  std::string subexpression;
};

struct Interval {
  double lo = -1.0;
  double hi = 1.0;
};

/// Coordinate chart: ordered coordinate names, a sampling box and loci that
/// must not vanish at sample points.
class Chart {
 public:
  Chart() = default;
  Chart(std::vector<std::string> names, std::vector<Interval> domain,
        std::vector<Expr> excluded = {});

  [[nodiscard]] int dim() const { return static_cast<int>(names_.size()); }
  [[nodiscard]] const std::vector<std::string>& names() const { return names_; }
  [[nodiscard]] const std::vector<Interval>& domain() const { return domain_; }
  [[nodiscard]] const std::vector<Expr>& excluded() const { return excluded_; }
  [[nodiscard]] Expr coord(int i) const;
  [[nodiscard]] std::optional<int> index_of(std::string_view name) const;
  [[nodiscard]] Expr parse(std::string_view text) const;

  void add_excluded(Expr locus) { excluded_.push_back(std::move(locus)); }

 private:
  std::vector<std::string> names_;
  std::vector<Interval> domain_;
  std::vector<Expr> excluded_;
};

[[nodiscard]] Expr parse(std::string_view text, const Chart& chart);
[[nodiscard]] std::string print(const Expr& e);
[[nodiscard]] Expr simplify(const Expr& e);
[[nodiscard]] Expr differentiate(const Expr& e, int coord);
[[nodiscard]] double eval_at(const Expr& e, std::span<const double> point);
/// Replace coordinate k by values[k]; result is canonical.
[[nodiscard]] Expr substitute(const Expr& e, std::span<const Expr> values);

struct SamplingPlan {
  int samples = 20;
  double tolerance = 1e-9;
  std::uint64_t seed = 0x5eedULL;
};

struct ZeroVerdict {
  enum class Kind { SymbolicZero, NumericZero, Nonzero };
  Kind kind = Kind::SymbolicZero;
  double max_abs = 0.0;
  std::vector<double> witness_point;
  double witness_value = 0.0;
  int samples_used = 0;

  [[nodiscard]] bool zero() const { return kind != Kind::Nonzero; }
};

[[nodiscard]] std::string_view to_string(ZeroVerdict::Kind k);

struct ConfigurationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Deterministic sample points for a chart; reused across zero tests.
class ZeroTester {
 public:
  ZeroTester() = default;
  ZeroTester(const Chart& chart, SamplingPlan plan);

  [[nodiscard]] ZeroVerdict operator()(const Expr& e) const;
  [[nodiscard]] bool zero(const Expr& e) const { return (*this)(e).zero(); }
  [[nodiscard]] const std::vector<std::vector<double>>& points() const { return points_; }
  [[nodiscard]] const SamplingPlan& plan() const { return plan_; }

 private:
  SamplingPlan plan_;
  std::vector<std::vector<double>> points_;
};

[[nodiscard]] ZeroVerdict is_zero(const Expr& e, const Chart& chart, const SamplingPlan& plan);

}  // namespace spr
