#pragma once

// Vector fields, differential forms and maps on a coordinate chart.

#include <map>
#include <vector>

#include "spr/expr.hpp"
#include "spr/matrix.hpp"

namespace spr {

class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(std::vector<Expr> coeffs) : c_(std::move(coeffs)) {}
  static VectorField zero(int dim) { return VectorField(std::vector<Expr>(static_cast<std::size_t>(dim))); }
  static VectorField coordinate(int dim, int k);

  [[nodiscard]] int dim() const { return static_cast<int>(c_.size()); }
  [[nodiscard]] const Expr& operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
  [[nodiscard]] const std::vector<Expr>& coeffs() const { return c_; }

  /// Directional derivative V(f).
  [[nodiscard]] Expr operator()(const Expr& f) const;

  friend VectorField operator+(const VectorField& a, const VectorField& b);
  friend VectorField operator-(const VectorField& a, const VectorField& b);
  friend VectorField operator-(const VectorField& a);
  friend VectorField operator*(const Expr& f, const VectorField& v);

 private:
  std::vector<Expr> c_;
};

/// Differential k-form stored by strictly increasing coordinate multi-index.
class KForm {
 public:
  using Index = std::vector<int>;

  KForm() = default;
  KForm(int dim, int degree);
  static KForm function(int dim, const Expr& f);
  static KForm one_form(const std::vector<Expr>& coeffs);
  static KForm dx(int dim, int k);

  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] int degree() const { return degree_; }
  [[nodiscard]] const std::map<Index, Expr>& components() const { return comp_; }

  /// Component for any index list (sign from sorting, zero on repeats).
  [[nodiscard]] Expr get(Index idx) const;
  void set(Index idx, const Expr& value);

  friend KForm operator+(const KForm& a, const KForm& b);
  friend KForm operator-(const KForm& a, const KForm& b);
  friend KForm operator*(const Expr& f, const KForm& w);

 private:
  int dim_ = 0;
  int degree_ = 0;
  std::map<Index, Expr> comp_;
};

struct PointMap {
  std::vector<Expr> components;
  [[nodiscard]] int dim() const { return static_cast<int>(components.size()); }
};

[[nodiscard]] VectorField lie_bracket(const VectorField& v, const VectorField& w);
[[nodiscard]] KForm exterior_derivative(const KForm& w);
[[nodiscard]] KForm wedge(const KForm& a, const KForm& b);
/// Determinant convention: (dx^1 ^ ... ^ dx^k)(d1, ..., dk) = 1.
[[nodiscard]] Expr evaluate_form(const KForm& w, const std::vector<VectorField>& fields);
/// Interior product i_V w.
[[nodiscard]] KForm contract(const VectorField& v, const KForm& w);

[[nodiscard]] ExprMatrix jacobian(const PointMap& f);
[[nodiscard]] PointMap identity_map(const Chart& chart);
/// (f o g)(x) = f(g(x)).
[[nodiscard]] PointMap compose(const PointMap& f, const PointMap& g);
/// Inverse of an affine map; throws SingularMatrixError otherwise.
[[nodiscard]] PointMap affine_inverse(const PointMap& f, const Chart& chart);

/// f_* V expressed at the target point, using the supplied inverse of f.
[[nodiscard]] VectorField pushforward(const PointMap& f, const PointMap& f_inverse, const VectorField& v);
[[nodiscard]] KForm pullback_form(const PointMap& f, const KForm& w);
/// J^T (G o f) J for a coordinate-basis metric G.
[[nodiscard]] ExprMatrix pullback_metric(const PointMap& f, const ExprMatrix& g);
[[nodiscard]] Expr pullback_function(const PointMap& f, const Expr& e);
[[nodiscard]] VectorField substitute(const VectorField& v, const PointMap& f);

/// Matrix whose columns are the frame fields.
[[nodiscard]] ExprMatrix frame_matrix(const std::vector<VectorField>& frame);
/// Coefficients of v in the frame; throws SingularMatrixError.
[[nodiscard]] std::vector<Expr> expand_in_frame(const VectorField& v, const std::vector<VectorField>& frame,
                                                const ZeroTester* zt = nullptr);

}  // namespace spr
