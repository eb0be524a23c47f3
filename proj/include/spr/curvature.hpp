#pragma once

// Curvature of frame connections: R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z.

#include <functional>
#include <stdexcept>
#include <vector>

#include "spr/connection.hpp"

namespace spr {

struct DegeneratePlaneError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class CurvatureData {
 public:
  CurvatureData() = default;
  explicit CurvatureData(int m)
      : m_(m), r_(static_cast<std::size_t>(m * m * m * m)), low_(static_cast<std::size_t>(m * m * m * m)) {}

  [[nodiscard]] int size() const { return m_; }
  /// R_ijk^l: R(E_i,E_j)E_k = sum_l R_ijk^l E_l.
  [[nodiscard]] const Expr& R(int i, int j, int k, int l) const { return r_[index(i, j, k, l)]; }
  Expr& R(int i, int j, int k, int l) { return r_[index(i, j, k, l)]; }
  /// R_ijkl = G(R(E_i,E_j)E_k, E_l).
  [[nodiscard]] const Expr& lowered(int i, int j, int k, int l) const { return low_[index(i, j, k, l)]; }
  Expr& lowered(int i, int j, int k, int l) { return low_[index(i, j, k, l)]; }

  ExprMatrix ricci;
  ExprMatrix ricci_sym;
  Expr scalar;

 private:
  [[nodiscard]] std::size_t index(int i, int j, int k, int l) const {
    return static_cast<std::size_t>(((i * m_ + j) * m_ + k) * m_ + l);
  }
  int m_ = 0;
  std::vector<Expr> r_;
  std::vector<Expr> low_;
};

/// Riemann and lowered tensors of a connection over a frame with metric G.
[[nodiscard]] CurvatureData riemann(const ConnectionCoeffs& nabla, const Frame& frame, const ExprMatrix& g);

/// Fills ricci (trace over the first slot), its symmetric part and the scalar curvature.
void ricci(CurvatureData& curv, const ExprMatrix& g);

/// G(R(E_i,E_j)E_j,E_i) / (G_ii G_jj - G_ij^2); throws DegeneratePlaneError.
[[nodiscard]] Expr sectional(const CurvatureData& curv, const ExprMatrix& g, int i, int j, const ZeroTester& zt);
/// Same for the plane spanned by two arbitrary frame-component vectors.
[[nodiscard]] Expr sectional(const CurvatureData& curv, const ExprMatrix& g, const std::vector<Expr>& x,
                             const std::vector<Expr>& y, const ZeroTester& zt);

struct DecompositionEntry {
  int i = 0;
  int j = 0;
  Expr curvature;   // G^c(R(X_i,X_j)X_j,X_i)
  Expr kappa;       // kappa_D(X_i,X_j)
  Expr h_term;      // g(X_i^X_j, h#X_i ^ h#X_j)
  Expr omega_term;  // omega(X_i,X_j)^2
  Expr residual;
  ZeroVerdict verdict;
};

struct DecompositionReport {
  std::vector<DecompositionEntry> entries;  // pairs i < j in 1..2n
  [[nodiscard]] bool ok() const;
};

[[nodiscard]] DecompositionReport decomposition_residual(const SubPRStructure& s, const Expr& c);

using Biquadratic = std::function<Expr(const std::vector<Expr>&, const std::vector<Expr>&)>;

/// Curvature-type (0,4) tensor T with T(X,Y,Y,X) = B(X,Y), components T(a,b,c,d)
/// stored at ((a*dim + b)*dim + c)*dim + d for a dim-dimensional argument space.
[[nodiscard]] std::vector<Expr> polarize_biquadratic(const Biquadratic& b, int dim);

/// Biquadratic B(X,Y) = sum R_abcd X^a Y^b Y^c X^d of a lowered tensor restricted to indices 1..d.
[[nodiscard]] Biquadratic biquadratic_of(const CurvatureData& curv, int d);

/// R_D by polarizing G^c(R^c(X,Y)Y,X) + (1/c) g(X^Y, h#X ^ h#Y) + (3c/4) omega(X,Y)^2 on D.
[[nodiscard]] std::vector<Expr> r_d_tensor(const SubPRStructure& s, const Expr& c);

}  // namespace spr
