#pragma once

// Linear connections in a frame: nabla_{E_i} E_j = sum_k Gamma_ij^k E_k.

#include <string>
#include <vector>

#include "spr/structure.hpp"

namespace spr {

class ConnectionCoeffs {
 public:
  ConnectionCoeffs() = default;
  ConnectionCoeffs(int m, std::string provenance)
      : m_(m), provenance_(std::move(provenance)), g_(static_cast<std::size_t>(m * m * m)) {}

  [[nodiscard]] int size() const { return m_; }
  [[nodiscard]] const std::string& provenance() const { return provenance_; }
  [[nodiscard]] const Expr& operator()(int i, int j, int k) const { return g_[index(i, j, k)]; }
  Expr& operator()(int i, int j, int k) { return g_[index(i, j, k)]; }

 private:
  [[nodiscard]] std::size_t index(int i, int j, int k) const {
    return static_cast<std::size_t>((i * m_ + j) * m_ + k);
  }
  int m_ = 0;
  std::string provenance_;
  std::vector<Expr> g_;
};

/// Koszul formula for a frame metric G (symmetric, nondegenerate).
[[nodiscard]] ConnectionCoeffs levi_civita(const Frame& frame, const ExprMatrix& g);
[[nodiscard]] ConnectionCoeffs levi_civita(const ExprMatrix& g, const SubPRStructure& s);

/// Closed-form Levi-Civita connection of G^c in terms of structural functions.
/// For non-constant c the X_i(c)/(2c) and X_0(c) terms are included.
[[nodiscard]] ConnectionCoeffs closed_form_connection(const SubPRStructure& s, const Expr& c);

/// nabla = nabla^LC - (1/2)(eta(X)Y + eta(Y)X - G(X,Y) eta#); eta in frame components.
[[nodiscard]] ConnectionCoeffs weyl_connection(const Frame& frame, const ExprMatrix& g, const std::vector<Expr>& eta);
[[nodiscard]] std::vector<Expr> frame_components(const Frame& frame, const KForm& eta);

struct ConnectionReport {
  // Indexed [(i*m + j)*m + k].
  std::vector<ZeroVerdict> compatibility;  // (nabla_i G)(E_j,E_k) - eta_i G_jk
  std::vector<ZeroVerdict> torsion;        // component k of T(E_i,E_j)
  ZeroVerdict worst_compatibility;
  ZeroVerdict worst_torsion;
  [[nodiscard]] bool ok() const { return worst_compatibility.zero() && worst_torsion.zero(); }
};

[[nodiscard]] ConnectionReport verify_connection(const ConnectionCoeffs& nabla, const Frame& frame,
                                                 const ExprMatrix& g, const std::vector<Expr>& eta);

enum class TensorType { Covariant2, Mixed11 };

/// (nabla_{E_i} T) for T with frame components t (covariant (0,2): t(a,b) = T(E_a,E_b);
/// mixed (1,1): T(E_b) = sum_a t(a,b) E_a).
[[nodiscard]] ExprMatrix covariant_derivative(const ConnectionCoeffs& nabla, const Frame& frame, const ExprMatrix& t,
                                              TensorType type, int i);

/// Largest-deviation verdict between two connection tables.
[[nodiscard]] ZeroVerdict compare_connections(const ConnectionCoeffs& a, const ConnectionCoeffs& b, const ZeroTester& zt);

}  // namespace spr
