#pragma once

// Isometries of contact sub-pseudo-Riemannian structures: finite maps,
// infinitesimal generators, and the explicit dimension-5 Heisenberg families.

#include <array>
#include <string>
#include <vector>

#include "spr/structure.hpp"

namespace spr {

struct IsometryVerdict {
  ZeroVerdict preserves_d;        // X0-components of f_* X_i
  ExprMatrix transition;          // A(j-1, i-1): coefficient of X_j in f_* X_i
  std::vector<ZeroVerdict> metric;  // entries of A^T g A - g, row-major
  ZeroVerdict metric_worst;
  Expr lambda;                    // f^* alpha = lambda alpha
  ZeroVerdict alpha_proportional;  // f^* alpha - lambda alpha
  ZeroVerdict lambda_one;
  ZeroVerdict reeb_preserved;     // f_* X0 - X0
  [[nodiscard]] bool is_isometry() const { return preserves_d.zero() && metric_worst.zero(); }
  [[nodiscard]] bool passes() const {
    return is_isometry() && alpha_proportional.zero() && lambda_one.zero() && reeb_preserved.zero();
  }
};

struct InverseMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Throws InverseMismatch when f and f_inverse do not compose to the identity.
[[nodiscard]] IsometryVerdict is_isometry(const PointMap& f, const PointMap& f_inverse, const SubPRStructure& s);

struct ExtensionReport {
  ZeroVerdict lambda_one;
  ZeroVerdict reeb_preserved;
  ZeroVerdict g1_preserved;  // f^* G^1 - G^1 in coordinates
  [[nodiscard]] bool ok() const { return lambda_one.zero() && reeb_preserved.zero() && g1_preserved.zero(); }
};

[[nodiscard]] ExtensionReport alpha_reeb_consequence(const PointMap& f, const PointMap& f_inverse,
                                                     const SubPRStructure& s);

struct InfinitesimalReport {
  ZeroVerdict preserves_d;  // alpha([V, X_i])
  ZeroVerdict metric;       // (L_V g)(X_i, X_j)
  [[nodiscard]] bool ok() const { return preserves_d.zero() && metric.zero(); }
};

[[nodiscard]] InfinitesimalReport is_infinitesimal_isometry(const VectorField& v, const SubPRStructure& s);

// Dimension-5 Heisenberg group in exponential coordinates (x1, y1, x2, y2, z).

enum class Variant { Stated, Corrected };

using Translation = std::array<Expr, 5>;

/// Group product of exponential coordinates.
[[nodiscard]] Translation bch_product(const Translation& a, const Translation& b);

struct MapPair {
  PointMap map;
  PointMap inverse;
};

/// Corrected: q -> t * q (a left translation). Stated: the z-component
/// z + t5 + (x1 t2 - y1 t1 + x2 t4 - y2 t3)/2, which is q -> q * t.
[[nodiscard]] MapPair bch_left_translation(const Translation& t, const Chart& chart, Variant v = Variant::Corrected);

/// Number of maps listed for a family case (1, 2 or 3).
[[nodiscard]] int family_size(int family);
/// True when the stated and corrected forms of a family member differ.
[[nodiscard]] bool family_member_ambiguous(int family, int index);
/// Family member with parameter theta (a constant expression); index is 1-based.
[[nodiscard]] PointMap isometry_family(int family, int index, const Expr& theta, const Chart& chart,
                                       Variant v = Variant::Corrected);
/// Same with cos/sin (or cosh/sinh) values supplied directly.
[[nodiscard]] PointMap isometry_family_cs(int family, int index, const Expr& co, const Expr& si, const Chart& chart,
                                          Variant v = Variant::Corrected);
/// d/dtheta of f_theta o f_0^{-1} at theta = 0.
[[nodiscard]] VectorField family_generator(int family, int index, const Chart& chart, Variant v = Variant::Corrected);
/// d/dt_k of the left translations at t = 0.
[[nodiscard]] std::vector<VectorField> translation_generators(const Chart& chart, Variant v = Variant::Corrected);
/// Linear fields q -> A q on the distribution coordinates for a basis of
/// sp(omega) intersected with o(g); exact nullspace computation.
[[nodiscard]] std::vector<VectorField> linear_isotropy_generators(const SubPRStructure& s);

struct AlgebraDimension {
  int rank = 0;
  int bound = 0;  // (n+1)^2
  [[nodiscard]] bool within_bound() const { return rank <= bound; }
};

struct NotAnIsometry : std::invalid_argument {
  NotAnIsometry(const std::string& what, int index) : std::invalid_argument(what), generator(index) {}
  int generator;
};

/// Numeric rank of the 1-jets (values and first derivatives) of the generators at p,
/// relative tolerance 1e-9. Each generator is checked first; throws NotAnIsometry.
[[nodiscard]] AlgebraDimension algebra_dimension(const std::vector<VectorField>& generators, const SubPRStructure& s,
                                                 const std::vector<double>& p);

struct FrequencyData {
  ExprMatrix j;  // omega(X, Y) = g(J X, Y) in the frame X1..X2n
  ZeroVerdict compatible;  // J^2 + Id
  bool analysed = false;   // eigen-analysis only for positive definite g
  std::vector<double> frequencies;  // b_i > 0 at p, ascending, one per complex pair
  bool constant = false;            // same b at every sample point
  std::vector<int> block_sizes;
  int predicted_dim = 0;  // 2n + 1 + sum n_j^2
  int bound = 0;          // (n+1)^2
};

[[nodiscard]] FrequencyData compatibility_and_frequencies(const SubPRStructure& s, const std::vector<double>& p);

}  // namespace spr
