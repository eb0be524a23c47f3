#pragma once

// Einstein-Weyl equations for Weyl structures (G, eta), the canonical pairs
// (G^c, 2 eps c alpha) of a contact structure, and lifts of surfaces.

#include <string>
#include <vector>

#include "spr/curvature.hpp"

namespace spr {

struct WeylPair {
  enum class Provenance { Canonical, CoordinateFamily, Custom };

  Frame frame;
  ExprMatrix g;              // frame metric
  KForm eta;                 // the one-form
  std::vector<Expr> eta_frame;  // eta(E_i)
  Expr c;
  Expr epsilon;
  Provenance provenance = Provenance::Custom;
};

[[nodiscard]] std::string_view to_string(WeylPair::Provenance p);

/// Pair over an arbitrary frame; eta components are taken from the form.
[[nodiscard]] WeylPair make_weyl_pair(const Frame& frame, const ExprMatrix& g, const KForm& eta);

struct EWVerdict {
  ExprMatrix residual;  // Ric_sym - (1/dim) R_G G
  std::vector<ZeroVerdict> verdicts;  // row-major
  ZeroVerdict worst;
  CurvatureData curvature;
  [[nodiscard]] bool is_einstein_weyl() const { return worst.zero(); }
};

[[nodiscard]] EWVerdict ew_residual(const WeylPair& pair);

/// (extend_metric(S, c), 2 eps c alpha). c and eps must be nonzero resp. rational constants.
[[nodiscard]] WeylPair canonical_pair(const SubPRStructure& s, const Expr& c, const Expr& epsilon);

struct PredictedC {
  enum class Kind { Value, AnyNonzero, NoSolution };
  Kind kind = Kind::NoSolution;
  Expr c;
  std::string reason;
};

struct HypothesisError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The c making (G^c, 2 eps c alpha) Einstein-Weyl for a dim-3 structure with h = 0
/// and constant kappa; throws HypothesisError otherwise.
[[nodiscard]] PredictedC predicted_ew_constant(const SubPRStructure& s, const Expr& epsilon);

/// Computed Ric_sym of the canonical pair against the closed-form diagonal pattern
/// (frame order X0, X1, X2); entrywise verdicts, row-major 3x3.
[[nodiscard]] std::vector<ZeroVerdict> ricci_pattern_check(const SubPRStructure& s, const Expr& c, const Expr& epsilon);
/// The expected pattern itself.
[[nodiscard]] ExprMatrix expected_ricci_pattern(const SubPRStructure& s, const Expr& c, const Expr& epsilon);

/// Berger-type Lorentzian family in coordinates (x, y, z):
/// G = -(dx - x dy)^2 + dy^2 + (dz - x dy)^2/(1 - eps^2), eta = 2 eps (dz - x dy)/(1 - eps^2).
[[nodiscard]] WeylPair coordinate_family(const Expr& epsilon, SamplingPlan plan = {});

struct QuotientInput {
  Chart base;
  std::vector<VectorField> base_frame;  // orthonormal for the base metric
  std::vector<int> signature;
  KForm theta;
  KForm omega;  // must equal d theta
  std::string fiber = "z";
  Interval fiber_domain{-1.0, 1.0};
  SamplingPlan plan;
};

struct QuotientData {
  Chart base;
  ExprMatrix base_metric;  // coordinate basis
  KForm theta;
  KForm omega;
  SubPRStructure lifted;
};

/// Lift to the chart (base, z) with alpha = dz - theta and X_i = X~_i + theta(X~_i) d/dz.
[[nodiscard]] QuotientData lift_structure(const QuotientInput& in);

/// Gauss curvature from an orthonormal frame of a surface, signature (+,+) or (-,+).
[[nodiscard]] Expr gauss_curvature(const Frame& base_frame, const std::vector<int>& signature);
/// Same from a coordinate metric; the orthonormal frame is built by Gram-Schmidt.
[[nodiscard]] Expr gauss_curvature(const Chart& base, const ExprMatrix& metric, SamplingPlan plan = {});

struct SymmetricCaseFlags {
  ZeroVerdict h_zero;
  ZeroVerdict lie_omega_zero;
  bool symmetric = false;
  bool flat = false;  // dim 3 only: h = 0 and kappa = 0
  Expr kappa;         // dim 3 only
};

[[nodiscard]] SymmetricCaseFlags symmetric_case_check(const SubPRStructure& s);

}  // namespace spr
