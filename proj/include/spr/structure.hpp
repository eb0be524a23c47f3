#pragma once

// Contact sub-pseudo-Riemannian structures given by an orthonormal frame.
//
// Frame indices follow the structural functions: index 0 is the Reeb field
// X0 and indices 1..2n are X1..X2n. Frame metrics use the same order.

#include <stdexcept>
#include <string>
#include <vector>

#include "spr/calculus.hpp"

namespace spr {

struct StructureError : std::runtime_error {
  enum class Kind { FrameDependent, NotContact, SignObstruction, SignChange, BadSignature, BadDimension };
  StructureError(Kind k, const std::string& what) : std::runtime_error(what), kind(k) {}
  Kind kind;
};

struct EngineDefect : std::logic_error {
  using std::logic_error::logic_error;
};

/// A full frame E_0..E_{m-1} with its dual coframe and structure functions
/// [E_i, E_j] = sum_k c_ij^k E_k.
class Frame {
 public:
  Frame() = default;
  Frame(Chart chart, std::vector<VectorField> fields, SamplingPlan plan = {});

  [[nodiscard]] int size() const { return static_cast<int>(fields_.size()); }
  [[nodiscard]] const Chart& chart() const { return chart_; }
  [[nodiscard]] const ZeroTester& tester() const { return tester_; }
  [[nodiscard]] const std::vector<VectorField>& fields() const { return fields_; }
  [[nodiscard]] const VectorField& field(int i) const { return fields_[static_cast<std::size_t>(i)]; }
  [[nodiscard]] const ExprMatrix& coframe() const { return coframe_; }
  [[nodiscard]] const Expr& c(int i, int j, int k) const {
    const auto m = static_cast<std::size_t>(size());
    return c_[(static_cast<std::size_t>(i) * m + static_cast<std::size_t>(j)) * m + static_cast<std::size_t>(k)];
  }

  /// E_i(f).
  [[nodiscard]] Expr d(int i, const Expr& f) const { return field(i)(f); }
  /// Coefficients of v in this frame.
  [[nodiscard]] std::vector<Expr> expand(const VectorField& v) const;

 private:
  Chart chart_;
  ZeroTester tester_;
  std::vector<VectorField> fields_;
  ExprMatrix coframe_;
  std::vector<Expr> c_;
};

[[nodiscard]] Frame coordinate_frame(const Chart& chart, SamplingPlan plan = {});

class SubPRStructure {
 public:
  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] int dim() const { return 2 * n_ + 1; }
  [[nodiscard]] const Frame& frame() const { return frame_; }
  [[nodiscard]] const Chart& chart() const { return frame_.chart(); }
  [[nodiscard]] const ZeroTester& tester() const { return frame_.tester(); }
  [[nodiscard]] const std::vector<int>& signature() const { return signature_; }
  /// s_i for i in 1..2n.
  [[nodiscard]] int s(int i) const { return signature_[static_cast<std::size_t>(i - 1)]; }
  [[nodiscard]] const KForm& alpha() const { return alpha_; }
  [[nodiscard]] const KForm& d_alpha() const { return dalpha_; }
  [[nodiscard]] const VectorField& reeb() const { return frame_.field(0); }
  /// X_i for i in 1..2n (0 gives the Reeb field).
  [[nodiscard]] const VectorField& X(int i) const { return frame_.field(i); }
  [[nodiscard]] std::vector<VectorField> distribution_frame() const;
  /// omega(X_i, X_j) = -d alpha(X_i, X_j), indices 1..2n stored at 0..2n-1.
  [[nodiscard]] const ExprMatrix& omega() const { return omega_; }
  [[nodiscard]] const Expr& c(int i, int j, int k) const { return frame_.c(i, j, k); }
  /// Normalization factor: alpha = factor * alpha0.
  [[nodiscard]] const Expr& normalization() const { return factor_; }

 private:
  friend SubPRStructure build_structure(const Chart&, std::vector<VectorField>, std::vector<int>, SamplingPlan);
  int n_ = 1;
  std::vector<int> signature_;
  Frame frame_;
  KForm alpha_;
  KForm dalpha_;
  ExprMatrix omega_;
  Expr factor_;
};

[[nodiscard]] SubPRStructure build_structure(const Chart& chart, std::vector<VectorField> frame,
                                             std::vector<int> signature, SamplingPlan plan = {});

struct HData {
  ExprMatrix h;
  ExprMatrix h_sharp;
  Expr det_h_sharp;
};

[[nodiscard]] HData h_invariant(const SubPRStructure& s);

/// diag(c, s_1, ..., s_2n) in the frame (X0, X1, ..., X2n).
[[nodiscard]] ExprMatrix extend_metric(const SubPRStructure& s, const Expr& c);
/// Coordinate-basis matrix of a frame metric.
[[nodiscard]] ExprMatrix coordinate_metric(const Frame& frame, const ExprMatrix& g_frame);

[[nodiscard]] Expr kappa_dim3(const SubPRStructure& s);
/// kappa_D(X_i, X_j), i != j in 1..2n.
[[nodiscard]] Expr kappa_general(const SubPRStructure& s, int i, int j);

struct ExteriorMetric {
  std::vector<std::vector<int>> basis;  // increasing multi-indices (0-based)
  ExprMatrix gram;
};
[[nodiscard]] ExteriorMetric exterior_power_metric(const std::vector<int>& signature, int k);

/// g(X_i ^ X_j, h#X_i ^ h#X_j) through the exterior-power metric.
[[nodiscard]] Expr bivector_h_term(const SubPRStructure& s, const HData& h, int i, int j);

/// X_1 -> -X_1, rebuilt with the same sampling plan.
[[nodiscard]] SubPRStructure orientation_flip(const SubPRStructure& s);

}  // namespace spr
