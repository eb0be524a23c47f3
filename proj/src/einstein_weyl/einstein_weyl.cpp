#include "spr/einstein_weyl.hpp"

#include <cmath>

namespace spr {

namespace {

void require_constant(const Expr& e, const char* what) {
  if (!e.is_constant()) throw std::invalid_argument(std::string(what) + " must be a rational constant");
}

void require_dim3_h_zero(const SubPRStructure& s) {
  if (s.dim() != 3) throw HypothesisError("a 3-dimensional structure is required");
  if (!zero_matrix_verdict(h_invariant(s).h, s.tester()).zero()) throw HypothesisError("h does not vanish");
}

bool lorentzian(const SubPRStructure& s) {
  if (s.s(1) == 1 && s.s(2) == 1) return false;
  if (s.s(1) == -1 && s.s(2) == 1) return true;
  throw StructureError(StructureError::Kind::BadSignature, "signature must be (+1,+1) or (-1,+1)");
}

// Sign of a function on the sample points; throws if it changes or vanishes.
int constant_sign(const Expr& e, const ZeroTester& zt, const char* what) {
  int sign = 0;
  for (const auto& p : zt.points()) {
    const double v = eval_at(e, p);
    const int sg = v > 0 ? 1 : (v < 0 ? -1 : 0);
    if (sg == 0 || (sign != 0 && sg != sign)) throw std::invalid_argument(std::string(what) + " is degenerate or changes sign");
    sign = sg;
  }
  if (sign == 0) throw ConfigurationError("no usable sample points");
  return sign;
}

}  // namespace

std::string_view to_string(WeylPair::Provenance p) {
  switch (p) {
    case WeylPair::Provenance::Canonical: return "canonical";
    case WeylPair::Provenance::CoordinateFamily: return "coordinate_family";
    case WeylPair::Provenance::Custom: return "custom";
  }
  return "?";
}

WeylPair make_weyl_pair(const Frame& frame, const ExprMatrix& g, const KForm& eta) {
  if (eta.degree() != 1 || eta.dim() != frame.size()) throw std::invalid_argument("eta must be a one-form on the frame chart");
  WeylPair p;
  p.frame = frame;
  p.g = g;
  p.eta = eta;
  p.eta_frame = frame_components(frame, eta);
  return p;
}

EWVerdict ew_residual(const WeylPair& pair) {
  const int m = pair.frame.size();
  const ConnectionCoeffs nabla = weyl_connection(pair.frame, pair.g, pair.eta_frame);
  EWVerdict out;
  out.curvature = riemann(nabla, pair.frame, pair.g);
  const Expr factor = out.curvature.scalar / Expr(m);
  out.residual = zero_matrix(m, m);
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < m; ++k) {
      out.residual(j, k) = out.curvature.ricci_sym(j, k) - factor * pair.g(j, k);
      out.verdicts.push_back(pair.frame.tester()(out.residual(j, k)));
      merge_verdict(out.worst, out.verdicts.back());
    }
  }
  return out;
}

WeylPair canonical_pair(const SubPRStructure& s, const Expr& c, const Expr& epsilon) {
  require_constant(epsilon, "epsilon");
  if (s.tester().zero(c)) throw std::invalid_argument("extension constant c vanishes identically");
  WeylPair p = make_weyl_pair(s.frame(), extend_metric(s, c), (Expr(2) * epsilon * c) * s.alpha());
  p.c = c;
  p.epsilon = epsilon;
  p.provenance = WeylPair::Provenance::Canonical;
  return p;
}

PredictedC predicted_ew_constant(const SubPRStructure& s, const Expr& epsilon) {
  require_constant(epsilon, "epsilon");
  require_dim3_h_zero(s);
  const Expr kappa = kappa_dim3(s);
  for (int k = 0; k < s.chart().dim(); ++k) {
    if (!s.tester().zero(differentiate(kappa, k))) throw HypothesisError("kappa is not constant");
  }
  const bool kappa_zero = s.tester().zero(kappa);
  const Expr e2 = epsilon * epsilon;
  PredictedC out;
  if (!lorentzian(s)) {
    if (kappa_zero) {
      out.reason = "kappa = 0 with a sub-Riemannian metric admits no nonzero c";
      return out;
    }
    out.kind = PredictedC::Kind::Value;
    out.c = kappa / (Expr(1) + e2);
    out.reason = "c = kappa/(1 + eps^2)";
    return out;
  }
  if (s.tester().zero(e2 - Expr(1))) {
    if (kappa_zero) {
      out.kind = PredictedC::Kind::AnyNonzero;
      out.reason = "kappa = 0 and eps^2 = 1: every nonzero c works";
    } else {
      out.reason = "eps^2 = 1 forces kappa = 0";
    }
    return out;
  }
  if (kappa_zero) {
    out.reason = "kappa = 0 with eps^2 != 1 forces c = 0";
    return out;
  }
  out.kind = PredictedC::Kind::Value;
  out.c = kappa / (Expr(1) - e2);
  out.reason = "c = kappa/(1 - eps^2)";
  return out;
}

ExprMatrix expected_ricci_pattern(const SubPRStructure& s, const Expr& c, const Expr& epsilon) {
  require_dim3_h_zero(s);
  const Expr kappa = kappa_dim3(s);
  const Expr half = Expr::rational(1, 2);
  const Expr e2c = epsilon * epsilon * c;
  ExprMatrix m = zero_matrix(3, 3);
  if (!lorentzian(s)) {
    m(0, 0) = half * c * c;
    m(1, 1) = kappa - half * c - e2c;
    m(2, 2) = m(1, 1);
  } else {
    m(0, 0) = -half * c * c;
    m(1, 1) = kappa - half * c + e2c;
    m(2, 2) = -kappa + half * c - e2c;
  }
  return m;
}

std::vector<ZeroVerdict> ricci_pattern_check(const SubPRStructure& s, const Expr& c, const Expr& epsilon) {
  const ExprMatrix expected = expected_ricci_pattern(s, c, epsilon);
  const WeylPair p = canonical_pair(s, c, epsilon);
  const CurvatureData curv = riemann(weyl_connection(p.frame, p.g, p.eta_frame), p.frame, p.g);
  std::vector<ZeroVerdict> out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out.push_back(s.tester()(curv.ricci_sym(i, j) - expected(i, j)));
  }
  return out;
}

WeylPair coordinate_family(const Expr& epsilon, SamplingPlan plan) {
  require_constant(epsilon, "epsilon");
  const Expr k = Expr(1) - epsilon * epsilon;
  if (k.is_symbolic_zero()) throw std::invalid_argument("the family is undefined for eps^2 = 1");
  const Chart chart({"x", "y", "z"}, {});
  const Frame frame = coordinate_frame(chart, plan);
  const Expr x = chart.coord(0);
  // Rows: dx - x dy, dy, dz - x dy.
  ExprMatrix theta = zero_matrix(3, 3);
  theta(0, 0) = Expr(1);
  theta(0, 1) = -x;
  theta(1, 1) = Expr(1);
  theta(2, 1) = -x;
  theta(2, 2) = Expr(1);
  const ExprMatrix g = multiply(multiply(theta.transpose(), diagonal_matrix({Expr(-1), Expr(1), Expr(1) / k})), theta);
  const KForm eta = KForm::one_form({Expr(), -(Expr(2) * epsilon / k) * x, Expr(2) * epsilon / k});
  WeylPair p = make_weyl_pair(frame, g, eta);
  p.epsilon = epsilon;
  p.provenance = WeylPair::Provenance::CoordinateFamily;
  return p;
}

QuotientData lift_structure(const QuotientInput& in) {
  const int d = in.base.dim();
  if (d < 2 || d % 2 != 0) throw StructureError(StructureError::Kind::BadDimension, "base dimension must be even");
  if (in.theta.degree() != 1 || in.theta.dim() != d) throw std::invalid_argument("theta must be a one-form on the base");
  if (in.omega.degree() != 2 || in.omega.dim() != d) throw std::invalid_argument("omega must be a two-form on the base");
  const Frame base_frame(in.base, in.base_frame, in.plan);
  const ZeroTester& zt = base_frame.tester();
  const KForm dtheta = exterior_derivative(in.theta);
  for (int a = 0; a < d; ++a) {
    for (int b = a + 1; b < d; ++b) {
      if (!zt.zero(dtheta.get({a, b}) - in.omega.get({a, b}))) throw std::invalid_argument("d theta does not match omega");
    }
  }
  ExprMatrix om = zero_matrix(d, d);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      if (a != b) om(a, b) = in.omega.get({a, b});
    }
  }
  if (zt.zero(determinant(om, &zt))) throw std::invalid_argument("omega is degenerate");

  std::vector<std::string> names = in.base.names();
  std::vector<Interval> domain = in.base.domain();
  names.push_back(in.fiber);
  domain.push_back(in.fiber_domain);
  const Chart chart(names, domain, in.base.excluded());
  std::vector<VectorField> fields;
  for (const auto& v : in.base_frame) {
    std::vector<Expr> comp = v.coeffs();
    comp.push_back(evaluate_form(in.theta, {v}));
    fields.emplace_back(comp);
  }
  QuotientData out{in.base, coordinate_metric(base_frame, diagonal_matrix([&] {
                                std::vector<Expr> s;
                                for (int v : in.signature) s.emplace_back(v);
                                return s;
                              }())),
                   in.theta, in.omega, build_structure(chart, std::move(fields), in.signature, in.plan)};
  const KForm& alpha = out.lifted.alpha();
  for (int a = 0; a <= d; ++a) {
    const Expr want = a == d ? Expr(1) : -in.theta.get({a});
    if (!out.lifted.tester().zero(alpha.get({a}) - want)) {
      throw std::invalid_argument("omega is not normalized on the base frame; alpha differs from dz - theta");
    }
  }
  return out;
}

Expr gauss_curvature(const Frame& f, const std::vector<int>& signature) {
  if (f.size() != 2 || signature.size() != 2) throw StructureError(StructureError::Kind::BadDimension, "a surface frame is required");
  const Expr& c121 = f.c(0, 1, 0);
  const Expr& c122 = f.c(0, 1, 1);
  if (signature[0] == 1 && signature[1] == 1) return f.d(0, c122) - f.d(1, c121) - c121 * c121 - c122 * c122;
  if (signature[0] == -1 && signature[1] == 1) return f.d(0, c122) + f.d(1, c121) + c121 * c121 - c122 * c122;
  throw StructureError(StructureError::Kind::BadSignature, "surface signature must be (+1,+1) or (-1,+1)");
}

Expr gauss_curvature(const Chart& base, const ExprMatrix& metric, SamplingPlan plan) {
  if (base.dim() != 2 || metric.rows() != 2 || metric.cols() != 2) {
    throw StructureError(StructureError::Kind::BadDimension, "a 2-dimensional metric is required");
  }
  const ZeroTester zt(base, plan);
  const Expr& g11 = metric(0, 0);
  const int s1 = constant_sign(g11, zt, "g11");
  const Expr n2 = metric(1, 1) - metric(0, 1) * metric(0, 1) / g11;
  const int s2 = constant_sign(n2, zt, "metric");
  const Expr sq1 = Expr::apply(Function::Sqrt, Expr(s1) * g11);
  const Expr sq2 = Expr::apply(Function::Sqrt, Expr(s2) * n2);
  const VectorField e1 = (Expr(1) / sq1) * VectorField::coordinate(2, 0);
  const VectorField e2 =
      (Expr(1) / sq2) * (VectorField::coordinate(2, 1) - (metric(0, 1) / g11) * VectorField::coordinate(2, 0));
  if (s1 == 1 && s2 == 1) return gauss_curvature(Frame(base, {e1, e2}, plan), {1, 1});
  if (s1 == -1 && s2 == 1) return gauss_curvature(Frame(base, {e1, e2}, plan), {-1, 1});
  if (s1 == 1 && s2 == -1) return gauss_curvature(Frame(base, {e2, e1}, plan), {-1, 1});
  throw StructureError(StructureError::Kind::BadSignature, "negative definite surface metric");
}

SymmetricCaseFlags symmetric_case_check(const SubPRStructure& s) {
  SymmetricCaseFlags out;
  const ZeroTester& zt = s.tester();
  out.h_zero = zero_matrix_verdict(h_invariant(s).h, zt);
  const int d = 2 * s.n();
  const ExprMatrix& om = s.omega();
  for (int i = 1; i <= d; ++i) {
    for (int j = 1; j <= d; ++j) {
      Expr e = s.frame().d(0, om(i - 1, j - 1));
      for (int k = 1; k <= d; ++k) {
        e -= s.c(0, i, k) * om(k - 1, j - 1) + s.c(0, j, k) * om(i - 1, k - 1);
      }
      merge_verdict(out.lie_omega_zero, zt(e));
    }
  }
  out.symmetric = out.h_zero.zero() && out.lie_omega_zero.zero();
  if (s.dim() == 3) {
    out.kappa = kappa_dim3(s);
    out.flat = out.h_zero.zero() && zt.zero(out.kappa);
  }
  return out;
}

}  // namespace spr
