#include "support.hpp"

using namespace spr;
using spr::test::field;
using spr::test::P;
using spr::test::same;
using spr::test::structure;

namespace {

// Base (x, y) with metric dx^2 + dy^2/(1+x^2)^2, whose Gauss curvature is not constant.
QuotientInput warped_base() {
  const Chart base({"x", "y"}, {});
  QuotientInput in;
  in.base = base;
  in.base_frame = {field(base, {"1", "0"}), field(base, {"0", "1 + x^2"})};
  in.signature = {1, 1};
  in.theta = KForm::one_form({P(base, "-y/(1 + x^2)"), Expr(0)});
  in.omega = exterior_derivative(in.theta);
  return in;
}

}  // namespace

TEST_SUITE("einstein_weyl") {
  TEST_CASE("canonical pairs") {
    const SubPRStructure lor = structure("heisenberg3-lor");
    const WeylPair p = canonical_pair(lor, Expr(2), Expr(1));
    CHECK(p.provenance == WeylPair::Provenance::Canonical);
    CHECK(same(p.eta_frame[0], Expr(4)));
    CHECK(p.eta_frame[1].is_symbolic_zero());
    CHECK(p.eta_frame[2].is_symbolic_zero());
    CHECK(same(p.eta.get({2}), Expr(4)));

    const SubPRStructure hyp = structure("hyperbolic-lift");
    const WeylPair q = canonical_pair(hyp, Expr::rational(-4, 5), Expr::rational(1, 2));
    CHECK(same(q.eta_frame[0], Expr::rational(-4, 5)));
    const WeylPair lc = canonical_pair(hyp, Expr(3), Expr(0));
    for (const Expr& e : lc.eta_frame) CHECK(e.is_symbolic_zero());
    CHECK_THROWS((void)canonical_pair(hyp, Expr(0), Expr(1)));
    CHECK_THROWS((void)canonical_pair(hyp, Expr(1), P(hyp.chart(), "x")));
  }

  TEST_CASE("Einstein-Weyl residuals") {
    CHECK(ew_residual(canonical_pair(structure("heisenberg3-lor"), Expr(2), Expr(1))).is_einstein_weyl());
    CHECK(ew_residual(canonical_pair(structure("hyperbolic-lift"), Expr(-1), Expr(0))).is_einstein_weyl());
    for (const Expr& c : {Expr(1), Expr(-1), Expr(2)}) {
      const EWVerdict v = ew_residual(canonical_pair(structure("heisenberg3-riem"), c, Expr(0)));
      CHECK_FALSE(v.is_einstein_weyl());
      CHECK(v.worst.kind == ZeroVerdict::Kind::Nonzero);
    }
    // Riemannian kappa = -1 and eps = 1 need c = -1/2.
    const SubPRStructure hyp = structure("hyperbolic-lift");
    CHECK(ew_residual(canonical_pair(hyp, Expr::rational(-1, 2), Expr(1))).is_einstein_weyl());
    CHECK_FALSE(ew_residual(canonical_pair(hyp, Expr::rational(-2, 5), Expr(1))).is_einstein_weyl());
    const EWVerdict v = ew_residual(canonical_pair(hyp, Expr::rational(-4, 5), Expr::rational(1, 2)));
    CHECK(v.is_einstein_weyl());
    CHECK(v.verdicts.size() == 9);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) CHECK(v.residual(i, j).is_symbolic_zero());
    }
  }

  TEST_CASE("predicted constant") {
    const auto value = [](const char* name, const Expr& eps) { return predicted_ew_constant(structure(name), eps); };
    PredictedC p = value("hyperbolic-lift", Expr(1));
    REQUIRE(p.kind == PredictedC::Kind::Value);
    CHECK(same(p.c, Expr::rational(-1, 2)));
    p = value("hyperbolic-lift", Expr::rational(1, 2));
    CHECK(same(p.c, Expr::rational(-4, 5)));
    p = value("hyperbolic-lift-lor", Expr(0));
    REQUIRE(p.kind == PredictedC::Kind::Value);
    CHECK(same(p.c, Expr(1)));
    p = value("hyperbolic-lift-lor", Expr::rational(1, 2));
    CHECK(same(p.c, Expr::rational(4, 3)));
    CHECK(value("hyperbolic-lift-lor", Expr(1)).kind == PredictedC::Kind::NoSolution);
    CHECK(value("heisenberg3-riem", Expr(1)).kind == PredictedC::Kind::NoSolution);
    CHECK(value("heisenberg3-lor", Expr(1)).kind == PredictedC::Kind::AnyNonzero);
    CHECK(value("heisenberg3-lor", Expr(-1)).kind == PredictedC::Kind::AnyNonzero);
    CHECK(value("heisenberg3-lor", Expr::rational(1, 2)).kind == PredictedC::Kind::NoSolution);
    CHECK_THROWS_AS((void)value("twisted-heisenberg", Expr(1)), HypothesisError);
    const QuotientData warped = lift_structure(warped_base());
    CHECK_THROWS_AS((void)predicted_ew_constant(warped.lifted, Expr(1)), HypothesisError);
  }

  TEST_CASE("symmetric Ricci patterns") {
    const SubPRStructure riem = structure("heisenberg3-riem");
    ExprMatrix e = expected_ricci_pattern(riem, Expr(1), Expr(1));
    CHECK(same(e(0, 0), Expr::rational(1, 2)));
    CHECK(same(e(1, 1), Expr::rational(-3, 2)));
    CHECK(same(e(2, 2), Expr::rational(-3, 2)));
    CHECK(e(0, 1).is_symbolic_zero());
    for (const ZeroVerdict& v : ricci_pattern_check(riem, Expr(1), Expr(1))) CHECK(v.kind == ZeroVerdict::Kind::SymbolicZero);

    const SubPRStructure lor = structure("heisenberg3-lor");
    e = expected_ricci_pattern(lor, Expr(1), Expr(1));
    CHECK(same(e(0, 0), Expr::rational(-1, 2)));
    CHECK(same(e(1, 1), Expr::rational(1, 2)));
    CHECK(same(e(2, 2), Expr::rational(-1, 2)));
    for (const ZeroVerdict& v : ricci_pattern_check(lor, Expr(1), Expr(1))) CHECK(v.zero());

    // eps = 0 gives the Levi-Civita pattern.
    const SubPRStructure hyp = structure("hyperbolic-lift");
    e = expected_ricci_pattern(hyp, Expr(2), Expr(0));
    CHECK(same(e(0, 0), Expr(2)));
    CHECK(same(e(1, 1), Expr(-2)));
    for (const char* name : {"hyperbolic-lift", "sphere-lift", "hyperbolic-lift-lor"}) {
      for (const ZeroVerdict& v : ricci_pattern_check(structure(name), Expr::rational(1, 3), Expr::rational(1, 2)))
        CHECK(v.zero());
    }
    CHECK_THROWS_AS((void)ricci_pattern_check(structure("twisted-heisenberg"), Expr(1), Expr(0)), HypothesisError);
  }

  TEST_CASE("coordinate family") {
    const WeylPair p = coordinate_family(Expr::rational(1, 2));
    CHECK(p.provenance == WeylPair::Provenance::CoordinateFamily);
    const Chart& c = p.frame.chart();
    CHECK(same(p.eta.get({2}), Expr::rational(4, 3)));
    CHECK(same(p.eta.get({1}), c, "-4*x/3"));
    CHECK(p.eta.get({0}).is_symbolic_zero());
    CHECK(same(p.g(2, 2), Expr::rational(4, 3)));
    CHECK(same(p.g(0, 0), Expr(-1)));
    const WeylPair flat = coordinate_family(Expr(0));
    for (const auto& [idx, v] : flat.eta.components()) CHECK(v.is_symbolic_zero());
    CHECK_THROWS((void)coordinate_family(Expr(1)));
    CHECK_THROWS((void)coordinate_family(Expr(-1)));
    // The engine finds the coordinate family Einstein-Weyl.
    CHECK(ew_residual(p).is_einstein_weyl());
  }

  TEST_CASE("lifts of surfaces") {
    const QuotientData e = lift_structure(surface_base(SurfaceBase::Euclidean));
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) CHECK(h_invariant(e.lifted).h(i, j).is_symbolic_zero());
    }
    CHECK(kappa_dim3(e.lifted).is_symbolic_zero());

    const QuotientData h = lift_structure(surface_base(SurfaceBase::Hyperbolic));
    CHECK(same(kappa_dim3(h.lifted), Expr(-1)));
    for (int i = 1; i <= 2; ++i) {
      for (int k = 0; k < 3; ++k) CHECK(h.lifted.c(0, i, k).is_symbolic_zero());
    }
    const QuotientData s = lift_structure(surface_base(SurfaceBase::Sphere));
    CHECK(same(kappa_dim3(s.lifted), Expr(1)));

    QuotientData w = lift_structure(warped_base());
    const Frame base_frame(w.base, warped_base().base_frame);
    CHECK(same(kappa_dim3(w.lifted), gauss_curvature(base_frame, {1, 1})));
    CHECK_FALSE(kappa_dim3(w.lifted).depends_on(2));
    CHECK(kappa_dim3(w.lifted).depends_on(0));

    QuotientInput bad = warped_base();
    bad.omega = Expr(2) * bad.omega;
    CHECK_THROWS((void)lift_structure(bad));
  }

  TEST_CASE("Gauss curvature") {
    const Chart b({"x", "y"}, {{-1.0, 1.0}, {0.5, 2.0}});
    CHECK(gauss_curvature(b, identity_matrix(2)).is_symbolic_zero());
    ExprMatrix hyp = ExprMatrix::Zero(2, 2);
    hyp(0, 0) = P(b, "1/y^2");
    hyp(1, 1) = P(b, "1/y^2");
    // Gram-Schmidt leaves sqrt(1/y^2) unsimplified, so this one is numeric.
    CHECK(is_zero(gauss_curvature(b, hyp) + Expr(1), b, {}).zero());
    const Frame hf(b, {field(b, {"y", "0"}), field(b, {"0", "y"})});
    CHECK(same(gauss_curvature(hf, {1, 1}), Expr(-1)));
    ExprMatrix sph = ExprMatrix::Zero(2, 2);
    sph(0, 0) = P(b, "4/(1 + x^2 + y^2)^2");
    sph(1, 1) = sph(0, 0);
    CHECK(is_zero(gauss_curvature(b, sph) - Expr(1), b, {}).zero());
    CHECK_THROWS((void)gauss_curvature(b, ExprMatrix::Zero(2, 2)));
  }

  TEST_CASE("symmetric case flags") {
    SymmetricCaseFlags f = symmetric_case_check(structure("heisenberg3-riem"));
    CHECK(f.symmetric);
    CHECK(f.flat);
    f = symmetric_case_check(structure("twisted-heisenberg"));
    CHECK_FALSE(f.symmetric);
    CHECK(f.h_zero.kind == ZeroVerdict::Kind::Nonzero);
    f = symmetric_case_check(structure("hyperbolic-lift"));
    CHECK(f.symmetric);
    CHECK_FALSE(f.flat);
    CHECK(same(f.kappa, Expr(-1)));
    CHECK(symmetric_case_check(structure("heisenberg5-case3")).symmetric);
  }
}
