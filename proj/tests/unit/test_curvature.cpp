#include "support.hpp"

using namespace spr;
using spr::test::P;
using spr::test::same;
using spr::test::structure;

namespace {

CurvatureData curvature_of(const SubPRStructure& s, const Expr& c) {
  const ExprMatrix g = extend_metric(s, c);
  CurvatureData curv = riemann(levi_civita(g, s), s.frame(), g);
  ricci(curv, g);
  return curv;
}

std::size_t at(int a, int b, int c, int d, int dim) {
  return static_cast<std::size_t>(((a * dim + b) * dim + c) * dim + d);
}

}  // namespace

TEST_SUITE("curvature") {
  TEST_CASE("flat Heisenberg Riemann values") {
    const SubPRStructure s = structure("heisenberg3-riem");
    const CurvatureData curv = curvature_of(s, Expr(1));
    CHECK(same(curv.lowered(1, 2, 2, 1), Expr::rational(-3, 4)));
    CHECK(same(curv.lowered(0, 1, 1, 0), Expr::rational(1, 4)));
    CHECK(same(curv.lowered(0, 2, 2, 0), Expr::rational(1, 4)));
    CHECK(same(curv.lowered(2, 1, 2, 1), Expr::rational(3, 4)));
    CHECK(same(curv.R(1, 2, 2, 1), Expr::rational(-3, 4)));
    // Curvature-type symmetries.
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        for (int c = 0; c < 3; ++c) {
          for (int d = 0; d < 3; ++d) {
            CHECK(same(curv.lowered(a, b, c, d), -curv.lowered(b, a, c, d)));
            CHECK(same(curv.lowered(a, b, c, d), curv.lowered(c, d, a, b)));
            CHECK((curv.lowered(a, b, c, d) + curv.lowered(b, c, a, d) + curv.lowered(c, a, b, d)).is_symbolic_zero());
          }
        }
      }
    }
  }

  TEST_CASE("sectional curvature") {
    const SubPRStructure hyp = structure("hyperbolic-lift");
    const ExprMatrix g = extend_metric(hyp, Expr(1));
    const CurvatureData curv = curvature_of(hyp, Expr(1));
    CHECK(same(sectional(curv, g, 1, 2, hyp.tester()), Expr::rational(-7, 4)));
    CHECK(same(sectional(curv, g, 2, 1, hyp.tester()), Expr::rational(-7, 4)));
    CHECK(same(sectional(curv, g, 0, 1, hyp.tester()), Expr::rational(1, 4)));
    const std::vector<Expr> x{Expr(0), Expr(1), Expr(0)};
    const std::vector<Expr> y{Expr(0), Expr(3), Expr(2)};
    CHECK(same(sectional(curv, g, x, y, hyp.tester()), Expr::rational(-7, 4)));
    CHECK_THROWS_AS((void)sectional(curv, g, 1, 1, hyp.tester()), DegeneratePlaneError);
    CHECK_THROWS_AS((void)sectional(curv, g, 1, 3, hyp.tester()), std::out_of_range);

    const SubPRStructure lor = structure("heisenberg3-lor");
    const ExprMatrix gl = extend_metric(lor, Expr(1));
    const CurvatureData cl = curvature_of(lor, Expr(1));
    // X1 + X2 is null, so the plane it spans with X0 is degenerate.
    CHECK_THROWS_AS((void)sectional(cl, gl, {Expr(0), Expr(1), Expr(1)}, {Expr(1), Expr(0), Expr(0)}, lor.tester()),
                    DegeneratePlaneError);
  }

  TEST_CASE("decomposition of the distribution sectional curvature") {
    const SubPRStructure tw = structure("twisted-heisenberg");
    const DecompositionReport r = decomposition_residual(tw, Expr(2));
    CHECK(r.ok());
    REQUIRE(r.entries.size() == 1);
    const DecompositionEntry& e = r.entries[0];
    CHECK(e.i == 1);
    CHECK(e.j == 2);
    CHECK(same(e.kappa, kappa_dim3(tw)));
    CHECK(same(e.omega_term, Expr(1)));
    CHECK(same(e.h_term, h_invariant(tw).det_h_sharp));
    CHECK(same(e.curvature, e.kappa - e.h_term / Expr(2) - Expr::rational(3, 2)));

    const DecompositionReport flat = decomposition_residual(structure("heisenberg3-riem"), Expr(1));
    REQUIRE(flat.entries.size() == 1);
    CHECK(flat.entries[0].kappa.is_symbolic_zero());
    CHECK(flat.entries[0].h_term.is_symbolic_zero());
    CHECK(same(flat.entries[0].curvature, Expr::rational(-3, 4)));

    const SubPRStructure h5 = structure("heisenberg5-case1");
    const DecompositionReport d5 = decomposition_residual(h5, Expr(1));
    CHECK(d5.ok());
    CHECK(d5.entries.size() == 6);
    for (const auto& en : d5.entries) {
      const bool paired = (en.i == 1 && en.j == 2) || (en.i == 3 && en.j == 4);
      CAPTURE(en.i);
      CAPTURE(en.j);
      CHECK(same(en.curvature, paired ? Expr::rational(-3, 4) : Expr(0)));
    }
    CHECK(decomposition_residual(structure("hyperbolic-lift-lor"), P(tw.chart(), "exp(z)")).ok());
    CHECK_THROWS_AS((void)decomposition_residual(tw, Expr(0)), std::invalid_argument);
  }

  TEST_CASE("Ricci tensors against the frozen oracle") {
    const CurvatureData hyp1 = curvature_of(structure("hyperbolic-lift"), Expr(1));
    CHECK(same(hyp1.ricci_sym(0, 0), Expr::rational(1, 2)));
    CHECK(same(hyp1.ricci_sym(1, 1), Expr::rational(-3, 2)));
    CHECK(same(hyp1.ricci_sym(2, 2), Expr::rational(-3, 2)));
    CHECK(hyp1.ricci_sym(0, 1).is_symbolic_zero());
    CHECK(same(hyp1.scalar, Expr::rational(-5, 2)));
    const CurvatureData hyp2 = curvature_of(structure("hyperbolic-lift"), Expr(2));
    CHECK(same(hyp2.ricci_sym(0, 0), Expr(2)));
    CHECK(same(hyp2.ricci_sym(1, 1), Expr(-2)));
    CHECK(same(hyp2.scalar, Expr(-3)));

    const CurvatureData lor1 = curvature_of(structure("heisenberg3-lor"), Expr(1));
    CHECK(same(lor1.ricci_sym(0, 0), Expr::rational(-1, 2)));
    CHECK(same(lor1.ricci_sym(1, 1), Expr::rational(-1, 2)));
    CHECK(same(lor1.ricci_sym(2, 2), Expr::rational(1, 2)));
    CHECK(same(lor1.scalar, Expr::rational(1, 2)));
    const CurvatureData lor2 = curvature_of(structure("heisenberg3-lor"), Expr(2));
    CHECK(same(lor2.ricci_sym(0, 0), Expr(-2)));
    CHECK(same(lor2.ricci_sym(1, 1), Expr(-1)));
    CHECK(same(lor2.ricci_sym(2, 2), Expr(1)));
    CHECK(same(lor2.scalar, Expr(1)));

    const SubPRStructure tw = structure("twisted-heisenberg");
    const Chart& c = tw.chart();
    const CurvatureData t1 = curvature_of(tw, Expr(1));
    CHECK(same(t1.ricci_sym(0, 1), c, "-x^3/4 - 3*y*exp(2*z)/4"));
    CHECK(same(t1.ricci_sym(0, 2), c, "-x*(x*y + 1)*exp(z)/4"));
    CHECK(same(t1.ricci_sym(0, 0),
               c, "-x^4/32 - x^2*y^2*exp(2*z)/16 - x*y*exp(2*z)/2 - y^4*exp(4*z)/32 - exp(2*z)/2 + 1/2"));
    CHECK(same(t1.scalar, c,
               "-x^4/32 - x^2*y^2*exp(2*z)/16 - 7*x^2/4 - x*y*exp(2*z)/2 - y^4*exp(4*z)/32 + y^2*exp(2*z)/4"
               " - exp(2*z)/2 - 1/2"));
    CHECK(same(t1.ricci_sym(1, 0), t1.ricci_sym(0, 1)));
  }

  TEST_CASE("polarization") {
    const SubPRStructure s = structure("twisted-heisenberg");
    const CurvatureData curv = curvature_of(s, Expr(1));
    const std::vector<Expr> t = polarize_biquadratic(biquadratic_of(curv, 2), 2);
    REQUIRE(t.size() == 16);
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        for (int c = 0; c < 2; ++c) {
          for (int d = 0; d < 2; ++d) CHECK(same(t[at(a, b, c, d, 2)], curv.lowered(a + 1, b + 1, c + 1, d + 1)));
        }
      }
    }

    // B(X, Y) = omega(X, Y)^2 on the dim-5 distribution.
    const SubPRStructure h5 = structure("heisenberg5-case1");
    const ExprMatrix w = h5.omega();
    const Biquadratic b = [&](const std::vector<Expr>& x, const std::vector<Expr>& y) {
      Expr v(0);
      for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) v = v + w(i, j) * x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)];
      }
      return v * v;
    };
    const std::vector<Expr> p = polarize_biquadratic(b, 4);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) CHECK(same(p[at(i, j, j, i, 4)], w(i, j) * w(i, j)));
    }
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        for (int k = 0; k < 4; ++k) {
          for (int l = 0; l < 4; ++l) {
            CHECK(same(p[at(i, j, k, l, 4)], -p[at(j, i, k, l, 4)]));
            CHECK(same(p[at(i, j, k, l, 4)], p[at(k, l, i, j, 4)]));
          }
        }
      }
    }
  }

  TEST_CASE("the distribution tensor R_D") {
    const std::vector<Expr> hyp = r_d_tensor(structure("hyperbolic-lift"), Expr(1));
    CHECK(same(hyp[at(0, 1, 1, 0, 2)], Expr(-1)));
    CHECK(same(hyp[at(0, 1, 0, 1, 2)], Expr(1)));
    CHECK(hyp[at(0, 0, 1, 1, 2)].is_symbolic_zero());

    for (const char* name : {"heisenberg3-riem", "heisenberg3-lor", "heisenberg5-case3"}) {
      for (const Expr& v : r_d_tensor(structure(name), Expr(2))) CHECK(v.is_symbolic_zero());
    }

    const SubPRStructure tw = structure("twisted-heisenberg");
    const std::vector<Expr> a = r_d_tensor(tw, Expr(1));
    const std::vector<Expr> b = r_d_tensor(tw, Expr(2));
    const std::vector<Expr> d = r_d_tensor(tw, Expr(-1));
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
      CHECK(same(a[k], b[k]));
      CHECK(same(a[k], d[k]));
    }
    CHECK(same(a[at(0, 1, 1, 0, 2)], kappa_dim3(tw)));
    CHECK_THROWS_AS((void)r_d_tensor(tw, Expr(0)), std::invalid_argument);
  }
}
