#include "support.hpp"

using namespace spr;
using spr::test::field;
using spr::test::P;
using spr::test::same;
using spr::test::structure;
using spr::test::xyz;

namespace {

// [X1, X2] = a X2 + X0 with X0 = d/dz central; a = 2.
SubPRStructure solvable_example() {
  const Chart c = xyz();
  return build_structure(c, {field(c, {"1", "0", "0"}), field(c, {"0", "exp(2*x)", "(exp(2*x) - 1)/2"})}, {1, 1});
}

void check_c(const SubPRStructure& s, int i, int j, int k, const Expr& v) {
  CAPTURE(i);
  CAPTURE(j);
  CAPTURE(k);
  CHECK(same(s.c(i, j, k), v));
  CHECK(same(s.c(j, i, k), -v));
}

}  // namespace

TEST_SUITE("structure") {
  TEST_CASE("flat Heisenberg normalization") {
    const SubPRStructure s = structure("heisenberg3-riem");
    const Chart& c = s.chart();
    CHECK(s.n() == 1);
    CHECK(same(s.alpha().get({0}), c, "y/2"));
    CHECK(same(s.alpha().get({1}), c, "-x/2"));
    CHECK(same(s.alpha().get({2}), Expr(1)));
    CHECK(same(s.reeb()[0], Expr(0)));
    CHECK(same(s.reeb()[1], Expr(0)));
    CHECK(same(s.reeb()[2], Expr(1)));
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
          const bool heis = (i == 1 && j == 2 && k == 0) || (i == 2 && j == 1 && k == 0);
          if (!heis) CHECK(s.c(i, j, k).is_symbolic_zero());
        }
      }
    }
    check_c(s, 1, 2, 0, Expr(1));
    CHECK(same(s.omega()(0, 1), Expr(1)));
  }

  TEST_CASE("hyperbolic lift structure functions") {
    const SubPRStructure s = structure("hyperbolic-lift");
    const Chart& c = s.chart();
    CHECK(same(s.alpha().get({0}), c, "-1/y"));
    CHECK(s.alpha().get({1}).is_symbolic_zero());
    CHECK(same(s.alpha().get({2}), Expr(1)));
    CHECK(same(s.reeb()[2], Expr(1)));
    check_c(s, 1, 2, 1, Expr(-1));
    check_c(s, 1, 2, 0, Expr(1));
    for (int i = 1; i <= 2; ++i) {
      for (int k = 0; k < 3; ++k) CHECK(s.c(0, i, k).is_symbolic_zero());
    }
  }

  TEST_CASE("twisted Heisenberg against the frozen oracle") {
    const SubPRStructure s = structure("twisted-heisenberg");
    const Chart& c = s.chart();
    CHECK(same(s.alpha().get({0}), c, "y*exp(-z)/2"));
    CHECK(same(s.alpha().get({1}), c, "-x*exp(-z)/2"));
    CHECK(same(s.alpha().get({2}), c, "exp(-z)"));
    CHECK(same(s.reeb()[0], c, "x*exp(z)/2"));
    CHECK(same(s.reeb()[1], c, "y*exp(z)/2"));
    CHECK(same(s.reeb()[2], c, "exp(z)"));
    check_c(s, 0, 1, 1, P(c, "(x*y + 2)*exp(z)/4"));
    check_c(s, 0, 1, 2, P(c, "y^2*exp(2*z)/4"));
    check_c(s, 0, 2, 1, P(c, "-x^2/4"));
    check_c(s, 0, 2, 2, P(c, "(-x*y - 2)*exp(z)/4"));
    check_c(s, 1, 2, 0, Expr(1));
    check_c(s, 1, 2, 1, P(c, "-x"));
    check_c(s, 1, 2, 2, P(c, "-y*exp(z)/2"));
    check_c(s, 0, 1, 0, Expr(0));
    check_c(s, 0, 2, 0, Expr(0));

    const HData h = h_invariant(s);
    CHECK(same(h.h(0, 0), c, "(-x*y - 2)*exp(z)/4"));
    CHECK(same(h.h(0, 1), c, "x^2/8 - y^2*exp(2*z)/8"));
    CHECK(same(h.h(1, 0), h.h(0, 1)));
    CHECK(same(h.h(1, 1), c, "(x*y + 2)*exp(z)/4"));
    const Expr gamma = s.c(0, 1, 2) + s.c(0, 2, 1);
    CHECK(same(h.h(0, 0), -s.c(0, 1, 1)));
    CHECK(same(h.h(0, 1), -gamma / Expr(2)));
    CHECK(same(h.h(1, 1), -s.c(0, 2, 2)));
    CHECK(same(h.det_h_sharp, h.h(0, 0) * h.h(1, 1) - h.h(0, 1) * h.h(0, 1)));
    CHECK(same(kappa_dim3(s), c, "-7*x^2/8 + y^2*exp(2*z)/8"));
  }

  TEST_CASE("contact condition and frame validation") {
    const Chart c = xyz();
    try {
      (void)build_structure(c, {field(c, {"1", "0", "0"}), field(c, {"0", "1", "0"})}, {1, 1});
      FAIL("no error");
    } catch (const StructureError& e) {
      CHECK(e.kind == StructureError::Kind::NotContact);
    }
    try {
      (void)build_structure(c, {field(c, {"1", "0", "-y/2"}), field(c, {"2", "0", "-y"})}, {1, 1});
      FAIL("no error");
    } catch (const StructureError& e) {
      CHECK(e.kind == StructureError::Kind::FrameDependent);
    }
    try {
      (void)build_structure(c, {field(c, {"1", "0", "-y/2"}), field(c, {"0", "1", "x/2"})}, {1, 2});
      FAIL("no error");
    } catch (const StructureError& e) {
      CHECK(e.kind == StructureError::Kind::BadSignature);
    }
    try {
      (void)build_structure(c, {field(c, {"1", "0", "-y/2"})}, {1});
      FAIL("no error");
    } catch (const StructureError& e) {
      CHECK(e.kind == StructureError::Kind::BadDimension);
    }
    const Chart even({"x", "y"}, {});
    CHECK_THROWS_AS((void)build_structure(even, {field(even, {"1", "0"}), field(even, {"0", "1"})}, {1, 1}),
                    StructureError);
  }

  TEST_CASE("dimension five normalization") {
    const SubPRStructure s = structure("heisenberg5-case1");
    const Chart& c = s.chart();
    CHECK(s.n() == 2);
    CHECK(same(s.alpha().get({4}), Expr(1)));
    CHECK(same(s.alpha().get({0}), c, "y1/2"));
    CHECK(same(s.reeb()[4], Expr(1)));
    CHECK(same(s.omega()(0, 1), Expr(1)));
    CHECK(same(s.omega()(2, 3), Expr(1)));
    CHECK(s.omega()(0, 2).is_symbolic_zero());
    CHECK(s.omega()(1, 3).is_symbolic_zero());
    for (int i = 1; i <= 4; ++i) {
      for (int j = 1; j <= 4; ++j) {
        if (i != j) CHECK(kappa_general(s, i, j).is_symbolic_zero());
      }
    }
  }

  TEST_CASE("extended metric") {
    const SubPRStructure s = structure("heisenberg3-riem");
    const ExprMatrix g = extend_metric(s, Expr(1));
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) CHECK(same(g(i, j), Expr(i == j ? 1 : 0)));
    }
    const SubPRStructure l = structure("heisenberg3-lor");
    const ExprMatrix gl = extend_metric(l, Expr(-2));
    CHECK(same(gl(0, 0), Expr(-2)));
    CHECK(same(gl(1, 1), Expr(-1)));
    CHECK(same(gl(2, 2), Expr(1)));
    const ExprMatrix ge = extend_metric(s, P(s.chart(), "exp(z)"));
    CHECK(same(ge(0, 0), s.chart(), "exp(z)"));
    CHECK_THROWS_AS((void)extend_metric(s, Expr(0)), std::invalid_argument);
    // Coordinate form of G^1 on the Heisenberg group: dx^2 + dy^2 + alpha^2.
    const ExprMatrix gc = coordinate_metric(s.frame(), g);
    CHECK(same(gc(2, 2), Expr(1)));
    CHECK(same(gc(0, 2), s.chart(), "y/2"));
    CHECK(same(gc(0, 0), s.chart(), "1 + y^2/4"));
  }

  TEST_CASE("kappa") {
    CHECK(kappa_dim3(structure("heisenberg3-riem")).is_symbolic_zero());
    CHECK(kappa_dim3(structure("heisenberg3-lor")).is_symbolic_zero());
    const SubPRStructure hyp = structure("hyperbolic-lift");
    CHECK(same(kappa_dim3(hyp), Expr(-1)));
    CHECK(same(kappa_general(hyp, 1, 2), Expr(-1)));
    const SubPRStructure sol = solvable_example();
    check_c(sol, 1, 2, 2, Expr(2));
    check_c(sol, 1, 2, 0, Expr(1));
    CHECK(same(kappa_dim3(sol), Expr(-4)));
    CHECK(same(kappa_general(sol, 1, 2), kappa_dim3(sol)));
    const SubPRStructure tw = structure("twisted-heisenberg");
    CHECK(same(kappa_general(tw, 1, 2), kappa_dim3(tw)));
    CHECK(same(kappa_general(tw, 1, 2), kappa_general(tw, 2, 1)));
    CHECK_THROWS_AS((void)kappa_general(tw, 1, 1), std::out_of_range);
    CHECK_THROWS_AS((void)kappa_dim3(structure("heisenberg5-case1")), StructureError);
    const SubPRStructure lor = structure("hyperbolic-lift-lor");
    CHECK(same(kappa_general(lor, 1, 2), kappa_dim3(lor)));
  }

  TEST_CASE("kappa_general is symmetric in dimension five") {
    const Chart c = heisenberg5_chart();
    auto frame = heisenberg5_frame(c);
    frame[1] = P(c, "1 + x2^2") * frame[1];
    const SubPRStructure s = build_structure(c, frame, {1, -1, 1, 1});
    for (int i = 1; i <= 4; ++i) {
      for (int j = i + 1; j <= 4; ++j) CHECK(same(kappa_general(s, i, j), kappa_general(s, j, i)));
    }
  }

  TEST_CASE("exterior power metric") {
    const ExteriorMetric e = exterior_power_metric({1, 1, 1, 1}, 2);
    REQUIRE(e.basis.size() == 6);
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 6; ++j) CHECK(same(e.gram(i, j), Expr(i == j ? 1 : 0)));
    }
    const ExteriorMetric l = exterior_power_metric({-1, 1, -1, 1}, 2);
    CHECK(same(l.gram(0, 0), Expr(-1)));  // e1 ^ e2
    CHECK(same(l.gram(1, 1), Expr(1)));   // e1 ^ e3
    CHECK(same(l.gram(0, 1), Expr(0)));
  }

  TEST_CASE("orientation flip") {
    const SubPRStructure s = structure("heisenberg3-riem");
    const SubPRStructure f = orientation_flip(s);
    CHECK(same(f.reeb()[2], Expr(-1)));
    const ExprMatrix g1 = coordinate_metric(s.frame(), extend_metric(s, Expr(3)));
    const ExprMatrix g2 = coordinate_metric(f.frame(), extend_metric(f, Expr(3)));
    CHECK(zero_matrix_verdict(g1 - g2, s.tester()).zero());

    const SubPRStructure tw = structure("twisted-heisenberg");
    const SubPRStructure tf = orientation_flip(tw);
    const ExprMatrix gt1 = coordinate_metric(tw.frame(), extend_metric(tw, P(tw.chart(), "exp(z)")));
    const ExprMatrix gt2 = coordinate_metric(tf.frame(), extend_metric(tf, P(tw.chart(), "exp(z)")));
    CHECK(zero_matrix_verdict(gt1 - gt2, tw.tester()).zero());
    // h changes sign; in the frame (-X1, X2) the mixed entry picks up a second sign.
    const HData h = h_invariant(tw);
    const HData hf = h_invariant(tf);
    CHECK(same(hf.h(0, 0), -h.h(0, 0)));
    CHECK(same(hf.h(1, 1), -h.h(1, 1)));
    CHECK(same(hf.h(0, 1), h.h(0, 1)));
    CHECK(same(kappa_dim3(tf), kappa_dim3(tw)));
  }
}
