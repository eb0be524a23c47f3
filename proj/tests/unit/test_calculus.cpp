#include "spr/acceptance.hpp"
#include "spr/isometry.hpp"
#include "support.hpp"

using namespace spr;
using spr::test::field;
using spr::test::P;
using spr::test::same;
using spr::test::xyz;

namespace {

bool same_field(const VectorField& a, const VectorField& b) {
  if (a.dim() != b.dim()) return false;
  for (int k = 0; k < a.dim(); ++k) {
    if (!same(a[k], b[k])) return false;
  }
  return true;
}

bool same_form(const KForm& a, const KForm& b) {
  if (a.degree() != b.degree()) return false;
  for (const auto& [idx, v] : a.components()) {
    if (!same(v, b.get(idx))) return false;
  }
  for (const auto& [idx, v] : b.components()) {
    if (!same(v, a.get(idx))) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("calculus") {
  TEST_CASE("Lie brackets") {
    const Chart c = xyz();
    const VectorField dx = VectorField::coordinate(3, 0);
    const VectorField dy = VectorField::coordinate(3, 1);
    const VectorField dz = VectorField::coordinate(3, 2);
    CHECK(same_field(lie_bracket(dx, dy), VectorField::zero(3)));
    const VectorField x1 = field(c, {"1", "0", "-y/2"});
    const VectorField x2 = field(c, {"0", "1", "x/2"});
    CHECK(same_field(lie_bracket(x1, x2), dz));
    CHECK(same_field(lie_bracket(P(c, "x") * dy, dx), -dy));
    CHECK(same_field(lie_bracket(x1, x2), -lie_bracket(x2, x1)));
  }

  TEST_CASE("exterior derivative and wedge") {
    const Chart c = xyz();
    const KForm alpha = KForm::one_form({P(c, "y/2"), P(c, "-x/2"), Expr(1)});
    const KForm da = exterior_derivative(alpha);
    CHECK(da.degree() == 2);
    CHECK(same(da.get({0, 1}), Expr(-1)));
    CHECK(da.get({0, 2}).is_symbolic_zero());
    CHECK(da.get({1, 2}).is_symbolic_zero());
    CHECK(same(da.get({1, 0}), Expr(1)));

    const KForm xdy = P(c, "x") * KForm::dx(3, 1);
    CHECK(same(exterior_derivative(xdy).get({0, 1}), Expr(1)));

    const KForm f = KForm::function(3, P(c, "sin(x*y)*exp(z)"));
    for (const auto& [idx, v] : exterior_derivative(exterior_derivative(f)).components()) CHECK(v.is_symbolic_zero());
    for (const auto& [idx, v] : exterior_derivative(exterior_derivative(alpha)).components()) CHECK(v.is_symbolic_zero());

    const KForm dxdy = wedge(KForm::dx(3, 0), KForm::dx(3, 1));
    const KForm dydx = wedge(KForm::dx(3, 1), KForm::dx(3, 0));
    CHECK(same_form(dxdy, Expr(-1) * dydx));
    CHECK(wedge(KForm::dx(3, 0), KForm::dx(3, 0)).components().empty());
    const KForm vol = wedge(KForm::dx(3, 0), wedge(KForm::dx(3, 1), KForm::dx(3, 2)));
    const std::vector<VectorField> coords{VectorField::coordinate(3, 0), VectorField::coordinate(3, 1),
                                          VectorField::coordinate(3, 2)};
    CHECK(same(evaluate_form(vol, coords), Expr(1)));
    CHECK(same_form(wedge(wedge(KForm::dx(3, 0), KForm::dx(3, 1)), KForm::dx(3, 2)), vol));
  }

  TEST_CASE("form evaluation uses the determinant convention") {
    const Chart c = xyz();
    const VectorField x1 = field(c, {"1", "0", "-y/2"});
    const VectorField x2 = field(c, {"0", "1", "x/2"});
    const KForm dxdy = wedge(KForm::dx(3, 0), KForm::dx(3, 1));
    CHECK(same(evaluate_form(dxdy, {x1, x2}), Expr(1)));
    CHECK(evaluate_form(dxdy, {x1, x1}).is_symbolic_zero());
    CHECK(same(evaluate_form(KForm::dx(3, 2), {VectorField::coordinate(3, 2)}), Expr(1)));
    // d alpha(X, Y) = X alpha(Y) - Y alpha(X) - alpha([X, Y]).
    const KForm alpha = KForm::one_form({P(c, "y*z"), P(c, "x^2"), P(c, "sin(y)")});
    const Expr lhs = evaluate_form(exterior_derivative(alpha), {x1, x2});
    const Expr rhs = x1(evaluate_form(alpha, {x2})) - x2(evaluate_form(alpha, {x1})) -
                     evaluate_form(alpha, {lie_bracket(x1, x2)});
    CHECK(same(lhs, rhs));
    CHECK(same(evaluate_form(contract(x1, exterior_derivative(alpha)), {x2}), lhs));
  }

  TEST_CASE("maps: pushforward, pullback and inverses") {
    const Chart c = heisenberg5_chart();
    const auto frame = heisenberg5_frame(c);
    const MapPair t = bch_left_translation({Expr(1), Expr(0), Expr(0), Expr(0), Expr(0)}, c);
    CHECK(same_field(pushforward(t.map, t.inverse, frame[0]), frame[0]));
    const PointMap id = compose(t.map, t.inverse);
    for (int k = 0; k < 5; ++k) CHECK(same(id.components[static_cast<std::size_t>(k)], c.coord(k)));

    const Chart c3 = xyz();
    const PointMap ident = identity_map(c3);
    CHECK(same_form(pullback_form(ident, KForm::dx(3, 2)), KForm::dx(3, 2)));

    const PointMap poly{{P(c3, "x + y^2"), P(c3, "y - z*x"), P(c3, "z + x*y^3")}};
    const KForm alpha = KForm::one_form({P(c3, "y/2"), P(c3, "-x/2 + z^2"), P(c3, "exp(x)")});
    CHECK(same_form(pullback_form(poly, exterior_derivative(alpha)), exterior_derivative(pullback_form(poly, alpha))));
    const KForm b = KForm::one_form({P(c3, "z"), Expr(1), P(c3, "x*y")});
    CHECK(same_form(pullback_form(poly, wedge(alpha, b)), wedge(pullback_form(poly, alpha), pullback_form(poly, b))));

    const ExprMatrix g = identity_matrix(3);
    const ExprMatrix pg = pullback_metric(poly, g);
    const ExprMatrix j = jacobian(poly);
    CHECK(same(pg(0, 1), j(0, 0) * j(0, 1) + j(1, 0) * j(1, 1) + j(2, 0) * j(2, 1)));
  }

  TEST_CASE("affine inverse") {
    const Chart c = xyz();
    const PointMap f{{P(c, "2*x + y + 1"), P(c, "y - 3"), P(c, "z + x")}};
    const PointMap finv = affine_inverse(f, c);
    const PointMap id = compose(f, finv);
    for (int k = 0; k < 3; ++k) CHECK(same(id.components[static_cast<std::size_t>(k)], c.coord(k)));
    const PointMap singular{{P(c, "x + y"), P(c, "x + y"), P(c, "z")}};
    CHECK_THROWS_AS((void)affine_inverse(singular, c), SingularMatrixError);
    const PointMap nonlinear{{P(c, "x^2"), P(c, "y"), P(c, "z")}};
    CHECK_THROWS((void)affine_inverse(nonlinear, c));
  }

  TEST_CASE("frame expansion") {
    const Chart c = xyz();
    const std::vector<VectorField> heis{field(c, {"1", "0", "-y/2"}), field(c, {"0", "1", "x/2"}),
                                        VectorField::coordinate(3, 2)};
    auto e = expand_in_frame(VectorField::coordinate(3, 2), heis);
    CHECK((same(e[0], Expr(0)) && same(e[1], Expr(0)) && same(e[2], Expr(1))));
    e = expand_in_frame(heis[0], heis);
    CHECK((same(e[0], Expr(1)) && same(e[1], Expr(0)) && same(e[2], Expr(0))));

    const Chart h({"x", "y", "z"}, {{-1.0, 1.0}, {0.5, 2.0}, {-1.0, 1.0}});
    const std::vector<VectorField> hyp{field(h, {"y", "0", "1"}), field(h, {"0", "y", "0"}),
                                       VectorField::coordinate(3, 2)};
    e = expand_in_frame(lie_bracket(hyp[0], hyp[1]), hyp);
    CHECK((same(e[0], Expr(-1)) && same(e[1], Expr(0)) && same(e[2], Expr(1))));

    const std::vector<VectorField> dependent{heis[0], heis[0], heis[2]};
    CHECK_THROWS_AS((void)expand_in_frame(heis[1], dependent), SingularMatrixError);
  }

  TEST_CASE("Jacobi identity and d^2 = 0 on random inputs") {
    auto out = acceptance::check_property(acceptance::Property::Jacobi, 40, 5, {});
    CHECK_MESSAGE(out.failures == 0, out.first_failure);
    out = acceptance::check_property(acceptance::Property::DSquared, 200, 6, {});
    CHECK_MESSAGE(out.failures == 0, out.first_failure);
  }
}
