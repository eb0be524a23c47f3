#include "spr/corpus.hpp"

namespace spr {

namespace {

VectorField field(const Chart& chart, std::initializer_list<const char*> comps) {
  std::vector<Expr> v;
  for (const char* c : comps) v.push_back(chart.parse(c));
  return VectorField(v);
}

Chart xyz() { return Chart({"x", "y", "z"}, {}); }

std::vector<VectorField> heisenberg3_frame(const Chart& c) {
  return {field(c, {"1", "0", "-y/2"}), field(c, {"0", "1", "x/2"})};
}

Builtin from_lift(std::string name, SurfaceBase base, const SamplingPlan& plan) {
  QuotientData q = lift_structure(surface_base(base, plan));
  SubPRStructure s = q.lifted;
  return {std::move(name), std::move(s), std::move(q), std::nullopt};
}

}  // namespace

std::vector<std::string> builtin_names() {
  return {"heisenberg3-riem",  "heisenberg3-lor",  "heisenberg5-case1",   "heisenberg5-case2",
          "heisenberg5-case3", "heisenberg5-scaled", "hyperbolic-lift",   "hyperbolic-lift-lor",
          "sphere-lift",       "euclidean-lift",   "twisted-heisenberg", "berger-lorentz"};
}

Chart heisenberg5_chart() { return Chart({"x1", "y1", "x2", "y2", "z"}, {}); }

std::vector<VectorField> heisenberg5_frame(const Chart& c, const Expr& scale) {
  std::vector<VectorField> f = {field(c, {"1", "0", "0", "0", "-y1/2"}), field(c, {"0", "1", "0", "0", "x1/2"}),
                                field(c, {"0", "0", "1", "0", "-y2/2"}), field(c, {"0", "0", "0", "1", "x2/2"})};
  f[2] = scale * f[2];
  f[3] = scale * f[3];
  return f;
}

QuotientInput surface_base(SurfaceBase base, SamplingPlan plan) {
  QuotientInput in;
  in.plan = plan;
  in.signature = {1, 1};
  switch (base) {
    case SurfaceBase::Euclidean: {
      in.base = Chart({"x", "y"}, {});
      in.base_frame = {field(in.base, {"1", "0"}), field(in.base, {"0", "1"})};
      in.theta = KForm::one_form({in.base.parse("-y/2"), in.base.parse("x/2")});
      in.omega = KForm(2, 2);
      in.omega.set({0, 1}, Expr(1));
      break;
    }
    case SurfaceBase::Hyperbolic:
    case SurfaceBase::HyperbolicLorentz: {
      in.base = Chart({"x", "y"}, {{-1.0, 1.0}, {0.5, 2.0}});
      in.base_frame = {field(in.base, {"y", "0"}), field(in.base, {"0", "y"})};
      in.theta = KForm::one_form({in.base.parse("1/y"), Expr()});
      in.omega = KForm(2, 2);
      in.omega.set({0, 1}, in.base.parse("y^-2"));
      if (base == SurfaceBase::HyperbolicLorentz) in.signature = {-1, 1};
      break;
    }
    case SurfaceBase::Sphere: {
      in.base = Chart({"x", "y"}, {});
      in.base_frame = {field(in.base, {"(1 + x^2 + y^2)/2", "0"}), field(in.base, {"0", "(1 + x^2 + y^2)/2"})};
      in.theta = KForm::one_form({in.base.parse("-2*y/(1 + x^2 + y^2)"), in.base.parse("2*x/(1 + x^2 + y^2)")});
      in.omega = KForm(2, 2);
      in.omega.set({0, 1}, in.base.parse("4/(1 + x^2 + y^2)^2"));
      break;
    }
  }
  return in;
}

Builtin builtin(std::string_view name, SamplingPlan plan) {
  const std::string n(name);
  if (n == "heisenberg3-riem") return {n, build_structure(xyz(), heisenberg3_frame(xyz()), {1, 1}, plan), {}, {}};
  if (n == "heisenberg3-lor") return {n, build_structure(xyz(), heisenberg3_frame(xyz()), {-1, 1}, plan), {}, {}};
  if (n == "heisenberg5-case1" || n == "heisenberg5-case2" || n == "heisenberg5-case3" || n == "heisenberg5-scaled") {
    const Chart c = heisenberg5_chart();
    std::vector<int> sig = {1, 1, 1, 1};
    if (n == "heisenberg5-case2") sig = {-1, 1, 1, 1};
    if (n == "heisenberg5-case3") sig = {-1, 1, -1, 1};
    const Expr scale = n == "heisenberg5-scaled" ? c.parse("sqrt(2)") : Expr(1);
    return {n, build_structure(c, heisenberg5_frame(c, scale), sig, plan), {}, {}};
  }
  if (n == "hyperbolic-lift") return from_lift(n, SurfaceBase::Hyperbolic, plan);
  if (n == "hyperbolic-lift-lor") return from_lift(n, SurfaceBase::HyperbolicLorentz, plan);
  if (n == "sphere-lift") return from_lift(n, SurfaceBase::Sphere, plan);
  if (n == "euclidean-lift") return from_lift(n, SurfaceBase::Euclidean, plan);
  if (n == "twisted-heisenberg") {
    const Chart c = xyz();
    return {n, build_structure(c, {field(c, {"exp(z)", "0", "-exp(z)*y/2"}), field(c, {"0", "1", "x/2"})}, {1, 1}, plan), {}, {}};
  }
  if (n.rfind("berger-lorentz", 0) == 0) {
    Expr eps;
    const std::string rest = n.substr(14);
    if (!rest.empty()) {
      if (rest.size() < 3 || rest.front() != '(' || rest.back() != ')') throw UnknownBuiltin("malformed parameter in '" + n + "'");
      try {
        eps = Expr::rational(rest.substr(1, rest.size() - 2));
      } catch (const std::exception&) {
        throw UnknownBuiltin("parameter of berger-lorentz must be rational");
      }
    }
    const Chart c = xyz();
    // Frame dual to (dx - x dy, dy) on ker(dz - x dy).
    SubPRStructure s = build_structure(c, {field(c, {"1", "0", "0"}), field(c, {"x", "1", "x"})}, {-1, 1}, plan);
    return {n, std::move(s), {}, coordinate_family(eps, plan)};
  }
  throw UnknownBuiltin("unknown builtin '" + n + "'");
}

}  // namespace spr
