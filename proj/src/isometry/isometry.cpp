#include "spr/isometry.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace spr {

namespace {

std::vector<Expr> coords(const Chart& chart) {
  std::vector<Expr> out;
  for (int i = 0; i < chart.dim(); ++i) out.push_back(chart.coord(i));
  return out;
}

void merge_vector(ZeroVerdict& worst, const VectorField& v, const ZeroTester& zt) {
  for (const auto& e : v.coeffs()) merge_verdict(worst, zt(e));
}

void check_inverse(const PointMap& f, const PointMap& g, const Chart& chart, const ZeroTester& zt) {
  if (f.dim() != chart.dim() || g.dim() != chart.dim()) throw InverseMismatch("map has wrong number of components");
  for (const PointMap& h : {compose(f, g), compose(g, f)}) {
    for (int i = 0; i < chart.dim(); ++i) {
      if (!zt.zero(h.components[static_cast<std::size_t>(i)] - chart.coord(i))) {
        throw InverseMismatch("supplied inverse does not compose to the identity");
      }
    }
  }
}

void require_heisenberg5(const Chart& chart) {
  if (chart.dim() < 5) throw std::invalid_argument("a chart (x1, y1, x2, y2, z) is required");
}

bool hyperbolic(int family, int index) { return family == 3 || (family == 2 && index == 1); }

Chart extended(const Chart& chart, const std::vector<std::string>& extra) {
  auto names = chart.names();
  auto domain = chart.domain();
  for (const auto& n : extra) {
    names.push_back(n);
    domain.push_back({-1.0, 1.0});
  }
  return Chart(names, domain, chart.excluded());
}

// Exact nullspace of a matrix of rational constants.
std::vector<std::vector<Expr>> nullspace(ExprMatrix m) {
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  std::vector<Eigen::Index> pivots;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index p = -1;
    for (Eigen::Index i = r; i < rows; ++i) {
      if (!m(i, c).is_symbolic_zero()) {
        p = i;
        break;
      }
    }
    if (p < 0) continue;
    m.row(p).swap(m.row(r));
    const Expr inv = Expr(1) / m(r, c);
    for (Eigen::Index k = 0; k < cols; ++k) m(r, k) = m(r, k) * inv;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || m(i, c).is_symbolic_zero()) continue;
      const Expr f = m(i, c);
      for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = m(i, k) - f * m(r, k);
    }
    pivots.push_back(c);
    ++r;
  }
  std::vector<std::vector<Expr>> basis;
  for (Eigen::Index free = 0; free < cols; ++free) {
    if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
    std::vector<Expr> v(static_cast<std::size_t>(cols));
    v[static_cast<std::size_t>(free)] = Expr(1);
    for (std::size_t k = 0; k < pivots.size(); ++k) {
      v[static_cast<std::size_t>(pivots[k])] = -m(static_cast<Eigen::Index>(k), free);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<double> frequencies_at(const ExprMatrix& j, const std::vector<double>& p) {
  const Eigen::MatrixXd jm = evaluate(j, p);
  Eigen::EigenSolver<Eigen::MatrixXd> es(jm, false);
  std::vector<double> b;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double im = es.eigenvalues()[i].imag();
    if (im > 1e-12) b.push_back(im);
  }
  std::sort(b.begin(), b.end());
  return b;
}

bool coordinate_free(const Expr& e, int dim) {
  for (int k = 0; k < dim; ++k) {
    if (e.depends_on(k)) return false;
  }
  return true;
}

bool close(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)); }

}  // namespace

IsometryVerdict is_isometry(const PointMap& f, const PointMap& f_inverse, const SubPRStructure& s) {
  const ZeroTester& zt = s.tester();
  check_inverse(f, f_inverse, s.chart(), zt);
  const int d = 2 * s.n();
  IsometryVerdict out;
  out.transition = zero_matrix(d, d);
  for (int i = 1; i <= d; ++i) {
    const std::vector<Expr> e = s.frame().expand(pushforward(f, f_inverse, s.X(i)));
    merge_verdict(out.preserves_d, zt(e[0]));
    for (int j = 1; j <= d; ++j) out.transition(j - 1, i - 1) = e[static_cast<std::size_t>(j)];
  }
  std::vector<Expr> sig;
  for (int i = 1; i <= d; ++i) sig.emplace_back(s.s(i));
  const ExprMatrix g = diagonal_matrix(sig);
  const ExprMatrix diff = multiply(multiply(out.transition.transpose(), g), out.transition) - g;
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      out.metric.push_back(zt(diff(a, b)));
      merge_verdict(out.metric_worst, out.metric.back());
    }
  }
  const KForm pulled = pullback_form(f, s.alpha());
  out.lambda = evaluate_form(pulled, {s.reeb()});
  for (int k = 0; k < s.dim(); ++k) merge_verdict(out.alpha_proportional, zt(pulled.get({k}) - out.lambda * s.alpha().get({k})));
  out.lambda_one = zt(out.lambda - Expr(1));
  merge_vector(out.reeb_preserved, pushforward(f, f_inverse, s.reeb()) - s.reeb(), zt);
  return out;
}

ExtensionReport alpha_reeb_consequence(const PointMap& f, const PointMap& f_inverse, const SubPRStructure& s) {
  const IsometryVerdict v = is_isometry(f, f_inverse, s);
  ExtensionReport r;
  r.lambda_one = v.lambda_one;
  r.reeb_preserved = v.reeb_preserved;
  const ExprMatrix g1 = coordinate_metric(s.frame(), extend_metric(s, Expr(1)));
  r.g1_preserved = zero_matrix_verdict(pullback_metric(f, g1) - g1, s.tester());
  return r;
}

InfinitesimalReport is_infinitesimal_isometry(const VectorField& v, const SubPRStructure& s) {
  if (v.dim() != s.dim()) throw std::invalid_argument("vector field has wrong dimension");
  const ZeroTester& zt = s.tester();
  const int d = 2 * s.n();
  std::vector<std::vector<Expr>> b;
  for (int i = 1; i <= d; ++i) b.push_back(s.frame().expand(lie_bracket(v, s.X(i))));
  InfinitesimalReport r;
  for (int i = 1; i <= d; ++i) {
    const auto& bi = b[static_cast<std::size_t>(i - 1)];
    merge_verdict(r.preserves_d, zt(bi[0]));
    for (int j = i; j <= d; ++j) {
      const auto& bj = b[static_cast<std::size_t>(j - 1)];
      merge_verdict(r.metric, zt(bi[static_cast<std::size_t>(j)] * Expr(s.s(j)) + bj[static_cast<std::size_t>(i)] * Expr(s.s(i))));
    }
  }
  return r;
}

Translation bch_product(const Translation& a, const Translation& b) {
  Translation out;
  for (int k = 0; k < 4; ++k) out[static_cast<std::size_t>(k)] = a[static_cast<std::size_t>(k)] + b[static_cast<std::size_t>(k)];
  out[4] = a[4] + b[4] + Expr::rational(1, 2) * (a[0] * b[1] - a[1] * b[0] + a[2] * b[3] - a[3] * b[2]);
  return out;
}

MapPair bch_left_translation(const Translation& t, const Chart& chart, Variant v) {
  require_heisenberg5(chart);
  const auto make = [&](const Translation& u) {
    PointMap m{coords(chart)};
    for (int k = 0; k < 4; ++k) m.components[static_cast<std::size_t>(k)] += u[static_cast<std::size_t>(k)];
    const Expr x1 = chart.coord(0);
    const Expr y1 = chart.coord(1);
    const Expr x2 = chart.coord(2);
    const Expr y2 = chart.coord(3);
    const Expr twist = v == Variant::Corrected ? u[0] * y1 - u[1] * x1 + u[2] * y2 - u[3] * x2
                                               : x1 * u[1] - y1 * u[0] + x2 * u[3] - y2 * u[2];
    m.components[4] = chart.coord(4) + u[4] + Expr::rational(1, 2) * twist;
    return m;
  };
  Translation neg;
  for (std::size_t k = 0; k < 5; ++k) neg[k] = -t[k];
  return {make(t), make(neg)};
}

int family_size(int family) {
  switch (family) {
    case 1: return 4;
    case 2: return 2;
    case 3: return 4;
    default: throw std::out_of_range("family must be 1, 2 or 3");
  }
}

bool family_member_ambiguous(int family, int index) { return family == 1 && index == 4; }

PointMap isometry_family_cs(int family, int index, const Expr& co, const Expr& si, const Chart& chart, Variant v) {
  require_heisenberg5(chart);
  if (index < 1 || index > family_size(family)) throw std::out_of_range("family index out of range");
  const Expr x1 = chart.coord(0);
  const Expr y1 = chart.coord(1);
  const Expr x2 = chart.coord(2);
  const Expr y2 = chart.coord(3);
  // Rotation (x, y) -> (x co - y si, x si + y co); boost (x co + y si, x si + y co).
  const bool hyp = hyperbolic(family, index);
  const auto first = [&](const Expr& x, const Expr& y) { return hyp ? x * co + y * si : x * co - y * si; };
  const auto second = [&](const Expr& x, const Expr& y) { return x * si + y * co; };
  std::vector<Expr> q;
  const int shape = family == 2 ? (index == 1 ? 2 : 3) : index;
  switch (shape) {
    case 1: q = {first(x2, y2), second(x2, y2), x1, y1}; break;
    case 2: q = {first(x1, y1), second(x1, y1), x2, y2}; break;
    case 3: q = {x1, y1, first(x2, y2), second(x2, y2)}; break;
    default:
      if (family == 1 && v == Variant::Stated) {
        q = {x2, y2, first(x1, y1), second(x2, y2)};
      } else {
        q = {x2, y2, first(x1, y1), second(x1, y1)};
      }
  }
  PointMap m{coords(chart)};
  for (std::size_t k = 0; k < 4; ++k) m.components[k] = q[k];
  return m;
}

PointMap isometry_family(int family, int index, const Expr& theta, const Chart& chart, Variant v) {
  if (!theta.is_constant()) throw std::invalid_argument("theta must be a constant");
  if (hyperbolic(family, index)) return isometry_family_cs(family, index, cosh(theta), sinh(theta), chart, v);
  return isometry_family_cs(family, index, cos(theta), sin(theta), chart, v);
}

VectorField family_generator(int family, int index, const Chart& chart, Variant v) {
  require_heisenberg5(chart);
  const int m = chart.dim();
  const Chart ext = extended(chart, {"theta_"});
  const Expr th = ext.coord(m);
  const bool hyp = hyperbolic(family, index);
  const PointMap ft = isometry_family_cs(family, index, hyp ? cosh(th) : cos(th), hyp ? sinh(th) : sin(th), ext, v);
  PointMap f0inv = affine_inverse(isometry_family_cs(family, index, Expr(1), Expr(), chart, v), chart);
  f0inv.components.push_back(th);
  const PointMap composed = compose(ft, f0inv);
  std::vector<Expr> at_zero = coords(chart);
  at_zero.emplace_back();
  std::vector<Expr> comp;
  for (int k = 0; k < m; ++k) comp.push_back(substitute(differentiate(composed.components[static_cast<std::size_t>(k)], m), at_zero));
  return VectorField(comp);
}

std::vector<VectorField> translation_generators(const Chart& chart, Variant v) {
  require_heisenberg5(chart);
  const int m = chart.dim();
  const Chart ext = extended(chart, {"t1_", "t2_", "t3_", "t4_", "t5_"});
  Translation t;
  for (int k = 0; k < 5; ++k) t[static_cast<std::size_t>(k)] = ext.coord(m + k);
  const PointMap tr = bch_left_translation(t, ext, v).map;
  std::vector<Expr> at_zero = coords(chart);
  at_zero.resize(static_cast<std::size_t>(m + 5));
  std::vector<VectorField> out;
  for (int k = 0; k < 5; ++k) {
    std::vector<Expr> comp;
    for (int a = 0; a < m; ++a) comp.push_back(substitute(differentiate(tr.components[static_cast<std::size_t>(a)], m + k), at_zero));
    out.emplace_back(comp);
  }
  return out;
}

std::vector<VectorField> linear_isotropy_generators(const SubPRStructure& s) {
  const int d = 2 * s.n();
  const int m = s.dim();
  // Distribution parts of the frame in the first d coordinates, and -d alpha there.
  ExprMatrix p = zero_matrix(d, d);
  ExprMatrix om = zero_matrix(d, d);
  for (int a = 0; a < d; ++a) {
    for (int i = 0; i < d; ++i) p(a, i) = s.X(i + 1)[a];
    for (int b = 0; b < d; ++b) {
      if (a != b) om(a, b) = -s.d_alpha().get({a, b});
    }
  }
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = 0; b < d; ++b) {
      if (!coordinate_free(p(a, b), m) || !coordinate_free(om(a, b), m)) {
        throw std::invalid_argument("linear isotropy needs constant frame and contact coefficients");
      }
    }
  }
  std::vector<Expr> sig;
  for (int i = 1; i <= d; ++i) sig.emplace_back(s.s(i));
  const ExprMatrix pinv = inverse(p);
  const ExprMatrix g = multiply(multiply(pinv.transpose(), diagonal_matrix(sig)), pinv);
  // Unknown A with a[i*d + j] = A(i, j); rows encode A^T M + M A = 0 for M = om, g.
  ExprMatrix sys = zero_matrix(2 * d * d, d * d);
  int row = 0;
  for (const ExprMatrix* mm : {static_cast<const ExprMatrix*>(&om), &g}) {
    for (int k = 0; k < d; ++k) {
      for (int l = 0; l < d; ++l, ++row) {
        for (int i = 0; i < d; ++i) {
          sys(row, i * d + k) += (*mm)(i, l);
          sys(row, i * d + l) += (*mm)(k, i);
        }
      }
    }
  }
  std::vector<VectorField> out;
  for (const auto& a : nullspace(sys)) {
    std::vector<Expr> comp(static_cast<std::size_t>(m));
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        const Expr& aij = a[static_cast<std::size_t>(i * d + j)];
        if (!aij.is_symbolic_zero()) comp[static_cast<std::size_t>(i)] += aij * s.chart().coord(j);
      }
    }
    out.emplace_back(comp);
  }
  return out;
}

AlgebraDimension algebra_dimension(const std::vector<VectorField>& generators, const SubPRStructure& s,
                                   const std::vector<double>& p) {
  const int m = s.dim();
  if (static_cast<int>(p.size()) != m) throw std::invalid_argument("point has wrong dimension");
  for (std::size_t g = 0; g < generators.size(); ++g) {
    if (!is_infinitesimal_isometry(generators[g], s).ok()) {
      throw NotAnIsometry("generator " + std::to_string(g) + " is not an infinitesimal isometry", static_cast<int>(g));
    }
  }
  AlgebraDimension out;
  out.bound = (s.n() + 1) * (s.n() + 1);
  if (generators.empty()) return out;
  Eigen::MatrixXd jet(static_cast<Eigen::Index>(generators.size()), m + m * m);
  for (std::size_t g = 0; g < generators.size(); ++g) {
    const auto r = static_cast<Eigen::Index>(g);
    for (int a = 0; a < m; ++a) {
      jet(r, a) = eval_at(generators[g][a], p);
      for (int b = 0; b < m; ++b) jet(r, m + a * m + b) = eval_at(differentiate(generators[g][a], b), p);
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(jet);
  const auto& sv = svd.singularValues();
  const double cut = 1e-9 * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cut) ++out.rank;
  }
  return out;
}

FrequencyData compatibility_and_frequencies(const SubPRStructure& s, const std::vector<double>& p) {
  const int d = 2 * s.n();
  std::vector<Expr> sig;
  bool riemannian = true;
  for (int i = 1; i <= d; ++i) {
    sig.emplace_back(s.s(i));
    riemannian = riemannian && s.s(i) == 1;
  }
  FrequencyData out;
  // g(JX, Y) = omega(X, Y) gives J = G^{-1} Omega^T with G = G^{-1} = diag(s).
  out.j = multiply(diagonal_matrix(sig), ExprMatrix(s.omega().transpose()));
  out.compatible = zero_matrix_verdict(multiply(out.j, out.j) + identity_matrix(d), s.tester());
  out.bound = (s.n() + 1) * (s.n() + 1);
  if (!riemannian) return out;
  out.analysed = true;
  out.frequencies = frequencies_at(out.j, p);
  out.constant = true;
  for (const auto& q : s.tester().points()) {
    const auto b = frequencies_at(out.j, q);
    if (b.size() != out.frequencies.size()) {
      out.constant = false;
      break;
    }
    for (std::size_t k = 0; k < b.size(); ++k) out.constant = out.constant && close(b[k], out.frequencies[k]);
  }
  for (std::size_t k = 0; k < out.frequencies.size(); ++k) {
    if (k > 0 && close(out.frequencies[k], out.frequencies[k - 1])) {
      ++out.block_sizes.back();
    } else {
      out.block_sizes.push_back(1);
    }
  }
  out.predicted_dim = 2 * s.n() + 1;
  for (int nj : out.block_sizes) out.predicted_dim += nj * nj;
  return out;
}

}  // namespace spr
