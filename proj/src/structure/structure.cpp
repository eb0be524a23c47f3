#include "spr/structure.hpp"

#include <gmpxx.h>

#include <cmath>
#include <optional>

namespace spr {

namespace {

int factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

std::optional<Expr> exact_rational_root(const Expr& r, int n) {
  if (!r.is_constant() || r.kind() != Expr::Kind::Rational) return std::nullopt;
  mpq_class q(r.rational_text());
  q.canonicalize();
  const bool negative = q < 0;
  if (negative && n % 2 == 0) return std::nullopt;
  mpz_class num = abs(q.get_num());
  mpz_class den = q.get_den();
  mpz_class rn, rd;
  if (mpz_root(rn.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(n)) == 0) return std::nullopt;
  if (mpz_root(rd.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(n)) == 0) return std::nullopt;
  mpq_class root(rn, rd);
  root.canonicalize();
  if (negative) root = -root;
  return Expr::rational(root.get_str());
}

// Real n-th root of r (r of constant sign on the domain).
Expr real_root(const Expr& r, int n, int sign) {
  if (n == 1) return r;
  if (auto e = exact_rational_root(r, n)) return *e;
  if (n == 2) return sqrt(r);
  const Expr mag = sign > 0 ? r : -r;
  const Expr root = exp(ln(mag) / Expr(n));
  return sign > 0 ? root : -root;
}

}  // namespace

Frame::Frame(Chart chart, std::vector<VectorField> fields, SamplingPlan plan)
    : chart_(std::move(chart)), tester_(chart_, plan), fields_(std::move(fields)) {
  const int m = size();
  if (m != chart_.dim()) throw std::invalid_argument("frame size does not match chart dimension");
  for (const auto& f : fields_) {
    if (f.dim() != m) throw std::invalid_argument("frame field has wrong dimension");
  }
  try {
    coframe_ = inverse(frame_matrix(fields_), &tester_);
  } catch (const SingularMatrixError&) {
    throw StructureError(StructureError::Kind::FrameDependent, "frame fields are linearly dependent");
  }
  c_.assign(static_cast<std::size_t>(m * m * m), Expr());
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const auto coeffs = expand(lie_bracket(fields_[static_cast<std::size_t>(i)], fields_[static_cast<std::size_t>(j)]));
      for (int k = 0; k < m; ++k) {
        const auto& v = coeffs[static_cast<std::size_t>(k)];
        c_[static_cast<std::size_t>((i * m + j) * m + k)] = v;
        c_[static_cast<std::size_t>((j * m + i) * m + k)] = -v;
      }
    }
  }
}

std::vector<Expr> Frame::expand(const VectorField& v) const {
  std::vector<Expr> out(static_cast<std::size_t>(size()));
  for (int a = 0; a < size(); ++a) {
    Expr s;
    for (int k = 0; k < v.dim(); ++k) {
      if (!coframe_(a, k).is_symbolic_zero() && !v[k].is_symbolic_zero()) s += coframe_(a, k) * v[k];
    }
    out[static_cast<std::size_t>(a)] = s;
  }
  return out;
}

Frame coordinate_frame(const Chart& chart, SamplingPlan plan) {
  std::vector<VectorField> f;
  for (int k = 0; k < chart.dim(); ++k) f.push_back(VectorField::coordinate(chart.dim(), k));
  return Frame(chart, std::move(f), plan);
}

std::vector<VectorField> SubPRStructure::distribution_frame() const {
  std::vector<VectorField> out;
  for (int i = 1; i <= 2 * n_; ++i) out.push_back(X(i));
  return out;
}

SubPRStructure build_structure(const Chart& chart, std::vector<VectorField> frame, std::vector<int> signature,
                               SamplingPlan plan) {
  const int dim = chart.dim();
  if (dim < 3 || dim % 2 == 0) {
    throw StructureError(StructureError::Kind::BadDimension, "chart dimension must be odd and at least 3");
  }
  const int n = (dim - 1) / 2;
  if (static_cast<int>(frame.size()) != 2 * n) {
    throw StructureError(StructureError::Kind::BadDimension, "frame must have 2n fields");
  }
  if (signature.size() != frame.size()) throw StructureError(StructureError::Kind::BadSignature, "signature length mismatch");
  for (int s : signature) {
    if (s != 1 && s != -1) throw StructureError(StructureError::Kind::BadSignature, "signature entries must be +1 or -1");
  }
  for (const auto& f : frame) {
    if (f.dim() != dim) throw StructureError(StructureError::Kind::BadDimension, "frame field has wrong dimension");
  }
  const ZeroTester zt(chart, plan);

  // alpha0(V) = det[X_1, ..., X_2n, V].
  std::vector<Expr> a0(static_cast<std::size_t>(dim));
  bool any = false;
  for (int k = 0; k < dim; ++k) {
    ExprMatrix minor = zero_matrix(2 * n, 2 * n);
    for (int r = 0; r < 2 * n; ++r) {
      int col = 0;
      for (int c = 0; c < dim; ++c) {
        if (c == k) continue;
        minor(r, col++) = frame[static_cast<std::size_t>(r)][c];
      }
    }
    const Expr d = determinant(minor, &zt);
    a0[static_cast<std::size_t>(k)] = k % 2 == 0 ? d : -d;
    if (!zt.zero(d)) any = true;
  }
  if (!any) throw StructureError(StructureError::Kind::FrameDependent, "frame fields are linearly dependent");
  const KForm alpha0 = KForm::one_form(a0);
  const KForm da0 = exterior_derivative(alpha0);

  KForm power = KForm::function(dim, Expr(1));
  for (int i = 0; i < n; ++i) power = wedge(power, da0);
  const Expr v = evaluate_form(power, frame) / Expr(factorial(n));
  if (zt.zero(v)) throw StructureError(StructureError::Kind::NotContact, "contact condition fails: (d alpha|D)^n vanishes");

  int sign = 0;
  for (const auto& p : zt.points()) {
    double val = 0.0;
    try {
      val = eval_at(v, p);
    } catch (const EvalError&) {
      continue;
    }
    const int sv = val > 0 ? 1 : (val < 0 ? -1 : 0);
    if (sv == 0) continue;
    if (sign == 0) {
      sign = sv;
    } else if (sv != sign) {
      throw StructureError(StructureError::Kind::SignChange, "normalization volume changes sign on the sample domain");
    }
  }
  const int parity = n % 2 == 0 ? 1 : -1;
  const Expr r = Expr(parity) / v;
  const int r_sign = parity * sign;
  if (n % 2 == 0 && r_sign < 0) {
    throw StructureError(StructureError::Kind::SignObstruction,
                         "normalization has no real solution: (-1)^n / v is negative for even n");
  }
  const Expr f = real_root(r, n, r_sign);

  SubPRStructure s;
  s.n_ = n;
  s.signature_ = std::move(signature);
  s.factor_ = f;
  s.alpha_ = f * alpha0;
  s.dalpha_ = exterior_derivative(s.alpha_);

  // X0: alpha(X0) = 1 and d alpha(X0, X_i) = 0.
  ExprMatrix m = zero_matrix(dim, dim);
  ExprMatrix rhs = zero_matrix(dim, 1);
  rhs(0, 0) = Expr(1);
  for (int k = 0; k < dim; ++k) m(0, k) = s.alpha_.get({k});
  for (int i = 0; i < 2 * n; ++i) {
    for (int k = 0; k < dim; ++k) {
      Expr e;
      for (int q = 0; q < dim; ++q) {
        const Expr& xi = frame[static_cast<std::size_t>(i)][q];
        if (xi.is_symbolic_zero()) continue;
        e += s.dalpha_.get({k, q}) * xi;
      }
      m(i + 1, k) = e;
    }
  }
  const ExprMatrix x0 = solve(m, rhs, &zt);
  std::vector<Expr> reeb(static_cast<std::size_t>(dim));
  for (int k = 0; k < dim; ++k) reeb[static_cast<std::size_t>(k)] = x0(k, 0);

  std::vector<VectorField> full{VectorField(std::move(reeb))};
  for (auto& fld : frame) full.push_back(fld);
  s.frame_ = Frame(chart, std::move(full), plan);

  s.omega_ = zero_matrix(2 * n, 2 * n);
  for (int i = 1; i <= 2 * n; ++i) {
    for (int j = i + 1; j <= 2 * n; ++j) {
      const Expr w = -evaluate_form(s.dalpha_, {s.X(i), s.X(j)});
      s.omega_(i - 1, j - 1) = w;
      s.omega_(j - 1, i - 1) = -w;
    }
  }
  return s;
}

HData h_invariant(const SubPRStructure& s) {
  const int d = 2 * s.n();
  HData out;
  out.h = zero_matrix(d, d);
  out.h_sharp = zero_matrix(d, d);
  for (int i = 1; i <= d; ++i) {
    for (int j = 1; j <= d; ++j) {
      out.h(i - 1, j - 1) = Expr::rational(-1, 2) * (s.c(0, i, j) * Expr(s.s(j)) + s.c(0, j, i) * Expr(s.s(i)));
    }
  }
  // Independent route: h = (1/2) L_{X0} g on frame fields.
  std::vector<std::vector<Expr>> br;
  for (int i = 1; i <= d; ++i) br.push_back(s.frame().expand(lie_bracket(s.reeb(), s.X(i))));
  for (int i = 1; i <= d; ++i) {
    for (int j = 1; j <= d; ++j) {
      const Expr lie = -(br[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)] * Expr(s.s(j)) +
                         br[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i)] * Expr(s.s(i)));
      if (!s.tester().zero(lie / Expr(2) - out.h(i - 1, j - 1))) {
        throw EngineDefect("h cross-check failed at entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) out.h_sharp(i, j) = Expr(s.s(i + 1)) * out.h(i, j);
  }
  out.det_h_sharp = determinant(out.h_sharp);
  return out;
}

ExprMatrix extend_metric(const SubPRStructure& s, const Expr& c) {
  if (s.tester().zero(c)) throw std::invalid_argument("extension constant c vanishes identically");
  std::vector<Expr> d{c};
  for (int i = 1; i <= 2 * s.n(); ++i) d.emplace_back(s.s(i));
  return diagonal_matrix(d);
}

ExprMatrix coordinate_metric(const Frame& frame, const ExprMatrix& g_frame) {
  const ExprMatrix& th = frame.coframe();
  return multiply(multiply(th.transpose(), g_frame), th);
}

Expr kappa_dim3(const SubPRStructure& s) {
  if (s.dim() != 3) throw StructureError(StructureError::Kind::BadDimension, "kappa_dim3 needs a 3-dimensional structure");
  const Expr half = Expr::rational(1, 2);
  const Expr& c121 = s.c(1, 2, 1);
  const Expr& c122 = s.c(1, 2, 2);
  if (s.s(1) == 1 && s.s(2) == 1) {
    return s.frame().d(1, c122) - s.frame().d(2, c121) - c121 * c121 - c122 * c122 +
           half * (s.c(0, 1, 2) - s.c(0, 2, 1));
  }
  if (s.s(1) == -1 && s.s(2) == 1) {
    return s.frame().d(1, c122) + s.frame().d(2, c121) + c121 * c121 - c122 * c122 +
           half * (s.c(0, 1, 2) + s.c(0, 2, 1));
  }
  throw StructureError(StructureError::Kind::BadSignature, "dim-3 kappa needs signature (+1,+1) or (-1,+1)");
}

Expr kappa_general(const SubPRStructure& s, int i, int j) {
  const int d = 2 * s.n();
  if (i == j || i < 1 || j < 1 || i > d || j > d) throw std::out_of_range("kappa_general: invalid index pair");
  const Expr si(s.s(i));
  const Expr sj(s.s(j));
  Expr k = s.frame().d(i, s.c(i, j, j)) * sj - s.frame().d(j, s.c(i, j, i)) * si;
  for (int m = 1; m <= d; ++m) {
    const Expr sk(s.s(m));
    k -= s.c(i, j, m) * s.c(i, j, m) * sk;
    const Expr t = s.c(i, j, m) * sk + s.c(j, m, i) * si - s.c(i, m, j) * sj;
    k += t * t / (Expr(4) * sk);
  }
  k += Expr::rational(1, 2) * s.c(i, j, 0) * (s.c(0, i, j) * sj - s.c(0, j, i) * si);
  return k;
}

ExteriorMetric exterior_power_metric(const std::vector<int>& signature, int k) {
  const int d = static_cast<int>(signature.size());
  if (k < 0 || k > d) throw std::out_of_range("exterior power degree out of range");
  ExteriorMetric out;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    out.basis.push_back(idx);
    int p = k - 1;
    while (p >= 0 && idx[static_cast<std::size_t>(p)] == d - k + p) --p;
    if (p < 0) break;
    ++idx[static_cast<std::size_t>(p)];
    for (int q = p + 1; q < k; ++q) idx[static_cast<std::size_t>(q)] = idx[static_cast<std::size_t>(q - 1)] + 1;
  }
  std::vector<Expr> diag;
  for (const auto& b : out.basis) {
    int prod = 1;
    for (int i : b) prod *= signature[static_cast<std::size_t>(i)];
    diag.emplace_back(prod);
  }
  out.gram = diagonal_matrix(diag);
  return out;
}

Expr bivector_h_term(const SubPRStructure& s, const HData& h, int i, int j) {
  const auto em = exterior_power_metric(s.signature(), 2);
  const ExprMatrix& H = h.h_sharp;
  const int a = i - 1;
  const int b = j - 1;
  Expr total;
  for (std::size_t q = 0; q < em.basis.size(); ++q) {
    const int p0 = em.basis[q][0];
    const int p1 = em.basis[q][1];
    Expr lhs;
    if (p0 == std::min(a, b) && p1 == std::max(a, b)) lhs = Expr(a < b ? 1 : -1);
    if (lhs.is_symbolic_zero()) continue;
    const Expr rhs = H(p0, a) * H(p1, b) - H(p1, a) * H(p0, b);
    total += lhs * rhs * em.gram(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(q));
  }
  return total;
}

SubPRStructure orientation_flip(const SubPRStructure& s) {
  std::vector<VectorField> frame = s.distribution_frame();
  frame[0] = -frame[0];
  return build_structure(s.chart(), std::move(frame), s.signature(), s.tester().plan());
}

}  // namespace spr
