#include "spr/calculus.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace spr {

namespace {

void check_same_dim(int a, int b) {
  if (a != b) throw std::invalid_argument("dimension mismatch");
}

// Sorts idx in place; returns the permutation sign, or 0 on a repeat.
int sort_sign(KForm::Index& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i) {
    for (std::size_t j = i; j > 0 && idx[j - 1] > idx[j]; --j) {
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  }
  for (std::size_t i = 1; i < idx.size(); ++i) {
    if (idx[i] == idx[i - 1]) return 0;
  }
  return sign;
}

}  // namespace

VectorField VectorField::coordinate(int dim, int k) {
  VectorField v = zero(dim);
  v.c_[static_cast<std::size_t>(k)] = Expr(1);
  return v;
}

Expr VectorField::operator()(const Expr& f) const {
  Expr s;
  for (int k = 0; k < dim(); ++k) {
    if ((*this)[k].is_symbolic_zero() || !f.depends_on(k)) continue;
    s += (*this)[k] * differentiate(f, k);
  }
  return s;
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  check_same_dim(a.dim(), b.dim());
  std::vector<Expr> c(a.c_.size());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.c_[k] + b.c_[k];
  return VectorField(std::move(c));
}

VectorField operator-(const VectorField& a, const VectorField& b) { return a + (-b); }

VectorField operator-(const VectorField& a) { return Expr(-1) * a; }

VectorField operator*(const Expr& f, const VectorField& v) {
  std::vector<Expr> c(v.c_.size());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = f * v.c_[k];
  return VectorField(std::move(c));
}

KForm::KForm(int dim, int degree) : dim_(dim), degree_(degree) {
  if (degree < 0 || degree > dim) throw std::invalid_argument("form degree out of range");
}

KForm KForm::function(int dim, const Expr& f) {
  KForm w(dim, 0);
  w.set({}, f);
  return w;
}

KForm KForm::one_form(const std::vector<Expr>& coeffs) {
  KForm w(static_cast<int>(coeffs.size()), 1);
  for (std::size_t k = 0; k < coeffs.size(); ++k) w.set({static_cast<int>(k)}, coeffs[k]);
  return w;
}

KForm KForm::dx(int dim, int k) {
  KForm w(dim, 1);
  w.set({k}, Expr(1));
  return w;
}

Expr KForm::get(Index idx) const {
  if (static_cast<int>(idx.size()) != degree_) throw std::invalid_argument("form index has wrong length");
  const int s = sort_sign(idx);
  if (s == 0) return Expr();
  auto it = comp_.find(idx);
  if (it == comp_.end()) return Expr();
  return s > 0 ? it->second : -it->second;
}

void KForm::set(Index idx, const Expr& value) {
  if (static_cast<int>(idx.size()) != degree_) throw std::invalid_argument("form index has wrong length");
  for (int i : idx) {
    if (i < 0 || i >= dim_) throw std::out_of_range("form index out of range");
  }
  const int s = sort_sign(idx);
  if (s == 0) {
    if (!value.is_symbolic_zero()) throw std::invalid_argument("repeated index with nonzero value");
    return;
  }
  Expr v = simplify(value);
  if (s < 0) v = -v;
  if (v.is_symbolic_zero()) {
    comp_.erase(idx);
  } else {
    comp_[idx] = v;
  }
}

KForm operator+(const KForm& a, const KForm& b) {
  check_same_dim(a.dim_, b.dim_);
  if (a.degree_ != b.degree_) throw std::invalid_argument("adding forms of different degree");
  KForm out = a;
  for (const auto& [idx, v] : b.comp_) out.set(idx, out.get(idx) + v);
  return out;
}

KForm operator-(const KForm& a, const KForm& b) { return a + Expr(-1) * b; }

KForm operator*(const Expr& f, const KForm& w) {
  KForm out(w.dim_, w.degree_);
  for (const auto& [idx, v] : w.comp_) out.set(idx, f * v);
  return out;
}

VectorField lie_bracket(const VectorField& v, const VectorField& w) {
  check_same_dim(v.dim(), w.dim());
  std::vector<Expr> c(static_cast<std::size_t>(v.dim()));
  for (int k = 0; k < v.dim(); ++k) c[static_cast<std::size_t>(k)] = v(w[k]) - w(v[k]);
  return VectorField(std::move(c));
}

KForm exterior_derivative(const KForm& w) {
  if (w.degree() >= w.dim()) return KForm(w.dim(), w.degree());
  KForm out(w.dim(), w.degree() + 1);
  std::map<KForm::Index, Expr> acc;
  for (const auto& [idx, value] : w.components()) {
    for (int m = 0; m < w.dim(); ++m) {
      if (std::find(idx.begin(), idx.end(), m) != idx.end() || !value.depends_on(m)) continue;
      KForm::Index full{m};
      full.insert(full.end(), idx.begin(), idx.end());
      const int s = sort_sign(full);
      const Expr d = differentiate(value, m);
      acc[full] += s > 0 ? d : -d;
    }
  }
  for (const auto& [idx, v] : acc) out.set(idx, v);
  return out;
}

KForm wedge(const KForm& a, const KForm& b) {
  check_same_dim(a.dim(), b.dim());
  if (a.degree() + b.degree() > a.dim()) return KForm(a.dim(), std::min(a.dim(), a.degree() + b.degree()));
  KForm out(a.dim(), a.degree() + b.degree());
  std::map<KForm::Index, Expr> acc;
  for (const auto& [ia, va] : a.components()) {
    for (const auto& [ib, vb] : b.components()) {
      KForm::Index full = ia;
      full.insert(full.end(), ib.begin(), ib.end());
      const int s = sort_sign(full);
      if (s == 0) continue;
      const Expr p = va * vb;
      acc[full] += s > 0 ? p : -p;
    }
  }
  for (const auto& [idx, v] : acc) out.set(idx, v);
  return out;
}

Expr evaluate_form(const KForm& w, const std::vector<VectorField>& fields) {
  const int k = w.degree();
  if (static_cast<int>(fields.size()) != k) throw std::invalid_argument("evaluate_form: wrong number of fields");
  for (const auto& f : fields) check_same_dim(f.dim(), w.dim());
  if (k == 0) return w.get({});
  std::vector<int> perm(static_cast<std::size_t>(k));
  Expr total;
  for (const auto& [idx, value] : w.components()) {
    std::iota(perm.begin(), perm.end(), 0);
    Expr det;
    do {
      int sign = 1;
      for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
          if (perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)]) sign = -sign;
        }
      }
      Expr p(sign);
      for (int a = 0; a < k && !p.is_symbolic_zero(); ++a) {
        p *= fields[static_cast<std::size_t>(perm[static_cast<std::size_t>(a)])][idx[static_cast<std::size_t>(a)]];
      }
      det += p;
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (!det.is_symbolic_zero()) total += value * det;
  }
  return total;
}

KForm contract(const VectorField& v, const KForm& w) {
  check_same_dim(v.dim(), w.dim());
  if (w.degree() == 0) throw std::invalid_argument("contraction of a function");
  KForm out(w.dim(), w.degree() - 1);
  std::map<KForm::Index, Expr> acc;
  for (const auto& [idx, value] : w.components()) {
    for (std::size_t p = 0; p < idx.size(); ++p) {
      const Expr& vc = v[idx[p]];
      if (vc.is_symbolic_zero()) continue;
      KForm::Index rest = idx;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(p));
      const Expr term = vc * value;
      acc[rest] += p % 2 == 0 ? term : -term;
    }
  }
  for (const auto& [idx, val] : acc) out.set(idx, val);
  return out;
}

ExprMatrix jacobian(const PointMap& f) {
  const int n = f.dim();
  ExprMatrix j = zero_matrix(n, n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) j(i, k) = differentiate(f.components[static_cast<std::size_t>(i)], k);
  }
  return j;
}

PointMap identity_map(const Chart& chart) {
  PointMap f;
  for (int i = 0; i < chart.dim(); ++i) f.components.push_back(chart.coord(i));
  return f;
}

PointMap compose(const PointMap& f, const PointMap& g) {
  PointMap out;
  for (const auto& c : f.components) out.components.push_back(substitute(c, g.components));
  return out;
}

PointMap affine_inverse(const PointMap& f, const Chart& chart) {
  const ExprMatrix j = jacobian(f);
  for (Eigen::Index a = 0; a < j.rows(); ++a) {
    for (Eigen::Index b = 0; b < j.cols(); ++b) {
      for (int k = 0; k < chart.dim(); ++k) {
        if (j(a, b).depends_on(k)) throw SingularMatrixError("map is not affine; supply its inverse");
      }
    }
  }
  const int n = f.dim();
  const std::vector<Expr> origin(static_cast<std::size_t>(n));
  ExprMatrix rhs = zero_matrix(n, 1);
  for (int i = 0; i < n; ++i) {
    rhs(i, 0) = chart.coord(i) - substitute(f.components[static_cast<std::size_t>(i)], origin);
  }
  const ExprMatrix x = solve(j, rhs);
  PointMap inv;
  for (int i = 0; i < n; ++i) inv.components.push_back(x(i, 0));
  return inv;
}

VectorField substitute(const VectorField& v, const PointMap& f) {
  std::vector<Expr> c;
  for (const auto& e : v.coeffs()) c.push_back(substitute(e, f.components));
  return VectorField(std::move(c));
}

VectorField pushforward(const PointMap& f, const PointMap& f_inverse, const VectorField& v) {
  check_same_dim(f.dim(), v.dim());
  const ExprMatrix j = jacobian(f);
  std::vector<Expr> c(static_cast<std::size_t>(v.dim()));
  for (int i = 0; i < v.dim(); ++i) {
    Expr s;
    for (int k = 0; k < v.dim(); ++k) {
      if (!j(i, k).is_symbolic_zero() && !v[k].is_symbolic_zero()) s += j(i, k) * v[k];
    }
    c[static_cast<std::size_t>(i)] = s;
  }
  return substitute(VectorField(std::move(c)), f_inverse);
}

Expr pullback_function(const PointMap& f, const Expr& e) { return substitute(e, f.components); }

KForm pullback_form(const PointMap& f, const KForm& w) {
  check_same_dim(f.dim(), w.dim());
  const int n = f.dim();
  std::vector<KForm> df;
  for (int i = 0; i < n; ++i) df.push_back(exterior_derivative(KForm::function(n, f.components[static_cast<std::size_t>(i)])));
  KForm out(n, w.degree());
  for (const auto& [idx, value] : w.components()) {
    KForm term = KForm::function(n, pullback_function(f, value));
    for (int i : idx) term = wedge(term, df[static_cast<std::size_t>(i)]);
    out = out + term;
  }
  return out;
}

ExprMatrix pullback_metric(const PointMap& f, const ExprMatrix& g) {
  const ExprMatrix j = jacobian(f);
  ExprMatrix gf = g;
  for (Eigen::Index a = 0; a < g.rows(); ++a) {
    for (Eigen::Index b = 0; b < g.cols(); ++b) gf(a, b) = pullback_function(f, g(a, b));
  }
  return multiply(multiply(j.transpose(), gf), j);
}

ExprMatrix frame_matrix(const std::vector<VectorField>& frame) {
  if (frame.empty()) return ExprMatrix();
  const int n = frame.front().dim();
  ExprMatrix m = zero_matrix(n, static_cast<Eigen::Index>(frame.size()));
  for (std::size_t c = 0; c < frame.size(); ++c) {
    check_same_dim(frame[c].dim(), n);
    for (int r = 0; r < n; ++r) m(r, static_cast<Eigen::Index>(c)) = frame[c][r];
  }
  return m;
}

std::vector<Expr> expand_in_frame(const VectorField& v, const std::vector<VectorField>& frame, const ZeroTester* zt) {
  const ExprMatrix m = frame_matrix(frame);
  if (m.rows() != m.cols()) throw std::invalid_argument("frame size does not match dimension");
  ExprMatrix rhs = zero_matrix(v.dim(), 1);
  for (int k = 0; k < v.dim(); ++k) rhs(k, 0) = v[k];
  const ExprMatrix x = solve(m, rhs, zt);
  std::vector<Expr> out;
  for (Eigen::Index k = 0; k < x.rows(); ++k) out.push_back(x(k, 0));
  return out;
}

}  // namespace spr
