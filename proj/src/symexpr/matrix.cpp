#include "spr/matrix.hpp"

#include <algorithm>
#include <utility>

namespace spr {

ExprMatrix zero_matrix(Eigen::Index rows, Eigen::Index cols) {
  ExprMatrix m(rows, cols);
  m.fill(Expr());
  return m;
}

ExprMatrix identity_matrix(Eigen::Index n) {
  ExprMatrix m = zero_matrix(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = Expr(1);
  return m;
}

ExprMatrix diagonal_matrix(const std::vector<Expr>& d) {
  const auto n = static_cast<Eigen::Index>(d.size());
  ExprMatrix m = zero_matrix(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = d[static_cast<std::size_t>(i)];
  return m;
}

ExprMatrix multiply(const ExprMatrix& a, const ExprMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch");
  ExprMatrix out = zero_matrix(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      Expr s;
      for (Eigen::Index k = 0; k < a.cols(); ++k) {
        if (a(i, k).is_symbolic_zero() || b(k, j).is_symbolic_zero()) continue;
        s += a(i, k) * b(k, j);
      }
      out(i, j) = s;
    }
  }
  return out;
}

namespace {

bool usable_pivot(const Expr& e, const ZeroTester* zt) {
  if (e.is_symbolic_zero()) return false;
  if (zt == nullptr) return true;
  return !zt->zero(e);
}

// Bareiss elimination on [a | b] in place; returns the sign of the row
// permutation, or 0 when singular.
int bareiss(ExprMatrix& m, Eigen::Index n, const ZeroTester* zt) {
  int sign = 1;
  Expr prev(1);
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index p = -1;
    for (Eigen::Index r = k; r < n; ++r) {
      if (usable_pivot(m(r, k), zt)) {
        p = r;
        break;
      }
    }
    if (p < 0) return 0;
    if (p != k) {
      m.row(p).swap(m.row(k));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < m.cols(); ++j) {
        m(i, j) = (m(k, k) * m(i, j) - m(i, k) * m(k, j)) / prev;
      }
      m(i, k) = Expr();
    }
    prev = m(k, k);
  }
  return sign;
}

}  // namespace

Expr determinant(const ExprMatrix& a, const ZeroTester* zt) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const Eigen::Index n = a.rows();
  if (n == 0) return Expr(1);
  ExprMatrix m = a;
  const int sign = bareiss(m, n, zt);
  if (sign == 0) return Expr();
  return sign > 0 ? m(n - 1, n - 1) : -m(n - 1, n - 1);
}

ExprMatrix solve(const ExprMatrix& a, const ExprMatrix& b, const ZeroTester* zt) {
  if (a.rows() != a.cols() || a.rows() != b.rows()) throw std::invalid_argument("solve: shape mismatch");
  const Eigen::Index n = a.rows();
  ExprMatrix m(n, n + b.cols());
  m << a, b;
  if (bareiss(m, n, zt) == 0) throw SingularMatrixError("singular matrix");
  ExprMatrix x = zero_matrix(n, b.cols());
  for (Eigen::Index c = 0; c < b.cols(); ++c) {
    for (Eigen::Index i = n - 1; i >= 0; --i) {
      Expr s = m(i, n + c);
      for (Eigen::Index j = i + 1; j < n; ++j) {
        if (!m(i, j).is_symbolic_zero()) s -= m(i, j) * x(j, c);
      }
      x(i, c) = s / m(i, i);
    }
  }
  return x;
}

ExprMatrix inverse(const ExprMatrix& a, const ZeroTester* zt) { return solve(a, identity_matrix(a.rows()), zt); }

Eigen::MatrixXd evaluate(const ExprMatrix& m, std::span<const double> point) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = eval_at(m(i, j), point);
  }
  return out;
}

void merge_verdict(ZeroVerdict& worst, const ZeroVerdict& v) {
  using K = ZeroVerdict::Kind;
  if (v.kind == K::Nonzero) {
    if (worst.kind != K::Nonzero || v.max_abs > worst.max_abs) worst = v;
  } else if (v.kind == K::NumericZero && worst.kind != K::Nonzero) {
    if (worst.kind == K::SymbolicZero || v.max_abs > worst.max_abs) {
      const int used = worst.samples_used;
      worst = v;
      worst.samples_used = std::max(used, v.samples_used);
    }
  }
}

ZeroVerdict zero_matrix_verdict(const ExprMatrix& m, const ZeroTester& zt) {
  ZeroVerdict worst;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) merge_verdict(worst, zt(m(i, j)));
  }
  return worst;
}

}  // namespace spr
