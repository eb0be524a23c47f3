#include "spr/curvature.hpp"

#include <algorithm>

namespace spr {

namespace {

std::size_t idx4(int d, int a, int b, int c, int e) { return static_cast<std::size_t>(((a * d + b) * d + c) * d + e); }

bool nz(const Expr& e) { return !e.is_symbolic_zero(); }

// sum R_abcd x^a y^b z^c w^d over the given index offset, skipping zero coefficients.
Expr contract4(const CurvatureData& curv, int offset, const std::vector<Expr>& x, const std::vector<Expr>& y,
               const std::vector<Expr>& z, const std::vector<Expr>& w) {
  const int d = static_cast<int>(x.size());
  Expr s;
  for (int a = 0; a < d; ++a) {
    if (!nz(x[a])) continue;
    for (int b = 0; b < d; ++b) {
      if (!nz(y[b])) continue;
      const Expr xy = x[a] * y[b];
      for (int c = 0; c < d; ++c) {
        if (!nz(z[c])) continue;
        const Expr xyz = xy * z[c];
        for (int e = 0; e < d; ++e) {
          if (!nz(w[e])) continue;
          const Expr& r = curv.lowered(a + offset, b + offset, c + offset, e + offset);
          if (nz(r)) s += r * xyz * w[e];
        }
      }
    }
  }
  return s;
}

Expr bilinear(const ExprMatrix& g, const std::vector<Expr>& x, const std::vector<Expr>& y) {
  Expr s;
  for (std::size_t a = 0; a < x.size(); ++a) {
    if (!nz(x[a])) continue;
    for (std::size_t b = 0; b < y.size(); ++b) {
      const auto ia = static_cast<Eigen::Index>(a);
      const auto ib = static_cast<Eigen::Index>(b);
      if (nz(y[b]) && nz(g(ia, ib))) s += g(ia, ib) * x[a] * y[b];
    }
  }
  return s;
}

std::vector<Expr> apply(const ExprMatrix& m, const std::vector<Expr>& x) {
  std::vector<Expr> out(x.size());
  for (std::size_t a = 0; a < x.size(); ++a) {
    for (std::size_t b = 0; b < x.size(); ++b) {
      const Expr& e = m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
      if (nz(e) && nz(x[b])) out[a] += e * x[b];
    }
  }
  return out;
}

}  // namespace

CurvatureData riemann(const ConnectionCoeffs& nabla, const Frame& frame, const ExprMatrix& g) {
  const int m = frame.size();
  if (nabla.size() != m || g.rows() != m || g.cols() != m) throw std::invalid_argument("curvature inputs differ in size");
  // dG[i][j,k,l] = E_i(Gamma_jk^l)
  std::vector<Expr> dgam(static_cast<std::size_t>(m * m * m * m));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      for (int k = 0; k < m; ++k) {
        for (int l = 0; l < m; ++l) {
          if (nz(nabla(j, k, l))) dgam[idx4(m, i, j, k, l)] = frame.d(i, nabla(j, k, l));
        }
      }
    }
  }
  CurvatureData out(m);
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      for (int k = 0; k < m; ++k) {
        for (int l = 0; l < m; ++l) {
          Expr r = dgam[idx4(m, i, j, k, l)] - dgam[idx4(m, j, i, k, l)];
          for (int q = 0; q < m; ++q) {
            if (nz(nabla(j, k, q)) && nz(nabla(i, q, l))) r += nabla(j, k, q) * nabla(i, q, l);
            if (nz(nabla(i, k, q)) && nz(nabla(j, q, l))) r -= nabla(i, k, q) * nabla(j, q, l);
            if (nz(frame.c(i, j, q)) && nz(nabla(q, k, l))) r -= frame.c(i, j, q) * nabla(q, k, l);
          }
          out.R(i, j, k, l) = r;
          out.R(j, i, k, l) = -r;
        }
      }
    }
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      for (int k = 0; k < m; ++k) {
        for (int l = 0; l < m; ++l) {
          Expr s;
          for (int q = 0; q < m; ++q) {
            if (nz(out.R(i, j, k, q)) && nz(g(q, l))) s += out.R(i, j, k, q) * g(q, l);
          }
          out.lowered(i, j, k, l) = s;
        }
      }
    }
  }
  ricci(out, g);
  return out;
}

void ricci(CurvatureData& curv, const ExprMatrix& g) {
  const int m = curv.size();
  curv.ricci = zero_matrix(m, m);
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < m; ++k) {
      Expr s;
      for (int a = 0; a < m; ++a) s += curv.R(a, j, k, a);
      curv.ricci(j, k) = s;
    }
  }
  curv.ricci_sym = zero_matrix(m, m);
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < m; ++k) curv.ricci_sym(j, k) = (curv.ricci(j, k) + curv.ricci(k, j)) / Expr(2);
  }
  const ExprMatrix ginv = inverse(g);
  Expr r;
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < m; ++k) {
      if (nz(ginv(j, k)) && nz(curv.ricci_sym(j, k))) r += ginv(j, k) * curv.ricci_sym(j, k);
    }
  }
  curv.scalar = r;
}

Expr sectional(const CurvatureData& curv, const ExprMatrix& g, const std::vector<Expr>& x,
               const std::vector<Expr>& y, const ZeroTester& zt) {
  const int m = curv.size();
  if (static_cast<int>(x.size()) != m || static_cast<int>(y.size()) != m) {
    throw std::invalid_argument("plane vectors have wrong size");
  }
  const Expr gxy = bilinear(g, x, y);
  const Expr den = bilinear(g, x, x) * bilinear(g, y, y) - gxy * gxy;
  if (zt.zero(den)) throw DegeneratePlaneError("degenerate plane: G(X,X)G(Y,Y) - G(X,Y)^2 vanishes");
  return contract4(curv, 0, x, y, y, x) / den;
}

Expr sectional(const CurvatureData& curv, const ExprMatrix& g, int i, int j, const ZeroTester& zt) {
  const int m = curv.size();
  if (i < 0 || j < 0 || i >= m || j >= m) throw std::out_of_range("frame index out of range");
  std::vector<Expr> x(static_cast<std::size_t>(m));
  std::vector<Expr> y(static_cast<std::size_t>(m));
  x[static_cast<std::size_t>(i)] = Expr(1);
  y[static_cast<std::size_t>(j)] = Expr(1);
  return sectional(curv, g, x, y, zt);
}

bool DecompositionReport::ok() const {
  return std::all_of(entries.begin(), entries.end(), [](const DecompositionEntry& e) { return e.verdict.zero(); });
}

DecompositionReport decomposition_residual(const SubPRStructure& s, const Expr& c) {
  if (s.tester().zero(c)) throw std::invalid_argument("extension constant c vanishes identically");
  const ExprMatrix g = extend_metric(s, c);
  const CurvatureData curv = riemann(closed_form_connection(s, c), s.frame(), g);
  const HData h = h_invariant(s);
  const int d = 2 * s.n();
  DecompositionReport rep;
  for (int i = 1; i <= d; ++i) {
    for (int j = i + 1; j <= d; ++j) {
      DecompositionEntry e;
      e.i = i;
      e.j = j;
      e.curvature = curv.lowered(i, j, j, i);
      e.kappa = kappa_general(s, i, j);
      e.h_term = bivector_h_term(s, h, i, j);
      const Expr w = s.omega()(i - 1, j - 1);
      e.omega_term = w * w;
      e.residual = e.curvature - e.kappa + e.h_term / c + Expr::rational(3, 4) * c * e.omega_term;
      e.verdict = s.tester()(e.residual);
      rep.entries.push_back(std::move(e));
    }
  }
  return rep;
}

std::vector<Expr> polarize_biquadratic(const Biquadratic& b, int dim) {
  if (dim < 0) throw std::invalid_argument("negative dimension");
  const auto unit = [dim](int a) {
    std::vector<Expr> v(static_cast<std::size_t>(dim));
    v[static_cast<std::size_t>(a)] = Expr(1);
    return v;
  };
  const auto comb = [](const std::vector<Expr>& u, int s, const std::vector<Expr>& v) {
    std::vector<Expr> out = u;
    for (std::size_t k = 0; k < u.size(); ++k) {
      if (nz(v[k])) out[k] += Expr(s) * v[k];
    }
    return out;
  };
  std::vector<Expr> out(static_cast<std::size_t>(dim * dim * dim * dim));
  const Expr scale = Expr::rational(-1, 24);
  for (int a = 0; a < dim; ++a) {
    for (int bb = 0; bb < dim; ++bb) {
      for (int c = 0; c < dim; ++c) {
        for (int e = 0; e < dim; ++e) {
          const auto X = unit(a);
          const auto Y = unit(bb);
          const auto Z = unit(c);
          const auto W = unit(e);
          // Mixed second difference in (s,t) picks out the st-coefficient exactly.
          Expr acc;
          for (int s : {1, -1}) {
            for (int t : {1, -1}) {
              const Expr f = b(comb(X, s, Z), comb(Y, t, W)) - b(comb(X, s, W), comb(Y, t, Z));
              acc += Expr(s * t) * f;
            }
          }
          out[idx4(dim, a, bb, c, e)] = scale * acc;
        }
      }
    }
  }
  return out;
}

Biquadratic biquadratic_of(const CurvatureData& curv, int d) {
  return [&curv, d](const std::vector<Expr>& x, const std::vector<Expr>& y) {
    if (static_cast<int>(x.size()) != d || static_cast<int>(y.size()) != d) {
      throw std::invalid_argument("biquadratic argument has wrong size");
    }
    return contract4(curv, 1, x, y, y, x);
  };
}

std::vector<Expr> r_d_tensor(const SubPRStructure& s, const Expr& c) {
  if (s.tester().zero(c)) throw std::invalid_argument("extension constant c vanishes identically");
  const int d = 2 * s.n();
  const ExprMatrix G = extend_metric(s, c);
  const CurvatureData curv = riemann(closed_form_connection(s, c), s.frame(), G);
  const HData h = h_invariant(s);
  std::vector<Expr> sig;
  for (int i = 1; i <= d; ++i) sig.emplace_back(s.s(i));
  const ExprMatrix g = diagonal_matrix(sig);
  const ExprMatrix& om = s.omega();
  const Biquadratic base = biquadratic_of(curv, d);
  const Expr inv_c = Expr(1) / c;
  const Expr three_c = Expr::rational(3, 4) * c;
  const Biquadratic b = [&](const std::vector<Expr>& x, const std::vector<Expr>& y) {
    const auto hx = apply(h.h_sharp, x);
    const auto hy = apply(h.h_sharp, y);
    const Expr hterm = bilinear(g, x, hx) * bilinear(g, y, hy) - bilinear(g, x, hy) * bilinear(g, y, hx);
    const Expr w = bilinear(om, x, y);
    return base(x, y) + inv_c * hterm + three_c * w * w;
  };
  return polarize_biquadratic(b, d);
}

}  // namespace spr
