#include "spr/connection.hpp"

namespace spr {

ConnectionCoeffs levi_civita(const Frame& frame, const ExprMatrix& g) {
  const int m = frame.size();
  if (g.rows() != m || g.cols() != m) throw std::invalid_argument("metric size does not match frame");
  ExprMatrix ginv;
  try {
    ginv = inverse(g, &frame.tester());
  } catch (const SingularMatrixError&) {
    throw std::invalid_argument("degenerate metric");
  }
  // Derivatives of metric components, E_a(G_bc).
  std::vector<Expr> dg(static_cast<std::size_t>(m * m * m));
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      for (int c = 0; c < m; ++c) dg[static_cast<std::size_t>((a * m + b) * m + c)] = frame.d(a, g(b, c));
    }
  }
  auto D = [&](int a, int b, int c) -> const Expr& { return dg[static_cast<std::size_t>((a * m + b) * m + c)]; };
  // G([E_a, E_b], E_c)
  auto Gb = [&](int a, int b, int c) {
    Expr s;
    for (int l = 0; l < m; ++l) {
      const Expr& cl = frame.c(a, b, l);
      if (!cl.is_symbolic_zero() && !g(l, c).is_symbolic_zero()) s += cl * g(l, c);
    }
    return s;
  };
  ConnectionCoeffs out(m, "levi_civita");
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      std::vector<Expr> k_low(static_cast<std::size_t>(m));
      for (int k = 0; k < m; ++k) {
        k_low[static_cast<std::size_t>(k)] =
            D(i, j, k) + D(j, i, k) - D(k, i, j) + Gb(i, j, k) - Gb(i, k, j) - Gb(j, k, i);
      }
      for (int l = 0; l < m; ++l) {
        Expr s;
        for (int k = 0; k < m; ++k) {
          if (!ginv(l, k).is_symbolic_zero() && !k_low[static_cast<std::size_t>(k)].is_symbolic_zero()) {
            s += ginv(l, k) * k_low[static_cast<std::size_t>(k)];
          }
        }
        out(i, j, l) = s / Expr(2);
      }
    }
  }
  return out;
}

ConnectionCoeffs levi_civita(const ExprMatrix& g, const SubPRStructure& s) { return levi_civita(s.frame(), g); }

ConnectionCoeffs closed_form_connection(const SubPRStructure& s, const Expr& c) {
  if (s.tester().zero(c)) throw std::invalid_argument("extension constant c vanishes identically");
  const int d = 2 * s.n();
  const int m = d + 1;
  const Frame& f = s.frame();
  const Expr half_c = Expr(2) * c;
  ConnectionCoeffs out(m, "closed_form");
  for (int i = 1; i <= d; ++i) {
    const Expr si(s.s(i));
    for (int j = 1; j <= d; ++j) {
      const Expr sj(s.s(j));
      out(i, j, 0) = (s.c(i, j, 0) * c + s.c(0, j, i) * si + s.c(0, i, j) * sj) / half_c;
      for (int k = 1; k <= d; ++k) {
        const Expr sk(s.s(k));
        out(i, j, k) = (s.c(i, j, k) * sk - s.c(j, k, i) * si - s.c(i, k, j) * sj) / (Expr(2) * sk);
      }
    }
    for (int k = 1; k <= d; ++k) {
      const Expr sk(s.s(k));
      out(i, 0, k) = -(s.c(0, i, k) * sk + s.c(0, k, i) * si + s.c(i, k, 0) * c) / (Expr(2) * sk);
    }
    out(i, 0, 0) = f.d(i, c) / half_c;
    for (int k = 0; k <= d; ++k) out(0, i, k) = out(i, 0, k) + s.c(0, i, k);
  }
  out(0, 0, 0) = f.d(0, c) / half_c;
  for (int k = 1; k <= d; ++k) out(0, 0, k) = -Expr(s.s(k)) * f.d(k, c) / Expr(2);
  return out;
}

std::vector<Expr> frame_components(const Frame& frame, const KForm& eta) {
  std::vector<Expr> out;
  for (int i = 0; i < frame.size(); ++i) out.push_back(evaluate_form(eta, {frame.field(i)}));
  return out;
}

ConnectionCoeffs weyl_connection(const Frame& frame, const ExprMatrix& g, const std::vector<Expr>& eta) {
  const int m = frame.size();
  if (static_cast<int>(eta.size()) != m) throw std::invalid_argument("eta has wrong size");
  ConnectionCoeffs out = levi_civita(frame, g);
  const ExprMatrix ginv = inverse(g, &frame.tester());
  std::vector<Expr> sharp(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    for (int l = 0; l < m; ++l) {
      if (!ginv(k, l).is_symbolic_zero()) sharp[static_cast<std::size_t>(k)] += ginv(k, l) * eta[static_cast<std::size_t>(l)];
    }
  }
  const Expr half = Expr::rational(1, 2);
  ConnectionCoeffs w(m, "weyl");
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      for (int k = 0; k < m; ++k) {
        Expr delta = -g(i, j) * sharp[static_cast<std::size_t>(k)];
        if (j == k) delta += eta[static_cast<std::size_t>(i)];
        if (i == k) delta += eta[static_cast<std::size_t>(j)];
        w(i, j, k) = out(i, j, k) - half * delta;
      }
    }
  }
  return w;
}

ConnectionReport verify_connection(const ConnectionCoeffs& nabla, const Frame& frame, const ExprMatrix& g,
                                   const std::vector<Expr>& eta) {
  const int m = frame.size();
  const ZeroTester& zt = frame.tester();
  ConnectionReport r;
  r.compatibility.resize(static_cast<std::size_t>(m * m * m));
  r.torsion.resize(static_cast<std::size_t>(m * m * m));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      for (int k = 0; k < m; ++k) {
        Expr e = frame.d(i, g(j, k)) - eta[static_cast<std::size_t>(i)] * g(j, k);
        for (int q = 0; q < m; ++q) {
          e -= nabla(i, j, q) * g(q, k) + nabla(i, k, q) * g(j, q);
        }
        const auto idx = static_cast<std::size_t>((i * m + j) * m + k);
        r.compatibility[idx] = zt(e);
        merge_verdict(r.worst_compatibility, r.compatibility[idx]);
        r.torsion[idx] = zt(nabla(i, j, k) - nabla(j, i, k) - frame.c(i, j, k));
        merge_verdict(r.worst_torsion, r.torsion[idx]);
      }
    }
  }
  return r;
}

ExprMatrix covariant_derivative(const ConnectionCoeffs& nabla, const Frame& frame, const ExprMatrix& t,
                                TensorType type, int i) {
  const int m = frame.size();
  if (t.rows() != m || t.cols() != m) throw std::invalid_argument("tensor size does not match frame");
  ExprMatrix out = zero_matrix(m, m);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      Expr e = frame.d(i, t(a, b));
      for (int q = 0; q < m; ++q) {
        if (type == TensorType::Covariant2) {
          e -= nabla(i, a, q) * t(q, b) + nabla(i, b, q) * t(a, q);
        } else {
          e += nabla(i, q, a) * t(q, b) - nabla(i, b, q) * t(a, q);
        }
      }
      out(a, b) = e;
    }
  }
  return out;
}

ZeroVerdict compare_connections(const ConnectionCoeffs& a, const ConnectionCoeffs& b, const ZeroTester& zt) {
  if (a.size() != b.size()) throw std::invalid_argument("connection sizes differ");
  ZeroVerdict worst;
  const int m = a.size();
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      for (int k = 0; k < m; ++k) merge_verdict(worst, zt(a(i, j, k) - b(i, j, k)));
    }
  }
  return worst;
}

}  // namespace spr
