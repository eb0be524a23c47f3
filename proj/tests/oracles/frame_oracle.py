"""Independent sympy oracle for frame computations (test-only).

Computes normalized contact data, structural functions, Levi-Civita
connection (Koszul), Riemann tensor and Ricci for a frame given in
coordinates.  Used to freeze expected values for the C++ test suites.
"""
import itertools
import sympy as sp


def vf_apply(V, f, X):
    return sum(V[i] * sp.diff(f, X[i]) for i in range(len(X)))


def bracket(V, W, X):
    return [sp.simplify(vf_apply(V, W[k], X) - vf_apply(W, V[k], X)) for k in range(len(X))]


class Frame:
    def __init__(self, X, frame, sig):
        self.X = X
        dim = len(X)
        n = (dim - 1) // 2
        F = sp.Matrix(frame)  # rows = fields
        a0 = [(-1) ** k * F[:, [j for j in range(dim) if j != k]].det() for k in range(dim)]
        a0 = [sp.simplify(v) for v in a0]
        # d alpha0 as antisymmetric matrix Om[k,l] = d_k a_l - d_l a_k
        Om = sp.Matrix(dim, dim, lambda k, l: sp.diff(a0[l], X[k]) - sp.diff(a0[k], X[l]))
        W = sp.Matrix(2 * n, 2 * n, lambda i, j: (F.row(i) * Om * F.row(j).T)[0])
        v = sp.simplify(W.pfaffian() if hasattr(W, 'pfaffian') else pf(W))
        r = sp.simplify((-1) ** n / v)
        f = r if n == 1 else sp.sqrt(r)
        self.alpha = [sp.simplify(f * a) for a in a0]
        Om = Om * f + sp.Matrix(dim, dim, lambda k, l: sp.diff(f, X[k]) * a0[l] - sp.diff(f, X[l]) * a0[k])
        Om = sp.simplify(Om)
        A = sp.Matrix([self.alpha] + [list(F.row(i) * Om) for i in range(2 * n)])
        rhs = sp.Matrix([1] + [0] * (2 * n))
        X0 = list(sp.simplify(A.LUsolve(rhs)))
        self.E = [X0] + [list(F.row(i)) for i in range(2 * n)]
        M = sp.Matrix(self.E).T
        Minv = sp.simplify(M.inv())
        N = dim
        self.C = [[[0] * N for _ in range(N)] for _ in range(N)]
        for i in range(N):
            for j in range(N):
                b = bracket(self.E[i], self.E[j], X)
                co = sp.simplify(Minv * sp.Matrix(b))
                for k in range(N):
                    self.C[i][j][k] = co[k]
        self.s = [None] + list(sig)
        self.n = n
        self.N = N

    def apply(self, i, f):
        return vf_apply(self.E[i], f, self.X)

    def levi_civita(self, G):
        N = self.N
        Gi = G.inv()
        C = self.C
        Gam = [[[0] * N for _ in range(N)] for _ in range(N)]
        for i in range(N):
            for j in range(N):
                low = []
                for k in range(N):
                    t = (self.apply(i, G[j, k]) + self.apply(j, G[i, k]) - self.apply(k, G[i, j])
                         + sum(C[i][j][m] * G[m, k] for m in range(N))
                         - sum(C[i][k][m] * G[m, j] for m in range(N))
                         - sum(C[j][k][m] * G[m, i] for m in range(N)))
                    low.append(t / 2)
                for l in range(N):
                    Gam[i][j][l] = sp.simplify(sum(Gi[l, k] * low[k] for k in range(N)))
        return Gam

    def weyl(self, G, eta_frame):
        N = self.N
        Gam = self.levi_civita(G)
        Gi = G.inv()
        sharp = [sum(Gi[k, l] * eta_frame[l] for l in range(N)) for k in range(N)]
        out = [[[0] * N for _ in range(N)] for _ in range(N)]
        for i in range(N):
            for j in range(N):
                for k in range(N):
                    out[i][j][k] = sp.simplify(Gam[i][j][k] - sp.Rational(1, 2) * (
                        eta_frame[i] * (1 if j == k else 0) + eta_frame[j] * (1 if i == k else 0) - G[i, j] * sharp[k]))
        return out

    def riemann(self, Gam):
        N = self.N
        C = self.C
        R = {}
        for i, j, k, l in itertools.product(range(N), repeat=4):
            R[i, j, k, l] = sp.simplify(self.apply(i, Gam[j][k][l]) - self.apply(j, Gam[i][k][l])
                                        + sum(Gam[j][k][m] * Gam[i][m][l] - Gam[i][k][m] * Gam[j][m][l] for m in range(N))
                                        - sum(C[i][j][m] * Gam[m][k][l] for m in range(N)))
        return R

    def metric(self, c):
        N = self.N
        return sp.diag(*([c] + list(self.s[1:])))


def pf(W):
    n = W.shape[0]
    if n == 0:
        return 1
    tot = 0
    for j in range(1, n):
        idx = [k for k in range(n) if k not in (0, j)]
        tot += (-1) ** (j + 1) * W[0, j] * pf(W.extract(idx, idx))
    return tot
