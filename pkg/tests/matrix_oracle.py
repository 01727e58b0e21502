"""
Brute-force reference computations on explicit su(N) matrices.

Nothing here uses the closed-form structure constants of the package: the
bases are built from matrix units, B(X, Y) = -2N tr(XY) is evaluated
directly, and the Ricci tensor comes from the general formula for a
compact unimodular homogeneous space,

    Ric(X, Y) = -1/2 sum_i <[X, X_i]_m, [Y, X_i]_m> + 1/2 B(X, Y)
                + 1/4 sum_{i,j} <[X_i, X_j]_m, X> <[X_i, X_j]_m, Y>,

with {X_i} a g-orthonormal basis of m.
"""

import numpy as np


def killing(N, X, Y):
    return float(np.real(-2 * N * np.trace(X @ Y)))


def block_ranges(l, m, n):
    return range(0, l), range(l, l + m), range(l + m, l + m + n)


def weyl_block(N, rows, cols):
    """B-orthonormal basis of the off-diagonal block spanned by E_ij, i in
    rows, j in cols; the scale is computed, not assumed."""
    out = []
    for i in rows:
        for j in cols:
            A = np.zeros((N, N), dtype=complex)
            A[i, j], A[j, i] = 1, -1
            Bm = np.zeros((N, N), dtype=complex)
            Bm[i, j], Bm[j, i] = 1j, 1j
            for M in (A, Bm):
                out.append(M / np.sqrt(killing(N, M, M)))
    return out


def fiber_basis(l, m, n):
    N = l + m + n
    Z4 = 1j * np.diag([1 / (l + m)] * l + [1 / (l + m)] * m + [-1 / n] * n)
    Z5 = 1j * np.diag([1 / l] * l + [-1 / m] * m + [0.0] * n)
    Z4 = Z4 / np.sqrt(killing(N, Z4, Z4))
    Z5 = Z5 / np.sqrt(killing(N, Z5, Z5))
    return Z4, Z5


class Space:
    """B-orthonormal basis of m = f1 + f2 + f3 + f0 with bracket table."""

    def __init__(self, l, m, n):
        self.l, self.m, self.n, self.N = l, m, n, l + m + n
        I, J, K = block_ranges(l, m, n)
        N = self.N
        self.blocks = [weyl_block(N, J, I), weyl_block(N, K, I), weyl_block(N, K, J)]
        Z4, Z5 = fiber_basis(l, m, n)
        self.Z4, self.Z5 = Z4, Z5
        self.basis = self.blocks[0] + self.blocks[1] + self.blocks[2] + [Z4, Z5]
        self.labels = ([1] * len(self.blocks[0]) + [2] * len(self.blocks[1])
                       + [3] * len(self.blocks[2]) + [4, 5])
        d = len(self.basis)
        # C[a, b, c] = B([e_a, e_b], e_c): coefficient of [e_a, e_b]_m along e_c
        C = np.zeros((d, d, d))
        for a in range(d):
            for b in range(a + 1, d):
                br = self.basis[a] @ self.basis[b] - self.basis[b] @ self.basis[a]
                for c in range(d):
                    C[a, b, c] = killing(N, br, self.basis[c])
                C[b, a, :] = -C[a, b, :]
        self.C = C

    def metric_matrix(self, x1, x2, x3, v4, v5, c):
        d = len(self.basis)
        G = np.zeros((d, d))
        for a, lab in enumerate(self.labels[:-2]):
            G[a, a] = (x1, x2, x3)[lab - 1]
        G[-2:, -2:] = [[v4 + c * c * v5, c * v5], [c * v5, v5]]
        return G

    def ricci_matrix(self, G):
        """Ricci form in the B-orthonormal coordinates of m."""
        w, V = np.linalg.eigh(G)
        P = V @ np.diag(w ** -0.5) @ V.T  # columns: g-orthonormal basis
        C = self.C
        # ad_X restricted to m in e-coordinates: (ad_a)[c, b] = C[a, b, c]
        # brackets of the g-orthonormal basis: D[i, j, :] = [X_i, X_j]_m
        D = np.einsum("ai,bj,abc->ijc", P, P, C)
        # term1: sum_i <[X, X_i], [Y, X_i]>_g with X = e_a, Y = e_b
        E = np.einsum("bi,abc->aic", P, C)  # [e_a, X_i]_m
        t1 = np.einsum("aic,cd,bid->ab", E, G, E)
        # term3: sum_ij <D_ij, e_a>_g <D_ij, e_b>_g
        H = np.einsum("ijc,ca->ija", D, G)
        t3 = np.einsum("ija,ijb->ab", H, H)
        return -0.5 * t1 + 0.5 * np.eye(len(G)) + 0.25 * t3

    def ricci_components(self, x1, x2, x3, v4, v5, c):
        """(r1, r2, r3, r4, r5, r0) in the package's conventions."""
        G = self.metric_matrix(x1, x2, x3, v4, v5, c)
        R = self.ricci_matrix(G)
        out = []
        for lab, xv in zip((1, 2, 3), (x1, x2, x3)):
            a = self.labels.index(lab)
            out.append(R[a, a] / xv)
        # U5 = Z5~/sqrt(v5), U4 = (Z4~ - c Z5~)/sqrt(v4)
        u4 = np.zeros(len(G))
        u5 = np.zeros(len(G))
        u4[-2], u4[-1] = 1 / np.sqrt(v4), -c / np.sqrt(v4)
        u5[-1] = 1 / np.sqrt(v5)
        out += [u4 @ R @ u4, u5 @ R @ u5, u4 @ R @ u5]
        return tuple(float(v) for v in out)

    def structure_constant(self, k, i, j):
        """[k; i, j] = sum of B([e_a, e_b], e_c)^2 over the three modules."""
        ia = [a for a, lab in enumerate(self.labels) if lab == i]
        ja = [a for a, lab in enumerate(self.labels) if lab == j]
        ka = [a for a, lab in enumerate(self.labels) if lab == k]
        return float(np.sum(self.C[np.ix_(ia, ja, ka)] ** 2))
