"""
Ricci tensor of the six-parameter invariant metric and the Einstein system.

Components: r1, r2, r3 on the blocks f1, f2, f3 (value of Ric on a g-unit
vector), r4 = Ric(U4, U4), r5 = Ric(U5, U5) and the mixed term
r0 = Ric(U4, U5), where {U4, U5} is the g-orthonormal basis of f0.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    InvariantMetric,
    SpaceParams,
    c_from_x,
    lift,
    metric_structure_constants,
    sqrt,
)


@dataclass(frozen=True)
class RicciComponents:
    r1: float
    r2: float
    r3: float
    r4: float
    r5: float
    r0: float


@dataclass(frozen=True)
class EinsteinResidual:
    e1: float
    e2: float
    e3: float
    e4: float
    e5: float
    e0: float

    @property
    def components(self) -> tuple:
        return self.e1, self.e2, self.e3, self.e4, self.e5, self.e0

    @property
    def norm(self):
        return max(abs(e) for e in self.components)


def ricci_abelian(p: SpaceParams, g: InvariantMetric) -> tuple:
    """(r4, r5, r0) for arbitrary shear c."""
    x1, x2, x3, v4, v5, c = g.x1, g.x2, g.x3, g.v4, g.v5, g.c
    l, m, n, N = lift(p, x1)
    T = metric_structure_constants(p, g)
    r4 = v4 / 4 * (T[4, 2, 2] / x2**2 + T[4, 3, 3] / x3**2)
    r5 = v5 / 4 * (T[5, 1, 1] / x1**2 + T[5, 2, 2] / x2**2 + T[5, 3, 3] / x3**2)
    s = sqrt(l * m * n / N)
    r0 = sqrt(v4 * v5) / 4 * ((l * c + s) / (x2**2 * (l + m))
                               + (m * c - s) / (x3**2 * (l + m)))
    return r4, r5, r0


def ricci_diagonal(p: SpaceParams, g: InvariantMetric) -> tuple:
    """(r1, r2, r3) for arbitrary shear c."""
    x1, x2, x3, v4, v5, c = g.x1, g.x2, g.x3, g.v4, g.v5, g.c
    l, m, n, N = lift(p, x1)
    f1, f2, f3 = flag_ricci(p, (x1, x2, x3))
    s = sqrt(l * m * n) * sqrt(N)
    r1 = f1 - (l + m) * v5 / (4 * l * m * N * x1**2)
    r2 = f2 - (l * N * v4 + (c * c * l * N + m * n + 2 * c * s) * v5) / (
        4 * l * n * N * (l + m) * x2**2)
    r3 = f3 - (m * N * v4 + (c * c * m * N + l * n - 2 * c * s) * v5) / (
        4 * m * n * N * (l + m) * x3**2)
    return r1, r2, r3


def ricci(p: SpaceParams, g: InvariantMetric) -> RicciComponents:
    r1, r2, r3 = ricci_diagonal(p, g)
    r4, r5, r0 = ricci_abelian(p, g)
    return RicciComponents(r1, r2, r3, r4, r5, r0)


def einstein_residual(p: SpaceParams, g: InvariantMetric, lam) -> EinsteinResidual:
    R = ricci(p, g)
    return EinsteinResidual(R.r1 - lam, R.r2 - lam, R.r3 - lam,
                            R.r4 - lam, R.r5 - lam, R.r0)


def flag_ricci(p: SpaceParams, x) -> tuple:
    """Ricci components of x1 B|f1 + x2 B|f2 + x3 B|f3 on the flag manifold
    SU(N)/S(U(l) x U(m) x U(n))."""
    x1, x2, x3 = x
    l, m, n, N = lift(p, x1)
    prod = x1 * x2 * x3
    r1 = 1 / (2 * x1) + n / (4 * N) * (x1**2 - x2**2 - x3**2) / prod
    r2 = 1 / (2 * x2) + m / (4 * N) * (x2**2 - x1**2 - x3**2) / prod
    r3 = 1 / (2 * x3) + l / (4 * N) * (x3**2 - x1**2 - x2**2) / prod
    return r1, r2, r3


def q_factors(p: SpaceParams, x) -> tuple:
    """The ratios q_i with Ric_i(M) = Ric_i(F) - lambda q_i once v4, v5 are
    eliminated in favour of lambda."""
    x1, x2, x3 = x
    l, m, n, N = lift(p, x1)
    a, b, c = x1**2, x2**2, x3**2
    S = n * a + m * b + l * c
    return ((m * b + l * c) / (l * m * S),
            (n * a + l * c) / (l * n * S),
            (n * a + m * b) / (m * n * S))


def t_polys(p: SpaceParams, x) -> tuple:
    """Candidate Einstein constants t_i = Ric_i(F) / (1 + q_i).

    At an Einstein metric of M with diagonal part x the three values agree
    and equal lambda.  Each t_i is homogeneous of degree -1 in x.
    """
    F = flag_ricci(p, x)
    Q = q_factors(p, x)
    return tuple(f / (1 + q) for f, q in zip(F, Q))


def v4_of(p: SpaceParams, x, lam):
    x1, x2, x3 = x
    l, m, n, N = lift(p, x1)
    b, c = x2**2, x3**2
    return 4 * lam * (l + m) * b * c / (l * c + m * b)


def v5_of(p: SpaceParams, x, lam):
    x1, x2, x3 = x
    l, m, n, N = lift(p, x1)
    a, b, c = x1**2, x2**2, x3**2
    return 4 * lam * N * a * (l * c + m * b) / ((l + m) * (n * a + m * b + l * c))


def complete_metric(p: SpaceParams, x, lam) -> InvariantMetric:
    """Fill in v4, v5 and c from the diagonal part x and lambda."""
    x1, x2, x3 = x
    return InvariantMetric(x1, x2, x3, v4_of(p, x, lam), v5_of(p, x, lam),
                           c_from_x(p, x2, x3))
