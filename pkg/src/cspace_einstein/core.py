"""
Parameters, metric parametrization and structure constants of
M_{l,m,n} = SU(l+m+n) / SU(l) x SU(m) x SU(n).

The isotropy representation splits as f1 + f2 + f3 + f0, where f1, f2, f3
are the off-diagonal blocks (l x m, l x n, m x n) and f0 is the
two-dimensional centre of s(u(l) + u(m) + u(n)).  Indices 4 and 5 refer to
the two B-orthonormal directions of f0.

Every formula here is written so that it evaluates in the number type of
its real-valued arguments: plain floats give double precision, mpmath
``mpf`` values give extended precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import mpmath
import numpy as np

Triple = tuple[int, int, int]

KILLING = "Killing"
METRIC_ADAPTED = "MetricAdapted"


def sqrt(x):
    """Square root that stays in the number type of ``x``."""
    if isinstance(x, mpmath.mpf):
        return mpmath.sqrt(x)
    return np.sqrt(x)


def lift(p: "SpaceParams", like) -> tuple:
    """Return (l, m, n, N) converted to the number type of ``like``."""
    if isinstance(like, mpmath.mpf):
        return tuple(mpmath.mpf(v) for v in (p.l, p.m, p.n, p.N))
    return float(p.l), float(p.m), float(p.n), float(p.N)


@dataclass(frozen=True)
class SpaceParams:
    l: int
    m: int
    n: int

    @property
    def N(self) -> int:
        return self.l + self.m + self.n

    @property
    def d1(self) -> int:
        return 2 * self.l * self.m

    @property
    def d2(self) -> int:
        return 2 * self.l * self.n

    @property
    def d3(self) -> int:
        return 2 * self.m * self.n

    @property
    def dims(self) -> tuple[int, int, int]:
        return self.d1, self.d2, self.d3

    @property
    def dim_m(self) -> int:
        return self.d1 + self.d2 + self.d3 + 2

    @property
    def degenerate_flag(self) -> bool:
        """True when one of f1, f2, f3 is two-dimensional.

        In that case the six-parameter family does not exhaust the invariant
        metrics, so solution lists are not claimed to be complete.
        """
        l, m, n = self.l, self.m, self.n
        return l * m == 1 or l * n == 1 or m * n == 1

    def as_tuple(self) -> tuple[int, int, int]:
        return self.l, self.m, self.n


def make_params(l: int, m: int, n: int) -> SpaceParams:
    for name, v in (("l", l), ("m", m), ("n", n)):
        if isinstance(v, bool) or not isinstance(v, int):
            raise TypeError(f"{name} must be an int, got {v!r}")
        if v < 1:
            raise ValueError(f"{name} must be a positive integer, got {v}")
    return SpaceParams(l, m, n)


@dataclass(frozen=True)
class InvariantMetric:
    """Invariant metric x1 B|f1 + x2 B|f2 + x3 B|f3 + rho0.

    rho0 has Gram matrix [[v4 + c^2 v5, c v5], [c v5, v5]] in the
    B-orthonormal basis (Z4~, Z5~) of f0.
    """

    x1: float
    x2: float
    x3: float
    v4: float
    v5: float
    c: float = 0.0

    def __post_init__(self):
        for name in ("x1", "x2", "x3", "v4", "v5"):
            v = getattr(self, name)
            if not v > 0:
                raise ValueError(f"{name} must be positive, got {v}")

    @property
    def x(self) -> tuple:
        return self.x1, self.x2, self.x3

    def fiber_gram(self) -> tuple[tuple, tuple]:
        c, v4, v5 = self.c, self.v4, self.v5
        return ((v4 + c * c * v5, c * v5), (c * v5, v5))

    def scaled(self, mu) -> "InvariantMetric":
        """Uniform rescaling of all coefficients; c is scale free."""
        return InvariantMetric(self.x1 * mu, self.x2 * mu, self.x3 * mu,
                               self.v4 * mu, self.v5 * mu, self.c)


class StructureTable:
    """Nonzero structure constants keyed by (k; i, j).

    Killing-kind tables are symmetric in all three indices, metric-adapted
    tables only in the lower pair (i, j).  Lookups of absent triples
    return zero.
    """

    def __init__(self, values: Mapping[Triple, float], kind: str):
        if kind not in (KILLING, METRIC_ADAPTED):
            raise ValueError(f"unknown table kind {kind!r}")
        self.kind = kind
        self._values = dict(values)

    def __getitem__(self, key: Triple):
        k, i, j = key
        if self.kind == KILLING:
            for perm in _perms(k, i, j):
                if perm in self._values:
                    return self._values[perm]
            return 0
        if (k, i, j) in self._values:
            return self._values[(k, i, j)]
        return self._values.get((k, j, i), 0)

    def stored(self) -> dict[Triple, float]:
        return dict(self._values)

    def __repr__(self):
        body = ", ".join(f"[{k};{i},{j}]={v}" for (k, i, j), v in self._values.items())
        return f"StructureTable({self.kind}: {body})"


def _perms(k, i, j):
    return ((k, i, j), (k, j, i), (i, k, j), (i, j, k), (j, k, i), (j, i, k))


def b_structure_constants(p: SpaceParams, like=1.0) -> StructureTable:
    l, m, n, N = lift(p, like)
    values = {
        (3, 1, 2): l * m * n / N,
        (4, 1, 1): 0 * l,
        (4, 2, 2): l / (l + m),
        (4, 3, 3): m / (l + m),
        (5, 1, 1): (l + m) / N,
        (5, 2, 2): m * n / (N * (l + m)),
        (5, 3, 3): l * n / (N * (l + m)),
    }
    return StructureTable(values, KILLING)


def auxiliary_constants(p: SpaceParams, like=1.0) -> dict[str, float]:
    """Structure constants that involve the semisimple part of h.

    Keys are "alpha11", "alpha22", "beta11", "beta33", "gamma22",
    "gamma33", where alpha, beta, gamma stand for su(l), su(m), su(n).
    """
    l, m, n, N = lift(p, like)
    return {
        "alpha11": m * (l * l - 1) / N,
        "alpha22": n * (l * l - 1) / N,
        "beta11": l * (m * m - 1) / N,
        "beta33": n * (m * m - 1) / N,
        "gamma22": l * (n * n - 1) / N,
        "gamma33": m * (n * n - 1) / N,
    }


def c_from_x(p: SpaceParams, x2, x3):
    """The shear parameter c for which the mixed Ricci term vanishes."""
    l, m, n, N = lift(p, x2)
    return sqrt(l * m * n / N) * (x2 * x2 - x3 * x3) / (l * x3 * x3 + m * x2 * x2)


def metric_structure_constants(p: SpaceParams, g: InvariantMetric) -> StructureTable:
    c = g.c
    l, m, n, N = lift(p, g.x1)
    shear = 2 * c * sqrt(l * m * n) / ((l + m) * sqrt(N))
    values = {
        (3, 1, 2): l * m * n / N,
        (4, 1, 1): 0 * l,
        (4, 2, 2): l / (l + m),
        (4, 3, 3): m / (l + m),
        (5, 1, 1): (l + m) / N,
        (5, 2, 2): c * c * l / (l + m) + m * n / (N * (l + m)) + shear,
        (5, 3, 3): c * c * m / (l + m) + l * n / (N * (l + m)) - shear,
    }
    return StructureTable(values, METRIC_ADAPTED)


def reduced_fiber_constants(p: SpaceParams, x2, x3) -> tuple:
    """{5;2,2} and {5;3,3} after substituting c = c_from_x(x2, x3)."""
    l, m, n, N = lift(p, x2)
    den = N * (l * x3 * x3 + m * x2 * x2) ** 2
    return (m * (l + m) * n * x2 ** 4 / den,
            l * (l + m) * n * x3 ** 4 / den)


@dataclass(frozen=True)
class NormConstants:
    c4: float
    c5: float


def norm_constants(p: SpaceParams) -> NormConstants:
    """Scalars making c4 Z4 and c5 Z5 B-orthonormal, where
    Z4 = i diag(I_l/(l+m), I_m/(l+m), -I_n/n) and Z5 = i diag(I_l/l, -I_m/m, 0)."""
    l, m, n, N = p.l, p.m, p.n, p.N
    c4 = math.sqrt((l + m) * n) / (N * math.sqrt(2))
    c5 = math.sqrt(l * m) / (math.sqrt(2 * N) * math.sqrt(l + m))
    return NormConstants(c4, c5)
