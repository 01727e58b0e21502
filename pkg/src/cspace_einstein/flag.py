"""
The base flag manifold F = SU(l+m+n)/S(U(l) x U(m) x U(n)).

Contents: the four closed-form Einstein metrics of F, the homotopy
T(t, x) = Ric^F(x) / (1 + t q(x)) linking the flag Einstein equation
(t = 0) with the Einstein equation of M (t = 1), the induced planar map
f_t and its mapping degree on a box (eps, L)^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import roots
from .core import SpaceParams, sqrt
from .ricci import flag_ricci, q_factors

DEFAULT_BOX = (0.05, 10.0)

# rotation taking (1, 1, 1)/sqrt(3) to the north pole (0, 0, 1)
P = np.array([
    [1 / math.sqrt(2), -1 / math.sqrt(2), 0.0],
    [1 / math.sqrt(6), 1 / math.sqrt(6), -2 / math.sqrt(6)],
    [1 / math.sqrt(3), 1 / math.sqrt(3), 1 / math.sqrt(3)],
])


class SingularRootError(ArithmeticError):
    pass


class BoundaryRootError(ArithmeticError):
    pass


@dataclass(frozen=True)
class FlagMetric:
    x1: float
    x2: float
    x3: float
    lam: float | None = None

    @property
    def x(self):
        return self.x1, self.x2, self.x3


@dataclass
class DegreeCertificate:
    t: float
    box: tuple[float, float]
    roots: list[tuple[float, float]]
    signs: list[int]
    jacobians: list[float]
    degree: int | None
    singular: list[tuple[float, float]] = field(default_factory=list)
    boundary_min: float = math.inf
    expansions: int = 0

    @property
    def verified(self) -> bool:
        return self.degree is not None

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "box": list(self.box),
            "roots": [
                {"x1": r[0], "x2": r[1], "jacobian": j, "sign": s}
                for r, j, s in zip(self.roots, self.jacobians, self.signs)
            ],
            "singular_roots": [list(r) for r in self.singular],
            "degree": self.degree,
            "boundary_min_norm": self.boundary_min,
            "box_expansions": self.expansions,
        }


def flag_einstein_metrics(p: SpaceParams) -> list[FlagMetric]:
    """The four closed-form Einstein metrics of F, normalized to x3 = 1.

    The Einstein constants belong to this normalization; for the third and
    fourth metric they are (m+n)/(2N) and (2l+m+n)/(2N) respectively.
    """
    l, m, n, N = p.l, p.m, p.n, p.N
    lam1 = (m * l**2 + n * l**2 + m**2 * l + n**2 * l + 4 * m * n * l
            + m * n**2 + m**2 * n) / (2 * (l + m) * (l + n) * N)
    return [
        FlagMetric((l + m) / (m + n), (l + n) / (m + n), 1.0, lam1),
        FlagMetric((l + m) / (m + n), (l + 2 * m + n) / (m + n), 1.0, (m + n) / (2 * N)),
        FlagMetric((l + m + 2 * n) / (m + n), (l + n) / (m + n), 1.0, (m + n) / (2 * N)),
        FlagMetric((l + m) / (2 * l + m + n), (l + n) / (2 * l + m + n), 1.0, (2 * l + m + n) / (2 * N)),
    ]


def lemma_jacobians(p: SpaceParams) -> list[float]:
    """Closed-form Jacobian determinants of f_0 at the four flag metrics,
    in the order of flag_einstein_metrics."""
    l, m, n = p.l, p.m, p.n
    r3 = 6 * math.sqrt(3)
    return [
        l * m * n * (m + n) ** 3
        / (r3 * (l**2 * (m + n) + l * (m**2 + 4 * m * n + n**2) + m * n * (m + n)) ** 2),
        -m * (m + n) ** 2 / (r3 * (l + m) * (l + 2 * m + n) ** 2),
        -n * (m + n) ** 2 / (r3 * (l + n) * (l + m + 2 * n) ** 2),
        -l * (2 * l + m + n) / (r3 * (l + m) * (l + n)),
    ]


def homotopy_T(p: SpaceParams, t, x) -> tuple:
    F = flag_ricci(p, x)
    Q = q_factors(p, x)
    return tuple(f / (1 + t * q) for f, q in zip(F, Q))


def F_t(p: SpaceParams, t, x) -> tuple:
    T = homotopy_T(p, t, x)
    r = sqrt(T[0] ** 2 + T[1] ** 2 + T[2] ** 2)
    return tuple(v / r for v in T)


def f_t_map(p: SpaceParams, t, x1, x2) -> tuple:
    """psi(P F_t(x1, x2, 1)) with psi the stereographic projection from the
    south pole."""
    one = x1 * 0 + 1
    X, Y, Z = F_t(p, t, (x1, x2, one))
    u = P[0, 0] * X + P[0, 1] * Y + P[0, 2] * Z
    v = P[1, 0] * X + P[1, 1] * Y + P[1, 2] * Z
    w = P[2, 0] * X + P[2, 1] * Y + P[2, 2] * Z
    if np.any(np.asarray(1 + w, dtype=float) <= 0):
        raise ArithmeticError("F_t reached the south pole (T proportional to -(1,1,1))")
    return u / (1 + w), v / (1 + w)


def homotopy_residual(p: SpaceParams, t):
    """Planar system whose zeros are the points with T1 = T2 = T3 at x3 = 1,
    scaled by |T| so that it is homogeneous of degree 0."""
    def G(x1, x2):
        one = x1 * 0 + 1
        T1, T2, T3 = homotopy_T(p, t, (x1, x2, one))
        r = sqrt(T1 * T1 + T2 * T2 + T3 * T3)
        return (T1 - T2) / r, (T2 - T3) / r
    return G


def jacobian_sign(p: SpaceParams, t, x1, x2, sv_tol: float = 1e-5) -> tuple[float, int]:
    """Determinant of the derivative of f_t at (x1, x2) and its sign.

    f_t takes values in a bounded disc and is homogeneous of degree 0, so
    the Jacobian in log coordinates, J diag(x1, x2), is dimensionless.
    The root is declared degenerate (SingularRootError) when its smallest
    singular value is below ``sv_tol``.
    """
    J = roots.jacobian(lambda a, b: f_t_map(p, t, a, b), x1, x2)
    det = float(J[0, 0] * J[1, 1] - J[0, 1] * J[1, 0])
    smin = float(np.linalg.svd(J * np.array([x1, x2]), compute_uv=False)[-1])
    if not smin > sv_tol:
        raise SingularRootError(
            f"degenerate root at ({x1}, {x2}): smallest singular value {smin:.3e}")
    return det, (1 if det > 0 else -1)


def boundary_min_norm(p: SpaceParams, t, box, samples: int = 400) -> float:
    """Smallest |f_t| over a log-uniform sample of the boundary of the box."""
    eps, L = box
    s = np.geomspace(eps, L, samples)
    e = np.full_like(s, eps)
    big = np.full_like(s, L)
    pts = [(s, e), (s, big), (e, s), (big, s)]
    best = math.inf
    for a, b in pts:
        u, v = f_t_map(p, t, a, b)
        best = min(best, float(np.min(np.hypot(u, v))))
    return best


def locate_roots(p: SpaceParams, t, box, density: int = 30) -> list[tuple[float, float]]:
    """All zeros of f_t reachable by Newton from a log grid over the box,
    together with the closed-form flag metrics as extra seeds."""
    G = homotopy_residual(p, t)
    starts = roots.log_grid(box, density)
    seeds = np.array([[f.x1, f.x2] for f in flag_einstein_metrics(p)])
    starts = np.vstack([starts, seeds])
    pts, ok = roots.newton_batch(G, starts)
    return roots.dedup(pts[ok])


def _confirm_basin(G, root, spread: float = 0.01) -> bool:
    """Re-converge from 8 perturbations around ``root``."""
    angles = np.arange(8) * np.pi / 4
    starts = np.column_stack([root[0] * np.exp(spread * np.cos(angles)),
                              root[1] * np.exp(spread * np.sin(angles))])
    pts, ok = roots.newton_batch(G, starts)
    if not ok.all():
        return False
    return all(roots._close(tuple(q), root, 1e-6) for q in pts)


def mapping_degree(p: SpaceParams, t, box=None, boundary_tol: float = 1e-3,
                   margin: float = 0.05, max_expansions: int = 4) -> DegreeCertificate:
    """Degree of f_t on (eps, L)^2 at the origin, as a sum of Jacobian signs.

    Without an explicit box the default (0.05, 10) is widened by a factor 2
    on both sides, at most four times, while some root lies within 5% of
    the boundary (in log scale) or the boundary sample gets close to zero.
    A given box is used as is, and a suspicious boundary raises
    BoundaryRootError.  Singular roots leave the degree unverified (None).
    """
    auto = box is None
    box = tuple(DEFAULT_BOX if box is None else box)
    expansions = 0
    while True:
        found = locate_roots(p, t, box)
        eps, L = box
        inside = [r for r in found if eps < r[0] < L and eps < r[1] < L]
        width = math.log(L / eps)
        near = any(min(math.log(c / eps), math.log(L / c)) < margin * width
                   for r in inside for c in r)
        bmin = boundary_min_norm(p, t, box)
        if not (near or bmin < boundary_tol):
            break
        if not auto:
            raise BoundaryRootError(
                f"boundary root suspected in box {box}: min |f_t| on boundary {bmin:.3e}")
        if expansions == max_expansions:
            raise BoundaryRootError(
                f"roots keep approaching the boundary after {expansions} expansions")
        box = (eps / 2, L * 2)
        expansions += 1

    G = homotopy_residual(p, t)
    signs, jacs, singular, regular = [], [], [], []
    for r in inside:
        try:
            det, s = jacobian_sign(p, t, *r)
        except SingularRootError:
            singular.append(r)
            continue
        if not _confirm_basin(G, r):
            singular.append(r)
            continue
        regular.append(r)
        signs.append(s)
        jacs.append(det)
    degree = None if singular else int(sum(signs))
    return DegreeCertificate(t=float(t), box=box, roots=regular, signs=signs,
                             jacobians=jacs, degree=degree, singular=singular,
                             boundary_min=bmin, expansions=expansions)
