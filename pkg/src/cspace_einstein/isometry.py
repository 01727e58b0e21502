"""
Isometry classes of Einstein solutions.

Solutions are first rescaled to Einstein constant 1.  Two solutions, on
M_{l,m,n} or on any reordering of (l, m, n), are put in the same class when

* the multisets of (module type, coefficient) agree, where the type of the
  block module between sizes a and b is the unordered pair {a, b}, and
* the eigenvalues of the fiber Gram matrix agree.

Reordering (l, m, n) permutes the off-diagonal blocks and acts on the
fiber by a B-isometry, so both data are invariant under it.  Agreement is
therefore necessary for an isometry induced by that action; we do not
claim it is sufficient in general.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import InvariantMetric, SpaceParams, make_params, sqrt
from .ricci import complete_metric
from .solver import EinsteinSolution, SolveReport, build_solution

MATCH_RTOL = 1e-6


@dataclass(frozen=True)
class NormalizedSolution:
    x1n: float
    x2n: float
    x3n: float
    v4n: float
    v5n: float
    c: float
    rho0_eigs: tuple[float, float]

    def metric(self) -> InvariantMetric:
        return InvariantMetric(self.x1n, self.x2n, self.x3n, self.v4n, self.v5n, self.c)


@dataclass(frozen=True)
class IsometrySignature:
    diagonal: tuple[tuple[tuple[int, int], float], ...]
    eigs: tuple[float, float]

    def matches(self, other: "IsometrySignature", rtol: float = MATCH_RTOL) -> bool:
        if len(self.diagonal) != len(other.diagonal):
            return False
        for (ka, va), (kb, vb) in zip(self.diagonal, other.diagonal):
            if ka != kb or not _close(va, vb, rtol):
                return False
        return all(_close(a, b, rtol) for a, b in zip(self.eigs, other.eigs))


def _close(a, b, rtol):
    return abs(a - b) <= rtol * max(abs(a), abs(b))


def rho0_eigenvalues(v4, v5, c) -> tuple:
    """Eigenvalues of [[v4 + c^2 v5, c v5], [c v5, v5]], largest first."""
    a, b, d = v4 + c * c * v5, c * v5, v5
    half_tr = (a + d) / 2
    disc = sqrt(((a - d) / 2) ** 2 + b * b)
    return half_tr + disc, half_tr - disc


def normalize(sol: EinsteinSolution) -> NormalizedSolution:
    """Rescale by lambda; Ric is scale invariant, so the Einstein constant
    of the rescaled metric is 1."""
    g, lam = sol.metric, sol.lam
    x1, x2, x3, v4, v5 = (v * lam for v in (g.x1, g.x2, g.x3, g.v4, g.v5))
    return NormalizedSolution(x1, x2, x3, v4, v5, g.c, rho0_eigenvalues(v4, v5, g.c))


def signature(p: SpaceParams, sol: EinsteinSolution) -> IsometrySignature:
    ns = normalize(sol)
    l, m, n = p.l, p.m, p.n
    diag = [(tuple(sorted(pair)), float(v)) for pair, v in
            (((l, m), ns.x1n), ((l, n), ns.x2n), ((m, n), ns.x3n))]
    diag.sort()
    return IsometrySignature(tuple(diag), tuple(float(e) for e in ns.rho0_eigs))


# modules by the pair of blocks they connect: f1 = {0,1}, f2 = {0,2}, f3 = {1,2}
_MODULE = {frozenset((0, 1)): 0, frozenset((0, 2)): 1, frozenset((1, 2)): 2}


def permute_solution(p: SpaceParams, sol: EinsteinSolution, order) -> tuple[SpaceParams, EinsteinSolution]:
    """Carry a solution on M_{l,m,n} over to the space with blocks listed in
    ``order`` (a permutation of 0, 1, 2), renormalized to x3 = 1.

    The diagonal part is relabeled block by block; the fiber part is
    recomputed on the new space, as it is determined by x and lambda.
    """
    sizes = p.as_tuple()
    q = make_params(*(sizes[i] for i in order))
    x = sol.metric.x
    new = [x[_MODULE[frozenset((order[a], order[b]))]] for a, b in ((0, 1), (0, 2), (1, 2))]
    s = new[2]
    x1, x2 = new[0] / s, new[1] / s
    moved = build_solution(q, x1, x2, sol.method)
    return q, moved


def isometry_classes(reports: list[SolveReport], rtol: float = MATCH_RTOL) -> list[list[int]]:
    """Partition of all solutions in ``reports`` (numbered consecutively
    across the reports) into classes with matching signatures."""
    if not reports:
        return []
    base = sorted(reports[0].params.as_tuple())
    for r in reports[1:]:
        if sorted(r.params.as_tuple()) != base:
            raise ValueError("inconsistent parameter multisets")
    sigs = [signature(r.params, s) for r in reports for s in r.solutions]
    classes: list[list[int]] = []
    for i, sg in enumerate(sigs):
        for cls in classes:
            if sigs[cls[0]].matches(sg, rtol):
                cls.append(i)
                break
        else:
            classes.append([i])
    return classes


def fiber_from_x(p: SpaceParams, x, lam) -> InvariantMetric:
    return complete_metric(p, x, lam)
