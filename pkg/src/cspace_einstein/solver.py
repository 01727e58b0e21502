"""
Finding all invariant Einstein metrics on M_{l,m,n}.

After the normalization x3 = 1 and the elimination of v4, v5 and c, an
Einstein metric corresponds to a point (x1, x2) with t1 = t2 = t3 (the
reduced system).  Three strategies locate such points:

* continuation: follow the zeros of the homotopy T(t, x) from the four
  flag Einstein metrics at t = 0 to t = 1 with a predictor-corrector;
* multistart: Newton from a log-uniform grid of starting points;
* closed forms for l = m = n (a cubic) and l = m (quartic H1 on the
  branch x2 = 1, palindromic octic G2 otherwise).

``solve`` merges all of them, verifies every candidate against the full
six-equation system and optionally refines in mpmath.
"""

from __future__ import annotations

import math
import time
from contextlib import nullcontext
from dataclasses import dataclass, field

import mpmath
import numpy as np

from . import roots
from .core import InvariantMetric, SpaceParams, make_params
from .flag import DEFAULT_BOX, flag_einstein_metrics, homotopy_residual, homotopy_T
from .ricci import EinsteinResidual, complete_metric, einstein_residual, t_polys

CONTINUATION = "Continuation"
MULTISTART = "Multistart"
CUBIC = "CubicClosedForm"
PAIR = "PairClosedForm"

METHODS = ("auto", "continuation", "multistart", "closed-form")
PRECISIONS = ("double", "extended", "auto")

EXTENDED_DPS = 60
EXTENDED_TOL = 1e-25


class SolverError(ArithmeticError):
    pass


@dataclass(frozen=True)
class SolveOptions:
    method: str = "auto"
    precision: str = "auto"
    box: tuple[float, float] | None = None
    grid_density: int = 40
    tol: float = 1e-10
    dedup_rtol: float = 1e-6
    dt_min: float = 1e-4
    dt_max: float = 0.05
    dps: int = EXTENDED_DPS

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if self.precision not in PRECISIONS:
            raise ValueError(f"unknown precision {self.precision!r}")
        if not self.tol > 0 or not self.dedup_rtol > 0:
            raise ValueError("tolerances must be positive")
        if self.box is not None and not 0 < self.box[0] < self.box[1]:
            raise ValueError(f"invalid box {self.box}")


@dataclass(frozen=True)
class EinsteinSolution:
    metric: InvariantMetric
    lam: float
    residual: EinsteinResidual
    method: str
    condition: float

    @property
    def x(self):
        return self.metric.x

    def key(self):
        return float(self.metric.x1), float(self.metric.x2)


@dataclass
class PathResult:
    start: tuple[float, float]
    end: tuple[float, float] | None
    t_reached: float
    status: str


@dataclass
class SolveReport:
    params: SpaceParams
    solutions: list[EinsteinSolution]
    precision: str
    family_complete: bool
    isometry_classes: list[list[int]] = field(default_factory=list)
    diagnostics: list[str] = field(default_factory=list)
    wall_time: float = 0.0


# ---------------------------------------------------------------------------
# the reduced system


def reduced_system(p: SpaceParams, x1, x2) -> tuple:
    """(T1 - T2, T2 - T3) at t = 1 and x3 = 1."""
    one = x1 * 0 + 1
    T1, T2, T3 = homotopy_T(p, 1, (x1, x2, one))
    return T1 - T2, T2 - T3


def _system(p: SpaceParams):
    # zeros of reduced_system, divided by |T| to make it scale free
    return homotopy_residual(p, 1)


def _condition(p: SpaceParams, x1, x2) -> float:
    J = roots.jacobian(_system(p), float(x1), float(x2)) * np.array([float(x1), float(x2)])
    try:
        return float(np.linalg.cond(J))
    except np.linalg.LinAlgError:
        return math.inf


def build_solution(p: SpaceParams, x1, x2, method: str) -> EinsteinSolution:
    """Complete (x1, x2, 1) to a full metric with lambda, v4, v5 and c."""
    x = (x1, x2, x1 * 0 + 1)
    t = t_polys(p, x)
    lam = (t[0] + t[1] + t[2]) / 3
    g = complete_metric(p, x, lam)
    res = einstein_residual(p, g, lam)
    return EinsteinSolution(g, lam, res, method, _condition(p, x1, x2))


# ---------------------------------------------------------------------------
# multistart


def default_box(p: SpaceParams) -> tuple[float, float]:
    """(0.05, 10), widened so that it contains the flag Einstein metrics
    with a factor 10 to spare on either side."""
    coords = [c for f in flag_einstein_metrics(p) for c in (f.x1, f.x2)]
    return min(DEFAULT_BOX[0], min(coords) / 10), max(DEFAULT_BOX[1], max(coords) * 10)


def multistart_points(p: SpaceParams, box=None, grid_density: int = 40,
                      rtol: float = 1e-6) -> list[tuple[float, float]]:
    box = default_box(p) if box is None else box
    starts = roots.log_grid(box, grid_density)
    seeds = np.array([[f.x1, f.x2] for f in flag_einstein_metrics(p)])
    pts, ok = roots.newton_batch(_system(p), np.vstack([starts, seeds]))
    return roots.dedup(pts[ok], rtol)


def multistart(p: SpaceParams, box=None, grid_density: int = 40,
               opts: SolveOptions | None = None) -> list[EinsteinSolution]:
    opts = opts or SolveOptions()
    pts = multistart_points(p, box, grid_density, opts.dedup_rtol)
    return [build_solution(p, a, b, MULTISTART) for a, b in pts]


# ---------------------------------------------------------------------------
# continuation


def _log_jacobian(G, y):
    x = np.exp(y)
    return roots.jacobian(G, x[0], x[1]) * x


def _correct(G, y, tol, maxiter=8):
    """Newton corrector in log coordinates; returns (y, ok)."""
    for _ in range(maxiter):
        g = np.array(G(*np.exp(y)), dtype=float)
        if not np.all(np.isfinite(g)):
            return y, False
        if np.max(np.abs(g)) < tol:
            return y, True
        J = _log_jacobian(G, y)
        try:
            y = y - np.linalg.solve(J, g)
        except np.linalg.LinAlgError:
            return y, False
        if np.max(np.abs(y)) > 40:
            return y, False
    g = np.array(G(*np.exp(y)), dtype=float)
    return y, bool(np.max(np.abs(g)) < tol)


def track_path(p: SpaceParams, start, dt_min: float = 1e-4, dt_max: float = 0.05,
               tol: float = 1e-12) -> PathResult:
    """Follow the zero of T(t, x) through ``start`` from t = 0 to t = 1.

    Tangent predictor, Newton corrector, step halving on corrector failure
    and doubling after easy steps.  The path is declared lost once the step
    would drop below dt_min (typically a fold in t, where two paths meet).
    """
    y = np.log(np.asarray(start, dtype=float))
    t, dt = 0.0, dt_max
    dtau = 1e-6
    while t < 1.0:
        dt = min(dt, 1.0 - t)
        G0 = homotopy_residual(p, t)
        try:
            J = _log_jacobian(G0, y)
            x = np.exp(y)
            gt = (np.array(homotopy_residual(p, t + dtau)(*x))
                  - np.array(homotopy_residual(p, max(t - dtau, 0.0))(*x))) / (
                      t + dtau - max(t - dtau, 0.0))
            dydt = -np.linalg.solve(J, gt)
        except np.linalg.LinAlgError:
            return PathResult(tuple(start), None, t, f"singular Jacobian at t={t:.4g}")
        while True:
            y_pred = y + dt * dydt
            y_new, ok = _correct(homotopy_residual(p, t + dt), y_pred, tol)
            # reject corrections that jump far from the prediction
            if ok and np.max(np.abs(y_new - y_pred)) < 0.1:
                break
            dt /= 2
            if dt < dt_min:
                return PathResult(tuple(start), None, t, f"path lost at t={t:.4g}")
        y, t = y_new, t + dt
        dt = min(2 * dt, dt_max)
    end = tuple(float(v) for v in np.exp(y))
    return PathResult(tuple(start), end, 1.0, "converged")


def track_flag_paths(p: SpaceParams, opts: SolveOptions | None = None) -> list[PathResult]:
    opts = opts or SolveOptions()
    return [track_path(p, (f.x1, f.x2), opts.dt_min, opts.dt_max)
            for f in flag_einstein_metrics(p)]


def continue_from_flag(p: SpaceParams, opts: SolveOptions | None = None) -> list[EinsteinSolution]:
    """Endpoints at t = 1 of the paths that start at the flag Einstein
    metrics.  Paths that are lost are left out here; ``track_flag_paths``
    reports them."""
    opts = opts or SolveOptions()
    ends = []
    for path in track_flag_paths(p, opts):
        if path.end is None:
            continue
        pt = roots.newton_point(_system(p), path.end)
        if pt is not None and _condition(p, *pt) < 1e12:
            ends.append(pt)
    return [build_solution(p, a, b, CONTINUATION) for a, b in roots.dedup(ends, opts.dedup_rtol)]


# ---------------------------------------------------------------------------
# l = m = n


def cubic_h1(n: int) -> list[int]:
    """Coefficients (highest first) of
    h1(x) = (2n^2+1)x^3 - (2n-1)(2n+1)x^2 + 4(n^2+2)x - 4(2n^2+1)."""
    return [2 * n * n + 1, -(2 * n - 1) * (2 * n + 1), 4 * (n * n + 2), -4 * (2 * n * n + 1)]


def cubic_h2(n: int) -> list[int]:
    """h2(x) = -x^3 h1(1/x)
         = 4(2n^2+1)x^3 - 4(n^2+2)x^2 + (2n-1)(2n+1)x - (2n^2+1).

    Its positive root is 1/alpha.  (Writing -4(n^2-2) for the x^2
    coefficient breaks both properties.)"""
    return [4 * (2 * n * n + 1), -4 * (n * n + 2), (2 * n - 1) * (2 * n + 1), -(2 * n * n + 1)]


def alpha_root(n: int, dps: int | None = None):
    """The root of h1 in (1, 2); mpf when ``dps`` is given."""
    coeffs = cubic_h1(n)
    if dps is None:
        r = [z.real for z in np.roots(coeffs) if abs(z.imag) < 1e-9 and 1 < z.real < 2]
        if len(r) != 1:
            raise SolverError(f"expected one root of h1 in (1, 2) for n={n}, got {r}")
        a = r[0]
        # one polishing Newton step on the cubic
        return float(a - np.polyval(coeffs, a) / np.polyval(np.polyder(coeffs), a))
    with mpmath.workdps(dps):
        a = mpmath.findroot(lambda x: mpmath.polyval(coeffs, x), mpmath.mpf(alpha_root(n)),
                            tol=mpmath.mpf(10) ** (-2 * dps + 10))
        if not 1 < a < 2:
            raise SolverError(f"extended root of h1 left (1, 2) for n={n}: {a}")
        return +a


def solve_equal_all(n: int, dps: int | None = None) -> list[EinsteinSolution]:
    """All solutions on M_{n,n,n}: (1,1,1) and, for n >= 2, (1,a,1), (a,1,1)
    and (1/a,1/a,1) with a the root of h1 in (1, 2)."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    p = make_params(n, n, n)
    ctx = mpmath.workdps(dps) if dps else nullcontext()
    with ctx:
        one = 1.0 if dps is None else mpmath.mpf(1)
        if n == 1:
            # the extra factor (n-1)(x1-1) collapses the system to the Killing metric
            pts = [(one, one)]
        else:
            a = alpha_root(n, dps)
            pts = [(one, one), (one, a), (a, one), (1 / a, 1 / a)]
        sols = [build_solution(p, a, b, CUBIC) for a, b in pts]
    return sorted(sols, key=EinsteinSolution.key)


def lambda_equal_all(n: int, a):
    """Einstein constant of the non-Killing solutions on M_{n,n,n}."""
    return (2 + a * a) * (4 + a * a) * n * n / (12 * a * (2 + 2 * n * n + a * a * n * n))


# ---------------------------------------------------------------------------
# l = m


def pair_h1(m: int, n: int, x1, x2):
    return (-n**2 * x1**4 * (m**2 + m * n + 1)
            - n * x1**2 * x2**2 * (m - n) * (m**2 + m * n + 1)
            + 2 * (m**2 + 1) * n * x1 * x2**2 * (2 * m + n)
            + 2 * (m**2 + 1) * n * x1 * (2 * m + n)
            + m * n * x2**4 * (m**2 + m * n + 1)
            - 2 * m**2 * n * x2**3 * (2 * m + n)
            - m**2 * n * (m - n)
            - n * x1**2 * (m**3 + 2 * m**2 * n - m * n**2 + 2 * m - n)
            + 2 * m * n**2 * x1**3 * (2 * m + n)
            - 2 * n * x1**2 * x2 * (2 * m + n) * (m * n + 1)
            + m * n * x2**2 * (2 * m * n + 1)
            - 2 * m * x2 * (2 * m + n) * (m * n + 1))


def pair_h2_coeffs_x1(m: int, n: int, x2) -> list:
    """h2(x1, x2) as a cubic in x1 (highest power first)."""
    return [
        -2 * n * (2 * m + n) * (m * n + 1),
        m * (2 * m * n**2 - m + 2 * n) * (x2 + 1),
        -2 * m**2 * n * (2 * m + n) * (x2**2 + 1) + 2 * m * (2 * m + n) * x2,
        m**2 * (2 * m * n + 1) * (x2**3 + x2**2 + x2 + 1),
    ]


def pair_h2(m: int, n: int, x1, x2):
    c = pair_h2_coeffs_x1(m, n, x2)
    return ((c[0] * x1 + c[1]) * x1 + c[2]) * x1 + c[3]


def quartic_H1(m: int, n: int) -> list[int]:
    """h1(x1, 1), highest power first."""
    return [
        -n**2 * (m**2 + m * n + 1),
        2 * m * n**2 * (2 * m + n),
        -m * n * (2 * m**2 + 6 * m * n + 7),
        4 * (m**2 + 1) * n * (2 * m + n),
        -4 * m**2 * (2 * m * n + 1),
    ]


def octic_G2(m: int, n: int) -> list[int]:
    """Palindromic degree-8 polynomial in x2 whose roots carry the
    solutions with x2 != 1 (highest power first)."""
    s = m**2 + n * m + 1
    a0 = n**2 * (m + n) * (3 * m + n) * s**3 * (m**2 + 13 * n * m + 4 * n**2)
    a1 = -2 * n * (m + n) * s**2 * (
        2 * n * m**5 + 38 * n**2 * m**4 + 2 * m**4 + 42 * n**3 * m**3 + 29 * n * m**3
        + 22 * n**4 * m**2 - 15 * n**2 * m**2 + 4 * n**5 * m - 14 * n**3 * m - 2 * n**4)
    a2 = -s * (
        8 * n**2 * m**8 + 40 * n**3 * m**7 - 168 * n**4 * m**6 - 72 * n**2 * m**6 + 4 * m**6
        - 484 * n**5 * m**5 - 620 * n**3 * m**5 + 48 * n * m**5 - 400 * n**6 * m**4
        - 1352 * n**4 * m**4 + 77 * n**2 * m**4 - 132 * n**7 * m**3 - 1092 * n**5 * m**3
        - 289 * n**3 * m**3 - 16 * n**8 * m**2 - 352 * n**6 * m**2 - 456 * n**4 * m**2
        - 40 * n**7 * m - 188 * n**5 * m - 24 * n**6)
    a3 = -2 * (
        6 * n**2 * m**10 + 132 * n**3 * m**9 - 2 * n * m**9 + 558 * n**4 * m**8
        - 7 * n**2 * m**8 + 8 * m**8 + 956 * n**5 * m**7 + 442 * n**3 * m**7 + 140 * n * m**7
        + 838 * n**6 * m**6 + 1054 * n**4 * m**6 + 798 * n**2 * m**6 + 8 * m**6
        + 412 * n**7 * m**5 + 934 * n**5 * m**5 + 1320 * n**3 * m**5 + 230 * n * m**5
        + 110 * n**8 * m**4 + 449 * n**6 * m**4 + 706 * n**4 * m**4 + 579 * n**2 * m**4
        + 12 * n**9 * m**3 + 136 * n**7 * m**3 + 66 * n**5 * m**3 + 366 * n**3 * m**3
        + 18 * n**8 * m**2 - 14 * n**6 * m**2 - 3 * n**4 * m**2 - 40 * n**5 * m - 6 * n**6)
    a4 = -2 * (
        11 * n**2 * m**10 + 100 * n**3 * m**9 + 235 * n**4 * m**8 + 9 * n**2 * m**8
        + 12 * m**8 - 8 * n**5 * m**7 + 215 * n**3 * m**7 + 236 * n * m**7
        - 355 * n**6 * m**6 - 574 * n**4 * m**6 + 1176 * n**2 * m**6 + 12 * m**6
        - 304 * n**7 * m**5 - 1630 * n**5 * m**5 + 798 * n**3 * m**5 + 416 * n * m**5
        - 99 * n**8 * m**4 - 1259 * n**6 * m**4 - 931 * n**4 * m**4 + 634 * n**2 * m**4
        - 12 * n**9 * m**3 - 389 * n**7 * m**3 - 1230 * n**5 * m**3 + 68 * n**3 * m**3
        - 44 * n**8 * m**2 - 441 * n**6 * m**2 - 311 * n**4 * m**2 - 52 * n**7 * m
        - 151 * n**5 * m - 20 * n**6)
    return [a0, a1, a2, a3, a4, a3, a2, a1, a0]


def _positive_real_roots(coeffs, imag_tol=1e-7) -> list[float]:
    z = np.roots(np.array(coeffs, dtype=float))
    return sorted(float(r.real) for r in z if abs(r.imag) <= imag_tol * max(1.0, abs(r)) and r.real > 0)


def pair_candidates(m: int, n: int) -> list[tuple[float, float]]:
    """Approximate solutions on M_{m,m,n} from the polynomial elimination."""
    cands = [(a, 1.0) for a in _positive_real_roots(quartic_H1(m, n))]
    for x2 in _positive_real_roots(octic_G2(m, n)):
        if abs(x2 - 1) < 1e-9:
            continue
        x1s = _positive_real_roots(pair_h2_coeffs_x1(m, n, x2))
        if not x1s:
            continue
        # the partner root is the one that also annihilates h1
        x1 = min(x1s, key=lambda a: abs(pair_h1(m, n, a, x2)) / (1 + a**4 + x2**4))
        cands.append((x1, x2))
    return cands


def solve_equal_pair(m: int, n: int, opts: SolveOptions | None = None) -> list[EinsteinSolution]:
    """Solutions on M_{m,m,n}, m != n, from H1 and G2, each polished on the
    reduced system, merged with a multistart run."""
    if m == n:
        return solve_equal_all(m)
    opts = opts or SolveOptions()
    p = make_params(m, m, n)
    G = _system(p)
    found = []
    for c in pair_candidates(m, n):
        pt = roots.newton_point(G, c)
        if pt is not None:
            found.append((pt, PAIR))
    for pt in multistart_points(p, opts.box, opts.grid_density, opts.dedup_rtol):
        found.append((pt, MULTISTART))
    return _merge(p, found, opts.dedup_rtol)


def _merge(p: SpaceParams, found, rtol) -> list[EinsteinSolution]:
    """Deduplicate (point, method) pairs, keeping the first method seen."""
    kept: list[tuple[tuple[float, float], str]] = []
    for pt, method in found:
        if not any(roots._close(pt, q, rtol) for q, _ in kept):
            kept.append((pt, method))
    kept.sort()
    return [build_solution(p, a, b, method) for (a, b), method in kept]


# ---------------------------------------------------------------------------
# refinement and orchestration


def refine(p: SpaceParams, approx, precision: str = "double",
           dps: int = EXTENDED_DPS, method: str = MULTISTART) -> EinsteinSolution:
    """Newton on the reduced system from ``approx``, then completion to a
    full solution.  Extended precision returns mpf-valued metrics."""
    if precision == "extended":
        with mpmath.workdps(dps):
            x1, x2 = roots.refine_mp(_system(p), approx, dps)
            sol = build_solution(p, x1, x2, method)
            if not sol.residual.norm < EXTENDED_TOL:
                raise SolverError(f"extended refinement stalled at residual {sol.residual.norm}")
            return sol
    pt = roots.newton_point(_system(p), approx, maxiter=100)
    if pt is None:
        raise SolverError(f"no convergence in 100 iterations from {approx}")
    return build_solution(p, pt[0], pt[1], method)


def _wants_extended(p: SpaceParams, opts: SolveOptions, sols) -> bool:
    if opts.precision == "extended":
        return True
    if opts.precision == "double":
        return False
    return max(p.l, p.m, p.n) > 500 or any(s.condition > 1e10 for s in sols)


def solve(p: SpaceParams, opts: SolveOptions | None = None) -> SolveReport:
    opts = opts or SolveOptions()
    t0 = time.perf_counter()
    diagnostics: list[str] = []
    found: list[tuple[tuple[float, float], str]] = []
    method = opts.method
    equal_all = p.l == p.m == p.n
    equal_pair = p.l == p.m and not equal_all

    if method in ("auto", "closed-form"):
        if equal_all:
            found += [(s.key(), CUBIC) for s in solve_equal_all(p.n)]
        elif equal_pair:
            G = _system(p)
            for c in pair_candidates(p.m, p.n):
                pt = roots.newton_point(G, c)
                if pt is not None:
                    found.append((pt, PAIR))
        elif method == "closed-form":
            raise SolverError("closed forms exist only for l = m or l = m = n")
    if method in ("auto", "continuation") and not (method == "auto" and equal_all):
        for path in track_flag_paths(p, opts):
            if path.end is None:
                diagnostics.append(f"continuation from {_fmt(path.start)}: {path.status}")
                continue
            pt = roots.newton_point(_system(p), path.end)
            if pt is None:
                diagnostics.append(f"continuation from {_fmt(path.start)}: endpoint did not refine")
            elif _condition(p, *pt) > 1e12:
                diagnostics.append(f"continuation from {_fmt(path.start)}: singular endpoint {_fmt(pt)}")
            else:
                found.append((pt, CONTINUATION))
    if method in ("auto", "multistart") and not (method == "auto" and equal_all):
        for pt in multistart_points(p, opts.box, opts.grid_density, opts.dedup_rtol):
            found.append((pt, MULTISTART))

    sols = _merge(p, found, opts.dedup_rtol)
    singular = [s for s in sols if s.condition > 1e12]
    for s in singular:
        diagnostics.append(f"singular solution at {_fmt(s.key())} (condition {s.condition:.2e})")

    extended = _wants_extended(p, opts, sols)
    if extended:
        if equal_all and method in ("auto", "closed-form"):
            sols = solve_equal_all(p.n, dps=opts.dps)
        else:
            sols = [refine(p, s.key(), "extended", opts.dps, s.method) for s in sols]
        limit = EXTENDED_TOL
    else:
        limit = opts.tol
    bad = [s for s in sols if not s.residual.norm <= limit]
    if bad:
        raise SolverError("solutions failed verification: "
                          + ", ".join(f"{_fmt(s.key())} residual {float(s.residual.norm):.2e}" for s in bad))

    report = SolveReport(params=p, solutions=sols,
                         precision="extended" if extended else "double",
                         family_complete=not p.degenerate_flag,
                         diagnostics=diagnostics)
    if p.degenerate_flag:
        report.diagnostics.append("family-incomplete: degenerate case")
    from .isometry import isometry_classes
    report.isometry_classes = isometry_classes([report])
    report.wall_time = time.perf_counter() - t0
    return report


def _fmt(pt) -> str:
    return "(" + ", ".join(f"{float(v):.8g}" for v in pt) + ")"
