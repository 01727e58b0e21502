"""
Root finding helpers for square systems in two positive unknowns.

All iterations run in logarithmic coordinates y = log(x).  This keeps the
iterates inside the positive quadrant and makes the finite-difference step
h = 1e-6 relative to the size of each coordinate.

The batch Newton below evaluates the whole start grid at once with numpy;
that is the reason it is written here rather than calling
scipy.optimize.root once per start point.
"""

from __future__ import annotations

from typing import Callable

import mpmath
import numpy as np

System = Callable[[object, object], tuple]

REL_STEP = 1e-6


def log_grid(box: tuple[float, float], density: int) -> np.ndarray:
    """density x density starting points, log-uniform over (eps, L)^2."""
    eps, L = box
    if not 0 < eps < L:
        raise ValueError(f"invalid box {box}")
    axis = np.geomspace(eps, L, density)
    a, b = np.meshgrid(axis, axis, indexing="ij")
    return np.column_stack([a.ravel(), b.ravel()])


def jacobian(G: System, x1, x2, h: float = REL_STEP):
    """Central-difference Jacobian of G with respect to (x1, x2).

    Works elementwise on arrays; returns J with J[..., i, j] = dG_i/dx_j.
    """
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    h1, h2 = h * x1, h * x2
    gp = np.array(G(x1 + h1, x2))
    gm = np.array(G(x1 - h1, x2))
    d1 = (gp - gm) / (2 * h1)
    gp = np.array(G(x1, x2 + h2))
    gm = np.array(G(x1, x2 - h2))
    d2 = (gp - gm) / (2 * h2)
    J = np.stack([d1, d2], axis=-1)  # (2, ..., 2)
    return np.moveaxis(J, 0, -2)


def newton_batch(G: System, starts: np.ndarray, tol: float = 1e-13,
                 maxiter: int = 80, max_log_step: float = 1.0):
    """Damped Newton from every row of ``starts`` simultaneously.

    Returns (points, converged) where converged marks rows whose residual
    max-norm dropped below ``tol``.
    """
    y = np.log(np.asarray(starts, dtype=float))
    active = np.ones(len(y), dtype=bool)
    converged = np.zeros(len(y), dtype=bool)
    h = REL_STEP
    with np.errstate(all="ignore"):
        for _ in range(maxiter):
            if not active.any():
                break
            idx = np.flatnonzero(active)
            x = np.exp(y[idx])
            g = np.array(G(x[:, 0], x[:, 1])).T
            res = np.max(np.abs(g), axis=1)
            done = res < tol
            converged[idx[done]] = True
            # in log coordinates the Jacobian picks up a factor x_j
            J = jacobian(G, x[:, 0], x[:, 1], h) * x[:, None, :]
            det = J[:, 0, 0] * J[:, 1, 1] - J[:, 0, 1] * J[:, 1, 0]
            ok = np.isfinite(det) & (np.abs(det) > 1e-300) & np.isfinite(res)
            dy = np.zeros_like(x)
            dy[ok, 0] = -(J[ok, 1, 1] * g[ok, 0] - J[ok, 0, 1] * g[ok, 1]) / det[ok]
            dy[ok, 1] = -(-J[ok, 1, 0] * g[ok, 0] + J[ok, 0, 0] * g[ok, 1]) / det[ok]
            size = np.max(np.abs(dy), axis=1)
            scale = np.where(size > max_log_step, max_log_step / np.maximum(size, 1e-300), 1.0)
            y[idx] += dy * scale[:, None]
            # stop tracking diverging or stalled starts
            lost = ~ok | (np.abs(y[idx]).max(axis=1) > 40)
            active[idx[done | lost]] = False
    if active.any():
        idx = np.flatnonzero(active)
        x = np.exp(y[idx])
        g = np.array(G(x[:, 0], x[:, 1])).T
        converged[idx[np.max(np.abs(g), axis=1) < tol]] = True
    return np.exp(y), converged


def newton_point(G: System, x0, tol: float = 1e-13, maxiter: int = 80):
    """Single-start convenience wrapper; returns (x1, x2) or None."""
    pts, ok = newton_batch(G, np.array([x0], dtype=float), tol=tol, maxiter=maxiter)
    if not ok[0]:
        return None
    return float(pts[0, 0]), float(pts[0, 1])


def dedup(points, rtol: float = 1e-6) -> list[tuple[float, float]]:
    """Merge points that agree to ``rtol`` relative in both coordinates.

    The result is sorted lexicographically.
    """
    out: list[tuple[float, float]] = []
    for pt in sorted((float(a), float(b)) for a, b in points):
        if not any(_close(pt, q, rtol) for q in out):
            out.append(pt)
    return out


def _close(a, b, rtol):
    return all(abs(u - v) <= rtol * max(abs(u), abs(v)) for u, v in zip(a, b))


def refine_mp(G: System, x0, dps: int = 60):
    """Newton refinement in mpmath at ``dps`` digits, in log coordinates.

    mpmath.findroot accepts a point once the squared residual norm is below
    its tolerance, so 10^-(dps-4) leaves a residual near 10^-(dps/2).
    Returns the refined point as a pair of mpf values; raises ValueError on
    failure to converge.
    """
    with mpmath.workdps(dps):
        tol = mpmath.mpf(10) ** (-(dps - 4))

        def F(u, v):
            return G(mpmath.exp(u), mpmath.exp(v))

        y0 = [mpmath.log(mpmath.mpf(x0[0])), mpmath.log(mpmath.mpf(x0[1]))]
        try:
            y = mpmath.findroot(F, y0, tol=tol, maxsteps=100)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"no convergence from {x0}: {exc}") from exc
        return +mpmath.exp(y[0]), +mpmath.exp(y[1])
