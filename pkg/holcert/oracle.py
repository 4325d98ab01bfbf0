r"""
Independent floating-point cross-checks of the exact pipeline.

The metric is rebuilt in double precision straight from the subalgebra datum, differentiated by
central differences and combined with a numeric inverse.  Nothing computed here feeds back into
the exact engine, results are only compared against it.

Notes
-----
#.  Written for the holcert library.
"""

# %% Imports
from __future__ import annotations

from dataclasses import dataclass
import doctest
import logging
import random
from typing import Sequence
import unittest

import numpy as np
from sympy import Rational

from holcert.enums import LogLevel
from holcert.metric import HSpec
from holcert.utils import InputError

# %% Globals
logger = logging.getLogger(__name__)


# %% Exceptions
class OracleError(RuntimeError):
    r"""Raised for numeric failures: a singular numeric metric or a non-finite transport result."""


# %% Classes - FloatPoint
@dataclass(frozen=True)
class FloatPoint:
    r"""
    A sample point with its finite-difference step and comparison tolerance.

    Examples
    --------
    >>> from holcert import FloatPoint
    >>> pt = FloatPoint.origin(6)
    >>> print(pt.coords.shape, pt.step)
    (6,) 0.0001

    """

    coords: np.ndarray
    step: float = 1e-4
    tolerance: float = 1e-6

    def __post_init__(self) -> None:
        if self.step <= 0:
            raise InputError(f"Finite difference step must be positive, got {self.step}.")
        if self.tolerance <= 0:
            raise InputError(f"Tolerance must be positive, got {self.tolerance}.")
        if np.ndim(self.coords) != 1:
            raise InputError("Point coordinates must be a vector.")

    @classmethod
    def origin(cls, dim: int, *, step: float = 1e-4, tolerance: float = 1e-6) -> FloatPoint:
        r"""The origin of R^dim."""
        return cls(coords=np.zeros(dim), step=step, tolerance=tolerance)

    @classmethod
    def from_rationals(cls, values: Sequence[Rational], *, step: float = 1e-4, tolerance: float = 1e-6) -> FloatPoint:
        r"""Float image of an exact rational point."""
        return cls(coords=np.array([float(x) for x in values], dtype=float), step=step, tolerance=tolerance)


# %% Functions - random_rational_points
def random_rational_points(dim: int, count: int, seed: int) -> list[tuple[Rational, ...]]:
    r"""
    Seeded random rational points with coordinates k/8 for k in [-4, 4].

    Examples
    --------
    >>> from holcert import random_rational_points
    >>> points = random_rational_points(6, 2, seed=1)
    >>> print(len(points), len(points[0]))
    2 6

    """
    rng = random.Random(seed)
    return [tuple(Rational(rng.randint(-4, 4), 8) for _ in range(dim)) for _ in range(count)]


# %% Functions - metric_at
def metric_at(spec: HSpec, x: np.ndarray) -> np.ndarray:
    r"""
    Numeric metric matrix at a point, built independently of the exact engine (0-based indices).

    Examples
    --------
    >>> from holcert import HSpec, metric_at
    >>> import numpy as np
    >>> g = metric_at(HSpec.from_lists(2, [[[0, -1], [1, 0]]]), np.array([0, 0, 1, 1, 1, 0.0]))
    >>> print(g[2, 5], g[4, 4])
    -1.0 2.0

    """
    n = spec.n
    dim = n + 4
    p0, q0 = n + 2, n + 3
    mid = x[2 : n + 2]
    xp = x[p0]
    u = np.zeros(n)
    for alpha, mat in enumerate(spec.basis, start=1):
        u += np.array(mat.tolist(), dtype=float) @ mid * xp**alpha
    f = float(mid @ mid)
    g = np.zeros((dim, dim))
    g[0, p0] = g[p0, 0] = 1.0
    g[1, q0] = g[q0, 1] = 1.0
    g[2 : n + 2, 2 : n + 2] = np.eye(n)
    g[2 : n + 2, q0] = u
    g[q0, 2 : n + 2] = u
    g[p0, p0] = f
    g[q0, q0] = f
    return g


# %% Functions - fd_christoffel
def fd_christoffel(spec: HSpec, point: FloatPoint) -> np.ndarray:
    r"""
    Christoffel symbols Gamma[a, b, c] (0-based) from central differences of the metric.

    Raises
    ------
    OracleError
        If the numeric metric is singular at the point

    Examples
    --------
    >>> from holcert import FloatPoint, HSpec, fd_christoffel
    >>> import numpy as np
    >>> spec = HSpec.from_lists(2, [[[0, -1], [1, 0]]])
    >>> gamma = fd_christoffel(spec, FloatPoint(np.array([0, 0, 0, 0, 1, 0.0])))
    >>> print(round(gamma[2, 3, 5], 6))
    -1.0

    """
    x = np.asarray(point.coords, dtype=float)
    dim = spec.dim
    if x.shape != (dim,):
        raise InputError(f"Point has {x.size} coordinates, expected {dim}.")
    h = point.step
    dg = np.empty((dim, dim, dim))
    for k in range(dim):
        shift = np.zeros(dim)
        shift[k] = h
        dg[k] = (metric_at(spec, x + shift) - metric_at(spec, x - shift)) / (2.0 * h)
    g = metric_at(spec, x)
    try:
        g_inv = np.linalg.inv(g)
    except np.linalg.LinAlgError as exc:
        raise OracleError(f"Numeric metric is singular at {x.tolist()}.") from exc
    # first[d, b, c] = d_b g_dc + d_c g_bd - d_d g_bc
    first = np.einsum("bdc->dbc", dg) + np.einsum("cbd->dbc", dg) - dg
    return 0.5 * np.einsum("ad,dbc->abc", g_inv, first)


# %% Functions - fd_riemann
def fd_riemann(spec: HSpec, point: FloatPoint) -> np.ndarray:
    r"""
    Curvature R[a, b, c, d] (0-based) from central differences of fd_christoffel.

    Uses R^a_{bcd} = d_c Gamma^a_{db} - d_d Gamma^a_{cb} + Gamma^a_{cf} Gamma^f_{db} - Gamma^a_{df} Gamma^f_{cb}.

    Examples
    --------
    >>> from holcert import FloatPoint, HSpec, fd_riemann
    >>> spec = HSpec.from_lists(2, [[[0, -1], [1, 0]]])
    >>> riem = fd_riemann(spec, FloatPoint.origin(6))
    >>> print(round(riem[2, 3, 4, 5], 6))
    -1.0

    """
    x = np.asarray(point.coords, dtype=float)
    dim = spec.dim
    h = point.step
    dgam = np.empty((dim, dim, dim, dim))
    for k in range(dim):
        shift = np.zeros(dim)
        shift[k] = h
        plus = fd_christoffel(spec, FloatPoint(x + shift, step=h, tolerance=point.tolerance))
        minus = fd_christoffel(spec, FloatPoint(x - shift, step=h, tolerance=point.tolerance))
        dgam[k] = (plus - minus) / (2.0 * h)
    gamma = fd_christoffel(spec, point)
    linear = np.einsum("cadb->abcd", dgam) - np.einsum("dacb->abcd", dgam)
    quadratic = np.einsum("acf,fdb->abcd", gamma, gamma) - np.einsum("adf,fcb->abcd", gamma, gamma)
    return linear + quadratic


# %% Functions - loop_transport
def loop_transport(
    spec: HSpec, plane: tuple[int, int], eps: float = 1e-3, steps: int = 400, *, step: float = 1e-4
) -> np.ndarray:
    r"""
    Parallel transport of the frame around a square loop of side eps centered at the origin.

    The loop runs +c, +d, -c, -d in the (c, d) coordinate plane (1-based directions), each leg
    integrated with steps // 4 classical Runge-Kutta steps of dV/ds = -Gamma(v) V.  The returned
    (I - P) / eps**2 approximates the operator R(d_c, d_d) at the origin.

    Raises
    ------
    OracleError
        If steps is too small or the transported frame stops being finite

    Examples
    --------
    >>> from holcert import HSpec, loop_transport
    >>> spec = HSpec.from_lists(2, [[[0, -1], [1, 0]]])
    >>> approx = loop_transport(spec, (5, 6), steps=100)
    >>> print(round(approx[2, 3], 3), round(approx[3, 2], 3))
    -1.0 1.0

    """
    dim = spec.dim
    c, d = plane
    if not (1 <= c <= dim and 1 <= d <= dim) or c == d:
        raise InputError(f"Plane {plane} is not a pair of distinct directions in 1..{dim}.")
    if steps < 4:
        raise OracleError(f"Loop transport needs at least 4 steps, got {steps}.")
    per_leg = steps // 4
    ds = eps / per_leg
    e_c = np.zeros(dim)
    e_c[c - 1] = 1.0
    e_d = np.zeros(dim)
    e_d[d - 1] = 1.0

    def _rate(pos: np.ndarray, direction: np.ndarray, frame: np.ndarray) -> np.ndarray:
        gamma = fd_christoffel(spec, FloatPoint(pos, step=step))
        conn = np.einsum("abc,b->ac", gamma, direction)
        return -conn @ frame

    frame = np.eye(dim)
    pos = -0.5 * eps * (e_c + e_d)
    for direction in (e_c, e_d, -e_c, -e_d):
        for _ in range(per_leg):
            k1 = _rate(pos, direction, frame)
            k2 = _rate(pos + 0.5 * ds * direction, direction, frame + 0.5 * ds * k1)
            k3 = _rate(pos + 0.5 * ds * direction, direction, frame + 0.5 * ds * k2)
            k4 = _rate(pos + ds * direction, direction, frame + ds * k3)
            frame = frame + ds / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            pos = pos + ds * direction
        if not np.all(np.isfinite(frame)):
            raise OracleError(f"Transport around plane {plane} diverged (eps={eps}, steps={steps}).")
    logger.log(LogLevel.L10, "Loop transport in plane %s closed with offset %g", plane, float(np.max(np.abs(pos))))
    return (np.eye(dim) - frame) / eps**2


# %% Functions - within_tolerance
def within_tolerance(approx: float, exact: float, tolerance: float, *, floor: float = 1.0) -> bool:
    r"""
    Whether |approx - exact| <= tolerance * max(|exact|, floor).

    Examples
    --------
    >>> from holcert import within_tolerance
    >>> print(within_tolerance(1.0 + 1e-8, 1.0, 1e-6))
    True

    """
    return abs(approx - exact) <= tolerance * max(abs(exact), floor)


# %% Functions - convergence_ratio
def convergence_ratio(errors: tuple[float, float]) -> float:
    r"""Ratio err(h) / err(h/2), infinite when the finer error vanishes."""
    coarse, fine = errors
    if fine == 0.0:
        return float("inf")
    return coarse / fine


# %% Unit test
if __name__ == "__main__":
    unittest.main(module="holcert.tests.test_oracle", exit=False)
    doctest.testmod(verbose=False)
