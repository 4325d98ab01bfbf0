r"""
Construction of the polynomial metric of signature (2, n+2) on R^{n+4} from a subalgebra h of so(n).

The metric is

    g = 2 dx^1 dx^{n+3} + 2 dx^2 dx^{n+4} + sum (dx^i)^2 + 2 sum u^i dx^i dx^{n+4}
        + f (dx^{n+3})^2 + f (dx^{n+4})^2

with u^i = A^i_{j alpha} x^j (x^{n+3})^alpha and f = sum (x^i)^2, where i, j run over the
middle directions 3..n+2 and alpha over the basis of h.  The last term is read as f (dx^{n+4})^2,
which is the reading that makes Gamma^i_{n+4,n+4} = -x^i.

Notes
-----
#.  Written for the holcert library.
"""

# %% Imports
from __future__ import annotations

from dataclasses import dataclass
import doctest
import logging
from typing import Iterable, Sequence
import unittest

from sympy import ImmutableMatrix, Rational, zeros

from holcert.enums import LogLevel
from holcert.liealg import bracket, echelon_form, flatten, linear_span
from holcert.polycore import (
    constant_matrix,
    constant_term,
    CoordinateRing,
    identity_matrix,
    is_zero_poly_matrix,
    matadd,
    matmul,
    Poly,
    PolyMatrix,
)
from holcert.utils import ConsistencyError, InputError

# %% Globals
logger = logging.getLogger(__name__)

TYPO_NOTE = (
    "The metric's final term is read as f (dx^{n+4})^2; the printed form repeats f (dx^{n+3})^2, "
    "which contradicts Gamma^i_{n+4,n+4} = -x^i."
)
DOMAIN_NOTE = "The metric is built on all of R^{n+4} with no neighborhood restriction; holonomy is certified at the origin."


# %% Classes - HSpec
@dataclass(frozen=True)
class HSpec:
    r"""
    The input datum: n and an ordered basis A_1..A_N of a subalgebra h of so(n).

    Parameters
    ----------
    n : int
        Size of the so(n) block, n >= 1
    basis : tuple of ImmutableMatrix
        Skew-symmetric, linearly independent n x n rational matrices, order matters since A_alpha
        multiplies (x^{n+3})^alpha

    Examples
    --------
    >>> from holcert import HSpec
    >>> spec = HSpec.from_lists(2, [[[0, -1], [1, 0]]])
    >>> print(spec.N, spec.dim)
    1 6

    """

    n: int
    basis: tuple[ImmutableMatrix, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InputError(f"n must be at least 1, got {self.n}.")
        for k, mat in enumerate(self.basis):
            if mat.shape != (self.n, self.n):
                raise InputError(f"Generator {k + 1} is {mat.rows}x{mat.cols}, expected {self.n}x{self.n}.")
            for i in range(self.n):
                for j in range(i, self.n):
                    if mat[i, j] + mat[j, i] != 0:
                        raise InputError(f"Generator {k + 1} is not skew-symmetric at entry ({i + 1},{j + 1}).")
        rows, _ = echelon_form([flatten(mat) for mat in self.basis])
        if len(rows) != len(self.basis):
            raise InputError(
                f"Generators are linearly dependent: rank {len(rows)} from {len(self.basis)} matrices "
                f"(generator {_first_dependent(self.basis)} is in the span of the earlier ones)."
            )

    @classmethod
    def from_lists(cls, n: int, basis: Iterable[Sequence[Sequence[int | Rational]]]) -> HSpec:
        r"""Build the datum from nested lists of rationals."""
        return cls(n=n, basis=tuple(ImmutableMatrix(mat) for mat in basis))

    @property
    def N(self) -> int:  # pylint: disable=invalid-name
        r"""Dimension of h."""
        return len(self.basis)

    @property
    def dim(self) -> int:
        r"""Ambient dimension n+4."""
        return self.n + 4

    @property
    def P(self) -> int:  # pylint: disable=invalid-name
        r"""The 1-based direction n+3 (q1), whose coordinate carries the powers (x^{n+3})^alpha."""
        return self.n + 3

    @property
    def Q(self) -> int:  # pylint: disable=invalid-name
        r"""The 1-based direction n+4 (q2)."""
        return self.n + 4

    @property
    def middle(self) -> range:
        r"""The 1-based middle directions 3..n+2."""
        return range(3, self.n + 3)

    def generator(self, alpha: int) -> ImmutableMatrix:
        r"""A_alpha for 1 <= alpha <= N, and the zero matrix for alpha > N."""
        if alpha < 1:
            raise InputError(f"Basis index must be positive, got {alpha}.")
        if alpha > self.N:
            return ImmutableMatrix(zeros(self.n, self.n))
        return self.basis[alpha - 1]

    def subalgebra_defect(self) -> list[tuple[int, int]]:
        r"""
        Pairs (alpha, beta), 1-based, whose bracket leaves span(A_1..A_N).

        An empty list means h is a subalgebra.
        """
        if not self.basis:
            return []
        span = linear_span(self.basis, size=self.n)
        return [
            (a + 1, b + 1)
            for a in range(self.N)
            for b in range(a + 1, self.N)
            if not span.contains(bracket(self.basis[a], self.basis[b]))
        ]

    def is_subalgebra(self) -> bool:
        r"""Whether span(A_1..A_N) is closed under the commutator."""
        return not self.subalgebra_defect()

    def permuted(self, order: Sequence[int]) -> HSpec:
        r"""Same h with the basis reordered, order being a permutation of 1..N."""
        if sorted(order) != list(range(1, self.N + 1)):
            raise InputError(f"Permutation {list(order)} is not a permutation of 1..{self.N}.")
        return HSpec(n=self.n, basis=tuple(self.basis[k - 1] for k in order))


# %% Classes - MetricField
@dataclass(frozen=True)
class MetricField:
    r"""
    The polynomial metric, stored as a 0-based symmetric matrix of polynomials.

    Attributes
    ----------
    spec : HSpec
        The datum the metric was built from
    ring : CoordinateRing
        Polynomial ring in x1..x{n+4}
    g : PolyMatrix
        Metric components, g[a-1][b-1] = g_{ab}
    u : tuple of Poly
        u^3..u^{n+2}
    f : Poly
        Sum of the squared middle coordinates
    corrupted : bool
        Whether the debug corruption of u was applied
    """

    spec: HSpec
    ring: CoordinateRing
    g: PolyMatrix
    u: tuple[Poly, ...]
    f: Poly
    corrupted: bool = False

    @property
    def dim(self) -> int:
        r"""Ambient dimension n+4."""
        return self.spec.dim

    def entry(self, a: int, b: int) -> Poly:
        r"""Component g_{ab} with 1-based indices."""
        return self.g[a - 1][b - 1]

    def origin_value(self) -> ImmutableMatrix:
        r"""Exact value of g at the origin."""
        return ImmutableMatrix(self.dim, self.dim, lambda i, j: constant_term(self.g[i][j]))


# %% Functions - build_u
def build_u(spec: HSpec, *, corrupt: bool = False) -> tuple[Poly, ...]:
    r"""
    The polynomials u^i = sum_{j,alpha} A_alpha[i-2, j-2] x^j (x^{n+3})^alpha for i = 3..n+2.

    Parameters
    ----------
    spec : HSpec
        Subalgebra datum
    corrupt : bool, optional
        Debug negative control, negates the first nonzero u^i

    Returns
    -------
    tuple of Poly
        u^3..u^{n+2} in order

    Examples
    --------
    >>> from holcert import HSpec, build_u, to_text
    >>> u = build_u(HSpec.from_lists(2, [[[0, -1], [1, 0]]]))
    >>> print(to_text(u[0]))
    -1/1 * x4^1 * x5^1

    """
    ring = CoordinateRing(spec.dim)
    xp = ring.var(spec.P)
    out = []
    for row, i in enumerate(spec.middle):
        acc = ring.zero
        for alpha, mat in enumerate(spec.basis, start=1):
            power = xp**alpha
            for col, j in enumerate(spec.middle):
                coeff = mat[row, col]
                if coeff != 0:
                    acc += ring.const(coeff) * ring.var(j) * power
        out.append(acc)
        logger.log(LogLevel.L12, "u^%d has %d terms", i, len(acc))
    if corrupt:
        for k, poly in enumerate(out):
            if poly:
                logger.log(LogLevel.L1, "Corrupting the metric by negating u^%d (debug negative control)", k + 3)
                out[k] = -poly
                break
        else:
            logger.log(LogLevel.L1, "Cannot corrupt the metric, every u^i is zero.")
    return tuple(out)


# %% Functions - build_metric
def build_metric(spec: HSpec, *, corrupt: bool = False) -> MetricField:
    r"""
    Assemble the metric matrix.

    Examples
    --------
    >>> from holcert import HSpec, build_metric, to_text
    >>> metric = build_metric(HSpec.from_lists(1, []))
    >>> print(to_text(metric.entry(4, 4)))
    1/1 * x3^2

    """
    ring = CoordinateRing(spec.dim)
    u = build_u(spec, corrupt=corrupt)
    f = ring.zero
    for i in spec.middle:
        f += ring.var(i) ** 2
    dim, p, q = spec.dim, spec.P, spec.Q
    g = [[ring.zero for _ in range(dim)] for _ in range(dim)]
    g[0][p - 1] = g[p - 1][0] = ring.one
    g[1][q - 1] = g[q - 1][1] = ring.one
    for k, i in enumerate(spec.middle):
        g[i - 1][i - 1] = ring.one
        g[i - 1][q - 1] = g[q - 1][i - 1] = u[k]
    g[p - 1][p - 1] = f
    g[q - 1][q - 1] = f
    logger.log(LogLevel.L8, "Built the metric for n=%d, N=%d", spec.n, spec.N)
    return MetricField(
        spec=spec, ring=ring, g=tuple(tuple(row) for row in g), u=u, f=f, corrupted=corrupt and any(bool(x) for x in u)
    )


# %% Functions - invert_metric
def invert_metric(metric: MetricField) -> PolyMatrix:
    r"""
    Exact polynomial inverse of the metric.

    With g0 the value at the origin and K = g0^{-1} (g - g0), K is nilpotent for this metric, so the
    series g^{-1} = sum_k (-K)^k g0^{-1} terminates.  Both products with g are verified to be the
    identity, which also proves that det(g) is a unit of the polynomial ring, hence a constant.

    Raises
    ------
    ConsistencyError
        If g0 is singular, if K is not nilpotent, or if the result is not a two-sided inverse

    Examples
    --------
    >>> from holcert import HSpec, build_metric, invert_metric, to_text
    >>> inv = invert_metric(build_metric(HSpec.from_lists(1, [])))
    >>> print(to_text(inv[0][0]), "|", to_text(inv[0][3]))
    -1/1 * x3^2 | 1/1

    """
    ring = metric.ring
    dim = metric.dim
    g0 = metric.origin_value()
    if g0.det() == 0:
        raise ConsistencyError("The metric is degenerate at the origin.")
    g0_inv = constant_matrix(ring, g0.inv())
    delta = matadd(metric.g, constant_matrix(ring, g0), scale=-1)
    neg_k = matmul(g0_inv, delta)
    neg_k = tuple(tuple(-x for x in row) for row in neg_k)
    result = g0_inv
    power = identity_matrix(ring, dim)
    for k in range(1, dim + 1):
        power = matmul(power, neg_k)
        if is_zero_poly_matrix(power):
            logger.log(LogLevel.L8, "Metric inverse series terminated after %d terms", k)
            break
        result = matadd(result, matmul(power, g0_inv))
    else:
        raise ConsistencyError(f"The metric perturbation is not nilpotent within {dim} steps.")
    eye = identity_matrix(ring, dim)
    if matmul(metric.g, result) != eye or matmul(result, metric.g) != eye:
        raise ConsistencyError("The metric inverse series does not give a two-sided inverse.")
    return result


def _first_dependent(basis: Sequence[ImmutableMatrix]) -> int:
    for k in range(1, len(basis) + 1):
        rows, _ = echelon_form([flatten(mat) for mat in basis[:k]])
        if len(rows) < k:
            return k
    return len(basis)  # pragma: no cover


# %% Unit test
if __name__ == "__main__":
    unittest.main(module="holcert.tests.test_metric", exit=False)
    doctest.testmod(verbose=False)
