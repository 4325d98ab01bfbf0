r"""
Exact multivariate polynomial arithmetic over the rationals in the coordinates x1..x{n+4}.

Polynomials are elements of a sympy sparse polynomial ring over QQ with graded lexicographic
order, so the term map is canonical (no stored zeros, identical maps for equal polynomials).
Variables are addressed with 1-based indices to match the coordinate convention x^1..x^{n+4}.

Notes
-----
#.  Written for the holcert library.
"""

# %% Imports
from __future__ import annotations

import doctest
from functools import lru_cache
import re
from typing import Any, Literal, Mapping, Sequence
import unittest

from sympy import ImmutableMatrix, Rational
from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, PolyRing

from holcert.utils import InputError, format_rational, parse_rational, to_rational

# %% Constants
Poly = PolyElement
PolyMatrix = tuple[tuple[PolyElement, ...], ...]

_TERM_PATTERN = re.compile(r"^(?P<coeff>[+-]?\d+(?:/\d+)?)(?P<rest>(?:\s*\*\s*x\d+\^\d+)*)$")
_FACTOR_PATTERN = re.compile(r"x(?P<var>\d+)\^(?P<exp>\d+)")


# %% Classes - CoordinateRing
class CoordinateRing:
    r"""
    Polynomial ring QQ[x1, ..., x{dim}] with graded lexicographic term order.

    Parameters
    ----------
    dim : int
        Ambient dimension, which is n+4 for the metric construction

    Examples
    --------
    >>> from holcert import CoordinateRing
    >>> ring = CoordinateRing(6)
    >>> p = ring.var(3) * ring.var(5)
    >>> print(ring.to_text(p))
    1/1 * x3^1 * x5^1

    """

    def __init__(self, dim: int):
        if dim < 1:
            raise InputError(f"Ambient dimension must be positive, got {dim}.")
        self.dim = dim
        self.ring = _make_ring(dim)

    def __repr__(self) -> str:
        return f"CoordinateRing(dim={self.dim})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CoordinateRing) and other.dim == self.dim

    def __hash__(self) -> int:
        return hash(("CoordinateRing", self.dim))

    @property
    def zero(self) -> Poly:
        r"""The zero polynomial."""
        return self.ring.zero

    @property
    def one(self) -> Poly:
        r"""The constant polynomial one."""
        return self.ring.one

    def var(self, index: int) -> Poly:
        r"""Return the coordinate x^index (1-based)."""
        self._check_index(index)
        return self.ring.gens[index - 1]

    def const(self, value: Any) -> Poly:
        r"""Return a constant polynomial with exact rational value."""
        rat = to_rational(value)
        return self.ring.ground_new(QQ(int(rat.p), int(rat.q)))

    def from_terms(self, terms: Mapping[Sequence[int], Any]) -> Poly:
        r"""Build a polynomial from a map of exponent vectors to rational coefficients."""
        data = {}
        for monom, coeff in terms.items():
            if len(monom) != self.dim:
                raise InputError(f"Exponent vector {tuple(monom)} does not have length {self.dim}.")
            if any(e < 0 for e in monom):
                raise InputError(f"Exponent vector {tuple(monom)} has a negative entry.")
            rat = to_rational(coeff)
            if rat != 0:
                data[tuple(int(e) for e in monom)] = QQ(int(rat.p), int(rat.q))
        return self.ring.from_dict(data) if data else self.ring.zero

    def owns(self, p: Poly) -> bool:
        r"""Whether p lives in this ring."""
        return isinstance(p, PolyElement) and p.ring == self.ring

    def check(self, p: Poly, name: str = "polynomial") -> None:
        r"""Raise an InputError if p does not share this ambient dimension."""
        if not self.owns(p):
            other = p.ring.ngens if isinstance(p, PolyElement) else type(p).__name__
            raise InputError(f"{name} has ambient dimension {other}, expected {self.dim}.")

    def to_text(self, p: Poly) -> str:
        r"""Serialize p as "c * x1^e1 * ..." terms joined by " + ", in graded lexicographic order."""
        self.check(p)
        return to_text(p)

    def from_text(self, text: str) -> Poly:
        r"""Parse the textual form produced by to_text."""
        return from_text(text, self)

    def _check_index(self, index: int) -> None:
        if not 1 <= index <= self.dim:
            raise InputError(f"Variable index {index} is out of range 1..{self.dim}.")


@lru_cache(maxsize=None)
def _make_ring(dim: int) -> PolyRing:
    return PolyRing([f"x{i}" for i in range(1, dim + 1)], QQ, grlex)


# %% Functions - arith
def arith(p: Poly, q: Poly, op: Literal["add", "sub", "mul"]) -> Poly:
    r"""
    Exact add, subtract or multiply of two polynomials in the same ambient dimension.

    Examples
    --------
    >>> from holcert import CoordinateRing, arith
    >>> ring = CoordinateRing(6)
    >>> print(arith(ring.var(3), ring.var(3), "sub") == ring.zero)
    True

    """
    if not isinstance(p, PolyElement) or not isinstance(q, PolyElement):
        raise InputError("Both operands must be polynomials.")
    if p.ring != q.ring:
        raise InputError(f"Ambient dimension mismatch: {p.ring.ngens} versus {q.ring.ngens}.")
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise InputError(f'Unknown polynomial operation "{op}".')


# %% Functions - partial
def partial(p: Poly, var: int) -> Poly:
    r"""
    Formal partial derivative of p with respect to x^var (1-based).

    Examples
    --------
    >>> from holcert import CoordinateRing, partial
    >>> ring = CoordinateRing(6)
    >>> x5 = ring.var(5)
    >>> print(ring.to_text(partial(x5**3, 5)))
    3/1 * x5^2

    """
    ngens = p.ring.ngens
    if not 1 <= var <= ngens:
        raise InputError(f"Variable index {var} is out of range 1..{ngens}.")
    return p.diff(p.ring.gens[var - 1])


# %% Functions - evaluate
def evaluate(p: Poly, point: Sequence[Any]) -> Rational:
    r"""
    Exact substitution of a rational point into p.

    Examples
    --------
    >>> from holcert import CoordinateRing, evaluate
    >>> ring = CoordinateRing(6)
    >>> u3 = -ring.var(4) * ring.var(5)
    >>> print(evaluate(u3, [0, 0, 1, 1, 1, 0]))
    -1

    """
    ngens = p.ring.ngens
    if len(point) != ngens:
        raise InputError(f"Point has {len(point)} coordinates, expected {ngens}.")
    values = []
    for x in point:
        rat = to_rational(x)
        values.append(QQ(int(rat.p), int(rat.q)))
    return to_rational(p(*values))


# %% Functions - constant_term
def constant_term(p: Poly) -> Rational:
    r"""Value of p at the origin, which is its constant coefficient."""
    return to_rational(p.coeff(1))


# %% Functions - total_degree
def total_degree(p: Poly) -> int:
    r"""Total degree of p, with -1 for the zero polynomial."""
    return max((sum(monom) for monom in p.itermonoms()), default=-1)


# %% Functions - is_constant
def is_constant(p: Poly) -> bool:
    r"""Whether p has no dependence on any coordinate."""
    return total_degree(p) <= 0


# %% Functions - to_text
def to_text(p: Poly) -> str:
    r"""
    Serialize a polynomial as terms "c * x1^e1 ..." joined by " + ", with c written "p/q".

    The zero polynomial is written "0".  Only variables with nonzero exponent are written.
    """
    if not p:
        return "0"
    parts = []
    for monom, coeff in p.terms():
        factors = [f"x{i + 1}^{e}" for (i, e) in enumerate(monom) if e > 0]
        parts.append(" * ".join([format_rational(coeff)] + factors))
    return " + ".join(parts)


# %% Functions - from_text
def from_text(text: str, ring: CoordinateRing) -> Poly:
    r"""Parse the output of to_text back into a polynomial of the given ring."""
    stripped = text.strip()
    if stripped == "0":
        return ring.zero
    terms: dict[tuple[int, ...], Rational] = {}
    for chunk in stripped.split(" + "):
        match = _TERM_PATTERN.match(chunk.strip())
        if match is None:
            raise InputError(f'Cannot parse polynomial term "{chunk}".')
        monom = [0] * ring.dim
        for factor in _FACTOR_PATTERN.finditer(match["rest"]):
            var = int(factor["var"])
            ring._check_index(var)  # pylint: disable=protected-access
            monom[var - 1] += int(factor["exp"])
        key = tuple(monom)
        terms[key] = terms.get(key, Rational(0)) + parse_rational(match["coeff"])
    return ring.from_terms(terms)


# %% Functions - poly_matrix helpers
def zeros_matrix(ring: CoordinateRing, rows: int, cols: int | None = None) -> PolyMatrix:
    r"""Zero matrix of polynomials."""
    cols = rows if cols is None else cols
    return tuple(tuple(ring.zero for _ in range(cols)) for _ in range(rows))


def identity_matrix(ring: CoordinateRing, size: int) -> PolyMatrix:
    r"""Identity matrix of polynomials."""
    return tuple(tuple(ring.one if i == j else ring.zero for j in range(size)) for i in range(size))


def constant_matrix(ring: CoordinateRing, mat: Any) -> PolyMatrix:
    r"""Lift an exact rational sympy matrix into a matrix of constant polynomials."""
    return tuple(tuple(ring.const(mat[i, j]) for j in range(mat.cols)) for i in range(mat.rows))


def matmul(left: PolyMatrix, right: PolyMatrix) -> PolyMatrix:
    r"""Product of two polynomial matrices, skipping zero entries."""
    inner = len(right)
    if left and len(left[0]) != inner:
        raise InputError(f"Cannot multiply {len(left)}x{len(left[0])} by {inner}x{len(right[0])} polynomial matrices.")
    cols = len(right[0]) if right else 0
    out = []
    for row in left:
        zero = row[0].ring.zero
        new_row = []
        for j in range(cols):
            acc = zero
            for k in range(inner):
                if row[k] and right[k][j]:
                    acc = acc + row[k] * right[k][j]
            new_row.append(acc)
        out.append(tuple(new_row))
    return tuple(out)


def matadd(left: PolyMatrix, right: PolyMatrix, *, scale: int = 1) -> PolyMatrix:
    r"""Entrywise left + scale*right."""
    return tuple(tuple(a + scale * b for (a, b) in zip(row_l, row_r)) for (row_l, row_r) in zip(left, right))


def is_zero_poly_matrix(mat: PolyMatrix) -> bool:
    r"""Whether every entry is the zero polynomial."""
    return all(not entry for row in mat for entry in row)


def evaluate_matrix(mat: PolyMatrix, point: Sequence[Any]) -> Any:
    r"""Evaluate every entry at a rational point, returning an exact sympy matrix."""
    return ImmutableMatrix([[evaluate(entry, point) for entry in row] for row in mat])


# %% Unit test
if __name__ == "__main__":
    unittest.main(module="holcert.tests.test_polycore", exit=False)
    doctest.testmod(verbose=False)
