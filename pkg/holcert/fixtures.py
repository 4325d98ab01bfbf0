r"""
Built-in subalgebras used by the acceptance suite, and the seeded random one-dimensional h.

Notes
-----
#.  Written for the holcert library.
"""

# %% Imports
from __future__ import annotations

from dataclasses import dataclass
import doctest
import random
from typing import Callable
import unittest

from sympy import ImmutableMatrix, Rational, zeros

from holcert.metric import HSpec
from holcert.utils import InputError


# %% Classes - Fixture
@dataclass(frozen=True)
class Fixture:
    r"""A named input with its expected holonomy dimension N+2n+1 and a short description."""

    name: str
    spec: HSpec
    description: str

    @property
    def expected_dimension(self) -> int:
        r"""Dimension of g^h."""
        return self.spec.N + 2 * self.spec.n + 1


# %% Functions - block matrices
def _rotation(n: int, i: int, j: int, scale: int = 1) -> ImmutableMatrix:
    r"""scale * (E_ji - E_ij), a rotation generator in the (i, j) plane (0-based)."""
    mat = zeros(n, n)
    mat[i, j] = -scale
    mat[j, i] = scale
    return ImmutableMatrix(mat)


def _f0() -> Fixture:
    return Fixture("F0", HSpec(n=2, basis=()), "h = 0, so g^h is spanned by the X, Y and c directions")


def _f1() -> Fixture:
    return Fixture("F1", HSpec(n=2, basis=(_rotation(2, 0, 1),)), "h = so(2)")


def _f2() -> Fixture:
    return Fixture(
        "F2",
        HSpec(n=4, basis=(ImmutableMatrix(_rotation(4, 0, 1) + _rotation(4, 2, 3, scale=2)),)),
        "h = span{diag(J, 2J)}, which is not the holonomy algebra of a Riemannian manifold",
    )


def _f3() -> Fixture:
    return Fixture("F3", HSpec(n=4, basis=(_rotation(4, 0, 1), _rotation(4, 2, 3))), "h = span{diag(J, 0), diag(0, J)}")


def _f4() -> Fixture:
    # L1 rotates (2,3), L2 rotates (3,1), L3 rotates (1,2), so [L1, L2] = L3
    basis = (_rotation(3, 1, 2), _rotation(3, 2, 0), _rotation(3, 0, 1))
    return Fixture("F4", HSpec(n=3, basis=basis), "h = so(3) with its standard basis")


FIXTURES: dict[str, Callable[[], Fixture]] = {"F0": _f0, "F1": _f1, "F2": _f2, "F3": _f3, "F4": _f4}


# %% Functions - get_fixture
def get_fixture(name: str) -> Fixture:
    r"""
    Look up a built-in fixture by name (case-insensitive).

    Examples
    --------
    >>> from holcert import get_fixture
    >>> fix = get_fixture("F3")
    >>> print(fix.spec.n, fix.spec.N, fix.expected_dimension)
    4 2 11

    """
    key = name.strip().upper()
    if key not in FIXTURES:
        raise InputError(f'Unknown fixture "{name}", expected one of {", ".join(FIXTURES)}.')
    return FIXTURES[key]()


# %% Functions - list_fixtures
def list_fixtures() -> list[str]:
    r"""Names of the built-in fixtures."""
    return list(FIXTURES)


# %% Functions - random_h
def random_h(n: int, seed: int) -> Fixture:
    r"""
    A seeded random one-dimensional h spanned by a nonzero skew rational matrix.

    Any one-dimensional span is a subalgebra, so no closure test is needed.

    Examples
    --------
    >>> from holcert import random_h
    >>> fix = random_h(3, seed=7)
    >>> print(fix.spec.N, fix.spec.basis[0] == -fix.spec.basis[0].T)
    1 True

    """
    if n < 2:
        raise InputError(f"A nonzero skew matrix needs n >= 2, got {n}.")
    rng = random.Random(seed)
    while True:
        mat = zeros(n, n)
        for i in range(n):
            for j in range(i + 1, n):
                value = Rational(rng.randint(-3, 3), rng.randint(1, 3))
                mat[i, j] = value
                mat[j, i] = -value
        if any(x != 0 for x in mat):
            break
    return Fixture(f"random(n={n}, seed={seed})", HSpec(n=n, basis=(ImmutableMatrix(mat),)), "seeded random one-dimensional h")


# %% Unit test
if __name__ == "__main__":
    unittest.main(module="holcert.tests.test_fixtures", exit=False)
    doctest.testmod(verbose=False)
