r"""
Exact matrix Lie algebra toolkit for so(2,n+2).

Coordinate direction convention, shared by every module: direction 1 is p1, 2 is p2, 3..n+2 are
e1..en, n+3 is q1 and n+4 is q2.  Public functions speak in 1-based directions, while sympy
matrices are indexed from zero, so direction a lives in row/column a-1.

Notes
-----
#.  Written for the holcert library.
"""

# %% Imports
from __future__ import annotations

from dataclasses import dataclass, field
import doctest
import logging
import random
from typing import Iterable, Sequence
import unittest

from sympy import ImmutableMatrix, Integer, Matrix, Rational, zeros

from holcert.enums import CheckStatus, LogLevel
from holcert.utils import InputError, is_zero_matrix

# %% Globals
logger = logging.getLogger(__name__)

Vector = tuple[Rational, ...]


# %% Exceptions
class NotInStabilizerError(InputError):
    r"""Raised when a matrix does not have the block pattern of so(2,n+2)_<p1,p2>."""


# %% Classes - EtaForm
@dataclass(frozen=True)
class EtaForm:
    r"""
    The bilinear form of signature (2, n+2) in the basis p1, p2, e1..en, q1, q2.

    Examples
    --------
    >>> from holcert import gram_eta
    >>> eta = gram_eta(1)
    >>> print(eta.gram)
    Matrix([[0, 0, 0, 1, 0], [0, 0, 0, 0, 1], [0, 0, 1, 0, 0], [1, 0, 0, 0, 0], [0, 1, 0, 0, 0]])

    """

    n: int
    gram: ImmutableMatrix

    @property
    def dim(self) -> int:
        r"""Dimension n+4 of the ambient space."""
        return self.n + 4

    def pairing(self, left: Sequence[Rational], right: Sequence[Rational]) -> Rational:
        r"""Exact value of eta(left, right)."""
        return (Matrix([list(left)]) * self.gram * Matrix(list(right)))[0, 0]


# %% Classes - ParabolicElement
@dataclass(frozen=True)
class ParabolicElement:
    r"""Block parameters (B, A, X, Y, c) of an element of the stabilizer so(2,n+2)_<p1,p2>."""

    B: ImmutableMatrix
    A: ImmutableMatrix
    X: ImmutableMatrix
    Y: ImmutableMatrix
    c: Rational

    def __post_init__(self) -> None:
        _require_skew(self.A, "A")
        n = self.A.rows
        if self.B.shape != (2, 2):
            raise InputError(f"B must be 2x2, got {self.B.rows}x{self.B.cols}.")
        for name, vec in (("X", self.X), ("Y", self.Y)):
            if vec.shape != (n, 1):
                raise InputError(f"{name} must be a column of length {n}.")

    @property
    def n(self) -> int:
        r"""Size of the so(n) block."""
        return int(self.A.rows)


# %% Classes - GhElement
@dataclass(frozen=True)
class GhElement:
    r"""
    Parameters (A, X, Y, c) of an element of g^h, with A in h.

    Examples
    --------
    >>> from holcert import GhElement
    >>> elem = GhElement.from_lists([[0, -1], [1, 0]], [1, 0], [0, 0], 0)
    >>> print(elem.X.T)
    Matrix([[1, 0]])

    """

    A: ImmutableMatrix
    X: ImmutableMatrix
    Y: ImmutableMatrix
    c: Rational

    def __post_init__(self) -> None:
        _require_skew(self.A, "A")
        n = self.A.rows
        for name, vec in (("X", self.X), ("Y", self.Y)):
            if vec.shape != (n, 1):
                raise InputError(f"{name} must be a column of length {n}.")

    @classmethod
    def from_lists(
        cls, A: Sequence[Sequence[int | Rational]], X: Sequence[int | Rational], Y: Sequence[int | Rational], c: int | Rational
    ) -> GhElement:
        r"""Build an element from plain nested lists."""
        return cls(ImmutableMatrix(A), ImmutableMatrix(list(X)), ImmutableMatrix(list(Y)), Rational(c))

    @classmethod
    def zero(cls, n: int) -> GhElement:
        r"""The zero element of g^h for a given n."""
        return cls(ImmutableMatrix(zeros(n, n)), ImmutableMatrix(zeros(n, 1)), ImmutableMatrix(zeros(n, 1)), Rational(0))

    @property
    def n(self) -> int:
        r"""Size of the so(n) block."""
        return int(self.A.rows)


# %% Classes - AlgebraSpan
@dataclass(frozen=True)
class AlgebraSpan:
    r"""
    Exact basis of a linear span of square matrices, stored as reduced row-echelon rows.

    Parameters
    ----------
    size : int
        Matrices are size x size, flattened row-major into vectors of length size**2
    generators : tuple of ImmutableMatrix
        The matrices the span was built from
    echelon_basis : tuple of tuple of Rational
        Reduced row-echelon rows, linearly independent
    pivots : tuple of int
        Pivot column of each echelon row
    bracket_closed : bool
        Whether the span is known to be closed under the commutator
    """

    size: int
    generators: tuple[ImmutableMatrix, ...]
    echelon_basis: tuple[Vector, ...]
    pivots: tuple[int, ...]
    bracket_closed: bool
    elements: tuple[ImmutableMatrix, ...] = field(default=(), compare=False, repr=False)

    @property
    def dimension(self) -> int:
        r"""Dimension of the span."""
        return len(self.echelon_basis)

    def residual(self, mat: ImmutableMatrix) -> Vector:
        r"""Flattened mat minus its projection along the echelon basis (zero iff mat is in the span)."""
        _check_size(mat, self.size)
        return _reduce(flatten(mat), self.echelon_basis, self.pivots)

    def contains(self, mat: ImmutableMatrix) -> bool:
        r"""Whether mat lies in the span."""
        return all(x == 0 for x in self.residual(mat))

    def basis_matrices(self) -> list[ImmutableMatrix]:
        r"""The echelon basis reshaped into matrices."""
        return [unflatten(row, self.size) for row in self.echelon_basis]


# %% Classes - ProbeReport
@dataclass(frozen=True)
class ProbeReport:
    r"""
    Result of the weak irreducibility probe.

    The isotropic plane part is exact; the search for a proper nondegenerate invariant subspace is
    a heuristic that only ever proves reducibility, never irreducibility.
    """

    plane_invariant: bool
    plane_isotropic: bool
    samples_checked: int
    invariant_dimensions: tuple[int, ...]
    counterexamples: tuple[Vector, ...]
    heuristic: bool = True

    @property
    def status(self) -> CheckStatus:
        r"""Fail on any exact violation or counterexample, otherwise a heuristic pass."""
        if not self.plane_invariant or not self.plane_isotropic or self.counterexamples:
            return CheckStatus.failed
        return CheckStatus.heuristic_pass


# %% Functions - gram_eta
def gram_eta(n: int, *, allow_degenerate: bool = False) -> EtaForm:
    r"""
    Gram matrix of eta in the basis p1, p2, e1..en, q1, q2.

    Parameters
    ----------
    n : int
        Size of the Euclidean block, n >= 1 (n = 0 only with allow_degenerate)
    allow_degenerate : bool, optional
        Permit n = 0, where only the two hyperbolic pairs remain

    Examples
    --------
    >>> from holcert import gram_eta
    >>> from sympy import eye
    >>> eta = gram_eta(3)
    >>> print(eta.gram * eta.gram == eye(7))
    True

    """
    if n < 0 or (n == 0 and not allow_degenerate):
        raise InputError(f"n must be at least 1, got {n}.")
    dim = n + 4
    gram = zeros(dim, dim)
    gram[0, n + 2] = gram[n + 2, 0] = 1
    gram[1, n + 3] = gram[n + 3, 1] = 1
    for i in range(2, n + 2):
        gram[i, i] = 1
    return EtaForm(n=n, gram=ImmutableMatrix(gram))


# %% Functions - so_check
def so_check(mat: ImmutableMatrix, eta: EtaForm) -> bool:
    r"""
    Whether mat is in so(2,n+2), i.e. mat^T eta + eta mat = 0.

    Examples
    --------
    >>> from holcert import gram_eta, so_check
    >>> from sympy import eye
    >>> print(so_check(eye(5), gram_eta(1)))
    False

    """
    _check_size(mat, eta.dim)
    return is_zero_matrix(mat.T * eta.gram + eta.gram * mat)


# %% Functions - embed_parabolic
def embed_parabolic(elem: ParabolicElement) -> ImmutableMatrix:
    r"""Matrix of a stabilizer element given by its block parameters (B, A, X, Y, c)."""
    n = elem.n
    mat = zeros(n + 4, n + 4)
    p, q = n + 2, n + 3
    for i in range(2):
        for j in range(2):
            mat[i, j] = elem.B[i, j]
            # bottom right block is -B^T
            mat[p + i, p + j] = -elem.B[j, i]
    _fill_gh_blocks(mat, elem.A, elem.X, elem.Y, elem.c)
    return ImmutableMatrix(mat)


# %% Functions - embed_gh
def embed_gh(elem: GhElement) -> ImmutableMatrix:
    r"""
    Matrix of an element of g^h, rows (0,0,-X^T,0,-c), (0,0,-Y^T,c,0), (0,0,A,X,Y), 0, 0.

    Examples
    --------
    >>> from holcert import GhElement, embed_gh
    >>> mat = embed_gh(GhElement.from_lists([[0, 0], [0, 0]], [0, 0], [0, 0], 1))
    >>> print(mat[0, 5], mat[1, 4])
    -1 1

    """
    n = elem.n
    mat = zeros(n + 4, n + 4)
    _fill_gh_blocks(mat, elem.A, elem.X, elem.Y, elem.c)
    return ImmutableMatrix(mat)


def _fill_gh_blocks(mat: Matrix, A: ImmutableMatrix, X: ImmutableMatrix, Y: ImmutableMatrix, c: Rational) -> None:
    n = A.rows
    p, q = n + 2, n + 3
    for i in range(n):
        mat[0, 2 + i] = -X[i]
        mat[1, 2 + i] = -Y[i]
        mat[2 + i, p] = X[i]
        mat[2 + i, q] = Y[i]
        for j in range(n):
            mat[2 + i, 2 + j] = A[i, j]
    mat[0, q] = -c
    mat[1, p] = c


# %% Functions - decompose_parabolic
def decompose_parabolic(mat: ImmutableMatrix) -> ParabolicElement:
    r"""
    Recover (B, A, X, Y, c) from a matrix, which is the membership test for so(2,n+2)_<p1,p2>.

    Raises
    ------
    NotInStabilizerError
        Naming the first (1-based) entry that violates the block pattern

    Examples
    --------
    >>> from holcert import GhElement, embed_gh, decompose_parabolic
    >>> elem = GhElement.from_lists([[0, -1], [1, 0]], [1, 2], [3, 4], 5)
    >>> parts = decompose_parabolic(embed_gh(elem))
    >>> print(parts.c, parts.B.is_zero_matrix)
    5 True

    """
    if mat.rows != mat.cols or mat.rows < 4:
        raise InputError(f"Expected a square matrix of size at least 4, got {mat.rows}x{mat.cols}.")
    dim = mat.rows
    n = dim - 4
    p, q = n + 2, n + 3
    middle = range(2, n + 2)

    def _require(row: int, col: int, expected: Rational, what: str) -> None:
        if mat[row, col] != expected:
            raise NotInStabilizerError(
                f"Entry ({row + 1},{col + 1}) is {mat[row, col]} but must be {expected} ({what})."
            )

    # first two columns vanish below the B block
    for row in range(2, dim):
        for col in range(2):
            _require(row, col, Integer(0), "columns 1,2 vanish outside the B block")
    # last two rows vanish outside the -B^T block
    for row in (p, q):
        for col in range(2, n + 2):
            _require(row, col, Integer(0), "last two rows vanish outside the -B^T block")
    B = ImmutableMatrix(2, 2, lambda i, j: mat[i, j])
    for i in range(2):
        for j in range(2):
            _require(p + i, p + j, -B[j, i], "bottom right block is -B^T")
    X = ImmutableMatrix([mat[i, p] for i in middle])
    Y = ImmutableMatrix([mat[i, q] for i in middle])
    for k, i in enumerate(middle):
        _require(0, i, -X[k], "row 1 carries -X^T")
        _require(1, i, -Y[k], "row 2 carries -Y^T")
    c = mat[1, p]
    _require(0, p, Integer(0), "top right block is [[0,-c],[c,0]]")
    _require(1, q, Integer(0), "top right block is [[0,-c],[c,0]]")
    _require(0, q, -c, "top right block is [[0,-c],[c,0]]")
    A = ImmutableMatrix(n, n, lambda i, j: mat[2 + i, 2 + j])
    for i in range(n):
        for j in range(i, n):
            if A[i, j] != -A[j, i]:
                raise NotInStabilizerError(f"Entry ({i + 3},{j + 3}) breaks skew-symmetry of the so(n) block.")
    return ParabolicElement(B=B, A=A, X=X, Y=Y, c=Rational(c))


# %% Functions - decompose_gh
def decompose_gh(mat: ImmutableMatrix) -> GhElement:
    r"""Recover (A, X, Y, c) from a matrix in the g^{so(n)} pattern, requiring B = 0."""
    parts = decompose_parabolic(mat)
    if not is_zero_matrix(parts.B):
        raise NotInStabilizerError("The B block is nonzero, so the matrix is not in g^{so(n)}.")
    return GhElement(A=parts.A, X=parts.X, Y=parts.Y, c=parts.c)


# %% Functions - pr_so_n
def pr_so_n(mat: ImmutableMatrix) -> ImmutableMatrix:
    r"""
    Projection of a stabilizer matrix onto its so(n) block A.

    Examples
    --------
    >>> from holcert import GhElement, embed_gh, pr_so_n
    >>> print(pr_so_n(embed_gh(GhElement.from_lists([[0, -1], [1, 0]], [1, 0], [0, 1], 2))))
    Matrix([[0, -1], [1, 0]])

    """
    return decompose_parabolic(mat).A


# %% Functions - bracket
def bracket(left: ImmutableMatrix, right: ImmutableMatrix) -> ImmutableMatrix:
    r"""
    Commutator left*right - right*left.

    Examples
    --------
    >>> from holcert import bracket
    >>> from sympy import ImmutableMatrix
    >>> m = ImmutableMatrix([[0, 1], [0, 0]])
    >>> print(bracket(m, m))
    Matrix([[0, 0], [0, 0]])

    """
    if left.shape != right.shape or left.rows != left.cols:
        raise InputError(f"Cannot bracket a {left.rows}x{left.cols} matrix with a {right.rows}x{right.cols} matrix.")
    return ImmutableMatrix(left * right - right * left)


# %% Functions - gh_bracket
def gh_bracket(left: GhElement, right: GhElement) -> GhElement:
    r"""Bracket in parameters: ([A,A'], AX'-A'X, AY'-A'Y, X^T Y' - X'^T Y)."""
    if left.n != right.n:
        raise InputError(f"Cannot bracket g^h elements with n={left.n} and n={right.n}.")
    A = ImmutableMatrix(left.A * right.A - right.A * left.A)
    X = ImmutableMatrix(left.A * right.X - right.A * left.X)
    Y = ImmutableMatrix(left.A * right.Y - right.A * left.Y)
    c = (left.X.T * right.Y - right.X.T * left.Y)[0, 0]
    return GhElement(A=A, X=X, Y=Y, c=Rational(c))


# %% Functions - flatten/unflatten
def flatten(mat: ImmutableMatrix) -> Vector:
    r"""Row-major flattening of a matrix into a vector of rationals."""
    return tuple(Rational(x) for x in mat)


def unflatten(vec: Sequence[Rational], size: int) -> ImmutableMatrix:
    r"""Inverse of flatten for square matrices."""
    return ImmutableMatrix(size, size, list(vec))


# %% Functions - echelon_form
def echelon_form(vectors: Sequence[Sequence[Rational]]) -> tuple[tuple[Vector, ...], tuple[int, ...]]:
    r"""
    Reduced row-echelon basis of the span of the given vectors.

    Returns
    -------
    rows : tuple of tuple of Rational
        Nonzero rows of the reduced row-echelon form
    pivots : tuple of int
        Pivot column of each row

    Examples
    --------
    >>> from holcert import echelon_form
    >>> rows, pivots = echelon_form([(2, 4), (1, 2)])
    >>> print(rows, pivots)
    ((1, 2),) (0,)

    """
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        return (), ()
    reduced, pivots = Matrix(vectors).rref()
    rows = tuple(tuple(Rational(x) for x in reduced.row(i)) for i in range(len(pivots)))
    return rows, tuple(int(p) for p in pivots)


def _reduce(vec: Sequence[Rational], rows: Sequence[Vector], pivots: Sequence[int]) -> Vector:
    out = list(vec)
    for row, piv in zip(rows, pivots):
        coeff = out[piv]
        if coeff != 0:
            out = [x - coeff * r for (x, r) in zip(out, row)]
    return tuple(out)


# %% Functions - linear_span
def linear_span(generators: Iterable[ImmutableMatrix], *, size: int | None = None) -> AlgebraSpan:
    r"""
    Linear span of matrices, with the bracket-closure flag computed exactly.

    Examples
    --------
    >>> from holcert import linear_span
    >>> from sympy import ImmutableMatrix
    >>> span = linear_span([ImmutableMatrix([[0, 1], [-1, 0]])])
    >>> print(span.dimension, span.bracket_closed)
    1 True

    """
    gens = tuple(ImmutableMatrix(g) for g in generators)
    size = _common_size(gens, size)
    rows, pivots = echelon_form([flatten(g) for g in gens])
    elements = _independent_subset(gens, size)
    span = AlgebraSpan(size=size, generators=gens, echelon_basis=rows, pivots=pivots, bracket_closed=False, elements=elements)
    closed = all(span.contains(bracket(a, b)) for (i, a) in enumerate(elements) for b in elements[i + 1 :])
    return AlgebraSpan(size=size, generators=gens, echelon_basis=rows, pivots=pivots, bracket_closed=closed, elements=elements)


# %% Functions - span_lie_closure
def span_lie_closure(
    generators: Iterable[ImmutableMatrix], *, eta: EtaForm | None = None, size: int | None = None
) -> AlgebraSpan:
    r"""
    Smallest linear subspace containing the generators and closed under the commutator.

    Parameters
    ----------
    generators : iterable of ImmutableMatrix
        Square matrices of equal size
    eta : EtaForm, optional
        If given, every generator must pass so_check against it
    size : int, optional
        Matrix size, required when there are no generators

    Examples
    --------
    >>> from holcert import GhElement, embed_gh, span_lie_closure
    >>> x = embed_gh(GhElement.from_lists([[0, 0], [0, 0]], [1, 0], [0, 0], 0))
    >>> y = embed_gh(GhElement.from_lists([[0, 0], [0, 0]], [0, 0], [1, 0], 0))
    >>> print(span_lie_closure([x, y]).dimension)
    3

    """
    gens = tuple(ImmutableMatrix(g) for g in generators)
    size = _common_size(gens, size)
    if eta is not None:
        for k, gen in enumerate(gens):
            if not so_check(gen, eta):
                raise InputError(f"Generator {k + 1} is not in so(2,{eta.n + 2}).")
    elements: list[ImmutableMatrix] = []
    rows: tuple[Vector, ...] = ()
    pivots: tuple[int, ...] = ()

    def _add(mat: ImmutableMatrix) -> None:
        nonlocal rows, pivots
        vec = flatten(mat)
        if all(x == 0 for x in _reduce(vec, rows, pivots)):
            return
        elements.append(mat)
        rows, pivots = echelon_form(list(rows) + [vec])

    for gen in gens:
        _add(gen)
    k = 0
    while k < len(elements):
        for j in range(k):
            _add(bracket(elements[j], elements[k]))
        k += 1
    logger.log(LogLevel.L8, "Lie closure of %d generators has dimension %d", len(gens), len(rows))
    return AlgebraSpan(
        size=size, generators=gens, echelon_basis=rows, pivots=pivots, bracket_closed=True, elements=tuple(elements)
    )


# %% Functions - equal_span
def equal_span(left: AlgebraSpan, right: AlgebraSpan) -> bool:
    r"""
    Whether two spans coincide, by comparing their reduced row-echelon bases.

    Examples
    --------
    >>> from holcert import equal_span, linear_span
    >>> from sympy import ImmutableMatrix
    >>> m = ImmutableMatrix([[0, 1], [-1, 0]])
    >>> print(equal_span(linear_span([m]), linear_span([2 * m])))
    True

    """
    if left.size != right.size:
        raise InputError(f"Cannot compare spans of {left.size}x{left.size} and {right.size}x{right.size} matrices.")
    return left.echelon_basis == right.echelon_basis


# %% Functions - gh_basis
def gh_basis(n: int, h_basis: Sequence[ImmutableMatrix]) -> list[ImmutableMatrix]:
    r"""
    Embedded basis of g^h: the A_alpha, then X = e_i, then Y = e_i, then c = 1.

    Examples
    --------
    >>> from holcert import gh_basis
    >>> print(len(gh_basis(2, [])))
    5

    """
    basis = []
    zero_vec = ImmutableMatrix(zeros(n, 1))
    zero_mat = ImmutableMatrix(zeros(n, n))
    for A in h_basis:
        basis.append(embed_gh(GhElement(A=ImmutableMatrix(A), X=zero_vec, Y=zero_vec, c=Rational(0))))
    for i in range(n):
        unit = ImmutableMatrix([1 if k == i else 0 for k in range(n)])
        basis.append(embed_gh(GhElement(A=zero_mat, X=unit, Y=zero_vec, c=Rational(0))))
    for i in range(n):
        unit = ImmutableMatrix([1 if k == i else 0 for k in range(n)])
        basis.append(embed_gh(GhElement(A=zero_mat, X=zero_vec, Y=unit, c=Rational(0))))
    basis.append(embed_gh(GhElement(A=zero_mat, X=zero_vec, Y=zero_vec, c=Rational(1))))
    return basis


# %% Functions - invariant_subspace
def invariant_subspace(span: AlgebraSpan, vector: Sequence[Rational]) -> tuple[Vector, ...]:
    r"""
    Smallest subspace containing vector and invariant under every element of span.

    Returns the reduced row-echelon basis of the subspace (empty for the zero vector).
    """
    if len(vector) != span.size:
        raise InputError(f"Vector has length {len(vector)}, expected {span.size}.")
    actors = span.basis_matrices()
    rows, _ = echelon_form([tuple(Rational(x) for x in vector)])
    while rows:
        images = [tuple(actor * Matrix(list(row))) for actor in actors for row in rows]
        new_rows, _ = echelon_form(list(rows) + images)
        if len(new_rows) == len(rows):
            break
        rows = new_rows
    return rows


# %% Functions - weak_irreducibility_probe
def weak_irreducibility_probe(
    span: AlgebraSpan,
    eta: EtaForm,
    sample_vectors: Sequence[Sequence[Rational]] | None = None,
    *,
    random_samples: int = 0,
    seed: int = 0,
) -> ProbeReport:
    r"""
    Exact isotropic-plane certification plus a heuristic search for nondegenerate invariant subspaces.

    Parameters
    ----------
    span : AlgebraSpan
        Algebra acting on R^{n+4}
    eta : EtaForm
        Bilinear form used for isotropy and nondegeneracy
    sample_vectors : list of vectors, optional
        Starting vectors, defaults to every coordinate direction
    random_samples : int, optional
        Number of extra seeded random rational vectors
    seed : int, optional
        Seed of the random vectors

    Examples
    --------
    >>> from holcert import gh_basis, gram_eta, linear_span, weak_irreducibility_probe
    >>> report = weak_irreducibility_probe(linear_span(gh_basis(2, [])), gram_eta(2))
    >>> print(report.status.value)
    heuristic-pass

    """
    if span.size != eta.dim:
        raise InputError(f"Span acts on R^{span.size} but eta is on R^{eta.dim}.")
    dim = eta.dim
    actors = span.basis_matrices()
    # columns 1,2 map into span{p1,p2}
    plane_invariant = all(actor[row, col] == 0 for actor in actors for col in range(2) for row in range(2, dim))
    plane_isotropic = all(eta.gram[i, j] == 0 for i in range(2) for j in range(2))
    if sample_vectors is None:
        samples = [tuple(Rational(int(i == j)) for j in range(dim)) for i in range(dim)]
    else:
        samples = [tuple(Rational(x) for x in vec) for vec in sample_vectors]
    rng = random.Random(seed)
    for _ in range(random_samples):
        samples.append(tuple(Rational(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(dim)))
    dims = []
    counterexamples = []
    for vec in samples:
        if all(x == 0 for x in vec):
            continue
        rows = invariant_subspace(span, vec)
        dims.append(len(rows))
        if len(rows) == dim:
            continue
        basis = Matrix([list(row) for row in rows])
        if (basis * eta.gram * basis.T).rank() == len(rows):
            logger.log(LogLevel.L3, "Found a nondegenerate invariant subspace of dimension %d", len(rows))
            counterexamples.append(vec)
    return ProbeReport(
        plane_invariant=plane_invariant,
        plane_isotropic=plane_isotropic,
        samples_checked=len(dims),
        invariant_dimensions=tuple(dims),
        counterexamples=tuple(counterexamples),
    )


# %% Functions - helpers
def _require_skew(A: ImmutableMatrix, name: str) -> None:
    if A.rows != A.cols:
        raise InputError(f"{name} must be square, got {A.rows}x{A.cols}.")
    for i in range(A.rows):
        for j in range(i, A.cols):
            if A[i, j] + A[j, i] != 0:
                raise InputError(f"{name} is not skew-symmetric at entry ({i + 1},{j + 1}).")


def _check_size(mat: ImmutableMatrix, size: int) -> None:
    if mat.shape != (size, size):
        raise InputError(f"Expected a {size}x{size} matrix, got {mat.rows}x{mat.cols}.")


def _common_size(gens: Sequence[ImmutableMatrix], size: int | None) -> int:
    if not gens:
        if size is None:
            raise InputError("The size must be given when there are no generators.")
        return size
    size = gens[0].rows if size is None else size
    for k, gen in enumerate(gens):
        if gen.shape != (size, size):
            raise InputError(f"Generator {k + 1} is {gen.rows}x{gen.cols}, expected {size}x{size}.")
    return size


def _independent_subset(gens: Sequence[ImmutableMatrix], size: int) -> tuple[ImmutableMatrix, ...]:
    chosen: list[ImmutableMatrix] = []
    rows: tuple[Vector, ...] = ()
    pivots: tuple[int, ...] = ()
    for gen in gens:
        vec = flatten(gen)
        if any(x != 0 for x in _reduce(vec, rows, pivots)):
            chosen.append(gen)
            rows, pivots = echelon_form(list(rows) + [vec])
    return tuple(chosen)


# %% Unit test
if __name__ == "__main__":
    unittest.main(module="holcert.tests.test_liealg", exit=False)
    doctest.testmod(verbose=False)
