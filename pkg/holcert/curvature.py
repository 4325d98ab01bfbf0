r"""
Exact Christoffel symbols, curvature, iterated covariant derivatives and holonomy generators.

Tensors are stored sparsely as dictionaries from 1-based index tuples to nonzero polynomials.
Curvature components are keyed (a, b, c, d, f1, ..., fr) for R^a_{b c d; f1; ...; fr}, where
R(d/dx^c, d/dx^d) d/dx^b = R^a_{bcd} d/dx^a and the newest derivative index is appended last, so
that the order r tensor holds the components of (nabla_{fr} ... nabla_{f1} R).

The sign convention is

    R^a_{bcd} = d_c Gamma^a_{db} - d_d Gamma^a_{cb} + Gamma^a_{cf} Gamma^f_{db} - Gamma^a_{df} Gamma^f_{cb}

Notes
-----
#.  Written for the holcert library.
"""

# %% Imports
from __future__ import annotations

from dataclasses import dataclass, field
import doctest
from functools import cached_property
from itertools import product
import logging
from typing import Iterator, Mapping, Sequence
import unittest

from sympy import ImmutableMatrix, Rational, zeros

from holcert.enums import EnumerationMode, LogLevel
from holcert.liealg import AlgebraSpan, equal_span, gh_basis, linear_span, span_lie_closure
from holcert.logs import log_timing
from holcert.metric import build_metric, HSpec, invert_metric, MetricField
from holcert.polycore import constant_term, CoordinateRing, partial, Poly, PolyMatrix
from holcert.utils import InputError

# %% Globals
logger = logging.getLogger(__name__)

Key = tuple[int, ...]

SIGN_NOTE = (
    "Curvature convention: R^a_{bcd} = d_c Gamma^a_{db} - d_d Gamma^a_{cb} + Gamma^a_{cf} Gamma^f_{db} "
    "- Gamma^a_{df} Gamma^f_{cb}, derivative indices appended last."
)


# %% Classes - ChristoffelField
@dataclass(frozen=True)
class ChristoffelField:
    r"""
    Christoffel symbols Gamma^a_{bc}, keyed (a, b, c), nonzero entries only, stored for both (b, c) and (c, b).

    Examples
    --------
    >>> from holcert import HSpec, build_metric, christoffel, invert_metric, to_text
    >>> metric = build_metric(HSpec.from_lists(2, [[[0, -1], [1, 0]]]))
    >>> gamma = christoffel(metric, invert_metric(metric))
    >>> print(to_text(gamma.get(3, 4, 6)))
    -1/1 * x5^1

    """

    dim: int
    ring: CoordinateRing
    components: Mapping[tuple[int, int, int], Poly]

    def get(self, a: int, b: int, c: int) -> Poly:
        r"""Gamma^a_{bc}, 1-based."""
        return self.components.get((a, b, c), self.ring.zero)

    @property
    def nonzero_count(self) -> int:
        r"""Number of stored nonzero symbols."""
        return len(self.components)

    @cached_property
    def upper_index(self) -> dict[tuple[int, int], tuple[tuple[int, Poly], ...]]:
        r"""Map (f, x) to the nonzero (a, Gamma^a_{fx})."""
        table: dict[tuple[int, int], list[tuple[int, Poly]]] = {}
        for (a, f, x), value in sorted(self.components.items(), key=lambda item: item[0]):
            table.setdefault((f, x), []).append((a, value))
        return {key: tuple(vals) for (key, vals) in table.items()}

    @cached_property
    def lower_index(self) -> dict[tuple[int, int], tuple[tuple[int, Poly], ...]]:
        r"""Map (x, f) to the nonzero (l, Gamma^x_{fl})."""
        table: dict[tuple[int, int], list[tuple[int, Poly]]] = {}
        for (x, f, l), value in sorted(self.components.items(), key=lambda item: item[0]):
            table.setdefault((x, f), []).append((l, value))
        return {key: tuple(vals) for (key, vals) in table.items()}


# %% Classes - CurvTensor
@dataclass(frozen=True)
class CurvTensor:
    r"""
    The order r covariant derivative of the curvature tensor, one upper and 3+r lower indices.

    Parameters
    ----------
    order : int
        Number of derivative indices r
    dim : int
        Ambient dimension n+4
    ring : CoordinateRing
        Ring of the component polynomials
    components : dict
        Nonzero components keyed (a, b, c, d, f1, ..., fr), 1-based
    """

    order: int
    dim: int
    ring: CoordinateRing
    components: Mapping[Key, Poly]

    def get(self, key: Sequence[int]) -> Poly:
        r"""Component at a full 1-based index tuple, zero when not stored."""
        key = tuple(key)
        if len(key) != 4 + self.order:
            raise InputError(f"Index {key} has {len(key)} entries, expected {4 + self.order}.")
        if any(not 1 <= k <= self.dim for k in key):
            raise InputError(f"Index {key} is out of range 1..{self.dim}.")
        return self.components.get(key, self.ring.zero)

    @property
    def nonzero_count(self) -> int:
        r"""Number of stored nonzero components."""
        return len(self.components)

    def items(self) -> Iterator[tuple[Key, Poly]]:
        r"""Nonzero components in sorted index order."""
        for key in sorted(self.components):
            yield key, self.components[key]

    def origin_values(self) -> dict[Key, dict[tuple[int, int], Rational]]:
        r"""
        Nonzero origin values grouped by direction tuple (c, d, f1..fr) with c < d.

        Each group maps (a, b) to the value of R^a_{b c d; f1..fr} at the origin.
        """
        groups: dict[Key, dict[tuple[int, int], Rational]] = {}
        for key, poly in self.components.items():
            if key[2] >= key[3]:
                continue
            value = constant_term(poly)
            if value != 0:
                groups.setdefault(key[2:], {})[(key[0], key[1])] = value
        return groups


# %% Classes - CurvatureTower
@dataclass(frozen=True)
class CurvatureTower:
    r"""Every exact object of the pipeline: metric, inverse, Christoffel symbols and curvature orders 0..max_order."""

    spec: HSpec
    metric: MetricField
    inverse: PolyMatrix
    christoffel: ChristoffelField
    tensors: tuple[CurvTensor, ...]

    @property
    def max_order(self) -> int:
        r"""Highest computed derivative order."""
        return len(self.tensors) - 1

    def tensor(self, order: int) -> CurvTensor:
        r"""Curvature derivative of the given order."""
        if not 0 <= order <= self.max_order:
            raise InputError(f"Order {order} was not computed, the tower stops at {self.max_order}.")
        return self.tensors[order]

    def component(self, key: Sequence[int]) -> Poly:
        r"""Component R^a_{bcd;f1..fr} with the order inferred from the key length."""
        return self.tensor(len(key) - 4).get(key)

    def operator(self, c: int, d: int, derivs: Sequence[int] = ()) -> ImmutableMatrix:
        r"""
        Matrix of nabla^r R(d_c, d_d; d_f1; ...; d_fr) at the origin, entry [a-1, b-1] = R^a_{b c d; f}(0).

        Examples
        --------
        >>> from holcert import HSpec, build_tower
        >>> tower = build_tower(HSpec.from_lists(2, [[[0, -1], [1, 0]]]), 0)
        >>> print(tower.operator(5, 6)[2:4, 2:4])
        Matrix([[0, -1], [1, 0]])

        """
        tensor = self.tensor(len(derivs))
        dim = tensor.dim
        return ImmutableMatrix(
            dim, dim, lambda i, j: constant_term(tensor.get((i + 1, j + 1, c, d) + tuple(derivs)))
        )


# %% Classes - HolonomyGenerators
@dataclass(frozen=True)
class HolonomyGenerators:
    r"""
    Origin-evaluated curvature operators keyed by their direction tuple (c, d, f1, ..., fr).

    In pruned mode every enumerated tuple is kept, zero matrices included; in exhaustive mode only
    the nonzero operators are kept, while enumerated counts every tuple with c < d.
    """

    n: int
    mode: EnumerationMode
    max_order: int
    operators: Mapping[Key, ImmutableMatrix]
    enumerated: int

    def matrices(self) -> list[ImmutableMatrix]:
        r"""Operators in sorted tuple order (by order, then lexicographically)."""
        return [self.operators[key] for key in sorted(self.operators, key=lambda k: (len(k), k))]


# %% Classes - HolonomyCertificate
@dataclass(frozen=True)
class HolonomyCertificate:
    r"""Outcome of comparing the computed holonomy span with the embedded g^h."""

    equal: bool
    dimension: int
    expected_dimension: int
    missing: tuple[str, ...]
    extra: int
    gh_span: AlgebraSpan = field(repr=False)

    @property
    def deficit(self) -> int:
        r"""How many dimensions short of g^h the holonomy span is."""
        return self.expected_dimension - self.dimension


# %% Functions - christoffel
def christoffel(metric: MetricField, inverse: PolyMatrix) -> ChristoffelField:
    r"""
    Every Christoffel symbol from Gamma^a_{bc} = 1/2 g^{ad} (d_b g_{dc} + d_c g_{bd} - d_d g_{bc}).

    Parameters
    ----------
    metric : MetricField
        The metric
    inverse : PolyMatrix
        Its exact polynomial inverse
    """
    ring = metric.ring
    dim = metric.dim
    g = metric.g
    dg: dict[tuple[int, int, int], Poly] = {}
    for i in range(1, dim + 1):
        for j in range(1, dim + 1):
            entry = g[i - 1][j - 1]
            if not entry:
                continue
            for k in range(1, dim + 1):
                deriv = partial(entry, k)
                if deriv:
                    dg[(k, i, j)] = deriv

    def _dg(k: int, i: int, j: int) -> Poly:
        return dg.get((k, i, j), ring.zero)

    half = ring.const(Rational(1, 2))
    components: dict[tuple[int, int, int], Poly] = {}
    for d in range(1, dim + 1):
        for b in range(1, dim + 1):
            for c in range(b, dim + 1):
                first_kind = _dg(b, d, c) + _dg(c, b, d) - _dg(d, b, c)
                if not first_kind:
                    continue
                for a in range(1, dim + 1):
                    ginv = inverse[a - 1][d - 1]
                    if ginv:
                        components[(a, b, c)] = components.get((a, b, c), ring.zero) + ginv * first_kind
    full: dict[tuple[int, int, int], Poly] = {}
    for (a, b, c), value in components.items():
        value = half * value
        if value:
            full[(a, b, c)] = value
            full[(a, c, b)] = value
    logger.log(LogLevel.L8, "Computed %d nonzero Christoffel symbols", len(full))
    return ChristoffelField(dim=dim, ring=ring, components=full)


# %% Functions - riemann
def riemann(gamma: ChristoffelField) -> CurvTensor:
    r"""
    Curvature tensor of order zero.

    Examples
    --------
    >>> from holcert import HSpec, build_tower, to_text
    >>> tower = build_tower(HSpec.from_lists(2, [[[0, -1], [1, 0]]]), 0)
    >>> print(to_text(tower.component((3, 4, 5, 6))))
    -1/1

    """
    ring = gamma.ring
    dim = gamma.dim
    dgam: dict[tuple[int, int, int, int], Poly] = {}
    for (a, b, c), value in gamma.components.items():
        for k in range(1, dim + 1):
            deriv = partial(value, k)
            if deriv:
                dgam[(k, a, b, c)] = deriv
    components: dict[Key, Poly] = {}
    for a in range(1, dim + 1):
        for b in range(1, dim + 1):
            for c in range(1, dim + 1):
                for d in range(c + 1, dim + 1):
                    value = dgam.get((c, a, d, b), ring.zero) - dgam.get((d, a, c, b), ring.zero)
                    for f in range(1, dim + 1):
                        left = gamma.components.get((a, c, f))
                        right = gamma.components.get((f, d, b))
                        if left and right:
                            value += left * right
                        left = gamma.components.get((a, d, f))
                        right = gamma.components.get((f, c, b))
                        if left and right:
                            value -= left * right
                    if value:
                        components[(a, b, c, d)] = value
                        components[(a, b, d, c)] = -value
    logger.log(LogLevel.L8, "Order 0: %d nonzero curvature components", len(components))
    return CurvTensor(order=0, dim=dim, ring=ring, components=components)


# %% Functions - nabla
def nabla(tensor: CurvTensor, gamma: ChristoffelField) -> CurvTensor:
    r"""
    Covariant derivative, appending the new derivative index last.

    T^a_{...;f} = d_f T^a_{...} + Gamma^a_{fl} T^l_{...} - sum over lower slots of Gamma^l_{f,slot} T^a_{..l..}

    Each nonzero input component is scattered into the outputs it contributes to, so the cost
    follows the number of nonzero components rather than the full index range.
    """
    if tensor.dim != gamma.dim:
        raise InputError(f"Tensor has dimension {tensor.dim} but the connection has {gamma.dim}.")
    dim = tensor.dim
    zero = tensor.ring.zero
    gens = tensor.ring.ring.gens
    upper = gamma.upper_index
    lower = gamma.lower_index
    out: dict[Key, Poly] = {}
    for key, comp in tensor.components.items():
        head = key[0]
        lows = key[1:]
        for f in range(1, dim + 1):
            deriv = comp.diff(gens[f - 1])
            if deriv:
                new = key + (f,)
                out[new] = out.get(new, zero) + deriv
            for a2, gam in upper.get((f, head), ()):
                new = (a2,) + lows + (f,)
                out[new] = out.get(new, zero) + gam * comp
            for slot, x in enumerate(lows, start=1):
                for l, gam in lower.get((x, f), ()):
                    new = key[:slot] + (l,) + key[slot + 1 :] + (f,)
                    out[new] = out.get(new, zero) - gam * comp
    components = {key: value for (key, value) in out.items() if value}
    logger.log(LogLevel.L8, "Order %d: %d nonzero curvature components", tensor.order + 1, len(components))
    return CurvTensor(order=tensor.order + 1, dim=dim, ring=tensor.ring, components=components)


# %% Functions - build_tower
def build_tower(
    spec: HSpec, max_order: int, *, corrupt: bool = False, timings: dict[str, float] | None = None
) -> CurvatureTower:
    r"""
    Run the exact pipeline from the metric through the order max_order curvature derivative.

    Parameters
    ----------
    spec : HSpec
        Subalgebra datum
    max_order : int
        Highest derivative order, at least 0
    corrupt : bool, optional
        Debug negative control passed to the metric construction
    timings : dict, optional
        Receives the elapsed time of each stage

    Examples
    --------
    >>> from holcert import HSpec, build_tower
    >>> tower = build_tower(HSpec.from_lists(2, []), 1)
    >>> print(tower.max_order)
    1

    """
    if max_order < 0:
        raise InputError(f"The maximum order must be non-negative, got {max_order}.")
    with log_timing("metric", timings):
        metric = build_metric(spec, corrupt=corrupt)
    with log_timing("inverse", timings):
        inverse = invert_metric(metric)
    with log_timing("christoffel", timings):
        gamma = christoffel(metric, inverse)
    tensors = []
    with log_timing("curvature order 0", timings):
        tensors.append(riemann(gamma))
    for order in range(1, max_order + 1):
        with log_timing(f"curvature order {order}", timings):
            tensors.append(nabla(tensors[-1], gamma))
    return CurvatureTower(spec=spec, metric=metric, inverse=inverse, christoffel=gamma, tensors=tuple(tensors))


# %% Functions - holonomy_generators
def holonomy_generators(tower: CurvatureTower, mode: EnumerationMode = EnumerationMode.pruned) -> HolonomyGenerators:
    r"""
    Origin operators of every enumerated direction tuple up to the tower's order.

    Pruned mode takes every pair c < d at order zero.  For r >= 1 it takes (c, d) = (n+3, n+4) with
    every derivative direction in {n+3, n+4}, where the so(n) block can be nonzero, plus every other
    tuple whose origin operator has a nonzero entry outside the so(n) block.  Tuples whose only
    nonzero entries would sit in the so(n) block outside that pattern vanish by the e200 pattern and
    are skipped.  Exhaustive mode takes every tuple.

    Examples
    --------
    >>> from holcert import HSpec, build_tower, holonomy_generators
    >>> gens = holonomy_generators(build_tower(HSpec.from_lists(2, []), 1))
    >>> print(gens.enumerated)
    17

    """
    spec = tower.spec
    dim = spec.dim
    pair = (spec.P, spec.Q)
    operators: dict[Key, ImmutableMatrix] = {}
    enumerated = 0
    for order, tensor in enumerate(tower.tensors):
        groups = tensor.origin_values()
        if mode == EnumerationMode.exhaustive:
            enumerated += dim * (dim - 1) // 2 * dim**order
            for key in sorted(groups):
                operators[key] = _group_matrix(groups[key], dim)
            continue
        keys: list[Key]
        if order == 0:
            keys = [(c, d) for c in range(1, dim + 1) for d in range(c + 1, dim + 1)]
        else:
            keys = [pair + derivs for derivs in product(pair, repeat=order)]
            pattern = set(keys)
            # outside the pattern only the so(n) block is forced to vanish, the X and Y rows are not
            keys += [key for key in sorted(groups) if key not in pattern and _leaves_middle(groups[key], spec)]
        enumerated += len(keys)
        for key in keys:
            operators[key] = _group_matrix(groups.get(key, {}), dim)
    logger.log(
        LogLevel.L5, "Enumerated %d direction tuples in %s mode, kept %d operators", enumerated, mode.value, len(operators)
    )
    return HolonomyGenerators(n=spec.n, mode=mode, max_order=tower.max_order, operators=operators, enumerated=enumerated)


def _leaves_middle(values: Mapping[tuple[int, int], Rational], spec: HSpec) -> bool:
    middle = spec.middle
    return any(a not in middle or b not in middle for (a, b) in values)


def _group_matrix(values: Mapping[tuple[int, int], Rational], dim: int) -> ImmutableMatrix:
    mat = zeros(dim, dim)
    for (a, b), value in values.items():
        mat[a - 1, b - 1] = value
    return ImmutableMatrix(mat)


# %% Functions - holonomy_algebra
def holonomy_algebra(
    spec: HSpec,
    max_order: int | None = None,
    *,
    mode: EnumerationMode = EnumerationMode.pruned,
    tower: CurvatureTower | None = None,
) -> AlgebraSpan:
    r"""
    Lie algebra generated by the origin operators, the computed hol_0.

    Parameters
    ----------
    spec : HSpec
        Subalgebra datum
    max_order : int, optional
        Highest derivative order, defaults to N+1
    mode : EnumerationMode, optional
        Generator enumeration
    tower : CurvatureTower, optional
        Reuse an already computed tower (its order must reach max_order)

    Examples
    --------
    >>> from holcert import HSpec, holonomy_algebra
    >>> print(holonomy_algebra(HSpec.from_lists(2, [[[0, -1], [1, 0]]])).dimension)
    6

    """
    if max_order is None:
        max_order = spec.N + 1
    if max_order < spec.N:
        logger.log(LogLevel.L1, "Maximum order %d is below N=%d, the span may be incomplete.", max_order, spec.N)
    if tower is None:
        tower = build_tower(spec, max_order)
    elif tower.max_order < max_order:
        raise InputError(f"The tower stops at order {tower.max_order}, below the requested {max_order}.")
    elif tower.max_order > max_order:
        tower = CurvatureTower(
            spec=tower.spec,
            metric=tower.metric,
            inverse=tower.inverse,
            christoffel=tower.christoffel,
            tensors=tower.tensors[: max_order + 1],
        )
    gens = holonomy_generators(tower, mode)
    return span_lie_closure(gens.matrices(), size=spec.dim)


# %% Functions - gh_labels
def gh_labels(spec: HSpec) -> list[str]:
    r"""Labels of gh_basis elements: A_1..A_N, X_1..X_n, Y_1..Y_n, c."""
    return (
        [f"A_{k}" for k in range(1, spec.N + 1)]
        + [f"X_{i}" for i in range(1, spec.n + 1)]
        + [f"Y_{i}" for i in range(1, spec.n + 1)]
        + ["c"]
    )


# %% Functions - certify_holonomy
def certify_holonomy(span: AlgebraSpan, spec: HSpec) -> HolonomyCertificate:
    r"""
    Compare a holonomy span with the embedded g^h, naming the g^h directions it misses.

    Examples
    --------
    >>> from holcert import HSpec, certify_holonomy, holonomy_algebra
    >>> spec = HSpec.from_lists(2, [])
    >>> cert = certify_holonomy(holonomy_algebra(spec), spec)
    >>> print(cert.equal, cert.dimension, cert.expected_dimension)
    True 5 5

    """
    basis = gh_basis(spec.n, spec.basis)
    gh_span = linear_span(basis, size=spec.dim)
    missing = tuple(label for (label, mat) in zip(gh_labels(spec), basis) if not span.contains(mat))
    extra = sum(1 for mat in span.basis_matrices() if not gh_span.contains(mat))
    equal = equal_span(span, gh_span)
    if equal:
        logger.log(LogLevel.L5, "Holonomy span equals g^h, dimension %d", span.dimension)
    else:
        logger.log(
            LogLevel.L1,
            "Holonomy span has dimension %d against %d for g^h, missing %s",
            span.dimension,
            gh_span.dimension,
            ", ".join(missing) or "nothing",
        )
    return HolonomyCertificate(
        equal=equal,
        dimension=span.dimension,
        expected_dimension=gh_span.dimension,
        missing=missing,
        extra=extra,
        gh_span=gh_span,
    )


# %% Functions - pruning_misses
def pruning_misses(tower: CurvatureTower) -> list[Key]:
    r"""Direction tuples whose origin operator is not in the Lie algebra generated by the pruned set."""
    pruned = span_lie_closure(holonomy_generators(tower, EnumerationMode.pruned).matrices(), size=tower.spec.dim)
    exhaustive = holonomy_generators(tower, EnumerationMode.exhaustive)
    keys = sorted(exhaustive.operators, key=lambda k: (len(k), k))
    return [key for key in keys if not pruned.contains(exhaustive.operators[key])]


# %% Functions - middle_block
def middle_block(mat: ImmutableMatrix, n: int) -> ImmutableMatrix:
    r"""The so(n) block of an (n+4) x (n+4) matrix, read without checking the stabilizer pattern."""
    return ImmutableMatrix(mat[2 : n + 2, 2 : n + 2])


# %% Unit test
if __name__ == "__main__":
    unittest.main(module="holcert.tests.test_curvature", exit=False)
    doctest.testmod(verbose=False)
