r"""
The named check catalogue and the runner that turns a configuration into a report.

Every check is registered under a frozen name together with the place in the construction that
it certifies.  Checks count the instances they verify and keep the first failing ones as
witnesses; a failing check never raises, while errors of the exact or numeric pipeline abort the
run.

Notes
-----
#.  Written for the holcert library.
"""

# %% Imports
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
import doctest
from functools import cached_property
from itertools import product
import logging
from math import comb, factorial
from typing import Any, Callable, Iterable, Mapping, Sequence
import unittest

import numpy as np
from sympy import ImmutableMatrix, Rational, zeros
from sympy.polys.matrices import DomainMatrix

from holcert.config import RunConfig
from holcert.curvature import (
    build_tower,
    certify_holonomy,
    CurvatureTower,
    CurvTensor,
    gh_labels,
    holonomy_algebra,
    holonomy_generators,
    HolonomyCertificate,
    HolonomyGenerators,
    Key,
    middle_block,
    pruning_misses,
    SIGN_NOTE,
)
from holcert.enums import CheckStatus, EnumerationMode, LogLevel, ReturnCodes
from holcert.fixtures import FIXTURES
from holcert.liealg import (
    AlgebraSpan,
    bracket,
    decompose_gh,
    equal_span,
    EtaForm,
    gh_basis,
    gram_eta,
    linear_span,
    NotInStabilizerError,
    pr_so_n,
    so_check,
    span_lie_closure,
    weak_irreducibility_probe,
)
from holcert.logs import log_multiline, log_timing
from holcert.metric import build_metric, DOMAIN_NOTE, TYPO_NOTE
from holcert.oracle import (
    convergence_ratio,
    fd_christoffel,
    fd_riemann,
    FloatPoint,
    loop_transport,
    random_rational_points,
    within_tolerance,
)
from holcert.polycore import (
    constant_term,
    CoordinateRing,
    evaluate,
    identity_matrix,
    is_constant,
    matadd,
    matmul,
    partial,
    Poly,
    PolyMatrix,
    to_text,
    total_degree,
)
from holcert.utils import format_matrix, format_rational, format_vector, InputError
from holcert.version import version_info

# %% Globals
logger = logging.getLogger(__name__)

MAX_WITNESSES = 10

# below this the finite difference error is rounding, not truncation
_ROUNDING_FLOOR = 1e-9


# %% Classes - Witness
@dataclass(frozen=True)
class Witness:
    r"""An offending index tuple (or label) with the value found there."""

    index: str
    value: str


# %% Classes - CheckResult
@dataclass(frozen=True)
class CheckResult:
    r"""
    Outcome of one named check.

    Attributes
    ----------
    name : str
        Frozen check name, such as "christoffel.e21"
    status : CheckStatus
        pass, fail, heuristic-pass or skipped
    location : str
        Equation or lemma label of the certified statement, such as "e107"
    count : int
        Number of instances examined
    detail : str
        Human readable summary
    witnesses : tuple of Witness
        Up to MAX_WITNESSES failing instances
    statement : str
        The certified statement in words
    """

    name: str
    status: CheckStatus
    location: str
    count: int
    detail: str
    witnesses: tuple[Witness, ...] = ()
    statement: str = ""


# %% Classes - CheckReport
@dataclass(frozen=True)
class CheckReport:
    r"""Everything a run produced: the input summary, notes, dimensions, check results and timings."""

    tool: Mapping[str, str]
    input_summary: Mapping[str, Any]
    notes: tuple[str, ...]
    dimensions: Mapping[str, int | None]
    checks: tuple[CheckResult, ...]
    timings: Mapping[str, float] = field(default_factory=dict, compare=False)

    def tally(self, status: CheckStatus) -> int:
        r"""Number of checks with the given status."""
        return sum(1 for check in self.checks if check.status == status)

    @property
    def failed(self) -> list[CheckResult]:
        r"""The failing checks."""
        return [check for check in self.checks if check.status == CheckStatus.failed]

    @property
    def exit_code(self) -> int:
        r"""Process return code, nonzero iff an exact check failed."""
        return int(ReturnCodes.check_failures) if self.failed else int(ReturnCodes.clean)

    def result(self, name: str) -> CheckResult:
        r"""The result of a named check."""
        for check in self.checks:
            if check.name == name:
                return check
        raise InputError(f'Check "{name}" was not run.')


# %% Classes - _Tally
class _Tally:
    r"""Running count of examined instances with the first failing witnesses."""

    def __init__(self) -> None:
        self.count = 0
        self.failures = 0
        self.witnesses: list[Witness] = []
        self.notes: list[str] = []
        self.heuristic = False

    def record(self, ok: bool, index: Any, value: Any = "") -> bool:
        self.count += 1
        if not ok:
            self._fail(index, value)
        return ok

    def expect_zero(self, index: Any, value: Any) -> bool:
        return self.record(not value, index, value)

    def expect_equal(self, index: Any, actual: Any, expected: Any) -> bool:
        ok = not (actual - expected)
        return self.record(ok, index, "" if ok else _mismatch(actual, expected))

    def bulk(self, total: int, failing: Iterable[tuple[Any, Any]]) -> None:
        r"""Account for total instances of which only the failing ones were enumerated."""
        self.count += total
        for index, value in failing:
            self._fail(index, value)

    def _fail(self, index: Any, value: Any) -> None:
        self.failures += 1
        if len(self.witnesses) < MAX_WITNESSES:
            self.witnesses.append(Witness(index=_format_index(index), value=_format_value(value)))


class _Skipped(Exception):
    r"""Raised by a check that does not apply to the current configuration."""


_CheckFunc = Callable[["_Pipeline"], _Tally]


# %% Classes - CheckSpec
@dataclass(frozen=True)
class CheckSpec:
    r"""A catalogue entry: frozen name, source label, certified statement and implementation."""

    name: str
    location: str
    statement: str
    func: _CheckFunc = field(repr=False)


CATALOGUE: dict[str, CheckSpec] = {}

# equation and lemma labels of the construction each check certifies
SOURCES: dict[str, str] = {
    "input.subalgebra": "h subalgebra of so(n)",
    "metric.origin_eta": "metric ansatz, g_0 = eta",
    "metric.symmetric": "metric ansatz",
    "metric.inverse": "metric ansatz, inverse",
    "metric.det_constant": "metric ansatz, inverse",
    "metric.degree_bound": "metric ansatz, u^i and f",
    "metric.independence": "lemma 2, e100",
    "christoffel.symmetric": "Levi-Civita connection",
    "christoffel.compatibility": "Levi-Civita connection",
    "christoffel.e11": "e11",
    "christoffel.e22": "e22",
    "christoffel.e21": "e21",
    "christoffel.e10": "e10",
    "christoffel.e20": "e20",
    "christoffel.e25": "e25",
    "curvature.antisymmetry": "curvature tensor",
    "curvature.bianchi": "curvature tensor",
    "curvature.e50": "e50",
    "curvature.e30": "e30",
    "curvature.e40": "e40",
    "curvature.e70": "e70",
    "curvature.e60": "e60",
    "curvature.e80": "e80",
    "lemma1.contraction": "lemma 1, e10 e20 e30 e40",
    "lemma2.vanishing": "lemma 2",
    "e100.independence": "e100",
    "lemma3.i": "lemma 3 (i)",
    "lemma3.ii": "lemma 3 (ii), e105",
    "lemma3.iii": "lemma 3 (iii)",
    "lemma3.e106": "e106",
    "lemma3.e107": "e107",
    "e200.pattern": "e200",
    "recursion.e110": "e110",
    "recursion.e111": "e111",
    "e130.factorial": "e130",
    "e140.bracket": "e140",
    "e140.tail": "e140, inclusion in g^h",
    "operators.shape": "inclusion in g^so(n)",
    "gh.closure": "definition of g^h",
    "holonomy.pruning": "e200, generator enumeration",
    "holonomy.equality": "theorem, hol_0 = g^h",
    "holonomy.orthogonal_part": "inclusion in g^h, pr_so(n)",
    "holonomy.permutation": "theorem, basis order",
    "irreducibility.probe": "weak irreducibility of g^h",
    "oracle.christoffel": "numeric cross-check, e11-e25",
    "oracle.riemann": "numeric cross-check, e30-e80",
    "oracle.convergence": "numeric cross-check",
    "oracle.transport": "numeric cross-check, curvature operator",
}


def _check(name: str, statement: str) -> Callable[[_CheckFunc], _CheckFunc]:
    r"""Register a check; registration order is execution order."""

    def _register(func: _CheckFunc) -> _CheckFunc:
        CATALOGUE[name] = CheckSpec(name=name, location=SOURCES[name], statement=statement, func=func)
        return func

    return _register


# %% Classes - _Pipeline
class _Pipeline:
    r"""Lazily computed exact and numeric objects shared by the checks of one run."""

    def __init__(self, cfg: RunConfig, timings: dict[str, float]) -> None:
        self.cfg = cfg
        self.spec = cfg.spec
        self.timings = timings
        self.dim = cfg.spec.dim
        self.n = cfg.spec.n
        self.P = cfg.spec.P  # pylint: disable=invalid-name
        self.Q = cfg.spec.Q  # pylint: disable=invalid-name
        self.mid = tuple(cfg.spec.middle)
        self._projections: dict[Key, ImmutableMatrix] = {}

    @cached_property
    def tower(self) -> CurvatureTower:
        return build_tower(self.spec, self.cfg.order, corrupt=self.cfg.corrupt_metric, timings=self.timings)

    @property
    def ring(self) -> CoordinateRing:
        return self.tower.metric.ring

    @cached_property
    def eta(self) -> EtaForm:
        return gram_eta(self.n)

    @cached_property
    def generators(self) -> HolonomyGenerators:
        with log_timing("generators", self.timings):
            return holonomy_generators(self.tower, self.cfg.mode)

    @cached_property
    def span(self) -> AlgebraSpan:
        with log_timing("holonomy span", self.timings):
            return span_lie_closure(self.generators.matrices(), size=self.dim)

    @cached_property
    def certificate(self) -> HolonomyCertificate:
        return certify_holonomy(self.span, self.spec)

    @cached_property
    def points(self) -> list[tuple[Rational, ...]]:
        return random_rational_points(self.dim, self.cfg.oracle.points, self.cfg.oracle.seed)

    @cached_property
    def gamma_q(self) -> PolyMatrix:
        r"""Middle block of Gamma^i_{n+4, j}."""
        gamma = self.tower.christoffel
        return tuple(tuple(gamma.get(i, self.Q, j) for j in self.mid) for i in self.mid)

    def computed(self, name: str) -> bool:
        r"""Whether a cached stage was already evaluated."""
        return name in self.__dict__

    def is_middle(self, key: Key) -> bool:
        return key[0] in self.mid and key[1] in self.mid

    def middle_matrix(self, tensor: CurvTensor, suffix: Key) -> PolyMatrix:
        return tuple(tuple(tensor.get((i, j) + suffix) for j in self.mid) for i in self.mid)

    def a_poly(self, i: int, j: int, *, derivative: bool = False) -> Poly:
        r"""sum_alpha A_alpha[i, j] (x^{n+3})^alpha, or its x^{n+3} derivative, for middle i, j."""
        ring = self.ring
        xp = ring.var(self.P)
        acc = ring.zero
        for alpha, mat in enumerate(self.spec.basis, start=1):
            coeff = mat[i - 3, j - 3]
            if coeff:
                acc += ring.const(alpha * coeff) * xp ** (alpha - 1) if derivative else ring.const(coeff) * xp**alpha
        return acc

    def projection(self, derivs: Key) -> ImmutableMatrix:
        r"""so(n) block of the origin operator of (n+3, n+4; derivs)."""
        if derivs not in self._projections:
            self._projections[derivs] = middle_block(self.tower.operator(self.P, self.Q, derivs), self.n)
        return self._projections[derivs]

    def require_order(self, order: int) -> None:
        if self.cfg.order < order:
            raise _Skipped(f"needs max order >= {order}, configured {self.cfg.order}")


# %% Checks - input and metric
@_check("input.subalgebra", "h is closed under the commutator")
def _input_subalgebra(pipe: _Pipeline) -> _Tally:
    tally = _Tally()
    defect = set(pipe.spec.subalgebra_defect())
    for alpha in range(1, pipe.spec.N + 1):
        for beta in range(alpha + 1, pipe.spec.N + 1):
            tally.record((alpha, beta) not in defect, (alpha, beta), "[A_alpha, A_beta] leaves span(A_1..A_N)")
    return tally


@_check("metric.origin_eta", "the metric at the origin is eta")
def _metric_origin_eta(pipe: _Pipeline) -> _Tally:
    tally = _Tally()
    g0 = pipe.tower.metric.origin_value()
    gram = pipe.eta.gram
    for a, b in product(range(pipe.dim), repeat=2):
        tally.expect_equal((a + 1, b + 1), g0[a, b], gram[a, b])
    return tally


@_check("metric.symmetric", "the metric matrix is symmetric")
def _metric_symmetric(pipe: _Pipeline) -> _Tally:
    tally = _Tally()
    g = pipe.tower.metric.g
    for a in range(pipe.dim):
        for b in range(a + 1, pipe.dim):
            tally.expect_equal((a + 1, b + 1), g[a][b], g[b][a])
    return tally


@_check("metric.inverse", "the polynomial inverse is a two-sided inverse of the metric")
def _metric_inverse(pipe: _Pipeline) -> _Tally:
    tally = _Tally()
    g = pipe.tower.metric.g
    inv = pipe.tower.inverse
    eye = identity_matrix(pipe.ring, pipe.dim)
    for label, prod in (("g*ginv", matmul(g, inv)), ("ginv*g", matmul(inv, g))):
        for a, b in product(range(pipe.dim), repeat=2):
            tally.expect_equal(f"{label}[{a + 1},{b + 1}]", prod[a][b], eye[a][b])
    return tally


@_check("metric.det_constant", "det(g) is the constant det(eta)")
def _metric_det_constant(pipe: _Pipeline) -> _Tally:
    tally = _Tally()
    ring = pipe.ring.ring
    det = DomainMatrix([list(row) for row in pipe.tower.metric.g], (pipe.dim, pipe.dim), ring.to_domain()).det()
    expected = pipe.eta.gram.det()
    tally.record(is_constant(det) and constant_term(det) == expected, "det", f"{to_text(det)} (expected {expected})")
    tally.notes.append(f"det(g) = {to_text(det)}")
    return tally


@_check("metric.degree_bound", "every metric entry has degree at most max(N+1, 2)")
def _metric_degree_bound(pipe: _Pipeline) -> _Tally:
    tally = _Tally()
    bound = max(pipe.spec.N + 1, 2)
    g = pipe.tower.metric.g
    for a, b in product(range(pipe.dim), repeat=2):
        entry = g[a][b]
        tally.record(not entry or total_degree(entry) <= bound, (a + 1, b + 1), entry)
    tally.notes.append(f"bound {bound}")
    return tally


@_check("metric.independence", "the metric does not depend on x^1, x^2 or x^{n+4}")
def _metric_independence(pipe: _Pipeline) -> _Tally:
    tally = _Tally()
    g = pipe.tower.metric.g
    for a in range(pipe.dim):
        for b in range(a, pipe.dim):
            for var in (1, 2, pipe.Q):
                tally.expect_zero((a + 1, b + 1, var), partial(g[a][b], var))
    return tally


# %% Checks - Christoffel symbols
@_check("christoffel.symmetric", "Gamma^a_{bc} = Gamma^a_{cb}")
def _christoffel_symmetric(pipe: _Pipeline) -> _Tally:
    tally = _Tally()
    gamma = pipe.tower.christoffel
    rng = range(1, pipe.dim + 1)
    for a, b, c in product(rng, rng, rng):
        if b < c:
            tally.expect_equal((a, b, c), gamma.get(a, b, c), gamma.get(a, c, b))
    return tally


@_check("christoffel.compatibility", "d_c g_ab = g_fb Gamma^f_{ca} + g_af Gamma^f_{cb}")
def _christoffel_compatibility(pipe: _Pipeline) -> _Tally:
    tally = _Tally()
    gamma = pipe.tower.christoffel
    g = pipe.tower.metric.g
    rng = range(1, pipe.dim + 1)
    for a in rng:
        for b in range(a, pipe.dim + 1):
            for c in rng:
                rhs = pipe.ring.zero
                for f in rng:
                    rhs += g[f - 1][b - 1] * gamma.get(f, c, a) + g[a - 1][f - 1] * gamma.get(f, c, b)
                tally.expect_equal((a, b, c), partial(g[a - 1][b - 1], c), rhs)
    return tally


@_check("christoffel.e11", "Christoffel list: Gamma^i_{jk} = 0 for middle i, j, k")
def _christoffel_e11(pipe: _Pipeline) -> _Tally:
    tally = _Tally()
    gamma = pipe.tower.christoffel
    for i, j, k in product(pipe.mid, repeat=3):
        tally.expect_zero((i, j, k), gamma.get(i, j, k))
    return tally


@_check("christoffel.e22", "Christoffel list: Gamma^i_{j,n+3} = 0")
def _christoffel_e22(pipe: _Pipeline) -> _Tally:
    tally = _Tally()
    gamma = pipe.tower.christoffel
    for i, j in product(pipe.mid, repeat=2):
        tally.expect_zero((i, j, pipe.P), gamma.get(i, j, pipe.P))
    return tally


@_check("christoffel.e21", "Christoffel list: Gamma^i_{j,n+4} = A^i_{j alpha} (x^{n+3})^alpha")
def _christoffel_e21(pipe: _Pipeline) -> _Tally:
    tally = _Tally()
    gamma = pipe.tower.christoffel
    for i, j in product(pipe.mid, repeat=2):
        tally.expect_equal((i, j, pipe.Q), gamma.get(i, j, pipe.Q), pipe.a_poly(i, j))
    return tally


@_check("christoffel.e10", "Christoffel list: Gamma^{n+3}_{ab} = Gamma^{n+4}_{ab} = 0")
def _christoffel_e10(pipe: _Pipeline) -> _Tally:
    tally = _Tally()
    gamma = pipe.tower.christoffel
    rng = range(1, pipe.dim + 1)
    for top, a, b in product((pipe.P, pipe.Q), rng, rng):
        tally.expect_zero((top, a, b), gamma.get(top, a, b))
    return tally


@_check("christoffel.e20", "Christoffel list: Gamma^a_{1b} = Gamma^a_{2b} = 0")
def _christoffel_e20(pipe: _Pipeline) -> _Tally:
    tally = _Tally()
    gamma = pipe.tower.christoffel
    rng = range(1, pipe.dim + 1)
    for a, low, b in product(rng, (1, 2), rng):
        tally.expect_zero((a, low, b), gamma.get(a, low, b))
    return tally


@_check("christoffel.e25", "Christoffel list: Gamma^i_{n+3,n+3} = Gamma^i_{n+4,n+4} = -x^i")
def _christoffel_e25(pipe: _Pipeline) -> _Tally:
    tally = _Tally()
    gamma = pipe.tower.christoffel
    for i in pipe.mid:
        for d in (pipe.P, pipe.Q):
            tally.expect_equal((i, d, d), gamma.get(i, d, d), -pipe.ring.var(i))
    return tally


# %% Checks - curvature
@_check("curvature.antisymmetry", "R^a_{bcd} = -R^a_{bdc}")
def _curvature_antisymmetry(pipe: _Pipeline) -> _Tally:
    tally = _Tally()
    R0 = pipe.tower.tensor(0)
    rng = range(1, pipe.dim + 1)
    for a, b, c in product(rng, rng, rng):
        for d in range(c, pipe.dim + 1):
            tally.expect_equal((a, b, c, d), R0.get((a, b, c, d)), -R0.get((a, b, d, c)))
    return tally


@_check("curvature.bianchi", "first Bianchi identity R^a_{bcd} + R^a_{cdb} + R^a_{dbc} = 0")
def _curvature_bianchi(pipe: _Pipeline) -> _Tally:
    tally = _Tally()
    R0 = pipe.tower.tensor(0)
    for a in range(1, pipe.dim + 1):
        for b in range(1, pipe.dim + 1):
            for c in range(b + 1, pipe.dim + 1):
                for d in range(c + 1, pipe.dim + 1):
                    total = R0.get((a, b, c, d)) + R0.get((a, c, d, b)) + R0.get((a, d, b, c))
                    tally.expect_zero((a, b, c, d), total)
    return tally


@_check(
    "curvature.e50",
    "curvature list: R^i_{j,n+3,n+4} = alpha A^i_{j alpha} (x^{n+3})^(alpha-1), other middle blocks vanish",
)
def _curvature_e50(pipe: _Pipeline) -> _Tally:
    tally = _Tally()
    R0 = pipe.tower.tensor(0)
    for i, j in product(pipe.mid, repeat=2):
        for c in range(1, pipe.dim + 1):
            for d in range(c + 1, pipe.dim + 1):
                value = R0.get((i, j, c, d))
                if (c, d) == (pipe.P, pipe.Q):
                    tally.expect_equal((i, j, c, d), value, pipe.a_poly(i, j, derivative=True))
                else:
                    tally.expect_zero((i, j, c, d), value)
    return tally


@_check("curvature.e30", "curvature list: R^{n+3}_{abc} = R^{n+4}_{abc} = 0")
def _curvature_e30(pipe: _Pipeline) -> _Tally:
    tally = _Tally()
    R0 = pipe.tower.tensor(0)
    rng = range(1, pipe.dim + 1)
    for top, b, c in product((pipe.P, pipe.Q), rng, rng):
        for d in range(c + 1, pipe.dim + 1):
            tally.expect_zero((top, b, c, d), R0.get((top, b, c, d)))
    return tally


@_check("curvature.e40", "curvature list: R^a_{bcd} = 0 if 1 or 2 is among b, c, d")
def _curvature_e40(pipe: _Pipeline) -> _Tally:
    tally = _Tally()
    R0 = pipe.tower.tensor(0)
    rng = range(1, pipe.dim + 1)
    for a, b, c in product(rng, rng, rng):
        for d in range(c + 1, pipe.dim + 1):
            if {1, 2} & {b, c, d}:
                tally.expect_zero((a, b, c, d), R0.get((a, b, c, d)))
    return tally


@_check("curvature.e70", "curvature list: R^1_{i,i,n+3} = 1")
def _curvature_e70(pipe: _Pipeline) -> _Tally:
    tally = _Tally()
    R0 = pipe.tower.tensor(0)
    for i in pipe.mid:
        tally.expect_equal((1, i, i, pipe.P), R0.get((1, i, i, pipe.P)), pipe.ring.one)
    return tally


@_check("curvature.e60", "curvature list: R^2_{i,i,n+4} = 1 at the origin")
def _curvature_e60(pipe: _Pipeline) -> _Tally:
    tally = _Tally()
    R0 = pipe.tower.tensor(0)
    symbolic = 0
    for i in pipe.mid:
        comp = R0.get((2, i, i, pipe.Q))
        tally.expect_equal((2, i, i, pipe.Q), constant_term(comp), Rational(1))
        symbolic += comp == pipe.ring.one
    tally.notes.append(f"{symbolic} of {len(pipe.mid)} components also hold as polynomial identities")
    return tally


@_check("curvature.e80", "curvature list: R^1_{n+4,i,j} = -A^j_{i1} at the origin")
def _curvature_e80(pipe: _Pipeline) -> _Tally:
    tally = _Tally()
    R0 = pipe.tower.tensor(0)
    first = pipe.spec.generator(1)
    symbolic = 0
    for i, j in product(pipe.mid, repeat=2):
        comp = R0.get((1, pipe.Q, i, j))
        expected = -first[j - 3, i - 3]
        tally.expect_equal((1, pipe.Q, i, j), constant_term(comp), expected)
        symbolic += comp == pipe.ring.const(expected)
    tally.notes.append(f"{symbolic} of {len(pipe.mid) ** 2} components also hold as polynomial identities")
    return tally


# %% Checks - lemmas
@_check(
    "lemma1.contraction",
    "contractions Gamma^a_{bf} R^f_{cdg} and Gamma^f_{ba} R^c_{..f..} only involve middle f",
)
def _lemma1_contraction(pipe: _Pipeline) -> _Tally:
    tally = _Tally()
    R0 = pipe.tower.tensor(0).components
    gamma = pipe.tower.christoffel.components
    zero = pipe.ring.zero
    by_slot: list[defaultdict[int, list[tuple[Key, Poly]]]] = [defaultdict(list) for _ in range(4)]
    for key, value in R0.items():
        for slot in range(4):
            by_slot[slot][key[slot]].append((key, value))
    sums: dict[tuple[Any, ...], Poly] = {}
    for (a, b, f), gv in gamma.items():
        if f in pipe.mid:
            continue
        for key, rv in by_slot[0].get(f, ()):
            index = ("upper", a, b) + key[1:]
            sums[index] = sums.get(index, zero) + gv * rv
    for (f, b, a), gv in gamma.items():
        if f in pipe.mid:
            continue
        # Gamma^f_{ba} R^c_{..f..} with f in a lower slot
        for slot in (1, 2, 3):
            for key, rv in by_slot[slot].get(f, ()):
                index = (f"slot{slot + 1}", b, a) + key[:slot] + key[slot + 1 :]
                sums[index] = sums.get(index, zero) + gv * rv
    failing = sorted(((index, value) for (index, value) in sums.items() if value), key=lambda item: str(item[0]))
    tally.bulk(4 * pipe.dim**5, failing)
    return tally


@_check("lemma2.vanishing", "every derivative component in direction 1 or 2 vanishes")
def _lemma2_vanishing(pipe: _Pipeline) -> _Tally:
    pipe.require_order(1)
    tally = _Tally()
    for r in range(1, pipe.cfg.order + 1):
        failing = [(key, value) for (key, value) in pipe.tower.tensor(r).items() if key[-1] in (1, 2)]
        tally.bulk(2 * pipe.dim ** (3 + r), failing)
    return tally


@_check("e100.independence", "middle curvature components do not depend on x^{n+4}")
def _e100_independence(pipe: _Pipeline) -> _Tally:
    tally = _Tally()
    for r in range(pipe.cfg.order + 1):
        failing = []
        for key, value in pipe.tower.tensor(r).items():
            if pipe.is_middle(key):
                deriv = partial(value, pipe.Q)
                if deriv:
                    failing.append((key, deriv))
        tally.bulk(pipe.n**2 * pipe.dim ** (2 + r), failing)
    return tally


@_check("lemma3.i", "middle curvature components do not depend on the middle coordinates")
def _lemma3_i(pipe: _Pipeline) -> _Tally:
    tally = _Tally()
    for r in range(pipe.cfg.order + 1):
        failing = []
        for key, value in pipe.tower.tensor(r).items():
            if pipe.is_middle(key):
                for k in pipe.mid:
                    deriv = partial(value, k)
                    if deriv:
                        failing.append((key + (k,), deriv))
        tally.bulk(pipe.n**3 * pipe.dim ** (2 + r), failing)
    return tally


@_check("lemma3.ii", "a middle component whose last derivative is in a middle direction vanishes")
def _lemma3_ii(pipe: _Pipeline) -> _Tally:
    pipe.require_order(1)
    tally = _Tally()
    for r in range(1, pipe.cfg.order + 1):
        failing = [
            (key, value) for (key, value) in pipe.tower.tensor(r).items() if pipe.is_middle(key) and key[-1] in pipe.mid
        ]
        tally.bulk(pipe.n**3 * pipe.dim ** (1 + r), failing)
    return tally


@_check("lemma3.iii", "a vanishing so(n) block R^._{. c d; F} has vanishing derivatives")
def _lemma3_iii(pipe: _Pipeline) -> _Tally:
    pipe.require_order(1)
    tally = _Tally()
    for r in range(1, pipe.cfg.order + 1):
        # blocks are keyed by (c, d, f1..f{r-1}), nonzero when any middle (a, b) entry is
        live = {key[2:] for key in pipe.tower.tensor(r - 1).components if pipe.is_middle(key)}
        failing = [
            (key, value)
            for (key, value) in pipe.tower.tensor(r).items()
            if pipe.is_middle(key) and key[2:-1] not in live
        ]
        tally.bulk(pipe.n**2 * pipe.dim ** (2 + r), failing)
    return tally


def _recursion(pipe: _Pipeline, direction: int, *, pair_only: bool) -> _Tally:
    r"""Compare derivatives in direction n+3 or n+4 of middle components with their recursion."""
    pipe.require_order(1)
    tally = _Tally()
    for r in range(1, pipe.cfg.order + 1):
        parent = pipe.tower.tensor(r - 1)
        child = pipe.tower.tensor(r)
        suffixes = {key[2:] for key in parent.components if pipe.is_middle(key)}
        suffixes |= {key[2:-1] for key in child.components if pipe.is_middle(key) and key[-1] == direction}
        if pair_only:
            suffixes = {s for s in suffixes if s[:2] == (pipe.P, pipe.Q)}
        failing = []
        for suffix in sorted(suffixes):
            if direction == pipe.P:
                expected = tuple(
                    tuple(partial(parent.get((i, j) + suffix), pipe.P) for j in pipe.mid) for i in pipe.mid
                )
            else:
                block = pipe.middle_matrix(parent, suffix)
                expected = matadd(matmul(pipe.gamma_q, block), matmul(block, pipe.gamma_q), scale=-1)
            for (row, i), (col, j) in product(enumerate(pipe.mid), repeat=2):
                key = (i, j) + suffix + (direction,)
                actual = child.get(key)
                if actual != expected[row][col]:
                    failing.append((key, _mismatch(actual, expected[row][col])))
        tally.bulk(pipe.n**2 * pipe.dim ** (r - 1 if pair_only else r + 1), failing)
    return tally


@_check("lemma3.e106", "derivative in direction n+3 of a middle component is its x^{n+3} partial")
def _lemma3_e106(pipe: _Pipeline) -> _Tally:
    return _recursion(pipe, pipe.P, pair_only=False)


@_check("lemma3.e107", "derivative in direction n+4 of a middle block M is the commutator of Gamma^._{n+4,.} with M")
def _lemma3_e107(pipe: _Pipeline) -> _Tally:
    return _recursion(pipe, pipe.Q, pair_only=False)


@_check("e200.pattern", "a nonzero middle component has b, c, f1..fr in {n+3, n+4} and b != c")
def _e200_pattern(pipe: _Pipeline) -> _Tally:
    tally = _Tally()
    allowed = {pipe.P, pipe.Q}
    for r in range(pipe.cfg.order + 1):
        failing = [
            (key, value)
            for (key, value) in pipe.tower.tensor(r).items()
            if pipe.is_middle(key) and (not set(key[2:]) <= allowed or key[2] == key[3])
        ]
        tally.bulk(pipe.n**2 * pipe.dim ** (2 + r), failing)
    return tally


@_check("recursion.e110", "for (b, c) = (n+3, n+4) the n+3 derivative is the x^{n+3} partial")
def _recursion_e110(pipe: _Pipeline) -> _Tally:
    return _recursion(pipe, pipe.P, pair_only=True)


@_check("recursion.e111", "for (b, c) = (n+3, n+4) the n+4 derivative is a commutator with Gamma^._{n+4,.}")
def _recursion_e111(pipe: _Pipeline) -> _Tally:
    return _recursion(pipe, pipe.Q, pair_only=True)


# %% Checks - origin projections
@_check("e130.factorial", "pr_so(n) of the n+3 derivatives of R(n+3, n+4) at the origin is r! A_r")
def _e130_factorial(pipe: _Pipeline) -> _Tally:
    tally = _Tally()
    N = pipe.spec.N  # pylint: disable=invalid-name
    top = min(N + 1, pipe.cfg.order + 1)
    for r in range(1, top + 1):
        derivs = (pipe.P,) * (r - 1)
        actual = pipe.projection(derivs)
        expected = factorial(r) * pipe.spec.generator(r)
        tally.record(actual == expected, (pipe.P, pipe.Q) + derivs, _mismatch(actual, expected))
    if top < N + 1:
        tally.notes.append(f"orders above {pipe.cfg.order} were not computed")
    return tally


@_check(
    "e140.bracket",
    "pr_so(n) after a final n+4 derivative followed by k n+3 derivatives, summed over the Leibniz terms",
)
def _e140_bracket(pipe: _Pipeline) -> _Tally:
    if pipe.spec.N == 0:
        raise _Skipped("h = 0, every bracket vanishes")
    pipe.require_order(2)
    tally = _Tally()
    literal = 0
    zero = ImmutableMatrix(zeros(pipe.n, pipe.n))
    for r in range(2, pipe.cfg.order + 1):
        for r0 in range(1, r):
            k = r - r0
            for head in product((pipe.P, pipe.Q), repeat=r0 - 1):
                derivs = head + (pipe.Q,) + (pipe.P,) * k
                actual = pipe.projection(derivs)
                expected = zero
                for j in range(1, k + 1):
                    lower = pipe.projection(head + (pipe.P,) * (k - j))
                    expected += comb(k, j) * factorial(j) * bracket(pipe.spec.generator(j), lower)
                tally.record(actual == expected, (pipe.P, pipe.Q) + derivs, _mismatch(actual, expected))
                literal += actual == factorial(k) * bracket(pipe.spec.generator(k), pipe.projection(head))
    tally.notes.append(f"{literal} of {tally.count} cases also match the single term k! [A_k, pr(...)]")
    return tally


@_check("e140.tail", "pr_so(n) at the origin vanishes when the last derivative is n+4")
def _e140_tail(pipe: _Pipeline) -> _Tally:
    pipe.require_order(1)
    tally = _Tally()
    for r in range(1, pipe.cfg.order + 1):
        for head in product((pipe.P, pipe.Q), repeat=r - 1):
            derivs = head + (pipe.Q,)
            actual = pipe.projection(derivs)
            tally.record(actual.is_zero_matrix, (pipe.P, pipe.Q) + derivs, actual)
    return tally


@_check("operators.shape", "every origin operator is in so(2,n+2) with the g^so(n) block pattern and B = 0")
def _operators_shape(pipe: _Pipeline) -> _Tally:
    tally = _Tally()
    operators = pipe.generators.operators
    for key in sorted(operators, key=lambda k: (len(k), k)):
        mat = operators[key]
        if not so_check(mat, pipe.eta):
            tally.record(False, key, "not in so(2,n+2)")
            continue
        try:
            decompose_gh(mat)
        except NotInStabilizerError as exc:
            tally.record(False, key, str(exc))
        else:
            tally.record(True, key)
    return tally


# %% Checks - holonomy
@_check("gh.closure", "g^h is closed under the commutator and its so(n) projection is h")
def _gh_closure(pipe: _Pipeline) -> _Tally:
    tally = _Tally()
    basis = gh_basis(pipe.n, pipe.spec.basis)
    labels = gh_labels(pipe.spec)
    gh_span = linear_span(basis, size=pipe.dim)
    for i, left in enumerate(basis):
        for j in range(i + 1, len(basis)):
            tally.record(gh_span.contains(bracket(left, basis[j])), f"[{labels[i]}, {labels[j]}]", "leaves g^h")
    projected = linear_span([pr_so_n(mat) for mat in basis], size=pipe.n)
    tally.record(equal_span(projected, linear_span(pipe.spec.basis, size=pipe.n)), "pr_so(n)(g^h)", "differs from h")
    return tally


@_check("holonomy.pruning", "the pruned generators generate every operator of the exhaustive enumeration")
def _holonomy_pruning(pipe: _Pipeline) -> _Tally:
    if pipe.cfg.mode == EnumerationMode.pruned:
        raise _Skipped("pruned mode, run in exhaustive mode to verify the pruning")
    tally = _Tally()
    misses = pruning_misses(pipe.tower)
    tally.bulk(len(pipe.generators.operators), [(key, "not generated by the pruned set") for key in misses])
    tally.notes.append(f"{pipe.generators.enumerated} direction tuples enumerated")
    return tally


@_check("holonomy.equality", "the holonomy algebra at the origin equals g^h")
def _holonomy_equality(pipe: _Pipeline) -> _Tally:
    tally = _Tally()
    cert = pipe.certificate
    for label in gh_labels(pipe.spec):
        tally.record(label not in cert.missing, label, "not in the holonomy span")
    tally.record(cert.extra == 0, "outside g^h", f"{cert.extra} basis directions of the holonomy span")
    tally.record(cert.equal, "equal_span", f"dimension {cert.dimension} against {cert.expected_dimension}")
    tally.notes.append(f"dimension {cert.dimension}, g^h dimension {cert.expected_dimension}")
    if cert.deficit:
        tally.notes.append(f"deficit {cert.deficit}, missing {', '.join(cert.missing) or 'nothing'}")
    return tally


@_check("holonomy.orthogonal_part", "pr_so(n) of the holonomy algebra is h")
def _holonomy_orthogonal_part(pipe: _Pipeline) -> _Tally:
    tally = _Tally()
    projections = []
    for k, mat in enumerate(pipe.span.basis_matrices(), start=1):
        try:
            projections.append(pr_so_n(mat))
        except NotInStabilizerError as exc:
            tally.record(False, f"basis {k}", str(exc))
        else:
            tally.record(True, f"basis {k}")
    projected = linear_span(projections, size=pipe.n)
    tally.record(
        equal_span(projected, linear_span(pipe.spec.basis, size=pipe.n)),
        "pr_so(n)(hol)",
        f"dimension {projected.dimension} against N = {pipe.spec.N}",
    )
    return tally


@_check("holonomy.permutation", "reordering A_1..A_N changes the metric but not the holonomy algebra")
def _holonomy_permutation(pipe: _Pipeline) -> _Tally:
    order = pipe.cfg.permutation
    if order is None:
        raise _Skipped("no permutation configured")
    tally = _Tally()
    permuted = pipe.spec.permuted(order)
    with log_timing("permuted holonomy", pipe.timings):
        other = holonomy_algebra(permuted, pipe.cfg.order, mode=pipe.cfg.mode)
    tally.record(
        equal_span(other, pipe.span),
        ",".join(str(x) for x in order),
        f"dimension {other.dimension} against {pipe.span.dimension}",
    )
    changed = build_metric(permuted).g != build_metric(pipe.spec).g
    tally.notes.append("the permuted metric differs" if changed else "the permuted metric is identical")
    return tally


@_check("irreducibility.probe", "span{p1, p2} is invariant and isotropic, no nondegenerate invariant subspace found")
def _irreducibility_probe(pipe: _Pipeline) -> _Tally:
    tally = _Tally()
    tally.heuristic = True
    report = weak_irreducibility_probe(
        pipe.span, pipe.eta, random_samples=pipe.cfg.probe_samples, seed=pipe.cfg.oracle.seed
    )
    tally.record(report.plane_invariant, "span{p1,p2}", "not invariant")
    tally.record(report.plane_isotropic, "span{p1,p2}", "not isotropic")
    reason = "generates a proper nondegenerate invariant subspace"
    failing = [(",".join(format_vector(vec)), reason) for vec in report.counterexamples]
    tally.bulk(report.samples_checked, failing)
    tally.notes.append(f"heuristic search over {report.samples_checked} sample vectors")
    return tally


# %% Checks - numeric oracle
@_check("oracle.christoffel", "finite differences reproduce every Christoffel symbol at random points")
def _oracle_christoffel(pipe: _Pipeline) -> _Tally:
    settings = pipe.cfg.oracle
    if not pipe.points:
        raise _Skipped("no oracle points configured")
    tally = _Tally()
    gamma = pipe.tower.christoffel
    for num, point in enumerate(pipe.points, start=1):
        approx = fd_christoffel(pipe.spec, FloatPoint.from_rationals(point, step=settings.step, tolerance=settings.tolerance))
        for a, b, c in product(range(pipe.dim), repeat=3):
            exact = float(evaluate(gamma.get(a + 1, b + 1, c + 1), point))
            ok = within_tolerance(float(approx[a, b, c]), exact, settings.tolerance, floor=settings.relative_floor)
            tally.record(ok, ("point", num, a + 1, b + 1, c + 1), "" if ok else f"{approx[a, b, c]:.9g} against {exact:.9g}")
    return tally


@_check("oracle.riemann", "finite differences reproduce every curvature component at random points")
def _oracle_riemann(pipe: _Pipeline) -> _Tally:
    settings = pipe.cfg.oracle
    if not pipe.points:
        raise _Skipped("no oracle points configured")
    tally = _Tally()
    R0 = pipe.tower.tensor(0)
    for num, point in enumerate(pipe.points, start=1):
        approx = fd_riemann(pipe.spec, FloatPoint.from_rationals(point, step=settings.step, tolerance=settings.tolerance))
        for key in product(range(1, pipe.dim + 1), repeat=4):
            exact = float(evaluate(R0.get(key), point))
            value = float(approx[tuple(k - 1 for k in key)])
            ok = within_tolerance(value, exact, settings.tolerance, floor=settings.relative_floor)
            tally.record(ok, ("point", num) + key, "" if ok else f"{value:.9g} against {exact:.9g}")
    return tally


@_check("oracle.convergence", "halving the difference step reduces the Christoffel error about fourfold")
def _oracle_convergence(pipe: _Pipeline) -> _Tally:
    settings = pipe.cfg.oracle
    if not pipe.points:
        raise _Skipped("no oracle points configured")
    tally = _Tally()
    point = pipe.points[0]
    gamma = pipe.tower.christoffel
    idx = range(1, pipe.dim + 1)
    exact = np.array([[[float(evaluate(gamma.get(a, b, c), point)) for c in idx] for b in idx] for a in idx])
    errors = []
    for step in (settings.convergence_step, settings.convergence_step / 2):
        approx = fd_christoffel(pipe.spec, FloatPoint.from_rationals(point, step=step, tolerance=settings.tolerance))
        errors.append(float(np.max(np.abs(approx - exact))))
    if max(errors) < _ROUNDING_FLOOR:
        tally.record(True, "ratio")
        tally.notes.append(f"exact to rounding (errors {errors[0]:.2e}, {errors[1]:.2e})")
        return tally
    ratio = convergence_ratio((errors[0], errors[1]))
    tally.record(3.0 <= ratio <= 5.0, "ratio", f"{ratio:.3f} from errors {errors[0]:.3e}, {errors[1]:.3e}")
    tally.notes.append(f"error ratio {ratio:.3f}")
    return tally


@_check("oracle.transport", "parallel transport around a small loop reproduces the curvature operator")
def _oracle_transport(pipe: _Pipeline) -> _Tally:
    settings = pipe.cfg.oracle
    tally = _Tally()
    for plane in ((pipe.P, pipe.Q), (3, pipe.P), (1, 2)):
        approx = loop_transport(pipe.spec, plane, settings.eps, settings.transport_steps, step=settings.step)
        exact = np.array(pipe.tower.operator(*plane).tolist(), dtype=float)
        err = float(np.max(np.abs(approx - exact)))
        tally.record(err <= settings.transport_tolerance, plane, f"max deviation {err:.3e}")
    return tally


# %% Functions - check_names
def check_names() -> list[str]:
    r"""
    Every check name in execution order.

    Examples
    --------
    >>> from holcert import check_names
    >>> print(check_names()[:2])
    ['input.subalgebra', 'metric.origin_eta']

    """
    return list(CATALOGUE)


# %% Functions - select_checks
def select_checks(patterns: Sequence[str]) -> list[str]:
    r"""
    Expand check names and dotted prefixes, in catalogue order; no patterns selects everything.

    Raises
    ------
    InputError
        For a pattern that matches no check

    Examples
    --------
    >>> from holcert import select_checks
    >>> print(select_checks(["e140"]))
    ['e140.bracket', 'e140.tail']

    """
    if not patterns:
        return list(CATALOGUE)
    chosen: set[str] = set()
    for pattern in patterns:
        pattern = pattern.strip()
        matches = [name for name in CATALOGUE if name == pattern or name.startswith(pattern + ".")]
        if not matches:
            raise InputError(f'Unknown check "{pattern}".')
        chosen.update(matches)
    return [name for name in CATALOGUE if name in chosen]


# %% Functions - run_checks
def run_checks(cfg: RunConfig) -> CheckReport:
    r"""
    Run the selected checks in catalogue order.

    Parameters
    ----------
    cfg : RunConfig
        Validated configuration

    Returns
    -------
    CheckReport
        Results with witnesses, notes and dimensions

    Raises
    ------
    ConsistencyError, OracleError
        When the exact or the numeric pipeline itself breaks down

    Examples
    --------
    >>> from holcert import RunConfig, get_fixture, run_checks
    >>> report = run_checks(RunConfig(spec=get_fixture("F1").spec, fixture="F1", checks=("christoffel",)))
    >>> print(report.exit_code, len(report.checks))
    0 8

    """
    names = select_checks(cfg.checks)
    timings: dict[str, float] = {}
    pipe = _Pipeline(cfg, timings)
    results = []
    for name in names:
        with log_timing(f"check {name}", timings, log_level=LogLevel.L8):
            results.append(_run_one(CATALOGUE[name], pipe))
    dimensions: dict[str, int | None] = {
        "ambient": cfg.spec.dim,
        "expected": cfg.spec.N + 2 * cfg.spec.n + 1,
        "holonomy": pipe.span.dimension if pipe.computed("span") else None,
        "gh": pipe.certificate.expected_dimension if pipe.computed("certificate") else None,
    }
    report = CheckReport(
        tool={"name": "holcert", "version": ".".join(str(x) for x in version_info)},
        input_summary=_input_summary(cfg),
        notes=tuple(_notes(cfg)),
        dimensions=dimensions,
        checks=tuple(results),
        timings=timings,
    )
    logger.log(
        LogLevel.L3,
        "%d passed, %d failed, %d heuristic, %d skipped",
        report.tally(CheckStatus.passed),
        report.tally(CheckStatus.failed),
        report.tally(CheckStatus.heuristic_pass),
        report.tally(CheckStatus.skipped),
    )
    return report


def _run_one(check: CheckSpec, pipe: _Pipeline) -> CheckResult:
    try:
        tally = check.func(pipe)
    except _Skipped as exc:
        logger.log(LogLevel.L3, "%s: skipped (%s)", check.name, exc)
        return CheckResult(
            name=check.name,
            status=CheckStatus.skipped,
            location=check.location,
            count=0,
            detail=str(exc),
            statement=check.statement,
        )
    if tally.failures:
        status = CheckStatus.failed
        detail = f"{tally.failures} of {tally.count} instances failed"
    elif tally.heuristic:
        status = CheckStatus.heuristic_pass
        detail = f"no counterexample among {tally.count} instances"
    else:
        status = CheckStatus.passed
        detail = f"{tally.count} instances verified"
    if tally.notes:
        detail += "; " + "; ".join(tally.notes)
    logger.log(LogLevel.L1 if tally.failures else LogLevel.L3, "%s: %s (%s)", check.name, status.value, detail)
    if tally.failures:
        log_multiline(logger, LogLevel.L1, [f"  witness {w.index}: {w.value}" for w in tally.witnesses])
    return CheckResult(
        name=check.name,
        status=status,
        location=check.location,
        count=tally.count,
        detail=detail,
        witnesses=tuple(tally.witnesses),
        statement=check.statement,
    )


def _input_summary(cfg: RunConfig) -> dict[str, Any]:
    return {
        "fixture": cfg.fixture,
        "n": cfg.spec.n,
        "N": cfg.spec.N,
        "generators": [format_matrix(mat) for mat in cfg.spec.basis],
        "max_order": cfg.order,
        "mode": cfg.mode.value,
        "seed": cfg.oracle.seed,
        "random_seed": cfg.random_seed,
        "permutation": list(cfg.permutation) if cfg.permutation is not None else None,
        "corrupt_metric": cfg.corrupt_metric,
    }


def _notes(cfg: RunConfig) -> list[str]:
    notes = [TYPO_NOTE, SIGN_NOTE, DOMAIN_NOTE]
    if cfg.fixture is not None and cfg.fixture in FIXTURES:
        notes.append(f"Fixture {cfg.fixture}: {FIXTURES[cfg.fixture]().description}.")
    if cfg.order < cfg.spec.N:
        notes.append(f"Maximum order {cfg.order} is below N = {cfg.spec.N}, the holonomy span may be incomplete.")
    if cfg.corrupt_metric:
        notes.append("The metric was deliberately corrupted as a negative control, failures are expected.")
    return notes


# %% Functions - formatting helpers
def _format_index(index: Any) -> str:
    if isinstance(index, str):
        return index
    return ",".join(str(x) for x in index)


def _format_value(value: Any) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, Poly):
        return to_text(value)
    if isinstance(value, ImmutableMatrix):
        return str(format_matrix(value))
    if isinstance(value, float):
        return f"{value:.9g}"
    return format_rational(value)


def _mismatch(actual: Any, expected: Any) -> str:
    return f"{_format_value(actual)} (expected {_format_value(expected)})"


# %% Unit test
if __name__ == "__main__":
    unittest.main(module="holcert.tests.test_checks", exit=False)
    doctest.testmod(verbose=False)
