r"""
Run configuration: the JSON file format, its validation and command line overrides.

A configuration names its input one of three ways: a built-in fixture, an explicit n with
generator matrices, or a seeded random one-dimensional h.  Rationals are written "p/q" and
matrices as row-major nested lists.

Notes
-----
#.  Written for the holcert library.
"""

# %% Imports
from __future__ import annotations

from dataclasses import dataclass, field, replace
import doctest
import json
import logging
from pathlib import Path
from typing import Any, Mapping, Sequence
import unittest

from holcert.enums import EnumerationMode, LogLevel
from holcert.fixtures import get_fixture, random_h
from holcert.metric import HSpec
from holcert.paths import resolve_path
from holcert.utils import InputError, parse_matrix

# %% Globals
logger = logging.getLogger(__name__)

_TOP_KEYS = frozenset(
    {
        "fixture",
        "n",
        "generators",
        "random",
        "max_order",
        "mode",
        "checks",
        "require_subalgebra",
        "permutation",
        "probe_samples",
        "oracle",
        "output",
        "debug",
    }
)


# %% Classes - OracleSettings
@dataclass(frozen=True)
class OracleSettings:
    r"""
    Numeric oracle settings.

    Parameters
    ----------
    step : float
        Central difference step
    convergence_step : float
        Coarse step of the second-order convergence test, which compares it with its half
    tolerance : float
        Comparison tolerance, relative to max(|exact|, relative_floor)
    relative_floor : float
        Magnitude below which the tolerance acts as an absolute bound
    eps : float
        Side of the transport loop
    transport_steps : int
        Runge-Kutta steps around the whole loop
    transport_tolerance : float
        Absolute bound on the transport comparison
    points : int
        Number of random sample points
    seed : int
        Seed of the sample points and the irreducibility probe
    """

    step: float = 1e-4
    convergence_step: float = 1e-2
    tolerance: float = 1e-6
    relative_floor: float = 1.0
    eps: float = 1e-3
    transport_steps: int = 400
    transport_tolerance: float = 5e-3
    points: int = 3
    seed: int = 0

    def __post_init__(self) -> None:
        for name in ("step", "convergence_step", "tolerance", "relative_floor", "eps", "transport_tolerance"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or isinstance(value, bool) or value <= 0:
                raise InputError(f'Oracle setting "{name}" must be a positive number, got {value!r}.')
        if self.transport_steps < 100:
            raise InputError(f"Oracle setting \"transport_steps\" must be at least 100, got {self.transport_steps}.")
        if self.points < 0:
            raise InputError(f'Oracle setting "points" must be non-negative, got {self.points}.')


# %% Classes - RunConfig
@dataclass(frozen=True)
class RunConfig:
    r"""
    A validated run configuration.

    Examples
    --------
    >>> from holcert import RunConfig, get_fixture
    >>> cfg = RunConfig(spec=get_fixture("F1").spec, fixture="F1")
    >>> print(cfg.order, cfg.mode.value)
    2 pruned

    """

    spec: HSpec
    fixture: str | None = None
    max_order: int | None = None
    mode: EnumerationMode = EnumerationMode.pruned
    checks: tuple[str, ...] = ()
    require_subalgebra: bool = True
    permutation: tuple[int, ...] | None = None
    probe_samples: int = 4
    oracle: OracleSettings = field(default_factory=OracleSettings)
    output_json: Path | None = None
    output_text: Path | None = None
    corrupt_metric: bool = False
    random_seed: int | None = None

    def __post_init__(self) -> None:
        if self.max_order is not None and self.max_order < 0:
            raise InputError(f"max_order must be non-negative, got {self.max_order}.")
        if self.probe_samples < 0:
            raise InputError(f"probe_samples must be non-negative, got {self.probe_samples}.")
        if self.permutation is not None and sorted(self.permutation) != list(range(1, self.spec.N + 1)):
            raise InputError(f"permutation {list(self.permutation)} is not a permutation of 1..{self.spec.N}.")
        if self.require_subalgebra:
            defect = self.spec.subalgebra_defect()
            if defect:
                alpha, beta = defect[0]
                raise InputError(f"The generators do not span a subalgebra: [A_{alpha}, A_{beta}] leaves their span.")

    @property
    def order(self) -> int:
        r"""Effective maximum derivative order, N+1 unless configured."""
        return self.spec.N + 1 if self.max_order is None else self.max_order


# %% Functions - parse_permutation
def parse_permutation(value: Any, N: int) -> tuple[int, ...] | None:  # pylint: disable=invalid-name
    r"""
    Read a permutation given as "reverse", a comma separated string or a list of 1-based positions.

    Examples
    --------
    >>> from holcert import parse_permutation
    >>> print(parse_permutation("reverse", 3))
    (3, 2, 1)

    """
    if value is None:
        return None
    if isinstance(value, str):
        text = value.strip().lower()
        if text == "reverse":
            return tuple(range(N, 0, -1))
        try:
            return tuple(int(x) for x in text.split(","))
        except ValueError:
            raise InputError(f'Cannot parse permutation "{value}".') from None
    if isinstance(value, (list, tuple)) and all(isinstance(x, int) and not isinstance(x, bool) for x in value):
        return tuple(value)
    raise InputError(f"Cannot parse permutation {value!r}.")


# %% Functions - config_from_dict
def config_from_dict(data: Mapping[str, Any], *, base_dir: Path | None = None) -> RunConfig:
    r"""
    Validate a decoded configuration mapping.

    Parameters
    ----------
    data : dict
        Decoded JSON content
    base_dir : pathlib.Path, optional
        Folder that relative output paths are resolved against

    Examples
    --------
    >>> from holcert import config_from_dict
    >>> cfg = config_from_dict({"n": 2, "generators": [[["0", "-1/1"], ["1", "0"]]], "mode": "exhaustive"})
    >>> print(cfg.spec.N, cfg.mode.value)
    1 exhaustive

    """
    if not isinstance(data, Mapping):
        raise InputError("The configuration must be a JSON object.")
    unknown = sorted(set(data) - _TOP_KEYS)
    if unknown:
        raise InputError(f"Unknown configuration keys: {', '.join(unknown)}.")
    spec, fixture, random_seed = _read_input(data)
    mode_text = data.get("mode", EnumerationMode.pruned.value)
    try:
        mode = EnumerationMode(mode_text)
    except ValueError:
        raise InputError(f'Unknown mode "{mode_text}", expected "pruned" or "exhaustive".') from None
    checks = data.get("checks", [])
    if isinstance(checks, str):
        checks = [checks]
    if not isinstance(checks, list) or not all(isinstance(x, str) for x in checks):
        raise InputError('"checks" must be a list of check names or prefixes.')
    output = data.get("output", {})
    debug = data.get("debug", {})
    if not isinstance(output, Mapping) or not isinstance(debug, Mapping):
        raise InputError('"output" and "debug" must be JSON objects.')
    cfg = RunConfig(
        spec=spec,
        fixture=fixture,
        max_order=_optional_int(data.get("max_order"), "max_order"),
        mode=mode,
        checks=tuple(checks),
        require_subalgebra=bool(data.get("require_subalgebra", True)),
        permutation=parse_permutation(data.get("permutation"), spec.N),
        probe_samples=_optional_int(data.get("probe_samples", 4), "probe_samples") or 0,
        oracle=_read_oracle(data.get("oracle", {})),
        output_json=resolve_path(output.get("json"), base_dir),
        output_text=resolve_path(output.get("text"), base_dir),
        corrupt_metric=bool(debug.get("corrupt_metric", False)),
        random_seed=random_seed,
    )
    logger.log(LogLevel.L5, "Configured n=%d, N=%d, max order %d, %s mode", spec.n, spec.N, cfg.order, cfg.mode.value)
    return cfg


# %% Functions - parse_config
def parse_config(path: Path | str) -> RunConfig:
    r"""
    Read and validate a JSON configuration file.

    Raises
    ------
    InputError
        For a missing or malformed file, or invalid content
    """
    path = Path(path)
    if not path.is_file():
        raise InputError(f'Configuration file "{path}" does not exist.')
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InputError(f'Configuration file "{path}" is not valid JSON: {exc}') from None
    return config_from_dict(data, base_dir=path.parent)


# %% Functions - apply_overrides
def apply_overrides(
    cfg: RunConfig,
    *,
    fixture: str | None = None,
    max_order: int | None = None,
    mode: str | None = None,
    checks: Sequence[str] | None = None,
    seed: int | None = None,
    permutation: str | None = None,
    corrupt_metric: bool | None = None,
    output_json: Path | None = None,
    output_text: Path | None = None,
) -> RunConfig:
    r"""
    Apply command line options on top of a configuration, None meaning "keep".

    A new fixture replaces the generators; a new seed reseeds the oracle and, for a random input,
    redraws h.

    Examples
    --------
    >>> from holcert import RunConfig, apply_overrides, get_fixture
    >>> cfg = apply_overrides(RunConfig(spec=get_fixture("F0").spec, fixture="F0"), fixture="F1", max_order=1)
    >>> print(cfg.fixture, cfg.spec.N, cfg.order)
    F1 1 1

    """
    changes: dict[str, Any] = {}
    spec = cfg.spec
    if fixture is not None:
        fix = get_fixture(fixture)
        spec = fix.spec
        changes.update(spec=spec, fixture=fix.name, random_seed=None)
    if seed is not None:
        changes["oracle"] = replace(cfg.oracle, seed=seed)
        if fixture is None and cfg.random_seed is not None:
            spec = random_h(cfg.spec.n, seed).spec
            changes.update(spec=spec, random_seed=seed)
    if max_order is not None:
        changes["max_order"] = max_order
    if mode is not None:
        try:
            changes["mode"] = EnumerationMode(mode)
        except ValueError:
            raise InputError(f'Unknown mode "{mode}", expected "pruned" or "exhaustive".') from None
    if checks is not None:
        changes["checks"] = tuple(checks)
    if permutation is not None:
        changes["permutation"] = parse_permutation(permutation, spec.N)
    elif "spec" in changes and cfg.permutation is not None and len(cfg.permutation) != spec.N:
        changes["permutation"] = None
    if corrupt_metric is not None:
        changes["corrupt_metric"] = corrupt_metric
    if output_json is not None:
        changes["output_json"] = output_json
    if output_text is not None:
        changes["output_text"] = output_text
    return replace(cfg, **changes)


# %% Functions - helpers
def _read_input(data: Mapping[str, Any]) -> tuple[HSpec, str | None, int | None]:
    sources = [key for key in ("fixture", "generators", "random") if key in data]
    if len(sources) != 1:
        raise InputError('Give exactly one of "fixture", "generators" (with "n") or "random".')
    if "fixture" in data:
        fix = get_fixture(str(data["fixture"]))
        return fix.spec, fix.name, None
    if "random" in data:
        settings = data["random"]
        if not isinstance(settings, Mapping) or "n" not in settings:
            raise InputError('"random" must be an object with "n" and optionally "seed".')
        seed = _optional_int(settings.get("seed", 0), "random.seed") or 0
        return random_h(_required_int(settings["n"], "random.n"), seed).spec, None, seed
    n = _required_int(data.get("n"), "n")
    generators = data["generators"]
    if not isinstance(generators, list):
        raise InputError('"generators" must be a list of matrices.')
    matrices = [parse_matrix(gen, size=n, name=f"Generator {k + 1}") for (k, gen) in enumerate(generators)]
    return HSpec(n=n, basis=tuple(matrices)), None, None


def _read_oracle(data: Any) -> OracleSettings:
    if not isinstance(data, Mapping):
        raise InputError('"oracle" must be a JSON object.')
    known = {f for f in OracleSettings.__dataclass_fields__}  # pylint: disable=no-member
    unknown = sorted(set(data) - known)
    if unknown:
        raise InputError(f"Unknown oracle settings: {', '.join(unknown)}.")
    return OracleSettings(**data)


def _optional_int(value: Any, name: str) -> int | None:
    if value is None:
        return None
    return _required_int(value, name)


def _required_int(value: Any, name: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise InputError(f'"{name}" must be an integer, got {value!r}.')
    return value


# %% Unit test
if __name__ == "__main__":
    unittest.main(module="holcert.tests.test_config", exit=False)
    doctest.testmod(verbose=False)
