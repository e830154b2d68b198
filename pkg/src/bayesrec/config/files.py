"""YAML input files: instances, experiments and discrete distributions.

Every loader raises :class:`~bayesrec.model.errors.ConfigError` naming the file and the
offending field. Instance validation errors keep their own type, prefixed with the
file name.
"""

from __future__ import annotations

from dataclasses import fields, replace
from logging import getLogger
from pathlib import Path
from typing import TYPE_CHECKING, Any, TypeVar

import numpy as np
import yaml
from numpy.typing import NDArray

from bayesrec.model.errors import ConfigError
from bayesrec.model.instance import Instance, omega, validate_instance

if TYPE_CHECKING:
    from bayesrec.config.experiment_config import ExperimentConfig

logger = getLogger(__name__)

OMEGA_LIMIT = 1e12

_T = TypeVar("_T")


def _as_dict(value: Any, *, field_name: str = "document") -> dict[str, Any]:
    if value is None:
        return {}
    if not isinstance(value, dict):
        raise ConfigError(f"{field_name} must be a mapping, got {type(value).__name__}.")
    return value


def _as_int(value: Any, *, field_name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{field_name} must be an integer, got {value!r}.")
    return value


def _as_float(value: Any, *, field_name: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{field_name} must be a number, got {value!r}.")
    return float(value)


def _as_bool(value: Any, *, field_name: str) -> bool:
    if not isinstance(value, bool):
        raise ConfigError(f"{field_name} must be true or false, got {value!r}.")
    return value


def _as_float_list(
    value: Any, *, field_name: str, length: int | None = None
) -> list[float]:
    if not isinstance(value, list) or not value:
        raise ConfigError(f"{field_name} must be a non-empty list of numbers.")
    items = [_as_float(x, field_name=f"{field_name}[{k}]") for k, x in enumerate(value)]
    if length is not None and len(items) != length:
        raise ConfigError(f"{field_name} has {len(items)} entries, expected {length}.")
    return items


def _apply_overrides(cfg: _T, data: dict[str, Any], *, section: str) -> _T:
    """Return ``cfg`` with the scalar fields present in ``data`` replaced."""
    known = {f.name: f for f in fields(cfg)}  # type: ignore[arg-type]
    updates: dict[str, Any] = {}
    for key, value in data.items():
        name = f"{section}.{key}"
        if key not in known:
            raise ConfigError(f"unknown field {name}; expected one of {sorted(known)}.")
        current = getattr(cfg, key)
        if isinstance(current, bool):
            updates[key] = _as_bool(value, field_name=name)
        elif isinstance(current, int):
            updates[key] = _as_int(value, field_name=name)
        elif isinstance(current, float):
            updates[key] = _as_float(value, field_name=name)
        else:
            raise ConfigError(f"{name} cannot be set from YAML.")
    if not updates:
        return cfg
    return replace(cfg, **updates)  # type: ignore[type-var]


def load_yaml(path: Path) -> dict[str, Any]:
    """Load a YAML mapping safely. Returns {} for empty files.

    Raises:
        FileNotFoundError: ``path`` does not exist.
        ConfigError: the file is not valid YAML or not a mapping.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"{path}: no such file.")
    text = path.read_text(encoding="utf-8")
    if not text.strip():
        return {}
    try:
        loaded = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f"{path}:{mark.line + 1}" if mark is not None else str(path)
        raise ConfigError(f"{where}: invalid YAML ({getattr(exc, 'problem', exc)}).") from exc
    try:
        return _as_dict(loaded)
    except ConfigError as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def instance_from_dict(data: dict[str, Any]) -> Instance:
    """Build and validate an instance from its YAML mapping.

    Raises:
        ConfigError: a field is missing or malformed, or some ``|omega|`` exceeds 1e12.
        PriorNotSimplex, AssumptionOneViolated, AssumptionTwoViolated: from validation.
    """
    if "m" not in data:
        raise ConfigError("missing field m.")
    m = _as_int(data["m"], field_name="m")
    if m < 1:
        raise ConfigError(f"m must be positive, got {m}.")
    for required in ("prior", "utility_gap"):
        if required not in data:
            raise ConfigError(f"missing field {required}.")
    prior = _as_float_list(data["prior"], field_name="prior", length=m)
    gap = _as_float_list(data["utility_gap"], field_name="utility_gap", length=m)
    belief = data.get("user_belief")
    value = data.get("platform_value")
    try:
        inst = Instance.from_lists(
            prior=prior,
            utility_gap=gap,
            user_belief=None
            if belief is None
            else _as_float_list(belief, field_name="user_belief", length=m),
            platform_value=None
            if value is None
            else _as_float_list(value, field_name="platform_value", length=m),
        )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    validate_instance(inst)
    w = omega(inst)
    if np.any(np.abs(w) > OMEGA_LIMIT):
        raise ConfigError(f"|omega| must not exceed {OMEGA_LIMIT:g}, got {w.tolist()}.")
    return inst


def load_instance(path: Path) -> Instance:
    """Load an instance file (keys ``m``, ``prior``, ``utility_gap``, optional
    ``user_belief`` and ``platform_value``)."""
    path = Path(path)
    data = load_yaml(path)
    try:
        inst = instance_from_dict(data)
    except ValueError as exc:
        raise type(exc)(f"{path}: {exc}") from exc
    logger.debug("Loaded instance with m=%d from %s", inst.m, path)
    return inst


def save_instance(inst: Instance, path: Path, *, comment: str | None = None) -> Path:
    """Write ``inst`` as a YAML instance file, optionally under a comment header."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    header = "".join(f"# {line}\n" for line in comment.splitlines()) if comment else ""
    body = yaml.safe_dump(inst.to_dict(), sort_keys=False, default_flow_style=None)
    path.write_text(header + body, encoding="utf-8", newline="\n")
    logger.info("Instance saved to %s", path)
    return path


def load_distribution(path: Path) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Load a discrete distribution file with keys ``support`` and ``probabilities``."""
    path = Path(path)
    data = load_yaml(path)
    try:
        for required in ("support", "probabilities"):
            if required not in data:
                raise ConfigError(f"missing field {required}.")
        support = _as_float_list(data["support"], field_name="support")
        probs = _as_float_list(
            data["probabilities"], field_name="probabilities", length=len(support)
        )
    except ConfigError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    return np.array(support), np.array(probs)


def experiment_from_dict(data: dict[str, Any], *, base_dir: Path) -> ExperimentConfig:
    """Build an :class:`ExperimentConfig`; relative paths resolve against ``base_dir``."""

    # Local import: experiment_config pulls in the policies, which import this package.
    from bayesrec.config.experiment_config import ExperimentConfig, RandomInstanceSpec
    from bayesrec.config.types import PolicyKind
    from bayesrec.policies.loglog_search import LogLogConfig
    from bayesrec.policies.poly_search import PolySearchConfig
    from bayesrec.solver.query import SolverConfig

    known = {
        "instance", "generator", "policy", "horizons", "seeds", "master_seed",
        "output_dir", "workers", "log_commits", "loglog", "poly", "solver",
    }  # fmt: skip
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigError(f"unknown field(s) {unknown}; expected some of {sorted(known)}.")

    if "policy" not in data:
        raise ConfigError("missing field policy.")
    try:
        policy = PolicyKind(data["policy"])
    except ValueError as exc:
        choices = [k.value for k in PolicyKind]
        raise ConfigError(f"policy must be one of {choices}, got {data['policy']!r}.") from exc

    if "horizons" not in data or not isinstance(data["horizons"], list):
        raise ConfigError("horizons must be a list of integers.")
    horizons = [
        _as_int(h, field_name=f"horizons[{k}]") for k, h in enumerate(data["horizons"])
    ]

    instance_path: Path | None = None
    if data.get("instance") is not None:
        if not isinstance(data["instance"], str):
            raise ConfigError(f"instance must be a path, got {data['instance']!r}.")
        instance_path = base_dir / data["instance"]

    generator: RandomInstanceSpec | None = None
    if data.get("generator") is not None:
        gen = _as_dict(data["generator"], field_name="generator")
        if "m" not in gen:
            raise ConfigError("missing field generator.m.")
        generator = _apply_overrides(
            RandomInstanceSpec(m=_as_int(gen["m"], field_name="generator.m")),
            {k: v for k, v in gen.items() if k != "m"},
            section="generator",
        )

    solver = _apply_overrides(
        SolverConfig(), _as_dict(data.get("solver"), field_name="solver"), section="solver"
    )
    poly = _apply_overrides(
        PolySearchConfig(solver=solver),
        _as_dict(data.get("poly"), field_name="poly"),
        section="poly",
    )
    loglog = _apply_overrides(
        LogLogConfig(), _as_dict(data.get("loglog"), field_name="loglog"), section="loglog"
    )

    output_dir = data.get("output_dir", "runs")
    if not isinstance(output_dir, str):
        raise ConfigError(f"output_dir must be a path, got {output_dir!r}.")

    return ExperimentConfig(
        policy=policy,
        horizons=horizons,
        seeds=_as_int(data.get("seeds", 1), field_name="seeds"),
        master_seed=_as_int(data.get("master_seed", 0), field_name="master_seed"),
        output_dir=base_dir / output_dir,
        instance_path=instance_path,
        generator=generator,
        workers=_as_int(data.get("workers", 1), field_name="workers"),
        log_commits=_as_bool(data.get("log_commits", False), field_name="log_commits"),
        loglog=loglog,
        poly=poly,
    )


def load_experiment(path: Path) -> ExperimentConfig:
    """Load an experiment file; ``instance`` and ``output_dir`` are relative to it."""
    path = Path(path)
    data = load_yaml(path)
    try:
        return experiment_from_dict(data, base_dir=path.parent)
    except ConfigError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
