"""Enumerations, configuration dataclasses and YAML input files.

``ExperimentConfig`` and ``RandomInstanceSpec`` live in
:mod:`bayesrec.config.experiment_config`; they are not re-exported here because
they depend on the policies, which themselves import this package.
"""

from .files import (
    instance_from_dict,
    load_distribution,
    load_experiment,
    load_instance,
    load_yaml,
    save_instance,
)
from .types import PolicyKind, Verdict, VerifySuite

__all__ = [
    "PolicyKind",
    "Verdict",
    "VerifySuite",
    "instance_from_dict",
    "load_distribution",
    "load_experiment",
    "load_instance",
    "load_yaml",
    "save_instance",
]
