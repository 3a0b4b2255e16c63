"""Probability inequalities with independent numerical verification."""

from .dist import DistributionSpec, parse_spec
from .errors import InvalidInput
from .registry import REGISTRY, bound_ids
from .tails import BoundResult
from .verify import suite_run

__version__ = "0.1.0"

__all__ = ["BoundResult", "DistributionSpec", "InvalidInput", "REGISTRY", "bound_ids", "parse_spec", "suite_run"]
