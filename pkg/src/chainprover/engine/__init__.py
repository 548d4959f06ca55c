"""Refutation-based entailment checking."""

from chainprover.engine.clausify import ClauseSet, clausify, nnf
from chainprover.engine.core import EngineConfig, EntailmentOutcome, Kind, check_entailment
from chainprover.engine.ground import ground, herbrand_terms
from chainprover.engine.sat import SatResult, sat

__all__ = [
    "ClauseSet", "EngineConfig", "EntailmentOutcome", "Kind", "SatResult", "check_entailment",
    "clausify", "ground", "herbrand_terms", "nnf", "sat",
]
