"""Entailment checking by refutation, with internal and external backends."""

from __future__ import annotations

import enum
import logging
import math
import os
import shlex
import subprocess
import tempfile
import time
from dataclasses import dataclass
from functools import lru_cache

from chainprover.engine.clausify import clausify
from chainprover.engine.ground import ground
from chainprover.engine.sat import SatTimeout, sat
from chainprover.errors import EngineError, GroundingBudgetExceeded
from chainprover.logic.normalize import signature_of
from chainprover.logic.syntax import Formula, Not
from chainprover.tptp import SzsStatus, TptpProblem, emit_problem, parse_szs

log = logging.getLogger(__name__)

KILL_GRACE_S = 0.5


class Kind(enum.Enum):
    ENTAILED = "Entailed"
    NOT_ENTAILED = "NotEntailed"
    INDETERMINATE = "Indeterminate"
    ENGINE_ERROR = "EngineError"


@dataclass(frozen=True)
class EntailmentOutcome:
    kind: Kind
    detail: str = ""
    resource_limited: bool = False

    @property
    def entailed(self) -> bool:
        return self.kind is Kind.ENTAILED


@dataclass(frozen=True)
class EngineConfig:
    backend: str = "internal"
    prover_command: str = ""
    timeout_ms: int = 10_000
    skolem_depth_bound: int = 1
    max_ground_clauses: int = 200_000
    # lenient: undecided queries count as not entailed; strict: they abort the instance
    policy: str = "lenient"

    def __post_init__(self):
        if self.backend not in ("internal", "external"):
            raise ValueError(f"unknown backend {self.backend!r}")
        if self.timeout_ms <= 0:
            raise ValueError("timeout_ms must be positive")
        if self.skolem_depth_bound < 0:
            raise ValueError("skolem_depth_bound must be non-negative")
        if self.max_ground_clauses <= 0:
            raise ValueError("max_ground_clauses must be positive")
        if self.backend == "external" and not self.prover_command.strip():
            raise ValueError("external backend requires prover_command")
        if self.policy not in ("lenient", "strict"):
            raise ValueError(f"unknown policy {self.policy!r}")


def check_entailment(axioms, conjecture: Formula, cfg: EngineConfig = EngineConfig()) -> EntailmentOutcome:
    """Decide whether ``axioms`` entail ``conjecture`` by refuting its negation."""
    axioms = tuple(axioms)
    if cfg.backend == "external":
        return _external(axioms, conjecture, cfg)
    return _internal(axioms, conjecture, cfg)


@lru_cache(maxsize=65536)
def _internal(axioms: tuple, conjecture: Formula, cfg: EngineConfig) -> EntailmentOutcome:
    formulas = list(axioms) + [Not(conjecture)]
    cs = clausify(formulas)
    functions = cs.skolem_functions
    depth = cfg.skolem_depth_bound if functions else 0
    try:
        clauses = ground(cs, signature_of(formulas), depth, cfg.max_ground_clauses)
    except GroundingBudgetExceeded as e:
        raise EngineError(str(e)) from e
    try:
        result = sat(clauses, timeout_s=cfg.timeout_ms / 1000)
    except SatTimeout:
        return EntailmentOutcome(Kind.INDETERMINATE, f"search exceeded {cfg.timeout_ms} ms", True)
    if not result.satisfiable:
        return EntailmentOutcome(Kind.ENTAILED, "ground refutation found")
    if functions:
        return EntailmentOutcome(
            Kind.INDETERMINATE, f"satisfiable at Skolem depth bound {depth}; Herbrand universe is infinite")
    return EntailmentOutcome(Kind.NOT_ENTAILED, "Herbrand model found")


_SZS_KIND = {
    SzsStatus.THEOREM: Kind.ENTAILED,
    SzsStatus.COUNTER_SATISFIABLE: Kind.NOT_ENTAILED,
    SzsStatus.SATISFIABLE: Kind.NOT_ENTAILED,
    SzsStatus.TIMEOUT: Kind.INDETERMINATE,
    SzsStatus.GAVE_UP: Kind.INDETERMINATE,
}


def prover_argv(cfg: EngineConfig, path: str) -> list[str]:
    timeout_s = max(1, math.ceil(cfg.timeout_ms / 1000))
    return shlex.split(cfg.prover_command.replace("{timeout_s}", str(timeout_s))) + [path]


def _external(axioms: tuple, conjecture: Formula, cfg: EngineConfig) -> EntailmentOutcome:
    text = emit_problem(TptpProblem.from_premises(axioms, conjecture))
    fd, path = tempfile.mkstemp(suffix=".p", prefix="chainprover-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        argv = prover_argv(cfg, path)
        start = time.monotonic()
        try:
            proc = subprocess.run(argv, capture_output=True, text=True,
                                  timeout=cfg.timeout_ms / 1000 + KILL_GRACE_S)
        except subprocess.TimeoutExpired:
            return EntailmentOutcome(Kind.INDETERMINATE, f"prover killed after {cfg.timeout_ms} ms", True)
        except OSError as e:
            raise EngineError(f"cannot launch prover {argv[0]!r}: {e}") from e
        log.debug("prover finished in %.3fs with exit %s", time.monotonic() - start, proc.returncode)
    finally:
        os.unlink(path)

    szs = parse_szs(proc.stdout)
    if szs.status is SzsStatus.UNPARSED:
        raise EngineError(f"no SZS status line (exit {proc.returncode}): {proc.stderr.strip()[:200]}")
    if szs.status is SzsStatus.ERROR:
        raise EngineError(f"prover reported error: {szs.raw_line}")
    kind = _SZS_KIND[szs.status]
    return EntailmentOutcome(kind, szs.raw_line, resource_limited=kind is Kind.INDETERMINATE)
