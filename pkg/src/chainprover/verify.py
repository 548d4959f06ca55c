"""Step labeling, proof-path construction and six-way chain classification."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from chainprover.engine import EngineConfig, Kind, check_entailment
from chainprover.errors import (
    ContradictionError,
    EngineError,
    IndeterminateError,
    LabelMismatchError,
)
from chainprover.logic.printer import print_formula
from chainprover.logic.syntax import Formula, Not


class TriLabel(enum.Enum):
    TRUE = "True"
    FALSE = "False"
    UNKNOWN = "Unknown"

    @classmethod
    def of(cls, value: bool) -> "TriLabel":
        return cls.TRUE if value else cls.FALSE


class Category(enum.Enum):
    T1 = "T1"
    T2 = "T2"
    T3 = "T3"
    T4 = "T4"
    F1 = "F1"
    F2 = "F2"
    ERROR = "Error"


CATEGORIES = tuple(Category)


@dataclass(frozen=True)
class Instance:
    id: str
    premises: tuple[Formula, ...]
    conclusion: Formula
    label: bool
    steps: tuple[Formula, ...] = ()
    answer: bool = True
    source_text: dict | None = field(default=None, compare=False)

    def __post_init__(self):
        if not self.premises:
            raise ValueError("an instance needs at least one premise")


@dataclass
class VerificationReport:
    id: str
    category: Category
    step_labels: list[TriLabel] | None = None
    answer_correct: bool | None = None
    proof_path: list[int] | None = None
    has_valid_proof_path: bool | None = None
    diagnostics: list[tuple[str, str]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "category": self.category.value,
            "step_labels": None if self.step_labels is None else [l.value for l in self.step_labels],
            "answer_correct": self.answer_correct,
            "proof_path": self.proof_path,
            "has_valid_proof_path": self.has_valid_proof_path,
            "diagnostics": [list(d) for d in self.diagnostics],
        }


def _entails(premises, s: Formula, cfg: EngineConfig, diagnostics) -> bool:
    out = check_entailment(premises, s, cfg)
    if out.kind is Kind.INDETERMINATE:
        msg = f"undecided query for {print_formula(s)}: {out.detail}"
        if cfg.policy == "strict":
            raise IndeterminateError(msg)
        if diagnostics is not None:
            diagnostics.append(("resource_limited" if out.resource_limited else "depth_bound", msg))
    return out.entailed


def verify_single_statement(premises, s: Formula, cfg: EngineConfig = EngineConfig(),
                            diagnostics: list | None = None) -> TriLabel:
    """Three-valued provability of ``s`` from ``premises``.

    Raises ContradictionError when both ``s`` and its negation follow.
    """
    premises = tuple(premises)
    proves = _entails(premises, s, cfg, diagnostics)
    refutes = _entails(premises, Not(s), cfg, diagnostics)
    if proves and refutes:
        raise ContradictionError("premises are contradictory")
    if proves:
        return TriLabel.TRUE
    if refutes:
        return TriLabel.FALSE
    return TriLabel.UNKNOWN


def verify_reasoning_steps(inst: Instance, cfg: EngineConfig = EngineConfig(),
                           diagnostics: list | None = None) -> tuple[bool, list[TriLabel]]:
    expected = TriLabel.of(inst.label)
    got = verify_single_statement(inst.premises, inst.conclusion, cfg, diagnostics)
    if got is not expected:
        raise LabelMismatchError(expected, got)
    labels = [verify_single_statement(inst.premises, s, cfg, diagnostics) for s in inst.steps]
    return inst.label == inst.answer, labels


def verify_proof_path(inst: Instance, step_labels, cfg: EngineConfig = EngineConfig(),
                      diagnostics: list | None = None) -> tuple[bool, list[int]]:
    """Greedy in-order path of True steps that each add something new."""
    path: list[int] = []
    for i, (step, label) in enumerate(zip(inst.steps, step_labels)):
        if label is not TriLabel.TRUE:
            continue
        current = [inst.steps[j] for j in path]
        try:
            novelty = verify_single_statement(current, step, cfg, diagnostics)
        except ContradictionError:
            novelty = None
        if novelty is TriLabel.UNKNOWN:
            path.append(i)
        elif novelty is not TriLabel.TRUE and diagnostics is not None:
            diagnostics.append(("path_conflict", f"step {i} conflicts with the path so far; skipped"))
    try:
        decided = verify_single_statement([inst.steps[j] for j in path], inst.conclusion, cfg, diagnostics)
    except ContradictionError:
        if diagnostics is not None:
            diagnostics.append(("path_conflict", "proof path is contradictory"))
        return False, path
    return decided is TriLabel.of(inst.label), path


def classify_chain(answer_correct: bool, step_labels, has_valid_proof_path: bool) -> Category:
    clean = all(l is TriLabel.TRUE for l in step_labels)
    if not answer_correct:
        return Category.F1 if clean else Category.F2
    if has_valid_proof_path:
        return Category.T1 if clean else Category.T2
    return Category.T3 if clean else Category.T4


def verify_instance(inst: Instance, cfg: EngineConfig = EngineConfig()) -> VerificationReport:
    diagnostics: list[tuple[str, str]] = []
    try:
        answer_correct, labels = verify_reasoning_steps(inst, cfg, diagnostics)
        valid, path = verify_proof_path(inst, labels, cfg, diagnostics)
    except LabelMismatchError as e:
        diagnostics.append(("label_mismatch", str(e)))
        return VerificationReport(inst.id, Category.ERROR, diagnostics=diagnostics)
    except ContradictionError:
        diagnostics.append(("contradiction", "contradictory premises"))
        return VerificationReport(inst.id, Category.ERROR, diagnostics=diagnostics)
    except IndeterminateError as e:
        diagnostics.append(("indeterminate", str(e)))
        return VerificationReport(inst.id, Category.ERROR, diagnostics=diagnostics)
    except EngineError as e:
        diagnostics.append(("engine_error", str(e)))
        return VerificationReport(inst.id, Category.ERROR, diagnostics=diagnostics)
    return VerificationReport(
        id=inst.id,
        category=classify_chain(answer_correct, labels, valid),
        step_labels=labels,
        answer_correct=answer_correct,
        proof_path=path,
        has_valid_proof_path=valid,
        diagnostics=diagnostics,
    )
