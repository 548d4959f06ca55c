"""Translation and classification metrics: ER, EA, FOL-BLEU, LE, macro F1, confusion."""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, field

from chainprover.engine import EngineConfig, Kind, check_entailment
from chainprover.errors import (
    EmptyBatchError,
    EquivalenceUndecidedError,
    LengthMismatchError,
    NoExecutedInstancesError,
    TokenizeError,
)
from chainprover.logic.printer import print_formula
from chainprover.logic.syntax import Formula
from chainprover.verify import CATEGORIES, Category, TriLabel


@dataclass(frozen=True)
class ExecutionRecord:
    """Per-instance translation outcome used by ER and EA."""

    executed: bool
    first_attempt_match: bool | None = None


def execution_rate(results) -> float:
    results = list(results)
    if not results:
        raise EmptyBatchError("execution rate of an empty batch")
    return sum(r.executed for r in results) / len(results)


def execution_accuracy(results) -> float:
    executed = [r for r in results if r.executed]
    if not executed:
        raise NoExecutedInstancesError("no executed instances")
    return sum(bool(r.first_attempt_match) for r in executed) / len(executed)


# -- FOL-BLEU -------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(<->|<=>|->|=>|<~>|&&|\|\||[∀∃¬∧∨→↔⊕~&|!(),.:]|[^\W\d]\w*|\d\w*)", re.UNICODE)


def fol_tokens(text: str) -> list[str]:
    """Quantifiers, connectives, parentheses, commas and whole identifiers."""
    tokens, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise TokenizeError(f"cannot tokenize {text[pos:pos + 10]!r} at offset {pos}")
        tokens.append(m.group(1))
        pos = m.end()
    return tokens


def _ngrams(tokens: list[str], n: int) -> Counter:
    return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))


def fol_bleu(candidate: Formula | str, reference: Formula | str, max_n: int = 4) -> float:
    """Sentence BLEU over FOL tokens.

    Uniform weights up to ``max_n``; unigram precision is unsmoothed, higher
    orders use add-one smoothing; standard brevity penalty.
    """
    cand = fol_tokens(candidate if isinstance(candidate, str) else print_formula(candidate))
    ref = fol_tokens(reference if isinstance(reference, str) else print_formula(reference))
    if not cand or not ref:
        return 0.0
    log_p = 0.0
    for n in range(1, max_n + 1):
        c, r = _ngrams(cand, n), _ngrams(ref, n)
        matched = sum(min(k, r[g]) for g, k in c.items())
        total = sum(c.values())
        if n == 1:
            if matched == 0:
                return 0.0
            p = matched / total
        else:
            p = (matched + 1) / (total + 1)
        log_p += math.log(p) / max_n
    bp = 1.0 if len(cand) > len(ref) else math.exp(1 - len(ref) / len(cand))
    return min(1.0, bp * math.exp(log_p))


# -- logical equivalence --------------------------------------------------------

def logical_equivalence(f: Formula, g: Formula, cfg: EngineConfig = EngineConfig()) -> bool:
    forward = check_entailment([f], g, cfg)
    backward = check_entailment([g], f, cfg)
    if Kind.INDETERMINATE in (forward.kind, backward.kind) and not (
        Kind.NOT_ENTAILED in (forward.kind, backward.kind)
    ):
        raise EquivalenceUndecidedError(f"{forward.detail}; {backward.detail}")
    return forward.entailed and backward.entailed


# -- step labels ----------------------------------------------------------------

def macro_f1(predicted, gold) -> float:
    predicted, gold = list(predicted), list(gold)
    if len(predicted) != len(gold):
        raise LengthMismatchError(f"{len(predicted)} predictions vs {len(gold)} gold labels")
    if not gold:
        raise LengthMismatchError("macro F1 needs at least one label")
    scores = []
    for cls in TriLabel:
        tp = sum(p is cls and g is cls for p, g in zip(predicted, gold))
        n_pred = sum(p is cls for p in predicted)
        n_gold = sum(g is cls for g in gold)
        if n_pred == 0 and n_gold == 0:
            continue
        scores.append(2 * tp / (n_pred + n_gold))
    return sum(scores) / len(scores)


@dataclass
class Confusion:
    matrix: list[list[int]]
    labels: tuple[str, ...] = tuple(c.value for c in CATEGORIES)

    @property
    def total(self) -> int:
        return sum(map(sum, self.matrix))

    @property
    def accuracy(self) -> float:
        return sum(self.matrix[i][i] for i in range(len(self.labels))) / self.total

    def row_accuracy(self, category: Category) -> float | None:
        i = self.labels.index(category.value)
        n = sum(self.matrix[i])
        return self.matrix[i][i] / n if n else None


def category_confusion(predicted, gold) -> Confusion:
    """7×7 counts, rows are gold categories and columns predictions."""
    predicted, gold = list(predicted), list(gold)
    if len(predicted) != len(gold):
        raise LengthMismatchError(f"{len(predicted)} predictions vs {len(gold)} gold categories")
    if not gold:
        raise LengthMismatchError("confusion over an empty batch is undefined")
    index = {c: i for i, c in enumerate(CATEGORIES)}
    m = [[0] * len(CATEGORIES) for _ in CATEGORIES]
    for p, g in zip(predicted, gold):
        m[index[Category(g)]][index[Category(p)]] += 1
    return Confusion(m)


@dataclass
class MetricReport:
    execution_rate: float | None = None
    execution_accuracy: float | None = None
    fol_bleu: float | None = None
    logical_equivalence_rate: float | None = None
    macro_f1: float | None = None
    accuracy: float | None = None
    confusion: Confusion | None = None
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        out = {k: getattr(self, k) for k in (
            "execution_rate", "execution_accuracy", "fol_bleu", "logical_equivalence_rate",
            "macro_f1", "accuracy")}
        if self.confusion is not None:
            out["confusion"] = {"labels": list(self.confusion.labels), "matrix": self.confusion.matrix}
            out["per_category_accuracy"] = {
                c.value: self.confusion.row_accuracy(c) for c in CATEGORIES}
        out["notes"] = self.notes
        return out
