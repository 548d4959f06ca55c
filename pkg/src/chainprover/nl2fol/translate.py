"""Prompt assembly, LLM output parsing and the bounded regeneration loop."""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from chainprover.engine import EngineConfig
from chainprover.errors import (
    ChainProverError,
    EngineError,
    EquivalenceUndecidedError,
    MissingIndexError,
    TemplateMissingError,
    TransportError,
    TranslationFailed,
    UnparseableFormulaError,
)
from chainprover.logic import normalize_all, parse_formula, signature_of
from chainprover.logic.syntax import Formula
from chainprover.metrics import logical_equivalence
from chainprover.nl2fol.llm import ChatClient
from chainprover.tptp import repair_with_log, to_fof_line
from chainprover.verify import TriLabel, verify_single_statement

log = logging.getLogger(__name__)

MAX_ATTEMPTS = 3

_SECTION = re.compile(r"^\s*(premises|conclusions)\s*:?\s*(.*)$", re.IGNORECASE)
_INDEX = re.compile(r"^\s*\((\d+)\)")


def load_template(path: str | Path | None = None) -> str:
    try:
        if path is not None:
            return Path(path).read_text(encoding="utf-8")
        return resources.files("chainprover.nl2fol").joinpath("templates/nl2fol.txt").read_text(encoding="utf-8")
    except (FileNotFoundError, OSError) as e:
        raise TemplateMissingError(f"prompt template not found: {e}") from e


def _numbered(sentences) -> str:
    return "\n".join(f"({i}) {s}" for i, s in enumerate(sentences, start=1))


def build_prompt(premises, steps, conclusion: str, template: str | None = None) -> str:
    """Fill the template; steps and the candidate conclusion share one numbered list."""
    if not premises:
        raise ValueError("at least one premise is required")
    template = load_template() if template is None else template
    return (template
            .replace("{premises}", _numbered(premises))
            .replace("{conclusions}", _numbered([*steps, conclusion])))


@dataclass
class ParsedOutput:
    sections: dict[str, dict[int, Formula]]
    texts: dict[str, dict[int, str]]
    repairs: list[str] = field(default_factory=list)

    def ordered(self, section: str) -> list[Formula]:
        items = self.sections.get(section, {})
        return [items[i] for i in sorted(items)]


def parse_llm_output(text: str, expected: dict[str, int] | None = None) -> ParsedOutput:
    """Parse ``formula ::: (k) sentence`` lines grouped under section headers.

    ``expected`` maps section name to the number of indices that must be
    present; without it each section must cover 1..max index.
    """
    section = "premises"
    seen: dict[str, list[int]] = {}
    out = ParsedOutput({}, {})
    for raw in text.splitlines():
        line = raw.strip()
        m = _SECTION.match(line)
        if m:
            section = m.group(1).lower()
            out.sections.setdefault(section, {})
            line = m.group(2)
        if ":::" not in line:
            continue
        left, right = line.split(":::", 1)
        idx = _INDEX.match(right)
        if not idx:
            raise UnparseableFormulaError(raw, ValueError("missing '(index)' after ':::'"))
        k = int(idx.group(1))
        fixed, applied = repair_with_log(left.strip())
        try:
            f = parse_formula(fixed)
        except (ChainProverError, RecursionError) as e:
            raise UnparseableFormulaError(raw, e) from e
        if applied:
            out.repairs.append(f"{section} ({k}): {', '.join(applied)}")
        seen.setdefault(section, []).append(k)
        out.sections.setdefault(section, {})[k] = f
        out.texts.setdefault(section, {})[k] = fixed

    names = set(seen) | set(expected or {})
    for name in sorted(names):
        ks = seen.get(name, [])
        n = (expected or {}).get(name, max(ks, default=0))
        missing = [i for i in range(1, n + 1) if i not in ks]
        dups = sorted({i for i in ks if ks.count(i) > 1} | {i for i in ks if i > n})
        if missing or dups:
            raise MissingIndexError(name, missing, dups)
    return out


@dataclass
class NlInstance:
    premises: list[str]
    steps: list[str]
    conclusion: str
    label: bool


@dataclass
class TranslationResult:
    premise_fols: list[Formula]
    step_fols: list[Formula]
    conclusion_fol: Formula
    attempts_used: int
    raw_llm_outputs: list[str]
    first_attempt_executed: bool = False
    first_attempt_match: bool = False
    repairs: list[str] = field(default_factory=list)
    premise_texts: list[str] = field(default_factory=list)


class _AttemptFailed(Exception):
    def __init__(self, reason: str, executed: bool):
        self.reason = reason
        self.executed = executed
        super().__init__(reason)


def _check_attempt(text: str, nl: NlInstance, cfg: EngineConfig):
    expected = {"premises": len(nl.premises), "conclusions": len(nl.steps) + 1}
    try:
        parsed = parse_llm_output(text, expected)
        concl = parsed.ordered("conclusions")
        formulas, _ = normalize_all(parsed.ordered("premises") + concl)
        signature_of(formulas)
        for f in formulas:
            to_fof_line("check", "axiom", f)
    except ChainProverError as e:
        raise _AttemptFailed(f"{type(e).__name__}: {e}", executed=False) from e
    n = len(nl.premises)
    premises, steps, conclusion = formulas[:n], formulas[n:-1], formulas[-1]
    try:
        verdict = verify_single_statement(premises, conclusion, cfg)
    except EngineError as e:
        raise _AttemptFailed(f"EngineError: {e}", executed=False) from e
    except ChainProverError as e:
        raise _AttemptFailed(f"{type(e).__name__}: {e}", executed=True) from e
    if verdict is not TriLabel.of(nl.label):
        raise _AttemptFailed(f"conclusion verifies {verdict.value}, label is {nl.label}", executed=True)
    return parsed, premises, steps, conclusion


def translate(nl: NlInstance, client: ChatClient, cfg: EngineConfig = EngineConfig(),
              template: str | None = None, max_attempts: int = MAX_ATTEMPTS) -> TranslationResult:
    """Translate premises, steps and conclusion, regenerating on failure.

    Every attempt sends the identical prompt: earlier outputs are never fed back.
    """
    prompt = build_prompt(nl.premises, nl.steps, nl.conclusion, template)
    raw_outputs: list[str] = []
    reasons: list[str] = []
    first = None  # (executed, matched) of attempt 1
    for attempt in range(1, max_attempts + 1):
        try:
            text = client.complete(prompt)
        except TransportError as e:
            reasons.append(f"attempt {attempt}: transport: {e}")
            first = first or (False, False)
            continue
        raw_outputs.append(text)
        try:
            parsed, premises, steps, conclusion = _check_attempt(text, nl, cfg)
        except _AttemptFailed as e:
            log.info("NL2FOL attempt %d failed: %s", attempt, e.reason)
            reasons.append(f"attempt {attempt}: {e.reason}")
            first = first or (e.executed, False)
            continue
        first = first or (True, True)
        return TranslationResult(
            premise_fols=premises,
            step_fols=steps,
            conclusion_fol=conclusion,
            attempts_used=attempt,
            raw_llm_outputs=raw_outputs,
            first_attempt_executed=first[0],
            first_attempt_match=first[1],
            repairs=parsed.repairs,
            premise_texts=[parsed.texts["premises"][i] for i in sorted(parsed.texts["premises"])],
        )
    err = TranslationFailed(max_attempts, reasons)
    err.first_attempt_executed, err.first_attempt_match = first or (False, False)
    err.raw_llm_outputs = raw_outputs
    raise err


def dedup_steps(step_fols, cfg: EngineConfig = EngineConfig()) -> list[int]:
    """Indices of the first member of each group of logically equivalent steps."""
    kept: list[int] = []
    for i, f in enumerate(step_fols):
        duplicate = False
        for j in kept:
            try:
                if step_fols[j] == f or logical_equivalence(step_fols[j], f, cfg):
                    duplicate = True
                    break
            except EquivalenceUndecidedError:
                continue
        if not duplicate:
            kept.append(i)
    return kept
