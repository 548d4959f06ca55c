"""TPTP FOF serialization, pre-parse repair of raw FOL strings, SZS parsing."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass

from chainprover.errors import ChainProverError, InvalidNameError, UnnormalizedFormulaError
from chainprover.logic import parse_formula
from chainprover.logic.syntax import (
    And,
    Atom,
    Const,
    Exists,
    ForAll,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    Var,
    Xor,
)

LOWER_WORD = re.compile(r"^[a-z][a-zA-Z0-9_]*$")

_TPTP_OP = {And: "&", Or: "|", Implies: "=>"}


def _term(t) -> str:
    if isinstance(t, Var):
        return t.name.upper()
    if isinstance(t, Const):
        _check_functor(t.name)
        return t.name
    _check_functor(t.name)
    return f"{t.name}({','.join(_term(a) for a in t.args)})"


def _check_functor(name: str) -> None:
    if not LOWER_WORD.match(name):
        raise UnnormalizedFormulaError(f"functor {name!r} is not a TPTP lower word; normalize first")


def fof_formula(f: Formula) -> str:
    """Render a normalized formula in TPTP FOF syntax."""
    if isinstance(f, Atom):
        _check_functor(f.pred)
        if not f.args:
            return f.pred
        return f"{f.pred}({','.join(_term(t) for t in f.args)})"
    if isinstance(f, Not):
        return "~" + fof_formula(f.arg)
    if isinstance(f, (ForAll, Exists)):
        q = "!" if isinstance(f, ForAll) else "?"
        return f"{q}[{f.var.upper()}]: {fof_formula(f.body)}"
    if isinstance(f, (Iff, Xor)):
        raise UnnormalizedFormulaError(f"{type(f).__name__} node present; normalize first")
    return f"({fof_formula(f.left)} {_TPTP_OP[type(f)]} {fof_formula(f.right)})"


def to_fof_line(name: str, role: str, f: Formula) -> str:
    if not LOWER_WORD.match(name):
        raise InvalidNameError(f"{name!r} is not a TPTP lower word")
    if role not in ("axiom", "conjecture"):
        raise ValueError(f"unsupported role {role!r}")
    return f"fof({name}, {role}, {fof_formula(f)})."


@dataclass(frozen=True)
class TptpProblem:
    axioms: tuple[tuple[str, Formula], ...]
    conjecture: tuple[str, Formula] | None = None

    @classmethod
    def from_premises(cls, premises, conclusion: Formula | None) -> "TptpProblem":
        axioms = tuple((f"premise_{i}", f) for i, f in enumerate(premises, start=1))
        return cls(axioms, ("conclusion", conclusion) if conclusion is not None else None)


def emit_problem(p: TptpProblem) -> str:
    names = [n for n, _ in p.axioms]
    if len(set(names)) != len(names):
        raise InvalidNameError("duplicate axiom names")
    lines = [to_fof_line(n, "axiom", f) for n, f in p.axioms]
    if p.conjecture is not None:
        lines.append(to_fof_line(p.conjecture[0], "conjecture", p.conjecture[1]))
    return "\n".join(lines) + "\n"


# -- repair -------------------------------------------------------------------

_DOUBLED = re.compile(r"(∧|∨|→|↔|⊕|&|\|)(?:\s*\1)+")
_INFIX_V = re.compile(r"(?<=[\s)])v(?=[\s(])")
_MAX_PAREN_FIX = 2


def _parses(text: str) -> bool:
    try:
        parse_formula(text)
    except (ChainProverError, RecursionError):
        return False
    return True


def _balance(text: str) -> str:
    excess = text.count("(") - text.count(")")
    if 0 < excess <= _MAX_PAREN_FIX:
        return text.rstrip() + ")" * excess
    if -_MAX_PAREN_FIX <= excess < 0:
        out = text.rstrip()
        while excess < 0 and out.endswith(")"):
            out = out[:-1].rstrip()
            excess += 1
        return out
    return text


_REWRITES = (
    ("collapse doubled connective", lambda s: _DOUBLED.sub(r"\1", s)),
    ("'^' as conjunction", lambda s: s.replace("^", "∧")),
    ("infix 'v' as disjunction", lambda s: _INFIX_V.sub("∨", s)),
    ("'<=>' as biconditional", lambda s: s.replace("<=>", "↔")),
    ("balance parentheses", _balance),
)


def repair_with_log(text: str) -> tuple[str, list[str]]:
    """Apply the bounded rewrite list until the text parses.

    Returns the (possibly unchanged) text and the names of rewrites that
    altered it. Text that already parses is never touched.
    """
    applied: list[str] = []
    if _parses(text):
        return text, applied
    current = text
    for label, rewrite in _REWRITES:
        new = rewrite(current)
        if new != current:
            applied.append(label)
            current = new
            if _parses(current):
                break
    return current, applied


def repair(text: str) -> str:
    return repair_with_log(text)[0]


# -- SZS ----------------------------------------------------------------------

class SzsStatus(enum.Enum):
    THEOREM = "Theorem"
    COUNTER_SATISFIABLE = "CounterSatisfiable"
    SATISFIABLE = "Satisfiable"
    TIMEOUT = "Timeout"
    GAVE_UP = "GaveUp"
    ERROR = "Error"
    UNPARSED = "Unparsed"


_SZS_WORDS = {
    "Theorem": SzsStatus.THEOREM,
    # inconsistent axioms or a refuted clause set also mean the conjecture follows
    "Unsatisfiable": SzsStatus.THEOREM,
    "ContradictoryAxioms": SzsStatus.THEOREM,
    "CounterSatisfiable": SzsStatus.COUNTER_SATISFIABLE,
    "Satisfiable": SzsStatus.SATISFIABLE,
    "Timeout": SzsStatus.TIMEOUT,
    "ResourceOut": SzsStatus.TIMEOUT,
    "MemoryOut": SzsStatus.TIMEOUT,
    "GaveUp": SzsStatus.GAVE_UP,
    "Unknown": SzsStatus.GAVE_UP,
    "Incomplete": SzsStatus.GAVE_UP,
    "Error": SzsStatus.ERROR,
}

_SZS_LINE = re.compile(r"SZS status\s+(\w+)")


@dataclass(frozen=True)
class SzsOutcome:
    status: SzsStatus
    raw_line: str = ""


def parse_szs(output: str) -> SzsOutcome:
    for line in output.splitlines():
        m = _SZS_LINE.search(line)
        if m:
            return SzsOutcome(_SZS_WORDS.get(m.group(1), SzsStatus.ERROR), line.strip())
    return SzsOutcome(SzsStatus.UNPARSED, "")
