"""Canonical Unicode rendering of formulas."""

from __future__ import annotations

from chainprover.logic.syntax import (
    And,
    Atom,
    Exists,
    ForAll,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    Xor,
)

SYMBOL = {And: "∧", Or: "∨", Implies: "→", Iff: "↔", Xor: "⊕"}


def print_atom(a: Atom) -> str:
    if not a.args:
        return a.pred
    return f"{a.pred}({', '.join(str(t) for t in a.args)})"


def print_formula(f: Formula) -> str:
    """Render ``f`` so that every binary connective carries its own parentheses.

    Quantifiers are wrapped in parentheses whenever they occur as an operand,
    since an unparenthesized quantifier would otherwise swallow the rest of
    the enclosing expression on re-parse.
    """
    return _render(f, operand=False)


def _render(f: Formula, operand: bool) -> str:
    if isinstance(f, Atom):
        return print_atom(f)
    if isinstance(f, Not):
        return "¬" + _render(f.arg, operand=True)
    if isinstance(f, (ForAll, Exists)):
        q = "∀" if isinstance(f, ForAll) else "∃"
        text = f"{q}{f.var} {_render(f.body, operand=False)}"
        return f"({text})" if operand else text
    return f"({_render(f.left, True)} {SYMBOL[type(f)]} {_render(f.right, True)})"
