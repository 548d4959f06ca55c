"""Connective elimination, identifier folding and signature extraction."""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass, field
from typing import Iterable

from chainprover.errors import ArityMismatchError, NameCollisionError
from chainprover.logic.syntax import (
    And,
    Atom,
    Const,
    Exists,
    ForAll,
    Formula,
    Func,
    Iff,
    Implies,
    Not,
    Or,
    Var,
    Xor,
    subformulas,
    term_constants,
)

_BAD = re.compile(r"[^a-z0-9_]")


def fold_name(name: str) -> str:
    """Lowercase ASCII form of an identifier, valid as a TPTP lower word."""
    decomposed = unicodedata.normalize("NFKD", name)
    ascii_chars = []
    for ch in decomposed:
        if unicodedata.combining(ch):
            continue
        ascii_chars.append(ch if ch.isascii() else "_")
    out = _BAD.sub("_", "".join(ascii_chars).lower())
    if not out or not ("a" <= out[0] <= "z"):
        out = "n" + out
    return out


@dataclass
class NameMap:
    """Source-to-folded identifier maps for one problem."""

    predicates: dict[str, str] = field(default_factory=dict)
    constants: dict[str, str] = field(default_factory=dict)

    def _record(self, table: dict[str, str], src: str) -> str:
        target = table.get(src)
        if target is None:
            target = fold_name(src)
            clash = [s for s, t in table.items() if t == target]
            if clash:
                raise NameCollisionError(target, clash + [src])
            table[src] = target
        return target

    def predicate(self, src: str) -> str:
        return self._record(self.predicates, src)

    def constant(self, src: str) -> str:
        return self._record(self.constants, src)


def eliminate_xor_iff(f: Formula) -> Formula:
    if isinstance(f, Atom):
        return f
    if isinstance(f, Not):
        return Not(eliminate_xor_iff(f.arg))
    if isinstance(f, (ForAll, Exists)):
        return type(f)(f.var, eliminate_xor_iff(f.body))
    a, b = eliminate_xor_iff(f.left), eliminate_xor_iff(f.right)
    if isinstance(f, Xor):
        return Or(And(Not(a), b), And(a, Not(b)))
    if isinstance(f, Iff):
        return And(Implies(a, b), Implies(b, a))
    return type(f)(a, b)


def _fold(f: Formula, names: NameMap, scope: dict[str, str]) -> Formula:
    if isinstance(f, Atom):
        return Atom(names.predicate(f.pred), tuple(_fold_term(t, names, scope) for t in f.args))
    if isinstance(f, Not):
        return Not(_fold(f.arg, names, scope))
    if isinstance(f, (ForAll, Exists)):
        target = fold_name(f.var)
        for src, tgt in scope.items():
            if tgt == target and src != f.var:
                raise NameCollisionError(target, [src, f.var])
        inner = dict(scope)
        inner[f.var] = target
        return type(f)(target, _fold(f.body, names, inner))
    return type(f)(_fold(f.left, names, scope), _fold(f.right, names, scope))


def _fold_term(t, names: NameMap, scope: dict[str, str]):
    if isinstance(t, Var):
        return Var(scope.get(t.name, fold_name(t.name)))
    if isinstance(t, Const):
        target = names.constant(t.name)
        if target in scope.values():
            raise NameCollisionError(target, [t.name] + [s for s, v in scope.items() if v == target])
        return Const(target)
    return Func(fold_name(t.name), tuple(_fold_term(a, names, scope) for a in t.args))


def normalize(f: Formula, names: NameMap | None = None) -> Formula:
    """Remove ⊕/↔ and fold every identifier to lowercase ASCII.

    Pass a shared ``names`` map to detect collisions across a whole problem.
    """
    return _fold(eliminate_xor_iff(f), names if names is not None else NameMap(), {})


def normalize_all(fs: Iterable[Formula]) -> tuple[list[Formula], NameMap]:
    names = NameMap()
    return [normalize(f, names) for f in fs], names


@dataclass(frozen=True)
class Signature:
    predicates: tuple[tuple[str, int], ...] = ()
    constants: tuple[str, ...] = ()

    @property
    def arity(self) -> dict[str, int]:
        return dict(self.predicates)


def signature_of(fs: Iterable[Formula]) -> Signature:
    arities: dict[str, set[int]] = {}
    constants: set[str] = set()
    for f in fs:
        for node in subformulas(f):
            if isinstance(node, Atom):
                arities.setdefault(node.pred, set()).add(len(node.args))
                for t in node.args:
                    constants.update(term_constants(t))
    for pred, seen in arities.items():
        if len(seen) > 1:
            raise ArityMismatchError(pred, seen)
    return Signature(
        predicates=tuple(sorted((p, next(iter(a))) for p, a in arities.items())),
        constants=tuple(sorted(constants)),
    )
