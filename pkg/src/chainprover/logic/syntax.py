"""Immutable first-order syntax trees.

Terms are constants, variables and (engine-internal) function applications
produced by Skolemization. Source text never contains function symbols.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union


@dataclass(frozen=True)
class Const:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Func:
    """Function application; only introduced by Skolemization."""

    name: str
    args: tuple[Term, ...]

    def __str__(self) -> str:
        return f"{self.name}({', '.join(map(str, self.args))})"


Term = Union[Const, Var, Func]


@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple[Term, ...] = ()


@dataclass(frozen=True)
class Not:
    arg: Formula


@dataclass(frozen=True)
class And:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Xor:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class ForAll:
    var: str
    body: Formula


@dataclass(frozen=True)
class Exists:
    var: str
    body: Formula


Formula = Union[Atom, Not, And, Or, Implies, Iff, Xor, ForAll, Exists]

BINARY = (And, Or, Implies, Iff, Xor)
QUANTIFIERS = (ForAll, Exists)


def subformulas(f: Formula) -> Iterator[Formula]:
    """Pre-order walk over every node of ``f``."""
    stack = [f]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, Not):
            stack.append(node.arg)
        elif isinstance(node, BINARY):
            stack.append(node.right)
            stack.append(node.left)
        elif isinstance(node, QUANTIFIERS):
            stack.append(node.body)


def atoms(f: Formula) -> Iterator[Atom]:
    for node in subformulas(f):
        if isinstance(node, Atom):
            yield node


def term_constants(t: Term) -> Iterator[str]:
    if isinstance(t, Const):
        yield t.name
    elif isinstance(t, Func):
        for a in t.args:
            yield from term_constants(a)


def free_vars(f: Formula) -> frozenset[str]:
    if isinstance(f, Atom):
        return frozenset(a.name for a in f.args if isinstance(a, Var))
    if isinstance(f, Not):
        return free_vars(f.arg)
    if isinstance(f, BINARY):
        return free_vars(f.left) | free_vars(f.right)
    return free_vars(f.body) - {f.var}


def depth(f: Formula) -> int:
    if isinstance(f, Atom):
        return 0
    if isinstance(f, Not):
        return 1 + depth(f.arg)
    if isinstance(f, BINARY):
        return 1 + max(depth(f.left), depth(f.right))
    return 1 + depth(f.body)


def conjoin(fs) -> Formula | None:
    fs = list(fs)
    if not fs:
        return None
    out = fs[0]
    for g in fs[1:]:
        out = And(out, g)
    return out
