"""Herbrand instantiation of clause sets."""

from __future__ import annotations

from itertools import product

from chainprover.engine.clausify import ClauseSet
from chainprover.errors import GroundingBudgetExceeded
from chainprover.logic.normalize import Signature
from chainprover.logic.syntax import Const, Func, Var

FRESH_CONSTANT = "$c0"


def herbrand_terms(constants, functions: dict, depth: int) -> list:
    """Ground terms with function nesting at most ``depth``, in creation order."""
    level = [Const(c) for c in constants]
    terms = list(level)
    seen = set(terms)
    for _ in range(depth):
        new = []
        for name, arity in sorted(functions.items()):
            for args in product(terms, repeat=arity):
                t = Func(name, args)
                if t not in seen:
                    seen.add(t)
                    new.append(t)
        if not new:
            break
        terms.extend(new)
    return terms


def _clause_vars(clause) -> list[str]:
    out: list[str] = []

    def walk(t):
        if isinstance(t, Var):
            if t.name not in out:
                out.append(t.name)
        elif isinstance(t, Func):
            for a in t.args:
                walk(a)

    for _, _, args in sorted(clause, key=repr):
        for t in args:
            walk(t)
    return out


def _instantiate(t, env):
    if isinstance(t, Var):
        return env[t.name]
    if isinstance(t, Func):
        return Func(t.name, tuple(_instantiate(a, env) for a in t.args))
    return t


def _constants_in(cs: ClauseSet) -> set[str]:
    out: set[str] = set()

    def walk(t):
        if isinstance(t, Const):
            out.add(t.name)
        elif isinstance(t, Func):
            for a in t.args:
                walk(a)

    for clause in cs.clauses:
        for _, _, args in clause:
            for t in args:
                walk(t)
    return out


def ground(cs: ClauseSet, sig: Signature, depth: int, max_clauses: int = 200_000) -> list[frozenset]:
    """Instantiate every clause over the Herbrand universe up to ``depth``.

    Returns ground clauses as frozensets of ``(positive, pred, args)``
    literals. Tautologies and duplicates are dropped.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    constants = sorted(set(sig.constants) | _constants_in(cs)
                       | {n for n, a in cs.skolem_symbols.items() if a == 0})
    if not constants:
        constants = [FRESH_CONSTANT]
    universe = herbrand_terms(constants, cs.skolem_functions, depth)

    plans = []
    total = 0
    for clause in cs.clauses:
        names = _clause_vars(clause)
        total += len(universe) ** len(names)
        if total > max_clauses:
            raise GroundingBudgetExceeded(
                f"grounding needs more than {max_clauses} clauses "
                f"({len(universe)} terms, depth {depth})")
        plans.append((clause, names))

    out: list[frozenset] = []
    seen = set()
    for clause, names in plans:
        for values in product(universe, repeat=len(names)):
            env = dict(zip(names, values))
            g = frozenset((pos, p, tuple(_instantiate(t, env) for t in args)) for pos, p, args in clause)
            # instances whose terms nest beyond the bound are dropped
            if depth_of(g) > depth or g in seen:
                continue
            if any((not pos, p, a) in g for pos, p, a in g):
                continue
            seen.add(g)
            out.append(g)
    return out


def _term_depth(t) -> int:
    if isinstance(t, Func):
        return 1 + max(_term_depth(a) for a in t.args)
    return 0


def depth_of(clause) -> int:
    return max((_term_depth(t) for _, _, args in clause for t in args), default=0)
