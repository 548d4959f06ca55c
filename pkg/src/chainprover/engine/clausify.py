"""NNF, Skolemization and clause-form conversion.

Literals are ``(positive, predicate, args)`` triples; a clause is a frozenset
of literals. Skolem constants are named ``$sk<n>``, Skolem functions
``$skf<n>`` and definitional predicates ``$d<n>``; the ``$`` prefix keeps
them disjoint from anything the surface parser accepts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from chainprover.logic.normalize import eliminate_xor_iff
from chainprover.logic.syntax import (
    And,
    Atom,
    Const,
    Exists,
    ForAll,
    Formula,
    Func,
    Implies,
    Not,
    Or,
    Var,
)

Literal = tuple  # (bool, str, tuple[Term, ...])
Clause = frozenset

# naive distribution is abandoned once it would grow a formula past this factor
GROWTH_LIMIT = 4


@dataclass
class ClauseSet:
    clauses: list = field(default_factory=list)
    skolem_symbols: dict = field(default_factory=dict)  # name -> arity

    @property
    def skolem_functions(self) -> dict:
        return {n: a for n, a in self.skolem_symbols.items() if a > 0}


def nnf(f: Formula, positive: bool = True) -> Formula:
    """Negation normal form over ∧, ∨, ∀, ∃ with negation only on atoms."""
    if isinstance(f, Atom):
        return f if positive else Not(f)
    if isinstance(f, Not):
        return nnf(f.arg, not positive)
    if isinstance(f, And):
        l, r = nnf(f.left, positive), nnf(f.right, positive)
        return And(l, r) if positive else Or(l, r)
    if isinstance(f, Or):
        l, r = nnf(f.left, positive), nnf(f.right, positive)
        return Or(l, r) if positive else And(l, r)
    if isinstance(f, Implies):
        l, r = nnf(f.left, not positive), nnf(f.right, positive)
        return Or(l, r) if positive else And(l, r)
    if isinstance(f, ForAll):
        return (ForAll if positive else Exists)(f.var, nnf(f.body, positive))
    if isinstance(f, Exists):
        return (Exists if positive else ForAll)(f.var, nnf(f.body, positive))
    # Iff / Xor
    return nnf(eliminate_xor_iff(f), positive)


def _term_vars(t, out: list) -> None:
    if isinstance(t, Var):
        if t.name not in out:
            out.append(t.name)
    elif isinstance(t, Func):
        for a in t.args:
            _term_vars(a, out)


def _subst(t, env: dict):
    if isinstance(t, Var):
        return env[t.name]
    return t


class _Skolemizer:
    def __init__(self, cs: ClauseSet):
        self.cs = cs
        self.fresh = 0

    def var(self) -> Var:
        self.fresh += 1
        return Var(f"V{self.fresh}")

    def skolem_term(self, args: list[str]):
        n = len(self.cs.skolem_symbols) + 1
        if not args:
            name = f"$sk{n}"
            self.cs.skolem_symbols[name] = 0
            return Const(name)
        name = f"$skf{n}"
        self.cs.skolem_symbols[name] = len(args)
        return Func(name, tuple(Var(a) for a in args))

    def run(self, f: Formula, env: dict) -> Formula:
        """Standardize apart, Skolemize and drop universal quantifiers."""
        if isinstance(f, Atom):
            return Atom(f.pred, tuple(_subst(t, env) for t in f.args))
        if isinstance(f, Not):
            return Not(self.run(f.arg, env))
        if isinstance(f, (And, Or)):
            return type(f)(self.run(f.left, env), self.run(f.right, env))
        if isinstance(f, ForAll):
            return self.run(f.body, {**env, f.var: self.var()})
        # Exists: depend only on the universals that actually occur in the body
        deps: list[str] = []
        for name in _free_in(f.body) - {f.var}:
            _term_vars(env[name], deps)
        deps.sort(key=lambda v: int(v[1:]))
        return self.run(f.body, {**env, f.var: self.skolem_term(deps)})


def _free_in(f: Formula) -> set:
    if isinstance(f, Atom):
        return {t.name for t in f.args if isinstance(t, Var)}
    if isinstance(f, Not):
        return _free_in(f.arg)
    if isinstance(f, (And, Or)):
        return _free_in(f.left) | _free_in(f.right)
    return _free_in(f.body) - {f.var}


def _size(f: Formula) -> int:
    if isinstance(f, Atom):
        return 1
    if isinstance(f, Not):
        return 1 + _size(f.arg)
    return 1 + _size(f.left) + _size(f.right)


def _naive_literals(f: Formula) -> tuple[int, int]:
    """(clause count, literal occurrences) of naive distribution."""
    if isinstance(f, (Atom, Not)):
        return 1, 1
    lc, ll = _naive_literals(f.left)
    rc, rl = _naive_literals(f.right)
    if isinstance(f, And):
        return lc + rc, ll + rl
    return lc * rc, ll * rc + rl * lc


def _literal(f: Formula) -> Literal:
    if isinstance(f, Not):
        return (False, f.arg.pred, f.arg.args)
    return (True, f.pred, f.args)


def _matrix_vars(f: Formula) -> list[str]:
    out: list[str] = []

    def walk(g):
        if isinstance(g, Atom):
            for t in g.args:
                _term_vars(t, out)
        elif isinstance(g, Not):
            walk(g.arg)
        else:
            walk(g.left)
            walk(g.right)

    walk(f)
    return sorted(out, key=lambda v: int(v[1:]))


class _Cnf:
    def __init__(self, cs: ClauseSet):
        self.cs = cs
        self.definitional = False
        self.defs = 0

    def clauses(self, f: Formula) -> list[frozenset]:
        if isinstance(f, (Atom, Not)):
            return [frozenset([_literal(f)])]
        if isinstance(f, And):
            return self.clauses(f.left) + self.clauses(f.right)
        left, right = self.clauses(f.left), self.clauses(f.right)
        if self.definitional:
            left = self.name(f.left, left)
            right = self.name(f.right, right)
        return [a | b for a, b in product(left, right)]

    def name(self, g: Formula, cls: list[frozenset]) -> list[frozenset]:
        if len(cls) <= 1:
            return cls
        self.defs += 1
        pred = f"$d{self.defs}"
        atom = (True, pred, tuple(Var(v) for v in _matrix_vars(g)))
        neg = (False,) + atom[1:]
        self.cs.clauses.extend(c | {neg} for c in cls)
        return [frozenset([atom])]


def _is_tautology(clause: frozenset) -> bool:
    return any((not pos, p, a) in clause for pos, p, a in clause)


def clausify(fs) -> ClauseSet:
    """Equisatisfiable clause set for a list of closed formulas."""
    cs = ClauseSet()
    sk = _Skolemizer(cs)
    body: list[frozenset] = []
    cnf = _Cnf(cs)
    for f in fs:
        matrix = sk.run(nnf(f), {})
        _, lits = _naive_literals(matrix)
        cnf.definitional = lits > GROWTH_LIMIT * _size(matrix)
        body.extend(cnf.clauses(matrix))
    seen = set()
    out = []
    for c in cs.clauses + body:
        if c not in seen and not _is_tautology(c):
            seen.add(c)
            out.append(c)
    cs.clauses = out
    return cs
