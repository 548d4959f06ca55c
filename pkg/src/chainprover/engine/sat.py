"""DPLL over ground clauses.

Unit propagation, pure-literal elimination and chronological backtracking.
Clauses are passed as iterables of hashable literals; a literal is either a
signed int (``-3`` negates atom ``3``) or a ``(positive, pred, args)``
triple as produced by grounding.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field


class SatTimeout(Exception):
    pass


@dataclass
class SatResult:
    satisfiable: bool
    model: dict = field(default_factory=dict)  # atom -> bool

    def __bool__(self) -> bool:
        return self.satisfiable


def _encode(clauses):
    ids: dict = {}
    atoms: list = []
    encoded = []
    for clause in clauses:
        ints = set()
        for lit in clause:
            if isinstance(lit, int):
                atom, pos = abs(lit), lit > 0
            else:
                pos, pred, args = lit
                atom = (pred, args)
            if atom not in ids:
                ids[atom] = len(atoms) + 1
                atoms.append(atom)
            ints.add(ids[atom] if pos else -ids[atom])
        encoded.append(frozenset(ints))
    return encoded, atoms


def _assign(clauses: list, lit: int) -> list | None:
    """Simplify under ``lit``; None signals an empty clause."""
    out = []
    for c in clauses:
        if lit in c:
            continue
        if -lit in c:
            c = c - {-lit}
            if not c:
                return None
        out.append(c)
    return out


def _dpll(clauses: list, trail: list, deadline: float | None) -> bool:
    if deadline is not None and time.monotonic() > deadline:
        raise SatTimeout
    while True:
        unit = next((c for c in clauses if len(c) == 1), None)
        if unit is not None:
            (lit,) = unit
        else:
            present = set().union(*clauses) if clauses else set()
            lit = next((l for l in sorted(present, key=abs) if -l not in present), None)
            if lit is None:
                break
        trail.append(lit)
        clauses = _assign(clauses, lit)
        if clauses is None:
            return False
    if not clauses:
        return True
    shortest = min(clauses, key=len)
    choice = min(shortest, key=abs)
    for lit in (choice, -choice):
        mark = len(trail)
        trail.append(lit)
        reduced = _assign(clauses, lit)
        if reduced is not None and _dpll(reduced, trail, deadline):
            return True
        del trail[mark:]
    return False


def sat(clauses, timeout_s: float | None = None) -> SatResult:
    """Decide satisfiability; the model covers every atom in ``clauses``."""
    encoded, atoms = _encode(clauses)
    if any(not c for c in encoded):
        return SatResult(False)
    deadline = time.monotonic() + timeout_s if timeout_s is not None else None
    trail: list[int] = []
    if not _dpll(encoded, trail, deadline):
        return SatResult(False)
    values = {abs(l): l > 0 for l in trail}
    model = {atom: values.get(i, False) for i, atom in enumerate(atoms, start=1)}
    return SatResult(True, model)
