"""Brute-force model search used as a test oracle.

Works on the original formulas (no clausification): a satisfying
interpretation is searched over the domain of named constants plus one
fresh element per strong quantifier, which is complete for problems whose
Skolem form has no functions. Without equality a larger domain never hurts.
Atoms are assigned lazily; Kleene three-valued evaluation prunes branches.
"""

from __future__ import annotations

from chainprover.logic import And, Atom, Const, Exists, ForAll, Iff, Implies, Not, Or, Var, Xor
from chainprover.logic.syntax import term_constants


def _strong_quantifiers(f, positive=True) -> int:
    if isinstance(f, Atom):
        return 0
    if isinstance(f, Not):
        return _strong_quantifiers(f.arg, not positive)
    if isinstance(f, (And, Or)):
        return _strong_quantifiers(f.left, positive) + _strong_quantifiers(f.right, positive)
    if isinstance(f, Implies):
        return _strong_quantifiers(f.left, not positive) + _strong_quantifiers(f.right, positive)
    if isinstance(f, (Iff, Xor)):
        # each side occurs under both polarities
        return sum(_strong_quantifiers(g, p) for g in (f.left, f.right) for p in (True, False))
    strong = isinstance(f, Exists) == positive
    return int(strong) + _strong_quantifiers(f.body, positive)


def _constants(fs) -> list[str]:
    out: list[str] = []
    for f in fs:
        for c in sorted(_formula_constants(f)):
            if c not in out:
                out.append(c)
    return out


def _formula_constants(f) -> set[str]:
    if isinstance(f, Atom):
        return {c for t in f.args for c in term_constants(t)}
    if isinstance(f, Not):
        return _formula_constants(f.arg)
    if isinstance(f, (ForAll, Exists)):
        return _formula_constants(f.body)
    return _formula_constants(f.left) | _formula_constants(f.right)


class _Unknown(Exception):
    pass


def _eval(f, env: dict, interp: dict, domain: list):
    """Kleene value of ``f``; returns (value, first unassigned atom or None)."""
    if isinstance(f, Atom):
        key = (f.pred, tuple(env[t.name] if isinstance(t, Var) else t.name for t in f.args))
        if key in interp:
            return interp[key], None
        return None, key
    if isinstance(f, Not):
        v, a = _eval(f.arg, env, interp, domain)
        return (None if v is None else not v), a
    if isinstance(f, (ForAll, Exists)):
        stop = isinstance(f, Exists)  # value that short-circuits
        pending = None
        for d in domain:
            v, a = _eval(f.body, {**env, f.var: d}, interp, domain)
            if v is stop:
                return stop, None
            if v is None and pending is None:
                pending = a
        return (None, pending) if pending else (not stop, None)
    lv, la = _eval(f.left, env, interp, domain)
    if isinstance(f, And) and lv is False:
        return False, None
    if isinstance(f, Or) and lv is True:
        return True, None
    if isinstance(f, Implies) and lv is False:
        return True, None
    rv, ra = _eval(f.right, env, interp, domain)
    pending = la or ra
    if isinstance(f, And):
        if rv is False:
            return False, None
        return (True, None) if lv and rv else (None, pending)
    if isinstance(f, Or):
        if rv is True:
            return True, None
        return (False, None) if lv is False and rv is False else (None, pending)
    if isinstance(f, Implies):
        if rv is True:
            return True, None
        return (False, None) if lv is True and rv is False else (None, pending)
    if lv is None or rv is None:
        return None, pending
    return ((lv == rv) if isinstance(f, Iff) else (lv != rv)), None


def find_model(formulas) -> dict | None:
    """A satisfying Herbrand-style interpretation, or None if none exists."""
    formulas = list(formulas)
    constants = _constants(formulas)
    fresh = sum(_strong_quantifiers(f) for f in formulas)
    domain = constants + [f"#e{i}" for i in range(fresh)]
    if not domain:
        domain = ["#e0"]
    conj = formulas[0] if formulas else None
    for g in formulas[1:]:
        conj = And(conj, g)
    if conj is None:
        return {}

    def search(interp):
        v, atom = _eval(conj, {}, interp, domain)
        if v is True:
            return interp
        if v is False:
            return None
        for value in (True, False):
            found = search({**interp, atom: value})
            if found is not None:
                return found
        return None

    return search({})


def satisfiable(formulas) -> bool:
    return find_model(formulas) is not None


def entails(axioms, conjecture) -> bool:
    return not satisfiable([*axioms, Not(conjecture)])


def equivalent(f, g) -> bool:
    return entails([f], g) and entails([g], f)


def tri_label(premises, s) -> str:
    """'True' / 'False' / 'Unknown'; raises ValueError on inconsistent premises."""
    pos, neg = entails(premises, s), entails(premises, Not(s))
    if pos and neg:
        raise ValueError("inconsistent premises")
    return "True" if pos else "False" if neg else "Unknown"


__all__ = ["entails", "equivalent", "find_model", "satisfiable", "tri_label", "Const"]
