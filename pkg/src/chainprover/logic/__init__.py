"""First-order syntax, parsing, printing and normalization."""

from chainprover.logic.normalize import NameMap, Signature, fold_name, normalize, normalize_all, signature_of
from chainprover.logic.parser import parse_formula
from chainprover.logic.printer import print_formula
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
    Term,
    Var,
    Xor,
)

__all__ = [
    "And", "Atom", "Const", "Exists", "ForAll", "Formula", "Func", "Iff", "Implies",
    "NameMap", "Not", "Or", "Signature", "Term", "Var", "Xor", "fold_name", "normalize",
    "normalize_all", "parse_formula", "print_formula", "signature_of",
]
