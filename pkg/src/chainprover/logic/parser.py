"""Recursive-descent parser for surface FOL text.

Grammar (lowest to highest precedence)::

    formula  := iff
    iff      := imp ( IFF imp )*
    imp      := xor [ IMP imp ]                  (right-associative)
    xor      := or  ( XOR or )*
    or       := and ( OR and )*
    and      := unary ( AND unary )*
    unary    := NOT unary | quant | primary
    quant    := (FORALL | EXISTS) IDENT ( "," IDENT )* [ "." | ":" ] formula
    primary  := "(" formula ")" | IDENT [ "(" IDENT ( "," IDENT )* ")" ]

    FORALL  ∀  forall        EXISTS  ∃  exists
    NOT     ¬  ~  !          AND     ∧  &  &&  /\\
    OR      ∨  |  ||  \\/     XOR     ⊕  xor  <~>
    IMP     →  ->  =>  ⇒      IFF     ↔  <->  <=>  ⇔

A quantifier without parentheses scopes as far right as possible.  An
identifier in argument position is a variable when an enclosing quantifier
binds it and a constant otherwise; unbound names shaped like variables
(``x``, ``y1``, ``X``) are rejected as free.  Equality, comparisons,
numerals and function symbols are not part of the language.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from chainprover.errors import ArityMismatchError, FolSyntaxError, FreeVariableError
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

_SYMBOLS = [
    # longest first
    ("<->", "IFF"), ("<=>", "IFF"), ("<~>", "XOR"), ("->", "IMP"), ("=>", "IMP"),
    ("&&", "AND"), ("||", "OR"), ("/\\", "AND"), ("\\/", "OR"), ("!=", "CMP"),
    ("<=", "CMP"), (">=", "CMP"),
    ("∀", "FORALL"), ("∃", "EXISTS"), ("¬", "NOT"), ("~", "NOT"), ("!", "NOT"),
    ("∧", "AND"), ("&", "AND"), ("∨", "OR"), ("|", "OR"), ("⊕", "XOR"),
    ("→", "IMP"), ("⇒", "IMP"), ("↔", "IFF"), ("⇔", "IFF"),
    ("(", "LPAREN"), (")", "RPAREN"), (",", "COMMA"), (".", "DOT"), (":", "COLON"),
    ("=", "CMP"), ("<", "CMP"), (">", "CMP"), ("≠", "CMP"), ("≤", "CMP"), ("≥", "CMP"),
]
_KEYWORDS = {"forall": "FORALL", "exists": "EXISTS", "xor": "XOR"}

_VARLIKE = re.compile(r"^(?:[u-z]|[A-Z])[0-9]*$")

_DESCR = {
    "IDENT": "identifier", "LPAREN": "'('", "RPAREN": "')'", "COMMA": "','",
    "EOF": "end of input", "NOT": "'¬'", "FORALL": "'∀'", "EXISTS": "'∃'",
}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isalpha() or ch == "_":
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            tokens.append(Token(_KEYWORDS.get(word, "IDENT"), word, i))
            i = j
            continue
        if ch.isdigit():
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] in "._"):
                j += 1
            tokens.append(Token("NUM", text[i:j], i))
            i = j
            continue
        for sym, kind in _SYMBOLS:
            if text.startswith(sym, i):
                tokens.append(Token(kind, sym, i))
                i += len(sym)
                break
        else:
            raise FolSyntaxError(f"unexpected character {ch!r}", text, i)
    tokens.append(Token("EOF", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0
        self.bound: list[str] = []
        self.free: set[str] = set()
        self.arity: dict[str, int] = {}

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def fail(self, *expected: str):
        t = self.tok
        if t.kind == "CMP":
            raise FolSyntaxError(f"equality and comparison operators are not supported ({t.text!r})",
                                 self.text, t.pos)
        if t.kind == "NUM":
            raise FolSyntaxError(f"numerals are not supported ({t.text!r})", self.text, t.pos)
        what = "end of input" if t.kind == "EOF" else repr(t.text)
        raise FolSyntaxError(f"unexpected {what}", self.text, t.pos,
                             [_DESCR.get(e, e) for e in expected])

    def expect(self, kind: str) -> Token:
        if self.tok.kind != kind:
            self.fail(kind)
        return self.advance()

    # -- grammar ----------------------------------------------------------

    def formula(self) -> Formula:
        left = self.imp()
        while self.tok.kind == "IFF":
            self.advance()
            left = Iff(left, self.imp())
        return left

    def imp(self) -> Formula:
        left = self.xor()
        if self.tok.kind == "IMP":
            self.advance()
            return Implies(left, self.imp())
        return left

    def xor(self) -> Formula:
        left = self.disj()
        while self.tok.kind == "XOR":
            self.advance()
            left = Xor(left, self.disj())
        return left

    def disj(self) -> Formula:
        left = self.conj()
        while self.tok.kind == "OR":
            self.advance()
            left = Or(left, self.conj())
        return left

    def conj(self) -> Formula:
        left = self.unary()
        while self.tok.kind == "AND":
            self.advance()
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        kind = self.tok.kind
        if kind == "NOT":
            self.advance()
            return Not(self.unary())
        if kind in ("FORALL", "EXISTS"):
            return self.quantified()
        if kind == "LPAREN":
            self.advance()
            f = self.formula()
            self.expect("RPAREN")
            return f
        if kind == "IDENT":
            return self.atom()
        self.fail("IDENT", "LPAREN", "NOT", "FORALL", "EXISTS")

    def quantified(self) -> Formula:
        q = ForAll if self.advance().kind == "FORALL" else Exists
        names = [self.expect("IDENT").text]
        while self.tok.kind == "COMMA":
            self.advance()
            names.append(self.expect("IDENT").text)
        if self.tok.kind in ("DOT", "COLON"):
            self.advance()
        self.bound.extend(names)
        body = self.formula()
        del self.bound[-len(names):]
        for name in reversed(names):
            body = q(name, body)
        return body

    def atom(self) -> Formula:
        name = self.advance().text
        args = []
        if self.tok.kind == "LPAREN":
            self.advance()
            args.append(self.term())
            while self.tok.kind == "COMMA":
                self.advance()
                args.append(self.term())
            if self.tok.kind != "RPAREN":
                self.fail("COMMA", "RPAREN")
            self.advance()
        if self.tok.kind == "CMP":
            self.fail()
        prev = self.arity.setdefault(name, len(args))
        if prev != len(args):
            raise ArityMismatchError(name, {prev, len(args)})
        return Atom(name, tuple(args))

    def term(self):
        if self.tok.kind != "IDENT":
            self.fail("IDENT")
        t = self.advance()
        if self.tok.kind == "LPAREN":
            raise FolSyntaxError(f"function symbols are not supported ({t.text!r})", self.text, t.pos)
        if t.text in self.bound:
            return Var(t.text)
        if _VARLIKE.match(t.text):
            self.free.add(t.text)
        return Const(t.text)


def parse_formula(text: str) -> Formula:
    """Parse surface FOL text into a closed, arity-consistent formula."""
    if not text or not text.strip():
        raise FolSyntaxError("empty formula", text or "", 0, ["formula"])
    p = _Parser(text)
    f = p.formula()
    if p.tok.kind == "DOT" and p.tokens[p.i + 1].kind == "EOF":
        p.advance()
    if p.tok.kind != "EOF":
        p.fail("EOF")
    if p.free:
        raise FreeVariableError(p.free)
    return f
