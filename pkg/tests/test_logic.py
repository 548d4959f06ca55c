import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chainprover.errors import ArityMismatchError, FolSyntaxError, FreeVariableError, NameCollisionError
from chainprover.logic import (
    And,
    Atom,
    Const,
    Exists,
    ForAll,
    Iff,
    Implies,
    Not,
    Or,
    Var,
    Xor,
    fold_name,
    normalize,
    normalize_all,
    parse_formula,
    print_formula,
    signature_of,
)
from chainprover.logic.normalize import eliminate_xor_iff

import oracle
from generators import random_formula, random_signature

pet = lambda t: Atom("pet", (t,))  # noqa: E731
animal = lambda t: Atom("animal", (t,))  # noqa: E731
X = Var("x")


# -- parser ---------------------------------------------------------------------

def test_parse_atom():
    assert parse_formula("Cold(cow)") == Atom("Cold", (Const("cow"),))


def test_parse_quantified_implication():
    assert parse_formula("∀x (pet(x) → animal(x))") == ForAll("x", Implies(pet(X), animal(X)))


def test_unbalanced_paren_offset():
    with pytest.raises(FolSyntaxError) as info:
        parse_formula("p(a")
    assert info.value.offset == 3


@pytest.mark.parametrize("text,expected", [
    ("p(a) & q(a) | r(a)", Or(And(Atom("p", (Const("a"),)), Atom("q", (Const("a"),))), Atom("r", (Const("a"),)))),
    ("~p(a) -> q(a) -> r(a)",
     Implies(Not(Atom("p", (Const("a"),))), Implies(Atom("q", (Const("a"),)), Atom("r", (Const("a"),))))),
    ("p(a) <-> q(a) -> r(a)",
     Iff(Atom("p", (Const("a"),)), Implies(Atom("q", (Const("a"),)), Atom("r", (Const("a"),))))),
    ("p(a) xor q(a) | r(a)",
     Xor(Atom("p", (Const("a"),)), Or(Atom("q", (Const("a"),)), Atom("r", (Const("a"),))))),
    ("p(a) <~> q(a)", Xor(Atom("p", (Const("a"),)), Atom("q", (Const("a"),)))),
])
def test_precedence_and_ascii_aliases(text, expected):
    assert parse_formula(text) == expected


def test_quantifier_scope_extends_right():
    # "∀x (smart(x) ∧ ¬kind(x)) → young(x)" keeps young(x) inside the quantifier
    f = parse_formula("∀x (smart(x) ∧ ¬kind(x)) → young(x)")
    assert isinstance(f, ForAll) and isinstance(f.body, Implies)


def test_variable_lists():
    assert parse_formula("∀x, y (r(x, y))") == ForAll("x", ForAll("y", Atom("r", (X, Var("y")))))
    assert parse_formula("forall x. exists y: r(x, y)") == ForAll("x", Exists("y", Atom("r", (X, Var("y")))))


@pytest.mark.parametrize("text", ["p(a) = q(a)", "p(3)", "p(f(a))", "∀x", "p(a) ∧", ""])
def test_rejects_outside_fragment(text):
    with pytest.raises(FolSyntaxError):
        parse_formula(text)


def test_free_variable():
    with pytest.raises(FreeVariableError):
        parse_formula("pet(x)")


def test_arity_mismatch_within_formula():
    with pytest.raises(ArityMismatchError):
        parse_formula("p(a) ∧ p(a, b)")


# -- printer --------------------------------------------------------------------

def test_print_examples():
    assert print_formula(Atom("cold", (Const("cow"),))) == "cold(cow)"
    assert print_formula(ForAll("x", Implies(pet(X), animal(X)))) == "∀x (pet(x) → animal(x))"
    assert print_formula(Xor(Atom("p", (Const("a"),)), Atom("q", (Const("a"),)))) == "(p(a) ⊕ q(a))"


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10**9))
def test_print_parse_round_trip(seed):
    rng = random.Random(seed)
    preds, consts = random_signature(rng)
    f = random_formula(rng, preds, consts, 5)
    assert parse_formula(print_formula(f)) == f


# -- normalize ------------------------------------------------------------------

def test_fold_name():
    assert fold_name("Cold") == "cold"
    assert fold_name("has-pet") == "has_pet"
    assert fold_name("9lives") == "n9lives"
    assert fold_name("Café") == "cafe"


def test_xor_elimination_shape():
    p, q = Atom("p", (Const("a"),)), Atom("q", (Const("a"),))
    assert eliminate_xor_iff(Xor(p, q)) == Or(And(Not(p), q), And(p, Not(q)))


def test_iff_elimination_is_equivalent():
    f = parse_formula("∀x (Plant(x) ↔ ¬Animal(x))")
    g = normalize(f)
    assert g == parse_formula("∀x ((plant(x) → ¬animal(x)) ∧ (¬animal(x) → plant(x)))")
    assert oracle.equivalent(f, parse_formula("∀x (Plant(x) → ¬Animal(x)) ∧ ∀x (¬Animal(x) → Plant(x))"))


def test_normalize_identity():
    assert normalize(parse_formula("cold(cow)")) == parse_formula("cold(cow)")


def test_name_collision():
    with pytest.raises(NameCollisionError):
        normalize_all([parse_formula("Cold(cow)"), parse_formula("cold(cow)")])


def test_signature():
    sig = signature_of([parse_formula("∀x (pet(x) → animal(x))"), parse_formula("pet(leo)")])
    assert sig.arity == {"pet": 1, "animal": 1}
    assert sig.constants == ("leo",)
    empty = signature_of([])
    assert empty.predicates == () and empty.constants == ()


def test_signature_arity_conflict_across_formulas():
    with pytest.raises(ArityMismatchError):
        signature_of([parse_formula("p(a)"), parse_formula("p(a, b)")])


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**9))
def test_normalize_preserves_meaning(seed):
    rng = random.Random(seed)
    preds, consts = random_signature(rng)
    f = random_formula(rng, preds, consts, 4)
    g = normalize(f)
    assert normalize(g) == g
    assert oracle.equivalent(f, g)
