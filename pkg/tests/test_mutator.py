import pytest

from chainprover.errors import NotMutableError
from chainprover.logic import parse_formula
from chainprover.mutator import GoldChain, MutationSpec, mutate, mutate_with_labels, synthesize_gold
from chainprover.verify import Category, Instance, TriLabel, verify_instance

import oracle


def test_gold_depth_two_shape():
    inst = synthesize_gold(2, 0).instance
    p0, rule1, rule2, spare = inst.premises
    assert rule1.body.left.pred == p0.pred
    assert rule2.body.left.pred == rule1.body.right.pred
    assert [s.pred for s in inst.steps] == [rule1.body.right.pred, rule2.body.right.pred]
    assert inst.conclusion == inst.steps[-1]
    assert spare.args != p0.args
    assert verify_instance(inst).category is Category.T1


def test_gold_is_seeded_and_fresh():
    a, b = synthesize_gold(4, 11).instance, synthesize_gold(4, 11).instance
    assert a == b and len(a.premises) == 6 and len(a.steps) == 4
    assert synthesize_gold(4, 12).instance.premises != a.premises


@pytest.mark.parametrize("depth", [1, 9])
def test_gold_depth_bounds(depth):
    with pytest.raises(ValueError):
        synthesize_gold(depth, 0)


def test_mutation_spec_rejects_t1():
    with pytest.raises(ValueError):
        MutationSpec(Category.T1, 0)


@pytest.mark.parametrize("kind", [Category.T2, Category.T3, Category.T4])
@pytest.mark.parametrize("seed", range(6))
def test_mutations_classify_as_intended(kind, seed):
    gold = synthesize_gold(2 + seed % 3, seed)
    inst, labels = mutate_with_labels(gold, MutationSpec(kind, seed))
    rep = verify_instance(inst)
    assert rep.category is kind
    assert rep.step_labels == labels
    # the intended labels agree with brute-force model search too
    assert [oracle.tri_label(inst.premises, s) for s in inst.steps] == [l.value for l in labels]


def test_t2_keeps_original_path():
    gold = synthesize_gold(3, 5)
    inst, labels = mutate_with_labels(gold, MutationSpec(Category.T2, 5))
    assert labels.count(TriLabel.FALSE) == 1
    assert [s for s in inst.steps if s in gold.instance.steps] == list(gold.instance.steps)


def test_mutate_is_deterministic():
    gold = synthesize_gold(3, 1)
    spec = MutationSpec(Category.T4, 99)
    assert mutate(gold, spec) == mutate(gold, spec)


def test_not_mutable_without_spare_premise():
    P = parse_formula
    inst = Instance("g", (P("p(a)"), P("∀x (p(x) → q(x))")), P("q(a)"), True, (P("p(a)"), P("q(a)")), True)
    with pytest.raises(NotMutableError):
        mutate(GoldChain(inst), MutationSpec(Category.T3, 0))
