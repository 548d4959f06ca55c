"""Synthetic gold chains and seeded T2/T3/T4 perturbations."""

from __future__ import annotations

import random
from dataclasses import dataclass, replace

from chainprover.engine import EngineConfig, check_entailment
from chainprover.errors import NotMutableError
from chainprover.logic.syntax import Atom, Const, ForAll, Implies, Not, Var
from chainprover.verify import Category, Instance, TriLabel, verify_instance

_ONSETS = ["b", "d", "f", "g", "j", "k", "l", "m", "n", "p", "r", "s", "t", "v", "w", "z",
           "br", "dr", "gr", "kr", "pl", "sh", "st", "tr"]
_VOWELS = ["a", "e", "i", "o", "u"]
_ENDINGS = ["pus", "mpus", "rpus", "lpus", "ntus", "mus"]
_NAMES = ["alex", "fae", "max", "polly", "rex", "sally", "sam", "stella", "wren", "sophie"]

KINDS = (Category.T2, Category.T3, Category.T4)


@dataclass(frozen=True)
class GoldChain:
    instance: Instance
    provenance: str = "synthetic"


@dataclass(frozen=True)
class MutationSpec:
    kind: Category
    rng_seed: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"mutation kind must be one of T2, T3, T4, not {self.kind}")


def _word(rng: random.Random, taken: set) -> str:
    while True:
        w = rng.choice(_ONSETS) + rng.choice(_VOWELS) + rng.choice(_ENDINGS)
        if w not in taken:
            taken.add(w)
            return w


def synthesize_gold(depth: int, rng_seed: int, check: bool = True) -> GoldChain:
    """A linear implication chain ``p0(c), p0→p1, …`` with one spare fact."""
    if not 2 <= depth <= 8:
        raise ValueError("depth must be between 2 and 8")
    rng = random.Random(rng_seed)
    taken: set = set()
    preds = [_word(rng, taken) for _ in range(depth + 1)]
    spare = _word(rng, taken)
    c, d = rng.sample(_NAMES, 2)
    x = Var("x")

    def fact(p, k):
        return Atom(p, (Const(k),))

    rules = [ForAll("x", Implies(Atom(preds[i], (x,)), Atom(preds[i + 1], (x,)))) for i in range(depth)]
    premises = (fact(preds[0], c), *rules, fact(spare, d))
    steps = tuple(fact(p, c) for p in preds[1:])
    inst = Instance(
        id=f"gold-d{depth}-s{rng_seed}",
        premises=premises,
        conclusion=fact(preds[-1], c),
        label=True,
        steps=steps,
        answer=True,
    )
    chain = GoldChain(inst)
    if check:
        got = verify_instance(inst).category
        if got is not Category.T1:
            raise AssertionError(f"synthetic gold chain classified as {got.value}")
    return chain


def _off_path_premises(inst: Instance, cfg: EngineConfig) -> list:
    out = []
    for i, p in enumerate(inst.premises):
        rest = inst.premises[:i] + inst.premises[i + 1:]
        if rest and check_entailment(rest, inst.conclusion, cfg).entailed:
            out.append(p)
    return out


def mutate_with_labels(chain: GoldChain, spec: MutationSpec,
                       cfg: EngineConfig = EngineConfig()) -> tuple[Instance, list[TriLabel]]:
    """Mutated instance plus the step labels the mutation is built to produce."""
    inst = chain.instance
    rng = random.Random(spec.rng_seed)
    steps = list(inst.steps)
    labels = [TriLabel.TRUE] * len(steps)

    if spec.kind in (Category.T3, Category.T4):
        spares = _off_path_premises(inst, cfg)
        if len(steps) < 2 or not spares:
            raise NotMutableError("T3 needs at least two steps and one off-path premise")
        # the last step decides the conclusion; without it the path cannot close
        steps.pop()
        labels.pop()
        if len(steps) >= 2 and rng.random() < 0.5:
            del steps[rng.randrange(len(steps))]
            labels.pop()
        pos = rng.randint(0, len(steps))
        steps.insert(pos, rng.choice(spares))
        labels.insert(pos, TriLabel.TRUE)

    if spec.kind in (Category.T2, Category.T4):
        negated = Not(rng.choice(inst.premises))
        # T2 keeps the final step last so the original path survives intact
        hi = len(steps) - 1 if spec.kind is Category.T2 else len(steps)
        pos = rng.randint(0, max(hi, 0))
        steps.insert(pos, negated)
        labels.insert(pos, TriLabel.FALSE)

    mutated = replace(inst, id=f"{inst.id}-{spec.kind.value}-m{spec.rng_seed}", steps=tuple(steps))
    return mutated, labels


def mutate(chain: GoldChain, spec: MutationSpec, cfg: EngineConfig = EngineConfig()) -> Instance:
    return mutate_with_labels(chain, spec, cfg)[0]
