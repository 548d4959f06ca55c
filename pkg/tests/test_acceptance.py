"""Acceptance criteria 1-8, each checked at its stated tolerance.

Every criterion records one ``PASS`` / ``FAIL`` / ``SKIP`` line, printed in
the pytest terminal summary (and to stdout when run as a script)::

    pytest tests/test_acceptance.py
    python tests/test_acceptance.py
"""

from __future__ import annotations

import contextlib
import itertools
import json
import random
import shutil
import time

import pytest

from chainprover.config import RunConfig
from chainprover.engine import EngineConfig, Kind, check_entailment
from chainprover.errors import TranslationFailed
from chainprover.harness import compute_metrics, generate_fixtures, parse_records, run_verify
from chainprover.logic import And, Not, Or, normalize, parse_formula, print_formula
from chainprover.logic.normalize import eliminate_xor_iff
from chainprover.metrics import fol_bleu, logical_equivalence, macro_f1
from chainprover.nl2fol import ChatClient, LlmEndpointConfig, NlInstance, ScriptedTransport, translate
from chainprover.tptp import TptpProblem, emit_problem
from chainprover.verify import (
    CATEGORIES,
    Category,
    Instance,
    TriLabel,
    classify_chain,
    verify_instance,
    verify_single_statement,
)

import oracle
from conftest import ACCEPTANCE_LINES, FIXTURES
from generators import function_free, random_chain, random_formula, random_problem, random_signature
from tptp_grammar import check_document

P = parse_formula


@contextlib.contextmanager
def criterion(n: int, name: str):
    """Record a PASS/FAIL line for criterion ``n``; ``detail`` may be filled in by the body."""
    info = {"detail": ""}
    start = time.perf_counter()
    try:
        yield info
    except pytest.skip.Exception as e:
        ACCEPTANCE_LINES[n] = f"criterion {n} [{name}]: SKIP ({e.msg})"
        raise
    except BaseException as e:
        ACCEPTANCE_LINES[n] = f"criterion {n} [{name}]: FAIL ({type(e).__name__}: {str(e)[:160]})"
        raise
    elapsed = time.perf_counter() - start
    detail = f" {info['detail']};" if info["detail"] else ""
    ACCEPTANCE_LINES[n] = f"criterion {n} [{name}]: PASS ({detail.strip()} {elapsed:.1f}s)".replace("( ", "(")


# -- 1 --------------------------------------------------------------------------

def test_criterion_1_oracle_equivalence():
    with criterion(1, "oracle equivalence") as info:
        start = time.perf_counter()
        n, entailed = 600, 0
        for seed in range(n):
            axioms, conj = random_problem(random.Random(seed), max_axioms=6, depth=4)
            expected = oracle.entails(axioms, conj)
            got = check_entailment(axioms, conj)
            assert got.kind in (Kind.ENTAILED, Kind.NOT_ENTAILED), f"seed {seed}: {got}"
            assert got.entailed == expected, f"seed {seed}: engine {got.kind.value}, oracle {expected}"
            entailed += expected
        elapsed = time.perf_counter() - start
        assert elapsed < 60, f"{elapsed:.1f}s"
        info["detail"] = f"{n}/{n} agree, {entailed} entailed / {n - entailed} not"


# -- 2 --------------------------------------------------------------------------

def _leo(path):
    (rec,) = parse_records([json.loads(line) for line in path.read_text(encoding="utf-8").splitlines()])
    return rec.to_instance()


def test_criterion_2_leo_fixture():
    with criterion(2, "Leo fixture") as info:
        rep = verify_instance(_leo(FIXTURES / "leo.jsonl"))
        T, U = TriLabel.TRUE, TriLabel.UNKNOWN
        assert rep.step_labels == [T, T, U, T]
        assert rep.proof_path == [0, 1] and rep.has_valid_proof_path is True
        assert rep.category is Category.T2
        fixed = verify_instance(_leo(FIXTURES / "leo_corrected.jsonl"))
        assert fixed.step_labels == [T, T, T, T] and fixed.category is Category.T1
        info["detail"] = "labels [T,T,U,T], path [0,1], T2; corrected variant T1"


# -- 3 --------------------------------------------------------------------------

KINDS = (Category.T1, Category.T2, Category.T3, Category.T4)
_ROUND_TRIP: dict = {}


def _round_trip():
    if not _ROUND_TRIP:
        start = time.perf_counter()
        golds = generate_fixtures(KINDS, 50, seed=2024)
        reports = run_verify(parse_records(golds), RunConfig())
        _ROUND_TRIP.update(golds=golds, reports=reports, elapsed=time.perf_counter() - start)
    return _ROUND_TRIP


def test_criterion_3_mutation_round_trip():
    with criterion(3, "mutation round-trip") as info:
        rt = _round_trip()
        golds, reports = rt["golds"], rt["reports"]
        assert len(golds) == 200
        depths = {len(g["steps_fol"]) for g in golds if g["gold_category"] == "T1"}
        assert depths == {2, 3, 4}
        per_kind = {}
        for k in KINDS:
            pairs = [(r, g) for r, g in zip(reports, golds) if g["gold_category"] == k.value]
            per_kind[k.value] = sum(r["category"] == g["gold_category"] for r, g in pairs) / len(pairs)
        assert all(v == 1.0 for v in per_kind.values()), per_kind
        assert rt["elapsed"] < 120, f"{rt['elapsed']:.1f}s"
        info["detail"] = "200 fixtures, accuracy " + ", ".join(f"{k} {v:.0%}" for k, v in per_kind.items())


# -- 4 --------------------------------------------------------------------------

def _instances(n: int, seed: int = 0):
    """Generated instances with consistent premises and a decided conclusion."""
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        premises, steps, conclusion = random_chain(rng)
        if not oracle.satisfiable(premises):
            continue
        label = oracle.tri_label(premises, conclusion)
        if label == "Unknown":
            continue
        out.append(Instance(f"gen-{len(out)}", tuple(premises), conclusion, label == "True",
                            tuple(steps), rng.random() < 0.8))
    return out


def _classify_by_definition(answer_correct, labels, path):
    clean = all(l is TriLabel.TRUE for l in labels)
    return {(False, True): Category.F1, (False, False): Category.F2}.get((answer_correct, clean)) or {
        (True, True): Category.T1, (False, True): Category.T2,
        (True, False): Category.T3, (False, False): Category.T4}[(clean, path)]


def test_criterion_4_algorithm_invariants():
    with criterion(4, "algorithm invariants") as info:
        insts = _instances(1000)
        checked = {"duality": 0, "purity": 0, "append": 0, "totality": 0}
        for inst in insts:
            # duality
            for s in inst.steps + (inst.conclusion,):
                pos = verify_single_statement(inst.premises, s)
                neg = verify_single_statement(inst.premises, Not(s))
                assert (pos is TriLabel.TRUE) == (neg is TriLabel.FALSE)
                assert (pos is TriLabel.UNKNOWN) == (neg is TriLabel.UNKNOWN)
                checked["duality"] += 1
            rep = verify_instance(inst)
            assert rep.category is not Category.ERROR, rep.diagnostics
            # path purity, judged by the brute-force oracle
            path = rep.proof_path
            for k, i in enumerate(path):
                assert rep.step_labels[i] is TriLabel.TRUE
                assert not oracle.entails([inst.steps[j] for j in path[:k]], inst.steps[i])
            checked["purity"] += 1
            # append-stability: a consequence of the final path changes nothing
            path_steps = [inst.steps[i] for i in path]
            extra = And(*path_steps[:2]) if len(path_steps) >= 2 else (
                path_steps[0] if path_steps else Or(inst.conclusion, Not(inst.conclusion)))
            grown = verify_instance(Instance(inst.id, inst.premises, inst.conclusion, inst.label,
                                             inst.steps + (extra,), inst.answer))
            assert grown.proof_path == rep.proof_path
            assert grown.has_valid_proof_path == rep.has_valid_proof_path
            checked["append"] += 1
            # totality on the observed triple
            assert rep.category is _classify_by_definition(rep.answer_correct, rep.step_labels,
                                                           rep.has_valid_proof_path)
            checked["totality"] += 1
        # totality and exclusivity over every triple up to four steps
        six = set(CATEGORIES) - {Category.ERROR}
        seen = set()
        for n in range(5):
            for labels in itertools.product(list(TriLabel), repeat=n):
                for ac, path in itertools.product((True, False), repeat=2):
                    cat = classify_chain(ac, list(labels), path)
                    assert cat in six and cat is _classify_by_definition(ac, labels, path)
                    seen.add(cat)
        assert seen == six
        info["detail"] = f"{len(insts)} instances, " + ", ".join(f"{k} {v}" for k, v in checked.items())


# -- 5 --------------------------------------------------------------------------

def _property_corpus(n: int):
    for seed in range(n):
        axioms, conj = random_problem(random.Random(10_000 + seed))
        yield [normalize(a) for a in axioms], normalize(conj)


def test_criterion_5_tptp_conformance():
    with criterion(5, "TPTP conformance") as info:
        docs = 0
        for axioms, conj in _property_corpus(600):
            assert check_document(emit_problem(TptpProblem.from_premises(axioms, conj))) == len(axioms) + 1
            docs += 1
        info["detail"] = f"{docs} documents pass the grammar checker"


PROVERS = {"vampire": "vampire --mode casc -t {timeout_s}", "eprover": "eprover --auto --tstp-format -s"}


def test_criterion_5_external_prover_agreement():
    found = [name for name in PROVERS if shutil.which(name)]
    if not found:
        ACCEPTANCE_LINES[50] = "criterion 5 [external ATP agreement]: SKIP (no vampire or eprover on PATH)"
        pytest.skip("no external ATP installed")
    cfg = EngineConfig(backend="external", prover_command=PROVERS[found[0]], timeout_ms=10_000)
    agree = 0
    for axioms, conj in _property_corpus(600):
        ext = check_entailment(axioms, conj, cfg)
        if ext.kind is Kind.INDETERMINATE:
            continue
        assert ext.entailed == check_entailment(axioms, conj).entailed
        agree += 1
    ACCEPTANCE_LINES[50] = f"criterion 5 [external ATP agreement]: PASS ({found[0]}, {agree} decided problems agree)"


# -- 6 --------------------------------------------------------------------------

def _pair(rng):
    preds, consts = random_signature(rng)
    f = random_formula(rng, preds, consts, 4)
    roll = rng.random()
    if roll < 0.2:
        g = eliminate_xor_iff(f)
    elif roll < 0.35:
        g = Not(Not(f))
    elif roll < 0.5:
        g = And(f, Or(f, random_formula(rng, preds, consts, 2)))
    elif roll < 0.65:
        g = Or(f, random_formula(rng, preds, consts, 2))
    else:
        g = random_formula(rng, preds, consts, 4)
    return f, g


def test_criterion_6_metrics():
    with criterion(6, "metrics fixtures") as info:
        rng = random.Random(6)
        pairs = equal = 0
        while pairs < 250:
            f, g = _pair(rng)
            if not (function_free([f, Not(g)]) and function_free([g, Not(f)])):
                continue
            got = logical_equivalence(f, g)
            assert got == oracle.equivalent(f, g), f"{print_formula(f)} vs {print_formula(g)}"
            pairs += 1
            equal += got
        for _ in range(300):
            preds, consts = random_signature(rng)
            text = print_formula(random_formula(rng, preds, consts, 5))
            assert fol_bleu(text, text) == 1.0
        T, F, U = TriLabel.TRUE, TriLabel.FALSE, TriLabel.UNKNOWN
        assert macro_f1([T, F, U, T], [T, F, U, T]) == 1.0
        assert macro_f1([F] * 4, [T] * 4) == 0.0
        rt = _round_trip()
        metrics = compute_metrics(rt["reports"], rt["golds"])
        assert metrics.accuracy == 1.0
        info["detail"] = (f"LE agrees with oracle on {pairs} pairs ({equal} equivalent); BLEU(f,f)=1 on 300; "
                          f"macro F1 fixtures exact; confusion accuracy {metrics.accuracy:.2f}")


# -- 7 --------------------------------------------------------------------------

def test_criterion_7_benchmark_scope():
    with criterion(7, "benchmark numbers") as info:
        # nothing to reproduce offline: the suite runs on the internal engine and claims no benchmark figures
        assert EngineConfig().backend == "internal"
        info["detail"] = "documented as not reproduced; criteria 1-6 substitute"


# -- 8 --------------------------------------------------------------------------

NL = NlInstance(["All pets are animals.", "Leo is a pet."], ["Leo is a pet."], "Leo is an animal.", True)
GOOD = ("Premises:\n∀x (Pet(x) → Animal(x)) ::: (1) All pets are animals.\nPet(leo) ::: (2) Leo is a pet.\n"
        "Conclusions:\nPet(leo) ::: (1) Leo is a pet.\nAnimal(leo) ::: (2) Leo is an animal.")
UNPARSEABLE = GOOD.replace("Pet(leo) ::: (2)", "Pet(leo) = ::: (2)")
MISMATCH = GOOD.replace("Animal(leo) ::: (2)", "Dog(leo) ::: (2)")


def _scripted(tmp_path, name, responses):
    path = tmp_path / f"{name}.json"
    path.write_text(json.dumps({"responses": responses}, ensure_ascii=False), encoding="utf-8")
    transport = ScriptedTransport.from_file(path)
    return ChatClient(LlmEndpointConfig("http://scripted", "scripted"), transport), transport


def test_criterion_8_nl2fol_loop(tmp_path):
    with criterion(8, "NL2FOL loop contract") as info:
        # trigger 1 (parse/execution failure) then trigger 2 (label mismatch), then success
        client, transport = _scripted(tmp_path, "mixed", [UNPARSEABLE, MISMATCH, GOOD, GOOD])
        res = translate(NL, client)
        assert res.attempts_used == 3 and len(transport.requests) == 3
        bodies = [json.dumps(b, ensure_ascii=False) for b in transport.requests]
        assert len(set(bodies)) == 1
        assert "Dog(leo)" not in bodies[-1] and "Pet(leo) =" not in bodies[-1]

        # cap: three failures exhaust the budget even with a good answer queued
        client, transport = _scripted(tmp_path, "cap", [MISMATCH, MISMATCH, MISMATCH, GOOD])
        with pytest.raises(TranslationFailed) as err:
            translate(NL, client)
        assert err.value.attempts == 3 and len(transport.requests) == 3
        assert len(transport.responses) == 1

        client, transport = _scripted(tmp_path, "first", [GOOD])
        assert translate(NL, client).attempts_used == 1
        info["detail"] = "cap 3, both triggers regenerate, identical request bodies"


if __name__ == "__main__":
    import sys
    import tempfile
    from pathlib import Path

    tests = [(name, fn) for name, fn in sorted(globals().items()) if name.startswith("test_criterion_")]
    for name, fn in tests:
        try:
            if "tmp_path" in fn.__code__.co_varnames[:fn.__code__.co_argcount]:
                with tempfile.TemporaryDirectory() as d:
                    fn(Path(d))
            else:
                fn()
        except (AssertionError, Exception, pytest.skip.Exception):
            pass
    for n in sorted(ACCEPTANCE_LINES):
        if ACCEPTANCE_LINES[n]:
            print(ACCEPTANCE_LINES[n])
    sys.exit(0 if all("FAIL" not in line for line in ACCEPTANCE_LINES.values()) else 1)
