"""Batch orchestration behind the CLI subcommands."""

from __future__ import annotations

import logging
import re
from collections import Counter
from concurrent.futures import ProcessPoolExecutor, ThreadPoolExecutor
from dataclasses import replace
from pathlib import Path

from chainprover.config import ConfigError, RunConfig
from chainprover.engine import EngineConfig
from chainprover.errors import ChainProverError, EngineError, EquivalenceUndecidedError, TranslationFailed
from chainprover.logic import Not, normalize, parse_formula, print_formula
from chainprover.metrics import (
    ExecutionRecord,
    MetricReport,
    category_confusion,
    execution_accuracy,
    execution_rate,
    fol_bleu,
    logical_equivalence,
    macro_f1,
)
from chainprover.mutator import MutationSpec, mutate_with_labels, synthesize_gold
from chainprover.nl2fol import (
    ChatClient,
    NlInstance,
    ScriptedTransport,
    dedup_steps,
    extract_answer,
    filter_speculative,
    split_steps,
    translate,
)
from chainprover.records import InstanceRecord, SchemaError, instance_to_record, parse_category, parse_labels
from chainprover.tptp import TptpProblem, emit_problem
from chainprover.verify import CATEGORIES, Category, Instance, TriLabel, VerificationReport, verify_instance

log = logging.getLogger(__name__)

_ERROR_CODES_NOT_EXECUTED = {"fol_parse", "engine_error", "translation_failed"}


def _report(base: VerificationReport, **extra) -> dict:
    out = base.to_dict()
    out.update(extra)
    return out


def _printed(inst: Instance) -> dict:
    return {
        "premises_fol": [print_formula(f) for f in inst.premises],
        "steps_fol": [print_formula(f) for f in inst.steps],
        "conclusion_fol": print_formula(inst.conclusion),
    }


def verify_gold_fol(rec: InstanceRecord, cfg: EngineConfig) -> dict:
    try:
        inst = rec.to_instance()
    except ChainProverError as e:
        rep = VerificationReport(rec.id, Category.ERROR, diagnostics=[("fol_parse", str(e))])
        return _report(rep, executed=False, first_attempt_match=False, attempts_used=0)
    rep = verify_instance(inst, cfg)
    codes = {code for code, _ in rep.diagnostics}
    executed = not (codes & _ERROR_CODES_NOT_EXECUTED)
    match = executed and not ({"label_mismatch", "contradiction"} & codes)
    return _report(rep, executed=executed, first_attempt_match=match, attempts_used=0, **_printed(inst))


def _nl_steps(rec: InstanceRecord, keywords) -> tuple[list[int], list[str], list[str]]:
    """Kept (index, sentence) pairs after splitting and speculative filtering."""
    steps = rec.steps
    if not steps and rec.response:
        steps = split_steps(extract_answer(rec.response).reasoning_text)
    kept, dropped = filter_speculative(steps, keywords)
    return [i for i, _ in kept], [s for _, s in kept], [s for _, s in dropped]


def verify_nl(rec: InstanceRecord, run: RunConfig, client: ChatClient) -> dict:
    cfg = run.engine
    indices, steps, dropped = _nl_steps(rec, run.keywords)
    nl = NlInstance(rec.premises, steps, rec.conclusion, rec.label)
    try:
        tr = translate(nl, client, cfg)
    except TranslationFailed as e:
        rep = VerificationReport(rec.id, Category.ERROR, diagnostics=[("translation_failed", str(e))])
        return _report(rep, executed=e.first_attempt_executed, first_attempt_match=e.first_attempt_match,
                       attempts_used=e.attempts)
    try:
        keep = dedup_steps(tr.step_fols, cfg)
    except EngineError as e:
        rep = VerificationReport(rec.id, Category.ERROR, diagnostics=[("engine_error", str(e))])
        return _report(rep, executed=False, first_attempt_match=tr.first_attempt_match,
                       attempts_used=tr.attempts_used)
    inst = Instance(rec.id, tuple(tr.premise_fols), tr.conclusion_fol, rec.label,
                    tuple(tr.step_fols[i] for i in keep), rec.answer)
    rep = verify_instance(inst, cfg)
    rep.diagnostics[:0] = [("repair", r) for r in tr.repairs]
    if dropped:
        rep.diagnostics.insert(0, ("filtered", f"{len(dropped)} speculative sentence(s) dropped"))
    return _report(rep, executed=tr.first_attempt_executed, first_attempt_match=tr.first_attempt_match,
                   attempts_used=tr.attempts_used, step_indices=[indices[i] for i in keep],
                   premises_fol_text=tr.premise_texts, **_printed(inst))


def parse_records(rows) -> list[InstanceRecord]:
    return [InstanceRecord.from_json(obj, line=i) for i, obj in enumerate(rows, start=1)]


def make_client(run: RunConfig) -> ChatClient | None:
    if run.llm_script:
        from chainprover.nl2fol.llm import LlmEndpointConfig

        llm = run.llm or LlmEndpointConfig(base_url="file://" + run.llm_script, model_name="scripted")
        return ChatClient(llm, ScriptedTransport.from_file(run.llm_script))
    if run.llm:
        return ChatClient(run.llm)
    return None


def _fol_job(args):
    rec, cfg = args
    return verify_gold_fol(rec, cfg)


def run_verify(records: list[InstanceRecord], run: RunConfig) -> list[dict]:
    """Reports in input order, whatever the worker count."""
    needs_llm = [r.id for r in records if not r.has_fol]
    client = make_client(run) if needs_llm else None
    if needs_llm and client is None:
        raise ConfigError(f"instances without FOL fields need an LLM endpoint: {needs_llm[:3]}")
    if not needs_llm and run.workers > 1 and len(records) > 1:
        with ProcessPoolExecutor(max_workers=run.workers) as pool:
            return list(pool.map(_fol_job, [(r, run.engine) for r in records], chunksize=4))

    def job(rec: InstanceRecord) -> dict:
        return verify_gold_fol(rec, run.engine) if rec.has_fol else verify_nl(rec, run, client)

    if run.workers > 1:
        with ThreadPoolExecutor(max_workers=run.workers) as pool:
            return list(pool.map(job, records))
    return [job(r) for r in records]


def summarize(reports) -> dict:
    counts = Counter(r["category"] for r in reports)
    return {"total": len(reports), "categories": {c.value: counts.get(c.value, 0) for c in CATEGORIES}}


# -- mutate ---------------------------------------------------------------------

DEPTHS = (2, 3, 4)


def generate_fixtures(kinds, count: int, seed: int, cfg: EngineConfig = EngineConfig()) -> list[dict]:
    """``count`` fixtures per kind, cycling chain depth over 2..4."""
    if count < 1:
        raise ValueError("count must be at least 1")
    rows = []
    for kind in kinds:
        for i in range(count):
            depth = DEPTHS[i % len(DEPTHS)]
            fixture_seed = seed * 1_000_003 + i
            gold = synthesize_gold(depth, fixture_seed)
            if kind is Category.T1:
                inst = replace(gold.instance, id=f"{gold.instance.id}-T1")
                labels = [TriLabel.TRUE] * len(inst.steps)
            else:
                inst, labels = mutate_with_labels(gold, MutationSpec(kind, fixture_seed), cfg)
            rows.append(instance_to_record(
                inst, gold_category=kind.value, gold_step_labels=[l.value for l in labels]))
    return rows


# -- metrics --------------------------------------------------------------------

def compute_metrics(reports: list[dict], golds: list[dict], cfg: EngineConfig = EngineConfig()) -> MetricReport:
    if not golds:
        raise SchemaError("gold file is empty")
    by_id = {r.get("id"): r for r in reports}
    gold_ids = [g.get("id") for g in golds]
    if set(by_id) != set(gold_ids) or len(gold_ids) != len(set(gold_ids)):
        missing = sorted(set(gold_ids) - set(by_id), key=str)[:5]
        extra = sorted(set(by_id) - set(gold_ids), key=str)[:5]
        raise SchemaError(f"report and gold ids do not align (missing {missing}, unexpected {extra})")

    out = MetricReport()
    pairs = [(by_id[g["id"]], g) for g in golds]

    records = [ExecutionRecord(bool(r.get("executed")), r.get("first_attempt_match")) for r, _ in pairs]
    out.execution_rate = execution_rate(records)
    try:
        out.execution_accuracy = execution_accuracy(records)
    except ChainProverError as e:
        out.notes.append(f"execution accuracy undefined: {e}")

    bleu, equiv = [], []
    for r, g in pairs:
        cand, ref = r.get("premises_fol_text") or r.get("premises_fol"), g.get("premises_fol")
        if not cand or not ref or len(cand) != len(ref):
            continue
        for c_text, r_text in zip(cand, ref):
            bleu.append(fol_bleu(c_text, r_text))
            try:
                cf, rf = normalize(parse_formula(c_text)), normalize(parse_formula(r_text))
                equiv.append(logical_equivalence(cf, rf, cfg))
            except (ChainProverError, EquivalenceUndecidedError) as e:
                out.notes.append(f"{g['id']}: equivalence not decided: {e}")
                equiv.append(False)
    if bleu:
        out.fol_bleu = sum(bleu) / len(bleu)
        out.logical_equivalence_rate = sum(equiv) / len(equiv)

    pred_labels, gold_labels = [], []
    for r, g in pairs:
        if g.get("gold_step_labels") is None:
            continue
        gl = parse_labels(g["gold_step_labels"])
        if r.get("step_labels") is None or len(r["step_labels"]) != len(gl):
            out.notes.append(f"{g['id']}: step labels unavailable or misaligned; skipped for macro F1")
            continue
        pred_labels += parse_labels(r["step_labels"])
        gold_labels += gl
    if gold_labels:
        out.macro_f1 = macro_f1(pred_labels, gold_labels)

    cats = [(r["category"], g["gold_category"]) for r, g in pairs if g.get("gold_category")]
    if cats:
        for p, g in cats:
            parse_category(p), parse_category(g)
        out.confusion = category_confusion([p for p, _ in cats], [g for _, g in cats])
        out.accuracy = out.confusion.accuracy
    return out


# -- tptp export ----------------------------------------------------------------

_UNSAFE = re.compile(r"[^A-Za-z0-9_.-]")


def export_tptp(rec: InstanceRecord, out_dir: Path) -> list[Path]:
    if not rec.has_fol:
        raise SchemaError(f"{rec.id}: FOL fields are required for TPTP export")
    inst = rec.to_instance()
    stem = _UNSAFE.sub("_", rec.id)
    files = {f"{stem}.p": emit_problem(TptpProblem.from_premises(inst.premises, inst.conclusion))}
    for k, step in enumerate(inst.steps, start=1):
        files[f"{stem}.step{k}.p"] = emit_problem(TptpProblem.from_premises(inst.premises, step))
        files[f"{stem}.step{k}.neg.p"] = emit_problem(TptpProblem.from_premises(inst.premises, Not(step)))
    written = []
    for name, text in files.items():
        path = out_dir / name
        path.write_text(text, encoding="utf-8", newline="\n")
        written.append(path)
    return written
