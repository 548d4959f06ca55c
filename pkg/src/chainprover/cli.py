"""Command-line entry point: verify | mutate | metrics | tptp-export.

Exit codes: 0 success (individual instances may still be category Error),
2 configuration error, 3 input schema error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from chainprover import config as configuration
from chainprover import harness
from chainprover.config import ConfigError
from chainprover.errors import ChainProverError
from chainprover.records import SchemaError, dumps, read_jsonl, write_jsonl
from chainprover.verify import Category

EXIT_CONFIG = 2
EXIT_SCHEMA = 3

log = logging.getLogger("chainprover")


def _engine_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="TOML config file")
    p.add_argument("--engine", choices=["internal", "external"], dest="backend")
    p.add_argument("--prover-cmd", dest="prover_command",
                   help="external prover command; '{timeout_s}' is substituted, the problem path appended")
    p.add_argument("--timeout-ms", type=int, dest="timeout_ms")
    p.add_argument("--skolem-depth", type=int, dest="skolem_depth_bound")
    p.add_argument("--policy", choices=["lenient", "strict"])
    p.add_argument("--workers", type=int)
    p.add_argument("--seed", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chainprover", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="verify reasoning chains from a JSONL file")
    v.add_argument("input", help="instance JSONL")
    v.add_argument("--out", default="chainprover-out", help="output directory")
    v.add_argument("--llm-endpoint", dest="base_url")
    v.add_argument("--llm-model", dest="model_name")
    v.add_argument("--llm-script", dest="llm_script", help="scripted LLM responses (JSON) instead of HTTP")
    _engine_flags(v)

    m = sub.add_parser("mutate", help="generate gold and mutated classification fixtures")
    m.add_argument("--kinds", default="T1,T2,T3,T4")
    m.add_argument("--count", type=int, default=50, help="fixtures per kind")
    m.add_argument("--out", help="output JSONL (default stdout)")
    _engine_flags(m)

    s = sub.add_parser("metrics", help="score reports against gold fixtures")
    s.add_argument("reports")
    s.add_argument("gold")
    s.add_argument("--out", help="directory for metrics.json and the confusion heatmap")
    s.add_argument("--no-plot", action="store_true")
    _engine_flags(s)

    t = sub.add_parser("tptp-export", help="write TPTP problems for every verification query")
    t.add_argument("input")
    t.add_argument("--out", required=True, help="output directory")
    return parser


def _run_config(args) -> configuration.RunConfig:
    flags = {k: v for k, v in vars(args).items()
             if k in ("backend", "prover_command", "timeout_ms", "skolem_depth_bound", "policy",
                      "workers", "seed", "base_url", "model_name", "llm_script")}
    layers = []
    if getattr(args, "config", None):
        layers.append(configuration.load_file(args.config))
    layers.append(configuration.from_env())
    layers.append(flags)
    return configuration.build(*layers)


def cmd_verify(args) -> int:
    run = _run_config(args)
    records = harness.parse_records(read_jsonl(args.input))
    reports = harness.run_verify(records, run)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_jsonl(out / "reports.jsonl", reports)
    summary = harness.summarize(reports)
    (out / "summary.json").write_text(json.dumps(summary, indent=2) + "\n", encoding="utf-8")
    print(json.dumps(summary))
    return 0


def cmd_mutate(args) -> int:
    run = _run_config(args)
    try:
        kinds = [Category(k.strip()) for k in args.kinds.split(",") if k.strip()]
    except ValueError as e:
        raise ConfigError(f"bad kind: {e}") from None
    if not kinds or any(k not in (Category.T1, Category.T2, Category.T3, Category.T4) for k in kinds):
        raise ConfigError("kinds must be drawn from T1, T2, T3, T4")
    if args.count < 1:
        raise ConfigError("--count must be at least 1")
    rows = harness.generate_fixtures(kinds, args.count, run.seed or 0, run.engine)
    if args.out:
        write_jsonl(args.out, rows)
    else:
        for row in rows:
            sys.stdout.write(dumps(row) + "\n")
    return 0


def cmd_metrics(args) -> int:
    run = _run_config(args)
    report = harness.compute_metrics(read_jsonl(args.reports), read_jsonl(args.gold), run.engine)
    data = report.to_dict()
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "metrics.json").write_text(json.dumps(data, indent=2) + "\n", encoding="utf-8")
        if report.confusion is not None and not args.no_plot:
            from chainprover.plotting import plot_confusion

            plot_confusion(report.confusion, out / "confusion_heatmap.png")
    print(json.dumps(data))
    return 0


def cmd_tptp_export(args) -> int:
    records = harness.parse_records(read_jsonl(args.input))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    n = 0
    for rec in records:
        try:
            n += len(harness.export_tptp(rec, out))
        except SchemaError:
            raise
        except ChainProverError as e:
            raise SchemaError(f"{rec.id}: {e}") from e
    print(f"wrote {n} file(s) to {out}")
    return 0


COMMANDS = {
    "verify": cmd_verify,
    "mutate": cmd_mutate,
    "metrics": cmd_metrics,
    "tptp-export": cmd_tptp_export,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except SchemaError as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_SCHEMA
    except FileNotFoundError as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_SCHEMA


if __name__ == "__main__":
    sys.exit(main())
