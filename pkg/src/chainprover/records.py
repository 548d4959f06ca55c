"""JSONL wire records for instances, reports and fixtures."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from chainprover.errors import ChainProverError
from chainprover.logic import normalize_all, parse_formula, print_formula
from chainprover.verify import Category, Instance, TriLabel


class SchemaError(ChainProverError, ValueError):
    pass


_BOOL = {"True": True, "False": False}


def _str_list(obj: dict, key: str, line: int, required: bool = True) -> list[str] | None:
    if key not in obj or obj[key] is None:
        if required:
            raise SchemaError(f"line {line}: missing field {key!r}")
        return None
    value = obj[key]
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise SchemaError(f"line {line}: {key!r} must be a list of strings")
    return value


@dataclass
class InstanceRecord:
    id: str
    premises: list[str]
    conclusion: str
    label: bool
    steps: list[str]
    answer: bool
    premises_fol: list[str] | None = None
    conclusion_fol: str | None = None
    steps_fol: list[str] | None = None
    response: str | None = None
    extra: dict = field(default_factory=dict)

    @property
    def has_fol(self) -> bool:
        return self.premises_fol is not None and self.conclusion_fol is not None

    @classmethod
    def from_json(cls, obj, line: int = 0) -> "InstanceRecord":
        if not isinstance(obj, dict):
            raise SchemaError(f"line {line}: expected a JSON object")
        for key in ("id", "conclusion"):
            if not isinstance(obj.get(key), str):
                raise SchemaError(f"line {line}: {key!r} must be a string")
        for key in ("label", "answer"):
            if obj.get(key) not in _BOOL:
                raise SchemaError(f"line {line}: {key!r} must be \"True\" or \"False\"")
        premises = _str_list(obj, "premises", line)
        steps = _str_list(obj, "steps", line, required=False) or []
        premises_fol = _str_list(obj, "premises_fol", line, required=False)
        steps_fol = _str_list(obj, "steps_fol", line, required=False)
        conclusion_fol = obj.get("conclusion_fol")
        if conclusion_fol is not None and not isinstance(conclusion_fol, str):
            raise SchemaError(f"line {line}: 'conclusion_fol' must be a string")
        if premises_fol is not None and premises and len(premises_fol) != len(premises):
            raise SchemaError(f"line {line}: premises and premises_fol differ in length")
        if steps_fol is not None and steps and len(steps_fol) != len(steps):
            raise SchemaError(f"line {line}: steps and steps_fol differ in length")
        if not premises and not premises_fol:
            raise SchemaError(f"line {line}: at least one premise is required")
        known = {"id", "premises", "conclusion", "label", "steps", "answer", "premises_fol",
                 "conclusion_fol", "steps_fol", "response"}
        return cls(
            id=obj["id"],
            premises=premises,
            conclusion=obj["conclusion"],
            label=_BOOL[obj["label"]],
            steps=steps,
            answer=_BOOL[obj["answer"]],
            premises_fol=premises_fol,
            conclusion_fol=conclusion_fol,
            steps_fol=steps_fol,
            response=obj.get("response"),
            extra={k: v for k, v in obj.items() if k not in known},
        )

    def to_instance(self) -> Instance:
        """Parse and normalize the FOL fields (gold-FOL mode)."""
        texts = [*self.premises_fol, *(self.steps_fol or []), self.conclusion_fol]
        formulas, _ = normalize_all(parse_formula(t) for t in texts)
        n, m = len(self.premises_fol), len(self.steps_fol or [])
        return Instance(
            id=self.id,
            premises=tuple(formulas[:n]),
            conclusion=formulas[-1],
            label=self.label,
            steps=tuple(formulas[n:n + m]),
            answer=self.answer,
        )


def instance_to_record(inst: Instance, **extra) -> dict:
    premises = [print_formula(f) for f in inst.premises]
    steps = [print_formula(f) for f in inst.steps]
    conclusion = print_formula(inst.conclusion)
    rec = {
        "id": inst.id,
        "premises": premises,
        "conclusion": conclusion,
        "label": str(inst.label),
        "steps": steps,
        "answer": str(inst.answer),
        "premises_fol": premises,
        "conclusion_fol": conclusion,
        "steps_fol": steps,
    }
    rec.update(extra)
    return rec


def read_jsonl(path: str | Path) -> list[dict]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for n, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                out.append(json.loads(line))
            except json.JSONDecodeError as e:
                raise SchemaError(f"line {n}: invalid JSON: {e}") from e
    return out


def dumps(obj) -> str:
    return json.dumps(obj, ensure_ascii=False)


def write_jsonl(path: str | Path, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for row in rows:
            fh.write(dumps(row) + "\n")


def parse_category(value: str) -> Category:
    try:
        return Category(value)
    except ValueError:
        raise SchemaError(f"unknown category {value!r}") from None


def parse_labels(values) -> list[TriLabel]:
    try:
        return [TriLabel(v) for v in values]
    except ValueError as e:
        raise SchemaError(str(e)) from None
