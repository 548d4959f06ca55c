"""Answer extraction, sentence splitting and speculative-sentence filtering."""

from __future__ import annotations

import re
from dataclasses import dataclass

from chainprover.errors import AnswerExtractionError

DEFAULT_KEYWORDS = (
    "possible", "possibly", "perhaps", "might", "may", "contradict", "contradiction",
    "not necessarily", "uncertain", "unclear", "cannot determine",
)

_VERDICT = re.compile(r"\b(true|false)\b", re.IGNORECASE)
_LIST_MARK = re.compile(r"(?:^|(?<=\s))\d+\)\s*")
_SENTENCE_END = re.compile(r"(?<=[.!?])\s+")


@dataclass(frozen=True)
class RawResponse:
    reasoning_text: str
    predicted_answer: bool


def extract_answer(text: str) -> RawResponse:
    """Split a response into reasoning and its trailing True/False verdict.

    The verdict is the last ``True``/``False`` token, which must sit on the
    final non-empty line; anything else is ambiguous.
    """
    lines = [l for l in text.strip().splitlines() if l.strip()]
    if not lines:
        raise AnswerExtractionError("empty response")
    verdicts = _VERDICT.findall(lines[-1])
    if not verdicts or len({v.lower() for v in verdicts}) > 1:
        raise AnswerExtractionError(f"no unambiguous verdict in final line {lines[-1]!r}")
    reasoning = "\n".join(lines[:-1]).strip()
    if not reasoning:
        # single-line response: verdict follows the reasoning on the same line
        last = list(_VERDICT.finditer(lines[-1]))[-1]
        reasoning = lines[-1][:last.start()].strip().rstrip(":").strip()
    if not reasoning:
        raise AnswerExtractionError("response has a verdict but no reasoning")
    return RawResponse(reasoning, verdicts[-1].lower() == "true")


def split_steps(reasoning_text: str) -> list[str]:
    sentences = []
    for chunk in _LIST_MARK.split(reasoning_text or ""):
        for s in _SENTENCE_END.split(chunk.strip()):
            s = s.strip()
            if s:
                sentences.append(s)
    return sentences


def _keyword_pattern(keywords) -> re.Pattern:
    alts = sorted((r"\s+".join(map(re.escape, k.split())) for k in keywords), key=len, reverse=True)
    return re.compile(r"\b(?:" + "|".join(alts) + r")\b", re.IGNORECASE)


def filter_speculative(sentences, keywords=DEFAULT_KEYWORDS) -> tuple[list[tuple[int, str]], list[tuple[int, str]]]:
    """Partition sentences into (kept, dropped), each as (original index, sentence)."""
    if not keywords:
        return list(enumerate(sentences)), []
    pattern = _keyword_pattern(keywords)
    kept, dropped = [], []
    for i, s in enumerate(sentences):
        (dropped if pattern.search(s) else kept).append((i, s))
    return kept, dropped
