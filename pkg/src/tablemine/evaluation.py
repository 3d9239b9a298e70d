"""Scoring extracted records against gold annotations.

Records match on a configurable key subset (default: variable name,
value component, value, context). Values compare as canonical decimals
when numeric (42 == 42.0); text fields compare case-insensitively after
whitespace normalization. Matching consumes each gold record at most
once, so duplicated extractions count as false positives.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from typing import Mapping, Sequence

from .model import normalize_numeric_text, normalize_whitespace

DEFAULT_MATCH_KEYS = ("variable_name", "value_component", "value", "context")

RECORD_FIELDS = (
    "variable_name",
    "variable_subcategory",
    "value_component",
    "context",
    "value",
    "unit",
)


def canonical_value(text: str) -> str:
    """Decimal-normalized form for numbers, folded text otherwise."""
    cleaned = normalize_whitespace(normalize_numeric_text(text))
    try:
        number = Decimal(cleaned)
    except InvalidOperation:
        return cleaned.lower()
    return format(number.normalize(), "f")


def _normalize_field(name: str, value: object) -> str:
    text = "" if value is None else str(value)
    if name == "value":
        return canonical_value(text)
    return normalize_whitespace(text).lower()


def record_key(record: Mapping[str, object], keys: Sequence[str]) -> tuple[str, ...]:
    return tuple(_normalize_field(name, record.get(name)) for name in keys)


@dataclass
class EvalResult:
    tp: int
    fp: int
    fn: int
    false_positives: list[dict] = field(default_factory=list)
    false_negatives: list[dict] = field(default_factory=list)

    @property
    def precision(self) -> float:
        return self.tp / (self.tp + self.fp) if self.tp + self.fp else 0.0

    @property
    def recall(self) -> float:
        return self.tp / (self.tp + self.fn) if self.tp + self.fn else 0.0

    @property
    def f1(self) -> float:
        p, r = self.precision, self.recall
        return 2 * p * r / (p + r) if p + r else 0.0

    def to_json(self) -> dict:
        return {
            "tp": self.tp,
            "fp": self.fp,
            "fn": self.fn,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "false_positives": self.false_positives,
            "false_negatives": self.false_negatives,
        }


def evaluate(
    extracted: Sequence[Mapping[str, object]],
    gold: Sequence[Mapping[str, object]],
    keys: Sequence[str] = DEFAULT_MATCH_KEYS,
) -> EvalResult:
    """Multiset matching: each gold record is consumable once."""
    if not keys:
        raise ValueError("match keys must be non-empty")
    remaining: dict[tuple[str, ...], int] = {}
    for record in gold:
        key = record_key(record, keys)
        remaining[key] = remaining.get(key, 0) + 1
    tp = 0
    false_positives: list[dict] = []
    for record in extracted:
        key = record_key(record, keys)
        if remaining.get(key, 0) > 0:
            remaining[key] -= 1
            tp += 1
        else:
            false_positives.append(dict(record))
    false_negatives: list[dict] = []
    consumed = dict(remaining)
    for record in gold:
        key = record_key(record, keys)
        if consumed.get(key, 0) > 0:
            consumed[key] -= 1
            false_negatives.append(dict(record))
    return EvalResult(
        tp=tp,
        fp=len(false_positives),
        fn=len(false_negatives),
        false_positives=false_positives,
        false_negatives=false_negatives,
    )


def format_report(result: EvalResult, title: str = "evaluation") -> str:
    lines = [
        f"# {title}",
        f"TP {result.tp}  FP {result.fp}  FN {result.fn}",
        f"precision {result.precision:.4f}  recall {result.recall:.4f}  F1 {result.f1:.4f}",
    ]
    return "\n".join(lines) + "\n"
