"""Pragmatic classification: what a table is communicating.

Drug-label corpora carry section codes, so a single code-to-class rule
suffices there. Article tables are classified by a naive Bayes model
over field-prefixed stemmed tokens (caption, headers, stubs, super-rows,
data, referring sentences) plus quartile-binned size/shape features.
"""

from __future__ import annotations

import json
import statistics
from bisect import bisect_right
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence

from . import naive_bayes
from .functional import is_numeric_text, tokenize
from .model import CellRole, TableGrid

DEFAULT_CLASSES = (
    "adverse events",
    "baseline characteristics",
    "inclusion/exclusion criteria",
    "other",
)

QUANT_FEATURES = (
    "n_rows",
    "n_cols",
    "n_cells",
    "pct_empty",
    "pct_numeric",
    "pct_text",
    "order_in_doc",
)

_FIELD_ROLES = {
    "header": CellRole.HEADER,
    "stub": CellRole.STUB,
    "superrow": CellRole.SUPER_ROW,
    "data": CellRole.DATA,
}


class InsufficientTrainingData(ValueError):
    """Fewer than two classes or too few examples per class."""


@dataclass(frozen=True)
class PragmaticFeatureVector:
    table_id: str
    caption_tokens: tuple[str, ...]
    header_tokens: tuple[str, ...]
    stub_tokens: tuple[str, ...]
    superrow_tokens: tuple[str, ...]
    data_tokens: tuple[str, ...]
    referring_tokens: tuple[str, ...]
    n_rows: int
    n_cols: int
    n_cells: int
    pct_empty: float
    pct_numeric: float
    pct_text: float
    order_in_doc: int

    def text_tokens(self) -> list[str]:
        """All token bags with their field prefix applied."""
        out: list[str] = []
        for prefix, bag in (
            ("caption", self.caption_tokens),
            ("header", self.header_tokens),
            ("stub", self.stub_tokens),
            ("superrow", self.superrow_tokens),
            ("data", self.data_tokens),
            ("referring", self.referring_tokens),
        ):
            out.extend(f"{prefix}:{token}" for token in bag)
        return out

    def quantitative(self) -> dict[str, float]:
        return {name: float(getattr(self, name)) for name in QUANT_FEATURES}


def extract_features(grid: TableGrid) -> PragmaticFeatureVector:
    """Deterministic features from a role-assigned grid."""
    role_tokens: dict[str, list[str]] = {field: [] for field in _FIELD_ROLES}
    n_empty = n_numeric = n_text = 0
    for cell in grid.iter_cells():
        if cell.is_spanning_origin:
            for field, role in _FIELD_ROLES.items():
                if cell.role is role and cell.content:
                    role_tokens[field].extend(tokenize(cell.content, stemmed=True))
        if not cell.content:
            n_empty += 1
        elif is_numeric_text(cell.content):
            n_numeric += 1
        else:
            n_text += 1
    n_cells = grid.rows * grid.cols
    referring = [
        token
        for sentence in grid.referring_sentences
        for token in tokenize(sentence, stemmed=True)
    ]
    return PragmaticFeatureVector(
        table_id=grid.table_id,
        caption_tokens=tuple(tokenize(grid.caption, stemmed=True)),
        header_tokens=tuple(role_tokens["header"]),
        stub_tokens=tuple(role_tokens["stub"]),
        superrow_tokens=tuple(role_tokens["superrow"]),
        data_tokens=tuple(role_tokens["data"]),
        referring_tokens=tuple(referring),
        n_rows=grid.rows,
        n_cols=grid.cols,
        n_cells=n_cells,
        pct_empty=n_empty / n_cells,
        pct_numeric=n_numeric / n_cells,
        pct_text=n_text / n_cells,
        order_in_doc=grid.order_in_doc,
    )


# ---------------------------------------------------------------------------
# model


def _fit_bins(values: Sequence[float]) -> list[float]:
    """Quartile cut points; degenerate inputs collapse to one bin."""
    distinct = sorted(set(values))
    if len(distinct) < 2:
        return []
    return list(statistics.quantiles(values, n=4))


def _bin_token(name: str, value: float, cuts: Sequence[float]) -> str:
    return f"{name}:q{bisect_right(cuts, value)}"


@dataclass(frozen=True)
class PragmaticModel:
    classes: tuple[str, ...]
    nb: naive_bayes.NaiveBayesModel
    bins: dict[str, tuple[float, ...]]

    def tokens(self, features: PragmaticFeatureVector) -> list[str]:
        tokens = features.text_tokens()
        quantitative = features.quantitative()
        for name in QUANT_FEATURES:
            tokens.append(_bin_token(name, quantitative[name], self.bins.get(name, ())))
        return tokens

    def save(self, path: str | Path) -> None:
        data = {
            "classes": list(self.classes),
            "bins": {name: list(cuts) for name, cuts in sorted(self.bins.items())},
            "model": self.nb.to_json(),
        }
        text = json.dumps(data, ensure_ascii=False, sort_keys=True, indent=1) + "\n"
        Path(path).write_text(text, encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "PragmaticModel":
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        return cls(
            classes=tuple(data["classes"]),
            nb=naive_bayes.NaiveBayesModel.from_json(data["model"]),
            bins={name: tuple(cuts) for name, cuts in data["bins"].items()},
        )


def train_pragmatic(
    labelled: Sequence[tuple[PragmaticFeatureVector, str]],
    *,
    min_per_class: int = 5,
) -> PragmaticModel:
    counts = Counter(label for _, label in labelled)
    if len(counts) < 2:
        raise InsufficientTrainingData(f"need at least 2 classes, got {len(counts)}")
    small = [label for label, n in sorted(counts.items()) if n < min_per_class]
    if small:
        raise InsufficientTrainingData(
            f"need at least {min_per_class} examples per class; short: {small}"
        )
    bins = {
        name: tuple(_fit_bins([fv.quantitative()[name] for fv, _ in labelled]))
        for name in QUANT_FEATURES
    }
    model = PragmaticModel(classes=tuple(sorted(counts)), nb=naive_bayes.NaiveBayesModel(), bins=bins)
    examples = [(model.tokens(fv), label) for fv, label in labelled]
    return PragmaticModel(classes=model.classes, nb=naive_bayes.train(examples), bins=bins)


def classify_pragmatic(
    features: PragmaticFeatureVector, model: PragmaticModel
) -> tuple[str, float]:
    tokens = model.tokens(features)
    label = model.nb.predict(tokens)
    score = model.nb.predict_proba(tokens)[label]
    return label, score


def classify_by_section(
    grid: TableGrid, rules: Mapping[str, str]
) -> Optional[str]:
    """Section-code rule; None when no rule applies (caller falls back)."""
    if grid.section_code is None:
        return None
    return rules.get(grid.section_code)


def load_section_rules(path: str | Path) -> dict[str, str]:
    """Tab-separated `section_code<TAB>class` lines."""
    rules: dict[str, str] = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        code, _, label = line.partition("\t")
        if code.strip() and label.strip():
            rules[code.strip()] = label.strip()
    return rules


def cross_validate_pragmatic(
    labelled: Sequence[tuple[PragmaticFeatureVector, str]],
    k: int = 10,
    seed: int = 0,
) -> naive_bayes.CrossValidationReport:
    """k-fold CV with per-fold bin fitting (no leakage from held-out folds)."""
    labels = [label for _, label in labelled]
    folds = naive_bayes.stratified_folds(labels, k, seed)
    tp: Counter[str] = Counter()
    fp: Counter[str] = Counter()
    fn: Counter[str] = Counter()
    for fold in folds:
        held_out = set(fold)
        training = [ex for i, ex in enumerate(labelled) if i not in held_out]
        if not training or len({label for _, label in training}) < 2:
            continue
        model = train_pragmatic(training, min_per_class=1)
        for i in fold:
            features, gold = labelled[i]
            predicted, _ = classify_pragmatic(features, model)
            if predicted == gold:
                tp[gold] += 1
            else:
                fp[predicted] += 1
                fn[gold] += 1
    support = Counter(labels)
    per_class = tuple(
        naive_bayes.ClassMetrics(label=label, tp=tp[label], fp=fp[label], fn=fn[label])
        for label in sorted(support)
    )
    return naive_bayes.CrossValidationReport(per_class=per_class, support=dict(support))


def features_for_tables(
    grids: Iterable[TableGrid],
) -> dict[str, PragmaticFeatureVector]:
    return {grid.table_id: extract_features(grid) for grid in grids}
