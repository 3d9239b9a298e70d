"""Multinomial naive Bayes over token bags, trained in log space.

Used by both the header-row classifier and the table-purpose classifier.
Implemented directly (no external ML dependency) so the feature handling
stays exactly as documented: add-one smoothing over the training
vocabulary, unknown tokens skipped at prediction time, lexicographic
tie-breaking between equally likely classes.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence


class ModelError(ValueError):
    """Raised for empty training data or malformed model files."""


@dataclass
class NaiveBayesModel:
    """Trained multinomial model: per-class priors and token counts."""

    class_doc_counts: dict[str, int] = field(default_factory=dict)
    token_counts: dict[str, dict[str, int]] = field(default_factory=dict)
    class_token_totals: dict[str, int] = field(default_factory=dict)
    vocabulary: set[str] = field(default_factory=set)

    @property
    def classes(self) -> list[str]:
        return sorted(self.class_doc_counts)

    def log_posteriors(self, tokens: Sequence[str]) -> dict[str, float]:
        """Unnormalized log P(class) + sum log P(token|class).

        Tokens outside the training vocabulary are skipped entirely so a
        fully unseen input falls back to the class priors.
        """
        if not self.class_doc_counts:
            raise ModelError("model has no classes")
        total_docs = sum(self.class_doc_counts.values())
        vocab_size = len(self.vocabulary)
        scores: dict[str, float] = {}
        for label in self.classes:
            score = math.log(self.class_doc_counts[label] / total_docs)
            counts = self.token_counts.get(label, {})
            denom = self.class_token_totals.get(label, 0) + vocab_size
            for token in tokens:
                if token not in self.vocabulary:
                    continue
                score += math.log((counts.get(token, 0) + 1) / denom)
            scores[label] = score
        return scores

    def predict(self, tokens: Sequence[str]) -> str:
        scores = self.log_posteriors(tokens)
        best = max(scores.values())
        # ties broken by class name so prediction is deterministic
        return min(label for label, s in scores.items() if s == best)

    def predict_proba(self, tokens: Sequence[str]) -> dict[str, float]:
        scores = self.log_posteriors(tokens)
        peak = max(scores.values())
        exps = {label: math.exp(s - peak) for label, s in scores.items()}
        total = sum(exps.values())
        return {label: v / total for label, v in exps.items()}

    def to_json(self) -> dict:
        return {
            "class_doc_counts": dict(sorted(self.class_doc_counts.items())),
            "token_counts": {
                label: dict(sorted(counts.items()))
                for label, counts in sorted(self.token_counts.items())
            },
            "vocabulary": sorted(self.vocabulary),
        }

    @classmethod
    def from_json(cls, data: dict) -> "NaiveBayesModel":
        try:
            class_doc_counts = {str(k): int(v) for k, v in data["class_doc_counts"].items()}
            token_counts = {
                str(label): {str(t): int(c) for t, c in counts.items()}
                for label, counts in data["token_counts"].items()
            }
            vocabulary = {str(t) for t in data["vocabulary"]}
        except (KeyError, TypeError, AttributeError) as exc:
            raise ModelError(f"malformed model data: {exc}") from exc
        totals = {label: sum(counts.values()) for label, counts in token_counts.items()}
        for label in class_doc_counts:
            totals.setdefault(label, 0)
        return cls(
            class_doc_counts=class_doc_counts,
            token_counts=token_counts,
            class_token_totals=totals,
            vocabulary=vocabulary,
        )

    def save(self, path: str | Path) -> None:
        text = json.dumps(self.to_json(), ensure_ascii=False, sort_keys=True, indent=1) + "\n"
        Path(path).write_text(text, encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "NaiveBayesModel":
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ModelError(f"cannot read model file {path}: {exc}") from exc
        return cls.from_json(data)


def train(examples: Iterable[tuple[Sequence[str], str]]) -> NaiveBayesModel:
    """Train from (token bag, label) pairs."""
    class_doc_counts: Counter[str] = Counter()
    token_counts: dict[str, Counter[str]] = {}
    vocabulary: set[str] = set()
    for tokens, label in examples:
        class_doc_counts[label] += 1
        bag = token_counts.setdefault(label, Counter())
        for token in tokens:
            bag[token] += 1
            vocabulary.add(token)
    if not class_doc_counts:
        raise ModelError("no training examples")
    return NaiveBayesModel(
        class_doc_counts=dict(class_doc_counts),
        token_counts={label: dict(bag) for label, bag in token_counts.items()},
        class_token_totals={label: sum(bag.values()) for label, bag in token_counts.items()},
        vocabulary=vocabulary,
    )


def stratified_folds(labels: Sequence[str], k: int, seed: int = 0) -> list[list[int]]:
    """Split indices into k folds preserving per-class proportions.

    Indices within each class are shuffled with a deterministic
    linear-congruential sequence derived from the seed, then dealt
    round-robin so fold sizes differ by at most one per class.
    """
    if k < 2:
        raise ModelError("need at least 2 folds")
    by_label: dict[str, list[int]] = {}
    for i, label in enumerate(labels):
        by_label.setdefault(label, []).append(i)
    folds: list[list[int]] = [[] for _ in range(k)]
    state = seed * 2654435761 % (2**32) or 1
    for label in sorted(by_label):
        indices = by_label[label]
        # Fisher-Yates with an inline LCG keeps folds stable across runs
        for i in range(len(indices) - 1, 0, -1):
            state = (state * 1664525 + 1013904223) % (2**32)
            j = state % (i + 1)
            indices[i], indices[j] = indices[j], indices[i]
        for pos, idx in enumerate(indices):
            folds[pos % k].append(idx)
    return [sorted(fold) for fold in folds]


@dataclass(frozen=True)
class ClassMetrics:
    label: str
    tp: int
    fp: int
    fn: int

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


@dataclass(frozen=True)
class CrossValidationReport:
    per_class: tuple[ClassMetrics, ...]
    support: dict[str, int]

    @property
    def weighted_f1(self) -> float:
        total = sum(self.support.values())
        if not total:
            return 0.0
        return sum(m.f1 * self.support.get(m.label, 0) for m in self.per_class) / total

    @property
    def micro_f1(self) -> float:
        tp = sum(m.tp for m in self.per_class)
        fp = sum(m.fp for m in self.per_class)
        fn = sum(m.fn for m in self.per_class)
        p = tp / (tp + fp) if tp + fp else 0.0
        r = tp / (tp + fn) if tp + fn else 0.0
        return 2 * p * r / (p + r) if p + r else 0.0


def cross_validate(
    examples: Sequence[tuple[Sequence[str], str]], k: int = 10, seed: int = 0
) -> CrossValidationReport:
    """k-fold stratified cross-validation; aggregates confusion counts."""
    labels = [label for _, label in examples]
    folds = stratified_folds(labels, k, seed)
    label_set = sorted(set(labels))
    tp: Counter[str] = Counter()
    fp: Counter[str] = Counter()
    fn: Counter[str] = Counter()
    for fold in folds:
        held_out = set(fold)
        training = [ex for i, ex in enumerate(examples) if i not in held_out]
        if not training:
            continue
        model = train(training)
        for i in fold:
            tokens, gold = examples[i]
            predicted = model.predict(tokens)
            if predicted == gold:
                tp[gold] += 1
            else:
                fp[predicted] += 1
                fn[gold] += 1
    support = Counter(labels)
    per_class = tuple(
        ClassMetrics(label=label, tp=tp[label], fp=fp[label], fn=fn[label])
        for label in label_set
    )
    return CrossValidationReport(per_class=per_class, support=dict(support))
