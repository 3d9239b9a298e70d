"""Multinomial classifier with add-one smoothing, plus fold machinery.

The posterior oracle was computed by hand with exact fractions:
six training documents, ten distinct tokens, equal priors.  For the
query ("drug", "dose") the header class scores
(1/2)(2/17)(2/17) and the other class (1/2)(1/16)(1/16), which
normalizes to 1024/1313.
"""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tablemine.naive_bayes import (
    ClassMetrics,
    CrossValidationReport,
    ModelError,
    NaiveBayesModel,
    cross_validate,
    stratified_folds,
    train,
)

EXAMPLES = [
    (["coadministered", "drug"], "header"),
    (["dose", "mg", "day"], "header"),
    (["p", "value"], "header"),
    (["42"], "non_header"),
    (["nausea", "vomiting"], "non_header"),
    (["nausea", "vomiting", "42"], "non_header"),
]


class TestTraining:
    def test_counts_and_vocabulary(self):
        model = train(EXAMPLES)
        assert model.class_doc_counts == {"header": 3, "non_header": 3}
        assert len(model.vocabulary) == 10
        assert model.class_token_totals == {"header": 7, "non_header": 6}
        assert model.token_counts["header"]["drug"] == 1
        assert "drug" not in model.token_counts["non_header"]

    def test_posterior_matches_hand_computation(self):
        model = train(EXAMPLES)
        proba = model.predict_proba(["drug", "dose"])
        assert proba["header"] == pytest.approx(float(Fraction(1024, 1313)), abs=1e-12)
        assert proba["non_header"] == pytest.approx(float(Fraction(289, 1313)), abs=1e-12)
        assert model.predict(["drug", "dose"]) == "header"

    def test_log_posterior_values(self):
        model = train(EXAMPLES)
        scores = model.log_posteriors(["drug", "dose"])
        assert scores["header"] == pytest.approx(
            math.log(0.5) + 2 * math.log(Fraction(2, 17)), abs=1e-12
        )
        assert scores["non_header"] == pytest.approx(
            math.log(0.5) + 2 * math.log(Fraction(1, 16)), abs=1e-12
        )

    def test_unknown_tokens_are_skipped(self):
        # priors decide when every token is out of vocabulary
        model = train([(["a"], "pos"), (["b"], "pos"), (["c"], "neg")])
        assert model.predict(["zzz"]) == "pos"

    def test_ties_break_to_the_smallest_label(self):
        model = train([(["x"], "b"), (["x"], "a")])
        assert model.predict(["x"]) == "a"
        assert model.predict([]) == "a"

    def test_classes_sorted(self):
        model = train(EXAMPLES)
        assert model.classes == ["header", "non_header"]

    def test_empty_training_raises(self):
        with pytest.raises(ModelError):
            train([])


class TestPersistence:
    def test_round_trip(self, tmp_path):
        model = train(EXAMPLES)
        path = tmp_path / "model.json"
        model.save(path)
        back = NaiveBayesModel.load(path)
        assert back == model
        assert back.predict_proba(["drug", "dose"]) == model.predict_proba(["drug", "dose"])

    def test_malformed_json_raises_model_error(self, tmp_path):
        path = tmp_path / "model.json"
        path.write_text("{\"not\": \"a model\"}", encoding="utf-8")
        with pytest.raises(ModelError):
            NaiveBayesModel.load(path)

    def test_from_json_rejects_garbage(self):
        with pytest.raises(ModelError):
            NaiveBayesModel.from_json({"vocabulary": 3})


class TestStratifiedFolds:
    def test_k_below_two_rejected(self):
        with pytest.raises(ModelError):
            stratified_folds(["a", "b"], 1)

    def test_same_seed_same_folds(self):
        labels = ["a"] * 7 + ["b"] * 5
        assert stratified_folds(labels, 3, seed=9) == stratified_folds(labels, 3, seed=9)

    def test_folds_partition_the_indices(self):
        labels = ["a"] * 7 + ["b"] * 5 + ["c"] * 4
        folds = stratified_folds(labels, 4, seed=1)
        seen = [i for fold in folds for i in fold]
        assert sorted(seen) == list(range(len(labels)))
        assert len(folds) == 4

    def test_per_class_counts_differ_by_at_most_one(self):
        labels = ["a"] * 11 + ["b"] * 7
        folds = stratified_folds(labels, 3, seed=0)
        for cls in ("a", "b"):
            counts = [sum(labels[i] == cls for i in fold) for fold in folds]
            assert max(counts) - min(counts) <= 1

    def test_fold_indices_sorted(self):
        folds = stratified_folds(["a"] * 10, 3, seed=5)
        for fold in folds:
            assert fold == sorted(fold)


class TestCrossValidation:
    def test_separable_data_scores_one(self):
        examples = [(["alpha"], "a")] * 10 + [(["beta"], "b")] * 10
        report = cross_validate(examples, k=5, seed=0)
        assert report.weighted_f1 == pytest.approx(1.0)
        assert report.micro_f1 == pytest.approx(1.0)
        assert report.support == {"a": 10, "b": 10}

    def test_report_aggregation(self):
        per_class = (
            ClassMetrics(label="a", tp=8, fp=2, fn=2),
            ClassMetrics(label="b", tp=4, fp=2, fn=2),
        )
        report = CrossValidationReport(per_class=per_class, support={"a": 10, "b": 6})
        f1_a = per_class[0].f1
        f1_b = per_class[1].f1
        assert f1_a == pytest.approx(0.8)
        assert f1_b == pytest.approx(Fraction(2, 3), abs=1e-12)
        assert report.weighted_f1 == pytest.approx((10 * f1_a + 6 * f1_b) / 16)

    def test_class_metrics_zero_denominators(self):
        empty = ClassMetrics(label="x", tp=0, fp=0, fn=0)
        assert empty.precision == 0.0
        assert empty.recall == 0.0
        assert empty.f1 == 0.0


@given(
    st.lists(st.sampled_from(["a", "b", "c"]), min_size=6, max_size=40),
    st.integers(2, 5),
    st.integers(0, 100),
)
@settings(max_examples=60)
def test_folds_partition_property(labels, k, seed):
    folds = stratified_folds(labels, k, seed)
    flat = sorted(i for fold in folds for i in fold)
    assert flat == list(range(len(labels)))
    for label in set(labels):
        counts = [sum(labels[i] == label for i in fold) for fold in folds]
        assert max(counts) - min(counts) <= 1


@given(st.integers(0, 2**32))
@settings(max_examples=30)
def test_proba_normalizes(seed):
    model = train(EXAMPLES)
    proba = model.predict_proba(["drug", str(seed % 50)])
    assert sum(proba.values()) == pytest.approx(1.0)
    assert all(0.0 <= p <= 1.0 for p in proba.values())
