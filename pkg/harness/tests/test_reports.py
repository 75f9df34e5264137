"""Confusion matrices, significance, report serialization, plots."""

from __future__ import annotations

import math

import numpy as np
import pytest

from classifier_harness import ConfusionMatrix, EvalReport, plot_confusion


def exact_tail_p(correct: int, n: int) -> float:
    """Oracle: P(X >= correct) for X ~ Binomial(n, 1/2), by direct summation."""
    return sum(math.comb(n, i) for i in range(correct, n + 1)) / 2.0**n


def test_counts_from_predictions():
    y_true = np.array([0, 0, 1, 1, 1, 0], dtype=np.float32)
    y_pred = np.array([0, 1, 1, 0, 1, 0], dtype=np.float32)
    m = ConfusionMatrix.from_predictions(y_true, y_pred)
    assert (m.tn, m.fp, m.fn, m.tp) == (2, 1, 1, 2)
    assert m.n == 6 and m.correct == 4
    assert m.accuracy == pytest.approx(4 / 6)


def test_constant_positive_classifier_fills_one_column():
    # Balanced labels, every prediction 1: half right, right column only.
    y_true = np.array([0.0] * 8 + [1.0] * 8)
    y_pred = np.ones(16)
    m = ConfusionMatrix.from_predictions(y_true, y_pred)
    assert m.to_rows() == [[0, 8], [0, 8]]
    assert m.accuracy == 0.5


def test_perfect_classifier_is_diagonal():
    y_true = np.array([0.0] * 5 + [1.0] * 5)
    m = ConfusionMatrix.from_predictions(y_true, y_true.copy())
    assert m.to_rows() == [[5, 0], [0, 5]]
    assert m.accuracy == 1.0


def test_cells_sum_to_n():
    rng = np.random.default_rng(5)
    y_true = rng.integers(0, 2, size=37).astype(float)
    y_pred = rng.integers(0, 2, size=37).astype(float)
    m = ConfusionMatrix.from_predictions(y_true, y_pred)
    assert sum(sum(row) for row in m.to_rows()) == 37 == m.n


def test_shape_mismatch_rejected():
    with pytest.raises(ValueError):
        ConfusionMatrix.from_predictions(np.zeros(3), np.zeros(4))


@pytest.mark.parametrize("correct,n", [(26, 40), (30, 40), (10, 20), (20, 20), (0, 10)])
def test_p_value_matches_exact_tail(correct, n):
    m = ConfusionMatrix(tn=correct, fp=n - correct, fn=0, tp=0)
    assert m.p_value_vs_chance() == pytest.approx(exact_tail_p(correct, n), abs=1e-12)


def test_p_value_decreases_with_more_correct():
    ps = [ConfusionMatrix(tn=c, fp=40 - c, fn=0, tp=0).p_value_vs_chance() for c in (20, 26, 32, 40)]
    assert ps == sorted(ps, reverse=True)
    assert ps[0] > 0.05 > ps[1]


def test_empty_matrix_p_value_is_one():
    m = ConfusionMatrix(tn=0, fp=0, fn=0, tp=0)
    assert m.p_value_vs_chance() == 1.0
    assert m.accuracy == 0.0


def test_report_accuracy_comes_from_matrix():
    report = EvalReport()
    m = ConfusionMatrix(tn=3, fp=1, fn=2, tp=4)
    report.add_split("test", m)
    entry = report.splits["test"]
    assert entry["accuracy"] == pytest.approx(m.correct / m.n)
    assert entry["confusion"] == m.to_rows()
    assert entry["n"] == m.n
    assert report.matrix("test") == m


def test_report_json_round_trip(tmp_path):
    report = EvalReport(
        config={"backbone": "InceptionV3", "epochs": 2},
        history={"loss": [0.7, 0.6], "accuracy": [0.5, 0.75]},
        nondeterminism=["threads"],
        model_size_bytes=1234,
    )
    report.add_split("train", ConfusionMatrix(tn=4, fp=0, fn=1, tp=5))
    report.add_split("test", ConfusionMatrix(tn=2, fp=2, fn=2, tp=2))
    path = tmp_path / "report.json"
    report.save(path)
    loaded = EvalReport.load(path)
    assert loaded.to_json_dict() == report.to_json_dict()


def test_plot_writes_png(tmp_path):
    m = ConfusionMatrix(tn=7, fp=1, fn=2, tp=6)
    out = plot_confusion(m, tmp_path / "conf.png", title="test")
    data = out.read_bytes()
    assert data[:8] == b"\x89PNG\r\n\x1a\n"
    assert len(data) > 1000
