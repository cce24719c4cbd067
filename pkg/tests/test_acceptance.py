"""Acceptance suite: one test per acceptance criterion, at pinned tolerances.

Each criterion prints a single PASS/FAIL line (visible with `pytest -s` or in
captured output on failure), so `pytest tests/test_acceptance.py -s` doubles
as the acceptance report.
"""

import io
import time

import numpy as np
import pytest

from crowdsmell.anova import one_way_anova
from crowdsmell.entities import CodeEntityId, MetricVector, SmellKind
from crowdsmell.evaluation import (
    auc,
    cross_validate,
    evaluate_all,
    report_to_jsonable,
    stratified_folds,
    summarize,
    ConfusionMatrix,
)
from crowdsmell.learners import ClassifierKind, TrainParams, train_arrays
from crowdsmell.learners.mlp import loss_and_grad
from crowdsmell.learners.smo import kkt_residuals
from crowdsmell.oracle import (
    OracleDataset,
    composition_report,
    ingest_team_file,
    merge,
    write_team_csv,
)
from crowdsmell.java import parse_project
from crowdsmell.review import ReviewSession

from test_anova import FEATURE_ENVY_ROC, GOD_CLASS_ROC, LONG_METHOD_ROC
from test_evaluation import synthetic_oracle
from test_metrics_corpus import EXPECTED_CLASS, EXPECTED_METHOD, PROJECT
from test_oracle import make_dataset


def _report(number: int, label: str):
    class _Ctx:
        def __enter__(self):
            return self

        def __exit__(self, exc_type, exc, tb):
            verdict = "PASS" if exc_type is None else "FAIL"
            print(f"[{verdict}] criterion {number}: {label}")
            return False

    return _Ctx()


# -- 1. ANOVA reproduction --------------------------------------------------------


def test_criterion_1_anova_reproduction():
    with _report(1, "ANOVA reproduction of the published F/p values"):
        cases = [
            (LONG_METHOD_ROC, 1.096, (5, 30), 0.383),
            (GOD_CLASS_ROC, 0.655, (5, 30), 0.660),
            (FEATURE_ENVY_ROC, 0.585, (5, 24), 0.712),
        ]
        for grid, f_expected, df, p_expected in cases:
            start = time.perf_counter()
            result = one_way_anova(grid)
            elapsed = time.perf_counter() - start
            assert elapsed < 1.0
            assert (result.df_between, result.df_within) == df
            assert result.f_statistic == pytest.approx(f_expected, abs=0.005)
            assert result.p_value == pytest.approx(p_expected, abs=0.005)


# -- 2. Table of oracle compositions ------------------------------------------------

# (smell, year) -> (true, false) per-year counts; aggregates must reproduce
# every published combined row exactly.
_YEAR_COUNTS = {
    (SmellKind.FEATURE_ENVY, 2018): (3, 7),
    (SmellKind.FEATURE_ENVY, 2019): (110, 87),
    (SmellKind.FEATURE_ENVY, 2020): (79, 44),
    (SmellKind.GOD_CLASS, 2018): (8, 14),
    (SmellKind.GOD_CLASS, 2019): (74, 55),
    (SmellKind.GOD_CLASS, 2020): (84, 52),
    (SmellKind.LONG_METHOD, 2018): (24, 35),
    (SmellKind.LONG_METHOD, 2019): (180, 234),
    (SmellKind.LONG_METHOD, 2020): (350, 503),
}

_EXPECTED_ROWS = {
    # name -> (n, true, pct_true, false, pct_false)
    (SmellKind.FEATURE_ENVY, "2019+2018"): (207, 113, 55, 94, 45),
    (SmellKind.FEATURE_ENVY, "2020+2019"): (320, 189, 59, 131, 41),
    (SmellKind.FEATURE_ENVY, "2020+2019+2018"): (330, 192, 58, 138, 42),
    (SmellKind.GOD_CLASS, "2019+2018"): (151, 82, 54, 69, 46),
    (SmellKind.GOD_CLASS, "2020+2019"): (265, 158, 60, 107, 40),
    (SmellKind.GOD_CLASS, "2020+2019+2018"): (287, 166, 58, 121, 42),
    (SmellKind.LONG_METHOD, "2019+2018"): (473, 204, 43, 269, 57),
    (SmellKind.LONG_METHOD, "2020+2019"): (1267, 530, 42, 737, 58),
    (SmellKind.LONG_METHOD, "2020+2019+2018"): (1326, 554, 42, 772, 58),
}


def test_criterion_2_oracle_composition_arithmetic():
    with _report(2, "year-oracle merges reproduce the published composition rows"):
        for smell in SmellKind:
            years = {
                year: make_dataset(smell, str(year), t, f, year=year)
                for (s, year), (t, f) in _YEAR_COUNTS.items()
                if s is smell
            }
            combos = {
                "2019+2018": [years[2019], years[2018]],
                "2020+2019": [years[2020], years[2019]],
                "2020+2019+2018": [years[2020], years[2019], years[2018]],
            }
            for name, parts in combos.items():
                merged = merge(parts)
                assert merged.name == name
                rep = composition_report(merged)
                n, t, pt, f, pf = _EXPECTED_ROWS[(smell, name)]
                assert (rep.n, rep.true_count, rep.false_count) == (n, t, f)
                assert (rep.pct_true, rep.pct_false) == (pt, pf)


# -- 3. Metric oracle suite ----------------------------------------------------------


def test_criterion_3_metric_fixture_oracle(corpus_model):
    with _report(3, "extractor matches the hand-counted fixture corpus exactly"):
        from crowdsmell.metrics import compute_class_metrics, compute_method_metrics

        for (package, cls), expected in EXPECTED_CLASS.items():
            vec = compute_class_metrics(
                corpus_model, CodeEntityId(PROJECT, package, cls)
            )
            for acronym, value in expected.items():
                assert vec.values[acronym] == pytest.approx(value, abs=1e-12), (
                    f"{cls}.{acronym}"
                )
        for (package, cls, sig), expected in EXPECTED_METHOD.items():
            vec = compute_method_metrics(
                corpus_model, CodeEntityId(PROJECT, package, cls, sig)
            )
            for acronym, value in expected.items():
                assert vec.values[acronym] == pytest.approx(value, abs=1e-12), (
                    f"{cls}.{sig}.{acronym}"
                )


# -- 4. Evaluation invariants ---------------------------------------------------------


def _auc_bruteforce(pairs):
    pos = [s for s, l in pairs if l]
    neg = [s for s, l in pairs if not l]
    if not pos or not neg:
        return None
    wins = sum(1.0 if p > n else 0.5 if p == n else 0.0 for p in pos for n in neg)
    return wins / (len(pos) * len(neg))


def test_criterion_4_evaluation_invariants():
    with _report(4, "weighted TP rate == accuracy; AUC == brute force; fold balance"):
        # weighted TP rate equals accuracy to 10 decimals on real reports
        oracle = synthetic_oracle(n=80, seed=0)
        for kind in (ClassifierKind.NAIVE_BAYES, ClassifierKind.J48_TREE,
                     ClassifierKind.ADABOOST_M1):
            report = cross_validate(oracle, TrainParams(kind=kind, seed=1), k=10, seed=1)
            assert report.weighted.tp_rate == pytest.approx(
                report.weighted.accuracy, abs=1e-10
            )
        rng = np.random.default_rng(2024)
        for cm_args in rng.integers(0, 30, size=(50, 4)):
            cm = ConfusionMatrix(*map(int, cm_args))
            if cm.n == 0:
                continue
            _, weighted = summarize(cm)
            assert weighted.tp_rate == pytest.approx(weighted.accuracy, abs=1e-10)

        # AUC pair counting matches the O(n^2) oracle exactly, 100 sets
        for _ in range(100):
            n = int(rng.integers(2, 51))
            scores = rng.choice([0.0, 0.2, 0.4, 0.6, 0.8, 1.0], size=n)
            labels = rng.random(n) < 0.5
            pairs = list(zip(scores.tolist(), labels.tolist()))
            assert auc(pairs) == _auc_bruteforce(pairs)

        # stratified folds: per-class balance within 1, seed-deterministic
        for trial in range(20):
            n_true = int(rng.integers(1, 60))
            n_false = int(rng.integers(1, 60))
            if n_true + n_false < 10:
                continue
            y = np.array([True] * n_true + [False] * n_false)
            f1 = stratified_folds(y, k=10, seed=trial)
            f2 = stratified_folds(y, k=10, seed=trial)
            assert all(np.array_equal(a, b) for a, b in zip(f1, f2))
            for cls in (True, False):
                counts = [int((y[f] == cls).sum()) for f in f1]
                assert max(counts) - min(counts) <= 1


# -- 5. Learner sanity ----------------------------------------------------------------


def test_criterion_5_learner_sanity():
    with _report(
        5,
        "separable AUC >= 0.95 all kinds; shuffled-label null ~ 0.5; "
        "gradient/boosting/KKT checks",
    ):
        separable = synthetic_oracle(n=200, n_informative=10, seed=42)
        for kind in ClassifierKind:
            report = cross_validate(
                separable, TrainParams(kind=kind, seed=42), k=10, seed=42
            )
            assert report.weighted.roc_auc >= 0.95, kind

        # permutation null: mean pooled AUC over 50 shuffle seeds per kind
        for kind in ClassifierKind:
            aucs = []
            for s in range(50):
                shuffled = synthetic_oracle(
                    n=200, n_informative=10, seed=42, shuffle_labels=s
                )
                rep = cross_validate(
                    shuffled, TrainParams(kind=kind, seed=42), k=10, seed=42
                )
                aucs.append(rep.weighted.roc_auc)
            mean_auc = float(np.mean(aucs))
            assert 0.40 <= mean_auc <= 0.60, (kind, mean_auc)

        # MLP gradient check against central differences (<= 1e-4 relative)
        rng = np.random.default_rng(5)
        Xs = rng.uniform(0, 1, size=(5, 4))
        y01 = np.array([1.0, 0.0, 1.0, 0.0, 1.0])
        weights = {
            "W1": rng.uniform(-0.5, 0.5, size=(4, 3)),
            "b1": rng.uniform(-0.5, 0.5, size=3),
            "W2": rng.uniform(-0.5, 0.5, size=(3, 1)),
            "b2": rng.uniform(-0.5, 0.5, size=1),
        }
        _, grads = loss_and_grad(weights, Xs, y01)
        eps = 1e-6
        for key in weights:
            flat = weights[key].reshape(-1)
            for idx in range(flat.size):
                saved = flat[idx]
                flat[idx] = saved + eps
                up, _ = loss_and_grad(weights, Xs, y01)
                flat[idx] = saved - eps
                down, _ = loss_and_grad(weights, Xs, y01)
                flat[idx] = saved
                numeric = (up - down) / (2 * eps)
                analytic = grads[key].reshape(-1)[idx]
                denom = max(abs(numeric), abs(analytic), 1e-8)
                assert abs(numeric - analytic) / denom < 1e-4

        # AdaBoost reweighted round error == 1/2 within 1e-9
        rng = np.random.default_rng(6)
        Xb = rng.normal(size=(120, 5))
        yb = (Xb @ rng.normal(size=5) + 0.5 * rng.normal(size=120)) > 0
        boost = train_arrays(
            Xb, yb, [f"f{i}" for i in range(5)],
            TrainParams(kind=ClassifierKind.ADABOOST_M1, seed=3),
        )
        assert boost.state["round_errors"], "expected reweighted boosting rounds"
        for err in boost.state["round_errors"]:
            assert err == pytest.approx(0.5, abs=1e-9)

        # SMO KKT residuals within the 1e-3 working tolerance
        params = TrainParams(kind=ClassifierKind.SMO_SVM, seed=4)
        Xs2 = rng.normal(size=(90, 6))
        ys2 = (Xs2 @ rng.normal(size=6) + 0.4 * rng.normal(size=90)) > 0
        svm = train_arrays(Xs2, ys2, [f"f{i}" for i in range(6)], params)
        assert float(kkt_residuals(svm.state, params.smo_c).max()) <= 1e-3 + 1e-9


# -- 6. The full grid -----------------------------------------------------------------


def _validate_report_schema(doc: dict, k: int) -> None:
    assert isinstance(doc["dataset"], str) and isinstance(doc["classifier"], str)
    assert isinstance(doc["seed"], int) and doc["k"] == k
    assert len(doc["folds"]) == k
    for cm in [*doc["folds"], doc["pooled"]]:
        assert set(cm) == {"tp", "fp", "fn", "tn"}
        assert all(isinstance(cm[key], int) and cm[key] >= 0 for key in cm)
    for summary in [*doc["per_class"].values(), doc["weighted"]]:
        assert set(summary) == {
            "accuracy", "tp_rate", "fp_rate", "precision", "recall",
            "f_measure", "roc_auc",
        }
        for value in summary.values():
            assert value is None or isinstance(value, float)


def test_criterion_6_full_grid_runs():
    with _report(6, "108 reports (6 oracles x 3 smells x 6 kinds) under 10 minutes"):
        start = time.perf_counter()
        oracles = []
        for smell_index, smell in enumerate(SmellKind):
            years = {
                year: synthetic_oracle(
                    n=40 + 30 * i, seed=smell_index * 10 + i, smell=smell
                )
                for i, year in enumerate((2018, 2019, 2020))
            }
            for year in (2018, 2019, 2020):
                years[year].name = str(year)
            oracles += [
                years[2018],
                years[2019],
                merge([years[2019], years[2018]]),
                years[2020],
                merge([years[2020], years[2019]]),
                merge([years[2020], years[2019], years[2018]]),
            ]
        assert len(oracles) == 18
        reports = evaluate_all(oracles, seed=11, k=10)
        elapsed = time.perf_counter() - start
        assert len(reports) == 108
        for report in reports:
            _validate_report_schema(report_to_jsonable(report), k=10)
        assert elapsed < 600, f"grid took {elapsed:.0f}s"


# -- 7. Review round-trip --------------------------------------------------------------


def test_criterion_7_review_export_roundtrip(tmp_path, corpus_root):
    with _report(7, "export -> ingest -> composition equals the verdict log, byte-exact"):
        model = parse_project(corpus_root)
        session = ReviewSession("acc", model, tmp_path / "acc")
        session.register_team("alpha")
        session.register_team("beta")
        candidates = sorted(session.candidates[SmellKind.LONG_METHOD])
        rng = np.random.default_rng(0)
        tally = {True: 0, False: 0}
        for team in ("alpha", "beta"):
            for cand_id in candidates[:10]:
                label = bool(rng.random() < 0.5)
                session.submit_verdict(cand_id, label, team)
                tally[label] += 1
        csv_text = session.export_classifications(SmellKind.LONG_METHOD, 2024)
        path = tmp_path / "export.csv"
        path.write_text(csv_text)
        instances = ingest_team_file(path, SmellKind.LONG_METHOD, 2024)
        rep = composition_report(
            OracleDataset("rt", SmellKind.LONG_METHOD, instances)
        )
        assert (rep.true_count, rep.false_count) == (tally[True], tally[False])
        buf = io.StringIO()
        write_team_csv(instances, SmellKind.LONG_METHOD, buf)
        assert buf.getvalue() == csv_text  # byte-exact both directions
