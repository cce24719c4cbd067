"""End-to-end command-line flows."""

import csv
import json

import pytest
from click.testing import CliRunner

from crowdsmell.cli import main
from crowdsmell.entities import SmellKind
from crowdsmell.oracle import write_team_csv

from test_oracle import make_instance


@pytest.fixture()
def runner():
    return CliRunner()


def _team_file(tmp_path, name, smell, labels, team="t1"):
    path = tmp_path / name
    instances = [
        make_instance(smell, i, label, team=team) for i, label in enumerate(labels)
    ]
    write_team_csv(instances, smell, path)
    return path


def test_version_and_unknown_subcommand(runner):
    ok = runner.invoke(main, ["--version"])
    assert ok.exit_code == 0 and "crowdsmell" in ok.output
    bad = runner.invoke(main, ["frobnicate"])
    assert bad.exit_code == 2


def test_extract_writes_csv_and_sidecar(runner, corpus_root, tmp_path):
    out = tmp_path / "metrics.csv"
    res = runner.invoke(
        main,
        ["extract", "--root", str(corpus_root), "--scope", "method", "--out", str(out)],
    )
    assert res.exit_code == 0, res.output
    rows = list(csv.reader(out.open()))
    assert rows[0][:4] == ["project", "package", "class", "method"]
    assert len(rows[0]) == 4 + 82
    assert len(rows) == 1 + 24
    meta = json.loads((tmp_path / "metrics.csv.meta.json").read_text())
    assert meta["tool"] == "crowdsmell" and "version" in meta


def test_oracle_build_merge_report_roundtrip(runner, tmp_path):
    smell = SmellKind.GOD_CLASS
    t1 = _team_file(tmp_path, "t1.csv", smell, [True, False, True], team="t1")
    t2 = _team_file(tmp_path, "t2.csv", smell, [False, False], team="t2")
    y2019 = tmp_path / "2019.csv"
    res = runner.invoke(
        main,
        ["oracle", "build", "--smell", "god_class", "--year", "2019",
         "--inputs", str(t1), "--inputs", str(t2), "--out", str(y2019)],
    )
    assert res.exit_code == 0, res.stderr
    t3 = _team_file(tmp_path, "t3.csv", smell, [True, True], team="t3")
    y2020 = tmp_path / "2020.csv"
    runner.invoke(
        main,
        ["oracle", "build", "--smell", "god_class", "--year", "2020",
         "--inputs", str(t3), "--out", str(y2020)],
    )
    merged = tmp_path / "merged.csv"
    res = runner.invoke(
        main,
        ["oracle", "merge", "--smell", "god_class",
         "--inputs", str(y2020), "--inputs", str(y2019), "--out", str(merged)],
    )
    assert res.exit_code == 0, res.stderr
    res = runner.invoke(
        main, ["oracle", "report", "--smell", "god_class", "--in", str(merged)]
    )
    assert res.exit_code == 0
    report = json.loads(res.output)
    assert report["name"] == "merged"
    assert (report["n"], report["true_count"], report["false_count"]) == (7, 4, 3)
    assert report["pct_true"] == 57


def test_oracle_build_schema_error_exits_1(runner, tmp_path):
    smell = SmellKind.LONG_METHOD
    team = _team_file(tmp_path, "lm.csv", smell, [True])
    res = runner.invoke(
        main,
        ["oracle", "build", "--smell", "god_class", "--year", "2020",
         "--inputs", str(team), "--out", str(tmp_path / "x.csv")],
    )
    assert res.exit_code == 1
    assert "SchemaMismatch" in res.stderr


def _build_oracle(runner, tmp_path, smell_value, labels, name="o"):
    smell = SmellKind(smell_value)
    team = _team_file(tmp_path, f"{name}-team.csv", smell, labels)
    out = tmp_path / f"{name}.csv"
    res = runner.invoke(
        main,
        ["oracle", "build", "--smell", smell_value, "--year", "2020",
         "--inputs", str(team), "--out", str(out), "--name", name],
    )
    assert res.exit_code == 0, res.stderr
    return out


def test_train_and_evaluate(runner, tmp_path):
    labels = [i % 2 == 0 for i in range(24)]
    oracle = _build_oracle(runner, tmp_path, "god_class", labels)
    model_path = tmp_path / "model.json"
    res = runner.invoke(
        main,
        ["train", "--oracle", str(oracle), "--smell", "god_class",
         "--kind", "naive_bayes", "--seed", "7", "--out", str(model_path)],
    )
    assert res.exit_code == 0, res.stderr
    doc = json.loads(model_path.read_text())
    assert doc["kind"] == "naive_bayes" and doc["meta"]["seed"] == 7
    assert len(doc["feature_names"]) == 61

    report_path = tmp_path / "report.json"
    res = runner.invoke(
        main,
        ["evaluate", "--oracle", str(oracle), "--smell", "god_class",
         "--kind", "j48", "--seed", "7", "--k", "4", "--out", str(report_path)],
    )
    assert res.exit_code == 0, res.stderr
    report = json.loads(report_path.read_text())
    assert report["k"] == 4 and len(report["folds"]) == 4
    assert report["meta"]["seed"] == 7


def test_evaluate_all_row_count(runner, tmp_path):
    o1 = _build_oracle(runner, tmp_path, "god_class",
                       [i % 2 == 0 for i in range(20)], name="gc")
    o2 = _build_oracle(runner, tmp_path, "long_method",
                       [i % 3 == 0 for i in range(21)], name="lm")
    out = tmp_path / "grid.csv"
    res = runner.invoke(
        main,
        ["evaluate-all", f"god_class:{o1}", f"long_method:{o2}",
         "--seed", "5", "--k", "4", "--out", str(out),
         "--json-dir", str(tmp_path / "reports")],
    )
    assert res.exit_code == 0, res.stderr
    rows = out.read_text().strip().splitlines()
    assert rows[0].startswith("Dataset,Classifier,")
    assert len(rows) == 1 + 2 * 6
    assert len(list((tmp_path / "reports").glob("*.json"))) == 12


def test_evaluate_all_rejects_bad_spec(runner, tmp_path):
    res = runner.invoke(main, ["evaluate-all", "nope", "--out", str(tmp_path / "x")])
    assert res.exit_code == 2


def test_anova_command(runner, tmp_path):
    from test_anova import LONG_METHOD_ROC

    table = tmp_path / "roc.csv"
    with table.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["classifier", "dataset", "roc"])
        for clf, values in LONG_METHOD_ROC.items():
            for i, v in enumerate(values):
                w.writerow([clf, f"d{i}", v])
    res = runner.invoke(main, ["anova", "--in", str(table)])
    assert res.exit_code == 0, res.stderr
    doc = json.loads(res.output)
    assert abs(doc["f_statistic"] - 1.096) < 0.005
    assert abs(doc["p_value"] - 0.383) < 0.005
    assert (doc["df_between"], doc["df_within"]) == (5, 30)


def test_anova_rejects_wrong_header(runner, tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b\n1,2\n")
    res = runner.invoke(main, ["anova", "--in", str(bad)])
    assert res.exit_code == 1
    assert "SchemaMismatch" in res.stderr
