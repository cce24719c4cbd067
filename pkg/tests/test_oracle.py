"""Oracle ingestion, merging, composition arithmetic, CSV round-trips."""

import csv
import io
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crowdsmell.entities import CodeEntityId, MetricVector, SmellKind
from crowdsmell.errors import (
    BadBooleanError,
    DuplicateRowWithinTeamError,
    MixedSmellKindsError,
    NonFiniteFeatureError,
    SchemaMismatchError,
)
from crowdsmell.oracle import (
    LabeledInstance,
    OracleDataset,
    composition_report,
    ingest_team_file,
    merge,
    oracle_file_header,
    read_oracle_csv,
    team_file_header,
    write_oracle_csv,
    write_team_csv,
)
from crowdsmell.registry import acronyms_for_scope


def make_instance(smell: SmellKind, i: int, label: bool, team="t1", year=2020):
    method = None if smell is SmellKind.GOD_CLASS else f"m{i}()"
    entity = CodeEntityId("proj", "pkg", f"C{i}", method)
    values = {a: float((i + j) % 7) for j, a in enumerate(acronyms_for_scope(smell.scope))}
    return LabeledInstance(
        entity=entity,
        metrics=MetricVector(entity=entity, values=values),
        is_smell=label,
        team=team,
        year=year,
    )


def make_dataset(smell: SmellKind, name: str, n_true: int, n_false: int,
                 team="t1", year=2020) -> OracleDataset:
    instances = [
        make_instance(smell, i, i < n_true, team=team, year=year)
        for i in range(n_true + n_false)
    ]
    return OracleDataset(name=name, smell=smell, instances=instances)


def write_team_file(tmp_path, smell, rows):
    path = tmp_path / "team.csv"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(team_file_header(smell))
    for row in rows:
        w.writerow(row)
    path.write_text(buf.getvalue())
    return path


def _row(smell, team, cls, method, label, fill=1.0):
    metrics = [str(fill)] * len(acronyms_for_scope(smell.scope))
    return [team, "proj", "pkg", cls, method, *metrics, label]


# -- ingest ----------------------------------------------------------------------


def test_ingest_three_valid_rows(tmp_path):
    smell = SmellKind.LONG_METHOD
    path = write_team_file(
        tmp_path,
        smell,
        [
            _row(smell, "t1", "A", "m()", "TRUE"),
            _row(smell, "t1", "A", "n()", "false"),
            _row(smell, "t1", "B", "m()", "True"),
        ],
    )
    instances = ingest_team_file(path, smell, 2020)
    assert [i.is_smell for i in instances] == [True, False, True]
    assert all(i.year == 2020 and i.team == "t1" for i in instances)


def test_ingest_rejects_wrong_metric_count(tmp_path):
    # a method-scope layout (82 metric columns) submitted as GOD_CLASS (61)
    smell = SmellKind.LONG_METHOD
    path = write_team_file(tmp_path, smell, [_row(smell, "t1", "A", "m()", "TRUE")])
    with pytest.raises(SchemaMismatchError):
        ingest_team_file(path, SmellKind.GOD_CLASS, 2020)


def test_ingest_rejects_bad_boolean(tmp_path):
    smell = SmellKind.GOD_CLASS
    path = write_team_file(tmp_path, smell, [_row(smell, "t1", "A", "", "yes")])
    with pytest.raises(BadBooleanError):
        ingest_team_file(path, smell, 2020)


def test_ingest_rejects_duplicate_entity_within_team(tmp_path):
    smell = SmellKind.GOD_CLASS
    path = write_team_file(
        tmp_path,
        smell,
        [_row(smell, "t1", "A", "", "TRUE"), _row(smell, "t1", "A", "", "FALSE")],
    )
    with pytest.raises(DuplicateRowWithinTeamError):
        ingest_team_file(path, smell, 2020)


def test_ingest_keeps_conflicting_labels_across_teams(tmp_path):
    smell = SmellKind.GOD_CLASS
    p1 = write_team_file(tmp_path, smell, [_row(smell, "t1", "A", "", "TRUE")])
    p2 = tmp_path / "t2.csv"
    p2.write_text(p1.read_text().replace("t1", "t2").replace("TRUE", "FALSE"))
    merged = merge(
        [
            OracleDataset("2020", smell, ingest_team_file(p1, smell, 2020)),
            OracleDataset("2020b", smell, ingest_team_file(p2, smell, 2020)),
        ]
    )
    assert len(merged) == 2  # same entity, two teams, both retained
    assert {i.is_smell for i in merged.instances} == {True, False}


def test_ingest_rejects_non_finite_metric(tmp_path):
    smell = SmellKind.GOD_CLASS
    row = _row(smell, "t1", "A", "", "TRUE")
    row[6] = "nan"
    path = write_team_file(tmp_path, smell, [row])
    with pytest.raises(NonFiniteFeatureError):
        ingest_team_file(path, smell, 2020)


def test_ingest_rejects_method_on_class_scope(tmp_path):
    smell = SmellKind.GOD_CLASS
    path = write_team_file(tmp_path, smell, [_row(smell, "t1", "A", "m()", "TRUE")])
    with pytest.raises(SchemaMismatchError):
        ingest_team_file(path, smell, 2020)


# -- merge + composition ------------------------------------------------------------


def test_merge_feature_envy_2019_2018_matches_published_counts():
    d2019 = make_dataset(SmellKind.FEATURE_ENVY, "2019", 110, 87)
    d2018 = make_dataset(SmellKind.FEATURE_ENVY, "2018", 3, 7)
    merged = merge([d2019, d2018])
    rep = composition_report(merged)
    assert merged.name == "2019+2018"
    assert (rep.n, rep.true_count, rep.false_count) == (207, 113, 94)
    assert (rep.pct_true, rep.pct_false) == (55, 45)


def test_merge_three_years_long_method():
    merged = merge(
        [
            make_dataset(SmellKind.LONG_METHOD, "2020", 350, 503),
            make_dataset(SmellKind.LONG_METHOD, "2019", 180, 234),
            make_dataset(SmellKind.LONG_METHOD, "2018", 24, 35),
        ]
    )
    rep = composition_report(merged)
    assert merged.name == "2020+2019+2018"
    assert (rep.n, rep.true_count, rep.false_count) == (1326, 554, 772)


def test_merge_with_itself_doubles_counts():
    d = make_dataset(SmellKind.GOD_CLASS, "2020", 3, 2)
    merged = merge([d, d])
    assert len(merged) == 10 and merged.true_count == 6


def test_merge_rejects_mixed_smells():
    with pytest.raises(MixedSmellKindsError):
        merge(
            [
                make_dataset(SmellKind.GOD_CLASS, "a", 1, 1),
                make_dataset(SmellKind.LONG_METHOD, "b", 1, 1),
            ]
        )


def test_composition_report_empty_and_even():
    empty = composition_report(OracleDataset("x", SmellKind.GOD_CLASS, []))
    assert empty.n == 0 and empty.pct_true is None and empty.frac_true is None
    even = composition_report(make_dataset(SmellKind.GOD_CLASS, "y", 1, 1))
    assert (even.pct_true, even.pct_false) == (50, 50)
    assert even.frac_true == Fraction(1, 2)


def test_composition_report_god_class_2020():
    rep = composition_report(make_dataset(SmellKind.GOD_CLASS, "2020", 84, 52))
    assert (rep.n, rep.true_count, rep.pct_true, rep.false_count, rep.pct_false) == (
        136, 84, 62, 52, 38,
    )


@given(
    sizes=st.lists(
        st.tuples(st.integers(0, 12), st.integers(0, 12)), min_size=1, max_size=4
    )
)
@settings(max_examples=50, deadline=None)
def test_merge_is_associative_and_additive(sizes):
    datasets = [
        make_dataset(SmellKind.GOD_CLASS, str(2000 + i), t, f)
        for i, (t, f) in enumerate(sizes)
    ]
    flat = merge(datasets)
    assert len(flat) == sum(t + f for t, f in sizes)
    assert flat.true_count == sum(t for t, _ in sizes)
    if len(datasets) >= 3:
        left = merge([merge(datasets[:2]), *datasets[2:]])
        right = merge([datasets[0], merge(datasets[1:])])
        assert left.instances == right.instances == flat.instances


def test_no_balancing_operations_exposed():
    """The module exposes nothing that drops or reweights oracle rows."""
    import crowdsmell.oracle as oracle_module

    banned = ("balance", "resample", "dedup", "downsample", "upsample", "smote",
              "reweight", "normalize")
    public = [n for n in dir(oracle_module) if not n.startswith("_")]
    for name in public:
        assert not any(b in name.lower() for b in banned), name


# -- round-trips ---------------------------------------------------------------------


def test_oracle_csv_roundtrip_is_bit_exact(tmp_path):
    dataset = make_dataset(SmellKind.FEATURE_ENVY, "2020", 4, 3)
    path = tmp_path / "oracle.csv"
    write_oracle_csv(dataset, path)
    back = read_oracle_csv(path, SmellKind.FEATURE_ENVY, name="2020")
    assert back.instances == dataset.instances
    path2 = tmp_path / "again.csv"
    write_oracle_csv(back, path2)
    assert path.read_bytes() == path2.read_bytes()


def test_team_csv_roundtrip_is_bit_exact(tmp_path):
    smell = SmellKind.GOD_CLASS
    instances = [make_instance(smell, i, i % 2 == 0) for i in range(5)]
    p1 = tmp_path / "t1.csv"
    write_team_csv(instances, smell, p1)
    back = ingest_team_file(p1, smell, 2020)
    assert back == instances
    p2 = tmp_path / "t2.csv"
    write_team_csv(back, smell, p2)
    assert p1.read_bytes() == p2.read_bytes()


def test_oracle_header_shapes():
    assert team_file_header(SmellKind.GOD_CLASS)[:5] == [
        "team", "project", "package", "class", "method",
    ]
    assert len(team_file_header(SmellKind.GOD_CLASS)) == 5 + 61 + 1
    assert len(team_file_header(SmellKind.LONG_METHOD)) == 5 + 82 + 1
    assert len(oracle_file_header(SmellKind.FEATURE_ENVY)) == 6 + 82 + 1
