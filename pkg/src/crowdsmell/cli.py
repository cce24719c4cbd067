"""Command-line entry point wiring every module together.

Exit codes: 0 success, 1 data errors (machine-readable JSON on stderr),
2 usage errors. Logs go to stderr; data goes to files or stdout only.
Every artifact gets a reproducibility record (tool version, seed, input
digests): embedded under "meta" in JSON outputs, or written next to CSV
outputs as <name>.meta.json so the fixed CSV schemas stay byte-compatible.
"""

from __future__ import annotations

import csv
import hashlib
import json
import sys
from pathlib import Path

import click

from . import __version__
from .anova import one_way_anova
from .entities import Scope, SmellKind
from .errors import CrowdsmellError
from .evaluation import (
    REPORT_CSV_HEADER,
    cross_validate,
    report_csv_row,
    report_to_jsonable,
)
from .java.model import parse_project
from .learners import ClassifierKind, TrainParams, model_to_jsonable, train
from .metrics.extract import extract_all, write_metrics_csv
from .oracle import (
    OracleDataset,
    composition_report,
    ingest_team_file,
    merge,
    read_oracle_csv,
    write_oracle_csv,
)

_SMELLS = {s.value: s for s in SmellKind}
_KINDS = {k.value: k for k in ClassifierKind}


def _digest(path: str | Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(65536), b""):
            h.update(block)
    return h.hexdigest()


def _meta(seed: int | None, inputs: list[str | Path]) -> dict:
    return {
        "tool": "crowdsmell",
        "version": __version__,
        "seed": seed,
        "inputs": {str(p): _digest(p) for p in inputs},
    }


def _write_sidecar(out: str | Path, seed: int | None, inputs: list[str | Path]) -> None:
    Path(f"{out}.meta.json").write_text(
        json.dumps(_meta(seed, inputs), indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )


def _fail(error: str, detail: str) -> None:
    print(json.dumps({"error": error, "detail": detail}), file=sys.stderr)
    sys.exit(1)


def _guard(fn):
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except CrowdsmellError as exc:
            _fail(type(exc).__name__.removesuffix("Error"), str(exc))
        except OSError as exc:
            _fail("Io", str(exc))

    wrapper.__name__ = fn.__name__
    return wrapper


@click.group()
@click.version_option(version=__version__, prog_name="crowdsmell")
def main() -> None:
    """Crowd-labelled code smell detection toolkit."""


@main.command()
@click.option("--root", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--scope", required=True, type=click.Choice(["class", "method"]))
@click.option("--out", required=True, type=click.Path(dir_okay=False))
@click.option("--project", default=None, help="Project name (defaults to the directory name).")
@_guard
def extract(root: str, scope: str, out: str, project: str | None) -> None:
    """Extract the metric suite from a Java source tree into CSV."""
    model = parse_project(root, project_name=project)
    vectors = extract_all(model, Scope(scope))
    write_metrics_csv(vectors, out, Scope(scope))
    _write_sidecar(out, None, [])
    for d in model.diagnostics:
        click.echo(f"diagnostic: {d.path}: {d.message}", err=True)
    click.echo(f"{len(vectors)} vectors -> {out}", err=True)


@main.group()
def oracle() -> None:
    """Build, merge and inspect crowd oracles."""


@oracle.command("build")
@click.option("--smell", required=True, type=click.Choice(sorted(_SMELLS)))
@click.option("--year", required=True, type=int)
@click.option("--inputs", required=True, multiple=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--out", required=True, type=click.Path(dir_okay=False))
@click.option("--name", default=None, help="Dataset name (defaults to the year).")
@_guard
def oracle_build(smell: str, year: int, inputs: tuple[str, ...], out: str,
                 name: str | None) -> None:
    """Join team classification files into one year oracle."""
    kind = _SMELLS[smell]
    instances = []
    for path in inputs:
        instances.extend(ingest_team_file(path, kind, year))
    dataset = OracleDataset(name=name or str(year), smell=kind, instances=instances)
    write_oracle_csv(dataset, out)
    _write_sidecar(out, None, list(inputs))
    click.echo(f"{len(dataset)} instances -> {out}", err=True)


@oracle.command("merge")
@click.option("--smell", required=True, type=click.Choice(sorted(_SMELLS)))
@click.option("--inputs", required=True, multiple=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--out", required=True, type=click.Path(dir_okay=False))
@_guard
def oracle_merge(smell: str, inputs: tuple[str, ...], out: str) -> None:
    """Aggregate year oracles into a combined oracle."""
    kind = _SMELLS[smell]
    merged = merge([read_oracle_csv(p, kind) for p in inputs])
    write_oracle_csv(merged, out)
    _write_sidecar(out, None, list(inputs))
    click.echo(f"{merged.name}: {len(merged)} instances -> {out}", err=True)


@oracle.command("report")
@click.option("--in", "path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--smell", required=True, type=click.Choice(sorted(_SMELLS)))
@_guard
def oracle_report(path: str, smell: str) -> None:
    """Print the Nº cases / true / false composition of one oracle."""
    dataset = read_oracle_csv(path, _SMELLS[smell])
    rep = composition_report(dataset)
    click.echo(json.dumps({
        "name": dataset.name,
        "n": rep.n,
        "true_count": rep.true_count,
        "pct_true": rep.pct_true,
        "false_count": rep.false_count,
        "pct_false": rep.pct_false,
    }))


@main.command("train")
@click.option("--oracle", "oracle_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--smell", required=True, type=click.Choice(sorted(_SMELLS)))
@click.option("--kind", required=True, type=click.Choice(sorted(_KINDS)))
@click.option("--seed", default=42, type=int, show_default=True)
@click.option("--out", required=True, type=click.Path(dir_okay=False))
@_guard
def train_cmd(oracle_path: str, smell: str, kind: str, seed: int, out: str) -> None:
    """Fit one classifier on an oracle and save the model blob."""
    dataset = read_oracle_csv(oracle_path, _SMELLS[smell])
    model = train(dataset, TrainParams(kind=_KINDS[kind], seed=seed))
    doc = model_to_jsonable(model)
    doc["meta"] = _meta(seed, [oracle_path])
    Path(out).write_text(json.dumps(doc), encoding="utf-8")
    click.echo(f"model -> {out}", err=True)


@main.command("evaluate")
@click.option("--oracle", "oracle_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--smell", required=True, type=click.Choice(sorted(_SMELLS)))
@click.option("--kind", required=True, type=click.Choice(sorted(_KINDS)))
@click.option("--seed", default=42, type=int, show_default=True)
@click.option("--k", default=10, type=int, show_default=True)
@click.option("--out", required=True, type=click.Path(dir_okay=False))
@click.option("--format", "fmt", default="json", type=click.Choice(["json", "csv"]),
              show_default=True)
@_guard
def evaluate(oracle_path: str, smell: str, kind: str, seed: int, k: int,
             out: str, fmt: str) -> None:
    """Stratified k-fold cross-validation of one (oracle, classifier) cell."""
    dataset = read_oracle_csv(oracle_path, _SMELLS[smell])
    report = cross_validate(dataset, TrainParams(kind=_KINDS[kind], seed=seed),
                            k=k, seed=seed)
    if fmt == "json":
        doc = report_to_jsonable(report)
        doc["meta"] = _meta(seed, [oracle_path])
        Path(out).write_text(json.dumps(doc, indent=2), encoding="utf-8")
    else:
        Path(out).write_text(
            REPORT_CSV_HEADER + "\n" + report_csv_row(report) + "\n", encoding="utf-8"
        )
        _write_sidecar(out, seed, [oracle_path])
    click.echo(f"report -> {out}", err=True)


@main.command("evaluate-all")
@click.argument("inputs", nargs=-1, required=True)
@click.option("--seed", default=42, type=int, show_default=True)
@click.option("--k", default=10, type=int, show_default=True)
@click.option("--out", required=True, type=click.Path(dir_okay=False),
              help="Combined CSV, one row per (oracle, classifier).")
@click.option("--json-dir", default=None, type=click.Path(file_okay=False),
              help="Also write one JSON report per cell.")
@click.option("--jobs", default=1, type=int, show_default=True)
@_guard
def evaluate_all_cmd(inputs: tuple[str, ...], seed: int, k: int, out: str,
                     json_dir: str | None, jobs: int) -> None:
    """Run all six classifiers over every SMELL:ORACLE.CSV argument."""
    parsed: list[tuple[SmellKind, str]] = []
    for item in inputs:
        smell, _, path = item.partition(":")
        if smell not in _SMELLS or not path:
            raise click.UsageError(f"expected SMELL:PATH, got {item!r}")
        parsed.append((_SMELLS[smell], path))
    datasets = [read_oracle_csv(path, smell) for smell, path in parsed]
    cells = [
        (i, dataset, kind)
        for i, dataset in enumerate(datasets)
        for kind in ClassifierKind
    ]

    def run_cell(cell):
        i, dataset, kind = cell
        report = cross_validate(dataset, TrainParams(kind=kind, seed=seed),
                                k=k, seed=seed)
        return i, report

    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run_cell, cells))
    else:
        results = [run_cell(c) for c in cells]
    results.sort(key=lambda r: (r[0], list(ClassifierKind).index(r[1].classifier_kind)))
    reports = [r for _, r in results]
    lines = [REPORT_CSV_HEADER] + [report_csv_row(r) for r in reports]
    Path(out).write_text("\n".join(lines) + "\n", encoding="utf-8")
    _write_sidecar(out, seed, [path for _, path in parsed])
    if json_dir:
        dest = Path(json_dir)
        dest.mkdir(parents=True, exist_ok=True)
        for i, report in results:
            smell, _path = parsed[i]
            doc = report_to_jsonable(report)
            doc["meta"] = _meta(seed, [_path])
            name = f"{smell.value}-{report.dataset_name}-{report.classifier_kind.value}.json"
            (dest / name).write_text(json.dumps(doc, indent=2), encoding="utf-8")
    click.echo(f"{len(reports)} reports -> {out}", err=True)


@main.command("anova")
@click.option("--in", "path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--out", default=None, type=click.Path(dir_okay=False),
              help="Write JSON here instead of stdout.")
@_guard
def anova_cmd(path: str, out: str | None) -> None:
    """One-way ANOVA over a classifier,dataset,roc CSV."""
    groups: dict[str, list[float]] = {}
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["classifier", "dataset", "roc"]:
            _fail("SchemaMismatch", f"{path}: expected header classifier,dataset,roc")
        for row in reader:
            groups.setdefault(row[0], []).append(float(row[2]))
    result = one_way_anova(groups)
    doc = {
        "f_statistic": result.f_statistic,
        "df_between": result.df_between,
        "df_within": result.df_within,
        "p_value": result.p_value,
        "group_means": result.group_means,
        "grand_mean": result.grand_mean,
        "degenerate": result.degenerate,
        "meta": _meta(None, [path]),
    }
    text = json.dumps(doc, indent=2)
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
        click.echo(f"anova -> {out}", err=True)
    else:
        click.echo(text)


@main.command("serve")
@click.option("--root", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--port", default=8000, type=int, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--storage", default=None, type=click.Path(file_okay=False))
@click.option("--ui", "ui_dir", default=None, type=click.Path(file_okay=False))
@_guard
def serve(root: str, port: int, host: str, storage: str | None,
          ui_dir: str | None) -> None:
    """Start the review service preloaded with one project session."""
    import uvicorn

    from .review.service import add_session, create_app

    app = create_app(storage_root=storage, ui_dir=ui_dir)
    session = add_session(app, root)
    click.echo(f"session {session.id} for {session.model.project}", err=True)
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
