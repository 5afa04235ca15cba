"""Command-line interface.

Exit codes: 0 when every check passes (or a query succeeds), 1 when any
verdict fails, 2 for usage errors, unknown group names, and malformed
table files.
"""

from __future__ import annotations

import os
import sys
from pathlib import Path

import click

from .census import ALL_TARGETS, Verdict, build_report, count_one
from .construct import CONSTRUCT_CAP, UnknownGroupName, catalog_for_order, group_by_name
from .figures import render_figures
from .groups import Group, GroupError
from .report import json_text, rows_csv, to_document, verdicts_csv
from .tableio import TableFormatError, emit_cayley, parse_cayley


def _color_enabled() -> bool:
    return sys.stdout.isatty() and not os.environ.get("NO_COLOR")


def _echo_verdict(v: Verdict) -> None:
    tag = f"[{v.status.upper():>14}]"
    line = f"{tag} {v.id}: expected {v.expected}; observed {v.observed}"
    if v.status == "fail" and _color_enabled():
        click.secho(line, fg="red")
    else:
        click.echo(line)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(package_name="cycensus")
def main() -> None:
    """Count cyclic subgroups of finite groups and check the closed-form
    predictions, the classification of small totals, and subgroup existence."""


@main.command()
@click.option(
    "--max-order",
    default=100,
    show_default=True,
    type=click.IntRange(1, CONSTRUCT_CAP),
    help="catalog every family of order up to this bound",
)
@click.option("--out", "out_path", type=click.Path(dir_okay=False, writable=True),
              help="write the census rows as CSV")
@click.option("--json", "json_path", type=click.Path(dir_okay=False, writable=True),
              help="write the full report as JSON")
@click.option("--plots", "plots_dir", type=click.Path(file_okay=False),
              help="render figures into this directory")
def catalog(max_order: int, out_path: str | None, json_path: str | None,
            plots_dir: str | None) -> None:
    """Construct the group catalog and report every census."""
    report = build_report(max_order, targets=())
    collisions = [(r["label"], r["collides_with"]) for r in report.rows if r["collides_with"]]
    click.echo(
        f"catalog: {report.summary['entries']} groups across "
        f"{report.summary['orders']} orders (up to {max_order})"
    )
    click.echo(
        f"orders with partial isomorphism coverage: {report.summary['partial_orders']}"
    )
    if collisions:
        pairs = ", ".join(f"{a} ~ {b}" for a, b in collisions)
        click.echo(f"fingerprint collisions (distinct groups, equal invariants): {pairs}")
    if out_path:
        Path(out_path).write_text(rows_csv(report.rows))
        click.echo(f"rows written to {out_path}")
    if json_path:
        Path(json_path).write_text(json_text(to_document(report, command="catalog")))
        click.echo(f"report written to {json_path}")
    if plots_dir:
        written = render_figures(report, plots_dir)
        click.echo(f"figures written to {plots_dir} ({len(written)} files)")
    failures = report.failed
    for v in failures:
        _echo_verdict(v)
    if failures:
        sys.exit(1)


def _load_group(name: str | None, path: str | None) -> Group:
    """Resolve the --group/--file pair shared by count and import."""
    if (name is None) == (path is None):
        raise click.UsageError("give exactly one of --group NAME or --file PATH")
    if name is not None:
        try:
            return group_by_name(name)
        except UnknownGroupName as exc:
            raise click.UsageError(str(exc)) from exc
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise click.UsageError(f"cannot read {path}: {exc}") from exc
    try:
        return parse_cayley(text, name=Path(path).name)
    except TableFormatError as exc:
        raise click.UsageError(f"{path}: {exc}") from exc
    except GroupError as exc:
        raise click.UsageError(f"{path}: not a group table: {exc}") from exc


def _report_census(group: Group) -> None:
    info = count_one(group, catalog_for_order(group.n))
    click.echo(f"group: {group.name}")
    click.echo(f"order: {info['order']}")
    click.echo(f"total cyclic subgroups: {info['census_total']}")
    breakdown = {int(d): c for d, c in sorted(
        info["census_by_order"].items(), key=lambda kv: int(kv[0]))}
    click.echo(f"per-order breakdown: {breakdown}")
    if info["matches"]:
        click.echo(f"fingerprint-identical catalog entries: {', '.join(info['matches'])}")
    else:
        click.echo("fingerprint-identical catalog entries: none (outside the catalog)")


@main.command()
@click.option("--group", "name", help="a catalog-style group name, e.g. D8 or G2@p=2,q=3")
@click.option("--file", "path", type=click.Path(dir_okay=False),
              help="a Cayley table file to census instead")
def count(name: str | None, path: str | None) -> None:
    """Census one group: total and per-order cyclic-subgroup counts."""
    _report_census(_load_group(name, path))


@main.command("import")
@click.option("--file", "path", required=True, type=click.Path(dir_okay=False),
              help="Cayley table file to validate and census")
def import_table(path: str) -> None:
    """Validate a Cayley table file and census the group it defines."""
    _report_census(_load_group(None, path))


@main.command()
@click.option("--group", "name", required=True, help="a catalog-style group name")
@click.option("--out", "out_path", required=True,
              type=click.Path(dir_okay=False, writable=True),
              help="destination table file")
def export(name: str, out_path: str) -> None:
    """Write a group's Cayley table to a file."""
    try:
        group = group_by_name(name)
    except UnknownGroupName as exc:
        raise click.UsageError(str(exc)) from exc
    Path(out_path).write_text(emit_cayley(group))
    click.echo(f"wrote the order-{group.n} table of {group.name} to {out_path}")


@main.command()
@click.option("--target", type=click.Choice(("all",) + ALL_TARGETS), default="all",
              show_default=True, help="which statements to check")
@click.option("--max-order", default=100, show_default=True,
              type=click.IntRange(1, CONSTRUCT_CAP))
@click.option("--json", "json_path", type=click.Path(dir_okay=False, writable=True),
              help="write the full report as JSON")
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False, writable=True),
              help="write the verdicts as CSV")
@click.option("--plots", "plots_dir", type=click.Path(file_okay=False),
              help="render figures into this directory")
def verify(target: str, max_order: int, json_path: str | None, csv_path: str | None,
           plots_dir: str | None) -> None:
    """Check formulas, classification lists, or subgroup existence."""
    targets = ALL_TARGETS if target == "all" else (target,)
    try:
        report = build_report(max_order, targets=targets)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    highlight = [
        v for v in report.verdicts
        if v.status != "pass" or "-scope/" in v.id or v.id.endswith("unique-failure")
    ]
    shown = report.verdicts if len(report.verdicts) <= 60 else highlight
    for v in shown:
        _echo_verdict(v)
    s = report.summary
    click.echo(
        f"{s['verdicts']} verdicts over {s['entries']} groups: "
        f"{s['pass']} pass, {s['fail']} fail, "
        f"{s['not_realizable']} not-realizable"
    )
    if json_path:
        Path(json_path).write_text(json_text(to_document(report, command="verify")))
        click.echo(f"report written to {json_path}")
    if csv_path:
        Path(csv_path).write_text(verdicts_csv(report.verdicts))
        click.echo(f"verdicts written to {csv_path}")
    if plots_dir:
        written = render_figures(report, plots_dir)
        click.echo(f"figures written to {plots_dir} ({len(written)} files)")
    if s["fail"]:
        sys.exit(1)


if __name__ == "__main__":
    main()
