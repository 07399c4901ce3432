"""Command-line front end.

Six commands: ``named`` (catalog export), ``minor`` (minor search against a
catalog target), ``verify`` (run a suite), ``classify`` (payload classifier),
``iso`` and ``embed`` (isomorphism and restriction-embedding search).

Exit codes are uniform: 0 success/verified, 1 a search or suite came up
negative, 2 usage or parse errors. Matroid arguments to ``iso`` and ``embed``
are file paths or catalog ids; a catalog id may carry an ``@GF5`` suffix to
select the field.
"""

from __future__ import annotations

import sys

import click

from . import gf
from .catalog import FORBIDDEN, catalog_ids, named
from .matroid import (
    LinearMatroid,
    find_embedding,
    find_isomorphism,
    has_minor,
)
from .suites import run_suite, suite_names
from .templates import CONTAINS_AG23E, classify_Y_template, verify_classification


def _fail(code: int, message: str) -> None:
    click.echo(message, err=True)
    sys.exit(code)


def _read_matrix(path: str) -> gf.GFMatrix:
    try:
        return gf.read_file(path)
    except (OSError, ValueError) as exc:
        _fail(2, f"error: cannot read matrix file {path}: {exc}")
        raise AssertionError  # unreachable


def _entry_or_die(id_: str, field: int):
    try:
        return named(id_, field)
    except KeyError:
        _fail(2, f"unknown catalog id: {id_}")
        raise AssertionError


_FIELD_SUFFIX = {"GF3": 3, "GF5": 5}


def _load_matroid(ref: str) -> LinearMatroid:
    """File path, or catalog id with optional @GF3/@GF5 suffix."""
    import os

    if os.path.exists(ref):
        return LinearMatroid(_read_matrix(ref))
    id_, _, suffix = ref.partition("@")
    field = 3
    if suffix:
        if suffix.upper() not in _FIELD_SUFFIX:
            _fail(2, f"error: unknown field suffix {suffix}; use GF3 or GF5")
        field = _FIELD_SUFFIX[suffix.upper()]
    return _entry_or_die(id_, field).matroid()


def _fmt_set(items) -> str:
    return "{" + ",".join(str(x) for x in sorted(items)) + "}"


def _fmt_map(mapping) -> str:
    return ",".join(f"{k}>{v}" for k, v in sorted(mapping.items()))


@click.group()
def main() -> None:
    """Exact-arithmetic workbench for ternary frame templates."""


@main.command(name="named")
@click.argument("id_", metavar="ID")
@click.option("--field", type=click.Choice(["3", "5"]), default="3", show_default=True)
@click.option("--emit", type=click.Path(dir_okay=False, writable=True), default=None,
              help="write the matrix file here instead of stdout")
def named_cmd(id_: str, field: str, emit: str | None) -> None:
    """Export a catalog matrix. ID is one of the catalog ids."""
    entry = _entry_or_die(id_, int(field))
    if emit is None:
        click.echo(gf.to_text(entry.matrix), nl=False)
        return
    gf.write_file(entry.matrix, emit)
    shape = f"{entry.matrix.nrows}x{entry.matrix.ncols}"
    click.echo(f"wrote {entry.id} ({shape}, GF({field})) to {emit}")


@main.command(name="ids")
def ids_cmd() -> None:
    """List catalog ids."""
    for id_ in catalog_ids():
        click.echo(id_)


@main.command(name="minor")
@click.option("-m", "matroid_file", required=True,
              type=click.Path(exists=False, dir_okay=False),
              help="matrix file presenting the host matroid")
@click.option("-n", "target_id", required=True, help="catalog id of the minor target")
@click.option("--contract", default=None,
              help="comma-separated labels to contract first (search hint)")
@click.option("--expect", type=click.Choice(["yes", "no"]), default="yes",
              show_default=True, help="exit 0 when the outcome matches this")
def minor_cmd(matroid_file: str, target_id: str, contract: str | None, expect: str) -> None:
    """Search for a catalog minor inside a matrix file's matroid."""
    m = LinearMatroid(_read_matrix(matroid_file))
    entry = _entry_or_die(target_id, 3)
    hint: tuple[int, ...] | None = entry.contract_hint
    if contract is not None:
        try:
            hint = tuple(int(x) for x in contract.split(",") if x.strip())
        except ValueError:
            _fail(2, f"error: bad --contract list: {contract}")
    try:
        witness = has_minor(m, entry.matroid(), hint=hint)
    except (KeyError, ValueError) as exc:
        _fail(2, f"error: {exc}")
        raise AssertionError
    if witness is None:
        click.echo("no minor")
        sys.exit(0 if expect == "no" else 1)
    click.echo(f"contract {_fmt_set(witness.contracted)}")
    click.echo(f"delete {_fmt_set(witness.deleted)}")
    click.echo(f"map {_fmt_map(witness.as_dict())}")
    sys.exit(0 if expect == "yes" else 1)


@main.command(name="verify")
@click.option("--suite", "suite", type=click.Choice(list(suite_names())),
              default="all", show_default=True)
@click.option("--report", type=click.Path(dir_okay=False, writable=True), default=None,
              help="also write the machine-readable report to this file")
def verify_cmd(suite: str, report: str | None) -> None:
    """Run a verification suite; exit 0 only if every check passes."""
    rep = run_suite(suite)
    click.echo(rep.human_text())
    if report is not None:
        with open(report, "w", encoding="utf-8") as fh:
            for line in rep.machine_lines():
                fh.write(line + "\n")
    if not rep.ok:
        bad = rep.first_failure()
        _fail(1, f"verification failed: {bad.check_id}: {bad.witness}")


@main.command(name="classify")
@click.option("-p", "payload_file", required=True,
              type=click.Path(exists=False, dir_okay=False),
              help="matrix file holding the payload to classify")
def classify_cmd(payload_file: str) -> None:
    """Classify a ternary payload matrix; the certificate is re-verified first."""
    payload = _read_matrix(payload_file)
    try:
        cls = classify_Y_template(payload)
    except ValueError as exc:
        _fail(2, f"error: {exc}")
        raise AssertionError
    ok, why = verify_classification(payload, cls)
    if not ok:
        _fail(1, f"certificate failed re-verification: {why}")
    detail = ""
    if cls.verdict == CONTAINS_AG23E:
        name = cls.certificate[1]
        base = cls.certificate[2]
        detail = f" hit={name} hint={_fmt_set(FORBIDDEN[base][1])}"
    click.echo(f"{cls.verdict}{detail}")
    for note in cls.notes:
        click.echo(f"  {note}")


@main.command(name="iso")
@click.argument("a")
@click.argument("b")
def iso_cmd(a: str, b: str) -> None:
    """Isomorphism search between two matroids (files or catalog ids)."""
    ma, mb = _load_matroid(a), _load_matroid(b)
    mapping = find_isomorphism(ma, mb)
    if mapping is None:
        click.echo("none")
        sys.exit(1)
    click.echo(_fmt_map(mapping))


@main.command(name="embed")
@click.argument("a")
@click.argument("b")
def embed_cmd(a: str, b: str) -> None:
    """Restriction-embedding search of A into B (files or catalog ids)."""
    ma, mb = _load_matroid(a), _load_matroid(b)
    mapping = find_embedding(ma, mb)
    if mapping is None:
        click.echo("none")
        sys.exit(1)
    click.echo(_fmt_map(mapping))


if __name__ == "__main__":
    main()
