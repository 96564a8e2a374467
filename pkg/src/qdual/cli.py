"""Command-line interface: ``qdual expand | verify | dual | bailey | list``.

Exit codes: 0 when everything selected passes, 1 when an identity or check
fails, 2 for usage errors and unknown targets.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction

import click

from . import bailey, corpus
from .dual import ShapeError, format_descriptor, heuristic_candidates, invert_q
from .expr import ExpressionError, evaluate, parse_descriptor, parse_expression
from .functions import DegenerateError
from .series import NotInvertibleError, PoleError, TruncationError

USAGE, FAIL = 2, 1


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise click.BadParameter(f"not a rational number: {text!r}") from None


@click.group()
def main():
    """Exact q-series toolkit for mock theta function duals."""


@main.command()
@click.argument("expression")
@click.option("--order", default="20", show_default=True, help="Truncation order (rational).")
@click.option("--lattice", default=1, show_default=True, type=click.IntRange(min=1), help="Exponent lattice (1/D)Z.")
def expand(expression: str, order: str, lattice: int):
    """Expand EXPRESSION as a q-series to the given order."""
    try:
        node = parse_expression(expression)
    except ExpressionError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(USAGE)
    try:
        click.echo(str(evaluate(node, _fraction(order), lattice)))
    except (ExpressionError, DegenerateError, PoleError, NotInvertibleError, TruncationError, ArithmeticError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(FAIL)


def _select(id_: str | None, group: str | None, all_: bool):
    chosen = sum(x is not None and x is not False for x in (id_, group, all_ or None))
    if chosen != 1:
        raise click.UsageError("choose exactly one of --id, --group, --all")
    if id_ is not None:
        return [corpus.get_record(id_)]
    if group is not None:
        recs = [r for r in corpus.RECORDS if r.group == group or group in r.tags]
        if not recs:
            raise corpus.UnknownRecordError(group)
        return recs
    return list(corpus.RECORDS)


@main.command()
@click.option("--id", "id_", help="Verify a single record.")
@click.option("--group", help="Verify a group (G0..G9) or every record carrying a tag.")
@click.option("--all", "all_", is_flag=True, help="Verify the whole corpus.")
@click.option("--order", default=None, help="Override each record's default order.")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)
def verify(id_, group, all_, order, fmt):
    """Verify corpus identities to their truncation order."""
    try:
        recs = _select(id_, group, all_)
    except corpus.UnknownRecordError as exc:
        click.echo(f"error: unknown record or group {exc.args[0]!r}", err=True)
        sys.exit(USAGE)
    reports = corpus.verify_records(recs, None if order is None else _fraction(order))
    passed = sum(r.passed for r in reports)
    if fmt == "json":
        doc = {"records": [r.as_dict() for r in reports], "passed": passed, "total": len(reports)}
        click.echo(json.dumps(doc, indent=2))
    else:
        for r in reports:
            click.echo(r.line())
        click.echo(f"{passed}/{len(reports)} passed")
    sys.exit(0 if passed == len(reports) else FAIL)


@main.command("list")
@click.argument("filter", required=False)
def list_(filter):
    """List corpus records matching a group, tag or id substring."""
    for m in corpus.list_identities(filter):
        click.echo(f"{m['id']}\t{m['anchor']}\t{m['group']}\t{m['status']}")


@main.command()
@click.argument("descriptor")
def dual(descriptor: str):
    """Apply q -> 1/q to an Eulerian DESCRIPTOR and print heuristic candidates."""
    try:
        d = parse_descriptor(descriptor)
    except ExpressionError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(USAGE)
    click.echo(f"dual: {format_descriptor(invert_q(d))}")
    try:
        cands = heuristic_candidates(d)
    except ShapeError:
        return
    click.echo("candidates: " + " + ".join(str(c) for c in cands))


@main.command("bailey")
@click.option("--check-all", is_flag=True, help="Check every registered pair.")
@click.option("--pair", "name", help="Check one pair by name.")
@click.option("--list", "list_pairs", is_flag=True, help="Print the registry with relative parameters.")
def bailey_cmd(check_all, name, list_pairs):
    """Validate registered Bailey pairs and the lemma identities."""
    if list_pairs:
        click.echo(bailey.manifest())
        return
    if bool(check_all) == (name is not None):
        raise click.UsageError("choose exactly one of --check-all, --pair")
    if name is not None:
        if name not in bailey.REGISTRY:
            click.echo(f"error: unknown Bailey pair {name!r}; known: {', '.join(bailey.REGISTRY)}", err=True)
            sys.exit(USAGE)
        pairs = [bailey.REGISTRY[name]]
    else:
        pairs = list(bailey.REGISTRY.values())
    reports = [bailey.check_pair(p) for p in pairs]
    for r in reports:
        click.echo(r.line())
    passed = sum(r.passed for r in reports)
    click.echo(f"{passed}/{len(reports)} pass")
    sys.exit(0 if passed == len(reports) else FAIL)


if __name__ == "__main__":
    main()
