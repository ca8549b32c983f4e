"""Command line entry point: gen, reduce, verify, pipeline, oracle."""

from __future__ import annotations

import json
import sys

import click

from . import harness
from .core import LZ_VARIANTS, OVERLAPPING


def _emit(ctx, reports) -> None:
    fmt = ctx.obj["report"]
    if fmt == "json":
        click.echo(json.dumps([r.to_dict() for r in reports], sort_keys=True, indent=2))
    else:
        for r in reports:
            click.echo(r.line())
    ctx.exit(0 if all(r.passed for r in reports) else 1)


def _write(f: harness.InstanceFile, output) -> None:
    if output in (None, "-"):
        sys.stdout.write(f.dumps())
    else:
        f.save(output)


@click.group()
@click.option("--report", type=click.Choice(["text", "json"]), default="text", help="Report format.")
@click.pass_context
def main(ctx, report):
    """Build, reduce and verify fine-grained string problem instances."""
    ctx.obj = {"report": report}


@main.command()
@click.argument("kind", type=click.Choice(["dm", "sn", "rps", "cci", "ci", "text"]))
@click.option("--n", default=32, show_default=True)
@click.option("--k", default=4, show_default=True)
@click.option("--m", default=4, show_default=True)
@click.option("--sigma", default=2, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--periodic-rich", is_flag=True, help="Plant long runs with short periods.")
@click.option("-o", "--output", default=None, help="Output file (stdout if omitted).")
def gen(kind, n, k, m, sigma, seed, periodic_rich, output):
    """Generate a seeded instance."""
    try:
        f = harness.generate(kind, n=n, k=k, m=m, sigma=sigma, seed=seed, periodic_rich=periodic_rich)
    except ValueError as err:
        raise click.UsageError(str(err))
    _write(f, output)


_edge_options = [
    click.option("--binary", is_flag=True, help="Use the binary-alphabet form of the reduction."),
    click.option("--variant", type=click.Choice(LZ_VARIANTS), default=OVERLAPPING, show_default=True),
    click.option("--tau", type=int, default=None, help="Synchronizing-set parameter for dm-sn."),
]


def edge_options(fn):
    for opt in reversed(_edge_options):
        fn = opt(fn)
    return fn


@main.command()
@click.argument("edge")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("-o", "--output", default=None)
@edge_options
def reduce(edge, file, output, binary, variant, tau):
    """Apply one reduction edge, e.g. dm-lz or rps-cci."""
    try:
        out = harness.reduce(edge, harness.load(file), binary=binary, variant=variant, tau=tau)
    except ValueError as err:
        raise click.UsageError(str(err))
    _write(out, output)


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@edge_options
@click.pass_context
def verify(ctx, file, binary, variant, tau):
    """Verify a reduction output, or every outgoing edge of a source instance."""
    _emit(ctx, harness.verify(harness.load(file), binary=binary, variant=variant, tau=tau))


@main.command()
@click.option("--chain", default="dm,sn,rps,cci,ci", show_default=True)
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@edge_options
@click.pass_context
def pipeline(ctx, chain, file, binary, variant, tau):
    """Thread an instance through a chain of reductions."""
    try:
        reports = harness.pipeline(chain, harness.load(file), binary=binary, variant=variant, tau=tau)
    except ValueError as err:
        raise click.UsageError(str(err))
    _emit(ctx, reports)


@main.command()
@click.argument("kind", type=click.Choice(["dm", "sn", "rps", "cci", "ci"]))
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def oracle(ctx, kind, file):
    """Print the brute-force answer for an instance file."""
    f = harness.load(file)
    if f.kind != kind:
        raise click.UsageError(f"file holds a {f.kind} instance, not {kind}")
    answer = harness.oracle_answer(f)
    if ctx.obj["report"] == "json":
        click.echo(json.dumps({"kind": kind, "answer": answer}))
    else:
        click.echo("YES" if answer else "NO")


if __name__ == "__main__":
    main()
