"""Command line front end.

Exit codes: 0 success (and, for ``verify``, a passing verdict), 1 ``verify``
found a violation, 2 usage or validation error, 3 internal error.
Analysis verdicts never change the exit code of the other commands.
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from . import io_formats
from .closure import MAX_GROUP_ELEMENTS, MAX_SWEEPS, MAX_VECTORS, group_enumerate, is_root_frame_closure
from .errors import InternalError, RootFrameError
from .frame_analysis import Frame, parseval_scaling
from .reports import (
    analysis_report,
    closure_report,
    scaling_report,
    verification_report,
    verify_frame,
)
from .root_systems import FAMILIES, construct_classical, positive_subsystem
from .tolerances import DEFAULT_TOL

EXIT_OK = 0
EXIT_VERDICT = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3


class VerdictFailure(Exception):
    pass


def _parse_vector(text: str) -> list[float]:
    try:
        return [float(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError as exc:
        raise click.BadParameter(f"expected comma-separated numbers, got {text!r}") from exc


def _fmt(v) -> str:
    return "[" + ", ".join(f"{float(x):.17g}" for x in v) + "]"


def _tol(ctx: click.Context):
    return ctx.obj["tol"]


@click.group()
@click.option(
    "--tol",
    "tol_scale",
    type=float,
    default=1.0,
    show_default=True,
    help="Multiply every numerical tolerance by this factor.",
)
@click.pass_context
def main(ctx: click.Context, tol_scale: float) -> None:
    """Construct, analyze and verify root frames and eigenframes."""
    if not tol_scale > 0:
        raise click.BadParameter("must be positive", param_hint="--tol")
    ctx.ensure_object(dict)
    ctx.obj["tol"] = DEFAULT_TOL.scaled(tol_scale)


@main.command()
@click.argument("family", type=click.Choice(FAMILIES, case_sensitive=False))
@click.argument("rank", type=int)
@click.option("--normalize/--no-normalize", default=False, help="Scale every root to unit norm.")
@click.option("--beta", default=None, help="Separating functional, comma separated.")
@click.option("--seed", type=int, default=0, show_default=True, help="Seed for a random functional.")
@click.option("-o", "--output", default="-", help="Frame document path ('-' for stdout).")
@click.pass_context
def construct(ctx, family, rank, normalize, beta, seed, output):
    """Write the positive roots of a classical root system as a frame document."""
    R = construct_classical(family, rank, normalize=normalize)
    b = _parse_vector(beta) if beta is not None else None
    P = positive_subsystem(R, beta=b, seed=None if b is not None else seed, eps=_tol(ctx).match)
    io_formats.save_frame(Frame.from_positive_system(P, tag=family.upper()), output)


@main.command()
@click.argument("frame")
@click.option("-o", "--output", default="-", help="Report path ('-' for stdout).")
@click.pass_context
def analyze(ctx, frame, output):
    """Spectral, eigenframe and root-frame analysis of a frame document."""
    F = io_formats.load_frame(frame)
    io_formats.emit_report(analysis_report(F, _tol(ctx)), output)


@main.command()
@click.argument("frame")
@click.option("-o", "--output", default="-", help="Scaled frame document path ('-' for stdout).")
@click.option("--report", "report_path", default=None, help="Also write a report with the residuals.")
@click.pass_context
def scale(ctx, frame, output, report_path):
    """Rescale an eigenframe to a Parseval frame (weights divided by eigenvalues)."""
    F = io_formats.load_frame(frame)
    result = parseval_scaling(F, _tol(ctx))
    io_formats.save_frame(result.frame, output)
    report = scaling_report(F, result)
    if report_path is not None:
        io_formats.emit_report(report, report_path)
    else:
        click.echo(
            f"parseval residual {result.residual:.3e}; "
            f"sum of reciprocal eigenvalues {result.reciprocal_sum:.17g} (dim {F.dim})",
            err=True,
        )


@main.command()
@click.argument("frame")
@click.option("--max-vectors", type=click.IntRange(min=1), default=MAX_VECTORS, show_default=True)
@click.option("--max-sweeps", type=click.IntRange(min=1), default=MAX_SWEEPS, show_default=True)
@click.option("--max-elements", type=click.IntRange(min=1), default=MAX_GROUP_ELEMENTS, show_default=True)
@click.option("--enumerate-group", is_flag=True, help="Also count the reflection group.")
@click.option("-o", "--output", default="-", help="Report path ('-' for stdout).")
@click.option(
    "--orbit-out",
    default=None,
    help="Where to write the closed orbit as a frame document "
    "(default: next to the report as <report>.orbit.json).",
)
@click.pass_context
def closure(ctx, frame, max_vectors, max_sweeps, max_elements, enumerate_group, output, orbit_out):
    """Close a unit-norm frame under its own reflections."""
    tol = _tol(ctx)
    F = io_formats.load_frame(frame)
    verdict = is_root_frame_closure(F, max_vectors, max_sweeps, tol)
    group = None
    if enumerate_group and verdict.root_system is not None:
        group = group_enumerate(verdict.root_system, max_elements, tol)
    io_formats.emit_report(closure_report(F, verdict, group), output)

    if verdict.closure.closed:
        if orbit_out is None and output != "-":
            p = Path(output)
            orbit_out = str(p.with_name(p.stem + ".orbit.json"))
        if orbit_out is not None:
            if verdict.positive_system is not None:
                orbit = Frame.from_positive_system(verdict.positive_system, tag="closure")
            else:
                orbit = Frame(verdict.closure.orbit, tag="closure")
            io_formats.save_frame(orbit, orbit_out)


@main.command()
@click.argument("frame")
@click.option("-o", "--output", default="-", help="Report path ('-' for stdout).")
@click.pass_context
def verify(ctx, frame, output):
    """Exit 0 iff the frame with its negatives is a root system and no spark obstruction is found."""
    F = io_formats.load_frame(frame)
    check, symmetric, spark = verify_frame(F, _tol(ctx))
    io_formats.emit_report(verification_report(F, check, symmetric, spark), output)
    if not (check.passed and spark.passed):
        for v in check.violations[:20]:
            click.echo(
                f"reflection of {_fmt(symmetric[v.beta])} through {_fmt(symmetric[v.alpha])} "
                f"is {_fmt(v.reflected)}, not in the set",
                err=True,
            )
        for f in spark.failures[:20]:
            click.echo(f"spark: reflection of vector {f.l} through vector {f.k} matches no frame vector", err=True)
        raise VerdictFailure()


def run(argv: list[str] | None = None) -> int:
    """Entry point with the fixed exit-code contract."""
    try:
        main.main(args=argv, prog_name="rootframes", standalone_mode=False)
    except VerdictFailure:
        return EXIT_VERDICT
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return EXIT_USAGE
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except InternalError as exc:
        click.echo(f"internal error: {exc}", err=True)
        return EXIT_INTERNAL
    except (RootFrameError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001
        click.echo(f"internal error: {type(exc).__name__}: {exc}", err=True)
        return EXIT_INTERNAL
    return EXIT_OK


def entry() -> None:
    sys.exit(run())
