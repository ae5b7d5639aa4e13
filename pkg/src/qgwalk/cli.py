"""Command-line front end.

Exit codes: 0 success, 1 I/O error, 2 invalid input, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import sys

from . import graphspec
from .dynamics import decompose, probability_series
from .errors import (
    ConvergenceFailure,
    DimensionLimit,
    QGWError,
    SweepPointError,
)
from .graphspec import build_hamiltonian
from .metrics import SweepSpec, parse_range, sweep
from .multiparticle import Statistics, initial_pair, pair_dimension, p_perp_series
from .series import TimeGrid

EXIT_OK, EXIT_IO, EXIT_INVALID, EXIT_NUMERIC = 0, 1, 2, 3

log = logging.getLogger("qgwalk")


class UsageError(QGWError):
    pass


def fmt(x: float) -> str:
    return format(float(x), ".12g")


def parse_subset(text: str) -> list[int]:
    """``"0-7"``, ``"0,1,4"`` or a mix such as ``"0-3,8"``; empty text is the empty set."""
    out: set[int] = set()
    for part in filter(None, (p.strip() for p in text.split(","))):
        if "-" in part:
            lo, hi = part.split("-", 1)
            lo, hi = int(lo), int(hi)
            if hi < lo:
                raise UsageError(f"bad subset range {part!r}")
            out.update(range(lo, hi + 1))
        else:
            out.add(int(part))
    return sorted(out)


def parse_assignment(text: str) -> tuple[str, str]:
    name, sep, value = text.partition("=")
    if not sep or not name.strip():
        raise UsageError(f"expected name=value, got {text!r}")
    return name.strip(), value.strip()


def parse_stats(text: str) -> list[Statistics]:
    if text == "both":
        return [Statistics.FERMION, Statistics.BOSON]
    try:
        return [Statistics.parse(text)]
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def load_graph(args) -> graphspec.GraphSpec:
    overrides = {}
    for item in args.set or ():
        name, value = parse_assignment(item)
        try:
            overrides[name] = float(value)
        except ValueError:
            raise UsageError(f"--set {name}: {value!r} is not a number") from None
    if args.graph:
        spec = graphspec.load_graph_spec(args.graph)
        return spec.with_parameters(overrides) if overrides else spec
    # builtins keep the c edge even at c=0 so that c stays sweepable
    return graphspec.builtin(args.builtin, args.preset, cross_edge=True, **overrides)


def make_grid(args) -> TimeGrid:
    try:
        return TimeGrid.span(args.T, args.dt)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def write_csv(args, header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    text = buf.getvalue()
    if args.out and args.out != "-":
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_validate(args) -> int:
    spec = load_graph(args)
    H = build_hamiltonian(spec)
    w = decompose(H).eigenvalues
    gap = w[1] - w[0] if len(w) > 1 else 0.0
    print(f"{spec.n} sites, {len(spec.edges)} edges, {len(spec.parameters)} parameters")
    for name, value in spec.parameters.items():
        print(f"  {name} = {fmt(value)}")
    print(f"hamiltonian: {spec.n}x{spec.n}")
    print(f"spectrum: [{fmt(w[0])}, {fmt(w[-1])}]")
    print(f"spectral gap: {fmt(gap)}")
    return EXIT_OK


def cmd_single(args) -> int:
    spec = load_graph(args)
    grid = make_grid(args)
    dec = decompose(build_hamiltonian(spec))
    series = probability_series(dec, args.src, args.dst, grid)
    rows = ((fmt(t), fmt(p)) for t, p in zip(grid.times, series.values))
    write_csv(args, ["t", "P"], rows)
    return EXIT_OK


def cmd_pair(args) -> int:
    spec = load_graph(args)
    grid = make_grid(args)
    stats = parse_stats(args.stats)
    subset = parse_subset(args.subset)
    i, j = args.pair
    dec = decompose(build_hamiltonian(spec))
    columns = []
    for s in stats:
        pair0 = initial_pair(i, j, s, spec.n)
        columns.append(p_perp_series(dec, pair0, subset, grid).values)
    header = ["t"] + [f"P_perp_{s.label}" for s in stats]
    rows = (
        [fmt(t)] + [fmt(col[k]) for col in columns]
        for k, t in enumerate(grid.times)
    )
    write_csv(args, header, rows)
    return EXIT_OK


def cmd_sweep(args) -> int:
    spec = load_graph(args)
    grid = make_grid(args)
    name, text = parse_assignment(args.sweep)
    try:
        values = parse_range(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if name not in spec.parameters:
        raise UsageError(f"cannot sweep {name!r}: not a parameter of this graph")
    if args.baseline and 0.0 not in values:
        values = [0.0] + values
    sweep_spec = SweepSpec(
        parameter=name,
        values=values,
        graph=spec,
        grid=grid,
        subset=parse_subset(args.subset),
        statistics=parse_stats(args.stats),
        initial_sites=tuple(args.pair),
    )
    rows = sweep(sweep_spec)
    write_csv(
        args,
        ["param", "statistics", "lambda", "tau", "T", "dt"],
        ([fmt(r.value), r.statistics.label, fmt(r.lam), fmt(r.tau), fmt(grid.T), fmt(grid.dt)]
         for r in rows),
    )
    return EXIT_OK


def cmd_dims(args) -> int:
    if args.n is not None:
        n = args.n
    elif args.graph or args.builtin:
        n = load_graph(args).n
    else:
        raise UsageError("dims needs --n, --graph or --builtin")
    if n < 1:
        raise UsageError("--n must be at least 1")

    def line(label, k):
        b = pair_dimension(k, Statistics.BOSON)
        f = pair_dimension(k, Statistics.FERMION)
        print(f"{label} ({k} sites): boson: {b}, fermion: {f}")

    if args.subset:
        subset = parse_subset(args.subset)
        if subset and (subset[0] < 0 or subset[-1] >= n):
            raise UsageError(f"subset {args.subset!r} not within 0..{n - 1}")
        line("subset", len(subset))
    line("full graph", n)
    return EXIT_OK


def _add_graph_args(p: argparse.ArgumentParser, required=True):
    src = p.add_mutually_exclusive_group(required=required)
    src.add_argument("--graph", metavar="FILE", help="JSON graph spec")
    src.add_argument("--builtin", choices=sorted(graphspec.BUILTINS))
    p.add_argument("--preset", choices=sorted(graphspec.PRESETS),
                   help="parameter table for the builtin (default table1/table2)")
    p.add_argument("--set", action="append", metavar="NAME=VALUE",
                   help="override a graph parameter (repeatable)")


def _add_run_args(p: argparse.ArgumentParser):
    p.add_argument("--T", type=float, default=2000.0, help="final time (default 2000)")
    p.add_argument("--dt", type=float, default=0.1, help="time step (default 0.1)")
    p.add_argument("--out", metavar="PATH", help="CSV destination (default stdout)")


def _add_pair_args(p: argparse.ArgumentParser):
    p.add_argument("--stats", default="both", choices=["fermion", "boson", "both"])
    p.add_argument("--subset", default="0-7", help="confinement sites (default 0-7)")
    p.add_argument("--pair", nargs=2, type=int, default=[0, 1], metavar=("I", "J"),
                   help="initially occupied sites (default 0 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qgwalk",
        description="Continuous-time quantum walks of one and two particles on quantum-dot graphs.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a graph and summarise its spectrum")
    _add_graph_args(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("single", help="one-particle transition probability P(t)")
    _add_graph_args(p)
    _add_run_args(p)
    p.add_argument("--from", dest="src", type=int, required=True)
    p.add_argument("--to", dest="dst", type=int, required=True)
    p.set_defaults(func=cmd_single)

    p = sub.add_parser("pair", help="two-particle confinement probability series")
    _add_graph_args(p)
    _add_run_args(p)
    _add_pair_args(p)
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser("sweep", help="half-passage time over a parameter range")
    _add_graph_args(p)
    _add_run_args(p)
    _add_pair_args(p)
    p.add_argument("--sweep", default="c=0.01:0.01:0.30", metavar="NAME=START:STEP:END")
    p.add_argument("--no-baseline", dest="baseline", action="store_false",
                   help="omit the rows with the swept parameter at 0")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("dims", help="boson/fermion pair-space dimensions")
    _add_graph_args(p, required=False)
    p.add_argument("--n", type=int, help="number of sites")
    p.add_argument("--subset", help="also report the restricted subspace")
    p.set_defaults(func=cmd_dims)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except SweepPointError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _exit_code(exc.__cause__)
    except (QGWError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _exit_code(exc)


def _exit_code(exc) -> int:
    if isinstance(exc, (ConvergenceFailure, DimensionLimit, FloatingPointError)):
        return EXIT_NUMERIC
    if isinstance(exc, OSError):
        return EXIT_IO
    return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
