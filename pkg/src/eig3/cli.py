"""Command-line entry point: ``eig3 {eigvals,bench-invariants,bench-eigvals,bench-perf}``.

Exit status is 0 on success, 2 on usage errors and 1 on runtime errors.
Bench output is computed in full before anything is written, so a failed
run never leaves a partial file behind.
"""
from __future__ import annotations

import argparse
import io
import sys
import warnings
from dataclasses import dataclass
from pathlib import Path

from . import bench
from .eigensolver import NonRealSpectrum, eigvals
from .mat3 import mat3

DEFAULT_POINTS = 61


@dataclass
class CliConfig:
    command: str
    path: str = "d1"
    transform: str = "u1"
    gamma: float = bench.DEFAULT_GAMMA
    quantity: str = "j2"
    delta_min: float = 1e-16
    delta_max: float = 1e-1
    points: int = DEFAULT_POINTS
    output: str | None = None
    iterations: int = 1_000_000
    delta: float = 1e-14
    input: str | None = None


class UsageError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="eig3", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eigvals", help="eigenvalues of one matrix (9 numbers, row-major)")
    ev.add_argument("input", nargs="?", help="file with 9 numbers; stdin if omitted")

    def common(sp, path_default):
        sp.add_argument("--path", choices=["d1", "d2"], default=path_default)
        sp.add_argument("--transform", choices=["symm", "u1", "u2"], default="u1")
        sp.add_argument("--gamma", type=float, default=None,
                        help=f"U2 parameter (default {bench.DEFAULT_GAMMA}); only valid with u2")
        sp.add_argument("--output", "-o", default=None, help="output file (default stdout)")

    for name in ("bench-invariants", "bench-eigvals"):
        sp = sub.add_parser(name)
        common(sp, "d1")
        if name == "bench-invariants":
            sp.add_argument("--quantity", choices=["j2", "j3", "disc"], default="j2")
        sp.add_argument("--delta-min", type=float, default=1e-16)
        sp.add_argument("--delta-max", type=float, default=1e-1)
        sp.add_argument("--points", type=int, default=DEFAULT_POINTS)

    pf = sub.add_parser("bench-perf")
    common(pf, "d2")
    pf.add_argument("--delta", type=float, default=1e-14)
    pf.add_argument("--iterations", type=int, default=1_000_000)
    return p


def parse_config(argv: list[str]) -> CliConfig:
    ns = _parser().parse_args(argv)
    cfg = CliConfig(command=ns.command)
    for key, value in vars(ns).items():
        if key == "gamma":
            continue
        if value is not None and hasattr(cfg, key):
            setattr(cfg, key, value)
    if ns.command != "eigvals":
        if ns.gamma is not None and ns.transform != "u2":
            raise UsageError("--gamma is only valid with --transform u2")
        if ns.gamma is not None:
            if ns.gamma == 0:
                raise UsageError("--gamma must be nonzero")
            cfg.gamma = ns.gamma
    if ns.command in ("bench-invariants", "bench-eigvals"):
        if not (0 < cfg.delta_min < cfg.delta_max):
            raise UsageError("--delta-min must be positive and smaller than --delta-max")
        if cfg.points < 2:
            raise UsageError("--points must be at least 2")
    if ns.command == "bench-perf":
        if cfg.iterations < 100_000:
            raise UsageError("--iterations must be at least 100000")
        if cfg.delta <= 0:
            raise UsageError("--delta must be positive")
    return cfg


def _read_matrix(cfg: CliConfig):
    text = Path(cfg.input).read_text() if cfg.input else sys.stdin.read()
    values = [float(tok) for tok in text.split()]
    if len(values) != 9:
        raise UsageError(f"expected 9 numbers, got {len(values)}")
    return mat3(values)


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def execute(cfg: CliConfig) -> None:
    if cfg.command == "eigvals":
        a = _read_matrix(cfg)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", NonRealSpectrum)
            lam = eigvals(a)
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
        sys.stdout.write("".join(f"{x!r}\n" for x in lam))
        return

    path = bench.PathKind(cfg.path)
    transform = bench.TransformKind(cfg.transform)
    buf = io.StringIO()
    if cfg.command == "bench-perf":
        case = bench.generate_case(path, transform, cfg.delta, cfg.gamma)
        result = bench.perf_benchmark(case, cfg.iterations)
        buf.write(bench.format_perf_report(result))
    else:
        deltas = bench.log_deltas(cfg.delta_max, cfg.delta_min, cfg.points)
        if cfg.command == "bench-invariants":
            records = bench.sweep_invariants(path, transform, deltas,
                                             bench.Quantity(cfg.quantity), cfg.gamma)
            bench.write_sweep(records, buf, "invariants")
        else:
            records = bench.sweep_eigvals(path, transform, deltas, cfg.gamma)
            bench.write_sweep(records, buf, "eigvals")
    _emit(buf.getvalue(), cfg.output)


def run(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_config(argv)
    except SystemExit as exc:  # argparse already printed usage
        return int(exc.code or 0)
    except UsageError as exc:
        print(f"eig3: error: {exc}", file=sys.stderr)
        return 2
    try:
        execute(cfg)
    except UsageError as exc:
        print(f"eig3: error: {exc}", file=sys.stderr)
        return 2
    except (ArithmeticError, ValueError, OSError, RuntimeError) as exc:
        print(f"eig3: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())
