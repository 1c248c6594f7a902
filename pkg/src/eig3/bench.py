"""Benchmark corpora, forward-error sweeps and timing.

Test matrices are ``fl(U D U^-1)`` built in double precision from one of
three transformations and one of two eigenvalue paths:

* ``D1 = diag(1, 1, 1 + delta)``: a double eigenvalue drifting into a triple
  one (``J2 -> 0``);
* ``D2 = diag(-1, 1, 1 + delta)``: a double eigenvalue with ``J2``, ``J3``
  bounded away from zero (``disc -> 0``).

Forward errors are measured against the oracle evaluated at the floating
point matrix, not at the exact product.
"""
from __future__ import annotations

import csv
import enum
import io
import logging
import math
import statistics
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterable, Sequence, TextIO

import numpy as np
from numba import njit
from numba.core.errors import NumbaError

from . import oracle
from .eigensolver import eigvals_kernel, eigvals_naive_kernel
from .invariants import (
    disc_naive,
    disc_stable,
    j2_naive,
    j2_stable,
    j2_tensor,
    j3_naive,
    j3_stable,
    j3_tensor,
)
from .mat3 import check_finite, diag, inverse_adjugate, matmul

log = logging.getLogger(__name__)

DEFAULT_GAMMA = 1e-3


class TransformKind(enum.Enum):
    SYMM = "symm"
    U1 = "u1"
    U2 = "u2"


class PathKind(enum.Enum):
    D1 = "d1"
    D2 = "d2"


class Quantity(enum.Enum):
    J2 = "j2"
    J3 = "j3"
    DISC = "disc"


class BaselineUnavailable(RuntimeError):
    pass


def default_deltas() -> list[float]:
    """61 log-spaced points ``10**(-k/4)``, ``k = 4..64``, descending."""
    return [10.0 ** (-k / 4) for k in range(4, 65)]


def log_deltas(delta_max: float, delta_min: float, points: int) -> list[float]:
    out = np.logspace(math.log10(delta_max), math.log10(delta_min), points)
    return [float(d) for d in out]


def make_transform(kind: TransformKind, gamma: float = DEFAULT_GAMMA) -> np.ndarray:
    if kind is TransformKind.SYMM:
        r = math.sqrt(0.5)
        return np.array([[r, -0.5, 0.5], [r, 0.5, -0.5], [0.0, r, r]])
    if kind is TransformKind.U1:
        return np.array([[1.0, -1.0, 1.0], [1.0, 1.0, 1.0], [-1.0, -1.0, 1.0]])
    if gamma == 0:
        raise ValueError("U2 is singular for gamma = 0")
    return np.array([[1.0, 1.0, 1.0], [1.0, 0.0, 1.0], [2.0, 1.0, 2.0 + gamma]])


def path_diagonal(path: PathKind, delta: float) -> np.ndarray:
    if delta <= 0:
        raise ValueError("delta must be positive")
    first = 1.0 if path is PathKind.D1 else -1.0
    return diag(first, 1.0, 1.0 + delta)


@dataclass(frozen=True)
class BenchmarkCase:
    path: PathKind
    transform: TransformKind
    delta: float
    matrix: np.ndarray = field(repr=False, compare=False)
    gamma: float = DEFAULT_GAMMA


def generate_case(path: PathKind, transform: TransformKind, delta: float,
                  gamma: float = DEFAULT_GAMMA) -> BenchmarkCase:
    u = make_transform(transform, gamma)
    a = matmul(matmul(u, path_diagonal(path, delta)), inverse_adjugate(u))
    return BenchmarkCase(path, transform, delta, check_finite(a), gamma)


_kappa_cache: dict[tuple[TransformKind, float], float] = {}


def transform_kappa2(transform: TransformKind, gamma: float = DEFAULT_GAMMA) -> float:
    key = (transform, gamma if transform is TransformKind.U2 else 0.0)
    if key not in _kappa_cache:
        _kappa_cache[key] = oracle.kappa2(make_transform(transform, gamma))
    return _kappa_cache[key]


@dataclass
class ErrorRecord:
    """One sweep point.  ``errors`` maps variant name to absolute forward error."""

    delta: float
    errors: dict[str, float]
    bound: float
    exact: str | None = None
    failure: str | None = None


INVARIANT_VARIANTS: dict[Quantity, dict[str, Callable[[np.ndarray], float]]] = {
    Quantity.J2: {"stable": j2_stable, "naive": j2_naive, "tensor": j2_tensor},
    Quantity.J3: {"stable": j3_stable, "naive": j3_naive, "tensor": j3_tensor},
    Quantity.DISC: {
        "stable": disc_stable,
        "naive": lambda a: disc_naive(j2_naive(a), j3_naive(a)),
        "tensor": lambda a: disc_naive(j2_tensor(a), j3_tensor(a)),
    },
}


def _invariant_point(case: BenchmarkCase, quantity: Quantity, kappa: float) -> ErrorRecord:
    a = case.matrix
    exact = oracle.invariants_exact(a)
    value = {Quantity.J2: exact.j2, Quantity.J3: exact.j3, Quantity.DISC: exact.disc}[quantity]
    b = oracle.bounds(a, kappa)
    bound = {Quantity.J2: b.bound_j2, Quantity.J3: b.bound_j3, Quantity.DISC: b.bound_disc}[quantity]
    errors = {
        name: oracle.abs_error(f(a), value)
        for name, f in INVARIANT_VARIANTS[quantity].items()
    }
    return ErrorRecord(case.delta, errors, bound, oracle.to_decimal_string(value, 45))


def sweep_invariants(path: PathKind, transform: TransformKind, deltas: Sequence[float],
                     quantity: Quantity, gamma: float = DEFAULT_GAMMA) -> list[ErrorRecord]:
    kappa = transform_kappa2(transform, gamma)
    records = []
    for delta in sorted(deltas, reverse=True):
        try:
            case = generate_case(path, transform, delta, gamma)
            records.append(_invariant_point(case, quantity, kappa))
        except (ArithmeticError, ValueError) as exc:
            log.warning("sweep point delta=%r failed: %s", delta, exc)
            records.append(ErrorRecord(delta, {}, math.nan, failure=str(exc)))
    return records


def _baseline_eigvals(a: np.ndarray) -> np.ndarray:
    w = np.linalg.eigvals(a)
    return w[np.lexsort((w.imag, w.real))]


def eigen_errors(a: np.ndarray, reference: list[tuple[Fraction, Fraction]]) -> dict[str, float]:
    """Max-abs error of each solver against ascending-aligned reference roots.

    ``reference`` holds ``(real, imag)`` pairs; for a real spectrum all
    imaginary parts are zero.  Computed reals are compared against complex
    roots by modulus, so a rounding-induced complex pair still gives a
    meaningful distance.
    """

    def dist(re: float, im: float, ref: tuple[Fraction, Fraction]) -> float:
        dr = oracle.abs_error(re, ref[0])
        di = abs(im - float(ref[1]))
        return math.hypot(dr, di)

    ours = eigvals_kernel(a)[:3]
    naive = eigvals_naive_kernel(a)[:3]
    base = _baseline_eigvals(a)
    return {
        "stable": max(dist(x, 0.0, r) for x, r in zip(ours, reference)),
        "naive": max(dist(x, 0.0, r) for x, r in zip(naive, reference)),
        "baseline": max(dist(float(w.real), float(w.imag), r) for w, r in zip(base, reference)),
    }


def sweep_eigvals(path: PathKind, transform: TransformKind, deltas: Sequence[float],
                  gamma: float = DEFAULT_GAMMA) -> list[ErrorRecord]:
    kappa = transform_kappa2(transform, gamma)
    records = []
    for delta in sorted(deltas, reverse=True):
        try:
            case = generate_case(path, transform, delta, gamma)
            ref = oracle.eig_reference_complex(case.matrix)
            bound = oracle.bounds(case.matrix, kappa).bound_eig
            records.append(ErrorRecord(delta, eigen_errors(case.matrix, ref), bound))
        except (ArithmeticError, ValueError) as exc:
            log.warning("sweep point delta=%r failed: %s", delta, exc)
            records.append(ErrorRecord(delta, {}, math.nan, failure=str(exc)))
    return records


# --- CSV output ------------------------------------------------------------------

INVARIANT_HEADER = ("delta", "exact", "err_stable", "err_naive", "err_tensor", "bound")
EIGVALS_HEADER = ("delta", "err_stable", "err_naive", "err_baseline", "bound")


def _fmt(x: float | None) -> str:
    return "" if x is None else repr(float(x))


def write_sweep(records: Iterable[ErrorRecord], destination: str | Path | TextIO,
                kind: str = "invariants") -> None:
    """Write sweep records as CSV (descending delta, LF line endings)."""
    header = INVARIANT_HEADER if kind == "invariants" else EIGVALS_HEADER
    rows = sorted(records, key=lambda r: r.delta, reverse=True)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        row = []
        for col in header:
            if col == "delta":
                row.append(_fmt(r.delta))
            elif col == "exact":
                row.append(r.exact or "")
            elif col == "bound":
                row.append(_fmt(r.bound))
            else:
                row.append(_fmt(r.errors.get(col[4:])))
        w.writerow(row)
    text = buf.getvalue()
    if isinstance(destination, (str, Path)):
        with open(destination, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        destination.write(text)


def read_sweep(source: str | Path) -> list[dict[str, str]]:
    with open(source, encoding="utf-8", newline="") as fh:
        return list(csv.DictReader(fh))


# --- timing ----------------------------------------------------------------------


@njit(cache=True)
def _bits_checksum(out, l1, l2, l3):
    out[0] = l1
    out[1] = l2
    out[2] = l3
    b = out.view(np.uint64)
    return b[0] + b[1] + b[2]


@njit(cache=True)
def _time_ours(a, iterations):
    out = np.empty(3)
    acc = np.uint64(0)
    for _ in range(iterations):
        l1, l2, l3, _d = eigvals_kernel(a)
        acc += _bits_checksum(out, l1, l2, l3)
    return acc


@njit(cache=True)
def _time_baseline(a, iterations):
    out = np.empty(3)
    acc = np.uint64(0)
    for _ in range(iterations):
        w = np.linalg.eigvals(a)
        acc += _bits_checksum(out, w[0].real, w[1].real, w[2].real)
    return acc


def checksum_once(a: np.ndarray) -> int:
    """Checksum contribution of a single stable evaluation (uint64 bit sum)."""
    return int(_time_ours(a, 1))


@dataclass
class TimingStats:
    method: str
    mean_ns: float
    stdev_ns: float
    fastest_ns: float
    checksum: int


@dataclass
class PerfResult:
    ours: TimingStats
    baseline: TimingStats | None
    iterations: int
    repetitions: int

    @property
    def speedup(self) -> float:
        if self.baseline is None:
            return math.nan
        return self.baseline.mean_ns / self.ours.mean_ns


def _time(fn, a: np.ndarray, iterations: int, repetitions: int, method: str) -> TimingStats:
    fn(a, 1)  # compile / warm up
    per_eval = []
    checksums = set()
    for _ in range(repetitions):
        t0 = time.perf_counter_ns()
        checksums.add(int(fn(a, iterations)))
        per_eval.append((time.perf_counter_ns() - t0) / iterations)
    if len(checksums) != 1:
        raise RuntimeError(f"{method}: checksum changed between repetitions")
    return TimingStats(method, statistics.fmean(per_eval), statistics.stdev(per_eval),
                       min(per_eval), checksums.pop())


def _time_baseline_stats(a: np.ndarray, iterations: int, repetitions: int) -> TimingStats:
    try:
        return _time(_time_baseline, a, iterations, repetitions, "LAPACK eigvals (numpy)")
    except NumbaError as exc:  # numba built without its LAPACK bindings
        raise BaselineUnavailable(str(exc)) from exc


def perf_benchmark(case: BenchmarkCase, iterations: int = 1_000_000,
                   repetitions: int = 10, min_iterations: int = 100_000) -> PerfResult:
    """Time the stable closed form against the compiled LAPACK ``eigvals``.

    Both loops run compiled and single-threaded; every evaluation feeds a
    uint64 checksum of result bits so neither loop can be optimised away.
    Each of the ``repetitions`` contributes one mean; the report gives their
    mean, stdev and minimum.
    """
    if iterations < min_iterations:
        raise ValueError(f"iterations must be >= {min_iterations}")
    if repetitions < 2:
        raise ValueError("need at least two repetitions for a stdev")
    a = np.ascontiguousarray(case.matrix)
    ours = _time(_time_ours, a, iterations, repetitions, "closed form (stable)")
    try:
        baseline = _time_baseline_stats(a, iterations, repetitions)
    except BaselineUnavailable as exc:
        log.warning("baseline unavailable: %s", exc)
        baseline = None
    return PerfResult(ours, baseline, iterations, repetitions)


def format_perf_report(result: PerfResult) -> str:
    lines = [
        f"{'Method':<28} {'mean ns/eval +- stddev':>24} {'fastest ns/eval':>16}",
    ]
    for stats in (result.ours, result.baseline):
        if stats is None:
            lines.append(f"{'LAPACK eigvals (numpy)':<28} {'unavailable':>24} {'-':>16}")
            continue
        cell = f"{stats.mean_ns:.1f} +- {stats.stdev_ns:.1f}"
        lines.append(f"{stats.method:<28} {cell:>24} {stats.fastest_ns:>16.2f}")
    lines.append(f"iterations per repetition: {result.iterations}, repetitions: {result.repetitions}")
    if result.baseline is not None:
        lines.append(f"speedup (baseline mean / ours mean): {result.speedup:.1f}x")
    return "\n".join(lines) + "\n"
