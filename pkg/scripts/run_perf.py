"""Time the stable closed form against LAPACK eigvals on the benchmark matrix.

    python scripts/run_perf.py [--iterations 1000000] [--repetitions 10]
"""
import argparse
from dataclasses import dataclass

from eig3 import bench
from eig3.bench import PathKind, TransformKind


@dataclass(frozen=True)
class PerfConfig:
    iterations: int = 1_000_000
    repetitions: int = 10
    delta: float = 1e-14


def main(cfg: PerfConfig) -> None:
    case = bench.generate_case(PathKind.D2, TransformKind.U1, cfg.delta)
    result = bench.perf_benchmark(case, cfg.iterations, cfg.repetitions)
    print(bench.format_perf_report(result), end="")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--iterations", type=int, default=PerfConfig.iterations)
    p.add_argument("--repetitions", type=int, default=PerfConfig.repetitions)
    p.add_argument("--delta", type=float, default=PerfConfig.delta)
    a = p.parse_args()
    main(PerfConfig(a.iterations, a.repetitions, a.delta))
