"""Write every invariant and eigenvalue sweep as CSV into a results directory.

    python scripts/run_sweeps.py [--out results] [--gamma 1e-3]
"""
import argparse
import logging
import time
from dataclasses import dataclass
from pathlib import Path

from eig3 import bench
from eig3.bench import PathKind, Quantity, TransformKind


@dataclass(frozen=True)
class SweepConfig:
    out: Path = Path("results")
    gamma: float = bench.DEFAULT_GAMMA


def main(cfg: SweepConfig) -> None:
    cfg.out.mkdir(parents=True, exist_ok=True)
    deltas = bench.default_deltas()
    for path in PathKind:
        for tr in TransformKind:
            t0 = time.perf_counter()
            for q in Quantity:
                recs = bench.sweep_invariants(path, tr, deltas, q, cfg.gamma)
                bench.write_sweep(recs, cfg.out / f"{q.value}-{path.value}-{tr.value}.csv")
            recs = bench.sweep_eigvals(path, tr, deltas, cfg.gamma)
            bench.write_sweep(recs, cfg.out / f"eigvals-{path.value}-{tr.value}.csv", "eigvals")
            worst = max(r.errors["stable"] / r.bound for r in recs if r.bound)
            print(f"{path.value}/{tr.value}: max eig err/bound {worst:.2f} "
                  f"({time.perf_counter() - t0:.1f}s)")


if __name__ == "__main__":
    logging.basicConfig(level=logging.WARNING)
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--out", type=Path, default=SweepConfig.out)
    p.add_argument("--gamma", type=float, default=SweepConfig.gamma)
    a = p.parse_args()
    main(SweepConfig(a.out, a.gamma))
