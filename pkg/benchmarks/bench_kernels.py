"""Compare the compiled search kernels against the interpreted fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]

Times a fixed set of search-heavy workloads under the backend selected by
PEBBLE_PURE_PYTHON, then re-runs itself in a subprocess with the flag
flipped and prints one table with both wall times and the speedup. The
last workload is deliberately dominated by per-call Python overhead, as a
reminder of where compilation cannot help.
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time
from pathlib import Path

import numpy as np

from pebbling import (
    Budget,
    PebbleDistribution,
    arbitrary_target_number,
    is_solvable_distribution,
    make_family,
    optimal_pebbling_number,
    pebbling_number,
)
from pebbling._kernels import PURE_PYTHON


def _decide_batch() -> None:
    g = make_family("hypercube", 3)
    budget = Budget(max_pebbles=80)
    rng = np.random.default_rng(7)
    for _ in range(100):
        counts = rng.multinomial(9, [1 / 8] * 8)
        dist = PebbleDistribution(tuple(int(x) for x in counts))
        is_solvable_distribution(g, dist, 1, budget)


def _workloads() -> list[tuple[str, object]]:
    budget = Budget(max_pebbles=80)
    return [
        ("pi(Q^3)", lambda: pebbling_number(make_family("hypercube", 3), 1, budget)),
        ("pi_2(W_6)", lambda: pebbling_number(make_family("wheel", 6), 2, budget)),
        ("pi*(Q^3)", lambda: optimal_pebbling_number(make_family("hypercube", 3), 1, budget)),
        ("pi(W_5, t=2 targets)", lambda: arbitrary_target_number(make_family("wheel", 5), 2, budget)),
        ("100 solvability decides", _decide_batch),
    ]


def run_backend(repeat: int) -> dict[str, float]:
    results = {}
    for name, fn in _workloads():
        fn()  # warmup; also absorbs jit compilation
        best = float("inf")
        for _ in range(repeat):
            start = time.perf_counter()
            fn()
            best = min(best, time.perf_counter() - start)
        results[name] = best
    return results


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3, help="best-of-N timing")
    parser.add_argument("--emit-json", action="store_true", help=argparse.SUPPRESS)
    args = parser.parse_args()

    mine = run_backend(args.repeat)
    if args.emit_json:
        print(json.dumps(mine))
        return 0

    env = dict(os.environ, PEBBLE_PURE_PYTHON="0" if PURE_PYTHON else "1")
    child = subprocess.run(
        [sys.executable, str(Path(__file__).resolve()),
         "--emit-json", "--repeat", str(args.repeat)],
        env=env, capture_output=True, text=True, check=True,
    )
    theirs = json.loads(child.stdout)

    compiled, interpreted = (theirs, mine) if PURE_PYTHON else (mine, theirs)
    width = max(len(name) for name, _ in _workloads())
    print(f"{'workload':<{width}}  {'numba':>10}  {'pure-python':>12}  {'speedup':>8}")
    for name, _ in _workloads():
        ratio = interpreted[name] / compiled[name]
        print(
            f"{name:<{width}}  {compiled[name] * 1e3:>8.1f}ms"
            f"  {interpreted[name] * 1e3:>10.1f}ms  {ratio:>7.1f}x"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
