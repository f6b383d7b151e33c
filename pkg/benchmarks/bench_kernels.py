"""Compare the compiled and pure-Python elimination kernels.

Two levels are timed:

* the raw kernels ``rref_int`` and ``matmul_int`` on random Gaussian-integer
  matrices shaped like the differentials of a 6-dimensional complex;
* an end-to-end run (Betti numbers plus one full structure analysis of each
  catalog entry) in fresh interpreters with and without ``AKC_PURE_PYTHON=1``.

Run with ``python benchmarks/bench_kernels.py [--repeat N]``.
"""

from __future__ import annotations

import argparse
import os
import random
import statistics
import subprocess
import sys
import timeit

from akc import kernels

END_TO_END = """
import time
from akc import catalog
from akc.report import build_report
t = time.perf_counter()
for name in catalog.names():
    entry = catalog.load(name)
    build_report(entry.elaborated, entry.structures)
print(time.perf_counter() - t)
"""


def _matrices(rng, count):
    out = []
    for _ in range(count):
        r, c = rng.choice(((20, 15), (15, 20), (20, 20), (15, 6)))
        re = [[rng.randint(-4, 4) if rng.random() < 0.4 else 0 for _ in range(c)] for _ in range(r)]
        im = [[rng.randint(-2, 2) if rng.random() < 0.2 else 0 for _ in range(c)] for _ in range(r)] if rng.random() < 0.5 else None
        out.append((re, im, c))
    return out


def _time(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def bench_kernels(repeat: int) -> list[tuple[str, float, float]]:
    rng = random.Random(20120601)
    mats = _matrices(rng, 200)
    squares = [([[rng.randint(-10**6, 10**6) for _ in range(20)] for _ in range(20)],
                [[rng.randint(-10**6, 10**6) for _ in range(20)] for _ in range(20)]) for _ in range(50)]
    py = kernels.python_backend
    rows = []
    for label, impl in (("rref_int x200", "rref"), ("matmul_int 20x20 x50", "mm")):
        if impl == "rref":
            f_fast = lambda: [kernels.rref_int(re, im, c) for re, im, c in mats]
            f_py = lambda: [py.rref_int(re, im, c) for re, im, c in mats]
        else:
            f_fast = lambda: [kernels.matmul_int(a, b, 20) for a, b in squares]
            f_py = lambda: [py.matmul_int(a, b, 20) for a, b in squares]
        rows.append((label, _time(f_py, repeat), _time(f_fast, repeat)))
    return rows


def bench_end_to_end(repeat: int) -> tuple[float, float]:
    def run(pure: bool) -> float:
        env = dict(os.environ)
        if pure:
            env["AKC_PURE_PYTHON"] = "1"
        else:
            env.pop("AKC_PURE_PYTHON", None)
        times = []
        for _ in range(repeat):
            out = subprocess.run([sys.executable, "-c", END_TO_END], env=env, capture_output=True, text=True, check=True)
            times.append(float(out.stdout))
        return statistics.median(times)

    return run(True), run(False)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    print(f"active backend: {kernels.BACKEND}")
    if kernels.BACKEND != "cython":
        print("compiled extension not available; only the pure-Python numbers are meaningful")
    print(f"{'workload':<28}{'python (s)':>12}{'compiled (s)':>14}{'speedup':>10}")
    for label, t_py, t_fast in bench_kernels(args.repeat):
        print(f"{label:<28}{t_py:>12.4f}{t_fast:>14.4f}{t_py / t_fast:>9.2f}x")
    t_py, t_fast = bench_end_to_end(args.repeat)
    print(f"{'catalog analysis (median)':<28}{t_py:>12.4f}{t_fast:>14.4f}{t_py / t_fast:>9.2f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
