"""Time the compiled and pure-Python fixed-point kernels on the same problems.

    python benchmarks/bench_kernels.py [--repeat R] [--max-n N]

Both backends must return the same count; a mismatch aborts the run.
"""

import argparse
import sys
import time

from shiftflip.flips import OneBlockFlip, as_sliding, compose_shift, reversal
from shiftflip.kernels import FixedPointProblem, backends
from shiftflip.sft import SftPresentation
from shiftflip.words import SymbolInvolution


def problems():
    golden = SftPresentation.from_forbidden("01", 1, ["11"])
    full = SftPresentation.full_shift("01")
    three = SftPresentation.from_forbidden("abc", 1, ["aa", "bc", "cb"])
    rho = reversal(golden)
    return [
        ("golden, rho", golden, rho),
        ("golden, sigma^3 rho", golden, compose_shift(rho, 3)),
        ("full 2-shift, sigma swap", full,
         compose_shift(OneBlockFlip(full, SymbolInvolution({"0": "1", "1": "0"})), 1)),
        ("3 symbols, b<->c", three,
         OneBlockFlip(three, SymbolInvolution({"a": "a", "b": "c", "c": "b"}))),
        ("golden, periodic points", golden, None),
    ]


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--max-n", type=int, default=36)
    args = ap.parse_args(argv)
    names = backends()
    if "compiled" not in names:
        print("compiled extension not built; only the Python backend is available")
    print(f"{'problem':28} {'n':>3} {'count':>10} " + " ".join(f"{b:>10}" for b in names)
          + ("    speedup" if len(names) == 2 else ""))
    for label, X, phi in problems():
        if phi is None:
            prob = FixedPointProblem(X)
        else:
            phi = as_sliding(phi)
            prob = FixedPointProblem(X, phi.table, phi.radius)
        for n in (12, 24, args.max_n):
            times, counts = [], set()
            for b in names:
                # the plain periodic-point search has no flip pruning; keep Python small
                if b == "python" and phi is None and n > 24:
                    times.append(None)
                    continue
                t, c = best_of(lambda: prob.count(n, b), args.repeat)
                times.append(t)
                counts.add(c)
            if len(counts) != 1:
                print(f"backends disagree on {label}, n = {n}: {counts}", file=sys.stderr)
                return 1
            cells = " ".join(f"{t * 1e3:8.2f}ms" if t is not None else f"{'skipped':>10}"
                             for t in times)
            ratio = ""
            if len(times) == 2 and None not in times and times[0] > 0:
                ratio = f"  {times[1] / times[0]:8.1f}x"
            print(f"{label:28} {n:>3} {counts.pop():>10} {cells}{ratio}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
