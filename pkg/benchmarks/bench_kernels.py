"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 3]

Each kernel runs on the same inputs under both backends; the outputs are
compared before any timing is reported.
"""

import argparse
import time

from zdeep import _fallback
from zdeep.arith import is_prime
from zdeep.carmichael import odd_primes_upto

try:
    from zdeep import _kernels
except ImportError:
    _kernels = None


def best_of(fn, repeat):
    best, result = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def cases():
    primes = odd_primes_upto(10**5)
    lo = 10**10 - (1 << 21)
    yield "sieve_segment 2^21 at 1e10", lambda m: list(m.sieve_segment(lo, 10**10, primes))
    composites = [n for n in range(9, 50001, 2) if not is_prime(n)]
    yield ("fools_all_bases composites<=5e4 z=0..4",
           lambda m: [bool(m.fools_all_bases(n, z)) for n in composites for z in range(5)])
    yield ("fools_all_bases 10 Carmichaels",
           lambda m: [bool(m.fools_all_bases(n, 0)) for n in
                      (561, 1105, 1729, 2465, 2821, 6601, 8911, 10585, 15841, 29341)])
    yield ("fermat_progression 1e6 terms",
           lambda m: list(m.fermat_progression(7 * 13 * 19, 1, 6, 2 * 10**6)))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _kernels is None:
        print("compiled kernels are not built; only the fallback is available")
    print(f"{'kernel':40} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for name, fn in cases():
        tp, rp = best_of(lambda: fn(_fallback), args.repeat)
        if _kernels is None:
            print(f"{name:40} {tp:10.4f} {'-':>10} {'-':>8}")
            continue
        tc, rc = best_of(lambda: fn(_kernels), args.repeat)
        if rp != rc:
            raise SystemExit(f"{name}: backends disagree")
        print(f"{name:40} {tp:10.4f} {tc:10.4f} {tp / tc:8.1f}x")


if __name__ == "__main__":
    main()
