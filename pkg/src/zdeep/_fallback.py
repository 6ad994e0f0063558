"""Pure-Python implementations of the hot kernels.

Same signatures and results as the compiled ``_kernels`` module; used when
the extension is not built or ``ZDEEP_PURE_PYTHON`` is set.
"""

from math import gcd

import numpy as np

BACKEND = "python"


def fools_all_bases(n, z):
    """True iff every unit a in [1, n-1] passes the z-deep test (n odd >= 3)."""
    d = n - 1
    r = (d & -d).bit_length() - 1
    d >>= r
    m = min(z, r)
    e = d << (r - m)
    nm1 = n - 1
    for a in range(1, n):
        if gcd(a, n) != 1:
            continue
        x = pow(a, e, n)
        if x == 1:
            continue
        for _ in range(m):
            if x == nm1:
                break
            x = x * x % n
        else:
            return False
    return True


def sieve_segment(lo, hi, primes):
    """Carmichael numbers in [lo, hi).

    ``primes`` holds the odd primes up to at least isqrt(hi - 1). Each odd
    n in the segment accumulates its small prime factors; a factor p with
    p**2 | n or (p - 1) not dividing n - 1 marks n bad. Whatever is left
    after the small primes is a single large prime, checked the same way.
    """
    first = lo | 1
    if first >= hi:
        return []
    vals = np.arange(first, hi, 2, dtype=np.int64)
    rem = vals.copy()
    bad = np.zeros(vals.size, dtype=bool)
    cnt = np.zeros(vals.size, dtype=np.int8)
    for p in primes:
        p = int(p)
        if p * p > hi - 1:
            break
        # first odd multiple of p that is >= first
        start = -(-first // p) * p
        if start % 2 == 0:
            start += p
        if start >= hi:
            continue
        sl = slice((start - first) // 2, None, p)
        v = vals[sl]
        bad[sl] |= ((v - 1) % (p - 1) != 0) | (v % (p * p) == 0)
        rem[sl] //= p
        cnt[sl] += 1
    big = rem > 1
    ok = ~bad & (cnt + big >= 3)
    ok &= ~big | ((vals - 1) % np.maximum(rem - 1, 1) == 0)
    return [int(x) for x in vals[ok]]


def fermat_progression(pi, start, step, lim):
    """Values m = start, start+step, ... <= lim with 2^(m*pi - 1) == 1 mod m*pi.

    Even products are skipped.
    """
    out = []
    if pi % 2 == 0:
        return out
    if step % 2 == 0 and start % 2 == 0:
        return out
    m = start
    while m <= lim:
        if m & 1:
            n = m * pi
            if n > 2 and pow(2, n - 1, n) == 1:
                out.append(m)
        m += step
    return out
