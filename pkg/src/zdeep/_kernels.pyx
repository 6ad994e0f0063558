# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels. Mirrors ``zdeep._fallback`` exactly."""

from libc.stdint cimport uint8_t, uint32_t, uint64_t
from libc.stdlib cimport calloc, free, malloc

cdef extern from *:
    """
    #include <stdint.h>
    typedef unsigned __int128 zd_u128;

    static inline uint64_t zd_mulmod(uint64_t a, uint64_t b, uint64_t m) {
        return (uint64_t)(((zd_u128)a * b) % m);
    }

    static inline uint64_t zd_powmod(uint64_t a, uint64_t e, uint64_t m) {
        uint64_t r = 1 % m;
        a %= m;
        while (e) {
            if (e & 1) r = zd_mulmod(r, a, m);
            a = zd_mulmod(a, a, m);
            e >>= 1;
        }
        return r;
    }

    /* -n^{-1} mod 2^64 for odd n (Newton iteration). */
    static inline uint64_t zd_neg_inv(uint64_t n) {
        uint64_t x = n;
        for (int i = 0; i < 5; i++) x *= 2 - n * x;
        return (uint64_t)0 - x;
    }

    /* Montgomery product; valid for odd n < 2^63. */
    static inline uint64_t zd_mont_mul(uint64_t a, uint64_t b, uint64_t n, uint64_t ninv) {
        zd_u128 t = (zd_u128)a * b;
        uint64_t q = (uint64_t)t * ninv;
        uint64_t r = (uint64_t)((t + (zd_u128)q * n) >> 64);
        return r >= n ? r - n : r;
    }

    /* 1 iff 2^(n-1) == 1 mod n, for odd n with 3 <= n < 2^63. */
    static int zd_fermat2(uint64_t n) {
        uint64_t ninv = zd_neg_inv(n);
        uint64_t one = ((uint64_t)0 - n) % n;
        uint64_t x = one;
        uint64_t e = n - 1;
        int bit = 63 - __builtin_clzll(e);
        for (; bit >= 0; bit--) {
            x = zd_mont_mul(x, x, n, ninv);
            if ((e >> bit) & 1) {
                x += x;
                if (x >= n) x -= n;
            }
        }
        return x == one;
    }
    """
    uint64_t zd_mulmod(uint64_t a, uint64_t b, uint64_t m) nogil
    uint64_t zd_powmod(uint64_t a, uint64_t e, uint64_t m) nogil
    int zd_fermat2(uint64_t n) nogil

BACKEND = "cython"


cdef uint64_t _gcd(uint64_t a, uint64_t b) noexcept nogil:
    cdef uint64_t t
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef bint _fools_all(uint64_t n, uint64_t e, long m) noexcept nogil:
    cdef uint64_t a, x, nm1 = n - 1
    cdef long i
    cdef bint ok
    for a in range(1, n):
        if _gcd(a, n) != 1:
            continue
        x = zd_powmod(a, e, n)
        if x == 1:
            continue
        ok = False
        for i in range(m):
            if x == nm1:
                ok = True
                break
            x = zd_mulmod(x, x, n)
        if not ok:
            return False
    return True


def fools_all_bases(uint64_t n, long z):
    """True iff every unit a in [1, n-1] passes the z-deep test (n odd >= 3)."""
    cdef uint64_t d = n - 1
    cdef long r = 0, m
    cdef bint res
    while d % 2 == 0:
        d //= 2
        r += 1
    m = z if z < r else r
    with nogil:
        res = _fools_all(n, d << (r - m), m)
    return res


def sieve_segment(uint64_t lo, uint64_t hi, const uint32_t[::1] primes):
    """Carmichael numbers in [lo, hi).

    For each small prime p (p*p <= hi - 1) the odd multiples of p bump a
    per-slot total; the sparser progression n == p mod p(p-1), the only
    multiples compatible with Korselt's criterion, bumps a per-slot good
    count and multiplies p into the slot's product; multiples of p*p are
    marked non-squarefree. A slot survives when good == total; the
    cofactor n / product is then 1 or a single large prime.
    """
    cdef uint64_t first = lo | 1
    if first >= hi:
        return []
    cdef uint64_t size = (hi - first + 1) // 2
    cdef uint8_t *total = <uint8_t *> calloc(size, 1)
    cdef uint8_t *good = <uint8_t *> calloc(size, 1)
    cdef uint8_t *bad = <uint8_t *> calloc(size, 1)
    cdef uint64_t *prod = <uint64_t *> malloc(size * sizeof(uint64_t))
    if not total or not good or not bad or not prod:
        free(total); free(good); free(bad); free(prod)
        raise MemoryError()
    cdef uint64_t j, p, s, step, mod, v, c, q
    cdef Py_ssize_t k, np_ = primes.shape[0]
    cdef int cnt
    out = []
    try:
        with nogil:
            for j in range(size):
                prod[j] = 1
            for k in range(np_):
                p = primes[k]
                if p * p > hi - 1:
                    break
                # odd multiples of p
                s = (first + p - 1) // p * p
                if s % 2 == 0:
                    s += p
                j = (s - first) // 2
                while j < size:
                    total[j] += 1
                    j += p
                # n == p mod p(p-1)
                mod = p * (p - 1)
                if first <= p:
                    s = p
                else:
                    s = p + (first - p + mod - 1) // mod * mod
                j = (s - first) // 2
                step = mod // 2
                while j < size:
                    good[j] += 1
                    prod[j] *= p
                    j += step
                # odd multiples of p*p
                q = p * p
                s = (first + q - 1) // q * q
                if s % 2 == 0:
                    s += q
                j = (s - first) // 2
                while j < size:
                    bad[j] = 1
                    j += q
        for j in range(size):
            if bad[j] or good[j] != total[j]:
                continue
            v = first + 2 * j
            cnt = good[j]
            c = v // prod[j]
            if c > 1:
                if (v - 1) % (c - 1) != 0:
                    continue
                cnt += 1
            if cnt >= 3:
                out.append(v)
    finally:
        free(total); free(good); free(bad); free(prod)
    return out


def fermat_progression(uint64_t pi, uint64_t start, uint64_t step, uint64_t lim):
    """Values m = start, start+step, ... <= lim with 2^(m*pi - 1) == 1 mod m*pi.

    Even products are skipped. Requires lim * pi < 2**63.
    """
    out = []
    if pi % 2 == 0:
        return out
    if step % 2 == 0 and start % 2 == 0:
        return out
    if lim > 0 and pi > ((<uint64_t> 1) << 63) // lim:
        raise OverflowError("lim * pi must stay below 2**63")
    cdef uint64_t m = start, n
    while m <= lim:
        if m & 1:
            n = m * pi
            if n > 2 and zd_fermat2(n):
                out.append(m)
        m += step
    return out
