"""Frozen reference values and independent oracles shared by the tests."""

from fractions import Fraction

# cumulative depth counts for the first 10000 Carmichael numbers:
# TABLE1[z] = (r=3, r=4, r=5, r=6, r=7, r=8, All); blank cells are 0
TABLE1 = [
    (1166, 2390, 3807, 2233, 388, 16, 10000),
    (498, 1244, 1834, 1090, 204, 8, 4878),
    (239, 586, 916, 553, 99, 6, 2399),
    (110, 297, 462, 298, 48, 3, 1218),
    (52, 139, 232, 142, 23, 1, 589),
    (26, 76, 108, 75, 13, 1, 299),
    (12, 39, 49, 40, 6, 0, 146),
    (10, 20, 21, 21, 0, 0, 72),
    (2, 12, 10, 11, 0, 0, 35),
    (0, 8, 2, 5, 0, 0, 15),
    (0, 4, 1, 3, 0, 0, 8),
    (0, 3, 1, 2, 0, 0, 6),
    (0, 2, 0, 2, 0, 0, 4),
    (0, 2, 0, 1, 0, 0, 3),
    (0, 0, 0, 1, 0, 0, 1),
]
TABLE1_COLUMNS = (3, 4, 5, 6, 7, 8)
TENTH_THOUSAND = 1713045574801

KORSELT_PROBS = [
    Fraction(1), Fraction(1, 3), Fraction(3, 7), Fraction(9, 35), Fraction(167, 651),
    Fraction(43, 217), Fraction(725, 3937), Fraction(95339, 602361),
    Fraction(24834279, 171003595), Fraction(49160655, 376207909),
]

POISSON = dict(lam=3.59973, partial_mean=3.14719, tail_prob=0.697205,
               prediction=4.5140, observed=4.8335)

# Carmichael counts up to powers of ten (independently known values)
COUNTS_BELOW = {10**3: 1, 10**4: 7, 10**5: 16, 10**6: 43, 10**7: 105, 10**8: 255}


def spf_table(limit):
    """Smallest prime factor for 0..limit, plain Python sieve."""
    spf = list(range(limit + 1))
    i = 2
    while i * i <= limit:
        if spf[i] == i:
            for j in range(i * i, limit + 1, i):
                if spf[j] == j:
                    spf[j] = i
        i += 1
    return spf


def korselt_scan(limit):
    """Carmichael numbers <= limit by factoring every odd n with an SPF table."""
    spf = spf_table(limit)
    out = []
    for n in range(3, limit + 1, 2):
        if spf[n] == n:
            continue
        m, ps, ok = n, [], True
        while m > 1:
            p = spf[m]
            m //= p
            if m % p == 0:
                ok = False
                break
            ps.append(p)
        if ok and all((n - 1) % (p - 1) == 0 for p in ps):
            out.append(n)
    return out
