"""Exact integer and rational primitives.

Everything here is a pure function of its arguments. Integers are Python
ints; operations that promise 64-bit support reject larger inputs with
:class:`~zdeep.errors.CapacityError` rather than silently slowing down.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterator

from .errors import CapacityError, DomainError

#: Exact rationals are :class:`fractions.Fraction`, which always stores
#: numerator/denominator in lowest terms with a positive denominator.
ExactRational = Fraction

U64_LIMIT = 1 << 64
TRIAL_LIMIT = 100_000

# Sinclair's seven bases; a strong-probable-prime to all of them below 2**64
# is prime.
_SPRP_BASES_64 = (2, 325, 9375, 28178, 450775, 9780504, 1795265022)


def _small_primes(limit):
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytes(len(range(p * p, limit + 1, p)))
    return [i for i, flag in enumerate(sieve) if flag]


SMALL_PRIMES = tuple(_small_primes(TRIAL_LIMIT))


def mod_pow(base: int, exponent: int, modulus: int) -> int:
    """Return ``base**exponent mod modulus`` by repeated squaring."""
    if modulus < 2:
        raise DomainError(f"modulus must be >= 2, got {modulus}")
    if exponent < 0:
        raise DomainError("exponent must be non-negative")
    return pow(base, exponent, modulus)


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a | n) for odd positive n, via binary reciprocity."""
    if n <= 0 or n % 2 == 0:
        raise DomainError(f"Jacobi symbol needs odd positive n, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def nu_p(m: int, p: int) -> int:
    """p-adic valuation of a positive integer."""
    if m == 0:
        raise DomainError("valuation of 0 is infinite")
    if m < 0:
        m = -m
    if p == 2:
        return (m & -m).bit_length() - 1
    e = 0
    while m % p == 0:
        m //= p
        e += 1
    return e


def nu2(m: int) -> int:
    return nu_p(m, 2)


def binomial(n: int, k: int) -> int:
    """n choose k; zero when k > n."""
    if k < 0 or n < 0:
        return 0
    return math.comb(n, k)


def is_prime(n: int) -> bool:
    """Deterministic primality for 0 <= n < 2**64."""
    if n < 2:
        return False
    if n >= U64_LIMIT:
        raise CapacityError(f"{n} exceeds the 64-bit range")
    for p in SMALL_PRIMES[:25]:
        if n % p == 0:
            return n == p
    if n < 10_000:
        return True
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SPRP_BASES_64:
        a %= n
        if a == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Factorization:
    """Prime factorization as ascending ``((prime, exponent), ...)`` pairs.

    The empty factorization stands for 1.
    """

    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prev = 1
        for p, e in self.factors:
            if p <= prev or e < 1:
                raise DomainError(f"malformed factorization {self.factors!r}")
            prev = p

    @classmethod
    def from_primes(cls, primes) -> "Factorization":
        counts: dict[int, int] = {}
        for p in primes:
            counts[p] = counts.get(p, 0) + 1
        return cls(tuple(sorted(counts.items())))

    @property
    def n(self) -> int:
        return math.prod(p**e for p, e in self.factors)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    @property
    def num_prime_factors(self) -> int:
        """Number of distinct primes."""
        return len(self.factors)

    @property
    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factors)

    @property
    def is_prime(self) -> bool:
        return len(self.factors) == 1 and self.factors[0][1] == 1

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)


def _pollard_brent(n: int, rng: random.Random) -> int:
    """Return a non-trivial factor of the odd composite n."""
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _split(n: int, out: list[int], rng: random.Random) -> None:
    if is_prime(n):
        out.append(n)
        return
    r = math.isqrt(n)
    if r * r == n:
        _split(r, out, rng)
        _split(r, out, rng)
        return
    d = _pollard_brent(n, rng)
    _split(d, out, rng)
    _split(n // d, out, rng)


def factorize(n: int) -> Factorization:
    """Complete factorization of 2 <= n < 2**64.

    Trial division by primes up to ``TRIAL_LIMIT`` (stopping early once the
    cofactor is certified prime), then Brent's variant of Pollard rho with
    deterministic primality checks on every cofactor.
    """
    if n < 2:
        raise DomainError(f"factorize needs n >= 2, got {n}")
    if n >= U64_LIMIT:
        raise CapacityError(f"{n} exceeds the 64-bit range")
    found: list[int] = []
    m = n
    for i, p in enumerate(SMALL_PRIMES):
        if p * p > m:
            break
        if m % p == 0:
            m //= p
            found.append(p)
            while m % p == 0:
                m //= p
                found.append(p)
        # rho beats the remaining trial divisions once small factors are gone
        if i == 168 and m > 1 and is_prime(m):
            break
    if m > 1:
        # fixed seed keeps factorize a pure function
        _split(m, found, random.Random(m))
    return Factorization.from_primes(found)


def carmichael_lambda(f: Factorization) -> int:
    """Carmichael's function: exponent of the unit group mod n."""
    parts = []
    for p, e in f:
        if p == 2:
            parts.append(1 if e == 1 else 2 if e == 2 else 1 << (e - 2))
        else:
            parts.append(p ** (e - 1) * (p - 1))
    return reduce(math.lcm, parts, 1)


def f_of_k(f: Factorization) -> int:
    """lcm of p - 1 over the primes p dividing k (1 for k = 1)."""
    return reduce(math.lcm, (p - 1 for p in f.primes), 1)


def as_factorization(value) -> Factorization:
    if isinstance(value, Factorization):
        return value
    return factorize(int(value))
