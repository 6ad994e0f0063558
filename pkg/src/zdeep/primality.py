"""Fermat, Solovay-Strassen, Miller-Rabin and the z-deep Miller-Rabin family.

Every single-round test takes an odd ``n >= 3`` and a base ``2 <= a <= n-2``
and returns a :class:`TestOutcome`. ``COMPOSITE`` is a proof; ``PROBABLY_PRIME``
is not.

The z-deep test looks only at the last ``z + 1`` entries of the squaring
sequence ``a^d, a^(2d), ..., a^(2^r d)`` (all of them if there are fewer).
``z = 0`` is the Fermat test and ``z >= r`` is ordinary Miller-Rabin.
"""

from __future__ import annotations

import enum
import math
import random
from typing import NamedTuple

from .arith import is_prime, jacobi
from .errors import DomainError


class TestOutcome(enum.Enum):
    COMPOSITE = "composite"
    PROBABLY_PRIME = "probably-prime"

    __test__ = False  # keep pytest from collecting this enum

    @property
    def passed(self) -> bool:
        return self is TestOutcome.PROBABLY_PRIME

    @classmethod
    def of(cls, passed: bool) -> "TestOutcome":
        return cls.PROBABLY_PRIME if passed else cls.COMPOSITE


class Algorithm(str, enum.Enum):
    FERMAT = "fermat"
    SOLOVAY_STRASSEN = "ss"
    MILLER_RABIN = "mr"
    ZDEEP_MILLER_RABIN = "zmr"
    Z1_SOLOVAY = "z1ss"


class MRDecomposition(NamedTuple):
    """``n - 1 = 2**r * d`` with d odd."""

    n: int
    r: int
    d: int


def decompose(n: int) -> MRDecomposition:
    if n < 3 or n % 2 == 0:
        raise DomainError(f"need odd n >= 3, got {n}")
    d = n - 1
    r = (d & -d).bit_length() - 1
    return MRDecomposition(n, r, d >> r)


def _check_base(n: int, a: int) -> None:
    if n < 3 or n % 2 == 0:
        raise DomainError(f"need odd n >= 3, got {n}")
    if not 2 <= a <= n - 2:
        raise DomainError(f"base {a} outside [2, {n - 2}]")


def mr_sequence(dec: MRDecomposition, a: int) -> list[int]:
    """The r + 1 residues a^d, a^(2d), ..., a^(2^r d) mod n."""
    n = dec.n
    x = pow(a, dec.d, n)
    seq = [x]
    for _ in range(dec.r):
        x = x * x % n
        seq.append(x)
    return seq


def zdeep_passes(n: int, a: int, z: int, dec: MRDecomposition | None = None) -> bool:
    """Window acceptance of the z-deep test, without range checks on a.

    With m = min(z, r): accept iff a^((n-1)/2^m) == 1, or
    a^((n-1)/2^i) == -1 for some 1 <= i <= m.
    """
    if z < 0:
        raise DomainError("depth z must be non-negative")
    if dec is None:
        dec = decompose(n)
    m = min(z, dec.r)
    x = pow(a, dec.d << (dec.r - m), n)
    if x == 1:
        return True
    for _ in range(m):
        if x == n - 1:
            return True
        x = x * x % n
    return False


def fermat_test(n: int, a: int) -> TestOutcome:
    _check_base(n, a)
    return TestOutcome.of(pow(a, n - 1, n) == 1)


def solovay_strassen(n: int, a: int) -> TestOutcome:
    _check_base(n, a)
    j = jacobi(a, n)
    if j == 0:
        return TestOutcome.COMPOSITE
    return TestOutcome.of(pow(a, (n - 1) // 2, n) == j % n)


def z_deep_miller_rabin(n: int, a: int, z: int) -> TestOutcome:
    _check_base(n, a)
    return TestOutcome.of(zdeep_passes(n, a, z))


def miller_rabin(n: int, a: int) -> TestOutcome:
    _check_base(n, a)
    dec = decompose(n)
    return TestOutcome.of(zdeep_passes(n, a, dec.r, dec))


def z1_solovay_variant(n: int, a: int) -> TestOutcome:
    """Accept iff a^((n-1)/2) is +1 or -1 mod n."""
    _check_base(n, a)
    return TestOutcome.of(pow(a, (n - 1) // 2, n) in (1, n - 1))


def single_round(n: int, a: int, algo: Algorithm | str, z: int = 0) -> TestOutcome:
    algo = Algorithm(algo)
    if algo is Algorithm.FERMAT:
        return fermat_test(n, a)
    if algo is Algorithm.SOLOVAY_STRASSEN:
        return solovay_strassen(n, a)
    if algo is Algorithm.MILLER_RABIN:
        return miller_rabin(n, a)
    if algo is Algorithm.ZDEEP_MILLER_RABIN:
        return z_deep_miller_rabin(n, a, z)
    return z1_solovay_variant(n, a)


def run_test(
    n: int,
    algo: Algorithm | str = Algorithm.MILLER_RABIN,
    rounds: int = 40,
    seed: int | None = None,
    z: int = 0,
    units_only: bool = False,
) -> TestOutcome:
    """Multi-round driver.

    Bases are drawn uniformly from [2, n-2] with ``random.Random(seed)``
    (Mersenne Twister, identical across platforms). The first failing round
    returns ``COMPOSITE``. n = 3 has no valid base and is answered directly.

    With ``units_only`` a base sharing a factor with n is redrawn, so the
    test samples the unit group as in the definition of z-deep Carmichael
    numbers. Non-units otherwise fail the Fermat congruence on their own.
    """
    if n < 3 or n % 2 == 0:
        raise DomainError(f"need odd n >= 3, got {n}")
    if rounds < 1:
        raise DomainError("rounds must be positive")
    algo = Algorithm(algo)
    if n < 5:
        return TestOutcome.PROBABLY_PRIME
    rng = random.Random(seed)
    for _ in range(rounds):
        a = rng.randint(2, n - 2)
        if units_only:
            while math.gcd(a, n) != 1:
                a = rng.randint(2, n - 2)
        if not single_round(n, a, algo, z).passed:
            return TestOutcome.COMPOSITE
    return TestOutcome.PROBABLY_PRIME


def is_prime_oracle(n: int) -> bool:
    """Exact primality for 1 <= n < 2**64 (fixed-base strong-test battery)."""
    return is_prime(n)
