"""The 2-adic local Korselt model.

Primes p_1, ..., p_r are modelled as independent uniformly random odd 2-adic
integers. Their bits are revealed lazily: each sample owns a random stream
and only draws more bits when a decision needs them, so a revealed prefix
never changes. The product is *2-Korselt* when max nu2(p_i - 1) <=
nu2(p_1 ... p_r - 1), and its *exact depth* is the difference of the two.

Exact probabilities are :class:`fractions.Fraction` values.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .arith import binomial
from .errors import CapacityError, DomainError, ZDeepError

DEFAULT_PRECISION = 40
MAX_PRECISION = 4096
_WORD = 64


class TwoAdicSample:
    """A random odd 2-adic integer ``1 + 2R`` with R's bits drawn on demand.

    The stream for sample ``i`` of tuple ``t`` under master seed ``s`` is
    ``PCG64(SeedSequence(s, spawn_key=(t, i)))``, consumed one 64-bit word
    at a time (little-endian). Results therefore depend only on
    ``(s, t, i)``, never on how work is partitioned.
    """

    __slots__ = ("_bitgen", "_r", "_nwords", "precision")

    def __init__(self, seed: int = 0, tuple_index: int = 0, sample_index: int = 0,
                 precision: int = DEFAULT_PRECISION):
        if precision < 1:
            raise DomainError("precision must be positive")
        ss = np.random.SeedSequence(seed, spawn_key=(tuple_index, sample_index))
        self._bitgen = np.random.PCG64(ss)
        self._r = 0
        self._nwords = 0
        self.precision = 1
        self.extend(precision)

    def extend(self, precision: int) -> "TwoAdicSample":
        """Reveal bits up to ``precision`` (no-op if already known)."""
        if precision <= self.precision:
            return self
        if precision > MAX_PRECISION:
            raise CapacityError(f"2-adic precision ceiling {MAX_PRECISION} bits reached")
        need = -(-(precision - 1) // _WORD)
        while self._nwords < need:
            self._r |= int(self._bitgen.random_raw()) << (_WORD * self._nwords)
            self._nwords += 1
        self.precision = precision
        return self

    @property
    def low_bits(self) -> int:
        """The revealed value, ``p mod 2**precision``."""
        return 1 + 2 * (self._r & ((1 << (self.precision - 1)) - 1))

    def mod_pow2(self, k: int) -> int:
        """p mod 2**k, revealing bits if needed."""
        self.extend(k)
        return 1 + 2 * (self._r & ((1 << (k - 1)) - 1)) if k > 0 else 0

    def nu(self) -> int:
        """nu2(p - 1), revealing bits until the first set bit above bit 0."""
        while True:
            known = self._r & ((1 << (self.precision - 1)) - 1)
            if known:
                return (known & -known).bit_length()
            self.extend(min(self.precision + _WORD, MAX_PRECISION + 1))

    def __repr__(self):
        return f"TwoAdicSample(...{self.low_bits:b}, precision={self.precision})"


def sample_tuple(r: int, initial_precision: int = DEFAULT_PRECISION, *,
                 seed: int = 0, index: int = 0) -> list[TwoAdicSample]:
    """The ``index``-th random r-tuple under ``seed``."""
    if r < 1:
        raise DomainError("tuple length r must be at least 1")
    return [TwoAdicSample(seed, index, i, initial_precision) for i in range(r)]


@dataclass(frozen=True)
class ExponentVector:
    nus: tuple[int, ...]
    mu: int
    nu: int
    s: int

    @classmethod
    def of(cls, nus: Sequence[int]) -> "ExponentVector":
        nus = tuple(nus)
        mu = min(nus)
        return cls(nus, mu, max(nus), nus.count(mu))

    @property
    def all_equal(self) -> bool:
        return self.mu == self.nu


def exponent_vector(samples: Sequence[TwoAdicSample]) -> ExponentVector:
    return ExponentVector.of(p.nu() for p in samples)


def _product_mod(samples, k):
    mask = (1 << k) - 1
    out = 1
    for p in samples:
        out = out * p.mod_pow2(k) & mask
    return out


def _nu2_product_minus_one(samples, floor):
    """nu2(prod p_i - 1), searching upward from ``floor`` bits."""
    k = floor + _WORD
    while True:
        if k > MAX_PRECISION:
            raise CapacityError(f"2-adic precision ceiling {MAX_PRECISION} bits reached")
        diff = _product_mod(samples, k) - 1
        if diff:
            return (diff & -diff).bit_length() - 1
        k += _WORD


def tuple_is_2korselt(samples: Sequence[TwoAdicSample]) -> bool:
    nu = exponent_vector(samples).nu
    return _product_mod(samples, nu) == 1


def tuple_exact_depth(samples: Sequence[TwoAdicSample]) -> int:
    ev = exponent_vector(samples)
    if _product_mod(samples, ev.nu) != 1:
        raise DomainError("tuple is not 2-Korselt")
    return _nu2_product_minus_one(samples, ev.nu) - ev.nu


@dataclass
class TupleStats:
    """Tallies for N sampled r-tuples.

    ``depth_ge_counts[z]`` counts 2-Korselt tuples of exact depth >= z, so
    index 0 equals ``korselt_count``. The ``unequal_*`` fields restrict to
    tuples whose exponents are not all equal.
    """

    r: int
    samples: int
    seed: int
    max_z: int
    korselt_count: int = 0
    equal_exponent_count: int = 0
    depth_ge_counts: list[int] = field(default_factory=list)
    unequal_korselt_count: int = 0
    unequal_depth_ge_counts: list[int] = field(default_factory=list)

    def __post_init__(self):
        if not self.depth_ge_counts:
            self.depth_ge_counts = [0] * (self.max_z + 1)
        if not self.unequal_depth_ge_counts:
            self.unequal_depth_ge_counts = [0] * (self.max_z + 1)

    def merge(self, other: "TupleStats") -> "TupleStats":
        self.samples += other.samples
        self.korselt_count += other.korselt_count
        self.equal_exponent_count += other.equal_exponent_count
        self.unequal_korselt_count += other.unequal_korselt_count
        for z in range(self.max_z + 1):
            self.depth_ge_counts[z] += other.depth_ge_counts[z]
            self.unequal_depth_ge_counts[z] += other.unequal_depth_ge_counts[z]
        return self


class ParityViolation(ZDeepError, AssertionError):
    """A 2-Korselt tuple whose minimum exponent occurs an odd number of times."""


def _tally(r, seed, max_z, start, stop, precision):
    stats = TupleStats(r, 0, seed, max_z)
    for t in range(start, stop):
        tup = sample_tuple(r, precision, seed=seed, index=t)
        ev = exponent_vector(tup)
        stats.samples += 1
        if ev.all_equal:
            stats.equal_exponent_count += 1
        if _product_mod(tup, ev.nu) != 1:
            continue
        if not ev.all_equal and ev.s % 2:
            raise ParityViolation(f"tuple {t}: exponents {ev.nus} are 2-Korselt with odd s")
        stats.korselt_count += 1
        depth = _nu2_product_minus_one(tup, ev.nu) - ev.nu
        top = min(depth, max_z)
        for z in range(top + 1):
            stats.depth_ge_counts[z] += 1
        if not ev.all_equal:
            stats.unequal_korselt_count += 1
            for z in range(top + 1):
                stats.unequal_depth_ge_counts[z] += 1
    return stats


def _tally_job(args):
    return _tally(*args)


def monte_carlo(r: int, n_samples: int, seed: int = 0, max_z: int = 4, *,
                workers: int = 1, initial_precision: int = DEFAULT_PRECISION) -> TupleStats:
    """Sample ``n_samples`` r-tuples and tally 2-Korselt and depth statistics.

    Tuple t always uses the substreams keyed by (seed, t), so the result is
    identical for any ``workers``.
    """
    if r < 1 or n_samples < 1:
        raise DomainError("need r >= 1 and n_samples >= 1")
    if max_z < 0:
        raise DomainError("max_z must be non-negative")
    if workers <= 1:
        return _tally(r, seed, max_z, 0, n_samples, initial_precision)
    bounds = np.linspace(0, n_samples, workers + 1).astype(int)
    jobs = [(r, seed, max_z, int(a), int(b), initial_precision)
            for a, b in zip(bounds[:-1], bounds[1:]) if b > a]
    total = TupleStats(r, 0, seed, max_z)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_tally_job, jobs):
            total.merge(part)
    return total


# -- exact probabilities --------------------------------------------------------


def w_of_n(n: int) -> Fraction:
    """E[2^(1-Z)] for Z the max of n iid geometric(1/2) variables.

    Evaluated as sum_{j=0..n} (-1)^j C(n, j) / (2^(j+1) - 1).
    """
    if n < 1:
        raise DomainError("W(n) needs n >= 1")
    return sum(
        (Fraction((-1) ** j * binomial(n, j), (1 << (j + 1)) - 1) for j in range(n + 1)),
        Fraction(0),
    )


def exact_korselt_prob(r: int) -> Fraction:
    """Probability that a product of r random odd 2-adic integers is 2-Korselt."""
    if r < 1:
        raise DomainError("r must be at least 1")
    acc = Fraction(1)
    for s in range(2, r, 2):
        acc += binomial(r, s) * w_of_n(r - s)
    return acc / ((1 << r) - 1)


def equal_exponent_prob(r: int) -> Fraction:
    """Probability that all r exponents nu2(p_i - 1) coincide: 1 / (2^r - 1)."""
    if r < 1:
        raise DomainError("r must be at least 1")
    return Fraction(1, (1 << r) - 1)


class DepthCase(enum.Enum):
    ODD_EQUAL = "odd-equal"
    EVEN_EQUAL = "even-equal"
    UNEQUAL = "unequal"


def conditional_depth_prob(r: int, z: int, case: DepthCase | str) -> Fraction:
    """Pr[depth >= z | 2-Korselt, case] for z >= 1.

    Odd r with equal exponents always has exact depth 0, so that case is 0.
    """
    if z < 1:
        raise DomainError("z must be at least 1")
    case = DepthCase(case)
    if case is DepthCase.ODD_EQUAL:
        if r % 2 == 0:
            raise DomainError("odd-equal case needs odd r")
        return Fraction(0)
    if case is DepthCase.EVEN_EQUAL:
        if r % 2:
            raise DomainError("even-equal case needs even r")
        return Fraction(1, 1 << (z - 1))
    return Fraction(1, 1 << z)


def depth_prob_given_korselt(r: int, z: int) -> Fraction:
    """Pr[depth >= z | 2-Korselt], mixing the equal and unequal cases."""
    if z == 0:
        return Fraction(1)
    k = exact_korselt_prob(r)
    eq = equal_exponent_prob(r)
    eq_case = DepthCase.ODD_EQUAL if r % 2 else DepthCase.EVEN_EQUAL
    unequal = k - eq
    num = eq * conditional_depth_prob(r, z, eq_case)
    if unequal:
        num += unequal * conditional_depth_prob(r, z, DepthCase.UNEQUAL)
    return num / k


def scaled_prob(r: int) -> Fraction:
    """r * Pr[2-Korselt]; stays bounded because the probability is Theta(1/r)."""
    if r < 3:
        raise DomainError("scaled_prob needs r >= 3")
    return r * exact_korselt_prob(r)


def binomial_sigma(p: float, n: int) -> float:
    return math.sqrt(n * p * (1 - p))


# -- report ----------------------------------------------------------------------

def report_header(max_z: int) -> list[str]:
    return (["r", "N", "seed", "korselt_count", "equal_exponent_count"]
            + [f"depth_ge_{z}" for z in range(1, max_z + 1)]
            + ["exact_prob", "exact_decimal"])


def report_row(stats: TupleStats) -> list[str]:
    p = exact_korselt_prob(stats.r)
    return ([str(stats.r), str(stats.samples), str(stats.seed), str(stats.korselt_count),
             str(stats.equal_exponent_count)]
            + [str(c) for c in stats.depth_ge_counts[1:]]
            + [f"{p.numerator}/{p.denominator}", f"{float(p):.6f}"])
