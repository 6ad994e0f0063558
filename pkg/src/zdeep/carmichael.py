"""Korselt and z-Korselt criteria, exact depth, enumeration and depth tables.

A z-deep Carmichael number is a composite n fooling the z-deep Miller-Rabin
test for every unit base. These are exactly the odd squarefree n with
``(p - 1) | (n - 1) / 2**z`` for every prime p | n. The exact depth of a
Carmichael number is ``nu2(n - 1) - max nu2(p - 1)``, and n is z-deep
precisely when its exact depth is at least z.

Two enumerators are provided:

* :func:`enumerate_carmichaels`, a segmented sieve, memory bounded by the
  segment size and capped by ``capacity`` (10**10 by default);
* :func:`search_carmichaels`, a top-down search over the largest prime
  factors that reaches ~10**12 in minutes and is used to build the bundled
  b-file of the first 10000 Carmichael numbers.
"""

from __future__ import annotations

import bisect
import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Callable, Iterable, Iterator, TextIO

import numpy as np

from ._accel import kernels
from .arith import Factorization, as_factorization, f_of_k, factorize, nu2
from .errors import CapacityError, DomainError, ParseError, ValidationError

DEFAULT_CAPACITY = 10**10
FOOLS_CAPACITY = 10**6
SEGMENT_SIZE = 1 << 21
BFILE_NAME = "carmichael_b002997_10000.txt"

CSV_COLUMNS = (
    "n",
    "factors",
    "num_prime_factors",
    "nu2_n_minus_1",
    "max_nu2_p_minus_1",
    "exact_depth",
)


def _composite_factorization(value) -> Factorization:
    f = as_factorization(value)
    if len(f) == 0 or f.is_prime:
        raise DomainError(f"{f.n} is not composite")
    return f


def is_carmichael(value) -> bool:
    """Korselt's criterion on a composite (a Factorization or an int)."""
    f = _composite_factorization(value)
    n = f.n
    if n % 2 == 0 or not f.is_squarefree:
        return False
    return all((n - 1) % (p - 1) == 0 for p in f.primes)


def z_korselt_check(value, z: int) -> bool:
    """Odd, squarefree, and (p - 1) | (n - 1) / 2**z for all p | n.

    False (not an error) when 2**z does not divide n - 1.
    """
    if z < 0:
        raise DomainError("depth z must be non-negative")
    f = _composite_factorization(value)
    n = f.n
    if n % 2 == 0 or not f.is_squarefree:
        return False
    q, rest = divmod(n - 1, 1 << z)
    if rest:
        return False
    return all(q % (p - 1) == 0 for p in f.primes)


def exact_depth(value) -> int:
    """nu2(n - 1) - max nu2(p - 1) for a Carmichael number."""
    f = _composite_factorization(value)
    if not is_carmichael(f):
        raise DomainError(f"{f.n} is not a Carmichael number")
    return nu2(f.n - 1) - max(nu2(p - 1) for p in f.primes)


def fools_all_bases(n: int, z: int, capacity: int = FOOLS_CAPACITY) -> bool:
    """Brute force: does every unit a in [1, n-1] pass the z-deep test?"""
    if n > capacity:
        raise CapacityError(f"{n} exceeds the brute-force bound {capacity}")
    if n < 3 or n % 2 == 0:
        raise DomainError(f"need odd n >= 3, got {n}")
    if z < 0:
        raise DomainError("depth z must be non-negative")
    return bool(kernels.fools_all_bases(n, z))


@dataclass(frozen=True)
class DepthRecord:
    n: int
    factors: Factorization
    num_prime_factors: int
    nu2_n_minus_1: int
    max_nu2_p_minus_1: int
    exact_depth: int

    @classmethod
    def from_factorization(cls, f: Factorization) -> "DepthRecord":
        if not is_carmichael(f):
            raise ValidationError(f"{f.n} is not a Carmichael number")
        a = nu2(f.n - 1)
        b = max(nu2(p - 1) for p in f.primes)
        return cls(f.n, f, len(f), a, b, a - b)

    @classmethod
    def from_n(cls, n: int) -> "DepthRecord":
        if n < 4:
            raise ValidationError(f"{n} is not a Carmichael number")
        f = factorize(n)
        if f.is_prime:
            raise ValidationError(f"{n} is prime, not a Carmichael number")
        return cls.from_factorization(f)

    @property
    def primes(self) -> tuple[int, ...]:
        return self.factors.primes

    def is_z_deep(self, z: int) -> bool:
        return self.exact_depth >= z


def min_exponent_multiplicity_even(record: DepthRecord) -> bool:
    """Unless all nu2(p - 1) agree, the smallest one occurs an even number of times."""
    nus = [nu2(p - 1) for p in record.primes]
    mu = min(nus)
    s = nus.count(mu)
    return s == len(nus) or s % 2 == 0


def three_mod_four_count_even(record: DepthRecord) -> bool:
    """Even number of prime factors that are 3 mod 4.

    Holds exactly when n = 1 (mod 4); see :func:`three_mod_four_law`.
    """
    return sum(1 for p in record.primes if p % 4 == 3) % 2 == 0


def three_mod_four_law(record: DepthRecord) -> bool:
    """The mod-4 constraint on a Carmichael number's primes.

    n = 1 (mod 4): an even number of primes are 3 mod 4. n = 3 (mod 4):
    nu2(n - 1) = 1 forces nu2(p - 1) = 1, so every prime is 3 mod 4 (and
    there is an odd number of them, e.g. 8911 = 7 * 19 * 67).
    """
    threes = sum(1 for p in record.primes if p % 4 == 3)
    if record.n % 4 == 1:
        return threes % 2 == 0
    return threes == record.num_prime_factors and threes % 2 == 1


# -- enumeration ---------------------------------------------------------


@lru_cache(maxsize=8)
def odd_primes_upto(limit: int) -> np.ndarray:
    """Odd primes <= limit as a uint32 array."""
    if limit < 3:
        return np.zeros(0, dtype=np.uint32)
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    sieve[4::2] = False
    for p in range(3, math.isqrt(limit) + 1, 2):
        if sieve[p]:
            sieve[p * p :: 2 * p] = False
    primes = np.nonzero(sieve)[0][1:].astype(np.uint32)
    primes.setflags(write=False)
    return primes


def _segment_job(args):
    lo, hi, plimit = args
    return kernels.sieve_segment(lo, hi, odd_primes_upto(plimit))


def iter_carmichaels(
    limit: int,
    *,
    segment_size: int = SEGMENT_SIZE,
    workers: int = 1,
    capacity: int = DEFAULT_CAPACITY,
) -> Iterator[int]:
    """Carmichael numbers <= limit in ascending order, by segmented sieve."""
    if limit > capacity:
        raise CapacityError(f"limit {limit} exceeds enumeration capacity {capacity}")
    if segment_size < 2:
        raise DomainError("segment_size must be at least 2")
    if limit < 561:
        return
    plimit = math.isqrt(limit)
    jobs = [
        (lo, min(lo + segment_size, limit + 1), plimit)
        for lo in range(0, limit + 1, segment_size)
    ]
    if workers <= 1:
        for job in jobs:
            yield from _segment_job(job)
        return
    # map() yields in submission order, so output stays ascending
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for found in pool.map(_segment_job, jobs):
            yield from found


def enumerate_carmichaels(
    limit: int,
    emit: Callable[[DepthRecord], object] | None = None,
    **kwargs,
) -> int:
    """Emit one DepthRecord per Carmichael number <= limit, ascending; return the count."""
    count = 0
    for n in iter_carmichaels(limit, **kwargs):
        if emit is not None:
            emit(DepthRecord.from_n(n))
        count += 1
    return count


def search_carmichaels(limit: int) -> list[int]:
    """All Carmichael numbers <= limit, by top-down search on prime factors.

    A node fixes the largest primes P of n (product ``pi``, with
    ``lam = lcm(p - 1)``); the remaining cofactor m has only smaller primes
    and must satisfy ``m * pi == 1 (mod lam)``. The node either scans that
    progression (Fermat base-2 filter in the kernel, then a full check) or
    branches on the next smaller prime, whichever looks cheaper. The
    cofactor is also capped by the product of the primes still available,
    which keeps nodes with a small smallest prime cheap.
    """
    if limit >= 1 << 62:
        raise CapacityError("search is limited to bounds below 2**62")
    if limit < 561:
        return []
    primes = [int(p) for p in odd_primes_upto(math.isqrt(limit) + 1)]
    prefix = [1]
    for p in primes:
        prefix.append(min(prefix[-1] * p, limit + 1))
    found: list[int] = []

    def accept(m: int, pi: int, chosen: list[int], q: int) -> None:
        n = m * pi
        if m > 1:
            if n % 3 and pow(3, n - 1, n) != 1:
                return
            fm = factorize(m)
            if not fm.is_squarefree or fm.primes[-1] >= q:
                return
            ps = list(fm.primes) + chosen
        else:
            ps = chosen
        if len(ps) >= 3 and all((n - 1) % (p - 1) == 0 for p in ps):
            found.append(n)

    def node(pi: int, lam: int, qi: int, chosen: list[int]) -> None:
        lim = min(limit // pi, prefix[qi])
        branches = min(qi, bisect.bisect_right(primes, lim))
        scan = lim // lam + 1
        if scan <= 4 * branches or branches == 0:
            start = pow(pi, -1, lam) if lam > 1 else 1
            if start == 0:
                start = lam
            q = primes[qi] if qi < len(primes) else limit + 1
            for m in kernels.fermat_progression(pi, start, lam, lim):
                accept(m, pi, chosen, q)
            return
        if len(chosen) >= 3 and (pi - 1) % lam == 0:
            found.append(pi)
        for j in range(branches - 1, -1, -1):
            p = primes[j]
            # the largest prime factor P of a Carmichael n satisfies P*P < n
            if not chosen and p * p > limit:
                continue
            if lam % p == 0 or math.gcd(p - 1, pi) > 1:
                continue
            node(pi * p, math.lcm(lam, p - 1), j, chosen + [p])

    node(1, 1, len(primes), [])
    return sorted(found)


# -- OEIS b-files ----------------------------------------------------------


def _looks_carmichael(n: int) -> bool:
    if n < 561 or n % 2 == 0 or pow(2, n - 1, n) != 1:
        return False
    f = factorize(n)
    return not f.is_prime and is_carmichael(f)


def ingest_oeis_bfile(stream: TextIO, validate: bool = True) -> list[int]:
    """Sequence values of a Carmichael b-file, each checked with Korselt's criterion."""
    values: list[int] = []
    last = None
    for lineno, line in enumerate(stream, 1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        parts = text.split()
        if len(parts) != 2:
            raise ParseError(f"expected 'index value', got {text!r}", lineno)
        try:
            index, value = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer field in {text!r}", lineno) from None
        if last is not None and index != last + 1:
            raise ParseError(f"index {index} does not follow {last}", lineno)
        last = index
        if validate and not _looks_carmichael(value):
            raise ValidationError(f"{value} is not a Carmichael number", lineno)
        values.append(value)
    return values


def write_bfile(values: Iterable[int], stream: TextIO, offset: int = 1, header: str = "") -> None:
    for line in header.splitlines():
        stream.write(f"# {line}\n" if line else "#\n")
    for i, v in enumerate(values, offset):
        stream.write(f"{i} {v}\n")


def bundled_bfile() -> TextIO:
    """Open the bundled b-file of the first 10000 Carmichael numbers."""
    path = resources.files("zdeep") / "data" / BFILE_NAME
    return io.StringIO(path.read_text())


def records_from_values(values: Iterable[int]) -> list[DepthRecord]:
    return [DepthRecord.from_n(v) for v in values]


# -- CSV -------------------------------------------------------------------


def write_records_csv(records: Iterable[DepthRecord], stream: TextIO) -> None:
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for rec in records:
        w.writerow(
            [
                rec.n,
                ";".join(map(str, rec.primes)),
                rec.num_prime_factors,
                rec.nu2_n_minus_1,
                rec.max_nu2_p_minus_1,
                rec.exact_depth,
            ]
        )


def read_records_csv(stream: TextIO) -> list[DepthRecord]:
    reader = csv.reader(stream)
    header = next(reader, None)
    if header is None:
        return []
    if tuple(header) != CSV_COLUMNS:
        raise ParseError(f"unexpected header {header!r}", 1)
    out = []
    for lineno, row in enumerate(reader, 2):
        try:
            n = int(row[0])
            f = Factorization.from_primes([int(p) for p in row[1].split(";")])
        except (ValueError, IndexError) as exc:
            raise ParseError(str(exc), lineno) from None
        if len(f) < 2:
            raise ValidationError(f"row for {n} is not a composite factorization", lineno)
        try:
            rec = DepthRecord.from_factorization(f)
        except ValidationError as exc:
            raise ValidationError(str(exc), lineno) from None
        if rec.n != n or tuple(int(x) for x in row[2:]) != (
            rec.num_prime_factors,
            rec.nu2_n_minus_1,
            rec.max_nu2_p_minus_1,
            rec.exact_depth,
        ):
            raise ValidationError(f"row for {n} is inconsistent", lineno)
        out.append(rec)
    return out


# -- depth tables ------------------------------------------------------------


@dataclass
class DepthTable:
    """Cumulative counts: ``counts[z, r]`` = #records with r primes and depth >= z."""

    counts: dict[tuple[int, int], int] = field(default_factory=dict)
    totals: dict[int, int] = field(default_factory=dict)
    columns: tuple[int, ...] = ()
    max_z: int = -1

    def cell(self, z: int, r: int) -> int:
        return self.counts.get((z, r), 0)

    def row(self, z: int) -> list[int]:
        return [self.cell(z, r) for r in self.columns]

    def render(self) -> str:
        """Rows z, columns r, then All. A column is blanked after its first zero."""
        head = ["# Prime factors:"] + [str(r) for r in self.columns] + ["All"]
        rows = [head]
        for z in range(self.max_z + 1):
            line = [f"z={z}" if z == 0 else str(z)]
            for r in self.columns:
                shown = z == 0 or self.cell(z - 1, r) > 0
                line.append(str(self.cell(z, r)) if shown else "")
            line.append(str(self.totals.get(z, 0)))
            rows.append(line)
        widths = [max(len(row[i]) for row in rows) for i in range(len(head))]
        return "\n".join(
            "  ".join(cell.rjust(w) for cell, w in zip(row, widths)).rstrip()
            for row in rows
        ) + "\n"


def build_depth_table(records: Iterable[DepthRecord], max_z: int | None = None) -> DepthTable:
    records = list(records)
    if not records:
        return DepthTable()
    top = max(rec.exact_depth for rec in records)
    if max_z is None:
        max_z = top
    columns = tuple(sorted({rec.num_prime_factors for rec in records}))
    exact: dict[tuple[int, int], int] = {}
    for rec in records:
        key = (min(rec.exact_depth, max_z), rec.num_prime_factors)
        exact[key] = exact.get(key, 0) + 1
    table = DepthTable(columns=columns, max_z=max_z)
    for r in columns:
        running = 0
        for z in range(max_z, -1, -1):
            running += exact.get((z, r), 0)
            table.counts[z, r] = running
    for z in range(max_z + 1):
        table.totals[z] = sum(table.counts[z, r] for r in columns)
    return table


def ratio_report(table: DepthTable) -> list[tuple[int, float, float]]:
    """(z, C_z / C, 2**-z) for every row."""
    total = table.totals.get(0, 0)
    if not total:
        return []
    return [(z, table.totals[z] / total, 2.0**-z) for z in range(table.max_z + 1)]


# -- divisor bound -------------------------------------------------------------


@dataclass(frozen=True)
class BoundAudit:
    k: int
    z: int
    observed: int
    bound: Fraction

    @property
    def violated(self) -> bool:
        return self.observed > self.bound


def divisor_bound_audit(records: Iterable[DepthRecord], x: int, k: int, z: int) -> BoundAudit:
    """Count z-deep Carmichaels n <= x with k | n against 1 + x / (2**z k f(k))."""
    if k < 2:
        raise DomainError("k must be at least 2")
    observed = sum(1 for rec in records if rec.n <= x and rec.n % k == 0 and rec.exact_depth >= z)
    bound = 1 + Fraction(x, (1 << z) * k * f_of_k(factorize(k)))
    return BoundAudit(k, z, observed, bound)


def audit_bounds(records: Iterable[DepthRecord], x: int, k_max: int, z_max: int) -> list[BoundAudit]:
    """Audit every k in [2, k_max] and z in [0, z_max]."""
    records = [rec for rec in records if rec.n <= x]
    out = []
    for k in range(2, k_max + 1):
        multiples = [rec for rec in records if rec.n % k == 0]
        fk = f_of_k(factorize(k))
        for z in range(z_max + 1):
            observed = sum(1 for rec in multiples if rec.exact_depth >= z)
            out.append(BoundAudit(k, z, observed, 1 + Fraction(x, (1 << z) * k * fk)))
    return out
