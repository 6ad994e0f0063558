"""Poisson model for the number of distinct prime factors.

A random integer near n has about ``log log n + M`` distinct prime factors
(M the Mertens constant). Treating the count as Poisson(lambda) and
conditioning on the at-least-3 factors every Carmichael number has gives a
predicted mean to compare with the observed one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

MERTENS = 0.261497
SERIES_RTOL = 1e-18


@dataclass(frozen=True)
class PoissonModel:
    lam: float
    threshold: int = 0

    def __post_init__(self):
        if not (math.isfinite(self.lam) and self.lam > 0):
            raise DomainError(f"Poisson mean must be finite and positive, got {self.lam}")
        if self.threshold < 0:
            raise DomainError("threshold must be non-negative")


@dataclass(frozen=True)
class TruncatedMoments:
    partial_mean: float
    tail_prob: float
    conditional_mean: float
    head_prob: float


def erdos_kac_lambda(n: float) -> float:
    """log log n + M, natural logarithms."""
    if not n >= 16:
        raise DomainError(f"n = {n} is too small for log log n")
    return math.log(math.log(n)) + MERTENS


def _pmf_terms(lam):
    term = math.exp(-lam)
    k = 0
    while True:
        yield k, term
        k += 1
        term *= lam / k


def truncated_moments(model: PoissonModel, cutoff_scale: float = 1.0) -> TruncatedMoments:
    """E[Z; Z >= t], Pr[Z >= t] and their ratio E[Z | Z >= t].

    The tail is summed directly, past the mode, until a term drops below
    ``SERIES_RTOL * cutoff_scale`` times the running sum. The head mass
    Pr[Z < t] is also returned.
    """
    lam, t = model.lam, model.threshold
    head = 0.0
    tail = 0.0
    partial = 0.0
    tol = SERIES_RTOL * cutoff_scale
    for k, term in _pmf_terms(lam):
        if k < t:
            head += term
            continue
        tail += term
        partial += k * term
        if k > lam and term < tol * tail:
            break
    return TruncatedMoments(partial, tail, partial / tail, head)


def observed_factor_mean(table, z_row: int = 0) -> float:
    """Count-weighted mean number of prime factors in one DepthTable row."""
    weights = [(r, table.cell(z_row, r)) for r in table.columns]
    total = sum(c for _, c in weights)
    if total == 0:
        raise DomainError(f"row z={z_row} is empty")
    return sum(r * c for r, c in weights) / total
