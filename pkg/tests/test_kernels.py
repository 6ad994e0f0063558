"""The compiled kernels and the pure-Python fallback must agree."""

import numpy as np
import pytest

from reference import korselt_scan
from zdeep import _fallback, _accel
from zdeep.carmichael import odd_primes_upto

try:
    from zdeep import _kernels
except ImportError:  # extension not built
    _kernels = None

BACKENDS = [_fallback] + ([_kernels] if _kernels is not None else [])


def test_selected_backend():
    assert _accel.BACKEND in ("cython", "python")
    assert _accel.kernels.BACKEND == _accel.BACKEND


@pytest.mark.parametrize("mod", BACKENDS, ids=lambda m: m.BACKEND)
def test_sieve_segment_matches_scan(mod):
    limit = 200_000
    primes = odd_primes_upto(int(limit**0.5))
    got = []
    for lo in range(0, limit + 1, 7919):
        got += list(mod.sieve_segment(lo, min(lo + 7919, limit + 1), primes))
    assert got == korselt_scan(limit)


@pytest.mark.parametrize("mod", BACKENDS, ids=lambda m: m.BACKEND)
def test_fools_all_bases_agree(mod):
    for n in range(9, 2001, 2):
        for z in range(4):
            assert bool(mod.fools_all_bases(n, z)) == bool(_fallback.fools_all_bases(n, z))


@pytest.mark.parametrize("mod", BACKENDS, ids=lambda m: m.BACKEND)
def test_fermat_progression(mod):
    pi, start, step, lim = 7 * 13, 1, 12, 20000
    want = [m for m in range(start, lim + 1, step) if pow(2, m * pi - 1, m * pi) == 1]
    assert list(mod.fermat_progression(pi, start, step, lim)) == want


@pytest.mark.skipif(_kernels is None, reason="compiled kernels not built")
def test_backends_agree_on_large_segment():
    primes = odd_primes_upto(10**5)
    lo, hi = 10**10 - 5 * 10**6, 10**10
    a = list(_kernels.sieve_segment(lo, hi, primes))
    b = list(_fallback.sieve_segment(lo, hi, primes))
    assert a == b and len(a) > 0
    big = list(_kernels.fermat_progression(1, 3, 2, 10**6))
    assert big == list(_fallback.fermat_progression(1, 3, 2, 10**6))


@pytest.mark.skipif(_kernels is None, reason="compiled kernels not built")
def test_fermat_progression_overflow_guard():
    with pytest.raises(OverflowError):
        _kernels.fermat_progression(2**40 + 1, 1, 1, 2**30)
