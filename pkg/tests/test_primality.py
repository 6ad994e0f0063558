import math
import random

import pytest
import sympy

from zdeep.errors import DomainError
from zdeep.primality import (
    Algorithm,
    TestOutcome,
    decompose,
    fermat_test,
    is_prime_oracle,
    miller_rabin,
    mr_sequence,
    run_test,
    single_round,
    solovay_strassen,
    z1_solovay_variant,
    z_deep_miller_rabin,
    zdeep_passes,
)

PRIMES = list(sympy.primerange(5, 3000))
CARMICHAELS = [561, 1105, 1729, 2465, 2821, 6601, 8911, 10585, 15841, 29341]


def seq_accepts_window(n, a, z):
    """Reference: the last min(z, r) + 1 squaring-sequence entries, read directly."""
    r = (n - 1 & -(n - 1)).bit_length() - 1
    d = (n - 1) >> r
    seq = [pow(a, d << i, n) for i in range(r + 1)]
    window = seq[r - min(z, r):]
    return window[0] == 1 or (n - 1) in window[:-1]


def test_decompose():
    assert decompose(561) == (561, 4, 35)
    assert decompose(3) == (3, 1, 1)
    with pytest.raises(DomainError):
        decompose(10)


def test_mr_sequence_of_561_base_2():
    assert mr_sequence(decompose(561), 2) == [263, 166, 67, 1, 1]


def test_2047_is_a_base_2_strong_pseudoprime():
    assert miller_rabin(2047, 2) is TestOutcome.PROBABLY_PRIME
    assert miller_rabin(2047, 3) is TestOutcome.COMPOSITE


def test_561_fools_fermat_base_2_but_not_mr():
    assert fermat_test(561, 2) is TestOutcome.PROBABLY_PRIME
    assert miller_rabin(561, 2) is TestOutcome.COMPOSITE
    assert fermat_test(561, 3) is TestOutcome.COMPOSITE  # 3 | 561


def test_base_range_checked():
    for fn in (fermat_test, solovay_strassen, miller_rabin, z1_solovay_variant):
        with pytest.raises(DomainError):
            fn(561, 1)
        with pytest.raises(DomainError):
            fn(561, 560)
        with pytest.raises(DomainError):
            fn(560, 3)
    with pytest.raises(DomainError):
        z_deep_miller_rabin(561, 2, -1)


@pytest.mark.parametrize("algo", list(Algorithm))
def test_primes_always_pass(algo):
    rng = random.Random(1)
    for p in PRIMES:
        for _ in range(5):
            a = rng.randint(2, p - 2)
            assert single_round(p, a, algo, z=rng.randint(0, 6)).passed


def test_window_rule_against_recomputed_sequence():
    rng = random.Random(3)
    for n in range(5, 4000, 2):
        for _ in range(3):
            a = rng.randint(2, n - 2)
            for z in range(0, 8):
                assert zdeep_passes(n, a, z) == seq_accepts_window(n, a, z), (n, a, z)


def test_strictness_chain_and_depth_monotonicity():
    # MR pass => z-deep pass (any z) => Fermat pass; deeper is stricter
    for n in range(9, 3000, 2):
        if is_prime_oracle(n):
            continue
        r = decompose(n).r
        for a in range(2, min(n - 1, 60)):
            res = [zdeep_passes(n, a, z) for z in range(r + 2)]
            assert res[0] == (pow(a, n - 1, n) == 1)
            assert res[r] == res[r + 1] == miller_rabin(n, a).passed
            assert all(res[z + 1] <= res[z] for z in range(r + 1))


def test_z0_is_fermat_and_large_z_is_mr():
    for n in CARMICHAELS + [2047, 1373653, 25326001]:
        for a in (2, 3, 5, 7, 11, 13):
            if a > n - 2:
                continue
            assert z_deep_miller_rabin(n, a, 0) == fermat_test(n, a)
            assert z_deep_miller_rabin(n, a, 64) == miller_rabin(n, a)


def test_z1_variant_is_z1_deep():
    for n in range(5, 3000, 2):
        for a in (2, 3, 5, 6):
            if a <= n - 2:
                assert z1_solovay_variant(n, a) == z_deep_miller_rabin(n, a, 1)


def test_solovay_strassen_stricter_than_z1_variant():
    for n in range(5, 3000, 2):
        for a in range(2, min(n - 1, 40)):
            if solovay_strassen(n, a).passed:
                assert z1_solovay_variant(n, a).passed
    # 1729 base 11: 11^864 == 1 mod 1729 but (11/1729) = -1
    assert pow(11, 864, 1729) == 1 and sympy.jacobi_symbol(11, 1729) == -1
    assert z1_solovay_variant(1729, 11).passed
    assert not solovay_strassen(1729, 11).passed


def test_solovay_strassen_rejects_shared_factor():
    assert solovay_strassen(561, 33) is TestOutcome.COMPOSITE


def test_run_test_deterministic_and_correct():
    for n in (561, 1105, 2047, 1000003, 2**61 - 1):
        for algo in Algorithm:
            a = run_test(n, algo, rounds=10, seed=42, z=2)
            b = run_test(n, algo, rounds=10, seed=42, z=2)
            assert a == b
    assert run_test(2**61 - 1, "mr", seed=0) is TestOutcome.PROBABLY_PRIME
    assert run_test(1105 * 1729, "mr", rounds=20, seed=0) is TestOutcome.COMPOSITE
    assert run_test(3) is TestOutcome.PROBABLY_PRIME
    with pytest.raises(DomainError):
        run_test(100)
    with pytest.raises(DomainError):
        run_test(101, rounds=0)


def test_units_only_sees_carmichael_behaviour():
    # every unit base fools Fermat on a Carmichael number
    for n in CARMICHAELS:
        assert run_test(n, "fermat", rounds=50, seed=9, units_only=True).passed
    # 1729 is 4-deep but not 5-deep (nu2(1728) = 6, max nu2(p-1) = 2)
    assert run_test(1729, "zmr", rounds=10, seed=7, z=4, units_only=True).passed
    assert not run_test(1729, "zmr", rounds=40, seed=7, z=5, units_only=True).passed


def test_mr_error_rate_on_composites_is_small():
    rng = random.Random(5)
    for _ in range(300):
        n = rng.randrange(10**6, 10**9) | 1
        if not sympy.isprime(n):
            assert run_test(n, "mr", rounds=20, seed=rng.getrandbits(32)) is TestOutcome.COMPOSITE


def test_is_prime_oracle():
    assert [n for n in range(60) if is_prime_oracle(n)] == list(sympy.primerange(0, 60))
    assert math.prod([3, 11, 17]) == 561 and not is_prime_oracle(561)
