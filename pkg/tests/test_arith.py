import math
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from zdeep.arith import (
    ExactRational,
    Factorization,
    binomial,
    carmichael_lambda,
    f_of_k,
    factorize,
    is_prime,
    jacobi,
    mod_pow,
    nu_p,
)
from zdeep.errors import CapacityError, DomainError


def naive_pow(b, e, m):
    acc = 1 % m
    for _ in range(e):
        acc = acc * b % m
    return acc


def test_mod_pow_examples():
    assert mod_pow(2, 560, 561) == 1
    assert mod_pow(2, 35, 561) == naive_pow(2, 35, 561) == 263
    assert mod_pow(5, 0, 12) == 1


def test_mod_pow_rejects_small_modulus():
    with pytest.raises(DomainError):
        mod_pow(3, 4, 1)


@given(st.integers(0, 1023), st.integers(0, 1023), st.integers(2, 1023))
def test_mod_pow_matches_naive_loop(b, e, m):
    assert mod_pow(b, e, m) == naive_pow(b, e, m)


def test_jacobi_examples():
    assert jacobi(1, 9) == 1
    assert jacobi(2, 15) == 1
    assert jacobi(3, 9) == 0
    with pytest.raises(DomainError):
        jacobi(3, 10)
    with pytest.raises(DomainError):
        jacobi(3, -7)


def test_jacobi_is_euler_criterion_for_small_primes():
    for p in sympy.primerange(3, 1000):
        for a in range(p):
            e = pow(a, (p - 1) // 2, p)
            assert jacobi(a, p) == (e - p if e == p - 1 else e)


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6),
       st.integers(0, 10**5).map(lambda k: 2 * k + 1))
def test_jacobi_multiplicative_and_matches_sympy(a, b, n):
    assert jacobi(a * b, n) == jacobi(a, n) * jacobi(b, n)
    assert jacobi(a, n) == sympy.jacobi_symbol(a % n, n)


def test_nu_p():
    assert nu_p(560, 2) == 4
    assert nu_p(35, 2) == 0
    assert nu_p(1728, 2) == 6
    assert nu_p(1728, 3) == 3
    with pytest.raises(DomainError):
        nu_p(0, 2)


def test_factorize_examples():
    assert factorize(561).factors == ((3, 1), (11, 1), (17, 1))
    assert factorize(8).factors == ((2, 3),)
    assert factorize(1729).factors == ((7, 1), (13, 1), (19, 1))
    assert factorize(2**64 - 1).n == 2**64 - 1
    with pytest.raises(CapacityError):
        factorize(2**64)
    with pytest.raises(DomainError):
        factorize(1)


def test_factorize_reconstructs_small_range():
    for n in range(2, 100_001):
        f = factorize(n)
        assert f.n == n
        assert all(is_prime(p) for p in f.primes)


def test_factorize_random_64_bit():
    rng = random.Random(2024)
    for _ in range(10_000):
        n = rng.randrange(2, 2**64)
        f = factorize(n)
        assert f.n == n
        assert all(is_prime(p) for p in f.primes)
        assert list(f.primes) == sorted(set(f.primes))


def test_factorize_hard_semiprimes():
    # products of two ~32-bit primes defeat trial division and need rho
    for p, q in [(4294967279, 4294967291), (2147483647, 2147483659), (1000003, 18446688733531)]:
        assert sympy.isprime(p) and sympy.isprime(q)
        assert factorize(p * q).primes == (p, q)


def test_is_prime_agrees_with_sympy():
    rng = random.Random(7)
    for n in list(range(0, 5000)) + [rng.randrange(2**63, 2**64) for _ in range(3000)]:
        assert is_prime(n) == sympy.isprime(n)
    # strong pseudoprimes to many small bases
    for n in (3215031751, 2152302898747, 3474749660383, 341550071728321, 3825123056546413051):
        assert not is_prime(n)


def test_factorization_invariants():
    with pytest.raises(DomainError):
        Factorization(((3, 1), (3, 1)))
    with pytest.raises(DomainError):
        Factorization(((5, 0),))
    f = Factorization.from_primes([17, 3, 11])
    assert f.factors == ((3, 1), (11, 1), (17, 1)) and f.n == 561 and f.is_squarefree


def brute_lambda(n):
    best = 1
    for a in range(1, n):
        if math.gcd(a, n) != 1:
            continue
        x, k = a % n, 1
        while x != 1 % n:
            x = x * a % n
            k += 1
        best = math.lcm(best, k)
    return best


def test_carmichael_lambda_examples():
    assert carmichael_lambda(factorize(33)) == 10
    assert carmichael_lambda(factorize(15)) == 4
    assert carmichael_lambda(factorize(97)) == 96
    assert carmichael_lambda(factorize(8)) == 2
    assert carmichael_lambda(factorize(4)) == 2
    assert carmichael_lambda(factorize(2)) == 1


def test_carmichael_lambda_is_max_order_up_to_10_4():
    for n in range(2, 10_001):
        assert carmichael_lambda(factorize(n)) == sympy.reduced_totient(n), n
    # the sympy check above covers the range; brute force spot-checks it
    for n in list(range(2, 400)) + [561, 1105, 2048, 3600, 9999]:
        assert carmichael_lambda(factorize(n)) == brute_lambda(n)


def test_f_of_k():
    assert f_of_k(factorize(15)) == 4
    assert f_of_k(factorize(561)) == 80
    assert f_of_k(factorize(101)) == 100
    assert f_of_k(Factorization(())) == 1


def test_binomial():
    assert binomial(4, 2) == 6
    assert binomial(7, 0) == 1
    assert binomial(3, 5) == 0
    # Pascal recurrence
    row = [1]
    for _ in range(10):
        row = [a + b for a, b in zip([0] + row, row + [0])]
    assert binomial(10, 5) == row[5] == 252


@settings(max_examples=200)
@given(st.integers(-10**9, 10**9), st.integers(1, 10**9),
       st.integers(-10**9, 10**9), st.integers(1, 10**9))
def test_exact_rational_is_exact_and_normalized(a, b, c, d):
    x, y = ExactRational(a, b), ExactRational(c, d)
    s = (x + y) * (b * d)
    assert s.denominator == 1 and s.numerator == a * d + c * b
    assert math.gcd(abs(x.numerator), x.denominator) == 1 and x.denominator > 0
    assert ExactRational is Fraction
