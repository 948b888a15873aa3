import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cmtrace.modint import (
    cornacchia_4q,
    cornacchia_4q_search,
    is_prime,
    legendre_symbol,
    sqrt_mod_prime,
)

SMALL_PRIMES = [p for p in range(3, 2000) if is_prime(p)]


def test_is_prime_matches_trial_division():
    for n in range(-5, 3000):
        naive = n > 1 and all(n % k for k in range(2, int(n**0.5) + 1))
        assert is_prime(n) == naive


def test_legendre_examples():
    assert legendre_symbol(54, 61) == -1
    assert legendre_symbol(-2, 17) == 1
    assert legendre_symbol(0, 7) == 0


def test_legendre_rejects_even_modulus():
    with pytest.raises(ValueError):
        legendre_symbol(3, 8)


def test_legendre_euler_criterion():
    rng = random.Random(1)
    for _ in range(1000):
        p = rng.choice(SMALL_PRIMES)
        a = rng.randrange(-10**6, 10**6)
        e = pow(a, (p - 1) // 2, p)
        assert legendre_symbol(a, p) % p == e


@given(st.sampled_from(SMALL_PRIMES), st.integers(), st.integers())
def test_legendre_multiplicative(p, a, b):
    assert legendre_symbol(a * b, p) == legendre_symbol(a, p) * legendre_symbol(b, p)


def test_sqrt_examples():
    assert sqrt_mod_prime(5, 61) == 26
    assert sqrt_mod_prime(1, 13) == 1
    assert sqrt_mod_prime(2, 17) == 6
    assert sqrt_mod_prime(3, 7) is None
    assert sqrt_mod_prime(14, 7) == 0


@given(st.sampled_from(SMALL_PRIMES), st.integers(min_value=0, max_value=10**9))
def test_sqrt_returns_smaller_root(p, a):
    r = sqrt_mod_prime(a, p)
    if legendre_symbol(a, p) == -1:
        assert r is None
        return
    assert 0 <= r < p and (r * r - a) % p == 0
    assert r <= p - r or r == 0


def test_sqrt_against_exhaustive_table():
    for p in SMALL_PRIMES[:40]:
        for a in range(p):
            roots = [r for r in range(p) if r * r % p == a]
            assert sqrt_mod_prime(a, p) == (min(roots) if roots else None)


def test_cornacchia_examples():
    s = cornacchia_4q(15, 61, 61)
    assert (s.u, s.v) == (2, 4)
    s = cornacchia_4q(15, 83**2, 83)
    assert (s.u, s.v) == (154, 16)
    s = cornacchia_4q(235, 239, 239)
    assert (s.u, s.v) == (4, 2)
    s = cornacchia_4q(32, 17, 17)
    assert (s.u, s.v) == (6, 1)


def test_cornacchia_none_when_not_represented():
    assert cornacchia_4q(15, 7, 7) is None


@pytest.mark.parametrize("D", [15, 20, 32, 35, 51, 235])
def test_cornacchia_fast_matches_search(D):
    for p in range(3, 10**4, 2):
        if not is_prime(p):
            continue
        fast = cornacchia_4q(D, p, p)
        slow = cornacchia_4q_search(D, p, p)
        assert fast == slow
        if fast is not None:
            assert fast.u**2 + D * fast.v**2 == 4 * p
            assert fast.u > 0 and fast.v > 0 and fast.u % p


def test_cornacchia_prime_squares_match_search():
    for p in SMALL_PRIMES[:60]:
        for D in (15, 24, 60):
            assert cornacchia_4q(D, p * p, p) == cornacchia_4q_search(D, p * p, p)
