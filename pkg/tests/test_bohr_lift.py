import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import sieve_oracle
from multhankel.bohr_lift import (
    MAX_INT64,
    factorize,
    label,
    nth_primes,
    shift_multiindex,
)
from multhankel.errors import OverflowLabel


def test_nth_primes_smallest():
    assert nth_primes(1).primes == (2,)
    assert nth_primes(5).primes == (2, 3, 5, 7, 11)


def test_nth_primes_against_independent_sieve():
    expected = sieve_oracle(2000)
    table = nth_primes(len(expected))
    assert list(table) == expected
    assert nth_primes(25).primes[-1] == 97


def test_nth_primes_rejects_bad_counts():
    with pytest.raises(ValueError):
        nth_primes(0)
    with pytest.raises(ValueError):
        nth_primes(10**7)  # beyond the default sieve limit


@pytest.mark.parametrize(
    "n,kappa",
    [(1, ()), (12, (2, 1)), (9, (0, 2)), (2, (1,)), (30, (1, 1, 1)), (97, (0,) * 24 + (1,))],
)
def test_factorize_known_values(n, kappa):
    assert factorize(n) == kappa


def test_factorize_rejects_nonpositive():
    for n in (0, -1, -12):
        with pytest.raises(ValueError):
            factorize(n)


def test_label_known_values():
    assert label(()) == 1
    assert label((2, 1)) == 12
    assert label((0, 2)) == 9
    assert label([1, 1, 0, 0]) == 6  # trailing zeros tolerated


def test_label_64bit_boundary():
    # big-integer oracle for products of the first k primes
    primes = sieve_oracle(60)
    prod15 = math.prod(primes[:15])
    prod16 = math.prod(primes[:16])
    assert prod15 <= MAX_INT64 < prod16
    assert label((1,) * 15) == prod15
    with pytest.raises(OverflowLabel):
        label((1,) * 16)


def test_shift_multiindex():
    assert shift_multiindex((1,), 2) == (0, 0, 1)
    assert shift_multiindex((), 5) == ()
    assert shift_multiindex((2, 1), 0) == (2, 1)
    assert label(shift_multiindex((1, 1), 2)) == 5 * 7


def test_round_trip_exhaustive_prefix():
    for n in range(1, 20001):
        kappa = factorize(n)
        assert not kappa or kappa[-1] != 0  # canonical form
        assert label(kappa) == n


def test_round_trip_sampled_to_one_million():
    rng = np.random.default_rng(20240811)
    samples = set(rng.integers(1, 10**6 + 1, size=4000).tolist())
    samples.update([999983, 10**6, 2**19, 999999, 2 * 499979, 997 * 991])
    for n in samples:
        assert label(factorize(n)) == n


@given(st.integers(min_value=1, max_value=10**6))
@settings(max_examples=150, deadline=None)
def test_round_trip_property(n):
    assert label(factorize(n)) == n


@given(st.integers(min_value=1, max_value=1000), st.integers(min_value=1, max_value=1000))
@settings(max_examples=150, deadline=None)
def test_degree_additivity(m, n):
    km, kn, kmn = factorize(m), factorize(n), factorize(m * n)
    width = max(len(km), len(kn))
    summed = tuple(
        (km[j] if j < len(km) else 0) + (kn[j] if j < len(kn) else 0) for j in range(width)
    )
    while summed and summed[-1] == 0:
        summed = summed[:-1]
    assert kmn == summed


@given(
    st.lists(st.integers(min_value=0, max_value=5), max_size=6),
    st.integers(min_value=0, max_value=8),
    st.integers(min_value=0, max_value=8),
)
@settings(max_examples=100, deadline=None)
def test_shift_composition(kappa, a, b):
    assert shift_multiindex(shift_multiindex(kappa, a), b) == shift_multiindex(kappa, a + b)
