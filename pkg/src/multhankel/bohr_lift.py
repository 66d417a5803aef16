"""Prime tables and the integer <-> multi-index correspondence.

Every n >= 1 factors as n = prod_j p_j^(kappa_j) over the primes in
order, which identifies n with the finite exponent vector kappa(n).
Multi-indices are plain tuples of nonnegative ints in canonical form
(trailing zeros trimmed); the empty tuple is n = 1.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import OverflowLabel

MAX_INT64 = 2**63 - 1

# Largest value the lazy sieve may grow to.  The default covers the
# first 100_000 primes (p_100000 = 1_299_709), comfortably above the
# 2**16 primes any desk-scale experiment touches.  Raise it if you
# really need more.
SIEVE_LIMIT = 1_299_709

_prime_cache = np.empty(0, dtype=np.int64)
_prime_list: list[int] = []
_prime_index: dict[int, int] = {}

# Factorization below this bound walks a smallest-prime-factor table
# (built once) instead of trial dividing.
SPF_BOUND = 1 << 20
_spf: list[int] | None = None


class PrimeTable:
    """The first k primes, immutable once built."""

    __slots__ = ("primes",)

    def __init__(self, primes):
        self.primes = tuple(int(p) for p in primes)

    def __len__(self):
        return len(self.primes)

    def __getitem__(self, j):
        return self.primes[j]

    def __iter__(self):
        return iter(self.primes)

    def __repr__(self):
        return f"PrimeTable({len(self.primes)} primes, last={self.primes[-1] if self.primes else None})"


def _sieve_upto(limit: int) -> np.ndarray:
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return np.flatnonzero(mask).astype(np.int64)


def _extend_cache(*, count: int = 0, value: int = 0) -> None:
    """Grow the cached prime list to cover `count` primes and values <= `value`."""
    global _prime_cache, _prime_list
    if len(_prime_list) >= count and _prime_list and _prime_list[-1] >= value:
        return
    # heuristic upper bound for the count-th prime; grow geometrically so
    # a stream of slowly increasing requests does not re-sieve each time
    target = value
    if count >= 6:
        target = max(target, int(count * (math.log(count) + math.log(math.log(count)) + 1)))
    target = max(target, 100_000, 4 * (_prime_list[-1] if _prime_list else 0))
    target = min(target, SIEVE_LIMIT)
    if not _prime_list or _prime_list[-1] < target:
        _prime_cache = _sieve_upto(target)
        _prime_list = _prime_cache.tolist()
    if len(_prime_list) < count or (value and _prime_list[-1] < value):
        raise ValueError(
            f"request exceeds the configured sieve limit (SIEVE_LIMIT={SIEVE_LIMIT}); "
            "raise multhankel.bohr_lift.SIEVE_LIMIT if this is intentional"
        )


def nth_primes(k: int) -> PrimeTable:
    """Return the first k primes as a PrimeTable."""
    if k < 1:
        raise ValueError("k must be >= 1")
    _extend_cache(count=k)
    return PrimeTable(_prime_cache[:k])


def _index_of(p: int) -> int:
    """0-based position of the prime p in the prime sequence."""
    global _prime_index
    if p not in _prime_index:
        _extend_cache(value=p)
        if len(_prime_index) != len(_prime_list):
            _prime_index = {q: j for j, q in enumerate(_prime_list)}
        if p not in _prime_index:
            raise ValueError(f"{p} is not prime")
    return _prime_index[p]


def _spf_table() -> list[int]:
    global _spf
    if _spf is None:
        bound = SPF_BOUND
        spf = np.zeros(bound + 1, dtype=np.int32)
        for p in range(2, math.isqrt(bound) + 1):
            if spf[p] == 0:
                sl = spf[p * p :: p]
                sl[sl == 0] = p
        primes = np.flatnonzero(spf[2:] == 0) + 2
        spf[primes] = primes
        _spf = spf.tolist()
    return _spf


def canonical(kappa) -> tuple[int, ...]:
    """Validate a multi-index and trim trailing zeros."""
    if type(kappa) is not tuple:
        kappa = tuple(int(e) for e in kappa)
    if kappa and min(kappa) < 0:
        raise ValueError("multi-index entries must be nonnegative")
    n = len(kappa)
    while n and kappa[n - 1] == 0:
        n -= 1
    return kappa[:n]


def factorize(n: int) -> tuple[int, ...]:
    """Exponent vector kappa(n) of the prime factorization of n >= 1."""
    n = int(n)
    if n < 1:
        raise ValueError(f"factorize requires n >= 1, got {n}")
    if n == 1:
        return ()
    by_prime: dict[int, int] = {}
    if n <= SPF_BOUND:
        spf = _spf_table()
        rest = n
        while rest > 1:
            p = spf[rest]
            by_prime[p] = by_prime.get(p, 0) + 1
            rest //= p
    else:
        _extend_cache(value=math.isqrt(n) + 1)
        rest = n
        for p in _prime_list:
            if p * p > rest:
                break
            while rest % p == 0:
                by_prime[p] = by_prime.get(p, 0) + 1
                rest //= p
        if rest > 1:
            by_prime[rest] = by_prime.get(rest, 0) + 1  # remainder is prime
    items = [(_index_of(p), e) for p, e in by_prime.items()]
    exponents = [0] * (1 + max(j for j, _ in items))
    for j, e in items:
        exponents[j] = e
    return tuple(exponents)


def label(kappa) -> int:
    """Integer n = prod p_j^(kappa_j); raises OverflowLabel beyond 64 bits.

    Callers hitting the overflow must keep working with multi-index keys.
    """
    kappa = canonical(kappa)
    if not kappa:
        return 1
    _extend_cache(count=len(kappa))
    n = 1
    for j, e in enumerate(kappa):
        if e:
            n *= _prime_list[j] ** e
            if n > MAX_INT64:
                raise OverflowLabel("label exceeds the 64-bit integer range")
    return n


def shift_multiindex(kappa, k: int) -> tuple[int, ...]:
    """Prepend k zero exponents: the monomial moves to variables k places up."""
    if k < 0:
        raise ValueError("shift count must be nonnegative")
    kappa = canonical(kappa)
    if not kappa or k == 0:
        return kappa
    return (0,) * k + kappa
