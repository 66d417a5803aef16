"""Shared test utilities: independent oracles and random-input factories."""

import numpy as np

from multhankel.symbols import Symbol


def sieve_oracle(limit):
    """Plain-python sieve of Eratosthenes, independent of the library's."""
    flags = [True] * (limit + 1)
    flags[0] = flags[1] = False
    for p in range(2, int(limit**0.5) + 1):
        if flags[p]:
            for m in range(p * p, limit + 1, p):
                flags[m] = False
    return [i for i, is_p in enumerate(flags) if is_p]


def random_symbol(rng, width=3, degree=2, max_terms=5, complex_coeffs=True):
    """Random sparse symbol with bounded width and total degree."""
    terms = {}
    n_terms = int(rng.integers(1, max_terms + 1))
    while len(terms) < n_terms:
        kappa = [int(x) for x in rng.integers(0, degree + 1, size=width)]
        while sum(kappa) > degree:
            kappa[int(rng.integers(0, width))] = 0
        c = complex(rng.normal(), rng.normal() if complex_coeffs else 0.0)
        terms[tuple(kappa)] = c
    return Symbol(terms)


def random_unit_vector(rng, d):
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    return v / np.linalg.norm(v)
