"""Sparse polynomials on the polytorus with the algebra the forms need.

A Symbol is a finite complex combination of monomials z^kappa indexed by
canonical multi-indices.  Only finitely many variables are active, so
products, shifts and L^2 pairings are exact (up to float rounding).
"""

from __future__ import annotations

import json
from types import MappingProxyType

from .bohr_lift import canonical, shift_multiindex

# Coefficients whose modulus drops below this after arithmetic are pruned,
# keeping sparsity canonical; it sits below every tolerance used elsewhere.
PRUNE_TOL = 1e-15


def grlex_key(kappa):
    """Graded lexicographic sort key (total degree, then z1 > z2 > ...)."""
    return (sum(kappa), tuple(-e for e in kappa))


def add_multiindices(a, b) -> tuple[int, ...]:
    if len(a) < len(b):
        a, b = b, a
    return tuple(x + y for x, y in zip(a, b)) + a[len(b) :]


class Symbol:
    """Immutable sparse polynomial: a finite map multi-index -> coefficient.

    >>> Symbol({(1,): 1.0, (0, 1): 2j})     # z1 + 2i*z2
    Symbol({(1,): (1+0j), (0, 1): 2j})
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        data = {}
        for kappa, c in dict(terms or {}).items():
            kappa = canonical(kappa)
            c = complex(c)
            if c != 0:
                data[kappa] = data.get(kappa, 0j) + c
        self._terms = {k: c for k, c in sorted(data.items(), key=lambda kv: grlex_key(kv[0])) if c != 0}

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def coefficient(self, kappa) -> complex:
        return self._terms.get(canonical(kappa), 0j)

    def support(self):
        return self._terms.keys()

    @property
    def width(self) -> int:
        """Largest active variable index (0 for constants)."""
        return max((len(k) for k in self._terms), default=0)

    @property
    def degree(self) -> int:
        return max((sum(k) for k in self._terms), default=0)

    @property
    def num_terms(self) -> int:
        return len(self._terms)

    def is_homogeneous(self) -> bool:
        return len({sum(k) for k in self._terms}) <= 1

    def coeff_l2(self) -> float:
        return sum(abs(c) ** 2 for c in self._terms.values()) ** 0.5

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, Symbol):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None

    def __mul__(self, other):
        if isinstance(other, Symbol):
            return multiply(self, other)
        return Symbol({k: other * c for k, c in self._terms.items()})

    def __rmul__(self, other):
        return self.__mul__(other)

    def __add__(self, other):
        if not isinstance(other, Symbol):
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0j) + c
        return Symbol(out)

    def __sub__(self, other):
        return self + (-1.0) * other

    def __repr__(self):
        if len(self._terms) > 6:
            return f"Symbol(<{len(self._terms)} terms, width {self.width}, degree {self.degree}>)"
        return f"Symbol({self._terms!r})"


def linear(coefficients) -> Symbol:
    """Homogeneous linear symbol c_1*z_1 + ... + c_d*z_d (zero entries dropped)."""
    coefficients = [complex(c) for c in coefficients]
    if not coefficients:
        raise ValueError("need at least one coefficient")
    return Symbol({(0,) * j + (1,): c for j, c in enumerate(coefficients) if c != 0})


def normalized_linear(d: int) -> Symbol:
    """(z_1 + ... + z_d)/sqrt(d): unit coefficient l2 norm."""
    if d < 1:
        raise ValueError("d must be >= 1")
    return linear([1.0 / d**0.5] * d)


def multiply(f: Symbol, g: Symbol) -> Symbol:
    """Coefficient convolution; results below PRUNE_TOL in modulus are pruned."""
    out = {}
    for ka, ca in f._terms.items():
        for kb, cb in g._terms.items():
            k = add_multiindices(ka, kb)
            out[k] = out.get(k, 0j) + ca * cb
    return Symbol({k: c for k, c in out.items() if abs(c) >= PRUNE_TOL})


def shift(f: Symbol, k: int) -> Symbol:
    """Move every variable k places up: z_j -> z_{j+k}.  Constants are fixed."""
    if k == 0:
        return f
    return Symbol({shift_multiindex(kappa, k): c for kappa, c in f._terms.items()})


def inner(f: Symbol, g: Symbol) -> complex:
    """L^2(T^infinity) pairing <f, g> = sum_kappa f_kappa * conj(g_kappa)."""
    a, b = f._terms, g._terms
    if len(b) < len(a):
        return sum(a[k] * b[k].conjugate() for k in b.keys() & a.keys())
    return sum(a[k] * b[k].conjugate() for k in a.keys() & b.keys())


def to_records(f: Symbol) -> list[dict]:
    """Serialize to a list of {exponents, re, im} records in graded-lex order."""
    return [
        {"exponents": list(k), "re": c.real, "im": c.imag}
        for k, c in sorted(f._terms.items(), key=lambda kv: grlex_key(kv[0]))
    ]


def from_records(records) -> Symbol:
    return Symbol({tuple(r["exponents"]): complex(r["re"], r["im"]) for r in records})


def write_symbol(f: Symbol, path) -> None:
    with open(path, "w") as fh:
        json.dump(to_records(f), fh, indent=1)
        fh.write("\n")


def read_symbol(path) -> Symbol:
    with open(path) as fh:
        return from_records(json.load(fh))
