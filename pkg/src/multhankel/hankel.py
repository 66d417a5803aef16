"""Finite matrix realization of the multiplicative Hankel form of a symbol.

For a polynomial symbol the infinite Hankel matrix has only finitely many
nonzero entries, all inside the block indexed by the divisor closure of
the symbol's support; that block is exact, not a truncation.
"""

from __future__ import annotations

import itertools
import json
import re

import numpy as np

from . import symbols
from .bohr_lift import label
from .errors import MatrixTooLarge, OverflowLabel
from .symbols import Symbol, add_multiindices, grlex_key

DEFAULT_MAX_DIM = 4096


def support_closure(support) -> list[tuple[int, ...]]:
    """All multi-indices componentwise below an element of `support`.

    Sorted graded-lexicographically; always contains the empty index.
    """
    closure = {()}
    for kappa in support:
        for divisor in itertools.product(*(range(e + 1) for e in kappa)):
            n = len(divisor)
            while n and divisor[n - 1] == 0:
                n -= 1
            closure.add(divisor[:n])
    return sorted(closure, key=grlex_key)


class HankelMatrix:
    """Dense complex-symmetric block of the Hankel matrix of a symbol.

    entries[i, j] is the conjugate of the symbol coefficient at
    labels[i] + labels[j], matching the bilinear-form convention
    rho(a, b) = sum rho_mn a_m b_n = <fg, phi>; labels is one
    divisor-closed list shared by rows and columns.
    """

    __slots__ = ("entries", "labels")

    def __init__(self, entries, labels):
        self.entries = np.asarray(entries, dtype=np.complex128)
        self.labels = [tuple(k) for k in labels]
        if self.entries.shape != (len(self.labels), len(self.labels)):
            raise ValueError("entries shape does not match the label list")

    @property
    def dim(self) -> int:
        return len(self.labels)

    def integer_labels(self) -> list[int]:
        """Integer labels of the rows; raises OverflowLabel past 64 bits."""
        return [label(k) for k in self.labels]

    def __repr__(self):
        return f"HankelMatrix(dim={self.dim})"


def build_matrix(phi: Symbol, max_dim: int = DEFAULT_MAX_DIM) -> HankelMatrix:
    """Exact Hankel block of `phi` over the divisor closure of its support.

    Every nonzero entry of the infinite matrix lands inside this block,
    because any pair (m, n) with a nonzero entry divides m*n in the
    support.  The singular spectrum therefore matches the full form's.
    """
    if not phi:
        raise ValueError("symbol must be nonzero")
    labels = support_closure(phi.support())
    n = len(labels)
    if n > max_dim:
        raise MatrixTooLarge(f"divisor closure needs {n} labels, cap is {max_dim}")
    index = {k: i for i, k in enumerate(labels)}
    entries = np.zeros((n, n), dtype=np.complex128)
    for kappa, c in phi.terms.items():
        for alpha in itertools.product(*(range(e + 1) for e in kappa)):
            beta = tuple(e - a for e, a in zip(kappa, alpha))
            a = len(alpha)
            while a and alpha[a - 1] == 0:
                a -= 1
            b = len(beta)
            while b and beta[b - 1] == 0:
                b -= 1
            entries[index[alpha[:a]], index[beta[:b]]] = c.conjugate()
    return HankelMatrix(entries, labels)


def matrix_on_labels(phi: Symbol, labels) -> np.ndarray:
    """Entry-by-entry fill over an arbitrary label list (test utility)."""
    labels = [tuple(k) for k in labels]
    n = len(labels)
    out = np.zeros((n, n), dtype=np.complex128)
    for i in range(n):
        for j in range(n):
            out[i, j] = phi.coefficient(add_multiindices(labels[i], labels[j])).conjugate()
    return out


def form_apply(phi: Symbol, f: Symbol, g: Symbol) -> complex:
    """Matrix-free bilinear form <f*g, phi>; the oracle for build_matrix."""
    return symbols.inner(symbols.multiply(f, g), phi)


def _format_complex(c: complex) -> str:
    return f"{c.real:.17g}{c.imag:+.17g}i"


_FLOAT = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX_RE = re.compile(rf"^([+-]?{_FLOAT})([+-]{_FLOAT})i$")


def _parse_complex(s: str) -> complex:
    m = _COMPLEX_RE.match(s.strip())
    if not m:
        raise ValueError(f"cannot parse complex entry {s!r}")
    return complex(float(m.group(1)), float(m.group(2)))


def write_matrix_csv(matrix: HankelMatrix, path, labels_path=None) -> str:
    """CSV of entries as "re+im i" plus a parallel label file (JSON lines).

    Returns the labels path used (default: path + ".labels").
    """
    labels_path = str(labels_path) if labels_path else str(path) + ".labels"
    with open(path, "w") as fh:
        for row in matrix.entries:
            fh.write(",".join(_format_complex(c) for c in row))
            fh.write("\n")
    with open(labels_path, "w") as fh:
        for kappa in matrix.labels:
            try:
                n = label(kappa)
            except OverflowLabel:
                n = None
            fh.write(json.dumps({"n": n, "exponents": list(kappa)}) + "\n")
    return labels_path


def read_matrix_csv(path) -> np.ndarray:
    with open(path) as fh:
        rows = [
            [_parse_complex(tok) for tok in line.strip().split(",")]
            for line in fh
            if line.strip()
        ]
    return np.array(rows, dtype=np.complex128)


def read_labels(path) -> list[tuple[int, ...]]:
    with open(path) as fh:
        return [tuple(json.loads(line)["exponents"]) for line in fh if line.strip()]
