"""Singular values and Schatten p-(quasi)norms of dense complex matrices.

Deliberately structure-blind: a general dense SVD, never a Hankel-aware
shortcut, so these routines can serve as an independent oracle for the
tensor identities checked elsewhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonFinite
from .hankel import HankelMatrix

DEFAULT_ZERO_THRESHOLD = 1e-12


@dataclass(frozen=True)
class SingularSpectrum:
    """Nonincreasing nonnegative singular values with a zero threshold."""

    values: np.ndarray
    zero_threshold: float = DEFAULT_ZERO_THRESHOLD

    @property
    def rank(self) -> int:
        if self.values.size == 0:
            return 0
        cutoff = self.zero_threshold * max(float(self.values[0]), 1.0)
        return int(np.count_nonzero(self.values > cutoff))

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)


def _as_matrix(m) -> np.ndarray:
    if isinstance(m, HankelMatrix):
        m = m.entries
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError(f"need a 2-d matrix, got shape {m.shape}")
    return m


def singular_values(m, zero_threshold: float = DEFAULT_ZERO_THRESHOLD) -> SingularSpectrum:
    """Full singular spectrum via LAPACK's orthogonal-reduction SVD."""
    m = _as_matrix(m)
    if not np.all(np.isfinite(m)):
        raise NonFinite("matrix contains NaN or infinite entries")
    if m.size == 0:
        return SingularSpectrum(np.zeros(0), zero_threshold)
    vals = np.linalg.svd(m, compute_uv=False)
    return SingularSpectrum(np.asarray(vals, dtype=np.float64), zero_threshold)


def schatten_norm(spectrum, p: float) -> float:
    """l^p (quasi)norm of the singular values; p = inf gives the largest."""
    if isinstance(spectrum, SingularSpectrum):
        vals = spectrum.values
    else:
        vals = np.asarray(spectrum, dtype=np.float64)
    if math.isnan(p) or p <= 0:
        raise ValueError(f"Schatten exponent must be positive, got {p}")
    if vals.size == 0:
        return 0.0
    top = float(vals.max())
    if math.isinf(p) or top == 0.0:
        return top
    # scale out the largest value so p < 1 cannot underflow
    return top * float(np.sum((vals / top) ** p)) ** (1.0 / p)
