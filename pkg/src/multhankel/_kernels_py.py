"""NumPy implementation of the evaluation kernels.

This is the fallback backend when the compiled extension is not built,
and the correctness baseline the compiled path is tested against.  Both
expose the same two functions on plain arrays:

  eval_terms(expts, coeffs, z)            batched point evaluation
  grid_abs_pow_mean(expts, coeffs, n, q)  mean of |f|^q over a tensor grid
"""

from __future__ import annotations

import numpy as np

# max complex values held per broadcast chunk (~32 MB)
_CHUNK = 1 << 21


def eval_terms(expts, coeffs, z) -> np.ndarray:
    """Evaluate sum_t coeffs[t] * prod_v z[:, v]**expts[t, v] per row of z."""
    expts = np.asarray(expts, dtype=np.int64)
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    z = np.asarray(z, dtype=np.complex128)
    out = np.zeros(z.shape[0], dtype=np.complex128)
    for e, c in zip(expts, coeffs):
        term = np.full(z.shape[0], c)
        for v in np.flatnonzero(e):
            term *= z[:, v] ** int(e[v])
        out += term
    return out


def grid_abs_pow_mean(expts, coeffs, n_nodes: int, q: float) -> float:
    """Mean of |f|^q over the uniform tensor grid with n_nodes per axis.

    The grid is never materialized as points; each term contributes an
    outer product of per-axis factor vectors, broadcast in chunks along
    the first axis to bound memory.
    """
    expts = np.asarray(expts, dtype=np.int64)
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    t_count, width = expts.shape
    if t_count == 0:
        return 0.0
    if width == 0:
        return float(abs(coeffs.sum()) ** q)
    omega = np.exp(2j * np.pi * np.arange(n_nodes) / n_nodes)
    factors = [[omega ** int(e) for e in row] for row in expts]
    # fold leading axes into an explicit loop until the tail block fits
    lead = 0
    while n_nodes ** (width - lead) > _CHUNK and lead < width - 1:
        lead += 1
    tail_axes = width - lead
    tail_shape = (n_nodes,) * tail_axes
    total = 0.0
    for head in np.ndindex((n_nodes,) * lead):
        vals = np.zeros(tail_shape, dtype=np.complex128)
        for t in range(t_count):
            prefix = coeffs[t]
            for v in range(lead):
                prefix = prefix * factors[t][v][head[v]]
            term = prefix * factors[t][lead].reshape((-1,) + (1,) * (tail_axes - 1))
            for v in range(1, tail_axes):
                shape = (1,) * v + (n_nodes,) + (1,) * (tail_axes - 1 - v)
                term = term * factors[t][lead + v].reshape(shape)
            vals += term
        mags = np.abs(vals)
        if q == 2.0:
            mags *= mags
        elif q != 1.0:
            mags **= q
        total += float(mags.sum())
    return total / n_nodes**width
