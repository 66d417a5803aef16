"""L^q norms of polynomial symbols on the polytorus.

Two routes: deterministic tensor-product quadrature over the active
variables (small width), and Steinhaus Monte Carlo with standard errors
(any width).  Monte Carlo sampling is split into fixed-size blocks, each
drawing from a stream keyed by (seed, block), so results are independent
of how the blocks are scheduled and bit-identical across thread counts.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import NoConvergence, WidthTooLarge
from .symbols import Symbol

GRID_MAX_WIDTH = 4
GRID_START_NODES = 8
GRID_MAX_DOUBLINGS = 14
GRID_NODE_BUDGET = 1 << 28
MC_BLOCK = 1 << 16


@dataclass(frozen=True)
class NormEstimate:
    """A norm value with its provenance: method, size, seed, and stderr."""

    value: float
    stderr: float
    method: str  # "grid" or "mc"
    samples_or_nodes: int
    seed: int | None = None


def _term_arrays(f: Symbol) -> tuple[np.ndarray, np.ndarray]:
    """Exponent matrix and coefficient vector over the ACTIVE variables only.

    Columns are the variables actually appearing in f, in increasing
    order; unused variables are dropped so that shifted symbols evaluate
    on exactly the same points as their unshifted originals.
    """
    keys = list(f.terms.keys())
    coeffs = np.array([f.terms[k] for k in keys], dtype=np.complex128)
    width = max((len(k) for k in keys), default=0)
    full = np.zeros((len(keys), width), dtype=np.int64)
    for i, k in enumerate(keys):
        full[i, : len(k)] = k
    active = np.flatnonzero(full.any(axis=0))
    return full[:, active], coeffs


def _reduce_first_variable(expts: np.ndarray, coeffs: np.ndarray):
    """Substitute 1 for the first active variable, merging collided terms.

    Valid as a quadrature step only for homogeneous symbols, where the
    tensor-rule mean is invariant under rotating one coordinate away.
    """
    merged: dict[tuple, complex] = {}
    for row, c in zip(expts[:, 1:], coeffs):
        key = tuple(row)
        merged[key] = merged.get(key, 0j) + c
    keys = sorted(merged)
    out_e = np.array(keys, dtype=np.int64).reshape(len(keys), expts.shape[1] - 1)
    out_c = np.array([merged[k] for k in keys], dtype=np.complex128)
    return out_e, out_c


def grid_mean_abs_pow(
    f: Symbol, q: float, n_nodes: int, homogeneous_reduction: bool = True
) -> float:
    """Tensor-rule mean of |f|^q at n_nodes per active axis (one level).

    For homogeneous f the first coordinate is rotated away exactly, so
    the returned value is the full rule's value at a fraction of the
    cost.  Pass homogeneous_reduction=False to force full enumeration.
    """
    if not f:
        return 0.0
    expts, coeffs = _term_arrays(f)
    if homogeneous_reduction and expts.shape[1] >= 1 and f.is_homogeneous():
        expts, coeffs = _reduce_first_variable(expts, coeffs)
    return float(_kernels.grid_abs_pow_mean(expts, coeffs, n_nodes, float(q)))


def norm_grid(
    f: Symbol,
    q: float = 1.0,
    tol: float = 1e-6,
    *,
    start_nodes: int = GRID_START_NODES,
    max_doublings: int = GRID_MAX_DOUBLINGS,
    node_budget: int = GRID_NODE_BUDGET,
) -> NormEstimate:
    """L^q norm by uniform-angle tensor quadrature with adaptive doubling.

    The per-axis node count doubles until two successive norm estimates
    agree to relative `tol`.  Exact for trigonometric-polynomial
    integrands (even q) once the rule resolves the degree; for odd q the
    |.| kinks limit convergence to roughly O(n_nodes^-2).
    """
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if not f:
        return NormEstimate(0.0, 0.0, "grid", 1)
    expts, coeffs = _term_arrays(f)
    width = expts.shape[1]
    if width > GRID_MAX_WIDTH:
        raise WidthTooLarge(
            f"symbol has {width} active variables; grid quadrature allows {GRID_MAX_WIDTH}"
        )
    reduce = width >= 1 and f.is_homogeneous()
    if reduce:
        expts, coeffs = _reduce_first_variable(expts, coeffs)
    eff_width = expts.shape[1]

    def level(n: int) -> float:
        mean = float(_kernels.grid_abs_pow_mean(expts, coeffs, n, float(q)))
        return mean ** (1.0 / q)

    n = start_nodes
    prev = level(n)
    for _ in range(max_doublings):
        n *= 2
        if n**eff_width > node_budget:
            raise NoConvergence(
                f"node budget {node_budget} exhausted at {n} nodes per axis "
                f"({eff_width} effective axes) before reaching tol={tol}"
            )
        cur = level(n)
        if abs(cur - prev) <= tol * max(abs(cur), 1e-300):
            return NormEstimate(cur, 0.0, "grid", n**eff_width)
        prev = cur
    raise NoConvergence(
        f"no convergence to tol={tol} after {max_doublings} doublings "
        f"({n} nodes per axis)"
    )


def _blocks(n: int):
    full, rest = divmod(n, MC_BLOCK)
    for c in range(full):
        yield c, MC_BLOCK
    if rest:
        yield full, rest


def steinhaus_block(seed: int, block: int, count: int, width: int) -> np.ndarray:
    """Samples for one block: each coordinate uniform on the unit circle."""
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(block,))
    rng = np.random.default_rng(ss)
    return np.exp(2j * np.pi * rng.random((count, width)))


def norm_mc(
    f: Symbol,
    q: float = 1.0,
    n: int = 1_000_000,
    seed: int = 0,
    *,
    threads: int = 1,
) -> NormEstimate:
    """L^q norm by Steinhaus Monte Carlo: (mean |f|^q)^(1/q) over n points.

    The standard error of the returned value comes from the delta method
    applied to the sample mean of |f|^q.  Fixed seed implies bit-identical
    results regardless of `threads`.
    """
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")
    if n < 2:
        raise ValueError("need at least two samples")
    if seed < 0:
        raise ValueError("seed must be a nonnegative integer")
    expts, coeffs = _term_arrays(f)
    width = expts.shape[1]

    def one_block(args):
        block, count = args
        if width == 0:
            a = np.full(count, abs(complex(coeffs.sum())) if len(coeffs) else 0.0)
        else:
            z = steinhaus_block(seed, block, count, width)
            vals = _kernels.eval_terms(expts, coeffs, z)
            a = np.abs(vals)
        if q != 1.0:
            a = a**q
        return float(a.sum()), float((a * a).sum())

    blocks = list(_blocks(n))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            partials = list(pool.map(one_block, blocks))
    else:
        partials = [one_block(b) for b in blocks]
    s1 = 0.0
    s2 = 0.0
    for a, b in partials:  # fixed block order keeps this bit-identical
        s1 += a
        s2 += b
    mean = s1 / n
    second = s2 / n
    var = max(second - mean * mean, 0.0) * (n / (n - 1))
    sem = math.sqrt(var / n)
    if mean <= 0.0:
        return NormEstimate(0.0, sem, "mc", n, seed)
    value = mean ** (1.0 / q)
    stderr = sem * value / (q * mean)  # d/dm m^(1/q) = m^(1/q-1)/q
    return NormEstimate(value, stderr, "mc", n, seed)
