"""Derivative-free maximization of the Nehari ratio over linear symbols.

The ratio is invariant under scaling and global phase of either
coefficient vector, so each vector is parameterized by 2d-1 reals with
the first coefficient kept real; restarts launch Nelder-Mead from
Steinhaus-random points.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from . import nehari
from .symbols import linear

MAX_SEARCH_WIDTH = 3


@dataclass(frozen=True)
class SearchResult:
    a: np.ndarray
    b: np.ndarray
    p: float
    best_ratio: float
    evaluations: int
    seed: int
    restart: int
    history: list[float] = field(default_factory=list, repr=False)

    @property
    def d(self) -> int:
        return len(self.a)


def _pack(v: np.ndarray) -> np.ndarray:
    out = np.empty(2 * len(v) - 1)
    out[0] = v[0].real
    out[1::2] = v[1:].real
    out[2::2] = v[1:].imag
    return out


def _unpack(x: np.ndarray) -> np.ndarray:
    d = (len(x) + 1) // 2
    v = np.empty(d, dtype=np.complex128)
    v[0] = x[0]
    v[1:] = x[1::2] + 1j * x[2::2]
    return v


def _canonical(v: np.ndarray) -> np.ndarray:
    """Unit l2 norm with the first nonzero coefficient real positive."""
    v = np.asarray(v, dtype=np.complex128)
    n = np.linalg.norm(v)
    if n == 0:
        return v
    v = v / n
    nz = np.flatnonzero(np.abs(v) > 0)
    if len(nz):
        pivot = v[nz[0]]
        v = v * (pivot.conjugate() / abs(pivot))
    return v


def maximize_ratio_linear(
    d: int,
    p: float,
    restarts: int = 20,
    iters: int = 200,
    seed: int = 0,
    *,
    grid_tol: float = 1e-6,
) -> SearchResult:
    """Simplex search for the largest ratio over pairs of linear symbols.

    Deterministic for a fixed seed: restart r draws its start point from
    the stream (seed, r), and the winner is the deterministic max over
    (ratio, restart index).  The reported best_ratio is recomputed from
    the returned coefficient pair.
    """
    if not 1 <= d <= MAX_SEARCH_WIDTH:
        raise ValueError(f"d must be in 1..{MAX_SEARCH_WIDTH} (grid quadrature)")
    if restarts < 1:
        raise ValueError("need at least one restart")

    evaluations = 0
    history: list[float] = []
    best = (-np.inf, 0, None)  # (ratio, -restart, params)

    def objective(x):
        nonlocal evaluations, best
        evaluations += 1
        a = _unpack(x[: 2 * d - 1])
        b = _unpack(x[2 * d - 1 :])
        if np.linalg.norm(a) < 1e-12 or np.linalg.norm(b) < 1e-12:
            r = 0.0
        else:
            a = a / np.linalg.norm(a)
            b = b / np.linalg.norm(b)
            r = nehari.ratio(linear(b), linear(a), p, "grid", tol=grid_tol).ratio
        key = (r, -current_restart)
        if key > best[:2]:
            best = (r, -current_restart, np.array(x))
        history.append(best[0])
        return -r

    for current_restart in range(restarts):
        rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(current_restart,)))
        a0 = _canonical(np.exp(2j * np.pi * rng.random(d)))
        b0 = _canonical(np.exp(2j * np.pi * rng.random(d)))
        x0 = np.concatenate([_pack(a0), _pack(b0)])
        if iters == 0:
            objective(x0)
        else:
            minimize(
                objective,
                x0,
                method="Nelder-Mead",
                options={"maxiter": iters, "xatol": 1e-9, "fatol": 1e-12},
            )

    _, neg_restart, x_best = best
    a = _canonical(_unpack(x_best[: 2 * d - 1]))
    b = _canonical(_unpack(x_best[2 * d - 1 :]))
    final = nehari.ratio(linear(b), linear(a), p, "grid", tol=grid_tol).ratio
    return SearchResult(
        a=a,
        b=b,
        p=p,
        best_ratio=final,
        evaluations=evaluations,
        seed=seed,
        restart=-neg_restart,
        history=history,
    )
