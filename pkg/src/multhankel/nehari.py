"""The counterexample engine.

Everything revolves around the Nehari ratio

    |<f, phi>| / (||H_phi||_{S_p} * ||f||_1),

which a uniform lifting constant would keep bounded.  For the uniform
linear symbol the three factors are, respectively, 1, 2^(1/p) and a
Steinhaus average that sinks toward sqrt(pi)/2 as the width grows, so the
ratio crosses 1 once p exceeds the critical exponent; disjoint-variable
amplification then raises any excess to the m-th power.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .hankel import build_matrix, DEFAULT_MAX_DIM
from .integrals import NormEstimate, norm_grid, norm_mc
from .spectra import schatten_norm, singular_values
from .symbols import Symbol, inner, linear, multiply, normalized_linear, shift

# Decision guards for "ratio exceeds one": grid estimates are trusted to
# an absolute tolerance, Monte Carlo estimates carry a 4-sigma band so
# the boolean is stable across seeds.
GRID_DECISION_TOL = 1e-9
MC_SIGMA_GUARD = 4.0


def p_zero() -> float:
    """Critical exponent: the unique p with 2^(1/p) * sqrt(pi)/2 = 1."""
    return 1.0 / (1.0 - math.log(math.pi) / math.log(4.0))


def derive_seed(seed: int, *key: int) -> int:
    """Stable 128-bit sub-seed for stream (seed, key...)."""
    ss = np.random.SeedSequence(entropy=[int(seed), *[int(k) for k in key]])
    hi, lo = ss.generate_state(2, np.uint64)
    return (int(hi) << 64) | int(lo)


@dataclass(frozen=True)
class RatioReport:
    """The Nehari ratio of one (f, phi, p) triple and its three factors."""

    inner: complex
    schatten: float
    l1: NormEstimate
    ratio: float
    p: float
    d: int
    exceeded_one: bool
    note: str = ""

    def to_record(self) -> dict:
        return {
            "d": self.d,
            "p": self.p,
            "inner_abs": abs(self.inner),
            "schatten": self.schatten,
            "l1": self.l1.value,
            "l1_stderr": self.l1.stderr,
            "ratio": self.ratio,
            "exceeded_one": self.exceeded_one,
        }


def ratio(
    f: Symbol,
    phi: Symbol,
    p: float,
    method: str = "grid",
    *,
    tol: float = 1e-6,
    samples: int = 1_000_000,
    seed: int = 0,
    threads: int = 1,
    max_dim: int = DEFAULT_MAX_DIM,
) -> RatioReport:
    """Assemble the Nehari ratio from its three independently computed factors."""
    if not f or not phi:
        raise ValueError("f and phi must be nonzero symbols")
    if method not in ("grid", "mc"):
        raise ValueError(f"method must be 'grid' or 'mc', got {method!r}")
    inn = inner(f, phi)
    spectrum = singular_values(build_matrix(phi, max_dim=max_dim))
    s = schatten_norm(spectrum, p)
    if method == "grid":
        l1 = norm_grid(f, 1.0, tol)
    else:
        l1 = norm_mc(f, 1.0, samples, seed, threads=threads)
    r = abs(inn) / (s * l1.value)
    if method == "grid":
        exceeded = r > 1.0 + GRID_DECISION_TOL
        note = ""
    else:
        guarded = abs(inn) / (s * (l1.value + MC_SIGMA_GUARD * l1.stderr))
        exceeded = guarded > 1.0
        note = f"mc guard: |inner|/(schatten*(l1+{MC_SIGMA_GUARD:g}*stderr)) = {guarded:.9g}"
    return RatioReport(
        inner=inn,
        schatten=s,
        l1=l1,
        ratio=r,
        p=p,
        d=max(f.width, phi.width),
        exceeded_one=exceeded,
        note=note,
    )


def amplify(f: Symbol, phi: Symbol, m: int) -> tuple[Symbol, Symbol]:
    """Products of m copies shifted onto disjoint variable blocks.

    The shift step is max(width(f), width(phi)) so the copies never share
    a variable; then <F, Phi> = <f, phi>^m, the Schatten norm and the L^1
    norm both factor, and the ratio is raised to the m-th power.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    step = max(f.width, phi.width)
    big_f, big_phi = f, phi
    for j in range(1, m):
        big_f = multiply(big_f, shift(f, step * j))
        big_phi = multiply(big_phi, shift(phi, step * j))
    return big_f, big_phi


@dataclass(frozen=True)
class UniformLinearReport:
    """Spectrum/Schatten checks and the ratio for the uniform linear symbol."""

    d: int
    p: float
    spectrum: np.ndarray
    spectrum_ok: bool
    schatten: float
    schatten_expected: float
    schatten_ok: bool
    ratio_report: RatioReport

    @property
    def exceeded_one(self) -> bool:
        return self.ratio_report.exceeded_one

    def to_record(self) -> dict:
        rec = {
            "d": self.d,
            "p": self.p,
            "spectrum_ok": self.spectrum_ok,
            "schatten": self.schatten,
            "schatten_expected": self.schatten_expected,
            "schatten_ok": self.schatten_ok,
        }
        rec.update(self.ratio_report.to_record())
        return rec


def verify_uniform_linear(
    d: int,
    p: float,
    method: str = "grid",
    *,
    tol: float = 1e-6,
    samples: int = 1_000_000,
    seed: int = 0,
    threads: int = 1,
    spectrum_tol: float = 1e-10,
) -> UniformLinearReport:
    """Check the bordered-matrix facts for (z_1+...+z_d)/sqrt(d) at one p.

    The (d+1)x(d+1) block must have singular values {1, 1, 0, ...} and
    Schatten norm 2^(1/p); the report also carries the Nehari ratio of
    the symbol against itself.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    phi = normalized_linear(d)
    spectrum = singular_values(build_matrix(phi)).values
    expected = np.zeros(d + 1)
    expected[:2] = 1.0
    spectrum_ok = bool(np.max(np.abs(spectrum - expected)) <= spectrum_tol)
    s = schatten_norm(spectrum, p)
    s_expected = 2.0 ** (1.0 / p) if not math.isinf(p) else 1.0
    schatten_ok = bool(abs(s - s_expected) <= spectrum_tol)
    rep = ratio(phi, phi, p, method, tol=tol, samples=samples, seed=seed, threads=threads)
    return UniformLinearReport(
        d=d,
        p=p,
        spectrum=spectrum,
        spectrum_ok=spectrum_ok,
        schatten=s,
        schatten_expected=s_expected,
        schatten_ok=schatten_ok,
        ratio_report=rep,
    )


@dataclass(frozen=True)
class ScanResult:
    """Outcome of scanning widths for a guarded ratio above one."""

    p: float
    d_max: int
    method: str
    minimal_d: int | None
    reports: list[RatioReport] = field(default_factory=list)


def counterexample_scan(
    p: float,
    d_max: int,
    method: str = "mc",
    *,
    tol: float = 1e-6,
    samples: int = 1_000_000,
    seed: int = 0,
    threads: int = 1,
) -> ScanResult:
    """Scan d = 1..d_max for the first width whose guarded ratio exceeds 1.

    Each width draws from an independent stream derived from (seed, d).
    Returns minimal_d = None when no width qualifies, the expected outcome
    for p at or below the critical exponent.
    """
    if d_max < 1:
        raise ValueError("d_max must be >= 1")
    reports = []
    minimal = None
    for d in range(1, d_max + 1):
        phi = normalized_linear(d)
        rep = ratio(
            phi,
            phi,
            p,
            method,
            tol=tol,
            samples=samples,
            seed=derive_seed(seed, d) if method == "mc" else seed,
            threads=threads,
        )
        reports.append(rep)
        if rep.exceeded_one:
            minimal = d
            break
    return ScanResult(p=p, d_max=d_max, method=method, minimal_d=minimal, reports=reports)


@dataclass(frozen=True)
class LinearBoundReport:
    """The four-term bound chain for a pair of linear symbols at p <= p0.

    Quantities, largest to smallest when the claim holds:
      bound_schatten_l1   2^(1/p) ||a|| ||f||_1     (the Nehari bound)
      bound_khintchine    2^(1/p) ||a|| (sqrt(pi)/2) ||b||
      bound_cauchy_schwarz ||a|| ||b||
      inner_abs           |<f, phi>|
    """

    p: float
    a_l2: float
    b_l2: float
    schatten: float
    l1: NormEstimate
    bound_schatten_l1: float
    bound_khintchine: float
    bound_cauchy_schwarz: float
    inner_abs: float
    khintchine_ok: bool
    exponent_ok: bool
    cauchy_schwarz_ok: bool
    holds: bool

    def to_record(self) -> dict:
        return {
            "p": self.p,
            "a_l2": self.a_l2,
            "b_l2": self.b_l2,
            "schatten": self.schatten,
            "l1": self.l1.value,
            "bound_schatten_l1": self.bound_schatten_l1,
            "bound_khintchine": self.bound_khintchine,
            "bound_cauchy_schwarz": self.bound_cauchy_schwarz,
            "inner_abs": self.inner_abs,
            "khintchine_ok": self.khintchine_ok,
            "exponent_ok": self.exponent_ok,
            "cauchy_schwarz_ok": self.cauchy_schwarz_ok,
            "holds": self.holds,
        }


def verify_linear_bound(a, b, p: float, *, tol: float = 1e-6) -> LinearBoundReport:
    """Check |<f, phi>| <= ||H_phi||_{S_p} ||f||_1 for linear phi, f at p <= p0.

    phi has coefficients a, f has coefficients b.  The claim only holds
    for p up to the critical exponent, so larger p is rejected.  The
    chain is checked term by term with a small quadrature slack on the
    L^1 step.
    """
    a = np.asarray(list(a), dtype=np.complex128)
    b = np.asarray(list(b), dtype=np.complex128)
    if p > p_zero() * (1 + 1e-12):
        raise ValueError(f"the bound applies for p <= p0 = {p_zero():.9f}, got p = {p}")
    if len(a) > 3 or len(b) > 3:
        raise ValueError("grid path supports at most 3 variables")
    if not np.any(a) or not np.any(b):
        raise ValueError("coefficient vectors must be nonzero")
    phi = linear(a)
    f = linear(b)
    na = float(np.linalg.norm(a))
    nb = float(np.linalg.norm(b))
    s = schatten_norm(singular_values(build_matrix(phi)), p)
    l1 = norm_grid(f, 1.0, tol)
    two_p = 2.0 ** (1.0 / p)
    q1 = s * l1.value
    q2 = two_p * na * (math.sqrt(math.pi) / 2.0) * nb
    q3 = na * nb
    q4 = abs(inner(f, phi))
    slack = tol * max(q1, 1.0) + 1e-12
    return LinearBoundReport(
        p=p,
        a_l2=na,
        b_l2=nb,
        schatten=s,
        l1=l1,
        bound_schatten_l1=q1,
        bound_khintchine=q2,
        bound_cauchy_schwarz=q3,
        inner_abs=q4,
        khintchine_ok=q1 >= q2 - slack,
        exponent_ok=q2 >= q3 - 1e-12,
        cauchy_schwarz_ok=q3 >= q4 - 1e-12,
        holds=q4 <= q1 + slack,
    )
