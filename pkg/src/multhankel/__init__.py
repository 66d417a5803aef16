"""Multiplicative Hankel forms on the infinite polytorus.

Polynomial symbols in countably many variables, their exact finite
Hankel matrices, Schatten norms, polytorus L^q norms (tensor quadrature
and Steinhaus Monte Carlo), and the Nehari-ratio machinery that witnesses
forms whose ratio exceeds any uniform bound under disjoint-variable
amplification.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .bohr_lift import PrimeTable, factorize, label, nth_primes, shift_multiindex
from .errors import (
    ComputationError,
    MatrixTooLarge,
    NoConvergence,
    NonFinite,
    OverflowLabel,
    WidthTooLarge,
)
from .hankel import HankelMatrix, build_matrix, form_apply, support_closure
from .integrals import NormEstimate, norm_grid, norm_mc
from .nehari import (
    RatioReport,
    amplify,
    counterexample_scan,
    p_zero,
    ratio,
    verify_linear_bound,
    verify_uniform_linear,
)
from .search import SearchResult, maximize_ratio_linear
from .spectra import SingularSpectrum, schatten_norm, singular_values
from .symbols import (
    Symbol,
    from_records,
    inner,
    linear,
    multiply,
    normalized_linear,
    shift,
    to_records,
)

__version__ = "0.1.0"

__all__ = [
    "KERNEL_BACKEND",
    "PrimeTable",
    "factorize",
    "label",
    "nth_primes",
    "shift_multiindex",
    "ComputationError",
    "MatrixTooLarge",
    "NoConvergence",
    "NonFinite",
    "OverflowLabel",
    "WidthTooLarge",
    "HankelMatrix",
    "build_matrix",
    "form_apply",
    "support_closure",
    "NormEstimate",
    "norm_grid",
    "norm_mc",
    "RatioReport",
    "amplify",
    "counterexample_scan",
    "p_zero",
    "ratio",
    "verify_linear_bound",
    "verify_uniform_linear",
    "SearchResult",
    "maximize_ratio_linear",
    "SingularSpectrum",
    "schatten_norm",
    "singular_values",
    "Symbol",
    "from_records",
    "inner",
    "linear",
    "multiply",
    "normalized_linear",
    "shift",
    "to_records",
    "__version__",
]
