"""Kernel backend selection: compiled extension if built, NumPy otherwise.

Both backends implement the same two-function contract; see _kernels_py.
The active backend's name is exposed as BACKEND ("compiled" or "python").
"""

try:
    from . import _kernels_c as _impl

    BACKEND = "compiled"
except ImportError:  # extension not built on this install
    from . import _kernels_py as _impl

    BACKEND = "python"

eval_terms = _impl.eval_terms
grid_abs_pow_mean = _impl.grid_abs_pow_mean


def available_backends() -> dict:
    """Importable backend modules keyed by name (for tests and benchmarks)."""
    from . import _kernels_py

    out = {"python": _kernels_py}
    try:
        from . import _kernels_c

        out["compiled"] = _kernels_c
    except ImportError:
        pass
    return out
