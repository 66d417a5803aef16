# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled evaluation kernels: batched sparse-polynomial evaluation and
tensor-grid power means.  Same contract as _kernels_py."""

import numpy as np

from libc.math cimport pow, sqrt


cdef inline double complex cpow_int(double complex base, long long e) nogil:
    cdef double complex r = 1.0
    while e > 0:
        if e & 1:
            r = r * base
        base = base * base
        e >>= 1
    return r


def eval_terms(expts, coeffs, z):
    """Evaluate sum_t coeffs[t] * prod_v z[:, v]**expts[t, v] per row of z."""
    E_np = np.ascontiguousarray(expts, dtype=np.int64)
    cdef double complex[::1] C = np.ascontiguousarray(coeffs, dtype=np.complex128)
    cdef double complex[:, ::1] Z = np.ascontiguousarray(z, dtype=np.complex128)
    cdef Py_ssize_t n = Z.shape[0], T = E_np.shape[0]
    if Z.shape[1] != E_np.shape[1]:
        raise ValueError("z width does not match the exponent matrix")
    # sparse view of the exponent rows: iterate nonzero entries only
    rows, cols = np.nonzero(E_np)
    cdef long long[::1] ptr = np.searchsorted(
        rows, np.arange(T + 1), side="left"
    ).astype(np.int64)
    cdef long long[::1] var = cols.astype(np.int64)
    cdef long long[::1] exp = E_np[rows, cols].astype(np.int64)
    out = np.zeros(n, dtype=np.complex128)
    cdef double complex[::1] O = out
    cdef Py_ssize_t i, t, k
    cdef long long e
    cdef double complex acc, prod
    with nogil:
        for i in range(n):
            acc = 0.0
            for t in range(T):
                prod = C[t]
                for k in range(ptr[t], ptr[t + 1]):
                    e = exp[k]
                    if e == 1:
                        prod = prod * Z[i, var[k]]
                    else:
                        prod = prod * cpow_int(Z[i, var[k]], e)
                acc = acc + prod
            O[i] = acc
    return out


def grid_abs_pow_mean(expts, coeffs, Py_ssize_t n_nodes, double q):
    """Mean of |f|^q over the uniform tensor grid with n_nodes per axis."""
    E_np = np.ascontiguousarray(expts, dtype=np.int64)
    C_np = np.ascontiguousarray(coeffs, dtype=np.complex128)
    cdef Py_ssize_t T = E_np.shape[0], W = E_np.shape[1]
    if T == 0:
        return 0.0
    if W == 0:
        return float(abs(C_np.sum()) ** q)
    if n_nodes < 1:
        raise ValueError("n_nodes must be >= 1")
    omega = np.exp(2j * np.pi * np.arange(n_nodes) / n_nodes)
    cdef double complex[:, :, ::1] P = np.ascontiguousarray(
        omega[None, None, :] ** E_np[:, :, None]
    )
    cdef double complex[::1] C = C_np
    cdef double complex[::1] pref = np.empty(T, dtype=np.complex128)
    cdef Py_ssize_t M = 1
    cdef Py_ssize_t i
    for i in range(W - 1):
        M *= n_nodes
    cdef Py_ssize_t m, rem, k, t, v
    cdef double total = 0.0, sub, re, im
    cdef double complex val
    with nogil:
        for m in range(M):
            for t in range(T):
                pref[t] = C[t]
            rem = m
            for v in range(W - 2, -1, -1):
                k = rem % n_nodes
                rem = rem // n_nodes
                for t in range(T):
                    pref[t] = pref[t] * P[t, v, k]
            sub = 0.0
            for k in range(n_nodes):
                val = 0.0
                for t in range(T):
                    val = val + pref[t] * P[t, W - 1, k]
                re = val.real
                im = val.imag
                if q == 1.0:
                    sub += sqrt(re * re + im * im)
                elif q == 2.0:
                    sub += re * re + im * im
                else:
                    sub += pow(re * re + im * im, 0.5 * q)
            total += sub
    return total / (<double> M * <double> n_nodes)
