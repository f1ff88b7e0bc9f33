"""Hot numeric kernels: pointwise Szego recursion on arrays of circle points.

Two implementations are provided: a numba ``@njit`` version and a pure
numpy fallback. Selection is made once at import time from the
``CIRCLEQUAD_NUMBA`` environment variable: set it to ``0`` to force the
numpy path; any other value (or unset) uses numba when it is importable.
"""

import os

import numpy as np


def szego_eval_numpy(deltas, z):
    """Evaluate (rho_k, rho_k*) at points ``z`` for k = len(deltas).

    ``deltas`` holds delta_1..delta_k; the recursion starts from
    rho_0 = rho_0* = 1 and applies rho_j = z rho_{j-1} + delta_j rho*_{j-1},
    rho*_j = conj(delta_j) z rho_{j-1} + rho*_{j-1}.
    """
    z = np.asarray(z, dtype=np.complex128)
    rho = np.ones_like(z)
    rho_star = np.ones_like(z)
    for d in deltas:
        zr = z * rho
        rho = zr + d * rho_star
        rho_star = np.conj(d) * zr + rho_star
    return rho, rho_star


_use_numba = os.environ.get("CIRCLEQUAD_NUMBA", "1") != "0"

if _use_numba:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover
        _use_numba = False

if _use_numba:

    @njit(cache=True)
    def _szego_eval_numba(deltas, z):
        m = z.shape[0]
        rho = np.ones(m, dtype=np.complex128)
        rho_star = np.ones(m, dtype=np.complex128)
        for d in deltas:
            dc = np.conj(d)
            for i in range(m):
                zr = z[i] * rho[i]
                new_rho = zr + d * rho_star[i]
                rho_star[i] = dc * zr + rho_star[i]
                rho[i] = new_rho
        return rho, rho_star

    def szego_eval(deltas, z):
        z = np.ascontiguousarray(np.atleast_1d(np.asarray(z, dtype=np.complex128)))
        deltas = np.ascontiguousarray(np.asarray(deltas, dtype=np.complex128))
        return _szego_eval_numba(deltas, z)

else:

    def szego_eval(deltas, z):
        z = np.atleast_1d(np.asarray(z, dtype=np.complex128))
        deltas = np.asarray(deltas, dtype=np.complex128)
        return szego_eval_numpy(deltas, z)


def using_numba() -> bool:
    return _use_numba


def blaschke_values(deltas, z):
    """F_n at array points: z * rho_{n-1}(z) / rho*_{n-1}(z), n = len(deltas)+1."""
    z = np.atleast_1d(np.asarray(z, dtype=np.complex128))
    rho, rho_star = szego_eval(deltas, z)
    return z * rho / rho_star
