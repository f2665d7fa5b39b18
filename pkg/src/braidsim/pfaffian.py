"""Pfaffians of complex antisymmetric matrices.

Two independent O(n^3) routes: skew-symmetric Parlett-Reid elimination with
partial pivoting (the production path) and a unitary-Householder
tridiagonalization (cross-check).  pf(A)^2 = det(A) ties both to LAPACK.
"""

import numpy as np

from .constants import PFAFFIAN_ASYM_TOL


class PfaffianError(ValueError):
    pass


def _check_input(a, tol):
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise PfaffianError(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if n % 2:
        raise PfaffianError(f"Pfaffian requires even dimension, got {n}")
    scale = np.abs(a).max() if n else 0.0
    asym = np.abs(a + a.T).max() if n else 0.0
    if scale > 0 and asym > tol * max(scale, 1.0):
        raise PfaffianError(f"matrix is not antisymmetric: max|A+A^T| = {asym:.3e}")
    # work on the exactly antisymmetric part
    return 0.5 * (a - a.T).astype(complex), n


def pfaffian(a, tol=PFAFFIAN_ASYM_TOL):
    """Pfaffian via Parlett-Reid skew elimination with partial pivoting.

    Sign and phase are exact up to roundoff.  Raises PfaffianError on odd
    dimension or asymmetry beyond ``tol`` (relative to max|A|).
    """
    m, n = _check_input(a, tol)
    if n == 0:
        return complex(1.0)
    if n == 2:
        return complex(m[0, 1])
    pf = 1.0 + 0.0j
    for k in range(0, n - 2, 2):
        # pivot: largest |m[j, k]| for j > k
        col = np.abs(m[k + 1:, k])
        j = k + 1 + int(np.argmax(col))
        if col[j - k - 1] == 0.0:
            return complex(0.0)
        if j != k + 1:
            m[[k + 1, j], :] = m[[j, k + 1], :]
            m[:, [k + 1, j]] = m[:, [j, k + 1]]
            pf = -pf
        piv = m[k + 1, k]
        pf *= -piv  # contributes the superdiagonal entry m[k, k+1]
        # eliminate column k below row k+1 (and symmetrically)
        tau = m[k + 2:, k] / piv
        if tau.size:
            v = m[k + 2:, k + 1]
            # rank-two antisymmetric update: rows/cols k+2.. -= tau * row(k+1)
            m[k + 2:, k + 2:] += np.outer(tau, v) - np.outer(v, tau)
        m[k + 1:, k] = 0.0
        m[k, k + 1:] = 0.0
        m[k + 2:, k + 1] = 0.0
        m[k + 1, k + 2:] = 0.0
    return complex(pf * m[n - 2, n - 1])


def pfaffian_householder(a, tol=PFAFFIAN_ASYM_TOL):
    """Pfaffian via tridiagonalization with unitary Householder congruences.

    Uses A -> P A P^T with Hermitian unitary reflectors P (det = -1), so
    pf(A) = pf(T) / prod(det P).  Independent of the Parlett-Reid route.
    """
    m, n = _check_input(a, tol)
    if n == 0:
        return complex(1.0)
    if n == 2:
        return complex(m[0, 1])
    det_q = 1.0 + 0.0j
    for k in range(n - 2):
        x = m[k + 1:, k].copy()
        nx = np.linalg.norm(x)
        if nx == 0.0:
            return complex(0.0)
        v = x.copy()
        # phase-aware shift keeps the reflector well conditioned
        alpha = np.exp(1j * np.angle(x[0])) * nx if x[0] != 0 else nx
        v[0] += alpha
        nv2 = np.vdot(v, v).real
        if nv2 == 0.0:
            continue
        # congruence A -> P A P^T with Hermitian unitary P = I - 2 v v^dag/|v|^2
        # (P^T = conj(P)); applied to the trailing block and the k-th row/col
        w = m[k + 1:, k]
        pw = w - (2.0 / nv2) * v * np.vdot(v, w)
        m[k + 1:, k] = pw
        m[k, k + 1:] = -pw
        sub = m[k + 1:, k + 1:]
        sub = sub - (2.0 / nv2) * np.outer(v, v.conj() @ sub)
        sub = sub - (2.0 / nv2) * np.outer(sub @ v.conj(), v)
        m[k + 1:, k + 1:] = 0.5 * (sub - sub.T)
        det_q *= -1.0
    pf_t = np.prod(m[np.arange(0, n, 2), np.arange(1, n, 2)])
    return complex(pf_t / det_q)
