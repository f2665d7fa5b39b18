"""Numba-fused CSR Chebyshev propagation kernel.

Falls back to the scipy path transparently when numba is unavailable.
"""

import numpy as np

try:
    import numba

    @numba.njit(parallel=True, fastmath=True, cache=True)
    def _csr_diag_matvec(data, indices, indptr, diag, x, out, scale):
        n2, m = x.shape
        for i in numba.prange(n2):
            row = out[i]
            xi = x[i]
            d = diag[i]
            for j in range(m):
                row[j] = d * xi[j]
            for p in range(indptr[i], indptr[i + 1]):
                v = data[p]
                xr = x[indices[p]]
                for j in range(m):
                    row[j] += v * xr[j]
            for j in range(m):
                row[j] *= scale

    @numba.njit(parallel=True, fastmath=True, cache=True)
    def _cheb_update(out, y2, y0, c):
        # y2 <- y2 - y0 (finishing the recursion) and out += c * y2
        n2, m = out.shape
        for i in numba.prange(n2):
            for j in range(m):
                v = y2[i, j] - y0[i, j]
                y2[i, j] = v
                out[i, j] += c * v

    def cheb_expm_action(data, indices, indptr, diag, x, rho, coeffs):
        """sum_k c_k T_k(H / rho) @ x with H = CSR(static) + diag."""
        x = np.ascontiguousarray(x, dtype=np.complex128)
        diag = np.ascontiguousarray(diag, dtype=np.complex128)
        y0 = x.copy()
        y1 = np.empty_like(x)
        _csr_diag_matvec(data, indices, indptr, diag, x, y1, 1.0 / rho)
        out = coeffs[0] * y0 + coeffs[1] * y1
        y2 = np.empty_like(x)
        for k in range(2, len(coeffs)):
            _csr_diag_matvec(data, indices, indptr, diag, y1, y2, 2.0 / rho)
            _cheb_update(out, y2, y0, coeffs[k])
            y0, y1, y2 = y1, y2, y0
        return out

    HAVE_NUMBA = True
except Exception:   # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False
    cheb_expm_action = None
