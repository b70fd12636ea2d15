"""Eigenvalue routines, written out rather than delegated.

Three independent routes, so spectra can be cross-checked solver
against solver:

* circulant route: a symmetric circulant is diagonalized by the
  discrete Fourier basis, so each eigenvalue is a cosine sum over the
  first row; evaluated with a trig recurrence, no FFT needed (an FFT
  backend exists for speed comparisons only).
* dense route: Householder reduction to tridiagonal form followed by
  the implicit-shift QL iteration.
* Jacobi route: cyclic Jacobi rotations, kept for small matrices as a
  slow oracle with different roundoff behavior.

Convergence failures raise ConvergenceError and identify the matrix
by a content hash so the offending input can be replayed.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass

import numpy as np
from numba import njit, prange

from .errors import CapabilityError, ConvergenceError, DomainError

QL_MAX_SWEEPS = 60
JACOBI_MAX_N = 512
JACOBI_MAX_SWEEPS = 40
_COS_RESYNC = 256  # recurrence steps between exact cosine re-evaluations


@dataclass
class Spectrum:
    """Eigenvalues sorted ascending, with the route that produced them."""

    values: np.ndarray
    n: int
    provenance: str


def _as_full(m) -> np.ndarray:
    if isinstance(m, np.ndarray):
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DomainError("matrix must be square")
        return np.array(m, dtype=np.float64)
    if hasattr(m, "full"):
        return np.asarray(m.full(), dtype=np.float64)
    raise DomainError(f"cannot interpret {type(m).__name__} as a symmetric matrix")


def _content_hash(a: np.ndarray) -> str:
    return hashlib.sha1(np.ascontiguousarray(a).tobytes()).hexdigest()[:12]


@njit(cache=True, parallel=True)
def _cosine_eigenvalues(row, n):
    # lambda_k = row[0] + 2 * sum_{j=1}^{(n-1)//2} row[j] cos(2 pi j k / n)
    #            (+ row[n/2] * (-1)^k when n is even)
    # Palindromy gives lambda_{n-k} = lambda_k, so only k <= n//2 is summed.
    half = (n - 1) // 2
    lam = np.empty(n)
    for k in prange(n // 2 + 1):
        theta = 2.0 * math.pi * k / n
        two_cos = 2.0 * math.cos(theta)
        c_prev = 1.0
        c_cur = math.cos(theta)
        acc = row[0]
        for j in range(1, half + 1):
            if j % _COS_RESYNC == 0:
                c_cur = math.cos(j * theta)
                c_prev = math.cos((j - 1) * theta)
            acc += 2.0 * row[j] * c_cur
            c_next = two_cos * c_cur - c_prev
            c_prev = c_cur
            c_cur = c_next
        if n % 2 == 0:
            acc += row[n // 2] * (1.0 if k % 2 == 0 else -1.0)
        lam[k] = acc
        if k != 0 and k != n - k:
            lam[n - k] = acc
    return lam


def circulant_eigenvalues(c, backend: str = "cosine") -> Spectrum:
    """Spectrum of a symmetric circulant from its first row.

    The row must be palindromic apart from index 0; otherwise the
    circulant is not symmetric and the cosine sums would silently drop
    its imaginary parts.
    """
    row = np.asarray(c.first_row, dtype=np.float64)
    n = c.n
    if len(row) != n:
        raise DomainError("first row length disagrees with declared dimension")
    if n > 1 and not np.array_equal(row[1:], row[:0:-1]):
        raise DomainError("first row is not palindromic; circulant is not symmetric")
    if backend == "cosine":
        lam = _cosine_eigenvalues(row, n)
    elif backend == "fft":
        lam = np.fft.fft(row).real
    else:
        raise DomainError(f"unknown backend {backend!r}")
    return Spectrum(values=np.sort(c.scale * lam), n=n, provenance=f"circulant-{backend}")


@njit(cache=True, parallel=True)
def _householder_tridiag(A):
    # Symmetric Householder reduction, eigenvalues only: for each
    # column build the reflector v, then apply the rank-2 update
    # B -= 2 (v w^T + w v^T) with w = Bv - (v^T B v) v.
    n = A.shape[0]
    e = np.zeros(n - 1) if n > 1 else np.zeros(0)
    v = np.empty(n)
    p = np.empty(n)
    for k in range(n - 2):
        m = n - k - 1
        norm2 = 0.0
        for i in range(m):
            v[i] = A[k + 1 + i, k]
            norm2 += v[i] * v[i]
        if norm2 == 0.0:
            e[k] = 0.0
            continue
        norm = math.sqrt(norm2)
        alpha = -norm if v[0] >= 0.0 else norm
        v[0] -= alpha
        vnorm = math.sqrt(2.0 * (norm2 - A[k + 1, k] * alpha))
        for i in range(m):
            v[i] /= vnorm
        for i in prange(m):
            acc = 0.0
            for j in range(m):
                acc += A[k + 1 + i, k + 1 + j] * v[j]
            p[i] = acc
        K = 0.0
        for i in range(m):
            K += v[i] * p[i]
        for i in range(m):
            p[i] -= K * v[i]  # p becomes w
        for i in prange(m):
            vi = v[i]
            wi = p[i]
            for j in range(m):
                A[k + 1 + i, k + 1 + j] -= 2.0 * (vi * p[j] + wi * v[j])
        e[k] = alpha
    if n > 1:
        e[n - 2] = A[n - 1, n - 2]
    d = np.empty(n)
    for i in range(n):
        d[i] = A[i, i]
    return d, e


@njit(cache=True)
def _ql_implicit_shift(d, e, max_sweeps):
    # Implicit-shift QL on (d, e); e is length n with e[n-1] = 0.
    # Returns 0 on success, 1-based index of the stuck eigenvalue on
    # sweep exhaustion.
    n = d.shape[0]
    eps = 2.3e-16
    for l in range(n):
        sweeps = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= eps * dd:
                    break
                m += 1
            if m == l:
                break
            sweeps += 1
            if sweeps > max_sweeps:
                return l + 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            sg = r if g >= 0.0 else -r
            g = d[m] - d[l] + e[l] / (g + sg)
            s = 1.0
            c = 1.0
            p = 0.0
            underflow = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return 0


def _run_ql(d: np.ndarray, e: np.ndarray, source: np.ndarray, provenance: str) -> Spectrum:
    n = len(d)
    work_e = np.zeros(n)
    work_e[: len(e)] = e
    code = _ql_implicit_shift(d, work_e, QL_MAX_SWEEPS)
    if code:
        raise ConvergenceError(
            f"QL exceeded {QL_MAX_SWEEPS} sweeps at index {code - 1} "
            f"(matrix {_content_hash(source)})"
        )
    return Spectrum(values=np.sort(d), n=n, provenance=provenance)


def dense_sym_eigenvalues(m) -> Spectrum:
    """Spectrum of a dense symmetric matrix: Householder reduction to
    tridiagonal form, then implicit-shift QL."""
    A = _as_full(m)
    n = A.shape[0]
    source = A.copy()
    if n == 1:
        return Spectrum(values=A[0, :1].copy(), n=1, provenance="householder-ql")
    d, e = _householder_tridiag(A)
    return _run_ql(d, e, source, "householder-ql")


def tridiag_eigenvalues(t, scale: float = 1.0) -> Spectrum:
    """Spectrum of a symmetric tridiagonal matrix via implicit-shift QL.
    scale multiplies the entries first (families that defer their
    normalization to spectrum time pass it here)."""
    d = np.asarray(t.diag, dtype=np.float64) * scale
    e = np.asarray(t.subdiag, dtype=np.float64) * scale
    if len(e) != len(d) - 1:
        raise DomainError("subdiagonal must be one shorter than diagonal")
    return _run_ql(d.copy(), e, np.concatenate([d, e]), "tridiag-ql")


@njit(cache=True)
def _jacobi(A, max_sweeps, tol):
    n = A.shape[0]
    for sweep in range(max_sweeps):
        off = 0.0
        for i in range(n - 1):
            for j in range(i + 1, n):
                off += A[i, j] * A[i, j]
        if math.sqrt(2.0 * off) <= tol:
            return sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp = A[k, p]
                    akq = A[k, q]
                    A[k, p] = c * akp - s * akq
                    A[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = A[p, k]
                    aqk = A[q, k]
                    A[p, k] = c * apk - s * aqk
                    A[q, k] = s * apk + c * aqk
    return -1


def jacobi_eigenvalues(m) -> Spectrum:
    """Cyclic Jacobi oracle.  Quadratic per sweep and dense, so capped
    at n <= 512; meant for cross-checking the fast routes, not for
    production spectra."""
    A = _as_full(m)
    n = A.shape[0]
    if n > JACOBI_MAX_N:
        raise CapabilityError(f"Jacobi oracle capped at n <= {JACOBI_MAX_N}, got {n}")
    source = A.copy()
    tol = 1e-12 * max(1.0, float(np.linalg.norm(A)))
    sweeps = _jacobi(A, JACOBI_MAX_SWEEPS, tol)
    if sweeps < 0:
        raise ConvergenceError(
            f"Jacobi exceeded {JACOBI_MAX_SWEEPS} sweeps (matrix {_content_hash(source)})"
        )
    return Spectrum(values=np.sort(np.diag(A)), n=n, provenance="jacobi")
