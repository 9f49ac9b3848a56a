"""Dense complex matrix algebra for small Hilbert spaces.

Everything operates on plain complex128 numpy arrays and stays dense: the
package never sees a dimension above 64, so full eigendecompositions are
always the right tool. All functions are pure and never mutate their inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    NoConvergence,
    NotHermitian,
    NotPSD,
    NotSymmetric,
)

HERM_RTOL = 1e-12
PSD_TOL = 1e-9
RECON_RTOL = 1e-10

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=np.complex128)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=np.complex128)
PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)


def as_matrix(a) -> np.ndarray:
    """Coerce to a finite complex128 2-d array."""
    arr = np.asarray(a, dtype=np.complex128)
    if arr.ndim != 2:
        raise DimensionMismatch(f"expected a 2-d matrix, got ndim={arr.ndim}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix contains non-finite entries")
    return arr


def frob(a: np.ndarray) -> float:
    return float(np.linalg.norm(a))


def dagger(a: np.ndarray) -> np.ndarray:
    return a.conj().T


def is_hermitian(a: np.ndarray, rtol: float = HERM_RTOL) -> bool:
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        return False
    return frob(a - dagger(a)) <= rtol * max(1e-300, frob(a))


def _require_square_hermitian(a: np.ndarray, rtol: float = HERM_RTOL) -> np.ndarray:
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise NotHermitian(f"matrix is not square: shape {a.shape}")
    if frob(a - dagger(a)) > rtol * max(1e-300, frob(a)):
        raise NotHermitian("matrix is not Hermitian within tolerance")
    return a


@dataclass(frozen=True)
class EigenResult:
    """Hermitian eigendecomposition: ascending eigenvalues, orthonormal columns."""

    values: np.ndarray
    vectors: np.ndarray


def hermitian_eig(a) -> EigenResult:
    """Eigendecomposition of a Hermitian matrix.

    Returns ascending real eigenvalues and a unitary matrix whose columns are
    the corresponding eigenvectors; V diag(w) V^dag reconstructs the input to
    working precision.
    """
    a = _require_square_hermitian(a)
    try:
        w, v = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NoConvergence(f"Hermitian eigensolver failed: {exc}") from exc
    return EigenResult(values=w, vectors=v)


def min_eigenvalue(a) -> float:
    """Smallest eigenvalue of a Hermitian matrix."""
    return float(hermitian_eig(a).values[0])


def kron(a, b) -> np.ndarray:
    """Kronecker product A (x) B."""
    return np.kron(as_matrix(a), as_matrix(b))


def partial_transpose(rho, dims, subsystem: str = "B") -> np.ndarray:
    """Partial transpose of a bipartite matrix on subsystem "A" or "B".

    `dims` is the pair (dA, dB); the matrix must be square of size dA*dB.
    The operation is an involution and preserves trace and Hermiticity.
    """
    rho = as_matrix(rho)
    da, db = int(dims[0]), int(dims[1])
    n = da * db
    if rho.shape != (n, n):
        raise DimensionMismatch(
            f"matrix shape {rho.shape} does not match dims {da}x{db}"
        )
    r = rho.reshape(da, db, da, db)
    if subsystem == "B":
        r = r.transpose(0, 3, 2, 1)
    elif subsystem == "A":
        r = r.transpose(2, 1, 0, 3)
    else:
        raise ValueError(f"subsystem must be 'A' or 'B', got {subsystem!r}")
    return r.reshape(n, n).copy()


def is_psd(a, tol: float = PSD_TOL) -> bool:
    """True iff the Hermitian matrix has min eigenvalue >= -tol*max(1, ||A||_F)."""
    a = _require_square_hermitian(a)
    scale = max(1.0, frob(a))
    return float(np.linalg.eigvalsh(a)[0]) >= -tol * scale


def pinv_sqrt(a, tol: float = PSD_TOL) -> np.ndarray:
    """A^(-1/2) on the support of a PSD matrix.

    Eigenvalues <= tol are treated as zero, so the result satisfies
    A^(-1/2) A A^(-1/2) = P_support. Raises NotPSD when the smallest
    eigenvalue is below -tol*max(1, ||A||_F).
    """
    res = hermitian_eig(a)
    scale = max(1.0, frob(a))
    if res.values[0] < -tol * scale:
        raise NotPSD(f"matrix has eigenvalue {res.values[0]:.3e} below -tol")
    inv = np.where(res.values > tol, 1.0 / np.sqrt(np.maximum(res.values, tol)), 0.0)
    out = (res.vectors * inv) @ dagger(res.vectors)
    return 0.5 * (out + dagger(out))


def psd_sqrt(a, tol: float = PSD_TOL) -> np.ndarray:
    """Principal square root of a PSD matrix (negative noise clipped to 0)."""
    res = hermitian_eig(a)
    scale = max(1.0, frob(a))
    if res.values[0] < -tol * scale:
        raise NotPSD(f"matrix has eigenvalue {res.values[0]:.3e} below -tol")
    root = np.sqrt(np.maximum(res.values, 0.0))
    out = (res.vectors * root) @ dagger(res.vectors)
    return 0.5 * (out + dagger(out))


def swap_operator(d: int) -> np.ndarray:
    """Flip operator F = sum_ij |ij><ji| on C^d (x) C^d."""
    f = np.zeros((d * d, d * d), dtype=np.complex128)
    for i in range(d):
        for j in range(d):
            f[i * d + j, j * d + i] = 1.0
    return f


def _orthonormal_completion(cols: np.ndarray, n: int, k: int) -> np.ndarray:
    """k orthonormal columns spanning the orthocomplement of `cols` in C^n."""
    if cols.shape[1] == 0:
        return np.eye(n, dtype=np.complex128)[:, :k]
    proj = np.eye(n, dtype=np.complex128) - cols @ dagger(cols)
    u, _, _ = np.linalg.svd(proj)
    return u[:, :k]


def takagi_factorize(s) -> tuple[np.ndarray, np.ndarray]:
    """Takagi factorization of a complex symmetric matrix.

    Returns (U, d) with U unitary and d real, nonnegative, descending such
    that U S U^T = diag(d). Works through the real symmetric embedding
    [[Re S, Im S], [Im S, -Re S]]: its eigenpairs with eigenvalue +s yield
    con-eigenvectors w with S conj(w) = s w, which are automatically
    orthonormal for s > 0; the null block is completed explicitly.
    """
    s = as_matrix(s)
    n = s.shape[0]
    if s.shape[0] != s.shape[1]:
        raise NotSymmetric(f"matrix is not square: shape {s.shape}")
    scale = max(1.0, frob(s))
    if frob(s - s.T) > 1e-12 * scale:
        raise NotSymmetric("matrix is not complex symmetric within tolerance")

    x, y = s.real, s.imag
    t = np.block([[x, y], [y, -x]])
    try:
        w, q = np.linalg.eigh(t)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NoConvergence(f"Takagi embedding eigensolver failed: {exc}") from exc

    order = np.argsort(w)[::-1][:n]
    d = w[order].copy()
    cols = q[:, order]
    wvecs = cols[:n, :] + 1.0j * cols[n:, :]

    cut = 1e-12 * scale
    pos = d > cut
    if not np.all(pos):
        # con-eigenvectors for s ~ 0 are not reliably orthonormal; rebuild
        # the null block as an orthonormal completion of the positive one.
        k = int(n - np.count_nonzero(pos))
        wvecs[:, ~pos] = _orthonormal_completion(wvecs[:, pos], n, k)
        d[~pos] = np.maximum(d[~pos], 0.0)

    u = dagger(wvecs)
    return u, d
