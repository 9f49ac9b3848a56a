"""Constructors for the supported density-matrix families.

Basis conventions, fixed once for the whole package:

* 2 (x) 2 systems use the computational product order |00>, |01>, |10>, |11>
  (spin-up maps to 0).
* 2 (x) 3 and 3 (x) 3 systems use 1-indexed kets |ab> mapped row-major to the
  0-indexed position (a-1)*dB + (b-1).

Every constructor returns a validated :class:`DensityMatrix`; constructors
build states from projectors of explicit unit vectors so positivity holds by
construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from . import matcore
from .errors import (
    DimensionTooLarge,
    InvalidProbabilities,
    LsdError,
    ParamOutOfRange,
    RawValidationFailed,
    ThetaOutOfRange,
)

PROB_SUM_TOL = 1e-9
PROB_ENTRY_TOL = 1e-12


@dataclass(frozen=True)
class DensityMatrix:
    """A Hermitian, unit-trace, PSD matrix with a subsystem-dimension signature."""

    mat: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        mat = matcore.as_matrix(self.mat)
        dims = tuple(int(d) for d in self.dims)
        size = 1
        for d in dims:
            if d < 1:
                raise ValueError(f"invalid subsystem dimension {d}")
            size *= d
        if mat.shape != (size, size):
            raise ValueError(
                f"matrix shape {mat.shape} does not match dims {dims}"
            )
        if not matcore.is_hermitian(mat):
            raise ValueError("density matrix is not Hermitian within 1e-12")
        tr = complex(np.trace(mat))
        if abs(tr - 1.0) > 1e-12:
            raise ValueError(f"trace is {tr:.15g}, expected 1 within 1e-12")
        if not matcore.is_psd(mat):
            raise ValueError("density matrix is not PSD within tolerance")
        mat = mat.copy()
        mat.setflags(write=False)
        object.__setattr__(self, "mat", mat)
        object.__setattr__(self, "dims", dims)

    @property
    def size(self) -> int:
        return self.mat.shape[0]


# --------------------------------------------------------------------------
# family parameter records (a tagged union; `build` dispatches on the type)

@dataclass(frozen=True)
class BD22:
    p: tuple[float, float, float, float]


@dataclass(frozen=True)
class ICD:
    theta: float
    p: tuple[float, float, float, float]


@dataclass(frozen=True)
class BD23:
    p: tuple[float, float, float, float, float, float]


@dataclass(frozen=True)
class Werner:
    d: int
    f: float


@dataclass(frozen=True)
class Isotropic:
    d: int
    F: float


@dataclass(frozen=True)
class Horodecki33:
    alpha: float


@dataclass(frozen=True)
class MultiIso:
    d: int
    n: int
    s: float


@dataclass(frozen=True, eq=False)
class Raw:
    dims: tuple[int, ...]
    matrix: np.ndarray = field(repr=False)


StateSpec = Union[BD22, ICD, BD23, Werner, Isotropic, Horodecki33, MultiIso, Raw]


def clean_probabilities(p, n: int) -> np.ndarray:
    """Validate an n-point probability vector; renormalize rounding noise.

    Entries must lie in [0, 1] and sum to 1 within 1e-9; the vector is then
    renormalized exactly. Worse violations raise InvalidProbabilities.
    """
    arr = np.asarray(p, dtype=float)
    if arr.shape != (n,):
        raise InvalidProbabilities(f"expected {n} probabilities, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidProbabilities("probabilities contain non-finite entries")
    if np.any(arr < -PROB_ENTRY_TOL) or np.any(arr > 1.0 + PROB_ENTRY_TOL):
        raise InvalidProbabilities(f"probabilities outside [0, 1]: {arr}")
    total = float(arr.sum())
    if abs(total - 1.0) > PROB_SUM_TOL:
        raise InvalidProbabilities(f"probabilities sum to {total:.12g}, not 1")
    return np.clip(arr, 0.0, None) / total


# --------------------------------------------------------------------------
# basis vectors

def bell_basis_22() -> np.ndarray:
    """The four 2-qubit Bell vectors as rows: phi+, phi-, psi+, psi-."""
    s = 1.0 / math.sqrt(2.0)
    return np.array(
        [
            [s, 0, 0, s],
            [s, 0, 0, -s],
            [0, s, s, 0],
            [0, s, -s, 0],
        ],
        dtype=np.complex128,
    )


def iso_basis(theta: float) -> np.ndarray:
    """Orthonormal partially entangled basis interpolating to Bell at theta=pi/4."""
    c, s = math.cos(theta), math.sin(theta)
    return np.array(
        [
            [c, 0, 0, s],
            [s, 0, 0, -c],
            [0, c, s, 0],
            [0, s, -c, 0],
        ],
        dtype=np.complex128,
    )


def bell_basis_23() -> np.ndarray:
    """The six maximally entangled 2x3 basis vectors as rows.

    Pairs live on the ket pairs (|11>,|22>), (|12>,|23>), (|13>,|21>) with
    +/- relative phase inside each pair.
    """
    s = 1.0 / math.sqrt(2.0)
    vecs = np.zeros((6, 6), dtype=np.complex128)
    pairs = [(0, 4), (1, 5), (2, 3)]  # (a-1)*3+(b-1) of |11>/|22>, |12>/|23>, |13>/|21>
    for k, (i, j) in enumerate(pairs):
        vecs[2 * k, i] = s
        vecs[2 * k, j] = s
        vecs[2 * k + 1, i] = s
        vecs[2 * k + 1, j] = -s
    return vecs


def max_entangled(d: int, n: int = 2) -> np.ndarray:
    """|psi+> = d^{-1/2} sum_i |ii...i> on n parties of dimension d."""
    v = np.zeros(d**n, dtype=np.complex128)
    step = (d**n - 1) // (d - 1)
    v[::step] = 1.0 / math.sqrt(d)
    return v


def bd22_correlation(p) -> tuple[float, float, float]:
    """Correlation vector (t1, t2, t3) of a Bell-diagonal 2-qubit state."""
    p = clean_probabilities(p, 4)
    t1 = p[0] - p[1] + p[2] - p[3]
    t2 = -p[0] + p[1] + p[2] - p[3]
    t3 = p[0] + p[1] - p[2] - p[3]
    return float(t1), float(t2), float(t3)


# --------------------------------------------------------------------------
# constructors

def _mixture(vectors: np.ndarray, weights: np.ndarray, dims) -> DensityMatrix:
    mat = np.einsum("i,ij,ik->jk", weights, vectors, vectors.conj())
    return DensityMatrix(mat=mat, dims=tuple(dims))


def make_bd22(p) -> DensityMatrix:
    """Bell-diagonal 2-qubit state sum_i p_i |psi_i><psi_i|."""
    p = clean_probabilities(p, 4)
    return _mixture(bell_basis_22(), p, (2, 2))


def make_icd(theta: float, p) -> DensityMatrix:
    """Iso-concurrence 2-qubit state; theta in (0, pi/2), Bell case at pi/4."""
    theta = float(theta)
    if not (0.0 < theta < math.pi / 2):
        raise ThetaOutOfRange(f"theta must lie strictly in (0, pi/2), got {theta}")
    p = clean_probabilities(p, 4)
    return _mixture(iso_basis(theta), p, (2, 2))


def make_bd23(p) -> DensityMatrix:
    """Bell-diagonal 2x3 state on the six-vector basis."""
    p = clean_probabilities(p, 6)
    return _mixture(bell_basis_23(), p, (2, 3))


def make_werner(d: int, f: float) -> DensityMatrix:
    """Werner state ((d-f)I + (df-1)F) / (d^3-d), f in [-1, 1]."""
    d = int(d)
    f = float(f)
    if d < 2:
        raise ParamOutOfRange(f"Werner dimension must be >= 2, got {d}")
    if not (-1.0 - 1e-12 <= f <= 1.0 + 1e-12):
        raise ParamOutOfRange(f"Werner parameter f={f} outside [-1, 1]")
    f = min(1.0, max(-1.0, f))
    eye = np.eye(d * d, dtype=np.complex128)
    flip = matcore.swap_operator(d)
    mat = ((d - f) * eye + (d * f - 1.0) * flip) / (d**3 - d)
    return DensityMatrix(mat=mat, dims=(d, d))


def make_isotropic(d: int, fidelity: float) -> DensityMatrix:
    """Isotropic state with fidelity F = <psi+|rho|psi+>, F in [0, 1]."""
    d = int(d)
    fidelity = float(fidelity)
    if d < 2:
        raise ParamOutOfRange(f"isotropic dimension must be >= 2, got {d}")
    if not (-1e-12 <= fidelity <= 1.0 + 1e-12):
        raise ParamOutOfRange(f"fidelity F={fidelity} outside [0, 1]")
    fidelity = min(1.0, max(0.0, fidelity))
    psi = max_entangled(d)
    proj = np.outer(psi, psi.conj())
    eye = np.eye(d * d, dtype=np.complex128)
    mat = (1.0 - fidelity) / (d * d - 1.0) * (eye - proj) + fidelity * proj
    return DensityMatrix(mat=mat, dims=(d, d))


def _horodecki_parts() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    psi = max_entangled(3)
    proj = np.outer(psi, psi.conj())

    def diag_mix(kets):
        m = np.zeros((9, 9), dtype=np.complex128)
        for a, b in kets:
            i = (a - 1) * 3 + (b - 1)
            m[i, i] = 1.0 / 3.0
        return m

    sigma_plus = diag_mix([(1, 2), (2, 3), (3, 1)])
    sigma_minus = diag_mix([(2, 1), (3, 2), (1, 3)])
    return proj, sigma_plus, sigma_minus


def make_horodecki33(alpha: float) -> DensityMatrix:
    """One-parameter 3x3 state (2/7)P+ + (alpha/7)s+ + ((5-alpha)/7)s-."""
    alpha = float(alpha)
    if not (2.0 - 1e-12 <= alpha <= 5.0 + 1e-12):
        raise ParamOutOfRange(f"alpha={alpha} outside [2, 5]")
    alpha = min(5.0, max(2.0, alpha))
    proj, sigma_plus, sigma_minus = _horodecki_parts()
    mat = (2.0 / 7.0) * proj + (alpha / 7.0) * sigma_plus + ((5.0 - alpha) / 7.0) * sigma_minus
    return DensityMatrix(mat=mat, dims=(3, 3))


def make_multi_iso(d: int, n: int, s: float) -> DensityMatrix:
    """n-party, d-level mixture (1-s) I/d^n + s |psi+><psi+|."""
    d, n = int(d), int(n)
    s = float(s)
    if d < 2:
        raise ParamOutOfRange(f"local dimension must be >= 2, got {d}")
    if n < 2:
        raise ParamOutOfRange(f"party count must be >= 2, got {n}")
    if not (-1e-12 <= s <= 1.0 + 1e-12):
        raise ParamOutOfRange(f"s={s} outside [0, 1]")
    s = min(1.0, max(0.0, s))
    size = d**n
    if size > 64:
        raise DimensionTooLarge(f"d^n = {size} exceeds the supported maximum 64")
    psi = max_entangled(d, n)
    mat = (1.0 - s) / size * np.eye(size, dtype=np.complex128) + s * np.outer(psi, psi.conj())
    return DensityMatrix(mat=mat, dims=(d,) * n)


def build(spec: StateSpec) -> DensityMatrix:
    """Build the density matrix described by a StateSpec."""
    if isinstance(spec, BD22):
        return make_bd22(spec.p)
    if isinstance(spec, ICD):
        return make_icd(spec.theta, spec.p)
    if isinstance(spec, BD23):
        return make_bd23(spec.p)
    if isinstance(spec, Werner):
        return make_werner(spec.d, spec.f)
    if isinstance(spec, Isotropic):
        return make_isotropic(spec.d, spec.F)
    if isinstance(spec, Horodecki33):
        return make_horodecki33(spec.alpha)
    if isinstance(spec, MultiIso):
        return make_multi_iso(spec.d, spec.n, spec.s)
    if isinstance(spec, Raw):
        try:
            return DensityMatrix(mat=np.asarray(spec.matrix), dims=tuple(spec.dims))
        except (ValueError, LsdError) as exc:
            raise RawValidationFailed(str(exc)) from exc
    raise TypeError(f"unknown state spec {type(spec).__name__}")
