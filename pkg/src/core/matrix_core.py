"""Small dense complex linear algebra shared by every other module.

Matrices are plain two-dimensional ``numpy.complex128`` arrays. The helpers
here validate them, serialise them as nested ``[re, im]`` pairs and provide
the norms, eigen-decompositions and positivity tests the rest of the package
builds on.
"""
import logging
from dataclasses import dataclass
from typing import Any, List, Optional, Tuple

import numpy as np
import scipy.linalg

from src.core.constants import ABS_FLOOR, HERMITIAN_TOL, PSD_TOL
from src.core.errors import InputError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HermitianEig:
    """Eigenvalues sorted non-increasing with orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_cmatrix(data: Any, name: str = "matrix") -> np.ndarray:
    """Validate ``data`` as a finite 2-D complex matrix."""
    try:
        M = np.array(data, dtype=np.complex128)
    except (TypeError, ValueError) as e:
        raise InputError(f"{name} is not a complex matrix: {e}") from e
    if M.ndim != 2 or M.shape[0] < 1 or M.shape[1] < 1:
        raise InputError(f"{name} must be a non-empty 2-D matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise InputError(f"{name} has non-finite entries")
    return M


def as_cvector(data: Any, length: Optional[int] = None, name: str = "vector") -> np.ndarray:
    """Validate ``data`` as a finite complex vector, optionally of fixed length."""
    try:
        v = np.array(data, dtype=np.complex128).reshape(-1)
    except (TypeError, ValueError) as e:
        raise InputError(f"{name} is not a complex vector: {e}") from e
    if length is not None and v.shape[0] != length:
        raise InputError(f"{name} must have length {length}, got {v.shape[0]}")
    if not np.all(np.isfinite(v)):
        raise InputError(f"{name} has non-finite entries")
    return v


def cmatrix_to_json(M: np.ndarray) -> List[List[List[float]]]:
    """Encode a matrix as rows of ``[re, im]`` pairs."""
    return [[[float(x.real), float(x.imag)] for x in row] for row in np.asarray(M)]


def cmatrix_from_json(data: Any, name: str = "matrix") -> np.ndarray:
    """Decode rows of ``[re, im]`` pairs into a matrix."""
    try:
        raw = np.array(data, dtype=np.float64)
    except (TypeError, ValueError) as e:
        raise InputError(f"{name} must be rows of [re, im] pairs: {e}") from e
    if raw.ndim != 3 or raw.shape[2] != 2:
        raise InputError(f"{name} must be rows of [re, im] pairs, got shape {raw.shape}")
    return as_cmatrix(raw[..., 0] + 1j * raw[..., 1], name)


def cvector_to_json(v: np.ndarray) -> List[List[float]]:
    return [[float(x.real), float(x.imag)] for x in np.asarray(v).reshape(-1)]


def cvector_from_json(data: Any, name: str = "vector") -> np.ndarray:
    try:
        raw = np.array(data, dtype=np.float64)
    except (TypeError, ValueError) as e:
        raise InputError(f"{name} must be a list of [re, im] pairs: {e}") from e
    if raw.ndim != 2 or raw.shape[1] != 2:
        raise InputError(f"{name} must be a list of [re, im] pairs, got shape {raw.shape}")
    return as_cvector(raw[:, 0] + 1j * raw[:, 1], name=name)


def op_norm(M: np.ndarray) -> float:
    """Largest singular value."""
    M = as_cmatrix(M)
    return float(scipy.linalg.svdvals(M)[0])


def power_iteration_norm(M: np.ndarray, iters: int = 10000, rng: Optional[np.random.Generator] = None) -> float:
    """Independent estimate of the largest singular value by power iteration on M*M."""
    M = as_cmatrix(M)
    rng = np.random.default_rng(0) if rng is None else rng
    x = rng.normal(size=M.shape[1]) + 1j * rng.normal(size=M.shape[1])
    x /= np.linalg.norm(x)
    MhM = M.conj().T @ M
    for _ in range(iters):
        y = MhM @ x
        ny = np.linalg.norm(y)
        if ny == 0.0:
            return 0.0
        x = y / ny
    return float(np.linalg.norm(M @ x))


def block_upper_matrix(alpha1: complex, alpha2: complex, B: np.ndarray) -> np.ndarray:
    """Assemble [[alpha1 I_m, B], [0, alpha2 I_n]] for an m x n block B."""
    B = as_cmatrix(B, "B")
    m, n = B.shape
    return np.block([
        [alpha1 * np.eye(m), B],
        [np.zeros((n, m)), alpha2 * np.eye(n)],
    ]).astype(np.complex128)


def block_upper_norm(alpha1: complex, alpha2: complex, B: np.ndarray) -> float:
    """Closed-form operator norm of [[alpha1 I, B], [0, alpha2 I]]."""
    b2 = op_norm(B) ** 2
    a1 = abs(alpha1) ** 2
    a2 = abs(alpha2) ** 2
    root = np.sqrt((a2 + b2 - a1) ** 2 + 4.0 * b2 * a1)
    return float(np.sqrt((a2 + b2 + a1 + root) / 2.0))


def is_hermitian(M: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    M = as_cmatrix(M)
    if M.shape[0] != M.shape[1]:
        return False
    scale = max(op_norm(M), ABS_FLOOR)
    return op_norm(M - M.conj().T) <= tol * scale


def hermitian_eig(M: np.ndarray) -> HermitianEig:
    """Spectral decomposition of a Hermitian matrix, eigenvalues descending."""
    M = as_cmatrix(M)
    if not is_hermitian(M):
        raise InputError("matrix is not Hermitian")
    M = (M + M.conj().T) / 2.0
    w, U = scipy.linalg.eigh(M)
    return HermitianEig(eigenvalues=w[::-1].copy(), eigenvectors=U[:, ::-1].copy())


def kron(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Kronecker product with (i, j)-block a_ij * B."""
    return np.kron(as_cmatrix(A, "A"), as_cmatrix(B, "B"))


def schur_psd_check(M: np.ndarray, tol: float = PSD_TOL) -> Tuple[bool, float]:
    """Return (is positive semidefinite, smallest eigenvalue)."""
    eig = hermitian_eig(M)
    lam_min = float(eig.eigenvalues[-1])
    scale = max(1.0, float(np.max(np.abs(eig.eigenvalues))))
    return lam_min >= -tol * scale, lam_min


def schur_complement(M: np.ndarray, k: int) -> np.ndarray:
    """A - X C^{-1} X* for M = [[A, X], [X*, C]] split after index k."""
    M = as_cmatrix(M)
    A, X, C = M[:k, :k], M[:k, k:], M[k:, k:]
    return A - X @ np.linalg.solve(C, X.conj().T)


def random_cmatrix(rows: int, cols: int, rng: np.random.Generator) -> np.ndarray:
    return rng.normal(size=(rows, cols)) + 1j * rng.normal(size=(rows, cols))


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar unitary from QR of a complex Gaussian, R-diagonal phases fixed."""
    Q, R = np.linalg.qr(random_cmatrix(n, n, rng))
    d = np.diag(R)
    phase = np.where(np.abs(d) > 0, d / np.abs(d), 1.0)
    return Q * phase[np.newaxis, :]
