"""Norms, dual norms, canonical forms and linear equivalence of the domains Omega_A."""
import logging
from typing import Optional, Sequence

import numpy as np
import scipy.linalg

from src.core.constants import (
    ABS_FLOOR,
    DEFAULT_SEED,
    DUAL_REFINE,
    DUAL_SAMPLES,
    LSTSQ_TOL,
)
from src.core.errors import InputError, UnsupportedDomainError
from src.core.matrix_core import as_cmatrix, as_cvector, op_norm
from src.core.optimize import halton_directions, multistart_minimize, nelder_mead, smallest_indices, to_complex, to_real
from src.models.domain_spec import CanonicalForm2D, DomainSpec, standard_domain

logger = logging.getLogger(__name__)

DUAL_METHODS = ("numeric", "closed_x", "trace")


def defining_polynomial(D: DomainSpec, z: Sequence[complex]) -> np.ndarray:
    """P_A(z) = z_1 A_1 + ... + z_m A_m."""
    z = as_cvector(z, D.m, "z")
    return np.tensordot(z, np.array(D.mats), axes=1)


def domain_norm(D: DomainSpec, z: Sequence[complex]) -> float:
    return op_norm(defining_polynomial(D, z))


def _batch_norms(D: DomainSpec, Z: np.ndarray) -> np.ndarray:
    """domain_norm for every row of Z."""
    P = np.einsum("ki,ijl->kjl", Z, np.array(D.mats))
    return np.linalg.svd(P, compute_uv=False)[:, 0]


def dual_norm(D: DomainSpec, w: Sequence[complex], method: str = "numeric",
              rng: Optional[np.random.Generator] = None, samples: int = DUAL_SAMPLES,
              refine: int = DUAL_REFINE) -> float:
    """sup{|w_1 z_1 + ... + w_m z_m| : ||z||_A <= 1}."""
    w = as_cvector(w, D.m, "w")
    if method == "closed_x":
        return _dual_norm_closed_x(D, w)
    if method == "trace":
        return _dual_norm_trace(D, w)
    if method != "numeric":
        raise InputError(f"unknown dual norm method '{method}', expected one of {DUAL_METHODS}")
    if np.linalg.norm(w) == 0.0:
        return 0.0
    rng = np.random.default_rng(DEFAULT_SEED) if rng is None else rng

    # boundary sampling: z / ||z||_A for quasi-random directions
    Z = halton_directions(samples, D.m, rng)
    values = np.abs(Z @ w) / _batch_norms(D, Z)
    best = float(values.max())

    # refine through 1 / min{||z||_A : <w, z> = 1}, a convex problem
    z0 = w.conj() / np.vdot(w, w).real
    N = scipy.linalg.null_space(w[np.newaxis, :])
    if N.shape[1] == 0:
        return max(best, 1.0 / domain_norm(D, z0))

    def objective(x: np.ndarray) -> float:
        return op_norm(defining_polynomial(D, z0 + N @ to_complex(x)))

    starts = []
    for idx in smallest_indices(-values, refine):
        z = Z[idx] / (Z[idx] @ w)
        starts.append(to_real(N.conj().T @ (z - z0)))
    _, fmin, _ = multistart_minimize(objective, starts)
    return max(best, 1.0 / fmin)


def _closed_x_match(D: DomainSpec) -> np.ndarray:
    """Return R with A_i = sum_j R_ij N_j for N = (I_2, E_12), else raise."""
    target = standard_domain("nil2")
    if D.m != 2 or D.n != 2:
        raise UnsupportedDomainError("closed_x dual norm needs a pair of 2x2 matrices")
    R = linear_equivalent(target, D)
    if R is None:
        raise UnsupportedDomainError("closed_x dual norm needs a domain linearly equivalent to (I_2, E_12)")
    return R


def closed_x_formula(alpha: complex, beta: complex) -> float:
    """Dual norm of (alpha, beta) for the pair (I_2, E_12)."""
    a, b = abs(alpha), abs(beta)
    if b >= a / 2.0 and b > 0.0:
        return (a * a + 4.0 * b * b) / (4.0 * b)
    return a


def _dual_norm_closed_x(D: DomainSpec, w: np.ndarray) -> float:
    R = _closed_x_match(D)
    # ||z||_D = ||R^t z||_N, hence ||w||_D* = ||R^{-1} w||_N*
    u = np.linalg.solve(R, w)
    return closed_x_formula(u[0], u[1])


def _dual_norm_trace(D: DomainSpec, w: np.ndarray) -> float:
    """min{||X||_tr : tr(X A_i) = w_i}, the Hahn-Banach extension to all n x n matrices."""
    n = D.n
    C = np.array([A.T.reshape(-1) for A in D.mats])
    x0 = np.linalg.lstsq(C, w, rcond=None)[0]
    N = scipy.linalg.null_space(C)

    def objective(x: np.ndarray) -> float:
        X = (x0 + N @ to_complex(x)).reshape(n, n)
        return float(np.linalg.norm(X, "nuc"))

    k = N.shape[1]
    if k == 0:
        return objective(np.zeros(0))
    best = np.inf
    x = np.zeros(2 * k)
    # restarts from the previous optimum help Nelder-Mead on the non-smooth trace norm
    for _ in range(4):
        res = nelder_mead(objective, x)
        if res.fun < best - 1e-14:
            best, x = float(res.fun), res.x
        else:
            break
    return best


def linear_equivalent(D1: DomainSpec, D2: DomainSpec) -> Optional[np.ndarray]:
    """R with D2.A_i = sum_j R_ij D1.A_j, or None when the spans differ or R is singular."""
    if D1.m != D2.m or D1.n != D2.n:
        raise InputError("linear_equivalent needs domains of equal m and n")
    S1, S2 = D1.stacked(), D2.stacked()
    Rt, _, _, _ = np.linalg.lstsq(S1.T, S2.T, rcond=None)
    residual = np.linalg.norm(S1.T @ Rt - S2.T)
    if residual > LSTSQ_TOL * max(1.0, np.linalg.norm(S2)):
        return None
    R = Rt.T
    s = np.linalg.svd(R, compute_uv=False)
    if s[-1] <= LSTSQ_TOL * max(1.0, s[0]):
        return None
    return R


def transform_domain(D: DomainSpec, R: np.ndarray) -> DomainSpec:
    """(R (x) I)(A): the tuple A~_i = sum_j R_ij A_j."""
    R = as_cmatrix(R, "R")
    return DomainSpec(list(np.tensordot(R, np.array(D.mats), axes=1)), check_independence=False)


def conjugate_domain(D: DomainSpec, U: np.ndarray, W: np.ndarray) -> DomainSpec:
    return DomainSpec([U @ A @ W for A in D.mats], check_independence=False)


def subspace_distance(D1: DomainSpec, D2: DomainSpec) -> float:
    """Operator-norm distance between the orthogonal projections onto the two spans."""
    Q1 = scipy.linalg.orth(D1.stacked().T)
    Q2 = scipy.linalg.orth(D2.stacked().T)
    return op_norm(Q1 @ Q1.conj().T - Q2 @ Q2.conj().T)


def simultaneously_diagonalizable(D: DomainSpec, tol: float = 1e-9) -> bool:
    """True when unitaries U, W make every U A_i W diagonal.

    Tested through commutation of the families {A_i A_j*} and {A_i* A_j}.
    """
    scale = max(op_norm(A) for A in D.mats) ** 2
    left = [Ai @ Aj.conj().T for Ai in D.mats for Aj in D.mats]
    right = [Ai.conj().T @ Aj for Ai in D.mats for Aj in D.mats]
    for family in (left, right):
        for X in family:
            for Y in family:
                if op_norm(X @ Y - Y @ X) > tol * scale * scale:
                    return False
    return True


def _det_coeffs(A1: np.ndarray, A2: np.ndarray) -> np.ndarray:
    """Coefficients of det(A1 + z A2) = c0 + c1 z + c2 z^2."""
    d1, d2 = np.linalg.det(A1), np.linalg.det(A2)
    return np.array([d1, np.linalg.det(A1 + A2) - d1 - d2, d2])


def _svd_2x2(B: np.ndarray):
    """U, sigma, V with U B V = diag(sigma), sigma descending; exact for diagonal input."""
    if abs(B[0, 1]) == 0.0 and abs(B[1, 0]) == 0.0:
        d = np.diag(B)
        order = np.argsort(-np.abs(d), kind="stable")
        P = np.eye(2)[order]
        phases = np.array([x / abs(x) if abs(x) > 0 else 1.0 for x in d[order]])
        return P.astype(np.complex128), np.abs(d[order]), (P.T * phases.conj()[np.newaxis, :]).astype(np.complex128)
    W, s, Vh = np.linalg.svd(B)
    return W.conj().T, s, Vh.conj().T


def canonicalize_2d(D: DomainSpec) -> CanonicalForm2D:
    """Reduce a pair of 2x2 matrices to diag(1, d2) and one of antidiag(b, c), [[1, b], [c, 0]], [[0, b], [c, 1]].

    The result satisfies A~_i = sum_j R_ij U A_j V with one of b, c real and non-negative.
    """
    if D.m != 2 or D.n != 2:
        raise InputError("canonicalize_2d needs a pair of 2x2 matrices")
    A1, A2 = D.mats
    scale = max(op_norm(A1), op_norm(A2)) ** 2
    eps = 1e-12 * max(scale, ABS_FLOOR)

    coeffs = _det_coeffs(A1, A2)
    degenerate = bool(np.all(np.abs(coeffs) <= eps))
    R0 = np.eye(2, dtype=np.complex128)
    if degenerate:
        logger.warning("span contains no invertible matrix; canonical form is flagged degenerate")
        B1, B2 = A1, A2
    elif abs(coeffs[0]) > eps:
        B1, B2 = A1, A2
    elif abs(coeffs[2]) > eps:
        B1, B2 = A2, A1
        R0 = np.array([[0, 1], [1, 0]], dtype=np.complex128)
    else:
        z = next(t for t in (1.0, -1.0, 1j, 2.0) if abs(np.polyval(coeffs[::-1], t)) > eps)
        B1, B2 = A1 + z * A2, A2
        R0 = np.array([[1, z], [0, 1]], dtype=np.complex128)

    U, sigma, V = _svd_2x2(B1)
    delta = sigma[1] / sigma[0]
    M = U @ B2 @ V
    a, b, c, d = M[0, 0], M[0, 1], M[1, 0], M[1, 1]
    tiny = 1e-12 * max(1.0, np.abs(M).max())
    if abs(d - a * delta) <= tiny:
        kind, s, r = "antidiag", 1.0, -a
    elif delta > 1e-12:
        kind = "upper_unit"
        s = delta / (a * delta - d)
        r = -s * d / delta
    else:
        kind, s, r = "lower_unit", 1.0 / d, -a / d
    b, c = s * b, s * c

    # diag(e^{i theta}, 1) conjugation multiplies b by e^{i theta} and c by e^{-i theta}
    if abs(c) > tiny:
        theta = np.angle(c)
    else:
        theta = -np.angle(b) if abs(b) > tiny else 0.0
    P = np.diag([np.exp(1j * theta), 1.0])
    b, c = b * np.exp(1j * theta), c * np.exp(-1j * theta)
    if abs(c) > tiny:
        c = complex(abs(c), 0.0)
    elif abs(b) > tiny:
        b = complex(abs(b), 0.0)

    RB = np.array([[1.0 / sigma[0], 0.0], [r / sigma[0], s]], dtype=np.complex128)
    return CanonicalForm2D(
        a1_kind="diag_1_d2",
        a2_kind=kind,
        d=complex(delta),
        b=complex(b),
        c=complex(c),
        transform=RB @ R0,
        unitaries=(P @ U, V @ P.conj().T),
        degenerate_span=degenerate,
    )


def canonical_pair(form: CanonicalForm2D) -> DomainSpec:
    return form.to_domain()


def reconstruct(form: CanonicalForm2D) -> DomainSpec:
    """Undo the transform and unitaries: the pair U* (R^{-1} (x) I)(A~) V*."""
    U, V = form.unitaries
    back = transform_domain(form.to_domain(), np.linalg.inv(form.transform))
    return conjugate_domain(back, U.conj().T, V.conj().T)
