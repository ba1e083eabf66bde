"""Contractivity of the maps L_V and the P_A complete-contractivity test.

For a domain A = (A_1, ..., A_m) and a tuple V = (V_1, ..., V_m) of p x q
matrices the linear map L_V(z) = sum z_i V_i is contractive from the dual
norm of Omega_A exactly when

    sup over unit x, y of || sum_i (y* V_i x) A_i ||_op <= 1.

For p = 1 this is the matrix condition I - G(beta) >= 0 for every unit beta,
where G(beta) is the Gram matrix of the vectors B_j* beta and
B_j = sum_i v_ij A_i. The complete test uses ||A_1 (x) V_1 + ... + A_m (x) V_m||.
"""
import logging
from typing import Optional, Sequence

import numpy as np
import numpy.polynomial.polynomial as npoly

from src.core.constants import CONTRACTIVE_TOL, DEFAULT_SEED, SPHERE_GRID, SPHERE_REFINE
from src.core.errors import InputError
from src.core.matrix_core import as_cmatrix, as_cvector, kron, op_norm
from src.core.optimize import (
    halton_directions,
    multistart_minimize,
    smallest_indices,
    sphere_points,
    to_real,
    unit_complex,
)
from src.models.domain_spec import DomainSpec, standard_domain
from src.models.reports import ClosedFormResult, ContractivityReport
from src.models.vtuple import VTuple

logger = logging.getLogger(__name__)


def _check_pair(D: DomainSpec, V: VTuple):
    if V.m != D.m:
        raise InputError(f"VTuple has {V.m} matrices but the domain has {D.m}")


def tensor_norm(D: DomainSpec, V: VTuple) -> float:
    """||A_1 (x) V_1 + ... + A_m (x) V_m||_op."""
    _check_pair(D, V)
    return op_norm(sum(kron(A, Vi) for A, Vi in zip(D.mats, V.vs)))


def _beta_from_angles(x: np.ndarray) -> np.ndarray:
    return np.array([np.cos(x[0] / 2.0), np.exp(1j * x[1]) * np.sin(x[0] / 2.0)])


def _angles_from_beta(beta: np.ndarray) -> np.ndarray:
    beta = beta * np.exp(-1j * np.angle(beta[0])) if abs(beta[0]) > 0 else beta
    return np.array([2.0 * np.arctan2(abs(beta[1]), beta[0].real), np.angle(beta[1])])


def _row_criterion(D: DomainSpec, V: VTuple, grid: int, refine: int, rng: np.random.Generator):
    """Minimise lambda_min(I - G(beta)) over unit beta for a tuple of row vectors."""
    rows = V.rows()
    Bs = np.einsum("ij,ikl->jkl", rows, np.array(D.mats))
    Bh = Bs.conj()

    def batch(betas: np.ndarray) -> np.ndarray:
        Y = np.einsum("jlk,Nl->Njk", Bh, betas)
        return 1.0 - np.linalg.svd(Y, compute_uv=False)[:, 0] ** 2

    def single(beta: np.ndarray) -> float:
        return float(1.0 - op_norm(np.einsum("jlk,l->jk", Bh, beta)) ** 2)

    betas = sphere_points(grid, D.n, rng)
    values = batch(betas)
    best = smallest_indices(values, refine)
    if D.n == 2:
        xbest, fbest, converged = multistart_minimize(
            lambda x: single(_beta_from_angles(x)), [_angles_from_beta(betas[k]) for k in best])
        beta = _beta_from_angles(xbest)
    else:
        xbest, fbest, converged = multistart_minimize(
            lambda x: single(unit_complex(x)), [to_real(betas[k]) for k in best])
        beta = unit_complex(xbest)
    if values[best[0]] < fbest:
        beta, fbest = betas[best[0]], float(values[best[0]])
    return fbest, beta, None, converged


def _block_criterion(D: DomainSpec, V: VTuple, grid: int, refine: int, rng: np.random.Generator):
    """Minimise 1 - ||sum_i (y* V_i x) A_i||^2 over unit x in C^q and y in C^p."""
    p, q = V.p, V.q
    mats = np.array(D.mats)
    Vs = np.array(V.vs)

    def M_of(x: np.ndarray, y: np.ndarray) -> np.ndarray:
        coeffs = np.einsum("p,ipq,q->i", y.conj(), Vs, x)
        return np.tensordot(coeffs, mats, axes=1)

    def split(u: np.ndarray):
        return unit_complex(np.concatenate([u[:q], u[q + p:q + p + q]])), \
            unit_complex(np.concatenate([u[q:q + p], u[q + p + q:]]))

    def single(u: np.ndarray) -> float:
        x, y = split(u)
        return float(1.0 - op_norm(M_of(x, y)) ** 2)

    Z = halton_directions(grid, p + q, rng)
    X = Z[:, :q] / np.linalg.norm(Z[:, :q], axis=1, keepdims=True)
    Y = Z[:, q:] / np.linalg.norm(Z[:, q:], axis=1, keepdims=True)
    coeffs = np.einsum("Np,ipq,Nq->Ni", Y.conj(), Vs, X)
    P = np.einsum("Ni,ijk->Njk", coeffs, mats)
    values = 1.0 - np.linalg.svd(P, compute_uv=False)[:, 0] ** 2
    best = smallest_indices(values, refine)
    starts = [to_real(np.concatenate([X[k], Y[k]])) for k in best]
    ubest, fbest, converged = multistart_minimize(single, starts)
    x, y = split(ubest)
    if values[best[0]] < fbest:
        x, y, fbest = X[best[0]], Y[best[0]], float(values[best[0]])
    U, _, _ = np.linalg.svd(M_of(x, y))
    return fbest, U[:, 0], x, converged


def contractive_general(D: DomainSpec, V: VTuple, tol: float = CONTRACTIVE_TOL,
                        rng: Optional[np.random.Generator] = None,
                        grid: int = SPHERE_GRID, refine: int = SPHERE_REFINE) -> ContractivityReport:
    """Numeric contractivity verdict for L_V together with the P_A tensor test."""
    _check_pair(D, V)
    rng = np.random.default_rng(DEFAULT_SEED) if rng is None else rng
    if V.p == 1:
        inf, beta, x, converged = _row_criterion(D, V, grid, refine, rng)
    else:
        inf, beta, x, converged = _block_criterion(D, V, grid, refine, rng)
    if abs(beta[0]) > 0:
        beta = beta * np.exp(-1j * np.angle(beta[0]))
    tn = tensor_norm(D, V)
    report = ContractivityReport(
        contractive=inf >= -tol,
        completely_contractive_on_PA=tn <= 1.0 + tol,
        linear_map_norm=float(np.sqrt(max(0.0, 1.0 - inf))),
        tensor_norm=tn,
        witness_beta=beta,
        attained_infimum=inf,
        method="numeric",
        converged=converged,
        witness_x=x,
    )
    logger.debug("contractive_general: infimum %.3e, tensor norm %.6f", inf, tn)
    return report


def linear_map_norm(D: DomainSpec, V: VTuple, rng: Optional[np.random.Generator] = None) -> float:
    """||L_V|| from the dual norm of Omega_A to the operator norm."""
    return contractive_general(D, V, rng=rng).linear_map_norm


def _inner(v1: np.ndarray, v2: np.ndarray) -> complex:
    return complex(np.vdot(v2, v1))


def reduced_norm_sq(a: float, b: float, c: float) -> float:
    """max of a x^2 + c x (w + 1) + b (w + 1)^2 over x^2 + w^2 = 1.

    Equals ||L_V||^2 for the pair (I_2, E_12) with a = ||v1||^2,
    b = ||v2||^2 / 4 and c = |<v1, v2>|. Stationary points solve
    2 x ((b - a) w + b) = c (2 w^2 + w - 1); squaring gives a quartic in w.
    """
    lin = np.array([b, b - a])
    lhs = npoly.polymul(npoly.polymul([1.0, 0.0, -1.0], npoly.polymul(lin, lin)), [4.0])
    rhs = c * c * npoly.polymul([-1.0, 1.0, 2.0], [-1.0, 1.0, 2.0])
    roots = npoly.polyroots(npoly.polysub(lhs, rhs)) if np.any(npoly.polysub(lhs, rhs)) else np.array([])
    candidates = [-1.0, 0.0, 1.0]
    candidates += [float(np.clip(r.real, -1.0, 1.0)) for r in np.atleast_1d(roots) if abs(r.imag) <= 1e-6]
    best = 0.0
    for w in candidates:
        x0 = np.sqrt(max(0.0, 1.0 - w * w))
        for x in (x0, -x0):
            best = max(best, a * x * x + c * x * (w + 1.0) + b * (w + 1.0) ** 2)
    return float(best)


def contractive_closed_I_E12(v1: Sequence[complex], v2: Sequence[complex],
                             tol: float = CONTRACTIVE_TOL) -> ClosedFormResult:
    """Printed criterion (a + b + r)^2 <= 4 r, r = sqrt((a - b)^2 + c^2), for the pair (I_2, E_12)."""
    v1 = as_cvector(v1, 2, "v1")
    v2 = as_cvector(v2, 2, "v2")
    a = float(np.vdot(v1, v1).real)
    b = float(np.vdot(v2, v2).real) / 4.0
    c = abs(_inner(v1, v2))
    root = np.sqrt((a - b) ** 2 + c * c)
    lhs = float((a + b + root) ** 2)
    rhs = float(4.0 * root)
    exact = reduced_norm_sq(a, b, c)
    result = ClosedFormResult(
        name="contractive_I_E12",
        verdict=lhs <= rhs + tol * max(1.0, rhs),
        value=lhs,
        lhs=lhs,
        rhs=rhs,
        exact_verdict=exact <= 1.0 + tol,
        exact_value=exact,
        extra={"a": a, "b": b, "c": c},
    )
    if not result.agree:
        logger.warning("printed (I, E12) criterion says %s but ||L_V||^2 = %.9f", result.verdict, exact)
    return result


def complete_closed_I_E12(v1: Sequence[complex], v2: Sequence[complex],
                          tol: float = CONTRACTIVE_TOL) -> ClosedFormResult:
    """Printed test 2||v1||^2 + ||v2||^2 + sqrt(||v2||^4 - 4|<v1, v2>|^2) <= 2 next to the tensor norm."""
    v1 = as_cvector(v1, 2, "v1")
    v2 = as_cvector(v2, 2, "v2")
    n1 = float(np.vdot(v1, v1).real)
    n2 = float(np.vdot(v2, v2).real)
    g = abs(_inner(v1, v2))
    radicand = n2 * n2 - 4.0 * g * g
    corrected = 2.0 * n1 + n2 + np.sqrt(n2 * n2 + 4.0 * g * g)
    tn = tensor_norm(standard_domain("nil2"), VTuple.from_rows([v1, v2]))
    if radicand < 0.0:
        logger.warning("printed complete test has a negative radicand %.3e; using the tensor norm", radicand)
        value, verdict = None, None
    else:
        value = float(2.0 * n1 + n2 + np.sqrt(radicand))
        verdict = value <= 2.0 + tol
    return ClosedFormResult(
        name="complete_I_E12",
        verdict=verdict,
        value=value,
        lhs=value,
        rhs=2.0,
        exact_verdict=tn <= 1.0 + tol,
        exact_value=tn,
        extra={"radicand": float(radicand), "corrected_value": float(corrected)},
    )


def contractive_closed_diag3(v11: complex, v22: complex, v33: complex,
                             tol: float = CONTRACTIVE_TOL) -> ClosedFormResult:
    """Printed criterion |v11|^2 (1 - |v33|^2) >= |v22|^2 - |v33|^2 for (E_11, E_12, E_22).

    The exact norm of L_V for diagonal V is max |v_ii|, which is what the
    numeric criterion certifies.
    """
    s11, s22, s33 = abs(v11) ** 2, abs(v22) ** 2, abs(v33) ** 2
    lhs = s11 * (1.0 - s33)
    rhs = s22 - s33
    exact = max(s11, s22, s33)
    result = ClosedFormResult(
        name="contractive_diag3",
        verdict=lhs >= rhs - tol,
        value=lhs - rhs,
        lhs=lhs,
        rhs=rhs,
        exact_verdict=exact <= 1.0 + tol,
        exact_value=exact,
    )
    if not result.agree:
        logger.warning("printed diagonal criterion says %s but ||L_V||^2 = %.9f", result.verdict, exact)
    return result


def complete_closed_diag3(v11: complex, v22: complex, v33: complex,
                          tol: float = CONTRACTIVE_TOL) -> ClosedFormResult:
    """max(|v11|^2 + |v22|^2, |v33|^2) <= 1."""
    value = max(abs(v11) ** 2 + abs(v22) ** 2, abs(v33) ** 2)
    V = VTuple.from_rows([[v11, 0, 0], [0, v22, 0], [0, 0, v33]])
    tn = tensor_norm(standard_domain("reinhardt3"), V)
    return ClosedFormResult(
        name="complete_diag3",
        verdict=value <= 1.0 + tol,
        value=float(value),
        lhs=float(value),
        rhs=1.0,
        exact_verdict=tn <= 1.0 + tol,
        exact_value=tn ** 2,
    )


def _pair_mats(D: DomainSpec, transposed: bool):
    if D.m != 2 or D.n != 2:
        raise InputError("embedding norms need a pair of 2x2 matrices")
    return [A.T for A in D.mats] if transposed else list(D.mats)


def embedding_norm_pair(D: DomainSpec, V1: np.ndarray, V2: np.ndarray, transposed: bool = False) -> float:
    """||P_A^(k)(V)|| = ||A_1 (x) V_1 + A_2 (x) V_2|| (A_i^t when transposed)."""
    V1, V2 = as_cmatrix(V1, "V1"), as_cmatrix(V2, "V2")
    if V1.shape != V2.shape or V1.shape[0] != V1.shape[1]:
        raise InputError("V1 and V2 must be square of equal size")
    A1, A2 = _pair_mats(D, transposed)
    return op_norm(kron(A1, V1) + kron(A2, V2))


def embedding_norm_pair_closed(D: DomainSpec, v1: Sequence[complex], v2: Sequence[complex],
                               transposed: bool = False) -> float:
    """Closed form of embedding_norm_pair when only the first rows v1, v2 of V1, V2 are non-zero.

    The square of the norm is the larger eigenvalue x = (p + sqrt(p^2 - 4 q)) / 2
    of H = sum_ij <v_i, v_j> A_i A_j*, with p = tr H and q = det H.
    """
    v = [as_cvector(v1, name="v1"), as_cvector(v2, name="v2")]
    mats = _pair_mats(D, transposed)
    H = sum(_inner(v[i], v[j]) * mats[i] @ mats[j].conj().T for i in range(2) for j in range(2))
    p1 = float(np.trace(H).real)
    q1 = float(np.linalg.det(H).real)
    x = (p1 + np.sqrt(max(0.0, p1 * p1 - 4.0 * q1))) / 2.0
    return float(np.sqrt(max(0.0, x)))
