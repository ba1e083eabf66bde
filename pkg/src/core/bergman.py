"""Bergman kernels, their curvature and the lambda-thresholds of the associated contractivity tests.

Three kernels are supported:

* ``matrix_ball`` -- det(I - Z W*)^(-(r + s)) on the r x s matrix ball;
* ``nil2`` -- (3 (1 - z1 w1~)^2 + z2 w2~) / ((1 - z1 w1~)^2 - z2 w2~)^3 on {|z2| < 1 - |z1|^2};
* ``reinhardt3`` -- a Beta-function power series on {|z2|^2 < (1 - |z1|^2)(1 - |z3|^2)}.

Points are complex coordinate vectors; the matrix ball flattens W row by row.
The curvature K(w) is stored as the positive definite matrix
(d_i dbar_j log B^lambda)(w, w).
"""
import logging
import re
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
import scipy.special

from src.core.constants import (
    CRITICAL_DENOMINATOR,
    FD_STEP,
    PSD_TOL,
    REINHARDT_MARGIN,
    REINHARDT_RADIUS,
    SERIES_MAX_INDEX,
    SERIES_TAIL_TOL,
)
from src.core.contractivity import (
    complete_closed_diag3,
    contractive_closed_I_E12,
    contractive_closed_diag3,
    contractive_general,
    tensor_norm,
)
from src.core.errors import DegenerateMetricError, InputError, SeriesTruncationError
from src.core.matrix_core import as_cmatrix, as_cvector, hermitian_eig, op_norm, schur_psd_check
from src.models.domain_spec import DomainSpec, standard_domain
from src.models.kernel import CurvatureResult, KernelSpec, ThresholdRecord
from src.models.vtuple import VTuple

logger = logging.getLogger(__name__)

# curvature of B at the origin for lambda = 1, diagonal entries
ORIGIN_CURVATURE = {
    "nil2": (Fraction(4), Fraction(10, 3)),
    "reinhardt3": (Fraction(3), Fraction(9, 2), Fraction(3)),
}

STATED_THRESHOLDS = {
    ("nil2", "contractive"): Fraction(5, 16),
    ("nil2", "P_A"): Fraction(11, 20),
    ("reinhardt3", "contractive"): Fraction(1, 4),
    ("reinhardt3", "P_A"): Fraction(5, 9),
}


def _point(spec: KernelSpec, z) -> np.ndarray:
    return as_cvector(z, spec.dim, "point")


def in_domain(spec: KernelSpec, z) -> bool:
    z = _point(spec, z)
    if spec.kind == "matrix_ball":
        return op_norm(z.reshape(spec.r, spec.s)) < 1.0
    if spec.kind == "nil2":
        return abs(z[1]) < 1.0 - abs(z[0]) ** 2
    return abs(z[1]) ** 2 < (1.0 - abs(z[0]) ** 2) * (1.0 - abs(z[2]) ** 2)


def _check_point(spec: KernelSpec, z, name: str) -> np.ndarray:
    z = _point(spec, z)
    if not in_domain(spec, z):
        raise InputError(f"{name} lies outside the {spec.kind} domain")
    if spec.kind == "reinhardt3":
        a1, a2, a3 = np.abs(z) ** 2
        if max(a1, a3) > REINHARDT_RADIUS ** 2 or a2 > (1.0 - a1) * (1.0 - a3) - REINHARDT_MARGIN:
            raise InputError(f"{name} lies outside the region where the reinhardt3 series is evaluated")
    return z


def reinhardt3_coefficients(N: int = SERIES_MAX_INDEX) -> np.ndarray:
    """c[n, m, p] = (m + 1) / (4 B(n + 1, m + 2) B(p + 1, m + 2))."""
    n = np.arange(N + 1)
    inv_beta = np.exp(-scipy.special.betaln(n[:, np.newaxis] + 1.0, n[np.newaxis, :] + 2.0))
    return (n[np.newaxis, :, np.newaxis] + 1.0) / 4.0 * inv_beta[:, :, np.newaxis] * inv_beta.T[np.newaxis, :, :]


_COEFFS: Dict[int, Tuple[np.ndarray, np.ndarray]] = {}


def _powers(xi: complex, N: int) -> np.ndarray:
    """1, xi, ..., xi^N by repeated multiplication, so xi = 0 gives (1, 0, ..., 0)."""
    out = np.ones(N + 1, dtype=np.complex128)
    out[1:] = np.cumprod(np.full(N, xi, dtype=np.complex128))
    return out


def _series(x: np.ndarray, N: int) -> Tuple[complex, float]:
    """Truncated series at x = (z_i w_i~) and a geometric bound on the neglected tail."""
    if N not in _COEFFS:
        k = np.arange(N + 1)
        shell = np.maximum.outer(np.maximum.outer(k, k), k)
        _COEFFS[N] = reinhardt3_coefficients(N), shell.reshape(-1)
    c, shell = _COEFFS[N]
    powers = [_powers(xi, N) for xi in x]
    value = np.einsum("nmp,n,m,p->", c, *powers)

    # majorant shells: weight of the terms whose largest index equals k, summed directly
    T = c * np.einsum("n,m,p->nmp", *[np.abs(p) for p in powers])
    shells = np.bincount(shell, weights=T.reshape(-1), minlength=N + 1)
    last, prev = shells[-1], shells[-2]
    if last == 0.0:
        return complex(value), 0.0
    ratio = last / prev if prev > 0 else np.inf
    tail = last * ratio / (1.0 - ratio) if ratio < 1.0 else np.inf
    return complex(value), float(tail)


def reinhardt3_closed(z, w) -> complex:
    """Resummed reinhardt3 kernel (2 + y) / (2 (1 - y)^4 ((1 - x1)(1 - x3))^3), y = x2 / ((1 - x1)(1 - x3))."""
    x = as_cvector(z, 3, "z") * as_cvector(w, 3, "w").conj()
    q = (1.0 - x[0]) * (1.0 - x[2])
    y = x[1] / q
    return complex((2.0 + y) / (2.0 * (1.0 - y) ** 4 * q ** 3))


def log_kernel(spec: KernelSpec, z, w, N: int = SERIES_MAX_INDEX, method: str = "auto") -> complex:
    """Branch of log B(z, w) continuous from B(0, 0) > 0, times lambda.

    For reinhardt3 ``method="series"`` insists on the truncated series and
    raises SeriesTruncationError when its tail bound is too large; ``"auto"``
    switches to the resummed kernel there.
    """
    if method not in ("auto", "series"):
        raise InputError(f"unknown kernel evaluation method '{method}'")
    z = _check_point(spec, z, "z")
    w = _check_point(spec, w, "w")
    if spec.kind == "matrix_ball":
        Z = z.reshape(spec.r, spec.s)
        W = w.reshape(spec.r, spec.s)
        mu = np.linalg.eigvals(np.eye(spec.r) - Z @ W.conj().T)
        return complex(-spec.lam * spec.p * np.sum(np.log(mu)))
    if spec.kind == "nil2":
        u = 1.0 - z[0] * np.conj(w[0])
        eps = z[1] * np.conj(w[1]) / u ** 2
        return complex(spec.lam * (np.log(3.0 + eps) - 4.0 * np.log(u) - 3.0 * np.log(1.0 - eps)))
    value, tail = _series(z * w.conj(), N)
    if tail > SERIES_TAIL_TOL * abs(value):
        if method == "series":
            raise SeriesTruncationError("reinhardt3 series did not converge", tail)
        logger.debug("reinhardt3 series tail bound %.3e too large, using the resummed kernel", tail)
        value = reinhardt3_closed(z, w)
    return complex(spec.lam * np.log(value))


def kernel_eval(spec: KernelSpec, z, w, method: str = "auto") -> complex:
    """B(z, w)^lambda on the principal branch of the polarized kernel."""
    return complex(np.exp(log_kernel(spec, z, w, method=method)))


def inverse_sqrt(M: np.ndarray) -> np.ndarray:
    """Hermitian inverse square root of a positive definite matrix."""
    eig = hermitian_eig(M)
    if eig.eigenvalues[-1] <= 0.0:
        raise DegenerateMetricError("matrix is not positive definite")
    U = eig.eigenvectors
    return (U * eig.eigenvalues ** -0.5) @ U.conj().T


def mobius_derivative(W) -> np.ndarray:
    """Derivative at W of the automorphism of the matrix ball sending W to 0.

    Acts on W flattened row by row: u -> (I - W W*)^(-1/2) u (I - W* W)^(-1/2),
    i.e. the matrix (I - W W*)^(-1/2) (x) ((I - W* W)^(-1/2))^t.
    """
    W = as_cmatrix(W, "W")
    if op_norm(W) >= 1.0:
        raise InputError("W must lie in the open matrix ball")
    r, s = W.shape
    X = inverse_sqrt(np.eye(r) - W @ W.conj().T)
    Y = inverse_sqrt(np.eye(s) - W.conj().T @ W)
    return np.kron(X, Y.T)


def _real_hessian(f: Callable[[np.ndarray], float], u: np.ndarray, h: float) -> Tuple[np.ndarray, np.ndarray]:
    """Central-difference gradient and Hessian of a real function of real coordinates."""
    k = u.shape[0]
    E = np.eye(k) * h
    f0 = f(u)
    fp = np.array([f(u + E[i]) for i in range(k)])
    fm = np.array([f(u - E[i]) for i in range(k)])
    grad = (fp - fm) / (2.0 * h)
    H = np.empty((k, k))
    for i in range(k):
        H[i, i] = (fp[i] - 2.0 * f0 + fm[i]) / (h * h)
        for j in range(i + 1, k):
            H[i, j] = H[j, i] = (
                f(u + E[i] + E[j]) - f(u + E[i] - E[j]) - f(u - E[i] + E[j]) + f(u - E[i] - E[j])
            ) / (4.0 * h * h)
    return grad, H


def wirtinger_derivatives(f: Callable[[np.ndarray], float], w: np.ndarray,
                          h: float = FD_STEP) -> Tuple[np.ndarray, np.ndarray]:
    """(d_j f)_j and (d_i dbar_j f)_ij at w, one Richardson level on top of central differences."""
    m = w.shape[0]
    u = np.concatenate([w.real, w.imag])

    def g(x: np.ndarray) -> float:
        return f(x[:m] + 1j * x[m:])

    g1, H1 = _real_hessian(g, u, h)
    g2, H2 = _real_hessian(g, u, h / 2.0)
    grad = (4.0 * g2 - g1) / 3.0
    H = (4.0 * H2 - H1) / 3.0
    fx, fy = grad[:m], grad[m:]
    Hxx, Hxy, Hyx, Hyy = H[:m, :m], H[:m, m:], H[m:, :m], H[m:, m:]
    d = (fx - 1j * fy) / 2.0
    ddbar = (Hxx + Hyy + 1j * (Hxy - Hyx)) / 4.0
    return d, ddbar


def nil2_curvature_closed(lam: float, w) -> np.ndarray:
    """lambda (T_ij(w)) for the nil2 kernel."""
    w = as_cvector(w, 2, "w")
    a, b = abs(w[0]) ** 2, abs(w[1]) ** 2
    u = 1.0 - a
    C = u * u - b
    D = 3.0 * u * u + b
    s2 = 1.0 / C ** 2 + 1.0 / D ** 2
    T11 = 6.0 * (1.0 / C - 1.0 / D) + 12.0 * a * b * s2
    T12 = 6.0 * u * np.conj(w[0]) * w[1] * s2
    T22 = 3.0 * u * u * s2
    return lam * np.array([[T11, T12], [np.conj(T12), T22]], dtype=np.complex128)


def matrix_ball_curvature_closed(spec: KernelSpec, w) -> np.ndarray:
    """lambda p (I - W W*)^(-t) (x) (I - W* W)^(-1)."""
    W = _point(spec, w).reshape(spec.r, spec.s)
    P = np.linalg.inv(np.eye(spec.r) - W @ W.conj().T)
    Q = np.linalg.inv(np.eye(spec.s) - W.conj().T @ W)
    return spec.nu * np.kron(P.T, Q)


def _closed_curvature(spec: KernelSpec, w: np.ndarray) -> Optional[np.ndarray]:
    if spec.kind == "matrix_ball":
        return matrix_ball_curvature_closed(spec, w)
    if spec.kind == "nil2":
        return nil2_curvature_closed(spec.lam, w)
    if np.all(w == 0):
        return spec.lam * np.diag([float(x) for x in ORIGIN_CURVATURE["reinhardt3"]]).astype(np.complex128)
    return None


def localization(K: np.ndarray) -> np.ndarray:
    """A0 with A0^t conj(A0) = (K^t)^(-1); diagonal K gives diag(1/sqrt(K_ii))."""
    K = as_cmatrix(K, "K")
    off = K - np.diag(np.diag(K))
    if np.all(off == 0):
        return np.diag(1.0 / np.sqrt(np.diag(K).real)).astype(np.complex128)
    return inverse_sqrt(K)


def curvature(spec: KernelSpec, w, method: str = "auto", h: float = FD_STEP) -> CurvatureResult:
    """Curvature matrix (d_i dbar_j log B^lambda)(w, w) and its localization matrix."""
    w = _check_point(spec, w, "w")
    K = None
    used = "numeric"
    if method in ("auto", "closed"):
        K = _closed_curvature(spec, w)
        if K is None and method == "closed":
            raise InputError(f"no closed form for {spec.kind} curvature at this point")
        used = "closed_form" if K is not None else used
    elif method != "numeric":
        raise InputError(f"unknown curvature method '{method}'")
    if K is None:
        _, K = wirtinger_derivatives(lambda x: log_kernel(spec, x, x).real, w, h)
        K = (K + K.conj().T) / 2.0
    eig = hermitian_eig(K)
    if eig.eigenvalues[-1] <= PSD_TOL * max(1.0, eig.eigenvalues[0]):
        raise DegenerateMetricError(f"curvature matrix is singular at w (smallest eigenvalue {eig.eigenvalues[-1]:.3e})")
    return CurvatureResult(K=K, A0=localization(K), w=w, method=used)


def jet_gram(spec: KernelSpec, w, h: float = FD_STEP) -> np.ndarray:
    """The (m + 1) x (m + 1) matrix (dbar_i d_j K^lambda)(w, w), index 0 meaning no derivative."""
    w = _check_point(spec, w, "w")
    f0 = kernel_eval(spec, w, w).real
    d, ddbar = wirtinger_derivatives(lambda x: kernel_eval(spec, x, x).real, w, h)
    m = w.shape[0]
    J = np.empty((m + 1, m + 1), dtype=np.complex128)
    J[0, 0] = f0
    J[0, 1:] = d
    J[1:, 0] = d.conj()
    J[1:, 1:] = ddbar.T
    J = (J + J.conj().T) / 2.0
    ok, lam_min = schur_psd_check(J)
    if not ok or lam_min <= 0.0:
        logger.warning("jet Gram matrix is not positive definite (smallest eigenvalue %.3e)", lam_min)
    return J


def det_expansion_slope(Z, ts) -> float:
    """Log-log slope of |det(I - t^2 Z Z*) - (1 - t^2 ||Z||_F^2)| against t."""
    Z = as_cmatrix(Z, "Z")
    ts = np.asarray(ts, dtype=float)
    G = Z @ Z.conj().T
    res = np.array([abs(np.linalg.det(np.eye(G.shape[0]) - t * t * G) - (1.0 - t * t * np.trace(G).real)) for t in ts])
    if np.any(res == 0.0):
        return float("inf")
    return float(np.polyfit(np.log(ts), np.log(res), 1)[0])


def matrix_ball_domain(r: int, s: int) -> DomainSpec:
    """The r x s matrix units E_ij zero-padded to max(r, s) x max(r, s)."""
    n = max(r, s)
    mats = []
    for i in range(r):
        for j in range(s):
            E = np.zeros((n, n), dtype=np.complex128)
            E[i, j] = 1.0
            mats.append(E)
    return DomainSpec(mats)


def pa_row_norm(rows) -> float:
    """max_i sum_j ||v_ij||^2 for the vectors v_ij attached to E_ij (rows[i][j] is v_ij)."""
    rows = np.asarray(rows, dtype=np.complex128)
    return float(np.max(np.sum(np.abs(rows) ** 2, axis=(1, 2))))


def parse_example(example: str) -> Tuple[str, Optional[int], Optional[int]]:
    """'matrix_ball(2,3)' -> ('matrix_ball', 2, 3); 'nil2' -> ('nil2', None, None)."""
    m = re.fullmatch(r"\s*matrix_ball\s*\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*", example)
    if m:
        return "matrix_ball", int(m.group(1)), int(m.group(2))
    if example.strip() in ("nil2", "reinhardt3"):
        return example.strip(), None, None
    raise InputError(f"unknown threshold example '{example}'")


def _row(test: str, verdict: bool, critical: Fraction, stated: Optional[Fraction], **extra) -> dict:
    row = {
        "test": test,
        "verdict": bool(verdict),
        "computed_critical_lambda": str(critical),
        "computed_critical_float": float(critical),
        "paper_stated_value": None if stated is None else str(stated),
        "agree_flag": stated is not None and critical == stated,
    }
    row.update(extra)
    return row


def threshold_check(example: str, lam: float, r: Optional[int] = None, s: Optional[int] = None) -> ThresholdRecord:
    """Contractivity and P_A verdicts at lambda with the critical lambdas in exact arithmetic."""
    kind, pr, ps = parse_example(example)
    r = pr if pr is not None else r
    s = ps if ps is not None else s
    spec = KernelSpec(kind, lam, r, s)
    K0 = curvature(spec, np.zeros(spec.dim), method="closed").K
    a2 = [float(x) for x in 1.0 / np.diag(K0).real]
    rows: List[dict] = []

    if kind == "matrix_ball":
        p = r + s
        # v_ij = a_ij e_ij with |a_ij|^2 read off the curvature at the origin
        vectors = np.zeros((r, s, r * s), dtype=np.complex128)
        for i in range(r):
            for j in range(s):
                vectors[i, j, i * s + j] = np.sqrt(a2[i * s + j])
        report = contractive_general(matrix_ball_domain(r, s), VTuple.from_rows(vectors.reshape(r * s, r * s)))
        # both squared norms scale as 1 / lambda
        crit_c = Fraction(lam * report.linear_map_norm ** 2).limit_denominator(CRITICAL_DENOMINATOR)
        crit_pa = Fraction(lam * pa_row_norm(vectors)).limit_denominator(CRITICAL_DENOMINATOR)
        if abs(crit_pa - lam * report.tensor_norm ** 2) > 1e-9:
            logger.warning("P_A critical lambda %s disagrees with the tensor norm value %.12g",
                           crit_pa, lam * report.tensor_norm ** 2)
        rows.append(_row("contractive", report.contractive, crit_c, Fraction(1, p),
                         computed_critical_nu=str(crit_c * p)))
        rows.append(_row("P_A", report.completely_contractive_on_PA, crit_pa, Fraction(s, p),
                         computed_critical_nu=str(crit_pa * p)))
        return ThresholdRecord(example=f"matrix_ball({r},{s})", lam=lam, a_squared=a2, rows=rows)

    coeff = [1 / k for k in ORIGIN_CURVATURE[kind]]
    if kind == "nil2":
        alpha, gamma = coeff
        printed = contractive_closed_I_E12([np.sqrt(a2[0]), 0.0], [0.0, np.sqrt(a2[1])])
        # (2 a11^2 - 1)^2 <= 1 - a22^2 with a11^2 = alpha/lambda, a22^2 = gamma/lambda
        crit_printed = 4 * alpha ** 2 / (4 * alpha - gamma)
        # max of a x^2 + b (w + 1)^2 on the circle is a^2 / (a - b) when b <= a / 2
        crit_exact = alpha ** 2 / (alpha - gamma / 4)
        crit_pa = alpha + gamma
        pa = tensor_norm(standard_domain("nil2"), VTuple.from_rows(np.diag(np.sqrt(a2)))) <= 1.0 + 1e-12
    else:
        alpha, beta, gamma = coeff
        printed = contractive_closed_diag3(*np.sqrt(a2))
        crit_printed = alpha * gamma / (alpha - beta + gamma)
        crit_exact = max(alpha, beta, gamma)
        crit_pa = max(alpha + beta, gamma)
        pa = complete_closed_diag3(*np.sqrt(a2)).exact_verdict

    stated_c = STATED_THRESHOLDS[(kind, "contractive")]
    rows.append(_row("contractive_printed", printed.verdict, crit_printed, stated_c))
    rows.append(_row("contractive_exact", printed.exact_verdict, crit_exact, stated_c))
    rows.append(_row("P_A", pa, crit_pa, STATED_THRESHOLDS[(kind, "P_A")]))
    for row in rows:
        if not row["agree_flag"]:
            logger.info("%s %s: critical lambda %s differs from the stated %s",
                        kind, row["test"], row["computed_critical_lambda"], row["paper_stated_value"])
    return ThresholdRecord(example=kind, lam=lam, a_squared=a2, rows=rows)


def threshold_table(example: str, lambdas, r: Optional[int] = None, s: Optional[int] = None) -> List[ThresholdRecord]:
    return [threshold_check(example, float(lam), r, s) for lam in lambdas]
