"""The g-function of a pair of 2x2 matrices and the search for contractive maps that fail the P_A test.

For V with rows (v, 0) and (0, w) the map L_V is contractive exactly when

    g(beta) = 1 - |v|^2 X - |w|^2 Y + |v w|^2 (X Y - |<A1 A2* beta, beta>|^2) >= 0

on the unit sphere, with X = ||A1* beta||^2 and Y = ||A2* beta||^2, while
P_A fails as soon as 1 - |v|^2 X - |w|^2 Y < 0 somewhere. The search looks
for the boundary case min g = 0 with a negative complete test.
"""
import logging
from typing import List, Optional, Tuple

import numpy as np

from src.core.constants import (
    BISECT_TOL,
    BSET_TOL,
    CLAIM_SEPARATION,
    CONTRACTIVE_TOL,
    DEFAULT_SEED,
    G_GRID,
    G_GRID_COARSE,
    G_REFINE,
    G_ROOT_TOL,
    LAMBDA_GRID,
    UNIT_TOL,
)
from src.core.contractivity import contractive_general, embedding_norm_pair, tensor_norm
from src.core.domains import simultaneously_diagonalizable
from src.core.errors import InputError, NoCounterexampleExpected, SearchExhausted
from src.core.matrix_core import as_cmatrix, as_cvector, hermitian_eig, op_norm
from src.core.optimize import multistart_minimize, smallest_indices
from src.models.domain_spec import DomainSpec
from src.models.g_function import BSet, GFunctionSpec, SearchResult
from src.models.reports import ContractivityReport
from src.models.vtuple import VTuple

logger = logging.getLogger(__name__)


def fix_phase(beta: np.ndarray) -> np.ndarray:
    """Rotate so the first non-zero component is real and non-negative."""
    for x in beta:
        if abs(x) > 1e-12:
            return beta * (abs(x) / x)
    return beta


def _g_terms(spec: GFunctionSpec, betas: np.ndarray) -> np.ndarray:
    """g for a stack of unit vectors betas[..., 2]."""
    a1 = np.einsum("lk,...l->...k", spec.A1.conj(), betas)
    a2 = np.einsum("lk,...l->...k", spec.A2.conj(), betas)
    X = np.sum(np.abs(a1) ** 2, axis=-1)
    Y = np.sum(np.abs(a2) ** 2, axis=-1)
    cross = np.sum(a1.conj() * a2, axis=-1)
    v2, w2 = abs(spec.v) ** 2, abs(spec.w) ** 2
    return 1.0 - v2 * X - w2 * Y + v2 * w2 * (X * Y - np.abs(cross) ** 2)


def g_eval(spec: GFunctionSpec, beta) -> float:
    beta = as_cvector(beta, 2, "beta")
    if abs(np.linalg.norm(beta) - 1.0) > UNIT_TOL:
        raise InputError("beta must be a unit vector")
    return float(_g_terms(spec, beta))


def _beta(t: np.ndarray, theta: np.ndarray) -> np.ndarray:
    return np.stack([np.cos(t) + 0j, np.exp(1j * theta) * np.sin(t)], axis=-1)


def g_grid_min(spec: GFunctionSpec, size: int, chunk: int = 256) -> Tuple[float, float, float]:
    """Brute-force minimum over a size x size grid of t in [0, pi/2], theta in [0, 2 pi).

    Returns (value, t, theta).
    """
    ts = np.linspace(0.0, np.pi / 2.0, size)
    thetas = np.linspace(0.0, 2.0 * np.pi, size, endpoint=False)
    best = (np.inf, 0.0, 0.0)
    for start in range(0, size, chunk):
        T, TH = np.meshgrid(ts[start:start + chunk], thetas, indexing="ij")
        vals = _g_terms(spec, _beta(T, TH))
        k = int(np.argmin(vals))
        i, j = np.unravel_index(k, vals.shape)
        if vals[i, j] < best[0]:
            best = (float(vals[i, j]), float(T[i, j]), float(TH[i, j]))
    return best


def g_min(spec: GFunctionSpec, grid: int = G_GRID, refine: int = G_REFINE) -> Tuple[float, np.ndarray]:
    """Global minimum of g over the unit sphere of C^2 and a minimising beta."""
    ts = np.linspace(0.0, np.pi / 2.0, grid)
    thetas = np.linspace(0.0, 2.0 * np.pi, grid, endpoint=False)
    T, TH = np.meshgrid(ts, thetas, indexing="ij")
    vals = _g_terms(spec, _beta(T, TH)).reshape(-1)
    best = smallest_indices(vals, refine)
    starts = [np.array([T.reshape(-1)[k], TH.reshape(-1)[k]]) for k in best]

    def objective(x: np.ndarray) -> float:
        return float(_g_terms(spec, _beta(x[0], x[1])))

    x, f, _ = multistart_minimize(objective, starts)
    if vals[best[0]] < f:
        f = float(vals[best[0]])
        x = starts[0]
    return f, fix_phase(_beta(x[0], x[1]))


def complete_test(spec: GFunctionSpec) -> float:
    """min over unit beta of 1 - |v|^2 ||A1* beta||^2 - |w|^2 ||A2* beta||^2."""
    H = abs(spec.v) ** 2 * spec.A1 @ spec.A1.conj().T + abs(spec.w) ** 2 * spec.A2 @ spec.A2.conj().T
    return float(1.0 - hermitian_eig(H).eigenvalues[0])


def diagonal_vtuple(v: complex, w: complex) -> VTuple:
    return VTuple.from_rows([[v, 0.0], [0.0, w]])


def _quadratic_roots(c0: complex, c1: complex, c2: complex, eps: float) -> Tuple[List[complex], List[int]]:
    """Roots of c0 + c1 x + c2 x^2 with multiplicities; a double root is reported once."""
    if abs(c2) > eps:
        disc = c1 * c1 - 4.0 * c2 * c0
        if abs(disc) <= eps * max(1.0, abs(c1) ** 2):
            return [-c1 / (2.0 * c2)], [2]
        sq = np.sqrt(complex(disc))
        return [(-c1 + sq) / (2.0 * c2), (-c1 - sq) / (2.0 * c2)], [1, 1]
    if abs(c1) > eps:
        return [-c0 / c1], [1]
    return [], []


def compute_b_set(A1, A2) -> BSet:
    """Unit vectors annihilated by A2* - mu A1* or by A1* - nu A2*."""
    A1 = as_cmatrix(A1, "A1")
    A2 = as_cmatrix(A2, "A2")
    scale = max(op_norm(A1), op_norm(A2)) ** 2
    eps = 1e-12 * scale
    vectors, params, pencils, mults = [], [], [], []
    degenerate = False
    for name, X, Y in (("mu", A2.conj().T, A1.conj().T), ("nu", A1.conj().T, A2.conj().T)):
        # det(X - t Y) = c0 + c1 t + c2 t^2
        c0 = np.linalg.det(X)
        c2 = np.linalg.det(-Y)
        c1 = np.linalg.det(X - Y) - c0 - c2
        if max(abs(c0), abs(c1), abs(c2)) <= eps:
            degenerate = True
            continue
        roots, multiplicity = _quadratic_roots(c0, c1, c2, eps)
        for t, k in zip(roots, multiplicity):
            M = X - t * Y
            _, _, Vh = np.linalg.svd(M)
            beta = fix_phase(Vh[-1].conj())
            if np.linalg.norm(M @ beta) > BSET_TOL * max(1.0, op_norm(M)):
                continue
            if any(abs(np.vdot(b, beta)) > 1.0 - 1e-9 for b in vectors):
                continue
            vectors.append(beta)
            params.append(complex(t))
            pencils.append(name)
            mults.append(k)
    if degenerate:
        logger.warning("a pencil determinant vanishes identically; the pair takes the degenerate route")
    return BSet(vectors=vectors, eigen_params=params, pencils=pencils, multiplicities=mults, degenerate=degenerate)


def _lambda_order() -> np.ndarray:
    """The lambda grid ordered outward from 1, smaller value first on ties."""
    key = [(round(abs(np.log10(lam)), 12), lam) for lam in LAMBDA_GRID]
    return np.array([lam for _, lam in sorted(key)])


def _bisect_root(A1: np.ndarray, A2: np.ndarray, lam: float, upper: float) -> float:
    """Largest |v| in [0, upper] with g_min(v, lam v) >= 0, to BISECT_TOL."""
    lo, hi = 0.0, upper
    while hi - lo > BISECT_TOL:
        mid = (lo + hi) / 2.0
        value, _ = g_min(GFunctionSpec(A1, A2, mid, lam * mid), grid=G_GRID_COARSE)
        if value >= 0.0:
            lo = mid
        else:
            hi = mid
    return lo


def _scan(D: DomainSpec, bset: Optional[BSet], route: str, transposed: bool) -> Optional[SearchResult]:
    A1, A2 = D.mats
    n1, n2 = op_norm(A1), op_norm(A2)
    for lam in _lambda_order():
        upper = min(1.0 / n1, 1.0 / (lam * n2))
        value, _ = g_min(GFunctionSpec(A1, A2, upper, lam * upper), grid=G_GRID_COARSE)
        if value > CONTRACTIVE_TOL:
            logger.debug("lambda %.4g: g stays positive up to |v| = %.4g", lam, upper)
            continue
        v0 = _bisect_root(A1, A2, lam, upper)
        spec = GFunctionSpec(A1, A2, v0, lam * v0)
        g0, beta0 = g_min(spec)
        ct = complete_test(spec)
        bset_values = [g_eval(spec, b) for b in bset.vectors] if bset is not None else []
        separated = all(g >= g0 + CLAIM_SEPARATION for g in bset_values)
        logger.debug("lambda %.4g: v0 %.10f, g_min %.3e, complete test %.3e, separated %s",
                     lam, v0, g0, ct, separated)
        if abs(g0) <= G_ROOT_TOL and ct < -CONTRACTIVE_TOL and separated:
            return SearchResult(
                v0=complex(v0),
                lambda0=float(lam),
                beta0=beta0,
                g_min=g0,
                complete_test=ct,
                verdict=True,
                route=route,
                transposed=transposed,
                bset_g_values=bset_values,
                tensor_norm=tensor_norm(D, diagonal_vtuple(v0, lam * v0)),
            )
    return None


def embedding_gap(D: DomainSpec, rng: np.random.Generator) -> dict:
    """||P_A^(2)(V)|| against ||P_{A^t}^(2)(V)|| for a seeded row-supported V."""
    rows = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    V1 = np.zeros((2, 2), dtype=np.complex128)
    V2 = np.zeros((2, 2), dtype=np.complex128)
    V1[0], V2[0] = rows[0], rows[1]
    plain = embedding_norm_pair(D, V1, V2)
    flipped = embedding_norm_pair(D, V1, V2, transposed=True)
    return {"plain": plain, "transposed": flipped, "differ": abs(plain - flipped) > 1e-6}


def search(D: DomainSpec, rng: Optional[np.random.Generator] = None) -> SearchResult:
    """Find (v0, lambda0) whose diagonal map is contractive while ||P_A^(2)(V)|| > 1."""
    if D.m != 2 or D.n != 2:
        raise InputError("search needs a pair of 2x2 matrices")
    if simultaneously_diagonalizable(D):
        raise NoCounterexampleExpected(
            "the pair is simultaneously diagonalizable; every contractive map is P_A-contractive"
        )
    rng = np.random.default_rng(DEFAULT_SEED) if rng is None else rng
    bset = compute_b_set(*D.mats)
    if not bset.degenerate:
        result = _scan(D, bset, "pencil", False)
    else:
        gap = embedding_gap(D, rng)
        logger.info("degenerate pencil: embedding norms %.6f vs %.6f", gap["plain"], gap["transposed"])
        result = _scan(D, None, "degenerate", False)
        if result is None:
            Dt = D.transpose()
            result = _scan(Dt, None, "transpose", True)
        if result is not None:
            result.embedding_gap = gap
    if result is None:
        logger.warning("counterexample scan exhausted")
        raise SearchExhausted("no certificate found", (float(LAMBDA_GRID.min()), float(LAMBDA_GRID.max())),
                              len(LAMBDA_GRID))
    return result


def certify(D: DomainSpec, result: SearchResult, rng: Optional[np.random.Generator] = None) -> ContractivityReport:
    """Re-check a SearchResult: the diagonal map must be contractive and fail the P_A test."""
    Dc = D.transpose() if result.transposed else D
    V = diagonal_vtuple(result.v0, result.lambda0 * result.v0)
    return contractive_general(Dc, V, rng=rng)


def g_min_profile(A1, A2, lam: float, count: int, grid: int = G_GRID_COARSE) -> np.ndarray:
    """g_min along |v| in [0, 1/||A1*||] for w = lam v."""
    A1 = as_cmatrix(A1, "A1")
    A2 = as_cmatrix(A2, "A2")
    upper = min(1.0 / op_norm(A1), 1.0 / (lam * op_norm(A2)))
    return np.array([g_min(GFunctionSpec(A1, A2, v, lam * v), grid=grid)[0]
                     for v in np.linspace(0.0, upper, count)])
