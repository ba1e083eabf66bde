"""Sampling of complex unit spheres and multistart Nelder-Mead refinement."""
import logging
from typing import Callable, List, Sequence, Tuple

import numpy as np
import scipy.optimize
import scipy.stats

from src.core.constants import NM_FATOL, NM_MAXITER, NM_XATOL

logger = logging.getLogger(__name__)

GOLDEN = (1.0 + np.sqrt(5.0)) / 2.0


def fibonacci_c2(count: int) -> np.ndarray:
    """Unit vectors of C^2 modulo global phase, laid out as a Fibonacci lattice on the Bloch sphere."""
    i = np.arange(count)
    cos_theta = 1.0 - 2.0 * (i + 0.5) / count
    theta = np.arccos(np.clip(cos_theta, -1.0, 1.0))
    phi = np.mod(2.0 * np.pi * i / GOLDEN, 2.0 * np.pi)
    return np.stack([np.cos(theta / 2.0), np.exp(1j * phi) * np.sin(theta / 2.0)], axis=1)


def halton_directions(count: int, dim: int, rng: np.random.Generator) -> np.ndarray:
    """Quasi-random complex unit vectors of C^dim (scrambled Halton pushed through the normal quantile)."""
    sampler = scipy.stats.qmc.Halton(d=2 * dim, scramble=True, seed=rng)
    u = np.clip(sampler.random(count), 1e-12, 1.0 - 1e-12)
    g = scipy.stats.norm.ppf(u)
    z = g[:, :dim] + 1j * g[:, dim:]
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def sphere_points(count: int, dim: int, rng: np.random.Generator) -> np.ndarray:
    if dim == 2:
        return fibonacci_c2(count)
    return halton_directions(count, dim, rng)


def to_real(z: np.ndarray) -> np.ndarray:
    return np.concatenate([z.real, z.imag])


def to_complex(x: np.ndarray) -> np.ndarray:
    k = x.shape[0] // 2
    return x[:k] + 1j * x[k:]


def unit_complex(x: np.ndarray) -> np.ndarray:
    """Map a real parameter vector to a unit complex vector."""
    z = to_complex(x)
    nz = np.linalg.norm(z)
    if nz == 0.0:
        z = np.zeros_like(z)
        z[0] = 1.0
        return z
    return z / nz


def nelder_mead(fun: Callable[[np.ndarray], float], x0: np.ndarray,
                maxiter: int = NM_MAXITER) -> scipy.optimize.OptimizeResult:
    return scipy.optimize.minimize(
        fun, x0, method="Nelder-Mead",
        options={"xatol": NM_XATOL, "fatol": NM_FATOL, "maxiter": maxiter, "maxfev": 2 * maxiter},
    )


def multistart_minimize(fun: Callable[[np.ndarray], float], starts: Sequence[np.ndarray],
                        maxiter: int = NM_MAXITER) -> Tuple[np.ndarray, float, bool]:
    """Refine every start; return the best point, its value and whether any run converged.

    Ties keep the earliest start so the reduction does not depend on evaluation order.
    """
    best_x, best_f, converged = None, np.inf, False
    results: List[scipy.optimize.OptimizeResult] = [nelder_mead(fun, np.asarray(x0, dtype=float), maxiter) for x0 in starts]
    for res in results:
        converged = converged or bool(res.success)
        if res.fun < best_f:
            best_x, best_f = res.x, float(res.fun)
    if not converged:
        logger.warning("Nelder-Mead hit its iteration budget on all %d starts", len(results))
    return best_x, best_f, converged


def smallest_indices(values: np.ndarray, k: int) -> np.ndarray:
    """Indices of the k smallest values, ties broken by lowest index."""
    order = np.argsort(values, kind="stable")
    return order[:k]
