import numpy as np
import pytest

from src.core.constants import G_GRID_COARSE
from src.core.counterexample import (
    certify,
    complete_test,
    compute_b_set,
    diagonal_vtuple,
    fix_phase,
    g_eval,
    g_grid_min,
    g_min,
    g_min_profile,
    search,
)
from src.core.domains import canonicalize_2d, simultaneously_diagonalizable
from src.core.errors import InputError, NoCounterexampleExpected
from src.core.matrix_core import op_norm, random_cmatrix
from src.models.domain_spec import DomainSpec, standard_domain
from src.models.g_function import GFunctionSpec

I2 = np.eye(2)
E12 = np.array([[0.0, 1.0], [0.0, 0.0]])


def unit(rng, count=None):
    size = (2,) if count is None else (count, 2)
    z = rng.normal(size=size) + 1j * rng.normal(size=size)
    return z / np.linalg.norm(z, axis=-1, keepdims=True)


def random_spec(rng) -> GFunctionSpec:
    A1, A2 = random_cmatrix(2, 2, rng), random_cmatrix(2, 2, rng)
    v = rng.uniform(0.2, 1.0) / op_norm(A1)
    w = rng.uniform(0.2, 1.0) / op_norm(A2)
    return GFunctionSpec(A1, A2, v, w)


class TestGEval:

    def test_zero_parameters(self, rng):
        spec = GFunctionSpec(I2, E12, 0, 0)
        assert g_eval(spec, unit(rng)) == 1.0

    def test_nil2_closed_expression(self, rng):
        v, w = 0.6 + 0.1j, 0.7j
        spec = GFunctionSpec(I2, E12, v, w)
        for _ in range(20):
            beta = unit(rng)
            t = abs(beta[0]) ** 2
            expected = 1 - abs(v) ** 2 - abs(w) ** 2 * t + abs(v * w) ** 2 * t * t
            assert abs(g_eval(spec, beta) - expected) < 1e-14

    def test_example_value(self):
        v = np.sqrt(0.75)
        assert abs(g_eval(GFunctionSpec(I2, E12, v, v), [1, 0]) - 1 / 16) < 1e-15

    def test_phase_invariance(self, rng):
        spec = random_spec(rng)
        for _ in range(20):
            beta = unit(rng)
            rotated = np.exp(1j * rng.uniform(0, 2 * np.pi)) * beta
            assert abs(g_eval(spec, beta) - g_eval(spec, rotated)) < 1e-14

    def test_rejects_non_unit_beta(self):
        with pytest.raises(InputError):
            g_eval(GFunctionSpec(I2, E12, 0.5, 0.5), [1, 1])


class TestGMin:

    def test_zero_parameters(self):
        value, beta = g_min(GFunctionSpec(I2, E12, 0, 0))
        assert abs(value - 1.0) < 1e-14
        assert abs(np.linalg.norm(beta) - 1.0) < 1e-12

    def test_nil2_boundary(self):
        v = np.sqrt(0.75)
        value, _ = g_min(GFunctionSpec(I2, E12, v, v))
        ts = np.linspace(0, 1, 200001)
        brute = np.min(1 - 0.75 - 0.75 * ts + 0.5625 * ts ** 2)
        assert abs(value) < 1e-9
        assert abs(value - brute) < 1e-9

    def test_lower_bound_of_samples(self, rng):
        spec = random_spec(rng)
        value, _ = g_min(spec)
        samples = [g_eval(spec, b) for b in unit(rng, 1000)]
        assert value <= min(samples) + 1e-12

    def test_matches_dense_grid(self, rng):
        for _ in range(5):
            spec = random_spec(rng)
            value, grid = g_min(spec)[0], g_grid_min(spec, 1024)[0]
            assert value <= grid + 1e-12
            assert grid - value < 1e-4

    @pytest.mark.slow
    def test_matches_dense_grid_oracle(self, rng):
        for _ in range(20):
            spec = random_spec(rng)
            assert abs(g_min(spec)[0] - g_grid_min(spec, 2048)[0]) < 1e-5

    def test_monotone_in_modulus(self, rng):
        A1, A2 = random_cmatrix(2, 2, rng), random_cmatrix(2, 2, rng)
        profile = g_min_profile(A1, A2, 0.7, 64, grid=G_GRID_COARSE)
        assert np.all(np.diff(profile) <= 1e-9)


class TestCompleteTest:

    def test_nil2_example(self):
        v = np.sqrt(0.75)
        assert abs(complete_test(GFunctionSpec(I2, E12, v, v)) + 0.5) < 1e-14

    def test_is_minimum_over_beta(self, rng):
        spec = random_spec(rng)
        ct = complete_test(spec)
        for beta in unit(rng, 200):
            direct = 1 - abs(spec.v) ** 2 * np.linalg.norm(spec.A1.conj().T @ beta) ** 2 \
                - abs(spec.w) ** 2 * np.linalg.norm(spec.A2.conj().T @ beta) ** 2
            assert ct <= direct + 1e-12


class TestBSet:

    def test_nil2_double_root(self):
        bset = compute_b_set(I2, E12)
        assert not bset.degenerate
        assert len(bset.vectors) == 1
        assert bset.pencils == ["mu"] and bset.multiplicities == [2]
        assert abs(bset.eigen_params[0]) < 1e-12
        assert np.abs(bset.vectors[0] - np.array([0, 1])).max() < 1e-12

    def test_antidiagonal_pair(self):
        b, c = 0.5 + 0.5j, 2.0
        bset = compute_b_set(I2, np.array([[0, b], [c, 0]]))
        mus = sorted((p for p, n in zip(bset.eigen_params, bset.pencils) if n == "mu"), key=lambda z: z.real)
        root = np.sqrt(np.conj(b) * np.conj(c))
        assert np.allclose(sorted([root, -root], key=lambda z: z.real), mus)

    def test_diagonal_pair(self):
        bset = compute_b_set(np.diag([1.0, 2.0]), np.diag([3.0, 1.0]))
        found = [np.abs(v) for v in bset.vectors]
        assert any(np.allclose(v, [1, 0]) for v in found)
        assert any(np.allclose(v, [0, 1]) for v in found)

    def test_vectors_annihilate_pencils(self, rng):
        for _ in range(50):
            A1, A2 = random_cmatrix(2, 2, rng), random_cmatrix(2, 2, rng)
            bset = compute_b_set(A1, A2)
            for beta, t, pencil in zip(bset.vectors, bset.eigen_params, bset.pencils):
                M = A2.conj().T - t * A1.conj().T if pencil == "mu" else A1.conj().T - t * A2.conj().T
                assert np.linalg.norm(M @ beta) <= 1e-9 * max(1.0, op_norm(M))
                assert abs(np.linalg.norm(beta) - 1.0) < 1e-12

    def test_euclidean_pair_is_degenerate(self):
        E11 = np.array([[1.0, 0.0], [0.0, 0.0]])
        assert compute_b_set(E11, E12).degenerate


def test_fix_phase():
    beta = fix_phase(np.array([1j, 1.0]) / np.sqrt(2))
    assert abs(beta[0].imag) < 1e-15 and beta[0].real > 0


class TestSearch:

    def test_nil2_certificate(self, rng):
        D = standard_domain("nil2")
        result = search(D, rng)
        assert result.verdict and result.route == "pencil"
        assert abs(result.lambda0 - 1.0) < 1e-12
        assert abs(abs(result.v0) ** 2 - 0.75) < 1e-6
        assert abs(result.g_min) <= 1e-6
        assert result.complete_test < -1e-8
        assert result.tensor_norm > 1 + 1e-8
        assert all(g >= result.g_min + 1e-3 for g in result.bset_g_values)

    def test_certificate_chain(self, rng):
        D = standard_domain("nil2")
        result = search(D, rng)
        report = certify(D, result, rng)
        assert report.contractive
        assert abs(report.attained_infimum) < 1e-6
        assert not report.completely_contractive_on_PA

    def test_diagonalizable_pair(self):
        with pytest.raises(NoCounterexampleExpected):
            search(DomainSpec([np.diag([1.0, 2.0]), np.diag([3.0, 1.0])]))

    def test_needs_pair(self):
        with pytest.raises(InputError):
            search(standard_domain("reinhardt3"))

    @pytest.mark.slow
    def test_euclidean_pair_takes_degenerate_route(self, rng):
        result = search(standard_domain("euclidean"), rng)
        assert result.route in ("degenerate", "transpose")
        assert result.embedding_gap is not None
        assert result.complete_test < -1e-8

    @pytest.mark.slow
    def test_random_canonical_pairs(self, rng):
        certified = 0
        while certified < 5:
            form = canonicalize_2d(DomainSpec([random_cmatrix(2, 2, rng), random_cmatrix(2, 2, rng)]))
            D = form.to_domain()
            if simultaneously_diagonalizable(D):
                continue
            result = search(D, rng)
            report = certify(D, result, rng)
            assert report.contractive and not report.completely_contractive_on_PA
            certified += 1


def test_diagonal_vtuple_rows():
    V = diagonal_vtuple(0.5, 2j)
    assert np.array_equal(V.rows(), [[0.5, 0], [0, 2j]])
