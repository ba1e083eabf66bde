import numpy as np
import pytest

from src.core.contractivity import (
    complete_closed_diag3,
    complete_closed_I_E12,
    contractive_closed_diag3,
    contractive_closed_I_E12,
    contractive_general,
    embedding_norm_pair,
    embedding_norm_pair_closed,
    linear_map_norm,
    reduced_norm_sq,
    tensor_norm,
)
from src.core.domains import conjugate_domain
from src.core.errors import InputError
from src.core.matrix_core import op_norm, random_cmatrix, random_unitary
from src.models.domain_spec import DomainSpec, standard_domain
from src.models.vtuple import VTuple

SQRT_HALF = np.sqrt(0.5)
FAST = {"grid": 512, "refine": 4}


def row_tuple(*rows) -> VTuple:
    return VTuple.from_rows(rows)


def canonical_upper(d2: float, b: complex, c: complex) -> DomainSpec:
    return DomainSpec([np.diag([1.0, d2]), np.array([[1.0, b], [c, 0.0]])])


def row_supported(rng):
    V1 = np.zeros((2, 2), dtype=complex)
    V2 = np.zeros((2, 2), dtype=complex)
    V1[0] = rng.normal(size=2) + 1j * rng.normal(size=2)
    V2[0] = rng.normal(size=2) + 1j * rng.normal(size=2)
    return V1, V2


class TestTensorNorm:

    def test_boundary_pair(self):
        V = row_tuple([SQRT_HALF, 0], [0, 1])
        assert abs(tensor_norm(standard_domain("nil2"), V) - np.sqrt(1.5)) < 1e-9

    def test_zero_tuple(self):
        assert tensor_norm(standard_domain("nil2"), row_tuple([0, 0], [0, 0])) == 0.0

    def test_euclidean_rows(self, rng):
        v1, v2 = rng.normal(size=(2, 3)) + 1j * rng.normal(size=(2, 3))
        expected = np.sqrt(np.linalg.norm(v1) ** 2 + np.linalg.norm(v2) ** 2)
        assert abs(tensor_norm(standard_domain("euclidean"), row_tuple(v1, v2)) - expected) < 1e-10

    def test_dimension_mismatch(self):
        with pytest.raises(InputError):
            tensor_norm(standard_domain("nil2"), row_tuple([1, 0], [0, 1], [1, 1]))


class TestContractiveGeneral:

    def test_zero_map(self):
        report = contractive_general(standard_domain("nil2"), row_tuple([0, 0], [0, 0]))
        assert report.contractive
        assert abs(report.attained_infimum - 1.0) < 1e-12
        assert report.tensor_norm == 0.0

    def test_boundary_pair(self):
        report = contractive_general(standard_domain("nil2"), row_tuple([SQRT_HALF, 0], [0, 1]))
        assert report.contractive
        assert not report.completely_contractive_on_PA
        assert abs(report.attained_infimum) < 1e-7
        assert abs(np.linalg.norm(report.witness_beta) - 1.0) < 1e-12

    def test_not_contractive(self):
        report = contractive_general(standard_domain("nil2"), row_tuple([0.9, 0], [0, 1]))
        assert not report.contractive
        assert report.attained_infimum < 0

    def test_block_criterion_agrees_with_rows(self, rng):
        D = standard_domain("nil2")
        rows = 0.5 * (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
        row_report = contractive_general(D, row_tuple(*rows))
        # the same map written as 2 x 2 blocks with a zero second row
        blocks = VTuple([np.vstack([r, np.zeros(2)]) for r in rows])
        block_report = contractive_general(D, blocks)
        assert abs(row_report.linear_map_norm - block_report.linear_map_norm) < 1e-5
        assert block_report.witness_x is not None

    def test_linear_map_norm_of_diagonal_reinhardt_map(self):
        V = row_tuple([0.5, 0, 0], [0, 0.9, 0], [0, 0, 0])
        assert abs(linear_map_norm(standard_domain("reinhardt3"), V) - 0.9) < 1e-7

    def test_tensor_norm_dominates(self, rng):
        for _ in range(30):
            D = DomainSpec([random_cmatrix(2, 2, rng), random_cmatrix(2, 2, rng)])
            V = row_tuple(*(0.4 * (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))))
            report = contractive_general(D, V, **FAST)
            assert report.tensor_norm >= report.linear_map_norm - 1e-8
            if report.completely_contractive_on_PA:
                assert report.contractive

    def test_unitary_conjugation_keeps_verdicts(self, rng):
        for _ in range(20):
            D = DomainSpec([random_cmatrix(2, 2, rng), random_cmatrix(2, 2, rng)])
            V = row_tuple(*(0.3 * (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))))
            Dc = conjugate_domain(D, random_unitary(2, rng), random_unitary(2, rng))
            a, b = contractive_general(D, V, **FAST), contractive_general(Dc, V, **FAST)
            assert abs(a.tensor_norm - b.tensor_norm) < 1e-10
            assert abs(a.attained_infimum - b.attained_infimum) < 1e-5

    def test_diagonal_domain_equivalence(self, rng):
        D = DomainSpec([np.diag([1.0, 0.4]), np.diag([0.2, 1.0])])
        for _ in range(100):
            V = row_tuple(*np.diag(rng.uniform(0, 1.3, size=2)))
            report = contractive_general(D, V, **FAST)
            if abs(report.tensor_norm - 1.0) < 1e-6:
                continue
            assert report.contractive == report.completely_contractive_on_PA

    def test_euclidean_gap(self, rng):
        for _ in range(20):
            rows = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
            report = contractive_general(standard_domain("euclidean"), row_tuple(*rows), **FAST)
            assert report.linear_map_norm < report.tensor_norm - 1e-6
            assert abs(report.linear_map_norm - op_norm(rows)) < 1e-6


class TestClosedIE12:

    def test_boundary_example(self):
        result = contractive_closed_I_E12([SQRT_HALF, 0], [0, 1])
        assert result.verdict and result.exact_verdict
        assert abs(result.value - 1.0) < 1e-9
        assert abs(result.lhs - result.rhs) < 1e-9

    def test_zero(self):
        assert contractive_closed_I_E12([0, 0], [0, 0]).verdict

    def test_not_contractive(self):
        result = contractive_closed_I_E12([1, 0], [0, 2])
        assert not result.verdict and not result.exact_verdict
        report = contractive_general(standard_domain("nil2"), row_tuple([1, 0], [0, 2]))
        assert not report.contractive

    def test_exact_value_matches_numeric(self, rng):
        D = standard_domain("nil2")
        for _ in range(30):
            v1, v2 = rng.uniform(-1.5, 1.5, size=(2, 2)) * np.exp(1j * rng.uniform(0, 6.3, size=(2, 2)))
            result = contractive_closed_I_E12(v1, v2)
            report = contractive_general(D, row_tuple(v1, v2))
            assert abs(result.exact_value - report.linear_map_norm ** 2) < 1e-6 * max(1.0, result.exact_value)
            if abs(result.exact_value - 1.0) > 1e-6:
                assert result.exact_verdict == report.contractive

    def test_reduced_norm_of_orthogonal_rows(self):
        # b <= a / 2 puts the maximum at a^2 / (a - b)
        assert abs(reduced_norm_sq(0.81, 0.25, 0.0) - 0.81 ** 2 / 0.56) < 1e-12
        assert abs(reduced_norm_sq(0.2, 0.3, 0.0) - 1.2) < 1e-12


class TestCompleteIE12:

    def test_boundary_example(self):
        result = complete_closed_I_E12([SQRT_HALF, 0], [0, 1])
        assert abs(result.value - 3.0) < 1e-12
        assert result.verdict is False and result.exact_verdict is False
        assert abs(result.exact_value - np.sqrt(1.5)) < 1e-9

    def test_zero(self):
        result = complete_closed_I_E12([0, 0], [0, 0])
        assert result.value == 0.0 and result.verdict

    def test_matches_tensor_norm(self):
        result = complete_closed_I_E12([0.5, 0], [0, SQRT_HALF])
        assert result.verdict == result.exact_verdict is True

    def test_negative_radicand_falls_back(self):
        result = complete_closed_I_E12([1, 0], [0.5, 0])
        assert result.verdict is None and result.value is None
        assert result.extra["radicand"] < 0
        assert abs(result.exact_value - tensor_norm(standard_domain("nil2"), row_tuple([1, 0], [0.5, 0]))) < 1e-15

    def test_corrected_value_is_twice_tensor_norm_squared(self, rng):
        for _ in range(50):
            v1, v2 = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
            result = complete_closed_I_E12(v1, v2)
            assert abs(result.extra["corrected_value"] - 2 * result.exact_value ** 2) < 1e-9 * result.extra["corrected_value"]


class TestDiag3:

    def test_counterexample(self):
        contractive = contractive_closed_diag3(0.5, 1, 1)
        complete = complete_closed_diag3(0.5, 1, 1)
        assert contractive.verdict and abs(contractive.value) < 1e-12
        assert not complete.verdict and abs(complete.value - 1.25) < 1e-12
        V = row_tuple([0.5, 0, 0], [0, 1, 0], [0, 0, 1])
        report = contractive_general(standard_domain("reinhardt3"), V)
        assert report.contractive
        assert not report.completely_contractive_on_PA

    def test_unit_first_entry(self):
        assert contractive_closed_diag3(1, 0, 0).verdict

    def test_printed_inequality_is_stricter_than_the_map_norm(self):
        result = contractive_closed_diag3(0.5, 0.9, 0)
        assert result.verdict is False
        assert result.exact_verdict is True
        assert not result.agree
        report = contractive_general(standard_domain("reinhardt3"), row_tuple([0.5, 0, 0], [0, 0.9, 0], [0, 0, 0]))
        assert report.contractive and abs(report.attained_infimum - 0.19) < 1e-7

    def test_complete_boundary(self):
        assert complete_closed_diag3(0, 0, 1).verdict

    def test_complete_matches_tensor_norm(self, rng):
        for _ in range(200):
            v = rng.uniform(0, 1, size=3) * np.exp(1j * rng.uniform(0, 6.3, size=3))
            result = complete_closed_diag3(*v)
            assert abs(result.value - result.exact_value) < 1e-9


class TestEmbeddingNormPair:

    def test_euclidean_rows(self, rng):
        D = standard_domain("euclidean")
        V1, V2 = row_supported(rng)
        plain = embedding_norm_pair(D, V1, V2)
        flipped = embedding_norm_pair(D, V1, V2, transposed=True)
        assert abs(plain ** 2 - np.linalg.norm(V1[0]) ** 2 - np.linalg.norm(V2[0]) ** 2) < 1e-10
        assert abs(flipped - op_norm(np.array([V1[0], V2[0]]))) < 1e-10

    def test_zero(self):
        Z = np.zeros((2, 2))
        assert embedding_norm_pair(standard_domain("nil2"), Z, Z) == 0.0

    def test_closed_expression(self, rng):
        D = DomainSpec([random_cmatrix(2, 2, rng), random_cmatrix(2, 2, rng)])
        for transposed in (False, True):
            V1, V2 = row_supported(rng)
            closed = embedding_norm_pair_closed(D, V1[0], V2[0], transposed)
            assert abs(closed - embedding_norm_pair(D, V1, V2, transposed)) < 1e-9 * max(1.0, closed)

    @pytest.mark.parametrize('d2, b, c', [(1.0, 0.3, 0.8), (0.5, 0.8, 0.8)])
    def test_equal_variants(self, d2, b, c, rng):
        D = canonical_upper(d2, b, c)
        for _ in range(200):
            V1, V2 = row_supported(rng)
            assert abs(embedding_norm_pair(D, V1, V2) - embedding_norm_pair(D, V1, V2, transposed=True)) < 1e-9

    def test_generic_variants_differ(self, rng):
        D = canonical_upper(0.5, 0.3, 0.8)
        differ = 0
        for _ in range(200):
            V1, V2 = row_supported(rng)
            differ += abs(embedding_norm_pair(D, V1, V2) - embedding_norm_pair(D, V1, V2, transposed=True)) > 1e-6
        assert differ >= 190

    def test_shape_mismatch(self):
        with pytest.raises(InputError):
            embedding_norm_pair(standard_domain("nil2"), np.eye(2), np.eye(3))
