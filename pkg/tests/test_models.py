import json

import numpy as np
import pytest

from src.controllers.base_controller import CommandOption, parse_point
from src.core.errors import InputError
from src.core.matrix_core import cmatrix_to_json
from src.models import (
    ClosedFormResult,
    CurvatureResult,
    DomainSpec,
    GFunctionSpec,
    KernelSpec,
    RunConfig,
    SearchResult,
    SpecStore,
    VTuple,
)
from src.models.domain_spec import standard_domain


@pytest.fixture
def store(tmp_path):
    return SpecStore(str(tmp_path))


class TestDomainSpec:

    def test_json_codec(self):
        D = standard_domain("nil2")
        again = DomainSpec.from_json(D.to_json())
        assert again.m == 2 and again.n == 2
        assert all(np.array_equal(A, B) for A, B in zip(D.mats, again.mats))

    def test_malformed_json_text(self):
        with pytest.raises(InputError, match="DomainSpec") as info:
            DomainSpec.from_json('{"m": 1,\n "n": 1,\n "mats": [[[[1, 0]]]]')
        assert info.value.line == 3

    def test_declared_count_mismatch(self):
        data = standard_domain("nil2").to_dict()
        data["m"] = 3
        with pytest.raises(InputError, match="m=3"):
            DomainSpec.from_dict(data)

    def test_declared_size_mismatch(self):
        data = standard_domain("nil2").to_dict()
        data["n"] = 3
        with pytest.raises(InputError):
            DomainSpec.from_dict(data)

    def test_missing_field(self):
        with pytest.raises(InputError, match="mats"):
            DomainSpec.from_dict({"m": 1, "n": 1})

    def test_dependent_matrices(self):
        with pytest.raises(InputError, match="dependent"):
            DomainSpec([np.eye(2), 2 * np.eye(2)])

    def test_ragged_shapes(self):
        with pytest.raises(InputError):
            DomainSpec([np.eye(2), np.eye(3)])

    def test_non_finite_entry(self):
        with pytest.raises(InputError):
            DomainSpec([[[np.nan, 0], [0, 1]]])


class TestVTuple:

    def test_from_rows(self):
        V = VTuple.from_rows([[1, 0], [0, 1j]])
        assert (V.m, V.p, V.q) == (2, 1, 2)
        assert np.array_equal(V.rows(), np.array([[1, 0], [0, 1j]]))

    def test_json_codec(self):
        V = VTuple([np.ones((2, 3)), 1j * np.ones((2, 3))])
        again = VTuple.from_json(V.to_json())
        assert (again.p, again.q) == (2, 3)
        assert np.array_equal(again.vs[1], V.vs[1])

    def test_rows_needs_single_row(self):
        with pytest.raises(InputError):
            VTuple([np.ones((2, 2))]).rows()

    def test_mixed_shapes(self):
        with pytest.raises(InputError):
            VTuple([np.ones((1, 2)), np.ones((1, 3))])


class TestKernelSpec:

    @pytest.mark.parametrize('kind, lam, r, s', [
        ("annulus", 1.0, None, None),
        ("nil2", 0.0, None, None),
        ("nil2", -1.0, None, None),
        ("matrix_ball", 1.0, None, 2),
        ("matrix_ball", 1.0, 0, 2),
    ])
    def test_rejects(self, kind, lam, r, s):
        with pytest.raises(InputError):
            KernelSpec(kind, lam, r, s)

    def test_matrix_ball_parameters(self):
        spec = KernelSpec("matrix_ball", 0.5, 2, 3)
        assert (spec.dim, spec.p, spec.nu) == (6, 5, 2.5)

    def test_json_codec(self):
        spec = KernelSpec.from_json(KernelSpec("matrix_ball", 0.5, 2, 3).to_json())
        assert (spec.kind, spec.lam, spec.r, spec.s) == ("matrix_ball", 0.5, 2, 3)
        assert KernelSpec.from_dict({"kind": "nil2", "lambda": 2}).dim == 2


class TestReports:

    def test_closed_form_agree(self):
        result = ClosedFormResult("x", np.bool_(True), 0.5, np.bool_(False), 1.5)
        data = result.to_dict()
        assert data["agree"] is False
        assert type(data["verdict"]) is bool
        json.dumps(data)
        assert ClosedFormResult.from_dict(data).exact_value == 1.5

    def test_closed_form_without_printed_verdict(self):
        assert not ClosedFormResult("x", None, None, True, 1.0).agree

    def test_curvature_result_codec(self):
        result = CurvatureResult(K=np.diag([4.0, 10 / 3]) + 0j, A0=np.eye(2) + 0j, w=np.zeros(2) + 0j, method="closed_form")
        again = CurvatureResult.from_json(result.to_json())
        assert np.allclose(again.K, result.K)
        assert again.method == "closed_form"

    def test_search_result_codec(self):
        result = SearchResult(v0=0.5 + 0.5j, lambda0=1.0, beta0=np.array([0.6, 0.8j]), g_min=0.0,
                              complete_test=-0.5, verdict=True, bset_g_values=[0.25])
        again = SearchResult.from_json(result.to_json())
        assert again.v0 == 0.5 + 0.5j
        assert np.allclose(again.beta0, result.beta0)

    def test_g_function_admissible(self):
        D = standard_domain("nil2")
        assert GFunctionSpec.from_domain(D, 1.0, 0.0).admissible()
        assert not GFunctionSpec.from_domain(D, 1.1, 0.0).admissible()


class TestRunConfig:

    def test_defaults(self):
        config = RunConfig("check", ["a.json"])
        assert config.fmt == "json"
        assert config.rng().integers(1 << 30) == RunConfig("check").rng().integers(1 << 30)

    @pytest.mark.parametrize('kwargs', [{"fmt": "xml"}, {"tol": 0.0}, {"tol": -1e-9}])
    def test_rejects(self, kwargs):
        with pytest.raises(InputError):
            RunConfig("check", **kwargs)

    def test_envelope(self):
        env = RunConfig("search", seed=7, tol=1e-8).envelope({"status": "found"})
        assert env["seed"] == 7
        assert env["tolerances"] == {"contractive": 1e-8}
        assert env["result"] == {"status": "found"}
        assert env["command"] == "search"

    def test_codec(self):
        config = RunConfig.from_dict(RunConfig("thresholds", fmt="csv", options={"example": "nil2"}).to_dict())
        assert config.fmt == "csv" and config.options == {"example": "nil2"}


class TestSpecStore:

    def test_load_domain(self, store, tmp_path):
        (tmp_path / "d.json").write_text(standard_domain("nil2").to_json())
        assert store.load_domain("d.json").m == 2

    def test_malformed_json(self, store, tmp_path):
        (tmp_path / "bad.json").write_text('{"m": 2,\n  "n": }')
        with pytest.raises(InputError) as info:
            store.load_json("bad.json")
        assert info.value.line == 2
        assert info.value.column is not None

    def test_missing_file(self, store):
        with pytest.raises(InputError, match="no such file"):
            store.load_json("nope.json")

    def test_wrong_entry_format(self, store, tmp_path):
        (tmp_path / "v.json").write_text(json.dumps({"m": 1, "vs": [[[1, 0, 0]]]}))
        with pytest.raises(InputError):
            store.load_vtuple("v.json")

    def test_save_text(self, store, tmp_path):
        store.save_text("out.txt", "hello")
        assert (tmp_path / "out.txt").read_text() == "hello"


class TestCommandOption:

    @pytest.mark.parametrize('raw, expected', [
        ("check", CommandOption.CHECK),
        ("CHECK_COMPLETE", CommandOption.CHECK_COMPLETE),
        ("bergman_curvature", CommandOption.BERGMAN_CURVATURE),
        ("Jet-Gram", CommandOption.JET_GRAM),
    ])
    def test_lookup(self, raw, expected):
        assert CommandOption(raw) is expected

    def test_unknown(self):
        with pytest.raises(ValueError):
            CommandOption("frobnicate")


class TestParsePoint:

    def test_complex_literals(self):
        assert np.array_equal(parse_point("0.1, 0.2-0.3j", 2), np.array([0.1, 0.2 - 0.3j]))

    @pytest.mark.parametrize('text, length', [(None, 2), ("abc", 1), ("0.1", 2)])
    def test_rejects(self, text, length):
        with pytest.raises(InputError):
            parse_point(text, length)


def test_matrix_codec_layout():
    assert cmatrix_to_json(np.array([[1 + 2j]])) == [[[1.0, 2.0]]]
