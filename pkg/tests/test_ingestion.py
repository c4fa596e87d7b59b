import json

import numpy as np
import pytest

from conftest import arctan_G, arctan_g, steep_F, steep_df, steep_f
from src.ingestion import (
    EXAMPLE_IDS,
    ConfigDocument,
    build_instance,
    config_schema,
    example_document,
    load_config,
)
from src.utils.errors import ConfigError, ExpressionSyntaxError, UnknownIdentifierError


def _minimal(**instance):
    data = {"T": 3, "p": 2.0, "f": "sin(x)"}
    data.update(instance)
    return {"instance": data}


class TestBuiltInExamples:
    def test_ids(self):
        assert EXAMPLE_IDS == ("ex3.3", "ex3.7", "ex3.10")

    @pytest.mark.parametrize("example_id", ["ex3.3", "ex3.10"])
    def test_steep_example_matches_hand_coded(self, steep_instance, example_id):
        inst = build_instance(example_document(example_id))
        np.testing.assert_allclose(inst.w, steep_instance.w, rtol=1e-14)
        np.testing.assert_allclose(inst.q[1:], steep_instance.q[1:], rtol=1e-14)
        np.testing.assert_allclose(inst.p, steep_instance.p, rtol=1e-14)
        ks = np.arange(1, 11)
        for x in (-1e-4, 1e-6, 3e-6, 0.5):
            xs = np.full(10, x)
            np.testing.assert_allclose(inst.nonlinearity.f_values(ks, xs), steep_f(ks, xs), rtol=1e-13)
            np.testing.assert_allclose(inst.nonlinearity.df_values(ks, xs), steep_df(ks, xs), rtol=1e-13)
            np.testing.assert_allclose(inst.nonlinearity.F(ks, xs), steep_F(ks, xs), rtol=1e-13)
        assert inst.nonlinearity.growth.c0 == 0.000012
        assert inst.lam == 1.0

    def test_arctan_example_matches_hand_coded(self, arctan_instance):
        inst = build_instance(example_document("ex3.7"))
        np.testing.assert_array_equal(inst.p, arctan_instance.p)
        assert inst.nonlinearity.separable is not None
        xs = np.linspace(-0.2, 0.2, 10)
        ks = np.arange(1, 11)
        np.testing.assert_allclose(inst.nonlinearity.f_values(ks, xs), arctan_g(xs), rtol=1e-14)
        np.testing.assert_allclose(inst.nonlinearity.F(ks, xs), arctan_G(xs), rtol=1e-14)

    def test_reference_values_are_loaded(self):
        doc = example_document("ex3.10")
        assert {r.quantity for r in doc.reference_values} >= {"F5_lhs", "F5_rhs"}
        assert doc.run.solver.method == "minimize"

    def test_unknown_example(self):
        with pytest.raises(ConfigError):
            example_document("ex9.9")

    def test_documents_are_independent(self):
        a = example_document("ex3.7")
        a.run.c = 1.0
        assert example_document("ex3.7").run.c == 17.1


class TestValidation:
    def test_lambda_alias(self):
        doc = ConfigDocument.from_dict({**_minimal(), "run": {"lambda": 2.5}})
        assert doc.run.lam == 2.5
        assert build_instance(doc).lam == 2.5

    def test_array_profiles(self):
        doc = ConfigDocument.from_dict(_minimal(w=[1.0, 2.0, 3.0, 4.0], p=[2.0, 2.5, 3.0, 3.5, 4.0]))
        inst = build_instance(doc)
        np.testing.assert_array_equal(inst.w, [1.0, 2.0, 3.0, 4.0])
        np.testing.assert_array_equal(inst.p, [2.0, 2.5, 3.0, 3.5, 4.0])

    def test_separable_beta_array(self):
        doc = ConfigDocument.from_dict(
            {"instance": {"T": 3, "p": 3.0, "separable": {"beta": [1.0, 0.0, 2.0], "g": "x"}}}
        )
        inst = build_instance(doc)
        np.testing.assert_array_equal(inst.nonlinearity.f_values(np.arange(1, 4), np.ones(3)), [1.0, 0.0, 2.0])

    def test_wrong_beta_length(self):
        doc = ConfigDocument.from_dict({"instance": {"T": 3, "p": 3.0, "separable": {"beta": [1.0], "g": "x"}}})
        with pytest.raises(ConfigError):
            build_instance(doc)

    @pytest.mark.parametrize(
        "data",
        [
            {"instance": {"T": 3, "p": 2.0}},
            {"instance": {"T": 3, "p": 2.0, "f": "x", "separable": {"g": "x"}}},
            {"instance": {"T": 3, "p": 2.0, "f": "x", "colour": "red"}},
            {"instance": {"T": 0, "p": 2.0, "f": "x"}},
            {**_minimal(), "run": {"lambda_grid": {"lo": 2.0, "hi": 1.0, "n": 3}}},
            {**_minimal(), "run": {"lambda_grid": {"lo": 0.0, "hi": 1.0, "n": 3, "log": True}}},
            {**_minimal(), "output": {"format": "xml"}},
        ],
    )
    def test_rejected_documents(self, data):
        with pytest.raises(ConfigError) as info:
            ConfigDocument.from_dict(data)
        assert info.value.details["problems"]

    def test_expression_errors_surface_unwrapped(self):
        with pytest.raises(UnknownIdentifierError):
            ConfigDocument.from_dict(_minimal(f="sin(y)"))
        with pytest.raises(ExpressionSyntaxError):
            ConfigDocument.from_dict(_minimal(w="2*"))

    def test_invalid_json(self):
        with pytest.raises(ConfigError):
            ConfigDocument.from_json("{\"instance\": ")

    def test_load_config(self, tmp_path):
        path = tmp_path / "problem.json"
        path.write_text(json.dumps(_minimal(q="k")), encoding="utf-8")
        doc = load_config(path)
        np.testing.assert_array_equal(build_instance(doc).q[1:], [1.0, 2.0, 3.0, 4.0])

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            load_config(tmp_path / "absent.json")


def test_schema_uses_lambda_alias():
    schema = json.dumps(config_schema())
    assert "\"lambda\"" in schema
    assert "InstanceSpec" in schema
