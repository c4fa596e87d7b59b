import math

import numpy as np
import pytest

from src.expressions import parse_expression
from src.utils.errors import ExpressionSyntaxError, UnknownIdentifierError


class TestEvaluation:
    def test_steep_weight(self):
        expr = parse_expression("exp(k*(10-k)^2)")
        assert expr.evaluate(k=3) == pytest.approx(math.exp(147), rel=1e-14)
        assert expr.free_variables == frozenset({"k"})

    def test_arctan_primitive(self):
        value = parse_expression("atan(400*t)/400").evaluate(t=0.1)
        assert value == pytest.approx(3.864503e-3, rel=1e-6)

    @pytest.mark.parametrize(
        "src, expected",
        [
            ("2^3^2", 512.0),
            ("-2^2", -4.0),
            ("8/4/2", 1.0),
            ("2-3-4", -5.0),
            ("2^-1", 0.5),
            ("1+2*3", 7.0),
            ("(1+2)*3", 9.0),
            ("pow(2, 10)", 1024.0),
            ("min(3, -1) + max(3, -1)", 2.0),
            ("abs(-2.5e-1)", 0.25),
        ],
    )
    def test_precedence(self, src, expected):
        assert parse_expression(src).evaluate() == pytest.approx(expected, rel=1e-15)

    def test_constants(self):
        assert parse_expression("pi").evaluate() == math.pi
        assert parse_expression("ln(e)").evaluate() == pytest.approx(1.0)

    def test_elementwise_on_arrays(self):
        k = np.arange(1, 6)
        np.testing.assert_allclose(parse_expression("2*k/11 + 3").evaluate(k=k), 2 * k / 11 + 3)

    def test_bind_broadcasts(self):
        fn = parse_expression("sin(x)").bind("k", "x")
        out = fn(np.array([1, 2]), 0.5)
        np.testing.assert_allclose(out, [math.sin(0.5)] * 2)
        assert parse_expression("3").bind("k")(2) == 3.0

    def test_missing_binding(self):
        with pytest.raises(UnknownIdentifierError):
            parse_expression("k + x").evaluate(k=1)


class TestErrors:
    @pytest.mark.parametrize("src, offset", [("1+", 2), ("2*)", 2), ("(1", 2), ("1 $ 2", 2)])
    def test_syntax_error_offset(self, src, offset):
        with pytest.raises(ExpressionSyntaxError) as info:
            parse_expression(src)
        assert info.value.offset == offset
        assert info.value.code == "syntax-error"

    def test_unknown_identifier(self):
        with pytest.raises(UnknownIdentifierError) as info:
            parse_expression("k + y")
        assert info.value.details["identifier"] == "y"
        assert info.value.details["offset"] == 4

    def test_unknown_function(self):
        with pytest.raises(UnknownIdentifierError):
            parse_expression("tanh(x)")

    def test_wrong_arity(self):
        with pytest.raises(UnknownIdentifierError) as info:
            parse_expression("exp(1, 2)")
        assert info.value.details["arity"] == 1

    def test_restricted_variables(self):
        parse_expression("k^2", variables=("k",))
        with pytest.raises(UnknownIdentifierError):
            parse_expression("x + 1", variables=("k",))

    def test_bind_rejects_unbound_names(self):
        with pytest.raises(UnknownIdentifierError):
            parse_expression("k * t").bind("k")
