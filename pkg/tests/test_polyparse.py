from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lecalc import (
    InputError,
    LinearChange,
    ParseError,
    Polynomial,
    VariableFrame,
    parse_polynomial,
)
from lecalc.polyparse import apply_linear_change, translate

F2 = VariableFrame(("x", "y"))
F3 = VariableFrame(("x", "y", "z"))


def P(text, frame=F2):
    return parse_polynomial(text, frame)


class TestFrame:
    def test_dimension_and_names(self):
        assert F3.ambient_dimension == 3
        assert F3.names == ("x", "y", "z")

    def test_duplicate_names_rejected(self):
        with pytest.raises(InputError):
            VariableFrame(("x", "x"))

    def test_empty_rejected(self):
        with pytest.raises(InputError):
            VariableFrame(())


class TestParse:
    def test_round_trip(self):
        p = P("x^2*y - 3*y + 1/2")
        assert P(p.to_string()) == p

    def test_precedence(self):
        assert P("x + y*x^2") == P("x") + P("y") * P("x") * P("x")

    def test_unary_minus(self):
        assert P("-x^2 - -y") == P("y") - P("x^2")

    def test_parentheses(self):
        assert P("(x + y)^2") == P("x^2 + 2*x*y + y^2")

    def test_rational_coefficients(self):
        p = P("2/3*x - 5*y")
        assert p.terms[(1, 0)] == Fraction(2, 3)

    def test_zero(self):
        assert P("0").is_zero()

    def test_implicit_multiplication_rejected(self):
        with pytest.raises(ParseError):
            P("2x")

    def test_double_star_rejected(self):
        with pytest.raises(ParseError):
            P("x**2")

    def test_unknown_variable(self):
        with pytest.raises(ParseError):
            P("x + w")

    def test_trailing_garbage(self):
        with pytest.raises(ParseError):
            P("x + y)")

    def test_negative_exponent_rejected(self):
        with pytest.raises(ParseError):
            P("x^-1")

    def test_division_only_by_integer(self):
        with pytest.raises(ParseError):
            P("x/y")


class TestArithmetic:
    def test_degrees(self):
        p = P("x^3*y + x")
        assert p.total_degree() == 4
        assert p.min_total_degree() == 1

    def test_homogeneous(self):
        assert P("x^2*y + y^3").is_homogeneous()
        assert not P("x^2 + y^3").is_homogeneous()

    def test_constant_term(self):
        assert P("x + 7").constant_term == 7
        assert P("x").constant_term == 0

    def test_partial(self):
        assert P("x^2*y^3").partial(1) == P("3*x^2*y^2")
        assert P("5").partial(0).is_zero()

    def test_translate(self):
        p = P("x^2 + y")
        assert translate(p, [1, -2]) == P("x^2 + 2*x + y - 1")

    def test_translate_then_back(self):
        p = P("x^3 - 2*x*y + y^2")
        assert translate(translate(p, [3, -1]), [-3, 1]) == p

    def test_product_degree(self):
        p, q = P("x^2 + y"), P("x - y^3")
        assert (p * q).total_degree() == p.total_degree() + q.total_degree()


class TestLinearChange:
    def test_singular_rejected(self):
        with pytest.raises(InputError, match="singular"):
            LinearChange(F2, [[1, 2], [2, 4]])

    def test_inverse_round_trip(self):
        ch = LinearChange(F2, [[2, 1], [1, 1]])
        p = P("x^2*y - y^3 + x")
        assert apply_linear_change(apply_linear_change(p, ch), ch.inverse()) == p

    def test_determinant(self):
        ch = LinearChange(F2, [[2, 1], [1, 1]])
        assert ch.determinant == 1

    def test_identity(self):
        ch = LinearChange.identity(F3)
        assert ch.is_identity()
        p = parse_polynomial("x*y*z - z^2", F3)
        assert apply_linear_change(p, ch) == p

    def test_substitution_value(self):
        # x -> x + y, y -> y
        ch = LinearChange(F2, [[1, 1], [0, 1]])
        assert apply_linear_change(P("x*y"), ch) == P("x*y + y^2")


def _poly_strategy(frame):
    n = frame.ambient_dimension
    exps = st.tuples(*[st.integers(min_value=0, max_value=4)] * n)
    coeff = st.builds(
        Fraction,
        st.integers(min_value=-9, max_value=9),
        st.integers(min_value=1, max_value=4),
    )
    return st.dictionaries(exps, coeff, max_size=6).map(
        lambda d: Polynomial(frame, d)
    )


class TestProperties:
    @given(_poly_strategy(F2))
    def test_string_round_trip(self, p):
        assert parse_polynomial(p.to_string(), F2) == p

    @given(_poly_strategy(F2), _poly_strategy(F2))
    def test_derivation_rule(self, p, q):
        lhs = (p * q).partial(0)
        rhs = p.partial(0) * q + p * q.partial(0)
        assert lhs == rhs

    @given(_poly_strategy(F3))
    def test_translate_preserves_degree(self, p):
        moved = translate(p, [1, 2, -1])
        assert moved.total_degree() == p.total_degree()
