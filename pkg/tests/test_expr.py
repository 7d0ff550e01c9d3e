import logging

import numpy as np
import pytest

from ballkit.errors import ArityError, DomainError, ExprSyntaxError, UnknownIdentifierError
from ballkit.expr import BinOp, Call, Neg, Num, Var, compile_expr, parse_expr, pretty, tokenize

from .conftest import random_ball_points


def test_precedence():
    f = compile_expr("2+3*4")
    assert f(0.1, 0.2, 0.3) == 14


def test_power_is_right_associative_and_binds_tighter_than_minus():
    assert compile_expr("2^3^2")(0, 0, 0) == 512
    assert compile_expr("-2^2")(0, 0, 0) == -4
    assert compile_expr("2^-1")(0, 0, 0) == 0.5


def test_composition():
    f = compile_expr("sin(cos(y))")
    assert np.isclose(f(0.0, 0.5, 0.0), np.sin(np.cos(0.5)))


def test_radius_squared_identity(rng):
    f = compile_expr("x^2 + y^2 + z^2")
    x, y, z = random_ball_points(rng, 20)
    assert np.max(np.abs(f(x, y, z) - (x**2 + y**2 + z**2))) <= 1e-15


def test_spherical_variables():
    f = compile_expr("r*cos(th) + 0*lam", coords="sph")
    assert np.isclose(f(0.5, 1.0, 0.0), 0.5)
    with pytest.raises(UnknownIdentifierError):
        parse_expr("x + 1", coords="sph")


def test_constants_and_scientific_numbers():
    assert np.isclose(compile_expr("pi + e")(0, 0, 0), np.pi + np.e)
    assert compile_expr("1.5e2 + .5")(0, 0, 0) == 150.5


def test_ast_structure():
    node = parse_expr("-x * sin(1)")
    assert node == BinOp("*", Neg(Var("x")), Call("sin", (Num(1.0),)))


def test_syntax_error_offset():
    with pytest.raises(ExprSyntaxError) as info:
        parse_expr("1 + * 2")
    assert info.value.offset == 4


def test_unbalanced_parenthesis():
    with pytest.raises(ExprSyntaxError):
        parse_expr("sin(x")


def test_unknown_identifiers():
    with pytest.raises(UnknownIdentifierError):
        parse_expr("foo(x)")
    with pytest.raises(UnknownIdentifierError):
        parse_expr("w + 1")


def test_arity():
    with pytest.raises(ArityError):
        parse_expr("sin(x, y)")


def test_domain_errors():
    with pytest.raises(DomainError):
        compile_expr("log(x)")(np.array([-0.5]), 0, 0)
    with pytest.raises(DomainError):
        compile_expr("sqrt(x)")(np.array([-0.5]), 0, 0)
    with pytest.raises(DomainError):
        compile_expr("x^0.5")(np.array([-0.5]), 0, 0)


def test_negative_base_warning(caplog):
    with caplog.at_level(logging.WARNING, logger="ballkit.expr"):
        parse_expr("(-2)^0.5")
    assert "Non-integer power" in caplog.text


@pytest.mark.parametrize(
    "src, coords",
    [
        ("2+3*4", "cart"),
        ("-x^2", "cart"),
        ("sin(cos(y))/(1+z)", "cart"),
        ("2^3^2", "cart"),
        ("-(x-y)-z", "cart"),
        ("exp(-r)*th^2", "sph"),
    ],
)
def test_pretty_round_trip(src, coords):
    node = parse_expr(src, coords)
    assert parse_expr(pretty(node), coords) == node


def test_tokenize_offsets():
    tokens = tokenize("x +  sin(y)")
    assert [t.offset for t in tokens[:4]] == [0, 2, 5, 8]
