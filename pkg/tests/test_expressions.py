import cmath

import numpy as np
import pytest

from polyball.expressions import (
    BinOp,
    EvalError,
    Lit,
    ParseError,
    Pow,
    Var,
    compile_field,
    evaluate,
    parse,
    to_polynomial,
    to_source,
)
from polyball.polynomials import poly_eval


class TestParse:
    def test_structure(self):
        ast = parse("x1^2 - x2^2", 2)
        assert isinstance(ast, BinOp) and ast.op == "-"
        assert isinstance(ast.left, Pow) and ast.left.exponent == 2
        assert ast.left.base == Var(1)

    def test_imaginary_unit(self):
        ast = parse("i*x1", 2)
        assert ast == BinOp("*", Lit(1j), Var(1))

    def test_precedence(self):
        assert abs(evaluate(parse("2 + 3 * 4 ^ 2", 1), [0.0]) - 50) < 1e-15
        assert abs(evaluate(parse("-2 ^ 2", 1), [0.0]) + 4) < 1e-15  # ^ binds tighter
        assert abs(evaluate(parse("2 ^ 3 ^ 2", 1), [0.0]) - 512) < 1e-15  # right assoc

    def test_division_left_associative(self):
        assert abs(evaluate(parse("8 / 4 / 2", 1), [0.0]) - 1.0) < 1e-15

    def test_float_literals(self):
        assert evaluate(parse("0.5 + 1.5e1", 1), [0.0]) == 15.5

    def test_trailing_operator(self):
        with pytest.raises(ParseError) as err:
            parse("x1 +", 2)
        assert err.value.line == 1
        assert err.value.column == 5

    def test_unknown_identifier_position(self):
        with pytest.raises(ParseError) as err:
            parse("1 + foo", 2)
        assert err.value.column == 5

    def test_variable_out_of_range(self):
        with pytest.raises(ParseError) as err:
            parse("x3", 2)
        assert err.value.column == 1

    def test_unbalanced_parenthesis(self):
        with pytest.raises(ParseError) as err:
            parse("(x1 + 1", 2)
        assert err.value.column == 8
        assert ")" in err.value.expected

    def test_non_integer_exponent_rejected(self):
        with pytest.raises(ParseError) as err:
            parse("x1 ^ x2", 2)
        assert err.value.column == 6

    def test_point_functions_take_the_point(self):
        ast = parse("abs2(x)", 3)
        assert evaluate(ast, [1.0, 2.0, 2.0]) == 9.0
        with pytest.raises(ParseError):
            parse("abs2(x1)", 3)

    def test_prefix_switch(self):
        ast = parse("z1 + i*z2", 2, var_prefix="z")
        assert evaluate(ast, [2.0, 3.0]) == 2 + 3j
        with pytest.raises(ParseError):
            parse("x1", 2, var_prefix="z")


class TestEvaluate:
    def test_difference_of_squares(self):
        assert abs(evaluate(parse("x1^2 - x2^2", 2), [0.6, 0.8]) + 0.28) < 1e-15

    def test_imaginary_scaling(self):
        assert evaluate(parse("i*x1", 2), [1.0, 0.0]) == 1j

    def test_manufactured_field(self):
        assert evaluate(parse("1 + abs2(x)*x1", 2), [0.5, 0.0]) == 1.125

    def test_principal_sqrt(self):
        assert evaluate(parse("sqrt(0 - 1)", 1), [0.0]) == 1j

    def test_scalar_functions(self):
        z = [0.3]
        assert abs(evaluate(parse("exp(x1)", 1), z) - cmath.exp(0.3)) < 1e-15
        assert abs(evaluate(parse("sin(x1) ^ 2 + cos(x1) ^ 2", 1), z) - 1) < 1e-14
        assert evaluate(parse("re(i*x1) + im(i*x1)", 1), z) == 0.3

    def test_normh_is_hermitian(self):
        assert abs(evaluate(parse("normH(x)", 2), [3.0, 4j]) - 5.0) < 1e-15
        # abs2 is the bilinear square, not the Hermitian one
        assert abs(evaluate(parse("abs2(x)", 2), [3.0, 4j]) - (9 - 16)) < 1e-15

    def test_division_by_zero_location(self):
        with pytest.raises(EvalError) as err:
            evaluate(parse("x1 / (x2 - x2)", 2), [1.0, 5.0])
        assert err.value.column == 4

    def test_complex_arithmetic(self):
        value = evaluate(parse("(x1 + i*x2) ^ 3", 2), [1.0, 1.0])
        assert abs(value - (1 + 1j) ** 3) < 1e-14


class TestPrinterRoundTrip:
    CASES = [
        "x1^2 - x2^2",
        "1 + abs2(x)*x1",
        "-x1 * (2.5 - i) / 4",
        "exp(sin(x1)) + sqrt(x2 ^ 2)",
        "i",
        "x1 ^ -2",
        "normH(x) - re(x1) + im(x2)",
        "((x1))",
        "2 ^ 3 ^ 2",
    ]

    @pytest.mark.parametrize("source", CASES)
    def test_parse_print_parse(self, source):
        ast = parse(source, 2)
        printed = to_source(ast)
        assert parse(printed, 2) == ast

    def test_negative_literal_printing(self):
        ast = parse("0 - 2.5", 1)
        assert parse(to_source(ast), 1) == ast


def _random_poly_source(rng, n, depth=0):
    choice = rng.integers(0, 7 if depth < 3 else 3)
    if choice == 0:
        return format(rng.uniform(-4, 4), ".3f")
    if choice == 1:
        return f"x{rng.integers(1, n + 1)}"
    if choice == 2:
        return "i" if rng.random() < 0.3 else str(rng.integers(0, 5))
    a = _random_poly_source(rng, n, depth + 1)
    b = _random_poly_source(rng, n, depth + 1)
    if choice == 3:
        return f"({a} + {b})"
    if choice == 4:
        return f"({a} - {b})"
    if choice == 5:
        return f"({a} * {b})"
    return f"({a} ^ {rng.integers(0, 4)})"


class TestPolynomialAgreement:
    def test_eval_matches_poly_eval(self):
        rng = np.random.default_rng(17)
        checked = 0
        while checked < 100:
            n = int(rng.integers(1, 4))
            source = _random_poly_source(rng, n)
            ast = parse(source, n)
            poly = to_polynomial(ast, n)
            if poly.degree() > 12:
                continue
            point = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            expected = poly_eval(poly, point)
            got = evaluate(ast, point)
            assert abs(got - expected) <= 1e-12 * max(1.0, abs(expected))
            checked += 1

    def test_abs2_becomes_radial_square(self):
        poly = to_polynomial(parse("1 + abs2(x)*x1", 2), 2)
        assert poly_eval(poly, np.array([0.5, 0.0])) == 1.125

    def test_constant_division_allowed(self):
        poly = to_polynomial(parse("x1 / 4", 2), 2)
        assert poly_eval(poly, np.array([2.0, 0.0])) == 0.5

    def test_nonpolynomial_rejected(self):
        for source in ("sin(x1)", "x1 / x2", "x1 ^ -1", "normH(x)"):
            with pytest.raises(ValueError):
                to_polynomial(parse(source, 2), 2)


class TestCompileField:
    def test_wraps_as_field_function(self):
        field = compile_field("z1 + 2*z2", 2, var_prefix="z")
        assert field.dim == 2
        assert field(np.array([1.0, 3.0])) == 7.0
        batch = field.eval_many(np.array([[1.0, 3.0], [0.0, 1.0]]))
        assert np.allclose(batch, [7.0, 2.0])
