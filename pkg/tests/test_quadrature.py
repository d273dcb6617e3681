import math

import numpy as np
import pytest

from polyball.quadrature import (
    QuadratureRule,
    integrate_sphere,
    surface_area,
    unit_sphere_rule,
)


class TestSurfaceArea:
    def test_known_values(self):
        assert surface_area(2) == pytest.approx(2 * math.pi, rel=1e-15)
        assert surface_area(3) == pytest.approx(4 * math.pi, rel=1e-15)
        assert surface_area(4) == pytest.approx(2 * math.pi**2, rel=1e-15)
        assert surface_area(5) == pytest.approx(8 * math.pi**2 / 3, rel=1e-15)

    def test_rejects_low_dimension(self):
        with pytest.raises(ValueError):
            surface_area(1)


class TestRuleConstruction:
    def test_circle_order_four(self):
        rule = unit_sphere_rule(2, 4)
        expected = np.array([[1, 0], [0, 1], [-1, 0], [0, -1]], dtype=float)
        assert np.max(np.abs(rule.nodes - expected)) < 1e-12
        assert np.allclose(rule.weights, math.pi / 2)

    @pytest.mark.parametrize("n,order", [(2, 16), (3, 12), (4, 8), (5, 6)])
    def test_weights_sum_to_area(self, n, order):
        rule = unit_sphere_rule(n, order)
        assert abs(rule.weights.sum() - surface_area(n)) <= 1e-10 * surface_area(n)
        assert np.all(rule.weights > 0)
        assert np.max(np.abs(np.linalg.norm(rule.nodes, axis=1) - 1.0)) < 1e-12

    def test_node_counts(self):
        assert len(unit_sphere_rule(2, 10)) == 10
        assert len(unit_sphere_rule(3, 8)) == 8 * 16
        assert len(unit_sphere_rule(4, 6)) == 6 * 6 * 12

    def test_invalid_arguments(self):
        with pytest.raises(ValueError):
            unit_sphere_rule(1, 8)
        with pytest.raises(ValueError):
            unit_sphere_rule(3, 0)

    def test_rule_validation(self):
        with pytest.raises(ValueError):
            QuadratureRule(2, np.array([[2.0, 0.0]]), np.array([2 * math.pi]))
        nodes = unit_sphere_rule(2, 4).nodes
        with pytest.raises(ValueError):
            QuadratureRule(2, nodes, np.array([1.0, 1.0, 1.0, -1.0]))
        with pytest.raises(ValueError):
            QuadratureRule(2, nodes, np.full(4, 1.0))  # wrong total weight


class TestMoments:
    @pytest.mark.parametrize("n,order", [(2, 16), (3, 16), (4, 10), (5, 8)])
    def test_low_moments(self, n, order):
        rule = unit_sphere_rule(n, order)
        area = surface_area(n)
        ones = integrate_sphere(rule, lambda z: 1.0 + 0j)
        assert abs(ones - area) <= 1e-10 * area
        first = integrate_sphere(rule, lambda z: complex(z[0]))
        assert abs(first) <= 1e-12 * area
        second = integrate_sphere(rule, lambda z: complex(z[0]) ** 2)
        assert abs(second - area / n) <= 1e-10 * area

    def test_circle_second_moment(self):
        rule = unit_sphere_rule(2, 8)
        value = integrate_sphere(rule, lambda z: complex(z[0]) ** 2)
        assert abs(value - math.pi) <= 1e-12

    def test_circle_trig_exactness(self):
        order = 12
        rule = unit_sphere_rule(2, order)
        theta = np.arctan2(rule.nodes[:, 1], rule.nodes[:, 0])
        for k in range(1, order):
            cos_int = float(np.sum(rule.weights * np.cos(k * theta)))
            sin_int = float(np.sum(rule.weights * np.sin(k * theta)))
            assert abs(cos_int) <= 1e-12
            assert abs(sin_int) <= 1e-12


class TestConvergence:
    @pytest.mark.parametrize("n", [2, 3])
    def test_exponential_moment_converges(self, n):
        reference_order = 96 if n == 3 else 256
        reference = integrate_sphere(
            unit_sphere_rule(n, reference_order), lambda z: np.exp(complex(z[0]))
        )
        errors = []
        for order in (2, 4, 8, 16):
            value = integrate_sphere(
                unit_sphere_rule(n, order), lambda z: np.exp(complex(z[0]))
            )
            errors.append(abs(value - reference))
        for coarse, fine in zip(errors, errors[1:]):
            if coarse <= 1e-12:
                break
            assert fine <= coarse / 10 or fine <= 1e-12


class TestIntegrateSphere:
    def test_accepts_field_functions(self):
        from polyball.polynomials import FieldFunction, MultiPoly

        poly = MultiPoly.variable(1, 3) ** 2
        rule = unit_sphere_rule(3, 16)
        value = integrate_sphere(rule, FieldFunction.from_polynomial(poly))
        assert abs(value - surface_area(3) / 3) < 1e-10

    def test_dimension_mismatch(self):
        from polyball.polynomials import FieldFunction

        rule = unit_sphere_rule(2, 8)
        with pytest.raises(ValueError):
            integrate_sphere(rule, FieldFunction(3, lambda z: 0j))

    def test_deterministic(self):
        rule = unit_sphere_rule(3, 24)
        f = lambda z: np.exp(complex(z[0]) + 2j * complex(z[1]))
        assert integrate_sphere(rule, f) == integrate_sphere(rule, f)


class TestCsvDump:
    def test_round_trip(self, tmp_path):
        rule = unit_sphere_rule(3, 4)
        path = tmp_path / "rule.csv"
        rule.dump_csv(path)
        lines = path.read_text().strip().splitlines()
        assert lines[0] == "x1,x2,x3,weight"
        data = np.array([[float(v) for v in line.split(",")] for line in lines[1:]])
        assert data.shape == (len(rule), 4)
        assert np.max(np.abs(data[:, :3] - rule.nodes)) < 1e-16
        assert np.max(np.abs(data[:, 3] - rule.weights)) < 1e-16
