import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyball.geometry import (
    LieBall,
    RotatedPoint,
    as_cvec,
    canonicalize,
    cnorm,
    cnorm_pow,
    csqrt_principal,
    hermitian_norm,
    lie_norm,
    normalize_angle,
    principal_power,
    rotation_factor,
)

finite_floats = st.floats(-10.0, 10.0, allow_nan=False, allow_infinity=False)
angles = st.floats(-math.pi + 1e-9, math.pi, allow_nan=False, allow_infinity=False)


def random_complex_vec(rng, n):
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


class TestCsqrtPrincipal:
    def test_positive_real(self):
        assert csqrt_principal(4) == 2

    def test_negative_real_maps_up(self):
        assert csqrt_principal(-1) == 1j
        # a signed zero must not flip the branch
        assert csqrt_principal(complex(-1.0, -0.0)) == 1j

    def test_2i(self):
        root = csqrt_principal(2j)
        assert abs(root - (1 + 1j)) < 1e-15
        assert abs(root * root - 2j) < 1e-15

    def test_rejects_nonfinite(self):
        with pytest.raises(ValueError):
            csqrt_principal(float("nan"))

    @given(st.complex_numbers(max_magnitude=1e6, allow_nan=False, allow_infinity=False))
    def test_branch_consistency(self, w):
        root = csqrt_principal(w)
        assert abs(root * root - w) <= 1e-12 * max(1.0, abs(w))
        assert root.real >= 0.0


class TestCnorm:
    def test_real_vector(self):
        assert cnorm([3.0, 4.0]) == 5.0

    def test_isotropic_direction(self):
        assert cnorm([1j, 0.0]) == 1j

    def test_rotated_real_vector(self):
        phi = math.pi / 3
        z = cmath.exp(1j * phi) * np.array([1.0, 2.0, 2.0])
        assert abs(cnorm(z) - 3 * cmath.exp(1j * phi)) < 1e-12

    @given(angles, st.lists(finite_floats, min_size=1, max_size=6))
    @settings(max_examples=200)
    def test_rotation_identity(self, phi, entries):
        x = np.array(entries)
        value = cnorm(cmath.exp(1j * phi) * x)
        expected = rotation_factor(phi) * float(np.linalg.norm(x))
        assert abs(value - expected) <= 1e-12 * max(1.0, np.linalg.norm(x))


class TestCnormPow:
    def test_even_power_is_bilinear_square(self):
        assert cnorm_pow([1j, 0.0], 2) == -1

    def test_unit_real_vector(self):
        assert cnorm_pow([0.0, 1.0, 0.0], 3) == 1

    def test_odd_power_uses_principal_log(self):
        z = cmath.exp(1j * math.pi / 2) * np.array([1.0, 0.0])
        assert abs(cnorm_pow(z, 3) - (-1j)) < 1e-12

    def test_requires_positive_exponent(self):
        with pytest.raises(ValueError):
            cnorm_pow([1.0, 0.0], 0)

    def test_zero_vector(self):
        assert cnorm_pow([0.0, 0.0], 3) == 0

    @given(
        st.lists(
            st.complex_numbers(max_magnitude=5.0, allow_nan=False, allow_infinity=False),
            min_size=1,
            max_size=5,
        ),
        st.integers(min_value=1, max_value=4),
    )
    @settings(max_examples=200)
    def test_even_exactness(self, entries, half):
        z = np.array(entries, dtype=complex)
        m = 2 * half
        w = complex(np.sum(z * z))
        direct = w**half
        assert abs(cnorm_pow(z, m) - direct) <= 1e-12 * max(1.0, abs(direct))


class TestRotationFactor:
    def test_zero(self):
        assert rotation_factor(0.0) == 1

    def test_pi(self):
        assert abs(rotation_factor(math.pi) - 1.0) < 1e-12

    def test_minus_three_quarter_pi(self):
        assert abs(rotation_factor(-3 * math.pi / 4) - cmath.exp(1j * math.pi / 4)) < 1e-12

    @given(angles)
    @settings(max_examples=300)
    def test_matches_principal_root(self, phi):
        assert abs(rotation_factor(phi) - csqrt_principal(cmath.exp(2j * phi))) < 1e-12


class TestHermitianNorm:
    def test_examples(self):
        assert abs(hermitian_norm([1.0, 1j]) - math.sqrt(2)) < 1e-15
        assert hermitian_norm([3.0, 4.0]) == 5.0

    def test_rotation_invariant(self):
        x = np.array([0.3, -1.2, 0.5])
        assert abs(hermitian_norm(cmath.exp(0.77j) * x) - np.linalg.norm(x)) < 1e-12


class TestLieNorm:
    def test_real_vector(self):
        assert lie_norm([1.0, 2.0, 2.0]) == 3.0

    def test_rotated_real_equals_modulus(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            n = int(rng.integers(1, 6))
            x = rng.uniform(-3, 3, n)
            phi = rng.uniform(-math.pi, math.pi)
            assert abs(lie_norm(cmath.exp(1j * phi) * x) - np.linalg.norm(x)) <= 1e-12 * max(
                1.0, np.linalg.norm(x)
            )

    def test_isotropic_pair(self):
        assert lie_norm([1.0, 1j]) == 2.0

    @given(
        st.lists(
            st.complex_numbers(max_magnitude=10.0, allow_nan=False, allow_infinity=False),
            min_size=1,
            max_size=6,
        )
    )
    @settings(max_examples=200)
    def test_dominates_hermitian_norm(self, entries):
        z = np.array(entries, dtype=complex)
        assert lie_norm(z) >= hermitian_norm(z) - 1e-12

    def test_lie_ball_membership(self):
        ball = LieBall(1.0)
        assert ball.contains(0.5 * np.array([1.0, 0.0]))
        assert ball.contains(cmath.exp(0.3j) * np.array([0.6, 0.5]))
        assert not ball.contains([1.0, 1j])
        with pytest.raises(ValueError):
            LieBall(0.0)


class TestInversionSymmetry:
    def test_squared_forms_agree(self):
        rng = np.random.default_rng(5)
        for _ in range(200):
            n = int(rng.integers(1, 5))
            x = random_complex_vec(rng, n)
            y = random_complex_vec(rng, n)
            nx = cnorm(x)
            ny = cnorm(y)
            if abs(nx) < 1e-6 or abs(ny) < 1e-6:
                continue
            left = np.sum((x / nx - nx * y) ** 2)
            right = np.sum((y / ny - ny * x) ** 2)
            assert abs(left - right) <= 1e-12 * max(1.0, abs(left))
            assert abs(csqrt_principal(left) - csqrt_principal(right)) <= 1e-10


class TestRotatedPoint:
    def test_angle_normalized_at_construction(self):
        pt = RotatedPoint(3 * math.pi, [1.0, 0.0])
        assert pt.angle == pytest.approx(math.pi)

    def test_canonicalize_shifts_by_pi(self):
        pt = canonicalize(RotatedPoint(math.pi, [1.0, 0.0]))
        assert pt.angle == 0.0
        assert np.allclose(pt.base, [-1.0, 0.0])

    def test_canonicalize_fixes_interior_angle(self):
        pt = RotatedPoint(math.pi / 4, [0.3, -0.2])
        canon = canonicalize(pt)
        assert canon.angle == pt.angle
        assert np.array_equal(canon.base, pt.base)

    def test_idempotent_on_random_inputs(self):
        rng = np.random.default_rng(23)
        for _ in range(100):
            pt = RotatedPoint(rng.uniform(-10, 10), rng.uniform(-2, 2, 3))
            once = canonicalize(pt)
            twice = canonicalize(once)
            assert twice.angle == once.angle
            assert np.array_equal(twice.base, once.base)

    def test_boundary_angle_prefers_nonnegative_lead(self):
        a = canonicalize(RotatedPoint(math.pi / 2, [-1.0, 0.0]))
        b = canonicalize(RotatedPoint(-math.pi / 2, [1.0, 0.0]))
        assert a.angle == b.angle
        assert np.array_equal(a.base, b.base)
        nonzero = a.base[a.base != 0.0]
        assert nonzero[0] > 0

    def test_equivalence_relation(self):
        x = np.array([0.4, -1.1])
        assert RotatedPoint(0.3, x) == RotatedPoint(0.3 + math.pi, -x)
        assert RotatedPoint(0.3, x) != RotatedPoint(0.4, x)

    def test_complex_vector(self):
        pt = RotatedPoint(math.pi / 2, [2.0, 0.0])
        assert np.allclose(pt.complex_vector(), [2j, 0.0])

    def test_rejects_bad_base(self):
        with pytest.raises(ValueError):
            RotatedPoint(0.0, [float("inf"), 0.0])


class TestHelpers:
    def test_normalize_angle_range(self):
        for phi in (-math.pi, math.pi, 5.0, -5.0, 12.56, 0.0):
            r = normalize_angle(phi)
            assert -math.pi < r <= math.pi
            assert abs(cmath.exp(1j * r) - cmath.exp(1j * phi)) < 1e-12

    def test_as_cvec_validation(self):
        with pytest.raises(ValueError):
            as_cvec([[1.0, 2.0]])
        with pytest.raises(ValueError):
            as_cvec([1.0, float("nan")])
        with pytest.raises(ValueError):
            as_cvec([1.0, 2.0], dim=3)

    def test_principal_power_negative_even(self):
        assert abs(principal_power(2.0, -2) - 0.5) < 1e-15
        with pytest.raises(ZeroDivisionError):
            principal_power(0.0, -1)
