import numpy as np
import pytest

from polyball import _kernels_py
from polyball._kernels import backend_name

try:
    from polyball import _kernels_c
except ImportError:
    _kernels_c = None

needs_compiled = pytest.mark.skipif(
    _kernels_c is None, reason="compiled kernel extension not built"
)


def _random_workload(rng, m, n, npow):
    z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    nodes = rng.standard_normal((m, n))
    nodes /= np.linalg.norm(nodes, axis=1)[:, None]
    wf = rng.standard_normal(m) + 1j * rng.standard_normal(m)
    factor = np.exp(1j * rng.uniform(-3.0, 3.0))
    return z, nodes, factor, wf


def test_backend_name_is_known():
    assert backend_name() in ("compiled", "python")


def test_python_kernel_matches_direct_sum():
    rng = np.random.default_rng(1)
    z, nodes, factor, wf = _random_workload(rng, 37, 3, 3)
    diff = z[None, :] - factor * nodes
    w = np.sum(diff * diff, axis=1)
    direct = complex(np.sum(wf / np.exp(1.5 * np.log(w))))
    value = _kernels_py.weighted_kernel_sum(z, nodes, factor, wf, 3)
    assert abs(value - direct) < 1e-12 * max(1.0, abs(direct))


def test_python_kernel_even_power_is_polynomial():
    rng = np.random.default_rng(2)
    z, nodes, factor, wf = _random_workload(rng, 11, 2, 2)
    diff = z[None, :] - factor * nodes
    w = np.sum(diff * diff, axis=1)
    direct = complex(np.sum(wf / w))
    value = _kernels_py.weighted_kernel_sum(z, nodes, factor, wf, 2)
    assert abs(value - direct) < 1e-13 * max(1.0, abs(direct))


@needs_compiled
@pytest.mark.parametrize("npow", [2, 3, 4, 5])
def test_backends_agree(npow):
    rng = np.random.default_rng(100 + npow)
    for _ in range(10):
        m = int(rng.integers(1, 500))
        n = int(rng.integers(2, 6))
        z, nodes, factor, wf = _random_workload(rng, m, n, npow)
        a = _kernels_py.weighted_kernel_sum(z, nodes, factor, wf, npow)
        b = _kernels_c.weighted_kernel_sum(z, nodes, factor, wf, npow)
        assert abs(a - b) <= 1e-12 * max(1.0, abs(a))


@needs_compiled
def test_compiled_kernel_branch_normalization():
    # denominator square lands exactly on the negative real axis: the
    # principal power must map it upward in both implementations
    z = np.array([2j, 0.0])
    nodes = np.array([[1.0, 0.0]])
    wf = np.array([1.0 + 0j])
    a = _kernels_py.weighted_kernel_sum(z, nodes, 1.0 + 0j, wf, 3)
    b = _kernels_c.weighted_kernel_sum(z, nodes, 1.0 + 0j, wf, 3)
    # (2j - 1)^2 = -3 - 4j; check against cmath principal power
    import cmath

    w = complex(-3.0, -4.0)
    direct = 1.0 / cmath.exp(1.5 * cmath.log(w))
    assert abs(a - direct) < 1e-14
    assert abs(b - direct) < 1e-14


@needs_compiled
def test_compiled_kernel_deterministic():
    rng = np.random.default_rng(5)
    z, nodes, factor, wf = _random_workload(rng, 1000, 3, 3)
    first = _kernels_c.weighted_kernel_sum(z, nodes, factor, wf, 3)
    again = _kernels_c.weighted_kernel_sum(z, nodes, factor, wf, 3)
    assert first == again


@needs_compiled
def test_compiled_kernel_validation():
    nodes = np.zeros((3, 2))
    with pytest.raises(ValueError):
        _kernels_c.weighted_kernel_sum(
            np.zeros(3, dtype=complex), nodes, 1.0 + 0j, np.zeros(3, dtype=complex), 2
        )
    with pytest.raises(ValueError):
        _kernels_c.weighted_kernel_sum(
            np.zeros(2, dtype=complex), nodes, 1.0 + 0j, np.zeros(4, dtype=complex), 2
        )
