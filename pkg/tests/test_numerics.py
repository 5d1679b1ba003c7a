import math

import numpy as np
import pytest
import scipy.linalg

from modvalsim.numerics import hermite, kron, mat_exp

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)


def test_kron_identity():
    i2 = np.eye(2, dtype=complex)
    assert np.array_equal(kron(i2, i2), np.eye(4, dtype=complex))


def test_kron_diagonal():
    out = kron(np.diag([1.0, 2.0]).astype(complex), np.eye(2, dtype=complex))
    assert np.array_equal(out, np.diag([1.0, 1.0, 2.0, 2.0]).astype(complex))


def test_kron_entrywise_formula():
    proj = np.zeros((3, 3), dtype=complex)
    proj[1, 1] = 1.0
    out = kron(SIGMA_X, proj)
    for i in range(2):
        for j in range(2):
            for k in range(3):
                for l in range(3):
                    assert out[i * 3 + k, j * 3 + l] == SIGMA_X[i, j] * proj[k, l]


def test_kron_rejects_non_matrices():
    with pytest.raises(ValueError):
        kron(np.zeros(3), np.eye(2))


def test_kron_associativity():
    rng = np.random.default_rng(7)
    for _ in range(20):
        a, b, c = (rng.normal(size=(2, 3)) + 1j * rng.normal(size=(2, 3)) for _ in range(3))
        left = kron(kron(a, b), c)
        right = kron(a, kron(b, c))
        assert np.max(np.abs(left - right)) < 1e-12


def test_mat_exp_zero_is_identity():
    assert np.array_equal(mat_exp(np.zeros((3, 3))), np.eye(3, dtype=complex))


@pytest.mark.parametrize("g", [0.0, 0.3, math.pi / 2, 2.0, math.pi])
def test_mat_exp_sigma_x_closed_form(g):
    # sigma_x squares to the identity, so the exponential splits into cos/sin
    expected = math.cos(g) * np.eye(2) - 1j * math.sin(g) * SIGMA_X
    assert np.max(np.abs(mat_exp(-1j * g * SIGMA_X) - expected)) < 1e-12
    assert np.max(np.abs(mat_exp(-1j * g * SIGMA_X, tol=1e-15) - expected)) < 1e-15


def test_mat_exp_diagonal():
    out = mat_exp(np.diag([1j * math.pi, 0.0]))
    assert np.max(np.abs(out - np.diag([-1.0 + 0j, 1.0 + 0j]))) < 1e-12


def test_mat_exp_inverse_property():
    rng = np.random.default_rng(11)
    for dim in (2, 5, 16):
        m = rng.uniform(-1, 1, size=(dim, dim)) + 1j * rng.uniform(-1, 1, size=(dim, dim))
        m *= 2.0 / np.max(np.abs(m))
        product = mat_exp(m) @ mat_exp(-m)
        assert np.max(np.abs(product - np.eye(dim))) < 1e-10


def test_mat_exp_matches_scipy():
    rng = np.random.default_rng(3)
    for dim in (2, 8, 16):
        m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        assert np.max(np.abs(mat_exp(m) - scipy.linalg.expm(m))) < 1e-10


def test_mat_exp_rejects_bad_input():
    with pytest.raises(ValueError):
        mat_exp(np.zeros((2, 3)))
    with pytest.raises(ValueError):
        mat_exp(np.zeros((2, 2)), tol=0.0)
    with pytest.raises(ValueError):
        mat_exp(np.array([[np.inf, 0], [0, 0]]))


def test_hermite_base_cases():
    assert hermite(0, 3.7 - 2j) == 1.0
    z = 0.3 + 1.1j
    assert hermite(1, z) == 2.0 * z


def test_hermite_order_three():
    # H_3(x) = 8 x^3 - 12 x
    assert abs(hermite(3, 1.0) - (-4.0)) < 1e-14


def _hermite_by_expansion(n, z):
    # explicit coefficient sum H_n(z) = n! sum_k (-1)^k / (k! (n-2k)!) (2z)^(n-2k)
    total = 0.0 + 0.0j
    for k in range(n // 2 + 1):
        total += ((-1) ** k / (math.factorial(k) * math.factorial(n - 2 * k))
                  * (2.0 * z) ** (n - 2 * k))
    return math.factorial(n) * total


def test_hermite_matches_direct_expansion():
    rng = np.random.default_rng(5)
    points = rng.uniform(-2, 2, size=(20, 2))
    for n in range(11):
        for re, im in points:
            z = complex(re, im)
            got = hermite(n, z)
            want = _hermite_by_expansion(n, z)
            assert abs(got - want) <= 1e-10 * max(1.0, abs(want))


def test_hermite_rejects_negative_order():
    with pytest.raises(ValueError):
        hermite(-1, 0.0)
