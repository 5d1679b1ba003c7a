import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modvalsim.qubit_system import (
    IDEMPOTENT,
    INVOLUTORY,
    OrthogonalSelectionError,
    QubitState,
    SelectionConfig,
    generalized_modular_factor,
    modular_from_weak,
    modular_value,
    pre_state,
    selection_for_modular_value,
    selection_overlap,
    weak_value,
)


def sel(theta1, phi1=math.pi / 2, g=math.pi / 2):
    return SelectionConfig(theta1=theta1, phi1=phi1, g=g)


def test_pre_state_norm():
    for theta in np.linspace(0.0, math.pi, 17):
        for phi in np.linspace(0.0, 2 * math.pi, 9, endpoint=False):
            state = pre_state(sel(theta, phi))
            assert abs(abs(state.up) ** 2 + abs(state.down) ** 2 - 1.0) < 1e-12


def test_overlap_is_cos_theta1():
    for theta in np.linspace(0.0, math.pi, 23):
        assert abs(selection_overlap(sel(theta)) - math.cos(theta)) < 1e-15


def test_qubit_state_rejects_unnormalized():
    with pytest.raises(ValueError):
        QubitState(up=1.0, down=1.0)


def test_selection_config_rejects_bad_theta():
    with pytest.raises(ValueError):
        SelectionConfig(theta1=-0.1, phi1=0.0, g=1.0)
    with pytest.raises(ValueError):
        SelectionConfig(theta1=math.pi + 0.1, phi1=0.0, g=1.0)


def test_weak_value_preselected_up():
    assert abs(weak_value(sel(0.0))) == 0.0


def test_weak_value_quarter_turn():
    assert abs(weak_value(sel(math.pi / 4, math.pi / 2)) - 1j) < 1e-15


def test_weak_value_analytic_identity():
    for theta in np.linspace(0.0, 1.49, 10):
        for phi in np.linspace(0.0, 2 * math.pi, 5, endpoint=False):
            got = weak_value(sel(theta, phi))
            want = cmath.exp(1j * phi) * math.tan(theta)
            assert abs(got - want) < 1e-14


def test_orthogonal_selection_raises():
    with pytest.raises(OrthogonalSelectionError):
        weak_value(sel(math.pi / 2))
    with pytest.raises(OrthogonalSelectionError):
        modular_value(sel(math.pi / 2))


def test_modular_value_no_coupling():
    assert abs(modular_value(sel(0.7, 1.1, g=0.0)) - 1.0) < 1e-14


def test_modular_value_amplified():
    # g = pi/2 and phi1 = pi/2 give a purely real modular value tan(theta1)
    value = modular_value(sel(math.atan(5.0)))
    assert abs(value - 5.0) < 1e-12


@settings(max_examples=200, deadline=None)
@given(theta=st.floats(0.0, 1.5), phi=st.floats(0.0, 2 * math.pi),
       g=st.floats(0.0, math.pi))
def test_modular_value_relation(theta, phi, g):
    config = sel(theta, phi, g)
    via_exp = modular_value(config)
    via_weak = modular_from_weak(weak_value(config), g, INVOLUTORY)
    assert abs(via_exp - via_weak) < 1e-12


def test_modular_from_weak_no_coupling():
    assert modular_from_weak(0.3 + 0.2j, 0.0, IDEMPOTENT) == 1.0
    assert modular_from_weak(0.3 + 0.2j, 0.0, INVOLUTORY) == 1.0


def test_modular_from_weak_idempotent():
    # 1 - w + exp(-i pi) w = -1 at w = 1
    assert abs(modular_from_weak(1.0, math.pi, IDEMPOTENT) - (-1.0)) < 1e-14


def test_modular_from_weak_unknown_kind():
    with pytest.raises(ValueError):
        modular_from_weak(1.0, 1.0, "nilpotent")


def test_involutory_matches_oracle_random():
    rng = np.random.default_rng(17)
    for _ in range(100):
        config = sel(rng.uniform(0, 1.5), rng.uniform(0, 2 * math.pi),
                     rng.uniform(0, math.pi))
        want = modular_value(config)
        got = modular_from_weak(weak_value(config), config.g, INVOLUTORY)
        assert abs(want - got) < 1e-12


def test_generalized_factor():
    assert generalized_modular_factor(3, 3, 5.0) == 5.0
    assert generalized_modular_factor(2, 3, 123.0) == 1.0
    assert generalized_modular_factor(4, 4, 1.0) == 1.0
    with pytest.raises(ValueError):
        generalized_modular_factor(-1, 0, 1.0)


def test_modular_magnitude_unbounded_along_theta():
    magnitudes = [abs(modular_value(sel(theta))) for theta in np.linspace(0.1, 1.5, 20)]
    assert all(a < b for a, b in zip(magnitudes, magnitudes[1:]))
    assert magnitudes[-1] > 14.0


def test_selection_for_modular_value_roundtrip():
    for target in (0.0, 1.0, 5.0, 20.0):
        config = selection_for_modular_value(target)
        assert abs(modular_value(config) - target) < 1e-12 * max(1.0, target)
    with pytest.raises(ValueError):
        selection_for_modular_value(-1.0)
