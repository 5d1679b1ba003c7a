"""The measured spin-1/2 system: selection angles, weak and modular values.

The system is prepared in ``cos(theta1)|up> + exp(i*phi1) sin(theta1)|down>``
and post-selected on ``|up>``; the observable coupled to the pointer is the
Pauli-x matrix.  The post-selection overlap is ``cos(theta1)``, so both the
weak value and the modular value blow up as ``theta1 -> pi/2``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .numerics import mat_exp

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_X.setflags(write=False)

#: Overlaps smaller than this are treated as an orthogonal pre/post selection.
MIN_SELECTION_OVERLAP = 1e-12

#: Default truncation tolerance for the 2x2 exponential inside modular_value.
#: Tight, because the result is later divided by a possibly tiny overlap.
DEFAULT_MODVAL_EXP_TOL = 1e-14

IDEMPOTENT = "idempotent"  # observable with A^2 = A
INVOLUTORY = "involutory"  # observable with A^2 = I


class OrthogonalSelectionError(ValueError):
    """Pre- and post-selected states are (numerically) orthogonal."""


@dataclass(frozen=True)
class QubitState:
    """Amplitudes on the ``|up>``, ``|down>`` basis; must be unit norm."""

    up: complex
    down: complex

    def __post_init__(self):
        norm = abs(self.up) ** 2 + abs(self.down) ** 2
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"qubit state norm {norm!r} is not 1")

    def vector(self) -> np.ndarray:
        return np.array([self.up, self.down], dtype=complex)


@dataclass(frozen=True)
class SelectionConfig:
    """Pre-selection angles and coupling strength.

    ``theta1`` in [0, pi], ``phi1`` in radians (canonically [0, 2*pi)), and
    ``g`` the dimensionless coupling of the impulsive interaction.
    """

    theta1: float
    phi1: float
    g: float

    def __post_init__(self):
        if not 0.0 <= self.theta1 <= math.pi:
            raise ValueError(f"theta1 must lie in [0, pi], got {self.theta1}")
        if not (math.isfinite(self.phi1) and math.isfinite(self.g)):
            raise ValueError("phi1 and g must be finite")


def pre_state(sel: SelectionConfig) -> QubitState:
    return QubitState(up=math.cos(sel.theta1),
                      down=cmath.exp(1j * sel.phi1) * math.sin(sel.theta1))


def post_state() -> QubitState:
    """Post-selection is fixed to ``|up>``."""
    return QubitState(up=1.0, down=0.0)


def selection_overlap(sel: SelectionConfig) -> complex:
    """``<post|pre>``, analytically ``cos(theta1)``."""
    return complex(np.vdot(post_state().vector(), pre_state(sel).vector()))


def _checked_overlap(sel: SelectionConfig) -> complex:
    overlap = selection_overlap(sel)
    if abs(overlap) < MIN_SELECTION_OVERLAP:
        raise OrthogonalSelectionError(
            f"pre/post selection overlap |cos(theta1)| = {abs(overlap):.3e} at "
            f"theta1 = {sel.theta1!r}; the weak and modular values divide by it"
        )
    return overlap


def weak_value(sel: SelectionConfig) -> complex:
    """``<post|sigma_x|pre> / <post|pre>``; equals ``exp(i*phi1) tan(theta1)``."""
    overlap = _checked_overlap(sel)
    numerator = complex(np.vdot(post_state().vector(), SIGMA_X @ pre_state(sel).vector()))
    return numerator / overlap


def modular_value(sel: SelectionConfig, tol: float = DEFAULT_MODVAL_EXP_TOL) -> complex:
    """``<post|exp(-i g sigma_x)|pre> / <post|pre>`` via the 2x2 matrix exponential."""
    overlap = _checked_overlap(sel)
    evolution = mat_exp(-1j * sel.g * SIGMA_X, tol)
    numerator = complex(np.vdot(post_state().vector(), evolution @ pre_state(sel).vector()))
    return numerator / overlap


def modular_from_weak(weak: complex, g: float, kind: str = INVOLUTORY) -> complex:
    """Closed-form modular value for the two tractable observable algebras.

    ``idempotent`` (A^2 = A): ``1 - w + exp(-i g) w``;
    ``involutory`` (A^2 = I): ``cos(g) - i w sin(g)``.
    """
    if kind == IDEMPOTENT:
        return 1.0 - weak + cmath.exp(-1j * g) * weak
    if kind == INVOLUTORY:
        return math.cos(g) - 1j * weak * math.sin(g)
    raise ValueError(f"kind must be {IDEMPOTENT!r} or {INVOLUTORY!r}, got {kind!r}")


def generalized_modular_factor(n: int, m: int, modval: complex) -> complex:
    """Per-level factor of the projector-coupled evolution.

    Level ``m`` (the projector's level) picks up the full modular value; every
    other level evolves trivially and the factor is 1.
    """
    if n < 0 or m < 0 or n != int(n) or m != int(m):
        raise ValueError("levels n and m must be non-negative integers")
    return complex(modval) if n == m else 1.0 + 0.0j


def selection_for_modular_value(modval: float) -> SelectionConfig:
    """Selection angles that realize a requested real modular value.

    At ``g = pi/2`` and ``phi1 = pi/2`` the modular value is ``tan(theta1)``,
    real and non-negative, so ``theta1 = arctan(modval)`` is the one free knob.
    This is the convention behind all bundled figure sweeps.
    """
    if modval < 0:
        raise ValueError("this convention realizes non-negative modular values only")
    return SelectionConfig(theta1=math.atan(modval), phi1=math.pi / 2, g=math.pi / 2)
