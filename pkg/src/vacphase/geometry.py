"""Helix geometry and the wave-vector path it induces on the direction sphere.

A photon moving along a helical fibre has its wave vector precess on a cone
about the helix axis. The cone half-angle is fixed by pitch and radius, the
precession rate by the arc length per turn and the refractive index.

The turn factor ``f`` enters as ``sqrt(d**2 + (f*a)**2)``. ``f = 4*pi`` is the
default; ``f = 2*pi`` gives the textbook helix arc length per turn.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import SPEED_OF_LIGHT
from .errors import NonPositiveIndex, VacPhaseError

FOUR_PI = 4.0 * math.pi
TWO_PI = 2.0 * math.pi

TURN_FACTORS = {"4pi": FOUR_PI, "2pi": TWO_PI}


@dataclass(frozen=True)
class HelixSpec:
    pitch_d: float
    radius_a: float
    turn_factor_f: float = FOUR_PI

    def __post_init__(self):
        if not (math.isfinite(self.pitch_d) and self.pitch_d > 0):
            raise VacPhaseError(f"pitch_d must be > 0, got {self.pitch_d!r}")
        if not (math.isfinite(self.radius_a) and self.radius_a >= 0):
            raise VacPhaseError(f"radius_a must be >= 0, got {self.radius_a!r}")
        if self.turn_factor_f not in (FOUR_PI, TWO_PI):
            raise VacPhaseError(
                f"turn_factor_f must be 2*pi or 4*pi, got {self.turn_factor_f!r}"
            )

    @classmethod
    def from_label(cls, pitch_d, radius_a, turn_factor="4pi"):
        return cls(pitch_d, radius_a, TURN_FACTORS[turn_factor])

    @property
    def turn_label(self) -> str:
        return "4pi" if self.turn_factor_f == FOUR_PI else "2pi"

    @property
    def arc_per_turn(self) -> float:
        return math.hypot(self.pitch_d, self.turn_factor_f * self.radius_a)

    @property
    def cos_theta(self) -> float:
        return self.pitch_d / self.arc_per_turn

    @property
    def one_minus_cos_theta(self) -> float:
        # (fa)^2 / (s (s + d)) avoids cancellation for small coil radii
        s = self.arc_per_turn
        fa = self.turn_factor_f * self.radius_a
        return fa * fa / (s * (s + self.pitch_d))


@dataclass(frozen=True)
class ConstantPrecession:
    """theta fixed, phi(t) = phi0 + omega * t."""

    theta: float
    omega: float
    phi0: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.theta <= math.pi:
            raise VacPhaseError(f"theta must lie in [0, pi], got {self.theta!r}")

    def angles(self, t):
        t = np.asarray(t, dtype=float)
        return np.full_like(t, self.theta), self.phi0 + self.omega * t


@dataclass(frozen=True, eq=False)
class Sampled:
    """Tabulated theta(t), phi(t) on a strictly increasing time grid."""

    times: np.ndarray
    theta_samples: np.ndarray
    phi_samples: np.ndarray

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        theta = np.asarray(self.theta_samples, dtype=float)
        phi = np.asarray(self.phi_samples, dtype=float)
        if times.ndim != 1 or times.size < 2:
            raise VacPhaseError("need at least two samples")
        if theta.shape != times.shape or phi.shape != times.shape:
            raise VacPhaseError("times, theta_samples and phi_samples differ in length")
        if np.any(np.diff(times) <= 0):
            raise VacPhaseError("times must be strictly increasing")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "theta_samples", theta)
        object.__setattr__(self, "phi_samples", phi)


SphericalTrajectory = ConstantPrecession | Sampled


def polar_angle(helix: HelixSpec) -> float:
    """Cone half-angle of the wave vector about the helix axis, in [0, pi/2)."""
    return math.acos(helix.cos_theta)


def _check_index(n):
    if not n > 0:
        raise NonPositiveIndex(f"refractive index must be > 0, got {n!r}")


def precession_frequency(helix: HelixSpec, n: float) -> float:
    """Azimuthal rate 2*pi*c / (arc_per_turn * n) in rad/s."""
    _check_index(n)
    return 2.0 * math.pi * SPEED_OF_LIGHT / (helix.arc_per_turn * n)


def cycle_period(helix: HelixSpec, n: float) -> float:
    """Time for one full precession, n * arc_per_turn / c."""
    _check_index(n)
    return n * helix.arc_per_turn / SPEED_OF_LIGHT


def wave_vector(theta: float, phi: float, k: float = 1.0) -> np.ndarray:
    return k * np.array(
        [math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi), math.cos(theta)]
    )


def solid_angle(theta: float) -> float:
    """Solid angle enclosed by a cone of half-angle theta."""
    return 2.0 * math.pi * (1.0 - math.cos(theta))


def helix_trajectory(helix: HelixSpec, n: float, phi0: float = 0.0) -> ConstantPrecession:
    return ConstantPrecession(polar_angle(helix), precession_frequency(helix, n), phi0)
