"""Closed-form noncyclic geometric phases of light in a coiled gyroelectric fibre.

The geometric phase unit of one polarization sector is

    phi0(t) = integral_0^t  dphi/dt' * (1 - cos theta(t')) dt'

and a sector with occupation n contributes sign * (n + 1/2) * phi0 under
symmetric operator ordering, or sign * n * phi0 under normal ordering (sign
is +1 for R, -1 for L). The half-quantum terms are the vacuum phases. Each
sector precesses at its own rate Omega_pm = 2*pi*c / (arc_per_turn * n_pm), so
in a gyroelectric fibre the two vacuum terms no longer cancel.

Phases are real radians, unwrapped; the state picks up exp(-i * phi).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate, interpolate

from .constants import SPEED_OF_LIGHT
from .errors import InvalidStep, QuadratureDomain, VacPhaseError
from .geometry import (
    ConstantPrecession,
    HelixSpec,
    Sampled,
    SphericalTrajectory,
    cycle_period,
    polar_angle,
    precession_frequency,
)
from .media import GyroelectricTensor, refractive_indices


class OrderingMode(enum.Enum):
    NORMAL = "normal"
    SYMMETRIC = "symmetric"


@dataclass(frozen=True)
class PhotonOccupation:
    n_R: int
    n_L: int

    def __post_init__(self):
        for name in ("n_R", "n_L"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, (int, np.integer)) or v < 0:
                raise VacPhaseError(f"{name} must be a non-negative integer, got {v!r}")


@dataclass(frozen=True)
class PhaseBreakdown:
    phi0_R: float
    phi0_L: float
    phi_quantum: float
    phi_vac_R: float
    phi_vac_L: float
    phi_vac_total: float
    phi_total: float
    metadata: dict = field(default_factory=dict)

    def as_dict(self):
        return {
            "phi0_R": self.phi0_R,
            "phi0_L": self.phi0_L,
            "phi_quantum": self.phi_quantum,
            "phi_vac_R": self.phi_vac_R,
            "phi_vac_L": self.phi_vac_L,
            "phi_vac_total": self.phi_vac_total,
            "phi_total": self.phi_total,
        }


QUADRATURES = ("closed_form", "trapezoid", "simpson")


def _uniform_grid(t_final, step, even):
    n = max(1, math.ceil(t_final / step - 1e-12))
    if even and n % 2:
        n += 1
    return np.linspace(0.0, t_final, n + 1)


def _integrand(trajectory, t):
    if isinstance(trajectory, ConstantPrecession):
        return np.full_like(t, trajectory.omega * (1.0 - math.cos(trajectory.theta)))
    theta = interpolate.CubicSpline(trajectory.times, trajectory.theta_samples)
    phi = interpolate.CubicSpline(trajectory.times, trajectory.phi_samples)
    return phi(t, 1) * (1.0 - np.cos(theta(t)))


def phi0(
    trajectory: SphericalTrajectory,
    t_final: float,
    quadrature: str = "closed_form",
    step: float | None = None,
) -> float:
    """Geometric phase unit accumulated on [0, t_final].

    ``closed_form`` is only available for constant precession. The other
    rules integrate on a uniform grid whose spacing is the largest value
    <= ``step`` that divides t_final (evenly many intervals for Simpson).
    Sampled trajectories are interpolated with cubic splines, and the
    integral starts at the first sample time (taken as t = 0 on the grid).
    """
    if quadrature not in QUADRATURES:
        raise VacPhaseError(f"unknown quadrature {quadrature!r}")
    if t_final < 0:
        raise QuadratureDomain(f"t_final must be >= 0, got {t_final!r}")

    if isinstance(trajectory, Sampled):
        t0, t1 = trajectory.times[0], trajectory.times[-1]
        if t_final > t1 - t0:
            raise QuadratureDomain(
                f"t_final={t_final!r} exceeds sampled range [{t0!r}, {t1!r}]"
            )
        if quadrature == "closed_form":
            raise VacPhaseError("closed_form requires a ConstantPrecession trajectory")
    elif quadrature == "closed_form":
        return trajectory.omega * (1.0 - math.cos(trajectory.theta)) * t_final

    if step is None:
        if isinstance(trajectory, Sampled):
            step = float(np.min(np.diff(trajectory.times)))
        else:
            step = t_final or 1.0
    if not step > 0:
        raise InvalidStep(f"step must be > 0, got {step!r}")
    if t_final == 0:
        return 0.0

    t = _uniform_grid(t_final, step, even=quadrature == "simpson")
    offset = trajectory.times[0] if isinstance(trajectory, Sampled) else 0.0
    y = _integrand(trajectory, t + offset)
    if quadrature == "trapezoid":
        return float(integrate.trapezoid(y, t))
    return float(integrate.simpson(y, x=t))


def sector_phase(n: int, sector_sign: int, phi0_sector: float, ordering: OrderingMode) -> float:
    if n < 0:
        raise VacPhaseError(f"occupation must be >= 0, got {n!r}")
    if sector_sign not in (1, -1):
        raise VacPhaseError("sector_sign must be +1 (R) or -1 (L)")
    weight = n + 0.5 if ordering is OrderingMode.SYMMETRIC else n
    return sector_sign * weight * phi0_sector


def _sector_units(helix, medium, t_final):
    if t_final < 0:
        raise VacPhaseError(f"t_final must be >= 0, got {t_final!r}")
    n_plus, n_minus = refractive_indices(medium)
    x = helix.one_minus_cos_theta
    omega_plus = precession_frequency(helix, n_plus)
    omega_minus = precession_frequency(helix, n_minus)
    return n_plus, n_minus, omega_plus, omega_minus, omega_plus * x * t_final, omega_minus * x * t_final


def total_phase(
    occupation: PhotonOccupation,
    helix: HelixSpec,
    medium: GyroelectricTensor,
    t_final: float,
    ordering: OrderingMode,
) -> PhaseBreakdown:
    n_plus, n_minus, omega_plus, omega_minus, phi0_R, phi0_L = _sector_units(
        helix, medium, t_final
    )
    # n_R*phi0_R - n_L*phi0_L, arranged to be exactly (n_R - n_L)*phi0 when degenerate
    phi_quantum = (occupation.n_R - occupation.n_L) * phi0_R + occupation.n_L * (phi0_R - phi0_L)
    if ordering is OrderingMode.SYMMETRIC:
        vac_R = sector_phase(0, 1, phi0_R, ordering)
        vac_L = sector_phase(0, -1, phi0_L, ordering)
    else:
        vac_R = vac_L = 0.0
    vac_total = vac_R + vac_L
    return PhaseBreakdown(
        phi0_R=phi0_R,
        phi0_L=phi0_L,
        phi_quantum=phi_quantum,
        phi_vac_R=vac_R,
        phi_vac_L=vac_L,
        phi_vac_total=vac_total,
        phi_total=phi_quantum + vac_total,
        metadata={
            "ordering": ordering.value,
            "turn_factor": helix.turn_label,
            "n_plus": n_plus,
            "n_minus": n_minus,
            "theta": polar_angle(helix),
            "omega_plus": omega_plus,
            "omega_minus": omega_minus,
            "eps3": medium.eps3,
        },
    )


def vacuum_total(helix: HelixSpec, medium: GyroelectricTensor, t_final: float) -> float:
    """Net vacuum phase of both sectors in closed form.

    (n_minus - n_plus) / (n_plus * n_minus) * pi * c / arc_per_turn
    * (1 - cos theta) * t
    """
    n_plus, n_minus = refractive_indices(medium)
    # n_minus - n_plus written without subtracting nearly equal numbers
    dn = -2.0 * medium.eps2 / (n_plus + n_minus)
    return (
        dn / (n_plus * n_minus)
        * math.pi * SPEED_OF_LIGHT / helix.arc_per_turn
        * helix.one_minus_cos_theta
        * t_final
    )


def cyclic_vacuum_phase(helix: HelixSpec, medium: GyroelectricTensor) -> float:
    """Net vacuum phase after one R-sector cycle T = 2*pi / Omega_plus.

    Equals pi * (1 - cos theta) * (1 - n_plus / n_minus); tends to half the
    enclosed solid angle when n_minus >> n_plus.
    """
    n_plus, _ = refractive_indices(medium)
    return vacuum_total(helix, medium, cycle_period(helix, n_plus))
