import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate

from vacphase.constants import SPEED_OF_LIGHT
from vacphase.errors import EvanescentMode, InvalidStep, QuadratureDomain, VacPhaseError
from vacphase.geometry import FOUR_PI, TWO_PI, ConstantPrecession, HelixSpec, Sampled, cycle_period, solid_angle
from vacphase.media import GyroelectricTensor
from vacphase.phase_engine import (
    OrderingMode,
    PhotonOccupation,
    cyclic_vacuum_phase,
    phi0,
    sector_phase,
    total_phase,
    vacuum_total,
)

SYM, NORM = OrderingMode.SYMMETRIC, OrderingMode.NORMAL
WORKED_HELIX = HelixSpec(3.0, 1 / math.pi)
WORKED_MEDIUM = GyroelectricTensor(2.5, -1.5, 2.0)  # n_plus = 1, n_minus = 2
T_PLUS = 5.0 / SPEED_OF_LIGHT


@st.composite
def setups(draw, degenerate=False):
    helix = HelixSpec(draw(st.floats(0.01, 100.0)), draw(st.floats(0.0, 10.0)), draw(st.sampled_from([FOUR_PI, TWO_PI])))
    e1 = draw(st.floats(0.5, 20.0))
    e2 = 0.0 if degenerate else draw(st.sampled_from([-1, 1])) * draw(st.floats(0.1, 0.9)) * e1
    return helix, GyroelectricTensor(e1, e2, draw(st.floats(0.5, 20.0)))


# --- phi0 -----------------------------------------------------------------


def test_phi0_straight_path_is_zero():
    assert phi0(ConstantPrecession(0.0, 123.0), 10.0) == 0.0


def test_phi0_closed_form_example():
    assert phi0(ConstantPrecession(math.pi / 3, 2 * math.pi), 1.0) == pytest.approx(math.pi, rel=1e-15)


@pytest.mark.parametrize("rule", ["trapezoid", "simpson"])
def test_phi0_quadrature_exact_on_constant_precession(rule):
    traj = ConstantPrecession(math.pi / 3, 2 * math.pi)
    assert phi0(traj, 1.0, rule, 0.1) == pytest.approx(math.pi, rel=1e-14)


def test_phi0_sampled_constant_case():
    times = np.linspace(0.0, 1.0, 10_000)
    traj = Sampled(times, np.full_like(times, math.pi / 3), 2 * math.pi * times)
    assert abs(phi0(traj, 1.0, "simpson", 1e-4) - math.pi) <= 1e-9


def _smooth_sampled():
    theta = lambda t: 1.1 - 0.4 * t**2 + 0.1 * np.cos(2 * t)  # noqa: E731
    phi = lambda t: 2 * t + 0.25 * np.sin(3 * t) + t**3  # noqa: E731
    phidot = lambda t: 2 + 0.75 * np.cos(3 * t) + 3 * t**2  # noqa: E731
    times = np.linspace(0.0, 1.0, 10_001)
    exact = integrate.quad(lambda t: phidot(t) * (1 - np.cos(theta(t))), 0, 1, epsabs=1e-13, epsrel=1e-13)[0]
    return Sampled(times, theta(times), phi(times)), exact


@pytest.mark.parametrize("rule, window", [("trapezoid", (3.5, 4.5)), ("simpson", (12.0, 20.0))])
def test_phi0_convergence_order(rule, window):
    traj, exact = _smooth_sampled()
    errors = [abs(phi0(traj, 1.0, rule, h) - exact) for h in (1 / 8, 1 / 16, 1 / 32)]
    for coarse, fine in zip(errors, errors[1:]):
        assert window[0] <= coarse / fine <= window[1]


def test_phi0_sampled_starts_at_first_sample():
    times = np.linspace(5.0, 6.0, 1001)
    traj = Sampled(times, np.full_like(times, math.pi / 2), 3.0 * times)
    assert phi0(traj, 0.5, "simpson", 0.01) == pytest.approx(1.5, rel=1e-12)


def test_phi0_errors():
    times = np.linspace(0.0, 1.0, 11)
    traj = Sampled(times, np.full_like(times, 0.3), times)
    with pytest.raises(QuadratureDomain):
        phi0(traj, 1.5, "simpson", 0.1)
    with pytest.raises(InvalidStep):
        phi0(traj, 1.0, "simpson", 0.0)
    with pytest.raises(InvalidStep):
        phi0(ConstantPrecession(0.3, 1.0), 1.0, "trapezoid", -1.0)
    with pytest.raises(VacPhaseError):
        phi0(traj, 1.0, "closed_form")
    with pytest.raises(VacPhaseError):
        phi0(traj, 1.0, "romberg", 0.1)
    with pytest.raises(QuadratureDomain):
        phi0(ConstantPrecession(0.3, 1.0), -1.0)


# --- sector_phase ------------------------------------------------------------


def test_sector_phase_examples():
    assert sector_phase(0, 1, 0.7, NORM) == 0
    assert sector_phase(0, 1, 0.7, SYM) == 0.35
    assert sector_phase(0, -1, 0.7, SYM) == -0.35
    assert sector_phase(2, 1, 0.7, SYM) == pytest.approx(2.5 * 0.7, rel=1e-15)


@given(st.integers(0, 1000), st.sampled_from([1, -1]), st.floats(-1e6, 1e6))
def test_ordering_difference_identity(n, sign, unit):
    assert sector_phase(n, sign, unit, SYM) - sector_phase(n, sign, unit, NORM) == pytest.approx(
        sign * 0.5 * unit, rel=1e-12, abs=1e-12
    )


def test_sector_phase_rejects_bad_input():
    with pytest.raises(VacPhaseError):
        sector_phase(-1, 1, 1.0, SYM)
    with pytest.raises(VacPhaseError):
        sector_phase(1, 0, 1.0, SYM)


# --- total_phase ---------------------------------------------------------------


def test_degenerate_normal_ordering_recovers_n_r_minus_n_l_law():
    medium = GyroelectricTensor(2.5, 0.0, 2.0)
    b = total_phase(PhotonOccupation(1, 0), WORKED_HELIX, medium, 1e-8, NORM)
    assert b.phi_total == b.phi0_R == b.phi0_L
    assert b.phi_vac_R == b.phi_vac_L == b.phi_vac_total == 0.0


def test_degenerate_vacuum_cancels_exactly():
    medium = GyroelectricTensor(2.5, 0.0, 2.0)
    b = total_phase(PhotonOccupation(0, 0), WORKED_HELIX, medium, 1e-8, SYM)
    assert b.phi_vac_R == 0.5 * b.phi0_R
    assert b.phi_vac_L == -0.5 * b.phi0_L
    assert b.phi_total == 0.0


def test_worked_gyroelectric_vacuum():
    b = total_phase(PhotonOccupation(0, 0), WORKED_HELIX, WORKED_MEDIUM, T_PLUS, SYM)
    assert b.phi_vac_R == pytest.approx(0.4 * math.pi, abs=1e-12)
    assert b.phi_vac_L == pytest.approx(-0.2 * math.pi, abs=1e-12)
    assert b.phi_vac_total == pytest.approx(0.2 * math.pi, abs=1e-12)
    assert b.metadata["n_plus"] == 1.0 and b.metadata["n_minus"] == 2.0
    assert b.metadata["turn_factor"] == "4pi"
    assert b.metadata["ordering"] == "symmetric"


def test_worked_example_normal_ordering_has_no_vacuum():
    b = total_phase(PhotonOccupation(0, 0), WORKED_HELIX, WORKED_MEDIUM, T_PLUS, NORM)
    assert b.phi_vac_total == 0.0 and b.phi_total == 0.0


def test_quantum_part_uses_sector_units():
    b = total_phase(PhotonOccupation(3, 2), WORKED_HELIX, WORKED_MEDIUM, T_PLUS, SYM)
    # phi0_R = 0.8 pi, phi0_L = 0.4 pi at t = T_plus
    assert b.phi_quantum == pytest.approx(3 * 0.8 * math.pi - 2 * 0.4 * math.pi, rel=1e-14)
    assert b.phi_total == pytest.approx(b.phi_quantum + 0.2 * math.pi, rel=1e-14)


def test_total_phase_propagates_evanescent():
    with pytest.raises(EvanescentMode):
        total_phase(PhotonOccupation(0, 0), WORKED_HELIX, GyroelectricTensor(1.0, -2.0, 1.0), 1.0, SYM)


@given(setups(), st.integers(0, 50), st.integers(0, 50), st.floats(0.0, 1e-6), st.sampled_from(list(OrderingMode)))
def test_breakdown_invariants(setup, n_r, n_l, t, ordering):
    helix, medium = setup
    b = total_phase(PhotonOccupation(n_r, n_l), helix, medium, t, ordering)
    assert b.phi_vac_total == b.phi_vac_R + b.phi_vac_L
    assert b.phi_total == b.phi_quantum + b.phi_vac_total
    assert b.phi_quantum == pytest.approx(n_r * b.phi0_R - n_l * b.phi0_L, rel=1e-12, abs=1e-300)
    if ordering is NORM:
        assert b.phi_vac_R == b.phi_vac_L == 0.0
    else:
        assert b.phi_vac_R == 0.5 * b.phi0_R and b.phi_vac_L == -0.5 * b.phi0_L


@given(setups(degenerate=True), st.integers(0, 50), st.integers(0, 50), st.floats(0.0, 1e6))
def test_degenerate_identities(setup, n_r, n_l, cycles):
    helix, medium = setup
    t = cycles * cycle_period(helix, math.sqrt(medium.eps1))
    b = total_phase(PhotonOccupation(n_r, n_l), helix, medium, t, SYM)
    assert abs(b.phi_vac_total) <= 1e-12
    assert b.phi_quantum == (n_r - n_l) * b.phi0_R


# --- vacuum_total / cyclic ------------------------------------------------------


def test_vacuum_total_examples():
    assert vacuum_total(WORKED_HELIX, GyroelectricTensor(2.5, 0.0, 2.0), 1.0) == 0.0
    assert vacuum_total(WORKED_HELIX, WORKED_MEDIUM, T_PLUS) == pytest.approx(0.2 * math.pi, rel=1e-13)
    assert vacuum_total(WORKED_HELIX, WORKED_MEDIUM, 2 * T_PLUS) == pytest.approx(
        2 * vacuum_total(WORKED_HELIX, WORKED_MEDIUM, T_PLUS), rel=1e-15
    )


@given(setups(), st.floats(1e-12, 1e-6))
def test_vacuum_total_matches_sector_sum(setup, t):
    helix, medium = setup
    b = total_phase(PhotonOccupation(0, 0), helix, medium, t, SYM)
    closed = vacuum_total(helix, medium, t)
    if closed == 0.0:
        assert b.phi_vac_total == 0.0
    else:
        assert b.phi_vac_total == pytest.approx(closed, rel=1e-12)


def test_cyclic_vacuum_examples():
    assert cyclic_vacuum_phase(WORKED_HELIX, WORKED_MEDIUM) == pytest.approx(0.2 * math.pi, rel=1e-13)
    assert cyclic_vacuum_phase(WORKED_HELIX, GyroelectricTensor(2.5, 0.0, 2.0)) == 0.0
    # n_plus = 1, n_minus = 100
    strong = GyroelectricTensor(5000.5, -4999.5, 1.0)
    value = cyclic_vacuum_phase(WORKED_HELIX, strong)
    assert value == pytest.approx(0.99 * 0.4 * math.pi, rel=1e-12)
    assert abs(value - 0.4 * math.pi) <= 0.01 * 0.4 * math.pi


@given(setups())
def test_cyclic_vacuum_closed_form(setup):
    helix, medium = setup
    n_plus = math.sqrt(medium.eps1 + medium.eps2)
    n_minus = math.sqrt(medium.eps1 - medium.eps2)
    expected = math.pi * helix.one_minus_cos_theta * (1 - n_plus / n_minus)
    got = cyclic_vacuum_phase(helix, medium)
    if expected == 0.0:
        assert got == 0.0
    else:
        assert got == pytest.approx(expected, rel=1e-12)


def test_cyclic_limit_tends_to_half_solid_angle():
    theta = math.acos(0.6)
    values = []
    for ratio in (10.0, 100.0, 1000.0):
        # n_plus = 1, n_minus = ratio
        e1 = (1 + ratio**2) / 2
        values.append(cyclic_vacuum_phase(WORKED_HELIX, GyroelectricTensor(e1, (1 - ratio**2) / 2, 1.0)))
    gaps = [abs(v - solid_angle(theta) / 2) for v in values]
    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[2] == pytest.approx(solid_angle(theta) / 2 / 1000, rel=1e-9)
