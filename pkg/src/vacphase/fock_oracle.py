"""Finite-matrix verification of the closed-form phases.

Two bosonic modes (R, L) realise su(2) in the Schwinger form, hbar = 1:

    S_plus = a_R^dag a_L,   S_minus = a_L^dag a_R,   S3 = (N_R - N_L) / 2

These conserve the total photon number, so each block of fixed n_total is
represented exactly by an (n_total + 1)-dimensional matrix. Basis index j
is the state |n_R = n_total - j, n_L = j>.

The dressing V = exp(beta*S_plus - conj(beta)*S_minus), with
beta = -(theta/2) exp(-i phi), rotates the block by theta. Along a dressed
trajectory the Mukunda-Simon functional picks up -(n_R - n_L)/2 per unit of
solid angle, half the per-photon weight used by the engine;
:func:`verify_dressed_phase` reports that ratio instead of hiding it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy import integrate

from .errors import (
    DimensionMismatch,
    NonFinite,
    OrthogonalEndpoints,
    StepCount,
    VacPhaseError,
)
from .geometry import ConstantPrecession
from .phase_engine import OrderingMode, PhotonOccupation, phi0, sector_phase

MAX_EXPM_DIM = 1024
_TAYLOR_ORDER = 18


def matrix_exponential(a) -> np.ndarray:
    """exp(a) by scaling and squaring around a truncated Taylor series.

    The matrix is scaled by 2**-s so its 1-norm is at most 1/2, where an
    order-18 Taylor polynomial is accurate to well below double rounding.
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] > MAX_EXPM_DIM:
        raise DimensionMismatch(f"dimension {a.shape[0]} exceeds {MAX_EXPM_DIM}")
    if not np.all(np.isfinite(a)):
        raise NonFinite("matrix has non-finite entries")

    dim = a.shape[0]
    eye = np.eye(dim, dtype=complex)
    norm = np.linalg.norm(a, 1) if dim else 0.0
    if norm == 0:
        return eye
    s = max(0, math.ceil(math.log2(norm / 0.5)))
    b = a / 2.0**s
    result = eye
    for k in range(_TAYLOR_ORDER, 0, -1):
        result = eye + (b @ result) / k
    for _ in range(s):
        result = result @ result
    return result


@dataclass(frozen=True)
class FockBlock:
    n_total: int

    def __post_init__(self):
        if isinstance(self.n_total, bool) or int(self.n_total) != self.n_total or self.n_total < 0:
            raise VacPhaseError(f"n_total must be a non-negative integer, got {self.n_total!r}")

    @property
    def dim(self) -> int:
        return self.n_total + 1

    def index(self, n_R: int, n_L: int) -> int:
        if n_R < 0 or n_L < 0 or n_R + n_L != self.n_total:
            raise VacPhaseError(f"|{n_R}, {n_L}> is not in the n_total={self.n_total} block")
        return n_L

    def occupations(self, j: int) -> tuple[int, int]:
        return self.n_total - j, j

    def basis(self, n_R: int, n_L: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=complex)
        v[self.index(n_R, n_L)] = 1.0
        return v


class SpinOps(NamedTuple):
    S_plus: np.ndarray
    S_minus: np.ndarray
    S3: np.ndarray


def spin_ops(block: FockBlock, dtype=complex) -> SpinOps:
    """Schwinger spin operators on one block.

    ``dtype`` may be raised to ``np.clongdouble`` when products of the
    operators must be resolved below double rounding (entries reach ~n**2/4).
    """
    real = np.finfo(dtype).dtype
    n_L = np.arange(block.dim)
    n_R = block.n_total - n_L
    # |n_R, n_L> -> sqrt((n_R + 1) n_L) |n_R + 1, n_L - 1>
    elements = np.sqrt(((n_R[1:] + 1) * n_L[1:]).astype(real))
    s_plus = np.diag(elements, k=1).astype(dtype)
    s3 = np.diag((0.5 * (n_R - n_L)).astype(real)).astype(dtype)
    return SpinOps(s_plus, s_plus.conj().T.copy(), s3)


def number_ops(block: FockBlock) -> tuple[np.ndarray, np.ndarray]:
    n_L = np.arange(block.dim, dtype=float)
    return np.diag(block.n_total - n_L).astype(complex), np.diag(n_L).astype(complex)


def ladder_ops(cutoff: int) -> tuple[np.ndarray, np.ndarray]:
    """Annihilators (a_R, a_L) on the product space with 0..cutoff quanta per mode.

    Index of |n_R, n_L> is n_R * (cutoff + 1) + n_L.
    """
    a = np.diag(np.sqrt(np.arange(1, cutoff + 1, dtype=float)), k=1).astype(complex)
    eye = np.eye(cutoff + 1, dtype=complex)
    return np.kron(a, eye), np.kron(eye, a)


def _dress(ops, theta, phi):
    beta = -0.5 * theta * np.exp(-1j * phi)
    return matrix_exponential(beta * ops.S_plus - np.conj(beta) * ops.S_minus)


def dressing(block: FockBlock, theta: float, phi: float) -> np.ndarray:
    return _dress(spin_ops(block), theta, phi)


@dataclass(frozen=True, eq=False)
class StateTrajectory:
    times: np.ndarray
    states: np.ndarray

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        states = np.asarray(self.states, dtype=complex)
        if times.ndim != 1 or states.ndim != 2 or states.shape[0] != times.size:
            raise VacPhaseError("times and states must have equal length")
        if np.any(np.diff(times) <= 0):
            raise VacPhaseError("times must be increasing")
        norms = np.linalg.norm(states, axis=1)
        if np.any(np.abs(norms - 1.0) > 1e-10):
            raise VacPhaseError("states must be normalised to within 1e-10")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "states", states)


def ms_geometric_phase(traj: StateTrajectory) -> float:
    """Noncyclic geometric phase arg<psi(0)|psi(T)> - Im int <psi|dpsi/dt> dt.

    The derivative uses second-order central differences (one-sided at the
    ends) and the integral the trapezoid rule. The overlap term lies in
    (-pi, pi], so the result is defined modulo 2*pi.
    """
    if traj.times.size < 3:
        raise VacPhaseError("need at least 3 samples")
    psi = traj.states
    overlap = np.vdot(psi[0], psi[-1])
    if abs(overlap) < 1e-12:
        raise OrthogonalEndpoints("endpoint states are orthogonal; phase undefined")
    dpsi = np.gradient(psi, traj.times, axis=0, edge_order=2)
    local = np.einsum("ij,ij->i", psi.conj(), dpsi).imag
    dynamical = integrate.trapezoid(local, traj.times)
    return float(np.angle(overlap) - dynamical)


def dressed_trajectory(
    block: FockBlock, state: np.ndarray, theta: float, omega: float, t_final: float, samples: int
) -> StateTrajectory:
    times = np.linspace(0.0, t_final, samples)
    ops = spin_ops(block)
    states = np.array([_dress(ops, theta, omega * t) @ state for t in times])
    return StateTrajectory(times, states)


def sector_propagate(
    n: int,
    sector_sign: int,
    omega: float,
    theta: float,
    ordering: OrderingMode,
    t_final: float,
    steps: int,
) -> float:
    """Phase of |n> evolved under the dressed-frame single-mode Hamiltonian.

    H = sign * omega * (1 - cos theta) * (N + 1/2)   (symmetric ordering)
    H = sign * omega * (1 - cos theta) * N           (normal ordering)

    Integrates i dpsi/dt = H psi with ``steps`` fixed RK4 steps from |n> and
    returns -arg <n|psi(t_final)>, accumulated continuously across steps.
    """
    if steps < 2:
        raise StepCount(f"steps must be >= 2, got {steps!r}")
    if n < 0:
        raise VacPhaseError(f"occupation must be >= 0, got {n!r}")
    shift = 0.5 if ordering is OrderingMode.SYMMETRIC else 0.0
    energies = sector_sign * omega * (1.0 - math.cos(theta)) * (np.arange(n + 1) + shift)
    psi = np.zeros(n + 1, dtype=complex)
    psi[n] = 1.0
    h = t_final / steps
    gen = -1j * energies  # dpsi/dt = gen * psi

    phase = 0.0
    amp = psi[n]
    for _ in range(steps):
        k1 = gen * psi
        k2 = gen * (psi + 0.5 * h * k1)
        k3 = gen * (psi + 0.5 * h * k2)
        k4 = gen * (psi + h * k3)
        psi = psi + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        new_amp = psi[n]
        phase += np.angle(new_amp / amp)
        amp = new_amp
    return float(-phase)


@dataclass(frozen=True)
class DressedPhaseReport:
    ms_phase: float
    engine_phase: float
    weight_ratio: float | None
    passed: bool

    @property
    def balanced(self) -> bool:
        return self.weight_ratio is None


SCHWINGER_WEIGHT = 0.5


def verify_dressed_phase(
    block: FockBlock,
    occupation: PhotonOccupation,
    theta: float,
    omega: float,
    cycles: float = 1.0,
    samples: int = 10_000,
    tolerance: float = 1e-4,
) -> DressedPhaseReport:
    """Compare the state-level phase of V(theta, omega t)|n_R, n_L> with the engine.

    The engine phase is the normal-ordered (n_R - n_L) * phi0. Since the
    state acquires exp(-i * engine_phase), the ratio reported is
    ms_phase / (-engine_phase); it is 1/2 for the Schwinger realisation.
    Balanced occupations (n_R == n_L) and theta = 0 give zero on both
    sides and a ratio of None.
    """
    state = block.basis(occupation.n_R, occupation.n_L)
    t_final = cycles * 2.0 * math.pi / omega
    ms = ms_geometric_phase(dressed_trajectory(block, state, theta, omega, t_final, samples))
    unit = phi0(ConstantPrecession(theta, omega), t_final)
    engine = sector_phase(occupation.n_R, 1, unit, OrderingMode.NORMAL) + sector_phase(
        occupation.n_L, -1, unit, OrderingMode.NORMAL
    )
    if occupation.n_R == occupation.n_L or engine == 0:
        return DressedPhaseReport(ms, engine, None, abs(ms) <= tolerance)
    ratio = ms / -engine
    return DressedPhaseReport(ms, engine, ratio, abs(ratio - SCHWINGER_WEIGHT) <= tolerance)
