"""Gyroelectric permittivity tensor and its circular eigenmodes.

For propagation along the gyration axis the transverse block
[[eps1, i*eps2], [-i*eps2, eps1]] has circular eigenvectors. Jones vectors
use the exp(-i*omega*t) convention: (1, -i)/sqrt(2) is labelled right-handed
and carries n_plus**2 = eps1 + eps2; (1, +i)/sqrt(2) is left-handed with
n_minus**2 = eps1 - eps2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import EvanescentMode, VacPhaseError

JONES_R = np.array([1.0, -1.0j]) / math.sqrt(2.0)
JONES_L = np.array([1.0, 1.0j]) / math.sqrt(2.0)


@dataclass(frozen=True)
class GyroelectricTensor:
    eps1: float
    eps2: float
    eps3: float
    mu: float = 1.0

    def __post_init__(self):
        for name in ("eps1", "eps2", "eps3"):
            if not math.isfinite(getattr(self, name)):
                raise VacPhaseError(f"{name} must be finite")
        if not self.eps3 > 0:
            raise VacPhaseError(f"eps3 must be > 0, got {self.eps3!r}")
        if self.mu != 1.0:
            raise VacPhaseError("only non-magnetic media (mu = 1) are supported")


class Eigenmode(NamedTuple):
    label: str
    eigenvalue: float
    vector: np.ndarray


def permittivity_matrix(medium: GyroelectricTensor) -> np.ndarray:
    e1, e2, e3 = medium.eps1, medium.eps2, medium.eps3
    return np.array(
        [[e1, 1j * e2, 0.0], [-1j * e2, e1, 0.0], [0.0, 0.0, e3]], dtype=complex
    )


def refractive_indices(medium: GyroelectricTensor) -> tuple[float, float]:
    """Return (n_plus, n_minus) for right- and left-handed circular light."""
    plus = medium.eps1 + medium.eps2
    minus = medium.eps1 - medium.eps2
    if not plus > 0:
        raise EvanescentMode("n_plus", plus)
    if not minus > 0:
        raise EvanescentMode("n_minus", minus)
    return math.sqrt(plus), math.sqrt(minus)


def _fix_phase(v):
    # first nonzero component made real positive
    k = int(np.flatnonzero(np.abs(v) > 1e-14)[0])
    return v * (abs(v[k]) / v[k])


def transverse_eigenmodes(medium: GyroelectricTensor) -> tuple[Eigenmode, Eigenmode]:
    """Numerically diagonalise the transverse block; returns (R, L) modes.

    In the degenerate case (eps2 == 0, up to rounding) any basis is an
    eigenbasis and the canonical circular pair is returned.
    """
    block = permittivity_matrix(medium)[:2, :2]
    values, vectors = np.linalg.eigh(block)
    gap_floor = 16 * np.finfo(float).eps * max(abs(values[0]), abs(values[1]), 1.0)
    if values[1] - values[0] <= gap_floor:
        return (
            Eigenmode("R", float(values[0]), JONES_R.copy()),
            Eigenmode("L", float(values[1]), JONES_L.copy()),
        )
    # pick the eigenvector with the larger overlap on the R Jones vector
    r = int(np.argmax(np.abs(JONES_R.conj() @ vectors)))
    l = 1 - r
    return (
        Eigenmode("R", float(values[r]), _fix_phase(vectors[:, r])),
        Eigenmode("L", float(values[l]), _fix_phase(vectors[:, l])),
    )
