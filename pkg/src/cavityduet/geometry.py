"""Standing-wave mode geometry and the dispersive effective parameters.

Atom positions in the Gaussian standing-wave mode map to coupling
constants g1, g2, and those in turn to the reduced two-atom model's
parameter bundle: Stark shifts delta1, delta2, their difference delta12,
the cavity-induced exchange coupling omega12, and the detuned Rabi
frequency alpha = sqrt(4*omega12^2 + delta12^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

__all__ = [
    "ModeGeometry",
    "AtomPlacement",
    "SystemParams",
    "EffectiveParams",
    "coupling_at",
    "coupling_pair",
    "effective_params",
]


@dataclass(frozen=True)
class ModeGeometry:
    """Gaussian standing-wave mode: peak coupling, wavelength, waist."""

    g0: float
    wavelength: float
    waist: float = 1.0

    def __post_init__(self):
        if self.g0 <= 0 or self.wavelength <= 0 or self.waist <= 0:
            raise ValueError("g0, wavelength and waist must all be positive")

    @property
    def k(self) -> float:
        """Wavenumber 2*pi/wavelength."""
        return 2.0 * math.pi / self.wavelength


@dataclass(frozen=True)
class AtomPlacement:
    """Axial and radial coordinates of the two atoms.

    r12 = z2 - z1 is the axial separation; the two-atom analysis keeps
    both atoms on axis with atom 1 at an antinode.
    """

    z1: float = 0.0
    z2: float = 0.0
    r1: float = 0.0
    r2: float = 0.0

    def __post_init__(self):
        if self.r1 < 0 or self.r2 < 0:
            raise ValueError("radial distances must be >= 0")

    @property
    def r12(self) -> float:
        return self.z2 - self.z1


@dataclass(frozen=True)
class SystemParams:
    """Detuning and decay rates, all in rad/time."""

    delta: float
    gamma: float = 0.0
    kappa: float = 0.0

    def __post_init__(self):
        if self.gamma < 0 or self.kappa < 0:
            raise ValueError("decay rates must be >= 0")

    def dispersive_valid(self, g0: float) -> bool:
        """Whether the detuning is safely dispersive (|delta| >= 10*g0)."""
        return abs(self.delta) >= 10.0 * g0


@dataclass(frozen=True)
class EffectiveParams:
    """Reduced-model parameter bundle after adiabatic elimination.

    delta12 = delta1 - delta2, omega12 = g1*g2/delta, and
    alpha = sqrt(4*omega12^2 + delta12^2). theta is the cone angle
    atan2(-2*omega12, delta12) between the Bloch vector's precession
    axis and the w axis; when delta12 = 0 it lands on +-pi/2 depending
    on the sign of omega12.
    """

    delta1: float
    delta2: float
    omega12: float
    delta12: float = field(init=False)
    alpha: float = field(init=False)
    theta: float = field(init=False)

    def __post_init__(self):
        d12 = self.delta1 - self.delta2
        object.__setattr__(self, "delta12", d12)
        object.__setattr__(self, "alpha", math.hypot(2.0 * self.omega12, d12))
        object.__setattr__(self, "theta", math.atan2(-2.0 * self.omega12, d12))

    @property
    def pseudofield(self) -> tuple[float, float, float]:
        """Precession axis (-2*omega12, 0, delta12) of the Bloch vector."""
        return (-2.0 * self.omega12, 0.0, self.delta12)


def coupling_at(geom: ModeGeometry, r: float, z: float) -> float:
    """Coupling g0 * exp(-r^2/w0^2) * cos(k z); the sign is retained."""
    return geom.g0 * math.exp(-(r**2) / geom.waist**2) * math.cos(geom.k * z)


def coupling_pair(geom: ModeGeometry, r12: float) -> tuple[float, float]:
    """Couplings for atom 1 at an antinode, atom 2 displaced by r12.

    g1 = g0 and g2 = g0*cos(k*r12); g2 keeps the sign of the cosine.
    """
    return geom.g0, geom.g0 * math.cos(geom.k * r12)


def effective_params(g1: float, g2: float, sys: SystemParams) -> EffectiveParams:
    """Adiabatic-elimination parameters delta_i = g_i^2/delta, omega12 = g1*g2/delta."""
    if sys.delta == 0.0:
        raise ValueError("dispersive model invalid: detuning is zero")
    return EffectiveParams(
        delta1=g1**2 / sys.delta,
        delta2=g2**2 / sys.delta,
        omega12=g1 * g2 / sys.delta,
    )
