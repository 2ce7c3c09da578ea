"""Closed-form solutions of the reduced two-atom model.

With A = 2*omega12*u0 - delta12*w0 and B = delta12*u0 + 2*omega12*w0,
the undamped Bloch vector rotates about the pseudofield at the detuned
Rabi frequency alpha and the damped solution is that rotation times
exp(-gamma*t):

    u(t) = e^{-gamma t} [2 omega12 A + delta12 (v0 alpha sin + B cos)] / alpha^2
    v(t) = e^{-gamma t} [v0 alpha cos - B sin] / alpha
    w(t) = e^{-gamma t} [-delta12 A + 2 omega12 (v0 alpha sin + B cos)] / alpha^2

(the sign of the B sin term in v is fixed relative to the published
form, which does not satisfy the equations of motion; u and w are as
published). For a pure single-excitation preparation the concurrence is
max(0, e^{-gamma t} sqrt(1 - wbar(t)^2)) with wbar the undamped w.

The three standard preparations:
  case A: (u0, v0, w0) = (0, 0, 1)  -> C = 0 at t = 0
  case B: (0, 1, 0)                 -> C = 1 at t = 0
  case C: (1, 0, 0)                 -> C = 1 at t = 0, locked when delta12 = 0
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import EffectiveParams

__all__ = [
    "InitialBloch",
    "bloch_solution",
    "populations_solution",
    "concurrence_single_excitation",
    "concurrence_case_a",
    "concurrence_case_b",
    "concurrence_case_c",
    "zero_times",
]

_SQRT_CLAMP = -1e-12
_PARAM_RTOL = 1e-12


@dataclass(frozen=True)
class InitialBloch:
    """Initial Bloch components; must lie inside the unit ball."""

    u0: float
    v0: float
    w0: float

    def __post_init__(self):
        if self.u0**2 + self.v0**2 + self.w0**2 > 1.0 + 1e-12:
            raise ValueError("initial Bloch vector lies outside the unit ball")

    def drive_components(self, p: EffectiveParams) -> tuple[float, float]:
        """(A, B) = (2*omega12*u0 - delta12*w0, delta12*u0 + 2*omega12*w0)."""
        return (
            2.0 * p.omega12 * self.u0 - p.delta12 * self.w0,
            p.delta12 * self.u0 + 2.0 * p.omega12 * self.w0,
        )


CASE_A = InitialBloch(0.0, 0.0, 1.0)
CASE_B = InitialBloch(0.0, 1.0, 0.0)
CASE_C = InitialBloch(1.0, 0.0, 0.0)


def _sqrt_clamped(x):
    """sqrt with float-noise clamping; genuinely negative input is an error."""
    x = np.asarray(x, dtype=float)
    if np.any(x < _SQRT_CLAMP):
        raise ValueError(f"square-root argument below {x.min():g}; formula misuse")
    return np.sqrt(np.where(x < 0.0, 0.0, x))


def bloch_solution(t, init: InitialBloch, p: EffectiveParams, gamma: float):
    """(u, v, w) at time(s) t. Vectorized over t."""
    t = np.asarray(t, dtype=float)
    decay = np.exp(-gamma * t)
    if p.alpha == 0.0:
        return init.u0 * decay, init.v0 * decay, init.w0 * decay
    a = p.alpha
    ca, cb = init.drive_components(p)
    s, c = np.sin(a * t), np.cos(a * t)
    osc = init.v0 * a * s + cb * c
    u = decay * (2.0 * p.omega12 * ca + p.delta12 * osc) / a**2
    v = decay * (init.v0 * a * c - cb * s) / a
    w = decay * (-p.delta12 * ca + 2.0 * p.omega12 * osc) / a**2
    return u, v, w


def populations_solution(t, rho11_0: float, rhopp_0: float, rho44_0: float,
                         gamma: float):
    """(rho11, rhopp, rho44) at time(s) t.

    rho44 decays at 2*gamma, rhopp at gamma while being fed by rho44,
    and rho11 absorbs the rest of the unit trace:
        rho44(t) = rho44(0) e^{-2 gamma t}
        rhopp(t) = (rhopp(0) + 2 rho44(0)) e^{-gamma t} - 2 rho44(0) e^{-2 gamma t}
    """
    total = rho11_0 + rhopp_0 + rho44_0
    if abs(total - 1.0) > 1e-9:
        raise ValueError("initial populations must sum to 1")
    t = np.asarray(t, dtype=float)
    e1 = np.exp(-gamma * t)
    e2 = e1 * e1
    rho44 = rho44_0 * e2
    rhopp = (rhopp_0 + 2.0 * rho44_0) * e1 - 2.0 * rho44_0 * e2
    return 1.0 - rhopp - rho44, rhopp, rho44


def concurrence_single_excitation(t, init: InitialBloch, p: EffectiveParams,
                                  gamma: float):
    """max(0, e^{-gamma t} sqrt(1 - wbar(t)^2)) for a pure single excitation.

    Requires |B(0)| = 1 (so rho11 = rho44 = 0 and the state is pure in
    the {|2>, |3>} block); otherwise the general Wootters path applies.
    """
    norm = init.u0**2 + init.v0**2 + init.w0**2
    if abs(norm - 1.0) > 1e-10:
        raise ValueError(
            "not a pure single-excitation preparation; use the Wootters concurrence"
        )
    t = np.asarray(t, dtype=float)
    _, _, w = bloch_solution(t, init, p, gamma=0.0)
    return np.maximum(0.0, np.exp(-gamma * t) * _sqrt_clamped(1.0 - w * w))


def concurrence_case_a(t, p: EffectiveParams, gamma: float):
    """e^{-gamma t} sqrt(1 - [1 - (8 omega12^2/alpha^2) sin^2(alpha t/2)]^2)."""
    t = np.asarray(t, dtype=float)
    if p.alpha == 0.0:
        return np.zeros_like(t)
    ratio = 8.0 * p.omega12**2 / p.alpha**2
    bracket = 1.0 - ratio * np.sin(0.5 * p.alpha * t) ** 2
    return np.exp(-gamma * t) * _sqrt_clamped(1.0 - bracket * bracket)


def concurrence_case_b(t, p: EffectiveParams, gamma: float):
    """e^{-gamma t} sqrt(1 - (4 omega12^2/alpha^2) sin^2(alpha t))."""
    t = np.asarray(t, dtype=float)
    if p.alpha == 0.0:
        return np.exp(-gamma * t) * np.ones_like(t)
    ratio = 4.0 * p.omega12**2 / p.alpha**2
    return np.exp(-gamma * t) * _sqrt_clamped(1.0 - ratio * np.sin(p.alpha * t) ** 2)


def concurrence_case_c(t, p: EffectiveParams, gamma: float):
    """e^{-gamma t} sqrt(1 - (16 omega12^2 delta12^2/alpha^4) sin^4(alpha t/2))."""
    t = np.asarray(t, dtype=float)
    if p.alpha == 0.0:
        return np.exp(-gamma * t) * np.ones_like(t)
    ratio = 16.0 * p.omega12**2 * p.delta12**2 / p.alpha**4
    return np.exp(-gamma * t) * _sqrt_clamped(
        1.0 - ratio * np.sin(0.5 * p.alpha * t) ** 4
    )


def zero_times(case: str, p: EffectiveParams, t_max: float) -> np.ndarray:
    """Times in [0, t_max] at which the case formula vanishes.

    case A: n*pi/alpha when delta12 = 0, else only 2*n*pi/alpha
            (entanglement persists twice as long for unequal couplings);
    case B: odd multiples of pi/(2*alpha) when delta12 = 0, else never;
    case C: odd multiples of pi/alpha when delta12 = 2*omega12
            (complete quenching), else never. t = 0 is included where
            the formula starts at zero (case A only).

    The zero sets are independent of gamma.
    """
    if p.alpha == 0.0:
        return np.array([])
    scale = max(abs(p.delta12), abs(2.0 * p.omega12))
    period = np.pi / p.alpha
    case = case.upper()
    if case == "A":
        step = period if abs(p.delta12) <= _PARAM_RTOL * scale else 2.0 * period
        return np.arange(0.0, t_max + 1e-15 * max(1.0, t_max), step)
    if case == "B":
        if abs(p.delta12) > _PARAM_RTOL * scale:
            return np.array([])
        first = 0.5 * period
        return np.arange(first, t_max + 1e-15 * max(1.0, t_max), period)
    if case == "C":
        if abs(abs(p.delta12) - 2.0 * abs(p.omega12)) > _PARAM_RTOL * scale:
            return np.array([])
        return np.arange(period, t_max + 1e-15 * max(1.0, t_max), 2.0 * period)
    raise ValueError(f"unknown case {case!r}; expected A, B or C")
