"""Adiabatically eliminated two-atom model.

After the cavity mode is eliminated, the atoms obey

    d(rho_s)/dt = -i [H_eff, rho_s] + (gamma/2) L_a rho_s

with H_eff = delta1 S1+S1- + delta2 S2+S2- + omega12 (S1+S2- + S2+S1-)
on the basis |1> = |g1 g2>, |2> = |g1 e2>, |3> = |e1 g2>, |4> = |e1 e2>.
The {|2>, |3>} block is an effective driven two-level system described
by the Bloch vector (u, v, w) with u = rho23 + rho32,
v = i(rho23 - rho32), w = rho22 - rho33, precessing about the
pseudofield (-2*omega12, 0, delta12) while decaying at gamma.
"""

from __future__ import annotations

import numpy as np

from .geometry import EffectiveParams
from .linalg import integrate, is_hermitian

__all__ = [
    "state_case_a",
    "state_case_b",
    "state_case_c",
    "state_from_bloch_init",
    "reduced_rhs",
    "bloch_rhs",
    "evolve_reduced",
    "bloch_from_density",
    "density_from_bloch",
    "check_sector",
    "effective_hamiltonian",
]

_SECTOR_TOL = 1e-10

# lowering operators on the joint space: S1- = |1><3| + |2><4|, S2- = |1><2| + |3><4|
_S1M = np.zeros((4, 4), dtype=complex)
_S1M[0, 2] = _S1M[1, 3] = 1.0
_S2M = np.zeros((4, 4), dtype=complex)
_S2M[0, 1] = _S2M[2, 3] = 1.0
_P1 = _S1M.conj().T @ _S1M  # atom-1 excited projector diag(0,0,1,1)
_P2 = _S2M.conj().T @ _S2M  # atom-2 excited projector diag(0,1,0,1)
_EXCHANGE = _S1M.conj().T @ _S2M + _S2M.conj().T @ _S1M  # |3><2| + |2><3|


def state_case_a() -> np.ndarray:
    """Atom 2 excited, atom 1 in the ground state: (u0, v0, w0) = (0, 0, 1)."""
    rho = np.zeros((4, 4), dtype=complex)
    rho[1, 1] = 1.0
    return rho


def state_case_b() -> np.ndarray:
    """Opposite-phase superposition (|g1 e2> + i|e1 g2>)/sqrt(2): (0, 1, 0)."""
    psi = np.array([0.0, 1.0, 1.0j, 0.0]) / np.sqrt(2.0)
    return np.outer(psi, psi.conj())


def state_case_c() -> np.ndarray:
    """In-phase superposition (|g1 e2> + |e1 g2>)/sqrt(2): (1, 0, 0)."""
    psi = np.array([0.0, 1.0, 1.0, 0.0]) / np.sqrt(2.0)
    return np.outer(psi, psi.conj())


def state_from_bloch_init(u0: float, v0: float, w0: float,
                          rho11: float = 0.0, rho44: float = 0.0) -> np.ndarray:
    """Density matrix with the given Bloch components and end populations."""
    rhopp = 1.0 - rho11 - rho44
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = rho11
    rho[3, 3] = rho44
    rho[1, 1] = 0.5 * (rhopp + w0)
    rho[2, 2] = 0.5 * (rhopp - w0)
    rho[1, 2] = 0.5 * (u0 - 1.0j * v0)
    rho[2, 1] = np.conj(rho[1, 2])
    if rho[1, 1].real < -1e-12 or rho[2, 2].real < -1e-12:
        raise ValueError("populations derived from (u0, v0, w0) are negative")
    return rho


def effective_hamiltonian(p: EffectiveParams) -> np.ndarray:
    return p.delta1 * _P1 + p.delta2 * _P2 + p.omega12 * _EXCHANGE


def reduced_rhs(rho_s: np.ndarray, p: EffectiveParams, gamma: float) -> np.ndarray:
    """Right-hand side of the reduced master equation (trace-free)."""
    h = effective_hamiltonian(p)
    x = h @ rho_s
    out = -1.0j * (x - x.conj().T)
    if gamma != 0.0:
        for sm in (_S1M, _S2M):
            proj = sm.conj().T @ sm
            out += gamma * (sm @ rho_s @ sm.conj().T) \
                - 0.5 * gamma * (proj @ rho_s + rho_s @ proj)
    return out


def bloch_rhs(b: np.ndarray, p: EffectiveParams, gamma: float) -> np.ndarray:
    """Derivative of (u, v, w, rho11, rhopp, rho44).

    The (u, v, w) part equals -gamma*B + B x Omega_B with
    Omega_B = (-2*omega12, 0, delta12); the populations decouple.
    """
    u, v, w, r11, rpp, r44 = b
    d12, om = p.delta12, p.omega12
    return np.array([
        -gamma * u + d12 * v,
        -gamma * v - d12 * u - 2.0 * om * w,
        -gamma * w + 2.0 * om * v,
        gamma - gamma * (r11 + r44),
        -gamma * rpp + 2.0 * gamma * r44,
        -2.0 * gamma * r44,
    ])


def bloch_from_density(rho_s: np.ndarray, sector_tol: float = _SECTOR_TOL) -> np.ndarray:
    """(u, v, w, rho11, rhopp, rho44) of a reduced-model state.

    The mapping is invertible only on the sector with no coherences
    outside the {|2>, |3>} block, so off-sector states are rejected.
    """
    rho_s = np.asarray(rho_s, dtype=complex)
    check_sector(rho_s, sector_tol)
    r23 = rho_s[1, 2]
    return np.array([
        2.0 * r23.real,
        -2.0 * r23.imag,
        (rho_s[1, 1] - rho_s[2, 2]).real,
        rho_s[0, 0].real,
        (rho_s[1, 1] + rho_s[2, 2]).real,
        rho_s[3, 3].real,
    ])


def density_from_bloch(b: np.ndarray) -> np.ndarray:
    """Inverse of bloch_from_density on the sector where it is defined."""
    u, v, w, r11, rpp, r44 = b
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = r11
    rho[3, 3] = r44
    rho[1, 1] = 0.5 * (rpp + w)
    rho[2, 2] = 0.5 * (rpp - w)
    rho[1, 2] = 0.5 * (u - 1.0j * v)
    rho[2, 1] = np.conj(rho[1, 2])
    return rho


def check_sector(rho_s: np.ndarray, tol: float = _SECTOR_TOL) -> None:
    """Raise unless all coherences outside the {|2>,|3>} block vanish."""
    rho_s = np.asarray(rho_s)
    for i, j in [(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)]:
        if abs(rho_s[i, j]) > tol:
            raise ValueError(
                "state has off-sector coherences; the Bloch mapping is undefined"
            )


def _check_state(rho: np.ndarray, where: str) -> None:
    if not is_hermitian(rho, 1e-10):
        raise RuntimeError(f"reduced state lost Hermiticity {where}")
    if abs(np.trace(rho).real - 1.0) > 1e-9:
        raise RuntimeError(f"reduced state lost unit trace {where}")
    if np.min(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))) < -1e-6:
        raise RuntimeError(f"reduced state lost positivity {where}")


def evolve_reduced(
    rho0: np.ndarray,
    p: EffectiveParams,
    gamma: float,
    t_end: float,
    steps: int | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Integrate the reduced master equation with fixed-step RK4.

    steps defaults to 400 per Rabi period 2*pi/alpha (with a floor for
    the degenerate alpha = 0 case). Returns (ts, rhos).
    """
    rho0 = np.asarray(rho0, dtype=complex)
    if steps is None:
        periods = max(1.0, t_end * p.alpha / (2.0 * np.pi))
        steps = int(np.ceil(400 * periods))
    ts, rhos = integrate(lambda t, r: reduced_rhs(r, p, gamma), 0.0, rho0, t_end, steps)
    _check_state(rhos[-1], f"at t={ts[-1]:g}")
    return ts, rhos
