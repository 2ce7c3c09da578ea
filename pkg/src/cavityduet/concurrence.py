"""Two-qubit entanglement: Wootters concurrence and the X-state shortcut.

Basis ordering throughout: |1> = |g1 g2>, |2> = |g1 e2>, |3> = |e1 g2>,
|4> = |e1 e2> (indices 0..3).

The general route builds R = rho * rho_tilde with the spin-flipped
rho_tilde and takes max(0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4))
over R's eigenvalues sorted descending. In this model's sector
(rho14 = 0 and the coherence confined to the 23 block) the closed form
2*max(0, |rho23| - sqrt(rho11*rho44)) is exact and the two routes
cross-validate each other.
"""

from __future__ import annotations

import numpy as np

from .linalg import eigvals4, is_hermitian

__all__ = ["spin_flip", "wootters", "xstate_concurrence", "concurrence", "validate_density"]

# floating-point slack for eigenvalues of R = rho * rho_tilde
_NEG_CLAMP = -1e-8
_IMAG_TOL = 1e-8

_SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])
_SY_SY = np.kron(_SIGMA_Y, _SIGMA_Y)


def validate_density(rho: np.ndarray, herm_tol: float = 1e-10,
                     trace_tol: float = 1e-10, eig_floor: float = -1e-8) -> np.ndarray:
    """Check Hermiticity, unit trace and positivity of a 4x4 density matrix."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 density matrix, got {rho.shape}")
    if not is_hermitian(rho, herm_tol):
        raise ValueError("density matrix is not Hermitian within tolerance")
    if abs(np.trace(rho).real - 1.0) > trace_tol or abs(np.trace(rho).imag) > trace_tol:
        raise ValueError("density matrix does not have unit trace")
    if np.min(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))) < eig_floor:
        raise ValueError("density matrix has a significantly negative eigenvalue")
    return rho


def spin_flip(rho: np.ndarray) -> np.ndarray:
    """(sigma_y x sigma_y) rho* (sigma_y x sigma_y)."""
    rho = np.asarray(rho, dtype=complex)
    return _SY_SY @ rho.conj() @ _SY_SY


def wootters(rho: np.ndarray, eig_floor: float = -1e-8) -> float:
    """Wootters concurrence of a two-qubit density matrix, in [0, 1].

    eig_floor loosens the positivity check for states carrying numeric
    noise (e.g. partial traces of a truncated joint evolution).
    """
    rho = validate_density(rho, eig_floor=eig_floor)
    lam = eigvals4(rho @ spin_flip(rho))
    imag_tol = max(_IMAG_TOL, abs(eig_floor))
    if np.max(np.abs(lam.imag)) > imag_tol:
        raise ValueError("eigenvalues of rho*rho_tilde have excessive imaginary part")
    vals = lam.real.copy()
    clamp = min(_NEG_CLAMP, eig_floor)
    if np.min(vals) < clamp:
        raise ValueError("eigenvalue of rho*rho_tilde below the clamping window")
    vals[(vals >= clamp) & (vals < 0.0)] = 0.0
    roots = np.sqrt(vals)  # already descending by real part
    return max(0.0, float(roots[0] - roots[1] - roots[2] - roots[3]))


def xstate_concurrence(rho: np.ndarray, sector_tol: float = 1e-10) -> float:
    """Closed-form concurrence 2*max(0, |rho23| - sqrt(rho11*rho44)).

    Exact on this model's sector, where rho14 and every coherence
    linking {|1>, |4>} to {|2>, |3>} vanish. Outside the sector the
    shortcut is wrong; use wootters instead.
    """
    rho = np.asarray(rho, dtype=complex)
    off_sector = [(0, 3), (0, 1), (0, 2), (1, 3), (2, 3)]
    if any(abs(rho[i, j]) > sector_tol for i, j in off_sector):
        raise ValueError(
            "state has coherences outside the single-excitation sector; use wootters"
        )
    return 2.0 * max(0.0, abs(rho[1, 2]) - np.sqrt(max(0.0, rho[0, 0].real * rho[3, 3].real)))


def concurrence(rho: np.ndarray, sector_tol: float = 1e-10) -> float:
    """X-state shortcut when the sector precondition holds, else Wootters."""
    try:
        return xstate_concurrence(rho, sector_tol)
    except ValueError:
        return wootters(rho)
