"""Full interaction-picture master equation for two atoms and the cavity.

The joint space is atom1 (x) atom2 (x) cavity with the cavity ladder
truncated at n_max. The interaction Hamiltonian is

    H(t) = sum_j g_j (a S_j+ e^{+i delta t} + a^dag S_j- e^{-i delta t})

and dissipation enters through the standard atomic and cavity Lindblad
terms at rates gamma and kappa. The phase convention on the a S_j+ term
is the one under which adiabatic elimination reproduces the reduced
model with positive Stark shifts g_j^2/delta; see
<e1 g2, 0|H(t)|g1 g2, 1> = g1 e^{+i delta t}.

This tier is the ground-truth oracle: its atomic state (partial trace
over the cavity) is compared against the reduced model to validate the
adiabatic elimination.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .geometry import SystemParams
from .linalg import NonFiniteStateError, kron, partial_trace_second

__all__ = ["FullModelConfig", "build_operators", "hamiltonian", "lindblad_rhs",
           "evolve_full", "atomic_state", "embed_atomic_state"]

_TOP_FOCK_WARN = 1e-4
_POSITIVITY_FAIL = -1e-6

_SP = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)  # |e><g|, basis (|g>, |e>)
_I2 = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class FullModelConfig:
    """Couplings, rates and cavity truncation for the full model."""

    g1: float
    g2: float
    sys: SystemParams
    n_max: int = 2

    def __post_init__(self):
        if self.n_max < 1:
            raise ValueError("n_max must be >= 1")

    @property
    def dim(self) -> int:
        return 4 * (self.n_max + 1)


def build_operators(cfg: FullModelConfig) -> dict[str, np.ndarray]:
    """Atomic raising/lowering and cavity operators on the joint space."""
    nc = cfg.n_max + 1
    ic = np.eye(nc, dtype=complex)
    a = np.diag(np.sqrt(np.arange(1, nc)), 1).astype(complex)
    ops = {
        "s1p": kron(kron(_SP, _I2), ic),
        "s2p": kron(kron(_I2, _SP), ic),
        "a": kron(kron(_I2, _I2), a),
    }
    ops["s1m"] = ops["s1p"].conj().T
    ops["s2m"] = ops["s2p"].conj().T
    ops["adag"] = ops["a"].conj().T
    ops["n"] = ops["adag"] @ ops["a"]
    return ops


def hamiltonian(cfg: FullModelConfig, t: float) -> np.ndarray:
    """H(t) on the joint space; Hermitian by construction."""
    ops = build_operators(cfg)
    g = (cfg.g1 * ops["a"] @ ops["s1p"] + cfg.g2 * ops["a"] @ ops["s2p"])
    h = g * np.exp(1.0j * cfg.sys.delta * t)
    return h + h.conj().T


def _dissipator(c: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """c rho c^dag - (1/2){c^dag c, rho}."""
    cdc = c.conj().T @ c
    return c @ rho @ c.conj().T - 0.5 * (cdc @ rho + rho @ cdc)


def lindblad_rhs(cfg: FullModelConfig, t: float, rho: np.ndarray) -> np.ndarray:
    """Full right-hand side at time t (trace-free)."""
    h = hamiltonian(cfg, t)
    x = h @ rho
    out = -1.0j * (x - x.conj().T)
    ops = build_operators(cfg)
    if cfg.sys.gamma != 0.0:
        out += cfg.sys.gamma * (_dissipator(ops["s1m"], rho) + _dissipator(ops["s2m"], rho))
    if cfg.sys.kappa != 0.0:
        out += cfg.sys.kappa * _dissipator(ops["a"], rho)
    return out


def embed_atomic_state(rho_atoms: np.ndarray, n_max: int,
                       n_photons: int = 0) -> np.ndarray:
    """rho_atoms (x) |n><n| on the joint space."""
    nc = n_max + 1
    cav = np.zeros((nc, nc), dtype=complex)
    cav[n_photons, n_photons] = 1.0
    return kron(np.asarray(rho_atoms, dtype=complex), cav)


def atomic_state(rho: np.ndarray, n_max: int) -> np.ndarray:
    """Reduced 4x4 atomic density matrix: partial trace over the cavity."""
    return partial_trace_second(rho, 4, n_max + 1)


def evolve_full(
    cfg: FullModelConfig,
    rho0: np.ndarray,
    t_end: float,
    steps: int | None = None,
    samples: int = 400,
) -> tuple[np.ndarray, np.ndarray]:
    """Integrate the full master equation; sample `samples` grid points.

    steps defaults to 200 per fastest period 2*pi/|delta|. The inner RK4
    loop is unrolled here (rather than going through linalg.integrate)
    so half a million 12x12 steps stay affordable; sampled states are
    checked for trace, Hermiticity, positivity and top-Fock population.
    Returns (ts, rhos) with rhos of shape (samples+1, dim, dim).
    """
    rho0 = np.asarray(rho0, dtype=complex)
    if rho0.shape != (cfg.dim, cfg.dim):
        raise ValueError(f"initial state must be {cfg.dim}x{cfg.dim}")
    if steps is None:
        periods = max(1.0, t_end * abs(cfg.sys.delta) / (2.0 * np.pi))
        steps = int(np.ceil(200 * periods))
    steps = max(steps, samples)
    # operators hoisted out of the rhs for speed
    ops = build_operators(cfg)
    g_op = cfg.g1 * ops["a"] @ ops["s1p"] + cfg.g2 * ops["a"] @ ops["s2p"]
    gamma, kappa, delta = cfg.sys.gamma, cfg.sys.kappa, cfg.sys.delta
    collapse = []
    if gamma != 0.0:
        collapse += [(gamma, ops["s1m"]), (gamma, ops["s2m"])]
    if kappa != 0.0:
        collapse += [(kappa, ops["a"])]
    pre = [(rate, c, c.conj().T, c.conj().T @ c) for rate, c in collapse]

    def rhs(t, rho):
        h = g_op * np.exp(1.0j * delta * t)
        h = h + h.conj().T
        x = h @ rho
        out = -1.0j * (x - x.conj().T)
        for rate, c, cd, cdc in pre:
            out += rate * (c @ rho @ cd - 0.5 * (cdc @ rho + rho @ cdc))
        return out

    h = t_end / steps
    sample_every = max(1, steps // samples)
    ts_out = [0.0]
    rhos_out = [rho0.copy()]
    rho = rho0.copy()
    t = 0.0
    top_fock = np.zeros(cfg.dim)
    top_fock[np.arange(cfg.n_max, cfg.dim, cfg.n_max + 1)] = 1.0
    warned = False
    for i in range(steps):
        k1 = rhs(t, rho)
        k2 = rhs(t + 0.5 * h, rho + (0.5 * h) * k1)
        k3 = rhs(t + 0.5 * h, rho + (0.5 * h) * k2)
        k4 = rhs(t + h, rho + h * k3)
        rho = rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        t = (i + 1) * h
        if (i + 1) % sample_every == 0 or i == steps - 1:
            if not np.all(np.isfinite(rho)):
                raise NonFiniteStateError(f"non-finite state at step {i + 1}")
            warned = _check_full_state(rho, top_fock, i + 1, warned)
            if ts_out[-1] != t:
                ts_out.append(t)
                rhos_out.append(rho.copy())
    return np.asarray(ts_out), np.asarray(rhos_out)


def _check_full_state(rho: np.ndarray, top_fock: np.ndarray, step: int,
                      warned: bool) -> bool:
    tr = np.trace(rho)
    if abs(tr.real - 1.0) > 1e-9 or abs(tr.imag) > 1e-9:
        raise RuntimeError(f"trace drifted from 1 at step {step}: {tr}")
    if np.max(np.abs(rho - rho.conj().T)) > 1e-10:
        raise RuntimeError(f"state lost Hermiticity at step {step}")
    wmin = np.min(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)))
    if wmin < _POSITIVITY_FAIL:
        raise RuntimeError(
            f"truncation or step failure: eigenvalue {wmin:.3g} at step {step}"
        )
    pop_top = float(np.real(np.sum(np.diag(rho) * top_fock)))
    if pop_top > _TOP_FOCK_WARN and not warned:
        warnings.warn(
            f"top Fock level population {pop_top:.3g} exceeds {_TOP_FOCK_WARN:g}; "
            "raise n_max",
            RuntimeWarning,
            stacklevel=3,
        )
        warned = True
    return warned
