"""Cross-module invariant suite backing the `validate` subcommand.

Each check is a small self-contained property with an independent
oracle (numpy eigensolvers, closed forms, conservation laws). The
runner executes every check, collects failures with their messages and
leaves the pass/fail policy to the caller.
"""

from __future__ import annotations

import os
import tempfile

import numpy as np

from . import analytic, diffraction, geometry, linalg, reduced_model
from .concurrence import wootters, xstate_concurrence
from .trajectory import Trajectory, read_trajectory_csv, write_trajectory_csv

__all__ = ["run_all", "CHECKS"]

_SEED = 20240817


def _rng():
    return np.random.default_rng(_SEED)


def _random_density(rng, n: int = 4) -> np.ndarray:
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    rho = a @ a.conj().T
    return rho / np.trace(rho)


def check_eigvals4_against_numpy() -> None:
    rng = _rng()
    for _ in range(50):
        m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        got = np.sort_complex(linalg.eigvals4(m))
        want = np.sort_complex(np.linalg.eigvals(m))
        err = np.max(np.abs(got - want))
        assert err < 1e-8, f"eigvals4 deviates from numpy by {err:g}"


def check_partial_trace() -> None:
    rng = _rng()
    ra, rb = _random_density(rng, 4), _random_density(rng, 3)
    back = linalg.partial_trace_second(linalg.kron(ra, rb), 4, 3)
    err = np.max(np.abs(back - ra))
    assert err < 1e-12, f"partial trace round-trip error {err:g}"


def check_rk4_order() -> None:
    # y' = -y on [0, 1]: empirical convergence order of the endpoint error
    rhs = lambda t, y: -y
    y0 = np.array([1.0])
    errs = []
    for steps in (8, 16, 32):
        _, ys = linalg.integrate(rhs, 0.0, y0, 1.0, steps)
        errs.append(abs(ys[-1][0] - np.exp(-1.0)))
    order = np.log2(errs[0] / errs[1])
    assert 3.7 <= order <= 4.3, f"RK4 empirical order {order:.2f} out of range"


def check_concurrence_oracles() -> None:
    rng = _rng()
    for _ in range(100):
        pops = rng.dirichlet(np.ones(4))
        r23_max = np.sqrt(pops[1] * pops[2])
        r23 = rng.uniform(0, r23_max) * np.exp(1j * rng.uniform(0, 2 * np.pi))
        rho = np.diag(pops).astype(complex)
        rho[1, 2], rho[2, 1] = r23, np.conj(r23)
        diff = abs(xstate_concurrence(rho) - wootters(rho))
        assert diff < 1e-10, f"oracle disagreement {diff:g}"
    bell = np.zeros((4, 4), dtype=complex)
    bell[1, 1] = bell[2, 2] = bell[1, 2] = bell[2, 1] = 0.5
    assert wootters(bell) == 1.0, "Bell state concurrence is not exactly 1"
    prod = np.zeros((4, 4), dtype=complex)
    prod[0, 0] = 1.0
    assert wootters(prod) == 0.0, "product state concurrence is not exactly 0"


def check_analytic_vs_rk4() -> None:
    sysp = geometry.SystemParams(delta=50.0, gamma=0.05)
    g1, g2 = geometry.coupling_pair(geometry.ModeGeometry(1.0, 1.0), 0.1)
    p = geometry.effective_params(g1, g2, sysp)
    t_end = 6.0 * np.pi / p.alpha
    for init in (analytic.CASE_A, analytic.CASE_B, analytic.CASE_C):
        b0 = np.array([init.u0, init.v0, init.w0, 0.0, 1.0, 0.0])
        ts, bs = linalg.integrate(
            lambda t, b: reduced_model.bloch_rhs(b, p, sysp.gamma),
            0.0, b0, t_end, 4000,
        )
        u, v, w = analytic.bloch_solution(ts, init, p, sysp.gamma)
        err = max(
            np.max(np.abs(bs[:, 0] - u)),
            np.max(np.abs(bs[:, 1] - v)),
            np.max(np.abs(bs[:, 2] - w)),
        )
        assert err < 1e-8, f"analytic/RK4 mismatch {err:g} for {init}"


def check_bloch_norm_decay() -> None:
    sysp = geometry.SystemParams(delta=50.0, gamma=0.08)
    g1, g2 = geometry.coupling_pair(geometry.ModeGeometry(1.0, 1.0), 0.15)
    p = geometry.effective_params(g1, g2, sysp)
    t = np.linspace(0.0, 4.0 * np.pi / p.alpha, 200)
    u, v, w = analytic.bloch_solution(t, analytic.CASE_B, p, sysp.gamma)
    err = np.max(np.abs(u * u + v * v + w * w - np.exp(-2.0 * sysp.gamma * t)))
    assert err < 1e-10, f"Bloch norm decay violated by {err:g}"


def check_populations_closed_form() -> None:
    gamma = 0.3
    p0 = (0.2, 0.5, 0.3)
    rhs = lambda t, y: np.array([
        gamma - gamma * (y[0] + y[2]),
        -gamma * y[1] + 2.0 * gamma * y[2],
        -2.0 * gamma * y[2],
    ])
    ts, ys = linalg.integrate(rhs, 0.0, np.array(p0), 5.0, 2000)
    r11, rpp, r44 = analytic.populations_solution(ts, *p0, gamma)
    err = np.max(np.abs(ys - np.column_stack([r11, rpp, r44])))
    assert err < 1e-10, f"population closed form deviates by {err:g}"


def check_reduced_vs_bloch_rhs() -> None:
    rng = _rng()
    sysp = geometry.SystemParams(delta=40.0, gamma=0.07)
    p = geometry.effective_params(1.0, 0.6, sysp)
    for _ in range(20):
        pops = rng.dirichlet(np.ones(4))
        r23 = rng.uniform(0, np.sqrt(pops[1] * pops[2])) \
            * np.exp(1j * rng.uniform(0, 2 * np.pi))
        rho = np.diag(pops).astype(complex)
        rho[1, 2], rho[2, 1] = r23, np.conj(r23)
        drho = reduced_model.reduced_rhs(rho, p, sysp.gamma)
        b = reduced_model.bloch_from_density(rho)
        db = reduced_model.bloch_rhs(b, p, sysp.gamma)
        via_density = np.array([
            2.0 * drho[1, 2].real,
            -2.0 * drho[1, 2].imag,
            (drho[1, 1] - drho[2, 2]).real,
            drho[0, 0].real,
            (drho[1, 1] + drho[2, 2]).real,
            drho[3, 3].real,
        ])
        err = np.max(np.abs(db - via_density))
        assert err < 1e-13, f"Bloch/density equations disagree by {err:g}"


def check_diffraction_optima() -> None:
    for tau in (np.pi / 2, 4.5 * np.pi):
        for r in diffraction.optimum_positions(tau):
            c = diffraction.concurrence_vs_position(r, tau)
            assert c >= 1.0 - 1e-8, f"optimum at r={r:g} gives C={c!r}"
    for tau in (4.5 * np.pi, 13.5 * np.pi):
        for r in diffraction.zero_positions(tau):
            c = diffraction.concurrence_vs_position(r, tau)
            assert c <= 1e-10, f"zero at r={r:g} gives C={c!r}"


def check_step_halving() -> None:
    sysp = geometry.SystemParams(delta=50.0, gamma=0.05)
    p = geometry.effective_params(1.0, 0.8, sysp)
    rho0 = reduced_model.state_case_a()
    err = linalg.step_halving_error(
        lambda t, r: reduced_model.reduced_rhs(r, p, sysp.gamma),
        0.0, rho0, 2.0 * np.pi / p.alpha, 400,
    )
    assert err < 1e-10, f"step-halving endpoint shift {err:g} too large"


def check_csv_round_trip() -> None:
    tau = np.linspace(0.0, 1.0, 11)
    cols = {
        "tau": tau, "t": 25.0 * tau,
        "u": np.sin(tau), "v": np.cos(tau), "w": 0.1 * tau,
        "rho11": 0.0 * tau, "rho22": 0.5 + 0.0 * tau, "rho33": 0.5 - 0.0 * tau,
        "rho44": 0.0 * tau, "concurrence": np.abs(np.sin(tau)),
    }
    traj = Trajectory(**cols)
    fd, path = tempfile.mkstemp(suffix=".csv")
    os.close(fd)
    try:
        write_trajectory_csv(traj, path)
        with open(path, "rb") as fh:
            first = fh.read()
        write_trajectory_csv(traj, path)
        with open(path, "rb") as fh:
            second = fh.read()
        assert first == second, "CSV emission is not byte-deterministic"
        back = read_trajectory_csv(path)
        err = max(
            np.max(np.abs(getattr(back, name) - cols[name])) for name in cols
        )
        assert err < 1e-11, f"CSV round-trip error {err:g}"
    finally:
        os.unlink(path)


CHECKS = [
    ("eigvals4 matches numpy eigensolver", check_eigvals4_against_numpy),
    ("partial trace inverts the Kronecker product", check_partial_trace),
    ("RK4 integrator shows fourth-order convergence", check_rk4_order),
    ("Wootters and X-state concurrence oracles agree", check_concurrence_oracles),
    ("closed-form Bloch solution matches RK4", check_analytic_vs_rk4),
    ("Bloch norm decays as exp(-2 gamma t)", check_bloch_norm_decay),
    ("population closed forms match RK4", check_populations_closed_form),
    ("density and Bloch equations of motion agree", check_reduced_vs_bloch_rhs),
    ("diffraction zeros and optima verify on the pattern", check_diffraction_optima),
    ("step-halving self-check stays small", check_step_halving),
    ("trajectory CSV round-trips and is deterministic", check_csv_round_trip),
]


def run_all() -> list[tuple[str, str]]:
    """Run every check; return (name, message) for each failure."""
    failures = []
    for name, fn in CHECKS:
        try:
            fn()
        except AssertionError as exc:
            failures.append((name, str(exc)))
        except Exception as exc:  # noqa: BLE001 - report, don't mask, hard errors
            failures.append((name, f"{type(exc).__name__}: {exc}"))
    return failures
