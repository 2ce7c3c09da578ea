"""Command-line harness: evolve, compare, scan, optima, validate.

Configuration comes from a flat key=value file (--config) overridden by
command-line flags that mirror the RunConfig field names. Times on the
command line are scaled (tau); CSVs report both tau and physical t.

Exit codes: 0 ok, 1 validation failure, 2 usage error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

import numpy as np

from . import analytic, diffraction, validate
from .concurrence import concurrence, wootters, xstate_concurrence
from .full_model import FullModelConfig, atomic_state, embed_atomic_state, evolve_full
from .geometry import ModeGeometry, SystemParams, coupling_pair, effective_params
from .linalg import (
    NonFiniteStateError,
    RootConvergenceError,
    integrate,
    trace_distance,
)
from .reduced_model import evolve_reduced, reduced_rhs, state_from_bloch_init
from .trajectory import (
    Trajectory,
    write_pq_csv,
    write_scan_csv,
    write_trajectory_csv,
)

__all__ = ["main", "RunConfig", "build_parser", "run_evolve", "run_compare"]

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3

_INIT_CASES = {
    "caseA": (0.0, 0.0, 1.0),
    "caseB": (0.0, 1.0, 0.0),
    "caseC": (1.0, 0.0, 0.0),
}


@dataclass(frozen=True)
class RunConfig:
    """Resolved run parameters shared by the simulation subcommands."""

    g0: float = 1.0
    delta: float = 50.0
    gamma: float = 0.0
    kappa: float = 0.0
    wavelength: float = 1.0
    r12: float = 0.0
    init: str = "caseA"
    tier: str = "analytic"
    tau_max: float = 2.0 * np.pi
    steps: int = 400
    nmax: int = 2
    variant: str = "canonical"
    out: str | None = None
    seed: int = 0

    def __post_init__(self):
        if self.steps < 10:
            raise ValueError("steps must be >= 10")
        if self.tau_max <= 0:
            raise ValueError("tau-max must be positive")
        if self.tier not in ("full", "reduced", "analytic"):
            raise ValueError(f"unknown tier {self.tier!r}")
        if self.variant not in ("canonical", "literal"):
            raise ValueError(f"unknown variant {self.variant!r}")
        self.initial_bloch()  # validates the init spec

    def initial_bloch(self) -> tuple[float, float, float]:
        if self.init in _INIT_CASES:
            return _INIT_CASES[self.init]
        if self.init.startswith("custom:"):
            parts = self.init[len("custom:"):].split(",")
            if len(parts) != 3:
                raise ValueError("custom init must be custom:u0,v0,w0")
            u0, v0, w0 = (float(x) for x in parts)
            if u0 * u0 + v0 * v0 + w0 * w0 > 1.0 + 1e-12:
                raise ValueError("custom Bloch vector lies outside the unit ball")
            return u0, v0, w0
        raise ValueError(f"unknown init {self.init!r}")

    def couplings(self) -> tuple[float, float]:
        geom = ModeGeometry(self.g0, self.wavelength)
        return coupling_pair(geom, self.r12)

    def system(self) -> SystemParams:
        return SystemParams(delta=self.delta, gamma=self.gamma, kappa=self.kappa)

    def effective(self):
        g1, g2 = self.couplings()
        return effective_params(g1, g2, self.system())

    def t_max(self) -> float:
        return float(diffraction.time_from_tau(self.tau_max, self.g0, self.delta))


def read_config_file(path: str) -> dict[str, str]:
    """Flat key=value file; blank lines and # comments ignored."""
    values = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {raw!r}")
            key, val = line.split("=", 1)
            values[key.strip().replace("-", "_")] = val.strip()
    return values


_FIELD_TYPES = {
    "g0": float, "delta": float, "gamma": float, "kappa": float,
    "wavelength": float, "r12": float, "dr_a": float, "tau_max": float,
    "steps": int, "nmax": int, "seed": int,
    "init": str, "tier": str, "variant": str, "out": str,
}


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Merge config-file values with flag overrides into a RunConfig."""
    merged: dict = {}
    if getattr(args, "config", None):
        for key, raw in read_config_file(args.config).items():
            if key == "lambda":
                key = "wavelength"
            if key not in _FIELD_TYPES:
                raise ValueError(f"unknown config key {key!r}")
            merged[key] = _FIELD_TYPES[key](raw)
    for key in _FIELD_TYPES:
        flag = getattr(args, key, None)
        if flag is not None:
            merged[key] = flag
    dr_a = merged.pop("dr_a", None)
    if dr_a is not None:
        if "r12" in merged:
            raise ValueError("--r12 and --dr-a are mutually exclusive")
        merged["r12"] = dr_a
    return RunConfig(**merged)


def _trajectory_analytic(cfg: RunConfig) -> Trajectory:
    p = cfg.effective()
    tau = np.linspace(0.0, cfg.tau_max, cfg.steps + 1)
    t = diffraction.time_from_tau(tau, cfg.g0, cfg.delta)
    init = analytic.InitialBloch(*cfg.initial_bloch())
    u, v, w = analytic.bloch_solution(t, init, p, cfg.gamma)
    r11, rpp, r44 = analytic.populations_solution(t, 0.0, 1.0, 0.0, cfg.gamma)
    r22 = 0.5 * (rpp + w)
    r33 = 0.5 * (rpp - w)
    conc = np.array([
        concurrence(state_from_bloch_init(
            float(u[i]), float(v[i]), float(w[i]),
            rho11=float(r11[i]), rho44=float(r44[i]),
        ))
        for i in range(len(tau))
    ])
    return Trajectory(tau, np.asarray(t), u, v, w, r11, r22, r33, r44, conc,
                      tier="analytic", variant=cfg.variant, params=vars_of(cfg))


def _columns_from_densities(tau, t, rhos, tier: str, cfg: RunConfig,
                            eig_floor: float = -1e-8) -> Trajectory:
    rhos = np.asarray(rhos)
    u = 2.0 * rhos[:, 1, 2].real
    v = -2.0 * rhos[:, 1, 2].imag
    w = (rhos[:, 1, 1] - rhos[:, 2, 2]).real
    r11 = rhos[:, 0, 0].real
    r22 = rhos[:, 1, 1].real
    r33 = rhos[:, 2, 2].real
    r44 = rhos[:, 3, 3].real
    # prefer the exact sector shortcut: the general eigenvalue route
    # cannot resolve concurrences below ~1e-4 on near-pure states (the
    # spectrum of rho*rho_tilde clusters at zero there)
    def conc_of(r):
        try:
            return xstate_concurrence(r, sector_tol=1e-9)
        except ValueError:
            return wootters(r, eig_floor=eig_floor)

    conc = np.array([min(1.0, max(0.0, conc_of(r))) for r in rhos])
    return Trajectory(np.asarray(tau), np.asarray(t), u, v, w,
                      r11, r22, r33, r44, conc,
                      tier=tier, variant=cfg.variant, params=vars_of(cfg))


def _trajectory_reduced(cfg: RunConfig) -> Trajectory:
    p = cfg.effective()
    u0, v0, w0 = cfg.initial_bloch()
    rho0 = state_from_bloch_init(u0, v0, w0)
    ts, rhos = evolve_reduced(rho0, p, cfg.gamma, cfg.t_max(), steps=cfg.steps)
    tau = diffraction.tau_from_time(ts, cfg.g0, cfg.delta)
    return _columns_from_densities(tau, ts, rhos, "reduced", cfg)


def _trajectory_full(cfg: RunConfig) -> Trajectory:
    u0, v0, w0 = cfg.initial_bloch()
    g1, g2 = cfg.couplings()
    fcfg = FullModelConfig(g1=g1, g2=g2, sys=cfg.system(), n_max=cfg.nmax)
    rho0 = embed_atomic_state(state_from_bloch_init(u0, v0, w0), cfg.nmax)
    ts, rhos = evolve_full(fcfg, rho0, cfg.t_max(), samples=cfg.steps)
    atoms = np.array([atomic_state(r, cfg.nmax) for r in rhos])
    atoms = 0.5 * (atoms + np.conj(np.swapaxes(atoms, 1, 2)))
    tau = diffraction.tau_from_time(ts, cfg.g0, cfg.delta)
    return _columns_from_densities(tau, ts, atoms, "full", cfg, eig_floor=-1e-5)


def vars_of(cfg: RunConfig) -> dict:
    return {k: getattr(cfg, k) for k in (
        "g0", "delta", "gamma", "kappa", "wavelength", "r12",
        "init", "tier", "tau_max", "steps", "nmax", "variant",
    )}


def run_evolve(cfg: RunConfig) -> Trajectory:
    if cfg.tier == "analytic":
        return _trajectory_analytic(cfg)
    if cfg.tier == "reduced":
        return _trajectory_reduced(cfg)
    return _trajectory_full(cfg)


def run_compare(cfg: RunConfig) -> dict:
    """Full-vs-reduced report: max trace distance and top-Fock population."""
    u0, v0, w0 = cfg.initial_bloch()
    g1, g2 = cfg.couplings()
    p = cfg.effective()
    rho0 = state_from_bloch_init(u0, v0, w0)
    t_end = cfg.t_max()

    fcfg = FullModelConfig(g1=g1, g2=g2, sys=cfg.system(), n_max=cfg.nmax)
    ts, rhos_full = evolve_full(fcfg, embed_atomic_state(rho0, cfg.nmax), t_end,
                                samples=cfg.steps)
    top = np.arange(cfg.nmax, fcfg.dim, cfg.nmax + 1)
    max_top = float(max(np.sum(np.diag(r).real[top]) for r in rhos_full))

    # march the reduced model alongside the full-model sample grid
    max_dist = trace_distance(atomic_state(rhos_full[0], cfg.nmax), rho0)
    rho_red = rho0
    substeps = max(4, int(np.ceil(
        400 * p.alpha * (ts[1] - ts[0]) / (2.0 * np.pi))) if len(ts) > 1 else 4)
    for k in range(1, len(ts)):
        _, reds = integrate(
            lambda t, r: reduced_rhs(r, p, cfg.gamma),
            float(ts[k - 1]), rho_red, float(ts[k]), substeps,
        )
        rho_red = reds[-1]
        max_dist = max(max_dist, trace_distance(
            atomic_state(rhos_full[k], cfg.nmax), rho_red))
    tolerance = 3.0 * cfg.g0 / abs(cfg.delta)
    return {
        "max_trace_distance": max_dist,
        "max_top_fock_population": max_top,
        "tolerance": tolerance,
        "passed": max_dist <= tolerance,
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cavityduet",
        description="Cavity-mediated two-atom entanglement: evolution, "
                    "diffraction scans and model validation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_sim=True):
        p.add_argument("--config", help="flat key=value config file")
        p.add_argument("--out", help="output CSV path")
        if with_sim:
            p.add_argument("--g0", type=float, help="peak coupling (rad/time)")
            p.add_argument("--delta", type=float, help="atom-cavity detuning")
            p.add_argument("--gamma", type=float, help="atomic decay rate")
            p.add_argument("--kappa", type=float, help="cavity decay rate")
            p.add_argument("--lambda", dest="wavelength", type=float,
                           help="mode wavelength")
            p.add_argument("--r12", type=float, help="atom separation (length)")
            p.add_argument("--dr-a", dest="dr_a", type=float,
                           help="displacement of atom 2 from the antinode "
                                "(alias for --r12)")
            p.add_argument("--init",
                           help="caseA | caseB | caseC | custom:u0,v0,w0")
            p.add_argument("--tier", choices=("full", "reduced", "analytic"))
            p.add_argument("--tau-max", dest="tau_max", type=float,
                           help="end of the run in scaled time")
            p.add_argument("--steps", type=int, help="output grid size (>= 10)")
            p.add_argument("--nmax", type=int, help="cavity Fock truncation")
            p.add_argument("--variant", choices=("canonical", "literal"),
                           help="diffraction formula variant")
            p.add_argument("--seed", type=int, help="seed for randomized checks")

    p_evolve = sub.add_parser("evolve", help="integrate one trajectory to CSV")
    add_common(p_evolve)

    p_compare = sub.add_parser("compare",
                               help="full vs reduced model trace-distance report")
    add_common(p_compare)

    p_scan = sub.add_parser("scan", help="concurrence vs separation at fixed taus")
    add_common(p_scan)
    p_scan.add_argument("taus", type=float, nargs="+", metavar="TAU")
    p_scan.add_argument("--points", type=int, default=500,
                        help="separations sampled in [0, lambda/4]")

    p_optima = sub.add_parser("optima",
                              help="positions of maximal entanglement at fixed taus")
    p_optima.add_argument("taus", type=float, nargs="+", metavar="TAU")
    p_optima.add_argument("--out", help="p/q curve CSV path")
    p_optima.add_argument("--points", type=int, default=500)

    p_val = sub.add_parser("validate", help="run the cross-module invariant suite")
    p_val.add_argument("--config", help=argparse.SUPPRESS)

    return parser


def cmd_evolve(args) -> int:
    cfg = resolve_config(args)
    traj = run_evolve(cfg)
    out = cfg.out or "trajectory.csv"
    write_trajectory_csv(traj, out)
    print(f"wrote {len(traj.tau)} samples to {out} "
          f"(tier={cfg.tier}, init={cfg.init}, tau_max={cfg.tau_max:g})")
    return EXIT_OK


def cmd_compare(args) -> int:
    cfg = resolve_config(args)
    report = run_compare(cfg)
    print(f"max trace distance      : {report['max_trace_distance']:.6g}")
    print(f"max top-Fock population : {report['max_top_fock_population']:.6g}")
    print(f"tolerance 3*g0/delta    : {report['tolerance']:.6g}")
    print("PASS" if report["passed"] else "FAIL")
    return EXIT_OK if report["passed"] else EXIT_VALIDATION


def cmd_scan(args) -> int:
    cfg = resolve_config(args)
    big_gamma = diffraction.gamma_scaled(cfg.gamma, cfg.g0, cfg.delta)
    r_grid = np.linspace(0.0, 0.25, args.points)
    result = diffraction.scan(args.taus, r_grid, big_gamma, cfg.variant)
    out = cfg.out or "scan.csv"
    write_scan_csv(result, out)
    print(f"wrote {args.points} x {len(args.taus)} scan to {out} "
          f"(variant={cfg.variant}, Gamma={big_gamma:g})")
    return EXIT_OK


def cmd_optima(args) -> int:
    for tau in args.taus:
        roots = diffraction.optimum_positions(tau)
        print(f"tau = {tau:g}: {len(roots)} optimum position(s)")
        for r in roots:
            c = float(diffraction.concurrence_vs_position(r, tau))
            print(f"  r12/lambda = {r:.10f}   C = {c:.12f}")
    if args.out:
        x = np.linspace(0.0, 0.2499, args.points)
        p, q = diffraction.pq_curves(x, args.taus[0])
        write_pq_csv(x, p, q, args.out)
        print(f"wrote p/q curves for tau={args.taus[0]:g} to {args.out}")
    return EXIT_OK


def cmd_validate(args) -> int:
    failures = validate.run_all()
    for name, _ in validate.CHECKS:
        status = "FAIL" if any(f[0] == name for f in failures) else "ok"
        print(f"[{status:4s}] {name}")
    for name, message in failures:
        print(f"  {name}: {message}")
    return EXIT_OK if not failures else EXIT_VALIDATION


_HANDLERS = {
    "evolve": cmd_evolve,
    "compare": cmd_compare,
    "scan": cmd_scan,
    "optima": cmd_optima,
    "validate": cmd_validate,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NonFiniteStateError, RootConvergenceError, RuntimeError,
            FloatingPointError, np.linalg.LinAlgError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
