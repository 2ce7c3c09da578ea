"""How good is the cavity elimination?

Runs the full atoms+cavity master equation against the reduced two-atom
model at several detunings and reports the worst trace distance: it
shrinks as the detuning grows, which is the regime the reduced model
assumes. Takes about half a minute. Run as

    python3 demos/full_vs_reduced.py
"""

import time

import numpy as np

from cavityduet.cli import RunConfig, run_compare

DETUNINGS = (10.0, 20.0, 50.0)


def main():
    print(f"{'delta/g0':>9}  {'max trace distance':>19}  {'3*g0/delta':>11}")
    for delta in DETUNINGS:
        cfg = RunConfig(delta=delta, tau_max=4.0 * np.pi, init="caseA", nmax=2)
        t0 = time.perf_counter()
        rep = run_compare(cfg)
        mark = "ok" if rep["passed"] else "exceeds bound"
        print(f"{delta:9g}  {rep['max_trace_distance']:19.5f}  "
              f"{rep['tolerance']:11.3f}  {mark}  "
              f"({time.perf_counter() - t0:.1f} s)")


if __name__ == "__main__":
    main()
