"""Where the pattern reaches full entanglement.

Plots the two sides of the optimum condition p(r12) = q(r12) and the
positions where they intersect, at a few scaled times. Run as

    python3 demos/optimum_condition.py
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from cavityduet import concurrence_vs_position, optimum_positions, pq_curves

OUT = Path(__file__).parent / "output"

TAUS = (np.pi / 2, 9 * np.pi / 2)


def main():
    OUT.mkdir(exist_ok=True)
    x = np.linspace(0.0, 0.2499, 2000)
    fig, axes = plt.subplots(1, len(TAUS), figsize=(10, 3.6), sharey=True)
    for ax, tau in zip(np.atleast_1d(axes), TAUS):
        p, q = pq_curves(x, tau)
        roots = optimum_positions(tau)
        ax.plot(x, p, label="p")
        ax.plot(x, q, label="q")
        ax.plot(roots, np.interp(roots, x, q), "ko", ms=5)
        ax.set_ylim(-1.5, 1.1)
        ax.set_xlabel("r12 / lambda")
        ax.set_title(f"tau = {tau / np.pi:g} pi")
        ax.legend(fontsize=8)
        print(f"tau = {tau / np.pi:g} pi: {len(roots)} optimum position(s)")
        for r in roots:
            print(f"  r12/lambda = {r:.8f}   "
                  f"C = {float(concurrence_vs_position(r, tau)):.12f}")
    fig.tight_layout()
    path = OUT / "optimum_condition.png"
    fig.savefig(path, dpi=150)
    print(f"saved {path}")


if __name__ == "__main__":
    main()
