"""Trajectory container and CSV serialization.

A Trajectory is a time-ordered table of Bloch components, populations
and concurrence, with provenance metadata (tier, parameters, formula
variant). CSVs are the artifact contract: comma-separated, Unix line
endings, values printed with 12 significant digits, and a header row
with fixed column names. Both the scaled time tau and the physical time
t are reported. Emitted files parse back to the printed precision and
are byte-identical for identical inputs.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np

from .diffraction import DiffractionScan

__all__ = [
    "Trajectory",
    "TRAJECTORY_COLUMNS",
    "format_value",
    "write_trajectory_csv",
    "read_trajectory_csv",
    "write_scan_csv",
    "read_scan_csv",
    "write_pq_csv",
]

TRAJECTORY_COLUMNS = (
    "tau", "t", "u", "v", "w",
    "rho11", "rho22", "rho33", "rho44", "concurrence",
)


def format_value(x: float) -> str:
    """12 significant digits; shortest equivalent form."""
    return format(float(x), ".12g")


@dataclass(frozen=True)
class Trajectory:
    """Time-ordered samples of the two-atom state and its concurrence."""

    tau: np.ndarray
    t: np.ndarray
    u: np.ndarray
    v: np.ndarray
    w: np.ndarray
    rho11: np.ndarray
    rho22: np.ndarray
    rho33: np.ndarray
    rho44: np.ndarray
    concurrence: np.ndarray
    tier: str = "analytic"
    variant: str = "canonical"
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        n = len(self.tau)
        for name in TRAJECTORY_COLUMNS:
            if len(getattr(self, name)) != n:
                raise ValueError(f"column {name} has mismatched length")
        if n > 1 and not np.all(np.diff(self.tau) > 0):
            raise ValueError("tau must be strictly increasing")
        if np.min(self.concurrence) < -1e-12 or np.max(self.concurrence) > 1.0 + 1e-9:
            raise ValueError("concurrence must lie in [0, 1]")

    def columns(self) -> dict[str, np.ndarray]:
        return {name: np.asarray(getattr(self, name)) for name in TRAJECTORY_COLUMNS}


def _write_table(path, header: list[str], rows) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_value(x) for x in row])
    with open(path, "w", newline="") as fh:
        fh.write(buf.getvalue())


def write_trajectory_csv(traj: Trajectory, path) -> None:
    cols = traj.columns()
    rows = zip(*(cols[name] for name in TRAJECTORY_COLUMNS))
    _write_table(path, list(TRAJECTORY_COLUMNS), rows)


def read_trajectory_csv(path, tier: str = "analytic",
                        variant: str = "canonical") -> Trajectory:
    """Parse a trajectory CSV back into a Trajectory."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if tuple(header) != TRAJECTORY_COLUMNS:
            raise ValueError(f"unexpected trajectory header {header}")
        data = np.array([[float(x) for x in row] for row in reader])
    if data.size == 0:
        raise ValueError("trajectory file has no data rows")
    cols = {name: data[:, i] for i, name in enumerate(TRAJECTORY_COLUMNS)}
    return Trajectory(tier=tier, variant=variant, **cols)


def write_scan_csv(scan: DiffractionScan, path) -> None:
    """Diffraction scan: r12_over_lambda plus one column per tau."""
    header = ["r12_over_lambda"] + [f"tau={format_value(t)}" for t in scan.taus]
    rows = (
        [scan.r_over_lambda[i], *scan.values[i]]
        for i in range(len(scan.r_over_lambda))
    )
    _write_table(path, header, rows)


def read_scan_csv(path) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Parse a scan CSV; returns (r_over_lambda, taus, values)."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header[0] != "r12_over_lambda":
            raise ValueError(f"unexpected scan header {header}")
        taus = np.array([float(h.split("=", 1)[1]) for h in header[1:]])
        data = np.array([[float(x) for x in row] for row in reader])
    return data[:, 0], taus, data[:, 1:]


def write_pq_csv(x: np.ndarray, p: np.ndarray, q: np.ndarray, path) -> None:
    """Optimum-condition curves p and q versus r12/lambda."""
    _write_table(path, ["r12_over_lambda", "p", "q"], zip(x, p, q))
