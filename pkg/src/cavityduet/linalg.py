"""Dense complex linear algebra and a fixed-step RK4 integrator.

Everything operates on plain numpy arrays (complex128 for matrices).
Matrices are small and dense throughout: two-qubit states are 4x4, the
joint atoms+cavity space is 4*(n_max+1) dimensional.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

__all__ = [
    "kron",
    "partial_trace_second",
    "eigvals4",
    "integrate",
    "rk4_step",
    "step_halving_error",
    "is_hermitian",
    "trace_distance",
    "NonFiniteStateError",
    "RootConvergenceError",
]

# Durand-Kerner iteration budget and convergence threshold for eigvals4.
# The threshold sits near sqrt(machine eps): double roots (routine for
# the concurrence matrix rho*rho_tilde) limit each root's attainable
# accuracy to that level, although symmetric sums over the pair remain
# accurate to second order.
_DK_MAX_ITER = 256
# failure-detection threshold on the final step size: a quadruple root
# stagnates at ~eps^(1/4) of the root bound, so anything below 1e-4 is a
# normally reached noise floor, anything above means the iteration never
# locked on
_DK_STEP_TOL = 1e-4
_DK_CLUSTER = 3e-8


class NonFiniteStateError(RuntimeError):
    """The ODE state picked up a NaN or Inf during integration."""


class RootConvergenceError(RuntimeError):
    """The polynomial root iteration did not reach its tolerance."""


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product of two square matrices."""
    return np.kron(np.asarray(a), np.asarray(b))


def is_hermitian(m: np.ndarray, tol: float = 1e-10) -> bool:
    """True when max |M - M^dagger| <= tol entrywise."""
    m = np.asarray(m)
    return bool(np.max(np.abs(m - m.conj().T)) <= tol)


def partial_trace_second(rho: np.ndarray, dim_a: int, dim_b: int) -> np.ndarray:
    """Trace out the second tensor factor of a (dim_a*dim_b)-dim operator.

    result[i, j] = sum_k rho[(i, k), (j, k)]
    """
    rho = np.asarray(rho)
    if rho.shape != (dim_a * dim_b, dim_a * dim_b):
        raise ValueError(
            f"expected a {dim_a * dim_b}x{dim_a * dim_b} matrix, got {rho.shape}"
        )
    return np.einsum("ikjk->ij", rho.reshape(dim_a, dim_b, dim_a, dim_b))


def _char_poly4(m: np.ndarray) -> np.ndarray:
    """Monic characteristic polynomial coefficients of a 4x4 matrix.

    Faddeev-LeVerrier recursion; returns [1, c3, c2, c1, c0] with
    det(m - lam*I) = lam^4 + c3 lam^3 + c2 lam^2 + c1 lam + c0.
    Runs in extended precision: clustered roots are recovered from the
    coefficients with accuracy ~noise^(1/multiplicity), so the lower
    coefficient noise buys significant root accuracy.
    """
    m = np.asarray(m).astype(np.clongdouble)
    eye = np.eye(4, dtype=np.clongdouble)
    mk = np.array(m)
    coeffs = [np.clongdouble(1.0)]
    for k in range(1, 5):
        ck = -np.trace(mk) / k
        coeffs.append(ck)
        if k < 4:
            mk = m @ (mk + ck * eye)
    return np.asarray(coeffs)


def eigvals4(m: np.ndarray) -> np.ndarray:
    """Eigenvalues of a 4x4 complex matrix, descending by real part.

    Roots of the characteristic polynomial via simultaneous Durand-Kerner
    iteration in extended precision, followed by cluster detection and a
    Newton polish of multiple roots. Exactly representable multiple roots
    (projectors, the zero matrix) come out exact, which is what lets
    downstream square-root sums land on 0 and 1 without slack.
    """
    m = np.asarray(m, dtype=complex)
    if m.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got {m.shape}")
    c = _char_poly4(m)

    # standard staggered start, radius just beyond the root bound
    radius = 1.0 + float(np.max(np.abs(c[1:])))
    x = (radius * (0.4 + 0.9j) ** np.arange(4)).astype(np.clongdouble)

    # Iterate until the steps stop shrinking. Simple roots converge
    # quadratically; a multiplicity-m cluster contracts by (m-1)/m per
    # sweep until it hits the coefficient-noise floor, where the steps
    # stagnate - that floor, not a fixed tolerance, is the attainable
    # accuracy, and the cluster collapse below recovers the rest.
    best = np.inf
    stall = 0
    for _ in range(_DK_MAX_ITER):
        p = np.polyval(c, x)
        diff = x[:, None] - x[None, :]
        np.fill_diagonal(diff, 1.0)
        denom = np.prod(diff, axis=1)
        # a collided pair would zero the denominator; nudge it apart
        bad = np.abs(denom) == 0.0
        if np.any(bad):
            x[bad] += 1e-30 * radius
            continue
        step = p / denom
        x = x - step
        ms = float(np.max(np.abs(step)))
        if ms <= 0.9 * best:
            best = ms
            stall = 0
        else:
            stall += 1
            if stall >= 16:
                break
        if ms <= 1e-30 * radius:
            break
    if not best <= _DK_STEP_TOL * radius:
        raise RootConvergenceError(
            f"Durand-Kerner did not converge within {_DK_MAX_ITER} iterations"
        )
    x = _collapse_clusters(c, x, radius)
    x = x[np.argsort(-x.real)]
    return x.astype(complex)


def _collapse_clusters(c: np.ndarray, x: np.ndarray, radius: float) -> np.ndarray:
    """Merge numerically indistinguishable roots and re-polish the cluster.

    A root of multiplicity m splits under coefficient noise eta into a
    cluster of diameter ~(eta/|p^(m)|)^(1/m); two iterates closer than
    that noise split cannot be told apart, so they are merged and the
    cluster is polished by Newton on the (m-1)th derivative, for which
    the multiple root is simple. Genuinely distinct roots collapsed this
    way sit within the noise split of each other, so the substitution
    is harmless at the same accuracy level.
    """
    eps = float(np.finfo(np.longdouble).eps)
    # coefficient-level noise from the Faddeev-LeVerrier recursion
    noise = eps * max(1.0, float(np.max(np.abs(c))))
    d2 = np.polyder(np.polyder(c))
    # union-find over at most 4 iterates
    group = np.arange(4)
    for i in range(4):
        for j in range(i + 1, 4):
            mu = 0.5 * (x[i] + x[j])
            curv = max(0.5 * abs(np.polyval(d2, mu)), 1e-300)
            thresh = min(0.05 * radius,
                         max(_DK_CLUSTER * radius, 10.0 * np.sqrt(noise / curv)))
            if abs(x[i] - x[j]) <= thresh:
                group[group == group[j]] = group[i]
    for gid in np.unique(group):
        members = group == gid
        m = int(np.sum(members))
        if m < 2:
            continue
        mu = np.mean(x[members])
        g = c
        for _ in range(m - 1):
            g = np.polyder(g)
        gp = np.polyder(g)
        for _ in range(4):
            slope = np.polyval(gp, mu)
            if slope == 0.0:
                break
            mu = mu - np.polyval(g, mu) / slope
        x[members] = mu
    return x


def rk4_step(rhs: Callable, t: float, y: np.ndarray, h: float) -> np.ndarray:
    """One classical Runge-Kutta step of size h."""
    k1 = rhs(t, y)
    k2 = rhs(t + 0.5 * h, y + (0.5 * h) * k1)
    k3 = rhs(t + 0.5 * h, y + (0.5 * h) * k2)
    k4 = rhs(t + h, y + h * k3)
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def integrate(
    rhs: Callable,
    t0: float,
    y0: np.ndarray,
    t_end: float,
    steps: int,
) -> tuple[np.ndarray, np.ndarray]:
    """Fixed-step RK4 from t0 to t_end on a uniform grid.

    rhs(t, y) must be deterministic and side-effect free; y may be any
    ndarray shape (real or complex). Returns (ts, ys) with both endpoints
    included: ts has steps+1 entries and ys stacks the states along axis 0.
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    if not t_end > t0:
        raise ValueError("t_end must exceed t0")
    y = np.array(y0)
    ts = np.linspace(t0, t_end, steps + 1)
    h = (t_end - t0) / steps
    out = np.empty((steps + 1,) + y.shape, dtype=y.dtype)
    out[0] = y
    for i in range(steps):
        y = rk4_step(rhs, ts[i], y, h)
        if not np.all(np.isfinite(y)):
            raise NonFiniteStateError(f"non-finite state at step {i + 1}")
        out[i + 1] = y
    return ts, out


def step_halving_error(
    rhs: Callable,
    t0: float,
    y0: np.ndarray,
    t_end: float,
    steps: int,
) -> float:
    """Self-check for the fixed-step integrator: endpoint shift on halving h.

    Integrates with `steps` and `2*steps` steps and returns the max
    entrywise difference of the endpoints. For RK4 this estimates the
    local truncation error times ~16/15; a large value means `steps` is
    too coarse for the requested interval.
    """
    _, coarse = integrate(rhs, t0, y0, t_end, steps)
    _, fine = integrate(rhs, t0, y0, t_end, 2 * steps)
    return float(np.max(np.abs(coarse[-1] - fine[-1])))


def trace_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Trace distance (1/2)||a - b||_1 between Hermitian matrices."""
    w = np.linalg.eigvalsh(np.asarray(a) - np.asarray(b))
    return 0.5 * float(np.sum(np.abs(w)))
