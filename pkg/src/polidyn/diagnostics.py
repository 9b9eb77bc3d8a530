"""Numerical verification of the model's qualitative guarantees.

Each check samples states or walks a trajectory and reports the
worst-case value against its predicate.  Nothing here is a proof; the
checks restate the theory as falsifiable numerical assertions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BoundaryPoint, RegimeMismatch
from .dynamics import IntegratorConfig, Trajectory, integrate, rhs_baseline, rhs_4group
from .model_core import (
    BaselineParams,
    FourGroupParams,
    SimplexState3,
    SimplexState4,
)
from .spectral import d_matrix, k_matrix, m_matrix, metzler_left_vector, r_rad, spectral_bound

#: The Dulac divergence is singular on the boundary; keep this margin.
INTERIOR_MARGIN = 1e-6

#: Slack absorbing integrator sampling error in monotonicity checks.
MONOTONE_SLACK = 1e-9


@dataclass(frozen=True)
class DiagnosticReport:
    name: str
    samples: int
    worst: float
    passed: bool
    witness: tuple | None = None

    def __str__(self) -> str:
        status = "pass" if self.passed else "FAIL"
        line = f"{status}  {self.name}: worst={self.worst:.3e} over {self.samples} samples"
        if self.witness is not None and not self.passed:
            line += f"  witness={self.witness}"
        return line


def dulac_divergence(p: BaselineParams, s: SimplexState3) -> float:
    """Divergence of the Dulac-weighted field with weight 1/(L R C).

    Strictly negative on the interior for all positive parameters, which
    rules out closed orbits.  Raises BoundaryPoint within the interior
    margin, where the formula is singular.
    """
    L, R = s.L, s.R
    C = 1.0 - L - R
    if min(L, R, C) < INTERIOR_MARGIN:
        raise BoundaryPoint(f"point ({L}, {R}, C={C}) too close to the boundary")
    return (
        -p.gamma_RL / (L * L)
        - p.gamma_LR / (R * R)
        - p.mu_L / (R * C * C)
        - p.mu_R / (L * C * C)
    )


def dulac_check(p: BaselineParams, rng: np.random.Generator,
                n_points: int = 10_000) -> DiagnosticReport:
    """Sample interior points; the divergence must be negative at all of them."""
    worst = -math.inf
    witness = None
    count = 0
    while count < n_points:
        L, R = rng.uniform(INTERIOR_MARGIN, 1.0, size=2)
        if L + R > 1.0 - INTERIOR_MARGIN:
            continue
        v = dulac_divergence(p, SimplexState3(L, R))
        if v > worst:
            worst = v
            witness = (L, R)
        count += 1
    passed = worst < 0.0
    return DiagnosticReport("dulac_negativity", n_points, worst, passed,
                            None if passed else witness)


def _lyapunov_values(kind: str, p, traj: Trajectory) -> list[float]:
    if kind == "subcritical-baseline":
        base = p if isinstance(p, BaselineParams) else p.base
        if r_rad(base) > 1.0:
            raise RegimeMismatch("subcritical check on supercritical parameters")
        q = metzler_left_vector(k_matrix(base) - m_matrix(base))
        return [q[0] * s.L + q[1] * s.R for s in traj.states]
    if kind == "subcritical-4group":
        if not isinstance(p, FourGroupParams):
            raise RegimeMismatch("four-group check requires FourGroupParams")
        if r_rad(p.base) > 1.0:
            raise RegimeMismatch("subcritical check on supercritical parameters")
        K, M, D = k_matrix(p.base), m_matrix(p.base), d_matrix(p)
        q = metzler_left_vector(K - M)
        qdk = (q[0] * (D.a - K.a) - q[1] * K.c,
               -q[0] * K.b + q[1] * (D.d - K.d))
        eta = max(0.0, qdk[0] / p.delta_L, qdk[1] / p.delta_R) + 1e-6
        return [q[0] * s.L + q[1] * s.R + eta * s.A for s in traj.states]
    if kind == "symmetric-4group":
        if not isinstance(p, FourGroupParams) or not p.is_symmetric:
            raise RegimeMismatch("symmetric check requires symmetric FourGroupParams")
        b = p.base
        if b.alpha_L + b.gamma_RL > b.mu_L:
            raise RegimeMismatch("symmetric check requires beta <= mu")
        return [0.5 * (s.L + s.R) + s.A for s in traj.states]
    raise RegimeMismatch(f"unknown Lyapunov kind {kind!r}")


def lyapunov_trace(kind: str, p, traj: Trajectory) -> DiagnosticReport:
    """Evaluate the regime's Lyapunov function along the trajectory; it
    must be nonincreasing between consecutive samples (within slack)."""
    values = _lyapunov_values(kind, p, traj)
    worst = -math.inf
    witness = None
    for i in range(1, len(values)):
        rise = values[i] - values[i - 1]
        if rise > worst:
            worst = rise
            witness = (traj.times[i], values[i - 1], values[i])
    passed = worst <= MONOTONE_SLACK
    return DiagnosticReport(f"lyapunov_{kind}", len(values), worst, passed,
                            None if passed else witness)


def boundary_inflow_check(p, n_samples: int = 200) -> DiagnosticReport:
    """The vector field must point inward (or be tangent) on every face."""
    worst = math.inf  # most-negative inward component; must stay >= -tiny
    witness = None
    samples = 0

    def note(value, where):
        nonlocal worst, witness, samples
        samples += 1
        if value < worst:
            worst = value
            witness = where

    grid = [i / (n_samples - 1) for i in range(n_samples)]
    if isinstance(p, FourGroupParams):
        for x in grid:
            for y in grid[:: max(1, n_samples // 20)]:
                if x + y > 1.0:
                    continue
                dL, _, _ = rhs_4group(p, SimplexState4(0.0, x, y))
                note(dL, ("L=0", x, y))
                _, dR, _ = rhs_4group(p, SimplexState4(x, 0.0, y))
                note(dR, ("R=0", x, y))
                _, _, dA = rhs_4group(p, SimplexState4(x, y, 0.0))
                note(dA, ("A=0", x, y))
                # Face C=0: total inflow dC = -(dL+dR+dA) must be >= 0.
                d = rhs_4group(p, SimplexState4(x, y, 1.0 - x - y))
                note(-(d[0] + d[1] + d[2]), ("C=0", x, y))
    else:
        for x in grid:
            dL, _ = rhs_baseline(p, SimplexState3(0.0, x))
            note(dL, ("L=0", x))
            _, dR = rhs_baseline(p, SimplexState3(x, 0.0))
            note(dR, ("R=0", x))
            d = rhs_baseline(p, SimplexState3(x, 1.0 - x))
            note(-(d[0] + d[1]), ("C=0", x))
    passed = worst >= -1e-14
    return DiagnosticReport("boundary_inflow", samples, worst, passed,
                            None if passed else witness)


def a_decay_check(p: FourGroupParams, traj: Trajectory) -> DiagnosticReport:
    """A(t) <= A(t0) exp(-rho (t - t0)) along a post-shock trajectory."""
    t0 = traj.times[0]
    a0 = traj.states[0].A
    worst = -math.inf
    witness = None
    for t, s in zip(traj.times, traj.states):
        bound = a0 * math.exp(-p.rho * (t - t0)) * (1.0 + MONOTONE_SLACK)
        excess = s.A - bound
        if excess > worst:
            worst = excess
            witness = (t, s.A, bound)
    passed = worst <= 0.0
    return DiagnosticReport("a_decay_bound", len(traj.times), worst, passed,
                            None if passed else witness)


def invariance_check(traj: Trajectory, tol: float = 1e-9) -> DiagnosticReport:
    """Every sampled state must satisfy the simplex bounds within tol."""
    worst = -math.inf
    witness = None
    for t, s in zip(traj.times, traj.states):
        coords = s.as_tuple()
        violation = max(max(-c for c in coords), sum(coords) - 1.0)
        if violation > worst:
            worst = violation
            witness = (t,) + coords
    passed = worst <= tol
    return DiagnosticReport("forward_invariance", len(traj.times), worst, passed,
                            None if passed else witness)


def single_attractor_check(
    p: BaselineParams,
    rng: np.random.Generator,
    n_initial: int = 50,
    tol: float = 1e-4,
    cfg: IntegratorConfig | None = None,
) -> DiagnosticReport:
    """All interior initial conditions must reach the same attractor:
    no bistability and no history dependence under fixed parameters."""
    if cfg is None:
        cfg = IntegratorConfig(max_step=0.5, t_end=2000.0, sample_interval=50.0)
    finals = []
    for _ in range(n_initial):
        L, R = rng.uniform(0.01, 0.98, size=2)
        total = L + R
        if total > 0.98:
            L, R = 0.97 * L / total, 0.97 * R / total
        traj = integrate(p, SimplexState3(L, R), cfg)
        finals.append(traj.final_state.as_tuple())
    ref = finals[0]
    worst = max(
        max(abs(a - b) for a, b in zip(f, ref)) for f in finals
    )
    passed = worst <= tol
    return DiagnosticReport("single_attractor", n_initial, worst, passed,
                            None if passed else ref)
