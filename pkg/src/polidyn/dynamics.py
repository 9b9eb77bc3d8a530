"""Vector fields, Jacobians, and the adaptive embedded Runge-Kutta integrator.

The integrator is an explicit embedded 5(4) pair with Dormand-Prince
coefficients and proportional-integral step-size control (safety 0.9,
growth clamp [0.2, 5]).  Accepted states are projected back onto the
simplex; drift above the projection tolerance is surfaced as an error
rather than silently clamped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence, Union

from .errors import NOT_CONVERGED, StepSizeUnderflow, _Marker
from .model_core import (
    PROJECTION_TOL,
    BaselineParams,
    FourGroupParams,
    SimplexState3,
    SimplexState4,
)
from .spectral import Matrix2

Params = Union[BaselineParams, FourGroupParams]


@dataclass(frozen=True)
class IntegratorConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_step: float = 0.05
    t_end: float = 200.0
    sample_interval: float = 0.5

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0 and self.max_step > 0):
            raise ValueError("tolerances and max_step must be positive")
        if not (self.t_end > 0 and self.sample_interval > 0):
            raise ValueError("t_end and sample_interval must be positive")


@dataclass
class Trajectory:
    """Time-ordered samples with event markers and per-segment parameters.

    times are strictly increasing within a segment; a shock is recorded as
    two samples at the same timestamp (pre-jump then post-jump) so the
    discontinuity is visible in output.
    """

    times: list[float]
    states: list  # SimplexState3 | SimplexState4
    events: list[tuple[float, object]] = field(default_factory=list)
    regimes: list[Params] = field(default_factory=list)

    @property
    def final_state(self):
        return self.states[-1]

    def extend(self, other: "Trajectory") -> None:
        self.times.extend(other.times)
        self.states.extend(other.states)
        self.events.extend(other.events)
        self.regimes.extend(other.regimes)


def rhs_baseline(p: BaselineParams, s: SimplexState3) -> tuple[float, float]:
    """Three-group vector field (dL/dt, dR/dt); dC/dt is the negated sum."""
    L, R = s.L, s.R
    C = 1.0 - L - R
    dL = p.alpha_L * L * C - p.mu_L * L + p.gamma_RL * R * C
    dR = p.alpha_R * R * C - p.mu_R * R + p.gamma_LR * L * C
    return (dL, dR)


def rhs_4group(p: FourGroupParams, s: SimplexState4) -> tuple[float, float, float]:
    """Four-group post-shock vector field (dL/dt, dR/dt, dA/dt).

    On the face A = 0 the (L, R) components coincide with the baseline
    field; on the radical-free axis L = R = 0, dA/dt = -rho A.
    """
    b = p.base
    L, R, A = s.L, s.R, s.A
    C = 1.0 - L - R - A
    dL = b.alpha_L * L * C + b.gamma_RL * R * C + p.delta_L * A * L - b.mu_L * L
    dR = b.alpha_R * R * C + b.gamma_LR * L * C + p.delta_R * A * R - b.mu_R * R
    dA = -p.delta_L * A * L - p.delta_R * A * R - p.rho * A
    return (dL, dR, dA)


def jacobian_baseline(p: BaselineParams, s: SimplexState3) -> Matrix2:
    """Jacobian of the three-group field at a general point.

    Note J11 is not (alpha_L + gamma_RL)(C - L) - mu_L: the reactive term
    in dL/dt multiplies R C, so it differentiates differently through L
    and R.
    """
    L, R = s.L, s.R
    C = 1.0 - L - R
    return Matrix2(
        p.alpha_L * (C - L) - p.mu_L - p.gamma_RL * R,
        p.gamma_RL * (C - R) - p.alpha_L * L,
        p.gamma_LR * (C - L) - p.alpha_R * R,
        p.alpha_R * (C - R) - p.mu_R - p.gamma_LR * L,
    )


def jacobian_4group(
    p: FourGroupParams, s: SimplexState4
) -> tuple[tuple[float, float, float], ...]:
    """Full 3x3 Jacobian of the four-group post-shock field.

    At an equilibrium (L*, R*, 0) the bottom-left block vanishes and the
    (3,3) entry is -(delta_L L* + delta_R R* + rho).
    """
    b = p.base
    L, R, A = s.L, s.R, s.A
    C = 1.0 - L - R - A
    return (
        (
            b.alpha_L * (C - L) - b.gamma_RL * R + p.delta_L * A - b.mu_L,
            b.gamma_RL * (C - R) - b.alpha_L * L,
            p.delta_L * L - b.alpha_L * L - b.gamma_RL * R,
        ),
        (
            b.gamma_LR * (C - L) - b.alpha_R * R,
            b.alpha_R * (C - R) - b.gamma_LR * L + p.delta_R * A - b.mu_R,
            p.delta_R * R - b.alpha_R * R - b.gamma_LR * L,
        ),
        (
            -p.delta_L * A,
            -p.delta_R * A,
            -(p.delta_L * L + p.delta_R * R + p.rho),
        ),
    )


# Dormand-Prince 5(4) tableau.
_A21 = 1 / 5
_A31, _A32 = 3 / 40, 9 / 40
_A41, _A42, _A43 = 44 / 45, -56 / 15, 32 / 9
_A51, _A52, _A53, _A54 = 19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729
_A61, _A62, _A63, _A64, _A65 = (
    9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656,
)
_B1, _B3, _B4, _B5, _B6 = 35 / 384, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84
# Error coefficients: 5th-order weights minus embedded 4th-order weights.
_E1 = 71 / 57600
_E3 = -71 / 16695
_E4 = 71 / 1920
_E5 = -17253 / 339200
_E6 = 22 / 525
_E7 = -1 / 40

#: Secondary stop: the field is numerically at an equilibrium.
EQUILIBRIUM_FIELD_NORM = 1e-10

_SAFETY = 0.9
_FAC_MIN = 0.2
_FAC_MAX = 5.0
# PI exponents for an order-5 error estimate (Hairer-style).
_PI_BETA = 0.04
_PI_ALPHA = 0.2 - 0.75 * _PI_BETA


def _dopri_segment(
    f: Callable[[Sequence[float]], tuple[float, ...]],
    y0: Sequence[float],
    t0: float,
    sample_times: Sequence[float],
    cfg: IntegratorConfig,
    projection_tol: float = PROJECTION_TOL,
    stop_at_equilibrium: bool = True,
) -> tuple[list[float], list[tuple[float, ...]]]:
    """Integrate the autonomous field f from t0 through sample_times.

    Steps are shortened to land exactly on each sample time.  Returns
    (times, raw states); the initial point is not included.
    """
    from .model_core import SimplexViolation  # local to avoid cycle noise

    n = len(y0)
    y = tuple(y0)
    t = t0
    k1 = f(y)
    h = min(cfg.max_step, cfg.sample_interval)
    err_prev = 1e-4
    out_t: list[float] = []
    out_y: list[tuple[float, ...]] = []

    def project(vec: tuple[float, ...]) -> tuple[float, ...]:
        for c in vec:
            if c < -projection_tol:
                raise SimplexViolation(f"coordinate {c} below -tol")
        clamped = tuple(min(max(c, 0.0), 1.0) for c in vec)
        total = sum(clamped)
        if total > 1.0 + projection_tol:
            raise SimplexViolation(f"coordinate total {total} above 1+tol")
        if total > 1.0:
            clamped = tuple(c / total for c in clamped)
        return clamped

    for target in sample_times:
        while t < target - 1e-12:
            if stop_at_equilibrium and max(abs(v) for v in k1) < EQUILIBRIUM_FIELD_NORM:
                # Frozen at an equilibrium: emit the remaining samples as is.
                t = target
                break
            h = min(h, cfg.max_step)
            # Shorten the final step so it lands exactly on the target.
            lands = h >= target - t
            h_trial = (target - t) if lands else h
            while True:
                # A landing step may be arbitrarily short; only free
                # steps can underflow.
                if not lands and h_trial < 1e-14 * max(1.0, abs(t)):
                    raise StepSizeUnderflow(f"step underflow at t={t}")
                k2 = f(tuple(y[i] + h_trial * _A21 * k1[i] for i in range(n)))
                k3 = f(tuple(y[i] + h_trial * (_A31 * k1[i] + _A32 * k2[i])
                             for i in range(n)))
                k4 = f(tuple(y[i] + h_trial * (_A41 * k1[i] + _A42 * k2[i]
                                               + _A43 * k3[i]) for i in range(n)))
                k5 = f(tuple(y[i] + h_trial * (_A51 * k1[i] + _A52 * k2[i]
                                               + _A53 * k3[i] + _A54 * k4[i])
                             for i in range(n)))
                k6 = f(tuple(y[i] + h_trial * (_A61 * k1[i] + _A62 * k2[i]
                                               + _A63 * k3[i] + _A64 * k4[i]
                                               + _A65 * k5[i]) for i in range(n)))
                y_new = tuple(
                    y[i] + h_trial * (_B1 * k1[i] + _B3 * k3[i] + _B4 * k4[i]
                                      + _B5 * k5[i] + _B6 * k6[i])
                    for i in range(n)
                )
                k7 = f(y_new)
                err = 0.0
                for i in range(n):
                    e = h_trial * (_E1 * k1[i] + _E3 * k3[i] + _E4 * k4[i]
                                   + _E5 * k5[i] + _E6 * k6[i] + _E7 * k7[i])
                    scale = cfg.abs_tol + cfg.rel_tol * max(abs(y[i]), abs(y_new[i]))
                    err += (e / scale) ** 2
                err = math.sqrt(err / n)
                if err <= 1.0:
                    break
                lands = False
                h_trial *= max(_FAC_MIN, _SAFETY * err ** (-0.2))
            t = target if lands else t + h_trial
            y = project(y_new)
            k1 = k7  # FSAL
            if err == 0.0:
                fac = _FAC_MAX
            else:
                fac = _SAFETY * err ** (-_PI_ALPHA) * err_prev ** _PI_BETA
            h_next = h_trial * min(_FAC_MAX, max(_FAC_MIN, fac))
            # A shortened landing step must not collapse the free step.
            h = max(h, h_next) if lands else h_next
            err_prev = max(err, 1e-10)
        out_t.append(target)
        out_y.append(y)
    return out_t, out_y


def _sample_times(t0: float, t_end: float, interval: float) -> list[float]:
    n = max(1, int(round((t_end - t0) / interval)))
    times = [t0 + i * (t_end - t0) / n for i in range(1, n + 1)]
    times[-1] = t_end
    return times


def integrate(
    p: Params,
    s0: SimplexState3 | SimplexState4,
    cfg: IntegratorConfig,
    t0: float = 0.0,
    t_end: float | None = None,
) -> Trajectory:
    """Integrate the baseline or four-group model from s0.

    The model kind is inferred from the parameter container.  Local error
    per step is bounded by abs_tol + rel_tol * |state|; accepted states
    are projected to the simplex; sampling is at cfg.sample_interval.
    Integration freezes early once the field norm drops below 1e-10
    (remaining samples repeat the equilibrium state).
    """
    horizon = cfg.t_end if t_end is None else t_end
    if isinstance(p, FourGroupParams):
        b = p.base
        aL, aR, mL, mR = b.alpha_L, b.alpha_R, b.mu_L, b.mu_R
        gRL, gLR = b.gamma_RL, b.gamma_LR
        dL_, dR_, rho = p.delta_L, p.delta_R, p.rho

        def f(y):
            L, R, A = y
            C = 1.0 - L - R - A
            return (
                aL * L * C + gRL * R * C + dL_ * A * L - mL * L,
                aR * R * C + gLR * L * C + dR_ * A * R - mR * R,
                -dL_ * A * L - dR_ * A * R - rho * A,
            )

        wrap = lambda y: SimplexState4(y[0], y[1], y[2])
    else:
        aL, aR, mL, mR = p.alpha_L, p.alpha_R, p.mu_L, p.mu_R
        gRL, gLR = p.gamma_RL, p.gamma_LR

        def f(y):
            L, R = y
            C = 1.0 - L - R
            return (
                aL * L * C - mL * L + gRL * R * C,
                aR * R * C - mR * R + gLR * L * C,
            )

        wrap = lambda y: SimplexState3(y[0], y[1])

    targets = _sample_times(t0, horizon, cfg.sample_interval)
    times, raw = _dopri_segment(f, s0.as_tuple(), t0, targets, cfg)
    return Trajectory(
        times=[t0] + times,
        states=[s0] + [wrap(y) for y in raw],
        events=[],
        regimes=[p],
    )


def detect_convergence(
    traj: Trajectory,
    target: SimplexState3 | SimplexState4,
    eps: float,
) -> float | _Marker:
    """Earliest sampled time from which the trajectory stays within eps
    (max-norm) of target; NOT_CONVERGED if it never does or re-exits."""
    tgt = target.as_tuple()
    inside_from = None
    for t, s in zip(traj.times, traj.states):
        d = max(abs(a - b) for a, b in zip(s.as_tuple(), tgt))
        if d <= eps:
            if inside_from is None:
                inside_from = t
        else:
            inside_from = None
    return NOT_CONVERGED if inside_from is None else inside_from
