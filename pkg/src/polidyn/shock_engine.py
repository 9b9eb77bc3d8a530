"""Impulse and structural shocks, shock sequences, thresholds, windows,
and staircase floor computation.

A shock has a state component (instantaneous transfer of a fraction
delta of the centrist pool into disengagement) and a structural
component (permanent parameter change).  The symmetric structural
channel is the scalar shift beta <- beta + dbeta, applied to the
reactive-polarisation rates; the asymmetric channel replaces the whole
parameter vector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import (
    MONOTONE_DECAY,
    SHOCK_PROOF,
    BaselineSupercritical,
    BelowThreshold,
    FormulaInapplicable,
    OutOfRange,
    RegimeError,
    _Marker,
)
from .dynamics import IntegratorConfig, Trajectory, integrate, rhs_4group
from .model_core import FourGroupParams, SimplexState4, shift_gamma
from .spectral import (
    Matrix2,
    d_matrix,
    k_matrix,
    m_matrix,
    metzler_left_vector,
    r_rad,
    spectral_bound,
)

#: Dead-band on the radical-growth derivative when detecting surges.
SURGE_DERIVATIVE_BAND = 1e-12


@dataclass(frozen=True)
class ShockEvent:
    """One shock: state amplitude delta in [0, 1), structural component.

    Either dbeta >= 0 (symmetric scalar channel) or new_params (wholesale
    replacement for the asymmetric channel); raw_s, when given, must
    satisfy delta = 1 - exp(-raw_s).
    """

    time: float
    delta: float = 0.0
    dbeta: float = 0.0
    new_params: FourGroupParams | None = None
    raw_s: float | None = None

    def __post_init__(self):
        if not 0.0 <= self.delta < 1.0:
            raise OutOfRange(f"delta must lie in [0, 1), got {self.delta}")
        if self.dbeta < 0.0:
            raise OutOfRange(f"dbeta must be nonnegative, got {self.dbeta}")
        if self.new_params is not None and self.dbeta != 0.0:
            raise OutOfRange("give either dbeta or new_params, not both")
        if self.raw_s is not None:
            implied = 1.0 - math.exp(-self.raw_s)
            if abs(self.delta - implied) > 1e-12:
                raise OutOfRange(
                    f"delta={self.delta} inconsistent with raw_s={self.raw_s} "
                    f"(implies {implied})"
                )

    @classmethod
    def from_raw_amplitude(cls, time: float, raw_s: float, **kw) -> "ShockEvent":
        return cls(time=time, delta=1.0 - math.exp(-raw_s), raw_s=raw_s, **kw)


@dataclass(frozen=True)
class ShockRecord:
    """Per-shock summary inside a sequence run."""

    index: int                    # 1-based
    time: float
    delta: float
    dbeta: float
    b_k: float | None             # cumulative beta (symmetric channel only)
    r_rad: float                  # threshold of the post-shock parameters
    regime_before: str            # "subcritical" | "supercritical"
    regime_after: str
    floor: float                  # long-run centrist share under post-shock params
    surge: bool                   # radical mass growing immediately post-shock
    window_bound: float | None    # t* relative to the shock time, when defined


@dataclass
class ShockSequenceReport:
    records: list[ShockRecord] = field(default_factory=list)
    k_star: int | None = None

    @property
    def floors(self) -> list[float]:
        return [r.floor for r in self.records]


def apply_impulse(s: SimplexState4, delta: float) -> SimplexState4:
    """Jump condition: C+ = (1 - delta) C-, A+ = A- + delta C-;
    L and R are unchanged and conservation is preserved exactly."""
    if not 0.0 <= delta < 1.0:
        raise OutOfRange(f"delta must lie in [0, 1), got {delta}")
    return SimplexState4(s.L, s.R, s.A + delta * s.C)


def apply_structural(p: FourGroupParams, shock: ShockEvent) -> FourGroupParams:
    """Permanent parameter change.

    Symmetric channel: beta <- beta + dbeta via the reactive rates (the
    symmetric dynamics depend only on the sum beta = alpha + gamma).
    Asymmetric channel: wholesale replacement by shock.new_params.
    """
    if shock.new_params is not None:
        return shock.new_params
    if shock.dbeta == 0.0:
        return p
    return FourGroupParams(
        base=shift_gamma(p.base, shock.dbeta),
        delta_L=p.delta_L, delta_R=p.delta_R, rho=p.rho,
    )


def kstar(beta0: float, mu: float, dbetas: list[float]) -> int | None:
    """First 1-based index k with sum_{j<=k} dbeta_j > mu - beta0 (strict);
    None when the cumulative shift never crosses the gap."""
    if beta0 >= mu:
        raise RegimeError(f"requires beta0 < mu, got beta0={beta0}, mu={mu}")
    total = 0.0
    for k, db in enumerate(dbetas, start=1):
        total += db
        if total > mu - beta0:
            return k
    return None


def longrun_floor(B: float, mu: float, seeded: bool = True) -> float:
    """Long-run centrist share under cumulative parameter B.

    1 when the radical seed is absent or B <= mu; otherwise mu / B.
    Independent of the state amplitude of any shock.
    """
    if not (B > 0 and mu > 0):
        raise OutOfRange("B and mu must be positive")
    if not seeded or B <= mu:
        return 1.0
    return mu / B


def surge_threshold_exact(P0: float, beta: float, mu: float, delta: float) -> float:
    """Exact instantaneous growth threshold A_c(P0) = (mu - beta + 2 beta P0)
    / (delta - beta); reduces to the critical amplitude as P0 -> 0."""
    if delta <= beta:
        raise FormulaInapplicable(
            f"requires delta > beta, got delta={delta}, beta={beta}"
        )
    return (mu - beta + 2.0 * beta * P0) / (delta - beta)


def window_bound_sym(delta_shock: float, beta: float, mu: float,
                     delta: float, rho: float) -> float:
    """Radicalization-window upper bound t* = ln(delta_shock / delta_c) / rho.

    Requires the stable regime and a supercritical amplitude; amplitude
    exactly at the threshold gives t* = 0.
    """
    dc = delta_c_from_rates(beta, mu, delta)
    if dc is SHOCK_PROOF:
        raise BelowThreshold("regime is shock-proof: no window exists")
    # Relative dead-band so an amplitude meant to sit exactly at the
    # threshold is not rejected by rounding in dc itself.
    if delta_shock < dc * (1.0 - 1e-12):
        raise BelowThreshold(
            f"delta_shock={delta_shock} below critical amplitude {dc}"
        )
    return max(0.0, math.log(delta_shock / dc) / rho)


def delta_c_from_rates(beta: float, mu: float, delta: float) -> float | _Marker:
    from .spectral import delta_c_sym
    return delta_c_sym(beta, mu, delta)


def window_bound_asym(
    delta_shock: float, p: FourGroupParams
) -> tuple[float, float] | _Marker:
    """Perron-vector window bound for the asymmetric model.

    Returns (Delta_q, t_q*) where Delta_q = -s0 / kappa_bar with s0 the
    spectral bound of K - M and kappa_bar the worst-case growth of the
    weighted radical mass q^T x; MONOTONE_DECAY when kappa_bar <= 0 or
    the amplitude does not exceed Delta_q.
    """
    K, M, D = k_matrix(p.base), m_matrix(p.base), d_matrix(p)
    G = K - M
    s0 = spectral_bound(G)
    if s0 >= 0.0:
        raise BaselineSupercritical("window bound requires a subcritical baseline")
    q = metzler_left_vector(G)
    # (q^T (D - K))_i / q_i, maximised over components.
    qdk = (
        q[0] * (D.a - K.a) + q[1] * (-K.c),
        q[0] * (-K.b) + q[1] * (D.d - K.d),
    )
    kappa_bar = max(qdk[0] / q[0], qdk[1] / q[1])
    if kappa_bar <= 0.0:
        return MONOTONE_DECAY
    delta_q = -s0 / kappa_bar
    if delta_shock <= delta_q:
        return MONOTONE_DECAY
    return (delta_q, math.log(delta_shock / delta_q) / p.rho)


def _regime(params: FourGroupParams) -> tuple[str, float]:
    rr = r_rad(params.base)
    return ("supercritical" if rr > 1.0 else "subcritical"), rr


def _symmetric_beta(params: FourGroupParams) -> float | None:
    b = params.base
    if params.is_symmetric:
        return b.alpha_L + b.gamma_RL
    return None


def run_shock_sequence(
    p0: FourGroupParams,
    s0: SimplexState4,
    shocks: list[ShockEvent],
    cfg: IntegratorConfig,
) -> tuple[Trajectory, ShockSequenceReport]:
    """Integrate piecewise-autonomously, applying each shock in order.

    At each shock time the impulse is applied first, then the structural
    change; the pre-shock and post-shock states are both recorded at the
    shock timestamp so the jump is visible in output.
    """
    times = [sh.time for sh in shocks]
    if any(t2 <= t1 for t1, t2 in zip(times, times[1:])):
        raise OutOfRange("shock times must be strictly increasing")
    if times and (times[0] < 0.0 or times[-1] > cfg.t_end):
        raise OutOfRange("shock times must lie within [0, t_end]")

    report = ShockSequenceReport()
    seeded = (s0.L + s0.R) > 0.0
    params = p0
    state = s0
    t = 0.0
    traj = Trajectory(times=[0.0], states=[s0], events=[], regimes=[p0])

    dbetas: list[float] = []
    for idx, shock in enumerate(shocks, start=1):
        if shock.time > t:
            seg = integrate(params, state, cfg, t0=t, t_end=shock.time)
            traj.times.extend(seg.times[1:])
            traj.states.extend(seg.states[1:])
            state = seg.final_state
            t = shock.time

        regime_before, _ = _regime(params)
        state = apply_impulse(state, shock.delta)
        params = apply_structural(params, shock)
        regime_after, rr = _regime(params)

        # Pre/post samples share the shock timestamp; event-marked.
        traj.times.append(shock.time)
        traj.states.append(state)
        traj.events.append((shock.time, shock))
        traj.regimes.append(params)

        dbetas.append(shock.dbeta)
        b_k = _symmetric_beta(params)
        floor = 1.0 if not seeded or rr <= 1.0 else 1.0 / rr

        d = rhs_4group(params, state)
        surge = (d[0] + d[1]) > SURGE_DERIVATIVE_BAND

        window = None
        if params.is_symmetric and b_k is not None:
            b = params.base
            beta, mu = b_k, b.mu_L
            delta_rate = params.delta_L
            if beta < mu and delta_rate > beta:
                dc = delta_c_from_rates(beta, mu, delta_rate)
                if dc is not SHOCK_PROOF and shock.delta > dc:
                    window = window_bound_sym(shock.delta, beta, mu,
                                              delta_rate, params.rho)

        report.records.append(ShockRecord(
            index=idx, time=shock.time, delta=shock.delta, dbeta=shock.dbeta,
            b_k=b_k, r_rad=rr,
            regime_before=regime_before, regime_after=regime_after,
            floor=floor, surge=surge, window_bound=window,
        ))

    if t < cfg.t_end:
        seg = integrate(params, state, cfg, t0=t, t_end=cfg.t_end)
        traj.times.extend(seg.times[1:])
        traj.states.extend(seg.states[1:])

    if shocks:
        beta0 = _symmetric_beta(p0)
        b0_base = p0.base
        if beta0 is not None and beta0 < b0_base.mu_L and all(
            sh.new_params is None for sh in shocks
        ):
            report.k_star = kstar(beta0, b0_base.mu_L, dbetas)
    return traj, report


def surge_end_time(traj: Trajectory, start: float) -> float | None:
    """Last sampled time at or after `start` when the total radical share
    is still growing (positive discrete derivative); None if it never grows."""
    last = None
    prev_t, prev_v = None, None
    for t, s in zip(traj.times, traj.states):
        if t < start:
            continue
        v = s.L + s.R
        if prev_t is not None and t > prev_t:
            if (v - prev_v) / (t - prev_t) > SURGE_DERIVATIVE_BAND:
                last = t
        prev_t, prev_v = t, v
    return last
