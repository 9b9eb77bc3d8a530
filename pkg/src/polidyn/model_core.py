"""Parameter and state containers, validation, and electorate-proxy arithmetic.

All containers are frozen dataclasses: immutable value objects that are safe
to copy and share across parallel workers.  The centrist share C is always
derived from the stored coordinates, never stored, so the conservation law
L + R (+ A) + C = 1 cannot be violated by representation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Union

from .errors import NonPositiveParameter, OutOfRange, SimplexViolation

#: Default numerical guard for floating-point drift off the simplex.
PROJECTION_TOL = 1e-9

#: Table rows are published rounded to 3 decimals.
ELECTORATE_ROW_TOL = 5e-4


def _require_positive(name: str, value: float) -> None:
    if not value > 0.0:
        raise NonPositiveParameter(name, value)


@dataclass(frozen=True)
class BaselineParams:
    """Six positive rates of the three-group model (units: 1/time)."""

    alpha_L: float  # direct recruitment, centrists -> left radicals
    alpha_R: float  # direct recruitment, centrists -> right radicals
    mu_L: float     # deradicalisation, left radicals -> centrists
    mu_R: float     # deradicalisation, right radicals -> centrists
    gamma_RL: float  # reactive polarisation: right growth -> left wing
    gamma_LR: float  # reactive polarisation: left growth -> right wing

    def __post_init__(self):
        for name in ("alpha_L", "alpha_R", "mu_L", "mu_R", "gamma_RL", "gamma_LR"):
            _require_positive(name, getattr(self, name))

    @property
    def is_symmetric(self) -> bool:
        return (
            self.alpha_L == self.alpha_R
            and self.mu_L == self.mu_R
            and self.gamma_RL == self.gamma_LR
        )


@dataclass(frozen=True)
class FourGroupParams:
    """Baseline rates plus disengagement-channel rates."""

    base: BaselineParams
    delta_L: float  # apolitical mobilisation by the left wing
    delta_R: float  # apolitical mobilisation by the right wing
    rho: float      # spontaneous re-engagement, disengaged -> centrists

    def __post_init__(self):
        for name in ("delta_L", "delta_R", "rho"):
            _require_positive(name, getattr(self, name))

    @property
    def is_symmetric(self) -> bool:
        return self.base.is_symmetric and self.delta_L == self.delta_R


@dataclass(frozen=True)
class SymmetricParams:
    """Symmetric reduction: equal rates on both wings.

    beta = alpha + gamma is derived, so the identity holds exactly.
    delta and rho are only needed for the four-group reduction.
    """

    alpha: float
    gamma: float
    mu: float
    delta: float | None = None
    rho: float | None = None

    def __post_init__(self):
        _require_positive("alpha", self.alpha)
        _require_positive("gamma", self.gamma)
        _require_positive("mu", self.mu)
        if self.delta is not None:
            _require_positive("delta", self.delta)
        if self.rho is not None:
            _require_positive("rho", self.rho)

    @property
    def beta(self) -> float:
        return self.alpha + self.gamma

    def to_baseline(self) -> BaselineParams:
        return BaselineParams(
            alpha_L=self.alpha, alpha_R=self.alpha,
            mu_L=self.mu, mu_R=self.mu,
            gamma_RL=self.gamma, gamma_LR=self.gamma,
        )

    def to_fourgroup(self) -> FourGroupParams:
        if self.delta is None or self.rho is None:
            raise OutOfRange("four-group reduction requires delta and rho")
        return FourGroupParams(
            base=self.to_baseline(),
            delta_L=self.delta, delta_R=self.delta, rho=self.rho,
        )


@dataclass(frozen=True)
class SimplexState3:
    """Point in the 2-simplex; C = 1 - L - R is derived."""

    L: float
    R: float

    @property
    def C(self) -> float:
        return 1.0 - self.L - self.R

    def as_tuple(self) -> tuple[float, float]:
        return (self.L, self.R)


@dataclass(frozen=True)
class SimplexState4:
    """Point in the 3-simplex; C = 1 - L - R - A is derived."""

    L: float
    R: float
    A: float

    @property
    def C(self) -> float:
        return 1.0 - self.L - self.R - self.A

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.L, self.R, self.A)


State = Union[SimplexState3, SimplexState4]


def project_to_simplex(state: State, tol: float = PROJECTION_TOL) -> State:
    """Clamp floating-point drift back onto the simplex.

    Coordinates within `tol` below 0 are clamped to 0 and a total within
    `tol` above 1 is rescaled to 1.  Larger drift raises SimplexViolation:
    it indicates an integrator failure, not a model property.  Idempotent.
    """
    coords = state.as_tuple()
    for c in coords:
        if c < -tol:
            raise SimplexViolation(f"coordinate {c} below -tol={-tol}")
    total = sum(coords)
    if total > 1.0 + tol:
        raise SimplexViolation(f"coordinate total {total} above 1+tol")
    clamped = [min(max(c, 0.0), 1.0) for c in coords]
    total = sum(clamped)
    if total > 1.0:
        clamped = [c / total for c in clamped]
    if isinstance(state, SimplexState3):
        return SimplexState3(clamped[0], clamped[1])
    return SimplexState4(clamped[0], clamped[1], clamped[2])


def validate_baseline(
    alpha_L: float, alpha_R: float,
    mu_L: float, mu_R: float,
    gamma_RL: float, gamma_LR: float,
) -> BaselineParams:
    """Validate six raw rates into a BaselineParams container.

    Raises NonPositiveParameter naming the first offending rate.
    """
    return BaselineParams(
        alpha_L=alpha_L, alpha_R=alpha_R,
        mu_L=mu_L, mu_R=mu_R,
        gamma_RL=gamma_RL, gamma_LR=gamma_LR,
    )


@dataclass(frozen=True)
class ElectorateRow:
    """One election expressed as fractions of the eligible electorate.

    V = combined radical vote share x turnout, A = non-voters,
    C = everything else.  V + C + A must be 1 within the table's
    3-decimal rounding tolerance.
    """

    year: str
    V: float
    C: float
    A: float

    def __post_init__(self):
        total = (self.V + self.A) + self.C
        if abs(total - 1.0) > ELECTORATE_ROW_TOL:
            raise OutOfRange(
                f"row {self.year}: V+C+A = {total} differs from 1 by more than "
                f"{ELECTORATE_ROW_TOL}"
            )

    def total(self) -> float:
        # Same association as the constructed identity in proxy_decompose.
        return (self.V + self.A) + self.C


def proxy_decompose(radical_vote_share: float, turnout: float,
                    year: str = "") -> ElectorateRow:
    """Map (radical share of votes cast, turnout) to electorate fractions.

    V = radical_vote_share * turnout, A = 1 - turnout, C = 1 - V - A.
    The row sums to 1 by construction.
    """
    for name, v in (("radical_vote_share", radical_vote_share),
                    ("turnout", turnout)):
        if math.isnan(v) or not 0.0 <= v <= 1.0:
            raise OutOfRange(f"{name} must lie in [0, 1], got {v}")
    V = radical_vote_share * turnout
    A = 1.0 - turnout
    C = 1.0 - (V + A)
    return ElectorateRow(year=year, V=V, C=C, A=A)


def shift_gamma(p: BaselineParams, dbeta: float) -> BaselineParams:
    """Permanent structural shift: add dbeta to both reactive rates.

    In the symmetric container this is gamma <- gamma + dbeta, i.e.
    beta <- beta + dbeta; only the sum beta = alpha + gamma enters the
    symmetric dynamics, so the split is immaterial there.
    """
    return replace(p, gamma_RL=p.gamma_RL + dbeta, gamma_LR=p.gamma_LR + dbeta)
