"""Exceptions and outcome markers shared across the package.

Markers are singleton values returned by threshold and equilibrium
computations when the answer is categorical rather than numeric
(e.g. a regime is shock-proof for every feasible amplitude).  They
compare by identity.
"""

from __future__ import annotations


class PolidynError(Exception):
    """Base class for all package errors."""


class NonPositiveParameter(PolidynError):
    def __init__(self, name: str, value: float):
        self.name = name
        self.value = value
        super().__init__(f"parameter {name!r} must be strictly positive, got {value}")


class OutOfRange(PolidynError):
    """Input outside its documented domain."""


class SimplexViolation(PolidynError):
    """State drifted off the simplex by more than the projection tolerance.

    Signals an integrator failure, not a model property.
    """


class StepSizeUnderflow(PolidynError):
    """Adaptive step control drove the step below machine-level size."""


class RegimeError(PolidynError):
    """Parameters are outside the regime a formula requires."""


class FormulaInapplicable(PolidynError):
    """A closed-form threshold does not apply for these parameters."""


class BaselineSupercritical(PolidynError):
    """Shock-threshold computation requires a subcritical baseline."""


class BelowThreshold(PolidynError):
    """Shock amplitude is below the critical amplitude."""


class RegimeMismatch(PolidynError):
    """A diagnostic was asked to certify a regime the parameters are not in."""


class BoundaryPoint(PolidynError):
    """Point too close to the simplex boundary for a singular formula."""


class ConfigError(PolidynError):
    """Scenario configuration is missing, malformed, or inconsistent."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


class _Marker:
    __slots__ = ("_name",)

    def __init__(self, name: str):
        self._name = name

    def __repr__(self) -> str:
        return self._name


#: No feasible state shock (amplitude < 1) can trigger radical growth.
SHOCK_PROOF = _Marker("ShockProof")

#: Only the centrist equilibrium exists (threshold not exceeded).
CENTRIST_ONLY = _Marker("CentristOnly")

#: Trajectory never entered (and stayed in) the requested neighbourhood.
NOT_CONVERGED = _Marker("NotConverged")

#: Weighted radical mass decreases for all time; no growth window exists.
MONOTONE_DECAY = _Marker("MonotoneDecay")

#: An eigenvalue real part sits on the stability boundary.
NONHYPERBOLIC = _Marker("Nonhyperbolic")
