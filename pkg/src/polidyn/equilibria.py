"""Closed-form equilibria, local stability classification, and the
transcritical-bifurcation certificate."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import CENTRIST_ONLY, NONHYPERBOLIC, OutOfRange, _Marker
from .model_core import BaselineParams, SimplexState3
from .spectral import Matrix2, k_matrix, m_matrix, pf_root

#: Dead-band on eigenvalue real parts and on the node/focus discriminant.
HYPERBOLICITY_BAND = 1e-12

#: Acceptance residual for computed equilibria in the vector field.
EQUILIBRIUM_RESIDUAL = 1e-10


@dataclass(frozen=True)
class EquilibriumReport:
    location: tuple[float, ...]
    kind: str                      # "centrist" | "interior"
    classification: str | _Marker  # e.g. "stable node", "saddle", NONHYPERBOLIC
    eigenvalues: tuple[complex, ...]
    exists: bool
    reason: str = ""


def symmetric_equilibrium(beta: float, mu: float) -> tuple[float, float] | _Marker:
    """Interior equilibrium (P*, C*) of the symmetric model.

    P* = (1 - mu/beta)/2 and C* = mu/beta when beta > mu; otherwise only
    the centrist state exists and CENTRIST_ONLY is returned.
    """
    if not (beta > 0 and mu > 0):
        raise OutOfRange("beta and mu must be positive")
    if beta <= mu:
        return CENTRIST_ONLY
    return (0.5 * (1.0 - mu / beta), mu / beta)


def interior_equilibrium(p: BaselineParams) -> tuple[float, float, float] | _Marker:
    """Unique interior equilibrium (L*, R*, C*) of the asymmetric model.

    Exists iff the Perron root of M^-1 K exceeds 1; then C* = 1/lambda_PF
    and (L*, R*) is the Perron eigenvector scaled to total radical mass
    1 - C*.
    """
    data = pf_root(k_matrix(p), m_matrix(p))
    if data.lambda_pf <= 1.0:
        return CENTRIST_ONLY
    c_star = 1.0 / data.lambda_pf
    u1, u2 = data.right_vector  # already sums to 1
    mass = 1.0 - c_star
    return (mass * u1, mass * u2, c_star)


def eigenvalues_2x2(J: Matrix2) -> tuple[complex, complex]:
    tr, det = J.trace(), J.det()
    disc = tr * tr - 4.0 * det
    root = cmath.sqrt(disc)
    return (0.5 * (tr + root), 0.5 * (tr - root))


def classify(
    J: Matrix2 | tuple[tuple[float, ...], ...],
    kind: str = "",
) -> str | _Marker:
    """Local classification from the Jacobian.

    2x2: trace/determinant/discriminant closed form.  3x3 input must be
    block upper-triangular (four-group Jacobian at an A = 0 equilibrium):
    the planar block is classified and the transverse eigenvalue appended.
    Returns NONHYPERBOLIC when any eigenvalue real part is within 1e-12
    of zero.
    """
    if isinstance(J, Matrix2):
        eigs = eigenvalues_2x2(J)
    else:
        if abs(J[2][0]) > 1e-12 or abs(J[2][1]) > 1e-12:
            raise OutOfRange("3x3 classification requires a block-triangular Jacobian")
        planar = Matrix2(J[0][0], J[0][1], J[1][0], J[1][1])
        eigs = eigenvalues_2x2(planar) + (complex(J[2][2]),)
    reals = [e.real for e in eigs]
    if any(abs(r) <= HYPERBOLICITY_BAND for r in reals):
        return NONHYPERBOLIC
    if all(r < 0 for r in reals):
        if any(abs(e.imag) > 0 for e in eigs):
            return "stable focus"
        if isinstance(J, Matrix2):
            tr, det = J.trace(), J.det()
            disc = tr * tr - 4.0 * det
            if abs(disc) <= HYPERBOLICITY_BAND:
                return "stable star"
        return "stable node"
    if all(r > 0 for r in reals):
        return "unstable"
    return "saddle"


def e0_stability(p: BaselineParams) -> str | _Marker:
    """Stability of the all-centrist state E0 = (0, 0).

    Locally asymptotically stable iff alpha_L + alpha_R < mu_L + mu_R and
    (alpha_L - mu_L)(alpha_R - mu_R) > gamma_RL gamma_LR; equivalently
    iff the Perron root of M^-1 K is below 1.
    """
    tr = (p.alpha_L - p.mu_L) + (p.alpha_R - p.mu_R)
    det = (p.alpha_L - p.mu_L) * (p.alpha_R - p.mu_R) - p.gamma_RL * p.gamma_LR
    # Dominant eigenvalue of K - M (Metzler, so it is real).
    half_gap = 0.5 * ((p.alpha_L - p.mu_L) - (p.alpha_R - p.mu_R))
    s = 0.5 * tr + math.sqrt(half_gap * half_gap + p.gamma_RL * p.gamma_LR)
    if abs(s) <= HYPERBOLICITY_BAND:
        return NONHYPERBOLIC
    return "stable" if (tr < 0.0 and det > 0.0) else "unstable"


def transcritical_certificate(mu: float) -> tuple[float, float, float, float]:
    """Non-degeneracy values (f, f_P, f_PP, f_Pbeta) of the scalar field
    f(P, beta) = P [beta (1 - 2P) - mu] at the bifurcation point
    (P, beta) = (0, mu): exactly (0, 0, -4 mu, 1)."""
    if not mu > 0:
        raise OutOfRange("mu must be positive")
    return (0.0, 0.0, -4.0 * mu, 1.0)


def equilibrium_reports(p: BaselineParams) -> list[EquilibriumReport]:
    """Reports for E0 and (when it exists) the interior equilibrium."""
    from .dynamics import jacobian_baseline, rhs_baseline

    j0 = jacobian_baseline(p, SimplexState3(0.0, 0.0))
    reports = [EquilibriumReport(
        location=(0.0, 0.0),
        kind="centrist",
        classification=classify(j0),
        eigenvalues=eigenvalues_2x2(j0),
        exists=True,
    )]
    interior = interior_equilibrium(p)
    if interior is CENTRIST_ONLY:
        reports.append(EquilibriumReport(
            location=(), kind="interior", classification="absent",
            eigenvalues=(), exists=False,
            reason="Perron root of M^-1 K is at most 1",
        ))
    else:
        L, R, _ = interior
        state = SimplexState3(L, R)
        residual = max(abs(v) for v in rhs_baseline(p, state))
        if residual > EQUILIBRIUM_RESIDUAL:
            raise OutOfRange(f"interior equilibrium residual {residual} too large")
        j1 = jacobian_baseline(p, state)
        reports.append(EquilibriumReport(
            location=interior,
            kind="interior",
            classification=classify(j1),
            eigenvalues=eigenvalues_2x2(j1),
            exists=True,
        ))
    return reports
