"""Perron-Frobenius and Metzler-matrix threshold computations.

Every matrix in the model is 2x2, so all eigen-quantities are computed
from closed forms (trace / determinant / explicit radical) rather than a
general eigensolver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    SHOCK_PROOF,
    BaselineSupercritical,
    FormulaInapplicable,
    OutOfRange,
    RegimeError,
    _Marker,
)
from .model_core import BaselineParams, FourGroupParams


@dataclass(frozen=True)
class Matrix2:
    """2x2 matrix, row-major entries (a b / c d)."""

    a: float
    b: float
    c: float
    d: float

    def trace(self) -> float:
        return self.a + self.d

    def det(self) -> float:
        return self.a * self.d - self.b * self.c

    def __sub__(self, other: "Matrix2") -> "Matrix2":
        return Matrix2(self.a - other.a, self.b - other.b,
                       self.c - other.c, self.d - other.d)


def k_matrix(p: BaselineParams) -> Matrix2:
    """Recruitment matrix K (recruitment on the diagonal, reactive
    polarisation off it)."""
    return Matrix2(p.alpha_L, p.gamma_RL, p.gamma_LR, p.alpha_R)


def m_matrix(p: BaselineParams) -> Matrix2:
    """Decay (deradicalisation) matrix M, positive diagonal."""
    return Matrix2(p.mu_L, 0.0, 0.0, p.mu_R)


def d_matrix(p: FourGroupParams) -> Matrix2:
    """Apolitical-mobilisation matrix D, positive diagonal."""
    return Matrix2(p.delta_L, 0.0, 0.0, p.delta_R)


@dataclass(frozen=True)
class PerronData:
    """Perron root and positive eigenvectors of M^-1 K.

    Both vectors are componentwise positive and normalised to unit
    coordinate sum, the same normalisation used for equilibrium shares.
    """

    lambda_pf: float
    right_vector: tuple[float, float]  # u: (M^-1 K) u = lambda u
    left_vector: tuple[float, float]   # q: q^T (M^-1 K) = lambda q^T


def _normalise(v: tuple[float, float]) -> tuple[float, float]:
    s = v[0] + v[1]
    return (v[0] / s, v[1] / s)


def pf_root(K: Matrix2, M: Matrix2) -> PerronData:
    """Perron root and eigenvectors of B = M^-1 K for entrywise-positive K
    and positive-diagonal M.

    lambda_pf = (b11 + b22)/2 + sqrt(((b11 - b22)/2)^2 + b12 b21).
    """
    if not (K.a > 0 and K.b > 0 and K.c > 0 and K.d > 0):
        raise OutOfRange("K must be entrywise positive")
    if not (M.a > 0 and M.d > 0) or M.b != 0.0 or M.c != 0.0:
        raise OutOfRange("M must be a positive diagonal matrix")
    b11, b12 = K.a / M.a, K.b / M.a
    b21, b22 = K.c / M.d, K.d / M.d
    half_gap = 0.5 * (b11 - b22)
    root = math.sqrt(half_gap * half_gap + b12 * b21)
    lam = 0.5 * (b11 + b22) + root
    # (b12, lam - b11) and (lam - b22, b21) are proportional; both are
    # strictly positive for positive K.  Pick per-component the larger form.
    u = _normalise((b12 + (lam - b22), (lam - b11) + b21))
    q = _normalise((b21 + (lam - b22), (lam - b11) + b12))
    return PerronData(lambda_pf=lam, right_vector=u, left_vector=q)


def spectral_bound(G: Matrix2) -> float:
    """Largest eigenvalue real part of a 2x2 Metzler matrix.

    For nonnegative off-diagonals the discriminant is nonnegative and
    s(G) = trace/2 + sqrt((trace/2 - d22...)...) via the closed form.
    """
    if G.b < 0 or G.c < 0:
        raise OutOfRange("Metzler matrix requires nonnegative off-diagonals")
    half_gap = 0.5 * (G.a - G.d)
    return 0.5 * (G.a + G.d) + math.sqrt(half_gap * half_gap + G.b * G.c)


def metzler_left_vector(G: Matrix2) -> tuple[float, float]:
    """Positive left eigenvector of a 2x2 Metzler matrix at its spectral
    bound, normalised to unit coordinate sum.

    Requires strictly positive off-diagonals (irreducibility).
    """
    if not (G.b > 0 and G.c > 0):
        raise OutOfRange("irreducible Metzler matrix requires positive off-diagonals")
    s = spectral_bound(G)
    return _normalise((G.c + (s - G.d), (s - G.a) + G.b))


def r_rad(params: BaselineParams) -> float:
    """Spectral threshold R_rad = lambda_PF(M^-1 K); radical persistence
    is possible iff this exceeds 1."""
    return pf_root(k_matrix(params), m_matrix(params)).lambda_pf


def blend(delta: float, K: Matrix2, D: Matrix2) -> Matrix2:
    """(1 - delta) K + delta D."""
    w = 1.0 - delta
    return Matrix2(w * K.a + delta * D.a, w * K.b + delta * D.b,
                   w * K.c + delta * D.c, w * K.d + delta * D.d)


def phi(delta: float, K: Matrix2, M: Matrix2, D: Matrix2) -> float:
    """Perron root of M^-1 ((1-delta) K + delta D).

    Convex in delta on [0, 1]; phi(0) is the baseline threshold, phi(1)
    = max(delta_L/mu_L, delta_R/mu_R).
    """
    if not 0.0 <= delta <= 1.0:
        raise OutOfRange(f"delta must lie in [0, 1], got {delta}")
    B = blend(delta, K, D)
    b11, b12 = B.a / M.a, B.b / M.a
    b21, b22 = B.c / M.d, B.d / M.d
    half_gap = 0.5 * (b11 - b22)
    return 0.5 * (b11 + b22) + math.sqrt(half_gap * half_gap + b12 * b21)


def growth_matrix(delta: float, K: Matrix2, M: Matrix2, D: Matrix2) -> Matrix2:
    """G(delta) = (1 - delta) K + delta D - M, the near-centrist
    linearisation immediately after a state shock of amplitude delta."""
    return blend(delta, K, D) - M


def delta_c_asym_roots(K: Matrix2, M: Matrix2, D: Matrix2) -> tuple[float | None, float | None]:
    """Both roots of the threshold quadratic det G(delta) = 0, unfiltered.

    Diagnostic accessor: the second algebraic root, when real, corresponds
    to the non-Perron eigenvalue vanishing and is not a surge threshold.
    """
    aL, aR = K.a - M.a, K.d - M.d
    eL, eR = D.a - K.a, D.d - K.d
    g = K.b * K.c
    q2 = eL * eR - g
    q1 = aL * eR + aR * eL + 2.0 * g
    q0 = aL * aR - g
    if q2 == 0.0:
        return (-q0 / q1 if q1 != 0.0 else None), None
    disc = q1 * q1 - 4.0 * q2 * q0
    if disc < 0.0:
        return None, None
    root = math.sqrt(disc)
    return (-q1 - root) / (2.0 * q2), (-q1 + root) / (2.0 * q2)


def _bisect_phi(K: Matrix2, M: Matrix2, D: Matrix2) -> float:
    """Unique crossing of phi(delta) = 1 on (0, 1), by bisection.

    Valid when phi(0) < 1 < phi(1): convexity makes the crossing unique.
    """
    lo, hi = 0.0, 1.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if phi(mid, K, M, D) < 1.0:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-16:
            break
    return 0.5 * (lo + hi)


def delta_c_asym(K: Matrix2, M: Matrix2, D: Matrix2) -> float | _Marker:
    """Critical state-shock amplitude in the full asymmetric model.

    Returns SHOCK_PROOF when phi(1) <= 1 (no feasible amplitude can
    trigger growth).  Otherwise returns the unique root of the threshold
    quadratic in (0, 1) on the branch trace G(delta) <= 0, cross-checked
    against bisection on the convex phi because a second algebraic root
    may also lie in (0, 1).
    """
    if phi(0.0, K, M, D) >= 1.0:
        raise BaselineSupercritical("delta_c_asym requires phi(0) < 1")
    if phi(1.0, K, M, D) <= 1.0:
        return SHOCK_PROOF
    reference = _bisect_phi(K, M, D)
    candidates = [
        r for r in delta_c_asym_roots(K, M, D)
        if r is not None and 0.0 < r < 1.0
        and growth_matrix(r, K, M, D).trace() <= 0.0
    ]
    for r in candidates:
        if abs(phi(r, K, M, D) - 1.0) < 1e-10 and abs(r - reference) < 1e-8:
            return r
    # Quadratic branch selection failed its cross-check; the bisection
    # value still satisfies phi = 1 to machine precision.
    return reference


def delta_c_sym(beta: float, mu: float, delta: float) -> float | _Marker:
    """Symmetric critical shock amplitude (mu - beta) / (delta - beta).

    Requires the stable regime beta < mu; requires delta > beta for the
    formula to apply.  Returns SHOCK_PROOF when the value is >= 1
    (equivalently delta <= mu): no feasible shock can trigger a surge.
    """
    if beta >= mu:
        raise RegimeError(f"requires beta < mu, got beta={beta}, mu={mu}")
    if delta <= beta:
        raise FormulaInapplicable(
            f"threshold formula requires delta > beta, got delta={delta}, beta={beta}"
        )
    value = (mu - beta) / (delta - beta)
    if value >= 1.0:
        return SHOCK_PROOF
    return value
