import numpy as np
import pytest

from polidyn import (
    CENTRIST_ONLY,
    NONHYPERBOLIC,
    BaselineParams,
    Matrix2,
    SimplexState3,
    classify,
    e0_stability,
    equilibrium_reports,
    interior_equilibrium,
    jacobian_baseline,
    r_rad,
    rhs_baseline,
    symmetric_equilibrium,
    transcritical_certificate,
)


def _random_baseline(rng):
    v = np.exp(rng.uniform(np.log(0.02), np.log(1.0), size=6))
    return BaselineParams(*map(float, v))


def test_symmetric_equilibrium_closed_form():
    P, C = symmetric_equilibrium(0.40, 0.20)
    assert P == pytest.approx(0.25, abs=1e-12)
    assert C == pytest.approx(0.50, abs=1e-12)
    P, C = symmetric_equilibrium(0.75, 0.20)
    assert P == pytest.approx(11.0 / 30.0, abs=1e-12)
    assert C == pytest.approx(4.0 / 15.0, abs=1e-12)
    assert symmetric_equilibrium(0.22, 0.25) is CENTRIST_ONLY
    assert symmetric_equilibrium(0.25, 0.25) is CENTRIST_ONLY


def test_interior_equilibrium_field_residual():
    rng = np.random.default_rng(20)
    found = 0
    while found < 500:
        p = _random_baseline(rng)
        eq = interior_equilibrium(p)
        if eq is CENTRIST_ONLY:
            assert r_rad(p) <= 1.0
            continue
        L, R, C = eq
        assert min(L, R, C) > 0.0
        assert L + R + C == pytest.approx(1.0, abs=1e-12)
        assert C == pytest.approx(1.0 / r_rad(p), rel=1e-12)
        d = rhs_baseline(p, SimplexState3(L, R))
        assert max(abs(v) for v in d) < 1e-10
        found += 1


def test_classify_canonical_matrices():
    assert classify(Matrix2(-1.0, 0.5, 0.5, -2.0)) == "stable node"
    assert classify(Matrix2(-1.0, 1.0, -1.0, -1.0)) == "stable focus"
    assert classify(Matrix2(-1.0, 0.0, 0.0, -1.0)) == "stable star"
    assert classify(Matrix2(1.0, 0.0, 0.0, -1.0)) == "saddle"
    assert classify(Matrix2(1.0, 0.0, 0.0, 2.0)) == "unstable"
    assert classify(Matrix2(0.0, 0.0, 0.0, -1.0)) is NONHYPERBOLIC


def test_classify_block_triangular_3x3():
    J = ((-1.0, 0.5, 0.3), (0.5, -2.0, 0.1), (0.0, 0.0, -0.4))
    assert classify(J) == "stable node"
    J = ((-1.0, 0.5, 0.3), (0.5, -2.0, 0.1), (0.0, 0.0, 0.4))
    assert classify(J) == "saddle"


def test_star_locus_gives_repeated_eigenvalue():
    # Equal eigenvalues at the interior equilibrium occur exactly when
    # 2 gamma mu = beta (beta - mu).
    mu, beta = 0.2, 0.4
    gamma = beta * (beta - mu) / (2 * mu)
    alpha = beta - gamma
    p = BaselineParams(alpha, alpha, mu, mu, gamma, gamma)
    P, _ = symmetric_equilibrium(beta, mu)
    J = jacobian_baseline(p, SimplexState3(P, P))
    assert classify(J) == "stable star"
    # Both eigenvalues equal mu - beta there.
    assert J.trace() == pytest.approx(2 * (mu - beta), abs=1e-12)


def test_interior_eigenvalues_symmetric_closed_form():
    alpha, gamma, mu = 0.2, 0.2, 0.2
    beta = alpha + gamma
    p = BaselineParams(alpha, alpha, mu, mu, gamma, gamma)
    P, _ = symmetric_equilibrium(beta, mu)
    J = jacobian_baseline(p, SimplexState3(P, P))
    eigs = sorted(np.linalg.eigvals([[J.a, J.b], [J.c, J.d]]).real)
    expected = sorted([mu - beta, -2 * gamma * mu / beta])
    assert eigs == pytest.approx(expected, abs=1e-12)


def test_e0_stability_matches_threshold():
    rng = np.random.default_rng(21)
    for _ in range(2000):
        p = _random_baseline(rng)
        lam = r_rad(p)
        verdict = e0_stability(p)
        if verdict is NONHYPERBOLIC:
            continue
        assert (verdict == "stable") == (lam < 1.0)


def test_transcritical_certificate_values():
    f, f_P, f_PP, f_Pbeta = transcritical_certificate(0.25)
    assert f == 0.0 and f_P == 0.0
    assert f_PP == pytest.approx(-1.0)
    assert f_Pbeta == 1.0


def test_equilibrium_reports_structure():
    p = BaselineParams(0.375, 0.375, 0.2, 0.2, 0.375, 0.375)
    reports = equilibrium_reports(p)
    kinds = [r.kind for r in reports]
    assert kinds == ["centrist", "interior"]
    assert all(r.exists for r in reports)
    e0, e1 = reports
    assert e0.classification in ("unstable", "saddle")
    assert str(e1.classification).startswith("stable")

    sub = BaselineParams(0.11, 0.11, 0.25, 0.25, 0.11, 0.11)
    reports = equilibrium_reports(sub)
    assert reports[0].classification.startswith("stable")
    assert not reports[1].exists
