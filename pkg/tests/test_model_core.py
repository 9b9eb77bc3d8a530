import math

import pytest
from hypothesis import given, strategies as st

from polidyn import (
    BaselineParams,
    ElectorateRow,
    NonPositiveParameter,
    OutOfRange,
    SimplexState3,
    SimplexState4,
    SimplexViolation,
    SymmetricParams,
    project_to_simplex,
    proxy_decompose,
    shift_gamma,
    validate_baseline,
)

rates = st.floats(min_value=1e-3, max_value=2.0, allow_nan=False)


def test_positivity_validation_names_offender():
    with pytest.raises(NonPositiveParameter) as exc:
        validate_baseline(0.1, 0.1, 0.1, -0.2, 0.1, 0.1)
    assert exc.value.name == "mu_R"
    assert exc.value.value == -0.2
    with pytest.raises(NonPositiveParameter):
        validate_baseline(0.0, 0.1, 0.1, 0.1, 0.1, 0.1)


def test_symmetric_params_beta_identity():
    sp = SymmetricParams(alpha=0.2, gamma=0.3, mu=0.1)
    assert sp.beta == sp.alpha + sp.gamma
    b = sp.to_baseline()
    assert b.is_symmetric
    assert b.alpha_L == 0.2 and b.gamma_LR == 0.3


def test_fourgroup_reduction_requires_delta_rho():
    sp = SymmetricParams(alpha=0.2, gamma=0.3, mu=0.1)
    with pytest.raises(OutOfRange):
        sp.to_fourgroup()
    full = SymmetricParams(alpha=0.2, gamma=0.3, mu=0.1, delta=0.5, rho=0.1)
    fg = full.to_fourgroup()
    assert fg.is_symmetric and fg.delta_L == fg.delta_R == 0.5


def test_derived_centrist_share():
    s3 = SimplexState3(0.2, 0.3)
    assert s3.C == pytest.approx(0.5)
    s4 = SimplexState4(0.2, 0.3, 0.1)
    assert s4.C == pytest.approx(0.4)


def test_projection_clamps_small_drift():
    s = project_to_simplex(SimplexState3(-1e-12, 0.5))
    assert s.L == 0.0 and s.R == 0.5
    s = project_to_simplex(SimplexState4(0.5, 0.5, 1e-12))
    assert s.L + s.R + s.A <= 1.0


def test_projection_rejects_large_drift():
    with pytest.raises(SimplexViolation):
        project_to_simplex(SimplexState3(-1e-6, 0.5))
    with pytest.raises(SimplexViolation):
        project_to_simplex(SimplexState3(0.9, 0.2))


@given(st.floats(min_value=0, max_value=1), st.floats(min_value=0, max_value=1))
def test_projection_idempotent(L, R):
    if L + R > 1.0 + 1e-9:
        return
    once = project_to_simplex(SimplexState3(L, R))
    twice = project_to_simplex(once)
    assert once == twice


@given(st.floats(min_value=0, max_value=1), st.floats(min_value=0.01, max_value=1))
def test_proxy_rows_sum_to_one(share, turnout):
    row = proxy_decompose(share, turnout)
    assert row.total() == pytest.approx(1.0, abs=1e-12)
    assert row.A == pytest.approx(1.0 - turnout)


def test_proxy_rejects_out_of_range():
    with pytest.raises(OutOfRange):
        proxy_decompose(1.5, 0.7)
    with pytest.raises(OutOfRange):
        proxy_decompose(0.5, -0.1)
    with pytest.raises(OutOfRange):
        proxy_decompose(math.nan, 0.7)


def test_electorate_row_tolerance():
    ElectorateRow(year="x", V=0.1, C=0.6004, A=0.3)  # within 5e-4
    with pytest.raises(OutOfRange):
        ElectorateRow(year="x", V=0.1, C=0.61, A=0.3)


@given(rates, rates, rates, rates, rates, rates,
       st.floats(min_value=0, max_value=0.5))
def test_shift_gamma_moves_both_reactive_rates(aL, aR, mL, mR, gRL, gLR, db):
    p = BaselineParams(aL, aR, mL, mR, gRL, gLR)
    q = shift_gamma(p, db)
    assert q.gamma_RL == p.gamma_RL + db
    assert q.gamma_LR == p.gamma_LR + db
    assert (q.alpha_L, q.alpha_R, q.mu_L, q.mu_R) == (aL, aR, mL, mR)
