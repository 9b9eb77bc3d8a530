import pathlib

import pytest

from polidyn import BaselineParams, FourGroupParams

SCENARIOS = pathlib.Path(__file__).resolve().parent.parent / "scenarios"


@pytest.fixture(scope="session")
def scenarios_dir() -> pathlib.Path:
    return SCENARIOS


@pytest.fixture(scope="session")
def asym_subcritical() -> FourGroupParams:
    """Asymmetric four-group set with threshold 0.840."""
    return FourGroupParams(
        base=BaselineParams(alpha_L=0.15, alpha_R=0.20, mu_L=0.30, mu_R=0.35,
                            gamma_RL=0.08, gamma_LR=0.12),
        delta_L=0.70, delta_R=0.55, rho=0.12,
    )


@pytest.fixture(scope="session")
def asym_supercritical() -> FourGroupParams:
    """Asymmetric four-group set with threshold 1.593 and interior
    equilibrium near (0.285, 0.088, 0.628)."""
    return FourGroupParams(
        base=BaselineParams(alpha_L=0.40, alpha_R=0.25, mu_L=0.28, mu_R=0.32,
                            gamma_RL=0.15, gamma_LR=0.08),
        delta_L=0.75, delta_R=0.60, rho=0.10,
    )


@pytest.fixture(scope="session")
def toy_threshold_params() -> FourGroupParams:
    """Subcritical set whose critical impulse amplitude is 0.2347."""
    return FourGroupParams(
        base=BaselineParams(alpha_L=0.08, alpha_R=0.14, mu_L=0.30, mu_R=0.28,
                            gamma_RL=0.10, gamma_LR=0.06),
        delta_L=0.55, delta_R=0.60, rho=0.10,
    )
