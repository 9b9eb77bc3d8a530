import glob
import os

import pytest

# Skip this directory entirely when plotkit is not installed so the
# simulation suite runs standalone.  Probe a submodule: the repo-level
# plotkit/ directory shadows the bare package name as an empty namespace
# package even when nothing is installed.
try:
    import plotkit.figures  # noqa: F401
except ImportError:
    collect_ignore_glob = ["test_*.py"]

SCENARIO_DIR = os.path.join(os.path.dirname(__file__), "..", "..", "scenarios")


@pytest.fixture(scope="session")
def scenario_outputs(tmp_path_factory):
    """Run every bundled scenario once; plotkit tests consume only the
    emitted CSV/JSON files, never polidyn objects."""
    polidyn = pytest.importorskip("polidyn")
    outdir = tmp_path_factory.mktemp("scenario_outputs")
    for path in sorted(glob.glob(os.path.join(SCENARIO_DIR, "*.yaml"))):
        polidyn.run_scenario(polidyn.load_config(path), outdir)
    return outdir
