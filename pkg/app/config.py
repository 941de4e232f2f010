"""Central configuration for orbitdx."""

import os
from pathlib import Path

from dotenv import load_dotenv

from app.errors import InputError

load_dotenv()

SERVER_NAME = "orbitdx"
VERSION = "0.1.0"
ENVIRONMENT = os.getenv("ORBITDX_ENV", "development")

# Bundled example structures
PROJECT_ROOT = Path(__file__).parent.parent
STRUCTURES_ROOT = PROJECT_ROOT / "structures"

# Random sampling
DEFAULT_BOUND = 10_000
DEFAULT_TRIALS = 10
DEGENERACY_RETRIES = 3

# Global sign of the Kirillov-Kostant form relative to tr(X1 . v2).
# Chosen so that w(d/dp, d/dq) = +1 for the 2x2 orbit with eigenvalues 0, R.
KKS_ORIENTATION = -1

LOG_LEVEL = os.getenv("ORBITDX_LOG_LEVEL", "WARNING").upper()
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

SEED_ENV_VAR = "ORBITDX_SEED"


def default_seed() -> int:
    """
    Seed fallback used when no --seed is given.

    Returns:
        The value of ORBITDX_SEED, or 0 when unset

    Raises:
        InputError: If ORBITDX_SEED is set but is not an unsigned integer
    """
    raw = os.getenv(SEED_ENV_VAR, "").strip()
    if not raw:
        return 0
    if not raw.isdigit():
        raise InputError(f"{SEED_ENV_VAR} must be an unsigned integer. Got: {raw!r}")
    return int(raw)
