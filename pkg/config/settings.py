"""
Configuration settings for the duality workbench
"""
import os
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

# Project paths
BASE_DIR = Path(__file__).resolve().parent.parent
DATA_DIR = BASE_DIR / "data"
GROUPS_DIR = DATA_DIR / "groups"
SCENARIOS_DIR = DATA_DIR / "scenarios"
ANCHORS_FILE = DATA_DIR / "anchors.txt"

# Ensure data directory exists
DATA_DIR.mkdir(exist_ok=True)

VERSION = "0.3.0"

# Logging
LOG_LEVEL = os.getenv("VERIFY_LOG_LEVEL", "WARNING").upper()


def _flag(name: str) -> bool:
    return os.getenv(name, "").strip().lower() in ("1", "true", "yes", "on")


# Verification defaults
VERIFY_CONFIG = {
    "default_seed": int(os.getenv("VERIFY_DEFAULT_SEED", "20240601")),
}

# Semifree resolutions are built down to level -(hi + margin)
RESOLUTION_CONFIG = {
    "margin": int(os.getenv("VERIFY_MARGIN", "2")),
    "max_generators": 400,
}

# Isomorphism search: exhaustive below the limit, seeded sampling above it
ISO_SEARCH_CONFIG = {
    "exhaust_limit": int(os.getenv("VERIFY_EXHAUST_LIMIT", str(3**12))),
    "samples": int(os.getenv("VERIFY_SAMPLES", str(10**4))),
}

REPORT_CONFIG = {
    "timings": _flag("VERIFY_REPORT_TIMINGS"),
    "indent": 2,
    "version": VERSION,
    # quoted in every report that uses E*(2) as the dg bimodule
    "normalizations": {
        "pairing": "y_1∧…∧y_d ⊗ 1 ↦ 1",
        "H2": "E*(2) with zero differential (formality assumption)",
        "koszul_sign": "(-1)^{|a||b|}",
        "ext_bigrading": "Ext^{s,t}: t = degree raised by the map",
    },
}
