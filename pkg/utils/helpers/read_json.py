import json
import logging
from pathlib import Path

logger = logging.getLogger(__name__)

DEFAULT_PRESETS = {
    "small": {
        "functions": ["one", "cos", "squarewave", "cusp0.5"],
        "points": [0.0, 1.0],
        "index_families": ["arith:8", "lacunary:4"],
        "delta_exponents": [1, 2, 3],
        "norm_delta_exponents": [1, 2],
        "block_count": 4,
        "norm_cells": 32,
    }
}


# Sweep Presets Loader
def load_sweep_presets() -> dict:
    """Load named sweep presets from JSON file."""
    presets_path = Path(__file__).parent.parent / "static" / "sweeps.json"

    if not presets_path.exists():
        # Fallback to the built-in small preset if file doesn't exist
        return dict(DEFAULT_PRESETS)

    try:
        with open(presets_path, "r", encoding="utf-8") as f:
            return json.load(f)
    except Exception as e:
        logger.warning(f"Could not load sweep presets: {e}")
        return dict(DEFAULT_PRESETS)


def load_json_file(path: Path) -> dict:
    """Load a user-supplied JSON document (sweep file or run manifest)."""
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)
