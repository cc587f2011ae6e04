import os
from pathlib import Path
from dotenv import load_dotenv

load_dotenv()

TOOL_NAME = "strongsum"
TOOL_VERSION = "1.0.0"

# Logging
LOG_LEVEL = os.getenv("STRONGSUM_LOG_LEVEL", "INFO").upper()
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

# Worker pool cap for sweeps
STRONGSUM_THREADS = int(os.getenv("STRONGSUM_THREADS", str(os.cpu_count() or 1)))

# Default quadrature (cells over one integration range, Gauss-Legendre order per cell)
QUAD_CELLS = int(os.getenv("STRONGSUM_QUAD_CELLS", "512"))
QUAD_POINTS = int(os.getenv("STRONGSUM_QUAD_POINTS", "8"))

# Workspace (CSV artifacts default here, ledger database lives here)
WORKSPACE_DIR = Path(os.getenv("STRONGSUM_WORKSPACE", str(Path(__file__).parent.parent / "workspace")))

# Run ledger
DATABASE_URL = os.getenv("STRONGSUM_DATABASE_URL")
RECORD_RUNS = os.getenv("STRONGSUM_RECORD_RUNS", "true").lower() == "true"

# Inequality lab thresholds
DRIFT_THRESHOLD = float(os.getenv("STRONGSUM_DRIFT_THRESHOLD", "0.2"))
BASELINE_TOLERANCE = float(os.getenv("STRONGSUM_BASELINE_TOLERANCE", "0.2"))
LAMBDA_CLASS_BOUND = float(os.getenv("STRONGSUM_LAMBDA_CLASS_BOUND", "10"))
