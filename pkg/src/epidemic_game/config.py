from __future__ import annotations

import os
from pathlib import Path

from dotenv import load_dotenv

load_dotenv()

LOG_LEVEL = os.environ.get("EPIDEMIC_GAME_LOG_LEVEL", "INFO").upper()

# Root for CLI artifacts when --out is not given
DEFAULT_OUT_DIR = Path(os.environ.get("EPIDEMIC_GAME_OUT_DIR", "output"))

# Worker count for Monte Carlo ensembles
N_JOBS = int(os.environ.get("EPIDEMIC_GAME_N_JOBS", "1"))

# Significant digits for every float written to CSV
CSV_FLOAT_FORMAT = "%.17g"
