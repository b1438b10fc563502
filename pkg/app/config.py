import logging
import os

from dotenv import load_dotenv

load_dotenv()

LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")

# Admissible (S,T) choices enumerated before is_k_coverable falls back to sampling
ORACLE_CAP = int(os.getenv("DDPC_ORACLE_CAP", "100000"))
ORACLE_MAX_ORDER = int(os.getenv("DDPC_ORACLE_MAX_ORDER", "12"))
EXHAUSTIVE_MAX_ORDER = int(os.getenv("DDPC_EXHAUSTIVE_MAX_ORDER", "5"))
DEFAULT_SEED = int(os.getenv("DDPC_SEED", "0"))
DEFAULT_SAMPLE_COUNT = int(os.getenv("DDPC_SAMPLE_COUNT", "300"))
N_JOBS = int(os.getenv("DDPC_N_JOBS", "1"))

REPORT_FORMAT_VERSION = "1.0"
VERSION = "1.0.0"

_configured = False


def configure_logging(level: str = LOG_LEVEL) -> None:
    global _configured
    if _configured:
        return
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    _configured = True
