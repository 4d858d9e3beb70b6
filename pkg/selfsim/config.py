import os
from dotenv import load_dotenv
import logging

load_dotenv() # Load environment variables from .env file

class Settings:
    LOG_LEVEL: str = os.getenv("SELFSIM_LOG_LEVEL", "WARNING")
    # Upper bound on d^n for anything materialized on a whole level.
    MAX_LEVEL_POINTS: int = int(os.getenv("SELFSIM_MAX_LEVEL_POINTS", "65536"))
    NUCLEUS_CAP: int = int(os.getenv("SELFSIM_NUCLEUS_CAP", "1000"))
    CLOSURE_CAP: int = int(os.getenv("SELFSIM_CLOSURE_CAP", "10000"))
    ORDER_CAP: int = int(os.getenv("SELFSIM_ORDER_CAP", "1024"))
    DIGIT_STATE_CAP: int = int(os.getenv("SELFSIM_DIGIT_STATE_CAP", "4096"))
    JACOBI_SWEEPS: int = int(os.getenv("SELFSIM_JACOBI_SWEEPS", "100"))
    GELFAND_STEPS: int = int(os.getenv("SELFSIM_GELFAND_STEPS", "40"))
    RESAMPLE_CAP: int = int(os.getenv("SELFSIM_RESAMPLE_CAP", "20"))
    TILE_POINT_BUDGET: int = int(os.getenv("SELFSIM_TILE_POINT_BUDGET", str(2 ** 22)))
    TOLERANCE: float = float(os.getenv("SELFSIM_TOL", "1e-10"))
    SEED: int = int(os.getenv("SELFSIM_SEED", "0"))

# Initialize settings
settings = Settings()

# Configure Logging
logging.basicConfig(level=settings.LOG_LEVEL, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger("SelfSim")
