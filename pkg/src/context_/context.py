import os

from src.context_.settings import DEFAULT_PRECISION_BITS, RESULTS_DIR

precision_bits = int(os.getenv("FLUTETYPE_PRECISION_BITS", DEFAULT_PRECISION_BITS))
results_dir = os.getenv("FLUTETYPE_RESULTS_DIR", RESULTS_DIR)
log_level = os.getenv("FLUTETYPE_LOG_LEVEL", "INFO")
