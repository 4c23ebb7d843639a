# Numeric defaults
DEFAULT_PRECISION_BITS = 256
MIN_PRECISION_BITS = 64
LENGTH_CLAMP_EPSILON = 1e-3
CONCAVITY_TOLERANCE = 1e-12
KERNEL_GUARD_BITS = 10

# Divergence heuristic defaults
POLICY_WINDOW = 512
POLICY_DELTA = 1e-9
POLICY_MARGIN = 0.05
POLICY_RESID = 0.1
POLICY_BLOCK = 16

# Chain development
EXHAUSTION_SLACK_BITS = 32
CHAIN_GUARD_BITS = 64
ROUNDTRIP_SLACK_BITS = 28

# Reports
REPORT_CHECKPOINTS = (100, 1000, 10000)
RESULTS_DIR = "results"
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
