"""
Finite-data divergence heuristic for series of positive terms.

Terms arrive as natural logs so that e^{-l/2} with l = e^n stays
representable. The tail window is averaged in blocks of ``policy.block``
terms (arithmetic means of log term and of k / log k), then tested in
order:

1. ratio: every block-to-block log-ratio per index below log(1 - margin)
   -> Convergent
2. bounded-below: power slope >= -margin and every tail term >= delta
   -> Divergent
3. power-law: RMS residual <= resid; slope > -1 + margin -> Divergent,
   slope < -1 - margin -> Convergent; between the two, the same margins
   are applied to the slope of log(k term_k) against log log k
4. otherwise Inconclusive
"""

import logging
import math
from typing import Dict, Optional, Sequence, Tuple

import numpy as np
from mpmath import mp

from src.context_.settings import REPORT_CHECKPOINTS
from src.data_schema.verdict import DivergencePolicy, DivergenceResult
from src.FluteType.exceptions import DomainError

logger = logging.getLogger(__name__)


def _to_float(x) -> float:
    # mpmath returns +-inf on overflow
    return float(x)


def log10_partial_sums(log_terms: Sequence, checkpoints=REPORT_CHECKPOINTS) -> Dict[int, float]:
    """log10 of the partial sums at each checkpoint <= K, plus at K itself."""
    logs = np.array([_to_float(t) for t in log_terms], dtype=float)
    if logs.size == 0:
        return {}
    acc = np.logaddexp.accumulate(logs)
    K = logs.size
    marks = [c for c in checkpoints if c <= K] + [K]
    return {int(c): float(acc[c - 1] / math.log(10)) for c in sorted(set(marks))}


def _blocks(log_terms: Sequence, start: int, block: int) -> Tuple[list, np.ndarray, np.ndarray]:
    """Per block: mean log term (mpf), mean k, mean log k."""
    ys, ks, logks = [], [], []
    for lo in range(0, len(log_terms) - block + 1, block):
        chunk = log_terms[lo:lo + block]
        idx = np.arange(start + lo, start + lo + block, dtype=float)
        ys.append(mp.fsum(mp.mpf(t) for t in chunk) / block)
        ks.append(idx.mean())
        logks.append(np.log(idx).mean())
    return ys, np.array(ks), np.array(logks)


def _linear_fit(x: np.ndarray, y: np.ndarray) -> Tuple[Optional[float], Optional[float]]:
    """Least-squares slope and RMS residual, or (None, None) when undefined."""
    if x.size < 2 or not np.all(np.isfinite(y)) or np.ptp(x) == 0:
        return None, None
    slope, intercept = np.polyfit(x, y, 1)
    resid = float(np.sqrt(np.mean((y - (slope * x + intercept)) ** 2)))
    return float(slope), resid


def divergence_classify(log_terms: Sequence, policy: Optional[DivergencePolicy] = None) -> DivergenceResult:
    """
    Decide whether sum_k exp(log_terms[k-1]) looks divergent.

    Args:
        log_terms: log term_k for k = 1..K (mpf or float)
        policy: Heuristic thresholds

    Returns:
        DivergenceResult with partial sums and fit diagnostics

    Raises:
        DomainError: if K < policy.window
    """
    policy = policy or DivergencePolicy()
    K = len(log_terms)
    if K < policy.window:
        raise DomainError(f"need at least {policy.window} terms, got {K}")

    partial = log10_partial_sums(log_terms)
    start = K - policy.window + 1
    block = min(policy.block, policy.window // 2)
    tail = list(log_terms[start - 1:])
    # drop the oldest remainder so blocks end at K
    skip = len(tail) % block
    ys_mp, ks, logks = _blocks(tail[skip:], start + skip, block)

    fit: Dict[str, Optional[float]] = {}

    def result(outcome: str, rule: str) -> DivergenceResult:
        logger.debug("divergence: %s via %s (%s)", outcome, rule, fit)
        return DivergenceResult(outcome=outcome, rule=rule, partial_sums=partial, fit=fit, terms=K)

    log_ratios = [
        (ys_mp[j + 1] - ys_mp[j]) / mp.mpf(ks[j + 1] - ks[j])
        for j in range(len(ys_mp) - 1)
    ]
    worst = max(log_ratios)
    fit["ratio"] = _to_float(mp.exp(worst))
    if worst < mp.log(1 - policy.margin):
        return result("Convergent", "ratio")

    ys = np.array([_to_float(y) for y in ys_mp])
    slope, resid = _linear_fit(logks, ys)
    fit["power_slope"] = slope
    fit["power_resid"] = resid

    tail_min = min(mp.mpf(t) for t in tail)
    fit["tail_min_log"] = _to_float(tail_min)
    if slope is not None and slope >= -policy.margin and tail_min >= mp.log(policy.delta):
        return result("Divergent", "bounded-below")

    if slope is None or resid > policy.resid:
        return result("Inconclusive", "no-fit")
    if slope > -1 + policy.margin:
        return result("Divergent", "power-law")
    if slope < -1 - policy.margin:
        return result("Convergent", "power-law")

    # near the critical exponent: compare k term_k with powers of log k
    loglogks = np.log(logks)
    log_slope, log_resid = _linear_fit(loglogks, ys + logks)
    fit["log_tail_slope"] = log_slope
    fit["log_tail_resid"] = log_resid
    if log_slope is None or log_resid > policy.resid:
        return result("Inconclusive", "critical-exponent")
    if log_slope > -1 + policy.margin:
        return result("Divergent", "log-tail")
    if log_slope < -1 - policy.margin:
        return result("Convergent", "log-tail")
    return result("Inconclusive", "critical-exponent")
