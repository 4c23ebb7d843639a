"""
Orthogeodesic lengths and shears of the zig-zag chain of a flute.

Every formula goes through log-domain kernels so that huge cuff lengths
(e^n and beyond) neither overflow nor cancel catastrophically. Kernels run
with KERNEL_GUARD_BITS extra bits and round once on the way out.
"""

import logging
from typing import List, Optional

from mpmath import mp

from src.context_.settings import KERNEL_GUARD_BITS
from src.data_schema.sequences import EtaSequence, ShearSequence
from src.data_schema.surface import FluteDescriptor, TwistPattern
from src.FluteType.exceptions import DomainError

logger = logging.getLogger(__name__)

HALF = mp.mpf("0.5")


def _positive(x, name: str):
    x = mp.mpf(x)
    if not x > 0:
        raise DomainError(f"{name} must be positive, got {mp.nstr(x, 10)}")
    return x


def _log_coth(x):
    # coth x = (1 + t) / (1 - t) with t = e^{-2x}; 1 - t cancels below 1/2
    if x < HALF:
        return -mp.log(mp.tanh(x))
    return 2 * mp.atanh(mp.exp(-2 * x))


def _log_sinh(x):
    if x < HALF:
        return mp.log(mp.sinh(x))
    return x - mp.ln2 + mp.log1p(-mp.exp(-2 * x))


def log_coth(x):
    """log coth(x) for x > 0, relative-accurate at both ends."""
    x = _positive(x, "x")
    with mp.extraprec(KERNEL_GUARD_BITS):
        y = _log_coth(x)
    return +y


def asinh_inv_sinh(x):
    """sinh^-1(1/sinh x), evaluated as log coth(x/2)."""
    return log_coth(_positive(x, "x") / 2)


def log_sinh(x):
    """log sinh(x) for x > 0; never forms sinh(x) for large x."""
    x = _positive(x, "x")
    with mp.extraprec(KERNEL_GUARD_BITS):
        y = _log_sinh(x)
    return +y


def eta_length(la, lb):
    """
    Length of the common perpendicular between two consecutive cuff lifts.

    Args:
        la: Length of the first cuff
        lb: Length of the second cuff

    Returns:
        log coth(la/4) + log coth(lb/4)
    """
    la = _positive(la, "cuff length")
    lb = _positive(lb, "cuff length")
    return log_coth(la / 4) + log_coth(lb / 4)


def even_shear(eta):
    """s(g_{2n}) = log sinh^2(eta/2)."""
    return 2 * log_sinh(_positive(eta, "eta") / 2)


def odd_shear(eta_prev, eta_next, offset=0):
    """s(g_{2n-1}) = log coth(eta_prev/2) + log coth(eta_next/2) + a_n."""
    eta_prev = _positive(eta_prev, "eta_prev")
    eta_next = _positive(eta_next, "eta_next")
    return log_coth(eta_prev / 2) + log_coth(eta_next / 2) + mp.mpf(offset)


def twist_offsets(lengths, pattern: TwistPattern) -> List:
    """a_n: +l_n/2 at n_k with k odd, -l_n/2 at n_k with k even, else 0."""
    offsets = []
    for n, ell in enumerate(lengths, start=1):
        k = pattern.index_rank.get(n)
        if k is None:
            offsets.append(mp.zero)
        elif k % 2:
            offsets.append(ell / 2)
        else:
            offsets.append(-ell / 2)
    return offsets


def _half_eta_terms(eta):
    """(log sinh(eta/2), log coth(eta/2)) sharing one sinh or one exponential."""
    y = eta / 2
    if y < HALF:
        s = mp.sinh(y)
        log_s = mp.log(s)
        # coth^2 = 1 + 1/sinh^2
        return log_s, mp.log(1 + s * s) / 2 - log_s
    t = mp.exp(-2 * y)
    return y - mp.ln2 + mp.log1p(-t), 2 * mp.atanh(t)


def shear_sequence(d: FluteDescriptor, lengths: Optional[List] = None) -> ShearSequence:
    """
    Shears s_1..s_{2N-2} of the chain g_1..g_{2N-1}.

    s_1 = 0 normalizes the chain; s_{2n} comes from eta_n and s_{2n-1}
    (n >= 2) from eta_{n-1}, eta_n and the twist offset a_n. Each length
    and each eta goes through the kernels once.

    Args:
        d: Flute descriptor
        lengths: Precomputed cuff lengths; expanded from ``d`` when omitted

    Returns:
        ShearSequence with the EtaSequence attached
    """
    ells = [mp.mpf(ell) for ell in (lengths if lengths is not None else d.lengths)]
    N = len(ells)
    if N < 2:
        raise DomainError(f"need at least two cuffs, got {N}")
    for n, ell in enumerate(ells, start=1):
        if not ell > 0:
            raise DomainError(f"cuff length l_{n} must be positive, got {mp.nstr(ell, 10)}", index=n)

    offsets = twist_offsets(ells, d.twists)
    with mp.extraprec(KERNEL_GUARD_BITS):
        # log coth(l_n/4), shared by eta_{n-1} and eta_n
        quarter = [_log_coth(ell / 4) for ell in ells]
        eta = [quarter[n] + quarter[n + 1] for n in range(N - 1)]
        half = [_half_eta_terms(e) for e in eta]

        shears = [mp.zero] * (2 * N - 2)
        for n in range(1, N):
            shears[2 * n - 1] = 2 * half[n - 1][0]
        for n in range(2, N):
            shears[2 * n - 2] = half[n - 2][1] + half[n - 1][1] + offsets[n - 1]

    shears = [+s for s in shears]
    eta = [+e for e in eta]

    provenance = ["normalization"] * (2 * N - 2)
    for n in range(1, N):
        provenance[2 * n - 1] = "even"
    for n in range(2, N):
        k = d.twists.index_rank.get(n)
        if k is None:
            provenance[2 * n - 2] = "odd-zero-twist"
        else:
            provenance[2 * n - 2] = "odd-half-odd-k" if k % 2 else "odd-half-even-k"

    logger.debug("shear sequence: N=%d, %d shears", N, len(shears))
    return ShearSequence(
        shears=tuple(shears),
        offsets=tuple(offsets),
        provenance=tuple(provenance),
        eta=EtaSequence(values=tuple(eta)),
    )
