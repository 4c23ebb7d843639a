"""
Development of the nested geodesic chain from a shear sequence.

Base configuration: v_0 = 0, v_1 = inf, v_2 = 1 and g_m = (v_{m-1}, v_m).
Step m (m >= 2) adds v_{m+1} across g_m so that, with a = v_{m-1},
c = v_m, d = v_{m-2}, cr(a, v_{m+1}, c, d) = exp(+s_m) for even m and
exp(-s_m) for odd m.
"""

import logging
from typing import Optional

from mpmath import mp

from src.context_.settings import (
    CHAIN_GUARD_BITS,
    EXHAUSTION_SLACK_BITS,
    ROUNDTRIP_SLACK_BITS,
)
from src.data_schema.chain import GapSequence, GeodesicChain
from src.data_schema.sequences import ShearSequence
from src.FluteType.exceptions import DomainError, PrecisionExhaustedError
from src.FluteType.modules.hyp_core import (
    BoundaryPoint,
    PointLike,
    cayley_chord,
    cross_ratio,
    require_distinct,
)

logger = logging.getLogger(__name__)


def develop_next_vertex(a: PointLike, c: PointLike, d: PointLike, s) -> BoundaryPoint:
    """
    The point b with cross_ratio(a, b, c, d) = exp(s).

    b = (a(d - c) + e^s c(d - a)) / ((d - c) + e^s (d - a)), with the
    limits taken when one of a, c, d is infinite.

    Raises:
        DomainError: coincident inputs or a vanishing denominator
    """
    a, c, d = (BoundaryPoint.of(x) for x in (a, c, d))
    require_distinct({"a": a, "c": c, "d": d})
    s = mp.mpf(s)
    if not mp.isfinite(s):
        raise DomainError("shear must be finite")
    E = mp.exp(s)
    if d.is_infinite:
        return BoundaryPoint((a.value + E * c.value) / (1 + E))
    if a.is_infinite:
        return BoundaryPoint(c.value - (d.value - c.value) / E)
    if c.is_infinite:
        return BoundaryPoint(a.value - E * (d.value - a.value))
    den = (d.value - c.value) + E * (d.value - a.value)
    if den == 0:
        raise DomainError("degenerate configuration: the new vertex would be at infinity")
    return BoundaryPoint((a.value * (d.value - c.value) + E * c.value * (d.value - a.value)) / den)


def _exhaustion_threshold(bits: int):
    return mp.mpf(2) ** (-(bits - EXHAUSTION_SLACK_BITS))


def working_bits(bits: int) -> int:
    """
    Precision the chain is developed at.

    Vertex differences down to the exhaustion threshold keep at least
    bits + 8 significant bits, so the gap threshold ends the chain.
    """
    return bits + max(CHAIN_GUARD_BITS, bits - EXHAUSTION_SLACK_BITS + 8)


def develop_chain(s: ShearSequence, precision_bits: Optional[int] = None) -> GeodesicChain:
    """
    Develop g_1..g_{M+1} from shears s_1..s_M.

    Each step is checked twice: the recomputed shear must match its input
    and the new vertex must lie strictly inside the arc cut off by g_m.

    Args:
        s: Shear sequence (s_1 is a normalization and is not used)
        precision_bits: Precision the result is judged against; defaults to mp.prec

    Returns:
        GeodesicChain with per-step round-trip errors

    Raises:
        DomainError: fewer than two shears, or a nestedness failure at a step
        PrecisionExhaustedError: consecutive endpoints indistinguishable
    """
    if len(s) < 2:
        raise DomainError(f"need at least two shears, got {len(s)}")
    bits = precision_bits or mp.prec
    threshold = _exhaustion_threshold(bits)
    tol_base = mp.mpf(2) ** (-(bits - ROUNDTRIP_SLACK_BITS))

    with mp.workprec(working_bits(bits)):
        v = [BoundaryPoint(0), BoundaryPoint.infinity(), BoundaryPoint(1)]
        errors = []
        for m in range(2, len(s) + 1):
            shear = s.at(m)
            target = shear if m % 2 == 0 else -shear
            a, c, d = v[m - 1], v[m], v[m - 2]
            b = develop_next_vertex(a, c, d, target)

            gap = cayley_chord(c, b)
            if gap < threshold or cayley_chord(a, b) < threshold:
                raise PrecisionExhaustedError(step=m, gap=mp.nstr(gap, 5), precision_bits=bits)
            cr = cross_ratio(a, b, c, d)
            if not cr > 0:
                raise DomainError(f"nestedness fails at step {m}", index=m)
            err = abs(mp.log(cr) - target)
            if err > tol_base * max(mp.one, abs(shear)):
                raise PrecisionExhaustedError(step=m, gap=mp.nstr(gap, 5), precision_bits=bits)
            errors.append(err)
            v.append(b)

    logger.debug("developed %d geodesics, max round-trip error %s",
                 len(v) - 1, mp.nstr(max(errors), 5))
    return GeodesicChain(vertices=tuple(v), roundtrip_errors=tuple(errors), precision_bits=bits)


def accumulation_gap(chain: GeodesicChain) -> GapSequence:
    """Chord between the endpoints of each g_n after the Cayley transform."""
    with mp.workprec(working_bits(chain.precision_bits)):
        gaps = tuple(cayley_chord(g.initial, g.terminal) for g in chain.geodesics)
    return GapSequence(gaps=gaps, precision_bound=_exhaustion_threshold(chain.precision_bits))
