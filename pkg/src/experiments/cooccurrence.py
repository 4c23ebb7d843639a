"""
Criterion versus geometry on named families.

For each family the verdict and the horocyclic partial sums are set next to
the accumulation gap of the developed chain:
- paired: l_n = 2 log(n + 1) raised on adjacent pairs {k^4, k^4 + 1};
  parabolic, gap should shrink (gap_2000 < 0.5 gap_200)
- fast: zero twist, l_n = 10 log(n + 1); not parabolic, gap settles
  within 1% between 200 and 2000
- plog3: zero twist, l_n = 3 log n; not parabolic, gap settles slowly
"""

import logging
from typing import Any, Dict, List

from mpmath import mp

from src.context_.settings import DEFAULT_PRECISION_BITS
from src.data_schema.sequences import real_str
from src.data_schema.surface import FluteDescriptor, LengthGenerator
from src.FluteType.data_pipeline.generators import pattern_indices
from src.FluteType.modules.divergence import log10_partial_sums
from src.FluteType.modules.limit_polygon import accumulation_gap, develop_chain
from src.FluteType.modules.shear_seq import shear_sequence
from src.FluteType.modules.synthesizer import choose_pattern, raise_lengths
from src.FluteType.modules.type_criterion import classify_flute, horocyclic_lengths
from src.tools.general_tools import timestamped_results_path, working_precision, write_json

logger = logging.getLogger(__name__)

EARLY, LATE = 200, 2000


def family_flutes(N: int) -> List[FluteDescriptor]:
    base = [2 * mp.log(n + 1) for n in range(1, N + 1)]
    pattern = choose_pattern(pattern_indices("adjacent-powers:4", N), N)
    raised, _ = raise_lengths(base, pattern)
    return [
        FluteDescriptor.from_lengths(raised, pattern.half_indices, True, N, "paired"),
        FluteDescriptor.from_lengths([10 * mp.log(n + 1) for n in range(1, N + 1)], label="fast"),
        FluteDescriptor(generator=LengthGenerator(kind="p-log-n", params={"p": 3}), truncation=N, label="plog3"),
    ]


def measure(flute: FluteDescriptor, precision_bits: int) -> Dict[str, Any]:
    lengths = list(flute.lengths)
    verdict = classify_flute(flute, lengths=lengths)
    shears = shear_sequence(flute, lengths)
    horo = log10_partial_sums(horocyclic_lengths(shears).log_values)
    gaps = accumulation_gap(develop_chain(shears, precision_bits))
    early, late = gaps.at(EARLY), gaps.at(LATE)
    return {
        "family": flute.label,
        "verdict": verdict.kind,
        "row": verdict.row,
        "horocyclic_log10_partial_sums": {str(k): v for k, v in horo.items()},
        "gap_early": real_str(early, 12),
        "gap_late": real_str(late, 12),
        "gap_ratio": float(late / early),
    }


def run_cooccurrence(N: int = 1001, precision_bits: int = DEFAULT_PRECISION_BITS) -> Dict[str, Any]:
    """
    Develop each family to 2N - 1 geodesics and compare with its verdict.

    Returns:
        Dict with the config block and one entry per family
    """
    print("=" * 60)
    print("CRITERION / GEOMETRY CO-OCCURRENCE")
    print("=" * 60)
    with working_precision(precision_bits):
        rows = [measure(f, precision_bits) for f in family_flutes(N)]
    for r in rows:
        print(f"{r['family']:<8} {r['verdict']:<14} gap_{LATE}/gap_{EARLY} = {r['gap_ratio']:.4f}")

    results = {"config": {"N": N, "precision_bits": precision_bits}, "families": rows}
    path = write_json(timestamped_results_path("cooccurrence"), results)
    print(f"\nResults saved to: {path}")
    return results


if __name__ == "__main__":
    logging.basicConfig(level=logging.INFO)
    run_cooccurrence()
