"""
Classification sweep over the criterion rows.

Runs:
- zero-twist flutes l_n = p log n for p in {1, 2, 2.5, 3} at N = 10^4
  (parabolic exactly for p <= 2)
- an all-half flute with paired lengths (certified by sigma_2k = 0)
- an all-half flute with concave lengths l_n = 4 log(n + 1)
- a factorial half-twist pattern over raised lengths (mixed row)

Results go to results/classification_sweep/classification_sweep_<timestamp>.json.
"""

import logging
from typing import Any, Dict, List

from mpmath import mp

from src.context_.settings import DEFAULT_PRECISION_BITS
from src.data_schema.surface import FluteDescriptor, LengthGenerator, TwistPattern
from src.data_schema.verdict import DivergencePolicy
from src.FluteType.data_pipeline.generators import expand_lengths, pattern_indices
from src.FluteType.modules.synthesizer import choose_pattern, raise_lengths
from src.FluteType.modules.type_criterion import classify_flute
from src.tools.general_tools import timestamped_results_path, working_precision, write_json

logger = logging.getLogger(__name__)

ZERO_TWIST_EXPONENTS = (1, 2, 2.5, 3)


def zero_twist_case(p: float, N: int, policy: DivergencePolicy) -> Dict[str, Any]:
    flute = FluteDescriptor(
        generator=LengthGenerator(kind="p-log-n", params={"p": p}),
        truncation=N,
        label=f"plog:{p}",
    )
    verdict = classify_flute(flute, policy)
    return {"family": flute.label, "row": verdict.row, "expected": "Parabolic" if p <= 2 else "NotParabolic",
            "verdict": verdict.to_dict()}


def half_twist_cases(N: int, policy: DivergencePolicy) -> List[Dict[str, Any]]:
    cases = []
    all_half = TwistPattern(half_indices=tuple(range(1, N + 1)), declared_infinite=True)

    paired = FluteDescriptor(
        generator=LengthGenerator(kind="paired", base=LengthGenerator(kind="power", params={"c": 1, "q": 1})),
        twists=all_half,
        truncation=N,
        label="pairs-of:power:1:1 / all",
    )
    cases.append({"family": paired.label, "expected": "Parabolic",
                  "verdict": classify_flute(paired, policy).to_dict()})

    concave = FluteDescriptor(
        generator=LengthGenerator.explicit([4 * mp.log(n + 1) for n in range(1, N + 1)]),
        twists=all_half,
        truncation=N,
        label="4 log(n+1) / all",
    )
    cases.append({"family": concave.label, "expected": "Parabolic",
                  "verdict": classify_flute(concave, policy).to_dict()})

    base = expand_lengths(LengthGenerator(kind="exponential", params={"base": "e"}), N)
    pattern = choose_pattern(pattern_indices("factorial", N), N)
    raised, plan = raise_lengths(base, pattern)
    mixed = FluteDescriptor.from_lengths(raised, pattern.half_indices, True, N, "raised e^n / factorial")
    cases.append({"family": mixed.label, "expected": "Parabolic", "modified": len(plan.modified_indices),
                  "verdict": classify_flute(mixed, policy).to_dict()})
    return cases


def run_classification_sweep(N: int = 10000, precision_bits: int = DEFAULT_PRECISION_BITS) -> Dict[str, Any]:
    """
    Run the sweep and save the results.

    Args:
        N: Truncation for every family
        precision_bits: Working precision

    Returns:
        Dict with the config block and one entry per family
    """
    policy = DivergencePolicy()
    print("=" * 60)
    print("CLASSIFICATION SWEEP")
    print("=" * 60)

    with working_precision(precision_bits):
        cases = [zero_twist_case(p, N, policy) for p in ZERO_TWIST_EXPONENTS]
        cases += half_twist_cases(min(N, 2000), policy)

    for case in cases:
        kind = case["verdict"]["kind"]
        flag = "ok" if kind == case["expected"] else "MISMATCH"
        print(f"{case['family']:<28} {kind:<14} ({case['verdict']['row']}) {flag}")

    results = {
        "config": {"N": N, "precision_bits": precision_bits, "policy": policy.to_dict()},
        "cases": cases,
    }
    path = write_json(timestamped_results_path("classification_sweep"), results)
    print(f"\nResults saved to: {path}")
    return results


if __name__ == "__main__":
    logging.basicConfig(level=logging.INFO)
    run_classification_sweep()
