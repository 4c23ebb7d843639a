"""
Parabolicity criteria for flutes with twists in {0, 1/2}.

Rows of the classifier:
- zero-twist: parabolic iff sum e^{-l_n/2} diverges
- all-half: parabolic iff sum e^{-sigma_k/2} diverges (n_k = k)
- concave-half: all twists 1/2 and l_n concave; iff sum e^{-l_n/4} diverges
- mixed: sum e^{-sigma_k/2} = infinity is sufficient only
"""

import logging
from typing import List, Optional, Sequence, Tuple

from mpmath import mp

from src.context_.settings import CONCAVITY_TOLERANCE
from src.data_schema.sequences import AlternatingSums, HorocyclicLengths, ShearSequence
from src.data_schema.surface import FluteDescriptor, TwistPattern
from src.data_schema.verdict import DivergencePolicy, DivergenceResult, Verdict
from src.FluteType.exceptions import DomainError, HypothesisRefusal
from src.FluteType.modules.divergence import divergence_classify, log10_partial_sums
from src.tools.general_tools import ulp

logger = logging.getLogger(__name__)

ROWS = ("zero-twist", "all-half", "concave-half", "mixed")

ALL_HALF_ASSUMPTION = (
    "sigma_n of the all-half criterion is taken to be the alternating sum "
    "l_n - l_{n-1} + ... +- l_1 (half-twists at every index)"
)
INFINITE_HALVES_ASSUMPTION = "half-twists continue beyond the truncation (declared)"


def alternating_expansion(lengths: Sequence, pattern: TwistPattern, k: int):
    """sigma_k summed term by term: l_{n_k} - l_{n_{k-1}} + ... + (-1)^{k-1} l_{n_1}."""
    idx = pattern.half_indices[:k]
    return mp.fsum(
        (lengths[n - 1] if (k - j) % 2 == 0 else -lengths[n - 1])
        for j, n in enumerate(idx, start=1)
    )


def alternating_sums(lengths: Sequence, pattern: TwistPattern) -> AlternatingSums:
    """
    sigma_1..sigma_K over the half-twist indices inside the lengths.

    Uses sigma_k = l_{n_k} - sigma_{k-1}; the last value is cross-checked
    against the term-by-term expansion.

    Raises:
        DomainError: if no half-twist index lies inside the lengths
    """
    restricted = pattern.restricted_to(len(lengths))
    if not restricted.half_indices:
        raise DomainError("alternating sums need at least one half-twist index")
    sigma: List = []
    prev = mp.zero
    for n in restricted.half_indices:
        prev = lengths[n - 1] - prev
        sigma.append(prev)

    K = len(sigma)
    tol = K * ulp(max(lengths[n - 1] for n in restricted.half_indices))
    drift = abs(sigma[-1] - alternating_expansion(lengths, restricted, K))
    if drift > tol:
        logger.warning("sigma recurrence drifted by %s (tolerance %s)", mp.nstr(drift, 5), mp.nstr(tol, 5))
    return AlternatingSums(sigma=tuple(sigma), pattern=restricted)


def horocyclic_lengths(s: ShearSequence) -> HorocyclicLengths:
    """log l(h_n) = -(s_1 + ... + s_n) for odd n and +(s_1 + ... + s_n) for even n."""
    out = []
    acc = mp.zero
    for n, shear in enumerate(s.shears, start=1):
        acc += shear
        out.append(-acc if n % 2 else acc)
    return HorocyclicLengths(log_values=tuple(out))


def concavity_check(lengths: Sequence, tolerance: float = CONCAVITY_TOLERANCE) -> Tuple[bool, Optional[int]]:
    """
    Whether l_j - 2 l_{j+1} + l_{j+2} <= tolerance (relative) for every j.

    Returns:
        (True, None) when concave, else (False, j) for the first violating j
    """
    tol = mp.mpf(tolerance)
    for j in range(len(lengths) - 2):
        a, b, c = lengths[j], lengths[j + 1], lengths[j + 2]
        scale = max(mp.one, abs(a), abs(b), abs(c))
        if a - 2 * b + c > tol * scale:
            return False, j + 1
    return True, None


def dispatch_row(lengths: Sequence, pattern: TwistPattern) -> str:
    """The classifier row a length/pattern pair falls into."""
    N = len(lengths)
    halves = pattern.restricted_to(N)
    if not halves.half_indices:
        return "zero-twist"
    if halves.is_all_half(N) and pattern.declared_infinite:
        return "concave-half" if concavity_check(lengths)[0] else "all-half"
    return "mixed"


class FluteClassifier:
    """
    Classifies a flute by dispatching to the matching criterion row.

    The mixed row is sufficient only: it certifies Parabolic or stays
    Inconclusive, never NotParabolic.
    """

    LOG_BOUND_FACTOR = 2

    def __init__(self, policy: Optional[DivergencePolicy] = None):
        self.policy = policy or DivergencePolicy()

    def __call__(self, d: FluteDescriptor, row: Optional[str] = None, lengths: Optional[Sequence] = None) -> Verdict:
        ells = list(lengths) if lengths is not None else list(d.lengths)
        pattern = d.twists
        natural = dispatch_row(ells, pattern)
        row = self._resolve_row(natural, row, ells)
        logger.debug("classifying %s (N=%d) on row %s", d.label or "flute", len(ells), row)

        if row == "zero-twist":
            return self._iff(row, "sum exp(-l_n/2)", [-ell / 2 for ell in ells])
        if row == "concave-half":
            return self._iff(row, "sum exp(-l_n/4)", [-ell / 4 for ell in ells])
        if row == "all-half":
            sums = alternating_sums(ells, pattern)
            log_terms = [-s / 2 for s in sums.sigma]
            if sums.paired_nullity():
                return self._paired(sums, log_terms, "iff-row", row, (ALL_HALF_ASSUMPTION,))
            return self._iff(row, "sum exp(-sigma_k/2)", log_terms, (ALL_HALF_ASSUMPTION,))
        return self._mixed(ells, pattern)

    def _paired(self, sums: AlternatingSums, log_terms: Sequence, basis: str, row: str,
                assumptions: Tuple[str, ...]) -> Verdict:
        pairs = len(sums.sigma) // 2
        return Verdict(
            kind="Parabolic", basis=basis, row=row, series="sum exp(-sigma_k/2)",
            divergence=DivergenceResult(
                outcome="Divergent", rule="pairing",
                partial_sums=log10_partial_sums(log_terms), terms=len(log_terms),
            ),
            assumptions=assumptions + ("every later pair also carries equal lengths",),
            policy=self.policy,
            notes=(f"sigma_2k = 0 for all {pairs} pairs; terms exp(-sigma_2k/2) = 1",),
        )

    @staticmethod
    def _resolve_row(natural: str, requested: Optional[str], ells: Sequence) -> str:
        if requested is None:
            return natural
        if requested not in ROWS:
            raise DomainError(f"unknown row '{requested}', expected one of {', '.join(ROWS)}")
        half_rows = ("all-half", "concave-half")
        if requested == natural or (requested in half_rows and natural in half_rows):
            if requested == "concave-half" and natural != "concave-half":
                _, j = concavity_check(ells)
                raise DomainError(f"lengths are not concave (violation at index {j})", index=j)
            return requested
        raise DomainError(f"twist pattern does not fit the {requested} row (it fits {natural})")

    def _heuristic(self, log_terms: Sequence) -> Optional[DivergenceResult]:
        if len(log_terms) < self.policy.window:
            return None
        return divergence_classify(log_terms, self.policy)

    def _iff(self, row: str, series: str, log_terms: Sequence, assumptions: Tuple[str, ...] = ()) -> Verdict:
        result = self._heuristic(log_terms)
        if result is None:
            return Verdict(
                kind="Inconclusive", basis="numeric-heuristic", row=row, series=series,
                assumptions=assumptions, policy=self.policy,
                notes=(f"{len(log_terms)} terms is below the policy window {self.policy.window}",),
            )
        if result.outcome == "Divergent":
            kind, basis = "Parabolic", "iff-row"
        elif result.outcome == "Convergent":
            kind, basis = "NotParabolic", "iff-row"
        else:
            kind, basis = "Inconclusive", "numeric-heuristic"
        return Verdict(
            kind=kind, basis=basis, row=row, series=series, divergence=result,
            assumptions=assumptions, policy=self.policy,
        )

    def _mixed(self, ells: Sequence, pattern: TwistPattern) -> Verdict:
        if not pattern.declared_infinite:
            raise HypothesisRefusal(
                "the mixed-twist criterion needs infinitely many half-twists; "
                "the pattern is not declared infinite",
                hypothesis="infinitely-many-half-twists",
            )
        sums = alternating_sums(ells, pattern)
        assumptions = (INFINITE_HALVES_ASSUMPTION,)
        series = "sum exp(-sigma_k/2)"
        log_terms = [-s / 2 for s in sums.sigma]

        if sums.paired_nullity():
            return self._paired(sums, log_terms, "sufficient-row", "pairing", assumptions)

        tail = range(max(2, len(ells) - self.policy.window + 1), len(ells) + 1)
        if all(ells[n - 1] <= self.LOG_BOUND_FACTOR * mp.log(n) for n in tail):
            return Verdict(
                kind="Parabolic", basis="sufficient-row", row="log-bound",
                series="l_n <= 2 log n on the tail", assumptions=("the bound persists beyond the truncation",),
                policy=self.policy,
            )

        result = self._heuristic(log_terms)
        if result is None:
            logger.warning("only %d half-twists inside the truncation", len(log_terms))
            return Verdict(
                kind="Inconclusive", basis="numeric-heuristic", row="mixed", series=series,
                assumptions=assumptions, policy=self.policy,
                notes=(f"{len(log_terms)} half-twists inside the truncation, "
                       f"below the policy window {self.policy.window}",),
            )
        if result.outcome == "Divergent":
            kind, basis, notes = "Parabolic", "sufficient-row", ()
        elif result.outcome == "Convergent":
            kind, basis = "Inconclusive", "sufficient-row"
            notes = ("series converges; the mixed-twist criterion is sufficient only",)
        else:
            kind, basis, notes = "Inconclusive", "numeric-heuristic", ()
        return Verdict(
            kind=kind, basis=basis, row="mixed", series=series, divergence=result,
            assumptions=assumptions, policy=self.policy, notes=notes,
        )


def classify_flute(
    d: FluteDescriptor,
    policy: Optional[DivergencePolicy] = None,
    row: Optional[str] = None,
    lengths: Optional[Sequence] = None,
) -> Verdict:
    """
    Parabolicity verdict for a validated flute.

    Args:
        d: The flute
        policy: Divergence heuristic thresholds
        row: Optional claimed row; a pattern that does not fit it is an error
        lengths: Precomputed lengths of ``d``

    Raises:
        DomainError: claimed row inconsistent with the pattern
        HypothesisRefusal: mixed pattern not declared infinite
    """
    verdict = FluteClassifier(policy)(d, row=row, lengths=lengths)
    if verdict.kind == "Inconclusive":
        logger.warning("Inconclusive verdict on row %s for %s", verdict.row, d.label or "flute")
    return verdict
