"""
Construction of length sequences certified parabolic by pairing.

For consecutive half-twist pairs (n_{2k-1}, n_{2k}) the whole window
[n_{2k-1}, n_{2k}] is set to one stored value, so sigma_{2k} = 0 exactly
and every other term of sum exp(-sigma_k/2) equals 1.
"""

import logging
from typing import Iterable, List, Optional, Sequence, Tuple

from mpmath import mp

from src.data_schema.surface import (
    Attachment,
    BasicEndDescriptor,
    EndTree,
    EndTreeNode,
    FluteDescriptor,
    TwistPattern,
)
from src.data_schema.synthesis import SynthesisPlan
from src.data_schema.verdict import DivergencePolicy, EndReport
from src.FluteType.exceptions import DomainError
from src.FluteType.modules.end_tree import classify_surface

logger = logging.getLogger(__name__)


def _check_input(lengths: Sequence, pattern: TwistPattern) -> List:
    ells = [mp.mpf(x) for x in lengths]
    for n in range(1, len(ells)):
        if ells[n] < ells[n - 1]:
            raise DomainError(f"lengths decrease at index {n + 1}", index=n + 1)
    if pattern.half_indices and pattern.half_indices[-1] > len(ells):
        raise DomainError(
            f"half-twist index {pattern.half_indices[-1]} exceeds the {len(ells)} lengths given",
            index=pattern.half_indices[-1],
        )
    return ells


def _adjust(lengths: Sequence, pattern: TwistPattern, mode: str) -> SynthesisPlan:
    ells = _check_input(lengths, pattern)
    out = list(ells)
    halves = pattern.half_indices
    trailing = halves[-1] if len(halves) % 2 else None
    if trailing is not None:
        logger.warning("half-twist index %d has no partner; left as is", trailing)

    for j in range(0, len(halves) - 1, 2):
        lo, hi = halves[j], halves[j + 1]
        # one shared object keeps sigma_{2k} exactly 0
        value = out[hi - 1] if mode == "raise" else out[lo - 1]
        for n in range(lo, hi + 1):
            out[n - 1] = value

    modified = tuple(n for n in range(1, len(out) + 1) if out[n - 1] != ells[n - 1])
    logger.debug("%s: %d indices modified", mode, len(modified))
    return SynthesisPlan(
        base=tuple(ells),
        output=tuple(out),
        pattern=pattern,
        mode=mode,
        modified_indices=modified,
        trailing_index=trailing,
    )


def raise_lengths(a: Sequence, pattern: TwistPattern) -> Tuple[List, SynthesisPlan]:
    """
    Raise each pair window to the length at its right end.

    Args:
        a: Nondecreasing lengths
        pattern: Half-twist pattern inside the lengths

    Returns:
        (output lengths, plan); output >= a pointwise and nondecreasing

    Raises:
        DomainError: decreasing input or a pattern beyond the lengths
    """
    plan = _adjust(a, pattern, "raise")
    return list(plan.output), plan


def lower_lengths(lengths: Sequence, pattern: TwistPattern) -> Tuple[List, SynthesisPlan]:
    """Lower each pair window to the length at its left end."""
    plan = _adjust(lengths, pattern, "lower")
    return list(plan.output), plan


def choose_pattern(sparse: Iterable[int], N: int, declared_infinite: bool = True) -> TwistPattern:
    """Wrap a strictly increasing index set inside [1, N] as a half-twist pattern."""
    indices = tuple(int(n) for n in sparse)
    for k in range(1, len(indices)):
        if indices[k] <= indices[k - 1]:
            raise DomainError(
                f"half-twist indices must increase strictly, {indices[k - 1]} then {indices[k]}",
                index=k + 1,
            )
    if indices and (indices[0] < 1 or indices[-1] > N):
        raise DomainError(f"half-twist indices must lie in [1, {N}]")
    return TwistPattern(half_indices=indices, declared_infinite=declared_infinite)


def pattern_from_plateaus(lengths: Sequence, declared_infinite: bool = True) -> TwistPattern:
    """
    Half-twists on disjoint adjacent pairs of equal lengths.

    Scans left to right and takes (n, n+1) whenever l_n == l_{n+1}; the
    lengths themselves are not changed.
    """
    ells = [mp.mpf(x) for x in lengths]
    halves: List[int] = []
    n = 1
    while n < len(ells):
        if ells[n - 1] == ells[n]:
            halves.extend((n, n + 1))
            n += 2
        else:
            n += 1
    if not halves:
        logger.warning("no equal adjacent lengths; empty pattern")
    return TwistPattern(half_indices=tuple(halves), declared_infinite=declared_infinite and bool(halves))


def _raise_flute(flute: FluteDescriptor, pattern: Optional[TwistPattern]) -> FluteDescriptor:
    pattern = pattern or flute.twists
    if not pattern.half_indices:
        pattern = choose_pattern(range(1, flute.truncation + 1), flute.truncation)
    pattern = pattern.restricted_to(flute.truncation)
    out, _ = raise_lengths(flute.lengths, pattern)
    return FluteDescriptor.from_lengths(
        out, pattern.half_indices, True, flute.truncation, flute.label,
    )


def _raise_node(node: EndTreeNode, pattern: Optional[TwistPattern]) -> EndTreeNode:
    children = tuple(
        Attachment(attach_at=c.attach_at, node=_raise_node(c.node, pattern)) for c in node.children
    )
    if node.kind == "flute":
        return EndTreeNode(kind="flute", flute=_raise_flute(node.flute, pattern),
                           label=node.label, children=children)
    if node.kind == "basic-end":
        basic = node.basic_end
        raised = BasicEndDescriptor(
            flute=_raise_flute(basic.flute, pattern),
            beta=basic.beta,
            beta_bound=basic.beta_bound,
            beta_unbounded=basic.beta_unbounded,
        )
        return EndTreeNode(kind="basic-end", basic_end=raised, label=node.label, children=children)
    return node.model_copy(update={"children": children})


def synthesize_tree(
    tree: EndTree,
    pattern: Optional[TwistPattern] = None,
    policy: Optional[DivergencePolicy] = None,
) -> Tuple[EndTree, EndReport]:
    """
    Raise every end of a tree and re-classify it.

    Each node keeps its own half-twist pattern unless ``pattern`` is given;
    a node without half-twists gets one at every index.

    Returns:
        (raised tree, report on the raised tree)
    """
    raised = EndTree(root=_raise_node(tree.root, pattern))
    report = classify_surface(raised, policy)
    logger.info("synthesized tree of %d nodes: aggregate %s", raised.size, report.aggregate)
    return raised, report
