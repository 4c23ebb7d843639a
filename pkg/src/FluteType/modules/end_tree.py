"""
Per-end classification and aggregation over an end tree.

A surface with countably many ends is parabolic iff every end is, so the
aggregate is a conjunction over the nodes that carry an end.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, Iterable, Optional, Tuple

from mpmath import mp

from src.data_schema.surface import BasicEndDescriptor, EndTree, EndTreeNode
from src.data_schema.verdict import DivergencePolicy, EndReport, Verdict
from src.FluteType.exceptions import HypothesisRefusal
from src.FluteType.modules.type_criterion import classify_flute

logger = logging.getLogger(__name__)


def check_beta_bound(node: BasicEndDescriptor) -> bool:
    """
    Verify l(beta_n) <= M over the truncation.

    Returns:
        True when a bound was checked (or every border is a puncture),
        False when no bound was declared

    Raises:
        HypothesisRefusal: unbounded borders, or a border above the bound
    """
    betas = node.beta_lengths
    if node.beta_unbounded and node.beta_bound is None:
        raise HypothesisRefusal(
            "beta lengths declared unbounded; the basic-end criterion needs bounded borders",
            hypothesis="beta-bounded",
        )
    if node.beta_bound is None:
        return all(b == 0 for b in betas)
    bound = mp.mpf(node.beta_bound)
    for n, b in enumerate(betas, start=1):
        if b > bound:
            raise HypothesisRefusal(
                f"l(beta_{n}) = {mp.nstr(b, 10)} exceeds the bound {node.beta_bound}",
                hypothesis="beta-bounded",
                index=n,
            )
    return True


def _end_verdict(node: BasicEndDescriptor, policy: Optional[DivergencePolicy]) -> Tuple[Verdict, bool]:
    checked = check_beta_bound(node)
    verdict = classify_flute(node.flute, policy)
    if node.beta_bound is not None:
        bound = f"l(beta_n) <= {node.beta_bound:g} over the truncation"
        verdict = verdict.model_copy(update={"assumptions": verdict.assumptions + (bound,)})
    elif not checked:
        verdict = verdict.model_copy(update={"notes": verdict.notes + ("no beta bound declared; borders unchecked",)})
    return verdict, checked


def classify_end(node: BasicEndDescriptor, policy: Optional[DivergencePolicy] = None) -> Verdict:
    """
    The flute verdict of the alpha-cuffs, once the beta bound holds.

    A checked bound is carried as an assumption; an undeclared one as a
    note. With every border a puncture the verdict is the flute's own.
    """
    return _end_verdict(node, policy)[0]


def aggregate(kinds: Iterable[str]) -> str:
    """Parabolic iff all are; NotParabolic if any is; else Inconclusive."""
    kinds = list(kinds)
    if "NotParabolic" in kinds:
        return "NotParabolic"
    if all(k == "Parabolic" for k in kinds):
        return "Parabolic"
    return "Inconclusive"


class EndTreeClassifier:
    """
    Classifies every node of an end tree, then folds the verdicts.

    Node verdicts are independent and may be computed on a thread pool;
    the fold runs afterwards in tree order. The work is pure Python under
    the GIL, so the pool overlaps little; one thread is the default.
    """

    MAX_WORKERS = 8

    def __init__(self, policy: Optional[DivergencePolicy] = None, num_threads: int = 1):
        self.policy = policy or DivergencePolicy()
        self.num_threads = max(1, min(num_threads, self.MAX_WORKERS))

    def _node_verdict(self, node: EndTreeNode):
        if node.kind == "flute":
            return classify_flute(node.flute, self.policy), False
        if node.kind == "basic-end":
            return _end_verdict(node.basic_end, self.policy)
        return None, False

    @staticmethod
    def _expand(node: EndTreeNode) -> None:
        # cached_property has no lock; fill the caches before any worker reads them
        if node.kind == "flute":
            node.flute.lengths
        elif node.kind == "basic-end":
            node.basic_end.flute.lengths
            node.basic_end.beta_lengths

    def __call__(self, tree: EndTree) -> EndReport:
        nodes = list(tree.iter_nodes())
        if self.num_threads > 1:
            for _, node in nodes:
                self._expand(node)
            # workers share the process-wide mpmath precision and must leave it unchanged
            with ThreadPoolExecutor(max_workers=self.num_threads) as pool:
                results = list(pool.map(lambda item: self._node_verdict(item[1]), nodes))
        else:
            results = [self._node_verdict(node) for _, node in nodes]
        verdicts: Dict[str, tuple] = {node_id: r for (node_id, _), r in zip(nodes, results)}
        return self._fold("root", tree.root, verdicts)

    def _fold(self, node_id: str, node: EndTreeNode, verdicts: Dict[str, tuple]) -> EndReport:
        children = tuple(
            self._fold(f"{node_id}/{c.attach_at}", c.node, verdicts) for c in node.children
        )
        verdict, checked = verdicts[node_id]
        kinds = [c.aggregate for c in children]
        if verdict is not None:
            kinds.append(verdict.kind)
        return EndReport(
            node_id=node_id,
            label=node.label,
            node_kind=node.kind,
            verdict=verdict,
            beta_bound_checked=checked,
            children=children,
            aggregate=aggregate(kinds),
        )


def classify_surface(
    tree: EndTree,
    policy: Optional[DivergencePolicy] = None,
    num_threads: int = 1,
) -> EndReport:
    """
    Recursive report over an end tree.

    Finite-area nodes carry no end and no verdict; a subtree made only of
    them aggregates to Parabolic.

    Raises:
        HypothesisRefusal: a basic end whose beta bound fails
    """
    report = EndTreeClassifier(policy, num_threads)(tree)
    logger.info("end tree of %d nodes: aggregate %s", tree.size, report.aggregate)
    if report.aggregate == "Inconclusive":
        for r in report.iter_reports():
            if r.verdict is not None and r.verdict.kind == "Inconclusive":
                logger.warning("node %s is Inconclusive (%s)", r.node_id, r.verdict.row)
    return report
