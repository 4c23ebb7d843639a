from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from src.context_.settings import (
    POLICY_BLOCK,
    POLICY_DELTA,
    POLICY_MARGIN,
    POLICY_RESID,
    POLICY_WINDOW,
)


VerdictKind = Literal["Parabolic", "NotParabolic", "Inconclusive"]
VerdictBasis = Literal["iff-row", "sufficient-row", "numeric-heuristic"]
SeriesOutcome = Literal["Divergent", "Convergent", "Inconclusive"]


class DivergencePolicy(BaseModel):
    """Thresholds of the finite-data divergence heuristic."""
    model_config = ConfigDict(frozen=True)

    window: int = Field(default=POLICY_WINDOW, ge=8, description="Number of tail terms examined")
    delta: float = Field(default=POLICY_DELTA, gt=0, description="Lower bound for the bounded-below test")
    margin: float = Field(default=POLICY_MARGIN, gt=0, lt=1, description="Slack around the critical exponent -1")
    resid: float = Field(default=POLICY_RESID, gt=0, description="Maximum RMS residual for a power-law fit")
    block: int = Field(default=POLICY_BLOCK, ge=1, description="Terms averaged per fitted point")

    def to_dict(self) -> dict:
        return self.model_dump()


class DivergenceResult(BaseModel):
    """Outcome of the heuristic plus everything it looked at."""
    model_config = ConfigDict(frozen=True)

    outcome: SeriesOutcome = Field(description="Divergent, Convergent or Inconclusive")
    rule: str = Field(description="Which test decided the outcome")
    partial_sums: Dict[int, float] = Field(default_factory=dict, description="log10 of partial sums at checkpoints")
    fit: Dict[str, Optional[float]] = Field(default_factory=dict, description="Fitted slopes and residuals")
    terms: int = Field(default=0, description="Number of terms supplied")

    def to_dict(self) -> dict:
        return self.model_dump()


class Verdict(BaseModel):
    """A parabolicity verdict with the evidence that produced it."""
    model_config = ConfigDict(frozen=True)

    kind: VerdictKind = Field(description="Parabolic, NotParabolic or Inconclusive")
    basis: VerdictBasis = Field(description="Kind of criterion the verdict rests on")
    row: str = Field(description="Criterion used: zero-twist, all-half, concave-half, mixed, log-bound, pairing")
    series: str = Field(description="The series tested")
    divergence: Optional[DivergenceResult] = Field(default=None, description="Heuristic result, when one ran")
    assumptions: Tuple[str, ...] = Field(default=(), description="Assumptions the verdict is conditional on")
    policy: DivergencePolicy = Field(default_factory=DivergencePolicy, description="Policy in force")
    notes: Tuple[str, ...] = Field(default=(), description="Diagnostics worth surfacing")

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "basis": self.basis,
            "row": self.row,
            "series": self.series,
            "divergence": self.divergence.to_dict() if self.divergence else None,
            "assumptions": list(self.assumptions),
            "policy": self.policy.to_dict(),
            "notes": list(self.notes),
        }

    def to_string(self) -> str:
        lines = [
            f"Verdict: {self.kind}",
            f"Basis: {self.basis} ({self.row})",
            f"Series: {self.series}",
        ]
        if self.divergence:
            lines.append(f"Series outcome: {self.divergence.outcome} via {self.divergence.rule}")
            for k, v in sorted(self.divergence.partial_sums.items()):
                lines.append(f"  log10 partial sum at {k}: {v:.6f}")
            for name, value in self.divergence.fit.items():
                if value is not None:
                    lines.append(f"  {name}: {value:.6f}")
        for a in self.assumptions:
            lines.append(f"Assumption: {a}")
        for n in self.notes:
            lines.append(f"Note: {n}")
        return "\n".join(lines)


class EndReport(BaseModel):
    """Per-node verdicts mirroring the end tree, plus the aggregate."""
    model_config = ConfigDict(frozen=True)

    node_id: str = Field(description="Slash-separated attach path from the root")
    label: str = Field(default="", description="Node label")
    node_kind: str = Field(description="flute, basic-end or finite-area")
    verdict: Optional[Verdict] = Field(default=None, description="Node verdict; None for finite-area")
    beta_bound_checked: bool = Field(default=False, description="Whether the beta bound was verified")
    children: Tuple["EndReport", ...] = Field(default=(), description="Reports of attached nodes")
    aggregate: VerdictKind = Field(description="Aggregate over this subtree")

    def iter_reports(self):
        yield self
        for child in self.children:
            yield from child.iter_reports()

    def to_dict(self) -> dict:
        return {
            "node_id": self.node_id,
            "label": self.label,
            "node_kind": self.node_kind,
            "verdict": self.verdict.to_dict() if self.verdict else None,
            "beta_bound_checked": self.beta_bound_checked,
            "aggregate": self.aggregate,
            "children": [c.to_dict() for c in self.children],
        }

    def to_string(self, indent: int = 0) -> str:
        pad = "  " * indent
        kind = self.verdict.kind if self.verdict else "n/a"
        lines = [f"{pad}{self.node_id} [{self.node_kind}] node={kind} subtree={self.aggregate}"]
        for child in self.children:
            lines.append(child.to_string(indent + 1))
        return "\n".join(lines)


EndReport.model_rebuild()
