"""
Report assembly for the four CLI commands.

Every report is a deterministic mapping (no timestamps) that embeds the
RunConfig it came from, plus a plain-text rendition for the terminal.
"""

import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import pandas as pd
from mpmath import mp
from pydantic import BaseModel, ConfigDict, Field

from src.data_schema.chain import GapSequence
from src.data_schema.run_config import RunConfig
from src.data_schema.sequences import AlternatingSums, real_str
from src.data_schema.surface import BasicEndDescriptor, EndTree, FluteDescriptor
from src.data_schema.verdict import EndReport
from src.FluteType.exceptions import DomainError
from src.FluteType.modules.divergence import log10_partial_sums
from src.FluteType.modules.end_tree import check_beta_bound, classify_surface
from src.FluteType.modules.limit_polygon import accumulation_gap, develop_chain
from src.FluteType.modules.render import RenderOptions, render_disk, save_svg
from src.FluteType.modules.shear_seq import shear_sequence
from src.FluteType.modules.synthesizer import (
    choose_pattern,
    lower_lengths,
    raise_lengths,
    synthesize_tree,
)
from src.FluteType.modules.type_criterion import (
    alternating_sums,
    classify_flute,
    horocyclic_lengths,
)
from src.tools.general_tools import write_json

logger = logging.getLogger(__name__)

TABLE_EDGE_ROWS = 10


class RunReport(BaseModel):
    """A finished command: structured payload plus its text rendition."""

    command: str = Field(description="Subcommand that produced the report")
    payload: Dict[str, Any] = Field(description="Structured report body")
    text: str = Field(description="Human-readable rendition")
    tables: Dict[str, Any] = Field(default_factory=dict, description="Delimited side outputs, name -> DataFrame")

    model_config = ConfigDict(arbitrary_types_allowed=True)

    def write(self, path: Union[str, Path], fmt: str = "structured") -> Path:
        """Write the report; delimited tables go next to it as <stem>_<name>.csv."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        if fmt == "structured":
            write_json(path, self.payload)
        else:
            path.write_text(self.text + "\n")
        for name, frame in self.tables.items():
            frame.to_csv(path.with_name(f"{path.stem}_{name}.csv"), index=False)
        logger.info("report written to %s", path)
        return path


def _edge_table(frame: pd.DataFrame) -> str:
    if len(frame) <= 2 * TABLE_EDGE_ROWS:
        return frame.to_string(index=False)
    head = frame.head(TABLE_EDGE_ROWS).to_string(index=False)
    tail = frame.tail(TABLE_EDGE_ROWS).to_string(index=False, header=False)
    return f"{head}\n...\n{tail}"


def sigma_frame(sums: AlternatingSums) -> pd.DataFrame:
    data = sums.to_dict(digits=17)
    return pd.DataFrame({"k": data["k"], "n_k": data["n_k"], "sigma": data["sigma"]})


def _flute_of(surface: Union[FluteDescriptor, BasicEndDescriptor]) -> FluteDescriptor:
    return surface.flute if isinstance(surface, BasicEndDescriptor) else surface


def analyze_report(config: RunConfig, surface: Union[FluteDescriptor, BasicEndDescriptor, EndTree]) -> RunReport:
    """Verdict, sigma table and horocyclic partial sums for one end."""
    if isinstance(surface, EndTree):
        return endtree_report(config, surface)

    beta_checked = False
    if isinstance(surface, BasicEndDescriptor):
        beta_checked = check_beta_bound(surface)
    flute = _flute_of(surface)
    lengths = list(flute.lengths)
    verdict = classify_flute(flute, config.policy, lengths=lengths)

    shears = shear_sequence(flute, lengths)
    horo = horocyclic_lengths(shears)
    horo_sums = log10_partial_sums(horo.log_values)

    payload: Dict[str, Any] = {
        "command": "analyze",
        "config": config.to_dict(),
        "surface": surface.to_dict(),
        "verdict": verdict.to_dict(),
        "beta_bound_checked": beta_checked,
        "horocyclic_log10_partial_sums": {str(k): v for k, v in horo_sums.items()},
    }
    lines = [verdict.to_string()]
    if isinstance(surface, BasicEndDescriptor):
        lines.append(f"Beta bound checked: {beta_checked}")

    tables: Dict[str, Any] = {}
    if flute.twists.restricted_to(len(lengths)).half_indices:
        sums = alternating_sums(lengths, flute.twists)
        frame = sigma_frame(sums)
        payload["sigma"] = frame.to_dict(orient="list")
        tables["sigma"] = frame
        lines += ["", "Alternating sums:", _edge_table(frame)]

    lines += ["", "Horocyclic path, log10 partial sums:"]
    lines += [f"  n <= {k}: {v:.6f}" for k, v in horo_sums.items()]
    return RunReport(command="analyze", payload=payload, text="\n".join(lines), tables=tables)


def _gap_checkpoints(gaps: GapSequence) -> Dict[str, str]:
    M = len(gaps)
    marks = sorted({c for c in (10, 100, 200, 1000, 2000, 10000) if c <= M} | {M})
    return {str(n): real_str(gaps.at(n), 17) for n in marks}


def _trend(gaps: GapSequence) -> str:
    M = len(gaps)
    if M < 4:
        return "short"
    mid, last = gaps.at(max(1, M // 10)), gaps.at(M)
    if last < mp.mpf("0.5") * mid:
        return "decreasing"
    if last > mp.mpf("0.99") * mid:
        return "flat"
    return "slowly-decreasing"


def develop_report(
    config: RunConfig,
    surface: Union[FluteDescriptor, BasicEndDescriptor],
    render_options: Optional[RenderOptions] = None,
) -> RunReport:
    """Chain development with gap trace and optional drawing."""
    flute = _flute_of(surface)
    shears = shear_sequence(flute)
    chain = develop_chain(shears, config.precision_bits)
    gaps = accumulation_gap(chain)

    svg_path = None
    if config.svg_out:
        svg_path = str(save_svg(render_disk(chain, render_options), config.svg_out))

    payload = {
        "command": "develop",
        "config": config.to_dict(),
        "surface": surface.to_dict(),
        "geodesics": len(chain),
        "max_roundtrip_error": real_str(chain.max_roundtrip_error, 6),
        "gap_checkpoints": _gap_checkpoints(gaps),
        "final_gap": real_str(gaps.at(len(gaps)), 17),
        "precision_bound": real_str(gaps.precision_bound, 6),
        "trend": _trend(gaps),
        "svg": svg_path,
    }
    lines = [
        f"Geodesics developed: {len(chain)}",
        f"Max round-trip shear error: {payload['max_roundtrip_error']}",
        f"Gap trend: {payload['trend']}",
        "Gap checkpoints:",
    ] + [f"  gap_{n} = {g}" for n, g in payload["gap_checkpoints"].items()]
    if svg_path:
        lines.append(f"Drawing: {svg_path}")
    return RunReport(command="develop", payload=payload, text="\n".join(lines), tables={"gaps": gaps.to_frame()})


def synthesize_report(
    config: RunConfig,
    surface: Union[FluteDescriptor, BasicEndDescriptor, EndTree],
) -> RunReport:
    """Raise or lower the lengths, then re-classify the result."""
    if isinstance(surface, EndTree):
        if config.mode != "raise":
            raise DomainError("end trees are synthesized in raise mode only")
        raised, report = synthesize_tree(surface, policy=config.policy)
        payload = {
            "command": "synthesize",
            "config": config.to_dict(),
            "surface": raised.to_dict(),
            "verification": report.to_dict(),
        }
        return RunReport(command="synthesize", payload=payload, text=report.to_string())

    flute = _flute_of(surface)
    lengths = list(flute.lengths)
    pattern = flute.twists.restricted_to(len(lengths))
    if not pattern.half_indices:
        pattern = choose_pattern(range(1, len(lengths) + 1), len(lengths))
    adjust = raise_lengths if config.mode == "raise" else lower_lengths
    output, plan = adjust(lengths, pattern)

    certified = FluteDescriptor.from_lengths(output, pattern.half_indices, True, flute.truncation, flute.label)
    verdict = classify_flute(certified, config.policy, lengths=output)

    payload = {
        "command": "synthesize",
        "config": config.to_dict(),
        "plan": plan.to_dict(),
        "lengths": [real_str(x, 17) for x in output],
        "verification": verdict.to_dict(),
    }
    lines = [
        f"Mode: {plan.mode}",
        f"Modified indices: {len(plan.modified_indices)}",
    ]
    if plan.trailing_index is not None:
        lines.append(f"Unpaired half-twist index left as is: {plan.trailing_index}")
    lines += ["", _edge_table(plan.to_frame()) if plan.modified_indices else "(no change)", "", verdict.to_string()]
    return RunReport(
        command="synthesize", payload=payload, text="\n".join(lines),
        tables={"lengths": pd.DataFrame({"n": range(1, len(output) + 1), "length": payload["lengths"]})},
    )


def endtree_report(config: RunConfig, tree: EndTree, num_threads: int = 1) -> RunReport:
    """Per-node verdicts and the aggregate, mirroring the tree."""
    report: EndReport = classify_surface(tree, config.policy, num_threads=num_threads)
    payload = {
        "command": "endtree",
        "config": config.to_dict(),
        "surface": tree.to_dict(),
        "report": report.to_dict(),
        "aggregate": report.aggregate,
    }
    rows: List[Dict[str, Any]] = []
    for r in report.iter_reports():
        rows.append({
            "node": r.node_id,
            "kind": r.node_kind,
            "verdict": r.verdict.kind if r.verdict else "n/a",
            "row": r.verdict.row if r.verdict else "",
            "subtree": r.aggregate,
        })
    frame = pd.DataFrame(rows)
    text = f"Aggregate: {report.aggregate}\n\n{report.to_string()}"
    return RunReport(command="endtree", payload=payload, text=text, tables={"nodes": frame})
