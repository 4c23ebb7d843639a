"""
Surface document ingestion and descriptor validation.

Documents are YAML or JSON with a top-level ``kind``:

    kind: flute
    generator: {kind: p-log-n, params: {p: 2}}    # or lengths: [...]
    half_twist_indices: [1, 2, 6, 24]             # or pattern: factorial
    declared_infinite: true
    truncation: 1000

A ``basic-end`` adds ``beta_lengths`` (or ``beta_generator``), ``beta_bound``
and ``beta_unbounded``. An ``end-tree`` is a root node (``root_kind``) with
``children: [{attach_at: j, node: {...}}]``; children may nest.
"""

import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import yaml
from pydantic import ValidationError

from src.data_schema.surface import (
    Attachment,
    BasicEndDescriptor,
    EndTree,
    EndTreeNode,
    FluteDescriptor,
    LengthGenerator,
    TwistPattern,
)
from src.FluteType.data_pipeline.generators import expand_lengths, pattern_indices
from src.FluteType.exceptions import (
    DomainError,
    HypothesisRefusal,
    SchemaError,
    ValidationFailure,
    Violation,
)

logger = logging.getLogger(__name__)

Surface = Union[FluteDescriptor, BasicEndDescriptor, EndTree]


def flute_violations(d: FluteDescriptor) -> List[Violation]:
    """All failed checks on a flute descriptor; empty when valid."""
    violations: List[Violation] = []
    N = d.truncation
    if N < 2:
        violations.append(Violation(None, "truncation", f"truncation must be >= 2, got {N}"))
    halves = d.twists.half_indices
    if halves and halves[-1] > N:
        violations.append(Violation(
            halves[-1], "truncation",
            f"half-twist index {halves[-1]} exceeds truncation {N}",
        ))
    if d.twists.declared_infinite and not any(n <= N for n in halves):
        violations.append(Violation(
            None, "no-witness",
            "half-twists declared infinite but none lies inside the truncation window",
        ))

    g = d.generator
    if g.kind == "explicit-list":
        values = list(g.values or ())
        if len(values) < N:
            violations.append(Violation(
                len(values) + 1, "short-list",
                f"explicit list has {len(values)} values, truncation is {N}",
            ))
        prev = None
        for n, raw in enumerate(values[:N], start=1):
            try:
                v = float(raw)
            except (TypeError, ValueError):
                violations.append(Violation(n, "not-a-number", f"length at index {n} is not a number: {raw!r}"))
                prev = None
                continue
            if v <= 0:
                violations.append(Violation(n, "nonpositive", f"length at index {n} is not positive"))
            if prev is not None and v < prev:
                violations.append(Violation(n, "decrease", f"lengths decrease at index {n}"))
            prev = v
    else:
        try:
            expand_lengths(g, max(N, 1))
        except DomainError as e:
            violations.append(Violation(e.index, "generator", str(e)))
    return violations


def validate_flute(d: FluteDescriptor) -> FluteDescriptor:
    """
    Check a flute against the criterion hypotheses.

    Raises:
        ValidationFailure: listing every violation with its index
    """
    violations = flute_violations(d)
    if violations:
        for v in violations:
            logger.debug("violation %s at %s: %s", v.code, v.index, v.message)
        raise ValidationFailure(violations)
    return d


def _load_document(document: Union[str, Path, Dict[str, Any]]) -> Dict[str, Any]:
    if isinstance(document, dict):
        return document
    if isinstance(document, Path) or (isinstance(document, str) and "\n" not in document
                                      and document.strip().endswith((".yaml", ".yml", ".json"))):
        path = Path(document)
        try:
            text = path.read_text()
        except OSError as e:
            raise SchemaError(f"cannot read document: {e}", "$") from e
    else:
        text = document
    try:
        # JSON is a subset of YAML
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise SchemaError(f"not valid YAML/JSON: {e}", "$") from e
    if not isinstance(data, dict):
        raise SchemaError("document must be a mapping", "$")
    return data


def _require(data: Dict[str, Any], key: str, path: str):
    if key not in data:
        raise SchemaError(f"missing field '{key}'", path)
    return data[key]


def _parse_generator(data: Any, path: str) -> LengthGenerator:
    if not isinstance(data, dict):
        raise SchemaError("generator must be a mapping", path)
    try:
        base = data.get("base")
        return LengthGenerator(
            kind=_require(data, "kind", path),
            params=data.get("params") or {},
            values=tuple(data["values"]) if "values" in data else None,
            base=_parse_generator(base, f"{path}.base") if base is not None else None,
        )
    except ValidationError as e:
        raise SchemaError(e.errors()[0]["msg"], path) from e


def _parse_lengths(data: Dict[str, Any], path: str, list_key: str, gen_key: str) -> LengthGenerator:
    if list_key in data:
        values = data[list_key]
        if not isinstance(values, list) or not values:
            raise SchemaError(f"'{list_key}' must be a non-empty list", f"{path}.{list_key}")
        return LengthGenerator.explicit(values)
    if gen_key in data:
        return _parse_generator(data[gen_key], f"{path}.{gen_key}")
    raise SchemaError(f"need '{list_key}' or '{gen_key}'", path)


def _parse_flute(data: Dict[str, Any], path: str) -> FluteDescriptor:
    generator = _parse_lengths(data, path, "lengths", "generator")
    truncation = data.get("truncation")
    if truncation is None:
        if generator.kind != "explicit-list":
            raise SchemaError("missing field 'truncation'", path)
        truncation = len(generator.values)
    if not isinstance(truncation, int) or isinstance(truncation, bool):
        raise SchemaError("truncation must be an integer", f"{path}.truncation")

    if "half_twist_indices" in data:
        halves = data["half_twist_indices"] or []
        if not isinstance(halves, list) or not all(isinstance(n, int) for n in halves):
            raise SchemaError("half_twist_indices must be a list of integers", f"{path}.half_twist_indices")
    elif "pattern" in data:
        try:
            halves = pattern_indices(str(data["pattern"]), truncation)
        except DomainError as e:
            raise SchemaError(str(e), f"{path}.pattern") from e
    else:
        halves = []

    try:
        twists = TwistPattern(
            half_indices=tuple(halves),
            declared_infinite=bool(data.get("declared_infinite", False)),
        )
    except ValidationError as e:
        raise SchemaError(e.errors()[0]["msg"], f"{path}.half_twist_indices") from e

    flute = FluteDescriptor(
        generator=generator,
        twists=twists,
        truncation=truncation,
        label=str(data.get("label", "")),
    )
    return validate_flute(flute)


def _parse_basic_end(data: Dict[str, Any], path: str) -> BasicEndDescriptor:
    flute = _parse_flute(data, path)
    beta = _parse_lengths(data, path, "beta_lengths", "beta_generator")
    bound = data.get("beta_bound")
    unbounded = bool(data.get("beta_unbounded", False))
    if unbounded and bound is None:
        raise HypothesisRefusal(
            f"{path}: beta lengths declared unbounded and no beta_bound given; "
            "the basic-end criterion needs bounded borders",
            hypothesis="beta-bounded",
        )
    if bound is not None and (not isinstance(bound, (int, float)) or bound <= 0):
        raise SchemaError("beta_bound must be a positive number", f"{path}.beta_bound")
    return BasicEndDescriptor(
        flute=flute,
        beta=beta,
        beta_bound=float(bound) if bound is not None else None,
        beta_unbounded=unbounded,
    )


def _parse_node(data: Any, path: str, kind: Optional[str] = None) -> EndTreeNode:
    if not isinstance(data, dict):
        raise SchemaError("node must be a mapping", path)
    kind = kind or _require(data, "kind", path)
    label = str(data.get("label", ""))
    if kind == "flute":
        node_kwargs = {"flute": _parse_flute(data, path)}
    elif kind == "basic-end":
        node_kwargs = {"basic_end": _parse_basic_end(data, path)}
    elif kind == "finite-area":
        node_kwargs = {}
    else:
        raise SchemaError(f"unknown node kind '{kind}'", f"{path}.kind")

    children = []
    raw_children = data.get("children") or []
    if raw_children and kind != "basic-end":
        raise SchemaError("only basic-end nodes have beta borders to attach children to", f"{path}.children")
    seen = set()
    for i, child in enumerate(raw_children):
        child_path = f"{path}.children[{i}]"
        if not isinstance(child, dict):
            raise SchemaError("child must be a mapping", child_path)
        attach_at = _require(child, "attach_at", child_path)
        if not isinstance(attach_at, int) or attach_at < 1:
            raise SchemaError("attach_at must be a positive integer", f"{child_path}.attach_at")
        if attach_at in seen:
            raise SchemaError(f"two children attached at beta_{attach_at}", f"{child_path}.attach_at")
        seen.add(attach_at)
        basic = node_kwargs["basic_end"]
        beta = basic.beta_lengths
        if attach_at > len(beta):
            raise SchemaError(f"beta_{attach_at} lies beyond the truncation", f"{child_path}.attach_at")
        if beta[attach_at - 1] == 0:
            raise SchemaError(f"beta_{attach_at} is a puncture", f"{child_path}.attach_at")
        node = _parse_node(_require(child, "node", child_path), f"{child_path}.node")
        children.append(Attachment(attach_at=attach_at, node=node))

    return EndTreeNode(kind=kind, label=label, children=tuple(children), **node_kwargs)


def parse_surface(document: Union[str, Path, Dict[str, Any]]) -> Surface:
    """
    Parse and validate a surface document.

    Args:
        document: YAML/JSON text, a path to such a file, or an already-loaded mapping

    Returns:
        FluteDescriptor, BasicEndDescriptor or EndTree

    Raises:
        SchemaError: with the path of the offending field
        ValidationFailure: when a flute fails its checks
        HypothesisRefusal: unbounded beta lengths without a bound
    """
    data = _load_document(document)
    kind = _require(data, "kind", "$")
    if kind == "flute":
        surface = _parse_flute(data, "$")
    elif kind == "basic-end":
        surface = _parse_basic_end(data, "$")
    elif kind == "end-tree":
        root_kind = data.get("root_kind", "basic-end")
        surface = EndTree(root=_parse_node(data, "$", kind=root_kind))
        logger.debug("parsed end tree with %d nodes", surface.size)
    else:
        raise SchemaError(f"unknown kind '{kind}'", "$.kind")
    return surface
