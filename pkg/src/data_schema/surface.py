from functools import cached_property
from typing import Any, Dict, Iterator, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator


GeneratorKind = Literal["explicit-list", "p-log-n", "power", "exponential", "paired", "constant"]


class TwistPattern(BaseModel):
    """
    The indices {n_k} carrying a half-twist; every other twist is 0.

    Only a finite prefix is stored. ``declared_infinite`` records the user's
    claim that half-twists continue beyond the truncation.
    """
    model_config = ConfigDict(frozen=True)

    half_indices: Tuple[int, ...] = Field(
        default=(),
        description="Strictly increasing 1-based cuff indices with twist 1/2"
    )
    declared_infinite: bool = Field(
        default=False,
        description="Whether the half-twist set is declared infinite beyond the truncation"
    )

    @field_validator("half_indices")
    @classmethod
    def _strictly_increasing(cls, v: Tuple[int, ...]) -> Tuple[int, ...]:
        for k, n in enumerate(v):
            if n < 1:
                raise ValueError(f"half-twist index must be >= 1, got {n} at position {k + 1}")
            if k and n <= v[k - 1]:
                raise ValueError(f"half-twist indices must increase strictly, {v[k - 1]} then {n}")
        return v

    @cached_property
    def index_rank(self) -> Dict[int, int]:
        """Map n_k -> k (1-based)."""
        return {n: k for k, n in enumerate(self.half_indices, start=1)}

    @property
    def count(self) -> int:
        return len(self.half_indices)

    def is_half(self, n: int) -> bool:
        return n in self.index_rank

    def restricted_to(self, N: int) -> "TwistPattern":
        """The part of the pattern inside [1, N]."""
        return TwistPattern(
            half_indices=tuple(n for n in self.half_indices if n <= N),
            declared_infinite=self.declared_infinite,
        )

    def is_all_half(self, N: int) -> bool:
        return self.half_indices == tuple(range(1, N + 1))

    def to_dict(self) -> dict:
        return {"half_indices": list(self.half_indices), "declared_infinite": self.declared_infinite}


class LengthGenerator(BaseModel):
    """
    A deterministic rule for a length sequence.

    Kinds and their params:
    - explicit-list: ``values``
    - p-log-n: ``p`` (l_n = p log n)
    - power: ``c``, ``q`` (l_n = c n^q)
    - exponential: ``base``, ``c`` (l_n = c base^n)
    - constant: ``value``
    - paired: ``base`` generator (l_{2k-1} = l_{2k} = base_{2k})
    """
    model_config = ConfigDict(frozen=True)

    kind: GeneratorKind = Field(description="Generator family")
    params: Dict[str, Any] = Field(default_factory=dict, description="Real coefficients of the family")
    values: Optional[Tuple[Any, ...]] = Field(default=None, description="Explicit values for explicit-list")
    base: Optional["LengthGenerator"] = Field(default=None, description="Base generator for paired")

    @classmethod
    def explicit(cls, values) -> "LengthGenerator":
        return cls(kind="explicit-list", values=tuple(str(v) if not isinstance(v, (int, float, str)) else v for v in values))

    def to_dict(self) -> dict:
        data: Dict[str, Any] = {"kind": self.kind}
        if self.params:
            data["params"] = dict(self.params)
        if self.values is not None:
            data["values"] = [v if isinstance(v, (int, float)) else str(v) for v in self.values]
        if self.base is not None:
            data["base"] = self.base.to_dict()
        return data


class FluteDescriptor(BaseModel):
    """
    One tight flute end: cuff lengths l_n, twists in {0, 1/2} and a truncation N.

    Lengths are expanded from the generator on first access, at the
    precision active at that moment.
    """
    model_config = ConfigDict(frozen=True)

    generator: LengthGenerator = Field(description="Rule producing the cuff lengths")
    twists: TwistPattern = Field(default_factory=TwistPattern, description="Half-twist pattern")
    truncation: int = Field(description="Number of cuffs N considered")
    label: str = Field(default="", description="Free-form name used in reports")

    @classmethod
    def from_lengths(
        cls,
        lengths,
        half_indices=(),
        declared_infinite: bool = False,
        truncation: Optional[int] = None,
        label: str = "",
    ) -> "FluteDescriptor":
        values = list(lengths)
        return cls(
            generator=LengthGenerator.explicit(values),
            twists=TwistPattern(half_indices=tuple(half_indices), declared_infinite=declared_infinite),
            truncation=truncation if truncation is not None else len(values),
            label=label,
        )

    @cached_property
    def lengths(self) -> tuple:
        from src.FluteType.data_pipeline.generators import expand_lengths
        return tuple(expand_lengths(self.generator, self.truncation))

    def with_lengths(self, lengths) -> "FluteDescriptor":
        """Same twists and truncation with an explicit length list."""
        return FluteDescriptor.from_lengths(
            lengths,
            self.twists.half_indices,
            self.twists.declared_infinite,
            self.truncation,
            self.label,
        )

    def to_dict(self) -> dict:
        return {
            "kind": "flute",
            "label": self.label,
            "generator": self.generator.to_dict(),
            "half_twist_indices": list(self.twists.half_indices),
            "declared_infinite": self.twists.declared_infinite,
            "truncation": self.truncation,
        }


class BasicEndDescriptor(BaseModel):
    """
    A one-ended bordered surface: flute cuffs alpha_n plus borders beta_n.

    A beta length of 0 encodes a puncture. Genus attached along beta_n
    (Loch-Ness monster) is carried as a finite-area attachment in the tree.
    """
    model_config = ConfigDict(frozen=True)

    flute: FluteDescriptor = Field(description="The alpha-cuff data")
    beta: LengthGenerator = Field(description="Rule for the border lengths l(beta_n)")
    beta_bound: Optional[float] = Field(default=None, description="Declared upper bound M on l(beta_n)")
    beta_unbounded: bool = Field(default=False, description="Input declares the beta lengths unbounded")

    @cached_property
    def beta_lengths(self) -> tuple:
        from src.FluteType.data_pipeline.generators import expand_beta_lengths
        return tuple(expand_beta_lengths(self.beta, self.flute.truncation))

    def to_dict(self) -> dict:
        data = self.flute.to_dict()
        data.update({
            "kind": "basic-end",
            "beta": self.beta.to_dict(),
            "beta_bound": self.beta_bound,
            "beta_unbounded": self.beta_unbounded,
        })
        return data


NodeKind = Literal["flute", "basic-end", "finite-area"]


class EndTreeNode(BaseModel):
    """A node of an end tree; children hang from the node's beta borders."""
    model_config = ConfigDict(frozen=True)

    kind: NodeKind = Field(description="flute, basic-end, or finite-area (no end)")
    flute: Optional[FluteDescriptor] = Field(default=None, description="Set when kind is flute")
    basic_end: Optional[BasicEndDescriptor] = Field(default=None, description="Set when kind is basic-end")
    label: str = Field(default="", description="Name used in reports")
    children: Tuple["Attachment", ...] = Field(default=(), description="Subsurfaces glued along beta borders")

    @property
    def has_end(self) -> bool:
        return self.kind != "finite-area"

    def to_dict(self) -> dict:
        if self.kind == "flute":
            data = self.flute.to_dict()
        elif self.kind == "basic-end":
            data = self.basic_end.to_dict()
        else:
            data = {"kind": "finite-area"}
        data["label"] = self.label
        if self.children:
            data["children"] = [{"attach_at": c.attach_at, "node": c.node.to_dict()} for c in self.children]
        return data


class Attachment(BaseModel):
    """A child node glued to border beta_{attach_at} of its parent."""
    model_config = ConfigDict(frozen=True)

    attach_at: int = Field(description="1-based beta index of the parent")
    node: EndTreeNode = Field(description="The attached subsurface")


EndTreeNode.model_rebuild()


class EndTree(BaseModel):
    """A finitely presented rooted tree of end surfaces."""
    model_config = ConfigDict(frozen=True)

    root: EndTreeNode = Field(description="Root node")

    def iter_nodes(self) -> Iterator[Tuple[str, EndTreeNode]]:
        """Depth-first (node id, node) pairs; ids are slash-separated attach indices."""
        stack: List[Tuple[str, EndTreeNode]] = [("root", self.root)]
        while stack:
            node_id, node = stack.pop()
            yield node_id, node
            for child in reversed(node.children):
                stack.append((f"{node_id}/{child.attach_at}", child.node))

    @property
    def size(self) -> int:
        return sum(1 for _ in self.iter_nodes())

    def to_dict(self) -> dict:
        data = self.root.to_dict()
        data["kind"] = "end-tree"
        data["root_kind"] = self.root.kind
        return data
