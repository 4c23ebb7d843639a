from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from src.context_.settings import DEFAULT_PRECISION_BITS, MIN_PRECISION_BITS
from src.data_schema.verdict import DivergencePolicy


Command = Literal["analyze", "develop", "synthesize", "endtree"]


class RunConfig(BaseModel):
    """Everything a CLI run depends on; embedded verbatim in every report."""
    model_config = ConfigDict(frozen=True)

    command: Command = Field(description="Subcommand")
    input_path: Optional[str] = Field(default=None, description="Surface document path")
    generator: Optional[str] = Field(default=None, description="Inline length generator, e.g. plog:2.5")
    pattern: Optional[str] = Field(default=None, description="Inline half-twist pattern, e.g. all or list:1,2")
    declared_infinite: bool = Field(default=True, description="Declare inline patterns infinite")
    precision_bits: int = Field(default=DEFAULT_PRECISION_BITS, ge=MIN_PRECISION_BITS, description="Mantissa bits")
    truncation: Optional[int] = Field(default=None, ge=2, description="Truncation N")
    policy: DivergencePolicy = Field(default_factory=DivergencePolicy, description="Divergence heuristic thresholds")
    mode: Literal["raise", "lower"] = Field(default="raise", description="Synthesis direction")
    out: Optional[str] = Field(default=None, description="Report path")
    svg_out: Optional[str] = Field(default=None, description="Drawing path (develop)")
    seed: int = Field(default=0, description="Recorded in reports only; no computation is random")
    format: Literal["text", "structured"] = Field(default="text", description="Report format")

    def to_dict(self) -> dict:
        return self.model_dump()
