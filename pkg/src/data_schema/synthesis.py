from typing import Any, Literal, Optional, Tuple

import pandas as pd
from mpmath import mp
from pydantic import BaseModel, ConfigDict, Field

from src.data_schema.surface import TwistPattern


class SynthesisPlan(BaseModel):
    """
    Record of a raise or lower pass over a length sequence.

    Pairs (n_{2k-1}, n_{2k}) of the pattern get equal lengths over the whole
    window between them; ``trailing_index`` is the unpaired last n_k, if any.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    base: Tuple[Any, ...] = Field(description="Input lengths as mpf")
    output: Tuple[Any, ...] = Field(description="Adjusted lengths as mpf")
    pattern: TwistPattern = Field(description="Half-twist pattern the plan certifies")
    mode: Literal["raise", "lower"] = Field(description="raise: output >= base; lower: output <= base")
    modified_indices: Tuple[int, ...] = Field(default=(), description="1-based indices whose value changed")
    trailing_index: Optional[int] = Field(default=None, description="Unpaired last half-index left as is")

    def to_frame(self) -> pd.DataFrame:
        """Before/after table restricted to modified indices."""
        rows = [
            {"n": n, "before": mp.nstr(self.base[n - 1], 17), "after": mp.nstr(self.output[n - 1], 17)}
            for n in self.modified_indices
        ]
        return pd.DataFrame(rows, columns=["n", "before", "after"])

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "pattern": self.pattern.to_dict(),
            "modified_indices": list(self.modified_indices),
            "trailing_index": self.trailing_index,
            "changes": self.to_frame().to_dict(orient="records"),
        }
