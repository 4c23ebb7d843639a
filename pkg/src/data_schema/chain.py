from typing import Any, Tuple

import pandas as pd
from mpmath import mp
from pydantic import BaseModel, ConfigDict, Field


class GeodesicChain(BaseModel):
    """
    Nested geodesics g_1..g_M developed in the upper half-plane.

    ``vertices`` holds v_0..v_M with g_m = (v_{m-1}, v_m); each development
    step contributes the single new vertex v_{m+1}.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    vertices: Tuple[Any, ...] = Field(description="Ideal vertices v_0..v_M as BoundaryPoint")
    roundtrip_errors: Tuple[Any, ...] = Field(default=(), description="|recomputed shear - input shear| per step")
    precision_bits: int = Field(description="Working precision the chain was validated against")

    @property
    def geodesics(self) -> tuple:
        from src.FluteType.modules.hyp_core import Geodesic
        v = self.vertices
        return tuple(Geodesic(v[m - 1], v[m]) for m in range(1, len(v)))

    @property
    def new_vertex_per_step(self) -> tuple:
        return self.vertices[3:]

    def __len__(self) -> int:
        return max(len(self.vertices) - 1, 0)

    @property
    def max_roundtrip_error(self):
        return max(self.roundtrip_errors) if self.roundtrip_errors else mp.zero


class GapSequence(BaseModel):
    """Chordal distance between the endpoints of g_n after the Cayley transform."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    gaps: Tuple[Any, ...] = Field(description="gap_1..gap_M as mpf")
    precision_bound: Any = Field(default=None, description="Absolute resolution of the final gap")

    def __len__(self) -> int:
        return len(self.gaps)

    def at(self, n: int):
        """gap_n, 1-based."""
        return self.gaps[n - 1]

    def to_frame(self) -> pd.DataFrame:
        """Trace with columns n, gap, log_gap."""
        return pd.DataFrame({
            "n": range(1, len(self.gaps) + 1),
            "gap": [mp.nstr(g, 17) for g in self.gaps],
            "log_gap": [float(mp.log(g)) for g in self.gaps],
        })
