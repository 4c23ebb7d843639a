from typing import Any, List, Literal, Tuple

from mpmath import mp
from pydantic import BaseModel, ConfigDict, Field

from src.data_schema.surface import TwistPattern


ShearSource = Literal["normalization", "even", "odd-zero-twist", "odd-half-odd-k", "odd-half-even-k"]


def real_str(x, digits: int = 20) -> str:
    """Render an mpf (or number) for reports."""
    return mp.nstr(mp.mpf(x), digits)


class EtaSequence(BaseModel):
    """Orthogeodesic lengths l(eta_n), n = 1..N-1, between consecutive cuff lifts."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    values: Tuple[Any, ...] = Field(description="l(eta_1), ..., l(eta_{N-1}) as mpf")

    def __len__(self) -> int:
        return len(self.values)

    def at(self, n: int):
        """l(eta_n), 1-based."""
        return self.values[n - 1]


class ShearSequence(BaseModel):
    """
    Shears s_1..s_{2N-2} of the zig-zag chain, with the twist offsets a_n.

    s_1 is a normalization (0). ``provenance[i]`` names the formula that
    produced s_{i+1}.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    shears: Tuple[Any, ...] = Field(description="s_1..s_{2N-2} as mpf")
    offsets: Tuple[Any, ...] = Field(description="a_1..a_N as mpf (0 or +-l_n/2)")
    provenance: Tuple[ShearSource, ...] = Field(description="Formula used per shear index")
    eta: EtaSequence = Field(description="Orthogeodesic lengths used")

    def __len__(self) -> int:
        return len(self.shears)

    def at(self, n: int):
        """s_n, 1-based."""
        return self.shears[n - 1]

    def to_dict(self, digits: int = 20) -> dict:
        return {
            "shears": [real_str(s, digits) for s in self.shears],
            "offsets": [real_str(a, digits) for a in self.offsets],
            "provenance": list(self.provenance),
            "eta": [real_str(e, digits) for e in self.eta.values],
        }


class AlternatingSums(BaseModel):
    """sigma_k = l_{n_k} - l_{n_{k-1}} + ... + (-1)^{k-1} l_{n_1} for k = 1..K."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    sigma: Tuple[Any, ...] = Field(description="sigma_1..sigma_K as mpf")
    pattern: TwistPattern = Field(description="Half-twist pattern the sums were taken over")

    def __len__(self) -> int:
        return len(self.sigma)

    def paired_nullity(self) -> bool:
        """True when sigma_{2k} == 0 exactly for every even k present (and K >= 2)."""
        evens = self.sigma[1::2]
        return bool(evens) and all(s == 0 for s in evens)

    def to_dict(self, digits: int = 20) -> dict:
        return {
            "k": list(range(1, len(self.sigma) + 1)),
            "n_k": list(self.pattern.half_indices[: len(self.sigma)]),
            "sigma": [real_str(s, digits) for s in self.sigma],
        }


class HorocyclicLengths(BaseModel):
    """log l(h_n): -(s_1+...+s_n) for odd n, +(s_1+...+s_n) for even n."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    log_values: Tuple[Any, ...] = Field(description="log l(h_1), ..., log l(h_M) as mpf")

    def __len__(self) -> int:
        return len(self.log_values)

    def log_partial_sums(self) -> List[Any]:
        """log of sum_{j<=n} l(h_j), accumulated without leaving log domain."""
        out: List[Any] = []
        acc = None
        for v in self.log_values:
            if acc is None:
                acc = v
            else:
                hi, lo = (acc, v) if acc >= v else (v, acc)
                acc = hi + mp.log1p(mp.exp(lo - hi))
            out.append(acc)
        return out
