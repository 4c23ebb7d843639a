"""
Length and pattern generators.

Provides:
- expand_lengths / expand_beta_lengths: materialize a LengthGenerator
- parse_inline_generator: "plog:2.5", "power:1:1", "exp:e", "const:2",
  "pairs-of:<inline>", "list:file.txt"
- parse_inline_pattern / pattern_indices: "none", "all", "list:1,2,3",
  "factorial", "powers:3", "adjacent-powers:4"
"""

import logging
from pathlib import Path
from typing import List, Optional

from mpmath import mp

from src.context_.settings import LENGTH_CLAMP_EPSILON
from src.data_schema.surface import LengthGenerator, TwistPattern
from src.FluteType.exceptions import DomainError

logger = logging.getLogger(__name__)


def _param(g: LengthGenerator, name: str, default=None):
    if name in g.params:
        value = g.params[name]
        if isinstance(value, str) and value.strip().lower() == "e":
            return mp.e
        return mp.mpf(value)
    if default is None:
        raise DomainError(f"generator {g.kind} needs parameter '{name}'")
    return mp.mpf(default)


def generator_value(g: LengthGenerator, n: int):
    """Raw value of the generator at index n >= 1, before clamping."""
    if g.kind == "explicit-list":
        if not g.values or n > len(g.values):
            raise DomainError(f"explicit list has no entry for index {n}", index=n)
        return mp.mpf(g.values[n - 1])
    if g.kind == "p-log-n":
        return _param(g, "p") * mp.log(n)
    if g.kind == "power":
        return _param(g, "c", 1) * mp.mpf(n) ** _param(g, "q")
    if g.kind == "exponential":
        return _param(g, "c", 1) * _param(g, "base") ** n
    if g.kind == "constant":
        return _param(g, "value")
    if g.kind == "paired":
        if g.base is None:
            raise DomainError("paired generator needs a base generator")
        partner = n + 1 if n % 2 else n
        if g.base.kind == "explicit-list" and g.base.values and partner > len(g.base.values):
            partner = len(g.base.values)
        return generator_value(g.base, partner)
    raise ValueError(f"Unknown generator kind: {g.kind}")


def expand_lengths(g: LengthGenerator, N: int) -> List:
    """
    First N cuff lengths of a generator at the current precision.

    A nonpositive first term (p log 1 = 0) is clamped to LENGTH_CLAMP_EPSILON;
    the criteria only look at tails.

    Args:
        g: The generator
        N: Number of terms, N >= 1

    Returns:
        List of N positive nondecreasing mpf values

    Raises:
        DomainError: on a nonpositive or decreasing value, naming the index
    """
    if N < 1:
        raise DomainError(f"need at least one term, got N={N}")
    eps = mp.mpf(LENGTH_CLAMP_EPSILON)
    out = []
    for n in range(1, N + 1):
        v = generator_value(g, n)
        if n == 1 and v <= 0 and g.kind != "explicit-list":
            logger.debug("clamping l_1 = %s to %s", v, eps)
            v = eps
        if v <= 0:
            raise DomainError(f"length at index {n} is not positive ({mp.nstr(v, 10)})", index=n)
        if out and v < out[-1]:
            raise DomainError(
                f"lengths decrease at index {n} ({mp.nstr(out[-1], 10)} -> {mp.nstr(v, 10)})",
                index=n,
            )
        out.append(v)
    return out


def expand_beta_lengths(g: LengthGenerator, N: int) -> List:
    """First N border lengths; zeros (punctures) and any order are allowed."""
    out = []
    for n in range(1, N + 1):
        if g.kind == "explicit-list" and g.values is not None and n > len(g.values):
            break
        v = generator_value(g, n)
        if v < 0:
            raise DomainError(f"beta length at index {n} is negative", index=n)
        out.append(v)
    return out


def _split(spec: str):
    head, _, rest = spec.partition(":")
    return head.strip().lower(), rest.strip()


def parse_inline_generator(spec: str, base_dir: Optional[Path] = None) -> LengthGenerator:
    """
    Parse a CLI generator expression.

    Examples:
        plog:2.5 -> p-log-n with p=2.5
        power:1:2 -> l_n = 1 * n^2
        exp:e -> l_n = e^n ; exp:2:0.5 -> 0.5 * 2^n
        const:3 -> l_n = 3
        pairs-of:plog:2 -> paired over p-log-n
        list:lengths.txt -> whitespace/comma separated values from a file
    """
    head, rest = _split(spec)
    try:
        if head == "plog":
            return LengthGenerator(kind="p-log-n", params={"p": rest})
        if head == "power":
            c, _, q = rest.partition(":")
            return LengthGenerator(kind="power", params={"c": c, "q": q or "1"})
        if head == "exp":
            base, _, c = rest.partition(":")
            return LengthGenerator(kind="exponential", params={"base": base or "e", "c": c or "1"})
        if head == "const":
            return LengthGenerator(kind="constant", params={"value": rest})
        if head == "pairs-of":
            return LengthGenerator(kind="paired", base=parse_inline_generator(rest, base_dir))
        if head == "list":
            path = Path(rest)
            if not path.is_absolute() and base_dir is not None:
                path = base_dir / path
            text = path.read_text()
            values = tuple(tok for tok in text.replace(",", " ").split() if tok)
            if not values:
                raise DomainError(f"length file {path} is empty")
            return LengthGenerator(kind="explicit-list", values=values)
    except OSError as e:
        raise DomainError(f"cannot read length file: {e}") from e
    raise DomainError(f"Unknown generator expression: {spec}")


def pattern_indices(spec: str, N: int) -> List[int]:
    """Half-twist indices within [1, N] for an inline pattern expression."""
    head, rest = _split(spec)
    if head == "none":
        return []
    if head == "all":
        return list(range(1, N + 1))
    if head == "list":
        try:
            return [int(tok) for tok in rest.replace(" ", "").split(",") if tok]
        except ValueError as e:
            raise DomainError(f"bad index list '{rest}'") from e
    if head == "factorial":
        out, k, f = [], 1, 1
        while f <= N:
            out.append(f)
            k += 1
            f *= k
        # 1! = 1 and 2! = 2, then 6, 24, ...
        return sorted(set(out))
    if head in ("powers", "adjacent-powers"):
        q = int(rest or 2)
        out, k = [], 1
        while k ** q <= N:
            out.append(k ** q)
            if head == "adjacent-powers" and k ** q + 1 <= N:
                out.append(k ** q + 1)
            k += 1
        return sorted(set(out))
    raise DomainError(f"Unknown pattern expression: {spec}")


def parse_inline_pattern(spec: str, N: int, declared_infinite: bool = True) -> TwistPattern:
    """Pattern for an inline expression; an empty pattern is never declared infinite."""
    indices = pattern_indices(spec, N)
    return TwistPattern(half_indices=tuple(indices), declared_infinite=declared_infinite and bool(indices))
