# FluteType data pipeline package
from .generators import (
    expand_lengths,
    expand_beta_lengths,
    parse_inline_generator,
    parse_inline_pattern,
    pattern_indices,
)
from .surface_loader import (
    flute_violations,
    validate_flute,
    parse_surface,
)

__all__ = [
    "expand_lengths",
    "expand_beta_lengths",
    "parse_inline_generator",
    "parse_inline_pattern",
    "pattern_indices",
    "flute_violations",
    "validate_flute",
    "parse_surface",
]
