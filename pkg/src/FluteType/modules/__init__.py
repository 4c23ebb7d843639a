# FluteType modules package
from src.FluteType.modules.hyp_core import (
    BoundaryPoint,
    Geodesic,
    MobiusMap,
    cross_ratio,
    shear_of_edge,
    disjoint_geodesic_distance,
    cayley_chord,
)
from src.FluteType.modules.shear_seq import eta_length, even_shear, odd_shear, shear_sequence
from src.FluteType.modules.divergence import divergence_classify
from src.FluteType.modules.type_criterion import (
    alternating_sums,
    horocyclic_lengths,
    concavity_check,
    classify_flute,
)
from src.FluteType.modules.limit_polygon import develop_next_vertex, develop_chain, accumulation_gap
from src.FluteType.modules.render import RenderOptions, render_disk
from src.FluteType.modules.end_tree import classify_end, classify_surface
from src.FluteType.modules.synthesizer import (
    raise_lengths,
    lower_lengths,
    choose_pattern,
    pattern_from_plateaus,
    synthesize_tree,
)

__all__ = [
    'BoundaryPoint', 'Geodesic', 'MobiusMap', 'cross_ratio', 'shear_of_edge',
    'disjoint_geodesic_distance', 'cayley_chord',
    'eta_length', 'even_shear', 'odd_shear', 'shear_sequence',
    'divergence_classify',
    'alternating_sums', 'horocyclic_lengths', 'concavity_check', 'classify_flute',
    'develop_next_vertex', 'develop_chain', 'accumulation_gap',
    'RenderOptions', 'render_disk',
    'classify_end', 'classify_surface',
    'raise_lengths', 'lower_lengths', 'choose_pattern', 'pattern_from_plateaus', 'synthesize_tree',
]
