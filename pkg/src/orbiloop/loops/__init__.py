"""Loop groupoids, inertia and the fiberwise group structure."""
from .loop_groupoid import (
    LoopGroupoid,
    LoopMultiplication,
    Sector,
    check_loop_of_map_multiplicative,
    check_loop_preserves_pullback,
    inertia_via_equalizer,
    inverse_loops,
    loop_groupoid,
    loop_groupoid_via_pullback,
    loop_multiply,
    loop_of_map,
    loop_of_map_on_pairs,
    pullback_comparison,
    unit_loops,
)
