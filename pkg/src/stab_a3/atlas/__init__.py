"""Glued atlas of the twelve charts: hyperplanes, lifts, facet census, paths and fibers."""
from .hyperplanes import ZeroCharge, hyperplane_id, HYPERPLANES
from .surjectivity import Lift, surjectivity_lift, surjectivity_lifts
from .census import (
    CensusCell,
    UncoveredFacetPoint,
    chart_relations,
    closedness_census,
    facet_census,
    facet_cells,
    sample_facet_point,
)
from .paths import (
    Ambiguous,
    ChargePath,
    HitHyperplane,
    LiftEvent,
    LiftTrace,
    lift_path,
    load_path,
    trace_to_csv,
    trace_to_json,
)
from .fibers import (
    NonGenericCharge,
    fiber,
    fiber_transport,
    monodromy,
    non_covering_witness,
)

__all__ = [
    "ZeroCharge", "hyperplane_id", "HYPERPLANES",
    "Lift", "surjectivity_lift", "surjectivity_lifts",
    "CensusCell", "UncoveredFacetPoint", "chart_relations", "closedness_census",
    "facet_census", "facet_cells", "sample_facet_point",
    "Ambiguous", "ChargePath", "HitHyperplane", "LiftEvent", "LiftTrace", "lift_path",
    "load_path", "trace_to_csv", "trace_to_json",
    "NonGenericCharge", "fiber", "fiber_transport", "monodromy", "non_covering_witness",
]
