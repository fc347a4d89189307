"""Bridgeland stability conditions on D^b(A3): exceptional collections, Macri charts,
an HN engine, and the glued atlas of the twelve charts over the central charge space."""
from .repcore import INTERVALS, Interval, DerivedInterval, interval, hom_ext, derived_hom
from .exccol import LABELS, enumerate_sequences, araya_classes, mutation_graph, representative
from .charts import CentralCharge, StabPoint, chart, canonical_heart, to_central_charge
from .engine import Stability, distance, hn_filtration, locate, membership_and_coords

__version__ = "0.1.0"

__all__ = [
    "INTERVALS", "Interval", "DerivedInterval", "interval", "hom_ext", "derived_hom",
    "LABELS", "enumerate_sequences", "araya_classes", "mutation_graph", "representative",
    "CentralCharge", "StabPoint", "chart", "canonical_heart", "to_central_charge",
    "Stability", "distance", "hn_filtration", "locate", "membership_and_coords",
]
