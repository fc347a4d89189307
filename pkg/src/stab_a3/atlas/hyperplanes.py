"""The six hyperplanes L_1..L_6 = {Z(S_x) = 0} in Hom(K(A3), C)."""
from __future__ import annotations

from typing import FrozenSet, Tuple

from ..charts import CentralCharge
from ..repcore import INTERVALS, Interval

# L_1..L_6 in the order S1, S2, S3, S12, S23, S123
HYPERPLANES: Tuple[Interval, ...] = INTERVALS


class ZeroCharge(ValueError):
    pass


def charges(Z: CentralCharge) -> Tuple[complex, ...]:
    return tuple(Z(w) for w in HYPERPLANES)


def hyperplane_id(Z: CentralCharge, tol: float = 1e-12) -> FrozenSet[int]:
    """1-based indices i with Z in L_i (up to tol)."""
    vals = charges(Z)
    if all(abs(v) < tol for v in vals):
        raise ZeroCharge("central charge vanishes on every class")
    return frozenset(i + 1 for i, v in enumerate(vals) if abs(v) < tol)


def min_interval_mass(Z: CentralCharge) -> Tuple[float, int]:
    """(smallest |Z(S_x)|, its 1-based hyperplane index)."""
    vals = [abs(v) for v in charges(Z)]
    i = min(range(6), key=vals.__getitem__)
    return vals[i], i + 1
