"""Explicit preimages of central charges.

In every chart the inequalities only bound later phases from below
(phi_j > phi_i - alpha_ij for i < j), so once the three chart objects have nonzero
charge the phases can be chosen greedily: phi_1 is the lift of arg Z(E_1) in (0, 2],
and each later phi_j is the smallest lift above all of its lower bounds (and above 0).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from ..charts import (
    CentralCharge,
    StabPoint,
    canonical_heart,
    chart,
    principal_phase,
)
from ..exccol import LABELS
from .hyperplanes import ZeroCharge, hyperplane_id

LIFT_MARGIN = 1e-9


@dataclass(frozen=True)
class Lift:
    point: StabPoint
    pvec: Tuple[int, int, int]

    @property
    def chart(self) -> str:
        return self.point.chart

    @property
    def phases(self) -> Tuple[float, float, float]:
        return self.point.phi


def _lift_above(z: complex, bound: float, margin: float) -> float:
    f = principal_phase(z)
    f += 2 * ((bound - f) // 2)
    while f <= bound + margin:
        f += 2
    return f


def greedy_lift(Z: CentralCharge, label: str, mass_tol: float = 1e-12,
                margin: float = LIFT_MARGIN) -> Optional[StabPoint]:
    c = chart(label)
    zs = [Z(w) for w in c.objects]
    if min(abs(z) for z in zs) < mass_tol:
        return None
    phi: List[float] = []
    for j, z in enumerate(zs):
        bound = 0.0
        for i in range(j):
            a = c.amat[(i, j)]
            if a is not None:
                bound = max(bound, phi[i] - a)
        phi.append(_lift_above(z, bound, margin if j else 0.0))
    return StabPoint(label, tuple(abs(z) for z in zs), tuple(phi))


def surjectivity_lifts(Z: CentralCharge, tol: float = 1e-12) -> List[Lift]:
    """The normalised lift in every chart whose objects have nonzero charge."""
    hyperplane_id(Z, tol)
    out = []
    for label in LABELS:
        p = greedy_lift(Z, label, tol)
        if p is not None:
            out.append(Lift(p, canonical_heart(p).pvec))
    return out


def surjectivity_lift(Z: CentralCharge, tol: float = 1e-12) -> Lift:
    """The lift in the first chart (A..L order) that admits one."""
    lifts = surjectivity_lifts(Z, tol)
    if not lifts:
        raise ZeroCharge(f"no chart has three nonzero charges at {Z}")
    return lifts[0]
