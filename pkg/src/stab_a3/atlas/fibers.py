"""Fibers of the central charge map, their transport along paths, and monodromy.

A stability condition sigma belongs to the window [lo, hi] when every HN phase of the six
intervals lies in [lo, hi].  Such a sigma lies in some chart whose objects are stable
intervals, so their phases are in the window too; enumerating the phase branches of
every chart inside the window therefore finds the whole windowed fiber.

Along a path of charges every HN phase phi^{+/-}(S_x) moves by at most the largest total
variation of arg Z(S_y) / pi, since it is always the phase of some stable shifted interval.
That bound is what makes the transport check meaningful at the window edges.
"""
from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from ..charts import CentralCharge, StabPoint, chart, principal_phase
from ..engine import Stability, chart_points, distance, same_condition
from ..exccol import LABELS
from ..repcore import INTERVALS
from .hyperplanes import charges, hyperplane_id
from .paths import COMPLETE, Ambiguous, ChargePath, HitHyperplane, lift_path
from .surjectivity import surjectivity_lifts

FIBER_MARGIN = 1e-9


class NonGenericCharge(ValueError):
    pass


def check_generic(Z: CentralCharge, tol: float = 1e-9) -> None:
    hit = hyperplane_id(Z, tol)
    if hit:
        raise NonGenericCharge(f"charge lies on L_{sorted(hit)}")
    ph = [principal_phase(z) for z in charges(Z)]
    for a, b in itertools.combinations(range(6), 2):
        d = abs((ph[a] - ph[b] + 1) % 2 - 1)
        if d < tol:
            raise NonGenericCharge(
                f"Z({INTERVALS[a].name}) and Z({INTERVALS[b].name}) are positively proportional")


def phase_range(sigma: Stability) -> Tuple[float, float]:
    lo, hi = math.inf, -math.inf
    for w in INTERVALS:
        hn = sigma.hn_filtration(w)
        lo, hi = min(lo, hn.phi_minus), max(hi, hn.phi_plus)
    return lo, hi


def _branches(z: complex, lo: float, hi: float) -> List[float]:
    f = principal_phase(z)
    f += 2 * math.ceil((lo - f) / 2)
    out = []
    while f <= hi:
        out.append(f)
        f += 2
    return out


def canonical_point(sigma: Stability) -> StabPoint:
    """sigma in the chart where it sits deepest (ties broken by label order)."""
    pts = chart_points(sigma)
    label = max(pts, key=lambda lab: (round(pts[lab][1], 9), -LABELS.index(lab)))
    return pts[label][0]


def fiber(Z: CentralCharge, window: Tuple[float, float] = (-2.0, 4.0), generic: bool = True,
          tol: float = 1e-9) -> List[StabPoint]:
    """All stability conditions over Z with every HN phase of the six intervals in the window."""
    if generic:
        check_generic(Z)
    lo, hi = window
    found: List[Tuple[Stability, Tuple[float, float]]] = []
    for label in LABELS:
        c = chart(label)
        zs = [Z(w) for w in c.objects]
        if min(abs(z) for z in zs) < 1e-12:
            continue
        for phi in itertools.product(*[_branches(z, lo, hi) for z in zs]):
            if c.min_margin(phi) <= FIBER_MARGIN:
                continue
            sigma = Stability(StabPoint(label, tuple(abs(z) for z in zs), phi))
            rng = phase_range(sigma)
            if rng[0] < lo - tol or rng[1] > hi + tol:
                continue
            if any(abs(r[0] - rng[0]) < 1e-6 and same_condition(s, sigma) for s, r in found):
                continue
            found.append((sigma, rng))
    found.sort(key=lambda item: (item[1][0], item[1][1]))
    return [canonical_point(s) for s, _ in found]


def index_of(p: StabPoint, points: Sequence[StabPoint]) -> Optional[int]:
    s = Stability(p)
    for i, q in enumerate(points):
        if same_condition(s, Stability(q)):
            return i
    return None


def deck_orbits(points: Sequence[StabPoint]) -> List[List[int]]:
    """Group fiber elements into orbits of the even shift [2]."""
    sig = [Stability(p) for p in points]
    ranges = [phase_range(s) for s in sig]
    parent = list(range(len(points)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in itertools.combinations(range(len(points)), 2):
        d = ranges[j][0] - ranges[i][0]
        n = round(d)
        if n == 0 or n % 2 or abs(d - n) > 1e-6:
            continue
        if same_condition(Stability(points[i].shifted(n)), sig[j]):
            parent[find(j)] = find(i)
    groups: Dict[int, List[int]] = {}
    for i in range(len(points)):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def monodromy(loop: ChargePath, base: StabPoint, **kw) -> StabPoint:
    if not loop.is_closed(1e-9):
        raise ValueError("monodromy needs a closed path")
    trace = lift_path(loop, base, **kw)
    if trace.status != COMPLETE:
        if trace.hit is not None:
            raise HitHyperplane(*trace.hit)
        raise Ambiguous(trace.message)
    return trace.end


@dataclass
class TransportReport:
    size: int
    drift: float
    complete: bool
    injective: bool
    into: bool  # every image lies in the widened end fiber
    onto: bool  # the shrunken end fiber is covered by the images
    inverse: bool  # transporting back returns every element
    images: List[Optional[int]]

    @property
    def bijective(self) -> bool:
        return self.complete and self.injective and self.into and self.onto and self.inverse


def fiber_transport(path: ChargePath, window: Tuple[float, float] = (0.0, 3.0)) -> TransportReport:
    """Carry the windowed fiber over path(0) to path(1) and compare with the fiber there."""
    lo, hi = window
    drift = path.arg_variation() + 1e-6
    start = fiber(path(0.0), window)
    wide = fiber(path(1.0), (lo - drift, hi + drift))
    inner = fiber(path(1.0), (lo + drift, hi - drift)) if hi - lo > 2 * drift else []
    ends, complete, inverse = [], True, True
    back_path = path.reversed()
    for p in start:
        tr = lift_path(path, p)
        if tr.status != COMPLETE:
            complete = False
            ends.append(None)
            continue
        ends.append(tr.end)
        back = lift_path(back_path, tr.end)
        if back.status != COMPLETE or not same_condition(Stability(back.end), Stability(p)):
            inverse = False
    images = [None if e is None else index_of(e, wide) for e in ends]
    into = all(i is not None for i in images)
    injective = len({i for i in images if i is not None}) == sum(i is not None for i in images)
    onto = all(index_of(q, [e for e in ends if e is not None]) is not None for q in inner)
    return TransportReport(len(start), drift, complete, injective, into, onto, inverse, images)


def point_on_hyperplane(index: int, rng, min_mass: float = 0.3) -> CentralCharge:
    """A random charge on L_index and on no other L_j, with no other degeneracy."""
    w = INTERVALS[index - 1]
    while True:
        z = [complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(3)]
        z[w.hi - 1] = -sum(z[k - 1] for k in range(w.lo, w.hi))
        Z = CentralCharge.of(z)
        vals = charges(Z)
        rest = [v for k, v in enumerate(vals) if k != index - 1]
        if min(abs(v) for v in rest) < min_mass:
            continue
        # on L_x some charges coincide identically; only distinct ones must be apart
        distinct = []
        for v in rest:
            if all(abs(v - u) > 1e-12 for u in distinct):
                distinct.append(v)
        ph = [principal_phase(v) for v in distinct]
        if all(abs((a - b + 1) % 2 - 1) > 0.05 for a, b in itertools.combinations(ph, 2)):
            return Z


def small_loop(Z0: CentralCharge, index: int, radius: float, vertices: int = 96) -> ChargePath:
    """A loop of the given radius around Z0 along which Z(S_x) circles 0 once."""
    w = INTERVALS[index - 1]
    pts = []
    for k in range(vertices + 1):
        u = radius * cmath.exp(2j * math.pi * k / vertices)
        z = list(Z0)
        z[w.hi - 1] += u
        pts.append(tuple(z))
    pts[-1] = pts[0]
    return ChargePath(pts, resolution=200)


@dataclass
class WitnessReport:
    index: int
    charge: CentralCharge
    radius: float
    start: StabPoint
    end: Optional[StabPoint]
    closed: bool
    phase_shift: Optional[float]  # change of the phase of S_x over one loop
    gap: float  # distance between the start lift and the end of the lifted loop

    @property
    def detected(self) -> bool:
        return self.end is not None and not self.closed


def non_covering_witness(index: int, rng, radius: float = 1e-2) -> WitnessReport:
    """A loop inside a small ball around a point of L_index whose lift does not close up.

    The ball is contractible, so over an evenly covered neighbourhood every such lift would
    close; an open lift shows the map is not a covering near that point of L_index.
    """
    Z0 = point_on_hyperplane(index, rng)
    loop = small_loop(Z0, index, radius)
    w = INTERVALS[index - 1]
    lifts = [l for l in surjectivity_lifts(loop(0.0)) if w in chart(l.chart).objects]
    start = lifts[0].point if lifts else surjectivity_lifts(loop(0.0))[0].point
    trace = lift_path(loop, start)
    if trace.status != COMPLETE:
        return WitnessReport(index, Z0, radius, start, None, False, None, math.nan)
    s0, s1 = Stability(start), Stability(trace.end)
    closed = same_condition(s0, s1)
    shift = None
    if s0.is_stable(w) and s1.is_stable(w):
        shift = s1.status(w)[1] - s0.status(w)[1]
    return WitnessReport(index, Z0, radius, start, trace.end, closed, shift, distance(s0, s1))
