"""Lifting paths of central charges to the atlas of charts.

Inside a chart the lift is (m_i, phi_i) = (|Z(E_i)|, continued arg Z(E_i) / pi).  When a
chart inequality is about to fail, the crossing time is localised by bisection, the
crossing point is located in the interior of another chart and the lift carries on there.
Paths are polylines in C^3, so the distance of each interval charge to 0 along a segment
is minimised in closed form; that is how hyperplane hits are found and timed.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from ..charts import (
    CentralCharge,
    StabPoint,
    chart,
    lift_phase,
    to_central_charge,
)
from ..engine import Ambiguous, Stability, chart_points, locate, same_condition
from ..repcore import INTERVALS
from .hyperplanes import min_interval_mass

COMPLETE, HIT, AMBIGUOUS = "Complete", "HitHyperplane", "Ambiguous"


class HitHyperplane(RuntimeError):
    def __init__(self, index: int, t: float):
        super().__init__(f"path meets L_{index} at t = {t:.12g}")
        self.index = index
        self.t = t


class ChargePath:
    """Polyline t in [0, 1] -> C^3 through ``vertices``, uniform in t per segment."""

    def __init__(self, vertices: Sequence, resolution: int = 1000):
        self.vertices = [tuple(complex(z) for z in v) for v in vertices]
        if len(self.vertices) < 2:
            raise ValueError("a path needs at least two vertices")
        self.resolution = resolution

    @property
    def segments(self) -> int:
        return len(self.vertices) - 1

    def locate_t(self, t: float) -> Tuple[int, float]:
        t = min(max(t, 0.0), 1.0)
        s = min(int(t * self.segments), self.segments - 1)
        return s, t * self.segments - s

    def __call__(self, t: float) -> CentralCharge:
        s, u = self.locate_t(t)
        a, b = self.vertices[s], self.vertices[s + 1]
        return CentralCharge.of([x + u * (y - x) for x, y in zip(a, b)])

    def reversed(self) -> "ChargePath":
        return ChargePath(self.vertices[::-1], self.resolution)

    def then(self, other: "ChargePath") -> "ChargePath":
        return ChargePath(self.vertices + other.vertices[1:], max(self.resolution, other.resolution))

    def is_closed(self, tol: float = 1e-12) -> bool:
        return all(abs(a - b) <= tol for a, b in zip(self.vertices[0], self.vertices[-1]))

    def closest_approach(self) -> Tuple[float, int, float]:
        """(min over the path of min_x |Z(S_x)|, hyperplane index, first time attaining it)."""
        best = (float("inf"), 0, 0.0)
        n = self.segments
        for s in range(n):
            a, b = self.vertices[s], self.vertices[s + 1]
            for k, w in enumerate(INTERVALS):
                v = w.dimvec()
                z0 = sum(c * x for c, x in zip(v, a))
                z1 = sum(c * x for c, x in zip(v, b))
                d = z1 - z0
                u = 0.0 if abs(d) == 0 else min(max(-(z0 * d.conjugate()).real / abs(d) ** 2, 0.0), 1.0)
                val = abs(z0 + u * d)
                if val < best[0] - 1e-15:
                    best = (val, k + 1, (s + u) / n)
        return best

    def first_hit(self, tol: float) -> Optional[Tuple[int, float]]:
        n = self.segments
        for s in range(n):
            a, b = self.vertices[s], self.vertices[s + 1]
            hits = []
            for k, w in enumerate(INTERVALS):
                v = w.dimvec()
                z0 = sum(c * x for c, x in zip(v, a))
                z1 = sum(c * x for c, x in zip(v, b))
                d = z1 - z0
                u = 0.0 if abs(d) == 0 else min(max(-(z0 * d.conjugate()).real / abs(d) ** 2, 0.0), 1.0)
                if abs(z0 + u * d) < tol:
                    hits.append(((s + u) / n, k + 1))
            if hits:
                t, k = min(hits)
                return k, t
        return None

    def arg_variation(self, samples_per_segment: int = 200) -> float:
        """Largest total variation of arg Z(S_x) / pi over the six intervals."""
        import cmath
        import math
        worst = 0.0
        for w in INTERVALS:
            v = w.dimvec()
            tv, prev = 0.0, None
            for s in range(self.segments):
                a, b = self.vertices[s], self.vertices[s + 1]
                for j in range(samples_per_segment + 1):
                    u = j / samples_per_segment
                    z = sum(c * (x + u * (y - x)) for c, x, y in zip(v, a, b))
                    ph = cmath.phase(z) / math.pi
                    if prev is not None:
                        dphi = (ph - prev + 1) % 2 - 1
                        tv += abs(dphi)
                    prev = ph
            worst = max(worst, tv)
        return worst

    def to_json(self) -> dict:
        return {"resolution": self.resolution,
                "points": [[{"re": z.real, "im": z.imag} for z in v] for v in self.vertices]}


def load_path(source) -> ChargePath:
    """Path from a JSON document: {"points": [[{re, im} x3], ...], "resolution": n} or a bare list."""
    data = json.loads(source) if isinstance(source, str) else source
    if isinstance(data, list):
        data = {"points": data}
    pts = []
    for v in data["points"]:
        if len(v) != 3:
            raise ValueError("each path point needs three complex charges")
        pts.append([complex(z["re"], z["im"]) if isinstance(z, dict) else complex(*z) for z in v])
    return ChargePath(pts, int(data.get("resolution", 1000)))


@dataclass(frozen=True)
class LiftEvent:
    t: float
    chart: str
    point: StabPoint
    facet: Optional[Tuple[str, Tuple[int, int]]] = None  # (left chart, 0-based pair)
    before: Optional[StabPoint] = None

    def to_json(self) -> dict:
        return {
            "t": self.t,
            "chart": self.chart,
            "m": list(self.point.m),
            "phi": list(self.point.phi),
            "facet": None if self.facet is None else
            {"chart": self.facet[0], "pair": [self.facet[1][0] + 1, self.facet[1][1] + 1]},
        }


@dataclass
class LiftTrace:
    events: List[LiftEvent] = field(default_factory=list)
    status: str = COMPLETE
    hit: Optional[Tuple[int, float]] = None
    message: str = ""

    @property
    def end(self) -> StabPoint:
        return self.events[-1].point

    @property
    def crossings(self) -> List[LiftEvent]:
        return [e for e in self.events if e.facet is not None]

    @property
    def charts(self) -> List[str]:
        out = []
        for e in self.events:
            if not out or out[-1] != e.chart:
                out.append(e.chart)
        return out

    @classmethod
    def from_json(cls, doc) -> "LiftTrace":
        data = json.loads(doc) if isinstance(doc, str) else doc
        events = []
        for e in data["events"]:
            f = e.get("facet")
            facet = None if f is None else (f["chart"], (f["pair"][0] - 1, f["pair"][1] - 1))
            events.append(LiftEvent(e["t"], e["chart"], StabPoint(e["chart"], tuple(e["m"]), tuple(e["phi"])), facet))
        hit = data.get("hit")
        return cls(events, data["status"], None if hit is None else (hit["hyperplane"], hit["t"]),
                   data.get("message", ""))

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "hit": None if self.hit is None else {"hyperplane": self.hit[0], "t": self.hit[1]},
            "message": self.message,
            "events": [e.to_json() for e in self.events],
        }


def trace_to_json(trace: LiftTrace) -> str:
    return json.dumps(trace.to_json(), indent=2)


def trace_to_csv(trace: LiftTrace) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "chart", "m1", "m2", "m3", "phi1", "phi2", "phi3", "facet_chart", "facet_pair"])
    for e in trace.events:
        fc, fp = ("", "") if e.facet is None else (e.facet[0], f"{e.facet[1][0] + 1}{e.facet[1][1] + 1}")
        w.writerow([repr(e.t), e.chart, *map(repr, e.point.m), *map(repr, e.point.phi), fc, fp])
    return buf.getvalue()


def _advance(label: str, phi: Sequence[float], Z: CentralCharge) -> StabPoint:
    objs = chart(label).objects
    zs = [Z(w) for w in objs]
    return StabPoint(label, tuple(abs(z) for z in zs),
                     tuple(lift_phase(z, f) for z, f in zip(zs, phi)))


def _margin(p: StabPoint) -> Tuple[float, Tuple[int, int]]:
    margins = chart(p.chart).margins(p.phi)
    pair = min(margins, key=margins.get)
    return margins[pair], pair


def _switch(p: StabPoint, t: float, need: float) -> StabPoint:
    """Coordinates of the condition p in the chart where it sits deepest (other than p's)."""
    sigma = Stability(p)
    options = {lab: v for lab, v in chart_points(sigma).items() if lab != p.chart}
    if not options:
        raise Ambiguous(f"near-facet point at t = {t:.9g} lies in no other chart")
    label = max(options, key=lambda lab: options[lab][1])
    point, margin = options[label]
    if margin < need:
        raise Ambiguous(f"no chart contains the facet point at t = {t:.9g} with a safe margin")
    return point


def _bisect(path, p_lo: StabPoint, lo: float, hi: float, target: float, tol: float):
    """Largest t in [lo, hi] (to bisection accuracy) with margin > target; margin(hi) <= target."""
    while hi - lo > 1e-15:
        mid = (lo + hi) / 2
        p_mid = _advance(p_lo.chart, p_lo.phi, path(mid))
        g_mid = _margin(p_mid)[0]
        if g_mid > target:
            lo, p_lo = mid, p_mid
            if g_mid - target <= tol:
                break
        else:
            hi = mid
    return lo, p_lo


def _crossing_time(path, p: StabPoint, t: float, t_stop: float, tol: float, step: float,
                   max_dphi: float) -> Optional[float]:
    """Continue p in its own chart until its margin reaches 0; the time, or None if it never does."""
    cur = p
    while t < t_stop:
        dt = min(step, t_stop - t)
        while True:
            nxt = _advance(cur.chart, cur.phi, path(t + dt))
            if max(abs(a - b) for a, b in zip(nxt.phi, cur.phi)) <= max_dphi or dt < 1e-14:
                break
            dt /= 2
        if _margin(nxt)[0] <= 0:
            return _bisect(path, cur, t, t + dt, 0.0, tol)[0]
        cur, t = nxt, t + dt
    return None


def lift_path(path: ChargePath, start: StabPoint, tol: float = 1e-9, hit_tol: float = 1e-9,
              max_dphi: float = 0.02, start_tol: float = 1e-9, switch_margin: float = 1e-7,
              hit_guard: float = 1e-6) -> LiftTrace:
    """Continue ``start`` along ``path``; path-level failures are reported in the trace status.

    A chart is left once its smallest margin drops to ``switch_margin``: the condition there
    is still an interior point, and it is re-expressed in the chart where it sits deepest.
    The event time is the crossing of the old facet (|g| <= tol), found by continuing the
    old coordinates; a facet that is only grazed gives an event without a facet.
    When the path meets some L_i, a breakdown of the lift where an interval mass has
    already fallen below ``hit_guard`` is reported as the hit rather than as ambiguity.
    """
    trace = LiftTrace()
    z0 = to_central_charge(start)
    if max(abs(a - b) for a, b in zip(z0, path(0.0))) > start_tol * max(1.0, path(0.0).norm()):
        raise ValueError("start point does not lie over path(0)")
    m0 = chart(start.chart).min_margin(start.phi)
    if m0 <= 0:
        found = locate(start)
        if not found:
            raise ValueError(f"{start} is not a stability condition")
        start = max((s.point for s in found), key=lambda q: chart(q.chart).min_margin(q.phi))
    elif m0 <= switch_margin:
        start = _switch(start, 0.0, 10 * switch_margin)
    cur = start
    trace.events.append(LiftEvent(0.0, cur.chart, cur))
    hit = path.first_hit(hit_tol)
    t_end = 1.0 if hit is None else hit[1]
    dt0 = 1.0 / (path.resolution * path.segments)
    t = 0.0
    while t < t_end:
        dt = min(dt0, t_end - t)
        while True:
            nxt = _advance(cur.chart, cur.phi, path(t + dt))
            if max(abs(a - b) for a, b in zip(nxt.phi, cur.phi)) <= max_dphi or dt < 1e-14:
                break
            dt /= 2
        g, pair = _margin(nxt)
        if g > switch_margin:
            cur, t = nxt, t + dt
            continue
        t_s, p_s = _bisect(path, cur, t, t + dt, switch_margin, switch_margin / 2)
        pair = _margin(p_s)[1]
        t_c = _crossing_time(path, p_s, t_s, min(t_end, t_s + 10 * dt0), tol, dt0 / 10, max_dphi)
        try:
            new = _switch(p_s, t_s, 10 * switch_margin)
        except Ambiguous as exc:
            trace.events.append(LiftEvent(t_s, p_s.chart, p_s))
            if hit is not None and min_interval_mass(path(t_s))[0] < hit_guard:
                break
            trace.status, trace.message = AMBIGUOUS, str(exc)
            return trace
        if t_c is not None:
            at_c = _advance(new.chart, new.phi, path(t_c))
            trace.events.append(LiftEvent(t_c, new.chart, at_c, (cur.chart, pair), p_s))
        else:
            trace.events.append(LiftEvent(t_s, new.chart, new, None, p_s))
        cur, t = new, t_s
        if len(trace.events) > 100000:
            trace.status, trace.message = AMBIGUOUS, "too many chart switches"
            return trace
    if hit is not None:
        trace.status, trace.hit = HIT, hit
        trace.message = f"path meets L_{hit[0]} at t = {hit[1]:.12g}"
        if trace.events[-1].t < t:
            trace.events.append(LiftEvent(t, cur.chart, cur))
        return trace
    trace.events.append(LiftEvent(1.0, cur.chart, _advance(cur.chart, cur.phi, path(1.0))))
    return trace


def verify_crossings(trace: LiftTrace) -> bool:
    """Each crossing's two coordinate descriptions name the same stability condition."""
    for e in trace.events:
        if e.before is None:
            continue
        z = to_central_charge(e.before)
        after = _advance(e.chart, e.point.phi, z)
        if not same_condition(Stability(e.before), Stability(after)):
            return False
    return True
