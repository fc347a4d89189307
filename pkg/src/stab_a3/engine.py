"""Semistability, HN filtrations and the generalized metric at a chart point.

A chart point (m, phi) is realised as the pair (Z, Q) where Q is the heart generated by
the Ext-exceptional shifts of the chart objects in a phase window (t, t+1]
(see :func:`stab_a3.charts.canonical_heart`).  Membership of a shifted interval X in Q is
decided homologically: X lies in Q iff Hom^{<0}(T_i, X) = 0 and Hom^{<0}(X, T_i) = 0 for
all heart simples T_i.  Subobjects in Q are maps Y -> X whose cone again lies in Q.

HN filtrations in the whole derived category are computed by peeling: the stable
indecomposable A of largest phase with Hom(A, X) != 0 is the first Jordan-Hoelder factor
of the first HN factor, and cone(A -> X) carries the rest of the filtration.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .charts import (
    DEFAULT_TOL,
    CentralCharge,
    Heart,
    StabPoint,
    canonical_heart,
    chart,
    chart_contains,
    INTERIOR,
    lift_phase,
    to_central_charge,
)
from .exccol import LABELS
from .repcore import (
    INTERVALS,
    DerivedInterval,
    DimVector,
    Interval,
    cone,
    derived_hom,
    hom_degree,
)

MASS_TOL = 1e-12
PHASE_TOL = 1e-12
# HN factors closer in phase than this are one factor; covers round-off near walls
MERGE_TOL = 1e-7


class MassVanishes(ArithmeticError):
    pass


class NotPlaceable(RuntimeError):
    pass


class Ambiguous(RuntimeError):
    pass


@dataclass(frozen=True)
class HeartObject:
    obj: DerivedInterval
    support: FrozenSet[int]  # 1-based indices of heart simples
    coords: Tuple[int, int, int]


@dataclass(frozen=True)
class HNFactor:
    cls: DimVector
    phase: float
    mass: float


@dataclass(frozen=True)
class HNResult:
    factors: Tuple[HNFactor, ...]
    pieces: Tuple[DerivedInterval, ...] = field(default=(), compare=False)

    @property
    def phi_plus(self) -> float:
        return self.factors[0].phase

    @property
    def phi_minus(self) -> float:
        return self.factors[-1].phase

    @property
    def mass(self) -> float:
        return sum(f.mass for f in self.factors)

    def shifted(self, n: int) -> "HNResult":
        return HNResult(
            tuple(HNFactor(f.cls if n % 2 == 0 else -f.cls, f.phase + n, f.mass) for f in self.factors),
            tuple(p[n] for p in self.pieces),
        )


def _solve_int(basis: Sequence[DimVector], v: DimVector) -> Tuple[int, int, int]:
    """Coordinates of v in a unimodular basis (Cramer's rule, exact)."""
    def det(rows):
        (a, b, c), (d, e, f), (g, h, i) = rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)

    cols = [tuple(b) for b in basis]
    D = det([[cols[j][r] for j in range(3)] for r in range(3)])
    out = []
    for k in range(3):
        cs = list(cols)
        cs[k] = tuple(v)
        num = det([[cs[j][r] for j in range(3)] for r in range(3)])
        if num % D:
            raise ArithmeticError("basis is not unimodular")
        out.append(num // D)
    return tuple(out)


class Stability:
    """The stability condition at an interior chart point."""

    def __init__(self, point: StabPoint, tol: float = PHASE_TOL, mass_tol: float = MASS_TOL):
        self.point = point
        self.tol = tol
        self.mass_tol = mass_tol
        self.Z: CentralCharge = to_central_charge(point)
        self.heart: Heart = canonical_heart(point)
        self._simples = self.heart.simples
        self._simple_classes = [T.cls() for T in self._simples]
        self._status: Dict[Interval, tuple] = {}
        self._hn: Dict[DerivedInterval, HNResult] = {}

    # -- heart membership -------------------------------------------------
    def placement(self, w: Interval) -> Optional[int]:
        """The unique k with w[k] in the heart, or None."""
        return _placement(self.heart.objects, self.heart.pvec, w)

    def in_heart(self, X: DerivedInterval) -> bool:
        return self.placement(X.interval) == X.shift

    def heart_coords(self, X: DerivedInterval) -> Tuple[int, int, int]:
        return _solve_int(self._simple_classes, X.cls())

    def place_in_heart(self, w: Interval) -> Tuple[HeartObject, int]:
        k = self.placement(w)
        if k is None:
            raise NotPlaceable(f"no shift of {w} lies in the heart {self._simples}")
        X = DerivedInterval(w, k)
        c = self.heart_coords(X)
        if any(x not in (0, 1) for x in c):
            raise NotPlaceable(f"{X} has coordinates {c} in the heart simples")
        return HeartObject(X, frozenset(i + 1 for i, x in enumerate(c) if x), c), k

    def heart_phase(self, X: DerivedInterval) -> float:
        z = self.Z(X)
        if abs(z) < self.mass_tol:
            raise MassVanishes(f"|Z({X})| = {abs(z):.3g}")
        return lift_phase(z, self.heart.window + 0.5)

    def subobjects(self, X: DerivedInterval) -> List[DerivedInterval]:
        """Indecomposable proper nonzero subobjects of X in the heart."""
        out = []
        for w in INTERVALS:
            if w == X.interval:
                continue
            l = self.placement(w)
            if l is None:
                continue
            Y = DerivedInterval(w, l)
            if 0 not in derived_hom(Y, X):
                continue
            if all(self.in_heart(C) for C in cone(Y, X)):
                out.append(Y)
        return out

    # -- stability --------------------------------------------------------
    def status(self, w: Interval) -> tuple:
        """(kind, phase, mass) with kind in {'stable', 'semistable', 'unstable'}."""
        if w not in self._status:
            self._status[w] = self._compute_status(w)
        return self._status[w]

    def _compute_status(self, w: Interval) -> tuple:
        z = self.Z(w)
        if abs(z) < self.mass_tol:
            return ("unstable", None, 0.0)
        k = self.placement(w)
        if k is None:
            return ("unstable", None, abs(z))
        X = DerivedInterval(w, k)
        psi = self.heart_phase(X)
        subs = [self.heart_phase(Y) for Y in self.subobjects(X)
                if abs(self.Z(Y)) >= self.mass_tol]
        if any(s > psi + self.tol for s in subs):
            return ("unstable", None, abs(z))
        kind = "semistable" if any(s > psi - self.tol for s in subs) else "stable"
        return (kind, psi - k, abs(z))

    def semistable_phase(self, w: Interval) -> Optional[Tuple[float, float]]:
        if abs(self.Z(w)) < self.mass_tol:
            raise MassVanishes(f"|Z({w})| = {abs(self.Z(w)):.3g}")
        kind, phase, mass = self.status(w)
        return None if kind == "unstable" else (phase, mass)

    def is_stable(self, w: Interval) -> bool:
        return self.status(w)[0] == "stable"

    def stable_intervals(self) -> Dict[Interval, float]:
        return {w: self.status(w)[1] for w in INTERVALS if self.status(w)[0] == "stable"}

    # -- HN filtrations ---------------------------------------------------
    def hn_filtration(self, X) -> HNResult:
        if isinstance(X, Interval):
            X = DerivedInterval(X, 0)
        base = DerivedInterval(X.interval, 0)
        if base not in self._hn:
            self._hn[base] = self._peel(base)
        return self._hn[base].shifted(X.shift)

    def _peel(self, X: DerivedInterval) -> HNResult:
        stable = self.stable_intervals()
        rest: List[DerivedInterval] = [X]
        pieces: List[Tuple[DerivedInterval, float]] = []
        for _ in range(32):
            if not rest:
                break
            best = None
            for idx, Y in enumerate(rest):
                for w, ph in stable.items():
                    d = hom_degree(w, Y.interval)
                    if d is None:
                        continue
                    A = DerivedInterval(w, Y.shift - d)
                    phase = ph + A.shift
                    if best is None or phase > best[0] + 1e-12:
                        best = (phase, A, idx)
            if best is None:
                raise NotPlaceable(f"no stable object maps to {rest}")
            phase, A, idx = best
            Y = rest.pop(idx)
            rest.extend(cone(A, Y))
            pieces.append((A, phase))
        else:
            raise RuntimeError(f"HN peeling of {X} did not terminate")
        factors: List[HNFactor] = []
        for A, phase in pieces:
            m = abs(self.Z(A))
            if factors and abs(phase - factors[-1].phase) <= MERGE_TOL:
                f = factors[-1]
                cls = f.cls + A.cls()
                factors[-1] = HNFactor(cls, lift_phase(self.Z(cls), f.phase), f.mass + m)
            else:
                factors.append(HNFactor(A.cls(), phase, m))
        if any(b.phase >= a.phase for a, b in zip(factors, factors[1:])):
            raise AssertionError(f"HN phases of {X} not decreasing: {factors}")
        total = factors[0].cls
        for f in factors[1:]:
            total = total + f.cls
        if total != X.cls():
            raise AssertionError(f"HN classes of {X} do not add up")
        return HNResult(tuple(factors), tuple(A for A, _ in pieces))

    # -- comparisons ------------------------------------------------------
    def signature(self) -> Tuple[Tuple[float, float, float], ...]:
        out = []
        for w in INTERVALS:
            hn = self.hn_filtration(w)
            out.append((hn.phi_plus, hn.phi_minus, hn.mass))
        return tuple(out)

    def coords_in(self, label: str, tol: float = DEFAULT_TOL) -> Optional[StabPoint]:
        """Coordinates in another chart if this point lies in its interior."""
        c = chart(label)
        m, phi = [], []
        for w in c.objects:
            kind, ph, mass = self.status(w)
            if kind != "stable":
                return None
            m.append(mass)
            phi.append(ph)
        status, _ = chart_contains(c, m, phi, tol)
        if status != INTERIOR:
            return None
        return StabPoint(label, tuple(m), tuple(phi))


def chart_points(sigma: Stability) -> Dict[str, Tuple[StabPoint, float]]:
    """Coordinates of sigma in every chart whose objects are all stable, with min margins."""
    out = {}
    for label in LABELS:
        c = chart(label)
        if not all(sigma.is_stable(w) for w in c.objects):
            continue
        m = tuple(sigma.status(w)[2] for w in c.objects)
        phi = tuple(sigma.status(w)[1] for w in c.objects)
        out[label] = (StabPoint(label, m, phi), c.min_margin(phi))
    return out


def _placement(objects, pvec, w: Interval) -> Optional[int]:
    lo, hi = -math.inf, math.inf
    for E, p in zip(objects, pvec):
        d = hom_degree(E, w)
        if d is not None:
            hi = min(hi, d + p)
        d2 = hom_degree(w, E)
        if d2 is not None:
            lo = max(lo, p - d2)
    if lo > hi:
        return None
    if lo != hi:
        raise AssertionError(f"{w} fits the heart in several shifts ({lo}..{hi})")
    return int(lo)


def semistable_phase(w: Interval, point: StabPoint) -> Optional[Tuple[float, float]]:
    return Stability(point).semistable_phase(w)


def hn_filtration(X, point: StabPoint) -> HNResult:
    return Stability(point).hn_filtration(X)


def place_in_heart(w: Interval, point: StabPoint):
    return Stability(point).place_in_heart(w)


def subobject_supports(h: HeartObject, sigma: Stability) -> FrozenSet[FrozenSet[int]]:
    out = set()
    for Y in sigma.subobjects(h.obj):
        c = sigma.heart_coords(Y)
        out.add(frozenset(i + 1 for i, x in enumerate(c) if x))
    return frozenset(out)


def as_stability(p) -> Stability:
    return p if isinstance(p, Stability) else Stability(p)


def distance(p1, p2) -> float:
    """sup over nonzero objects of |d phi^-|, |d phi^+|, |log mass ratio|.

    Shifts act by translating both phases, and for a direct sum phi^+ / phi^- are the
    max / min over summands while the mass ratio is a mediant of the summand ratios, so
    the supremum is attained on one of the six intervals.
    """
    s1, s2 = as_stability(p1), as_stability(p2)
    d = 0.0
    for w in INTERVALS:
        a, b = s1.hn_filtration(w), s2.hn_filtration(w)
        if a.mass <= 0 or b.mass <= 0:
            return math.inf
        d = max(d, abs(a.phi_plus - b.phi_plus), abs(a.phi_minus - b.phi_minus),
                abs(math.log(b.mass) - math.log(a.mass)))
    return d


def same_condition(s1: Stability, s2: Stability, tol: float = 1e-7) -> bool:
    return all(abs(x - y) <= tol * max(1.0, abs(x))
               for a, b in zip(s1.signature(), s2.signature()) for x, y in zip(a, b))


def membership_and_coords(point, target: str, tol: float = DEFAULT_TOL) -> Optional[StabPoint]:
    """Coordinates of the same stability condition in ``target``'s chart, if it is interior."""
    if isinstance(point, Stability):
        return point.coords_in(target, tol)
    status, _ = chart_contains(chart(point.chart), point.m, point.phi, tol)
    if status == INTERIOR:
        return Stability(point).coords_in(target, tol)
    for sigma in locate(point, tol):
        if sigma.point.chart == target:
            return sigma.point
    return None


def _lift_candidates(z: complex, lo: float, hi: float) -> List[float]:
    base = lift_phase(z, lo)
    while base < lo:
        base += 2
    out = []
    while base <= hi:
        out.append(base)
        base += 2
    return out


def locate(point: StabPoint, tol: float = DEFAULT_TOL, spread: float = 3.0,
           phase_tol: float = 1e-7) -> List[Stability]:
    """Every chart interior containing the stability condition with chart data ``point``.

    ``point`` may lie on the boundary of its own chart; the condition is then characterised
    as the one in which the chart objects are semistable with phases phi.  One
    representative per chart is returned; all of them describe the same condition.
    """
    Z = to_central_charge(point)
    own = chart(point.chart).objects
    lo, hi = min(point.phi) - spread, max(point.phi) + spread
    found: List[Stability] = []
    for label in LABELS:
        c = chart(label)
        zs = [Z(w) for w in c.objects]
        if min(abs(z) for z in zs) < MASS_TOL:
            continue
        lifts = [_lift_candidates(z, lo, hi) for z in zs]
        best = None
        for phi in itertools.product(*lifts):
            margin = c.min_margin(phi)
            if margin <= tol:
                continue
            sigma = Stability(StabPoint(label, tuple(abs(z) for z in zs), tuple(phi)))
            ok = True
            for w, target in zip(own, point.phi):
                st = sigma.status(w)
                if st[0] == "unstable" or abs(st[1] - target) > phase_tol:
                    ok = False
                    break
            if ok and (best is None or margin > best[0]):
                best = (margin, sigma)
        if best is not None:
            found.append(best[1])
    for s in found[1:]:
        if not same_condition(found[0], s):
            raise Ambiguous(f"inequivalent conditions found for {point}")
    return found


def interior_margin(sigma: Stability) -> float:
    return chart(sigma.point.chart).min_margin(sigma.point.phi)
