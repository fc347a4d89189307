"""Macri charts: k- and alpha-matrices, chart inequalities, coordinates and hearts."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .exccol import LABELS, ExcSequence, representative
from .repcore import DerivedInterval, DimVector, Interval, derived_hom, hom_degree

PAIRS = ((0, 1), (1, 2), (0, 2))
DEFAULT_TOL = 1e-9


class NonPositiveMass(ValueError):
    pass


class NotExtExceptional(RuntimeError):
    pass


def k_matrix(s: ExcSequence) -> Dict[Tuple[int, int], Optional[int]]:
    """k_{i,j} for i < j (0-based); None stands for +infinity."""
    return {(i, j): hom_degree(s[i], s[j]) for (i, j) in PAIRS}


def _add(a: Optional[int], b: Optional[int]) -> Optional[int]:
    return None if a is None or b is None else a + b


def _min(*vals: Optional[int]) -> Optional[int]:
    finite = [v for v in vals if v is not None]
    return min(finite) if finite else None


def alpha_matrix(s: ExcSequence) -> Tuple[Dict[Tuple[int, int], Optional[int]], str]:
    k = k_matrix(s)
    chain = _add(k[(0, 1)], k[(1, 2)])
    alpha = {
        (0, 1): k[(0, 1)],
        (1, 2): k[(1, 2)],
        (0, 2): _min(k[(0, 2)], None if chain is None else chain - 1),
    }
    if k[(0, 1)] is None:
        tag = "IV"
    elif k[(1, 2)] is None:
        tag = "III"
    elif k[(0, 2)] is None:
        tag = "I"
    else:
        tag = "II"
    return alpha, tag


@dataclass(frozen=True)
class ChartSpec:
    sequence: ExcSequence
    kmat: Dict[Tuple[int, int], Optional[int]]
    amat: Dict[Tuple[int, int], Optional[int]]
    type_tag: str

    @property
    def label(self) -> str:
        return self.sequence.label

    @property
    def objects(self) -> Tuple[Interval, Interval, Interval]:
        return self.sequence.objects

    def facets(self) -> List[Tuple[int, int]]:
        return [p for p in PAIRS if self.amat[p] is not None]

    def margins(self, phi: Sequence[float]) -> Dict[Tuple[int, int], float]:
        """phi_j + alpha_ij - phi_i for every finite facet; positive inside."""
        return {(i, j): phi[j] + self.amat[(i, j)] - phi[i] for (i, j) in self.facets()}

    def min_margin(self, phi: Sequence[float]) -> float:
        return min(self.margins(phi).values())


def chart_spec_of(s: ExcSequence) -> ChartSpec:
    amat, tag = alpha_matrix(s)
    return ChartSpec(s, k_matrix(s), amat, tag)


@lru_cache(maxsize=None)
def chart(label: str) -> ChartSpec:
    return chart_spec_of(representative(label))


def all_charts() -> List[ChartSpec]:
    return [chart(lab) for lab in LABELS]


def inequality_strings(c: ChartSpec) -> Dict[Tuple[int, int], str]:
    """Human form of the chart inequalities, '' for an absent constraint."""
    out = {}
    for (i, j) in PAIRS:
        a = c.amat[(i, j)]
        if a is None:
            out[(i, j)] = ""
            continue
        rhs = c.objects[j].name + ("" if a == 0 else f"{a:+d}")
        out[(i, j)] = f"{c.objects[i].name}<{rhs}"
    return out


@dataclass(frozen=True)
class CentralCharge:
    z1: complex
    z2: complex
    z3: complex

    @classmethod
    def of(cls, zs) -> "CentralCharge":
        z1, z2, z3 = (complex(z) for z in zs)
        return cls(z1, z2, z3)

    def __iter__(self):
        return iter((self.z1, self.z2, self.z3))

    def __call__(self, obj) -> complex:
        if isinstance(obj, Interval):
            v = obj.dimvec()
        elif isinstance(obj, DerivedInterval):
            v = obj.cls()
        else:
            v = obj
        return v[0] * self.z1 + v[1] * self.z2 + v[2] * self.z3

    def norm(self) -> float:
        return math.sqrt(sum(abs(z) ** 2 for z in self))


@dataclass(frozen=True)
class StabPoint:
    chart: str
    m: Tuple[float, float, float]
    phi: Tuple[float, float, float]

    def shifted(self, n: int) -> "StabPoint":
        return StabPoint(self.chart, self.m, tuple(p + n for p in self.phi))

    def spec(self) -> ChartSpec:
        return chart(self.chart)


INTERIOR, BOUNDARY, OUTSIDE = "Interior", "Boundary", "Outside"


def chart_contains(c: ChartSpec, m, phi, tol: float = DEFAULT_TOL):
    """Classify (m, phi) against the chart: (status, facets within tol of equality)."""
    if any(mi <= 0 for mi in m):
        raise NonPositiveMass(f"masses must be positive, got {m}")
    margins = c.margins(phi)
    if any(g < -tol for g in margins.values()):
        return OUTSIDE, ()
    on = tuple(sorted(p for p, g in margins.items() if abs(g) <= tol))
    return (BOUNDARY, on) if on else (INTERIOR, ())


def _solve3(cols: List[DimVector], rhs: Sequence[complex]) -> Tuple[complex, complex, complex]:
    # rows = classes of chart objects; solve sum_k v_i[k] z_k = rhs_i
    a = [[complex(v[k]) for k in range(3)] + [complex(r)] for v, r in zip(cols, rhs)]
    for c in range(3):
        piv = max(range(c, 3), key=lambda r: abs(a[r][c]))
        a[c], a[piv] = a[piv], a[c]
        for r in range(3):
            if r != c and a[r][c] != 0:
                f = a[r][c] / a[c][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return tuple(a[i][3] / a[i][i] for i in range(3))


def to_central_charge(p: StabPoint) -> CentralCharge:
    objs = chart(p.chart).objects
    vals = [m * cmath.exp(1j * math.pi * f) for m, f in zip(p.m, p.phi)]
    return CentralCharge.of(_solve3([w.dimvec() for w in objs], vals))


def principal_phase(z: complex) -> float:
    """arg(z)/pi in (-1, 1]."""
    return math.atan2(z.imag, z.real) / math.pi


def lift_phase(z: complex, near: float) -> float:
    """The phase of z (mod 2) closest to ``near``."""
    base = principal_phase(z)
    return base + 2 * round((near - base) / 2)


def from_central_charge(Z: CentralCharge, label: str, near: Sequence[float]) -> StabPoint:
    objs = chart(label).objects
    zs = [Z(w) for w in objs]
    return StabPoint(label, tuple(abs(z) for z in zs), tuple(lift_phase(z, f) for z, f in zip(zs, near)))


def ceiling_shifts(phi: Sequence[float], window: float = 0.0) -> Tuple[int, int, int]:
    """The integers p_i with phi_i + p_i in (window, window + 1]."""
    return tuple(_ceil_shift(f, window) for f in phi)


def _ceil_shift(f: float, t: float) -> int:
    # smallest p with f + p > t, so that f + p lies in (t, t + 1]
    return math.floor(t - f) + 1


def is_ext_exceptional(objects: Sequence[Interval], pvec: Sequence[int]) -> bool:
    shifted = [DerivedInterval(w, p) for w, p in zip(objects, pvec)]
    for a in range(3):
        for b in range(3):
            if a != b and any(k <= 0 for k in derived_hom(shifted[a], shifted[b])):
                return False
    return True


@dataclass(frozen=True)
class Heart:
    """Heart generated by (E_1[p_1], E_2[p_2], E_3[p_3]) sitting in the phase window (t, t+1]."""

    objects: Tuple[Interval, Interval, Interval]
    pvec: Tuple[int, int, int]
    psi: Tuple[float, float, float]
    window: float

    @property
    def simples(self) -> Tuple[DerivedInterval, ...]:
        return tuple(DerivedInterval(w, p) for w, p in zip(self.objects, self.pvec))


def _candidate_windows(phi: Sequence[float]) -> List[float]:
    out = [0.0]
    fr = sorted(f - math.floor(f) for f in phi)
    fr.append(fr[0] + 1)
    for a, b in zip(fr, fr[1:]):
        if b - a > 1e-12:
            out.append((a + b) / 2)
    return out


def canonical_heart(p: StabPoint) -> Heart:
    """A heart window (t, t+1] in which the shifted chart objects are Ext-exceptional.

    The window t = 0 is tried first, so that points whose ceiling shifts are already
    Ext-exceptional get exactly those shifts.
    """
    objs = chart(p.chart).objects
    for t in _candidate_windows(p.phi):
        pvec = tuple(_ceil_shift(f, t) for f in p.phi)
        if is_ext_exceptional(objs, pvec):
            psi = tuple(f + q for f, q in zip(p.phi, pvec))
            return Heart(objs, pvec, psi, t)
    raise NotExtExceptional(f"no phase window makes {objs} Ext-exceptional at {p}")


def k_alpha_table() -> Dict[str, dict]:
    """JSON-ready k/alpha data keyed by class label."""
    def fmt(v):
        return "inf" if v is None else v

    out = {}
    for c in all_charts():
        out[c.label] = {
            "objects": [w.name for w in c.objects],
            "type": c.type_tag,
            "k": {f"{i + 1}{j + 1}": fmt(c.kmat[(i, j)]) for (i, j) in PAIRS},
            "alpha": {f"{i + 1}{j + 1}": fmt(c.amat[(i, j)]) for (i, j) in PAIRS},
            "inequalities": [inequality_strings(c)[p] for p in ((0, 1), (1, 2), (0, 2))],
        }
    return out
