"""Sampling chart facets and finding the charts that contain them in their interior.

A facet of chart X is {phi_i = phi_j + alpha_ij}.  When alpha_ij = k_ij the two charges
Z(E_i), Z(E_j) are (anti)parallel there and the mass comparison m_i vs m_j decides which
neighbouring chart shares the facet, so each such facet splits into two sides.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from ..charts import (
    BOUNDARY,
    INTERIOR,
    StabPoint,
    chart,
    chart_contains,
    to_central_charge,
)
from ..engine import Stability, locate
from ..exccol import LABELS
from .hyperplanes import charges

SIDE_TOL = 1e-7


class UncoveredFacetPoint(RuntimeError):
    pass


@dataclass(frozen=True)
class CensusCell:
    chart: str
    facets: Tuple[Tuple[int, int], ...]  # 0-based index pairs held at equality
    sides: Tuple[int, ...]  # sign of m_i - m_j per facet, 0 when not split
    samples: int
    covers: FrozenSet[str]  # charts containing every sample in their interior
    sharers: FrozenSet[str]  # charts having every sample on their boundary
    seen_covers: FrozenSet[str] = field(default=frozenset())  # union over samples

    @property
    def key(self) -> str:
        return "(" + ",".join(sorted(self.sharers)) + ")"

    def describe(self) -> str:
        c = chart(self.chart)
        parts = []
        for (i, j), s in zip(self.facets, self.sides):
            a = c.amat[(i, j)]
            eq = f"{c.objects[i].name}={c.objects[j].name}" + ("" if a == 0 else f"{a:+d}")
            if s:
                eq += f" (m{'>' if s > 0 else '<'})"
            parts.append(eq)
        return f"{self.chart}: " + ", ".join(parts)


def split_by_mass(label: str, facet: Tuple[int, int]) -> bool:
    c = chart(label)
    return c.amat[facet] == c.kmat[facet]


def side_options(label: str, facets: Sequence[Tuple[int, int]]) -> List[Tuple[int, ...]]:
    return list(itertools.product(*[(1, -1) if split_by_mass(label, f) else (0,) for f in facets]))


def _generic(Z, min_mass: float) -> bool:
    return min(abs(v) for v in charges(Z)) >= min_mass


def sample_facet_point(label: str, facets: Sequence[Tuple[int, int]], sides: Sequence[int],
                       rng: random.Random, margin: float = 0.02, min_mass: float = 0.05,
                       tries: int = 2000) -> Optional[StabPoint]:
    """A random point with the given facet equalities, every other inequality strict."""
    c = chart(label)
    others = [f for f in c.facets() if f not in facets]
    for _ in range(tries):
        phi = [rng.uniform(-1.0, 2.0) for _ in range(3)]
        fixed = set()
        ok = True
        for (i, j) in facets:
            val = phi[j] + c.amat[(i, j)]
            if i in fixed and abs(phi[i] - val) > 1e-12:
                ok = False
                break
            phi[i] = val
            fixed.add(i)
        if not ok or any(abs(phi[i] - phi[j] - c.amat[(i, j)]) > 1e-12 for (i, j) in facets):
            continue
        if any(phi[j] + c.amat[(i, j)] - phi[i] < margin for (i, j) in others):
            continue
        m = [rng.uniform(0.3, 3.0) for _ in range(3)]
        for (i, j), s in zip(facets, sides):
            if s and (m[i] - m[j]) * s < 0:
                m[i], m[j] = m[j], m[i]
            if s and abs(math.log(m[i] / m[j])) < 0.1:
                ok = False
        if not ok:
            continue
        p = StabPoint(label, tuple(m), tuple(phi))
        if _generic(to_central_charge(p), min_mass):
            return p
    return None


def chart_relations(sigma: Stability, tol: float = SIDE_TOL) -> Tuple[FrozenSet[str], FrozenSet[str]]:
    """(charts containing sigma in their interior, charts having sigma on their boundary)."""
    inside, boundary = set(), set()
    for label in LABELS:
        c = chart(label)
        m, phi = [], []
        for w in c.objects:
            kind, ph, mass = sigma.status(w)
            if kind == "unstable":
                break
            m.append(mass)
            phi.append(ph)
        else:
            status, _ = chart_contains(c, m, phi, tol)
            if status == INTERIOR and all(sigma.is_stable(w) for w in c.objects):
                inside.add(label)
            elif status == BOUNDARY:
                boundary.add(label)
    return frozenset(inside), frozenset(boundary)


def _survey(label, facets, sides, samples, rng) -> Optional[CensusCell]:
    covers = None
    sharers = None
    seen = set()
    n = 0
    for _ in range(samples):
        p = sample_facet_point(label, facets, sides, rng)
        if p is None:
            break
        found = locate(p)
        if not found:
            raise UncoveredFacetPoint(f"{p} lies in no chart interior")
        inside, boundary = chart_relations(found[0])
        if label not in boundary:
            raise AssertionError(f"{p} is not on the boundary of its own chart")
        covers = inside if covers is None else covers & inside
        sharers = boundary if sharers is None else sharers & boundary
        seen |= inside
        n += 1
    if n == 0:
        return None
    return CensusCell(label, tuple(facets), tuple(sides), n, covers, sharers, frozenset(seen))


def facet_cells(label: str, codim: int = 1) -> List[Tuple[Tuple[Tuple[int, int], ...], Tuple[int, ...]]]:
    out = []
    for facets in itertools.combinations(chart(label).facets(), codim):
        for sides in side_options(label, facets):
            out.append((facets, sides))
    return out


def facet_census(samples: int = 10, seed: int = 0, labels: Sequence[str] = LABELS) -> List[CensusCell]:
    """One cell per (chart, facet, mass side), each sampled ``samples`` times."""
    rng = random.Random(seed)
    out = []
    for label in labels:
        for facets, sides in facet_cells(label, 1):
            cell = _survey(label, facets, sides, samples, rng)
            if cell is None:
                raise AssertionError(f"could not sample facet {facets} of {label}")
            out.append(cell)
    return out


def closedness_census(samples: int = 10, seed: int = 0, labels: Sequence[str] = LABELS) -> Dict[str, list]:
    """Facets and facet intersections of every chart, each checked to lie in some interior.

    Returns {"cells": [...], "empty": [...]} where "empty" lists codimension-two strata
    that cannot be realised (the two equalities contradict the remaining inequalities).
    """
    rng = random.Random(seed)
    cells, empty = [], []
    for label in labels:
        for codim in (1, 2):
            for facets, sides in facet_cells(label, codim):
                cell = _survey(label, facets, sides, samples, rng)
                if cell is None:
                    empty.append((label, facets, sides))
                else:
                    cells.append(cell)
    return {"cells": cells, "empty": empty}
