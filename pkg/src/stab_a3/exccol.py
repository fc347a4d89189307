"""Exceptional sequences of D^b(A3), their equivalence classes and mutations."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, FrozenSet, List, Optional, Tuple

from .repcore import (
    INTERVALS,
    DimVector,
    Interval,
    hom_ext,
    identify_class,
    interval,
)


class UnmatchedClass(Exception):
    pass


class ClassNotInterval(Exception):
    pass


# Table 1 orderings; these are the canonical representatives.
TABLE1_ORDER: Dict[str, Tuple[str, str, str]] = {
    "A": ("S1", "S2", "S3"),
    "B": ("S2", "S12", "S3"),
    "C": ("S2", "S3", "S123"),
    "D": ("S3", "S23", "S123"),
    "E": ("S3", "S123", "S1"),
    "F": ("S123", "S12", "S1"),
    "G": ("S123", "S1", "S2"),
    "H": ("S1", "S23", "S2"),
    "I": ("S12", "S1", "S3"),
    "J": ("S23", "S2", "S123"),
    "K": ("S2", "S123", "S12"),
    "L": ("S3", "S1", "S23"),
}
LABELS = tuple(TABLE1_ORDER)


@dataclass(frozen=True)
class ExcSequence:
    objects: Tuple[Interval, Interval, Interval]
    label: Optional[str] = field(default=None, compare=False)

    def __iter__(self):
        return iter(self.objects)

    def __getitem__(self, i: int) -> Interval:
        return self.objects[i]

    def support(self) -> FrozenSet[Interval]:
        return frozenset(self.objects)

    def __repr__(self) -> str:
        body = ",".join(w.name for w in self.objects)
        return f"{self.label or '?'}({body})"


@dataclass(frozen=True)
class ArayaClass:
    label: str
    representative: ExcSequence
    members: FrozenSet[ExcSequence]


def chi(E: Interval, F: Interval) -> int:
    """Alternating sum of dim Hom^k(E, F)."""
    hom0, ext1 = hom_ext(E, F)
    return hom0 - ext1


def _orthogonal_behind(later: Interval, earlier: Interval) -> bool:
    return hom_ext(later, earlier) == (0, 0)


def is_exceptional_sequence(t) -> bool:
    objs = tuple(t)
    if len(set(objs)) != len(objs):
        return False
    return all(_orthogonal_behind(objs[j], objs[i])
               for i in range(len(objs)) for j in range(i + 1, len(objs)))


def _det3(rows) -> int:
    (a, b, c), (d, e, f), (g, h, i) = rows
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def is_complete(t) -> bool:
    return abs(_det3([tuple(w.dimvec()) for w in t])) == 1


@lru_cache(maxsize=1)
def _support_labels() -> Dict[FrozenSet[Interval], str]:
    return {frozenset(interval(n) for n in names): lab for lab, names in TABLE1_ORDER.items()}


def classify(t) -> str:
    key = frozenset(t)
    try:
        return _support_labels()[key]
    except KeyError:
        raise UnmatchedClass(f"no Table 1 row has support {sorted(key)}") from None


def labelled(t) -> ExcSequence:
    objs = tuple(t)
    return ExcSequence(objs, classify(objs))


@lru_cache(maxsize=1)
def enumerate_sequences() -> FrozenSet[ExcSequence]:
    out = set()
    for t in itertools.permutations(INTERVALS, 3):
        if is_exceptional_sequence(t):
            if not is_complete(t):
                raise AssertionError(f"exceptional but not complete: {t}")
            out.add(ExcSequence(t, classify(t)))
    return frozenset(out)


def araya_classes(seqs) -> Dict[str, ArayaClass]:
    groups: Dict[str, set] = {}
    for s in seqs:
        groups.setdefault(classify(s.objects), set()).add(s)
    out = {}
    for lab, members in groups.items():
        rep_objs = tuple(interval(n) for n in TABLE1_ORDER[lab])
        rep = next((m for m in members if m.objects == rep_objs), None)
        if rep is None:
            raise UnmatchedClass(f"Table 1 ordering of {lab} is not an exceptional sequence")
        out[lab] = ArayaClass(lab, rep, frozenset(members))
    return dict(sorted(out.items()))


def representative(label: str) -> ExcSequence:
    return ExcSequence(tuple(interval(n) for n in TABLE1_ORDER[label]), label)


def _resolve(v: DimVector) -> Interval:
    hit = identify_class(v)
    if hit is None:
        raise ClassNotInterval(f"{v} is not +- the class of an interval")
    return hit[0]


def right_mutate_object(E: Interval, F: Interval) -> Interval:
    """R_F E up to shift: [R_F E] = chi(E, F)[F] - [E]."""
    return _resolve(chi(E, F) * F.dimvec() - E.dimvec())


def left_mutate_object(E: Interval, F: Interval) -> Interval:
    """L_E F up to shift: [L_E F] = chi(E, F)[E] - [F]."""
    return _resolve(chi(E, F) * E.dimvec() - F.dimvec())


def right_mutation(s: ExcSequence, i: int) -> ExcSequence:
    """R_i for i in {1, 2}: (.., E_i, E_{i+1}, ..) -> (.., E_{i+1}, R_{E_{i+1}} E_i, ..)."""
    objs = list(s.objects)
    a, b = objs[i - 1], objs[i]
    objs[i - 1], objs[i] = b, right_mutate_object(a, b)
    return labelled(objs)


def left_mutation(s: ExcSequence, i: int) -> ExcSequence:
    """L_i for i in {1, 2}: (.., E_i, E_{i+1}, ..) -> (.., L_{E_i} E_{i+1}, E_i, ..)."""
    objs = list(s.objects)
    a, b = objs[i - 1], objs[i]
    objs[i - 1], objs[i] = left_mutate_object(a, b), a
    return labelled(objs)


@dataclass(frozen=True)
class MutationEdge:
    source: str
    target: str
    kind: str  # "R1" or "R2"

    @property
    def is_loop(self) -> bool:
        return self.source == self.target


def mutation_graph() -> List[MutationEdge]:
    edges = set()
    for s in enumerate_sequences():
        for i in (1, 2):
            edges.add(MutationEdge(s.label, right_mutation(s, i).label, f"R{i}"))
    return sorted(edges, key=lambda e: (e.kind, e.source, e.target))


def is_connected(edges) -> bool:
    adj: Dict[str, set] = {lab: set() for lab in LABELS}
    for e in edges:
        adj[e.source].add(e.target)
        adj[e.target].add(e.source)
    seen, stack = {LABELS[0]}, [LABELS[0]]
    while stack:
        for nb in adj[stack.pop()]:
            if nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == len(LABELS)
