"""Representations of the A3 quiver 1 -> 2 -> 3 and its Grothendieck group.

Everything here is exact: dimension vectors are integer triples and
morphism spaces are computed as kernels of rational linear systems.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

VERTICES = (1, 2, 3)
ARROWS = ((1, 2), (2, 3))


@dataclass(frozen=True, order=True)
class DimVector:
    d1: int
    d2: int
    d3: int

    def __add__(self, other: "DimVector") -> "DimVector":
        return DimVector(self.d1 + other.d1, self.d2 + other.d2, self.d3 + other.d3)

    def __sub__(self, other: "DimVector") -> "DimVector":
        return DimVector(self.d1 - other.d1, self.d2 - other.d2, self.d3 - other.d3)

    def __neg__(self) -> "DimVector":
        return DimVector(-self.d1, -self.d2, -self.d3)

    def __rmul__(self, k: int) -> "DimVector":
        return DimVector(k * self.d1, k * self.d2, k * self.d3)

    def __iter__(self):
        return iter((self.d1, self.d2, self.d3))

    def __getitem__(self, i: int) -> int:
        return (self.d1, self.d2, self.d3)[i]

    def is_zero(self) -> bool:
        return self.d1 == self.d2 == self.d3 == 0


@dataclass(frozen=True, order=True)
class Interval:
    """Indecomposable module supported on the vertices lo..hi."""

    lo: int
    hi: int

    def __post_init__(self):
        if not 1 <= self.lo <= self.hi <= 3:
            raise ValueError(f"not an interval of A3: [{self.lo},{self.hi}]")

    @property
    def name(self) -> str:
        return "S" + "".join(str(v) for v in range(self.lo, self.hi + 1))

    def dimvec(self) -> DimVector:
        return DimVector(*(1 if self.lo <= v <= self.hi else 0 for v in VERTICES))

    def representation(self) -> "Representation":
        spaces = {v: (1 if self.lo <= v <= self.hi else 0) for v in VERTICES}
        maps = {}
        for (s, t) in ARROWS:
            maps[(s, t)] = [[Fraction(1)] * spaces[s] for _ in range(spaces[t])]
        return Representation(spaces, maps)

    def __repr__(self) -> str:
        return self.name


S1, S2, S3 = Interval(1, 1), Interval(2, 2), Interval(3, 3)
S12, S23, S123 = Interval(1, 2), Interval(2, 3), Interval(1, 3)
INTERVALS: Tuple[Interval, ...] = (S1, S2, S3, S12, S23, S123)
BY_NAME: Dict[str, Interval] = {w.name: w for w in INTERVALS}


def interval(name: str) -> Interval:
    """Look up an interval by name, accepting ``S12``, ``12`` or ``S_{12}``."""
    key = name.strip().replace("_", "").replace("{", "").replace("}", "")
    if not key.startswith("S"):
        key = "S" + key
    try:
        return BY_NAME[key]
    except KeyError:
        raise ValueError(f"unknown interval {name!r}") from None


@dataclass(frozen=True, order=True)
class DerivedInterval:
    interval: Interval
    shift: int = 0

    def cls(self) -> DimVector:
        v = self.interval.dimvec()
        return v if self.shift % 2 == 0 else -v

    def __getitem__(self, n: int) -> "DerivedInterval":
        return DerivedInterval(self.interval, self.shift + n)

    def __repr__(self) -> str:
        return self.interval.name if self.shift == 0 else f"{self.interval.name}[{self.shift}]"


@dataclass
class Representation:
    """Vector spaces per vertex and matrices (target_dim x source_dim) per arrow."""

    spaces: Dict[int, int]
    maps: Dict[Tuple[int, int], List[List[Fraction]]]


def euler_form(u: DimVector, v: DimVector) -> int:
    """<u, v> = sum u_i v_i - u_1 v_2 - u_2 v_3."""
    return (u.d1 * v.d1 + u.d2 * v.d2 + u.d3 * v.d3) - u.d1 * v.d2 - u.d2 * v.d3


def euler_matrix() -> List[List[int]]:
    basis = [DimVector(1, 0, 0), DimVector(0, 1, 0), DimVector(0, 0, 1)]
    return [[euler_form(a, b) for b in basis] for a in basis]


def _rank(rows: List[List[Fraction]], ncols: int) -> int:
    m = [list(r) for r in rows]
    rank = 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c] / m[rank][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def _nullspace(rows: List[List[Fraction]], ncols: int) -> List[List[Fraction]]:
    m = [list(r) for r in rows]
    pivots = []
    rank = 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        lead = m[rank][c]
        m[rank] = [a / lead for a in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        pivots.append(c)
        rank += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -m[r][fc]
        basis.append(vec)
    return basis


def _hom_system(M: Representation, N: Representation):
    """Linear system whose kernel is Hom(M, N).

    Unknowns are the entries of f_v : M_v -> N_v, stored row-major per vertex.
    Each arrow s->t contributes N_a f_s - f_t M_a = 0.
    """
    offsets = {}
    n = 0
    for v in VERTICES:
        offsets[v] = n
        n += N.spaces[v] * M.spaces[v]

    def var(v, i, j):  # entry (i, j) of f_v, i < dim N_v, j < dim M_v
        return offsets[v] + i * M.spaces[v] + j

    rows = []
    for (s, t) in ARROWS:
        Ma, Na = M.maps[(s, t)], N.maps[(s, t)]
        for i in range(N.spaces[t]):
            for j in range(M.spaces[s]):
                row = [Fraction(0)] * n
                for k in range(N.spaces[s]):
                    row[var(s, k, j)] += Na[i][k]
                for k in range(M.spaces[t]):
                    row[var(t, i, k)] -= Ma[k][j]
                rows.append(row)
    return rows, n, offsets


def hom_dimension(M: Representation, N: Representation) -> int:
    rows, n, _ = _hom_system(M, N)
    return n - _rank(rows, n)


def morphism_basis(M: Representation, N: Representation) -> List[Dict[int, List[List[Fraction]]]]:
    """A basis of Hom(M, N), each element given as matrices per vertex."""
    rows, n, offsets = _hom_system(M, N)
    out = []
    for vec in _nullspace(rows, n):
        f = {}
        for v in VERTICES:
            o = offsets[v]
            f[v] = [[vec[o + i * M.spaces[v] + j] for j in range(M.spaces[v])]
                    for i in range(N.spaces[v])]
        out.append(f)
    return out


@lru_cache(maxsize=None)
def hom_ext(M: Interval, N: Interval) -> Tuple[int, int]:
    """(dim Hom(M, N), dim Ext^1(M, N)) for interval modules."""
    hom0 = hom_dimension(M.representation(), N.representation())
    ext1 = hom0 - euler_form(M.dimvec(), N.dimvec())
    if ext1 < 0:
        raise ArithmeticError(f"negative Ext^1 for {M}, {N}")
    return hom0, ext1


@lru_cache(maxsize=None)
def hom_degree(M: Interval, N: Interval) -> Optional[int]:
    """The unique degree k with Hom^k(M, N) != 0, or None."""
    hom0, ext1 = hom_ext(M, N)
    if hom0 and ext1:
        raise ArithmeticError(f"Hom and Ext^1 both nonzero for {M}, {N}")
    if hom0:
        return 0
    if ext1:
        return 1
    return None


def derived_hom(X: DerivedInterval, Y: DerivedInterval) -> Dict[int, int]:
    """Nonzero dimensions of Hom^k(X, Y) = Hom(X, Y[k]) keyed by k."""
    hom0, ext1 = hom_ext(X.interval, Y.interval)
    # Hom(M[p], N[q][k]) = Hom^{q + k - p}(M, N)
    base = X.shift - Y.shift
    out = {}
    if hom0:
        out[base] = hom0
    if ext1:
        out[base + 1] = ext1
    return out


def identify_class(v: DimVector) -> Optional[Tuple[Interval, int]]:
    """Return (interval, parity) with (-1)^parity * dimvec(interval) == v."""
    for w in INTERVALS:
        d = w.dimvec()
        if d == v:
            return w, 0
        if -d == v:
            return w, 1
    return None


def kernel_cokernel(M: Interval, N: Interval) -> Tuple[Optional[Interval], Optional[Interval]]:
    """Kernel and cokernel of a nonzero morphism M -> N, via linear algebra."""
    Mr, Nr = M.representation(), N.representation()
    basis = morphism_basis(Mr, Nr)
    if len(basis) != 1:
        raise ValueError(f"Hom({M}, {N}) is not one-dimensional")
    f = basis[0]
    ker, coker = [], []
    for v in VERTICES:
        r = _rank(f[v], Mr.spaces[v]) if Nr.spaces[v] and Mr.spaces[v] else 0
        ker.append(Mr.spaces[v] - r)
        coker.append(Nr.spaces[v] - r)
    return _as_interval(DimVector(*ker)), _as_interval(DimVector(*coker))


def _as_interval(v: DimVector) -> Optional[Interval]:
    if v.is_zero():
        return None
    hit = identify_class(v)
    if hit is None or hit[1] != 0:
        raise ValueError(f"{v} is not the class of an interval module")
    return hit[0]


def extension_middle(M: Interval, N: Interval) -> List[Interval]:
    """Summands of the middle term E of the nonsplit 0 -> N -> E -> M -> 0.

    For intervals with Ext^1(M, N) != 0 one has lo(M) < lo(N) <= hi(M) + 1 <= hi(N),
    and E is the union interval plus the (possibly empty) intersection.
    """
    if hom_ext(M, N)[1] == 0:
        raise ValueError(f"Ext^1({M}, {N}) = 0")
    out = [Interval(M.lo, N.hi)]
    if N.lo <= M.hi:
        out.append(Interval(N.lo, M.hi))
    return out


@lru_cache(maxsize=None)
def cone(X: DerivedInterval, Y: DerivedInterval) -> Tuple[DerivedInterval, ...]:
    """Summands of the cone of the (unique up to scalar) nonzero map X -> Y."""
    h = derived_hom(X, Y)
    if 0 not in h:
        raise ValueError(f"Hom({X}, {Y}) = 0")
    M, N, a = X.interval, Y.interval, X.shift
    if Y.shift == a:
        ker, coker = kernel_cokernel(M, N)
        out = []
        if ker is not None:
            out.append(DerivedInterval(ker, a + 1))
        if coker is not None:
            out.append(DerivedInterval(coker, a))
        return tuple(out)
    # Y.shift == a + 1: M -> N[1] is an extension class, cone is E[a + 1]
    return tuple(DerivedInterval(E, a + 1) for E in extension_middle(M, N))
