"""Invariant suites run by ``stab-a3 check``.  Each check returns (name, passed, detail)."""
from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Callable, Dict, List

from . import tables
from .charts import CentralCharge, chart, is_ext_exceptional, canonical_heart
from .engine import Stability, distance, membership_and_coords
from .exccol import (
    LABELS,
    araya_classes,
    enumerate_sequences,
    is_connected,
    left_mutation,
    mutation_graph,
    right_mutation,
)
from .repcore import INTERVALS, euler_form, hom_ext, hom_degree


@dataclass
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        extra = f" ({self.detail})" if self.detail else ""
        return f"{mark} {self.suite}.{self.name}{extra} [{self.seconds:.2f}s]"


@dataclass
class Config:
    samples: int = 100
    seed: int = 0
    tol: float = 1e-9


def _run(suite: str, name: str, fn: Callable[[], tuple]) -> CheckResult:
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash falsifies the invariant
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return CheckResult(suite, name, bool(ok), detail, time.perf_counter() - t0)


def _diff(lines: List[str]) -> tuple:
    return (not lines, "; ".join(lines[:5]) if lines else "matches")


# -- repcore --------------------------------------------------------------

def euler_identity() -> tuple:
    bad = [(a, b) for a in INTERVALS for b in INTERVALS
           if hom_ext(a, b)[0] - hom_ext(a, b)[1] != euler_form(a.dimvec(), b.dimvec())]
    return not bad, f"{36 - len(bad)}/36 pairs"


def hom_concentration() -> tuple:
    # raises if Hom and Ext^1 are both nonzero for some pair
    degs = [hom_degree(a, b) for a in INTERVALS for b in INTERVALS]
    ends = all(hom_ext(w, w) == (1, 0) for w in INTERVALS)
    return ends, f"{sum(d is not None for d in degs)} nonorthogonal ordered pairs"


# -- exccol ---------------------------------------------------------------

def census() -> tuple:
    seqs = enumerate_sequences()
    classes = araya_classes(seqs)
    ok = len(seqs) == 16 and len(classes) == 12 and sorted(classes) == list(LABELS)
    return ok, f"{len(seqs)} sequences / {len(classes)} classes"


def braid_relations() -> tuple:
    bad = []
    for s in enumerate_sequences():
        a = right_mutation(right_mutation(right_mutation(s, 1), 2), 1)
        b = right_mutation(right_mutation(right_mutation(s, 2), 1), 2)
        if a.objects != b.objects:
            bad.append(f"braid {s}")
        for i in (1, 2):
            if left_mutation(right_mutation(s, i), i).objects != s.objects:
                bad.append(f"L{i}R{i} {s}")
            if right_mutation(left_mutation(s, i), i).objects != s.objects:
                bad.append(f"R{i}L{i} {s}")
    return not bad, "; ".join(bad[:3]) or "16 sequences"


def graph_matches() -> tuple:
    lines = tables.diff_graph()
    if not is_connected(mutation_graph()):
        lines.append("mutation graph is disconnected")
    return _diff(lines)


# -- charts ---------------------------------------------------------------

def hearts_ext_exceptional(cfg: Config) -> tuple:
    from .atlas.sampling import random_interior_point
    rng = random.Random(cfg.seed)
    n = 0
    for label in LABELS:
        for _ in range(cfg.samples):
            p = random_interior_point(label, rng)
            h = canonical_heart(p)
            if not is_ext_exceptional(chart(label).objects, h.pvec):
                return False, f"{p}"
            n += 1
    return True, f"{n} points"


# -- engine ---------------------------------------------------------------

def chart_consistency(cfg: Config) -> tuple:
    from .atlas.sampling import random_interior_point
    rng = random.Random(cfg.seed)
    fails = 0
    for label in LABELS:
        for _ in range(cfg.samples):
            p = random_interior_point(label, rng)
            if not self_consistent(p, cfg.tol):
                fails += 1
    return fails == 0, f"{fails} failures in {12 * cfg.samples} points"


def self_consistent(p, tol: float = 1e-9) -> bool:
    sigma = Stability(p)
    if not all(sigma.is_stable(w) for w in chart(p.chart).objects):
        return False
    q = membership_and_coords(sigma, p.chart)
    if q is None:
        return False
    return all(abs(a - b) <= tol for a, b in zip(q.phi + q.m, p.phi + p.m))


def metric_axioms(cfg: Config) -> tuple:
    from .atlas.sampling import random_interior_point
    rng = random.Random(cfg.seed)
    worst = 0.0
    for _ in range(cfg.samples):
        a, b, c = (Stability(random_interior_point(rng.choice(LABELS), rng)) for _ in range(3))
        dab, dba, dbc, dac = distance(a, b), distance(b, a), distance(b, c), distance(a, c)
        n = 2 * rng.randint(-2, 2)
        shift = abs(distance(Stability(a.point.shifted(n)), Stability(b.point.shifted(n))) - dab)
        worst = max(worst, distance(a, a), abs(dab - dba), dac - dab - dbc, shift)
    return worst <= cfg.tol, f"worst violation {worst:.2e}"


# -- atlas ----------------------------------------------------------------

def figure3_lifts() -> tuple:
    from .atlas import surjectivity_lifts
    doc = tables.load_expected("figure3")
    bad = []
    for case in doc["cases"]:
        Z = CentralCharge.of([complex(z["re"], z["im"]) for z in case["charge"]])
        got = {(l.chart, tuple(l.pvec)) for l in surjectivity_lifts(Z)}
        for want in case["lifts"]:
            if (want["chart"], tuple(want["pvec"])) not in got:
                bad.append(f"{case['name']}: {want['chart']}{tuple(want['pvec'])}")
    return not bad, "; ".join(bad) or "4 named lifts"


def surjectivity(cfg: Config) -> tuple:
    from .atlas import surjectivity_lift
    rng = random.Random(cfg.seed)
    n = 0
    for Z in degenerate_charges(rng, cfg.samples):
        lift = surjectivity_lift(Z)
        if not self_consistent(lift.point, 1e-7):
            return False, f"inconsistent lift at {Z}"
        n += 1
    return True, f"{n} charges"


def degenerate_charges(rng: random.Random, n: int):
    """Random nonzero charges, a third of them on one or more hyperplanes L_i."""
    from .atlas.sampling import random_complex
    for k in range(n):
        z = [random_complex(rng) for _ in range(3)]
        mode = k % 6
        if mode == 1:  # some simple charges vanish
            for i in rng.sample(range(3), rng.randint(1, 2)):
                z[i] = 0j
        elif mode == 3:  # some longer interval vanishes, possibly several at once
            w = rng.choice(INTERVALS[3:])
            z[w.hi - 1] = -sum(z[i - 1] for i in range(w.lo, w.hi))
            if rng.random() < 0.3:
                z[0] = 0j
        yield CentralCharge.of(z)


def loops(cfg: Config) -> tuple:
    from .atlas import lift_path, surjectivity_lift
    from .atlas.sampling import random_loop
    from .engine import same_condition
    rng = random.Random(cfg.seed)
    n = max(1, cfg.samples // 10)
    for _ in range(n):
        loop = random_loop(rng)
        start = surjectivity_lift(loop(0.0)).point
        fwd = lift_path(loop, start)
        if fwd.status != "Complete":
            return False, fwd.message
        back = lift_path(loop.reversed(), fwd.end)
        if back.status != "Complete" or not same_condition(Stability(back.end), Stability(start), 1e-6):
            return False, "reverse lift does not return"
    return True, f"{n} loops"


def hyperplane_hits(cfg: Config) -> tuple:
    from .atlas import lift_path, surjectivity_lift
    from .atlas.sampling import path_hitting
    rng = random.Random(cfg.seed)
    worst = 0.0
    for index in range(1, 7):
        path, t_star = path_hitting(index, rng)
        tr = lift_path(path, surjectivity_lift(path(0.0)).point)
        if tr.hit is None or tr.hit[0] != index:
            return False, f"L_{index}: {tr.status} {tr.hit}"
        worst = max(worst, abs(tr.hit[1] - t_star))
    return worst < 1e-6, f"max |t - t*| = {worst:.1e}"


def witnesses(cfg: Config) -> tuple:
    from .atlas import non_covering_witness
    rng = random.Random(cfg.seed)
    found = [non_covering_witness(i, rng).detected for i in range(1, 7)]
    return all(found), f"{sum(found)}/6 detected"


def facet_census(cfg: Config) -> tuple:
    from .atlas import facet_census as run
    cells = run(samples=max(10, cfg.samples // 10), seed=cfg.seed)
    return _diff(tables.diff_facets(cells))


SUITES: Dict[str, List[tuple]] = {
    "repcore": [
        ("euler_identity", lambda cfg: euler_identity()),
        ("hom_concentration", lambda cfg: hom_concentration()),
    ],
    "exccol": [
        ("census", lambda cfg: census()),
        ("figure1_graph", lambda cfg: graph_matches()),
        ("braid_relations", lambda cfg: braid_relations()),
    ],
    "charts": [
        ("table1_k", lambda cfg: _diff(tables.diff_exc())),
        ("alpha_types", lambda cfg: _diff(tables.diff_alpha())),
        ("table2_inequalities", lambda cfg: _diff(tables.diff_ineq())),
        ("hearts_ext_exceptional", hearts_ext_exceptional),
    ],
    "engine": [
        ("chart_consistency", chart_consistency),
        ("metric_axioms", metric_axioms),
    ],
    "atlas": [
        ("figure3_lifts", lambda cfg: figure3_lifts()),
        ("surjectivity", surjectivity),
        ("loops", loops),
        ("hyperplane_hits", hyperplane_hits),
        ("witnesses", witnesses),
        ("facet_census", facet_census),
    ],
}


def run_suite(name: str, cfg: Config) -> List[CheckResult]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return [_run(name, check, lambda fn=fn: fn(cfg)) for check, fn in SUITES[name]]
