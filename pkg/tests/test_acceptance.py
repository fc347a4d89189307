"""Acceptance criteria 1-9, each checked at its stated tolerance and sample size."""
import random
import time

from stab_a3 import tables
from stab_a3.atlas import (
    facet_census,
    fiber,
    fiber_transport,
    lift_path,
    non_covering_witness,
    surjectivity_lift,
    surjectivity_lifts,
)
from stab_a3.atlas.census import UncoveredFacetPoint
from stab_a3.atlas.fibers import index_of, phase_range
from stab_a3.atlas.sampling import path_hitting, random_interior_point, random_loop, random_path
from stab_a3.charts import CentralCharge, chart, to_central_charge
from stab_a3.checks import degenerate_charges
from stab_a3.engine import Stability, distance, membership_and_coords, same_condition
from stab_a3.exccol import (
    LABELS,
    araya_classes,
    enumerate_sequences,
    left_mutation,
    right_mutation,
)
from stab_a3.repcore import INTERVALS, DerivedInterval, derived_hom, euler_form, hom_ext, interval


def test_criterion_1_sequence_census(record_criterion):
    t0 = time.perf_counter()
    seqs = enumerate_sequences.__wrapped__()
    classes = araya_classes(seqs)
    elapsed = time.perf_counter() - t0
    supports = {lab: frozenset(c.representative.objects) for lab, c in classes.items()}
    rows = {lab: frozenset(interval(n) for n in row["objects"])
            for lab, row in tables.load_expected("table1")["rows"].items()}
    ok = len(seqs) == 16 and len(classes) == 12 and supports == rows and elapsed < 1.0
    assert len(set(rows.values())) == 12
    record_criterion(1, ok, f"{len(seqs)} sequences, {len(classes)} classes, supports match "
                            f"Table 1: {supports == rows}, {elapsed:.3f}s")
    assert ok


def test_criterion_2_hom_ext(record_criterion):
    decorated = 0
    bad = []
    for lab, row in tables.load_expected("table1")["rows"].items():
        objs = [interval(n) for n in row["objects"]]
        for key, want in row["k"].items():
            i, j = int(key[0]) - 1, int(key[1]) - 1
            degs = sorted(derived_hom(DerivedInterval(objs[i]), DerivedInterval(objs[j])))
            have = degs[0] if degs else None
            decorated += want is not None
            if have != want:
                bad.append(f"{lab}{key}")
    facts = (derived_hom(DerivedInterval(interval("S12")), DerivedInterval(interval("S23"))) == {1: 1}
             and derived_hom(DerivedInterval(interval("S23")), DerivedInterval(interval("S12"))) == {0: 1})
    euler = sum(hom_ext(a, b)[0] - hom_ext(a, b)[1] == euler_form(a.dimvec(), b.dimvec())
                for a in INTERVALS for b in INTERVALS)
    ok = not bad and facts and euler == 36
    record_criterion(2, ok, f"{decorated} decorated pairs ({len(bad)} wrong), "
                            f"Hom^1(S12,S23) and Hom^0(S23,S12): {facts}, Euler {euler}/36")
    assert ok


def test_criterion_3_mutation_graph(record_criterion):
    graph = tables.graph_document()
    graph_diff = tables.diff_graph()
    edges = len(graph["R1"]) + len(graph["R2"])
    loops = sum(len(v) for v in graph["loops"].values())
    braid_bad = 0
    for s in enumerate_sequences():
        a = right_mutation(right_mutation(right_mutation(s, 1), 2), 1)
        b = right_mutation(right_mutation(right_mutation(s, 2), 1), 2)
        braid_bad += a.objects != b.objects
        for i in (1, 2):
            braid_bad += left_mutation(right_mutation(s, i), i).objects != s.objects
    ok = not graph_diff and edges == 24 and loops == 4 and braid_bad == 0
    record_criterion(3, ok, f"{edges} edges, {loops} self-loops, diff {len(graph_diff)} lines, "
                            f"braid/inverse failures {braid_bad}")
    assert ok


def test_criterion_4_alpha_and_inequalities(record_criterion):
    alpha = tables.diff_alpha()
    ineq = tables.diff_ineq()
    blanks = sum(cell == "" for row in tables.load_expected("table2")["rows"].values() for cell in row)
    infinite = sum(chart(lab).amat[p] is None for lab in LABELS for p in tables.PAIRS)
    ok = not alpha and not ineq and blanks == infinite == 4
    record_criterion(4, ok, f"type-table mismatches {len(alpha)}, Table 2 mismatches {len(ineq)}, "
                            f"blank cells {blanks} = infinite alphas {infinite}")
    assert ok


def test_criterion_5_engine_chart_consistency(record_criterion):
    rng = random.Random(5)
    failures = 0
    n = 0
    for label in LABELS:
        for _ in range(1000):
            p = random_interior_point(label, rng)
            sigma = Stability(p)
            stable = all(sigma.is_stable(w) for w in chart(label).objects)
            q = membership_and_coords(sigma, label)
            same = q is not None and q.chart == label and all(
                abs(a - b) <= 1e-9 * max(1.0, abs(a)) for a, b in zip(q.m + q.phi, p.m + p.phi))
            failures += not (stable and same)
            n += 1
    ok = failures == 0
    record_criterion(5, ok, f"{failures} failures in {n} points ({n // 12} per chart)")
    assert ok


def test_criterion_6_facet_census(record_criterion):
    t0 = time.perf_counter()
    try:
        cells = facet_census(samples=10, seed=0)
        uncovered = 0
    except UncoveredFacetPoint:
        cells, uncovered = [], 1
    elapsed = time.perf_counter() - t0
    diff = tables.diff_facets(cells) if cells else ["census aborted"]
    ok = not diff and uncovered == 0 and elapsed < 60 and min(c.samples for c in cells) >= 10
    record_criterion(6, ok, f"{len(cells)} cells x 10 samples, {len(diff)} mismatches with Table 3, "
                            f"{uncovered} uncovered points, {elapsed:.1f}s")
    assert ok


def test_criterion_7_surjectivity(record_criterion):
    rng = random.Random(7)
    failures = 0
    degenerate = 0
    for Z in degenerate_charges(rng, 10_000):
        degenerate += min(abs(z) for z in (Z(w) for w in INTERVALS)) == 0
        try:
            lift = surjectivity_lift(Z)
        except Exception:
            failures += 1
            continue
        over = max(abs(a - b) for a, b in zip(to_central_charge(lift.point), Z)) < 1e-9
        failures += not (over and chart(lift.chart).min_margin(lift.phases) > 0)
    named = []
    for case in tables.load_expected("figure3")["cases"]:
        Z = CentralCharge.of([complex(z["re"], z["im"]) for z in case["charge"]])
        got = {(l.chart, tuple(l.pvec)) for l in surjectivity_lifts(Z)}
        named += [(w["chart"], tuple(w["pvec"])) in got for w in case["lifts"]]
    ok = failures == 0 and all(named) and len(named) == 4
    record_criterion(7, ok, f"{failures} failures in 10000 charges ({degenerate} on hyperplanes), "
                            f"named lifts {sum(named)}/4")
    assert ok


def test_criterion_8_covering_behaviour(record_criterion):
    t0 = time.perf_counter()
    rng = random.Random(8)
    # (a) loops: complete, end in the start fiber, and come back when reversed
    loops_ok = 0
    for _ in range(100):
        loop = random_loop(rng)
        start = surjectivity_lift(loop(0.0)).point
        fwd = lift_path(loop, start)
        if fwd.status != "Complete":
            continue
        lo, hi = phase_range(Stability(fwd.end))
        in_fiber = index_of(fwd.end, fiber(loop(0.0), (lo - 0.5, hi + 0.5))) is not None
        back = lift_path(loop.reversed(), fwd.end)
        returns = back.status == "Complete" and same_condition(Stability(back.end), Stability(start), 1e-6)
        loops_ok += in_fiber and returns
    # (b) windowed fiber transport
    transports = sum(fiber_transport(random_path(rng, vertices=2)).bijective for _ in range(20))
    # (c) paths hitting each L_i
    hits = 0
    for index in range(1, 7):
        path, t_star = path_hitting(index, rng)
        tr = lift_path(path, surjectivity_lift(path(0.0)).point)
        hits += tr.hit is not None and tr.hit[0] == index and abs(tr.hit[1] - t_star) < 1e-6
    # (d) non-covering witnesses
    witnesses = sum(non_covering_witness(index, rng).detected for index in range(1, 7))
    elapsed = time.perf_counter() - t0
    ok = loops_ok == 100 and transports == 20 and hits == 6 and witnesses == 6 and elapsed < 300
    record_criterion(8, ok, f"(a) {loops_ok}/100 loops, (b) {transports}/20 transports bijective, "
                            f"(c) {hits}/6 hits located, (d) {witnesses}/6 witnesses, {elapsed:.1f}s")
    assert ok


def test_criterion_9_metric(record_criterion):
    rng = random.Random(9)
    worst = 0.0
    for _ in range(1000):
        a, b, c = (Stability(random_interior_point(rng.choice(LABELS), rng)) for _ in range(3))
        dab, dba, dbc, dac = distance(a, b), distance(b, a), distance(b, c), distance(a, c)
        n = 2 * rng.randint(-3, 3)
        shifted = distance(Stability(a.point.shifted(n)), Stability(b.point.shifted(n)))
        worst = max(worst, distance(a, a), abs(dab - dba), dac - dab - dbc, abs(shifted - dab))
    ok = worst <= 1e-9
    record_criterion(9, ok, f"1000 triples, worst violation {worst:.2e}")
    assert ok
