import cmath
import math
import random

import pytest

from stab_a3.atlas import (
    ChargePath,
    LiftTrace,
    NonGenericCharge,
    ZeroCharge,
    facet_census,
    fiber,
    fiber_transport,
    hyperplane_id,
    lift_path,
    load_path,
    monodromy,
    non_covering_witness,
    surjectivity_lift,
    surjectivity_lifts,
    trace_to_csv,
)
from stab_a3.atlas.census import chart_relations, sample_facet_point
from stab_a3.atlas.fibers import deck_orbits, index_of, small_loop, point_on_hyperplane
from stab_a3.atlas.paths import verify_crossings
from stab_a3.atlas.sampling import path_hitting, random_loop, random_path
from stab_a3.charts import CentralCharge, StabPoint, chart, to_central_charge
from stab_a3.engine import Stability, locate, same_condition
from stab_a3.tables import diff_facets


def test_hyperplane_ids():
    assert hyperplane_id(CentralCharge.of([1, -1, 1j])) == frozenset({4})
    assert hyperplane_id(CentralCharge.of([0, 0, 1])) == frozenset({1, 2, 4})
    assert hyperplane_id(CentralCharge.of([1j, 1, 2])) == frozenset()
    with pytest.raises(ZeroCharge):
        hyperplane_id(CentralCharge.of([0, 0, 0]))


def test_named_lifts():
    left = CentralCharge.of([-2 - 2j, 2 + 2j, -3 + 1j])
    lifts = {l.chart: l.pvec for l in surjectivity_lifts(left)}
    assert lifts["A"] == (-1, -2, -2)
    assert lifts["C"] == (0, 0, -2)
    assert surjectivity_lift(CentralCharge.of([0, 2 + 2j, -3 + 1j])).pvec == (0, -2, -2)
    assert surjectivity_lift(CentralCharge.of([0, 0, -3 + 1j])).pvec == (0, -2, -4)
    assert surjectivity_lift(CentralCharge.of([0, 2 + 2j, -3 + 1j])).chart == "B"
    assert surjectivity_lift(CentralCharge.of([0, 0, -3 + 1j])).chart == "D"


def test_lift_lies_over_charge():
    rng = random.Random(1)
    for _ in range(50):
        Z = CentralCharge.of([complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(3)])
        for lift in surjectivity_lifts(Z):
            assert chart(lift.chart).min_margin(lift.phases) > 0
            assert max(abs(a - b) for a, b in zip(to_central_charge(lift.point), Z)) < 1e-12


def test_census_subset_matches_table_rows():
    cells = facet_census(samples=10, seed=0, labels="ABI")
    assert len(cells) == 14
    by_key = {(c.chart, c.key): c.covers for c in cells}
    assert by_key[("A", "(A,B)")] == frozenset({"I"})
    assert by_key[("B", "(B,I)")] == frozenset({"A"})


def test_facet_samples_are_boundary_points():
    rng = random.Random(3)
    p = sample_facet_point("D", [(1, 2)], [1], rng)
    assert p is not None
    assert chart("D").margins(p.phi)[(1, 2)] == pytest.approx(0.0, abs=1e-12)
    found = locate(p)
    inside, boundary = chart_relations(found[0])
    assert "D" in boundary and inside


def test_diff_facets_detects_wrong_cover():
    cells = facet_census(samples=10, seed=0, labels="ABI")
    doc = {"groups": [{"charts": ["A", "B", "I"], "cells": [
        {"headers": [{"shared": ["A", "B"], "cover": "C"}], "sublabels": []}]}]}
    assert diff_facets(cells, doc)
    doc["groups"][0]["cells"][0]["headers"][0]["cover"] = "I"
    assert diff_facets(cells, doc) == []


BOUNDARY_PATH = {"points": [[{"re": 1, "im": 0}, {"re": -2, "im": -0.1}, {"re": 0, "im": 1}],
                            [{"re": 1, "im": 0}, {"re": -2, "im": 0.1}, {"re": 0, "im": 1}]]}


def test_boundary_example_crossing():
    path = load_path(BOUNDARY_PATH)
    tr = lift_path(path, surjectivity_lift(path(0.0)).point)
    assert tr.status == "Complete"
    assert len(tr.crossings) == 1
    assert tr.charts == ["A", "I"]
    assert tr.crossings[0].t == pytest.approx(0.5, abs=1e-6)
    assert verify_crossings(tr)


def test_constant_chart_segment():
    a = (1j, 1j, 1j)
    b = (cmath.exp(0.6j * math.pi), cmath.exp(0.55j * math.pi), cmath.exp(0.45j * math.pi))
    path = ChargePath([a, b])
    start = StabPoint("A", (1.0, 1.0, 1.0), (0.5, 0.5, 0.5))
    tr = lift_path(path, start)
    assert tr.status == "Complete" and not tr.crossings
    assert tr.end.phi == pytest.approx((0.6, 0.55, 0.45))


def test_path_through_origin_hits():
    path = ChargePath([(1j, 1j, 1j), (-1j, -1j, -1j)])
    tr = lift_path(path, StabPoint("A", (1.0, 1.0, 1.0), (0.5, 0.5, 0.5)))
    assert tr.status == "HitHyperplane"
    assert tr.hit[1] == pytest.approx(0.5, abs=1e-12)


@pytest.mark.parametrize("index", range(1, 7))
def test_hitting_each_hyperplane(index):
    path, t_star = path_hitting(index, random.Random(index))
    tr = lift_path(path, surjectivity_lift(path(0.0)).point)
    assert tr.hit is not None and tr.hit[0] == index
    assert abs(tr.hit[1] - t_star) < 1e-6


def test_loops_and_reverse():
    rng = random.Random(11)
    for _ in range(5):
        loop = random_loop(rng)
        start = surjectivity_lift(loop(0.0)).point
        fwd = lift_path(loop, start)
        assert fwd.status == "Complete" and verify_crossings(fwd)
        back = lift_path(loop.reversed(), fwd.end)
        assert back.status == "Complete"
        assert same_condition(Stability(back.end), Stability(start), 1e-6)


def test_trace_round_trip_and_csv():
    path = load_path(BOUNDARY_PATH)
    tr = lift_path(path, surjectivity_lift(path(0.0)).point)
    again = LiftTrace.from_json(tr.to_json())
    assert [e.chart for e in again.events] == [e.chart for e in tr.events]
    assert len(again.crossings) == 1
    assert trace_to_csv(tr).splitlines()[0].startswith("t,chart,m1")


def test_fiber_of_non_generic_example():
    Z = CentralCharge.of([cmath.exp(1j * math.pi * x) for x in (0.5, 0.6, 0.7)])
    with pytest.raises(NonGenericCharge):
        fiber(Z)
    pts = fiber(Z, (-2.0, 4.0), generic=False)
    assert len(pts) == 55
    assert index_of(StabPoint("A", (1.0, 1.0, 1.0), (0.5, 0.6, 0.7)), pts) is not None
    for p in pts:
        assert max(abs(a - b) for a, b in zip(to_central_charge(p), Z)) < 1e-9
    orbits = deck_orbits(pts)
    assert sum(len(o) for o in orbits) == 55


def test_fiber_transport_short_paths():
    rng = random.Random(2)
    for _ in range(2):
        report = fiber_transport(random_path(rng, vertices=2))
        assert report.bijective, report


def test_monodromy_around_l6_moves_the_lift():
    rng = random.Random(6)
    Z0 = point_on_hyperplane(6, rng)
    loop = small_loop(Z0, 6, 0.05, vertices=48)
    lifts = [l for l in surjectivity_lifts(loop(0.0)) if "S123" in [w.name for w in chart(l.chart).objects]]
    end = monodromy(loop, lifts[0].point)
    assert not same_condition(Stability(end), Stability(lifts[0].point))


def test_monodromy_rejects_open_path():
    with pytest.raises(ValueError):
        monodromy(ChargePath([(1, 1j, 1j), (1, 1, 1j)]), StabPoint("A", (1, 1, 1), (0, 0.5, 0.5)))


def test_witness_for_l1():
    report = non_covering_witness(1, random.Random(0))
    assert report.detected
    # one turn around Z(S1) = 0 raises the phase of S1 by 2
    assert report.phase_shift == pytest.approx(2.0, abs=1e-6)
    assert report.gap == pytest.approx(2.0, abs=1e-6)
