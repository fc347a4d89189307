"""Seeded random charges, chart points and paths used by the checks."""
from __future__ import annotations

import math
import random
from typing import Tuple

from ..charts import CentralCharge, StabPoint, chart
from .fibers import point_on_hyperplane
from .paths import ChargePath


def random_complex(rng: random.Random) -> complex:
    return complex(rng.gauss(0, 1), rng.gauss(0, 1))


def random_charge(rng: random.Random) -> CentralCharge:
    return CentralCharge.of([random_complex(rng) for _ in range(3)])


def random_interior_point(label: str, rng: random.Random, margin: float = 1e-3,
                          span: Tuple[float, float] = (-1.0, 3.0)) -> StabPoint:
    c = chart(label)
    while True:
        phi = tuple(rng.uniform(*span) for _ in range(3))
        if c.min_margin(phi) > margin:
            m = tuple(math.exp(rng.uniform(-1.5, 1.5)) for _ in range(3))
            return StabPoint(label, m, phi)


def random_path(rng: random.Random, vertices: int = 3, clearance: float = 1e-2,
                closed: bool = False, resolution: int = 300) -> ChargePath:
    """A polyline of random charges staying at least ``clearance`` away from every L_i."""
    while True:
        pts = [tuple(random_complex(rng) for _ in range(3)) for _ in range(vertices)]
        if closed:
            pts.append(pts[0])
        path = ChargePath(pts, resolution)
        if path.closest_approach()[0] > clearance:
            return path


def random_loop(rng: random.Random, vertices: int = 4, clearance: float = 1e-2) -> ChargePath:
    return random_path(rng, vertices, clearance, closed=True)


def path_hitting(index: int, rng: random.Random, clearance: float = 1e-2) -> Tuple[ChargePath, float]:
    """A straight path meeting L_index once at a known parameter t* and avoiding the rest."""
    while True:
        Zh = point_on_hyperplane(index, rng)
        d = [random_complex(rng) for _ in range(3)]
        t_star = rng.uniform(0.2, 0.8)
        a = tuple(z - t_star * dz for z, dz in zip(Zh, d))
        b = tuple(z + (1 - t_star) * dz for z, dz in zip(Zh, d))
        path = ChargePath([a, b])
        hit = path.first_hit(clearance)
        if hit is not None and hit[0] == index and abs(hit[1] - t_star) < 1e-12:
            return path, t_star
