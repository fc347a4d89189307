"""Computed versions of the classification tables and diffs against bundled transcriptions."""
from __future__ import annotations

import json
from importlib import resources
from typing import Dict, Iterable, List, Optional, Sequence

from .charts import chart, inequality_strings
from .exccol import LABELS, mutation_graph
from .repcore import DerivedInterval, derived_hom, interval

PAIRS = ((0, 1), (1, 2), (0, 2))
PAIR_KEYS = {(0, 1): "12", (1, 2): "23", (0, 2): "13"}


def load_expected(name: str) -> dict:
    """One of the bundled transcriptions: table1, table2, table3, figure1, figure3."""
    ref = resources.files("stab_a3") / "data" / "reference" / f"{name}.json"
    return json.loads(ref.read_text(encoding="utf-8"))


def table_exc() -> Dict[str, dict]:
    rows = {}
    for label in LABELS:
        c = chart(label)
        rows[label] = {
            "objects": [w.name for w in c.objects],
            "type": c.type_tag,
            "k": {PAIR_KEYS[p]: c.kmat[p] for p in PAIRS},
        }
    return rows


def table_alpha() -> Dict[str, dict]:
    rows = {}
    for label in LABELS:
        c = chart(label)
        rows[label] = {
            "objects": [w.name for w in c.objects],
            "type": c.type_tag,
            "alpha": {PAIR_KEYS[p]: c.amat[p] for p in PAIRS},
        }
    return rows


def table_ineq() -> Dict[str, List[str]]:
    out = {}
    for label in LABELS:
        s = inequality_strings(chart(label))
        out[label] = [s[p] for p in PAIRS]
    return out


def graph_document() -> dict:
    edges = mutation_graph()
    doc = {"nodes": list(LABELS), "R1": [], "R2": [], "loops": {"R1": [], "R2": []}}
    for e in edges:
        if e.source == e.target:
            doc["loops"][e.kind].append(e.source)
        else:
            doc[e.kind].append([e.source, e.target])
    for key in ("R1", "R2"):
        doc[key].sort()
        doc["loops"][key].sort()
    return doc


def graph_dot(doc: Optional[dict] = None) -> str:
    doc = doc or graph_document()
    lines = ["digraph mutations {"]
    lines += [f"  {n};" for n in doc["nodes"]]
    for kind, style in (("R1", "solid"), ("R2", "dotted")):
        for s, t in doc[kind]:
            lines.append(f'  {s} -> {t} [style={style}, label="{kind}"];')
        for n in doc["loops"][kind]:
            lines.append(f'  {n} -> {n} [style={style}, label="{kind} (self-equivalent)"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


FORMULAS = {
    "a": lambda a, b, c: a,
    "b": lambda a, b, c: b,
    "c": lambda a, b, c: c,
    "a+b-1": lambda a, b, c: a + b - 1,
    "min(a+b-1,c)": lambda a, b, c: min(a + b - 1, c),
}


def _alpha_formula(expr: Optional[str], k: Dict[str, Optional[int]], letters: Dict[str, str]) -> Optional[int]:
    if expr is None:
        return None
    a, b, c = (k[letters[ch]] for ch in "abc")
    return FORMULAS[expr](a, b, c)


def diff_exc(expected: Optional[dict] = None) -> List[str]:
    expected = expected or load_expected("table1")
    got = table_exc()
    out = []
    for label in LABELS:
        e, g = expected["rows"][label], got[label]
        for field in ("objects", "type", "k"):
            if e[field] != g[field]:
                out.append(f"table1 {label}.{field}: expected {e[field]}, computed {g[field]}")
    for fact in expected.get("extra_facts", []):
        a, b = (DerivedInterval(interval(n), 0) for n in fact["hom"])
        dim = derived_hom(a, b).get(fact["degree"], 0)
        if dim != fact["dim"]:
            out.append(f"Hom^{fact['degree']}({fact['hom'][0]},{fact['hom'][1]}) has dim {dim}")
    return out


def diff_alpha(expected_types: Optional[dict] = None, expected_k: Optional[dict] = None) -> List[str]:
    """alpha per chart against the type formulas applied to the transcribed k values."""
    t2 = expected_types or load_expected("table2")
    t1 = expected_k or load_expected("table1")
    got = table_alpha()
    out = []
    for label in LABELS:
        row = t1["rows"][label]
        formulas = t2["alpha_by_type"][row["type"]]
        for key, expr in formulas.items():
            want = _alpha_formula(expr, row["k"], t2["type_letters"])
            have = got[label]["alpha"][key]
            if want != have:
                out.append(f"alpha {label}.{key}: expected {want}, computed {have}")
    return out


def diff_ineq(expected: Optional[dict] = None) -> List[str]:
    expected = expected or load_expected("table2")
    got = table_ineq()
    out = []
    for label in LABELS:
        for col, (e, g) in enumerate(zip(expected["rows"][label], got[label])):
            if e != g:
                out.append(f"table2 {label} column {col}: expected {e!r}, computed {g!r}")
    return out


def diff_graph(expected: Optional[dict] = None) -> List[str]:
    expected = expected or load_expected("figure1")
    got = graph_document()
    out = []
    for kind in ("R1", "R2"):
        e = {tuple(x) for x in expected[kind]}
        g = {tuple(x) for x in got[kind]}
        for s, t in sorted(e - g):
            out.append(f"missing {kind} edge {s}->{t}")
        for s, t in sorted(g - e):
            out.append(f"unexpected {kind} edge {s}->{t}")
        if sorted(expected["loops"][kind]) != got["loops"][kind]:
            out.append(f"{kind} loops: expected {expected['loops'][kind]}, computed {got['loops'][kind]}")
    return out


def cell_document(cells: Iterable) -> List[dict]:
    return [
        {
            "chart": c.chart,
            "facet": c.describe().split(": ", 1)[1],
            "shared": sorted(c.sharers),
            "covers": sorted(c.covers),
            "seen": sorted(c.seen_covers),
            "samples": c.samples,
            "cell": f"{c.key}[{','.join(sorted(c.covers))}]",
        }
        for c in cells
    ]


def diff_facets(cells: Sequence, expected: Optional[dict] = None) -> List[str]:
    """Every header (S)[Z] of a group G must be realised by a census cell of a chart in S
    whose sharers within G are exactly S and whose interior covers include Z.  The
    sub-labels of a picture must all be met by the samples of its matched cells."""
    expected = expected or load_expected("table3")
    out = []
    for group in expected["groups"]:
        G = set(group["charts"])
        for pic in group["cells"]:
            seen = set()
            for h in pic["headers"]:
                S = set(h["shared"])
                hits = [c for c in cells
                        if c.chart in S and set(c.sharers) & G == S and h["cover"] in c.covers]
                if not hits:
                    out.append(f"no census cell ({','.join(sorted(S))})[{h['cover']}] in group {''.join(group['charts'])}")
                for c in hits:
                    seen |= set(c.seen_covers)
            missing = set(pic["sublabels"]) - seen
            if missing:
                heads = " ".join(f"({','.join(h['shared'])})[{h['cover']}]" for h in pic["headers"])
                out.append(f"{heads}: sub-labels {sorted(missing)} not met")
    return out
