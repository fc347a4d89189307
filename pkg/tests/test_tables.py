import copy

from stab_a3 import tables


def test_bundled_files_name_their_table():
    for name, source in (("table1", "Table 1"), ("table2", "Table 2"), ("table3", "Table 3"),
                         ("figure1", "Figure 1"), ("figure3", "Figure 3")):
        assert tables.load_expected(name)["source"] == source


def test_all_diffs_clean():
    assert tables.diff_exc() == []
    assert tables.diff_alpha() == []
    assert tables.diff_ineq() == []
    assert tables.diff_graph() == []


def test_diff_reports_changed_k():
    doc = copy.deepcopy(tables.load_expected("table1"))
    doc["rows"]["B"]["k"]["13"] = 0
    assert tables.diff_exc(doc) == ["table1 B.k: expected {'12': 0, '13': 0, '23': 1}, "
                                    "computed {'12': 0, '23': 1, '13': 1}"]


def test_diff_reports_changed_inequality_and_alpha():
    t2 = copy.deepcopy(tables.load_expected("table2"))
    t2["rows"]["D"][2] = "S3<S123"
    assert len(tables.diff_ineq(t2)) == 1
    t2["alpha_by_type"]["II"]["13"] = "c"
    assert tables.diff_alpha(t2)


def test_diff_reports_missing_edge():
    doc = copy.deepcopy(tables.load_expected("figure1"))
    doc["R1"].remove(["A", "B"])
    assert tables.diff_graph(doc) == ["unexpected R1 edge A->B"]


def test_table3_has_eight_groups_of_four():
    doc = tables.load_expected("table3")
    assert len(doc["groups"]) == 8
    assert all(len(g["cells"]) == 4 for g in doc["groups"])
    headers = sum(len(c["headers"]) for g in doc["groups"] for c in g["cells"])
    assert headers == 40
