import pytest

from stab_a3.exccol import (
    LABELS,
    TABLE1_ORDER,
    UnmatchedClass,
    araya_classes,
    classify,
    enumerate_sequences,
    is_complete,
    is_connected,
    is_exceptional_sequence,
    left_mutation,
    mutation_graph,
    representative,
    right_mutation,
)
from stab_a3.repcore import S1, S2, S3, S12, S23, S123
from stab_a3.tables import load_expected


def test_sixteen_sequences_twelve_classes():
    seqs = enumerate_sequences()
    assert len(seqs) == 16
    classes = araya_classes(seqs)
    assert sorted(classes) == list(LABELS)
    assert sum(len(c.members) for c in classes.values()) == 16
    # exactly four classes have two orderings: the orthogonal pairs of I, J, K, L
    doubles = sorted(lab for lab, c in classes.items() if len(c.members) == 2)
    assert doubles == ["I", "J", "K", "L"]


def test_representatives_are_exceptional_and_complete():
    for lab in LABELS:
        s = representative(lab)
        assert is_exceptional_sequence(s)
        assert is_complete(s)
        assert [w.name for w in s] == list(TABLE1_ORDER[lab])


def test_exceptional_examples():
    assert is_exceptional_sequence((S1, S2, S3))
    assert is_exceptional_sequence((S12, S1, S3))
    assert not is_exceptional_sequence((S2, S1, S3))
    assert not is_exceptional_sequence((S1, S1, S3))


def test_classify_rejects_unknown_support():
    with pytest.raises(UnmatchedClass):
        classify((S1, S2, S12))


def test_graph_matches_transcription():
    doc = load_expected("figure1")
    edges = mutation_graph()
    for kind in ("R1", "R2"):
        got = {(e.source, e.target) for e in edges if e.kind == kind and not e.is_loop}
        assert got == {tuple(x) for x in doc[kind]}
        loops = sorted(e.source for e in edges if e.kind == kind and e.is_loop)
        assert loops == sorted(doc["loops"][kind])
    assert is_connected(edges)


def test_graph_edges_named_in_figure():
    edges = {(e.kind, e.source, e.target) for e in mutation_graph()}
    assert ("R1", "A", "B") in edges
    assert ("R2", "A", "L") in edges
    assert ("R2", "I", "I") in edges


@pytest.mark.parametrize("s", sorted(enumerate_sequences(), key=repr), ids=repr)
def test_braid_and_inverse_relations(s):
    a = right_mutation(right_mutation(right_mutation(s, 1), 2), 1)
    b = right_mutation(right_mutation(right_mutation(s, 2), 1), 2)
    assert a.objects == b.objects
    for i in (1, 2):
        assert left_mutation(right_mutation(s, i), i).objects == s.objects
        assert right_mutation(left_mutation(s, i), i).objects == s.objects


def test_mutation_examples():
    A = representative("A")
    assert right_mutation(A, 1).objects == (S2, S12, S3)
    assert right_mutation(A, 2).label == "L"
    I = representative("I")
    assert right_mutation(I, 2).label == "I"
    assert right_mutation(I, 1).objects == (S1, S2, S3)
    assert left_mutation(representative("D"), 2).objects[0] == S3
    assert S23 in representative("D").objects and S123 in representative("D").objects
