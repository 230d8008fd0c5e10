import pytest

from circlefix import classify as C
from circlefix.classify import FixedSetType as T
from circlefix.space import Disjoint, Point, Sphere, ValidationError, Wedge


def test_enumerate_non_tnhz_odd():
    got = C.enumerate_fixed_types(3, False)
    assert got == {T()} | {T.of(C.sphere(r)) for r in (1, 3, 5, 7, 9)}


def test_enumerate_non_tnhz_even_is_empty():
    assert C.enumerate_fixed_types(2, False) == set()


def test_enumerate_tnhz_n2():
    got = C.enumerate_fixed_types(2, True)
    assert T.of(C.PT, C.PT, C.PT, C.PT) in got
    for r in (2, 4, 6):
        assert T.of(C.sphere(r), C.PT, C.PT) in got
    # no odd-sphere component set with chi != 4
    assert all(t.chi == 4 for t in got)
    assert T.of(C.sphere(1), C.PT, C.PT) not in got


def test_reference_list_examples():
    ref = C.theorem_reference_list(2, True)
    p2_point = {t for t in ref if len(t.components) == 2 and t.components[1].kind == "P2"}
    assert p2_point == {T.of(C.p2(2), C.PT)}
    ref = C.theorem_reference_list(3, True)
    triples = [t.components[0].params for t in ref if t.components[0].kind == "WedgeSpheres"
               and len(t.components[0].params) == 3]
    assert triples and all(sum(d % 2 == 0 for d in p) == 1 for p in triples)
    assert C.theorem_reference_list(3, False) == C.enumerate_fixed_types(3, False)


def test_compare_examples():
    assert C.compare(C.enumerate_fixed_types(3, False), C.theorem_reference_list(3, False)).empty
    assert C.compare(C.enumerate_fixed_types(2, True), C.theorem_reference_list(2, True)).empty
    s = {T.of(C.PT)}
    assert C.compare(s, s).empty
    d = C.compare({T.of(C.PT)}, {T()})
    assert d.only_left == (T.of(C.PT),) and d.only_right == (T(),)


@pytest.mark.parametrize("n", range(1, 11))
def test_enumeration_invariants(n):
    for tnhz in (True, False):
        for t in C.enumerate_fixed_types(n, tnhz):
            assert t.chi == C.ambient_chi(n)
            assert t.total_rank == 4 if tnhz else t.total_rank <= 3
            assert list(t.components) == sorted(t.components, key=C.ComponentDescriptor.sort_key)


@pytest.mark.parametrize("n", range(1, 11))
def test_theorem_one_reproduced(n):
    assert C.compare_theorem(n, True)["empty_diff"]


def test_axioms_only_exclude_p2():
    doc = C.compare_theorem(4, True)
    assert doc["excluded_by_axioms"]
    assert all("P2" in t for t in doc["excluded_by_axioms"])


def test_canonical_strings():
    assert str(T()) == "∅"
    assert str(T.of(C.PT, C.wedge(4, 1))) == "pt ⊔ S1∨S4"
    assert str(T.of(C.p2_wedge(2, 6))) == "P2(2)∨S6"
    assert C.wedge(3, 1) == C.wedge(1, 3)


def test_fixed_set_type_of_expression():
    e = Disjoint((Wedge((Sphere(2), Sphere(4))), Point()))
    assert C.fixed_set_type(e) == T.of(C.wedge(2, 4), C.PT)


def test_descriptor_errors():
    with pytest.raises(ValidationError):
        C.ComponentDescriptor("Torus")
    with pytest.raises(ValidationError):
        C.enumerate_fixed_types(0, True)
