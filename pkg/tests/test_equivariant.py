import random

import pytest
from hypothesis import given, settings, strategies as st

from circlefix import classify as C
from circlefix.equivariant import (
    CASES,
    BundleA,
    ConeA,
    FreeRotation,
    JoinA,
    MultConeA,
    Puncture,
    SuspA,
    Trivial,
    WedgeA,
    catalog,
    fixed_set,
    gallery,
    random_action,
    report,
    sphere_action,
    total_space,
)
from circlefix.graded import join_poly
from circlefix.space import Join, Product, Sphere, Toda, ValidationError, eval_poincare, is_empty


def test_suspended_free_rotation_fixes_sphere():
    # (r+1)-fold suspension of a free action on S^(3n-r-1) fixes S^r
    n, r = 2, 2
    a = sphere_action(3 * n, r)
    assert eval_poincare(total_space(a)) == eval_poincare(Sphere(3 * n))
    assert eval_poincare(fixed_set(a)) == eval_poincare(Sphere(r))


def test_cone_with_three_fixed_points():
    f = fixed_set(ConeA(4, 0))
    assert eval_poincare(f).ranks == {0: 3}


def test_trivial_fixes_everything():
    x = Toda(2, 1, 1)
    assert fixed_set(Trivial(x)) == x
    rep = report(Trivial(Sphere(2)))
    assert rep.tnhz and rep.fixed == rep.total


def test_join_of_actions_fixes_join_of_fixed_sets():
    a, b = sphere_action(4, 2), ConeA(4, 2)
    f = fixed_set(JoinA(a, b))
    assert f == Join(fixed_set(a), fixed_set(b))
    expected = join_poly(eval_poincare(fixed_set(a)).to_reduced(), eval_poincare(fixed_set(b)).to_reduced())
    assert eval_poincare(f).to_reduced() == expected


@given(st.integers(1, 6), st.sampled_from([1, 3, 5]))
def test_iterated_suspension(m, k):
    a = FreeRotation(k)
    for _ in range(m):
        a = SuspA(a)
    assert eval_poincare(fixed_set(a)) == eval_poincare(Sphere(m - 1))


def test_report_case_1():
    rep = report(WedgeA(tuple(sphere_action(d, 0) for d in (2, 4, 6))))
    assert (rep.rank_total, rep.rank_fixed, rep.chi_total, rep.chi_fixed, rep.tnhz) == (4, 4, 4, 4, True)
    assert eval_poincare(rep.fixed).ranks == {0: 4}


def test_report_non_tnhz_assembly():
    g = gallery("thm2-Sr", n=3, r=1)
    assert (g.report.rank_total, g.report.rank_fixed, g.report.tnhz) == (4, 2, False)


def test_gallery_examples():
    g = gallery("3-P2-point", n=4, r=2)
    assert g.passed and g.observed == C.FixedSetType.of(C.p2(2), C.PT)
    g = gallery("thm2-Sr", n=3, r=1)
    assert g.passed and g.observed == C.FixedSetType.of(C.sphere(1))
    g = gallery("1-cone", n=2)
    assert g.passed and g.observed == C.FixedSetType.of(C.PT, C.PT, C.PT, C.PT)


def test_gallery_unknown_case():
    with pytest.raises(ValidationError):
        gallery("5-nonexistent")
    with pytest.raises(ValidationError):
        gallery("1-wedge", k=3)


@pytest.mark.parametrize("case_id,params", catalog())
def test_catalog(case_id, params):
    assert gallery(case_id, **params).passed


def test_catalog_covers_all_cases():
    assert {cid for cid, _ in catalog()} == set(CASES)


def test_primitives():
    assert eval_poincare(fixed_set(MultConeA(8))).ranks == {0: 2, 6: 1}
    assert eval_poincare(total_space(BundleA(3))) == eval_poincare(Product(Sphere(2), Sphere(5)))
    p = Puncture(BundleA(3))
    assert eval_poincare(total_space(p)).ranks == {0: 1, 2: 1, 5: 1}
    assert eval_poincare(fixed_set(p)).ranks == {0: 1}


def test_action_errors():
    with pytest.raises(ValidationError):
        FreeRotation(4)
    with pytest.raises(ValidationError):
        ConeA(4, 1)
    with pytest.raises(ValidationError):
        MultConeA(3)
    with pytest.raises(ValidationError):
        fixed_set(Puncture(FreeRotation(3)))
    with pytest.raises(ValidationError):
        fixed_set(WedgeA((sphere_action(2, 0), FreeRotation(3))))
    with pytest.raises(ValidationError):
        fixed_set(WedgeA((sphere_action(2, 0), sphere_action(4, 0)), (0, 5)))
    with pytest.raises(ValidationError):
        sphere_action(4, 1)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_random_actions_respect_rank_and_euler(seed):
    a = random_action(random.Random(seed))
    rep = report(a)
    assert rep.rank_fixed <= rep.rank_total
    assert rep.chi_fixed == rep.chi_total
    assert rep.tnhz == (rep.rank_fixed == rep.rank_total)
    assert is_empty(rep.fixed) == (rep.rank_fixed == 0)
