from fractions import Fraction as Q

import pytest
from hypothesis import assume, given, settings, strategies as st

from relaxkm import sl2
from relaxkm.errors import BadParameters, InconsistentWindow, WindowEdge

LAMS = list(range(-4, 5))


def casimir(m: sl2.DenseSl2Module, n: int) -> Q:
    """ef + fe + h^2/2 on v_n."""
    fe = m.e(n) * m.f(n + 1)
    ef = m.f(n) * m.e(n - 1)
    return ef + fe + m.weight(n) ** 2 / 2


@pytest.mark.parametrize("Lam", LAMS)
@pytest.mark.parametrize("family,alpha", [("generic", Q(1, 2)), ("generic", Q(1, 3)), ("eq", None),
                                          ("lt", None), ("gt", None)])
def test_relations_and_casimir(Lam, family, alpha):
    m = sl2.construct(Lam, family, (-8, 8), alpha)
    assert m.relation_defects() == []
    # the Casimir of the block is the one of the Verma module of highest weight Lam
    for n in range(-7, 8):
        assert casimir(m, n) == Q(Lam) * (Lam + 2) / 2


@pytest.mark.parametrize("Lam", LAMS)
def test_eq_zero_placement(Lam):
    m = sl2.construct(Lam, "eq", (-10, 10))
    assert [n for n in range(-10, 10) if m.e(n) == 0] == [-Lam - 1]
    assert [n for n in range(-9, 11) if m.f(n) == 0] == [1]


@pytest.mark.parametrize("Lam", LAMS)
def test_gt_and_lt_zero_placement(Lam):
    gt = sl2.construct(Lam, "gt", (-10, 10))
    lt = sl2.construct(Lam, "lt", (-10, 10))
    assert sorted(n for n in range(-10, 10) if gt.e(n) == 0) == sorted({-Lam - 1, 0})
    assert all(gt.f(n) != 0 for n in range(-9, 11))
    assert sorted(n for n in range(-9, 11) if lt.f(n) == 0) == sorted({-Lam, 1})
    assert all(lt.e(n) != 0 for n in range(-10, 10))


def test_generic_coefficients():
    # b_n = fe on v_{n-1} in the gauge a = 1
    m = sl2.construct(-2, "generic", (-3, 3), Q(1, 2))
    assert m.a == (Q(1),) * 6
    assert m.f(1) == sl2.casimir_fe(Q(-2), Q(1, 2), 0) == Q(1, 4)
    assert m.f(0) == Q(-3, 4)
    assert all(m.f(n) != 0 for n in range(-2, 4))


@settings(max_examples=60, deadline=None)
@given(Lam=st.fractions(-6, 6, max_denominator=5), alpha=st.fractions(-3, 3, max_denominator=7))
def test_generic_family_is_a_module(Lam, alpha):
    assume(alpha.denominator != 1 and (alpha + Lam).denominator != 1)
    m = sl2.construct(Lam, "generic", (-6, 6), alpha)
    assert m.relation_defects() == []
    assert all(m.f(n) != 0 for n in range(-5, 7))
    assert sl2.isomorphic(sl2.dual_sl2(sl2.dual_sl2(m)), m)


@pytest.mark.parametrize("family", ["generic", "eq", "lt", "gt"])
@pytest.mark.parametrize("Lam", [-3, 0, 2])
def test_double_dual(family, Lam):
    m = sl2.construct(Lam, family, (-8, 8), Q(1, 3) if family == "generic" else None)
    d = sl2.dual_sl2(m)
    assert d.relation_defects() == []
    assert sl2.isomorphic(sl2.dual_sl2(d), m)


def test_dual_swaps_zero_kinds_of_eq():
    # the dual of the eq placement has its e-zero where eq had an f-zero
    m = sl2.construct(1, "eq", (-8, 8))
    d = sl2.dual_sl2(m)
    assert [n for n in range(-8, 8) if d.e(n) == 0] == [0]
    assert [n for n in range(-7, 9) if d.f(n) == 0] == [-1]
    assert not sl2.isomorphic(d, m)


def test_verma_top_level():
    v = sl2.verma_sl2(2, (-6, 2))
    assert v.indices == list(range(-6, 1))
    assert v.relation_defects() == []
    assert v.e_matrix(0) == []
    # e f^k v_0 = k(Lam - k + 1) f^(k-1) v_0
    for k in range(1, 7):
        assert v.e_matrix(-k) == [[Q(k * (2 - k + 1))]]
        assert v.f_matrix(-k + 1) == [[Q(1)]]


def test_weight_module_roundtrip():
    m = sl2.construct(-1, "eq", (-5, 5))
    w = m.to_weight_module()
    assert w.relation_defects() == []
    assert w.to_dense("eq") == m
    assert sl2.isomorphic(w.dual().to_dense(), sl2.dual_sl2(m))


def test_errors():
    with pytest.raises(BadParameters):
        sl2.construct(0, "generic", (-3, 3), Q(1))
    with pytest.raises(BadParameters):
        sl2.construct(Q(1, 2), "eq", (-3, 3))
    with pytest.raises(BadParameters):
        sl2.construct(0, "weird", (-3, 3))
    with pytest.raises(InconsistentWindow):
        sl2.construct(0, "eq", (3, 3))
    m = sl2.construct(0, "eq", (-3, 3))
    with pytest.raises(WindowEdge):
        m.e(3)
    with pytest.raises(WindowEdge):
        m.f(-3)
