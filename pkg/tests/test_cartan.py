from fractions import Fraction as Q

import pytest
from hypothesis import given, settings, strategies as st

from relaxkm.cartan import (GCM, cartan_type_a, is_rho_regular_antidominant, parse_type,
                            positive_roots_up_to_height, validate_affine)
from relaxkm.errors import IndexOutOfRange, MultiplicityUnavailable, NotAffine, NotGCM


def oracle_affine_a_roots(n: int, H: int):
    """Positive roots of A_{n-1}^(1) as (finite root) + k*delta, written in simple-root coordinates."""
    out = {}
    for a in range(n):
        for b in range(n):
            if a == b:
                continue
            beta = [0] * n
            lo, hi = min(a, b), max(a, b)
            for j in range(lo + 1, hi + 1):
                beta[j] = 1 if a < b else -1
            for k in range(0, H + 1):
                if k == 0 and a > b:
                    continue
                c = tuple(k + beta[j] if j else k for j in range(n))
                if sum(c) <= H:
                    out[c] = 1
    for k in range(1, H + 1):
        if k * n <= H:
            out[(k,) * n] = n - 1
    return out


def test_sl2_hat_height_three_has_five_roots():
    g = parse_type("A1^1")
    roots = positive_roots_up_to_height(g, 3)
    assert [r.coords for r in roots] == [(0, 1), (1, 0), (1, 1), (1, 2), (2, 1)]
    assert [r.is_real for r in roots] == [True, True, False, True, True]


@pytest.mark.parametrize("n,H", [(2, 7), (3, 6), (4, 8)])
def test_roots_match_loop_realization_oracle(n, H):
    g = cartan_type_a(n)
    got = {r.coords: r.multiplicity for r in positive_roots_up_to_height(g, H)}
    assert got == oracle_affine_a_roots(n, H)


def test_root_vectors_are_consistent_with_coords():
    g = cartan_type_a(3)
    for r in positive_roots_up_to_height(g, 5):
        assert g.root_coords(r.root) == tuple(Q(x) for x in r.coords)
        assert r.height == sum(r.coords)


def test_delta_pairs_to_zero_and_rho_is_one():
    for n in (2, 3, 5):
        g = cartan_type_a(n)
        assert all(x == 0 for x in g.delta.fund)
        assert g.delta.delta == 1
        assert g.rho.fund == (1,) * n
        assert g.level(g.rho) == n


def test_rejects_finite_and_non_gcm():
    with pytest.raises(NotAffine):
        parse_type("A2")
    with pytest.raises(NotGCM):
        validate_affine([[2, 1], [-1, 2]])
    with pytest.raises(NotGCM):
        parse_type("B2^1")


def test_non_type_a_matrix_has_no_multiplicities():
    # A_3^(1) with the nodes relabelled is still cyclic; the D_4^(1) matrix is not
    d4 = [[2, 0, -1, 0, 0], [0, 2, -1, 0, 0], [-1, -1, 2, -1, -1], [0, 0, -1, 2, 0], [0, 0, -1, 0, 2]]
    g = validate_affine(d4, "D4^1")
    with pytest.raises(MultiplicityUnavailable):
        positive_roots_up_to_height(g, 8)
    assert all(r.is_real for r in positive_roots_up_to_height(g, 3, imaginary=False))


def test_index_checks():
    g = cartan_type_a(2)
    with pytest.raises(IndexOutOfRange):
        g.simple_root(2)
    with pytest.raises(IndexOutOfRange):
        g.weight([1, 2, 3])


def test_antidominance():
    g = cartan_type_a(2)
    assert is_rho_regular_antidominant(g, g.rho.scale(-2))
    assert not is_rho_regular_antidominant(g, g.rho.scale(-1))


@settings(max_examples=60, deadline=None)
@given(n=st.integers(2, 4), i=st.integers(0, 3), data=st.data())
def test_reflection_is_an_involution_fixing_delta(n, i, data):
    i %= n
    g = cartan_type_a(n)
    fund = data.draw(st.lists(st.fractions(-5, 5, max_denominator=4), min_size=n, max_size=n))
    lam = g.weight(fund, data.draw(st.integers(-3, 3)))
    assert g.reflect(i, g.reflect(i, lam)) == lam
    assert g.reflect(i, g.delta) == g.delta
    assert g.level(g.reflect(i, lam)) == g.level(lam)


@settings(max_examples=30, deadline=None)
@given(n=st.integers(2, 4), i=st.integers(0, 3))
def test_simple_reflection_permutes_positive_real_roots(n, i):
    i %= n
    g = cartan_type_a(n)
    H = 3 * n
    simple = tuple(int(j == i) for j in range(n))
    real = {r.coords for r in positive_roots_up_to_height(g, H) if r.is_real}
    for c in real - {simple}:
        img = g.reflect_coords(i, c)
        assert all(x >= 0 for x in img)


def test_gcm_equality_by_entries():
    a, b = cartan_type_a(3), parse_type("A2^1")
    assert a == b and hash(a) == hash(b)
    assert isinstance(a, GCM)
