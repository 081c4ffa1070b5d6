from fractions import Fraction as Q

import pytest
from hypothesis import given, settings, strategies as st

from relaxkm.cartan import cartan_type_a
from relaxkm.characters import (FormalCharacter, Region, char_relaxed_formula, char_verma,
                                equal_on_region)
from relaxkm.errors import RegionMismatch
from relaxkm.induced import relaxed_module, verma_module

from test_cartan import oracle_affine_a_roots
from test_kernels import brute_partitions

G2 = cartan_type_a(2)


def test_relaxed_rows_follow_eta_cubed():
    # for affine sl2 at i = 1 each delta-degree has three root directions outside the alpha_1 line,
    # so rows are the coefficients of prod (1 - q^d)^-3
    lam = G2.rho.scale(-2)
    base = lam + G2.simple_root(1).scale(Q(1, 2))
    region = Region.box(G2, base, 1, (-4, 4), 4)
    ch = char_relaxed_formula(G2, lam, Q(1, 2), 1, region)
    rows = {}
    for w in region.weights:
        k, m = region.coords(w)
        rows.setdefault(k, set()).add(ch[w])
    assert rows == {0: {1}, -1: {3}, -2: {9}, -3: {22}, -4: {51}}


def oracle_verma(gcm, lam, region, H):
    """Verma multiplicities by brute-force counting over the enumerated positive roots."""
    n = gcm.size
    roots = oracle_affine_a_roots(n, H)
    coins = [c for c, mult in roots.items() for _ in range(mult)]
    rel = {}
    for w in region.weights:
        c = gcm.root_coords(lam - w)
        if c is not None and all(x >= 0 and x.denominator == 1 for x in c):
            rel[w] = tuple(int(x) for x in c)
    shape = tuple(max(c[j] for c in rel.values()) + 1 for j in range(n))
    table = brute_partitions(shape, coins)
    return {w: int(table[c]) for w, c in rel.items()}


@pytest.mark.parametrize("n,depth", [(2, 3), (3, 2)])
def test_verma_character_matches_brute_force(n, depth):
    g = cartan_type_a(n)
    lam = g.rho.scale(-2)
    region = Region.box(g, lam, 1, (-3, 0), depth)
    got = char_verma(g, lam, region)
    want = oracle_verma(g, lam, region, 4 * n * (depth + 1))
    assert {w: got[w] for w in region.weights} == {w: want.get(w, 0) for w in region.weights}


def test_verma_small_values():
    lam = G2.rho.scale(-2)
    region = Region.box(G2, lam, 1, (-2, 0), 1)
    ch = char_verma(G2, lam, region)
    assert ch[lam] == 1
    assert ch[lam - G2.simple_root(1)] == 1
    assert ch[lam - G2.delta] == 2


@pytest.mark.parametrize("lam_scale", [-2, -3])
@pytest.mark.parametrize("alpha", [Q(0), Q(1, 2), Q(1, 3)])
def test_module_character_equals_formula(lam_scale, alpha):
    lam = G2.rho.scale(lam_scale)
    m = relaxed_module(G2, lam, alpha, 1, 3)
    region = Region.box(G2, m.base, 1, (-6, 6), 3)
    ok, where = equal_on_region(m.character(region), char_relaxed_formula(G2, lam, alpha, 1, region))
    assert ok, where


def test_module_character_equals_formula_sl3():
    g = cartan_type_a(3)
    lam = g.rho.scale(-2)
    m = relaxed_module(g, lam, Q(1, 2), 1, 2, window=(-3, 3))
    region = Region.box(g, m.base, 1, (-3, 3), 2)
    ok, where = equal_on_region(m.character(region), char_relaxed_formula(g, lam, Q(1, 2), 1, region))
    assert ok, where


def test_verma_module_character():
    lam = G2.rho.scale(-2)
    m = verma_module(G2, lam, 1, 3)
    region = Region.box(G2, lam, 1, (-5, 0), 3)
    assert equal_on_region(m.character(region), char_verma(G2, lam, region)) == (True, None)


@settings(max_examples=25, deadline=None)
@given(a=st.fractions(-3, 3, max_denominator=6), k=st.integers(-2, 2))
def test_formula_invariant_under_integer_shift(a, k):
    lam = G2.rho.scale(-2)
    region = Region.box(G2, lam + G2.simple_root(1).scale(a), 1, (-4, 4), 2)
    c1 = char_relaxed_formula(G2, lam, a, 1, region)
    c2 = char_relaxed_formula(G2, lam, a + k, 1, region)
    assert equal_on_region(c1, c2) == (True, None)


def test_reflection_and_sum():
    lam = G2.rho.scale(-3)
    region = Region.box(G2, lam, 1, (-2, 2), 1)
    ch = char_relaxed_formula(G2, lam, 0, 1, region)
    r = ch.reflect(1)
    for w in region.weights:
        assert r[G2.reflect(1, w)] == ch[w]
    double = ch + ch
    assert all(double[w] == 2 * ch[w] for w in region.weights)


def test_output_formats():
    lam = G2.rho.scale(-2)
    region = Region.box(G2, lam, 1, (-1, 1), 1)
    ch = char_relaxed_formula(G2, lam, Q(1, 2), 1, region)
    # the region is anchored at lam, so alpha = 1/2 lives on a different coset: empty support
    assert all(ch[w] == 0 for w in region.weights)
    region = Region.box(G2, lam + G2.simple_root(1).scale(Q(1, 2)), 1, (-1, 1), 1)
    ch = char_relaxed_formula(G2, lam, Q(1, 2), 1, region)
    tsv = ch.to_tsv().splitlines()
    assert tsv[0] == "delta_deg\\m\t-1\t0\t1"
    assert tsv[1:] == ["0\t1\t1\t1", "-1\t3\t3\t3"]
    doc = ch.to_json()
    assert len(doc["rows"]) == len(region.weights)
    assert {r["mult"] for r in doc["rows"]} == {1, 3}


def test_validation():
    region = Region.box(G2, G2.rho, 1, (0, 0), 0)
    with pytest.raises(ValueError):
        FormalCharacter(region, {G2.rho: -1})
    with pytest.raises(ValueError):
        FormalCharacter(region, {G2.delta: 1})
    other = Region.box(G2, G2.rho, 1, (0, 1), 0)
    with pytest.raises(RegionMismatch):
        equal_on_region(FormalCharacter(region), FormalCharacter(other))
