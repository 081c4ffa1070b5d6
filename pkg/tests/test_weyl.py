import itertools

import pytest
from hypothesis import given, settings, strategies as st

from relaxkm.cartan import cartan_type_a
from relaxkm.errors import IndexOutOfRange, MixedGCM
from relaxkm.weyl import (WeylElement, act, bruhat_leq, descends, dot_act, elements_up_to_length,
                          simple_reflection, strata)


def subword_leq(u: WeylElement, w: WeylElement) -> bool:
    """Bruhat order by brute force over all subwords of a reduced word of w."""
    g = w.gcm
    n = len(w.word)
    for r in range(n + 1):
        for idx in itertools.combinations(range(n), r):
            if WeylElement.from_word(g, [w.word[k] for k in idx]) == u:
                return True
    return False


@pytest.mark.parametrize("n,L", [(2, 6), (3, 4)])
def test_bruhat_equals_subword_order(n, L):
    els = elements_up_to_length(cartan_type_a(n), L)
    for u, w in itertools.product(els, repeat=2):
        assert bruhat_leq(u, w) == subword_leq(u, w), (u, w)


def test_element_counts():
    # affine sl2: two elements of each positive length; affine sl3 (Bott): 1, 3, 6, 9, 12
    assert len(elements_up_to_length(cartan_type_a(2), 8)) == 17
    counts = [0] * 5
    for w in elements_up_to_length(cartan_type_a(3), 4):
        counts[w.length] += 1
    assert counts == [1, 3, 6, 9, 12]


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(0, 2), max_size=8), st.lists(st.integers(0, 2), max_size=8))
def test_group_law_and_lengths(a, b):
    g = cartan_type_a(3)
    u, v = WeylElement.from_word(g, a), WeylElement.from_word(g, b)
    uv = u * v
    assert act(uv, g.rho) == act(u, act(v, g.rho))
    assert uv.length <= u.length + v.length
    assert (uv.length - u.length - v.length) % 2 == 0
    assert u * u.inverse() == WeylElement.identity(g)
    # reduced words really are reduced and reproduce the element
    assert WeylElement.from_word(g, u.word) == u


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(0, 1), max_size=10), st.integers(0, 1))
def test_descent_matches_length_drop(word, i):
    g = cartan_type_a(2)
    w = WeylElement.from_word(g, word)
    sw = simple_reflection(g, i) * w
    assert descends(i, w) == (sw.length < w.length)


def test_dot_action_fixes_minus_rho():
    g = cartan_type_a(2)
    for w in elements_up_to_length(g, 4):
        assert dot_act(w, g.rho.scale(-1)) == g.rho.scale(-1)


def test_errors():
    g2, g3 = cartan_type_a(2), cartan_type_a(3)
    with pytest.raises(IndexOutOfRange):
        WeylElement.from_word(g2, [2])
    with pytest.raises(MixedGCM):
        bruhat_leq(WeylElement.identity(g2), WeylElement.identity(g3))


# the refined stratification of the Schubert cells of affine sl2 at i = 1

def _alt(start: int, k: int):
    return tuple((start + j) % 2 for j in range(k))


def _name(kind: str, word) -> str:
    w = "1" if not word else "s" + "s".join(map(str, word))
    return {"plain": f"X_{w}", "mirror": f"s1X_{w}", "cell": f"X_{w}^s1X_{w}"}[kind]


def diagram_arrows(max_dim: int):
    """Arrows of the strata diagram, written out from its periodic pattern."""
    out = set()
    for k in range(1, max_dim + 1):
        p, p1, c, c1 = _alt(0, k), _alt(0, k - 1), _alt(1, k), _alt(1, k - 1)
        out.add((_name("plain", p), _name("plain", p1)))
        out.add((_name("mirror", p), _name("mirror", p1)))
        out.add((_name("cell", c), _name("plain", p1)))
        out.add((_name("cell", c), _name("mirror", p1)))
        if k >= 2:
            out.add((_name("plain", p), _name("cell", c1)))
            out.add((_name("mirror", p), _name("cell", c1)))
            out.add((_name("cell", c), _name("cell", c1)))
    return out


@pytest.mark.parametrize("max_dim", [0, 1, 2, 3, 4, 6])
def test_strata_match_diagram(max_dim):
    sp = strata(cartan_type_a(2), 1, max_dim)
    assert sp.counts_by_dim() == [2] + [3] * max_dim
    assert {(a.name, b.name) for a, b in sp.arrows} == diagram_arrows(max_dim)


def test_strata_symmetry_under_s1():
    sp = strata(cartan_type_a(2), 1, 5)
    names = {s.name for s in sp.nodes}
    assert {s.swap().name for s in sp.nodes} == names
    arrows = {(a.name, b.name) for a, b in sp.arrows}
    assert {(a.swap().name, b.swap().name) for a, b in sp.arrows} == arrows


def test_strata_outputs():
    sp = strata(cartan_type_a(2), 1, 2)
    dot = sp.to_dot()
    assert dot.startswith("digraph strata {") and dot.count("->") == len(sp.arrows)
    assert '"X_s1^s1X_s1"' in dot
    with pytest.raises(ValueError):
        strata(cartan_type_a(2), 1, -1)
