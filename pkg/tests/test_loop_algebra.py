from fractions import Fraction as Q

import pytest
from hypothesis import given, settings, strategies as st

from relaxkm import loop_algebra as la
from relaxkm.cartan import cartan_type_a
from relaxkm.errors import OutOfTruncation, TruncationOverflow


# independent oracle: gl_n matrices per loop degree, plus K and d coefficients

def to_oracle(x: la.AlgebraElement):
    n = x.n
    loops, K, d = {}, Q(0), Q(0)
    for key, c in x.terms:
        if key[0] == "K":
            K += c
            continue
        if key[0] == "d":
            d += c
            continue
        k = key[-1]
        m = loops.setdefault(k, [[Q(0)] * n for _ in range(n)])
        if key[0] == "E":
            m[key[1]][key[2]] += c
        else:
            j = key[1]
            m[j - 1][j - 1] += c
            m[j][j] -= c
    loops = {k: m for k, m in loops.items() if any(any(r) for r in m)}
    return loops, K, d


def _mul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def oracle_bracket(x, y, n):
    lx, Kx, dx = x
    ly, Ky, dy = y
    out, K = {}, Q(0)

    def add(k, m, s=1):
        t = out.setdefault(k, [[Q(0)] * n for _ in range(n)])
        for i in range(n):
            for j in range(n):
                t[i][j] += s * m[i][j]

    for a, X in lx.items():
        for b, Y in ly.items():
            XY, YX = _mul(X, Y), _mul(Y, X)
            add(a + b, [[XY[i][j] - YX[i][j] for j in range(n)] for i in range(n)])
            if a + b == 0:
                K += a * sum(XY[i][i] for i in range(n))
    # [d, X t^k] = k X t^k
    for b, Y in ly.items():
        add(b, Y, dx * b)
    for a, X in lx.items():
        add(a, X, -dy * a)
    out = {k: m for k, m in out.items() if any(any(r) for r in m)}
    return out, K, Q(0)


def keys_for(n, depth):
    neg = la.negative_keys(n, depth)
    pos = [la.omega(la.basis_element(n, k)).terms[0][0] for k in neg]
    return sorted(set(neg + pos + [("H", j, 0) for j in range(1, n)] + [la.K_KEY, la.D_KEY]), key=repr)


KEYS = {n: keys_for(n, 2) for n in (2, 3)}


@settings(max_examples=150, deadline=None)
@given(n=st.sampled_from([2, 3]), data=st.data())
def test_bracket_matches_matrix_oracle(n, data):
    x = la.basis_element(n, data.draw(st.sampled_from(KEYS[n])))
    y = la.basis_element(n, data.draw(st.sampled_from(KEYS[n])))
    assert to_oracle(la.bracket(x, y)) == oracle_bracket(to_oracle(x), to_oracle(y), n)


def elements(n):
    return st.lists(st.tuples(st.sampled_from(KEYS[n]), st.integers(-3, 3)), min_size=1, max_size=3).map(
        lambda ts: la.AlgebraElement.make(n, ts))


@settings(max_examples=60, deadline=None)
@given(data=st.data(), n=st.sampled_from([2, 3]))
def test_jacobi_and_antisymmetry(data, n):
    x, y, z = (data.draw(elements(n)) for _ in range(3))
    b = la.bracket
    assert (b(x, y) + b(y, x)).is_zero()
    assert (b(x, b(y, z)) + b(y, b(z, x)) + b(z, b(x, y))).is_zero()


@pytest.mark.parametrize("n", [2, 3, 4])
def test_chevalley_generators(n):
    b = la.bracket
    for i in range(n):
        e, f, h = la.chevalley_e(n, i), la.chevalley_f(n, i), la.chevalley_h(n, i)
        assert (b(e, f) - h).is_zero()
        assert (b(h, e) - e.scale(2)).is_zero()
        assert (b(h, f) + f.scale(2)).is_zero()
        for j in range(n):
            if j != i:
                assert b(la.chevalley_e(n, i), la.chevalley_f(n, j)).is_zero()
    # the canonical central element is the sum of the simple coroots in type A
    total = la.chevalley_h(n, 0)
    for i in range(1, n):
        total = total + la.chevalley_h(n, i)
    assert (total - la.central_K(n)).is_zero()


@settings(max_examples=60, deadline=None)
@given(data=st.data(), n=st.sampled_from([2, 3]))
def test_omega_is_an_anti_involution(data, n):
    x, y = data.draw(elements(n)), data.draw(elements(n))
    w = la.omega
    assert (w(w(x)) - x).is_zero()
    assert (w(la.bracket(x, y)) - la.bracket(w(y), w(x))).is_zero()


@settings(max_examples=60, deadline=None)
@given(data=st.data(), n=st.sampled_from([2, 3]))
def test_tits_automorphism(data, n):
    i = data.draw(st.integers(0, n - 1))
    x, y = data.draw(elements(n)), data.draw(elements(n))
    t = lambda a: la.tits(i, a)
    assert (t(la.bracket(x, y)) - la.bracket(t(x), t(y))).is_zero()
    # agreement of the closed form with exp(ad e) exp(-ad f) exp(ad e)
    assert (t(x) - la.tits_automorphism(i, x)).is_zero()


@pytest.mark.parametrize("n", [2, 3])
def test_tits_moves_root_spaces_and_squares_to_sign(n):
    g = cartan_type_a(n)
    for key in keys_for(n, 2):
        if key[0] in ("K", "d") or (key[0] == "H" and key[2] == 0):
            continue
        beta = la.key_root(n, key)
        x = la.basis_element(n, key)
        for i in range(n):
            img = la.tits(i, x)
            assert img.weight() == g.reflect_coords(i, beta)
            sign = (-1) ** (g.coroot_value(i, beta) % 2)
            assert (la.tits(i, img) - x.scale(sign)).is_zero()


def test_root_space_dims():
    for n in (2, 3, 4):
        assert la.root_space_dim(n, (1,) * n) == n - 1
        assert la.root_space_dim(n, (0,) * (n - 1) + (1,)) == 1


def test_subalgebra_selectors():
    n, i = 3, 1
    n_minus_i = la.SubalgebraSpec("n-_i", i)
    assert not n_minus_i.contains(la.chevalley_f(n, i))
    assert n_minus_i.contains(la.chevalley_f(n, 2))
    assert la.SubalgebraSpec("p_i", i).contains(la.chevalley_f(n, i))
    assert la.SubalgebraSpec("g'_i", i).contains(la.chevalley_h(n, i))
    assert not la.SubalgebraSpec("n_i", i).contains(la.chevalley_e(n, i))
    with pytest.raises(ValueError):
        la.SubalgebraSpec("nope")


def test_truncation_errors():
    with pytest.raises(TruncationOverflow):
        la.AlgebraElement.make(2, {("E", 0, 1, 3): 1}, window=2)
    with pytest.raises(OutOfTruncation):
        la.root_space_basis(2, (3, 2), la.SubalgebraSpec("n"), depth=2)
    with pytest.raises(OutOfTruncation):
        la.delta_bound_witness(2, 1, 6, 4, 8)


@pytest.mark.parametrize("n", [2, 3])
def test_delta_bound_holds_at_four_and_fails_at_zero(n):
    assert all(la.verify_delta_bound(n, 1, l, 4, 12) for l in range(4, 9))
    witnesses = [la.delta_bound_witness(n, 1, l, 0, 12) for l in range(4, 9)]
    assert any(w is not None for w in witnesses)
