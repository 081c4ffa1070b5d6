"""Invariant suites behind `relaxkm verify`.

Each suite is a generator of (check name, passed, detail). The first failing
check is reported by the CLI; every suite only reads immutable shared data.
"""
from __future__ import annotations

import itertools
import random
from fractions import Fraction as Q
from typing import Callable, Dict, Iterator, Tuple

from . import cartan, characters, induced, loop_algebra as la, p1, sl2, weyl

Check = Tuple[str, bool, str]


def suite_cartan(depth: int = 4, **_) -> Iterator[Check]:
    for n in (2, 3, 4):
        g = cartan.cartan_type_a(n)
        roots = cartan.positive_roots_up_to_height(g, 2 * n)
        real = [r.coords for r in roots if r.is_real]
        yield f"A{n - 1}^1 delta fixed by every s_i", all(g.reflect(i, g.delta) == g.delta for i in range(n)), ""
        for i in range(n):
            simple = tuple(int(j == i) for j in range(n))
            img = {g.reflect_coords(i, c) for c in real if c != simple}
            bad = [c for c in img if any(x < 0 for x in c)]
            yield f"A{n - 1}^1 s_{i} keeps positive real roots positive", not bad, repr(bad[:1])
        mult = [r.multiplicity for r in roots if not r.is_real]
        yield f"A{n - 1}^1 imaginary multiplicity n-1", all(m == n - 1 for m in mult), repr(mult)


def suite_weyl(max_length: int = 6, **_) -> Iterator[Check]:
    g = cartan.cartan_type_a(2)
    elems = weyl.elements_up_to_length(g, max_length)
    yield "element count 2L+1 in A1^1", len(elems) == 2 * max_length + 1, str(len(elems))
    for u in elems:
        yield f"reflexive at {u!r}", weyl.bruhat_leq(u, u), ""
    for u, v in itertools.product(elems, repeat=2):
        if u != v and weyl.bruhat_leq(u, v) and weyl.bruhat_leq(v, u):
            yield f"antisymmetry {u!r} {v!r}", False, ""
            return
        # subword property against brute force
        sub = any(tuple(v.word[k] for k in idx) and weyl.WeylElement.from_word(g, (v.word[k] for k in idx)) == u
                  for r in range(len(v.word) + 1) for idx in itertools.combinations(range(len(v.word)), r)) \
            or u.length == 0
        if sub != weyl.bruhat_leq(u, v):
            yield f"subword property {u!r} <= {v!r}", False, f"subword={sub}"
            return
    yield "Bruhat = subword order", True, ""
    g3 = cartan.cartan_type_a(3)
    el3 = weyl.elements_up_to_length(g3, min(max_length, 4))
    for u, v in itertools.product(el3[:20], repeat=2):
        w = u * v
        if weyl.act(w, g3.rho) != weyl.act(u, weyl.act(v, g3.rho)):
            yield f"action is multiplicative {u!r}*{v!r}", False, ""
            return
    yield "A2^1 action multiplicative", True, ""
    sp = weyl.strata(g, 1, 4)
    yield "strata counts 2,3,3,3,3", sp.counts_by_dim() == [2, 3, 3, 3, 3], str(sp.counts_by_dim())


def suite_algebra(depth: int = 12, **_) -> Iterator[Check]:
    rng = random.Random(5)
    for n in (2, 3):
        keys = [k for k in la.negative_keys(n, 2)] + [la.omega(la.basis_element(n, k)).terms[0][0]
                                                     for k in la.negative_keys(n, 2)] + [la.K_KEY, la.D_KEY]
        keys = sorted(set(keys), key=repr)
        for _ in range(30):
            x, y, z = (la.basis_element(n, rng.choice(keys)) for _ in range(3))
            jac = la.bracket(x, la.bracket(y, z)) + la.bracket(y, la.bracket(z, x)) + la.bracket(z, la.bracket(x, y))
            if not jac.is_zero():
                yield f"Jacobi in sl{n}^", False, f"{x} {y} {z}"
                return
            if not (la.bracket(x, y) + la.bracket(y, x)).is_zero():
                yield f"antisymmetry in sl{n}^", False, f"{x} {y}"
                return
            for i in range(n):
                lhs = la.tits(i, la.bracket(x, y))
                rhs = la.bracket(la.tits(i, x), la.tits(i, y))
                if not (lhs - rhs).is_zero():
                    yield f"tits_{i} is a Lie map in sl{n}^", False, f"{x} {y}"
                    return
        yield f"Jacobi, antisymmetry, Tits homomorphism in sl{n}^", True, ""
        for i in range(n):
            e, f, h = la.chevalley_e(n, i), la.chevalley_f(n, i), la.chevalley_h(n, i)
            ok = (la.bracket(e, f) - h).is_zero() and (la.bracket(h, e) - e.scale(2)).is_zero() \
                and (la.bracket(h, f) + f.scale(2)).is_zero()
            yield f"sl2 triple at node {i} of sl{n}^", ok, ""
        for l in range(4, 9):
            w = la.delta_bound_witness(n, 1, l, 4, depth)
            yield f"delta bound d=4 l={l} sl{n}^", w is None, w or ""
    w = next((la.delta_bound_witness(2, 1, l, 0, depth) for l in range(4, 9)
              if la.delta_bound_witness(2, 1, l, 0, depth)), None)
    yield "delta bound fails for d=0", w is not None, w or "no witness"


def suite_sl2(**_) -> Iterator[Check]:
    for L in list(range(-4, 5)):
        for fam, al in (("generic", Q(1, 2)), ("eq", None), ("lt", None), ("gt", None)):
            m = sl2.construct(L, fam, (-8, 8), al)
            bad = m.relation_defects()
            yield f"{fam} Lam={L} relations", not bad, repr(bad[:1])
            yield f"{fam} Lam={L} double dual", sl2.isomorphic(sl2.dual_sl2(sl2.dual_sl2(m)), m), ""


def suite_induced(depth: int = 2, **_) -> Iterator[Check]:
    g = cartan.cartan_type_a(2)
    for lam, al in ((g.weight([-4, 1]), 0), (g.rho.scale(-2), Q(1, 2)), (g.rho.scale(-3), Q(1, 3))):
        m = induced.relaxed_module(g, lam, al, 1, depth)
        region = characters.Region.box(g, m.base, 1, (-3, 3), 0)
        gens = [la.chevalley_e(2, 0), la.chevalley_e(2, 1), la.chevalley_f(2, 0), la.chevalley_f(2, 1),
                la.basis_element(2, ("H", 1, -1))]
        for v in induced.sample_vectors(m, region.sorted_weights(), 4, seed=2):
            for x, y in itertools.product(gens, repeat=2):
                if not induced.representation_defect(m, x, y, v).is_zero():
                    yield f"representation property {lam} {al}", False, f"{x} {y}"
                    return
        yield f"representation property lam={lam} alpha={al}", True, ""
        rep = induced.loop_relations(m)
        yield f"loop relations lam={lam} alpha={al}", rep.ok, repr(rep.to_json())


def suite_characters(depth: int = 3, **_) -> Iterator[Check]:
    g = cartan.cartan_type_a(2)
    for lam in (g.rho.scale(-2), g.rho.scale(-3)):
        for al in (Q(0), Q(1, 2), Q(1, 3), Q(-1, 2)):
            base = lam + g.simple_root(1).scale(al)
            region = characters.Region.box(g, base, 1, (-6, 6), depth)
            m = induced.relaxed_module(g, lam, al, 1, depth)
            ok, w = characters.equal_on_region(m.character(region), characters.char_relaxed_formula(g, lam, al, 1, region))
            yield f"module vs formula lam={lam} alpha={al}", ok, repr(w)
            ok, w = characters.equal_on_region(characters.char_relaxed_formula(g, lam, al, 1, region),
                                               characters.char_relaxed_formula(g, lam, al + 1, 1, region))
            yield f"alpha shift lam={lam} alpha={al}", ok, repr(w)
            tw = induced.twist_module(m, 1)
            ok, w = characters.equal_on_region(tw.character(region.reflect(1)), m.character(region).reflect(1))
            yield f"twist character is s_1 image lam={lam} alpha={al}", ok, repr(w)


def suite_p1(**_) -> Iterator[Check]:
    for nt in range(-3, 6):
        M = p1.cohomology(p1.TwistedP1Module(nt, "a1_cell", "shriek"))
        yield f"M family n_twist={nt}", M.h1_nonzero() == (nt <= 0), ""
        Rs = p1.cohomology(p1.TwistedP1Module(nt, "c_times", "star"))
        yield f"R_* H1 = 0 n_twist={nt}", not Rs.h1_nonzero(), ""
        for r in (M, Rs):
            bad = r.h0.relation_defects() + r.h1.relation_defects()
            yield f"sl2 relations on H0/H1 {r.module.source}/{r.module.extension} n_twist={nt}", not bad, repr(bad[:1])
        if nt >= 2:
            Rl = p1.cohomology(p1.TwistedP1Module(nt, "c_times", "shriek"))
            yield f"R_! H1 = 0 n_twist={nt}", not Rl.h1_nonzero(), ""
            yield f"char R_! = char R_* n_twist={nt}", p1.same_dims(Rl.h0, Rs.h0), ""
        for al in (Q(1, 3), Q(-1, 2), Q(0)):
            a = p1.cohomology(p1.TwistedP1Module(nt, "c_times", "star", al))
            b = p1.cohomology(p1.TwistedP1Module(nt, "c_times", "star", al + 1))
            yield f"alpha shift table n_twist={nt} alpha={al}", a.table() == b.table(), ""


SUITES: Dict[str, Callable[..., Iterator[Check]]] = {
    "cartan": suite_cartan,
    "weyl": suite_weyl,
    "algebra": suite_algebra,
    "sl2": suite_sl2,
    "induced": suite_induced,
    "characters": suite_characters,
    "p1": suite_p1,
}


def run(names, **params) -> Tuple[int, int, Check | None]:
    """Run suites in order; returns (checks run, failures, first failure)."""
    total = fails = 0
    first = None
    for name in names:
        for chk in SUITES[name](**params):
            total += 1
            if not chk[1]:
                fails += 1
                if first is None:
                    first = (f"{name}: {chk[0]}", False, chk[2])
    return total, fails, first
