"""Modules induced from the minimal parabolic p_i, realized on a PBW basis.

U(g) (x)_{U(p_i)} T is free over U(n-_i) on the top level T, an sl2 weight
module placed at weights lam + (alpha + n) alpha_i. A basis vector is a label
(mono, n, r): an ordered PBW monomial in the root vectors of n-_i, a top index
n and a row r inside the n-th top weight space. Monomials are nonincreasing
tuples of basis indices, leftmost factor first.

Verma modules use the sl2 Verma module as top level (parabolic induction in
stages), so they share the straightening code.

Truncation: PBW factors have i-depth (sum of non-i simple-root coefficients)
at most ``depth`` in total, and top indices live in ``top.window``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import linalg
from .cartan import GCM, WeightVector, cartan_type_a
from .characters import FormalCharacter, Region
from .errors import (BadParameters, DepthOverflow, MultiplicityUnavailable, OutOfDepth,
                     WindowEdge)
from .linalg import Matrix
from .loop_algebra import (AlgebraElement, Key, bracket_keys, chevalley_e, chevalley_f, e_key,
                           f_key, key_root, negative_keys, omega, tits, basis_element)
from .sl2 import DenseSl2Module, Sl2WeightModule, construct, verma_sl2

Label = Tuple[Tuple[int, ...], int, int]
Mono = Tuple[int, ...]


def _add(acc: Dict, key, c: Q) -> None:
    v = acc.get(key, Q(0)) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


@dataclass(frozen=True)
class ModuleVector:
    home: "InducedModule"
    terms: Tuple[Tuple[Label, Q], ...]

    @staticmethod
    def make(home: "InducedModule", terms: Dict[Label, Q]) -> "ModuleVector":
        return ModuleVector(home, tuple(sorted(((k, Q(c)) for k, c in terms.items() if c), key=lambda t: t[0])))

    def as_dict(self) -> Dict[Label, Q]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def weight(self) -> Optional[WeightVector]:
        ws = {self.home.label_weight(lab) for lab, _ in self.terms}
        return ws.pop() if len(ws) == 1 else None

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        acc = self.as_dict()
        for k, c in other.terms:
            _add(acc, k, c)
        return ModuleVector.make(self.home, acc)

    def scale(self, c) -> "ModuleVector":
        return ModuleVector.make(self.home, {k: v * Q(c) for k, v in self.terms})

    def to_json(self):
        out = []
        for (mono, n, r), c in self.terms:
            grouped: List[List[int]] = []
            for k in mono:
                if grouped and grouped[-1][0] == k:
                    grouped[-1][1] += 1
                else:
                    grouped.append([k, 1])
            row = {"monomial": grouped, "top": n, "coeff": str(c)}
            if r:
                row["row"] = r
            out.append(row)
        return out


class InducedModule:
    """U(g) tensor_{U(p_i)} (C_lam tensor top), truncated by i-depth and top window."""

    def __init__(self, gcm: GCM, lam: WeightVector, i: int, top: Sl2WeightModule, depth: int,
                 kind: str = "relaxed", family: Optional[str] = None):
        n = gcm.size
        if gcm.entries != cartan_type_a(n).entries:
            raise MultiplicityUnavailable("concrete modules need the standard type A matrix")
        if top.Lam != lam.fund[i]:
            raise BadParameters(f"top level has Lam={top.Lam} but lam(h_{i})={lam.fund[i]}")
        if depth < 0:
            raise BadParameters("depth must be >= 0")
        self.gcm, self.lam, self.i, self.top, self.depth = gcm, lam, i, top, depth
        self.kind, self.family = kind, family
        self.n = n
        self.alpha = top.alpha
        self.base = lam + gcm.simple_root(i).scale(top.alpha)
        self._fi, self._ei = f_key(n, i), e_key(n, i)
        keys = [k for k in negative_keys(n, depth) if k != self._fi and self._idepth(key_root(n, k)) <= depth]
        # (height, delta-degree, matrix position); higher index = later in this order
        keys.sort(key=lambda k: (-sum(key_root(n, k)), -key_root(n, k)[0], k))
        self.basis_keys: Tuple[Key, ...] = tuple(keys)
        self._index = {k: j for j, k in enumerate(keys)}
        self._roots = [key_root(n, k) for k in keys]
        self._mul_cache: Dict[Tuple[int, Mono], Dict[Mono, Q]] = {}
        self._act_cache: Dict[Tuple[Key, Mono, int, int], Dict[Label, Q]] = {}
        self._basis_cache: Dict[WeightVector, List[Label]] = {}
        self._monos = self._enumerate_monomials()

    # bookkeeping -------------------------------------------------------------
    def _idepth(self, c: Sequence[int]) -> int:
        return -sum(x for j, x in enumerate(c) if j != self.i)

    def describe(self) -> Dict[str, str]:
        return {"kind": self.kind, "family": self.family or "", "lam": repr(self.lam), "i": str(self.i),
                "alpha": str(self.alpha), "depth": str(self.depth),
                "top_window": f"[{self.top.window[0]},{self.top.window[1]}]"}

    def mono_coords(self, mono: Mono) -> Tuple[int, ...]:
        c = [0] * self.n
        for k in mono:
            for j, x in enumerate(self._roots[k]):
                c[j] += x
        return tuple(c)

    def label_weight(self, lab: Label) -> WeightVector:
        c = list(self.mono_coords(lab[0]))
        c[self.i] += lab[1]
        return self.base + self.gcm.from_root_coords(c)

    def _enumerate_monomials(self) -> Dict[Tuple[int, ...], List[Mono]]:
        """All PBW monomials within depth, grouped by their non-i coordinates."""
        out: Dict[Tuple[int, ...], List[Mono]] = {}
        dep = [self._idepth(r) for r in self._roots]
        N = len(self.basis_keys)

        def rec(start: int, budget: int, acc: List[int]):
            mono = tuple(acc)
            c = self.mono_coords(mono)
            out.setdefault(tuple(x for j, x in enumerate(c) if j != self.i), []).append(mono)
            for k in range(start, -1, -1):
                if dep[k] <= budget:
                    acc.append(k)
                    rec(k, budget - dep[k], acc)
                    acc.pop()

        rec(N - 1, self.depth, [])
        return out

    # basis -------------------------------------------------------------------
    def relative_coords(self, mu: WeightVector) -> Optional[Tuple[int, ...]]:
        c = self.gcm.root_coords(mu - self.base)
        if c is None or any(x.denominator != 1 for x in c):
            return None
        return tuple(int(x) for x in c)

    def weight_space_basis(self, mu: WeightVector) -> List[Label]:
        if mu in self._basis_cache:
            return self._basis_cache[mu]
        c = self.relative_coords(mu)
        out: List[Label] = []
        if c is not None and all(x <= 0 for j, x in enumerate(c) if j != self.i):
            if self._idepth(c) > self.depth:
                raise OutOfDepth(f"weight {mu} has i-depth {self._idepth(c)} > {self.depth}")
            y = tuple(x for j, x in enumerate(c) if j != self.i)
            lo, hi = self.top.window
            for mono in self._monos.get(y, []):
                n = c[self.i] - self.mono_coords(mono)[self.i]
                if not lo <= n <= hi:
                    raise OutOfDepth(f"weight {mu} needs top index {n} outside {self.top.window}")
                out.extend((mono, n, r) for r in range(self.top.dim(n)))
        out.sort()
        self._basis_cache[mu] = out
        return out

    def dim(self, mu: WeightVector) -> int:
        return len(self.weight_space_basis(mu))

    def vector(self, mu: WeightVector, coeffs: Sequence[Q]) -> ModuleVector:
        basis = self.weight_space_basis(mu)
        return ModuleVector.make(self, {lab: Q(c) for lab, c in zip(basis, coeffs)})

    def generator(self, n: int = 0, r: int = 0) -> ModuleVector:
        return ModuleVector.make(self, {((), n, r): Q(1)})

    def coefficients(self, v: ModuleVector, mu: WeightVector) -> List[Q]:
        d = v.as_dict()
        basis = self.weight_space_basis(mu)
        if set(d) - set(basis):
            raise BadParameters("vector has terms outside the weight space")
        return [d.get(lab, Q(0)) for lab in basis]

    # straightening -------------------------------------------------------------
    def _mul_left(self, k: int, mono: Mono) -> Dict[Mono, Q]:
        """PBW expansion of X_k * X_mono inside U(n-_i)."""
        if not mono or k >= mono[0]:
            return {(k,) + mono: Q(1)}
        ck = (k, mono)
        hit = self._mul_cache.get(ck)
        if hit is not None:
            return hit
        m0, rest = mono[0], mono[1:]
        out: Dict[Mono, Q] = {}
        for m1, c1 in self._mul_left(k, rest).items():
            for m2, c2 in self._mul_left(m0, m1).items():
                _add(out, m2, c1 * c2)
        for kz, cz in bracket_keys(self.n, self.basis_keys[k], self.basis_keys[m0]):
            for m2, c2 in self._mul_left(self._key_index(kz), rest).items():
                _add(out, m2, cz * c2)
        self._mul_cache[ck] = out
        return out

    def _key_index(self, key: Key) -> int:
        j = self._index.get(key)
        if j is None:
            raise DepthOverflow(f"root vector {key} is beyond depth {self.depth}")
        return j

    def _top_weight_value(self, key: Key, n: int) -> Q:
        mu = self.base + self.gcm.simple_root(self.i).scale(n)
        if key[0] == "H":
            return mu.fund[key[1]]
        if key[0] == "K":
            return self.gcm.level(mu)
        return mu.delta

    def _act_top(self, key: Key, n: int, r: int) -> Dict[Label, Q]:
        try:
            if key == self._ei:
                col = [row[r] for row in self.top.e_matrix(n)]
                return {((), n + 1, rr): c for rr, c in enumerate(col) if c}
            if key == self._fi:
                col = [row[r] for row in self.top.f_matrix(n)]
                return {((), n - 1, rr): c for rr, c in enumerate(col) if c}
        except WindowEdge as exc:
            raise DepthOverflow(str(exc)) from exc
        if key[0] in ("K", "d") or (key[0] == "H" and key[2] == 0):
            v = self._top_weight_value(key, n)
            return {((), n, r): v} if v else {}
        c = key_root(self.n, key)
        if all(x <= 0 for x in c):
            return {((self._key_index(key),), n, r): Q(1)}
        return {}  # n_i kills the top level

    def act_key(self, key: Key, lab: Label) -> Dict[Label, Q]:
        mono, n, r = lab
        ck = (key, mono, n, r)
        hit = self._act_cache.get(ck)
        if hit is not None:
            return hit
        if not mono:
            out = self._act_top(key, n, r)
        else:
            y, rest = mono[0], mono[1:]
            out = {}
            # x Y R = Y (x R) + [x, Y] R
            for (m1, n1, r1), c1 in self.act_key(key, (rest, n, r)).items():
                for m2, c2 in self._mul_left(y, m1).items():
                    _add(out, (m2, n1, r1), c1 * c2)
            for kz, cz in bracket_keys(self.n, key, self.basis_keys[y]):
                for lab2, c2 in self.act_key(kz, (rest, n, r)).items():
                    _add(out, lab2, cz * c2)
        self._act_cache[ck] = out
        return out

    def act(self, x: AlgebraElement, v: ModuleVector) -> ModuleVector:
        acc: Dict[Label, Q] = {}
        for key, cx in x.terms:
            for lab, cv in v.terms:
                for lab2, c in self.act_key(key, lab).items():
                    _add(acc, lab2, cx * cv * c)
        return ModuleVector.make(self, acc)

    def element_weight(self, x: AlgebraElement) -> WeightVector:
        w = x.weight()
        if w is None:
            raise BadParameters("element is not homogeneous")
        return self.gcm.from_root_coords(w)

    def matrix(self, x: AlgebraElement, mu: WeightVector) -> Matrix:
        """Matrix of x from the mu-space to the (mu + wt x)-space."""
        src = self.weight_space_basis(mu)
        dst = self.weight_space_basis(mu + self.element_weight(x))
        pos = {lab: j for j, lab in enumerate(dst)}
        out = linalg.zeros(len(dst), len(src))
        for col, lab in enumerate(src):
            for key, cx in x.terms:
                for lab2, c in self.act_key(key, lab).items():
                    if lab2 not in pos:
                        raise DepthOverflow(f"{key} maps {lab} outside the truncated weight space")
                    out[pos[lab2]][col] += cx * c
        return out

    def character(self, region: Region) -> FormalCharacter:
        return FormalCharacter(region, {w: self.dim(w) for w in region.weights})


# factories -----------------------------------------------------------------------

def _is_int(x) -> bool:
    return Q(x).denominator == 1


def default_top_window(window: Tuple[int, int], depth: int, slack: int = 0) -> Tuple[int, int]:
    pad = 2 * depth + 4 + slack
    return window[0] - pad, window[1] + pad


def relaxed_module(gcm: GCM, lam: WeightVector, alpha, i: int, depth: int, window: Tuple[int, int] = (-6, 6),
                   family: str = "eq", slack: int = 0) -> InducedModule:
    """R(lam, alpha): generic top level for alpha non-integral, the given integral family otherwise."""
    alpha = Q(alpha)
    tw = default_top_window(window, depth, slack)
    Lam = lam.fund[i]
    if _is_int(alpha):
        top = construct(Lam, family, tw)
        fam = family
    else:
        top = construct(Lam, "generic", tw, alpha)
        fam = "generic"
    return InducedModule(gcm, lam, i, top.to_weight_module(), depth, "relaxed", fam)


def eq_module(gcm: GCM, lam: WeightVector, i: int, depth: int, window: Tuple[int, int] = (-6, 6),
              slack: int = 0) -> InducedModule:
    return relaxed_module(gcm, lam, 0, i, depth, window, "eq", slack)


def verma_module(gcm: GCM, lam: WeightVector, i: int, depth: int, window: Tuple[int, int] = (-6, 6),
                 slack: int = 0) -> InducedModule:
    tw = default_top_window(window, depth, slack)
    top = verma_sl2(lam.fund[i], (tw[0], max(tw[1], 1)))
    return InducedModule(gcm, lam, i, top, depth, "verma")


def induced_from_top(gcm: GCM, lam: WeightVector, i: int, top: Sl2WeightModule, depth: int,
                     kind: str = "induced") -> InducedModule:
    return InducedModule(gcm, lam, i, top, depth, kind)


# views: twist and restricted dual -------------------------------------------------

class TwistedView:
    """M^{s~_i}: same space, x acts as s~_i(x); weights relabel by s_i."""

    def __init__(self, base, i: int):
        self.base, self.i = base, i
        self.gcm = base.gcm

    def _home(self, nu: WeightVector) -> WeightVector:
        return self.gcm.reflect(self.i, nu)

    def dim(self, nu: WeightVector) -> int:
        return self.base.dim(self._home(nu))

    def element_weight(self, x: AlgebraElement) -> WeightVector:
        return self.base.element_weight(x)

    def matrix(self, x: AlgebraElement, nu: WeightVector) -> Matrix:
        return self.base.matrix(tits(self.i, x), self._home(nu))

    def character(self, region: Region) -> FormalCharacter:
        return FormalCharacter(region, {w: self.dim(w) for w in region.weights})


class DualView:
    """Restricted dual: x acts on (M_mu)^* as the transpose of omega(x)."""

    def __init__(self, base):
        self.base = base
        self.gcm = base.gcm

    def dim(self, mu: WeightVector) -> int:
        return self.base.dim(mu)

    def element_weight(self, x: AlgebraElement) -> WeightVector:
        return self.base.element_weight(x)

    def matrix(self, x: AlgebraElement, mu: WeightVector) -> Matrix:
        tgt = mu + self.element_weight(x)
        m = self.base.matrix(omega(x), tgt)
        return linalg.transpose(m, self.dim(tgt)) if m else [[] for _ in range(self.dim(tgt))]

    def character(self, region: Region) -> FormalCharacter:
        return FormalCharacter(region, {w: self.dim(w) for w in region.weights})


def twist_module(m, i: int) -> TwistedView:
    return TwistedView(m, i)


def restricted_dual(m) -> DualView:
    return DualView(m)


def restricted_dual_action(m, x: AlgebraElement, mu: WeightVector) -> Matrix:
    return DualView(m).matrix(x, mu)


def double_twist_sign(gcm: GCM, i: int, x: AlgebraElement) -> int:
    """s~_i squared acts on g_beta by (-1)^{beta(h_i)}."""
    c = x.weight()
    return -1 if gcm.coroot_value(i, c) % 2 else 1


# submodules and probes ------------------------------------------------------------

def _simple_e(m: InducedModule) -> List[AlgebraElement]:
    return [chevalley_e(m.n, j) for j in range(m.n)]


def _simple_f(m: InducedModule) -> List[AlgebraElement]:
    return [chevalley_f(m.n, j) for j in range(m.n)]


def find_primitive_vectors(m: InducedModule, mu: WeightVector) -> List[ModuleVector]:
    """Basis of the vectors of weight mu killed by every e_j."""
    d = m.dim(mu)
    if d == 0:
        return []
    rows: List[List[Q]] = []
    for e in _simple_e(m):
        tgt = mu + m.element_weight(e)
        try:
            rows.extend(m.matrix(e, mu))
        except OutOfDepth:
            if m.relative_coords(tgt) is not None:
                raise
    return [m.vector(mu, v) for v in linalg.nullspace(rows, d)]


def _span_add(basis: List[List[Q]], vecs: Iterable[List[Q]], dim: int) -> Tuple[List[List[Q]], bool]:
    vecs = [v for v in vecs if any(v)]
    if not vecs:
        return basis, False
    new = linalg.column_basis(basis + vecs, dim)
    return new, len(new) > len(basis)


def _in_truncation(m: InducedModule, mu: WeightVector, depth: int, window: Tuple[int, int]) -> bool:
    c = m.relative_coords(mu)
    if c is None or any(x > 0 for j, x in enumerate(c) if j != m.i) or m._idepth(c) > depth:
        return False
    lo, hi = window
    return lo <= c[m.i] <= hi


def generated_submodule(m: InducedModule, v: ModuleVector, region: Region) -> FormalCharacter:
    """Character of U(n-) v on the region (U(g) v for a primitive v)."""
    from itertools import product

    mu0 = v.weight()
    spaces: Dict[WeightVector, List[List[Q]]] = {mu0: linalg.column_basis([m.coefficients(v, mu0)], m.dim(mu0))}
    rel = [m.gcm.root_coords(w - mu0) for w in region.weights]
    lows = [min([0] + [int(c[j]) for c in rel if c is not None]) for j in range(m.n)]
    # every weight between mu0 and the region must be known before its f_j-images
    maxdep = max([0] + [m._idepth([int(x) for x in c]) for c in rel if c is not None])
    box = [mu0 + m.gcm.from_root_coords(c) for c in product(*[range(lo, 1) for lo in lows])
           if m._idepth(c) <= maxdep]
    fs = _simple_f(m)
    for mu in sorted(box, key=lambda w: -sum(m.gcm.root_coords(w - mu0))):
        if mu == mu0:
            continue
        vecs: List[List[Q]] = []
        for f in fs:
            src = mu - m.element_weight(f)
            if spaces.get(src):
                vecs.extend(linalg.matvec(m.matrix(f, src), b) for b in spaces[src])
        spaces[mu], _ = _span_add([], vecs, m.dim(mu))
    return FormalCharacter(region, {w: len(spaces.get(w, [])) for w in region.weights})


def verma_pair_mask(m: InducedModule, mu: WeightVector) -> List[bool]:
    """Which basis labels at mu lie in M(s_i.lam) + M(s_i.lam)^{s~_i} inside R(lam, =)."""
    L = int(m.lam.fund[m.i])
    return [n <= -L - 1 or n >= 1 for (_, n, _) in m.weight_space_basis(mu)]


def submodule_meets_verma_pair(m: InducedModule, v: ModuleVector, depth: int,
                               window: Optional[Tuple[int, int]] = None, max_rounds: int = 64) -> bool:
    """Close v under all e_j, f_j inside the truncation; test for a nonzero vector in the pair span."""
    if v.is_zero():
        raise BadParameters("v must be nonzero")
    if m.family != "eq":
        raise BadParameters("the Verma pair lives in R(lam, =)")
    if depth > m.depth:
        raise DepthOverflow(f"depth {depth} exceeds module depth {m.depth}")
    if m.lam.fund[m.i] < 0:
        raise BadParameters("needs lam(h_i) >= 0")
    tw = m.top.window
    window = window or (tw[0] + m.depth + 2, tw[1] - m.depth - 2)
    mu0 = v.weight()
    gens = _simple_e(m) + _simple_f(m)
    spaces: Dict[WeightVector, List[List[Q]]] = {}
    frontier = {mu0: [m.coefficients(v, mu0)]}
    for _ in range(max_rounds):
        if not frontier:
            return False
        nxt: Dict[WeightVector, List[List[Q]]] = {}
        for mu, vecs in frontier.items():
            d = m.dim(mu)
            old = spaces.get(mu, [])
            spaces[mu], grew = _span_add(old, vecs, d)
            if not grew:
                continue
            mask = verma_pair_mask(m, mu)
            free = [j for j, inside in enumerate(mask) if not inside]
            # the span meets the coordinate subspace iff projecting away from it loses rank
            if linalg.rank([[b[j] for j in free] for b in spaces[mu]], len(free)) < len(spaces[mu]):
                return True
            for g in gens:
                tgt = mu + m.element_weight(g)
                if not _in_truncation(m, tgt, depth, window):
                    continue
                mat = m.matrix(g, mu)
                nxt.setdefault(tgt, []).extend(linalg.matvec(mat, b) for b in spaces[mu])
        frontier = nxt
    raise DepthOverflow("closure did not stabilize within the round cap")


def chain_dims(m: InducedModule, v: ModuleVector, K: int) -> Tuple[int, int]:
    """(dim span{e_i^k v}, dim span{f_i^k v}) for k = 0..K."""
    if v.is_zero():
        return 0, 0
    out = []
    for x in (chevalley_e(m.n, m.i), chevalley_f(m.n, m.i)):
        chain = [v]
        for _ in range(K):
            chain.append(m.act(x, chain[-1]))
        labels = sorted({lab for w in chain for lab, _ in w.terms})
        pos = {lab: j for j, lab in enumerate(labels)}
        rows = []
        for w in chain:
            row = [Q(0)] * len(labels)
            for lab, c in w.terms:
                row[pos[lab]] = c
            rows.append(row)
        out.append(linalg.rank(rows, len(labels)))
    return out[0], out[1]


def gprime_finiteness_probe(m: InducedModule, v: ModuleVector, K: int) -> int:
    """Largest of the e_i- and f_i-chain spans; K+1 means no g_i' finiteness is visible up to K."""
    return max(chain_dims(m, v, K))


# relation checks ------------------------------------------------------------------

@dataclass(frozen=True)
class LoopRelationReport:
    mu: Q
    j: Q
    k: Q
    delta: Q
    fe_top: Q
    checks: Tuple[Tuple[str, bool], ...]

    @property
    def ok(self) -> bool:
        return all(p for _, p in self.checks)

    def to_json(self):
        return {"mu": str(self.mu), "j": str(self.j), "k": str(self.k), "delta": str(self.delta),
                "fe_eigenvalue": str(self.fe_top), "checks": [{"relation": r, "pass": p} for r, p in self.checks]}


def loop_relations(m: InducedModule, dense: Optional[DenseSl2Module] = None, max_degree: Optional[int] = None) -> LoopRelationReport:
    """Relaxed highest weight relations on the generator 1 (x) v_0, for i != 0."""
    if m.i == 0:
        raise BadParameters("the loop relations are stated for i != 0")
    n, i = m.n, m.i
    v = m.generator(0)
    kmax = m.depth if max_degree is None else max_degree
    pos_ok = True
    for k in range(1, kmax + 1):
        for a in range(n):
            for b in range(n):
                if a != b and not m.act(basis_element(n, ("E", a, b, k)), v).is_zero():
                    pos_ok = False
        for j in range(1, n):
            if not m.act(basis_element(n, ("H", j, k)), v).is_zero():
                pos_ok = False

    def scalar(x: AlgebraElement, w: ModuleVector) -> Optional[Q]:
        out = m.act(x, w).as_dict()
        if not out:
            return Q(0)
        if set(out) != {((), 0, 0)}:
            return None
        return out[((), 0, 0)]

    fe = m.act(chevalley_f(n, i), m.act(chevalley_e(n, i), v))
    fe_d = fe.as_dict()
    mu = fe_d.get(((), 0, 0), Q(0)) if set(fe_d) <= {((), 0, 0)} else None
    j = scalar(basis_element(n, ("H", i, 0)), v)
    kk = scalar(basis_element(n, ("K",)), v)
    dd = scalar(basis_element(n, ("d",)), v)
    wt = m.base
    fe_top = dense.fe_eigenvalue(0) if dense is not None else m.top.e_matrix(0)[0][0] * m.top.f_matrix(1)[0][0]
    checks = (
        ("(sl2 (x) tC[t]) v = 0", pos_ok),
        ("(f(x)1)(e(x)1) v = mu v", mu is not None and mu == fe_top),
        ("(h(x)1) v = j v", j is not None and j == wt.fund[i]),
        ("K v = k v", kk is not None and kk == m.gcm.level(wt)),
        ("d v = delta v", dd is not None and dd == wt.delta),
    )
    return LoopRelationReport(mu if mu is not None else Q(0), j or Q(0), kk or Q(0), dd or Q(0), fe_top, checks)


def representation_defect(m: InducedModule, x: AlgebraElement, y: AlgebraElement, v: ModuleVector) -> ModuleVector:
    """x(yv) - y(xv) - [x,y]v; zero for a genuine representation."""
    from .loop_algebra import bracket

    lhs = m.act(x, m.act(y, v)) + m.act(y, m.act(x, v)).scale(-1)
    return lhs + m.act(bracket(x, y), v).scale(-1)


def sample_vectors(m: InducedModule, weights: Sequence[WeightVector], count: int, seed: int = 0) -> List[ModuleVector]:
    """Seeded random nonzero weight vectors with small integer coefficients."""
    rng = random.Random(seed)
    ws = [w for w in weights if m.dim(w) > 0]
    out = []
    while len(out) < count:
        w = rng.choice(ws)
        coeffs = [Q(rng.randint(-3, 3)) for _ in range(m.dim(w))]
        if any(coeffs):
            out.append(m.vector(w, coeffs))
    return out
