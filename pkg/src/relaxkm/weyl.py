"""Weyl group elements, Bruhat order, actions, and the refined strata poset.

An element w is identified by the weight w(rho); rho is regular dominant so
this is faithful. The left descents of w are the i with (w rho)(h_i) < 0, which
gives the lexicographically least reduced word greedily.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Sequence, Set, Tuple

from .cartan import GCM, WeightVector
from .errors import IndexOutOfRange, MixedGCM


def _canonical_word(gcm: GCM, wrho: WeightVector) -> Tuple[int, ...]:
    word = []
    cur = wrho
    while True:
        desc = [i for i in range(gcm.size) if cur.fund[i] < 0]
        if not desc:
            break
        i = desc[0]
        word.append(i)
        cur = gcm.reflect(i, cur)
    return tuple(word)


@dataclass(frozen=True, eq=False)
class WeylElement:
    gcm: GCM
    word: Tuple[int, ...]
    rho_image: WeightVector

    @staticmethod
    def from_word(gcm: GCM, word: Iterable[int]) -> "WeylElement":
        word = tuple(word)
        for i in word:
            if not 0 <= i < gcm.size:
                raise IndexOutOfRange(f"index {i} not in 0..{gcm.size - 1}")
        return WeylElement.from_rho_image(gcm, _act_word(gcm, word, gcm.rho))

    @staticmethod
    def from_rho_image(gcm: GCM, wrho: WeightVector) -> "WeylElement":
        return WeylElement(gcm, _canonical_word(gcm, wrho), wrho)

    @staticmethod
    def identity(gcm: GCM) -> "WeylElement":
        return WeylElement(gcm, (), gcm.rho)

    @property
    def length(self) -> int:
        return len(self.word)

    def __eq__(self, other) -> bool:
        return isinstance(other, WeylElement) and self.gcm == other.gcm and self.rho_image == other.rho_image

    def __hash__(self) -> int:
        return hash(self.rho_image)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return multiply(self, other)

    def inverse(self) -> "WeylElement":
        return WeylElement.from_word(self.gcm, reversed(self.word))

    def __repr__(self) -> str:
        return "1" if not self.word else "s" + "s".join(str(i) for i in self.word)


def _act_word(gcm: GCM, word: Sequence[int], lam: WeightVector) -> WeightVector:
    for i in reversed(word):
        lam = gcm.reflect(i, lam)
    return lam


def simple_reflection(gcm: GCM, i: int) -> WeylElement:
    return WeylElement.from_word(gcm, (i,))


def multiply(u: WeylElement, v: WeylElement) -> WeylElement:
    if u.gcm != v.gcm:
        raise MixedGCM("elements over different matrices")
    return WeylElement.from_rho_image(u.gcm, _act_word(u.gcm, u.word, v.rho_image))


def act(w: WeylElement, lam: WeightVector) -> WeightVector:
    return _act_word(w.gcm, w.word, lam)


def dot_act(w: WeylElement, lam: WeightVector, rho: WeightVector | None = None) -> WeightVector:
    rho = w.gcm.rho if rho is None else rho
    return act(w, lam + rho) - rho


def descends(i: int, w: WeylElement) -> bool:
    """True iff l(s_i w) < l(w)."""
    if not 0 <= i < w.gcm.size:
        raise IndexOutOfRange(f"index {i} not in 0..{w.gcm.size - 1}")
    return w.rho_image.fund[i] < 0


def left_multiply(i: int, w: WeylElement) -> WeylElement:
    return WeylElement.from_rho_image(w.gcm, w.gcm.reflect(i, w.rho_image))


def bruhat_leq(u: WeylElement, w: WeylElement) -> bool:
    if u.gcm != w.gcm:
        raise MixedGCM("elements over different matrices")
    return _bruhat(u, w)


@lru_cache(maxsize=200_000)
def _bruhat(u: WeylElement, w: WeylElement) -> bool:
    if u.length > w.length:
        return False
    if u.length == 0:
        return True
    if u.length == w.length:
        return u == w
    s = w.word[0]
    sw = left_multiply(s, w)
    if descends(s, u):
        return _bruhat(left_multiply(s, u), sw)
    return _bruhat(u, sw)


def elements_up_to_length(gcm: GCM, L: int) -> List[WeylElement]:
    """All elements of length at most L, breadth first, sorted by (length, word)."""
    seen = {WeylElement.identity(gcm)}
    frontier = list(seen)
    for _ in range(L):
        nxt = []
        for w in frontier:
            for i in range(gcm.size):
                if not descends(i, w):
                    v = left_multiply(i, w)
                    if v not in seen:
                        seen.add(v)
                        nxt.append(v)
        frontier = nxt
    return sorted(seen, key=lambda w: (w.length, w.word))


# strata ------------------------------------------------------------------------

@dataclass(frozen=True)
class StratumLabel:
    kind: str  # "plain", "mirror" or "cell"
    w: WeylElement
    i: int

    @property
    def dim(self) -> int:
        return self.w.length

    def swap(self) -> "StratumLabel":
        k = {"plain": "mirror", "mirror": "plain"}.get(self.kind, self.kind)
        return StratumLabel(k, self.w, self.i)

    @property
    def name(self) -> str:
        w = repr(self.w)
        i = self.i
        return {"plain": f"X_{w}", "mirror": f"s{i}X_{w}", "cell": f"X_{w}^s{i}X_{w}"}[self.kind]

    def sort_key(self):
        return (self.dim, {"plain": 0, "cell": 1, "mirror": 2}[self.kind], self.w.word)

    def to_json(self):
        return {"kind": self.kind, "w": list(self.w.word), "dim": self.dim, "name": self.name}


@dataclass(frozen=True)
class StrataPoset:
    i: int
    max_dim: int
    nodes: Tuple[StratumLabel, ...]
    arrows: FrozenSet[Tuple[StratumLabel, StratumLabel]]

    def counts_by_dim(self) -> List[int]:
        out = [0] * (self.max_dim + 1)
        for s in self.nodes:
            out[s.dim] += 1
        return out

    def to_json(self) -> str:
        order = sorted(self.nodes, key=StratumLabel.sort_key)
        idx = {s: k for k, s in enumerate(order)}
        arrows = sorted((idx[a], idx[b]) for a, b in self.arrows)
        return json.dumps({"i": self.i, "max_dim": self.max_dim,
                           "nodes": [s.to_json() for s in order],
                           "arrows": [list(p) for p in arrows]}, indent=2)

    def to_dot(self) -> str:
        order = sorted(self.nodes, key=StratumLabel.sort_key)
        lines = ["digraph strata {", "  rankdir=RL;"]
        for k, s in enumerate(order):
            lines.append(f'  n{k} [label="{s.name}"];')
        idx = {s: k for k, s in enumerate(order)}
        for a, b in sorted(self.arrows, key=lambda p: (idx[p[0]], idx[p[1]])):
            lines.append(f"  n{idx[a]} -> n{idx[b]};")
        lines.append("}")
        return "\n".join(lines)


def _pieces(i: int, y: WeylElement) -> List[StratumLabel]:
    """Strata making up the Schubert cell X_y."""
    if descends(i, y):
        return [StratumLabel("cell", y, i), StratumLabel("mirror", left_multiply(i, y), i)]
    return [StratumLabel("plain", y, i)]


def strata(gcm: GCM, i: int, max_dim: int) -> StrataPoset:
    if max_dim < 0:
        raise ValueError("max_dim must be >= 0")
    elems = elements_up_to_length(gcm, max_dim)
    nodes: List[StratumLabel] = []
    for w in elems:
        if descends(i, w):
            nodes.append(StratumLabel("cell", w, i))
        else:
            nodes.append(StratumLabel("plain", w, i))
            nodes.append(StratumLabel("mirror", w, i))

    def closure_of_cell(w: WeylElement) -> Set[StratumLabel]:
        out: Set[StratumLabel] = set()
        for y in elems:
            if y.length <= w.length and bruhat_leq(y, w):
                out.update(_pieces(i, y))
        return out

    closures: Dict[StratumLabel, Set[StratumLabel]] = {}
    for s in nodes:
        base = closure_of_cell(s.w)
        if s.kind == "plain":
            closures[s] = base
        elif s.kind == "mirror":
            closures[s] = {t.swap() for t in base}
        else:
            closures[s] = base | {t.swap() for t in base}
    arrows = frozenset((a, b) for a in nodes for b in closures[a] if b.dim == a.dim - 1)
    return StrataPoset(i, max_dim, tuple(sorted(nodes, key=StratumLabel.sort_key)), arrows)
