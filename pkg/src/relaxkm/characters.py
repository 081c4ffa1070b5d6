"""Truncated formal characters and the closed-form characters of induced modules.

A Region is a finite set of weights together with the data used to draw it:
an anchor weight and a simple index i. Relative to the anchor a weight is
written  m*alpha_i + k*delta + (residual simple roots),  and the TSV view puts
k (the delta-degree) on rows and m on columns.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as Q
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import numpy as np

from .cartan import GCM, WeightVector, positive_roots_up_to_height
from .errors import RegionMismatch
from .kernels import partition_counts


def _int_coords(gcm: GCM, mu: WeightVector, base: WeightVector) -> Optional[Tuple[int, ...]]:
    c = gcm.root_coords(mu - base)
    if c is None or any(x.denominator != 1 for x in c):
        return None
    return tuple(int(x) for x in c)


def _pivot(gcm: GCM, i: int) -> int:
    # node whose coefficient is traded for delta in the drawing coordinates
    return 0 if i != 0 else 1


@dataclass(frozen=True)
class Region:
    gcm: GCM
    anchor: WeightVector
    i: int
    weights: FrozenSet[WeightVector]
    label: Tuple[Tuple[str, str], ...] = ()

    @staticmethod
    def box(gcm: GCM, anchor: WeightVector, i: int, window: Tuple[int, int], depth: int) -> "Region":
        """Weights anchor + sum c_j alpha_j with c_j <= 0 off i, i-depth <= depth, m in window."""
        n = gcm.size
        z = _pivot(gcm, i)
        others = [j for j in range(n) if j != i]
        out = set()

        def rec(k: int, budget: int, acc: List[int]):
            if k == len(others):
                c = [0] * n
                for j, v in zip(others, acc):
                    c[j] = -v
                for m in range(window[0], window[1] + 1):
                    cc = list(c)
                    cc[i] = m + c[z] * gcm.null[i] // gcm.null[z]
                    out.add(anchor + gcm.from_root_coords(cc))
                return
            for v in range(budget + 1):
                acc.append(v)
                rec(k + 1, budget - v, acc)
                acc.pop()

        rec(0, depth, [])
        label = (("anchor", repr(anchor)), ("i", str(i)), ("window", f"[{window[0]},{window[1]}]"),
                 ("depth", str(depth)))
        return Region(gcm, anchor, i, frozenset(out), label)

    def reflect(self, i: int) -> "Region":
        return Region(self.gcm, self.gcm.reflect(i, self.anchor), self.i,
                      frozenset(self.gcm.reflect(i, w) for w in self.weights),
                      self.label + (("reflected_by", f"s{i}"),))

    def coords(self, mu: WeightVector) -> Tuple[int, int]:
        """(delta-degree k, alpha_i coordinate m) of mu relative to the anchor."""
        c = self.gcm.root_coords(mu - self.anchor)
        z = _pivot(self.gcm, self.i)
        k = c[z] / self.gcm.null[z]
        return k, c[self.i] - k * self.gcm.null[self.i]

    def sorted_weights(self) -> List[WeightVector]:
        return sorted(self.weights, key=lambda w: w.sort_key())

    def depth_of(self, mu: WeightVector, base: WeightVector) -> Optional[int]:
        c = _int_coords(self.gcm, mu, base)
        if c is None:
            return None
        return -sum(x for j, x in enumerate(c) if j != self.i)

    def describe(self) -> Dict[str, str]:
        return dict(self.label)


@dataclass(frozen=True)
class FormalCharacter:
    region: Region
    mults: Dict[WeightVector, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {w: int(m) for w, m in self.mults.items() if m}
        if any(m < 0 for m in clean.values()):
            raise ValueError("negative multiplicity")
        if not set(clean) <= self.region.weights:
            raise ValueError("support outside region")
        object.__setattr__(self, "mults", clean)

    def __getitem__(self, mu: WeightVector) -> int:
        return self.mults.get(mu, 0)

    def reflect(self, i: int) -> "FormalCharacter":
        g = self.region.gcm
        return FormalCharacter(self.region.reflect(i), {g.reflect(i, w): m for w, m in self.mults.items()})

    def __add__(self, other: "FormalCharacter") -> "FormalCharacter":
        if self.region.weights != other.region.weights:
            raise RegionMismatch("characters on different regions")
        out = dict(self.mults)
        for w, m in other.mults.items():
            out[w] = out.get(w, 0) + m
        return FormalCharacter(self.region, out)

    def to_json(self):
        return {"region": self.region.describe(),
                "rows": [{"weight": w.to_json(), "mult": self[w]} for w in self.region.sorted_weights()]}

    def to_tsv(self) -> str:
        cells: Dict[Tuple[Q, Q], int] = {}
        for w in self.region.weights:
            k, m = self.region.coords(w)
            cells[(k, m)] = cells.get((k, m), 0) + self[w]
        ks = sorted({k for k, _ in cells}, reverse=True)
        ms = sorted({m for _, m in cells})
        lines = ["delta_deg\\m\t" + "\t".join(str(m) for m in ms)]
        for k in ks:
            lines.append(str(k) + "\t" + "\t".join(str(cells.get((k, m), "")) for m in ms))
        return "\n".join(lines)


def equal_on_region(c1: FormalCharacter, c2: FormalCharacter) -> Tuple[bool, Optional[WeightVector]]:
    """Exact equality; on failure also the first differing weight in sorted order."""
    if c1.region.weights != c2.region.weights:
        raise RegionMismatch("regions differ")
    for w in c1.region.sorted_weights():
        if c1[w] != c2[w]:
            return False, w
    return True, None


def _coins(gcm: GCM, i: int, max_depth: int, include_i: bool) -> List[Tuple[int, ...]]:
    roots = positive_roots_up_to_height(gcm, 2 * max_depth + 2)
    out = []
    for r in roots:
        dep = sum(x for j, x in enumerate(r.coords) if j != i)
        if dep > max_depth or (dep == 0 and not include_i):
            continue
        out.extend([r.coords] * r.multiplicity)
    return out


def _partition_table(gcm: GCM, i: int, ys: List[Tuple[int, ...]], a_max: int, include_i: bool):
    """Counts of multisets of positive roots, indexed by simple-root coordinates."""
    n = gcm.size
    max_depth = max((sum(y) for y in ys), default=0)
    shape = [0] * n
    for j in range(n):
        if j == i:
            shape[j] = a_max + 1
        else:
            idx = j if j < i else j - 1
            shape[j] = max((y[idx] for y in ys), default=0) + 1
    coins = _coins(gcm, i, max_depth, include_i)
    if not coins:
        table = np.zeros(shape, dtype=np.int64)
        table[(0,) * n] = 1
        return table
    return partition_counts(shape, coins)


def char_relaxed_formula(gcm: GCM, lam: WeightVector, alpha, i: int, region: Region) -> FormalCharacter:
    """Z-fan through lam + alpha*alpha_i times the generating function of Sym(n-_i)."""
    base = lam + gcm.simple_root(i).scale(alpha)
    rel = {}
    for mu in region.weights:
        c = _int_coords(gcm, mu, base)
        if c is None or any(x > 0 for j, x in enumerate(c) if j != i):
            continue
        rel[mu] = tuple(-x for j, x in enumerate(c) if j != i)
    if not rel:
        return FormalCharacter(region, {})
    max_depth = max(sum(y) for y in rel.values())
    table = _partition_table(gcm, i, list(rel.values()), 2 * max_depth + 1, include_i=False)
    out = {}
    for mu, y in rel.items():
        idx = list(y)
        idx.insert(i, slice(None))
        out[mu] = int(table[tuple(idx)].sum())
    return FormalCharacter(region, out)


def char_verma(gcm: GCM, lam: WeightVector, region: Region) -> FormalCharacter:
    """e^lam times prod over negative roots of (1 - e^beta)^(-mult)."""
    rel = {}
    for mu in region.weights:
        c = _int_coords(gcm, mu, lam)
        if c is None or any(x > 0 for x in c):
            continue
        rel[mu] = tuple(-x for x in c)
    if not rel:
        return FormalCharacter(region, {})
    i = region.i
    ys = [tuple(x for j, x in enumerate(c) if j != i) for c in rel.values()]
    a_max = max(c[i] for c in rel.values())
    table = _partition_table(gcm, i, ys, a_max, include_i=True)
    return FormalCharacter(region, {mu: int(table[c]) for mu, c in rel.items()})
