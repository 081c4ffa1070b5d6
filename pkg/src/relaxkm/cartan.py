"""Affine generalized Cartan matrices, weights and roots.

A weight is stored as its values on the simple coroots (fundamental
coordinates) plus its value on the scaling element d (the delta coordinate).
Conventions: alpha_i(h_j) = a_{ji}, alpha_i(d) = [i == 0], rho = sum of the
fundamental weights with delta coordinate 0.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction as Q
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import linalg
from .errors import IndexOutOfRange, MultiplicityUnavailable, NotAffine, NotGCM

Coords = Tuple[int, ...]


@dataclass(frozen=True)
class WeightVector:
    fund: Tuple[Q, ...]
    delta: Q = Q(0)

    def __post_init__(self):
        object.__setattr__(self, "fund", tuple(Q(x) for x in self.fund))
        object.__setattr__(self, "delta", Q(self.delta))

    def __add__(self, other: "WeightVector") -> "WeightVector":
        return WeightVector(tuple(a + b for a, b in zip(self.fund, other.fund)), self.delta + other.delta)

    def __sub__(self, other: "WeightVector") -> "WeightVector":
        return WeightVector(tuple(a - b for a, b in zip(self.fund, other.fund)), self.delta - other.delta)

    def __neg__(self) -> "WeightVector":
        return WeightVector(tuple(-a for a in self.fund), -self.delta)

    def scale(self, c) -> "WeightVector":
        c = Q(c)
        return WeightVector(tuple(c * a for a in self.fund), c * self.delta)

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self.fund)

    def sort_key(self):
        return (self.fund, self.delta)

    def to_json(self):
        return {"fund": [str(x) for x in self.fund], "delta": str(self.delta)}

    def __repr__(self) -> str:
        return "W(" + ",".join(str(x) for x in self.fund) + f"; d={self.delta})"


@dataclass(frozen=True)
class RootDatum:
    root: WeightVector
    coords: Coords
    multiplicity: int
    is_real: bool
    height: int

    def to_json(self):
        return {"coords": list(self.coords), "height": self.height,
                "mult": self.multiplicity, "real": self.is_real}


@dataclass(frozen=True, eq=False)
class GCM:
    """A validated affine generalized Cartan matrix."""

    entries: Tuple[Tuple[int, ...], ...]
    null: Tuple[int, ...]  # coefficients of delta in the simple roots
    conull: Tuple[int, ...]  # coefficients of K in the simple coroots
    label: Optional[str] = None
    _cycle: Optional[Tuple[int, ...]] = field(default=None, repr=False)

    def __eq__(self, other) -> bool:
        return isinstance(other, GCM) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    @property
    def size(self) -> int:
        return len(self.entries)

    def a(self, i: int, j: int) -> int:
        return self.entries[i][j]

    def _check(self, i: int) -> None:
        if not 0 <= i < self.size:
            raise IndexOutOfRange(f"index {i} not in 0..{self.size - 1}")

    # weights ---------------------------------------------------------------
    def simple_root(self, i: int) -> WeightVector:
        self._check(i)
        return WeightVector(tuple(self.entries[j][i] for j in range(self.size)), int(i == 0))

    def fundamental(self, i: int) -> WeightVector:
        self._check(i)
        return WeightVector(tuple(int(j == i) for j in range(self.size)), 0)

    @cached_property
    def rho(self) -> WeightVector:
        return WeightVector((1,) * self.size, 0)

    @cached_property
    def delta(self) -> WeightVector:
        return self.from_root_coords(self.null)

    def weight(self, fund: Iterable, delta=0) -> WeightVector:
        fund = tuple(fund)
        if len(fund) != self.size:
            raise IndexOutOfRange(f"expected {self.size} coordinates, got {len(fund)}")
        return WeightVector(fund, delta)

    def from_root_coords(self, c: Sequence) -> WeightVector:
        n = self.size
        return WeightVector(tuple(sum(Q(c[j]) * self.entries[k][j] for j in range(n)) for k in range(n)), Q(c[0]))

    def root_coords(self, lam: WeightVector) -> Optional[Tuple[Q, ...]]:
        """Simple-root coordinates of lam, or None if lam is not in their span."""
        n = self.size
        # A c = fund, with the delta coordinate pinning the kernel direction.
        rows = [[Q(self.entries[k][j]) for j in range(n)] + [lam.fund[k]] for k in range(n)]
        rows.append([Q(int(j == 0)) for j in range(n)] + [lam.delta])
        red, piv = linalg.rref(rows, n + 1)
        if n in piv:
            return None
        sol = [Q(0)] * n
        for row, p in zip(red, piv):
            sol[p] = row[n]
        return tuple(sol)

    def pairing(self, lam: WeightVector, i: int) -> Q:
        self._check(i)
        return lam.fund[i]

    def level(self, lam: WeightVector) -> Q:
        """Value of lam on the canonical central element K."""
        return sum((self.conull[j] * lam.fund[j] for j in range(self.size)), Q(0))

    def reflect(self, i: int, lam: WeightVector) -> WeightVector:
        c = lam.fund[i]
        if c == 0:
            return lam
        return lam - self.simple_root(i).scale(c)

    def reflect_coords(self, i: int, c: Coords) -> Coords:
        """s_i on simple-root coordinates."""
        p = sum(self.entries[i][j] * c[j] for j in range(self.size))
        out = list(c)
        out[i] -= p
        return tuple(out)

    def coroot_value(self, i: int, c: Sequence[int]) -> int:
        """beta(h_i) for beta given in simple-root coordinates."""
        return sum(self.entries[i][j] * c[j] for j in range(self.size))

    # type A realization -----------------------------------------------------
    @property
    def type_a_cycle(self) -> Optional[Tuple[int, ...]]:
        """Node ordering identifying this GCM with the cyclic A_{n-1}^(1) matrix, if any."""
        return self._cycle


def _is_cyclic_a(m: Sequence[Sequence[int]]) -> Optional[Tuple[int, ...]]:
    n = len(m)
    if n == 2:
        return (0, 1) if m[0][1] == -2 and m[1][0] == -2 else None
    for i in range(n):
        nbrs = [j for j in range(n) if j != i and m[i][j] != 0]
        if len(nbrs) != 2 or any(m[i][j] != -1 for j in nbrs):
            return None
    # walk the cycle starting at node 0
    order = [0]
    prev, cur = None, 0
    while True:
        nxt = [j for j in range(n) if j != cur and m[cur][j] != 0 and j != prev]
        step = min(nxt) if prev is None else nxt[0]
        if step == 0:
            break
        order.append(step)
        prev, cur = cur, step
    return tuple(order) if len(order) == n else None


def _connected(m: Sequence[Sequence[int]]) -> bool:
    n = len(m)
    seen, stack = {0}, [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if m[i][j] != 0 and j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == n


def _symmetrizable(m: Sequence[Sequence[int]]) -> bool:
    # find d with d_i a_ij = d_j a_ji by propagating along a spanning tree
    n = len(m)
    d: Dict[int, Q] = {0: Q(1)}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if j != i and m[i][j] != 0 and j not in d:
                d[j] = d[i] * m[i][j] / m[j][i]
                stack.append(j)
    return len(d) == n and all(d[i] * m[i][j] == d[j] * m[j][i] for i in range(n) for j in range(n))


def _primitive_positive(v: Sequence[Q]) -> Optional[Tuple[int, ...]]:
    from math import gcd, lcm

    den = 1
    for x in v:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    ints = [x // g for x in ints]
    if all(x < 0 for x in ints):
        ints = [-x for x in ints]
    if not all(x > 0 for x in ints):
        return None
    return tuple(ints)


def validate_affine(matrix: Sequence[Sequence[int]], label: Optional[str] = None) -> GCM:
    m = [list(map(int, r)) for r in matrix]
    n = len(m)
    if n == 0 or any(len(r) != n for r in m):
        raise NotGCM("matrix must be square and nonempty")
    for i in range(n):
        if m[i][i] != 2:
            raise NotGCM(f"diagonal entry a_{i}{i} = {m[i][i]} != 2")
        for j in range(n):
            if i != j and m[i][j] > 0:
                raise NotGCM(f"off-diagonal entry a_{i}{j} = {m[i][j]} > 0")
            if (m[i][j] == 0) != (m[j][i] == 0):
                raise NotGCM(f"a_{i}{j} and a_{j}{i} must vanish together")
    if not _connected(m):
        raise NotAffine("matrix is decomposable")
    if not _symmetrizable(m):
        raise NotAffine("matrix is not symmetrizable")
    qm = [[Q(x) for x in r] for r in m]
    ker = linalg.nullspace(qm, n)
    if len(ker) != 1:
        raise NotAffine(f"corank {len(ker)} != 1")
    null = _primitive_positive(ker[0])
    coker = linalg.nullspace(linalg.transpose(qm), n)
    conull = _primitive_positive(coker[0]) if coker else None
    if null is None or conull is None:
        raise NotAffine("null vector is not positive (indefinite type)")
    cyc = _is_cyclic_a(m)
    if label is None and cyc is not None:
        label = f"A{n - 1}^1"
    return GCM(tuple(tuple(r) for r in m), null, conull, label, cyc)


def cartan_type_a(rank_plus_one: int) -> GCM:
    """The GCM of A_{n-1}^(1) with n = rank_plus_one nodes."""
    n = rank_plus_one
    if n == 2:
        return validate_affine([[2, -2], [-2, 2]])
    m = [[2 if i == j else (-1 if (i - j) % n in (1, n - 1) else 0) for j in range(n)] for i in range(n)]
    return validate_affine(m)


def parse_type(spec: str) -> GCM:
    """Parse labels like 'A1^1' (affine) or 'A2' (finite, rejected)."""
    s = spec.strip().replace("(", "").replace(")", "")
    if not s or s[0].upper() != "A":
        raise NotGCM(f"unsupported type label {spec!r}")
    if "^" in s:
        body, twist = s[1:].split("^", 1)
        if twist != "1":
            raise NotAffine(f"twisted type {spec!r} has no registered matrix")
        return cartan_type_a(int(body) + 1)
    r = int(s[1:])
    m = [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(r)] for i in range(r)]
    return validate_affine(m)


def load_gcm_json(path: str) -> GCM:
    with open(path) as fh:
        doc = json.load(fh)
    return validate_affine(doc["matrix"], doc.get("label"))


def _real_positive_roots(gcm: GCM, H: int) -> List[Coords]:
    n = gcm.size
    simple = [tuple(int(j == i) for j in range(n)) for i in range(n)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for c in frontier:
            for j in range(n):
                p = gcm.coroot_value(j, c)
                if p < 0:
                    r = gcm.reflect_coords(j, c)
                    if sum(r) <= H and r not in seen:
                        seen.add(r)
                        nxt.append(r)
        frontier = nxt
    return sorted(seen, key=lambda c: (sum(c), c))


def imaginary_multiplicity(gcm: GCM, k: int) -> int:
    """Multiplicity of k*delta read off the loop realization (type A only)."""
    cyc = gcm.type_a_cycle
    if cyc is None:
        raise MultiplicityUnavailable(f"no concrete realization registered for {gcm.label or gcm.entries}")
    from .loop_algebra import root_space_dim

    n = gcm.size
    return root_space_dim(n, tuple([k] * n))


def positive_roots_up_to_height(gcm: GCM, H: int, imaginary: bool = True) -> List[RootDatum]:
    """Positive roots of height at most H, sorted by (height, coordinates).

    With ``imaginary=True`` the multiples of delta are included, which needs a
    concrete realization; otherwise only real roots are returned.
    """
    if H < 1:
        raise ValueError("height bound must be >= 1")
    out = [RootDatum(gcm.from_root_coords(c), c, 1, True, sum(c)) for c in _real_positive_roots(gcm, H)]
    if imaginary:
        hd = sum(gcm.null)
        k = 1
        while k * hd <= H:
            c = tuple(k * x for x in gcm.null)
            out.append(RootDatum(gcm.from_root_coords(c), c, imaginary_multiplicity(gcm, k), False, sum(c)))
            k += 1
    out.sort(key=lambda r: (r.height, r.coords))
    return out


def is_rho_regular_antidominant(gcm: GCM, lam: WeightVector) -> bool:
    return all(x + 1 < 0 for x in lam.fund)

