"""Dense sl2 weight modules on a Z-indexed basis, and general sl2 weight modules.

Basis v_n has h-weight Lam + 2*alpha + 2n, with e.v_n = a_n v_{n+1} and
f.v_n = b_n v_{n-1}. Within a window [n_min, n_max] we store a_n for
n in [n_min, n_max - 1] and b_n for n in [n_min + 1, n_max].
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as Q
from typing import Dict, List, Optional, Tuple

from .errors import BadParameters, InconsistentWindow, WindowEdge
from .linalg import Matrix

FAMILIES = ("generic", "eq", "lt", "gt")


def _is_int(x: Q) -> bool:
    return Q(x).denominator == 1


def casimir_fe(Lam: Q, alpha: Q, n: int) -> Q:
    """The scalar by which fe acts on v_n in every module of the block (Lam, alpha)."""
    u = alpha + n
    return -u * (u + 1 + Lam)


@dataclass(frozen=True)
class DenseSl2Module:
    Lam: Q
    family: str
    alpha: Q
    window: Tuple[int, int]
    a: Tuple[Q, ...]  # a[n - n_min] for n in [n_min, n_max - 1]
    b: Tuple[Q, ...]  # b[n - n_min - 1] for n in [n_min + 1, n_max]

    @property
    def n_min(self) -> int:
        return self.window[0]

    @property
    def n_max(self) -> int:
        return self.window[1]

    def weight(self, n: int) -> Q:
        return self.Lam + 2 * self.alpha + 2 * n

    def e(self, n: int) -> Q:
        if not self.n_min <= n < self.n_max:
            raise WindowEdge(f"e on v_{n} leaves the window {self.window}")
        return self.a[n - self.n_min]

    def f(self, n: int) -> Q:
        if not self.n_min < n <= self.n_max:
            raise WindowEdge(f"f on v_{n} leaves the window {self.window}")
        return self.b[n - self.n_min - 1]

    def fe_eigenvalue(self, n: int) -> Q:
        return self.e(n) * self.f(n + 1)

    def relation_defects(self) -> List[Tuple[int, str, Q]]:
        """Interior indices where [e,f]=h, [h,e]=2e or [h,f]=-2f fails."""
        bad = []
        for n in range(self.n_min + 1, self.n_max):
            ef = self.f(n) * self.e(n - 1) - self.e(n) * self.f(n + 1)
            if ef != self.weight(n):
                bad.append((n, "[e,f]=h", ef - self.weight(n)))
            if (self.weight(n + 1) - self.weight(n)) * self.e(n) != 2 * self.e(n):
                bad.append((n, "[h,e]=2e", Q(0)))
            if (self.weight(n - 1) - self.weight(n)) * self.f(n) != -2 * self.f(n):
                bad.append((n, "[h,f]=-2f", Q(0)))
        return bad

    def gauge_normalized(self) -> "DenseSl2Module":
        """Rescale basis vectors so a_n = 1 wherever a_n != 0 and b = 1 at chain starts."""
        g = {self.n_min: Q(1)}
        for n in range(self.n_min, self.n_max):
            an = self.e(n)
            if an != 0:
                g[n + 1] = g[n] * an
            else:
                bn = self.f(n + 1)
                g[n + 1] = g[n] / bn if bn != 0 else Q(1)
        a = tuple(self.e(n) * g[n] / g[n + 1] for n in range(self.n_min, self.n_max))
        b = tuple(self.f(n) * g[n] / g[n - 1] for n in range(self.n_min + 1, self.n_max + 1))
        return DenseSl2Module(self.Lam, self.family, self.alpha, self.window, a, b)

    def restrict(self, window: Tuple[int, int]) -> "DenseSl2Module":
        lo, hi = window
        if lo < self.n_min or hi > self.n_max or lo >= hi:
            raise InconsistentWindow(f"{window} not inside {self.window}")
        a = tuple(self.e(n) for n in range(lo, hi))
        b = tuple(self.f(n) for n in range(lo + 1, hi + 1))
        return DenseSl2Module(self.Lam, self.family, self.alpha, (lo, hi), a, b)

    def to_weight_module(self) -> "Sl2WeightModule":
        dims = {n: 1 for n in range(self.n_min, self.n_max + 1)}
        e = {n: [[self.e(n)]] for n in range(self.n_min, self.n_max)}
        f = {n: [[self.f(n)]] for n in range(self.n_min + 1, self.n_max + 1)}
        return Sl2WeightModule(self.Lam, self.alpha, self.window, dims, e, f)

    def to_json(self):
        return {"Lam": str(self.Lam), "family": self.family, "alpha": str(self.alpha),
                "window": list(self.window), "a": [str(x) for x in self.a], "b": [str(x) for x in self.b]}


def _build(Lam: Q, alpha: Q, family: str, window: Tuple[int, int],
           a_zeros: set, b_zeros: set) -> DenseSl2Module:
    lo, hi = window
    a = {n: Q(0) if n in a_zeros else Q(1) for n in range(lo, hi)}
    b = {}
    for n in range(lo + 1, hi + 1):
        if a[n - 1] != 0:
            b[n] = casimir_fe(Lam, alpha, n - 1) / a[n - 1]
            if n in b_zeros and b[n] != 0:
                raise BadParameters(f"zero of f at v_{n} is inconsistent with the Casimir")
        else:
            if casimir_fe(Lam, alpha, n - 1) != 0:
                raise BadParameters(f"zero of e at v_{n - 1} is inconsistent with the Casimir")
            b[n] = Q(0) if n in b_zeros else Q(1)
    return DenseSl2Module(Lam, family, alpha, window,
                          tuple(a[n] for n in range(lo, hi)), tuple(b[n] for n in range(lo + 1, hi + 1)))


def construct(Lam, family: str, window: Tuple[int, int], alpha=None) -> DenseSl2Module:
    """Build a dense module in the gauge a_n in {0, 1}.

    generic: b_n = -(alpha+n-1)(alpha+n+Lam), nowhere zero.
    eq:      a vanishes only at n = -Lam-1, b only at n = 1.
    lt, gt:  the two placements with both zeros of the same kind.
    """
    Lam = Q(Lam)
    lo, hi = window
    if lo >= hi:
        raise InconsistentWindow(f"empty window {window}")
    if family not in FAMILIES:
        raise BadParameters(f"unknown family {family!r}")
    if family == "generic":
        if alpha is None or _is_int(Q(alpha)):
            raise BadParameters("generic family needs a non-integral alpha")
        alpha = Q(alpha)
        if _is_int(alpha + Lam):
            raise BadParameters("generic family needs alpha + Lam non-integral")
        return _build(Lam, alpha, family, window, set(), set())
    if not _is_int(Lam):
        raise BadParameters("integral classes need an integral Lam")
    if alpha not in (None, 0):
        raise BadParameters("integral classes use alpha = 0")
    L = int(Lam)
    low, high = -L - 1, 0  # the two indices where fe vanishes
    if family == "eq":
        az, bz = {low}, {1}
    elif family == "gt":
        az, bz = {low, high}, set()
    else:
        az, bz = set(), {low + 1, high + 1}
    return _build(Lam, Q(0), family, window, az, bz)


def dual_sl2(m: DenseSl2Module) -> DenseSl2Module:
    """Transpose through the anti-involution e <-> f, then regauge."""
    lo, hi = m.window
    a = tuple(m.f(n + 1) for n in range(lo, hi))
    b = tuple(m.e(n - 1) for n in range(lo + 1, hi + 1))
    return DenseSl2Module(m.Lam, m.family, m.alpha, m.window, a, b).gauge_normalized()


def isomorphic(m1: DenseSl2Module, m2: DenseSl2Module) -> bool:
    """Same weights and same gauge-normalized coefficients on the common window."""
    lo, hi = max(m1.n_min, m2.n_min), min(m1.n_max, m2.n_max)
    if lo >= hi or m1.weight(lo) != m2.weight(lo):
        return False
    n1, n2 = m1.restrict((lo, hi)).gauge_normalized(), m2.restrict((lo, hi)).gauge_normalized()
    return n1.a == n2.a and n1.b == n2.b


def verma_sl2(Lam, window: Tuple[int, int]) -> "Sl2WeightModule":
    """The sl2 Verma module of highest weight Lam: v_0 highest, v_{-k} = f^k v_0."""
    Lam = Q(Lam)
    lo, hi = window
    dims = {n: int(n <= 0) for n in range(lo, hi + 1)}
    e = {n: [[-n * (Lam + n + 1)]] for n in range(lo, min(hi, 0))}
    f = {n: [[Q(1)]] for n in range(lo + 1, min(hi, 0) + 1)}
    return Sl2WeightModule(Lam, Q(0), (lo, hi), dims, e, f)


@dataclass(frozen=True)
class Sl2WeightModule:
    """A weight module on the index window [lo, hi]; index n has weight Lam + 2*alpha + 2n.

    e[n] is the matrix dims[n+1] x dims[n]; f[n] is dims[n-1] x dims[n].
    Absent entries between nonzero spaces are not allowed; maps into a zero
    space are implicit.
    """

    Lam: Q
    alpha: Q
    window: Tuple[int, int]
    dims: Dict[int, int]
    e: Dict[int, Matrix] = field(default_factory=dict)
    f: Dict[int, Matrix] = field(default_factory=dict)

    def weight(self, n: int) -> Q:
        return self.Lam + 2 * self.alpha + 2 * n

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    @property
    def indices(self) -> List[int]:
        return sorted(n for n, d in self.dims.items() if d)

    def e_matrix(self, n: int) -> Matrix:
        lo, hi = self.window
        if not lo <= n < hi:
            raise WindowEdge(f"e from index {n} leaves the window {self.window}")
        if self.dim(n) == 0 or self.dim(n + 1) == 0:
            return [[Q(0)] * self.dim(n) for _ in range(self.dim(n + 1))]
        return self.e[n]

    def f_matrix(self, n: int) -> Matrix:
        lo, hi = self.window
        if not lo < n <= hi:
            raise WindowEdge(f"f from index {n} leaves the window {self.window}")
        if self.dim(n) == 0 or self.dim(n - 1) == 0:
            return [[Q(0)] * self.dim(n) for _ in range(self.dim(n - 1))]
        return self.f[n]

    def dual(self) -> "Sl2WeightModule":
        """Restricted dual through e <-> f: e'_n = f_{n+1}^T, f'_n = e_{n-1}^T."""
        lo, hi = self.window
        e = {n: _t(self.f_matrix(n + 1), self.dim(n + 1)) for n in range(lo, hi)}
        f = {n: _t(self.e_matrix(n - 1), self.dim(n - 1)) for n in range(lo + 1, hi + 1)}
        return Sl2WeightModule(self.Lam, self.alpha, self.window, dict(self.dims), e, f)

    def to_dense(self, family: str = "eq") -> DenseSl2Module:
        """Convert when every weight space in the window is a line."""
        lo, hi = self.window
        if any(self.dim(n) != 1 for n in range(lo, hi + 1)):
            raise BadParameters("not a dense module with one-dimensional weight spaces")
        a = tuple(self.e_matrix(n)[0][0] for n in range(lo, hi))
        b = tuple(self.f_matrix(n)[0][0] for n in range(lo + 1, hi + 1))
        return DenseSl2Module(self.Lam, family, self.alpha, (lo, hi), a, b)

    def relation_defects(self) -> List[Tuple[int, str]]:
        """Interior indices where [e,f] = h fails."""
        bad = []
        lo, hi = self.window
        for n in range(lo + 1, hi):
            d = self.dim(n)
            if d == 0:
                continue
            fe = _mm(self.f_matrix(n + 1), self.e_matrix(n), d)
            ef = _mm(self.e_matrix(n - 1), self.f_matrix(n), d)
            for r in range(d):
                for c in range(d):
                    if ef[r][c] - fe[r][c] != (self.weight(n) if r == c else 0):
                        bad.append((n, "[e,f]=h"))
                        break
                else:
                    continue
                break
        return bad

    def to_json(self):
        lo, hi = self.window
        return {"Lam": str(self.Lam), "alpha": str(self.alpha), "window": [lo, hi],
                "weights": [{"weight": str(self.weight(n)), "dim": self.dim(n)} for n in range(lo, hi + 1)]}


def _t(m: Matrix, rows_of_result: int) -> Matrix:
    # transpose of an r x c matrix, keeping shape information for empty cases
    r = len(m)
    return [[m[k][j] for k in range(r)] for j in range(rows_of_result)]


def _mm(a: Matrix, b: Matrix, cols: int) -> Matrix:
    inner = len(b)
    return [[sum((a[r][k] * b[k][c] for k in range(inner)), Q(0)) for c in range(cols)] for r in range(len(a))]
