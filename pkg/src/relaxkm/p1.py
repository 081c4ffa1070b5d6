"""Twisted rank-one D-modules on P^1 and their two-chart Cech cohomology.

Charts: U0 with coordinate x, Uinf with coordinate z = 1/x, overlap C^x. A
section module on a chart is a rank-one model: basis s_u indexed by exponents
u in a residue class, with  y.s_u = p_u s_{u+1},  d.s_u = q_u s_{u-1}  and
p_{u-1} q_u = u (the Euler operator y d acts by u). Each model comes with its
localization map to the overlap, s_u -> rho_u y^u.

The sheaf is twisted by c = n_twist - 2. In the x-chart
    e = d,  h = -2 y d + c,  f = y(-y d + c)
and in the z-chart the roles of e and f swap:
    f = d,  h = 2 y d - c,  e = y(-y d + c).
x^u and z^(c-u) are the same section on the overlap.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as Q
from math import floor
from typing import Dict, List, Optional, Tuple

from . import linalg
from .errors import BadParameters, ParameterMismatch, WindowTooSmall
from .linalg import Matrix
from .sl2 import Sl2WeightModule, _t

SOURCES = ("c_times", "a1_cell", "skyscraper")
EXTENSIONS = ("star", "shriek", "intermediate")


@dataclass(frozen=True)
class ChartModel:
    """Rank-one section model on a chart; exponents in residue + Z."""

    kind: str  # loc, star, shriek, smooth, skyscraper, zero
    residue: Q = Q(0)

    def has(self, u: Q) -> bool:
        if self.kind == "zero" or (u - self.residue).denominator != 1:
            return False
        if self.kind == "smooth":
            return u >= 0
        if self.kind == "skyscraper":
            return u <= -1
        return True

    def p(self, u: Q) -> Q:
        if not (self.has(u) and self.has(u + 1)):
            return Q(0)
        if self.kind == "shriek" and u == -1:
            return Q(0)
        return Q(1)

    def q(self, u: Q) -> Q:
        if not (self.has(u) and self.has(u - 1)):
            return Q(0)
        if self.kind == "shriek" and u == 0:
            return Q(1)
        return Q(u)

    def res(self, u: Q) -> Q:
        if not self.has(u):
            return Q(0)
        if self.kind == "skyscraper":
            return Q(0)
        if self.kind == "shriek":
            return Q(int(u >= 0))
        return Q(1)


@dataclass(frozen=True)
class TwistedP1Module:
    n_twist: int
    source: str
    extension: str = "star"
    alpha: Q = Q(0)

    def __post_init__(self):
        if self.source not in SOURCES:
            raise BadParameters(f"unknown source {self.source!r}")
        if self.extension not in EXTENSIONS:
            raise BadParameters(f"unknown extension {self.extension!r}")
        object.__setattr__(self, "alpha", Q(self.alpha))
        if self.source != "c_times" and self.alpha != 0:
            raise BadParameters("only the C^x source carries a monodromy parameter")

    @property
    def c(self) -> int:
        return self.n_twist - 2

    @property
    def Lam(self) -> Q:
        return Q(-self.n_twist)

    @property
    def alpha_class(self) -> Q:
        # the local system only depends on alpha mod Z
        return self.alpha - floor(self.alpha)

    def charts(self) -> Tuple[ChartModel, ChartModel]:
        """(x-chart model, z-chart model)."""
        a = self.alpha_class
        if self.source == "skyscraper":
            return ChartModel("zero"), ChartModel("skyscraper")
        ext = {"star": "star", "shriek": "shriek", "intermediate": "smooth"}[self.extension]
        if self.source == "a1_cell":
            return ChartModel("smooth"), ChartModel(ext)
        if a != 0:
            return ChartModel("loc", -a), ChartModel("loc", a)
        return ChartModel(ext), ChartModel(ext)

    def overlap(self) -> ChartModel:
        if self.source == "skyscraper":
            return ChartModel("zero")
        return ChartModel("loc", -self.alpha_class)

    def describe(self) -> Dict[str, str]:
        return {"n_twist": str(self.n_twist), "source": self.source, "extension": self.extension,
                "alpha": str(self.alpha)}


# per-weight Cech data ------------------------------------------------------------

def _x_ops(m: ChartModel, c: int, u: Q) -> Dict[str, Tuple[Q, Q]]:
    """Chart in x: op -> (new exponent, coefficient) on s_u."""
    return {"e": (u - 1, m.q(u)), "f": (u + 1, (c - u) * m.p(u))}


def _z_ops(m: ChartModel, c: int, w: Q) -> Dict[str, Tuple[Q, Q]]:
    return {"f": (w - 1, m.q(w)), "e": (w + 1, (c - w) * m.p(w))}


@dataclass
class WeightData:
    weight: Q
    c0_x: bool
    c0_z: bool
    c1: bool
    d: Matrix  # rows: overlap (0 or 1), cols: present C0 coordinates


@dataclass
class CohomologyResult:
    module: TwistedP1Module
    window: Tuple[Q, Q]
    h0: Sl2WeightModule
    h1: Sl2WeightModule
    chart_data: Dict[int, WeightData] = field(default_factory=dict)
    note: str = ""

    def table(self) -> List[Dict[str, object]]:
        lo, hi = self.h0.window
        return [{"weight": str(self.h0.weight(n)), "dimH0": self.h0.dim(n), "dimH1": self.h1.dim(n)}
                for n in range(lo, hi + 1)]

    def to_json(self):
        return {"module": self.module.describe(), "window": [str(x) for x in self.window],
                "table": self.table(), "h0": _coeffs_json(self.h0), "h1": _coeffs_json(self.h1),
                "note": self.note}

    def to_tsv(self) -> str:
        lines = ["weight\tdimH0\tdimH1"]
        lines += [f"{r['weight']}\t{r['dimH0']}\t{r['dimH1']}" for r in self.table()]
        return "\n".join(lines)

    def h1_nonzero(self) -> bool:
        return any(self.h1.dim(n) for n in range(self.h1.window[0], self.h1.window[1] + 1))

    def euler(self) -> Dict[int, int]:
        return {n: self.h0.dim(n) - self.h1.dim(n) for n in range(self.h0.window[0], self.h0.window[1] + 1)}


def _coeffs_json(m: Sl2WeightModule):
    lo, hi = m.window
    out = []
    for n in range(lo, hi + 1):
        row = {"weight": str(m.weight(n)), "dim": m.dim(n)}
        if n < hi:
            row["e"] = [[str(x) for x in r] for r in m.e_matrix(n)]
        if n > lo:
            row["f"] = [[str(x) for x in r] for r in m.f_matrix(n)]
        out.append(row)
    return out


def _index_window(Lam: Q, alpha: Q, window: Tuple[Q, Q]) -> Tuple[int, int]:
    base = Lam + 2 * alpha
    lo = -floor((base - Q(window[0])) / 2)
    hi = floor((Q(window[1]) - base) / 2)
    return lo, hi


def default_window(n_twist: int) -> Tuple[int, int]:
    return -abs(n_twist) - 6, abs(n_twist) + 6


def _check_window(m: TwistedP1Module, window: Tuple[Q, Q]) -> None:
    need = abs(m.c) + 4
    if Q(window[0]) > -need or Q(window[1]) < need:
        raise WindowTooSmall(f"window {window} must contain [-{need}, {need}] for n_twist={m.n_twist}")


def cohomology(m: TwistedP1Module, window: Optional[Tuple[Q, Q]] = None) -> CohomologyResult:
    """H^0 = ker, H^1 = coker of the Cech map C0(U0) + C0(Uinf) -> C1(overlap), weight by weight."""
    window = window or default_window(m.n_twist)
    _check_window(m, window)
    c = m.c
    X, Z = m.charts()
    O = m.overlap()
    alpha = m.alpha_class
    lo, hi = _index_window(m.Lam, alpha, window)
    # index n <-> weight Lam + 2 alpha + 2n <-> x-exponent u = (c - weight)/2
    wt = {n: m.Lam + 2 * alpha + 2 * n for n in range(lo - 1, hi + 2)}
    ux = {n: (c - wt[n]) / 2 for n in wt}

    def c0_coords(n):
        u = ux[n]
        out = []
        if X.has(u):
            out.append(("x", u))
        if Z.has(c - u):
            out.append(("z", c - u))
        return out

    def c1_coords(n):
        return [("o", ux[n])] if O.has(ux[n]) else []

    def dmat(n) -> Matrix:
        cols = c0_coords(n)
        rows = c1_coords(n)
        mat = linalg.zeros(len(rows), len(cols))
        for j, (ch, e) in enumerate(cols):
            if rows:
                mat[0][j] = X.res(e) if ch == "x" else -Z.res(e)
        return mat

    def op_c0(op: str, n: int) -> Matrix:
        """Matrix of op from C0 at index n to C0 at n +- 1."""
        tgt = n + 1 if op == "e" else n - 1
        src_c, dst_c = c0_coords(n), c0_coords(tgt)
        pos = {k: j for j, k in enumerate(dst_c)}
        mat = linalg.zeros(len(dst_c), len(src_c))
        for j, (ch, e) in enumerate(src_c):
            ne, coef = (_x_ops(X, c, e) if ch == "x" else _z_ops(Z, c, e))[op]
            if coef and (ch, ne) in pos:
                mat[pos[(ch, ne)]][j] += coef
        return mat

    def op_c1(op: str, n: int) -> Matrix:
        tgt = n + 1 if op == "e" else n - 1
        src_c, dst_c = c1_coords(n), c1_coords(tgt)
        mat = linalg.zeros(len(dst_c), len(src_c))
        if src_c and dst_c:
            u = src_c[0][1]
            mat[0][0] = _x_ops(O, c, u)[op][1]
        return mat

    kers: Dict[int, List[List[Q]]] = {}
    cok: Dict[int, Tuple[List[List[Q]], List[List[Q]]]] = {}
    data: Dict[int, WeightData] = {}
    for n in range(lo, hi + 1):
        d = dmat(n)
        nc0 = len(c0_coords(n))
        n1 = len(c1_coords(n))
        kers[n] = linalg.nullspace(d, nc0) if nc0 else []
        img = linalg.column_basis([list(col) for col in zip(*d)], n1) if d and nc0 else []
        comp = [[Q(int(r == k)) for r in range(n1)] for k in range(n1)]
        comp = [v for v in comp if linalg.solve_in_span(img, v) is None][: n1 - len(img)]
        cok[n] = (img, comp)
        cols = c0_coords(n)
        data[n] = WeightData(wt[n], any(ch == "x" for ch, _ in cols), any(ch == "z" for ch, _ in cols), bool(n1), d)

    def induced_on_h0(op: str, n: int) -> Matrix:
        tgt = n + 1 if op == "e" else n - 1
        M = op_c0(op, n)
        out = linalg.zeros(len(kers[tgt]), len(kers[n]))
        for j, v in enumerate(kers[n]):
            im = linalg.matvec(M, v)
            sol = linalg.solve_in_span(kers[tgt], im)
            if sol is None:
                raise AssertionError("Cech differential is not sl2-equivariant")
            for r, x in enumerate(sol):
                out[r][j] = x
        return out

    def induced_on_h1(op: str, n: int) -> Matrix:
        tgt = n + 1 if op == "e" else n - 1
        M = op_c1(op, n)
        img_t, comp_t = cok[tgt]
        out = linalg.zeros(len(comp_t), len(cok[n][1]))
        for j, v in enumerate(cok[n][1]):
            im = linalg.matvec(M, v)
            sol = linalg.solve_in_span(img_t + comp_t, im)
            for r in range(len(comp_t)):
                out[r][j] = sol[len(img_t) + r]
        return out

    h0 = Sl2WeightModule(m.Lam, alpha, (lo, hi), {n: len(kers[n]) for n in range(lo, hi + 1)},
                         {n: induced_on_h0("e", n) for n in range(lo, hi)},
                         {n: induced_on_h0("f", n) for n in range(lo + 1, hi + 1)})
    h1 = Sl2WeightModule(m.Lam, alpha, (lo, hi), {n: len(cok[n][1]) for n in range(lo, hi + 1)},
                         {n: induced_on_h1("e", n) for n in range(lo, hi)},
                         {n: induced_on_h1("f", n) for n in range(lo + 1, hi + 1)})
    return CohomologyResult(m, (Q(window[0]), Q(window[1])), h0, h1, data)


# duality -----------------------------------------------------------------------------

def antipode_dual(m: Sl2WeightModule) -> Sl2WeightModule:
    """Graded dual through the anti-involution x -> -x; weight w becomes -w.

    The weights of the result lie in Lam + 2*alpha' + 2Z with alpha' = -alpha
    mod 1; (M_n)^* gets index -Lam - alpha - alpha' - n.
    """
    a2 = -m.alpha - floor(-m.alpha)
    s = -m.Lam - m.alpha - a2
    if s.denominator != 1:
        raise ParameterMismatch("Lam must be an integer for the antipode dual")
    s = int(s)
    lo, hi = m.window
    nlo, nhi = -hi + s, -lo + s
    dims = {-n + s: m.dim(n) for n in range(lo, hi + 1)}
    e, f = {}, {}
    for k in range(nlo, nhi):
        n = s - k  # (M_n)^* -> (M_{n-1})^*
        e[k] = [[-x for x in row] for row in _t(m.e_matrix(n - 1), m.dim(n - 1))]
    for k in range(nlo + 1, nhi + 1):
        n = s - k  # (M_n)^* -> (M_{n+1})^*
        f[k] = [[-x for x in row] for row in _t(m.f_matrix(n + 1), m.dim(n + 1))]
    return Sl2WeightModule(m.Lam, a2, (nlo, nhi), dims, e, f)


def shriek_via_duality(m: TwistedP1Module, window: Optional[Tuple[Q, Q]] = None) -> CohomologyResult:
    """Cohomology of the !-extension as the dual of the *-extension with parameter -alpha."""
    if m.source == "skyscraper":
        raise BadParameters("the skyscraper has no open part to extend")
    star = TwistedP1Module(m.n_twist, m.source, "star", -m.alpha)
    r = cohomology(star, window)
    out = CohomologyResult(TwistedP1Module(m.n_twist, m.source, "shriek", m.alpha), r.window,
                           antipode_dual(r.h0), antipode_dual(r.h1), {}, note="computed by duality")
    return out


def dual_result(r: CohomologyResult) -> CohomologyResult:
    return CohomologyResult(r.module, r.window, antipode_dual(r.h0), antipode_dual(r.h1), r.chart_data,
                            note="dual of " + (r.note or "direct"))


# comparison -----------------------------------------------------------------------

def line_invariants(m: Sl2WeightModule, lo: int, hi: int):
    """Complete isomorphism invariants for modules with weight spaces of dim <= 1."""
    if any(m.dim(n) > 1 for n in range(lo, hi + 1)):
        raise ParameterMismatch("invariants only cover line modules")
    dims = tuple(m.dim(n) for n in range(lo, hi + 1))
    ez = tuple(bool(m.dim(n) and m.dim(n + 1) and m.e_matrix(n)[0][0]) for n in range(lo, hi))
    fz = tuple(bool(m.dim(n) and m.dim(n - 1) and m.f_matrix(n)[0][0]) for n in range(lo + 1, hi + 1))
    fe = tuple(m.e_matrix(n)[0][0] * m.f_matrix(n + 1)[0][0] if m.dim(n) and m.dim(n + 1) else Q(0)
               for n in range(lo, hi))
    return dims, ez, fz, fe


def same_line_module(a: Sl2WeightModule, b: Sl2WeightModule) -> bool:
    if a.Lam + 2 * a.alpha != b.Lam + 2 * b.alpha:
        return False
    lo, hi = max(a.window[0], b.window[0]), min(a.window[1], b.window[1])
    return line_invariants(a, lo, hi) == line_invariants(b, lo, hi)


def same_dims(a: Sl2WeightModule, b: Sl2WeightModule) -> bool:
    lo, hi = max(a.window[0], b.window[0]), min(a.window[1], b.window[1])
    return all(a.dim(n) == b.dim(n) for n in range(lo, hi + 1))


# induction ---------------------------------------------------------------------------

def induce_to_g(result: CohomologyResult, lam, i: int, depth: int, which: str = "h0"):
    """U(g) tensor_{U(p_i)} H^j(P^1, M). No H^2 exists for a two-chart cover."""
    from .cartan import cartan_type_a
    from .induced import induced_from_top

    top = {"h0": result.h0, "h1": result.h1}[which]
    if Q(lam.fund[i]) != top.Lam:
        raise ParameterMismatch(f"lam(h_{i}) = {lam.fund[i]} but the sl2 data has Lam = {top.Lam}")
    gcm = cartan_type_a(len(lam.fund))
    return induced_from_top(gcm, lam, i, top, depth, kind=f"{which}:{result.module.source}/{result.module.extension}")
