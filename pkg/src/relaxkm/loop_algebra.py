"""The affine algebra of type A_{n-1}^(1) in its loop realization.

Basis keys:
  ("E", a, b, k)  elementary matrix E_ab (a != b) tensored with t^k
  ("H", j, k)     H_j = E_{j-1,j-1} - E_{jj} tensored with t^k, j = 1..n-1
  ("K",)          central element
  ("d",)          scaling derivation t d/dt

Simple root alpha_j (j >= 1) lives on E_{j-1,j}; alpha_0 lives on E_{n-1,0} t.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from functools import lru_cache
from math import factorial
from typing import Dict, Iterable, List, Optional, Tuple

from .errors import OutOfTruncation, TruncationOverflow

Key = tuple
Coords = Tuple[int, ...]

K_KEY = ("K",)
D_KEY = ("d",)


# structure constants ---------------------------------------------------------

def _matrix_part(key: Key) -> Dict[Tuple[int, int], int]:
    if key[0] == "E":
        return {(key[1], key[2]): 1}
    if key[0] == "H":
        j = key[1]
        return {(j - 1, j - 1): 1, (j, j): -1}
    return {}


def _degree(key: Key) -> int:
    return key[-1] if key[0] in ("E", "H") else 0


def _from_gl(n: int, mat: Dict[Tuple[int, int], Q], k: int) -> Dict[Key, Q]:
    out: Dict[Key, Q] = {}
    diag = [Q(0)] * n
    for (a, b), c in mat.items():
        if c == 0:
            continue
        if a == b:
            diag[a] += c
        else:
            out[("E", a, b, k)] = out.get(("E", a, b, k), Q(0)) + c
    assert sum(diag) == 0, "non-traceless diagonal"
    acc = Q(0)
    for j in range(1, n):
        acc += diag[j - 1]
        if acc != 0:
            out[("H", j, k)] = acc
    return {key: c for key, c in out.items() if c != 0}


@lru_cache(maxsize=None)
def bracket_keys(n: int, x: Key, y: Key) -> Tuple[Tuple[Key, Q], ...]:
    """[x, y] for two basis keys, as a tuple of (key, coefficient)."""
    if x[0] == "K" or y[0] == "K":
        return ()
    if x[0] == "d" and y[0] == "d":
        return ()
    if x[0] == "d":
        k = _degree(y)
        return ((y, Q(k)),) if k else ()
    if y[0] == "d":
        k = _degree(x)
        return ((x, Q(-k)),) if k else ()
    p, q = _degree(x), _degree(y)
    mx, my = _matrix_part(x), _matrix_part(y)
    comm: Dict[Tuple[int, int], Q] = {}
    for (a, b), c1 in mx.items():
        for (c, d), c2 in my.items():
            if b == c:
                comm[(a, d)] = comm.get((a, d), Q(0)) + c1 * c2
            if d == a:
                comm[(c, b)] = comm.get((c, b), Q(0)) - c1 * c2
    out = _from_gl(n, comm, p + q)
    if p + q == 0 and p != 0:
        tr = sum(c1 * c2 for (a, b), c1 in mx.items() for (c, d), c2 in my.items() if b == c and a == d)
        if tr:
            out[K_KEY] = out.get(K_KEY, Q(0)) + p * tr
    return tuple(sorted(((k_, c) for k_, c in out.items() if c != 0), key=lambda kc: repr(kc[0])))


def key_root(n: int, key: Key) -> Coords:
    """Simple-root coordinates of the weight of a basis key (zero for Cartan keys)."""
    if key[0] == "E":
        _, a, b, k = key
        c = [k] * n
        if a < b:
            for j in range(a + 1, b + 1):
                c[j] += 1
        else:
            for j in range(b + 1, a + 1):
                c[j] -= 1
        return tuple(c)
    if key[0] == "H":
        return tuple([key[2]] * n)
    return (0,) * n


def root_space_keys(n: int, c: Coords) -> List[Key]:
    """Basis keys of the root space g_c (empty if c is not a root)."""
    if len(c) != n:
        raise ValueError("coordinate length mismatch")
    k = c[0]
    fin = [x - k for x in c]
    if all(x == 0 for x in fin):
        return [] if k == 0 else [("H", j, k) for j in range(1, n)]
    nz = [j for j in range(n) if fin[j] != 0]
    if fin[0] != 0 or any(abs(fin[j]) != 1 for j in nz):
        return []
    sgn = fin[nz[0]]
    if any(fin[j] != sgn for j in nz) or nz != list(range(nz[0], nz[-1] + 1)):
        return []
    a, b = nz[0] - 1, nz[-1]
    return [("E", a, b, k)] if sgn > 0 else [("E", b, a, k)]


def root_space_dim(n: int, c: Coords) -> int:
    return len(root_space_keys(n, c))


def key_sort_key(n: int, key: Key):
    c = key_root(n, key)
    return (sum(c), c[0], key)


# elements --------------------------------------------------------------------

@dataclass(frozen=True)
class AlgebraElement:
    n: int
    terms: Tuple[Tuple[Key, Q], ...]
    window: Optional[int] = None  # loop-degree bound |k| <= window

    @staticmethod
    def make(n: int, terms: Dict[Key, Q] | Iterable, window: Optional[int] = None) -> "AlgebraElement":
        items = terms.items() if isinstance(terms, dict) else terms
        acc: Dict[Key, Q] = {}
        for k, c in items:
            acc[k] = acc.get(k, Q(0)) + Q(c)
        clean = tuple(sorted(((k, c) for k, c in acc.items() if c != 0), key=lambda kc: key_sort_key(n, kc[0])))
        if window is not None:
            for k, _ in clean:
                if abs(_degree(k)) > window:
                    raise TruncationOverflow(f"term {k} outside loop-degree window {window}")
        return AlgebraElement(n, clean, window)

    def as_dict(self) -> Dict[Key, Q]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        d = self.as_dict()
        for k, c in other.terms:
            d[k] = d.get(k, Q(0)) + c
        return AlgebraElement.make(self.n, d, _join(self.window, other.window))

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + other.scale(-1)

    def __neg__(self) -> "AlgebraElement":
        return self.scale(-1)

    def scale(self, c) -> "AlgebraElement":
        c = Q(c)
        return AlgebraElement.make(self.n, [(k, c * v) for k, v in self.terms], self.window)

    def weight(self) -> Optional[Coords]:
        """Common root coordinates of all terms, or None if inhomogeneous."""
        ws = {key_root(self.n, k) for k, _ in self.terms}
        return ws.pop() if len(ws) == 1 else None

    def to_json(self):
        rows = []
        for k, c in self.terms:
            if k[0] in ("E", "H"):
                mat = _matrix_part(k)
                rows.append({"x": [[a, b, v] for (a, b), v in sorted(mat.items())], "k": _degree(k), "coeff": str(c)})
            else:
                rows.append({"x": k[0], "k": 0, "coeff": str(c)})
        return rows

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{k}" for k, c in self.terms)


def _join(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def bracket(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    if x.n != y.n:
        raise ValueError("elements of different algebras")
    acc: Dict[Key, Q] = {}
    for kx, cx in x.terms:
        for ky, cy in y.terms:
            for kz, cz in bracket_keys(x.n, kx, ky):
                acc[kz] = acc.get(kz, Q(0)) + cx * cy * cz
    return AlgebraElement.make(x.n, acc, _join(x.window, y.window))


def basis_element(n: int, key: Key, window: Optional[int] = None) -> AlgebraElement:
    return AlgebraElement.make(n, {key: Q(1)}, window)


# Chevalley generators -----------------------------------------------------------

def e_key(n: int, i: int) -> Key:
    return ("E", n - 1, 0, 1) if i == 0 else ("E", i - 1, i, 0)


def f_key(n: int, i: int) -> Key:
    return ("E", 0, n - 1, -1) if i == 0 else ("E", i, i - 1, 0)


def chevalley_e(n: int, i: int) -> AlgebraElement:
    return basis_element(n, e_key(n, i))


def chevalley_f(n: int, i: int) -> AlgebraElement:
    return basis_element(n, f_key(n, i))


def chevalley_h(n: int, i: int) -> AlgebraElement:
    if i == 0:
        terms = {("H", j, 0): Q(-1) for j in range(1, n)}
        terms[K_KEY] = Q(1)
        return AlgebraElement.make(n, terms)
    return basis_element(n, ("H", i, 0))


def central_K(n: int) -> AlgebraElement:
    return basis_element(n, K_KEY)


def derivation_d(n: int) -> AlgebraElement:
    return basis_element(n, D_KEY)


def loop_element(n: int, mat: Dict[Tuple[int, int], Q], k: int) -> AlgebraElement:
    """x tensor t^k for a traceless matrix x given by its nonzero entries."""
    return AlgebraElement.make(n, _from_gl(n, {p: Q(v) for p, v in mat.items()}, k))


def omega(x: AlgebraElement) -> AlgebraElement:
    """Chevalley anti-involution: X t^k -> X^T t^{-k}, K -> K, d -> d."""
    acc: Dict[Key, Q] = {}
    for k, c in x.terms:
        if k[0] == "E":
            nk = ("E", k[2], k[1], -k[3])
        elif k[0] == "H":
            nk = ("H", k[1], -k[2])
        else:
            nk = k
        acc[nk] = acc.get(nk, Q(0)) + c
    return AlgebraElement.make(x.n, acc, x.window)


# subalgebras ------------------------------------------------------------------

_SELECTORS = ("n", "n-", "h", "b", "b-", "n_i", "n-_i", "n-_l", "p_i", "p-_i", "g_i", "g'_i")


@dataclass(frozen=True)
class SubalgebraSpec:
    selector: str
    param: Optional[int] = None

    def __post_init__(self):
        if self.selector not in _SELECTORS:
            raise ValueError(f"unknown selector {self.selector!r}")

    def contains_key(self, n: int, key: Key) -> bool:
        """Membership of a basis key; decided by the root of the key."""
        c = key_root(n, key)
        cartan0 = key[0] in ("K", "d") or (key[0] == "H" and key[2] == 0)
        pos = not cartan0 and all(x >= 0 for x in c)
        neg = not cartan0 and all(x <= 0 for x in c)
        i = self.param
        unit = tuple(int(j == i) for j in range(n)) if i is not None else None
        s = self.selector
        if s == "n":
            return pos
        if s == "n-":
            return neg
        if s == "h":
            return cartan0
        if s == "b":
            return pos or cartan0
        if s == "b-":
            return neg or cartan0
        if s == "n_i":
            return pos and c != unit
        if s == "n-_i":
            return neg and c != tuple(-x for x in unit)
        if s == "n-_l":
            return neg and sum(c) <= -i
        if s == "p_i":
            return pos or cartan0 or c == tuple(-x for x in unit)
        if s == "p-_i":
            return neg or cartan0 or c == unit
        if s == "g_i":
            return cartan0 or c == unit or c == tuple(-x for x in unit)
        # g'_i is not spanned by basis keys when i = 0 (h_0 involves K)
        return key in (e_key(n, i), f_key(n, i)) or (i != 0 and key == ("H", i, 0))

    def contains(self, x: AlgebraElement) -> bool:
        if self.selector == "g'_i":
            e, f, h = chevalley_e(x.n, self.param), chevalley_f(x.n, self.param), chevalley_h(x.n, self.param)
            d = x.as_dict()
            ce, cf = d.pop(e_key(x.n, self.param), Q(0)), d.pop(f_key(x.n, self.param), Q(0))
            rest = AlgebraElement.make(x.n, d)
            hd = h.as_dict()
            if rest.is_zero():
                return True
            anchor = next(iter(hd))
            ch = rest.as_dict().get(anchor, Q(0))
            return (rest - h.scale(ch)).is_zero()
        return all(self.contains_key(x.n, k) for k, _ in x.terms)


def negative_keys(n: int, depth: int) -> List[Key]:
    """All basis keys of negative root spaces with loop degree >= -depth."""
    out = []
    for k in range(-depth, 1):
        for a in range(n):
            for b in range(n):
                if a != b:
                    key = ("E", a, b, k)
                    if all(x <= 0 for x in key_root(n, key)):
                        out.append(key)
        if k < 0:
            out.extend(("H", j, k) for j in range(1, n))
    return out


def root_space_basis(n: int, c: Coords, spec: SubalgebraSpec, depth: Optional[int] = None) -> List[AlgebraElement]:
    """Basis of g_c intersected with the given subalgebra."""
    if depth is not None and abs(c[0]) > depth:
        raise OutOfTruncation(f"root {c} outside loop-degree window {depth}")
    return [basis_element(n, k) for k in root_space_keys(n, c) if spec.contains_key(n, k)]


# Tits automorphism -------------------------------------------------------------

def exp_ad(x: AlgebraElement, y: AlgebraElement, sign: int = 1, cap: int = 16) -> AlgebraElement:
    """exp(sign * ad x) applied to y; ad x must be locally nilpotent on y."""
    total = y
    term = y
    for m in range(1, cap + 1):
        term = bracket(x, term)
        if term.is_zero():
            return total
        total = total + term.scale(Q(sign) ** m / factorial(m))
    raise TruncationOverflow("ad is not nilpotent within the cap")


def tits_automorphism(i: int, a: AlgebraElement) -> AlgebraElement:
    """exp(ad e_i) exp(-ad f_i) exp(ad e_i) applied to a (rightmost first)."""
    e, f = chevalley_e(a.n, i), chevalley_f(a.n, i)
    return exp_ad(e, exp_ad(f, exp_ad(e, a), -1))


@lru_cache(maxsize=None)
def tits_key(n: int, i: int, key: Key) -> Tuple[Tuple[Key, Q], ...]:
    return tits_automorphism(i, basis_element(n, key)).terms


def tits(i: int, a: AlgebraElement) -> AlgebraElement:
    """Cached version of tits_automorphism (linear extension over basis keys)."""
    acc: Dict[Key, Q] = {}
    for k, c in a.terms:
        for k2, c2 in tits_key(a.n, i, k):
            acc[k2] = acc.get(k2, Q(0)) + c * c2
    return AlgebraElement.make(a.n, acc, a.window)


# Lemma-style bound ---------------------------------------------------------------

def _reflect(n: int, i: int, c: Coords) -> Coords:
    from .cartan import cartan_type_a

    return cartan_type_a(n).reflect_coords(i, c)


def delta_bound_witness(n: int, i: int, l: int, d: int, depth: int) -> Optional[str]:
    """First violation of n-_{l+d} in s(n-_l) in n-_{l-d} within depth, or None."""
    if l - d < 0:
        raise ValueError("need l - d >= 0")
    if depth < l + d:
        raise OutOfTruncation("depth must cover height l + d")
    keys = [k for k in negative_keys(n, depth) if -depth <= sum(key_root(n, k)) <= -l]
    # image inclusion
    for k in keys:
        for k2, _ in tits_key(n, i, k):
            c2 = key_root(n, k2)
            if not (k2[0] in ("E", "H") and all(x <= 0 for x in c2) and sum(c2) <= -(l - d)):
                return f"s~_{i} maps {k} (root {key_root(n, k)}) to {k2} (root {c2}) outside n-_{l - d}"
    # coverage: every root space of n-_{l+d} is reached from n-_l
    roots = sorted({key_root(n, k) for k in negative_keys(n, depth) if -depth <= sum(key_root(n, k)) <= -(l + d)})
    for c in roots:
        pre = _reflect(n, i, c)
        if not (all(x <= 0 for x in pre) and sum(pre) <= -l):
            return f"root space {c} of n-_{l + d} has preimage root {pre} outside n-_{l}"
        images = [tits(i, basis_element(n, k)) for k in root_space_keys(n, pre)]
        target = root_space_keys(n, c)
        rows = [[im.as_dict().get(t, Q(0)) for t in target] for im in images]
        from .linalg import rank

        if rank(rows, len(target)) < len(target):
            return f"image of g_{pre} does not span g_{c}"
    return None


def verify_delta_bound(n: int, i: int, l: int, d: int, depth: int) -> bool:
    return delta_bound_witness(n, i, l, d, depth) is None
