"""Exact rational linear algebra on small dense matrices.

Matrices are lists of rows of ``Fraction``. The heavy lifting (row reduction)
is delegated to sympy's ``DomainMatrix`` over QQ.
"""
from __future__ import annotations

from fractions import Fraction as Q
from typing import List, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

Matrix = List[List[Q]]


def _to_dm(rows: Sequence[Sequence[Q]], ncols: int) -> DomainMatrix:
    data = [[QQ(int(x.numerator), int(x.denominator)) if isinstance(x, Q) else QQ(x) for x in r] for r in rows]
    return DomainMatrix(data, (len(rows), ncols), QQ)


def _from_qq(x) -> Q:
    return Q(int(x.numerator), int(x.denominator))


def zeros(r: int, c: int) -> Matrix:
    return [[Q(0)] * c for _ in range(r)]


def transpose(m: Matrix, ncols: int | None = None) -> Matrix:
    if not m:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*m)]


def rank(rows: Sequence[Sequence[Q]], ncols: int) -> int:
    if not rows or ncols == 0:
        return 0
    return _to_dm(rows, ncols).rank()


def nullspace(rows: Sequence[Sequence[Q]], ncols: int) -> List[List[Q]]:
    """Basis of {v : M v = 0}, as a list of column vectors."""
    if ncols == 0:
        return []
    if not rows:
        return [[Q(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    ns = _to_dm(rows, ncols).nullspace()
    return [[_from_qq(x) for x in row] for row in ns.to_Matrix().tolist()] if ns.shape[0] else []


def rref(rows: Sequence[Sequence[Q]], ncols: int):
    """Reduced row echelon form and pivot columns."""
    if not rows:
        return [], ()
    r, pivots = _to_dm(rows, ncols).rref()
    out = [[_from_qq(x) for x in row] for row in r.to_Matrix().tolist()]
    return out[: len(pivots)], tuple(pivots)


def column_basis(vectors: Sequence[Sequence[Q]], dim: int) -> List[List[Q]]:
    """A basis (echelon-reduced) of the span of the given vectors in Q^dim."""
    if not vectors:
        return []
    red, _ = rref(vectors, dim)
    return red


def solve_in_span(basis: Sequence[Sequence[Q]], v: Sequence[Q]) -> List[Q] | None:
    """Coefficients c with sum c_k basis[k] = v, or None if v is not in the span."""
    dim = len(v)
    k = len(basis)
    if k == 0:
        return [] if all(x == 0 for x in v) else None
    # Columns are basis vectors; augment with v.
    rows = [[basis[j][r] for j in range(k)] + [v[r]] for r in range(dim)]
    red, piv = rref(rows, k + 1)
    if k in piv:
        return None
    sol = [Q(0)] * k
    for row, p in zip(red, piv):
        sol[p] = row[k]
    return sol


def matvec(m: Matrix, v: Sequence[Q]) -> List[Q]:
    return [sum((a * b for a, b in zip(row, v)), Q(0)) for row in m]
