"""Exact integer/rational linear algebra.

Matrices are plain lists of rows of Python ``int`` so entries never overflow;
walk-matrix entries grow roughly like ``k**n``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

import numpy as np

from .graph import Graph

IntegerMatrix = list[list[int]]


def as_integer_matrix(m) -> IntegerMatrix:
    if isinstance(m, np.ndarray):
        if m.ndim != 2:
            raise ValueError("expected a 2-d matrix")
        return [[int(x) for x in row] for row in m.tolist()]
    return [[int(x) for x in row] for row in m]


def integer_rank(m) -> int:
    """Rank over the rationals by fraction-free (Bareiss) elimination."""
    rows = as_integer_matrix(m)
    if not rows or not rows[0]:
        return 0
    # eliminate along the shorter dimension
    if len(rows) > len(rows[0]):
        rows = [list(col) for col in zip(*rows)]
    nrows, ncols = len(rows), len(rows[0])
    rank, prev = 0, 1
    for c in range(ncols):
        if rank == nrows:
            break
        piv = next((i for i in range(rank, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        if piv != rank:
            rows[piv], rows[rank] = rows[rank], rows[piv]
        prow = rows[rank]
        p = prow[c]
        for i in range(rank + 1, nrows):
            row = rows[i]
            f = row[c]
            row[c] = 0
            if f:
                for j in range(c + 1, ncols):
                    row[j] = (p * row[j] - f * prow[j]) // prev
            elif p != prev:
                for j in range(c + 1, ncols):
                    row[j] = (p * row[j]) // prev
        prev = p
        rank += 1
    return rank


def _adjacency_lists(g: Graph) -> list[list[int]]:
    return [[int(x) for x in np.flatnonzero(row)] for row in g.adjacency]


def walk_matrix(g: Graph) -> IntegerMatrix:
    """n x n matrix whose columns are j, Aj, ..., A^(n-1) j."""
    if g.n < 1:
        raise ValueError("walk matrix of the empty graph is undefined")
    nbrs = _adjacency_lists(g)
    cols = [[1] * g.n]
    for _ in range(g.n - 1):
        v = cols[-1]
        cols.append([sum(v[y] for y in nb) for nb in nbrs])
    return [list(r) for r in zip(*cols)]


def _matmul(a: IntegerMatrix, b: IntegerMatrix) -> IntegerMatrix:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def _sym_vec(m: IntegerMatrix) -> list[int]:
    return [m[i][j] for i in range(len(m)) for j in range(i, len(m))]


def minimal_polynomial_degree_of(m, symmetric: bool | None = None) -> int:
    """Degree of the minimal polynomial of a square integer matrix.

    All powers I, M, ..., M^n are vectorised and stacked; the rank of that
    stack is the first d at which M^d falls into the span of lower powers.
    For symmetric input only the upper triangle is kept (powers stay symmetric).
    """
    mat = as_integer_matrix(m)
    n = len(mat)
    if n < 1:
        raise ValueError("empty matrix")
    if any(len(r) != n for r in mat):
        raise ValueError("matrix must be square")
    if symmetric is None:
        symmetric = all(mat[i][j] == mat[j][i] for i in range(n) for j in range(i))
    vec = _sym_vec if symmetric else (lambda x: [e for r in x for e in r])
    power = [[int(i == j) for j in range(n)] for i in range(n)]
    stack = [vec(power)]
    for _ in range(n):
        power = _matmul(power, mat)
        stack.append(vec(power))
    return integer_rank(stack)


def minimal_polynomial_degree(g: Graph) -> int:
    """Number of distinct adjacency eigenvalues, computed exactly."""
    if g.n < 1:
        raise ValueError("empty graph")
    return minimal_polynomial_degree_of(g.adjacency, symmetric=True)


def _normalize(row: list[int]) -> list[int]:
    c = 0
    for x in row:
        c = gcd(c, x)
    if c > 1:
        row = [x // c for x in row]
    return row


def span_membership(target, basis: Sequence) -> tuple[Fraction, ...] | None:
    """Exact coefficients c with ``target == sum(c_i * basis_i)``, or ``None``.

    Entry equations are scanned in order and kept while they raise the rank of
    the coefficient rows; once the kept equations span every equation's
    coefficient row, a solution of the kept system either satisfies all n*n
    equations (returned) or certifies the whole system inconsistent.
    """
    t = as_integer_matrix(target)
    bs = [as_integer_matrix(b) for b in basis]
    shape = (len(t), len(t[0]) if t else 0)
    for b in bs:
        if (len(b), len(b[0]) if b else 0) != shape:
            raise ValueError("shape mismatch between target and basis")
    k = len(bs)
    eqs = [
        ([b[i][j] for b in bs], t[i][j])
        for i in range(shape[0]) for j in range(shape[1])
    ]
    if k == 0:
        return () if all(rhs == 0 for _, rhs in eqs) else None

    # incremental fraction-free echelon of coefficient rows
    echelon: list[tuple[int, list[int]]] = []
    kept: list[tuple[list[int], int]] = []
    for coeffs, rhs in eqs:
        r = list(coeffs)
        for pc, prow in echelon:
            if r[pc]:
                f, p = r[pc], prow[pc]
                r = [p * x - f * y for x, y in zip(r, prow)]
        lead = next((c for c in range(k) if r[c]), None)
        if lead is None:
            continue
        echelon.append((lead, _normalize(r)))
        kept.append((coeffs, rhs))
        if len(kept) == k:
            break

    sol = _solve_rational([c for c, _ in kept], [r for _, r in kept], k)
    if sol is None:
        return None
    den = 1
    for x in sol:
        den = den * x.denominator // gcd(den, x.denominator)
    scaled = [int(x * den) for x in sol]
    for coeffs, rhs in eqs:
        if sum(c * s for c, s in zip(coeffs, scaled)) != rhs * den:
            return None
    return tuple(sol)


def _solve_rational(a: list[list[int]], b: list[int], k: int) -> list[Fraction] | None:
    """Solve a consistent-or-not system exactly; free variables set to zero."""
    m = [[Fraction(x) for x in row] + [Fraction(rhs)] for row, rhs in zip(a, b)]
    pivots = []
    r = 0
    for c in range(k):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    if any(row[k] != 0 for row in m[r:]):
        return None
    sol = [Fraction(0)] * k
    for i, c in enumerate(pivots):
        sol[c] = m[i][k]
    return sol
