"""Exact rational linear programming: dense two-phase tableau simplex, Bland's rule."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Fraction | None
    x: list | None


def _pivot(tab, basis, r, c):
    row = tab[r]
    inv = 1 / row[c]
    if inv != 1:
        tab[r] = row = [v * inv for v in row]
    for k in range(len(tab)):
        if k != r:
            f = tab[k][c]
            if f:
                tab[k] = [a - f * b if b else a for a, b in zip(tab[k], row)]
    basis[r] = c


def _simplex(tab, basis, obj_row, allowed):
    """Maximize on ``tab`` (last row = reduced costs as ``-c``), Bland's rule."""
    m = len(tab) - 1
    while True:
        cost = tab[obj_row]
        enter = next((j for j in allowed if cost[j] < 0), None)
        if enter is None:
            return "optimal"
        best = None
        leave = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            return "unbounded"
        _pivot(tab, basis, leave, enter)


def linprog_exact(c, A_ub=(), b_ub=(), A_eq=(), b_eq=(), maximize=True):
    """Optimize ``c.x`` subject to ``A_ub x <= b_ub``, ``A_eq x = b_eq``, ``x >= 0``.

    All data are converted to ``Fraction``; the result is exact.
    """
    n = len(c)
    rows = []
    for a, b in zip(A_ub, b_ub):
        rows.append(([Fraction(v) for v in a], "<=", Fraction(b)))
    for a, b in zip(A_eq, b_eq):
        rows.append(([Fraction(v) for v in a], "=", Fraction(b)))
    for a, _, _ in rows:
        if len(a) != n:
            raise ValueError("constraint width differs from objective length")
    # normalize to rhs >= 0
    norm = []
    for a, sense, b in rows:
        if b < 0:
            a = [-v for v in a]
            b = -b
            sense = {"<=": ">=", ">=": "<=", "=": "="}[sense]
        norm.append((a, sense, b))
    m = len(norm)
    nslack = sum(1 for _, s, _ in norm if s != "=")
    nart = sum(1 for _, s, _ in norm if s != "<=")
    width = n + nslack + nart
    tab = []
    basis = []
    si = n
    ai = n + nslack
    art_cols = []
    for a, sense, b in norm:
        row = a + [Fraction(0)] * (nslack + nart) + [b]
        if sense == "<=":
            row[si] = Fraction(1)
            basis.append(si)
            si += 1
        else:
            if sense == ">=":
                row[si] = Fraction(-1)
                si += 1
            row[ai] = Fraction(1)
            basis.append(ai)
            art_cols.append(ai)
            ai += 1
        tab.append(row)
    sign = 1 if maximize else -1
    if art_cols:
        # phase 1: maximize -sum(artificials)
        obj = [Fraction(0)] * (width + 1)
        for j in art_cols:
            obj[j] = Fraction(1)
        for i, bcol in enumerate(basis):
            if bcol in art_cols:
                obj = [o - t for o, t in zip(obj, tab[i])]
        tab.append(obj)
        _simplex(tab, basis, m, range(width))
        if tab[m][-1] != 0:
            return LPResult("infeasible", None, None)
        tab.pop()
        # drive remaining artificials out of the basis
        art = set(art_cols)
        keep = []
        for i in range(m):
            if basis[i] in art:
                col = next((j for j in range(n + nslack) if tab[i][j] != 0), None)
                if col is None:
                    continue  # redundant row
                _pivot(tab, basis, i, col)
            keep.append(i)
        tab = [tab[i] for i in keep]
        basis = [basis[i] for i in keep]
        m = len(tab)
        tab = [row[:n + nslack] + [row[-1]] for row in tab]
        width = n + nslack
    obj = [Fraction(-sign) * Fraction(v) for v in c] + [Fraction(0)] * (width - n) + [Fraction(0)]
    for i, bcol in enumerate(basis):
        if obj[bcol]:
            f = obj[bcol]
            obj = [o - f * t for o, t in zip(obj, tab[i])]
    tab.append(obj)
    status = _simplex(tab, basis, m, range(width))
    if status == "unbounded":
        return LPResult("unbounded", None, None)
    x = [Fraction(0)] * width
    for i, bcol in enumerate(basis):
        x[bcol] = tab[i][-1]
    return LPResult("optimal", sign * tab[m][-1], x[:n])
