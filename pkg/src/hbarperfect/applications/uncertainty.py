"""Variance lower bounds for anticommutation-structured observables as an exact LP."""

from __future__ import annotations

from fractions import Fraction

from ..decide import PERFECT, Decider
from ..errors import DomainError, Infeasible
from ..lp import linprog_exact
from ..stab import stab_facets


def _frac(v):
    return v if isinstance(v, Fraction) else Fraction(str(v)) if isinstance(v, float) else Fraction(v)


def uncertainty_lp(g, i, caps, decider=None):
    """min x_i over x = 1 - y with y in STAB(G), x_j <= caps[j] (None = no cap).

    x_j stands for the variance 1 - <S_j>^2.  The value is a true bound only
    when G is certified hbar-perfect; ``certified`` records that.
    """
    n = g.n
    if not 0 <= i < n:
        raise DomainError("target out of range", i=i, n=n)
    caps = [None if c is None else _frac(c) for c in caps]
    if len(caps) != n:
        raise DomainError("caps length mismatch", got=len(caps), n=n)
    A, b = [], []
    for j, c in enumerate(caps):
        if j == i or c is None:
            continue
        if not 0 <= c <= 1:
            raise DomainError("caps must lie in [0, 1]", j=j, cap=str(c))
        A.append([int(k == j) for k in range(n)])
        b.append(c)
    for f in stab_facets(g).facets:
        # a.(1 - x) <= rhs  <=>  -a.x <= rhs - sum(a)
        A.append([-a for a in f.normal])
        b.append(f.rhs - sum(f.normal))
    c = [int(k == i) for k in range(n)]
    res = linprog_exact(c, A, b, maximize=False)
    if res.status != "optimal":
        raise Infeasible("caps are incompatible with the graph", caps=[None if x is None else str(x) for x in caps])
    certified = (decider or Decider()).decide(g).status == PERFECT
    return {"min_variance": res.value, "x": res.x, "certified": certified}
