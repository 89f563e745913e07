"""Exact combinatorics of the stable set polytope STAB(G).

Vertices are incidence vectors of independent sets.  Facets come from a
double description run in exact integer arithmetic: the inequalities
``a.x <= b`` valid on every vertex form a pointed cone in ``(b, a)`` space
whose extreme rays are exactly the facets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import gcd

from .errors import DimMismatch, NegativeWeight, SizeOverflow
from .graph import Graph, complement, induced_subgraph, mask_to_list
from .lp import linprog_exact


def as_weights(w, n):
    if w is None:
        return [Fraction(1)] * n
    w = [x if isinstance(x, Fraction) else Fraction(str(x)) if isinstance(x, float) else Fraction(x) for x in w]
    if len(w) != n:
        raise DimMismatch(f"weight vector has length {len(w)}, graph has {n} vertices", got=len(w), n=n)
    for i, x in enumerate(w):
        if x < 0:
            raise NegativeWeight(f"w[{i}] = {x} < 0", index=i)
    return w


# stable sets -----------------------------------------------------------------


def maximal_stable_sets(g):
    """Maximal independent sets as bitmasks (Bron-Kerbosch with pivoting on the complement)."""
    full = g.full
    nonadj = [full & ~row & ~(1 << v) for v, row in enumerate(g.adj)]
    out = []

    def bk(r, p, x):
        if not p and not x:
            out.append(r)
            return
        px = p | x
        # pivot maximizing |P ∩ N(u)| in the complement
        best, pivot = -1, 0
        m = px
        while m:
            u = (m & -m).bit_length() - 1
            c = bin(p & nonadj[u]).count("1")
            if c > best:
                best, pivot = c, u
            m &= m - 1
        cand = p & ~nonadj[pivot]
        while cand:
            v = (cand & -cand).bit_length() - 1
            bit = 1 << v
            bk(r | bit, p & nonadj[v], x & nonadj[v])
            p &= ~bit
            x |= bit
            cand &= cand - 1

    bk(0, full, 0)
    return sorted(out)


def all_stable_sets(g):
    """Every independent set (including the empty set) as a bitmask, sorted."""
    if g.n > 24:
        raise SizeOverflow("n > 24", n=g.n)
    out = []

    def rec(v, mask):
        if v == g.n:
            out.append(mask)
            return
        rec(v + 1, mask)
        if not g.adj[v] & mask:
            rec(v + 1, mask | (1 << v))

    rec(0, 0)
    return sorted(out)


@dataclass(frozen=True)
class StableSetFamily:
    maximal: tuple
    all: tuple | None = None


def enumerate_stable_sets(g, include_all=False):
    return StableSetFamily(tuple(maximal_stable_sets(g)), tuple(all_stable_sets(g)) if include_all else None)


def alpha(g, w=None):
    """Exact weighted independence number and one maximizing vertex list."""
    w = as_weights(w, g.n)
    best, arg = Fraction(0), 0
    for mask in maximal_stable_sets(g):
        val = sum((w[v] for v in mask_to_list(mask)), Fraction(0))
        if val > best:
            best, arg = val, mask
    if best == 0:
        arg = 0
    return best, mask_to_list(arg)


def alpha_value(g, w=None):
    return alpha(g, w)[0]


# facets ------------------------------------------------------------------------


@dataclass(frozen=True)
class Facet:
    """The inequality ``normal . x <= rhs``."""

    normal: tuple
    rhs: int

    def support(self):
        return [i for i, a in enumerate(self.normal) if a]

    def is_nonnegativity(self):
        return self.rhs == 0 and sum(1 for a in self.normal if a) == 1 and min(self.normal) == -1

    def slack(self, x):
        return Fraction(self.rhs) - sum(Fraction(a) * Fraction(v) for a, v in zip(self.normal, x))


@dataclass(frozen=True)
class StabPolytope:
    graph: Graph
    vertices: tuple
    facets: tuple = field(default=())

    def vertex_vectors(self):
        return [[m >> i & 1 for i in range(self.graph.n)] for m in self.vertices]


def _normalize(vec):
    g = 0
    for v in vec:
        g = gcd(g, v)
    if g > 1:
        vec = [v // g for v in vec]
    return vec


def _double_description(n, points):
    """Extreme rays of {(b, a): b - a.v >= 0 for v in points}; points are bitmasks.

    ``points`` must contain 0 and every singleton so that the start cone is simplicial.
    """
    d = n + 1
    # constraint k is the row (1, -v_k); the initial n+1 constraints are 0, e_1..e_n
    init = [0] + [1 << i for i in range(n)]
    rest = [p for p in points if p not in set(init)]
    # rays of the start cone: (1, 1...1) tight on e_i, and (0, -e_i) tight on 0 and e_j, j != i
    rays = [[1] + [1] * n]
    tight = [sum(1 << (i + 1) for i in range(n))]
    for i in range(n):
        v = [0] * d
        v[i + 1] = -1
        rays.append(v)
        tight.append(((1 << d) - 1) & ~(1 << (i + 1)))
    for k, p in enumerate(rest, start=d):
        pv = [i + 1 for i in range(n) if p >> i & 1]
        vals = [r[0] - sum(r[i] for i in pv) for r in rays]
        pos = [i for i, s in enumerate(vals) if s > 0]
        neg = [i for i, s in enumerate(vals) if s < 0]
        zero = [i for i, s in enumerate(vals) if s == 0]
        if not neg:
            for i in zero:
                tight[i] |= 1 << k
            continue
        new_rays, new_tight = [], []
        for i in pos:
            for j in neg:
                common = tight[i] & tight[j]
                if bin(common).count("1") < d - 2:
                    continue
                if any((tight[r] & common) == common for r in range(len(rays)) if r != i and r != j):
                    continue
                si, sj = vals[i], -vals[j]
                vec = _normalize([sj * a + si * b for a, b in zip(rays[i], rays[j])])
                new_rays.append(vec)
                new_tight.append(common | (1 << k))
        keep = pos + zero
        for i in zero:
            tight[i] |= 1 << k
        rays = [rays[i] for i in keep] + new_rays
        tight = [tight[i] for i in keep] + new_tight
    return rays


@lru_cache(maxsize=4096)
def _facets_cached(g):
    pts = all_stable_sets(g)
    rays = _double_description(g.n, pts)
    facets = sorted({(tuple(r[1:]), r[0]) for r in rays}, key=lambda t: (t[1] == 0 and min(t[0]) < 0, t))
    return tuple(Facet(a, b) for a, b in facets), tuple(pts)


def stab_facets(g):
    if g.n > 10:
        raise SizeOverflow("facet enumeration limited to n <= 10", n=g.n)
    facets, pts = _facets_cached(g)
    return StabPolytope(g, pts, facets)


# classification ------------------------------------------------------------------


def _is_chordless_cycle(g, vertices):
    sub = induced_subgraph(g, vertices)
    return all(sub.degree(v) == 2 for v in range(sub.n)) and sub.is_connected()


def classify_facet(g, f):
    if f.is_nonnegativity():
        return ("nonnegativity",)
    if min(f.normal) < 0 or max(f.normal) != 1:
        return ("other",)
    sup = f.support()
    mask = sum(1 << i for i in sup)
    if f.rhs == 1 and g.is_clique(mask):
        return ("clique",)
    k = len(sup)
    if k >= 5 and k % 2 == 1 and f.rhs == (k - 1) // 2 and _is_chordless_cycle(g, sup):
        return ("odd_hole", (k - 1) // 2)
    return ("other",)


def class_tag(cls):
    return cls[0] if cls[0] != "odd_hole" else f"odd_hole({cls[1]})"


def classify_facets(p):
    classes = [classify_facet(p.graph, f) for f in p.facets]
    return classes, {"is_h_perfect": all(c[0] != "other" for c in classes)}


def is_h_perfect(g):
    return classify_facets(stab_facets(g))[1]["is_h_perfect"]


def _has_odd_hole(g):
    for k in range(5, g.n + 1, 2):
        for sub in combinations(range(g.n), k):
            mask = sum(1 << v for v in sub)
            if all(bin(g.adj[v] & mask).count("1") == 2 for v in sub) and _is_chordless_cycle(g, sub):
                return True
    return False


def is_perfect(g):
    if g.n > 10:
        raise SizeOverflow("perfectness scan limited to n <= 10", n=g.n)
    return not _has_odd_hole(g) and not _has_odd_hole(complement(g))


# LPs and membership ---------------------------------------------------------------


def fractional_packing(g):
    """alpha*(G): max sum w subject to clique sums <= 1 over maximal cliques, exact."""
    if g.n > 12:
        raise SizeOverflow("fractional packing limited to n <= 12", n=g.n)
    cliques = maximal_stable_sets(complement(g))
    A = [[m >> i & 1 for i in range(g.n)] for m in cliques]
    res = linprog_exact([1] * g.n, A, [1] * len(A))
    return res.value


def point_membership(p, x):
    if len(x) != p.graph.n:
        raise DimMismatch(f"point has length {len(x)}, graph has {p.graph.n} vertices", got=len(x), n=p.graph.n)
    x = [v if isinstance(v, Fraction) else Fraction(str(v)) if isinstance(v, float) else Fraction(v) for v in x]
    violated = []
    for f in p.facets:
        s = f.slack(x)
        if s < 0:
            violated.append((f, s))
    return {"inside": not violated, "violated": violated}


def hull_contains(g, x):
    """Independent oracle: exact LP feasibility of ``x`` as a convex combination of stable sets."""
    pts = all_stable_sets(g)
    cols = [[m >> i & 1 for m in pts] for i in range(g.n)]
    A_eq = cols + [[1] * len(pts)]
    b_eq = list(x) + [1]
    res = linprog_exact([0] * len(pts), A_eq=A_eq, b_eq=b_eq)
    return res.status == "optimal"


def facet_json(g, f):
    return {"normal": list(f.normal), "rhs": f.rhs, "class": class_tag(classify_facet(g, f))}
