"""Entanglement criteria built on frustration graphs: bipartite witnesses,
Bell-diagonal classification, the qutrit subspace cover, multipartite
criteria from stabilizers and distance-based estimates."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product

import numpy as np
from scipy.optimize import linprog

from ..bracket import beta_bracket
from ..decide import PERFECT, Decider
from ..errors import (BadDimension, BudgetExceeded, GraphMismatch, NonCommutingStabilizers,
                      NotDistribution)
from ..pauli import PauliString, anticommutes, frustration_graph
from ..stab import alpha_value, all_stable_sets, point_membership, stab_facets
from .states import signed_dense

MAX_SIGN_PATTERNS = 2 ** 20


def check_density(rho, dim=None, tol=1e-10):
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or (dim is not None and rho.shape[0] != dim):
        raise BadDimension(f"expected a {dim}x{dim} density matrix", shape=list(rho.shape))
    if np.max(np.abs(rho - rho.conj().T)) > tol or abs(np.trace(rho) - 1) > tol:
        raise BadDimension("matrix is not Hermitian with unit trace")
    if np.linalg.eigvalsh(rho)[0] < -tol:
        raise BadDimension("matrix is not positive semidefinite")
    return rho


def expectation(rho, op):
    return float(np.trace(rho @ op).real)


def _threshold(g, w, decider=None):
    """alpha(G, w) when G is certified, else the beta upper bound; with its source tag."""
    decider = decider or Decider()
    if decider.decide(g).status == PERFECT:
        return float(alpha_value(g, w)), "alpha"
    br = beta_bracket(g, w)
    return br.upper, br.upper_src


# bipartite -------------------------------------------------------------------------


@dataclass
class WitnessReport:
    point: list
    value: float
    threshold: float
    threshold_src: str
    verdict: str
    violated: list = field(default_factory=list)

    def to_json(self):
        return {"point": self.point, "value": self.value, "threshold": self.threshold,
                "threshold_src": self.threshold_src, "verdict": self.verdict, "violated": self.violated}


def nonlinear_witness(rho, S, S2, w=None, decider=None, expectations=None):
    """Sum w_i |<S_i (x) S'_i>| against beta(G, w); certified graphs also get facet checks.

    Pass measured ``expectations`` of S_i (x) S'_i instead of ``rho`` to skip the state.
    """
    S = [PauliString.parse(s) if isinstance(s, str) else s for s in S]
    S2 = [PauliString.parse(s) if isinstance(s, str) else s for s in S2]
    g = frustration_graph(S)
    if len(S) != len(S2) or frustration_graph(S2) != g:
        raise GraphMismatch("string sets have different frustration graphs")
    if expectations is None:
        rho = check_density(rho, 2 ** (S[0].length + S2[0].length))
        expectations = [expectation(rho, np.kron(signed_dense(str(a)), signed_dense(str(b)))) for a, b in zip(S, S2)]
    p = [abs(float(e)) for e in expectations]
    w = [1] * g.n if w is None else list(w)
    value = float(np.dot(w, p))
    decider = decider or Decider()
    threshold, src = _threshold(g, w, decider)
    violated = []
    if src == "alpha" and g.n <= 10:
        poly = stab_facets(g)
        for f in poly.facets:
            s = float(f.slack(p))
            if s < -1e-9:
                violated.append({"normal": list(f.normal), "rhs": f.rhs, "slack": s})
    entangled = value > threshold + 1e-9 or bool(violated)
    return WitnessReport(p, value, threshold, src, "entangled" if entangled else "undecided", violated)


def bell_diagonal_classify(p):
    """Entangled iff max p_i > 1/2, and equivalently iff the XX/YY/ZZ point leaves STAB(K3)."""
    p = np.asarray(p, dtype=float)
    if p.shape != (4,) or np.any(p < -1e-12) or abs(p.sum() - 1) > 1e-9:
        raise NotDistribution("need four nonnegative numbers summing to 1", p=p.tolist())
    point = [float(abs(p[0] + p[2] - p[1] - p[3])), float(abs(p[1] + p[2] - p[0] - p[3])),
             float(abs(p[0] + p[1] - p[2] - p[3]))]
    algebraic = bool(p.max() > 0.5 + 1e-12)
    geometric = sum(point) > 1 + 1e-12
    inside = point_membership(stab_facets(frustration_graph([PauliString.parse(c) for c in "XYZ"])),
                              [round(x, 12) for x in point])["inside"]
    return {"entangled": algebraic, "point": point, "inside": inside, "agree": bool(algebraic == geometric)}


def qutrit_subspace_ops(i):
    """X, Y, Z acting on the two levels of C^3 other than ``i``."""
    a, b = [k for k in range(3) if k != i]
    x = np.zeros((3, 3), dtype=complex)
    x[a, b] = x[b, a] = 1
    y = np.zeros((3, 3), dtype=complex)
    y[a, b], y[b, a] = -1j, 1j
    z = np.zeros((3, 3), dtype=complex)
    z[a, a], z[b, b] = 1, -1
    return x, y, z


def qutrit_cover_witness(rho):
    rho = check_density(rho, 9)
    lhs = 0.0
    for i, j in product(range(3), repeat=2):
        for a, b in zip(qutrit_subspace_ops(i), qutrit_subspace_ops(j)):
            lhs += abs(expectation(rho, np.kron(a, b)))
    return {"lhs": lhs, "bound": 4, "verdict": "entangled" if lhs > 4 + 1e-9 else "undecided"}


# multipartite -------------------------------------------------------------------------


def _parse_signed(text):
    sign = -1 if text.startswith("-") else 1
    return sign, PauliString.parse(text.lstrip("+-"))


def _restrict(p, qubits):
    s = "".join(str(p)[q] for q in qubits)
    return PauliString.parse(s)


def bipartitions(parties):
    """Each unordered split once: side A smaller, or equal size and containing party 0."""
    k = len(parties)
    out = []
    for size in range(1, k // 2 + 1):
        for side in combinations(range(k), size):
            if 2 * size == k and 0 not in side:
                continue
            out.append(list(side))
    return out


@dataclass
class MultipartiteCriterion:
    stabilizers: list
    weights: list
    parties: list
    bipartitions: list
    graphs: list
    thresholds: list
    sources: list

    @property
    def biseparable_bound(self):
        return max(self.thresholds)

    @property
    def fully_separable_bound(self):
        return min(self.thresholds)

    @property
    def max_value(self):
        return float(sum(self.weights))

    def operators(self):
        return [signed_dense(s) for s in self.stabilizers]

    def point(self, rho=None, expectations=None):
        if expectations is None:
            ops = self.operators()
            rho = check_density(rho, ops[0].shape[0])
            expectations = [expectation(rho, o) for o in ops]
        return np.abs(np.asarray(expectations, dtype=float))

    def evaluate(self, rho=None, expectations=None):
        p = self.point(rho, expectations)
        value = float(np.dot(self.weights, p))
        return {"value": value, "biseparable_bound": self.biseparable_bound,
                "fully_separable_bound": self.fully_separable_bound,
                "genuinely_entangled": value > self.biseparable_bound + 1e-9,
                "not_fully_separable": value > self.fully_separable_bound + 1e-9}

    def to_json(self):
        return {"stabilizers": self.stabilizers, "weights": self.weights, "parties": self.parties,
                "bipartitions": [{"side": b, "edges": g.edges(), "threshold": t, "source": s}
                                 for b, g, t, s in zip(self.bipartitions, self.graphs, self.thresholds, self.sources)],
                "biseparable_bound": self.biseparable_bound,
                "fully_separable_bound": self.fully_separable_bound, "max_value": self.max_value}


def multipartite_criterion(stabilizers, w=None, parties=None, decider=None):
    """Thresholds beta(G_bp, w) for every bipartition of the parties.

    ``parties`` groups qubits (default: one qubit per party).
    """
    parsed = [_parse_signed(s) for s in stabilizers]
    strings = [p for _, p in parsed]
    length = strings[0].length
    for a, b in combinations(strings, 2):
        if anticommutes(a, b):
            raise NonCommutingStabilizers(f"{a} and {b} anticommute", pair=[str(a), str(b)])
    parties = [[q] for q in range(length)] if parties is None else [list(p) for p in parties]
    if len(parties) > 5:
        raise BudgetExceeded("at most 5 parties", parties=len(parties))
    w = [1] * len(strings) if w is None else list(w)
    decider = decider or Decider()
    bps, graphs, thresholds, sources = [], [], [], []
    for side in bipartitions(parties):
        qubits = sorted(q for k in side for q in parties[k])
        g = frustration_graph([_restrict(p, qubits) for p in strings])
        t, src = _threshold(g, w, decider)
        bps.append(side)
        graphs.append(g)
        thresholds.append(t)
        sources.append(src)
    return MultipartiteCriterion(list(stabilizers), w, parties, bps, graphs, thresholds, sources)


# estimates ------------------------------------------------------------------------------


def lambda_gap_max(ops):
    """max over signs s of lambda_max - lambda_min of sum s_i O_i (s_1 = +1 by symmetry)."""
    k = len(ops)
    if 2 ** (k - 1) > MAX_SIGN_PATTERNS:
        raise BudgetExceeded("too many sign patterns", count=2 ** (k - 1))
    best = 0.0
    gaps = []
    for signs in product([1, -1], repeat=k - 1):
        h = ops[0] + sum(s * o for s, o in zip(signs, ops[1:]))
        ev = np.linalg.eigvalsh(h)
        gaps.append(ev[-1] - ev[0])
        best = max(best, ev[-1] - ev[0])
    return float(best), [float(x) for x in gaps]


def _hull_vertices(crit):
    verts = set()
    for g, src in zip(crit.graphs, crit.sources):
        if src != "alpha":
            raise BudgetExceeded("distance estimates need certified bipartition graphs", source=src)
        for m in all_stable_sets(g):
            verts.add(tuple(m >> i & 1 for i in range(g.n)))
    return np.array(sorted(verts), dtype=float)


def taxicab_distance(p, V):
    """min_lambda sum_i max(p_i - (V^T lambda)_i, 0) over the simplex, as an LP."""
    m, n = V.shape
    # variables: lambda (m), t (n); minimize sum t, t >= p - V^T lambda, t >= 0
    c = np.concatenate([np.zeros(m), np.ones(n)])
    A_ub = np.hstack([-V.T, -np.eye(n)])
    b_ub = -np.asarray(p)
    A_eq = np.concatenate([np.ones(m), np.zeros(n)])[None, :]
    res = linprog(c, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=[1], bounds=[(0, None)] * (m + n), method="highs")
    return float(res.fun)


def _project_simplex(v):
    u = np.sort(v)[::-1]
    css = np.cumsum(u)
    k = np.nonzero(u * np.arange(1, len(u) + 1) > css - 1)[0][-1]
    return np.maximum(v - (css[k] - 1) / (k + 1), 0)


def euclidean_distance(p, V, tol=1e-9, max_iter=100_000):
    """min over the simplex of ||(p - V^T lambda)_+||, projected gradient."""
    p = np.asarray(p, dtype=float)
    m = len(V)
    lam = np.ones(m) / m
    L = 2 * np.linalg.norm(V, 2) ** 2
    prev = np.inf
    f = np.inf
    for _ in range(max_iter):
        r = np.maximum(p - V.T @ lam, 0)
        f = float(r @ r)
        if prev - f < tol * tol and f <= prev:
            break
        prev = f
        lam = _project_simplex(lam + 2 * (V @ r) / L)
    return float(np.sqrt(max(f, 0.0)))


def entanglement_estimates(crit, rho=None, expectations=None):
    """Lower bounds on trace-distance and Hilbert-Schmidt entanglement from distances to the hull."""
    p = crit.point(rho, expectations)
    V = _hull_vertices(crit)
    ops = crit.operators()
    d_t = taxicab_distance(p, V)
    gap, _ = lambda_gap_max(ops)
    d_e = euclidean_distance(p, V)
    gram = np.array([[np.trace(a @ b).real for b in ops] for a in ops])
    hs_norm = float(np.sum(gram ** 2)) ** 0.25  # tr[(sum O_i (x) O_i)^2]
    return {"d_T": d_t, "lambda_gap": gap, "E_T_lower": d_t / gap, "d_HS": d_e, "E_HS_lower": d_e / hs_norm}
