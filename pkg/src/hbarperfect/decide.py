"""Deciding hbar-perfectness: structural reductions first, per-facet numerics last.

A verdict carries a certificate, an ordered list of steps.  Steps that
reduce to smaller graphs hold the sub-verdicts in ``sub`` so the whole chain
can be replayed with graph predicates alone (see ``verify_certificate``).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import numpy as np

from .bracket import Budget, beta_bracket
from .errors import HbarError, IoError
from .fixtures import g15
from .graph import Graph, anticycle, complement, encode_graph6, induced_subgraph, mask_to_list, read_graph6_file
from .pauli import Realization, realize_min
from .search import detect_twins, induced_subgraph_search
from .seesaw import objective, operator_stack, seesaw
from .stab import alpha_value, classify_facet, classify_facets, is_perfect, stab_facets

PERFECT, IMPERFECT, UNDETERMINED = "Perfect", "Imperfect", "Undetermined"
DEFAULT_TOL = 1e-5


@dataclass
class HbarVerdict:
    status: str
    certificate: list = field(default_factory=list)
    witness: dict | None = None
    gap: float | None = None

    def to_json(self):
        out = {"status": self.status, "certificate": self.certificate}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.gap is not None:
            out["gap"] = self.gap
        return out


def _fmt(x):
    return str(x) if isinstance(x, Fraction) and x.denominator != 1 else int(x) if isinstance(x, Fraction) else x


# forbidden subgraph witnesses --------------------------------------------------

_witness_cache = {}


def forbidden_witness(pattern, restarts=50, seed=None):
    """Facet 1 on ``pattern``: alpha and a see-saw value beating it (cached per pattern)."""
    key = (encode_graph6(pattern), restarts)
    if key not in _witness_cache:
        r = realize_min(pattern)
        kw = {} if seed is None else {"seed": seed}
        res = seesaw(r, [1] * pattern.n, restarts=restarts, **kw)
        _witness_cache[key] = (alpha_value(pattern), res)
    return _witness_cache[key]


def default_forbidden():
    return [("antiC7", anticycle(7)), ("antiC9", anticycle(9))]


# structural steps ---------------------------------------------------------------


class Decider:
    """Holds configuration and a memo of verdicts keyed by graph6."""

    def __init__(self, tol=DEFAULT_TOL, budget=None, forbidden=None, numeric=True):
        self.tol = tol
        self.budget = budget or Budget()
        self.forbidden = default_forbidden() + list(forbidden or [])
        self.numeric = numeric
        self.memo = {}
        self._g15 = None

    def decide(self, g, depth=0):
        key = encode_graph6(g)
        if key not in self.memo:
            self.memo[key] = self._decide(g, depth)
        return self.memo[key]

    def _decide(self, g, depth):
        v = self.forbidden_step(g)
        if v is not None:
            return v
        if g.n <= 10:
            if is_perfect(g):
                return HbarVerdict(PERFECT, [{"step": "perfect"}])
            if classify_facets(stab_facets(g))[1]["is_h_perfect"]:
                return HbarVerdict(PERFECT, [{"step": "h_perfect"}])
        tw = detect_twins(g)
        if tw is not None:
            a, b, kind = tw
            sub = self.decide(induced_subgraph(g, [x for x in range(g.n) if x != b]), depth + 1)
            return self._inherit(sub, {"step": "twin_reduction", "v": a, "v2": b, "kind": kind})
        for kind, masks in (("disjoint", g.components()), ("join", complement(g).components())):
            if len(masks) > 1:
                return self._combine(g, [mask_to_list(m) for m in masks], kind, depth)
        if g.n <= 15:
            emb = self._g15_embedding(g)
            if emb is not None:
                return HbarVerdict(PERFECT, [{"step": "g15_subgraph", "embedding": emb}])
        if g.n > 10:
            return HbarVerdict(UNDETERMINED, [{"step": "too_large", "n": g.n}])
        return self.facet_loop(g, depth)

    def forbidden_step(self, g):
        for name, pat in self.forbidden:
            if pat.n > g.n:
                continue
            emb = induced_subgraph_search(g, pat)
            if emb is not None:
                a, res = forbidden_witness(pat)
                w = [0] * g.n
                for v in emb:
                    w[v] = 1
                witness = {"facet": w, "alpha": _fmt(a), "lower": res.value, "pattern": name,
                           "realization": realize_min(pat).labels(), "weights": [1] * pat.n,
                           "state": _state_json(res.state)}
                return HbarVerdict(IMPERFECT, [{"step": "forbidden", "pattern": name, "embedding": emb}], witness)
        return None

    def _g15_embedding(self, g):
        if self._g15 is None:
            self._g15 = g15()
        return induced_subgraph_search(self._g15, g)

    def _inherit(self, sub, step):
        step = dict(step, sub=sub.to_json())
        return HbarVerdict(sub.status, [step], sub.witness, sub.gap)

    def _combine(self, g, parts, kind, depth):
        subs = [self.decide(induced_subgraph(g, p), depth + 1) for p in parts]
        step = {"step": "join_split", "kind": kind, "parts": parts, "sub": [s.to_json() for s in subs]}
        for p, s in zip(parts, subs):
            if s.status == IMPERFECT:
                w = [0] * g.n
                for local, v in enumerate(p):
                    w[v] = s.witness["facet"][local]
                return HbarVerdict(IMPERFECT, [step], dict(s.witness, facet=w))
        if all(s.status == PERFECT for s in subs):
            return HbarVerdict(PERFECT, [step])
        return HbarVerdict(UNDETERMINED, [step], gap=max(s.gap or 0 for s in subs))

    def facet_loop(self, g, depth=0):
        """Every facet must have alpha = beta; smaller supports recurse, full supports go numeric."""
        poly = stab_facets(g)
        steps = []
        gap = 0.0
        undetermined = False
        for f in poly.facets:
            cls = classify_facet(g, f)
            if cls[0] in ("nonnegativity", "clique", "odd_hole"):
                continue
            sup = f.support()
            if len(sup) < g.n and depth < g.n:
                sub = self.decide(induced_subgraph(g, sup), depth + 1)
                steps.append({"step": "facet_zero_recursion", "facet": list(f.normal), "rhs": f.rhs,
                              "support": sup, "sub": sub.to_json()})
                if sub.status == IMPERFECT:
                    w = [0] * g.n
                    for local, v in enumerate(sup):
                        w[v] = sub.witness["facet"][local]
                    return HbarVerdict(IMPERFECT, steps, dict(sub.witness, facet=w))
                if sub.status == UNDETERMINED:
                    undetermined = True
                    gap = max(gap, sub.gap or 0)
                continue
            if not self.numeric:
                steps.append({"step": "numeric_skipped", "facet": list(f.normal), "rhs": f.rhs})
                undetermined = True
                gap = float("inf")
                continue
            v = self.numeric_facet(g, f.normal, steps)
            if v is not None:
                return v
            if steps[-1]["status"] != "pass":
                undetermined = True
                gap = max(gap, steps[-1]["bracket"]["upper"] - steps[-1]["alpha"])
        if undetermined:
            return HbarVerdict(UNDETERMINED, steps, gap=gap)
        return HbarVerdict(PERFECT, steps)

    def numeric_facet(self, g, normal, steps):
        a = float(alpha_value(g, normal))
        br = beta_bracket(g, normal, self.budget)
        step = {"step": "numeric", "facet": list(normal), "alpha": a, "bracket": br.to_json(),
                "sdp": br.details.get("sdp", [])}
        if br.lower > a + self.tol:
            step["status"] = "violated"
            steps.append(step)
            witness = {"facet": list(normal), "alpha": a, "lower": br.lower,
                       "realization": br.details["realization"], "weights": list(normal),
                       "state": _state_json(br.details["state"])}
            return HbarVerdict(IMPERFECT, steps, witness)
        step["status"] = "pass" if br.upper < a + self.tol else "open"
        steps.append(step)
        return None


def structural_certificate(g, forbidden=None):
    """Verdict from structure alone; facets needing numerics leave it Undetermined."""
    return Decider(forbidden=forbidden, numeric=False).decide(g)


def numeric_facet_loop(g, tol=DEFAULT_TOL, budget=None):
    return Decider(tol=tol, budget=budget).facet_loop(g)


def decide(g, tol=DEFAULT_TOL, budget=None, forbidden=None):
    return Decider(tol=tol, budget=budget, forbidden=forbidden).decide(g)


# certificate replay --------------------------------------------------------------


def _state_json(psi):
    return [[float(z.real), float(z.imag)] for z in psi]


def replay_witness(witness):
    """Recompute sum w_i <S_i>^2 for the state stored in an Imperfect witness."""
    r = Realization.from_strings(witness["realization"])
    psi = np.array([complex(a, b) for a, b in witness["state"]])
    return objective(operator_stack(r), np.array(witness["weights"], dtype=float), psi / np.linalg.norm(psi))


def verify_certificate(g, cert):
    """Re-check the structural claims of a certificate (a verdict's ``to_json()``)."""
    for step in cert["certificate"]:
        kind = step["step"]
        if kind == "perfect" and not is_perfect(g):
            return False
        if kind == "h_perfect" and not classify_facets(stab_facets(g))[1]["is_h_perfect"]:
            return False
        if kind == "forbidden":
            pat = dict(default_forbidden()).get(step["pattern"])
            if pat is not None and _reorder(g, step["embedding"]) != pat:
                return False
        if kind == "twin_reduction":
            a, b = step["v"], step["v2"]
            pair = (1 << a) | (1 << b)
            if g.adj[a] & ~pair != g.adj[b] & ~pair or (step["kind"] == "split") != g.has_edge(a, b):
                return False
            if not verify_certificate(induced_subgraph(g, [x for x in range(g.n) if x != b]), step["sub"]):
                return False
        if kind == "join_split":
            parts = step["parts"]
            for p, q in product(range(len(parts)), repeat=2):
                if p < q:
                    for u, v in product(parts[p], parts[q]):
                        if g.has_edge(u, v) != (step["kind"] == "join"):
                            return False
            if sorted(v for p in parts for v in p) != list(range(g.n)):
                return False
            if not all(verify_certificate(induced_subgraph(g, p), s) for p, s in zip(parts, step["sub"])):
                return False
        if kind == "g15_subgraph":
            if _reorder(g15(), step["embedding"]) != g:
                return False
        if kind == "facet_zero_recursion":
            if not verify_certificate(induced_subgraph(g, step["support"]), step["sub"]):
                return False
    return True


def _reorder(host, emb):
    """Subgraph of ``host`` on ``emb`` with vertex ``k`` standing for ``emb[k]``."""
    rows = []
    for v in emb:
        rows.append(sum(1 << k for k, u in enumerate(emb) if host.has_edge(v, u)))
    return Graph(len(emb), tuple(rows))


# census ------------------------------------------------------------------------


def census(source, jobs=1, tol=DEFAULT_TOL, budget=None):
    """Tallies per vertex count for graphs read from a graph6 file (or a list of graphs)."""
    try:
        graphs = read_graph6_file(source) if isinstance(source, str) else list(source)
    except OSError as exc:
        raise IoError(str(exc), path=str(source)) from exc
    decider = Decider(tol=tol, budget=budget)

    def one(g):
        try:
            v = decider.decide(g)
        except HbarError as exc:
            v = HbarVerdict(UNDETERMINED, [{"step": "error", "error": exc.to_json()}])
        perfect = is_perfect(g) if g.n <= 10 else None
        hp = perfect or (classify_facets(stab_facets(g))[1]["is_h_perfect"] if g.n <= 10 else None)
        return g, v, perfect, hp

    if jobs > 1:
        with ThreadPoolExecutor(jobs) as ex:
            results = list(ex.map(one, graphs))
    else:
        results = [one(g) for g in graphs]
    rows = {}
    imperfect = []
    for g, v, perfect, hp in results:
        row = rows.setdefault(g.n, {"n": g.n, "connected": 0, "perfect": 0, "h_perfect": 0,
                                    "hbar_perfect": 0, "hbar_imperfect": 0, "undetermined": 0})
        row["connected"] += g.is_connected()
        row["perfect"] += bool(perfect)
        row["h_perfect"] += bool(hp)
        row["hbar_perfect"] += v.status == PERFECT
        row["hbar_imperfect"] += v.status == IMPERFECT
        row["undetermined"] += v.status == UNDETERMINED
        if v.status == IMPERFECT:
            imperfect.append({"graph6": encode_graph6(g), "chromatic_number": chromatic_number(g),
                              "witness": v.witness})
    return {"rows": [rows[k] for k in sorted(rows)], "imperfect": imperfect,
            "verdicts": [v for _, v, _, _ in results]}


def chromatic_number(g):
    for k in range(1, g.n + 1):
        colors = [-1] * g.n

        def place(v):
            if v == g.n:
                return True
            for c in range(k):
                if all(colors[u] != c for u in mask_to_list(g.adj[v])):
                    colors[v] = c
                    if place(v + 1):
                        return True
            colors[v] = -1
            return False

        if place(0):
            return k
    return g.n
