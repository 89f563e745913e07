"""Combined lower/upper brackets for beta(G, w) and the de Finetti qubit budget."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import ceil, log, log2

import numpy as np

from . import definetti, moment
from .errors import BudgetExceeded, DomainError, NoGoodSign, SizeOverflow
from .pauli import realize_min
from .seesaw import DEFAULT_SEED, expectations, operator_stack, seesaw


@dataclass
class Budget:
    restarts: int = 10
    seed: int = DEFAULT_SEED
    definetti_m: int | None = 8
    definetti_max_dim: int = 200_000
    levels: tuple = ("A", "B", "C")
    sdp_tol: float = 1e-7
    sdp_max_iters: int = 20_000
    gap_tol: float = 1e-5


@dataclass
class BetaBracket:
    lower: float
    upper: float
    lower_src: str
    upper_src: str
    details: dict = field(default_factory=dict)

    @property
    def gap(self):
        return self.upper - self.lower

    def to_json(self):
        return {"lower": self.lower, "upper": self.upper, "lower_src": self.lower_src,
                "upper_src": self.upper_src, "gap": self.gap}


def beta_bracket(g, w, budget=None, realization=None):
    """See-saw lower bound and the best available upper bound for beta(G, w).

    Upper bound solvers run in order (de Finetti, then SDP levels) until the
    gap drops below ``budget.gap_tol``; each of them seeds a warm see-saw.
    """
    budget = budget or Budget()
    w = np.array([float(x) for x in w])
    if np.any(w < 0):
        raise DomainError("weights must be nonnegative")
    r = realization or realize_min(g)
    details = {"realization": r.labels(), "sdp": []}
    ops = operator_stack(r)
    best = seesaw(r, w, restarts=budget.restarts, seed=budget.seed)
    lower, lower_src = best.value, "seesaw"
    upper, upper_src = np.inf, "none"

    def refine(state, tag):
        nonlocal best, lower, lower_src
        res = seesaw(r, w, init=state, restarts=0)
        if res.value > lower:
            best, lower, lower_src = res, res.value, f"seesaw({tag})"

    if budget.definetti_m is not None and r.dim <= 4:
        try:
            dfr = definetti.definetti_upper(r, w, budget.definetti_m, budget.definetti_max_dim)
        except BudgetExceeded as exc:
            details["definetti"] = exc.to_json()
        else:
            details["definetti"] = {"m": dfr.m, "upper": dfr.lambda_max, "error": dfr.rigorous_error, "dim": dfr.dim}
            if dfr.lambda_max < upper:
                upper, upper_src = dfr.lambda_max, f"definetti({dfr.m})"
            refine(definetti.warm_start_state(dfr), "definetti")
    hint = np.sign(expectations(ops, best.state))
    for level in budget.levels:
        if upper - lower <= budget.gap_tol:
            break
        try:
            prob = moment.moment_problem(g, level)
        except SizeOverflow as exc:
            details["sdp"].append({"level": level, "skipped": exc.to_json()})
            break
        sol = moment.lambda_r(g, w, level, prob=prob, tol=budget.sdp_tol, max_iters=budget.sdp_max_iters)
        # the primal value of a first-order iterate is not a bound in either
        # direction; the dual certificate is, converged or not
        bound = sol.extra.get("certified_upper", sol.value if sol.status != "max_iters" else np.inf)
        details["sdp"].append({"level": level, "value": sol.value, "certified_upper": bound, "status": sol.status,
                               "iterations": sol.iterations, "primal_residual": sol.primal_residual,
                               "dual_residual": sol.dual_residual})
        if bound < upper:
            upper, upper_src = bound, f"sdp({level})"
        if r.length <= 5:
            try:
                state, _, _ = moment.extract_state(r, moment.expectation_targets(prob, sol), hint)
            except NoGoodSign:
                pass
            else:
                refine(state, f"sdp({level})")
    details["state"] = best.state
    if upper < lower:
        # first-order SDP values carry ~residual-sized error; keep the bracket ordered
        details["upper_raw"] = float(upper)
        upper = lower
    return BetaBracket(float(lower), float(upper), lower_src, upper_src, details)


def qubit_budget(n, c, eps):
    """Qubits for the permutation-averaged encoding: l = log2(n/c)/2, m = ceil(ln(n/c)/eps^2), L = (m+2) ceil(l)."""
    if not c > 0 or not n > c:
        raise DomainError("need n > c > 0", n=n, c=c)
    if not 0 < eps <= 1:
        raise DomainError("need 0 < eps <= 1", eps=eps)
    l = log2(n / c) / 2
    m = ceil(log(n / c) / eps ** 2)
    return {"l": l, "m": m, "L": (m + 2) * ceil(l)}
