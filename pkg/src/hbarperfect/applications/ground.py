"""Lower bounds on ground-state energies of sum_i a_i S_i from the frustration graph."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..bracket import beta_bracket
from ..decide import PERFECT, Decider
from ..errors import DomainError, SolverStalled
from ..pauli import Realization
from ..stab import alpha_value, maximal_stable_sets

EPS0 = 1e-12


@dataclass
class GroundBound:
    coefficients: list
    strings: list
    weights: list
    objective: float
    scale: float
    scale_src: str
    bound: float
    exact_energy: float | None = None

    def to_json(self):
        out = {"coefficients": self.coefficients, "strings": self.strings, "weights": self.weights,
               "objective": self.objective, "scale": self.scale, "scale_src": self.scale_src, "bound": self.bound}
        if self.exact_energy is not None:
            out["exact_energy"] = self.exact_energy
            out["gap"] = self.exact_energy - self.bound
        return out


def optimal_weights(a, g, tol=1e-10, max_newton=200):
    """min sum a_i^2 / w_i  s.t.  sum_{i in I} w_i <= 1 for maximal stable I, w >= EPS0.

    Log-barrier method: Newton on t f(w) - sum log(slacks), t multiplied by 10 per stage.
    """
    a2 = np.asarray(a, dtype=float) ** 2
    n = len(a2)
    M = np.array([[m >> i & 1 for i in range(n)] for m in maximal_stable_sets(g)], dtype=float)
    w = np.full(n, 1.0 / (n + 1))
    ncons = len(M) + n

    def phi(w, t):
        s1 = 1 - M @ w
        s2 = w - EPS0
        if np.any(s1 <= 0) or np.any(s2 <= 0):
            return np.inf
        return t * np.sum(a2 / w) - np.sum(np.log(s1)) - np.sum(np.log(s2))

    t = 1.0
    while True:
        dec = np.inf
        for _ in range(max_newton):
            s1 = 1 - M @ w
            s2 = w - EPS0
            grad = t * (-a2 / w ** 2) + M.T @ (1 / s1) - 1 / s2
            hess = np.diag(t * 2 * a2 / w ** 3 + 1 / s2 ** 2) + (M.T * (1 / s1 ** 2)) @ M
            step = -np.linalg.solve(hess, grad)
            dec = float(-grad @ step)
            if dec / 2 <= tol:
                break
            s, f0 = 1.0, phi(w, t)
            while phi(w + s * step, t) > f0 + 0.25 * s * grad @ step and s > 1e-16:
                s *= 0.5
            if s <= 1e-16:
                break  # roundoff floor of the barrier function
            w = w + s * step
        if dec / 2 > 1e-6:
            raise SolverStalled("Newton did not converge", stage_t=t, decrement=dec)
        f = float(np.sum(a2 / w))
        if ncons / t < tol * max(1.0, f):
            return w, f
        t *= 10


def ground_bound(a, r, w=None, decider=None, exact=True, budget=None):
    """E_0 >= -sqrt(sum a_i^2 / w_i * s) where s = alpha(G, w) if G is certified, else the beta upper bound.

    ``w`` defaults to the barrier optimum over the independence constraints.
    """
    if not isinstance(r, Realization):
        r = Realization.from_strings(r)
    a = [float(x) for x in a]
    g = r.graph
    if len(a) != g.n:
        raise DomainError("coefficient count differs from string count", got=len(a), n=g.n)
    if w is None:
        w, _ = optimal_weights(a, g)
    w = np.asarray([float(x) for x in w])
    if np.any(w <= 0):
        raise DomainError("weights must be positive")
    obj = float(np.sum(np.asarray(a) ** 2 / w))
    if (decider or Decider()).decide(g).status == PERFECT:
        scale, src = float(alpha_value(g, [float(x) for x in w])), "alpha"
    else:
        br = beta_bracket(g, w, budget, realization=r)
        scale, src = br.upper, br.upper_src
    bound = -float(np.sqrt(obj * scale))
    energy = None
    if exact and r.length <= 6:
        h = sum(c * s for c, s in zip(a, r.dense()))
        energy = float(np.linalg.eigvalsh(h)[0])
    return GroundBound(a, r.labels(), w.tolist(), obj, scale, src, bound, energy)
