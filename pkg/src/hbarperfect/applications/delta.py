"""Brackets on delta = min over distributions w of beta(G, w)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..bracket import beta_bracket
from ..errors import SizeOverflow
from ..graph import complement
from ..moment import lovasz_theta, omega_r
from ..search import automorphism_orbit_check
from ..stab import fractional_packing


@dataclass
class DeltaBounds:
    lower: Fraction
    upper: float
    refined_upper: float | None = None
    transitive_exact: float | None = None
    transitive_bracket: tuple | None = None

    def to_json(self):
        out = {"lower": self.lower, "upper": self.upper}
        if self.refined_upper is not None:
            out["refined_upper"] = self.refined_upper
        if self.transitive_exact is not None:
            out["transitive_exact"] = self.transitive_exact
            out["transitive_bracket"] = list(self.transitive_bracket)
        return out


def delta_bounds(g, refine=False, transitive=True, budget=None):
    """1/alpha*(co-G) <= delta <= 1/theta(co-G); optionally 1/omega_r(G) and, for
    vertex-transitive G, beta(G)/n from the beta bracket."""
    if g.n > 10:
        raise SizeOverflow("delta bounds limited to n <= 10", n=g.n)
    h = complement(g)
    lower = 1 / fractional_packing(h)
    upper = 1 / lovasz_theta(h).value
    out = DeltaBounds(lower, upper)
    if refine:
        out.refined_upper = omega_r(g).extra["inverse"]
    if transitive and automorphism_orbit_check(g)["vertex_transitive"]:
        br = beta_bracket(g, [1] * g.n, budget)
        out.transitive_bracket = (br.lower / g.n, br.upper / g.n)
        out.transitive_exact = (br.lower + br.upper) / (2 * g.n)
    return out
