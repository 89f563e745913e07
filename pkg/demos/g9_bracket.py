"""Bracket beta(G9, w) between a see-saw lower bound and moment SDP upper bounds.

G9 is h-perfect with alpha = 3, yet beta is strictly larger, so it is not hbar-perfect.
"""

from hbarperfect.bracket import Budget, beta_bracket
from hbarperfect.fixtures import g9
from hbarperfect.moment import lambda_r
from hbarperfect.stab import alpha_value

g = g9()
w = [1] * 7 + [2, 2]
print("edges:", g.edges())
print("alpha(G9, w) =", alpha_value(g, w))
for level in "AB":
    sol = lambda_r(g, w, level)
    print(f"level {level}: side {sol.extra['side']}, value {sol.value:.7f}, certified <= {sol.extra['certified_upper']:.7f}")

br = beta_bracket(g, w, Budget(levels=("A", "B")))
print(f"beta in [{br.lower:.7f}, {br.upper:.7f}]  ({br.lower_src} / {br.upper_src})")
