"""Classify every connected graph on 3 to 6 vertices.

Counts perfect, h-perfect and hbar-perfect graphs. n = 7 also works but takes about five minutes.
"""

import sys
from pathlib import Path

from hbarperfect.decide import census

data = Path(__file__).resolve().parent.parent / "tests" / "data"
top = int(sys.argv[1]) if len(sys.argv) > 1 else 6

print(f"{'n':>2} {'graphs':>7} {'perfect':>8} {'h-perf':>7} {'hbar':>6} {'imperf':>7} {'undet':>6}")
for n in range(3, top + 1):
    res = census(str(data / f"connected{n}.g6"))
    for row in res["rows"]:
        print(f"{row['n']:>2} {row['connected']:>7} {row['perfect']:>8} {row['h_perfect']:>7} "
              f"{row['hbar_perfect']:>6} {row['hbar_imperfect']:>7} {row['undetermined']:>6}")
    for item in res["imperfect"]:
        print("   imperfect:", item["graph6"], "lower", round(item["witness"]["lower"], 6))
