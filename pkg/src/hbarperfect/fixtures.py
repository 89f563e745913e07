"""Named graphs and string sets used across the package."""

from .graph import anticycle, claw, complete, cycle, decode_graph6, empty, g7
from .pauli import Realization, frustration_graph, parse_strings

G15_STRINGS = "IX XX ZZ IZ YI YX XI YY ZI YZ XY XZ IY ZX ZY".split()
G7_STRINGS = "ZII XXI IZI YXX YIZ ZYI XII".split()
G9_STRINGS = "XIII IXII IIXI ZIII IZII ZZZI YZYX YYXX YXZZ".split()
G9_WEIGHTS = (1, 1, 1, 1, 1, 1, 1, 2, 2)


def g15():
    """Frustration graph of the 15 nontrivial two-qubit Pauli strings."""
    return frustration_graph(parse_strings(" ".join(G15_STRINGS)))


def g15_realization():
    return Realization.from_strings(G15_STRINGS)


def g7_realization():
    return Realization.from_strings(G7_STRINGS)


def g9_realization():
    return Realization.from_strings(G9_STRINGS)


def g9():
    return g9_realization().graph


def named(name):
    """Look up a fixture by name, e.g. ``C5``, ``antiC7``, ``K3``, ``E4``, ``G7``."""
    key = name.strip()
    simple = {"G7": g7, "G9": g9, "G15": g15, "claw": claw}
    if key in simple:
        return simple[key]()
    for prefix, fn in (("antiC", anticycle), ("cycle", cycle), ("C", cycle), ("K", complete), ("E", empty)):
        if key.startswith(prefix) and key[len(prefix):].isdigit():
            return fn(int(key[len(prefix):]))
    raise KeyError(name)


def load_graph(text):
    """Graph from a fixture name or a graph6 string."""
    try:
        return named(text)
    except KeyError:
        return decode_graph6(text)
