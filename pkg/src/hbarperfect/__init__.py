"""Frustration graphs of Pauli strings: independence numbers, beta brackets and hbar-perfectness."""

__version__ = "0.1.0"

from .bracket import BetaBracket, Budget, beta_bracket, qubit_budget
from .decide import Decider, HbarVerdict, census, decide, verify_certificate
from .errors import HbarError
from .graph import Graph, complement, decode_graph6, encode_graph6
from .pauli import PauliString, Realization, frustration_graph, realize_min
from .stab import alpha, alpha_value, fractional_packing, stab_facets

__all__ = [
    "BetaBracket", "Budget", "Decider", "Graph", "HbarError", "HbarVerdict", "PauliString", "Realization",
    "alpha", "alpha_value", "beta_bracket", "census", "complement", "decide", "decode_graph6", "encode_graph6",
    "fractional_packing", "frustration_graph", "qubit_budget", "realize_min", "stab_facets", "verify_certificate",
]
