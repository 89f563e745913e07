"""Density matrices and string sets used by the entanglement and energy examples."""

from __future__ import annotations

import numpy as np

from ..pauli import PauliString, to_dense

S6_STRINGS = "IY XX YZ ZX ZY ZZ".split()
S5_STRINGS = "IX IZ XY YY ZY".split()
GHZ_STABILIZERS = "ZZI ZIZ IZZ XXX -YYX -YXY -XYY".split()


def dm(psi):
    psi = np.asarray(psi, dtype=complex)
    psi = psi / np.linalg.norm(psi)
    return np.outer(psi, psi.conj())


def signed_dense(text):
    """Dense matrix of a Pauli string with an optional leading sign."""
    sign = -1 if text.startswith("-") else 1
    return sign * to_dense(PauliString.parse(text.lstrip("+-")))


def bell_state(t):
    """t = 1..4: |00>+|11>, |00>-|11>, |01>+|10>, |01>-|10> (normalized)."""
    v = np.zeros(4)
    a, b, s = {1: (0, 3, 1), 2: (0, 3, -1), 3: (1, 2, 1), 4: (1, 2, -1)}[t]
    v[a], v[b] = 1, s
    return v / np.sqrt(2)


def bell_diagonal(p):
    return sum(pi * dm(bell_state(t + 1)) for t, pi in enumerate(p))


def ghz_state(k):
    """k = 1..8 in the order |000>+-|111>, |100>+-|011>, |010>+-|101>, |110>+-|001>."""
    first = [0b000, 0b100, 0b010, 0b110][(k - 1) // 2]
    v = np.zeros(8)
    v[first] = 1
    v[first ^ 0b111] = 1 if k % 2 else -1
    return v / np.sqrt(2)


def ghz_diagonal(p):
    return sum(pi * dm(ghz_state(k + 1)) for k, pi in enumerate(p))


def rho_v(v):
    """Mixture of the six maximally entangled states |psi_S> = sum_j |j> S|j> / 2 with white noise."""
    mix = np.zeros((16, 16), dtype=complex)
    for s in S6_STRINGS:
        m = to_dense(PauliString.parse(s))
        psi = sum(np.kron(np.eye(4)[j], m @ np.eye(4)[j]) for j in range(4)) / 2
        mix += np.outer(psi, psi.conj()) / 6
    return v * mix + (1 - v) * np.eye(16) / 16


def _two_qutrit(amps):
    v = np.zeros(9, dtype=complex)
    for (a, b), c in amps.items():
        v[3 * a + b] = c
    return v


def qutrit_family(p):
    """(1 - p) |Psi_3><Psi_3| + p |Phi'><Phi'| with Phi' = (|01> + |10>)/sqrt 2."""
    psi3 = _two_qutrit({(0, 0): 1, (1, 1): 1, (2, 2): 1})
    phi = _two_qutrit({(0, 1): 1, (1, 0): 1})
    return (1 - p) * dm(psi3) + p * dm(phi)


def unfaithful_qutrit_state():
    """Entangled two-qutrit state that no fidelity witness detects (amplitudes as printed, normalized)."""
    phi1 = _two_qutrit({(1, 1): 0.628, (2, 2): -0.778})
    phi2 = _two_qutrit({(0, 1): 0.807, (0, 2): -0.185, (1, 0): -0.102, (1, 1): -0.027,
                        (1, 2): 0.011, (2, 0): 0.551, (2, 1): -0.024, (2, 2): -0.022})
    return 0.999 * (0.50179 * dm(phi1) + 0.49821 * dm(phi2)) + 0.001 * np.eye(9) / 9


def chain_strings(n, yy=False):
    """Strings of X_1 + Z_1 + Y_n + sum_i (X_i X_i+1 [+ Y_i Y_i+1] + Z_i Z_i+1)."""

    def put(d):
        s = ["I"] * n
        for k, c in d.items():
            s[k] = c
        return "".join(s)

    out = [put({0: "X"}), put({0: "Z"}), put({n - 1: "Y"})]
    for i in range(n - 1):
        out.append(put({i: "X", i + 1: "X"}))
        if yy:
            out.append(put({i: "Y", i + 1: "Y"}))
        out.append(put({i: "Z", i + 1: "Z"}))
    return out
