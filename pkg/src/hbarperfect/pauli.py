"""GF(2) linear algebra and Pauli strings in symplectic form.

A Pauli string on ``l`` qubits is a pair of ``l``-bit integers ``(x, z)``; bit
``q`` of each gives the factor on qubit ``q`` (qubit 0 is the leftmost letter):
``(0,0)=I, (1,0)=X, (0,1)=Z, (1,1)=Y``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import LengthMismatch, NotAlternating, SizeOverflow
from .graph import Graph

_LETTER = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
_BITS = {v: k for k, v in _LETTER.items()}

_DENSE = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]]),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


# GF(2) matrices are lists of int rows, bit j of row i is entry (i, j).


def gf2_from_array(a):
    a = np.asarray(a, dtype=np.int64) & 1
    return [sum(int(v) << j for j, v in enumerate(row)) for row in a]


def gf2_to_array(rows, ncols):
    return np.array([[r >> j & 1 for j in range(ncols)] for r in rows], dtype=np.int64)


def gf2_rank(rows):
    """Rank over GF(2) of a matrix given as int rows (or a 0/1 array)."""
    if isinstance(rows, np.ndarray):
        rows = gf2_from_array(rows)
    rows = list(rows)
    rank = 0
    for i in range(len(rows)):
        pivot = rows[i]
        if not pivot:
            continue
        rank += 1
        low = pivot & -pivot
        for k in range(i + 1, len(rows)):
            if rows[k] & low:
                rows[k] ^= pivot
    return rank


def gf2_inverse(rows, n):
    """Inverse of an invertible n x n GF(2) matrix by Gauss-Jordan on [A | I]."""
    aug = [(rows[i] & ((1 << n) - 1)) | (1 << (n + i)) for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r] >> col & 1), None)
        if piv is None:
            raise ValueError("matrix is singular over GF(2)")
        aug[col], aug[piv] = aug[piv], aug[col]
        for r in range(n):
            if r != col and aug[r] >> col & 1:
                aug[r] ^= aug[col]
    return [row >> n for row in aug]


def gf2_matmul(a, b, ncols_b):
    """Product of int-row matrices; ``a`` is m x k, ``b`` is k x ncols_b."""
    out = []
    for row in a:
        acc = 0
        j = 0
        while row:
            if row & 1:
                acc ^= b[j]
            row >>= 1
            j += 1
        out.append(acc & ((1 << ncols_b) - 1))
    return out


def gf2_transpose(rows, ncols):
    return [sum((rows[i] >> j & 1) << i for i in range(len(rows))) for j in range(ncols)]


def symplectic_canonical_form(rows, n=None):
    """Congruence ``L^T A L = J + ... + J + 0`` for an alternating GF(2) matrix.

    Returns ``(L, k)`` with ``L`` as int rows.  Column ``2i`` and ``2i+1`` of
    ``L`` form the i-th hyperbolic pair, the remaining columns span the radical.
    """
    if isinstance(rows, np.ndarray):
        n = rows.shape[0]
        rows = gf2_from_array(rows)
    n = len(rows) if n is None else n
    for i in range(n):
        if rows[i] >> i & 1:
            raise NotAlternating("nonzero diagonal", row=i)
        for j in range(n):
            if (rows[i] >> j & 1) != (rows[j] >> i & 1):
                raise NotAlternating("matrix not symmetric", row=i, col=j)

    def form(u, v):
        # u^T A v for bit vectors u, v
        acc = 0
        m = u
        while m:
            i = (m & -m).bit_length() - 1
            acc ^= bin(rows[i] & v).count("1") & 1
            m &= m - 1
        return acc

    remaining = [1 << i for i in range(n)]
    pairs = []
    while True:
        found = None
        for a in range(len(remaining)):
            for b in range(a + 1, len(remaining)):
                if form(remaining[a], remaining[b]):
                    found = (a, b)
                    break
            if found:
                break
        if found is None:
            break
        a, b = found
        u, v = remaining[a], remaining[b]
        pairs.append((u, v))
        rest = [remaining[k] for k in range(len(remaining)) if k not in (a, b)]
        # project the rest onto the form-orthogonal complement of span(u, v)
        remaining = []
        for c in rest:
            c2 = c
            if form(c, v):
                c2 ^= u
            if form(c, u):
                c2 ^= v
            remaining.append(c2)
    cols = [c for p in pairs for c in p] + remaining
    # L has these vectors as columns
    L = [sum((cols[j] >> i & 1) << j for j in range(n)) for i in range(n)]
    return L, len(pairs)


@dataclass(frozen=True)
class PauliString:
    length: int
    x: int
    z: int

    def __post_init__(self):
        if self.length < 1:
            raise ValueError("Pauli strings need at least one qubit")

    @classmethod
    def parse(cls, text):
        text = text.strip().upper()
        if not text or any(c not in "IXYZ" for c in text):
            raise ValueError(f"not a Pauli string: {text!r}")
        x = z = 0
        for q, c in enumerate(text):
            bx, bz = _BITS[c]
            x |= bx << q
            z |= bz << q
        return cls(len(text), x, z)

    def letter(self, q):
        return _LETTER[(self.x >> q & 1, self.z >> q & 1)]

    def __str__(self):
        return "".join(self.letter(q) for q in range(self.length))

    def weight(self):
        return bin(self.x | self.z).count("1")

    def extend(self, extra=1):
        """Same operator with identity appended on ``extra`` more qubits."""
        return PauliString(self.length + extra, self.x, self.z)


def anticommutes(p, q):
    if p.length != q.length:
        raise LengthMismatch(f"lengths {p.length} and {q.length}", lengths=[p.length, q.length])
    return bool(bin((p.x & q.z) ^ (p.z & q.x)).count("1") & 1)


def parse_strings(text):
    """Strings from whitespace/newline separated IXYZ text."""
    return [PauliString.parse(t) for t in text.split()]


def frustration_graph(strings):
    strings = list(strings)
    if not strings:
        raise ValueError("need at least one string")
    edges = []
    for i in range(len(strings)):
        for j in range(i + 1, len(strings)):
            if anticommutes(strings[i], strings[j]):
                edges.append((i, j))
    return Graph.from_edges(len(strings), edges)


def to_dense(p):
    if p.length > 6:
        raise SizeOverflow("dense rendering limited to 6 qubits", length=p.length)
    return reduce(np.kron, [_DENSE[p.letter(q)] for q in range(p.length)])


@dataclass(frozen=True)
class Realization:
    strings: tuple
    graph: Graph

    def __post_init__(self):
        if len({s.length for s in self.strings}) != 1:
            raise LengthMismatch("strings differ in length")
        if frustration_graph(self.strings) != self.graph:
            raise ValueError("strings do not realize the graph")

    @classmethod
    def from_strings(cls, strings):
        strings = tuple(PauliString.parse(s) if isinstance(s, str) else s for s in strings)
        return cls(strings, frustration_graph(strings))

    @property
    def length(self):
        return self.strings[0].length

    @property
    def dim(self):
        return 2 ** self.length

    def dense(self):
        return [to_dense(s) for s in self.strings]

    def labels(self):
        return [str(s) for s in self.strings]


def adjacency_rows(g):
    return list(g.adj)


def realize_min(g):
    """Pauli strings of length ``rank_F2(A)/2`` whose frustration graph is ``g``.

    With ``L^T A L`` in canonical form, vertex ``p`` gets qubit ``i`` bits
    ``(u_i[p], v_i[p])`` where ``u_i, v_i`` are columns ``2i, 2i+1`` of ``L^{-T}``.
    """
    n = g.n
    L, k = symplectic_canonical_form(list(g.adj), n)
    if k == 0:
        strings = tuple(PauliString(1, 0, 1) for _ in range(n))
        return Realization(strings, g)
    Linv = gf2_inverse(L, n)
    # columns of L^{-T} are rows of L^{-1}
    strings = []
    for p in range(n):
        x = z = 0
        for i in range(k):
            x |= (Linv[2 * i] >> p & 1) << i
            z |= (Linv[2 * i + 1] >> p & 1) << i
        strings.append(PauliString(k, x, z))
    return Realization(tuple(strings), g)


def all_pauli_strings(length):
    """All nontrivial strings on ``length`` qubits in lexicographic IXYZ order."""
    from itertools import product

    return [PauliString.parse("".join(t)) for t in product("IXYZ", repeat=length) if set(t) != {"I"}]
