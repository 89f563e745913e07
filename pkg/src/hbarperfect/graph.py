"""Simple undirected graphs stored as bit rows, graph6 I/O and graph operations."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import EmptySet, MalformedGraph6, SizeOverflow, UnsupportedSize, VertexOutOfRange

MAX_N = 24


@dataclass(frozen=True)
class Graph:
    """Graph on vertices ``0..n-1``; ``adj[i]`` is the neighbour bitmask of ``i``."""

    n: int
    adj: tuple

    def __post_init__(self):
        if not 1 <= self.n <= MAX_N:
            raise UnsupportedSize(f"n={self.n} outside 1..{MAX_N}", n=self.n)
        if len(self.adj) != self.n:
            raise ValueError("adjacency row count differs from n")
        for i, row in enumerate(self.adj):
            if row >> self.n or row >> i & 1:
                raise ValueError(f"bad adjacency row {i}")
            for j in range(self.n):
                if (row >> j & 1) != (self.adj[j] >> i & 1):
                    raise ValueError(f"adjacency not symmetric at {i},{j}")

    @classmethod
    def from_edges(cls, n, edges):
        rows = [0] * n
        for i, j in edges:
            if not (0 <= i < n and 0 <= j < n) or i == j:
                raise VertexOutOfRange(f"bad edge {i}-{j}", edge=[i, j], n=n)
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        return cls(n, tuple(rows))

    def has_edge(self, i, j):
        return bool(self.adj[i] >> j & 1)

    def edges(self):
        return [(i, j) for i in range(self.n) for j in range(i + 1, self.n) if self.adj[i] >> j & 1]

    def neighbors(self, v):
        return [j for j in range(self.n) if self.adj[v] >> j & 1]

    def degree(self, v):
        return bin(self.adj[v]).count("1")

    @property
    def full(self):
        return (1 << self.n) - 1

    def is_independent(self, mask):
        m = mask
        while m:
            v = (m & -m).bit_length() - 1
            if self.adj[v] & mask:
                return False
            m &= m - 1
        return True

    def is_clique(self, mask):
        m = mask
        while m:
            v = (m & -m).bit_length() - 1
            if (mask & ~(1 << v)) & ~self.adj[v]:
                return False
            m &= m - 1
        return True

    def is_connected(self):
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            m = frontier
            while m:
                v = (m & -m).bit_length() - 1
                nxt |= self.adj[v]
                m &= m - 1
            frontier = nxt & ~seen
            seen |= nxt
        return seen == self.full

    def components(self):
        """Vertex masks of connected components, ordered by smallest vertex."""
        left = self.full
        comps = []
        while left:
            seed = left & -left
            comp = seed
            frontier = seed
            while frontier:
                nxt = 0
                m = frontier
                while m:
                    v = (m & -m).bit_length() - 1
                    nxt |= self.adj[v]
                    m &= m - 1
                frontier = nxt & ~comp
                comp |= nxt
            comps.append(comp)
            left &= ~comp
        return comps

    def to_graph6(self):
        return encode_graph6(self)

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edges()})"


def mask_to_list(mask):
    out = []
    while mask:
        out.append((mask & -mask).bit_length() - 1)
        mask &= mask - 1
    return out


def list_to_mask(vertices):
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


# graph6 ---------------------------------------------------------------------


def decode_graph6(text):
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[10:]
    if not s:
        raise MalformedGraph6("empty input", position=0)
    if s[0] in "&:;":
        raise MalformedGraph6("digraph6/sparse6 encodings are not accepted", position=0)
    if s[0] == "~":
        raise UnsupportedSize("graph6 with n > 62 is not supported", position=0)
    for pos, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise MalformedGraph6(f"invalid character {ch!r}", position=pos)
    n = ord(s[0]) - 63
    if not 1 <= n <= MAX_N:
        raise UnsupportedSize(f"n={n} outside 1..{MAX_N}", n=n)
    nbits = n * (n - 1) // 2
    nchars = -(-nbits // 6)
    body = s[1:]
    if len(body) != nchars:
        raise MalformedGraph6(f"expected {nchars} data characters, got {len(body)}", position=1 + min(len(body), nchars))
    bits = []
    for ch in body:
        v = ord(ch) - 63
        bits.extend((v >> (5 - k)) & 1 for k in range(6))
    if any(bits[nbits:]):
        raise MalformedGraph6("nonzero padding bits", position=len(s) - 1)
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph(n, tuple(rows))


def encode_graph6(g):
    bits = [g.adj[i] >> j & 1 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    chars = [chr(g.n + 63)]
    for k in range(0, len(bits), 6):
        v = 0
        for b in bits[k:k + 6]:
            v = (v << 1) | b
        chars.append(chr(v + 63))
    return "".join(chars)


def read_graph6_file(path):
    """All graphs of a graph6 file, ``"-"`` reads stdin."""
    import sys

    fh = sys.stdin if path == "-" else open(path, encoding="ascii")
    try:
        return [decode_graph6(line) for line in fh if line.strip()]
    finally:
        if fh is not sys.stdin:
            fh.close()


# operations -------------------------------------------------------------------


def _check_size(n):
    if n > MAX_N:
        raise SizeOverflow(f"result would have {n} > {MAX_N} vertices", n=n)


def disjoint_union(g1, g2):
    _check_size(g1.n + g2.n)
    rows = list(g1.adj) + [row << g1.n for row in g2.adj]
    return Graph(g1.n + g2.n, tuple(rows))


def join(g1, g2):
    _check_size(g1.n + g2.n)
    low = g1.full
    high = g2.full << g1.n
    rows = [row | high for row in g1.adj] + [(row << g1.n) | low for row in g2.adj]
    return Graph(g1.n + g2.n, tuple(rows))


def lexicographic_product(g1, g2):
    """Vertex ``(u1, u2)`` is numbered ``u1 * g2.n + u2``."""
    n = g1.n * g2.n
    _check_size(n)
    edges = []
    for a, b in combinations(range(n), 2):
        u1, u2 = divmod(a, g2.n)
        v1, v2 = divmod(b, g2.n)
        if g1.has_edge(u1, v1) or (u1 == v1 and g2.has_edge(u2, v2)):
            edges.append((a, b))
    return Graph.from_edges(n, edges)


def _twin(g, v, adjacent):
    if not 0 <= v < g.n:
        raise VertexOutOfRange(f"vertex {v} not in 0..{g.n - 1}", vertex=v, n=g.n)
    _check_size(g.n + 1)
    new = g.n
    rows = list(g.adj)
    nb = g.adj[v] | ((1 << v) if adjacent else 0)
    for j in mask_to_list(nb):
        rows[j] |= 1 << new
    rows.append(nb)
    return Graph(g.n + 1, tuple(rows))


def copy_vertex(g, v):
    """Add a non-adjacent twin of ``v`` as the last vertex."""
    return _twin(g, v, False)


def split_vertex(g, v):
    """Add an adjacent twin of ``v`` as the last vertex."""
    return _twin(g, v, True)


def complement(g):
    full = g.full
    return Graph(g.n, tuple(full & ~row & ~(1 << i) for i, row in enumerate(g.adj)))


def induced_subgraph(g, vertices):
    vs = sorted(set(vertices))
    if not vs:
        raise EmptySet("induced_subgraph needs a nonempty vertex set")
    for v in vs:
        if not 0 <= v < g.n:
            raise VertexOutOfRange(f"vertex {v} not in 0..{g.n - 1}", vertex=v, n=g.n)
    rows = []
    for v in vs:
        row = 0
        for k, u in enumerate(vs):
            if g.adj[v] >> u & 1:
                row |= 1 << k
        rows.append(row)
    return Graph(len(vs), tuple(rows))


def relabel(g, perm):
    """Graph with vertex ``i`` of ``g`` renamed ``perm[i]``."""
    return Graph.from_edges(g.n, [(perm[i], perm[j]) for i, j in g.edges()])


# fixtures -------------------------------------------------------------------


def cycle(n):
    if n < 3:
        raise UnsupportedSize("cycle needs n >= 3", n=n)
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def anticycle(n):
    return complement(cycle(n))


def complete(n):
    return Graph.from_edges(n, list(combinations(range(n), 2)))


def empty(n):
    return Graph(n, (0,) * n)


def claw():
    return Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])


G7_EDGES = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 0),
            (0, 3), (0, 4), (1, 3), (1, 4), (6, 3), (6, 4), (2, 5)]


def g7():
    return Graph.from_edges(7, G7_EDGES)
