"""Induced-subgraph search, twin detection and vertex-transitivity."""

from .errors import SizeOverflow


def _embeddings(host, pattern, fixed=None):
    """Yield induced embeddings in lexicographic order of the image tuple."""
    k = pattern.n
    hdeg = [host.degree(v) for v in range(host.n)]
    pdeg = [pattern.degree(v) for v in range(k)]
    image = []
    used = 0

    def extend(p):
        nonlocal used
        if p == k:
            yield list(image)
            return
        candidates = [fixed[p]] if fixed and p in fixed else range(host.n)
        for h in candidates:
            if used >> h & 1 or hdeg[h] < pdeg[p]:
                continue
            row = host.adj[h]
            prow = pattern.adj[p]
            if all((row >> image[q] & 1) == (prow >> q & 1) for q in range(p)):
                image.append(h)
                used |= 1 << h
                yield from extend(p + 1)
                image.pop()
                used &= ~(1 << h)

    yield from extend(0)


def induced_subgraph_search(host, pattern):
    """First vertex map ``m`` with host[m] == pattern as induced subgraph, else None."""
    if pattern.n > host.n:
        return None
    return next(_embeddings(host, pattern), None)


def detect_twins(g):
    """First pair ``(v, v2, kind)`` with equal neighbourhoods outside the pair."""
    for v in range(g.n):
        for u in range(v + 1, g.n):
            pair = (1 << v) | (1 << u)
            if g.adj[v] & ~pair == g.adj[u] & ~pair:
                return v, u, "split" if g.has_edge(v, u) else "copy"
    return None


def automorphism_orbit_check(g):
    if g.n > 12:
        raise SizeOverflow("vertex-transitivity check limited to n <= 12", n=g.n)
    transitive = all(next(_embeddings(g, g, {0: v}), None) is not None for v in range(g.n))
    return {"vertex_transitive": transitive}


def is_isomorphic(g1, g2):
    if g1.n != g2.n or len(g1.edges()) != len(g2.edges()):
        return False
    return induced_subgraph_search(g1, g2) is not None
