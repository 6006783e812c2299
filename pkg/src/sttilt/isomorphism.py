"""Poset isomorphism search: colour refinement followed by backtracking."""
from __future__ import annotations

from .poset import FinitePoset, popcount


def _heights(P: FinitePoset):
    h = [0] * len(P)
    for i in P.topo:
        h[i] = max((h[c] + 1 for c in P.lower[i]), default=0)
    d = [0] * len(P)
    for i in reversed(P.topo):
        d[i] = max((d[u] + 1 for u in P.upper[i]), default=0)
    return h, d


def refine_colours(posets) -> list:
    """Joint stable colouring of several posets; returns one colour list per poset."""
    cols = []
    for P in posets:
        h, d = _heights(P)
        cols.append([(h[i], d[i], len(P.upper[i]), len(P.lower[i]), popcount(P.up[i]), popcount(P.down[i]))
                     for i in range(len(P))])
    cols = _compress(cols)
    nclasses = len({c for cl in cols for c in cl})
    while True:
        sigs = []
        for P, cl in zip(posets, cols):
            sigs.append([(cl[i], tuple(sorted(cl[u] for u in P.upper[i])), tuple(sorted(cl[c] for c in P.lower[i])))
                         for i in range(len(P))])
        new = _compress(sigs)
        k = len({c for cl in new for c in cl})
        cols = new
        if k == nclasses:
            return cols
        nclasses = k


def _compress(sig_lists):
    table = {s: k for k, s in enumerate(sorted({s for sl in sig_lists for s in sl}))}
    return [[table[s] for s in sl] for sl in sig_lists]


def iter_isomorphisms(P1: FinitePoset, P2: FinitePoset):
    """Yield index maps f (list, f[i] in P2) that are order isomorphisms, in lexicographic order."""
    n = len(P1)
    if n != len(P2) or len(P1.edge_indices()) != len(P2.edge_indices()):
        return
    c1, c2 = refine_colours([P1, P2])
    if sorted(c1) != sorted(c2):
        return
    by_col = {}
    for j in range(n):
        by_col.setdefault(c2[j], []).append(j)
    # visit P1 in an order that keeps each new element adjacent to assigned ones when possible
    order = []
    placed = set()
    start_order = sorted(range(n), key=lambda i: (len(by_col[c1[i]]), i))
    for s in start_order:
        if s in placed:
            continue
        queue = [s]
        placed.add(s)
        while queue:
            i = queue.pop(0)
            order.append(i)
            for j in sorted(P1.upper[i] + P1.lower[i], key=lambda j: (len(by_col[c1[j]]), j)):
                if j not in placed:
                    placed.add(j)
                    queue.append(j)
    f = [None] * n
    used = [False] * n

    def ok(i, j):
        for k in range(n):
            fk = f[k]
            if fk is None:
                continue
            if P1.leq_i(k, i) != P2.leq_i(fk, j) or P1.leq_i(i, k) != P2.leq_i(j, fk):
                return False
        return True

    def rec(pos):
        if pos == n:
            yield list(f)
            return
        i = order[pos]
        for j in by_col[c1[i]]:
            if used[j] or not ok(i, j):
                continue
            f[i] = j
            used[j] = True
            yield from rec(pos + 1)
            f[i] = None
            used[j] = False

    yield from rec(0)


def poset_isomorphisms(P1: FinitePoset, P2: FinitePoset, limit: int | None = None) -> list:
    """Isomorphisms as dicts element -> element; empty when not isomorphic."""
    out = []
    for f in iter_isomorphisms(P1, P2):
        out.append({P1.elements[i]: P2.elements[f[i]] for i in range(len(P1))})
        if limit is not None and len(out) >= limit:
            break
    out.sort(key=lambda m: [str(m[x]) for x in P1.elements])
    return out


def find_isomorphism(P1: FinitePoset, P2: FinitePoset):
    for f in iter_isomorphisms(P1, P2):
        return {P1.elements[i]: P2.elements[f[i]] for i in range(len(P1))}
    return None


def is_isomorphic(P1, P2) -> bool:
    return find_isomorphism(P1, P2) is not None


def is_anti_isomorphic(P1, P2) -> bool:
    return find_isomorphism(P1, P2.dual()) is not None


def _compose(p, q):
    return tuple(p[q[i]] for i in range(len(q)))


def automorphism_group(P: FinitePoset):
    """(generators as index tuples, group order)."""
    autos = [tuple(f) for f in iter_isomorphisms(P, P)]
    identity = tuple(range(len(P)))
    gens = []
    group = {identity}
    for a in autos:
        if a in group:
            continue
        gens.append(a)
        frontier = list(group)
        while frontier:
            nxt = []
            for g in frontier:
                for s in gens:
                    h = _compose(s, g)
                    if h not in group:
                        group.add(h)
                        nxt.append(h)
            frontier = nxt
    return gens, len(autos)
