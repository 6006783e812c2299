"""From an abstract support tau-tilting poset back to quiver data, and the
support/G-set equivalence test between presentations."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations

from .algebra import (BasedAlgebra, build_algebra, condition1_check, g_sets,
                      quotient_by_vertices)
from .errors import Ambiguous, CapExceeded, Condition1Violated, NotFound
from .poset import FinitePoset, _bits, popcount
from .quiver import Presentation
from .silting import DEFAULT_CAP, enumerate_sttilt


@dataclass
class QuiverSketch:
    vertices: list
    arrows: set = dc_field(default_factory=set)

    def to_dict(self) -> dict:
        return {"vertices": list(self.vertices), "arrows": [list(a) for a in sorted(self.arrows)]}

    def to_dot(self, name="Q") -> str:
        lines = ["digraph %s {" % name]
        lines += ['  "%s";' % v for v in self.vertices]
        lines += ['  "%s" -> "%s";' % (self.vertices[i], self.vertices[j]) for i, j in sorted(self.arrows)]
        lines.append("}")
        return "\n".join(lines)


class SupportOracle:
    """Atom data and top(V) elements of an abstract poset; V is a bitmask over atoms."""

    def __init__(self, P: FinitePoset, atoms=None):
        self.P = P
        if len(P) == 0:
            raise NotFound("empty poset")
        self.bottom = P.bottom()
        self.atoms = list(atoms) if atoms is not None else sorted(P.upper[self.bottom])
        self.n = len(self.atoms)
        amask = 0
        for k, x in enumerate(self.atoms):
            amask |= 1 << x
        self.above = []  # bitmask of atoms below each element
        self.clean = []  # lower covers have only the bottom as common lower bound
        for t in range(len(P)):
            a = 0
            for k, x in enumerate(self.atoms):
                if P.down[t] >> x & 1:
                    a |= 1 << k
            self.above.append(a)
            low = P.lower[t]
            if low:
                m = -1
                for c in low:
                    m &= P.down[c]
                self.clean.append(m == 1 << self.bottom)
            else:
                self.clean.append(False)
        self._top = {0: self.bottom}

    def top_of(self, V: int) -> int:
        """The element playing Lambda/(1 - e_V): above exactly the atoms in V,
        |V| lower covers, and no common lower bound of those covers but the bottom."""
        hit = self._top.get(V)
        if hit is not None:
            return hit
        k = popcount(V)
        cands = [t for t in range(len(self.P))
                 if self.above[t] == V and len(self.P.lower[t]) == k and self.clean[t]]
        if not cands:
            raise NotFound("no top element for atom set %s" % self._names(V))
        if len(cands) > 1:
            raise Ambiguous("several top elements for atom set %s" % self._names(V))
        self._top[V] = cands[0]
        return cands[0]

    def _names(self, V):
        return sorted(self.P.elements[self.atoms[k]] for k in _bits(V))

    def support(self, t: int) -> int:
        """Smallest V with t <= top(V), as the intersection of all such V."""
        full = (1 << self.n) - 1
        base = self.above[t]
        rest = full & ~base
        best = full
        sub = rest
        while True:
            V = base | sub
            try:
                top = self.top_of(V)
            except NotFound:
                top = None
            if top is not None and self.P.leq_i(t, top):
                best &= V
            if sub == 0:
                break
            sub = (sub - 1) & rest
        if not self.P.leq_i(t, self.top_of(best)):
            raise Ambiguous("supports of %r do not intersect to a support" % (self.P.elements[t],))
        return best


def pair_top_element(P: FinitePoset, i: int, j: int, atoms=None):
    """Element for the atom pair (i, j), atoms indexed in the given order."""
    if i == j:
        raise ValueError("need two distinct atoms")
    orc = SupportOracle(P, atoms)
    t = orc.top_of(1 << i | 1 << j)
    return P.elements[t]


def top_of_support(P: FinitePoset, V, atoms=None):
    orc = SupportOracle(P, atoms)
    m = 0
    for k in V:
        m |= 1 << k
    return P.elements[orc.top_of(m)]


def supports_from_poset(P: FinitePoset, atoms=None) -> dict:
    """element -> frozenset of atom indices."""
    orc = SupportOracle(P, atoms)
    return {P.elements[t]: frozenset(_bits(orc.support(t))) for t in range(len(P))}


def qstar_from_poset(P: FinitePoset, atoms=None) -> QuiverSketch:
    orc = SupportOracle(P, atoms)
    X = orc.atoms
    arrows = set()
    for i, j in combinations(range(orc.n), 2):
        t = orc.top_of(1 << i | 1 << j)
        in_i = t in P.upper[X[i]]
        in_j = t in P.upper[X[j]]
        if in_i and in_j:
            continue
        if in_j:
            arrows.add((i, j))
        elif in_i:
            arrows.add((j, i))
        else:
            arrows.update({(i, j), (j, i)})
    return QuiverSketch([P.elements[x] for x in X], arrows)


# equivalence of presentations

def _loopless(p: Presentation):
    return [(name, s, t) for name, s, t in p.quiver.arrows if s != t]


def _proj_supports(A: BasedAlgebra) -> dict:
    return {A.vertices[i]: frozenset(A.vertices[j] for j in range(A.n) if A.blocks[i, j])
            for i in range(A.n)}


def _prepare(p: Presentation, A: BasedAlgebra | None):
    A = A or build_algebra(p)
    ok, wit = condition1_check(p, A)
    if not ok:
        raise Condition1Violated("no G-path for the block %r" % (wit,))
    gs = g_sets(p, A)
    arrows = _loopless(p)
    by_pair = {}
    for name, s, t in arrows:
        by_pair.setdefault((s, t), []).append(name)
    return A, gs.all_paths(), by_pair, _proj_supports(A)


def equiv_check(p1: Presentation, p2: Presentation, A1=None, A2=None) -> dict:
    """Search vertex bijections sigma matching the loopless quivers, projective
    supports and G-sets.  Returns {"equivalent", "vertex_map", "arrow_map"} or a
    mismatch report."""
    A1, G1, pairs1, sup1 = _prepare(p1, A1)
    A2, G2, pairs2, sup2 = _prepare(p2, A2)
    v1, v2 = list(p1.quiver.vertices), list(p2.quiver.vertices)
    if len(v1) != len(v2):
        return {"equivalent": False, "reason": "vertex counts differ", "sizes": [len(v1), len(v2)]}
    mult1 = {k: len(v) for k, v in pairs1.items()}
    mult2 = {k: len(v) for k, v in pairs2.items()}
    if sorted(mult1.values()) != sorted(mult2.values()):
        return {"equivalent": False, "reason": "loopless quivers differ"}
    G2set = set(G2)
    best = {"depth": -1, "reason": "loopless quivers are not isomorphic"}
    sigma = {}
    used = set()

    def consistent(a):
        for b in sigma:
            if mult1.get((a, b), 0) != mult2.get((sigma[a], sigma[b]), 0):
                return False
            if mult1.get((b, a), 0) != mult2.get((sigma[b], sigma[a]), 0):
                return False
        return True

    def finish():
        amap = {}
        for (s, t), names in pairs1.items():
            # no multiple arrows under Condition 1, so the arrow map is forced
            for x, y in zip(sorted(names), sorted(pairs2[sigma[s], sigma[t]])):
                amap[x] = y
        for i in v1:
            if frozenset(sigma[j] for j in sup1[i]) != sup2[sigma[i]]:
                return None, {"reason": "projective supports differ", "vertex": i}
        img = {tuple(amap[a] for a in w) for w in G1}
        if img != G2set:
            return None, {"reason": "G-sets differ",
                          "only_first": sorted(map(list, img - G2set)),
                          "only_second": sorted(map(list, G2set - img))}
        return amap, None

    def search(k):
        if k == len(v1):
            amap, bad = finish()
            if amap is None:
                if best["depth"] < k:
                    best.clear()
                    best.update(bad, depth=k)
                return None
            return amap
        a = v1[k]
        for b in v2:
            if b in used:
                continue
            sigma[a] = b
            used.add(b)
            if consistent(a):
                r = search(k + 1)
                if r is not None:
                    return r
            used.discard(b)
            del sigma[a]
        return None

    amap = search(0)
    if amap is None:
        best.pop("depth", None)
        best["equivalent"] = False
        return best
    return {"equivalent": True, "vertex_map": dict(sigma), "arrow_map": amap}


# Condition 2

def _connected_partitions(verts, adj):
    """Partitions of verts into blocks connected in the undirected graph adj."""
    verts = list(verts)

    def blocks_with(v, avail):
        seen = set()
        stack = [frozenset([v])]
        while stack:
            b = stack.pop()
            if b in seen:
                continue
            seen.add(b)
            for x in b:
                for w in adj[x]:
                    if w in avail and w not in b:
                        stack.append(b | {w})
        return sorted(seen, key=lambda b: sorted(verts.index(x) for x in b))

    def rec(avail):
        if not avail:
            yield []
            return
        v = min(avail, key=verts.index)
        for b in blocks_with(v, avail):
            for rest in rec(avail - b):
                yield [b] + rest

    yield from rec(frozenset(verts))


def block_quiver(p: Presentation, mu) -> tuple:
    """(arrow count between distinct blocks, adjacency between blocks)."""
    where = {v: a for a, B in enumerate(mu) for v in B}
    count = 0
    adj = {a: set() for a in range(len(mu))}
    for _, s, t in p.quiver.arrows:
        a, b = where[s], where[t]
        if a != b:
            count += 1
            adj[a].add(b)
            adj[b].add(a)
    return count, adj


def _is_tree(p, mu) -> bool:
    count, adj = block_quiver(p, mu)
    if count != len(mu) - 1:
        return False
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(mu)


class _LatticeMemo:
    def __init__(self, A: BasedAlgebra, cap: int):
        self.A = A
        self.cap = cap
        self.memo = {}

    def lattice_on(self, keep: frozenset) -> bool:
        hit = self.memo.get(keep)
        if hit is None:
            A = self.A
            kill = [i for i in range(A.n) if A.vertices[i] not in keep]
            B = quotient_by_vertices(A, kill) if kill else A
            hit = enumerate_sttilt(B, cap=self.cap).is_lattice()
            self.memo[keep] = hit
        return hit


def condition2_holds(p: Presentation, A: BasedAlgebra, mu, cap: int = DEFAULT_CAP, memo=None) -> bool:
    mu = [frozenset(B) for B in mu]
    if not _is_tree(p, mu):
        return False
    memo = memo or _LatticeMemo(A, cap)
    if len(mu) == 1:
        return memo.lattice_on(mu[0])
    return all(memo.lattice_on(a | b) for a, b in combinations(mu, 2))


def condition2_check(p: Presentation, A: BasedAlgebra | None = None, cap: int = DEFAULT_CAP,
                     max_vertices: int = 12):
    """First partition (finest first) satisfying the block-tree and pairwise lattice tests."""
    A = A or build_algebra(p)
    verts = list(p.quiver.vertices)
    if len(verts) > max_vertices:
        raise CapExceeded("partition search limited to %d vertices" % max_vertices)
    adj = p.quiver.underlying_adjacency()
    parts = [[frozenset(b) for b in mu] for mu in _connected_partitions(verts, adj)]
    order = {v: k for k, v in enumerate(verts)}
    parts.sort(key=lambda mu: (-len(mu), sorted(sorted(order[v] for v in b) for b in mu)))
    memo = _LatticeMemo(A, cap)
    for mu in parts:
        if condition2_holds(p, A, mu, cap, memo):
            return [sorted(b, key=order.get) for b in mu]
    return None


def theta_report(p: Presentation, A: BasedAlgebra | None = None, cap: int = DEFAULT_CAP) -> dict:
    A = A or build_algebra(p)
    ok, wit = condition1_check(p, A)
    out = {"condition1": ok}
    if not ok:
        out["condition1_failure"] = list(wit)
        out["member"] = False
        return out
    mu = condition2_check(p, A, cap)
    out["condition2"] = mu is not None
    out["partition"] = mu
    out["member"] = mu is not None
    return out


def theta_membership(p: Presentation, A: BasedAlgebra | None = None, cap: int = DEFAULT_CAP) -> bool:
    return theta_report(p, A, cap)["member"]
