"""Finite posets stored as Hasse quivers with bitset order closures.

Hasse edges point from the larger element to the smaller one.  ``dip(a)``
are the direct predecessors of a (upper covers) and ``dis(a)`` the direct
successors (lower covers).
"""
from __future__ import annotations

from itertools import combinations

from .errors import CycleDetected, KeyNotRealized, NotLattice, PairingFailed


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


class FinitePoset:
    def __init__(self, elements, hasse):
        self.elements = list(elements)
        self.idx = {x: i for i, x in enumerate(self.elements)}
        if len(self.idx) != len(self.elements):
            raise ValueError("duplicate element ids")
        n = len(self.elements)
        self.upper = [[] for _ in range(n)]
        self.lower = [[] for _ in range(n)]
        edges = set()
        for a, b in hasse:
            ia, ib = self.idx[a], self.idx[b]
            if (ia, ib) in edges:
                continue
            edges.add((ia, ib))
            self.lower[ia].append(ib)
            self.upper[ib].append(ia)
        for lst in self.upper + self.lower:
            lst.sort()
        self._edges = sorted(edges)
        self._closure()

    def _closure(self):
        n = len(self.elements)
        indeg = [len(self.lower[i]) for i in range(n)]
        order = [i for i in range(n) if indeg[i] == 0]
        down = [0] * n
        k = 0
        while k < len(order):
            i = order[k]
            k += 1
            m = 1 << i
            for c in self.lower[i]:
                m |= down[c]
            down[i] = m
            for u in self.upper[i]:
                indeg[u] -= 1
                if indeg[u] == 0:
                    order.append(u)
        if len(order) != n:
            raise CycleDetected("Hasse data contains a directed cycle")
        up = [0] * n
        for i in reversed(order):
            m = 1 << i
            for u in self.upper[i]:
                m |= up[u]
            up[i] = m
        self.down, self.up = down, up
        self.topo = order  # bottom first

    # basic queries

    def __len__(self):
        return len(self.elements)

    @property
    def hasse(self) -> list:
        return [(self.elements[a], self.elements[b]) for a, b in self._edges]

    def edge_indices(self) -> list:
        return list(self._edges)

    def leq(self, a, b) -> bool:
        return bool(self.down[self.idx[b]] >> self.idx[a] & 1)

    def leq_i(self, i, j) -> bool:
        return bool(self.down[j] >> i & 1)

    def dip(self, a) -> list:
        return [self.elements[i] for i in self.upper[self.idx[a]]]

    def dis(self, a) -> list:
        return [self.elements[i] for i in self.lower[self.idx[a]]]

    def comparable_pairs(self) -> int:
        return sum(popcount(m) - 1 for m in self.down)

    def minimals(self) -> list:
        return [i for i in range(len(self)) if not self.lower[i]]

    def maximals(self) -> list:
        return [i for i in range(len(self)) if not self.upper[i]]

    def bottom(self):
        m = self.minimals()
        return m[0] if len(m) == 1 else None

    def top(self):
        m = self.maximals()
        return m[0] if len(m) == 1 else None

    def is_connected(self) -> bool:
        if not self.elements:
            return True
        seen = {0}
        stack = [0]
        while stack:
            i = stack.pop()
            for j in self.upper[i] + self.lower[i]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
        return len(seen) == len(self)

    def interval_mask(self, i, j) -> int:
        """Indices in [i, j] as a bitset."""
        return self.up[i] & self.down[j]

    def interval_size(self, i, j) -> int:
        return popcount(self.interval_mask(i, j))

    def is_regular(self, n: int) -> bool:
        return all(len(self.upper[i]) + len(self.lower[i]) == n for i in range(len(self)))

    def degree_counts(self) -> dict:
        out = {}
        for i in range(len(self)):
            d = len(self.upper[i]) + len(self.lower[i])
            out[d] = out.get(d, 0) + 1
        return out

    # lattice operations (indices)

    def join_i(self, i, j):
        ub = self.up[i] & self.up[j]
        mins = [k for k in _bits(ub) if self.down[k] & ub == 1 << k]
        return mins[0] if len(mins) == 1 else None

    def meet_i(self, i, j):
        lb = self.down[i] & self.down[j]
        maxs = [k for k in _bits(lb) if self.up[k] & lb == 1 << k]
        return maxs[0] if len(maxs) == 1 else None

    def join(self, a, b):
        k = self.join_i(self.idx[a], self.idx[b])
        if k is None:
            raise NotLattice("no join", (a, b))
        return self.elements[k]

    def meet(self, a, b):
        k = self.meet_i(self.idx[a], self.idx[b])
        if k is None:
            raise NotLattice("no meet", (a, b))
        return self.elements[k]

    def join_all(self, idxs):
        idxs = list(idxs)
        if not idxs:
            return self.bottom()
        cur = idxs[0]
        for j in idxs[1:]:
            cur = self.join_i(cur, j)
            if cur is None:
                return None
        return cur

    def meet_all(self, idxs):
        idxs = list(idxs)
        if not idxs:
            return self.top()
        cur = idxs[0]
        for j in idxs[1:]:
            cur = self.meet_i(cur, j)
            if cur is None:
                return None
        return cur

    def lattice_witness(self):
        """None if the poset is a lattice, else a pair without join (or meet)."""
        if not self.elements:
            return ("empty", "empty")
        if self.bottom() is None or self.top() is None:
            ext = self.minimals() if self.bottom() is None else self.maximals()
            return (self.elements[ext[0]], self.elements[ext[1]])
        for i, j in combinations(range(len(self)), 2):
            if self.join_i(i, j) is None:
                return (self.elements[i], self.elements[j])
        return None

    def is_lattice(self) -> bool:
        return self.lattice_witness() is None

    def check_lattice(self):
        w = self.lattice_witness()
        if w is not None:
            raise NotLattice("pair %r has no join" % (w,), w)

    # derived posets

    def subposet(self, mask_or_ids) -> "FinitePoset":
        if isinstance(mask_or_ids, int):
            ids = list(_bits(mask_or_ids))
        else:
            ids = sorted(self.idx[x] for x in mask_or_ids)
        S = 0
        for i in ids:
            S |= 1 << i
        edges = []
        for i in ids:
            below = self.down[i] & S & ~(1 << i)
            for j in _bits(below):
                if (self.up[j] & below) == 1 << j:
                    edges.append((self.elements[i], self.elements[j]))
        return FinitePoset([self.elements[i] for i in ids], edges)

    def dual(self) -> "FinitePoset":
        return FinitePoset(self.elements, [(b, a) for a, b in self.hasse])

    def relabel(self, f) -> "FinitePoset":
        return FinitePoset([f(x) for x in self.elements], [(f(a), f(b)) for a, b in self.hasse])

    def to_dict(self) -> dict:
        return {"elements": list(self.elements), "hasse": [list(e) for e in self.hasse]}

    @classmethod
    def from_dict(cls, d) -> "FinitePoset":
        return cls(d["elements"], [tuple(e) for e in d["hasse"]])

    def __repr__(self):
        return "FinitePoset(%d elements, %d covers)" % (len(self), len(self._edges))


def order_from_hasse(P: FinitePoset) -> set:
    """Strict order relation {(a, b) : a > b} as element pairs."""
    out = set()
    for i in range(len(P)):
        for j in _bits(P.down[i] & ~(1 << i)):
            out.add((P.elements[i], P.elements[j]))
    return out


def hasse_from_order(elements, greater_pairs) -> FinitePoset:
    """Transitive reduction of a strict order given as pairs (a, b) with a > b."""
    elements = list(elements)
    idx = {x: i for i, x in enumerate(elements)}
    n = len(elements)
    below = [0] * n
    for a, b in greater_pairs:
        if a == b:
            raise CycleDetected("reflexive pair %r" % (a,))
        below[idx[a]] |= 1 << idx[b]
    # transitive closure, detecting cycles
    changed = True
    while changed:
        changed = False
        for i in range(n):
            m = below[i]
            acc = m
            for j in _bits(m):
                acc |= below[j]
            if acc != m:
                below[i] = acc
                changed = True
            if acc >> i & 1:
                raise CycleDetected("order relation is cyclic at %r" % (elements[i],))
    edges = []
    for i in range(n):
        S = below[i]
        for j in _bits(S):
            if not any(below[k] >> j & 1 for k in _bits(S)):
                edges.append((elements[i], elements[j]))
    return FinitePoset(elements, edges)


def chain(k: int) -> FinitePoset:
    return FinitePoset(list(range(k)), [(i + 1, i) for i in range(k - 1)])


def boolean_lattice(m: int) -> FinitePoset:
    """B_m = {0<1}^m; elements are bitmasks."""
    els = list(range(1 << m))
    edges = [(x, x & ~(1 << b)) for x in els for b in range(m) if x >> b & 1]
    return FinitePoset(els, edges)


def product(P: FinitePoset, Q: FinitePoset) -> FinitePoset:
    els = [(a, b) for a in P.elements for b in Q.elements]
    edges = [((a, b), (c, b)) for a, c in P.hasse for b in Q.elements]
    edges += [((a, b), (a, c)) for b, c in Q.hasse for a in P.elements]
    return FinitePoset(els, edges)


# atoms, coatoms and the realisability test

def atoms_coatoms(P: FinitePoset, atoms=None):
    """(atoms X_1..X_n, coatoms Z_1..Z_n) as index lists, Z_i paired with X_i.

    Z_i is the coatom lying above every X_k with k != i.
    """
    lo, hi = P.bottom(), P.top()
    if lo is None or hi is None:
        raise PairingFailed("poset needs a unique minimum and maximum")
    X = list(atoms) if atoms is not None else list(P.upper[lo])
    coat = list(P.lower[hi])
    if len(X) != len(coat):
        raise PairingFailed("%d atoms but %d coatoms" % (len(X), len(coat)))
    if len(X) == 1:
        return X, coat
    Z = []
    for i in range(len(X)):
        hits = [z for z in coat if all(P.leq_i(X[k], z) for k in range(len(X)) if k != i)]
        if len(hits) != 1:
            raise PairingFailed("coatom for atom %r is %s" % (P.elements[X[i]], "ambiguous" if hits else "missing"))
        Z.append(hits[0])
    if len(set(Z)) != len(Z):
        raise PairingFailed("coatom pairing is not a bijection")
    return X, Z


def realizability_obstruction(P: FinitePoset, atoms=None) -> dict:
    """Compare bottom intervals [min, X_i v X_j] with top intervals [Z_i ^ Z_j, max] pair by pair."""
    X, Z = atoms_coatoms(P, atoms)
    lo, hi = P.bottom(), P.top()
    bottom, topc = {}, {}
    for i, j in combinations(range(len(X)), 2):
        jn = P.join_i(X[i], X[j])
        mt = P.meet_i(Z[i], Z[j])
        bottom[i, j] = P.interval_size(lo, jn) if jn is not None else None
        topc[i, j] = P.interval_size(mt, hi) if mt is not None else None
    mismatches = [k for k in bottom if bottom[k] != topc[k]]

    def count(d, s):
        return sum(1 for v in d.values() if v == s)

    sizes = sorted({v for v in list(bottom.values()) + list(topc.values()) if v is not None})
    return {
        "passed": not mismatches,
        "bottom": bottom,
        "top": topc,
        "mismatches": mismatches,
        "counts": {s: (count(bottom, s), count(topc, s)) for s in sizes},
        "bottom_size6": count(bottom, 6),
        "top_size6": count(topc, 6),
    }


# forks and keys on labelled posets (elements carry summand keys)

def key_filter(P: FinitePoset, keys, key) -> int:
    """Bitset of elements whose key contains the given key."""
    key = set(key)
    m = 0
    for i in range(len(P)):
        if key <= set(keys[i]):
            m |= 1 << i
    return m


def _min_max_of(P: FinitePoset, mask: int):
    mins = [k for k in _bits(mask) if P.down[k] & mask == 1 << k]
    maxs = [k for k in _bits(mask) if P.up[k] & mask == 1 << k]
    return mins, maxs


def stmin(P: FinitePoset, keys, key) -> int:
    mask = key_filter(P, keys, key)
    if not mask:
        raise KeyNotRealized("no element contains %r" % (sorted(key),))
    mins, _ = _min_max_of(P, mask)
    if len(mins) != 1:
        raise KeyNotRealized("filter has %d minimal elements" % len(mins))
    return mins[0]


def stmax(P: FinitePoset, keys, key) -> int:
    mask = key_filter(P, keys, key)
    if not mask:
        raise KeyNotRealized("no element contains %r" % (sorted(key),))
    _, maxs = _min_max_of(P, mask)
    if len(maxs) != 1:
        raise KeyNotRealized("filter has %d maximal elements" % len(maxs))
    return maxs[0]


def kappa(P: FinitePoset, keys, base: int, prongs) -> frozenset:
    """Common summands of a fork's base and prongs."""
    out = set(keys[base])
    for p in prongs:
        if p not in P.upper[base] and p not in P.lower[base]:
            raise ValueError("prong %r is not a Hasse neighbour of the base" % (P.elements[p],))
        out &= set(keys[p])
    return frozenset(out)


def upsilon(P: FinitePoset, keys, key, sign: int = 1):
    """Fork (base, prongs) attached to a key: at stmin for sign +1, at stmax for -1."""
    mask = key_filter(P, keys, key)
    if sign > 0:
        base = stmin(P, keys, key)
        prongs = [u for u in P.upper[base] if mask >> u & 1]
    else:
        base = stmax(P, keys, key)
        prongs = [u for u in P.lower[base] if mask >> u & 1]
    return base, sorted(prongs)


def sttilt_filter(P: FinitePoset, keys, key) -> FinitePoset:
    """Sub-poset of elements containing key; checked to be a strongly full interval."""
    mask = key_filter(P, keys, key)
    lo = stmin(P, keys, key)
    hi = stmax(P, keys, key)
    if P.interval_mask(lo, hi) != mask:
        raise KeyNotRealized("filter is not the interval [stmin, stmax]")
    sub = P.subposet(mask)
    ambient = {(a, b) for a, b in P.hasse if mask >> P.idx[a] & 1 and mask >> P.idx[b] & 1}
    if set(sub.hasse) != ambient:
        raise KeyNotRealized("filter is not a full subquiver of the Hasse quiver")
    return sub


def forks(P: FinitePoset, sign: int = 1):
    """All forks (base, prongs) with at least one prong."""
    for b in range(len(P)):
        nb = P.upper[b] if sign > 0 else P.lower[b]
        for r in range(1, len(nb) + 1):
            for pr in combinations(nb, r):
                yield b, list(pr)
