"""Two-term silting objects, left mutation and the support tau-tilting poset."""
from __future__ import annotations

import threading
from collections import Counter
from concurrent.futures import ThreadPoolExecutor

from .complexes import (
    ChainMap,
    TwoTermComplex,
    cone,
    direct_sum,
    endomorphism_top_rank,
    hom_k_basis,
    hom_shift1_vanishes,
    minimize_complex,
    stalk,
    strip_summand,
)
from .errors import CapExceeded, NotTwoTermReducible, SplitFailure
from .poset import FinitePoset

DEFAULT_CAP = 100000


def g_vector(T: TwoTermComplex) -> tuple:
    return T.g_vector()


class SiltingObject:
    """Basic two-term silting complex as a tuple of indecomposable summands sorted by g-vector."""

    __slots__ = ("summands", "key", "_support")

    def __init__(self, summands):
        self.summands = tuple(sorted(summands, key=lambda X: X.g_vector()))
        self.key = tuple(X.g_vector() for X in self.summands)
        self._support = None

    @property
    def algebra(self):
        return self.summands[0].algebra

    def __len__(self):
        return len(self.summands)

    def complex(self) -> TwoTermComplex:
        return direct_sum(self.summands)

    def support(self) -> frozenset:
        if self._support is None:
            self._support = support_of(self)
        return self._support

    def __repr__(self):
        return "SiltingObject(%r)" % (self.key,)


def projective_object(A) -> SiltingObject:
    return SiltingObject([stalk(A, i) for i in range(A.n)])


def shifted_object(A) -> SiltingObject:
    return SiltingObject([stalk(A, i, shifted=True) for i in range(A.n)])


def support_of(T) -> frozenset:
    """Vertex indices not carried by a summand [P_i -> 0]."""
    summands = T.summands if isinstance(T, SiltingObject) else T
    A = summands[0].algebra
    dead = {X.p1[0] for X in summands if not X.p0 and len(X.p1) == 1}
    return frozenset(i for i in range(A.n) if i not in dead)


def is_presilting(T) -> bool:
    C = T.complex() if isinstance(T, SiltingObject) else (direct_sum(T) if isinstance(T, (list, tuple)) else T)
    return hom_shift1_vanishes(C, C)


def is_indecomposable(X: TwoTermComplex) -> bool:
    """Certified through a one-dimensional semisimple quotient of End(X)."""
    if X.is_zero():
        return False
    _, ss = endomorphism_top_rank(X)
    if ss == 1:
        return True
    raise SplitFailure("End(%r)/rad has dimension %d over the ground field" % (X, ss))


def is_silting(T) -> bool:
    summands = T.summands if isinstance(T, SiltingObject) else list(T)
    if not summands:
        return False
    A = summands[0].algebra
    if len(summands) != A.n:
        return False
    if not all(is_indecomposable(X) for X in summands):
        return False
    if len({X.g_vector() for X in summands}) != len(summands):
        return False
    return is_presilting(summands)


class MutationEngine:
    """Left mutation with caches keyed by g-vectors (valid by g-vector injectivity)."""

    def __init__(self, A):
        self.A = A
        self.registry = {}
        self._hom = {}
        self._shift = {}
        self._lock = threading.Lock()
        for i in range(A.n):
            for X in (stalk(A, i), stalk(A, i, shifted=True)):
                self.registry[X.g_vector()] = X

    def summand(self, g) -> TwoTermComplex:
        return self.registry[g]

    def hom_reps(self, X: TwoTermComplex, Y: TwoTermComplex):
        key = (X.g_vector(), Y.g_vector())
        hit = self._hom.get(key)
        if hit is None:
            hit = hom_k_basis(X, Y)
            self._hom[key] = hit
        return hit

    def shift_vanishes(self, X, Y) -> bool:
        key = (X.g_vector(), Y.g_vector())
        hit = self._shift.get(key)
        if hit is None:
            hit = hom_shift1_vanishes(X, Y)
            self._shift[key] = hit
        return hit

    def left_mutation(self, T: SiltingObject, k: int):
        """Left mutation at summand k; None when the result leaves the two-term range."""
        A = self.A
        Tk = T.summands[k]
        if not Tk.p0:
            return None
        others = [X for j, X in enumerate(T.summands) if j != k]
        parts = []
        f0, f1 = {}, {}
        r0 = c0 = 0
        for X in others:
            for f in self.hom_reps(Tk, X):
                for (r, c), x in f.f0.items():
                    f0[r + r0, c] = x
                for (r, c), x in f.f1.items():
                    f1[r + c0, c] = x
                parts.append(X)
                r0 += len(X.p0)
                c0 += len(X.p1)
        if parts:
            B = direct_sum(parts)
        else:
            B = TwoTermComplex(A, (), (), {})
        C = minimize_complex(cone(Tk, B, ChainMap(f0, f1)))
        try:
            Y = C.to_two_term()
        except NotTwoTermReducible:
            return None
        for X in others:
            _, Y = strip_summand(Y, X)
        if Y.is_zero():
            raise SplitFailure("mutation complement vanished at summand %d of %r" % (k, T))
        g = Y.g_vector()
        with self._lock:
            known = self.registry.get(g)
            if known is None:
                if not is_indecomposable(Y):
                    raise SplitFailure("mutation complement %r is decomposable" % (Y,))
                self.registry[g] = Y
                known = Y
        return SiltingObject(others + [known])


def left_mutation(T: SiltingObject, k: int, engine: MutationEngine | None = None):
    engine = engine or MutationEngine(T.algebra)
    return engine.left_mutation(T, k)


class LabeledSttiltPoset(FinitePoset):
    """Support tau-tilting poset whose elements carry silting objects."""

    def __init__(self, algebra, objects, hasse_idx, engine=None):
        self.algebra = algebra
        self.objects = list(objects)
        self.keys = [T.key for T in self.objects]
        self.engine = engine
        super().__init__(list(range(len(self.objects))), hasse_idx)
        self.supports = [T.support() for T in self.objects]

    def summand_keys(self):
        return [set(k) for k in self.keys]

    def atoms_by_support(self) -> list:
        """Atoms X_i sorted by the vertex i of their support."""
        lo = self.bottom()
        at = list(self.upper[lo])
        return sorted(at, key=lambda a: min(self.supports[a]))

    def element_of_key(self, key):
        key = tuple(sorted(key))
        for i, k in enumerate(self.keys):
            if k == key:
                return i
        return None


def enumerate_sttilt(A, cap: int = DEFAULT_CAP, jobs: int = 1, engine: MutationEngine | None = None) -> LabeledSttiltPoset:
    """Breadth-first search by left mutation from the projective object."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    engine = engine or MutationEngine(A)
    start = projective_object(A)
    seen = {start.key: start}
    edges = set()
    # for an almost complete object, the complement that sits on the lower side
    lower_side = {}
    frontier = [start]

    def expand(T):
        out = []
        for k in range(len(T)):
            rest = T.key[:k] + T.key[k + 1:]
            if lower_side.get(rest) == T.key[k]:
                continue
            U = engine.left_mutation(T, k)
            if U is not None:
                out.append((k, U))
        return T, out

    pool = ThreadPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        while frontier:
            if pool is not None:
                results = list(pool.map(expand, frontier))
            else:
                results = [expand(T) for T in frontier]
            nxt = []
            for T, outs in results:
                for k, U in outs:
                    rest = T.key[:k] + T.key[k + 1:]
                    lower_side[rest] = (Counter(U.key) - Counter(rest)).most_common(1)[0][0]
                    if U.key not in seen:
                        seen[U.key] = U
                        if len(seen) > cap:
                            raise CapExceeded("more than %d support tau-tilting elements" % cap)
                        nxt.append(U)
                    edges.add((T.key, U.key))
            nxt.sort(key=lambda X: X.key)
            frontier = nxt
    finally:
        if pool is not None:
            pool.shutdown()
    keys = sorted(seen)
    pos = {k: i for i, k in enumerate(keys)}
    objects = [seen[k] for k in keys]
    hasse = sorted((pos[a], pos[b]) for a, b in edges)
    return LabeledSttiltPoset(A, objects, hasse, engine)


def order_by_hom(P: LabeledSttiltPoset) -> set:
    """All pairs (a, b), a != b, with T_a >= T_b by Hom(T_a, T_b[1]) = 0."""
    eng = P.engine or MutationEngine(P.algebra)
    out = set()
    for a, Ta in enumerate(P.objects):
        for b, Tb in enumerate(P.objects):
            if a == b:
                continue
            if all(eng.shift_vanishes(X, Y) for X in Ta.summands for Y in Tb.summands):
                out.add((a, b))
    return out


def qf_tree_check(T: TwoTermComplex) -> bool:
    """Is the bipartite quiver of nonzero differential entries a tree?"""
    nodes = len(T.p0) + len(T.p1)
    if nodes == 0:
        return False
    edges = [(("0", r), ("1", c)) for (r, c) in T.d]
    if len(edges) != nodes - 1:
        return False
    adj = {}
    for a, b in edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    start = ("0", 0) if T.p0 else ("1", 0)
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adj.get(v, []):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == nodes
