"""Sparse exact linear algebra over dict vectors.

Vectors are dicts mapping non-negative int coordinates to nonzero field
elements.  Every echelon row is normalised so that its pivot (the largest
coordinate it touches) has coefficient one.
"""
from __future__ import annotations

import heapq


def axpy(y: dict, a, x: dict) -> None:
    """y += a*x in place, dropping zeros."""
    for k, v in x.items():
        w = y.get(k)
        if w is None:
            y[k] = a * v
        else:
            w = w + a * v
            if w:
                y[k] = w
            else:
                del y[k]


def scale(a, x: dict) -> dict:
    if not a:
        return {}
    return {k: a * v for k, v in x.items()}


class Echelon:
    """Incremental row echelon form with optional tracking of combinations.

    With ``track=True`` each row remembers which input vectors (by tag) it is
    a combination of, so dependent inputs yield kernel vectors.
    """

    def __init__(self, track: bool = False):
        self.rows: dict[int, dict] = {}
        self.track = track
        self.combos: dict[int, dict] = {}

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self):
        return sorted(self.rows)

    def _reduce(self, v: dict, combo: dict | None):
        rows = self.rows
        heap = [-k for k in v if k in rows]
        heapq.heapify(heap)
        seen = set()
        while heap:
            k = -heapq.heappop(heap)
            if k in seen:
                continue
            seen.add(k)
            a = v.get(k)
            if a is None:
                continue
            row = rows[k]
            axpy(v, -a, row)
            if combo is not None:
                axpy(combo, -a, self.combos[k])
            for j in row:
                if j in rows and j not in seen and j in v:
                    heapq.heappush(heap, -j)
        return v, combo

    def reduce(self, v: dict) -> dict:
        """Return the normal form of v modulo the row space."""
        return self._reduce(dict(v), None)[0]

    def reduce_tracked(self, v: dict):
        """Normal form plus the combination c with v - sum(c*inputs) = normal form."""
        out, combo = self._reduce(dict(v), {})
        return out, {k: -a for k, a in combo.items()}

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)

    def add(self, v: dict, tag=None, one=None):
        """Insert v.  Returns (True, pivot) if independent, else (False, kernel_combo).

        The kernel combination is only meaningful with ``track=True``.
        """
        combo = None
        if self.track:
            combo = {tag: one}
        v, combo = self._reduce(dict(v), combo)
        if not v:
            return False, combo
        p = max(v)
        inv = 1 / v[p]
        if inv != 1:
            v = {k: inv * a for k, a in v.items()}
            if combo is not None:
                combo = {k: inv * a for k, a in combo.items()}
        self.rows[p] = v
        if combo is not None:
            self.combos[p] = combo
        return True, p

    def basis(self) -> list[dict]:
        return [self.rows[p] for p in sorted(self.rows)]


def rank_of(vectors) -> int:
    e = Echelon()
    for v in vectors:
        e.add(v)
    return e.rank


def kernel(images, one) -> list[dict]:
    """Kernel of the map sending tag t to images[t] (list or dict of vectors)."""
    e = Echelon(track=True)
    out = []
    items = images.items() if isinstance(images, dict) else enumerate(images)
    for t, v in items:
        ok, combo = e.add(v, t, one)
        if not ok:
            out.append(combo)
    return out


def same_span(a, b) -> bool:
    ea = Echelon()
    for v in a:
        ea.add(v)
    eb = Echelon()
    for v in b:
        eb.add(v)
    if ea.rank != eb.rank:
        return False
    return all(ea.contains(v) for v in b)


# small dense matrices (lists of lists) over a field

def mat_rank(m, field) -> int:
    return rank_of({j: x for j, x in enumerate(row) if x} for row in m)


def mat_mul(a, b, field):
    if not a:
        return []
    n = len(b[0]) if b else 0
    out = []
    for row in a:
        r = [field.zero] * n
        for k, x in enumerate(row):
            if x:
                for j, y in enumerate(b[k]):
                    if y:
                        r[j] = r[j] + x * y
        out.append(r)
    return out


def mat_inverse(m, field):
    """Gauss-Jordan inverse; returns None when singular."""
    n = len(m)
    a = [list(row) + [field.one if i == j else field.zero for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            return None
        a[c], a[p] = a[p], a[c]
        inv = 1 / a[c][c]
        a[c] = [inv * x for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def pivot_columns(m, field) -> list[int]:
    """Indices of a maximal set of linearly independent columns (greedy, left to right)."""
    if not m:
        return []
    cols = []
    e = Echelon()
    for j in range(len(m[0])):
        v = {i: m[i][j] for i in range(len(m)) if m[i][j]}
        ok, _ = e.add(v)
        if ok:
            cols.append(j)
    return cols
