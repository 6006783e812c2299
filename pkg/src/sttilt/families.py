"""Presentations of the standard algebra families and the stored fixture posets."""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field as dc_field
from importlib import resources

from .errors import InvalidSpec
from .fields import QQ
from .poset import FinitePoset, boolean_lattice
from .quiver import Presentation, Quiver, parse_relation

VARIANTS = ("nakayama-cyclic", "nakayama-linear", "preprojective-A", "brauer-tree",
            "two-point", "figure1", "tree-quiver")
FIXTURES = ("P", "B", "section34-P", "section5-P")


@dataclass
class FamilySpec:
    variant: str
    params: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise InvalidSpec("unknown family %r" % (self.variant,))

    @classmethod
    def from_dict(cls, d: dict) -> "FamilySpec":
        d = dict(d)
        try:
            v = d.pop("variant")
        except KeyError:
            raise InvalidSpec("family spec needs a 'variant'") from None
        return cls(v, d.get("params", d))

    def to_dict(self) -> dict:
        return {"variant": self.variant, "params": self.params}


@dataclass
class FixtureSpec:
    name: str
    params: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if self.name not in FIXTURES:
            raise InvalidSpec("unknown fixture %r" % (self.name,))


# data files

def _data_bytes(name: str) -> bytes:
    return resources.files("sttilt").joinpath("data").joinpath(name).read_bytes()


def load_data(name: str):
    """Load a bundled JSON file after checking its recorded sha256."""
    sums = json.loads(_data_bytes("checksums.json"))
    raw = _data_bytes(name)
    digest = hashlib.sha256(raw).hexdigest()
    if sums.get(name) != digest:
        raise InvalidSpec("checksum mismatch for data file %s" % name)
    return json.loads(raw)


# helpers

def _int(params, key, lo=None, default=None):
    v = params.get(key, default)
    if v is None:
        raise InvalidSpec("missing parameter %r" % key)
    if not isinstance(v, int) or isinstance(v, bool):
        raise InvalidSpec("parameter %r must be an integer" % key)
    if lo is not None and v < lo:
        raise InvalidSpec("parameter %r must be >= %d" % (key, lo))
    return v


def _mono(path):
    return [(QQ.one, tuple(path))]


def _pres(vertices, arrows, rels, name):
    return Presentation(Quiver(vertices, arrows), rels, name=name)


# families

def two_point(l: int, lp: int) -> Presentation:
    if l < 1 or lp < 1:
        raise InvalidSpec("two-point parameters must be >= 1")
    arrows = []
    a = []
    b = []
    if l >= 2:
        a = ["a0"] + ["a%d" % i for i in range(1, l - 1)]
        arrows.append(("a0", 1, 2))
        arrows += [("a%d" % i, 1, 1) for i in range(1, l - 1)]
    if lp >= 2:
        b = ["b0"] + ["b%d" % i for i in range(1, lp - 1)]
        arrows.append(("b0", 2, 1))
        arrows += [("b%d" % i, 2, 2) for i in range(1, lp - 1)]
    q = Quiver([1, 2], arrows)
    ends = q.arrow_map()
    rels = []

    def add(x, y):
        if ends[x][1] == ends[y][0]:
            rels.append(_mono((x, y)))

    for xs in (a, b):
        for i, x in enumerate(xs):
            for j, y in enumerate(xs):
                if i - j != 1:
                    add(x, y)
    for x in a:
        for y in b:
            add(x, y)
            add(y, x)
    return Presentation(q, rels, name="two-point(%d,%d)" % (l, lp))


def _kupisch(params, n, cyclic):
    if "kupisch" in params:
        c = list(params["kupisch"])
        if len(c) != n or not all(isinstance(x, int) for x in c):
            raise InvalidSpec("kupisch list must have one integer per vertex")
    else:
        l = _int(params, "length", 2)
        c = [l] * n if cyclic else [min(l, n - i) for i in range(n)]
    for i in range(n):
        lim = 1 if (not cyclic and i == n - 1) else 2
        if c[i] < lim:
            raise InvalidSpec("Loewy length at vertex %d too small" % (i + 1))
        if not cyclic and c[i] > n - i:
            raise InvalidSpec("Loewy length at vertex %d exceeds the quiver" % (i + 1))
        nxt = i + 1
        if nxt < n or cyclic:
            if c[nxt % n] < c[i] - 1:
                raise InvalidSpec("kupisch series must satisfy c[i+1] >= c[i] - 1")
    return c


def nakayama_cyclic(n: int, length: int | None = None, kupisch=None) -> Presentation:
    if n < 1:
        raise InvalidSpec("need at least one vertex")
    params = {"kupisch": kupisch} if kupisch is not None else {"length": length}
    c = _kupisch(params, n, True)
    arrows = [("x%d" % i, i, i % n + 1) for i in range(1, n + 1)]
    rels = []
    for i in range(1, n + 1):
        path = tuple("x%d" % ((i - 1 + t) % n + 1) for t in range(c[i - 1]))
        rels.append(_mono(path))
    name = "nakayama-cyclic(%d,%s)" % (n, length if kupisch is None else list(kupisch))
    return _pres(range(1, n + 1), arrows, rels, name)


def nakayama_linear(n: int, length: int | None = None, kupisch=None) -> Presentation:
    if n < 1:
        raise InvalidSpec("need at least one vertex")
    params = {"kupisch": kupisch} if kupisch is not None else {"length": length}
    c = _kupisch(params, n, False)
    arrows = [("x%d" % i, i, i + 1) for i in range(1, n)]
    rels = []
    for i in range(1, n + 1):
        if i - 1 + c[i - 1] <= n - 1:
            rels.append(_mono(tuple("x%d" % (i + t) for t in range(c[i - 1]))))
    name = "nakayama-linear(%d,%s)" % (n, length if kupisch is None else list(kupisch))
    return _pres(range(1, n + 1), arrows, rels, name)


def preprojective_a(n: int) -> Presentation:
    if n < 1:
        raise InvalidSpec("need at least one vertex")
    arrows = []
    for i in range(1, n):
        arrows += [("a%d" % i, i, i + 1), ("a%d*" % i, i + 1, i)]
    rels = []
    if n >= 2:
        rels.append(_mono(("a1", "a1*")))
        for i in range(1, n - 1):
            rels.append([(QQ.one, ("a%d*" % i, "a%d" % i)),
                         (-QQ.one, ("a%d" % (i + 1), "a%d*" % (i + 1)))])
        rels.append(_mono(("a%d*" % (n - 1), "a%d" % (n - 1))))
    return _pres(range(1, n + 1), arrows, rels, "preprojective-A(%d)" % n)


def _check_tree(vertices, edges):
    vs = list(vertices)
    if len(edges) != len(vs) - 1:
        return False
    q = Quiver(vs, [("e%d" % k, u, v) for k, (u, v) in enumerate(edges)])
    return q.is_connected()


def tree_quiver(vertices, arrows) -> Presentation:
    """Path algebra of a quiver whose underlying graph is a tree."""
    arr = []
    for k, a in enumerate(arrows):
        if len(a) == 2:
            arr.append(("t%d" % (k + 1), a[0], a[1]))
        else:
            arr.append(tuple(a))
    if not _check_tree(vertices, [(s, t) for _, s, t in arr]):
        raise InvalidSpec("underlying graph is not a tree")
    return _pres(vertices, arr, [], "tree-quiver")


class BrauerTree:
    """Tree with multiplicities and a cyclic ordering of the edges at each vertex.

    Algebra vertices are the edges, numbered 1..#edges in input order.
    """

    def __init__(self, edges, multiplicity=None, orders=None):
        self.edges = [tuple(e) for e in edges]
        tv = []
        for e in self.edges:
            if len(e) != 2 or e[0] == e[1]:
                raise InvalidSpec("bad tree edge %r" % (e,))
            for x in e:
                if x not in tv:
                    tv.append(x)
        self.tree_vertices = tv
        if len(self.edges) < 2:
            raise InvalidSpec("a Brauer tree needs at least two edges")
        if not _check_tree(tv, self.edges):
            raise InvalidSpec("edges do not form a tree")
        mult = {v: 1 for v in tv}
        for k, m in (multiplicity or {}).items():
            k = _match_key(k, tv)
            if not isinstance(m, int) or m < 1:
                raise InvalidSpec("multiplicities must be positive integers")
            mult[k] = m
        self.mult = mult
        inc = {v: [i + 1 for i, e in enumerate(self.edges) if v in e] for v in tv}
        self.orders = {}
        for v in tv:
            o = list((orders or {}).get(v, (orders or {}).get(str(v), inc[v])))
            if sorted(o) != inc[v]:
                raise InvalidSpec("cyclic order at %r must list its incident edges" % (v,))
            self.orders[v] = o

    def other_end(self, i, u):
        a, b = self.edges[i - 1]
        return b if a == u else a

    def cycle(self, u, i):
        """Arrow names of the cycle around u starting at edge i (empty if none)."""
        o = self.orders[u]
        r = len(o)
        if r == 1:
            return ["l%s_%d" % (u, i)] if self.mult[u] >= 2 else []
        k = o.index(i)
        return [self._arrow(u, o[(k + t) % r], o[(k + t + 1) % r]) for t in range(r)]

    @staticmethod
    def _arrow(u, i, j):
        return "x%s_%d_%d" % (u, i, j)

    def arrows(self):
        out = []
        for u in self.tree_vertices:
            o = self.orders[u]
            if len(o) >= 2:
                out += [(self._arrow(u, o[k], o[(k + 1) % len(o)]), o[k], o[(k + 1) % len(o)])
                        for k in range(len(o))]
        for u, info in leaf_loop_policy(self).items():
            out.append((info["arrow"], info["edge"], info["edge"]))
        return out

    def presentation(self) -> Presentation:
        arrows = self.arrows()
        owner = {}
        for u in self.tree_vertices:
            for i in self.orders[u]:
                for a in self.cycle(u, i):
                    owner[a] = u
        rels = []
        for a, s, t in arrows:
            for b, s2, t2 in arrows:
                if s2 == t and owner[a] != owner[b]:
                    rels.append(_mono((a, b)))
        for i, (u, v) in enumerate(self.edges, start=1):
            cu = self.cycle(u, i) * self.mult[u]
            cv = self.cycle(v, i) * self.mult[v]
            if not self.cycle(u, i):
                rels.append(_mono(tuple(cv) + (cv[0],)))
            elif not self.cycle(v, i):
                rels.append(_mono(tuple(cu) + (cu[0],)))
            else:
                rels.append([(QQ.one, tuple(cu)), (-QQ.one, tuple(cv))])
        ms = ",".join("%s:%d" % (v, self.mult[v]) for v in self.tree_vertices)
        return _pres(range(1, len(self.edges) + 1), arrows, rels, "brauer-tree(%s)" % ms)


def _match_key(k, keys):
    if k in keys:
        return k
    for x in keys:
        if str(x) == str(k):
            return x
    raise InvalidSpec("unknown tree vertex %r" % (k,))


def leaf_loop_policy(tree: BrauerTree) -> dict:
    """Leaves of multiplicity >= 2 get a loop at their edge; others get nothing.

    Returns {leaf: {"edge": i, "arrow": name, "power": m}}.
    """
    out = {}
    for u in tree.tree_vertices:
        o = tree.orders[u]
        if len(o) == 1 and tree.mult[u] >= 2:
            out[u] = {"edge": o[0], "arrow": "l%s_%d" % (u, o[0]), "power": tree.mult[u]}
    return out


def brauer_tree(edges, multiplicity=None, orders=None) -> Presentation:
    return BrauerTree(edges, multiplicity, orders).presentation()


def brauer_star(mults=(1, 1, 1, 1)) -> Presentation:
    """Star with three edges; mults = (centre, leaf 1, leaf 2, leaf 3)."""
    c, *leaves = mults
    edges = [("c", "v%d" % k) for k in range(1, len(leaves) + 1)]
    m = {"c": c}
    m.update({"v%d" % k: x for k, x in enumerate(leaves, start=1)})
    return brauer_tree(edges, m)


def _minimal_class_relations(q: Quiver) -> list:
    """Monomials forced to vanish when every nonzero Peirce block is 1-dimensional:
    cycles, and paths running parallel to an arrow."""
    from .algebra import acyclic_paths
    out = set()
    for name, s, t in q.arrows:
        if s == t:
            continue
        for w in acyclic_paths(q, t, s):
            out.add((name,) + w)
        for w in acyclic_paths(q, s, t):
            if len(w) >= 2:
                out.add(w)
    return [_mono(w) for w in sorted(out)]


def figure1(k: int, literal: bool = False) -> Presentation:
    """k-th catalogue algebra.

    Unless ``literal`` is set, the displayed relations are read inside the
    minimal class, so cycles and paths parallel to an arrow are zero too.
    """
    data = load_data("figure1.json")
    if not isinstance(k, int) or not 1 <= k <= len(data["algebras"]):
        raise InvalidSpec("catalogue index must be in 1..%d" % len(data["algebras"]))
    row = data["algebras"][k - 1]
    table = data["arrow_table"]
    q = Quiver(data["vertices"], [(a, table[a]["src"], table[a]["tgt"]) for a in row["arrows"]])
    rels = [parse_relation(r, q) for r in row["relations"]]
    if not literal:
        rels += _minimal_class_relations(q)
    return Presentation(q, rels, name="figure1(%d)" % k)


def family_algebra(spec) -> Presentation:
    if isinstance(spec, dict):
        spec = FamilySpec.from_dict(spec)
    v, p = spec.variant, spec.params
    if v == "two-point":
        return two_point(_int(p, "l", 1), _int(p, "lp", 1))
    if v in ("nakayama-cyclic", "nakayama-linear"):
        n = _int(p, "n", 1)
        f = nakayama_cyclic if v == "nakayama-cyclic" else nakayama_linear
        if "kupisch" in p:
            return f(n, kupisch=p["kupisch"])
        return f(n, length=_int(p, "length", 2))
    if v == "preprojective-A":
        return preprojective_a(_int(p, "n", 1))
    if v == "brauer-tree":
        if "edges" not in p:
            raise InvalidSpec("brauer-tree needs 'edges'")
        return brauer_tree(p["edges"], p.get("multiplicity"), p.get("orders"))
    if v == "figure1":
        return figure1(_int(p, "index", 1), bool(p.get("literal", False)))
    if v == "tree-quiver":
        if "vertices" not in p or "arrows" not in p:
            raise InvalidSpec("tree-quiver needs 'vertices' and 'arrows'")
        return tree_quiver(p["vertices"], p["arrows"])
    raise InvalidSpec("unknown family %r" % (v,))


# fixtures

def p_fixture(l: int, lp: int) -> FinitePoset:
    """Two chains s > x1 > ... > x_l > t and s > y1 > ... > y_lp > t."""
    if l < 1 or lp < 1:
        raise InvalidSpec("chain lengths must be >= 1")
    xs = ["s"] + ["x%d" % i for i in range(1, l + 1)] + ["t"]
    ys = ["s"] + ["y%d" % i for i in range(1, lp + 1)] + ["t"]
    els = xs[:-1] + ys[1:-1] + ["t"]
    edges = list(zip(xs, xs[1:])) + list(zip(ys, ys[1:]))
    return FinitePoset(els, edges)


def _stored(name):
    d = load_data(name)
    return FinitePoset(d["elements"], [tuple(e) for e in d["hasse"]])


def fixture_poset(spec) -> FinitePoset:
    if isinstance(spec, dict):
        spec = FixtureSpec(spec["name"], spec.get("params", {}))
    p = spec.params
    if spec.name == "P":
        return p_fixture(_int(p, "l", 1), _int(p, "lp", 1))
    if spec.name == "B":
        return boolean_lattice(_int(p, "m", 0))
    if spec.name == "section34-P":
        return _stored("section34.json")
    return _stored("section5.json")


def standard_specs() -> list:
    """A spread of small family members used by the property checks."""
    out = [FamilySpec("two-point", {"l": l, "lp": lp})
           for l, lp in [(1, 1), (1, 2), (2, 2), (3, 2), (4, 3)]]
    out += [FamilySpec("nakayama-cyclic", {"n": 3, "length": 3}),
            FamilySpec("nakayama-cyclic", {"n": 3, "length": 4}),
            FamilySpec("nakayama-cyclic", {"n": 3, "kupisch": [3, 2, 2]}),
            FamilySpec("nakayama-linear", {"n": 4, "length": 2}),
            FamilySpec("preprojective-A", {"n": 2}),
            FamilySpec("preprojective-A", {"n": 3}),
            FamilySpec("brauer-tree", {"edges": [["a", "b"], ["b", "c"]]}),
            FamilySpec("brauer-tree", {"edges": [["c", "v1"], ["c", "v2"], ["c", "v3"]]}),
            FamilySpec("tree-quiver", {"vertices": [1, 2, 3], "arrows": [[1, 2], [3, 2]]})]
    out += [FamilySpec("figure1", {"index": k}) for k in (4, 13, 22)]
    return out
