"""Quivers and presentations KQ/I."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import InconsistentPath, InvalidSpec
from .fields import QQ, field_from_spec


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple  # of (name, src, tgt)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(tuple(a) for a in self.arrows))
        if len(set(self.vertices)) != len(self.vertices):
            raise InvalidSpec("duplicate vertex ids")
        names = [a[0] for a in self.arrows]
        if len(set(names)) != len(names):
            raise InvalidSpec("duplicate arrow ids")
        vs = set(self.vertices)
        for name, s, t in self.arrows:
            if s not in vs or t not in vs:
                raise InvalidSpec("arrow %r has an unknown endpoint" % (name,))

    @property
    def n(self) -> int:
        return len(self.vertices)

    def arrow(self, name):
        for a in self.arrows:
            if a[0] == name:
                return a
        raise KeyError(name)

    def arrow_map(self) -> dict:
        return {a[0]: (a[1], a[2]) for a in self.arrows}

    def no_loops(self) -> "Quiver":
        """Q with loops removed."""
        return Quiver(self.vertices, [a for a in self.arrows if a[1] != a[2]])

    def sketch(self) -> set:
        """Q with loops removed and multiple arrows collapsed, as a set of vertex pairs."""
        return {(s, t) for _, s, t in self.arrows if s != t}

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, [(name, t, s) for name, s, t in self.arrows])

    def path_ends(self, path):
        """(source, target) of a non-empty arrow sequence, checking composability."""
        amap = self.arrow_map()
        if not path:
            raise InconsistentPath("empty path")
        try:
            s, t = amap[path[0]]
        except KeyError:
            raise InconsistentPath("unknown arrow %r" % (path[0],)) from None
        for a in path[1:]:
            if a not in amap:
                raise InconsistentPath("unknown arrow %r" % (a,))
            s2, t2 = amap[a]
            if s2 != t:
                raise InconsistentPath("path %r is not composable at %r" % (list(path), a))
            t = t2
        return s, t

    def underlying_adjacency(self) -> dict:
        adj = {v: set() for v in self.vertices}
        for _, s, t in self.arrows:
            if s != t:
                adj[s].add(t)
                adj[t].add(s)
        return adj

    def is_connected(self, subset=None) -> bool:
        verts = list(self.vertices if subset is None else subset)
        if not verts:
            return True
        allowed = set(verts)
        adj = self.underlying_adjacency()
        seen = {verts[0]}
        stack = [verts[0]]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w in allowed and w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(allowed)


@dataclass
class Presentation:
    quiver: Quiver
    relations: list = dc_field(default_factory=list)  # each: list of (coeff, tuple of arrow names)
    max_path_length: int | None = None
    field: object = QQ
    name: str = ""

    def __post_init__(self):
        self.relations = [[(self.field(c), tuple(p)) for c, p in rel] for rel in self.relations]

    def opposite(self) -> "Presentation":
        rels = [[(c, tuple(reversed(p))) for c, p in rel] for rel in self.relations]
        return Presentation(self.quiver.opposite(), rels, self.max_path_length, self.field,
                            self.name + "^op" if self.name else "")

    def to_dict(self) -> dict:
        def vid(v):
            return v
        d = {
            "field": self.field.spec(),
            "vertices": [vid(v) for v in self.quiver.vertices],
            "arrows": [{"name": a, "src": s, "tgt": t} for a, s, t in self.quiver.arrows],
            "relations": [[{"coeff": self.field.to_str(c), "path": list(p)} for c, p in rel]
                          for rel in self.relations],
        }
        if self.max_path_length is not None:
            d["max_path_length"] = self.max_path_length
        if self.name:
            d["name"] = self.name
        return d

    @classmethod
    def from_dict(cls, d: dict, field=None) -> "Presentation":
        fld = field_from_spec(field if field is not None else d.get("field"))
        try:
            quiver = Quiver(d["vertices"], [(a["name"], a["src"], a["tgt"]) for a in d.get("arrows", [])])
            rels = [[(t.get("coeff", "1"), tuple(t["path"])) for t in rel] for rel in d.get("relations", [])]
        except (KeyError, TypeError) as exc:
            raise InvalidSpec("malformed presentation: %s" % exc) from None
        return cls(quiver, rels, d.get("max_path_length"), fld, d.get("name", ""))


def parse_relation(text: str, quiver: Quiver, field=QQ) -> list:
    """Parse 'a b + -1 c d' style text: terms separated by '+', arrows by spaces.

    A leading coefficient token (anything parseable as a rational) is optional.
    A term '0' or an empty string is ignored.
    """
    names = {a[0] for a in quiver.arrows}
    terms = []
    for chunk in text.replace(" - ", " + -1 ").split("+"):
        toks = chunk.split()
        if not toks or toks == ["0"]:
            continue
        coeff = field.one
        if toks[0] not in names:
            coeff = field(toks[0])
            toks = toks[1:]
        for t in toks:
            if t not in names:
                raise InconsistentPath("unknown arrow %r in relation %r" % (t, text))
        terms.append((coeff, tuple(toks)))
    return terms
