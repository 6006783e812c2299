"""JSON and DOT serialisation, plus the on-disk result cache."""
from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

from .errors import InvalidSpec
from .fields import field_from_spec
from .poset import FinitePoset
from .quiver import Presentation

VERSION = "0.1.0"


def dumps(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=False) + "\n"


def read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InvalidSpec("%s is not valid JSON: %s" % (path, exc)) from None


def with_field(p: Presentation, field) -> Presentation:
    """Same presentation with coefficients reinterpreted over another field."""
    if field == p.field:
        return p
    rels = [[(field(p.field.to_str(c)), path) for c, path in rel] for rel in p.relations]
    return Presentation(p.quiver, rels, p.max_path_length, field, p.name)


def load_presentation(src, field=None) -> Presentation:
    d = read_json(src) if not isinstance(src, dict) else src
    if not isinstance(d, dict) or "vertices" not in d:
        raise InvalidSpec("not an algebra presentation")
    return Presentation.from_dict(d, field)


def is_presentation_json(d) -> bool:
    return isinstance(d, dict) and "vertices" in d and "elements" not in d


def presentation_hash(p: Presentation) -> str:
    d = p.to_dict()
    d.pop("name", None)
    blob = json.dumps(d, sort_keys=True, default=str).encode()
    return hashlib.sha256(blob).hexdigest()


# posets

def _vmap(A, verts) -> dict:
    out = {}
    for v in verts:
        key = str(A.vertices[v])
        out[key] = out.get(key, 0) + 1
    return out


def labeled_poset_json(P, p: Presentation | None = None) -> dict:
    """Full poset record with summand data for an engine-computed poset."""
    A = P.algebra
    els = []
    for i, T in enumerate(P.objects):
        els.append({
            "id": i,
            "summands": [{"g": list(X.g_vector()), "p0": _vmap(A, X.p0), "p1": _vmap(A, X.p1)}
                         for X in T.summands],
            "support": [A.vertices[v] for v in sorted(P.supports[i])],
        })
    return {
        "algebra_hash": presentation_hash(p) if p is not None else A.fingerprint(),
        "elements": els,
        "hasse": [[a, b] for a, b in P.hasse],
    }


def poset_json(P: FinitePoset) -> dict:
    return {"elements": list(P.elements), "hasse": [list(e) for e in P.hasse]}


def poset_from_json(d) -> FinitePoset:
    if not isinstance(d, dict) or "elements" not in d or "hasse" not in d:
        raise InvalidSpec("poset JSON needs 'elements' and 'hasse'")
    ids = [e["id"] if isinstance(e, dict) else e for e in d["elements"]]
    try:
        return FinitePoset(ids, [tuple(e) for e in d["hasse"]])
    except (KeyError, ValueError, TypeError) as exc:
        raise InvalidSpec("bad poset data: %s" % exc) from None


def load_poset(src) -> FinitePoset:
    return poset_from_json(read_json(src) if not isinstance(src, dict) else src)


def poset_dot(P: FinitePoset, name="sttilt", labels=None) -> str:
    """Hasse quiver, arrows from larger to smaller."""
    lines = ["digraph %s {" % name, "  rankdir=TB;"]
    for x in P.elements:
        lab = labels.get(x, x) if labels else x
        lines.append('  "%s" [label="%s"];' % (x, lab))
    for a, b in P.hasse:
        lines.append('  "%s" -> "%s";' % (a, b))
    lines.append("}")
    return "\n".join(lines) + "\n"


# cache

def default_cache_dir() -> Path:
    env = os.environ.get("STTILT_CACHE_DIR")
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "sttilt"


class ResultCache:
    def __init__(self, root=None, enabled: bool = True):
        self.root = Path(root) if root else default_cache_dir()
        self.enabled = enabled

    @staticmethod
    def key(p: Presentation, kind: str = "poset") -> str:
        blob = json.dumps([kind, presentation_hash(p), p.field.spec(), VERSION], sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()

    def path(self, key: str) -> Path:
        return self.root / key[:2] / (key + ".json")

    def get(self, key: str):
        if not self.enabled:
            return None
        f = self.path(key)
        if f.exists():
            return f.read_text()
        return None

    def put(self, key: str, text: str):
        if not self.enabled:
            return
        f = self.path(key)
        f.parent.mkdir(parents=True, exist_ok=True)
        tmp = f.with_suffix(".tmp%d" % os.getpid())
        tmp.write_text(text)
        os.replace(tmp, f)


def parse_field(text):
    if text is None:
        return None
    return field_from_spec(text)
