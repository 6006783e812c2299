"""Command line entry point: ``sttilt <command> ...``."""
from __future__ import annotations

import argparse
import json
import sys

from . import io as sio
from .algebra import build_algebra, min_factor
from .errors import SttiltError, InvalidSpec
from .families import FamilySpec, FixtureSpec, family_algebra, fixture_poset
from .isomorphism import find_isomorphism
from .poset import atoms_coatoms, realizability_obstruction
from .reconstruction import equiv_check, qstar_from_poset, supports_from_poset, theta_report
from .silting import DEFAULT_CAP, enumerate_sttilt

PASS, FAIL, ERROR = 0, 1, 2


def _kv(items) -> dict:
    out = {}
    for it in items or []:
        if "=" not in it:
            raise InvalidSpec("expected key=value, got %r" % it)
        k, v = it.split("=", 1)
        try:
            out[k] = json.loads(v)
        except json.JSONDecodeError:
            out[k] = v
    return out


class Runner:
    def __init__(self, args):
        self.args = args
        self.field = sio.parse_field(getattr(args, "field", None))
        cap = getattr(args, "max_elements", DEFAULT_CAP)
        jobs = getattr(args, "jobs", 1)
        if cap < 1 or jobs < 1:
            raise InvalidSpec("--max-elements and --jobs must be >= 1")
        self.cap, self.jobs = cap, jobs
        root = getattr(args, "cache_dir", None)
        self.cache = sio.ResultCache(root, enabled=not getattr(args, "no_cache", False))

    def out(self, text: str):
        sys.stdout.write(text if text.endswith("\n") else text + "\n")

    def presentation(self, path):
        p = sio.load_presentation(path, None)
        return sio.with_field(p, self.field) if self.field is not None else p

    def compute_json(self, p) -> str:
        key = sio.ResultCache.key(p)
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        A = build_algebra(p)
        P = enumerate_sttilt(A, cap=self.cap, jobs=self.jobs)
        text = sio.dumps(sio.labeled_poset_json(P, p))
        self.cache.put(key, text)
        return text

    def poset(self, path):
        """An input that is either a poset file or an algebra file."""
        d = sio.read_json(path)
        if sio.is_presentation_json(d):
            p = sio.load_presentation(d, self.field)
            d = json.loads(self.compute_json(p))
        return sio.poset_from_json(d)


def cmd_compute(r: Runner) -> int:
    p = r.presentation(r.args.algebra)
    text = r.compute_json(p)
    fmt = r.args.format
    if fmt == "json":
        r.out(text)
    else:
        P = sio.poset_from_json(json.loads(text))
        if fmt == "dot":
            r.out(sio.poset_dot(P))
        else:
            r.out("elements: %d\nhasse edges: %d" % (len(P), len(P.hasse)))
    return PASS


def analyze_report(P) -> dict:
    rep = {"size": len(P), "connected": P.is_connected()}
    degs = P.degree_counts()
    rep["degrees"] = {str(k): v for k, v in sorted(degs.items())}
    rep["regular"] = next(iter(degs)) if len(degs) == 1 else None
    w = P.lattice_witness()
    rep["lattice"] = w is None
    if w is not None:
        rep["lattice_witness"] = list(w)
    try:
        X, Z = atoms_coatoms(P)
        rep["pairing"] = [[P.elements[x], P.elements[z]] for x, z in zip(X, Z)]
        if rep["lattice"]:
            ob = realizability_obstruction(P)
            rep["obstruction"] = {
                "passed": ob["passed"],
                "pairs": [{"atoms": [P.elements[X[i]], P.elements[X[j]]],
                           "lower": ob["bottom"][i, j], "upper": ob["top"][i, j]} for i, j in ob["bottom"]],
                "lower_size6": ob["bottom_size6"],
                "upper_size6": ob["top_size6"],
            }
    except SttiltError as exc:
        rep["pairing_error"] = str(exc)
    return rep


def _analysis_passed(rep) -> bool:
    return bool(rep["connected"] and rep["regular"] is not None and rep["lattice"]
                and rep.get("obstruction", {}).get("passed", False))


def cmd_analyze(r: Runner) -> int:
    P = r.poset(r.args.poset)
    rep = analyze_report(P)
    if r.args.format == "text":
        r.out("\n".join("%s: %s" % (k, json.dumps(v)) for k, v in rep.items()))
    else:
        r.out(sio.dumps(rep))
    return PASS if _analysis_passed(rep) else FAIL


def cmd_reconstruct(r: Runner) -> int:
    P = r.poset(r.args.poset)
    qs = qstar_from_poset(P)
    if r.args.format == "dot":
        r.out(qs.to_dot())
    elif r.args.format == "text":
        r.out("vertices: %s" % ", ".join(map(str, qs.vertices)))
        for i, j in sorted(qs.arrows):
            r.out("%s -> %s" % (qs.vertices[i], qs.vertices[j]))
    else:
        d = qs.to_dict()
        if r.args.supports:
            d["supports"] = {str(k): sorted(v) for k, v in supports_from_poset(P).items()}
        r.out(sio.dumps(d))
    return PASS


def cmd_compare(r: Runner) -> int:
    P1 = r.poset(r.args.first)
    P2 = r.poset(r.args.second)
    f = find_isomorphism(P1, P2)
    if f is None:
        rep = {"isomorphic": False}
        text = "not isomorphic"
    else:
        rep = {"isomorphic": True, "map": [[a, f[a]] for a in P1.elements]}
        text = "isomorphic\n" + "\n".join("%s -> %s" % (a, f[a]) for a in P1.elements)
    r.out(text if r.args.format == "text" else sio.dumps(rep))
    return PASS if f is not None else FAIL


def cmd_equiv(r: Runner) -> int:
    rep = equiv_check(r.presentation(r.args.first), r.presentation(r.args.second))
    if r.args.format == "text":
        if rep["equivalent"]:
            r.out("equivalent")
            for a, b in rep["vertex_map"].items():
                r.out("vertex %s -> %s" % (a, b))
            for a, b in sorted(rep["arrow_map"].items()):
                r.out("arrow %s -> %s" % (a, b))
        else:
            r.out("not equivalent: %s" % rep["reason"])
    else:
        out = dict(rep)
        if "vertex_map" in out:
            out["vertex_map"] = [[a, b] for a, b in out["vertex_map"].items()]
        r.out(sio.dumps(out))
    return PASS if rep["equivalent"] else FAIL


def cmd_family(r: Runner) -> int:
    spec = FamilySpec(r.args.variant, _kv(r.args.params))
    p = family_algebra(spec)
    if r.field is not None:
        p = sio.with_field(p, r.field)
    r.out(sio.dumps(p.to_dict()))
    return PASS


def cmd_fixture(r: Runner) -> int:
    P = fixture_poset(FixtureSpec(r.args.name, _kv(r.args.params)))
    r.out(sio.poset_dot(P) if r.args.format == "dot" else sio.dumps(sio.poset_json(P)))
    return PASS


def cmd_minimize(r: Runner) -> int:
    p = r.presentation(r.args.algebra)
    A = build_algebra(p)
    Abar, pbar = min_factor(p, A)
    r.out(sio.dumps(pbar.to_dict()))
    return PASS


def cmd_theta(r: Runner) -> int:
    p = r.presentation(r.args.algebra)
    rep = theta_report(p, cap=r.cap)
    r.out(sio.dumps(rep) if r.args.format != "text" else "member: %s" % rep["member"])
    return PASS if rep["member"] else FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="rational (default) or prime:<p>")
    common.add_argument("--max-elements", type=int, default=DEFAULT_CAP)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--format", choices=("json", "dot", "text"), default="json")
    common.add_argument("--cache-dir")
    common.add_argument("--no-cache", action="store_true")

    ap = argparse.ArgumentParser(prog="sttilt", description="Support tau-tilting posets of bound quiver algebras.")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("compute", parents=[common], help="support tau-tilting poset of an algebra")
    s.add_argument("algebra")
    s.set_defaults(func=cmd_compute)

    s = sub.add_parser("analyze", parents=[common], help="regularity, lattice and obstruction report")
    s.add_argument("poset", help="poset JSON, or an algebra JSON to compute first")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("reconstruct", parents=[common], help="quiver sketch from a poset")
    s.add_argument("poset")
    s.add_argument("--supports", action="store_true", help="also list element supports")
    s.set_defaults(func=cmd_reconstruct)

    s = sub.add_parser("compare", parents=[common], help="poset isomorphism test")
    s.add_argument("first")
    s.add_argument("second")
    s.set_defaults(func=cmd_compare)

    s = sub.add_parser("equiv", parents=[common], help="support and G-set equivalence of two algebras")
    s.add_argument("first")
    s.add_argument("second")
    s.set_defaults(func=cmd_equiv)

    s = sub.add_parser("family", parents=[common], help="emit a family presentation")
    s.add_argument("variant")
    s.add_argument("params", nargs="*", help="key=value, values parsed as JSON when possible")
    s.set_defaults(func=cmd_family)

    s = sub.add_parser("fixture", parents=[common], help="emit a stored or generated poset")
    s.add_argument("name")
    s.add_argument("params", nargs="*")
    s.set_defaults(func=cmd_fixture)

    s = sub.add_parser("minimize", parents=[common], help="minimal factor presentation")
    s.add_argument("algebra")
    s.set_defaults(func=cmd_minimize)

    s = sub.add_parser("theta", parents=[common], help="Condition 1 and Condition 2 report")
    s.add_argument("algebra")
    s.set_defaults(func=cmd_theta)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(Runner(args))
    except SttiltError as exc:
        sys.stderr.write(json.dumps(exc.to_dict()) + "\n")
        return ERROR
    except (OSError, ValueError, KeyError) as exc:
        sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
