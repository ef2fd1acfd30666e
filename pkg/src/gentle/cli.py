"""Command line front end.

Exit codes: 0 success, 1 usage error, 2 invalid input (parse or gentle
axioms), 3 internal consistency failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path as FilePath

from . import curves as C
from .homalg import (
    alp_basis,
    crossing_morphisms,
    fingerprint,
    hom_profile,
    mapping_cone,
    resolution_complex,
    spherical_twist,
)
from .linalg import make_field
from .objects import complex_of, complex_to_json, string_complex
from .presentation import PresentationError, emit_presentation, parse_presentation, presentation_to_json, validate_gentle
from .surface import (
    ModelError,
    build_disc_model,
    decide_derived_equivalence,
    derived_invariant,
    disc_graph_dot,
    ribbon_surface,
)

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_INTERNAL = 0, 1, 2, 3


class InputError(Exception):
    """Bad user input that should exit with status 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _load(path: str, check: bool = True):
    try:
        text = FilePath(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None
    try:
        p = parse_presentation(text, FilePath(path).stem)
    except PresentationError as e:
        raise InputError(f"{path}: {e}") from None
    if check:
        rep = validate_gentle(p)
        if not rep.ok:
            raise InputError(f"{path}: not gentle: {rep.violations[0]}")
    return p


def _word(m, text: str):
    try:
        w, lam = C.parse_word(m, text)
    except C.WordError as e:
        raise InputError(f"bad word {text!r}: {e}") from None
    if w.kind == C.BAND:
        from fractions import Fraction

        try:
            lam = Fraction(lam)
        except (ValueError, ZeroDivisionError):
            raise InputError(f"bad band parameter {lam!r}") from None
    return w, lam


def _emit(args, data, text: str) -> None:
    if args.json:
        print(json.dumps(data, sort_keys=True))
    else:
        print(text)


def _profile_json(prof: dict) -> dict:
    return {str(k): v for k, v in sorted(prof.items())}


def _complex_dict(x) -> dict:
    return json.loads(complex_to_json(x))


# ------------------------------------------------------------ commands


def cmd_validate(args) -> int:
    p = _load(args.file, check=False)
    rep = validate_gentle(p)
    data = {"ok": rep.ok, "violations": [{"axiom": v.axiom, "witness": list(v.witness)} for v in rep.violations]}
    _emit(args, data, str(rep))
    return EXIT_OK if rep.ok else EXIT_INVALID


def cmd_surface(args) -> int:
    p = _load(args.file)
    if args.dot:
        print(disc_graph_dot(build_disc_model(p)), end="")
        return EXIT_OK
    s = ribbon_surface(p)
    d = s.to_dict()
    text = f"chi={d['chi']} genus={d['genus']} boundary={[(c['marked'], c['winding']) for c in d['components']]} punctures={d['punctures']}"
    _emit(args, d, text)
    return EXIT_OK


def cmd_invariant(args) -> int:
    inv = derived_invariant(_load(args.file))
    _emit(args, inv.to_dict(), f"genus {inv.genus}, components (marked, winding): {list(inv.components)}")
    return EXIT_OK


def cmd_equiv(args) -> int:
    d = decide_derived_equivalence(_load(args.first), _load(args.second))
    _emit(args, {"verdict": str(d.verdict), "reason": d.reason}, f"{d.verdict}\n{d.reason}")
    return EXIT_OK


def cmd_complex(args) -> int:
    p = _load(args.file)
    m = build_disc_model(p)
    w, lam = _word(m, args.word)
    g = C.grade_word(m, w, args.grade)
    x = complex_of(m, w, g, lam if lam is not None else 1)
    data = _complex_dict(x)
    data["word"] = C.format_word(m, w, lam)
    data["grades"] = list(g)
    text = C.format_word(m, w, lam) + "\n" + "  ".join(f"P{t.vertex}[{t.degree}]" for t in x.terms)
    _emit(args, data, text)
    return EXIT_OK


def cmd_hom(args) -> int:
    p = _load(args.file)
    m = build_disc_model(p)
    field = make_field(args.field)
    w1, l1 = _word(m, args.source)
    w2, l2 = _word(m, args.target)
    x = complex_of(m, w1, C.grade_word(m, w1), l1 or 1)
    y = complex_of(m, w2, C.grade_word(m, w2), l2 or 1)
    prof = hom_profile(p, x, y, field)
    basis = alp_basis(p, x, y, field)
    counts: dict[int, int] = {}
    for f in basis:
        counts[f.degree] = counts.get(f.degree, 0) + 1
    if counts != prof:
        print(f"basis sizes {counts} disagree with ranks {prof}", file=sys.stderr)
        return EXIT_INTERNAL
    data = {"profile": _profile_json(prof), "basis": [{"degree": f.degree, "components": [[i, j, str(q), str(c)] for i, j, q, c in f.monomials()]} for f in basis]}
    _emit(args, data, " ".join(f"Hom^{d}={k}" for d, k in sorted(prof.items())) or "Hom*=0")
    return EXIT_OK


def cmd_cone(args) -> int:
    p = _load(args.file)
    m = build_disc_model(p)
    w1, l1 = _word(m, args.first)
    w2, l2 = _word(m, args.second)
    g1, g2 = C.grade_word(m, w1), C.grade_word(m, w2)
    data = C.boundary_contacts(m, w1, w2) + C.interior_crossings(m, w1, w2)
    report, bad = [], 0
    for k, datum in enumerate(data):
        for cm in crossing_morphisms(m, w1, g1, w2, g2, datum, lam=l1 or 1):
            cone = mapping_cone(cm.map)
            words = C.resolve_crossing(m, w1, g1, w2, g2, datum, cm.forward, cm.degree)
            res = resolution_complex(m, w1, g1, w2, g2, datum, cm, lam=l1 or 1)
            agree = fingerprint(p, cone, window=args.probe_window) == fingerprint(p, res, window=args.probe_window)
            bad += not agree
            report.append(
                {
                    "crossing": k,
                    "kind": type(datum).__name__.lower(),
                    "direction": "first->second" if cm.forward else "second->first",
                    "degree": cm.degree,
                    "resolution": [{"word": C.format_word(m, w), "grades": list(g)} for w, g in words],
                    "agrees": agree,
                }
            )
    text = "\n".join(
        f"#{r['crossing']} {r['kind']} {r['direction']} degree {r['degree']}: "
        + (" + ".join(x["word"] for x in r["resolution"]) or "0")
        + ("" if r["agrees"] else "  MISMATCH")
        for r in report
    )
    _emit(args, {"crossings": report}, text or "no intersections")
    return EXIT_INTERNAL if bad else EXIT_OK


def cmd_tau(args) -> int:
    p = _load(args.file)
    m = build_disc_model(p)
    w, lam = _word(m, args.word)
    g = C.grade_word(m, w)
    tw, tg = C.tau_power(m, w, g, args.power)
    _emit(args, {"word": C.format_word(m, tw, lam), "grades": list(tg)}, f"{C.format_word(m, tw, lam)}  grades {list(tg)}")
    return EXIT_OK


def cmd_twist(args) -> int:
    p = _load(args.file)
    m = build_disc_model(p)
    s, lam = _word(m, args.spherical)
    w, l2 = _word(m, args.object)
    x = complex_of(m, s, C.grade_word(m, s), lam or 1)
    y = complex_of(m, w, C.grade_word(m, w), l2 or 1)
    try:
        t = spherical_twist(p, x, y)
    except ValueError as e:
        raise InputError(str(e)) from None
    data = _complex_dict(t)
    data["fingerprint"] = [list(map(list, f)) for f in fingerprint(p, t, window=args.probe_window)]
    _emit(args, data, "  ".join(f"P{q.vertex}[{q.degree}]" for q in t.terms))
    return EXIT_OK


def cmd_endo(args) -> int:
    from .tilting import TiltingError, dual_arc_system, endo_presentation, parse_arc_system

    p = _load(args.file)
    m = build_disc_model(p)
    if args.arcs:
        try:
            s = parse_arc_system(m, FilePath(args.arcs).read_text(encoding="utf-8"))
        except (OSError, C.WordError) as e:
            raise InputError(str(e)) from None
    else:
        s = dual_arc_system(m)
    try:
        q = endo_presentation(m, s, names=None if args.arcs else list(p.vertices))
    except TiltingError as e:
        raise InputError(f"not a tilting system: {e}") from None
    if not validate_gentle(q).ok:
        print("endomorphism presentation is not gentle", file=sys.stderr)
        return EXIT_INTERNAL
    _emit(args, json.loads(presentation_to_json(q)), emit_presentation(q).rstrip())
    return EXIT_OK


def cmd_corpus(args) -> int:
    from .corpus import gen_corpus

    ps = gen_corpus(args.count, args.max_vertices, args.max_arrows, args.seed, connected=not args.disconnected)
    if args.out:
        out = FilePath(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for p in ps:
            (out / f"{p.name}.gp").write_text(emit_presentation(p), encoding="utf-8")
    if args.json:
        print(json.dumps([json.loads(presentation_to_json(p)) for p in ps], sort_keys=True))
    elif not args.out:
        print("\n".join(f"# {p.name}\n{emit_presentation(p)}" for p in ps), end="")
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .acceptance import run_all

    results = run_all(args.seed)
    if args.json:
        print(json.dumps([{"criterion": r.number, "ok": r.ok, "detail": r.detail, "seconds": round(r.seconds, 3)} for r in results]))
    else:
        for r in results:
            print(r.line)
    return EXIT_OK if all(r.ok for r in results) else EXIT_INTERNAL


# ------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="gentle", description="Surface models and derived categories of gentle algebras.")
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--field", choices=["prime", "rational"], default="prime", help="base field for ranks")
    common.add_argument("--probe-window", type=int, default=None, help="degree window for fingerprints")
    common.add_argument("--seed", type=int, default=7, help="seed for randomised commands")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("validate", cmd_validate, "check the gentle axioms")
    sp.add_argument("file")
    sp = add("surface", cmd_surface, "surface data of the disc model")
    sp.add_argument("file")
    sp.add_argument("--dot", action="store_true", help="emit the ribbon graph in DOT")
    sp = add("invariant", cmd_invariant, "derived invariant")
    sp.add_argument("file")
    sp = add("equiv", cmd_equiv, "decide derived equivalence")
    sp.add_argument("first")
    sp.add_argument("second")
    sp = add("complex", cmd_complex, "complex of a curve word")
    sp.add_argument("file")
    sp.add_argument("word")
    sp.add_argument("--grade", type=int, default=0, help="grade of the first crossing")
    sp = add("hom", cmd_hom, "Hom profile and basis between two words")
    sp.add_argument("file")
    sp.add_argument("source")
    sp.add_argument("target")
    sp = add("cone", cmd_cone, "crossing morphisms, cones and resolutions")
    sp.add_argument("file")
    sp.add_argument("first")
    sp.add_argument("second")
    sp = add("tau", cmd_tau, "fractional twist of a word")
    sp.add_argument("file")
    sp.add_argument("word")
    sp.add_argument("--power", type=int, default=1)
    sp = add("twist", cmd_twist, "spherical twist of an object")
    sp.add_argument("file")
    sp.add_argument("spherical")
    sp.add_argument("object")
    sp = add("endo", cmd_endo, "endomorphism presentation of an arc system")
    sp.add_argument("file")
    sp.add_argument("arcs", nargs="?", help="arc system file, one word per line (default: dual arcs)")
    sp = add("corpus", cmd_corpus, "random gentle presentations")
    sp.add_argument("--count", type=int, default=50)
    sp.add_argument("--max-vertices", type=int, default=6)
    sp.add_argument("--max-arrows", type=int, default=8)
    sp.add_argument("--disconnected", action="store_true", help="allow disconnected quivers")
    sp.add_argument("--out", help="directory for .gp files")
    add("selftest", cmd_selftest, "run the acceptance checks")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except (ModelError, AssertionError) as e:
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
