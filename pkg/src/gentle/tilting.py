"""Arc systems, the geometric tilting test and endomorphism presentations."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key

from .curves import (
    ARC,
    Contact,
    CurveWord,
    WordError,
    boundary_contacts,
    canonical,
    check_word,
    dual_arc,
    grade_word,
    interior_crossings,
    parse_word,
    reverse_word,
    tau_translate,
)
from .homalg import crossing_morphisms, hom_profile
from .objects import string_complex
from .presentation import GentlePresentation, find_isomorphism, make_presentation, validate_gentle
from .surface import DiscModel, build_disc_model, derived_invariant


@dataclass(frozen=True)
class ArcSystem:
    arcs: tuple[CurveWord, ...]
    grades: tuple[tuple[int, ...], ...] = ()

    def graded(self):
        gs = self.grades or tuple(None for _ in self.arcs)
        return [(w, tuple(g) if g is not None else None) for w, g in zip(self.arcs, gs)]


def dual_arc_system(m: DiscModel) -> ArcSystem:
    arcs = tuple(dual_arc(m, v) for v in m.presentation.vertices)
    return ArcSystem(arcs, tuple((0,) for _ in arcs))


def parse_arc_system(m: DiscModel, text: str) -> ArcSystem:
    arcs = []
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            w, _ = parse_word(m, line)
            arcs.append(w)
    return ArcSystem(tuple(arcs))


def twist_system(m: DiscModel, s: ArcSystem, k: int = 1) -> ArcSystem:
    """Apply the fractional twist k times to every arc of the system."""
    arcs, grades = [], []
    for w, g in s.graded():
        g = g if g is not None else grade_word(m, w)
        for _ in range(abs(k)):
            w, g = tau_translate(m, w, g, inverse=k < 0)
        arcs.append(w)
        grades.append(g)
    return ArcSystem(tuple(arcs), tuple(grades))


# ------------------------------------------------------------ arc ends


@dataclass(frozen=True)
class End:
    arc: int
    end: int  # 0 = start, 1 = end
    disc: int


def _outward(w: CurveWord, end: int) -> CurveWord:
    return w if end == 0 else reverse_word(w)


def _pos(m: DiscModel, t: int, j) -> int:
    return 0 if j is None else j + 1


def _compare_ends(m: DiscModel, arcs, a: End, b: End) -> int:
    """Clockwise order of two arc ends at the same marked point.

    The strands run parallel until they part inside some disc; there the
    one leaving clockwise-nearer to the shared entry comes first.
    """
    u, v = _outward(arcs[a.arc], a.end), _outward(arcs[b.arc], b.end)
    for s, r in zip(u.segments, v.segments):
        if s.exit != r.exit:
            size = m.size(s.disc) + 1
            anchor = _pos(m, s.disc, s.entry)
            ds = (_pos(m, s.disc, s.exit) - anchor) % size
            dr = (_pos(m, r.disc, r.exit) - anchor) % size
            return -1 if ds < dr else 1
    raise WordError("two arc ends run parallel to the end")


def ordered_ends(m: DiscModel, arcs) -> dict[int, list[End]]:
    """Arc ends grouped by marked point (disc) in clockwise order."""
    groups: dict[int, list[End]] = {}
    for k, w in enumerate(arcs):
        groups.setdefault(w.segments[0].disc, []).append(End(k, 0, w.segments[0].disc))
        groups.setdefault(w.segments[-1].disc, []).append(End(k, 1, w.segments[-1].disc))
    key = cmp_to_key(lambda a, b: _compare_ends(m, arcs, a, b))
    return {t: sorted(es, key=key) for t, es in sorted(groups.items())}


# ------------------------------------------------------------ tilting check


@dataclass
class TiltingReport:
    ok: bool
    violations: list[str] = field(default_factory=list)
    shifts: tuple[int, ...] = ()


@dataclass(frozen=True)
class EndArrow:
    source: int
    target: int
    disc: int
    source_end: int
    target_end: int
    degree: int


def _contact_arrows(m: DiscModel, s: ArcSystem, field_=None) -> list[EndArrow]:
    """One arrow per pair of consecutive arc ends at a marked point.

    The arrow runs against the contact morphism, so that the quiver is that
    of the opposite endomorphism algebra.
    """
    graded = [(w, g if g is not None else grade_word(m, w)) for w, g in s.graded()]
    arcs = [w for w, _ in graded]
    out = []
    for t, ends in ordered_ends(m, arcs).items():
        for e1, e2 in zip(ends, ends[1:]):
            (w1, g1), (w2, g2) = graded[e1.arc], graded[e2.arc]
            c = Contact(t, e1.end, e2.end)
            maps = crossing_morphisms(m, w1, g1, w2, g2, c, field=field_)
            if len(maps) != 1:
                raise WordError(f"contact at disc {t} carries {len(maps)} morphisms")
            f = maps[0]
            if f.forward:
                out.append(EndArrow(e2.arc, e1.arc, t, e2.end, e1.end, f.degree))
            else:
                out.append(EndArrow(e1.arc, e2.arc, t, e1.end, e2.end, f.degree))
    return out


def _shifts(n: int, arrows: list[EndArrow]):
    """Shifts making every contact morphism degree zero, or the bad arrow."""
    shift: list[int | None] = [None] * n
    adj: dict[int, list[tuple[int, int]]] = {k: [] for k in range(n)}
    for a in arrows:
        # the morphism goes target -> source with degree d; after shifting
        # arc k by c_k its degree is d + c_source - c_target
        adj[a.target].append((a.source, a.degree))
        adj[a.source].append((a.target, -a.degree))
    for root in range(n):
        if shift[root] is not None:
            continue
        shift[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v, d in adj[u]:
                want = shift[u] - d
                if shift[v] is None:
                    shift[v] = want
                    queue.append(v)
                elif shift[v] != want:
                    return None, (u, v)
    return tuple(shift), None


def _k0_class(p: GentlePresentation, x) -> list[int]:
    """Class of a complex in K_0, in the basis of the indecomposable projectives."""
    idx = {v: k for k, v in enumerate(p.vertices)}
    out = [0] * len(idx)
    for t in x.terms:
        out[idx[t.vertex]] += -1 if t.degree % 2 else 1
    return out


def _determinant(rows: list[list[int]]) -> Fraction:
    a = [[Fraction(x) for x in r] for r in rows]
    n, det = len(a), Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det


def _generates(m: DiscModel, s: ArcSystem, cx) -> list[str]:
    """Why the disjoint arcs fail to generate, or [] when they do.

    Disjoint arcs generate exactly when their classes form a basis of K_0:
    an arc bounding a region with the others is an iterated cone of them,
    which makes the classes dependent, and otherwise the arcs dissect the
    surface.
    """
    p = m.presentation
    n = len(p.vertices)
    if len(cx) != n:
        return [f"{len(cx)} arcs for {n} vertices"]
    det = _determinant([_k0_class(p, x) for x in cx])
    if abs(det) != 1:
        return [f"classes in K_0 have determinant {det}"]
    return []


def check_tilting(m: DiscModel, s: ArcSystem, field=None) -> TiltingReport:
    p = m.presentation
    bad: list[str] = []
    graded = []
    for k, (w, g) in enumerate(s.graded()):
        try:
            check_word(m, w)
            if w.kind != ARC:
                raise WordError("bands are not arcs")
            graded.append((w, g if g is not None else grade_word(m, w)))
        except WordError as e:
            bad.append(f"arc {k}: {e}")
    if bad:
        return TiltingReport(False, bad)
    keys = [canonical(w) for w, _ in graded]
    if len(set(keys)) != len(keys):
        bad.append("non-homotopic: the system contains homotopic arcs")
    cx = [string_complex(m, w, g) for w, g in graded]
    for k, (w, _) in enumerate(graded):
        loops = 1 if w.segments[0].disc == w.segments[-1].disc else 0
        if sum(hom_profile(p, cx[k], cx[k], field).values()) != 1 + loops:
            bad.append(f"simple: arc {k} intersects itself")
    for i in range(len(graded)):
        for j in range(i + 1, len(graded)):
            if keys[i] == keys[j]:
                continue
            wi, wj = graded[i][0], graded[j][0]
            if interior_crossings(m, wi, wj):
                bad.append(f"disjoint: arcs {i} and {j} cross")
                continue
            total = sum(hom_profile(p, cx[i], cx[j], field).values()) + sum(hom_profile(p, cx[j], cx[i], field).values())
            if total != len(boundary_contacts(m, wi, wj)):
                bad.append(f"disjoint: arcs {i} and {j} have interior morphisms")
    if bad:
        return TiltingReport(False, bad)
    arrows = _contact_arrows(m, ArcSystem(tuple(w for w, _ in graded), tuple(g for _, g in graded)), field)
    shifts, clash = _shifts(len(graded), arrows)
    if shifts is None:
        bad.append(f"winding: a cycle of contacts through arcs {clash[0]} and {clash[1]} has non-zero winding")
    missing = _generates(m, s, cx)
    if missing:
        bad.append("generation: " + "; ".join(missing))
    return TiltingReport(not bad, bad, shifts or ())


# ------------------------------------------------------------ endomorphisms


class TiltingError(ValueError):
    pass


def endo_presentation(m: DiscModel, s: ArcSystem, names=None, field=None) -> GentlePresentation:
    """Gentle presentation of the (opposite) endomorphism algebra of the system."""
    rep = check_tilting(m, s, field)
    if not rep.ok:
        raise TiltingError("; ".join(rep.violations))
    n = len(s.arcs)
    names = list(names) if names is not None else [f"v{k}" for k in range(n)]
    arrows = _contact_arrows(m, s, field)
    ids = [f"c{k}" for k in range(len(arrows))]
    rels = []
    for a, ia in zip(arrows, ids):
        for b, ib in zip(arrows, ids):
            if a.target == b.source and (a.disc, a.target_end) != (b.disc, b.source_end):
                rels.append((ia, ib))
    return make_presentation(names, [(i, names[a.source], names[a.target]) for i, a in zip(ids, arrows)], rels, "endo")


def endo_dimensions(m: DiscModel, s: ArcSystem, field=None) -> dict[int, int]:
    """Total Hom profile of the system after the tilting shifts."""
    rep = check_tilting(m, s, field)
    if not rep.ok:
        raise TiltingError("; ".join(rep.violations))
    cx = [string_complex(m, w, tuple(x + c for x in (g if g is not None else grade_word(m, w)))) for (w, g), c in zip(s.graded(), rep.shifts)]
    total: dict[int, int] = {}
    for x in cx:
        for y in cx:
            for d, k in hom_profile(m.presentation, x, y, field).items():
                total[d] = total.get(d, 0) + k
    return total


@dataclass
class RoundTrip:
    ok: bool
    report: str
    presentation: GentlePresentation | None = None


def roundtrip_check(p: GentlePresentation, twist: int = 0) -> RoundTrip:
    """Endomorphism presentation of the (twisted) dual-arc system against p."""
    m = build_disc_model(p)
    s = dual_arc_system(m)
    if twist:
        s = twist_system(m, s, twist)
    try:
        q = endo_presentation(m, s, names=list(p.vertices))
    except (TiltingError, WordError) as e:
        return RoundTrip(False, f"tilting check failed: {e}")
    val = validate_gentle(q)
    if not val.ok:
        return RoundTrip(False, f"endomorphism presentation is not gentle: {val.violations[0]}", q)
    dims = endo_dimensions(m, s)
    if set(dims) - {0} or dims.get(0, 0) != q.dimension:
        return RoundTrip(False, f"Hom between the shifted arcs is {dims}, path basis has {q.dimension}", q)
    if derived_invariant(q) != derived_invariant(p):
        return RoundTrip(False, "derived invariants differ", q)
    if find_isomorphism(q, p) is None:
        return RoundTrip(False, "no isomorphism to the input presentation", q)
    return RoundTrip(True, "ok", q)
