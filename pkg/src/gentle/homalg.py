"""Morphisms between complexes of projectives, up to homotopy.

A degree-d map f: X -> Y has components X_i -> Y_j whenever
deg Y_j = deg X_i + d; each component is a combination of paths from the
vertex of Y_j to the vertex of X_i.  The Hom complex differential is
D(f) = dY f - (-1)^d f dX, so chain maps are the cycles of D and
null-homotopic maps its boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .linalg import Echelon, PrimeField
from .objects import ProjComplex, Term, _add, direct_sum, shift
from .presentation import GentlePresentation, Path

Position = tuple[int, int, Path]  # (source term, target term, path)


def _field(f):
    return f if f is not None else PrimeField()


@dataclass(eq=False)
class ChainMap:
    source: ProjComplex
    target: ProjComplex
    degree: int
    comps: dict = field(default_factory=dict)  # (i, j) -> {Path: coef}

    def is_zero(self) -> bool:
        return not any(self.comps.values())

    def scaled(self, c) -> "ChainMap":
        return ChainMap(self.source, self.target, self.degree, {k: {p: c * x for p, x in lc.items()} for k, lc in self.comps.items()})

    def __add__(self, other: "ChainMap") -> "ChainMap":
        if other.degree != self.degree:
            raise ValueError("degrees differ")
        out = {k: dict(v) for k, v in self.comps.items()}
        for k, lc in other.comps.items():
            acc = out.setdefault(k, {})
            for p, c in lc.items():
                _add(acc, p, c)
        return ChainMap(self.source, self.target, self.degree, {k: v for k, v in out.items() if v})

    def monomials(self):
        for (i, j), lc in sorted(self.comps.items(), key=lambda kv: kv[0]):
            for p, c in sorted(lc.items(), key=lambda kv: kv[0].sort_key()):
                yield i, j, p, c


def hom_positions(p: GentlePresentation, x: ProjComplex, y: ProjComplex, d: int) -> list[Position]:
    out = []
    for i, s in enumerate(x.terms):
        for j, t in enumerate(y.terms):
            if t.degree == s.degree + d:
                out.extend((i, j, q) for q in p.paths_between(t.vertex, s.vertex))
    return out


def differential(p: GentlePresentation, x: ProjComplex, y: ProjComplex, d: int, comps: dict) -> dict:
    """D(f) for a degree-d map given by its components."""
    out: dict = {}
    sgn = 1 if d % 2 else -1  # -(-1)^d
    for (i, j), lc in comps.items():
        for (j2, k), dl in y.entries.items():
            if j2 != j:
                continue
            acc = out.setdefault((i, k), {})
            for u, cu in dl.items():
                for q, c in lc.items():
                    r = p.multiply(u, q)
                    if r is not None:
                        _add(acc, r, cu * c)
        for (h, i2), dl in x.entries.items():
            if i2 != i:
                continue
            acc = out.setdefault((h, j), {})
            for w, cw in dl.items():
                for q, c in lc.items():
                    r = p.multiply(q, w)
                    if r is not None:
                        _add(acc, r, sgn * cw * c)
    return {k: v for k, v in out.items() if v}


class HomComplex:
    """The complex Hom(X, Y) of graded maps with its differential."""

    def __init__(self, p: GentlePresentation, x: ProjComplex, y: ProjComplex, field=None):
        self.p, self.x, self.y = p, x, y
        self.field = _field(field)
        self._bases: dict[int, list[Position]] = {}
        self._index: dict[int, dict] = {}
        self._dmat: dict[int, list[list]] = {}
        self._rank: dict[int, int] = {}

    @cached_property
    def support(self) -> range:
        if not self.x.terms or not self.y.terms:
            return range(0)
        lo = min(self.y.degrees()) - max(self.x.degrees())
        hi = max(self.y.degrees()) - min(self.x.degrees())
        return range(lo, hi + 1)

    def basis(self, d: int) -> list[Position]:
        if d not in self._bases:
            self._bases[d] = hom_positions(self.p, self.x, self.y, d)
            self._index[d] = {pos: k for k, pos in enumerate(self._bases[d])}
        return self._bases[d]

    def vector(self, d: int, comps: dict) -> list:
        self.basis(d)
        idx = self._index[d]
        v = [0] * len(idx)
        for (i, j), lc in comps.items():
            for q, c in lc.items():
                v[idx[(i, j, q)]] = self.field.scalar(c)
        return v

    def from_vector(self, d: int, v) -> ChainMap:
        comps: dict = {}
        for (i, j, q), c in zip(self.basis(d), v):
            if c:
                comps.setdefault((i, j), {})[q] = c
        return ChainMap(self.x, self.y, d, comps)

    def dmatrix(self, d: int) -> list[list]:
        """Rows: images under D of the degree-d basis maps."""
        if d not in self._dmat:
            rows = []
            for i, j, q in self.basis(d):
                img = differential(self.p, self.x, self.y, d, {(i, j): {q: 1}})
                rows.append(self.vector(d + 1, img))
            self._dmat[d] = rows
        return self._dmat[d]

    def rank(self, d: int) -> int:
        if d not in self._rank:
            rows = self.dmatrix(d)
            self._rank[d] = self.field.rank(rows) if rows and self.basis(d + 1) else 0
        return self._rank[d]

    def cohomology(self, d: int) -> int:
        return len(self.basis(d)) - self.rank(d) - self.rank(d - 1)

    def profile(self) -> dict[int, int]:
        out = {}
        for d in self.support:
            h = self.cohomology(d)
            if h:
                out[d] = h
        return out

    def boundary_echelon(self, d: int) -> Echelon:
        ech = Echelon(self.field)
        for r in self.dmatrix(d - 1):
            ech.add(r)
        return ech

    def is_cycle(self, f: ChainMap) -> bool:
        return not differential(self.p, self.x, self.y, f.degree, f.comps)

    def is_boundary(self, f: ChainMap) -> bool:
        return self.boundary_echelon(f.degree).contains(self.vector(f.degree, f.comps))


def hom_profile(p: GentlePresentation, x: ProjComplex, y: ProjComplex, field=None) -> dict[int, int]:
    """{d: dim Hom(X, Y[d])} over the non-zero degrees."""
    return HomComplex(p, x, y, field).profile()


def is_chain_map(p: GentlePresentation, f: ChainMap, field=None) -> bool:
    fld = _field(field)
    defect = differential(p, f.source, f.target, f.degree, f.comps)
    return not any(fld.scalar(c) for lc in defect.values() for c in lc.values())


def is_null_homotopic(p: GentlePresentation, f: ChainMap, field=None) -> bool:
    return HomComplex(p, f.source, f.target, field).is_boundary(f)


def compose(p: GentlePresentation, g: ChainMap, f: ChainMap) -> ChainMap:
    """g after f; degrees add."""
    comps: dict = {}
    for (i, j), lf in f.comps.items():
        for (j2, k), lg in g.comps.items():
            if j2 != j:
                continue
            acc = comps.setdefault((i, k), {})
            for q, cq in lg.items():
                for r, cr in lf.items():
                    prod = p.multiply(q, r)
                    if prod is not None:
                        _add(acc, prod, cq * cr)
    return ChainMap(f.source, g.target, f.degree + g.degree, {k: v for k, v in comps.items() if v})


def identity(x: ProjComplex) -> ChainMap:
    return ChainMap(x, x, 0, {(i, i): {Path(t.vertex, t.vertex, ()): 1} for i, t in enumerate(x.terms)})


def as_degree_zero(f: ChainMap) -> ChainMap:
    """The same components viewed as a chain map X -> Y[d]."""
    return ChainMap(f.source, shift(f.target, f.degree), 0, f.comps)


def mapping_cone(f: ChainMap) -> ProjComplex:
    """Cone of f: X -> Y[d]; X enters one degree lower with negated differential."""
    g = as_degree_zero(f)
    x, y = g.source, g.target
    n = len(x.terms)
    terms = tuple(Term(t.vertex, t.degree - 1) for t in x.terms) + y.terms
    entries: dict = {}
    for (i, j), lc in x.entries.items():
        entries[(i, j)] = {q: -c for q, c in lc.items()}
    for (i, j), lc in y.entries.items():
        entries[(i + n, j + n)] = dict(lc)
    for (i, j), lc in g.comps.items():
        if lc:
            entries[(i, j + n)] = dict(lc)
    return ProjComplex(terms, entries, "cone")


def is_contractible(p: GentlePresentation, x: ProjComplex, field=None) -> bool:
    return not hom_profile(p, x, x, field)


def is_isomorphism(p: GentlePresentation, f: ChainMap, field=None) -> bool:
    return f.degree == 0 and is_contractible(p, mapping_cone(f), field)


# ------------------------------------------------------------ propagation


def _defect_candidates(p: GentlePresentation, x: ProjComplex, y: ProjComplex, d: int, mono, comps):
    """Components that cancel one defect monomial (a, b, r, c)."""
    a, b, r, c = mono
    out = []
    sgn = 1 if d % 2 else -1
    # through dY: a component X_a -> Y_j followed by an entry Y_j -> Y_b
    for (j, b2), dl in y.entries.items():
        if b2 != b or y.terms[j].degree != x.terms[a].degree + d:
            continue
        for u, cu in dl.items():
            k = len(u.arrows)
            if r.start != u.start or r.arrows[:k] != u.arrows:
                continue
            if k == len(r.arrows) and u.end != r.end:
                continue
            q = Path(u.end, r.end, r.arrows[k:])
            if q.start != y.terms[j].vertex or q.end != x.terms[a].vertex:
                continue
            if not p.is_admissible(q) or q in comps.get((a, j), {}):
                continue
            out.append(((a, j), q, cu, 1))
    # through dX: an entry X_a -> X_h followed by a component X_h -> Y_b
    for (a2, h), dl in x.entries.items():
        if a2 != a or y.terms[b].degree != x.terms[h].degree + d:
            continue
        for w, cw in dl.items():
            k = len(w.arrows)
            if k == 0 or len(r.arrows) < k or r.arrows[len(r.arrows) - k :] != w.arrows:
                continue
            if k == len(r.arrows) and r.start != w.start:
                continue
            q = Path(r.start, w.start, r.arrows[: len(r.arrows) - k])
            if q.start != y.terms[b].vertex or q.end != x.terms[h].vertex:
                continue
            if not p.is_admissible(q) or q in comps.get((h, b), {}):
                continue
            out.append(((h, b), q, cw, sgn))
    return out


def propagate(p: GentlePresentation, x: ProjComplex, y: ProjComplex, d: int, seed: dict, field=None, budget: int = 400):
    """Extend seed components to a chain map by cancelling defects.

    Each defect monomial is cancelled by a new component that factors it
    through a differential entry; choices are explored depth first.
    Returns a ChainMap or None.
    """
    fld = _field(field)
    counter = [0]

    def norm(comps):
        return {k: {q: fld.scalar(c) for q, c in lc.items() if fld.scalar(c)} for k, lc in comps.items()}

    def rec(comps):
        counter[0] += 1
        if counter[0] > budget:
            return None
        defect = differential(p, x, y, d, comps)
        defect = {k: {q: fld.scalar(c) for q, c in lc.items() if fld.scalar(c)} for k, lc in defect.items()}
        defect = {k: v for k, v in defect.items() if v}
        if not defect:
            return comps
        key = min(defect)
        r = min(defect[key], key=lambda q: q.sort_key())
        c = defect[key][r]
        for pos, q, cd, sgn in _defect_candidates(p, x, y, d, (key[0], key[1], r, c), comps):
            coef = fld.mul(fld.neg(c), fld.inv(fld.scalar(cd * sgn)))
            new = {k: dict(v) for k, v in comps.items()}
            new.setdefault(pos, {})[q] = coef
            res = rec(new)
            if res is not None:
                return res
        return None

    out = rec(norm(seed))
    if out is None:
        return None
    out = {k: {q: fld.balanced(c) for q, c in lc.items()} for k, lc in out.items() if lc}
    return ChainMap(x, y, d, out)


def alp_basis(p: GentlePresentation, x: ProjComplex, y: ProjComplex, field=None, degrees=None) -> list[ChainMap]:
    """A homotopy basis of Hom*(X, Y) grown from single-component seeds."""
    hc = HomComplex(p, x, y, field)
    out = []
    for d in degrees if degrees is not None else hc.support:
        if not hc.basis(d):
            continue
        ech = hc.boundary_echelon(d)
        target = hc.cohomology(d)
        found = 0
        for i, j, q in hc.basis(d):
            if found == target:
                break
            f = propagate(p, x, y, d, {(i, j): {q: 1}}, hc.field)
            if f is None:
                continue
            if ech.add(hc.vector(d, f.comps)):
                out.append(f)
                found += 1
    return out


# ------------------------------------------------------------ fingerprints


def stalks(p: GentlePresentation) -> list[ProjComplex]:
    return [ProjComplex((Term(v, 0),), {}, "string") for v in p.vertices]


def fingerprint(p: GentlePresentation, x: ProjComplex, probes=None, field=None, window: int | None = None):
    """Hom profiles between X and a list of probes (default: the P_v)."""
    probes = stalks(p) if probes is None else probes

    def cut(prof):
        items = sorted(prof.items())
        if window is not None:
            items = [(k, v) for k, v in items if abs(k) <= window]
        return tuple(items)

    out = [cut(hom_profile(p, x, x, field))]
    for q in probes:
        out.append(cut(hom_profile(p, q, x, field)))
        out.append(cut(hom_profile(p, x, q, field)))
    return tuple(out)


def isomorphic_evidence(p: GentlePresentation, x: ProjComplex, y: ProjComplex, probes=None, field=None) -> bool:
    """Necessary conditions for X = Y: equal fingerprints and mutual profiles."""
    if fingerprint(p, x, probes, field) != fingerprint(p, y, probes, field):
        return False
    s = hom_profile(p, x, x, field)
    return hom_profile(p, x, y, field) == s and hom_profile(p, y, x, field) == s


def find_isomorphism_map(p: GentlePresentation, x: ProjComplex, y: ProjComplex, field=None) -> ChainMap | None:
    """A degree-0 basis map X -> Y whose cone is contractible, if one exists."""
    for f in alp_basis(p, x, y, field, degrees=[0]):
        if is_isomorphism(p, f, field):
            return f
    return None


def are_isomorphic(p: GentlePresentation, x: ProjComplex, y: ProjComplex, field=None) -> bool:
    """Isomorphism test: fingerprint evidence plus an explicit invertible map.

    Sums of basis maps are tried when no single one is invertible.
    """
    if not isomorphic_evidence(p, x, y, field=field):
        return False
    basis = alp_basis(p, x, y, field, degrees=[0])
    for f in basis:
        if is_isomorphism(p, f, field):
            return True
    if basis:
        total = basis[0]
        for g in basis[1:]:
            total = total + g.scaled(len(basis) + 1)
        return is_isomorphism(p, total, field)
    return False




# ------------------------------------------------------------ intersections


@dataclass(eq=False)
class CrossingMorphism:
    """The morphism of a crossing; ``forward`` means first word to second."""

    map: ChainMap
    forward: bool

    @property
    def degree(self) -> int:
        return self.map.degree


def _seg_at(w, i: int):
    n = len(w.segments)
    if w.kind == "band":
        return w.segments[i % n]
    return w.segments[i] if 0 <= i < n else None


def crossing_morphisms(m, w1, g1, w2, g2, datum, lam=1, field=None) -> list[CrossingMorphism]:
    """Non-null-homotopic maps grown from the local data of a crossing.

    Both words are oriented so the crossing reads forwards; seeds pair the
    chord ends of the two strands in each disc where they meet or part:
    an identity where they share a laminate, the thread path otherwise.
    """
    from .curves import BAND, Contact, crossing_slots, reverse_word
    from .objects import complex_of

    p = m.presentation
    x1, x2 = complex_of(m, w1, g1, lam), complex_of(m, w2, g2, lam)
    n1, n2 = len(x1.terms), len(x2.terms)
    if isinstance(datum, Contact):
        flip1, flip2 = datum.end1 == 1, datum.end2 == 1
        start1 = start2 = 0
    else:
        flip1, flip2 = False, datum.reversed_second
        start1, start2 = datum.a - 1, datum.b - 1
    v1 = reverse_word(w1) if flip1 else w1
    v2 = reverse_word(w2) if flip2 else w2
    s1, s2 = crossing_slots(v1), crossing_slots(v2)

    def term(k: int, n: int, flip: bool) -> int:
        return (n - 1 - k % n) if flip else k % n

    def shared(k1: int, k2: int) -> bool:
        if (k1 < 0 or k1 >= n1) and v1.kind != BAND:
            return False
        if (k2 < 0 or k2 >= n2) and v2.kind != BAND:
            return False
        return s1[k1 % n1] == s2[k2 % n2]

    run = 0
    while run < n1 + n2 and shared(start1 + run, start2 + run):
        run += 1
    if isinstance(datum, Contact):
        pairs = [(run, run)]
    elif run:
        pairs = [(start1, start2), (start1 + run, start2 + run)]
    else:
        pairs = [(datum.a, datum.b)]
    seeds = []  # (forward, source term, target term, path)
    for sa, sb in pairs:
        seg1, seg2 = _seg_at(v1, sa), _seg_at(v2, sb)
        if seg1 is None or seg2 is None or seg1.disc != seg2.disc:
            continue
        arr = m.discs[seg1.disc].arrows
        ends1 = [(term(k, n1, flip1), sl) for k, sl in ((sa - 1, seg1.entry), (sa, seg1.exit)) if sl is not None]
        ends2 = [(term(k, n2, flip2), sl) for k, sl in ((sb - 1, seg2.entry), (sb, seg2.exit)) if sl is not None]
        for i1, e in ends1:
            for i2, j in ends2:
                if e > j:
                    seeds.append((True, i1, i2, p.path(arr[j:e])))
                elif e < j:
                    seeds.append((False, i2, i1, p.path(arr[e:j])))
                else:
                    triv = p.trivial_path(x1.terms[i1].vertex)
                    seeds += [(True, i1, i2, triv), (False, i2, i1, triv)]
    out: list[CrossingMorphism] = []
    for fwd, i, j, path in seeds:
        src, tgt = (x1, x2) if fwd else (x2, x1)
        d = tgt.terms[j].degree - src.terms[i].degree
        f = propagate(p, src, tgt, d, {(i, j): {path: 1}}, field)
        if f is None or is_null_homotopic(p, f, field):
            continue
        if any(c.forward == fwd and c.degree == d for c in out):
            continue
        out.append(CrossingMorphism(f, fwd))
    return out


def resolution_complex(m, w1, g1, w2, g2, datum, morphism: CrossingMorphism, lam=1) -> ProjComplex:
    """Direct sum of the complexes of the resolved words."""
    from .curves import resolve_crossing
    from .objects import complex_of

    words = resolve_crossing(m, w1, g1, w2, g2, datum, morphism.forward, morphism.degree)
    return direct_sum(*[complex_of(m, w, g, lam) for w, g in words]) if words else ProjComplex((), {})


# ------------------------------------------------------------ AR triangles


def _is_invertible(p, f: ChainMap, field=None) -> bool:
    return is_contractible(p, mapping_cone(as_degree_zero(f)), field)


@dataclass(frozen=True)
class ARVerdict:
    ok: bool
    checked: int
    witness: str = ""


def ar_probes(m, grades_window: int = 0, orbit: int | None = None):
    """Dual arcs together with their fractional-twist orbits."""
    from .curves import dual_arc, grade_word, tau_translate
    from .objects import string_complex

    p = m.presentation
    out = []
    steps = orbit if orbit is not None else len(p.vertices) + 1
    for v in p.vertices:
        w = dual_arc(m, v)
        g = grade_word(m, w)
        for _ in range(steps):
            out.append(string_complex(m, w, g))
            w, g = tau_translate(m, w, g)
    return out


def ar_check(m, word, grades=None, probes=None, h: ChainMap | None = None, field=None) -> ARVerdict:
    """Check that h: X -> tau X[1] kills every non-invertible basis map into X."""
    from .curves import grade_word, tau_translate
    from .objects import string_complex

    p = m.presentation
    g = grades if grades is not None else grade_word(m, word)
    x = string_complex(m, word, g)
    if h is None:
        tw, tg = tau_translate(m, word, g)
        tx = string_complex(m, tw, tg)
        hs = alp_basis(p, x, tx, field, degrees=[1])
        if len(hs) != 1:
            return ARVerdict(False, 0, f"expected one connecting map, found {len(hs)}")
        h = hs[0]
    if is_null_homotopic(p, h, field):
        return ARVerdict(False, 0, "connecting map is null-homotopic")
    probes = ar_probes(m) if probes is None else probes
    checked = 0
    for u in list(probes) + [x]:
        for f in alp_basis(p, u, x, field):
            if _is_invertible(p, f, field):
                continue
            checked += 1
            if not is_null_homotopic(p, compose(p, h, f), field):
                return ARVerdict(False, checked, f"h does not kill a degree-{f.degree} map from {u!r}")
    return ARVerdict(True, checked)


# ------------------------------------------------------------ twists


def evaluation_map(p: GentlePresentation, x: ProjComplex, y: ProjComplex, field=None) -> ChainMap:
    """The map from the sum of X[-d] over a basis of Hom*(X, Y) to Y."""
    basis = alp_basis(p, x, y, field)
    parts = [shift(x, -f.degree) for f in basis]
    src = direct_sum(*parts) if parts else ProjComplex((), {})
    comps: dict = {}
    off = 0
    for f in basis:
        for (i, j), lc in f.comps.items():
            comps[(i + off, j)] = dict(lc)
        off += len(x.terms)
    return ChainMap(src, y, 0, comps)


def is_spherical(m, word, grades=None, lam=1, field=None):
    """The m with self profile {0: 1, m: 1} and tau X = X[m-1], or None."""
    from .curves import grade_word, tau_translate
    from .objects import complex_of

    p = m.presentation
    g = grades if grades is not None else grade_word(m, word)
    x = complex_of(m, word, g, lam)
    prof = hom_profile(p, x, x, field)
    others = [d for d in prof if d != 0]
    if prof.get(0) != 1 or len(others) != 1 or prof[others[0]] != 1:
        return None
    k = others[0]
    tw, tg = tau_translate(m, word, g)
    if fingerprint(p, complex_of(m, tw, tg, lam), field=field) != fingerprint(p, shift(x, k - 1), field=field):
        return None
    return k


def spherical_twist(p: GentlePresentation, x: ProjComplex, y: ProjComplex, field=None) -> ProjComplex:
    """Cone of the evaluation map Hom*(X, Y) (x) X -> Y."""
    prof = hom_profile(p, x, x, field)
    others = [d for d in prof if d != 0]
    if prof.get(0) != 1 or len(others) != 1 or prof[others[0]] != 1:
        raise ValueError("object is not spherical")
    ev = evaluation_map(p, x, y, field)
    if not ev.source.terms:
        return y
    return mapping_cone(ev)


__all__ = [
    "ChainMap",
    "HomComplex",
    "hom_profile",
    "hom_positions",
    "differential",
    "is_chain_map",
    "is_null_homotopic",
    "compose",
    "identity",
    "as_degree_zero",
    "mapping_cone",
    "is_contractible",
    "is_isomorphism",
    "propagate",
    "alp_basis",
    "fingerprint",
    "isomorphic_evidence",
    "are_isomorphic",
    "crossing_morphisms",
    "resolution_complex",
    "ar_check",
    "evaluation_map",
    "is_spherical",
    "spherical_twist",
]
