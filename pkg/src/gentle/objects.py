"""Complexes of indecomposable projectives built from curve words.

A term ``(x, n)`` is a copy of P_x in degree n.  A differential entry from
term i to term j is a linear combination of paths from the vertex of j to
the vertex of i: a path p from b to a gives the map P_a -> P_b.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .curves import (
    ARC,
    BAND,
    CurveWord,
    Segment,
    WordError,
    check_word,
    crossing_vertices,
    dual_arc,
    gap_path,
    gap_segments,
    step,
)
from .presentation import GentlePresentation, Path
from .surface import DiscModel

LinComb = dict  # Path -> scalar


@dataclass(frozen=True)
class Term:
    vertex: str
    degree: int


@dataclass(frozen=True, eq=False)
class ProjComplex:
    terms: tuple[Term, ...]
    entries: dict = field(default_factory=dict)  # (i, j) -> LinComb
    kind: str = "general"

    def __len__(self) -> int:
        return len(self.terms)

    def degrees(self) -> list[int]:
        return sorted({t.degree for t in self.terms})

    def out_entries(self, i: int):
        return [(j, lc) for (a, j), lc in self.entries.items() if a == i]

    def in_entries(self, j: int):
        return [(i, lc) for (i, b), lc in self.entries.items() if b == j]

    def __repr__(self) -> str:
        body = ", ".join(f"P{t.vertex}[{t.degree}]" for t in self.terms)
        return f"ProjComplex({body}; {len(self.entries)} entries)"


def _add(lc: LinComb, path: Path, coef) -> None:
    c = lc.get(path, 0) + coef
    if c == 0:
        lc.pop(path, None)
    else:
        lc[path] = c


def make_complex(terms, entries, kind: str = "general") -> ProjComplex:
    """Terms as (vertex, degree) pairs; entries as {(i, j): {Path: coef}}."""
    ts = tuple(t if isinstance(t, Term) else Term(*t) for t in terms)
    clean = {}
    for (i, j), lc in entries.items():
        if ts[j].degree != ts[i].degree + 1:
            raise ValueError(f"entry {i}->{j} does not raise the degree by one")
        lc = {p: c for p, c in lc.items() if c != 0}
        for p in lc:
            if p.start != ts[j].vertex or p.end != ts[i].vertex:
                raise ValueError(f"path {p} does not give a map P{ts[i].vertex} -> P{ts[j].vertex}")
        if lc:
            clean[(i, j)] = lc
    return ProjComplex(ts, clean, kind)


def stalk(v: str, degree: int = 0) -> ProjComplex:
    return ProjComplex((Term(v, degree),), {}, "string")


def _word_entries(m: DiscModel, w: CurveWord, n: int, lam=None) -> dict:
    p = m.presentation
    entries: dict = {}
    gaps = gap_segments(w)
    for i, s in enumerate(gaps):
        j = (i + 1) % n
        path = p.path(gap_path(m, s))
        coef = lam if (lam is not None and i == len(gaps) - 1) else 1
        # a backward gap maps P_{x_{i+1}} to P_{x_i}, a forward one the other way
        key = (j, i) if step(s) < 0 else (i, j)
        lc = entries.setdefault(key, {})
        _add(lc, path, coef)
    return entries


def string_complex(m: DiscModel, w: CurveWord, grades) -> ProjComplex:
    if w.kind != ARC:
        raise WordError("string complexes come from arcs")
    check_word(m, w)
    xs = crossing_vertices(m, w)
    if len(grades) != len(xs):
        raise WordError("one grade per crossing is required")
    terms = tuple(Term(x, g) for x, g in zip(xs, grades))
    return make_complex(terms, _word_entries(m, w, len(xs)), "string")


def band_complex(m: DiscModel, w: CurveWord, grades, lam=1) -> ProjComplex:
    if w.kind != BAND:
        raise WordError("band complexes come from bands")
    check_word(m, w)
    if lam == 0:
        raise WordError("band parameter must be non-zero")
    xs = crossing_vertices(m, w)
    terms = tuple(Term(x, g) for x, g in zip(xs, grades))
    return make_complex(terms, _word_entries(m, w, len(xs), lam), f"band({lam})")


def complex_of(m: DiscModel, w: CurveWord, grades, lam=1) -> ProjComplex:
    return string_complex(m, w, grades) if w.kind == ARC else band_complex(m, w, grades, lam)


def shift(x: ProjComplex, n: int) -> ProjComplex:
    """X[n]: degrees drop by n, the differential picks up (-1)^n."""
    sign = -1 if n % 2 else 1
    terms = tuple(Term(t.vertex, t.degree - n) for t in x.terms)
    entries = {k: {p: sign * c for p, c in lc.items()} for k, lc in x.entries.items()}
    return ProjComplex(terms, entries, x.kind)


def direct_sum(*xs: ProjComplex) -> ProjComplex:
    terms: list[Term] = []
    entries: dict = {}
    for x in xs:
        off = len(terms)
        terms.extend(x.terms)
        for (i, j), lc in x.entries.items():
            entries[(i + off, j + off)] = dict(lc)
    return ProjComplex(tuple(terms), entries, "general" if len(xs) != 1 else xs[0].kind)


def check_dsquared(p: GentlePresentation, x: ProjComplex):
    """None if the differential squares to zero, else a witness (i, k)."""
    comp: dict = {}
    for (i, j), lc1 in x.entries.items():
        for (j2, k), lc2 in x.entries.items():
            if j2 != j:
                continue
            acc = comp.setdefault((i, k), {})
            for q, c2 in lc2.items():
                for r, c1 in lc1.items():
                    prod = p.multiply(q, r)
                    if prod is not None:
                        _add(acc, prod, c1 * c2)
    for key, lc in comp.items():
        if lc:
            return key
    return None


def identify_string(m: DiscModel, x: ProjComplex):
    """Recover (word, grades) from a string complex, or None."""
    n = len(x.terms)
    if n == 0:
        return None
    if n == 1:
        w = dual_arc(m, x.terms[0].vertex)
        return w, (x.terms[0].degree,)
    adj: dict[int, list[tuple[int, Path, bool]]] = {i: [] for i in range(n)}
    for (i, j), lc in x.entries.items():
        if len(lc) != 1:
            return None
        (path,) = lc
        if path.trivial:
            return None
        adj[i].append((j, path, True))
        adj[j].append((i, path, False))
    if len(x.entries) != n - 1 or any(len(v) > 2 for v in adj.values()):
        return None
    ends = [i for i, v in adj.items() if len(v) == 1]
    if len(ends) != 2:
        return None
    order = [ends[0]]
    prev = None
    while len(order) < n:
        cur = order[-1]
        nxt = [e for e in adj[cur] if e[0] != prev]
        if not nxt:
            return None
        prev = cur
        order.append(nxt[0][0])
    gaps = []
    for a, b in zip(order, order[1:]):
        (j, path, outgoing) = next(e for e in adj[a] if e[0] == b)
        try:
            t, lo, hi = m.locate_path(path.arrows)
        except KeyError:
            return None
        # outgoing: map P_a -> P_b, a forward gap entering at the higher slot
        gaps.append(Segment(t, hi, lo) if outgoing else Segment(t, lo, hi))
    first_t, first_j = m.other(gaps[0].disc, gaps[0].entry)
    last_t, last_e = m.other(gaps[-1].disc, gaps[-1].exit)
    w = CurveWord(ARC, (Segment(first_t, None, first_j), *gaps, Segment(last_t, last_e, None)))
    try:
        check_word(m, w)
    except WordError:
        return None
    if crossing_vertices(m, w) != [x.terms[i].vertex for i in order]:
        return None
    grades = tuple(x.terms[i].degree for i in order)
    for g, s in zip(zip(grades, grades[1:]), gaps):
        if g[1] - g[0] != step(s):
            return None
    return w, grades


def structurally_equal(x: ProjComplex, y: ProjComplex) -> bool:
    """Equality up to reordering of terms."""
    if sorted((t.vertex, t.degree) for t in x.terms) != sorted((t.vertex, t.degree) for t in y.terms):
        return False
    if len(x.entries) != len(y.entries):
        return False
    n = len(x.terms)
    groups: dict = {}
    for i, t in enumerate(y.terms):
        groups.setdefault(t, []).append(i)
    keys = [x.terms[i] for i in range(n)]

    def rec(i: int, used: set, perm: list) -> bool:
        if i == n:
            return all(y.entries.get((perm[a], perm[b])) == lc for (a, b), lc in x.entries.items())
        for j in groups[keys[i]]:
            if j not in used:
                used.add(j)
                perm.append(j)
                if rec(i + 1, used, perm):
                    return True
                perm.pop()
                used.discard(j)
        return False

    if n > 10:
        return False
    return rec(0, set(), [])


def complex_to_json(x: ProjComplex) -> str:
    data = {
        "kind": x.kind,
        "terms": [{"vertex": t.vertex, "degree": t.degree} for t in x.terms],
        "entries": [
            {"source": i, "target": j, "paths": [{"scalar": str(c), "arrows": list(p.arrows), "vertex": p.start} for p, c in sorted(lc.items(), key=lambda kv: kv[0].sort_key())]}
            for (i, j), lc in sorted(x.entries.items())
        ],
    }
    return json.dumps(data, sort_keys=True)


def total_dimension(p: GentlePresentation, x: ProjComplex) -> int:
    """Sum of dim P_v over the terms."""
    return sum(sum(len(p.paths_between(t.vertex, v)) for v in p.vertices) for t in x.terms)


__all__ = [
    "Term",
    "ProjComplex",
    "make_complex",
    "stalk",
    "string_complex",
    "band_complex",
    "complex_of",
    "shift",
    "direct_sum",
    "check_dsquared",
    "identify_string",
    "structurally_equal",
    "complex_to_json",
]
