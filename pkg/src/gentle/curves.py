"""Curves on the disc model as laminate-crossing words.

A curve is cut by the laminates into segments, one per disc it passes
through.  A segment records the disc and the slots through which it
enters and leaves; ``None`` stands for the disc's marked point, so arcs
start with ``(t, None, j)`` and end with ``(t, e, None)``.  Bands are
cyclic lists of segments.  Crossing ``i`` of a word sits at the exit of
segment ``i``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .surface import DiscModel, ModelError, trace_boundary

ARC = "arc"
BAND = "band"

# Direction in which the fractional twist moves marked points along a
# boundary walk.  Pinned by the Serre duality check in the test suite.
TAU_FORWARD = True


class WordError(ValueError):
    """Malformed, ungradable or otherwise invalid curve word."""


@dataclass(frozen=True)
class Segment:
    disc: int
    entry: int | None
    exit: int | None

    def reversed(self) -> "Segment":
        return Segment(self.disc, self.exit, self.entry)

    def key(self):
        return (self.disc, -1 if self.entry is None else self.entry, -1 if self.exit is None else self.exit)


@dataclass(frozen=True)
class CurveWord:
    kind: str
    segments: tuple[Segment, ...]

    @property
    def length(self) -> int:
        """Number of laminate crossings."""
        return len(self.segments) - 1 if self.kind == ARC else len(self.segments)

    def key(self):
        return (self.kind, tuple(s.key() for s in self.segments))


def arc(*segs) -> CurveWord:
    return CurveWord(ARC, tuple(Segment(*s) for s in segs))


def band(*segs) -> CurveWord:
    return CurveWord(BAND, tuple(Segment(*s) for s in segs))


def step(seg: Segment) -> int:
    """Grading change across a segment: +1 if the marked point is on the left."""
    if seg.entry is None or seg.exit is None or seg.entry == seg.exit:
        raise WordError(f"segment {seg} has no slot step")
    return 1 if seg.entry > seg.exit else -1


# ------------------------------------------------------------ accessors


def crossing_slots(w: CurveWord) -> list[tuple[int, int]]:
    segs = w.segments if w.kind == BAND else w.segments[:-1]
    return [(s.disc, s.exit) for s in segs]


def crossing_vertices(m: DiscModel, w: CurveWord) -> list[str]:
    return [m.vertex(t, j) for t, j in crossing_slots(w)]


def gap_segments(w: CurveWord) -> list[Segment]:
    """Segment joining crossing i to crossing i+1, for each gap i."""
    if w.kind == ARC:
        return list(w.segments[1:-1])
    n = len(w.segments)
    return [w.segments[(i + 1) % n] for i in range(n)]


def gap_path(m: DiscModel, seg: Segment) -> tuple[str, ...]:
    lo, hi = sorted((seg.entry, seg.exit))
    return m.discs[seg.disc].arrows[lo:hi]


def reverse_word(w: CurveWord) -> CurveWord:
    segs = tuple(s.reversed() for s in reversed(w.segments))
    if w.kind == BAND:
        # keep crossing i at the exit of segment i
        segs = segs[-1:] + segs[:-1]
    return CurveWord(w.kind, segs)


def reverse_grades(w: CurveWord, grades: Sequence[int]) -> tuple[int, ...]:
    # crossing p of the reversed word is crossing n-1-p of w, for bands too
    return tuple(reversed(grades))


def rotate_band(w: CurveWord, k: int) -> CurveWord:
    n = len(w.segments)
    k %= n
    return CurveWord(BAND, w.segments[k:] + w.segments[:k])


def canonical(w: CurveWord) -> CurveWord:
    """Least representative among reversals (and rotations for bands)."""
    cands = [w, reverse_word(w)]
    if w.kind == BAND:
        cands = [rotate_band(c, k) for c in cands for k in range(len(w.segments))]
    return min(cands, key=CurveWord.key)


def same_curve(a: CurveWord, b: CurveWord) -> bool:
    return canonical(a) == canonical(b)


# ------------------------------------------------------------ validation


def _is_primitive(segs: tuple[Segment, ...]) -> bool:
    n = len(segs)
    return all(segs[k:] + segs[:k] != segs for k in range(1, n) if n % k == 0)


def validate_word(m: DiscModel, w: CurveWord) -> list[str]:
    """Violations of the word invariants (empty when valid)."""
    out: list[str] = []
    segs = w.segments
    if w.kind not in (ARC, BAND):
        return [f"unknown kind {w.kind!r}"]
    if w.kind == ARC and len(segs) < 2:
        return ["an arc must cross at least one laminate"]
    if w.kind == BAND and not segs:
        return ["empty band"]
    for i, s in enumerate(segs):
        if not 0 <= s.disc < len(m.slots):
            out.append(f"segment {i}: no disc {s.disc}")
            return out
        for j in (s.entry, s.exit):
            if j is not None and not 0 <= j < m.size(s.disc):
                out.append(f"segment {i}: slot {j} out of range")
                return out
    n = len(segs)
    for i, s in enumerate(segs):
        first = w.kind == ARC and i == 0
        last = w.kind == ARC and i == n - 1
        if (s.entry is None) != first or (s.exit is None) != last:
            out.append(f"segment {i}: marked-point ends only allowed at arc ends")
        elif s.entry is not None and s.entry == s.exit:
            out.append(f"segment {i}: backtracks through slot {s.entry}")
    if out:
        return out
    pairs = range(n) if w.kind == BAND else range(n - 1)
    for i in pairs:
        a, b = segs[i], segs[(i + 1) % n]
        if m.other(a.disc, a.exit) != (b.disc, b.entry):
            out.append(f"segments {i} and {(i + 1) % n} do not glue")
    if w.kind == BAND:
        if not _is_primitive(segs):
            out.append("band is a proper power")
        if not out and sum(step(s) for s in segs) != 0:
            out.append("band is not gradable (non-zero winding)")
    return out


def check_word(m: DiscModel, w: CurveWord) -> None:
    bad = validate_word(m, w)
    if bad:
        raise WordError("; ".join(bad))


# ------------------------------------------------------------ grading


def grade_word(m: DiscModel, w: CurveWord, seed: int = 0) -> tuple[int, ...]:
    """Grades of the crossings, starting from ``seed`` at the first one."""
    gaps = gap_segments(w)
    if w.kind == BAND:
        if sum(step(s) for s in gaps) != 0:
            raise WordError("band is not gradable")
        gaps = gaps[:-1]
    g = [seed]
    for s in gaps:
        g.append(g[-1] + step(s))
    return tuple(g)


def winding_number(m: DiscModel, w: CurveWord) -> int:
    if w.kind != BAND:
        raise WordError("winding number is defined for bands")
    return sum(step(s) for s in w.segments)


def gap_directions(w: CurveWord) -> list[str]:
    return [">" if step(s) > 0 else "<" for s in gap_segments(w)]


# ------------------------------------------------------------ text notation

_GAP_RE = re.compile(r"-\[\s*([^,\]]+?)\s*,\s*([<>])\s*\]-")


def format_word(m: DiscModel, w: CurveWord, lam=None) -> str:
    xs = crossing_vertices(m, w)
    gaps = gap_segments(w)
    parts = []
    for i, x in enumerate(xs):
        parts.append(x)
        if i < len(gaps):
            g = gaps[i]
            parts.append(f"-[{'.'.join(gap_path(m, g))},{'>' if step(g) > 0 else '<'}]-")
    body = " ".join(parts)
    if w.kind == ARC:
        a, b = w.segments[0], w.segments[-1]
        return f"arc: {body} @ ({m.labels[a.disc]}, {a.exit}) .. ({m.labels[b.disc]}, {b.entry})"
    return f"band({1 if lam is None else lam}): {body}"


def parse_word(m: DiscModel, text: str) -> tuple[CurveWord, object]:
    """Parse the text notation; returns the word and the band scalar (or None)."""
    text = text.strip()
    lam = None
    if text.startswith("arc:"):
        kind, rest = ARC, text[4:]
        if "@" not in rest:
            raise WordError("arc needs endpoint data after '@'")
        rest, ends = rest.split("@", 1)
        em = re.fullmatch(r"\s*\(\s*([^,()]+?)\s*,\s*(\d+)\s*\)\s*\.\.\s*\(\s*([^,()]+?)\s*,\s*(\d+)\s*\)\s*", ends)
        if not em:
            raise WordError(f"cannot parse endpoints {ends!r}")
    else:
        bm = re.match(r"band\(([^)]*)\)\s*:", text)
        if not bm:
            raise WordError("word must start with 'arc:' or 'band(...):'")
        kind, rest = BAND, text[bm.end():]
        lam = bm.group(1).strip() or "1"
    tokens = _GAP_RE.split(rest)
    xs = [t.strip() for t in tokens[0::3]]
    paths = tokens[1::3]
    dirs = tokens[2::3]
    if kind == BAND:
        if xs and xs[-1] == "":
            xs = xs[:-1]
        if len(paths) != len(xs):
            raise WordError("band needs one gap after every crossing")
    elif len(xs) != len(paths) + 1:
        raise WordError("arc crossings and gaps do not alternate")
    try:
        gap_segs = []
        for u, d in zip(paths, dirs):
            t, lo, hi = m.locate_path(tuple(a for a in u.strip().split(".") if a))
            gap_segs.append(Segment(t, hi, lo) if d == ">" else Segment(t, lo, hi))
        if kind == ARC:
            a_lab, a_slot, b_lab, b_slot = em.groups()
            first = Segment(m.disc_index(a_lab), None, int(a_slot))
            last = Segment(m.disc_index(b_lab), int(b_slot), None)
            w = CurveWord(ARC, (first, *gap_segs, last))
        else:
            n = len(gap_segs)
            w = CurveWord(BAND, tuple(gap_segs[(k - 1) % n] for k in range(n)))
    except (KeyError, ValueError) as e:
        raise WordError(str(e)) from None
    check_word(m, w)
    if crossing_vertices(m, w) != xs:
        raise WordError(f"crossings {xs} do not match the gaps")
    return w, lam


# ------------------------------------------------------------ reduction


def _glue(a: Segment, b: Segment) -> Segment:
    if a.disc != b.disc:
        raise ModelError(f"cannot glue {a} and {b}")
    return Segment(a.disc, a.entry, b.exit)


def reduce_graded(kind: str, segs: list[Segment], grades: list[int | None]) -> tuple[list[Segment], list[int | None]]:
    """Cancel backtracking segments; crossing i sits at the exit of segs[i].

    Grades of surviving crossings are kept unchanged.
    """
    segs, grades = list(segs), list(grades)
    changed = True
    while changed:
        changed = False
        n = len(segs)
        if kind == ARC:
            for i in range(1, n - 1):
                s = segs[i]
                if s.entry == s.exit:
                    merged = _glue(segs[i - 1], segs[i + 1])
                    segs[i - 1 : i + 2] = [merged]
                    del grades[i - 1 : i + 1]
                    changed = True
                    break
        else:
            if n == 0:
                break
            for i in range(n):
                s = segs[i]
                if s.entry == s.exit:
                    if n <= 2:
                        return [], []
                    # rotate so the backtrack sits in the interior
                    k = i - 1
                    segs = segs[k:] + segs[:k]
                    grades = grades[k:] + grades[:k]
                    merged = _glue(segs[0], segs[2])
                    # crossings 0 and 1 disappear; crossing 2 now exits merged
                    segs = [merged] + segs[3:]
                    grades = grades[2:]
                    changed = True
                    break
    return segs, grades


def reduce_word(w: CurveWord) -> CurveWord:
    segs, _ = reduce_graded(w.kind, list(w.segments), [None] * len(w.segments))
    return CurveWord(w.kind, tuple(segs))


def check_grades(w: CurveWord, grades: Sequence[int]) -> bool:
    """Whether the grades follow the slot rule along every gap."""
    n = len(grades)
    for i, s in enumerate(gap_segments(w)):
        j = i + 1 if w.kind == ARC else (i + 1) % n
        if grades[j] - grades[i] != step(s):
            return False
    return True


def is_trivial_arc(segs: Sequence[Segment]) -> bool:
    return len(segs) == 1


# ------------------------------------------------------------ special curves


def dual_arc(m: DiscModel, v: str) -> CurveWord:
    """The arc crossing only the laminate of v; it represents P_v."""
    (t, j), (s, e) = m.occurrences(v)
    return arc((t, None, j), (s, e, None))


def collar(m: DiscModel, t: int, forward: bool = True) -> list[Segment]:
    """Arc from the marked point of disc t to the next marked point.

    It runs parallel to the boundary, forwards or backwards along the walk.
    """
    if forward:
        segs = [Segment(t, None, 0)]
        cur = m.other(t, 0)
        while cur[1] != m.size(cur[0]) - 1:
            segs.append(Segment(cur[0], cur[1], cur[1] + 1))
            cur = m.other(cur[0], cur[1] + 1)
        segs.append(Segment(cur[0], cur[1], None))
    else:
        last = m.size(t) - 1
        segs = [Segment(t, None, last)]
        cur = m.other(t, last)
        while cur[1] != 0:
            segs.append(Segment(cur[0], cur[1], cur[1] - 1))
            cur = m.other(cur[0], cur[1] - 1)
        segs.append(Segment(cur[0], cur[1], None))
    return segs


def boundary_segments(m: DiscModel) -> list[tuple[int, CurveWord]]:
    """Arcs between consecutive marked points, tagged by boundary walk index."""
    out = []
    for k, walk in enumerate(trace_boundary(m)):
        for t in walk.marked:
            out.append((k, CurveWord(ARC, tuple(collar(m, t, True)))))
    return out


def boundary_loops(m: DiscModel) -> list[tuple[int, CurveWord]]:
    """Reduced loops parallel to each boundary walk (contractible ones dropped)."""
    out = []
    for k, walk in enumerate(trace_boundary(m)):
        segs = []
        for t, j in walk.pieces:
            segs.append(Segment(t, j, (j + 1) % m.size(t)))
        # crossing i must sit at the exit of segment i; already the case
        red, _ = reduce_graded(BAND, segs, [None] * len(segs))
        if red and _is_primitive(tuple(red)):
            out.append((k, CurveWord(BAND, tuple(red))))
    return out


# ------------------------------------------------------------ AR translation


def _concat(pieces: list[tuple[list[Segment], list[int | None]]]) -> tuple[list[Segment], list[int | None]]:
    """Concatenate arc pieces, gluing the last segment of each to the next."""
    segs, grades = list(pieces[0][0]), list(pieces[0][1])
    for s2, g2 in pieces[1:]:
        glued = _glue(segs[-1], s2[0])
        segs[-1] = glued
        segs.extend(s2[1:])
        grades.extend(g2)
    return segs, grades


def _collar_grades(segs: list[Segment], start: int) -> list[int]:
    """Grades along a collar whose first crossing has grade ``start``."""
    g = [start]
    for s in segs[1:-1]:
        g.append(g[-1] + step(s))
    return g


def tau_translate(m: DiscModel, w: CurveWord, grades: Sequence[int] | None = None, inverse: bool = False):
    """Fractional twist of a graded curve: arc ends move to the next marked point.

    Returns the reduced word and its grading; crossings of ``w`` that survive
    keep their grades.
    """
    check_word(m, w)
    if grades is None:
        grades = grade_word(m, w)
    if w.kind == BAND:
        # closed curves avoid the boundary, so the twist fixes them
        return w, tuple(grades)
    forward = TAU_FORWARD != inverse
    first, last = w.segments[0], w.segments[-1]
    head = collar(m, first.disc, forward)
    tail = collar(m, last.disc, forward)
    # junction steps: the collar arrives beside slot 0 (forward) or the last slot
    j_in = -1 if forward else 1
    j_out = 1 if forward else -1
    g0, gl = grades[0], grades[-1]
    # head is traversed backwards, ending next to the old start point
    head_rev = [s.reversed() for s in reversed(head)]
    # crossing before the glued start segment
    h_last = g0 - j_in
    hg = _collar_grades(head, 0)
    # head crossings in original order have grades hg; in reverse order the
    # last one (adjacent to the junction) must equal h_last
    rev_g = list(reversed(hg))
    shift = h_last - rev_g[-1]
    head_grades = [x + shift for x in rev_g]
    tail_first = gl + j_out
    tail_grades = _collar_grades(tail, tail_first)
    segs, gr = _concat([(head_rev, head_grades), (list(w.segments), list(grades)), (tail, tail_grades)])
    segs, gr = reduce_graded(ARC, segs, gr)
    out = CurveWord(ARC, tuple(segs))
    if len(segs) < 2:
        raise ModelError("fractional twist produced a trivial arc")
    check_word(m, out)
    if not check_grades(out, gr):
        raise ModelError("fractional twist grading is inconsistent")
    return out, tuple(gr)


def tau_power(m: DiscModel, w: CurveWord, grades: Sequence[int] | None, k: int):
    g = grades if grades is not None else grade_word(m, w)
    for _ in range(abs(k)):
        w, g = tau_translate(m, w, g, inverse=k < 0)
    return w, g


# ------------------------------------------------------------ intersections


def _pos(m: DiscModel, t: int, j: int | None) -> int:
    return 0 if j is None else j + 1


@dataclass(frozen=True)
class Crossing:
    """An interior intersection of two words.

    ``a`` and ``b`` index segments of the first and second word (the second
    possibly reversed) lying in a common disc where the smoothing is done.
    ``sign`` is +1 when the second word crosses the first from right to left.
    """

    a: int
    b: int
    reversed_second: bool
    sign: int


@dataclass(frozen=True)
class Contact:
    """A shared marked point: end ``end1`` of the first word meets ``end2`` of the second."""

    disc: int
    end1: int  # 0 = start, 1 = end
    end2: int


def _seg(w: CurveWord, i: int) -> Segment:
    n = len(w.segments)
    if w.kind == BAND:
        return w.segments[i % n]
    return w.segments[i] if 0 <= i < n else None


def _left_of(m: DiscModel, t: int, anchor: int, p: int, q: int, arriving: bool) -> bool:
    """Whether the strand through position p lies left of the one through q."""
    size = m.size(t) + 1
    dp, dq = (p - anchor) % size, (q - anchor) % size
    return dp > dq if arriving else dp < dq


def interior_crossings(m: DiscModel, w1: CurveWord, w2: CurveWord) -> list[Crossing]:
    """Transversal interior intersections of two words in minimal position."""
    out: list[Crossing] = []
    n1, n2 = len(w1.segments), len(w2.segments)
    # crossings inside a single disc
    for a, s in enumerate(w1.segments):
        for b, r in enumerate(w2.segments):
            if s.disc != r.disc:
                continue
            t = s.disc
            p1, p2 = _pos(m, t, s.entry), _pos(m, t, s.exit)
            q1, q2 = _pos(m, t, r.entry), _pos(m, t, r.exit)
            if len({p1, p2, q1, q2}) < 4:
                continue
            size = m.size(t) + 1
            inside = lambda x: 0 < (x - p1) % size < (p2 - p1) % size  # noqa: E731
            if inside(q1) != inside(q2):
                # q1 on the left of the first strand iff it lies clockwise after p1
                out.append(Crossing(a, b, False, -1 if inside(q1) else 1))
    # parallel runs through common laminates
    for rev in (False, True):
        v2 = reverse_word(w2) if rev else w2
        if w1.kind == BAND and w2.kind == BAND and same_curve(w1, w2):
            break
        for i in range(n1 if w1.kind == BAND else n1 - 1):
            for k in range(n2 if v2.kind == BAND else n2 - 1):
                s, r = _seg(w1, i), _seg(v2, k)
                if (s.disc, s.exit) != (r.disc, r.exit):
                    continue
                if s.entry == r.entry and s.entry is not None:
                    continue  # not the start of the run
                if s.entry is None and r.entry is None:
                    continue  # common endpoint: a boundary contact
                length = 1
                limit = n1 + n2 + 2
                while length < limit:
                    s2, r2 = _seg(w1, i + length), _seg(v2, k + length)
                    if s2 is None or r2 is None or s2.exit is None or r2.exit is None:
                        break
                    if (s2.disc, s2.exit) != (r2.disc, r2.exit):
                        break
                    length += 1
                if length >= limit:
                    continue
                s2, r2 = _seg(w1, i + length), _seg(v2, k + length)
                if s2.exit is None and r2.exit is None:
                    continue  # ends at a common marked point
                t_in = s.disc
                anchor_in = _pos(m, t_in, s.exit)
                left_in = _left_of(m, t_in, anchor_in, _pos(m, t_in, s.entry), _pos(m, t_in, r.entry), True)
                t_out = s2.disc
                anchor_out = _pos(m, t_out, s2.entry)
                left_out = _left_of(m, t_out, anchor_out, _pos(m, t_out, s2.exit), _pos(m, t_out, r2.exit), False)
                if left_in == left_out:
                    continue
                # second strand starts on the right of the first iff the first is left of it
                sign = 1 if left_in else -1
                a = (i + 1) % n1 if w1.kind == BAND else i + 1
                b = (k + 1) % n2 if v2.kind == BAND else k + 1
                out.append(Crossing(a, b, rev, sign))
    return out


def boundary_contacts(m: DiscModel, w1: CurveWord, w2: CurveWord) -> list[Contact]:
    out = []
    if w1.kind != ARC or w2.kind != ARC:
        return out
    ends1 = [(0, w1.segments[0].disc), (1, w1.segments[-1].disc)]
    ends2 = [(0, w2.segments[0].disc), (1, w2.segments[-1].disc)]
    for e1, t1 in ends1:
        for e2, t2 in ends2:
            if t1 == t2:
                out.append(Contact(t1, e1, e2))
    return out


def _oriented(w: CurveWord, g: Sequence[int], end_at_contact: int, want_end: bool):
    """Orient a graded arc so that the contact end is last (or first)."""
    is_end = end_at_contact == 1
    if is_end == want_end:
        return list(w.segments), list(g)
    rw = reverse_word(w)
    return list(rw.segments), list(reverse_grades(w, g))


def concatenate(m: DiscModel, w1: CurveWord, g1, w2: CurveWord, g2, contact: Contact):
    """Join two graded arcs at a shared marked point (w1 first, then w2)."""
    s1, h1 = _oriented(w1, g1, contact.end1, True)
    s2, h2 = _oriented(w2, g2, contact.end2, False)
    segs, gr = _concat([(s1, h1), (s2, h2)])
    segs, gr = reduce_graded(ARC, segs, gr)
    return _finish(ARC, segs, gr)


def _finish(kind: str, segs, gr):
    if kind == ARC and len(segs) < 2:
        return None
    if kind == BAND and not segs:
        return None
    w = CurveWord(kind, tuple(segs))
    return w, tuple(gr)


def smooth(m: DiscModel, w1: CurveWord, g1, w2: CurveWord, g2, c: Crossing) -> list:
    """Orientation-respecting smoothing of an interior crossing.

    The first word's incoming half joins the second word's outgoing half
    and vice versa.  Returns graded words whose grades are inherited.
    Smoothing against the reversed second word gives the other resolution.
    """
    if c.reversed_second:
        w2, g2 = reverse_word(w2), reverse_grades(w2, g2)
    a, b = c.a, c.b
    s, r = w1.segments[a], w2.segments[b]
    j1 = Segment(s.disc, s.entry, r.exit)
    j2 = Segment(s.disc, r.entry, s.exit)
    L1, G1 = list(w1.segments), list(g1)
    L2, G2 = list(w2.segments), list(g2)
    if w1.kind == ARC and w2.kind == ARC:
        out1 = (L1[:a] + [j1] + L2[b + 1 :], G1[:a] + G2[b:])
        out2 = (L2[:b] + [j2] + L1[a + 1 :], G2[:b] + G1[a:])
        res = [reduce_graded(ARC, *out1), reduce_graded(ARC, *out2)]
        return [x for x in (_finish(ARC, *o) for o in res) if x]
    if w1.kind == BAND and w2.kind == ARC:
        # the loop is absorbed into the arc; relabel so the arc comes first
        flipped = Crossing(b, a, False, -c.sign)
        return smooth(m, w2, g2, w1, g1, flipped)
    if w2.kind == BAND:
        L2 = L2[b:] + L2[:b]
        G2 = G2[b:] + G2[:b]
        loop_segs = [j1] + L2[1:] + [j2]
        loop_grades = G2
        if w1.kind == ARC:
            segs = L1[:a] + loop_segs + L1[a + 1 :]
            gr = G1[:a] + loop_grades + G1[a:]
            return [x for x in [_finish(ARC, *reduce_graded(ARC, segs, gr))] if x]
        L1 = L1[a:] + L1[:a]
        G1 = G1[a:] + G1[:a]
        segs = [j1] + L2[1:] + [j2] + L1[1:]
        gr = G2 + G1
        return [x for x in [_finish(BAND, *reduce_graded(BAND, segs, gr))] if x]
    raise WordError("unsupported crossing")


def resolutions(m: DiscModel, w1, g1, w2, g2, c: Crossing) -> tuple[list, list]:
    """Both smoothings of an interior crossing: (respecting, reversing)."""
    plus = smooth(m, w1, g1, w2, g2, c)
    other = Crossing(c.a, _reversed_index(w2, c.b), not c.reversed_second, -c.sign)
    minus = smooth(m, w1, g1, w2, g2, other)
    return plus, minus


def resolve_crossing(m: DiscModel, w1, g1, w2, g2, datum, forward: bool = True, degree: int = 0) -> list:
    """Graded words of the cone of the morphism attached to a crossing.

    ``forward`` means the morphism goes from the first word to the second;
    ``degree`` is its degree.  The source enters one step lower and the
    target is shifted by the degree, as in a mapping cone.
    """
    if forward:
        h1, h2 = [g - 1 for g in g1], [g - degree for g in g2]
    else:
        h1, h2 = [g - degree for g in g1], [g - 1 for g in g2]
    if isinstance(datum, Contact):
        if datum not in boundary_contacts(m, w1, w2):
            raise WordError("contact is not shared by the two words")
        r = concatenate(m, w1, h1, w2, h2, datum)
        return [r] if r else []
    if datum not in interior_crossings(m, w1, w2):
        raise WordError("crossing is not an intersection of the two words")
    plus, minus = resolutions(m, w1, h1, w2, h2, datum)
    return minus if forward == (datum.sign > 0) else plus


def _reversed_index(w: CurveWord, b: int) -> int:
    n = len(w.segments)
    if w.kind == ARC:
        return n - 1 - b
    # reverse_word maps segment i to position (n - 1 - i + 1) % n
    return (n - b) % n


def intersection_counts(m: DiscModel, w1: CurveWord, w2: CurveWord) -> tuple[int, int]:
    """(boundary contacts, interior crossings) of two distinct words."""
    return len(boundary_contacts(m, w1, w2)), len(interior_crossings(m, w1, w2))


# ------------------------------------------------------------ classification


def classify_word(m: DiscModel, w: CurveWord, field=None) -> str:
    """essential, boundary-segment, boundary-nonsegment or generic."""
    from . import homalg, objects

    check_word(m, w)
    if w.kind == ARC:
        segs = {canonical(b) for _, b in boundary_segments(m)}
        if canonical(w) in segs:
            return "boundary-segment"
        x = objects.string_complex(m, w, grade_word(m, w))
        total = sum(homalg.hom_profile(m.presentation, x, x, field).values())
        return "essential" if total <= 2 else "generic"
    loops = {canonical(b) for _, b in boundary_loops(m)}
    return "boundary-nonsegment" if canonical(w) in loops else "generic"


def words_up_to(m: DiscModel, max_crossings: int, kind: str = ARC) -> list[CurveWord]:
    """All valid reduced words with at most ``max_crossings`` crossings, one per class."""
    seen = set()
    out = []
    if kind == ARC:
        frontier = [[Segment(t, None, j)] for t in range(len(m.slots)) for j in range(m.size(t))]
        for _ in range(max_crossings):
            nxt = []
            for segs in frontier:
                last = segs[-1]
                t, e = m.other(last.disc, last.exit)
                w = CurveWord(ARC, tuple(segs + [Segment(t, e, None)]))
                c = canonical(w)
                if c not in seen:
                    seen.add(c)
                    out.append(c)
                for j in range(m.size(t)):
                    if j != e:
                        nxt.append(segs + [Segment(t, e, j)])
            frontier = nxt
        return out
    # bands: closed walks starting at each slot
    for start_t in range(len(m.slots)):
        for start_j in range(m.size(start_t)):
            stack = [[Segment(start_t, None, start_j)]]
            while stack:
                segs = stack.pop()
                last = segs[-1]
                t, e = m.other(last.disc, last.exit)
                if t == start_t:
                    cand = [Segment(t, e, start_j)] + segs[1:]
                    if e != start_j:
                        w = CurveWord(BAND, tuple(cand))
                        if not validate_word(m, w):
                            c = canonical(w)
                            if c not in seen:
                                seen.add(c)
                                out.append(c)
                if len(segs) < max_crossings:
                    for j in range(m.size(t)):
                        if j != e:
                            stack.append(segs + [Segment(t, e, j)])
    return out


def random_arc(m: DiscModel, rng, max_crossings: int) -> CurveWord:
    """A uniformly grown random reduced arc with 1..max_crossings crossings."""
    k = rng.randint(1, max(max_crossings, 1))
    t = rng.randrange(len(m.slots))
    segs = [Segment(t, None, rng.randrange(m.size(t)))]
    for _ in range(k - 1):
        s, e = m.other(segs[-1].disc, segs[-1].exit)
        choices = [j for j in range(m.size(s)) if j != e]
        if not choices:
            break
        segs.append(Segment(s, e, rng.choice(choices)))
    s, e = m.other(segs[-1].disc, segs[-1].exit)
    return CurveWord(ARC, tuple(segs + [Segment(s, e, None)]))


def random_band(m: DiscModel, rng, max_crossings: int, tries: int = 200) -> CurveWord | None:
    """A random valid band with at most max_crossings crossings, or None."""
    for _ in range(tries):
        t0 = rng.randrange(len(m.slots))
        j0 = rng.randrange(m.size(t0))
        segs = [Segment(t0, None, j0)]
        for _ in range(max_crossings):
            s, e = m.other(segs[-1].disc, segs[-1].exit)
            if s == t0 and e != j0 and rng.random() < 0.5:
                w = CurveWord(BAND, (Segment(t0, e, j0),) + tuple(segs[1:]))
                if not validate_word(m, w):
                    return w
            choices = [j for j in range(m.size(s)) if j != e]
            if not choices:
                break
            segs.append(Segment(s, e, rng.choice(choices)))
    return None
