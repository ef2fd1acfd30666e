"""The marked surface of a gentle algebra, built from polygons.

Every permitted thread gives a polygon ("disc").  A thread a1...ak has
slots 0..k holding the laminates s(a1), ..., s(ak), t(ak) in clockwise
order; the boundary piece from the last slot back to slot 0 carries the
disc's marked point.  The two occurrences of each vertex among all slots
are glued to each other, which produces the surface.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from functools import cached_property

from .presentation import GentlePresentation, Thread, find_isomorphism, thread_vertices, threads

Slot = tuple[int, int]  # (disc index, slot index)


class ModelError(RuntimeError):
    """Internal inconsistency of the disc model."""


@dataclass(frozen=True, eq=False)
class DiscModel:
    presentation: GentlePresentation
    discs: tuple[Thread, ...]
    slots: tuple[tuple[str, ...], ...]
    partner: dict  # Slot -> Slot

    def size(self, t: int) -> int:
        return len(self.slots[t])

    def vertex(self, t: int, j: int) -> str:
        return self.slots[t][j]

    def other(self, t: int, j: int) -> Slot:
        return self.partner[(t, j)]

    def occurrences(self, v: str) -> list[Slot]:
        return [(t, j) for t, sl in enumerate(self.slots) for j, x in enumerate(sl) if x == v]

    @cached_property
    def labels(self) -> tuple[str, ...]:
        seen: Counter = Counter()
        out = []
        for d in self.discs:
            base = ".".join(d.arrows) if d.arrows else f"e_{d.vertex}"
            seen[base] += 1
            out.append(base if seen[base] == 1 else f"{base}#{seen[base]}")
        return tuple(out)

    def disc_index(self, label: str) -> int:
        return self.labels.index(label)

    def thread_path_slots(self, t: int, i: int, j: int) -> tuple[str, ...]:
        """Arrows of disc t between slots i < j."""
        return self.discs[t].arrows[i:j]

    def locate_path(self, arrows: tuple[str, ...]) -> tuple[int, int, int]:
        """Disc and slot interval (i, j) realising a non-trivial subpath."""
        for t, d in enumerate(self.discs):
            k = len(arrows)
            for i in range(len(d.arrows) - k + 1):
                if d.arrows[i : i + k] == arrows:
                    return t, i, i + k
        raise KeyError(f"path {'.'.join(arrows)} is not a subpath of a permitted thread")

    # boundary pieces -------------------------------------------------
    def next_piece(self, t: int, j: int) -> Slot:
        """Piece following piece (t, j) along the boundary."""
        return self.other(t, (j + 1) % self.size(t))

    def prev_piece(self, t: int, j: int) -> Slot:
        s, e = self.other(t, j)
        return (s, (e - 1) % self.size(s))

    def is_marked_piece(self, t: int, j: int) -> bool:
        return j == self.size(t) - 1


def build_disc_model(p: GentlePresentation) -> DiscModel:
    """Discs from permitted threads, glued along the two occurrences of each vertex."""
    th = threads(p)
    slots = tuple(thread_vertices(p, t) for t in th.permitted)
    occ: dict[str, list[Slot]] = {v: [] for v in p.vertices}
    for t, sl in enumerate(slots):
        for j, v in enumerate(sl):
            occ[v].append((t, j))
    partner: dict[Slot, Slot] = {}
    for v, places in occ.items():
        if len(places) != 2:
            raise ModelError(f"vertex {v} occurs {len(places)} times among permitted threads")
        a, b = places
        partner[a], partner[b] = b, a
    return DiscModel(p, th.permitted, slots, partner)


@dataclass(frozen=True)
class BoundaryWalk:
    """A boundary component as a cyclic list of boundary pieces."""

    pieces: tuple[Slot, ...]
    marked: tuple[int, ...]  # discs whose marked point lies on this component

    @property
    def marked_count(self) -> int:
        return len(self.marked)


def trace_boundary(m: DiscModel) -> list[BoundaryWalk]:
    """Partition all boundary pieces into closed walks."""
    todo = [(t, j) for t in range(len(m.slots)) for j in range(m.size(t))]
    seen: set[Slot] = set()
    walks = []
    for start in todo:
        if start in seen:
            continue
        pieces = [start]
        seen.add(start)
        cur = m.next_piece(*start)
        while cur != start:
            if cur in seen or len(pieces) > len(todo):
                raise ModelError(f"boundary walk through {start} does not close")
            pieces.append(cur)
            seen.add(cur)
            cur = m.next_piece(*cur)
        marked = tuple(t for t, j in pieces if m.is_marked_piece(t, j))
        walks.append(BoundaryWalk(tuple(pieces), marked))
    return walks


def boundary_winding(m: DiscModel, walk: BoundaryWalk, reverse: bool = False) -> int:
    """Winding number of the loop parallel to a boundary walk.

    Each piece contributes +1 when its disc's marked point lies on it
    (the point is then on the left of the parallel loop) and -1 otherwise.
    """
    w = sum(1 if m.is_marked_piece(t, j) else -1 for t, j in walk.pieces)
    return -w if reverse else w


@dataclass(frozen=True)
class Component:
    marked: int
    winding: int

    @property
    def aag_pair(self) -> tuple[int, int]:
        return (self.marked, self.marked - self.winding)


@dataclass(frozen=True)
class RibbonSurface:
    euler_characteristic: int
    genus: int
    boundary: tuple[Component, ...]

    @property
    def punctures(self) -> int:
        return sum(1 for c in self.boundary if c.marked == 0)

    @property
    def aag_pairs(self) -> list[tuple[int, int]]:
        return sorted(c.aag_pair for c in self.boundary)

    def to_dict(self) -> dict:
        comps = sorted(self.boundary, key=lambda c: (c.marked, c.winding))
        return {
            "chi": self.euler_characteristic,
            "genus": self.genus,
            "components": [{"marked": c.marked, "winding": c.winding} for c in comps],
            "punctures": self.punctures,
            "aag_pairs": [list(x) for x in self.aag_pairs],
        }


def _quiver_components(p: GentlePresentation) -> dict[str, int]:
    comp = {v: k for k, v in enumerate(p.vertices)}

    def find(v):
        while comp[v] != comp[p.vertices[comp[v]]]:
            comp[v] = comp[p.vertices[comp[v]]]
        return comp[v]

    for a in p.arrows:
        ra, rb = find(a.source), find(a.target)
        if ra != rb:
            for v in p.vertices:
                if comp[v] == rb:
                    comp[v] = ra
    return {v: find(v) for v in p.vertices}


def ribbon_surface(p: GentlePresentation, m: DiscModel | None = None) -> RibbonSurface:
    """Surface data; the genus is summed over connected components."""
    m = m or build_disc_model(p)
    walks = trace_boundary(m)
    chi = len(p.vertices) - len(p.arrows)
    comp = _quiver_components(p)
    genus = 0
    for c in sorted(set(comp.values())):
        vs = [v for v in p.vertices if comp[v] == c]
        chi_c = len(vs) - sum(1 for a in p.arrows if comp[a.source] == c)
        b_c = sum(1 for w in walks if comp[m.vertex(*w.pieces[0])] == c)
        twice = 2 - chi_c - b_c
        if twice < 0 or twice % 2:
            raise ModelError(f"chi={chi_c} and b={b_c} give no genus")
        genus += twice // 2
    comps = tuple(Component(w.marked_count, boundary_winding(m, w)) for w in walks)
    return RibbonSurface(chi, genus, comps)


@dataclass(frozen=True)
class DerivedInvariant:
    genus: int
    components: tuple[tuple[int, int], ...]  # sorted (marked, winding) pairs

    def to_dict(self) -> dict:
        return {"genus": self.genus, "components": [{"marked": a, "winding": b} for a, b in self.components]}


def derived_invariant(p: GentlePresentation) -> DerivedInvariant:
    s = ribbon_surface(p)
    return DerivedInvariant(s.genus, tuple(sorted((c.marked, c.winding) for c in s.boundary)))


class Verdict(Enum):
    EQUIVALENT = "Equivalent"
    NOT_EQUIVALENT = "NotEquivalent"
    UNDECIDED = "InvariantsMatchUndecided"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Decision:
    verdict: Verdict
    reason: str


def decide_derived_equivalence(p: GentlePresentation, q: GentlePresentation) -> Decision:
    ip, iq = derived_invariant(p), derived_invariant(q)
    if ip != iq:
        if ip.genus != iq.genus:
            why = f"genus {ip.genus} != {iq.genus}"
        else:
            diff = (Counter(ip.components) - Counter(iq.components)) + (Counter(iq.components) - Counter(ip.components))
            why = "boundary components differ: " + ", ".join(f"{k}" for k in sorted(diff))
        return Decision(Verdict.NOT_EQUIVALENT, why)
    if ip.genus == 0:
        return Decision(Verdict.EQUIVALENT, "invariants agree in genus 0")
    if find_isomorphism(p, q) is not None:
        return Decision(Verdict.EQUIVALENT, "presentations are isomorphic")
    return Decision(Verdict.UNDECIDED, f"invariants agree in genus {ip.genus}")


def surface_report(p: GentlePresentation) -> str:
    return json.dumps(ribbon_surface(p).to_dict(), sort_keys=True)


def disc_graph_dot(m: DiscModel) -> str:
    """DOT text for the ribbon graph: discs as nodes, laminates as edges."""
    lines = ["graph ribbon {"]
    for t, lab in enumerate(m.labels):
        lines.append(f'  d{t} [label="{lab}"];')
    done = set()
    for (t, j), (s, e) in sorted(m.partner.items()):
        if ((s, e), (t, j)) in done:
            continue
        done.add(((t, j), (s, e)))
        lines.append(f'  d{t} -- d{s} [label="{m.vertex(t, j)}", taillabel="{j}", headlabel="{e}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
