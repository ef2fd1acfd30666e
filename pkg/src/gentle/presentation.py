"""Gentle presentations: parsing, validation, path arithmetic and threads.

Arrows compose left to right: the path ``a.b`` runs along ``a`` and then
along ``b``.  A relation ``(a, b)`` means the composite ``ab`` is zero.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations
from typing import Iterable

_IDENT = r"[A-Za-z0-9_']+"
_VERTICES_RE = re.compile(r"^vertices\s*:(.*)$")
_ARROW_RE = re.compile(rf"^arrow\s+({_IDENT})\s*:\s*({_IDENT})\s*->\s*({_IDENT})\s*$")
_REL_RE = re.compile(rf"^rel\s+({_IDENT})\s+({_IDENT})\s*$")
_IDENT_RE = re.compile(rf"^{_IDENT}$")


class PresentationError(ValueError):
    """Raised for malformed or structurally inconsistent presentations."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


@dataclass(frozen=True)
class Arrow:
    id: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise PresentationError("duplicate vertex id")
        ids = [a.id for a in self.arrows]
        if len(set(ids)) != len(ids):
            raise PresentationError("duplicate arrow id")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise PresentationError(f"arrow {a.id} uses an undeclared vertex")

    @cached_property
    def arrow_map(self) -> dict[str, Arrow]:
        return {a.id: a for a in self.arrows}

    def arrow(self, aid: str) -> Arrow:
        return self.arrow_map[aid]

    def out_arrows(self, v: str) -> list[str]:
        return [a.id for a in self.arrows if a.source == v]

    def in_arrows(self, v: str) -> list[str]:
        return [a.id for a in self.arrows if a.target == v]


@dataclass(frozen=True)
class Path:
    """A path in the quiver; trivial paths carry their vertex."""

    start: str
    end: str
    arrows: tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.arrows)

    @property
    def trivial(self) -> bool:
        return not self.arrows

    def __str__(self) -> str:
        return "e_" + self.start if not self.arrows else ".".join(self.arrows)

    def sort_key(self):
        return (len(self.arrows), self.arrows, self.start)


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple[str, ...]

    def __str__(self) -> str:
        return f"{self.axiom}: {' '.join(self.witness)}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        return "ok" if self.ok else "\n".join(str(v) for v in self.violations)


@dataclass(frozen=True)
class Thread:
    """A permitted or forbidden thread.

    Non-trivial threads store their arrows in order; trivial threads store
    only the vertex.
    """

    kind: str
    arrows: tuple[str, ...]
    vertex: str | None = None

    @property
    def trivial(self) -> bool:
        return not self.arrows


@dataclass(frozen=True)
class Threads:
    permitted: tuple[Thread, ...]
    forbidden: tuple[Thread, ...]
    relation_cycles: tuple[tuple[str, ...], ...]


@dataclass(frozen=True)
class GentlePresentation:
    quiver: Quiver
    relations: frozenset = field(default_factory=frozenset)
    name: str = ""

    def __post_init__(self):
        q = self.quiver
        for a, b in self.relations:
            if a not in q.arrow_map or b not in q.arrow_map:
                raise PresentationError(f"relation {a} {b} uses an undeclared arrow")
            if q.arrow(a).target != q.arrow(b).source:
                raise PresentationError(f"relation {a} {b} is not composable")

    # convenience accessors
    @property
    def vertices(self) -> tuple[str, ...]:
        return self.quiver.vertices

    @property
    def arrows(self) -> tuple[Arrow, ...]:
        return self.quiver.arrows

    def arrow(self, aid: str) -> Arrow:
        return self.quiver.arrow(aid)

    def is_relation(self, a: str, b: str) -> bool:
        return (a, b) in self.relations

    def free_successors(self, a: str) -> list[str]:
        t = self.arrow(a).target
        return [b for b in self.quiver.out_arrows(t) if (a, b) not in self.relations]

    def free_predecessors(self, b: str) -> list[str]:
        s = self.arrow(b).source
        return [a for a in self.quiver.in_arrows(s) if (a, b) not in self.relations]

    def rel_successors(self, a: str) -> list[str]:
        t = self.arrow(a).target
        return [b for b in self.quiver.out_arrows(t) if (a, b) in self.relations]

    def rel_predecessors(self, b: str) -> list[str]:
        s = self.arrow(b).source
        return [a for a in self.quiver.in_arrows(s) if (a, b) in self.relations]

    def path(self, arrows: Iterable[str] | str, vertex: str | None = None) -> Path:
        """Build a path from arrow ids (a dotted string is accepted)."""
        if isinstance(arrows, str):
            arrows = [x for x in arrows.split(".") if x]
        arrows = tuple(arrows)
        if not arrows:
            if vertex is None:
                raise PresentationError("trivial path needs a vertex")
            return Path(vertex, vertex, ())
        for a, b in zip(arrows, arrows[1:]):
            if self.arrow(a).target != self.arrow(b).source:
                raise PresentationError(f"arrows {a} and {b} do not compose")
        return Path(self.arrow(arrows[0]).source, self.arrow(arrows[-1]).target, arrows)

    def trivial_path(self, v: str) -> Path:
        return Path(v, v, ())

    def is_admissible(self, p: Path) -> bool:
        return all((a, b) not in self.relations for a, b in zip(p.arrows, p.arrows[1:]))

    def multiply(self, p: Path, q: Path) -> Path | None:
        """The product p·q in kQ/I, or None when it vanishes."""
        if p.end != q.start:
            return None
        if p.arrows and q.arrows and (p.arrows[-1], q.arrows[0]) in self.relations:
            return None
        return Path(p.start, q.end, p.arrows + q.arrows)

    @cached_property
    def _basis_index(self) -> dict[tuple[str, str], list[Path]]:
        idx: dict[tuple[str, str], list[Path]] = {}
        for p in path_basis(self):
            idx.setdefault((p.start, p.end), []).append(p)
        return idx

    def paths_between(self, u: str, v: str) -> list[Path]:
        """Admissible paths from u to v (basis of e_u A e_v)."""
        return self._basis_index.get((u, v), [])

    @cached_property
    def dimension(self) -> int:
        return len(path_basis(self))

    def relabel(self, vmap: dict[str, str], amap: dict[str, str]) -> "GentlePresentation":
        q = Quiver(
            tuple(vmap[v] for v in self.vertices),
            tuple(Arrow(amap[a.id], vmap[a.source], vmap[a.target]) for a in self.arrows),
        )
        rels = frozenset((amap[a], amap[b]) for a, b in self.relations)
        return GentlePresentation(q, rels, self.name)


def make_presentation(vertices, arrows, relations=(), name: str = "") -> GentlePresentation:
    """Build a presentation from plain tuples: arrows are (id, src, tgt)."""
    q = Quiver(tuple(str(v) for v in vertices), tuple(Arrow(*map(str, a)) for a in arrows))
    return GentlePresentation(q, frozenset((str(a), str(b)) for a, b in relations), name)


# ---------------------------------------------------------------- parsing


def parse_presentation(text: str, name: str = "") -> GentlePresentation:
    """Parse the line-oriented ``.gp`` format.  Gentleness is not checked."""
    vertices: list[str] | None = None
    arrows: list[Arrow] = []
    rels: list[tuple[str, str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        col = len(raw) - len(raw.lstrip()) + 1
        m = _VERTICES_RE.match(line)
        if m:
            if vertices is not None:
                raise PresentationError("vertices declared twice", lineno, col)
            vertices = m.group(1).split()
            for v in vertices:
                if not _IDENT_RE.match(v):
                    raise PresentationError(f"bad vertex id {v!r}", lineno, col + raw.lstrip().find(v))
            if len(set(vertices)) != len(vertices):
                raise PresentationError("duplicate vertex id", lineno, col)
            continue
        m = _ARROW_RE.match(line)
        if m:
            if vertices is None:
                raise PresentationError("arrow before vertices declaration", lineno, col)
            aid, s, t = m.groups()
            for v in (s, t):
                if v not in vertices:
                    raise PresentationError(f"undeclared vertex {v!r}", lineno, col + raw.lstrip().find(v, len("arrow")))
            if any(a.id == aid for a in arrows):
                raise PresentationError(f"duplicate arrow id {aid!r}", lineno, col)
            arrows.append(Arrow(aid, s, t))
            continue
        m = _REL_RE.match(line)
        if m:
            body = raw.lstrip()
            c1 = col + body.find(m.group(1), len("rel"))
            c2 = col + body.find(m.group(2), c1 - col + len(m.group(1)))
            rels.append((m.group(1), m.group(2), lineno, c1, c2))
            continue
        raise PresentationError(f"cannot parse {line!r}", lineno, col)
    if vertices is None:
        raise PresentationError("missing vertices declaration")
    amap = {a.id: a for a in arrows}
    for a, b, lineno, c1, c2 in rels:
        for x, c in ((a, c1), (b, c2)):
            if x not in amap:
                raise PresentationError(f"undeclared arrow {x!r}", lineno, c)
        if amap[a].target != amap[b].source:
            raise PresentationError(f"relation {a} {b} is not composable", lineno, c1)
    return GentlePresentation(Quiver(tuple(vertices), tuple(arrows)), frozenset((a, b) for a, b, *_ in rels), name)


def emit_presentation(p: GentlePresentation) -> str:
    """Canonical ``.gp`` text (declaration order kept, relations sorted)."""
    lines = ["vertices: " + " ".join(p.vertices)]
    lines += [f"arrow {a.id}: {a.source} -> {a.target}" for a in p.arrows]
    lines += [f"rel {a} {b}" for a, b in sorted(p.relations)]
    return "\n".join(lines) + "\n"


def presentation_to_json(p: GentlePresentation) -> str:
    data = {
        "arrows": [{"id": a.id, "source": a.source, "target": a.target} for a in sorted(p.arrows, key=lambda a: a.id)],
        "relations": [list(r) for r in sorted(p.relations)],
        "vertices": sorted(p.vertices),
    }
    return json.dumps(data, sort_keys=True)


def presentation_from_json(text: str) -> GentlePresentation:
    data = json.loads(text)
    return make_presentation(
        data["vertices"],
        [(a["id"], a["source"], a["target"]) for a in data["arrows"]],
        [tuple(r) for r in data["relations"]],
    )


# ---------------------------------------------------------------- validation


def _free_cycle(p: GentlePresentation) -> list[str] | None:
    """A cycle in the relation-free successor graph of arrows, if any."""
    color: dict[str, int] = {}
    stack_path: list[str] = []

    def visit(a: str) -> list[str] | None:
        color[a] = 1
        stack_path.append(a)
        for b in p.free_successors(a):
            if color.get(b) == 1:
                return stack_path[stack_path.index(b):]
            if b not in color:
                found = visit(b)
                if found:
                    return found
        stack_path.pop()
        color[a] = 2
        return None

    for a in p.arrows:
        if a.id not in color:
            found = visit(a.id)
            if found:
                return found
    return None


def validate_gentle(p: GentlePresentation) -> ValidationReport:
    """Check the local gentle axioms, valency and admissibility."""
    out: list[Violation] = []
    for a in p.arrows:
        for axiom, items in (
            ("relation-successor", p.rel_successors(a.id)),
            ("relation-predecessor", p.rel_predecessors(a.id)),
            ("free-successor", p.free_successors(a.id)),
            ("free-predecessor", p.free_predecessors(a.id)),
        ):
            if len(items) > 1:
                out.append(Violation(axiom, (a.id, *items)))
    for v in p.vertices:
        ins, outs = p.quiver.in_arrows(v), p.quiver.out_arrows(v)
        if len(ins) > 2:
            out.append(Violation("in-valency", (v, *ins)))
        if len(outs) > 2:
            out.append(Violation("out-valency", (v, *outs)))
    cyc = _free_cycle(p)
    if cyc:
        out.append(Violation("admissibility", tuple(cyc)))
    return ValidationReport(tuple(out))


def path_basis(p: GentlePresentation) -> list[Path]:
    """All admissible paths, trivial ones first, then by length."""
    if _free_cycle(p):
        raise PresentationError("presentation is not admissible")
    paths = [Path(v, v, ()) for v in p.vertices]
    frontier = [p.path([a.id]) for a in p.arrows]
    while frontier:
        paths.extend(frontier)
        nxt = []
        for q in frontier:
            for b in p.free_successors(q.arrows[-1]):
                nxt.append(Path(q.start, p.arrow(b).target, q.arrows + (b,)))
        frontier = nxt
    return paths


# ---------------------------------------------------------------- threads


def _chains(arrows: list[str], succ, pred) -> tuple[list[tuple[str, ...]], list[tuple[str, ...]]]:
    """Split a successor graph of in/out degree <= 1 into paths and cycles."""
    seen: set[str] = set()
    paths = []
    for a in arrows:
        if not pred(a):
            chain = [a]
            seen.add(a)
            while succ(chain[-1]):
                nxt = succ(chain[-1])[0]
                if nxt in seen:
                    break
                chain.append(nxt)
                seen.add(nxt)
            paths.append(tuple(chain))
    cycles = []
    for a in arrows:
        if a in seen:
            continue
        chain = [a]
        seen.add(a)
        while True:
            nxt = succ(chain[-1])[0]
            if nxt == a:
                break
            chain.append(nxt)
            seen.add(nxt)
        k = min(range(len(chain)), key=lambda i: arrows.index(chain[i]))
        cycles.append(tuple(chain[k:] + chain[:k]))
    return paths, cycles


def threads(p: GentlePresentation) -> Threads:
    """Permitted threads, forbidden threads and full relation cycles."""
    ids = [a.id for a in p.arrows]
    free_paths, free_cycles = _chains(ids, p.free_successors, p.free_predecessors)
    if free_cycles:
        raise PresentationError("presentation is not admissible")
    rel_paths, rel_cycles = _chains(ids, p.rel_successors, p.rel_predecessors)
    permitted = [Thread("permitted", c) for c in free_paths]
    forbidden = [Thread("forbidden", c) for c in rel_paths]
    for v in p.vertices:
        ins, outs = p.quiver.in_arrows(v), p.quiver.out_arrows(v)
        free_pairs = sum(1 for a in ins for b in outs if (a, b) not in p.relations)
        rel_pairs = sum(1 for a in ins for b in outs if (a, b) in p.relations)
        permitted += [Thread("permitted", (), v)] * (2 - (len(ins) + len(outs) - free_pairs))
        forbidden += [Thread("forbidden", (), v)] * (2 - (len(ins) + len(outs) - rel_pairs))
    return Threads(tuple(permitted), tuple(forbidden), tuple(rel_cycles))


def thread_vertices(p: GentlePresentation, t: Thread) -> tuple[str, ...]:
    """The vertices met along a thread, in order."""
    if t.trivial:
        return (t.vertex,)
    return (p.arrow(t.arrows[0]).source,) + tuple(p.arrow(a).target for a in t.arrows)


# ---------------------------------------------------------------- isomorphism


def _vertex_signature(p: GentlePresentation, v: str):
    ins, outs = p.quiver.in_arrows(v), p.quiver.out_arrows(v)
    loops = sum(1 for a in outs if p.arrow(a).target == v)
    rels_in = sum(1 for a in ins for b in p.quiver.out_arrows(v) if (a, b) in p.relations)
    return (len(ins), len(outs), loops, rels_in)


def find_isomorphism(p: GentlePresentation, q: GentlePresentation):
    """A relabelling (vertex map, arrow map) carrying p onto q, or None."""
    if len(p.vertices) != len(q.vertices) or len(p.arrows) != len(q.arrows) or len(p.relations) != len(q.relations):
        return None
    psig = {v: _vertex_signature(p, v) for v in p.vertices}
    qsig = {v: _vertex_signature(q, v) for v in q.vertices}
    if sorted(psig.values()) != sorted(qsig.values()):
        return None
    order = sorted(p.vertices, key=lambda v: -len(p.quiver.in_arrows(v)) - len(p.quiver.out_arrows(v)))
    vmap: dict[str, str] = {}

    def arrows_between(pres, s, t):
        return [a.id for a in pres.arrows if a.source == s and a.target == t]

    def consistent(v: str) -> bool:
        for u, w in vmap.items():
            if len(arrows_between(p, u, v)) != len(arrows_between(q, w, vmap[v])):
                return False
            if len(arrows_between(p, v, u)) != len(arrows_between(q, vmap[v], w)):
                return False
        return True

    def match_arrows():
        groups = {}
        for a in p.arrows:
            groups.setdefault((a.source, a.target), []).append(a.id)
        keys = list(groups)

        def rec(i: int, amap: dict[str, str]):
            if i == len(keys):
                rel_img = {(amap[a], amap[b]) for a, b in p.relations}
                return dict(amap) if rel_img == set(q.relations) else None
            s, t = keys[i]
            src = groups[keys[i]]
            dst = arrows_between(q, vmap[s], vmap[t])
            for perm in permutations(dst):
                amap.update(zip(src, perm))
                res = rec(i + 1, amap)
                if res:
                    return res
            for a in src:
                amap.pop(a, None)
            return None

        return rec(0, {})

    used: set[str] = set()

    def assign(i: int):
        if i == len(order):
            amap = match_arrows()
            return (dict(vmap), amap) if amap is not None else None
        v = order[i]
        for w in q.vertices:
            if w in used or qsig[w] != psig[v]:
                continue
            vmap[v] = w
            used.add(w)
            if consistent(v):
                res = assign(i + 1)
                if res:
                    return res
            used.discard(w)
            del vmap[v]
        return None

    return assign(0)
