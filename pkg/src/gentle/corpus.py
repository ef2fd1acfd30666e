"""Seeded random gentle presentations."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .presentation import GentlePresentation, make_presentation, validate_gentle
from .surface import _quiver_components


@dataclass(frozen=True)
class CorpusSpec:
    count: int = 50
    max_vertices: int = 6
    max_arrows: int = 8
    seed: int = 0
    connected: bool = True


def _pairings(ins: list[str], outs: list[str]) -> list[list[tuple[str, str]]]:
    """Relation sets at a vertex allowed by the gentle axioms."""
    if not ins or not outs:
        return [[]]
    if len(ins) == 2 and len(outs) == 2:
        a, b = ins
        c, d = outs
        return [[(a, c), (b, d)], [(a, d), (b, c)]]
    if len(ins) == 2:
        return [[(a, outs[0])] for a in ins]
    if len(outs) == 2:
        return [[(ins[0], b)] for b in outs]
    return [[], [(ins[0], outs[0])]]


def random_presentation(rng: random.Random, n: int, k: int, name: str = "") -> GentlePresentation | None:
    """Pair k random out-slots with k random in-slots, then pick relations."""
    vertices = [str(i + 1) for i in range(n)]
    out_slots = [v for v in vertices for _ in range(2)]
    in_slots = [v for v in vertices for _ in range(2)]
    if k > len(out_slots):
        return None
    src = rng.sample(out_slots, k)
    tgt = rng.sample(in_slots, k)
    arrows = [(f"a{i + 1}", s, t) for i, (s, t) in enumerate(zip(src, tgt))]
    rels = []
    for v in vertices:
        ins = [a for a, _, t in arrows if t == v]
        outs = [a for a, s, _ in arrows if s == v]
        rels.extend(rng.choice(_pairings(ins, outs)))
    return make_presentation(vertices, arrows, rels, name)


def gen_corpus(count: int = 50, max_vertices: int = 6, max_arrows: int = 8, seed: int = 0, connected: bool = True) -> list[GentlePresentation]:
    """Deterministic list of valid gentle presentations.

    Candidates failing the gentle axioms (typically through an oriented
    cycle without relations) are rejected and redrawn.
    """
    rng = random.Random(seed)
    out: list[GentlePresentation] = []
    tries = 0
    while len(out) < count:
        tries += 1
        if tries > 1000 * max(count, 1):
            raise RuntimeError("corpus generation does not terminate")
        hi = min(max_vertices, max_arrows + 1) if connected else max_vertices
        # the larger of two draws, so small quivers do not dominate
        n = max(rng.randint(1, max(hi, 1)), rng.randint(1, max(hi, 1)))
        lo = n - 1 if connected else 0
        k = rng.randint(lo, min(max_arrows, 2 * n)) if lo <= min(max_arrows, 2 * n) else None
        if k is None:
            continue
        p = random_presentation(rng, n, k, f"c{len(out)}")
        if p is None or not validate_gentle(p).ok:
            continue
        if connected and len(set(_quiver_components(p).values())) != 1:
            continue
        out.append(p)
    return out
