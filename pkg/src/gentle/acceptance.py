"""The acceptance checks, shared by the test suite and ``gentle selftest``.

Each check returns a CheckResult; nothing here is tuned to pass.  Every
combinatorial answer is compared with the rank computation in homalg.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from functools import lru_cache

from . import curves as C
from .corpus import gen_corpus
from .homalg import (
    alp_basis,
    ar_check,
    crossing_morphisms,
    fingerprint,
    hom_profile,
    mapping_cone,
    resolution_complex,
    spherical_twist,
)
from .objects import band_complex, complex_of, shift, string_complex
from .presentation import make_presentation, threads, validate_gentle
from .surface import (
    Verdict,
    boundary_winding,
    build_disc_model,
    decide_derived_equivalence,
    derived_invariant,
    ribbon_surface,
    trace_boundary,
)
from .tilting import roundtrip_check


@dataclass
class CheckResult:
    number: int
    title: str
    ok: bool
    detail: str
    seconds: float
    limit: float | None = None

    @property
    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        lim = f" (limit {self.limit:g} s)" if self.limit else ""
        return f"criterion {self.number:2d} {status}: {self.title}: {self.detail} [{self.seconds:.2f} s{lim}]"


# ------------------------------------------------------------ fixtures


def kronecker():
    return make_presentation(["x", "y"], [("a", "x", "y"), ("b", "x", "y")], [], "kronecker")


def dual_numbers():
    return make_presentation(["1"], [("e", "1", "1")], [("e", "e")], "dual numbers")


def loop_without_relation():
    return make_presentation(["1"], [("e", "1", "1")], [], "free loop")


def type_a(n: int):
    """Every gentle presentation on the A_n graph: orientations and relations."""
    out = []
    for dirs in itertools.product((True, False), repeat=n - 1):
        arrows = [(f"a{i + 1}", str(i + 1), str(i + 2)) if d else (f"a{i + 1}", str(i + 2), str(i + 1)) for i, d in enumerate(dirs)]
        pairs = []
        for (x, s1, t1), (y, s2, t2) in itertools.product(arrows, arrows):
            if x != y and t1 == s2:
                pairs.append((x, y))
        for k in range(len(pairs) + 1):
            for rels in itertools.combinations(pairs, k):
                p = make_presentation([str(i + 1) for i in range(n)], arrows, rels, f"A{n}")
                if validate_gentle(p).ok:
                    out.append(p)
    return out


@lru_cache(maxsize=8)
def corpus(seed: int = 7, count: int = 50):
    return tuple(gen_corpus(count, max_vertices=8, max_arrows=12, seed=seed))


def _timed(number, title, limit, fn):
    t0 = time.perf_counter()
    ok, detail = fn()
    dt = time.perf_counter() - t0
    if limit is not None and dt > limit:
        ok, detail = False, f"{detail}; took {dt:.2f} s"
    return CheckResult(number, title, ok, detail, dt, limit)


# ------------------------------------------------------------ criteria


def criterion_1(seed: int = 7) -> CheckResult:
    def run():
        good = [kronecker(), dual_numbers()] + type_a(2) + type_a(3) + list(corpus(seed))
        failed = [p.name for p in good if not validate_gentle(p).ok]
        rep = validate_gentle(loop_without_relation())
        loop_ok = not rep.ok and any(v.axiom == "admissibility" for v in rep.violations)
        ok = not failed and loop_ok
        return ok, f"{len(good) - len(failed)}/{len(good)} valid, free loop rejected for admissibility: {loop_ok}"

    return _timed(1, "gentle validation", 1.0, run)


def criterion_2(seed: int = 7) -> CheckResult:
    def run():
        bad = []
        s = ribbon_surface(kronecker())
        if (s.euler_characteristic, s.genus, len(s.boundary)) != (0, 0, 2) or sorted((c.marked, c.winding) for c in s.boundary) != [(1, 0), (1, 0)]:
            bad.append("kronecker")
        count = 0
        for n in range(1, 5):
            for p in type_a(n):
                count += 1
                s = ribbon_surface(p)
                if s.genus != 0 or [c.marked for c in s.boundary] != [n + 1]:
                    bad.append(f"A{n}")
        s = ribbon_surface(dual_numbers())
        if sorted(c.marked for c in s.boundary) != [0, 1] or s.punctures != 1:
            bad.append("dual numbers")
        return not bad, f"{count} type A presentations, kronecker, dual numbers; mismatches: {bad or 'none'}"

    return _timed(2, "surface golden values", 1.0, run)


def criterion_3(seed: int = 7) -> CheckResult:
    def run():
        bad = []
        for p in corpus(seed):
            s = ribbon_surface(p)
            th = threads(p)
            if sum(c.marked for c in s.boundary) != len(th.permitted):
                bad.append(f"{p.name}: marked points")
            if s.punctures != len(th.relation_cycles):
                bad.append(f"{p.name}: punctures")
            if s.euler_characteristic != len(p.vertices) - len(p.arrows) or s.euler_characteristic != 2 - 2 * s.genus - len(s.boundary):
                bad.append(f"{p.name}: euler characteristic")
        return not bad, f"{len(corpus(seed))} corpus algebras; failures: {bad or 'none'}"

    return _timed(3, "winding and marked point bookkeeping", 10.0, run)


def criterion_4(seed: int = 7) -> CheckResult:
    def run():
        bad, n = [], 0
        for p in corpus(seed):
            m = build_disc_model(p)
            walks = trace_boundary(m)
            for k, w in C.boundary_segments(m):
                n += 1
                mb, om = walks[k].marked_count, boundary_winding(m, walks[k])
                g = C.grade_word(m, w)
                tw, tg = C.tau_power(m, w, g, mb)
                if C.canonical(tw) != C.canonical(w):
                    bad.append(f"{p.name}: word moved")
                elif fingerprint(p, string_complex(m, tw, tg)) != fingerprint(p, shift(string_complex(m, w, g), -om)):
                    bad.append(f"{p.name}: shift differs")
        return not bad and n > 0, f"{n} boundary segments; failures: {bad[:3] or 'none'}"

    return _timed(4, "fractional Calabi-Yau law", 60.0, run)


def _random_object(m, rng, bands):
    if bands and rng.random() < 0.3:
        b = rng.choice(bands)
        return band_complex(m, b, C.grade_word(m, b), rng.randint(2, 6))
    w = C.random_arc(m, rng, 6)
    return string_complex(m, w, C.grade_word(m, w))


def criterion_5(seed: int = 7, pairs: int = 200) -> CheckResult:
    def run():
        rng = random.Random(seed)
        models = []
        for p in corpus(seed):
            m = build_disc_model(p)
            bands = [b for b in (C.random_band(m, rng, 6) for _ in range(4)) if b is not None]
            models.append((p, m, bands))
        bad, with_band = 0, 0
        for _ in range(pairs):
            p, m, bands = rng.choice(models)
            x = _random_object(m, rng, bands)
            y = shift(_random_object(m, rng, bands), rng.randint(-2, 2))
            with_band += x.kind != "string" or y.kind != "string"
            prof = hom_profile(p, x, y)
            counts: dict[int, int] = {}
            for f in alp_basis(p, x, y):
                counts[f.degree] = counts.get(f.degree, 0) + 1
            bad += counts != prof
        return bad == 0, f"{pairs} pairs ({with_band} involving a band); disagreements: {bad}"

    return _timed(5, "basis size equals rank computation", 60.0, run)


def criterion_6(seed: int = 7, minimum: int = 100) -> CheckResult:
    def run():
        rng = random.Random(seed + 1)
        checked, bad, attempts = 0, 0, 0
        while checked < minimum and attempts < 5000:
            attempts += 1
            p = rng.choice(corpus(seed))
            m = build_disc_model(p)
            words = []
            for _ in range(2):
                b = C.random_band(m, rng, 5) if rng.random() < 0.3 else None
                words.append(b or C.random_arc(m, rng, 4))
            w1, w2 = words
            if C.canonical(w1) == C.canonical(w2):
                continue
            g1, g2 = C.grade_word(m, w1), C.grade_word(m, w2)
            for datum in C.boundary_contacts(m, w1, w2) + C.interior_crossings(m, w1, w2):
                for cm in crossing_morphisms(m, w1, g1, w2, g2, datum):
                    checked += 1
                    cone = mapping_cone(cm.map)
                    res = resolution_complex(m, w1, g1, w2, g2, datum, cm)
                    bad += fingerprint(p, cone) != fingerprint(p, res)
        return checked >= minimum and bad == 0, f"{checked} crossing morphisms; disagreements: {bad}"

    return _timed(6, "cone equals resolution", None, run)


def criterion_7(seed: int = 7) -> CheckResult:
    def run():
        bad = [p.name for p in corpus(seed) if not roundtrip_check(p).ok]
        return not bad, f"{len(corpus(seed))} corpus algebras; failures: {bad or 'none'}"

    return _timed(7, "endomorphism round trip", 30.0, run)


def criterion_8(seed: int = 7) -> CheckResult:
    def run():
        bad = []
        a3 = type_a(3)
        for p, q in itertools.product(a3, a3):
            if decide_derived_equivalence(p, q).verdict != Verdict.EQUIVALENT:
                bad.append("A3 pair")
        a2 = type_a(2)[0]
        if decide_derived_equivalence(a2, dual_numbers()).verdict != Verdict.NOT_EQUIVALENT:
            bad.append("A2 vs dual numbers")
        cs = corpus(seed)
        for p in cs:
            if decide_derived_equivalence(p, p).verdict != Verdict.EQUIVALENT:
                bad.append(f"{p.name} not reflexive")
        for p, q in itertools.combinations(cs, 2):
            d1, d2 = decide_derived_equivalence(p, q), decide_derived_equivalence(q, p)
            if d1.verdict != d2.verdict:
                bad.append(f"{p.name},{q.name} not symmetric")
            if d1.verdict == Verdict.NOT_EQUIVALENT and derived_invariant(p) == derived_invariant(q):
                bad.append(f"{p.name},{q.name} unwitnessed")
        return not bad, f"{len(a3)} A3 presentations, {len(cs)} corpus algebras; failures: {bad[:3] or 'none'}"

    return _timed(8, "derived equivalence decisions", None, run)


# Dehn twists of the two dual arcs around the core of the Kronecker
# cylinder, traced by hand: the twist moves every arc across the cylinder
# one step along the family ... P_y, P_x, (x y x), ...
TWIST_WORDS = {
    "x": ("arc: x -[a,<]- y -[b,>]- x @ (b, 0) .. (a, 0)", (0, -1, 0)),
    "y": ("arc: x @ (b, 0) .. (a, 0)", (0,)),
}


def criterion_9(seed: int = 7) -> CheckResult:
    def run():
        p = kronecker()
        m = build_disc_model(p)
        core, _ = C.parse_word(m, "band(1): y -[b,>]- x -[a,<]-")
        b = band_complex(m, core, C.grade_word(m, core), 1)
        bad = []
        for v, (text, grades) in TWIST_WORDS.items():
            y = string_complex(m, C.dual_arc(m, v), (0,))
            w, _ = C.parse_word(m, text)
            if fingerprint(p, spherical_twist(p, b, y)) != fingerprint(p, complex_of(m, w, grades)):
                bad.append(v)
        return not bad, f"twists of P_x and P_y; mismatches: {bad or 'none'}"

    return _timed(9, "spherical twist is the Dehn twist", None, run)


def criterion_10(seed: int = 7) -> CheckResult:
    def run():
        bad, n = [], 0
        for p in type_a(2) + type_a(3) + [kronecker()]:
            m = build_disc_model(p)
            for _, w in C.boundary_segments(m):
                n += 1
                v = ar_check(m, w)
                if not v.ok:
                    bad.append(f"{p.name}: {v.witness}")
        return not bad, f"{n} boundary segments; failures: {bad[:3] or 'none'}"

    return _timed(10, "AR connecting maps", None, run)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def run_all(seed: int = 7) -> list[CheckResult]:
    return [c(seed) for c in CRITERIA]
