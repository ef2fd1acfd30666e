import random

import pytest

from gentle import acceptance as acc
from gentle import curves as C
from gentle.presentation import find_isomorphism, validate_gentle
from gentle.surface import build_disc_model
from gentle.tilting import (
    ArcSystem,
    TiltingError,
    check_tilting,
    dual_arc_system,
    endo_dimensions,
    endo_presentation,
    ordered_ends,
    parse_arc_system,
    roundtrip_check,
    twist_system,
)


def test_dual_arcs_are_tilting(kron_model):
    rep = check_tilting(kron_model, dual_arc_system(kron_model))
    assert rep.ok and rep.shifts == (0, 0)


def test_round_trip_on_fixtures(kron, a3, a3_rel):
    for p in (kron, a3, a3_rel, acc.dual_numbers()):
        r = roundtrip_check(p)
        assert r.ok, r.report


def test_round_trip_after_twisting():
    for p in acc.type_a(3) + [acc.kronecker()] + list(acc.corpus()[:10]):
        for k in (1, -1, 2):
            r = roundtrip_check(p, twist=k)
            assert r.ok, (p.name, k, r.report)


def test_endo_dimension_oracle(a3_rel):
    m = build_disc_model(a3_rel)
    s = twist_system(m, dual_arc_system(m), 1)
    q = endo_presentation(m, s)
    assert validate_gentle(q).ok
    assert endo_dimensions(m, s) == {0: q.dimension}


def test_homotopic_arcs_rejected(kron_model):
    d = dual_arc_system(kron_model)
    rep = check_tilting(kron_model, ArcSystem(d.arcs + d.arcs[:1]))
    assert not rep.ok and any(v.startswith("non-homotopic") for v in rep.violations)


def test_missing_arc_does_not_generate(a3):
    m = build_disc_model(a3)
    d = dual_arc_system(m)
    rep = check_tilting(m, ArcSystem(d.arcs[:2]))
    assert not rep.ok and any(v.startswith("generation") for v in rep.violations)
    with pytest.raises(TiltingError):
        endo_presentation(m, ArcSystem(d.arcs[:2]))


def test_crossing_arcs_rejected(kron_model):
    w, _ = C.parse_word(kron_model, "arc: x -[a,<]- y -[b,>]- x @ (b, 0) .. (a, 0)")
    d = dual_arc_system(kron_model)
    crossing = [a for a in d.arcs if C.interior_crossings(kron_model, w, a)]
    if not crossing:
        pytest.skip("no crossing arc on this model")
    rep = check_tilting(kron_model, ArcSystem((w,) + tuple(crossing)))
    assert not rep.ok and any(v.startswith("disjoint") or v.startswith("simple") for v in rep.violations)


def test_parse_arc_system(kron_model):
    text = "# dual arcs\narc: x @ (a, 0) .. (b, 0)\n\narc: y @ (a, 1) .. (b, 1)\n"
    s = parse_arc_system(kron_model, text)
    assert len(s.arcs) == 2 and check_tilting(kron_model, s).ok


def test_ends_are_ordered_consistently():
    # the clockwise order at each marked point does not depend on how the arcs are listed
    rng = random.Random(0)
    for p in list(acc.corpus()[:10]):
        m = build_disc_model(p)
        arcs = list(dual_arc_system(m).arcs)
        groups = ordered_ends(m, arcs)
        assert sum(len(v) for v in groups.values()) == 2 * len(arcs)
        perm = list(range(len(arcs)))
        rng.shuffle(perm)
        shuffled = ordered_ends(m, [arcs[k] for k in perm])
        for t, ends in groups.items():
            assert [(perm[e.arc], e.end) for e in shuffled[t]] == [(e.arc, e.end) for e in ends]


def test_dependent_arcs_do_not_generate(a3):
    # the concatenation of two dual arcs bounds a region with them
    m = build_disc_model(a3)
    d1, d2 = C.dual_arc(m, "1"), C.dual_arc(m, "2")
    (c,) = C.boundary_contacts(m, d1, d2)
    w, _ = C.concatenate(m, d1, (0,), d2, (0,), c)
    rep = check_tilting(m, ArcSystem((d1, d2, w)))
    assert any(v.startswith("generation") for v in rep.violations)


def test_recovered_algebra_is_isomorphic(a3_rel):
    m = build_disc_model(a3_rel)
    q = endo_presentation(m, dual_arc_system(m), names=list(a3_rel.vertices))
    assert find_isomorphism(q, a3_rel) is not None
