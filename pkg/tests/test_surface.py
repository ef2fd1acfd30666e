from gentle import acceptance as acc
from gentle.presentation import make_presentation, parse_presentation
from gentle.surface import (
    Verdict,
    boundary_winding,
    build_disc_model,
    decide_derived_equivalence,
    derived_invariant,
    disc_graph_dot,
    ribbon_surface,
    trace_boundary,
)


def test_kronecker_is_a_cylinder(kron):
    s = ribbon_surface(kron)
    assert s.to_dict()["components"] == [{"marked": 1, "winding": 0}, {"marked": 1, "winding": 0}]
    assert s.genus == 0 and s.euler_characteristic == 0


def test_type_a_disc():
    for n in range(1, 5):
        for p in acc.type_a(n):
            s = ribbon_surface(p)
            assert s.genus == 0
            assert [c.marked for c in s.boundary] == [n + 1]


def test_dual_numbers_has_puncture():
    s = ribbon_surface(acc.dual_numbers())
    assert s.punctures == 1
    assert sorted(c.marked for c in s.boundary) == [0, 1]


def test_windings_match_boundary_walks():
    # windings recomputed walk by walk agree with the report
    for p in acc.corpus():
        m = build_disc_model(p)
        walks = trace_boundary(m)
        s = ribbon_surface(p, m)
        assert sorted(boundary_winding(m, w) for w in walks) == sorted(c.winding for c in s.boundary)


GENUS_ONE = """
vertices: 1 2 3
arrow a1: 3 -> 2
arrow a2: 3 -> 1
arrow a3: 1 -> 3
arrow a4: 2 -> 1
arrow a5: 1 -> 3
rel a1 a4
rel a2 a5
rel a3 a2
rel a4 a3
rel a5 a1
"""


def test_genus_one_example():
    p = parse_presentation(GENUS_ONE)
    s = ribbon_surface(p)
    assert s.euler_characteristic == -2
    assert s.genus == 1 and len(s.boundary) == 2 and s.punctures == 1


def test_genus_adds_over_components():
    p = parse_presentation(GENUS_ONE)
    q = p.relabel({v: v + "'" for v in p.vertices}, {a.id: a.id + "'" for a in p.arrows})
    both = make_presentation(
        p.vertices + q.vertices,
        [(a.id, a.source, a.target) for a in p.arrows + q.arrows],
        list(p.relations) + list(q.relations),
    )
    assert ribbon_surface(both).genus == 2
    assert derived_invariant(both).genus == 2


def test_decisions(a2, a3, a3_rel):
    assert decide_derived_equivalence(a3, a3_rel).verdict == Verdict.EQUIVALENT
    d = decide_derived_equivalence(a2, acc.dual_numbers())
    assert d.verdict == Verdict.NOT_EQUIVALENT and d.reason
    assert derived_invariant(a3) == derived_invariant(a3_rel)


def test_dot_is_deterministic(kron):
    m = build_disc_model(kron)
    a, b = disc_graph_dot(m), disc_graph_dot(build_disc_model(kron))
    assert a == b and a.startswith("graph")


def test_winding_sum_identity():
    # line fields on a surface of genus g satisfy sum(w + 2) = 4 - 4g
    from gentle.corpus import gen_corpus

    for p in gen_corpus(120, 7, 10, seed=4):
        s = ribbon_surface(p)
        assert sum(c.winding + 2 for c in s.boundary) == 4 - 4 * s.genus
