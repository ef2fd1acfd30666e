import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gentle import acceptance as acc
from gentle import curves as C
from gentle.homalg import crossing_morphisms, hom_profile
from gentle.objects import string_complex
from gentle.surface import build_disc_model

CORE = "band(1): y -[b,>]- x -[a,<]-"


def _models():
    return [build_disc_model(p) for p in acc.type_a(3)[:3] + [acc.kronecker()] + list(acc.corpus()[:8])]


def test_parse_format_round_trip(kron_model):
    m = kron_model
    for text in ("arc: x -[a,<]- y -[b,>]- x @ (b, 0) .. (a, 0)", "arc: x @ (b, 0) .. (a, 0)", CORE):
        w, lam = C.parse_word(m, text)
        assert C.format_word(m, w, lam) == text


@pytest.mark.parametrize(
    "text",
    [
        "arc: x -[a,<]- y",  # no endpoints
        "arc: y @ (b, 0) .. (a, 0)",  # wrong crossing
        "loop: x",
        "band(1): y -[b,>]- x -[a,>]-",  # non-zero winding
        "band(1): y -[b,>]- x -[a,<]- y -[b,>]- x -[a,<]-",  # proper power
    ],
)
def test_bad_words_rejected(kron_model, text):
    with pytest.raises(C.WordError):
        C.parse_word(kron_model, text)


def test_canonical_form_is_orientation_free(kron_model):
    w, _ = C.parse_word(kron_model, "arc: x -[a,<]- y -[b,>]- x @ (b, 0) .. (a, 0)")
    assert C.canonical(C.reverse_word(w)) == C.canonical(w)
    b, _ = C.parse_word(kron_model, CORE)
    assert C.canonical(C.rotate_band(b, 1)) == C.canonical(b)
    assert C.canonical(C.reverse_word(b)) == C.canonical(b)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(-3, 3))
def test_grading_rule(seed, start):
    rng = random.Random(seed)
    m = rng.choice(_models())
    w = C.random_arc(m, rng, 6)
    g = C.grade_word(m, w, start)
    assert g[0] == start and C.check_grades(w, g)
    assert C.check_grades(C.reverse_word(w), C.reverse_grades(w, g))


def test_reverse_grades_of_band(kron_model):
    b, _ = C.parse_word(kron_model, CORE)
    g = C.grade_word(kron_model, b)
    assert C.check_grades(C.reverse_word(b), C.reverse_grades(b, g))


def test_tau_inverse():
    for m in _models():
        rng = random.Random(3)
        for _ in range(5):
            w = C.random_arc(m, rng, 4)
            g = C.grade_word(m, w)
            tw, tg = C.tau_translate(m, w, g)
            bw, bg = C.tau_translate(m, tw, tg, inverse=True)
            assert C.canonical(bw) == C.canonical(w)


def _profiles(m, x, y):
    return hom_profile(m.presentation, x, y)


def test_tau_satisfies_serre_duality():
    # Hom(X, Y)^k = Hom(Y, tau X)^(1-k) for arcs X, Y on finite-dimensional algebras
    for p in acc.type_a(3)[:4]:
        m = build_disc_model(p)
        words = C.words_up_to(m, 3)
        for w1 in words:
            g1 = C.grade_word(m, w1)
            tw, tg = C.tau_translate(m, w1, g1)
            x, tx = string_complex(m, w1, g1), string_complex(m, tw, tg)
            for w2 in words:
                y = string_complex(m, w2, C.grade_word(m, w2))
                left = _profiles(m, x, y)
                right = _profiles(m, y, tx)
                assert left == {1 - k: v for k, v in right.items()}


def test_tau_fixes_bands(kron_model):
    b, _ = C.parse_word(kron_model, CORE)
    g = C.grade_word(kron_model, b)
    assert C.tau_translate(kron_model, b, g) == (b, g)


def test_classification(kron_model):
    m = kron_model
    for _, w in C.boundary_segments(m):
        assert C.classify_word(m, w) == "boundary-segment"
    for v in m.presentation.vertices:
        assert C.classify_word(m, C.dual_arc(m, v)) in ("essential", "boundary-segment")
    for _, b in C.boundary_loops(m):
        assert C.classify_word(m, b) == "boundary-nonsegment"


def test_intersection_counts_match_hom():
    # each contact gives one morphism, each interior crossing two
    for m in _models():
        rng = random.Random(11)
        p = m.presentation
        for _ in range(10):
            w1, w2 = C.random_arc(m, rng, 4), C.random_arc(m, rng, 4)
            if C.canonical(w1) == C.canonical(w2):
                continue
            x, y = string_complex(m, w1, C.grade_word(m, w1)), string_complex(m, w2, C.grade_word(m, w2))
            contacts, crossings = C.intersection_counts(m, w1, w2)
            total = sum(hom_profile(p, x, y).values()) + sum(hom_profile(p, y, x).values())
            assert total == contacts + 2 * crossings


def test_concatenation_at_contact(a3):
    m = build_disc_model(a3)
    d1, d2 = C.dual_arc(m, "1"), C.dual_arc(m, "2")
    (c,) = [c for c in C.boundary_contacts(m, d1, d2)]
    (f,) = crossing_morphisms(m, d1, (0,), d2, (0,), c)
    ((w, g),) = C.resolve_crossing(m, d1, (0,), d2, (0,), c, f.forward, f.degree)
    assert sorted(C.crossing_vertices(m, w)) == ["1", "2"]
    assert C.check_grades(w, g)


def test_resolve_crossing_rejects_foreign_datum(a3):
    m = build_disc_model(a3)
    d1, d3 = C.dual_arc(m, "1"), C.dual_arc(m, "3")
    with pytest.raises(C.WordError):
        C.resolve_crossing(m, d1, (0,), d3, (0,), C.Contact(99, 0, 0))
