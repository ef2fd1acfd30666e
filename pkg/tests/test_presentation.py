import pytest

from gentle.presentation import (
    PresentationError,
    emit_presentation,
    find_isomorphism,
    make_presentation,
    parse_presentation,
    path_basis,
    presentation_from_json,
    presentation_to_json,
    thread_vertices,
    threads,
    validate_gentle,
)

KRON = "vertices: x y\narrow a: x -> y\narrow b: x -> y\n"


def test_parse_and_emit_round_trip():
    p = parse_presentation(KRON, "k")
    q = parse_presentation(emit_presentation(p), "k")
    assert q == p
    j = presentation_to_json(p)
    assert presentation_to_json(presentation_from_json(j)) == j


@pytest.mark.parametrize(
    "text, line",
    [
        ("vertices: x\nvertices: y\n", 2),
        ("arrow a: x -> y\n", 1),
        ("vertices: x y\narrow a: x -> z\n", 2),
        ("vertices: x y\narrow a: x -> y\nrel a q\n", 3),
        ("vertices: x y\nnonsense here\n", 2),
    ],
)
def test_parse_errors_carry_line(text, line):
    with pytest.raises(PresentationError) as e:
        parse_presentation(text)
    assert e.value.line == line
    assert e.value.column is not None


def test_comments_and_blank_lines_ignored():
    p = parse_presentation("# kronecker\n\n" + KRON.replace("\n", "  # c\n", 1))
    assert len(p.arrows) == 2


def test_validation_axioms():
    assert validate_gentle(parse_presentation(KRON)).ok
    loop = make_presentation(["1"], [("e", "1", "1")], [])
    assert [v.axiom for v in validate_gentle(loop).violations] == ["admissibility"]
    # three arrows out of one vertex
    star = make_presentation(["0", "1", "2", "3"], [("a", "0", "1"), ("b", "0", "2"), ("c", "0", "3")])
    assert "out-valency" in {v.axiom for v in validate_gentle(star).violations}
    # two relations starting with the same arrow
    fork = make_presentation(["1", "2", "3", "4"], [("a", "1", "2"), ("b", "2", "3"), ("c", "2", "4")], [("a", "b"), ("a", "c")])
    assert "relation-successor" in {v.axiom for v in validate_gentle(fork).violations}
    # two arrows composing freely with the same arrow
    free = make_presentation(["1", "2", "3", "4"], [("a", "1", "2"), ("b", "2", "3"), ("c", "2", "4")], [])
    assert "free-successor" in {v.axiom for v in validate_gentle(free).violations}


def test_path_arithmetic(a3, a3_rel):
    a, b = a3.path("a"), a3.path("b")
    assert a3.multiply(a, b) == a3.path(("a", "b"))
    assert a3.multiply(b, a) is None
    assert a3_rel.multiply(a3_rel.path("a"), a3_rel.path("b")) is None
    assert a3.dimension == 6 and a3_rel.dimension == 5
    assert len(path_basis(a3)) == 6
    assert a3.paths_between("1", "3") == [a3.path(("a", "b"))]
    e = a3.trivial_path("2")
    assert a3.multiply(e, b) == b


def test_dual_numbers_dimension():
    d = make_presentation(["1"], [("e", "1", "1")], [("e", "e")])
    assert d.dimension == 2


def test_threads_cover_each_vertex_twice(kron, a3_rel):
    for p in (kron, a3_rel):
        th = threads(p)
        count = {v: 0 for v in p.vertices}
        for t in th.permitted:
            for v in set(thread_vertices(p, t)):
                count[v] += 1
        assert set(count.values()) == {2}


def test_relation_cycles():
    d = make_presentation(["1"], [("e", "1", "1")], [("e", "e")])
    assert len(threads(d).relation_cycles) == 1
    tri = make_presentation(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")], [("a", "b"), ("b", "c"), ("c", "a")])
    assert validate_gentle(tri).ok
    assert len(threads(tri).relation_cycles) == 1


def test_find_isomorphism_relabelled(a3_rel):
    q = make_presentation(["z", "y", "x"], [("s", "z", "y"), ("t", "y", "x")], [("s", "t")])
    assert find_isomorphism(a3_rel, q) is not None
    q2 = make_presentation(["z", "y", "x"], [("s", "z", "y"), ("t", "y", "x")], [])
    assert find_isomorphism(a3_rel, q2) is None
