from gentle.corpus import gen_corpus
from gentle.presentation import emit_presentation, validate_gentle
from gentle.surface import _quiver_components


def test_deterministic():
    a = [emit_presentation(p) for p in gen_corpus(20, 6, 8, seed=3)]
    b = [emit_presentation(p) for p in gen_corpus(20, 6, 8, seed=3)]
    assert a == b
    assert a != [emit_presentation(p) for p in gen_corpus(20, 6, 8, seed=4)]


def test_valid_and_bounded():
    ps = gen_corpus(50, 6, 8, seed=1)
    assert len(ps) == 50
    for p in ps:
        assert validate_gentle(p).ok
        assert len(p.vertices) <= 6 and len(p.arrows) <= 8
        assert len(set(_quiver_components(p).values())) == 1


def test_no_arrows_gives_semisimple():
    for p in gen_corpus(10, 4, 0, seed=2, connected=False):
        assert not p.arrows and p.dimension == len(p.vertices)


def test_sizes_vary():
    sizes = {len(p.vertices) for p in gen_corpus(50, 8, 12, seed=7)}
    assert max(sizes) >= 6 and len(sizes) >= 4
