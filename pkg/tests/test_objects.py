import random

import pytest

from gentle import acceptance as acc
from gentle import curves as C
from gentle.objects import (
    band_complex,
    check_dsquared,
    complex_to_json,
    direct_sum,
    identify_string,
    make_complex,
    shift,
    stalk,
    string_complex,
    structurally_equal,
)
from gentle.surface import build_disc_model

CORE = "band(1): y -[b,>]- x -[a,<]-"


def test_string_complexes_square_to_zero():
    rng = random.Random(5)
    for p in list(acc.corpus()[:20]):
        m = build_disc_model(p)
        for _ in range(10):
            w = C.random_arc(m, rng, 7)
            x = string_complex(m, w, C.grade_word(m, w))
            assert check_dsquared(p, x) is None
            assert len(x.entries) == len(x.terms) - 1


def test_band_complex_shape(kron, kron_model):
    b, _ = C.parse_word(kron_model, CORE)
    x = band_complex(kron_model, b, C.grade_word(kron_model, b), 3)
    assert check_dsquared(kron, x) is None
    ((key, lc),) = x.entries.items()
    assert sorted(lc.values()) == [1, 3]
    with pytest.raises(C.WordError):
        band_complex(kron_model, b, C.grade_word(kron_model, b), 0)


def test_identify_string_inverts_construction():
    rng = random.Random(9)
    for p in list(acc.corpus()[:20]):
        m = build_disc_model(p)
        for _ in range(8):
            w = C.random_arc(m, rng, 6)
            g = C.grade_word(m, w, rng.randint(-2, 2))
            found = identify_string(m, string_complex(m, w, g))
            assert found is not None
            w2, g2 = found
            assert structurally_equal(string_complex(m, w2, g2), string_complex(m, w, g))


def test_shift_signs(kron, kron_model):
    w, _ = C.parse_word(kron_model, "arc: x -[a,<]- y -[b,>]- x @ (b, 0) .. (a, 0)")
    x = string_complex(kron_model, w, (0, -1, 0))
    y = shift(x, 1)
    assert [t.degree for t in y.terms] == [-1, -2, -1]
    assert all(c == -1 for lc in y.entries.values() for c in lc.values())
    assert structurally_equal(shift(y, -1), x)


def test_make_complex_validates(kron):
    a = kron.path("a")
    with pytest.raises(ValueError):
        make_complex([("y", 0), ("x", 0)], {(0, 1): {a: 1}})
    with pytest.raises(ValueError):
        make_complex([("x", 0), ("y", 1)], {(0, 1): {a: 1}})
    x = make_complex([("y", 0), ("x", 1)], {(0, 1): {a: 1}})
    assert check_dsquared(kron, x) is None


def test_direct_sum_and_json(kron):
    x = direct_sum(stalk("x"), stalk("y", 2))
    assert [t.degree for t in x.terms] == [0, 2]
    assert '"vertex": "y"' in complex_to_json(x)
