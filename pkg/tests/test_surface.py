import pytest

from lefpen.surface import Surface, model, canonical_triangulation, DomainError
from lefpen import words as W


def test_admissibility():
    assert Surface(0, 3).is_admissible()
    assert Surface(1, 1).is_admissible()
    assert Surface(2, 0).is_admissible()
    for g, b in [(0, 0), (0, 1), (0, 2), (1, 0)]:
        assert not Surface(g, b).is_admissible()


def test_euler_characteristic_examples():
    assert canonical_triangulation(0, 4).surface.chi == -2
    assert canonical_triangulation(3, 16).surface.chi == -20
    assert canonical_triangulation(1, 8).surface.chi == -8


def test_triangulation_counts():
    for g, b in [(0, 3), (0, 4), (1, 1), (1, 9), (2, 2), (3, 16), (2, 12)]:
        tri = canonical_triangulation(g, b)
        assert tri.n_interior == 6 * g + 4 * b - 6
        V = len(tri.model.vertex_classes())
        E = len(tri.edges)
        F = len(tri.triangles)
        assert V - E + F == 2 - 2 * g - b
        assert V == b


def test_triangulation_deterministic():
    a = canonical_triangulation(1, 9)
    c = canonical_triangulation(1, 9)
    assert a.edges == c.edges and a.triangles == c.triangles


def test_inadmissible_rejected():
    with pytest.raises(DomainError):
        canonical_triangulation(0, 2)
    with pytest.raises(DomainError):
        canonical_triangulation(1, 0)
    with pytest.raises(DomainError):
        canonical_triangulation(65, 1)


def test_boundary_words():
    m = model(0, 3)
    assert m.boundary_word(1) == (1, 2)
    assert m.boundary_word(2) == (-1,)
    assert m.boundary_word(3) == (-2,)
    # boundary classes sum to zero in homology
    for g, b in [(1, 2), (2, 3), (1, 9)]:
        mm = model(g, b)
        total = [0] * mm.rank
        for j in range(1, b + 1):
            for i, v in enumerate(W.abelianize(mm.boundary_word(j), mm.rank)):
                total[i] += v
        assert all(v == 0 for v in total)


def test_word_names_roundtrip():
    m = model(2, 3)
    w = m.word_from_names("x1 Y2 e2 E3")
    assert m.word_str(w) == "x1 Y2 e2 E3"
