import pytest

from lefpen.surface import canonical_triangulation, DomainError
from lefpen.curves import (
    Curve, Arc, CurveAtlas, boundary_curve, curve_from_names, curve_from_weights,
    geometric_intersection, is_isotopic, trace_weights, validate_weights,
)
from lefpen import words as W


def tri11():
    return canonical_triangulation(1, 1)


def test_simple_rejects():
    t = tri11()
    with pytest.raises(DomainError):
        Curve(t, (1, 2, 1, 2))  # proper power
    with pytest.raises(DomainError):
        Curve(t, ())
    t3 = canonical_triangulation(0, 3)
    with pytest.raises(DomainError):
        Curve(t3, (1, -2))  # figure eight around two holes


def test_intersection_basics():
    t = tri11()
    x = curve_from_names(t, "x1")
    y = curve_from_names(t, "y1")
    assert geometric_intersection(x, y) == 1
    assert geometric_intersection(x, x) == 0
    d = boundary_curve(t, 1)
    assert geometric_intersection(d, x) == 0
    assert geometric_intersection(d, y) == 0


def test_intersection_symmetric():
    t = canonical_triangulation(2, 1)
    cs = [curve_from_names(t, n) for n in ("x1", "y1", "x2", "y2")] + [
        Curve(t, (1, 3)), boundary_curve(t, 1)]
    for a in cs:
        for b in cs:
            assert geometric_intersection(a, b) == geometric_intersection(b, a)


def test_isotopy_is_cyclic_word_equality():
    t = tri11()
    a = Curve(t, (1, 2))
    b = Curve(t, (2, 1))
    c = Curve(t, (-2, -1))  # orientation reversal
    assert is_isotopic(a, b)
    assert is_isotopic(a, c)
    assert not is_isotopic(a, Curve(t, (1,)))


def test_weights_roundtrip():
    cases = [
        (canonical_triangulation(1, 1), [(1,), (2,), (1, 2), (1, -2)]),
        (canonical_triangulation(0, 4), [(1, 2), (2, 3), (1, 2, 3, -2)]),
        (canonical_triangulation(2, 1), [(1, 3), (2,), (1, 2)]),
    ]
    for tri, wordlist in cases:
        for w in wordlist:
            c = Curve(tri, w)
            back = curve_from_weights(tri, c.weights())
            assert is_isotopic(c, back), (tri.surface, w)


def test_weights_of_isotopic_curves_equal():
    t = tri11()
    assert Curve(t, (1, 2)).weights() == Curve(t, (2, 1)).weights()


def test_validate_weights_rejects():
    t = tri11()
    n = t.n_interior
    with pytest.raises(DomainError):
        validate_weights(t, (1,) * (n - 1))
    with pytest.raises(DomainError):
        validate_weights(t, (1000,) + (0,) * (n - 1))


def test_trace_multicomponent():
    t = canonical_triangulation(0, 4)
    a = Curve(t, (1, 2))
    b = Curve(t, (3,))
    assert geometric_intersection(a, b) == 0
    ws = tuple(u + v for u, v in zip(a.weights(), b.weights()))
    closed, open_ = trace_weights(t, ws)
    assert len(closed) == 2 and not open_
    got = {W.canonical_cyclic(w, unoriented=True) for w in closed}
    want = {W.canonical_cyclic(a.word, unoriented=True), W.canonical_cyclic(b.word, unoriented=True)}
    assert got == want


def test_arcs_and_atlas_io(tmp_path):
    t = canonical_triangulation(0, 4)
    atlas = CurveAtlas(t)
    atlas.add_curve("A23", (1, 2))
    atlas.add_curve("A34", (2, 3))
    atlas.add_curve("A24", (1, 2, 3, -2))
    atlas.add("alpha", Arc(t, 2, 3, ()))
    atlas.add("beta", Arc(t, 2, 4, (2,)))
    for j in range(1, 5):
        atlas.add_curve("d%d" % j, boundary_curve(t, j).word)
    atlas.certify("A23", "A34", 2)
    atlas.certify("A23", "A24", 2)
    atlas.certify("A23", "d1", 0)
    atlas.verify_certificates()
    p = tmp_path / "lantern.atlas"
    atlas.save(str(p))
    loaded = CurveAtlas.load(str(p))
    assert is_isotopic(loaded["A24"], atlas["A24"])
    assert loaded["alpha"] == atlas["alpha"]
    assert loaded["beta"] == atlas["beta"]


def test_atlas_certificate_failure(tmp_path):
    t = canonical_triangulation(0, 4)
    atlas = CurveAtlas(t)
    atlas.add_curve("A23", (1, 2))
    atlas.add_curve("A34", (2, 3))
    atlas.certify("A23", "A34", 5)
    p = tmp_path / "bad.atlas"
    atlas.save(str(p))
    from lefpen.curves import IntegrityError
    with pytest.raises(IntegrityError):
        CurveAtlas.load(str(p))


def test_empty_atlas(tmp_path):
    t = canonical_triangulation(0, 3)
    atlas = CurveAtlas(t)
    p = tmp_path / "empty.atlas"
    atlas.save(str(p))
    loaded = CurveAtlas.load(str(p))
    assert not loaded.named
