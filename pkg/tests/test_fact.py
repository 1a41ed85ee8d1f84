import pytest

from lefpen.surface import canonical_triangulation
from lefpen.curves import Curve, CurveAtlas, boundary_curve
from lefpen.mcg import MappingClass
from lefpen import fact
from lefpen.fact import (
    Factorization, GeneralWord, DerivationScript, Step, DerivationError,
    elementary_transform, cyclic_permute, cancel_pair, commute, substitute,
    global_conjugate, word_from_names, parse_mapping_class,
)


def lantern_atlas():
    t = canonical_triangulation(0, 4)
    atlas = CurveAtlas(t)
    atlas.add_curve("A", (1, 2))
    atlas.add_curve("B", (2, 3))
    atlas.add_curve("C", (1, 2, 3, -2))
    for j in range(1, 5):
        atlas.add_curve("d%d" % j, boundary_curve(t, j).word)
    return atlas


def lantern_fact():
    atlas = lantern_atlas()
    return Factorization(atlas, word_from_names(atlas, "A B C").letters,
                         {1: 1, 2: 1, 3: 1, 4: 1})


def test_lantern_verifies():
    F = lantern_fact()
    ok, msg = F.verify("full")
    assert ok, msg
    ok, msg = F.verify("homology")
    assert ok


def test_broken_lantern_diagnosed():
    atlas = lantern_atlas()
    F = Factorization(atlas, word_from_names(atlas, "A B").letters, {j: 1 for j in range(1, 5)})
    ok, msg = F.verify("full")
    assert not ok and msg


def test_elementary_transform_inverse():
    atlas = lantern_atlas()
    w = word_from_names(atlas, "A B C")
    w2 = elementary_transform(w, 0, "right")
    w3 = elementary_transform(w2, 0, "left")
    assert [(l.curve, l.power) for l in w3.letters] == [(l.curve, l.power) for l in w.letters]
    assert w2.product().equals(w.product())


def test_cyclic_permute_central():
    atlas = lantern_atlas()
    w = word_from_names(atlas, "A B C")  # product is the boundary multitwist: central
    w2, conj = cyclic_permute(w, 1)
    assert conj is None
    assert w2.product().equals(w.product())


def test_cyclic_permute_needs_justification():
    atlas = lantern_atlas()
    w = word_from_names(atlas, "A B")
    with pytest.raises(DerivationError):
        cyclic_permute(w, 1)
    w2, conj = cyclic_permute(w, 1, allow_conjugation=True)
    assert conj is not None
    assert w2.product().equals(conj * w.product() * conj.inverse())


def test_cancel_and_commute():
    atlas = lantern_atlas()
    w = word_from_names(atlas, "A ~A B")
    w2 = cancel_pair(w, 0)
    assert [l.name for l in w2.letters] == ["B"]
    with pytest.raises(DerivationError):
        cancel_pair(word_from_names(atlas, "A ~B"), 0)
    wd = word_from_names(atlas, "d1 A")
    swapped = commute(wd, 0)
    assert [l.name for l in swapped.letters] == ["A", "d1"]
    with pytest.raises(DerivationError):
        commute(word_from_names(atlas, "A B"), 0)


def test_substitute_lantern():
    atlas = lantern_atlas()
    w = word_from_names(atlas, "A B C")
    rep = word_from_names(atlas, "d1 d2 d3 d4")
    w2 = substitute(w, 0, 3, rep, "lantern")
    assert len(w2) == 4
    with pytest.raises(DerivationError):
        substitute(w, 0, 2, rep, "bogus")
    # replacing a letter by itself
    w3 = substitute(w, 1, 2, word_from_names(atlas, "B"))
    assert [l.name for l in w3.letters] == ["A", "B", "C"]
    # inverse pair by empty word
    w4 = substitute(word_from_names(atlas, "A ~A"), 0, 2, word_from_names(atlas, ""))
    assert len(w4) == 0


def test_global_conjugate_factorization():
    F = lantern_fact()
    phi = MappingClass.twist(F.atlas["A"])
    F2 = global_conjugate(F, phi)
    ok, msg = F2.verify("full")
    assert ok, msg
    F3 = global_conjugate(F2, phi.inverse())
    assert [l.curve for l in F3.lhs.letters] == [l.curve for l in F.lhs.letters]


def test_script_replay_and_certificate():
    atlas = lantern_atlas()
    w = word_from_names(atlas, "A B C")
    steps = [Step("ET", i=0, dir="R"), Step("ET", i=0, dir="L"), Step("CYC", k=1)]
    script = DerivationScript(w, steps, name="demo")
    final, cert = script.replay()
    assert len(cert.hashes) == 4
    assert [l.name for l in final.letters] == ["B", "C", "A"]


def test_script_failure_reported_with_index():
    atlas = lantern_atlas()
    w = word_from_names(atlas, "A B C")
    script = DerivationScript(w, [Step("CANCEL", i=0)])
    with pytest.raises(DerivationError) as exc:
        script.replay()
    assert "step 0" in str(exc.value)


def test_empty_script():
    atlas = lantern_atlas()
    w = word_from_names(atlas, "A B C")
    final, cert = DerivationScript(w, []).replay()
    assert final is w


def test_lpf_roundtrip(tmp_path):
    F = lantern_fact()
    ap = tmp_path / "lantern.atlas"
    F.atlas.save(str(ap))
    fp = tmp_path / "lantern.lpf"
    F.save(str(fp), atlas_path="lantern.atlas")
    G = Factorization.load(str(fp))
    assert G.rhs == F.rhs
    ok, msg = G.verify("full")
    assert ok, msg


def test_lps_file(tmp_path):
    F = lantern_fact()
    ap = tmp_path / "lantern.atlas"
    F.atlas.save(str(ap))
    sp = tmp_path / "demo.lps"
    sp.write_text(
        "surface g=0 b=4\n"
        "use atlas lantern.atlas\n"
        "initial A B C\n"
        "ET 0 R\n"
        "ET 0 L\n"
        "CYC 1\n"
        "expect B C A\n"
    )
    script = fact.load_script(str(sp))
    final, cert = script.replay()
    assert [l.name for l in final.letters] == ["B", "C", "A"]


def test_parse_mapping_class():
    atlas = lantern_atlas()
    f = parse_mapping_class(atlas, "T(A) T'(B)")
    g = MappingClass.twist(atlas["A"]) * MappingClass.twist(atlas["B"], -1)
    assert f.equals(g)


def test_boundary_degrees():
    from lefpen.fact import boundary_degrees
    t = canonical_triangulation(1, 2)
    d1 = boundary_curve(t, 1)
    d2 = boundary_curve(t, 2)
    mc = MappingClass.twist(d1, 2) * MappingClass.twist(d2, 3)
    assert boundary_degrees(mc) == {1: 2, 2: 3}
    x = Curve(t, (1,))
    assert boundary_degrees(MappingClass.twist(x)) is None
