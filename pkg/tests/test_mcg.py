import pytest

from lefpen.surface import canonical_triangulation, DomainError
from lefpen.curves import Curve, Arc, boundary_curve, curve_from_names, geometric_intersection
from lefpen.mcg import MappingClass, SubsurfaceEmbedding, twist_word
from lefpen import words as W


def test_twist_fixes_own_curve():
    t = canonical_triangulation(1, 1)
    x = curve_from_names(t, "x1")
    assert MappingClass.twist(x).apply(x) == x


def test_disjoint_support_fixed():
    t = canonical_triangulation(0, 4)
    a = Curve(t, (1, 2))
    d = boundary_curve(t, 2)
    assert MappingClass.twist(d).apply(a) == a


def test_braid_relation():
    t = canonical_triangulation(1, 1)
    a, b = curve_from_names(t, "x1"), curve_from_names(t, "y1")
    ta, tb = MappingClass.twist(a), MappingClass.twist(b)
    assert (ta * tb * ta).equals(tb * ta * tb)


def test_commuting_twists():
    t = canonical_triangulation(2, 1)
    a = curve_from_names(t, "x1")
    b = curve_from_names(t, "x2")
    assert geometric_intersection(a, b) == 0
    ta, tb = MappingClass.twist(a), MappingClass.twist(b)
    assert (ta * tb).equals(tb * ta)


def test_chain_relation():
    t = canonical_triangulation(1, 1)
    a, b = curve_from_names(t, "x1"), curve_from_names(t, "y1")
    lhs = (MappingClass.twist(a) * MappingClass.twist(b)) ** 6
    assert lhs.equals(MappingClass.twist(boundary_curve(t, 1)))


def test_lantern_relation():
    t = canonical_triangulation(0, 4)
    x = Curve(t, (1, 2))
    y = Curve(t, (2, 3))
    z = Curve(t, (1, 2, 3, -2))
    lhs = twist_word(t, x, y, z)
    rhs = twist_word(t, *[boundary_curve(t, j) for j in (1, 2, 3, 4)])
    assert lhs.equals(rhs)
    # deleting a letter breaks it
    assert not twist_word(t, x, y).equals(rhs)


def test_five_chain_and_closed_identity():
    t = canonical_triangulation(2, 1)
    chain = [curve_from_names(t, "x1"), curve_from_names(t, "y1"), Curve(t, (1, 3)),
             curve_from_names(t, "y2"), curve_from_names(t, "x2")]
    word = twist_word(t, *chain) ** 6
    assert word.equals(MappingClass.twist(boundary_curve(t, 1)))
    closed = word.cap({1})
    assert closed.is_identity()
    assert not MappingClass.twist(chain[0]).cap({1}).is_identity()


def test_apply_preserves_intersection():
    t = canonical_triangulation(2, 1)
    cs = [curve_from_names(t, n) for n in ("x1", "y1", "x2", "y2")] + [Curve(t, (1, 3))]
    f = twist_word(t, cs[0], cs[1], (cs[2], -1), cs[4])
    for a in cs:
        for b in cs:
            assert geometric_intersection(f.apply(a), f.apply(b)) == geometric_intersection(a, b)


def test_transvection_formula():
    t = canonical_triangulation(2, 1)
    for name in ("x1", "y1", "x2"):
        c = curve_from_names(t, name)
        M = MappingClass.twist(c).sp_matrix()
        v = c.homology()[:4]
        # M e_k = e_k + <e_k, v> v with the standard symplectic pairing
        J = [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]
        for k in range(4):
            ek = [1 if i == k else 0 for i in range(4)]
            pair = sum(J[k][i] * v[i] for i in range(4))
            expect = [ek[i] + pair * v[i] for i in range(4)]
            got = [M[i][k] for i in range(4)]
            assert got == expect or got == [ek[i] - pair * v[i] for i in range(4)]


def test_sp_functorial():
    t = canonical_triangulation(2, 1)
    a, b = curve_from_names(t, "x1"), curve_from_names(t, "y1")
    f, g = MappingClass.twist(a), MappingClass.twist(b)

    def matmul(A, B):
        n = len(A)
        return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(n)) for j in range(n)) for i in range(n))

    assert (f * g).sp_matrix() == matmul(f.sp_matrix(), g.sp_matrix())


def test_halftwist_identities():
    t = canonical_triangulation(0, 3)
    h = MappingClass.half_twist(Arc(t, 2, 3, ()))
    wall = Curve(t, (1, 2))
    d2, d3 = boundary_curve(t, 2), boundary_curve(t, 3)
    target = MappingClass.twist(wall) * MappingClass.twist(d2, -1) * MappingClass.twist(d3, -1)
    assert (h * h).equals(target)
    assert (h * h.inverse()).is_identity()
    assert (h * MappingClass.twist(d2) * h.inverse()).equals(MappingClass.twist(d3))


def test_halftwist_artin():
    t = canonical_triangulation(0, 4)
    s2 = MappingClass.half_twist(Arc(t, 2, 3, ()))
    s3 = MappingClass.half_twist(Arc(t, 3, 4, ()))
    assert (s2 * s3 * s2).equals(s3 * s2 * s3)


def test_presented_halftwist():
    t = canonical_triangulation(0, 4)
    base = Arc(t, 2, 3, ())
    f = MappingClass.twist(Curve(t, (2, 3)))
    moved = f.apply(base)
    moved.presentation = (f, (2, 3))
    h = MappingClass.half_twist(moved)
    h_direct = f * MappingClass.half_twist(base) * f.inverse()
    assert h.equals(h_direct)


def test_boundary_push_expansion():
    t = canonical_triangulation(1, 2)
    # push boundary 2 along the x-handle loop
    p = MappingClass.boundary_push(t, 2, (1,))
    assert not p.is_identity()
    # pushing along a trivial-ish track: t_c t_c^-1 kind of cancellation
    x = curve_from_names(t, "x1")
    img = p.apply(x)
    assert geometric_intersection(img, img) == 0


def test_cap_homomorphism_and_boundary_twist_dies():
    t = canonical_triangulation(1, 2)
    d2 = boundary_curve(t, 2)
    td2 = MappingClass.twist(d2)
    assert not td2.is_identity()
    assert td2.cap({2}).is_identity()
    x, y = curve_from_names(t, "x1"), curve_from_names(t, "y1")
    f = MappingClass.twist(x) * MappingClass.twist(y)
    g = MappingClass.twist(y, -1) * MappingClass.twist(x)
    assert (f * g).cap({2}).equals(f.cap({2}) * g.cap({2}))


def test_cap_identity():
    t = canonical_triangulation(1, 2)
    assert MappingClass.identity(t).cap({2}).is_identity()


def test_push_forward_homomorphism():
    src = canonical_triangulation(1, 1)
    dst = canonical_triangulation(2, 1)
    # include the first handle
    emb = SubsurfaceEmbedding(src, dst, {1: (1,), 2: (2,)}, {1: ("curve", None)}, name="handle1")
    x, y = curve_from_names(src, "x1"), curve_from_names(src, "y1")
    f = MappingClass.twist(x)
    g = MappingClass.twist(y)
    lhs = emb.push_mapping_class(f * g)
    rhs = emb.push_mapping_class(f) * emb.push_mapping_class(g)
    assert lhs.equals(rhs)
    assert emb.push_mapping_class(MappingClass.identity(src)).is_identity()
