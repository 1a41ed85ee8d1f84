r"""
Mapping classes as words in primitive moves, with decidable equality.

A mapping class is an ordered word of primitive moves, the rightmost applied
first.  Evaluation pushes probe paths through the moves: the generator loops
and the tree arcs to the marked points form a filling system (all polygon
side pairs realized as loops, one arc per boundary component), and the
resulting data

    (boundary permutation, images of the generator loops, arc corrections)

determines the class: with the basepoint on boundary 1 this is the Alexander
method in algebraic form, faithful for the group fixing the boundary
pointwise up to permutation of the components other than the first.

Conventions are frozen by the relation tests: right-handed twists satisfy
the braid relation, the two-holed chain relation and the lantern relation as
stated in the dataset.
"""

from . import geom
from . import words as W
from .curves import Curve, Arc, geometric_intersection, boundary_curve
from .surface import ContextError, DomainError, canonical_triangulation


class DehnTwist:
    __slots__ = ("curve", "power")

    def __init__(self, curve, power=1):
        if power == 0:
            raise DomainError("zero-power twist")
        self.curve = curve
        self.power = power

    def inverse(self):
        return DehnTwist(self.curve, -self.power)

    def push_path(self, word, start, end):
        img = geom.twist_probe(self.curve.twist_data(), self.power, word, start=start, end=end)
        return img, start, end

    def push_cyclic(self, word):
        return geom.twist_probe(self.curve.twist_data(), self.power, word, start=None, end=None)

    def boundary_perm(self, b):
        return {j: j for j in range(1, b + 1)}

    def __repr__(self):
        return "T(%r)^%d" % (self.curve, self.power)


def _halftwist_tables(model, i, j):
    """Frozen action of the standard right half-twist about the trivial arc
    between adjacent boundary components i < j = i+1 (basepoint boundary 1
    excluded).  Calibrated against h^2 = t_wall t_{d_i}^-1 t_{d_j}^-1 and the
    Artin relations.  Returns (phi images, u corrections, permutation)."""
    g2 = 2 * model.g
    ei = g2 + i - 1
    ej = g2 + j - 1
    phi = {k: (k,) for k in range(1, model.rank + 1)}
    phi[ei] = (ej,)
    phi[ej] = (-ej, ei, ej)
    perm = {k: k for k in range(1, model.b + 1)}
    perm[i], perm[j] = j, i
    u = {k: () for k in range(2, model.b + 1)}
    u[i] = ()
    u[j] = (-ej,)
    return phi, u, perm


class HalfTwist:
    """Half twist about an arc joining two distinct boundary components.

    The arc must either be a standard arc (trivial word) between engine-
    adjacent boundary components i, i+1 with i >= 2, or carry a
    `presentation` mapping class f with arc = f(standard arc between
    `presentation_pair`); then the half twist is f h_std f^-1.
    """

    __slots__ = ("arc", "power")

    def __init__(self, arc, power=1):
        if power == 0:
            raise DomainError("zero-power half twist")
        if arc.start == arc.end:
            raise DomainError("half-twist arc must join distinct boundary components")
        self.arc = arc
        self.power = power

    def inverse(self):
        return HalfTwist(self.arc, -self.power)

    def _standard_pair(self):
        a = self.arc
        i, j = min(a.start, a.end), max(a.start, a.end)
        if a.word == () and j == i + 1 and i >= 2:
            return i, j
        return None

    def _conjugated(self):
        pres = self.arc.presentation
        if pres is None:
            raise DomainError(
                "half twist about a non-standard arc needs a presentation arc = f(standard)"
            )
        f, (i, j) = pres
        base = Arc(self.arc.tri, i, j, ())
        inner = MappingClass(self.arc.tri, (HalfTwist(base, self.power),))
        return f * inner * f.inverse()

    def push_path(self, word, start, end):
        std = self._standard_pair()
        if std is None:
            return self._conjugated()._push_path(word, start, end)
        i, j = std
        m = self.arc.model
        phi, u, perm = _halftwist_tables(m, i, j)
        w, s, e = word, start, end
        reps = self.power
        if reps > 0:
            for _ in range(reps):
                w, s, e = _apply_tables(m, phi, u, perm, w, s, e)
        else:
            iphi, iu, iperm = _invert_tables(m, phi, u, perm)
            for _ in range(-reps):
                w, s, e = _apply_tables(m, iphi, iu, iperm, w, s, e)
        return w, s, e

    def push_cyclic(self, word):
        w, _, _ = self.push_path(word, None, None)
        return w

    def boundary_perm(self, b):
        std = self._standard_pair()
        perm = {k: k for k in range(1, b + 1)}
        if self.power % 2 == 1:
            if std is None:
                f, (i, j) = self.arc.presentation
                pf = f.boundary_perm()
                ipf = {v: k for k, v in pf.items()}
                perm = {k: pf[_swap(ipf[k], i, j)] for k in perm}
            else:
                perm[self.arc.start], perm[self.arc.end] = self.arc.end, self.arc.start
        return perm

    def __repr__(self):
        return "H(%r)^%d" % (self.arc, self.power)


def _swap(k, i, j):
    if k == i:
        return j
    if k == j:
        return i
    return k


def _apply_tables(model, phi, u, perm, word, start, end):
    img = W.substitute(word, phi)
    if start is None:
        return img, None, None
    us = u.get(start, ()) if start != 1 else ()
    ue = u.get(end, ()) if end != 1 else ()
    img = W.concat(W.inverse(us), img, ue)
    return img, perm[start], perm[end]


def _invert_tables(model, phi, u, perm):
    """Invert the standard half-twist tables: phi a -> b, b -> b^-1 a b has
    inverse a -> a b a^-1, b -> a; corrections from u^{f f^-1} = 1."""
    iperm = {v: k for k, v in perm.items()}
    n = model.rank
    iphi = {k: (k,) for k in range(1, n + 1)}
    changed = [k for k in range(1, n + 1) if phi[k] != (k,)]
    if changed:
        if len(changed) != 2:
            raise AssertionError("unexpected half-twist table shape")
        a, bgen = changed
        if phi[a] == (bgen,) and phi[bgen] == (-bgen, a, bgen):
            iphi[a] = (a, bgen, -a)
            iphi[bgen] = (a,)
        else:
            raise AssertionError("unexpected half-twist table shape")
    iu = {}
    for k in range(2, model.b + 1):
        iu[perm[k]] = W.inverse(W.substitute(u[k], iphi))
    return iphi, iu, iperm


class MappingClass:
    """Word of primitive moves on S_{g,b}; rightmost move applied first."""

    def __init__(self, tri, moves=()):
        self.tri = tri
        self.model = tri.model
        self.moves = tuple(moves)
        for mv in self.moves:
            if isinstance(mv, DehnTwist) and mv.curve.tri.surface != tri.surface:
                raise ContextError("move curve on wrong surface")
        self._sig = None
        self._pres_src = None

    # -- group structure -----------------------------------------------------

    def __mul__(self, other):
        if not isinstance(other, MappingClass):
            return NotImplemented
        if other.tri.surface != self.tri.surface:
            raise ContextError("composing mapping classes on different surfaces")
        return MappingClass(self.tri, self.moves + other.moves)

    def inverse(self):
        return MappingClass(self.tri, tuple(mv.inverse() for mv in reversed(self.moves)))

    @classmethod
    def identity(cls, tri):
        return cls(tri, ())

    @classmethod
    def twist(cls, curve, power=1):
        return cls(curve.tri, (DehnTwist(curve, power),))

    @classmethod
    def half_twist(cls, arc, power=1):
        return cls(arc.tri, (HalfTwist(arc, power),))

    @classmethod
    def boundary_push(cls, tri, j, track_word, power=1):
        """Push boundary j along the based track; expands to the twist word
        t_{c1} t_{c2}^{-1} about the two boundary curves of an annulus
        neighborhood of the track."""
        m = tri.model
        if not (2 <= j <= m.b):
            raise DomainError("can only push boundaries 2..b")
        ej = 2 * m.g + j - 1
        c1 = Curve(tri, track_word)
        c2 = Curve(tri, W.concat(track_word, (ej,)))
        mv = (DehnTwist(c1, power), DehnTwist(c2, -power))
        return cls(tri, mv)

    def __pow__(self, k):
        if k == 0:
            return MappingClass.identity(self.tri)
        base = self if k > 0 else self.inverse()
        out = base
        for _ in range(abs(k) - 1):
            out = out * base
        return out

    # -- evaluation ------------------------------------------------------------

    def _push_path(self, word, start, end):
        for mv in reversed(self.moves):
            word, start, end = mv.push_path(word, start, end)
        return word, start, end

    def _push_cyclic(self, word):
        for mv in reversed(self.moves):
            word = mv.push_cyclic(word)
        return word

    def boundary_perm(self):
        """perm[j] = destination of boundary j under the composite."""
        b = self.tri.surface.b
        perm = {j: j for j in range(1, b + 1)}
        for mv in reversed(self.moves):
            p = mv.boundary_perm(b)
            perm = {j: p[pj] for j, pj in perm.items()}
        return perm

    def signature_data(self):
        """(permutation, generator images, arc corrections) — the Alexander
        data deciding equality."""
        if self._sig is not None:
            return self._sig
        m = self.model
        phis = []
        for k in range(1, m.rank + 1):
            w, s, e = self._push_path((k,), 1, 1)
            phis.append(w)
        us = []
        perm = {}
        for j in range(2, m.b + 1):
            w, s, e = self._push_path((), 1, j)
            us.append(w)
            perm[j] = e
        if m.b >= 1:
            perm[1] = 1
        self._sig = (tuple(sorted(perm.items())), tuple(phis), tuple(us))
        return self._sig

    def equals(self, other):
        if not isinstance(other, MappingClass):
            return NotImplemented
        if other.tri.surface != self.tri.surface:
            raise ContextError("comparing mapping classes on different surfaces")
        if self.sp_matrix() != other.sp_matrix():
            return False
        return self.signature_data() == other.signature_data()

    def __eq__(self, other):
        r = self.equals(other)
        return r if r is not NotImplemented else NotImplemented

    def __hash__(self):
        return hash((self.tri.surface, self.signature_data()))

    def is_identity(self):
        return self.equals(MappingClass.identity(self.tri))

    # -- actions ----------------------------------------------------------------

    def apply(self, obj):
        """Image of a curve or arc under this mapping class."""
        if obj.tri.surface != self.tri.surface:
            raise ContextError("applying mapping class to object on wrong surface")
        if isinstance(obj, Curve):
            return Curve(self.tri, self._push_cyclic(obj.word), check=False)
        w, s, e = self._push_path(obj.word, obj.start, obj.end)
        return Arc(self.tri, s, e, w, check=False)

    def apply_word(self, word):
        return self._push_cyclic(word)

    # -- homology ----------------------------------------------------------------

    def sp_matrix(self):
        """Integer matrix of the capped action on H_1(S_g), basis
        x1, y1, ..., xg, yg (columns are images of basis vectors)."""
        g2 = 2 * self.tri.surface.g
        cols = []
        sig_cache = self._sig
        for k in range(1, g2 + 1):
            if sig_cache is not None:
                w = sig_cache[1][k - 1]
            else:
                w, _, _ = self._push_path((k,), 1, 1)
            v = W.abelianize(w, self.model.rank)[:g2]
            cols.append(tuple(v))
        return tuple(zip(*cols))  # rows

    # -- capping -----------------------------------------------------------------

    def cap(self, components):
        """Image under the capping homomorphism filling the given boundary
        components with disks."""
        comps = set(components)
        b = self.tri.surface.b
        g = self.tri.surface.g
        if not comps <= set(range(1, b + 1)):
            raise DomainError("invalid boundary components to cap")
        for j in comps:
            if self.boundary_perm()[j] not in comps:
                raise DomainError("capped set must be permutation invariant")
        b2 = b - len(comps)
        if b2 == 0:
            inner = self if b == 1 else self.cap(comps - {1})
            return ClosedMappingClass(g, inner)
        if 1 in comps:
            raise DomainError("the basepoint boundary 1 must survive partial capping")
        target = canonical_triangulation(g, b2)
        if not target.surface.is_admissible():
            raise DomainError("capping below admissible surface")
        qmap, jmap = _cap_maps(self.model, target.model, comps)
        moves = []
        for mv in self.moves:
            moves.extend(_cap_move(mv, target, qmap, jmap))
        return MappingClass(target, moves)


def _cap_maps(src_model, dst_model, comps):
    """Generator substitution and boundary renumbering for capping."""
    g = src_model.g
    qmap = {}
    for k in range(1, 2 * g + 1):
        qmap[k] = (k,)
    jmap = {}
    new_j = 0
    for j in range(1, src_model.b + 1):
        if j in comps:
            continue
        new_j += 1
        jmap[j] = new_j
    for j in range(2, src_model.b + 1):
        k = 2 * g + j - 1
        if j in comps:
            qmap[k] = ()
        else:
            qmap[k] = (2 * g + jmap[j] - 1,)
    return qmap, jmap


def _cap_move(mv, target, qmap, jmap):
    if isinstance(mv, DehnTwist):
        w = W.substitute(mv.curve.word, qmap)
        if not W.cyclic_reduce(w)[0]:
            return []
        return [DehnTwist(Curve(target, w), mv.power)]
    if isinstance(mv, HalfTwist):
        a = mv.arc
        if a.start in jmap and a.end in jmap:
            arc = Arc(target, jmap[a.start], jmap[a.end], W.substitute(a.word, qmap))
            return [HalfTwist(arc, mv.power)]
        raise DomainError("cannot cap a boundary component moved by a half twist")
    raise DomainError("unknown move type under capping")


class ClosedMappingClass:
    """Mapping class of the closed surface S_g, represented by a lift to
    S_{g,1}.  Equality: two lifts are equal in the closed group iff their
    difference acts on the free fundamental group by an inner automorphism."""

    def __init__(self, g, lift):
        if g < 2:
            raise DomainError("closed-surface classes supported for g >= 2")
        self.g = g
        self.lift = lift  # MappingClass on S_{g,1}

    def __mul__(self, other):
        return ClosedMappingClass(self.g, self.lift * other.lift)

    def inverse(self):
        return ClosedMappingClass(self.g, self.lift.inverse())

    def sp_matrix(self):
        return self.lift.sp_matrix()

    def equals(self, other):
        if self.g != other.g:
            raise ContextError("different genus")
        if self.sp_matrix() != other.sp_matrix():
            return False
        diff = self.lift * other.lift.inverse()
        return _is_inner(diff)

    def __eq__(self, other):
        return isinstance(other, ClosedMappingClass) and self.equals(other)

    def is_identity(self):
        return _is_inner(self.lift)


def _is_inner(mc):
    """Does the mapping class act on the free group by conjugation?"""
    sig = mc.signature_data()
    phis = sig[1]
    n = mc.model.rank
    u1 = phis[0]
    x1 = (1,)
    conj = W.conjugating_word(x1, u1)
    if conj is None:
        return False
    # solutions are conj * x1^k; pin k with the second generator
    u2 = phis[1]
    z = W.concat(W.inverse(conj), u2, conj)
    # need x1^k x2 x1^-k = z
    k = 0
    zz = list(z)
    while len(zz) >= 2 and zz[0] == 1 and zz[-1] == -1:
        zz = zz[1:-1]
        k += 1
    while len(zz) >= 2 and zz[0] == -1 and zz[-1] == 1:
        zz = zz[1:-1]
        k -= 1
    if tuple(zz) != (2,):
        return False
    w = W.concat(conj, W.power((1,), k))
    for g in range(1, n + 1):
        if phis[g - 1] != W.conjugate((g,), w):
            return False
    return True


class SubsurfaceEmbedding:
    """Embedding of one surface into another, as a generator substitution
    plus boundary images (a target boundary index or an interior curve)."""

    def __init__(self, src_tri, dst_tri, gen_images, boundary_images, name=""):
        self.src = src_tri
        self.dst = dst_tri
        self.gen_images = dict(gen_images)
        self.boundary_images = dict(boundary_images)
        self.name = name

    def push_word(self, word):
        return W.substitute(word, self.gen_images)

    def push_curve(self, curve):
        if curve.tri.surface != self.src.surface:
            raise ContextError("curve not on the embedding source")
        return Curve(self.dst, self.push_word(curve.word), check=False)

    def boundary_curve_image(self, j):
        img = self.boundary_images[j]
        if img[0] == "bdry":
            return boundary_curve(self.dst, img[1])
        return img[1]

    def push_mapping_class(self, mc):
        if mc.tri.surface != self.src.surface:
            raise ContextError("mapping class not on the embedding source")
        moves = []
        for mv in mc.moves:
            if not isinstance(mv, DehnTwist):
                raise DomainError("only twist words push forward through embeddings")
            moves.append(DehnTwist(self.push_curve(mv.curve), mv.power))
        return MappingClass(self.dst, moves)

    def check_certificates(self, atlas):
        """Intersection numbers of atlas certificates are preserved exactly."""
        for (na, nb, expected) in atlas.certificates:
            a = atlas[na]
            b = atlas[nb]
            if not (isinstance(a, Curve) and isinstance(b, Curve)):
                continue
            got = geometric_intersection(self.push_curve(a), self.push_curve(b))
            if got != expected:
                raise DomainError(
                    "embedding %s breaks certificate i(%s,%s): %d != %d"
                    % (self.name, na, nb, got, expected)
                )
        return True

    def __repr__(self):
        return "SubsurfaceEmbedding(%s: %r -> %r)" % (self.name, self.src.surface, self.dst.surface)


def twist_word(tri, *letters):
    """Convenience: mapping class from (curve, power) pairs or curves."""
    moves = []
    for item in letters:
        if isinstance(item, tuple):
            c, p = item
            moves.append(DehnTwist(c, p))
        else:
            moves.append(DehnTwist(item, 1))
    return MappingClass(tri, moves)
