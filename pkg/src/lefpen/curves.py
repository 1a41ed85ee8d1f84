r"""
Isotopy classes of curves and arcs, normal coordinates, and curve atlases.

A :class:`Curve` is an isotopy class of an essential simple closed curve on
S_{g,b}, held both as a reduced cyclic word in the polygon generators and,
on demand, as normal coordinates on the canonical triangulation.  Equality of
curves is equality of unoriented cyclic words; normal coordinate vectors are
computed from the taut realization and determine the class (the tracing
round-trip is asserted by the test suite).

Atlas files are UTF-8 and line oriented (`#` comments):

    surface g=<int> b=<int>
    curve <name> coords <w_1> ... <w_E>
    arc <name> coords <w_1> ... <w_E> endpoints <bdry>:<edge> <bdry>:<edge>
    certify <name> <name> = <int>

with one weight per interior edge of the canonical triangulation in canonical
order (glued pairs in generator order, then cone diagonals).  Arcs land on
the marked point of each boundary component, so their endpoint edge is the
boundary edge of that component.
"""

from .surface import canonical_triangulation, ContextError, DomainError
from . import words as W
from . import geom


class IntegrityError(ValueError):
    """Atlas certification failed on load."""


class Curve:
    """Essential simple closed curve as a reduced cyclic word."""

    def __init__(self, tri, word, check=True, allow_nonsimple=False):
        self.tri = tri
        self.model = tri.model
        w = W.canonical_cyclic(word)
        if not w:
            raise DomainError("weight-zero/trivial curve rejected")
        self.word = w
        self._twist = None
        self._weights = None
        if check:
            if not W.is_primitive(w):
                raise DomainError("curve word is a proper power: %s" % (w,))
            if not allow_nonsimple:
                si = geom.self_intersection(self.model, w)
                if si != 0:
                    raise DomainError(
                        "word %s has self-intersection %d, not simple" % (self.model.word_str(w), si)
                    )

    # -- identity ---------------------------------------------------------

    def key(self):
        return (self.tri.surface, W.canonical_cyclic(self.word, unoriented=True))

    def __eq__(self, other):
        return isinstance(other, Curve) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "Curve(%s)" % self.model.word_str(self.word)

    def same_surface(self, other):
        if self.tri.surface != other.tri.surface:
            raise ContextError("objects live on different surfaces")

    # -- geometry ----------------------------------------------------------

    def twist_data(self):
        if self._twist is None:
            self._twist = geom.TwistData(self.model, self.word)
        return self._twist

    def weights(self):
        """Normal coordinates: one weight per interior edge, canonical order."""
        if self._weights is not None:
            return self._weights
        m = self.model
        counts = {k: 0 for k in range(1, m.rank + 1)}
        for x in self.word:
            counts[abs(x)] += 1
        diag = geom.diagonal_weights(m, self.word)
        out = []
        for e in self.tri.interior_edges():
            if e[0] == "pair":
                out.append(counts[e[1]])
            else:
                out.append(diag[e[1]])
        self._weights = tuple(out)
        return self._weights

    def homology(self):
        """Exponent vector over the model basis x1,y1,...,e2..eb."""
        return W.abelianize(self.word, self.model.rank)


class Arc:
    """Properly embedded arc between marked points of two boundary components.

    The isotopy class rel endpoints is the groupoid element: the pair of
    boundary indices plus the word of the path (prepended/appended with the
    trivial tree connectors).  `presentation`, when given, expresses the arc
    as the image of the standard arc between its endpoints under a mapping
    class, which is what half-twist construction consumes.
    """

    def __init__(self, tri, start, end, word=(), presentation=None, check=True):
        self.tri = tri
        self.model = tri.model
        b = tri.surface.b
        if not (1 <= start <= b and 1 <= end <= b):
            raise DomainError("arc endpoints must be boundary indices")
        self.start = start
        self.end = end
        self.word = W.reduce_word(word)
        self.presentation = presentation
        if check and start == end and not self.word:
            raise DomainError("trivial arc rejected")

    def key(self):
        # unoriented: (start, end, word) ~ (end, start, word^-1)
        a = (self.start, self.end, self.word)
        b = (self.end, self.start, W.inverse(self.word))
        return (self.tri.surface, min(a, b))

    def __eq__(self, other):
        return isinstance(other, Arc) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "Arc(%d->%d, %s)" % (self.start, self.end, self.model.word_str(self.word))

    def weights(self):
        m = self.model
        counts = {k: 0 for k in range(1, m.rank + 1)}
        for x in self.word:
            counts[abs(x)] += 1
        # diagonal crossings of the taut arc
        obj = geom.RealizedPath(self.word, False, start=self.start, end=self.end, oid=0)
        r = geom.Realization(m, [obj])
        ch = r.chords(obj)
        pos = []
        for (p1, p2, _) in ch:
            pos.append((p1, p2))
        S = m.n_sides
        diag = {}
        for k in range(2, S - 1):
            n = 0
            for (p1, p2) in pos:
                if (p1[0] < k) != (p2[0] < k):
                    n += 1
            diag[k] = n
        out = []
        for e in self.tri.interior_edges():
            if e[0] == "pair":
                out.append(counts[e[1]])
            else:
                out.append(diag[e[1]])
        return tuple(out)


def curve_from_names(tri, text):
    return Curve(tri, tri.model.word_from_names(text))


def boundary_curve(tri, j):
    """The boundary-parallel curve about component j."""
    return Curve(tri, tri.model.boundary_word(j))


def is_isotopic(a, b):
    a.same_surface(b)
    return a.key() == b.key()


def geometric_intersection(a, b):
    """Minimal transverse intersection number of two curve/arc classes."""
    if a.tri.surface != b.tri.surface:
        raise ContextError("objects live on different surfaces")
    if isinstance(a, Curve) and isinstance(b, Curve):
        if a.key() == b.key():
            return 0
        return geom.intersection_number(a.model, a.word, b.word)
    ra = _as_real(a, 0)
    rb = _as_real(b, 1)
    r = geom.Realization(a.model, [ra, rb])
    ca = r.chords(ra)
    cb = r.chords(rb)
    n = 0
    for x in ca:
        for y in cb:
            if geom._chords_cross(x, y):
                n += 1
    return n


def _as_real(obj, oid):
    if isinstance(obj, Curve):
        return geom.RealizedPath(obj.word, True, oid=oid)
    return geom.RealizedPath(obj.word, False, start=obj.start, end=obj.end, oid=oid)


# ---------------------------------------------------------------------------
# normal-coordinate validation and tracing
# ---------------------------------------------------------------------------

_TRACE_WEIGHT_CAP = 200000


def validate_weights(tri, weights, endpoints=()):
    """Check normality of a weight vector (with optional arc endpoints, as
    boundary indices contributing one crossing slot each on their boundary
    edge).  Returns the per-edge weight dict keyed by edge identifier."""
    interior = tri.interior_edges()
    if len(weights) != len(interior):
        raise DomainError(
            "expected %d weights (interior edges), got %d" % (len(interior), len(weights))
        )
    wmap = {e: w for e, w in zip(interior, weights)}
    for j in tri.boundary_edges:
        wmap[("bdry", j)] = 0
    for j in endpoints:
        wmap[("bdry", j)] += 1
    for w in weights:
        if w < 0:
            raise DomainError("negative weight")
    for (ea, eb, ec) in tri.triangles:
        wa, wb, wc = wmap[ea], wmap[eb], wmap[ec]
        if (wa + wb + wc) % 2 != 0:
            raise DomainError("odd weight sum in triangle (%s %s %s)" % (ea, eb, ec))
        if wa > wb + wc or wb > wc + wa or wc > wa + wb:
            raise DomainError("triangle inequality violated at (%s %s %s)" % (ea, eb, ec))
    return wmap


def trace_weights(tri, weights, endpoints=()):
    """Trace a normal weight vector into its components.

    Returns (closed, open_): reduced cyclic words of the closed components
    and, when `endpoints` lists arc endpoints, (start_bdry, word, end_bdry)
    triples of the open components.
    """
    m = tri.model
    wmap = validate_weights(tri, weights, endpoints)
    total = sum(weights) + len(endpoints)
    if total == 0:
        return [], []
    if total > _TRACE_WEIGHT_CAP:
        raise DomainError("weights too large to trace; curves of this size stay word-backed")

    S = m.n_sides

    def seg_weight(seg):
        if seg[0] == "side":
            side = m.sides[seg[1]]
            if side.kind == "bdry":
                return wmap[("bdry", side.bdry)]
            return wmap[("pair", side.gen)]
        return wmap[("diag", seg[1])]

    def corner_seg(k):
        # edge of the cone from corner 0 to corner k, with reversal flag
        if k == 1:
            return ("side", 0, False)
        if k == S - 1:
            return ("side", S - 1, True)
        return ("diag", k, False)

    conn = {}
    for k in range(1, S - 1):
        Lseg = corner_seg(k)
        Bseg = ("side", k, False)
        Rseg = corner_seg(k + 1)
        wL = seg_weight(Lseg[:2])
        wB = seg_weight(Bseg[:2])
        wR = seg_weight(Rseg[:2])
        n0 = (wL + wR - wB) // 2
        nPk = (wL + wB - wR) // 2
        nPk1 = (wB + wR - wL) // 2
        if min(n0, nPk, nPk1) < 0:
            raise DomainError("non-normal corner counts in triangle %d" % k)

        def near(segdir, end, i):
            # slot number of the i-th point nearest the given end; segments
            # run corner0->P_k (L, R) and P_k->P_{k+1} (B)
            w = seg_weight(segdir[:2])
            if (end == "start") ^ segdir[2]:
                return i
            return w + 1 - i

        for i in range(1, n0 + 1):
            a = (Lseg[:2], near(Lseg, "start", i))
            b = (Rseg[:2], near(Rseg, "start", i))
            conn[(a, k)] = b
            conn[(b, k)] = a
        for i in range(1, nPk + 1):
            a = (Lseg[:2], near(Lseg, "stop", i))
            b = (Bseg[:2], near(Bseg, "start", i))
            conn[(a, k)] = b
            conn[(b, k)] = a
        for i in range(1, nPk1 + 1):
            a = (Bseg[:2], near(Bseg, "stop", i))
            b = (Rseg[:2], near(Rseg, "stop", i))
            conn[(a, k)] = b
            conn[(b, k)] = a

    def faces_of(seg):
        if seg[0] == "diag":
            return (seg[1] - 1, seg[1])
        s = seg[1]
        if s == 0:
            return (1,)
        if s == S - 1:
            return (S - 2,)
        return (s,)

    def is_endpoint(pt):
        seg = pt[0]
        return seg[0] == "side" and m.sides[seg[1]].kind == "bdry"

    visited = set()
    closed = []
    open_ = []
    all_points = [(seg, i)
                  for seg in ([("side", s) for s in range(S)] + [("diag", k) for k in range(2, S - 1)])
                  for i in range(1, seg_weight(seg) + 1)]

    def walk(start_pt, face):
        """Walk one strand from (start_pt, face); returns (word, end_pt or None)."""
        word = []
        pt, f = start_pt, face
        guard = 0
        while True:
            visited.add(pt)
            nxt = conn[(pt, f)]
            visited.add(nxt)
            seg = nxt[0]
            if is_endpoint(nxt):
                return word, nxt
            if seg[0] == "diag":
                fs = faces_of(seg)
                f = fs[0] if fs[1] == f else fs[1]
                pt = nxt
            else:
                side = m.sides[seg[1]]
                word.append(side.gen if side.kind == "pos" else -side.gen)
                w = seg_weight(seg)
                pseg = ("side", side.partner)
                pt = (pseg, w + 1 - nxt[1])
                f = faces_of(pseg)[0]
            if pt == start_pt and f == face:
                return word, None
            guard += 1
            if guard > 2 * total + 10:
                raise AssertionError("tracing did not close up")

    # open components first, from each endpoint slot
    for pt in all_points:
        if pt in visited or not is_endpoint(pt):
            continue
        j0 = m.sides[pt[0][1]].bdry
        word, endpt = walk(pt, faces_of(pt[0])[0])
        if endpt is None:
            raise AssertionError("arc strand closed up")
        j1 = m.sides[endpt[0][1]].bdry
        open_.append((j0, tuple(word), j1))
    for pt in all_points:
        if pt in visited or is_endpoint(pt):
            continue
        word, endpt = walk(pt, faces_of(pt[0])[0])
        if endpt is not None:
            raise AssertionError("closed strand reached the boundary")
        closed.append(W.canonical_cyclic(word))
    return closed, open_


def curve_from_weights(tri, weights):
    closed, open_ = trace_weights(tri, weights)
    if open_ or len(closed) != 1:
        raise DomainError("weights trace to %d closed components, expected 1" % len(closed))
    return Curve(tri, closed[0])


# ---------------------------------------------------------------------------
# atlases
# ---------------------------------------------------------------------------

class CurveAtlas:
    """Named curves and arcs on one surface, with intersection certificates."""

    def __init__(self, tri):
        self.tri = tri
        self.named = {}
        self.certificates = []  # (name_a, name_b, expected)

    @property
    def surface(self):
        return self.tri.surface

    def add(self, name, obj):
        if obj.tri.surface != self.tri.surface:
            raise ContextError("atlas entry on wrong surface")
        self.named[name] = obj
        return obj

    def add_curve(self, name, spec):
        if isinstance(spec, str):
            c = curve_from_names(self.tri, spec)
        elif isinstance(spec, Curve):
            c = spec
        else:
            c = Curve(self.tri, spec)
        return self.add(name, c)

    def __getitem__(self, name):
        return self.named[name]

    def __contains__(self, name):
        return name in self.named

    def certify(self, name_a, name_b, expected):
        self.certificates.append((name_a, name_b, expected))

    def verify_certificates(self):
        for (na, nb, expected) in self.certificates:
            if na not in self.named or nb not in self.named:
                raise IntegrityError("certificate references unknown name %s/%s" % (na, nb))
            got = geometric_intersection(self.named[na], self.named[nb])
            if got != expected:
                raise IntegrityError(
                    "certificate failed: i(%s, %s) = %d, expected %d" % (na, nb, got, expected)
                )
        return True

    # -- file format -------------------------------------------------------

    def save(self, path):
        tri = self.tri
        lines = ["# lefpen atlas", "surface g=%d b=%d" % (tri.surface.g, tri.surface.b)]
        for name in sorted(self.named):
            obj = self.named[name]
            ws = " ".join(str(w) for w in obj.weights())
            if isinstance(obj, Curve):
                lines.append("curve %s coords %s" % (name, ws))
            else:
                lines.append(
                    "arc %s coords %s endpoints %d:bdry%d %d:bdry%d"
                    % (name, ws, obj.start, obj.start, obj.end, obj.end)
                )
        for (na, nb, e) in self.certificates:
            lines.append("certify %s %s = %d" % (na, nb, e))
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")

    @classmethod
    def load(cls, path, verify=True):
        atlas = None
        arcs = []
        with open(path, encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                toks = line.split()
                try:
                    if toks[0] == "surface":
                        kv = dict(t.split("=") for t in toks[1:])
                        tri = canonical_triangulation(int(kv["g"]), int(kv["b"]))
                        atlas = cls(tri)
                    elif toks[0] == "curve":
                        name = toks[1]
                        assert toks[2] == "coords"
                        weights = tuple(int(t) for t in toks[3:])
                        atlas.add(name, curve_from_weights(atlas.tri, weights))
                    elif toks[0] == "arc":
                        name = toks[1]
                        assert toks[2] == "coords"
                        cut = toks.index("endpoints")
                        weights = tuple(int(t) for t in toks[3:cut])
                        eps = [t.split(":")[0] for t in toks[cut + 1:cut + 3]]
                        arcs.append((name, weights, int(eps[0]), int(eps[1])))
                    elif toks[0] == "certify":
                        assert toks[3] == "="
                        atlas.certify(toks[1], toks[2], int(toks[4]))
                    else:
                        raise ValueError("unknown directive %r" % toks[0])
                except IntegrityError:
                    raise
                except Exception as exc:
                    raise IntegrityError("%s:%d: %s" % (path, lineno, exc)) from exc
        if atlas is None:
            raise IntegrityError("%s: missing surface line" % path)
        for (name, weights, s, e) in arcs:
            atlas.add(name, _arc_from_weights(atlas.tri, weights, s, e))
        if verify:
            atlas.verify_certificates()
        return atlas


def _arc_from_weights(tri, weights, start, end):
    """Reconstruct an arc class from its weights and endpoint components."""
    closed, open_ = trace_weights(tri, weights, endpoints=(start, end))
    if closed or len(open_) != 1:
        raise IntegrityError("arc weights trace to extra components")
    (j0, word, j1) = open_[0]
    if (j0, j1) == (start, end):
        return Arc(tri, start, end, word, check=False)
    if (j0, j1) == (end, start):
        return Arc(tri, start, end, W.inverse(word), check=False)
    raise IntegrityError("arc endpoints %s do not match trace (%d, %d)" % ((start, end), j0, j1))
