r"""
Taut chord realizations of curves and arcs in the polygon model.

A reduced (cyclic) word determines a unique taut position of the loop with
respect to the polygon sides: each letter is one crossing of a glued side
pair, and the crossing points are ordered along each side by comparing the
bi-infinite continuations of the strands (the boundary-at-infinity order of
the universal cover).  In this position

* two distinct isotopy classes realize their minimal geometric intersection
  number as the count of interleaved chord pairs,
* a class is simple if and only if its own chords are pairwise unlinked,
* normal coordinates with respect to the canonical triangulation are read
  off by counting crossings with the glued pairs and the cone diagonals.

Dehn twisting does not need a taut representative of the twisted object: the
twisting curve is realized tautly once, while the object is carried as a
"probe" whose side crossings are placed at the extreme ends of each side.
Every crossing of a probe chord with a chord of the twisting curve inserts a
conjugated copy of the curve's word; free reduction of the assembled word
yields the exact image class.
"""

from .words import reduce_word, inverse

_FWD = "fwd"
_BWD = "bwd"


class TieError(Exception):
    """Two strand points lie on the same bi-infinite geodesic."""


class RealizedPath:
    """A curve (closed=True, cyclic word) or an arc/probe (closed=False,
    anchored at marked points) prepared for realization."""

    __slots__ = ("word", "closed", "start", "end", "oid")

    def __init__(self, word, closed, start=None, end=None, oid=0):
        self.word = tuple(word)
        self.closed = closed
        self.start = start  # boundary index of start marked point
        self.end = end
        self.oid = oid
        if closed and not self.word:
            raise ValueError("empty cyclic word does not define a curve")


def _ray(model, obj, kind, k, direction):
    """Iterator of exit descriptors for the strand ray leaving the given
    point into the polygon.

    Point kinds: 'X' = exit point of event k, 'E' = entry point of chord k.
    Descriptors: ('side', u) for a crossing of glued side u, or
    ('end', side, key) for termination at an anchor.
    """
    w = obj.word
    L = len(w)
    if kind != "E":
        raise AssertionError("rays are issued from E-indexed chord data")
    if direction == _BWD:
        idx = k
        while True:
            if not obj.closed and idx == 0:
                yield ("end", model.bdry_side[obj.start], (obj.oid, 0))
                return
            yield ("side", model.entry_side(w[(idx - 1) % L]))
            idx = (idx - 1) % L
    else:
        idx = k
        while True:
            if not obj.closed and idx == L:
                yield ("end", model.bdry_side[obj.end], (obj.oid, 1))
                return
            yield ("side", model.exit_side(w[idx % L]))
            idx = (idx + 1) % L


class _Point:
    """A strand point on a glued side."""

    __slots__ = ("obj", "kind", "k", "side")

    def __init__(self, model, obj, kind, k):
        self.obj = obj
        self.kind = kind  # 'X' or 'E'
        self.k = k
        w = obj.word
        if kind == "X":
            self.side = model.exit_side(w[k])
        else:
            self.side = model.entry_side(w[(k - 1) % len(w)])

    def ray_in(self, model):
        """Ray into the polygon from this point."""
        if self.kind == "X":
            return _ray(model, self.obj, "E", self.k, _BWD)
        return _ray(model, self.obj, "E", self.k, _FWD)

    def ray_out(self, model):
        """Ray into the polygon from the matched point on the partner side."""
        if self.kind == "X":
            # matched point is E_{k+1}
            L = len(self.obj.word)
            k1 = self.k + 1 if not self.obj.closed else (self.k + 1) % L
            return _ray(model, self.obj, "E", k1, _FWD)
        return _ray(model, self.obj, "E", self.k - 1 if not self.obj.closed else (self.k - 1) % len(self.obj.word), _BWD)

    def __repr__(self):
        return "_Point(o%d,%s,%d,s%d)" % (self.obj.oid, self.kind, self.k, self.side)


def _cmp_rays(model, ray_p, ray_q, side, maxsteps):
    """Walk two rays leaving the same side until they separate.

    Returns (steps, result): result is +1 if the first ray's point is nearer
    the head of `side`, -1 if nearer the tail, and 0 (with steps = maxsteps)
    if the rays did not separate."""
    S = model.n_sides
    cur = side
    for step in range(maxsteps):
        ep = next(ray_p)
        eq = next(ray_q)
        up = ep[1]
        uq = eq[1]
        if up != uq:
            rp = (up - cur - 1) % S
            rq = (uq - cur - 1) % S
            return step, (1 if rp < rq else -1)
        if ep[0] == "end" or eq[0] == "end":
            if ep[0] != eq[0]:
                # one terminates on a boundary side, the other crosses a glued
                # side; same side index is impossible for distinct kinds
                raise AssertionError("anchor/crossing side collision")
            # both end at anchors on the same boundary side: one chord hop,
            # no gluing, hence one orientation flip
            kp, kq = ep[2], eq[2]
            if kp == kq:
                return step, 0
            return step, (-1 if kp > kq else 1)
        cur = model.partner_of(up)
    return maxsteps, 0


def _cmp_points(model, p, q):
    """Order of two strand points along their common side, tail to head.

    The order is read off at the nearer of the two divergence ends of the
    strands, so a linked pair swaps sides exactly once along a shared
    corridor and crossing counts stay minimal."""
    if p is q:
        return 0
    la = len(p.obj.word)
    lb = len(q.obj.word)
    maxsteps = 2 * (la + lb) + 4
    df, rf = _cmp_rays(model, p.ray_in(model), q.ray_in(model), p.side, maxsteps)
    db, rb = _cmp_rays(model, p.ray_out(model), q.ray_out(model), model.partner_of(p.side), maxsteps)
    if rf == 0 and rb == 0:
        raise TieError("parallel strands: %r %r" % (p, q))
    if rf == 0:
        return -rb
    if rb == 0:
        return rf
    return rf if df <= db else -rb


class Realization:
    """Taut realization of one or more curves/arcs: sorted strand points on
    each side and the resulting chord diagram.

    The order of the crossing points of a glued side pair is computed once,
    on the positive side, by comparing strand rays; the negative side gets
    the mirrored order.  (A pair of linked strands admits two locally
    consistent pictures; fixing the positive side picks one globally.)
    """

    def __init__(self, model, objs):
        self.model = model
        self.objs = list(objs)
        pos_pts = {}  # pos side index -> list of _Point on that side
        matched = {}
        self.points = {}
        for obj in self.objs:
            w = obj.word
            L = len(w)
            for k in range(L):
                pX = _Point(model, obj, "X", k)
                self.points[(obj.oid, "X", k)] = pX
            rng = range(L) if obj.closed else range(1, L + 1)
            for k in rng:
                pE = _Point(model, obj, "E", k)
                self.points[(obj.oid, "E", k)] = pE
        for key, pt in self.points.items():
            side = model.sides[pt.side]
            if side.kind == "pos":
                pos_pts.setdefault(pt.side, []).append(pt)
        # matched partner of each point, when it exists in the diagram
        for (oid, kind, k), pt in self.points.items():
            obj = pt.obj
            L = len(obj.word)
            if kind == "X":
                kk = (k + 1) % L if obj.closed else k + 1
                matched[(oid, kind, k)] = (oid, "E", kk)
            else:
                kk = (k - 1) % L if obj.closed else k - 1
                matched[(oid, kind, k)] = (oid, "X", kk)

        import functools

        self.order = {}
        for s, pts in pos_pts.items():
            pts.sort(key=functools.cmp_to_key(lambda a, b: _cmp_points(model, a, b)))
            n = len(pts)
            sneg = model.partner_of(s)
            for i, pt in enumerate(pts):
                key = (pt.obj.oid, pt.kind, pt.k)
                self.order[key] = (s, i)
                mkey = matched[key]
                self.order[mkey] = (sneg, n - 1 - i)

        # anchor positions: on boundary sides, above all strand points
        self.anchor_pos = {}
        for obj in self.objs:
            if not obj.closed:
                sa = model.bdry_side[obj.start]
                se = model.bdry_side[obj.end]
                self.anchor_pos[(obj.oid, 0)] = (sa, 10 ** 9 + 2 * obj.oid)
                self.anchor_pos[(obj.oid, 1)] = (se, 10 ** 9 + 2 * obj.oid + 1)

    def chords(self, obj):
        """Directed chords of the object as position pairs, with the phase of
        the event that ends each chord (for curves) or None (anchored ends)."""
        w = obj.word
        L = len(w)
        out = []
        if obj.closed:
            for k in range(L):
                a = self.order[(obj.oid, "E", k)]
                b = self.order[(obj.oid, "X", k)]
                out.append((a, b, k))
        else:
            if L == 0:
                out.append((self.anchor_pos[(obj.oid, 0)], self.anchor_pos[(obj.oid, 1)], None))
                return out
            out.append((self.anchor_pos[(obj.oid, 0)], self.order[(obj.oid, "X", 0)], 0))
            for k in range(1, L):
                out.append((self.order[(obj.oid, "E", k)], self.order[(obj.oid, "X", k)], k))
            out.append((self.order[(obj.oid, "E", L)], self.anchor_pos[(obj.oid, 1)], None))
        return out


def _in_ccw_arc(p, a, b):
    """True if position p lies strictly inside the ccw arc from a to b."""
    if a < b:
        return a < p < b
    return p > a or p < b


def _chords_cross(c1, c2):
    (a1, b1, _), (a2, b2, _) = c1, c2
    return _in_ccw_arc(a2, a1, b1) != _in_ccw_arc(b2, a1, b1)


def _crossing_sign(c1, c2):
    """+1 if c2's start point lies in the ccw arc from c1's start to c1's end."""
    (a1, b1, _), (a2, _, _) = c1, c2
    return 1 if _in_ccw_arc(a2, a1, b1) else -1


def intersection_number(model, word_a, word_b):
    """Minimal geometric intersection number of two essential closed curves
    given by reduced cyclic words.  Isotopic classes must be special-cased by
    the caller (parallel copies are disjoint)."""
    a = RealizedPath(word_a, True, oid=0)
    b = RealizedPath(word_b, True, oid=1)
    r = Realization(model, [a, b])
    ca = r.chords(a)
    cb = r.chords(b)
    n = 0
    for x in ca:
        for y in cb:
            if _chords_cross(x, y):
                n += 1
    return n


def self_intersection(model, word):
    """Minimal self-intersection number of the class of a reduced cyclic word."""
    a = RealizedPath(word, True, oid=0)
    r = Realization(model, [a])
    ch = r.chords(a)
    n = 0
    for i in range(len(ch)):
        for j in range(i + 1, len(ch)):
            if _chords_cross(ch[i], ch[j]):
                n += 1
    return n


def diagonal_weights(model, word):
    """Crossing counts of the taut curve with the cone diagonals, as a dict
    {corner k: weight} for k = 2 .. n_sides - 2."""
    a = RealizedPath(word, True, oid=0)
    r = Realization(model, [a])
    ch = r.chords(a)
    S = model.n_sides
    out = {}
    for k in range(2, S - 1):
        # diagonal from corner 0 (tail of side 0) to corner k: separates sides
        # 0..k-1 from sides k..S-1
        n = 0
        for (p1, p2, _) in ch:
            if (p1[0] < k) != (p2[0] < k):
                n += 1
        out[k] = n
    return out


# ---------------------------------------------------------------------------
# Dehn twisting
# ---------------------------------------------------------------------------

class TwistData:
    """Cached taut realization of a twisting curve."""

    __slots__ = ("model", "word", "chords")

    def __init__(self, model, word):
        self.model = model
        self.word = tuple(word)
        c = RealizedPath(self.word, True, oid=0)
        r = Realization(model, [c])
        # positions with a middle marker so probe extremes sort around them
        self.chords = [((a[0], ("c", a[1])), (b[0], ("c", b[1])), k) for (a, b, k) in r.chords(c)]


def _probe_positions(model, word, start, end):
    """Chords of a probe path/loop with side crossings at extreme positions.

    Keys on a side sort as ('a',) < ('c', i) < ('z', j): probe entries hug the
    tail, strand points are in taut order, probe exits hug the head.  The key
    of the matched entry mirrors the exit so the gluing is consistent.
    """
    L = len(word)
    pts_X = []
    pts_E = []
    for k in range(L):
        pts_X.append((model.exit_side(word[k]), ("z", k)))
        pts_E.append((model.entry_side(word[k]), ("a", -k)))
    chords = []
    if start is None:  # closed probe
        for k in range(L):
            chords.append((pts_E[(k - 1 + L) % L], pts_X[k], k))
        return chords
    sa = (model.bdry_side[start], ("z", 10 ** 9))
    sb = (model.bdry_side[end], ("z", 10 ** 9 + 1))
    if L == 0:
        return [(sa, sb, 0)]
    chords.append((sa, pts_X[0], 0))
    for k in range(1, L):
        chords.append((pts_E[k - 1], pts_X[k], k))
    chords.append((pts_E[L - 1], sb, L))
    return chords


TWIST_SIGN = 1  # global calibration of the right-handed convention


def twist_probe(twist, power, word, start=None, end=None):
    """Image of a probe (closed if start is None, else an anchored path) under
    the `power`-th power of the Dehn twist along the realized curve `twist`."""
    model = twist.model
    cword = twist.word
    Lc = len(cword)
    probe_chords = _probe_positions(model, word, start, end)
    out = []
    eps = TWIST_SIGN * (1 if power > 0 else -1)
    reps = abs(power)
    for (p1, p2, j) in probe_chords:
        hits = []
        for (q1, q2, m) in twist.chords:
            if _in_ccw_arc(q1, p1, p2) != _in_ccw_arc(q2, p1, p2):
                near = q1 if _in_ccw_arc(q1, p1, p2) else q2
                sign = 1 if _in_ccw_arc(q1, p1, p2) else -1
                hits.append((near, sign, m))
        # order along the probe chord: nearer (ccw from p1) crosses first
        hits.sort(key=lambda h: ((0, h[0]) if h[0] > p1 else (1, h[0])))
        for (_, sign, m) in hits:
            # the detour walks once around the twisting curve starting at the
            # crossed chord, so the inserted letters are the rotation of the
            # curve word at that phase, spliced in place
            rot = cword[m:] + cword[:m]
            ins = rot if sign * eps > 0 else inverse(rot)
            for _ in range(reps):
                out.extend(ins)
        if j < len(word):
            out.append(word[j])
    return reduce_word(out)
