r"""
Surfaces and their canonical combinatorial models.

A compact oriented surface ``S_{g,b}`` with ``b >= 1`` boundary components is
modeled by a single convex polygon with glued sides.  Reading the polygon
boundary counterclockwise, the side word is

    x_1 y_1 x_1' y_1' ... x_g y_g x_g' y_g'  (t_2 d_2 t_2') ... (t_b d_b t_b')  d_1

where primes denote the reversed partner of a glued pair and the ``d_j`` are
free (boundary) sides.  The glued pairs are in bijection with a free basis
x_1, y_1, ..., x_g, y_g, e_2, ..., e_b of the fundamental group (rank
2g + b - 1), where e_j is the loop crossing the t_j pair once, freely
homotopic to the j-th boundary circle.

All vertex classes of this model lie on the boundary (one per boundary
component), which makes normal coordinates with respect to the cone
triangulation canonical: equal weights if and only if isotopic.

The canonical triangulation cones the polygon from the corner at the tail of
the first side.  Its interior edges are the 2g + b - 1 glued pairs plus the
4g + 3b - 5 diagonals, i.e. 6g + 4b - 6 interior edges in total, plus one
boundary edge per boundary component.
"""

from .words import reduce_word

# side kinds
POS = "pos"
NEG = "neg"
BDRY = "bdry"

_INADMISSIBLE = {(0, 0), (0, 1), (0, 2), (1, 0)}


class Surface:
    """A compact oriented surface of genus g with b boundary components."""

    __slots__ = ("g", "b")

    def __init__(self, g, b):
        if g < 0 or b < 0:
            raise ValueError("genus and boundary count must be nonnegative")
        self.g = g
        self.b = b

    @property
    def chi(self):
        return 2 - 2 * self.g - self.b

    def is_admissible(self):
        """Admissible for the pencil correspondence: g >= 2, or g = 1 and
        b >= 1, or g = 0 and b >= 3."""
        return (self.g, self.b) not in _INADMISSIBLE

    def require_admissible(self):
        if not self.is_admissible():
            raise DomainError(
                "surface (g=%d, b=%d) violates the pencil hypothesis "
                "(need g>=2, or g=1 with b>=1, or g=0 with b>=3)" % (self.g, self.b)
            )

    def __eq__(self, other):
        return isinstance(other, Surface) and (self.g, self.b) == (other.g, other.b)

    def __hash__(self):
        return hash((self.g, self.b))

    def __repr__(self):
        return "Surface(g=%d, b=%d)" % (self.g, self.b)


class DomainError(ValueError):
    pass


class ContextError(ValueError):
    """Raised when objects from different surfaces/triangulations are mixed."""


class Side:
    __slots__ = ("index", "kind", "gen", "bdry", "partner")

    def __init__(self, index, kind, gen=None, bdry=None):
        self.index = index
        self.kind = kind
        self.gen = gen
        self.bdry = bdry
        self.partner = None

    def __repr__(self):
        if self.kind == BDRY:
            return "Side(%d, d%d)" % (self.index, self.bdry)
        return "Side(%d, %s g%d)" % (self.index, self.kind, self.gen)


class PolygonModel:
    """The glued-polygon model of S_{g,b} (b >= 1).

    Generator numbering: x_i -> 2i-1, y_i -> 2i (1 <= i <= g), and
    e_j -> 2g + j - 1 (2 <= j <= b).  Marked points: one point p_j on each
    boundary side d_j; the basepoint is p_1.  The straight chord from p_1 to
    p_j is the canonical tree path tau_j and has trivial word.
    """

    def __init__(self, g, b):
        if b < 1:
            raise ValueError("polygon model needs at least one boundary component")
        if (g, b) == (0, 1):
            raise ValueError("the disk has no polygon model here")
        self.surface = Surface(g, b)
        self.g = g
        self.b = b
        self.rank = 2 * g + b - 1

        sides = []
        pos_side = {}
        neg_side = {}
        bdry_side = {}

        def add(kind, gen=None, bdry=None):
            s = Side(len(sides), kind, gen=gen, bdry=bdry)
            sides.append(s)
            return s

        for i in range(1, g + 1):
            sx = add(POS, gen=2 * i - 1)
            sy = add(POS, gen=2 * i)
            sxn = add(NEG, gen=2 * i - 1)
            syn = add(NEG, gen=2 * i)
            sx.partner, sxn.partner = sxn.index, sx.index
            sy.partner, syn.partner = syn.index, sy.index
            pos_side[2 * i - 1], neg_side[2 * i - 1] = sx.index, sxn.index
            pos_side[2 * i], neg_side[2 * i] = sy.index, syn.index
        for j in range(2, b + 1):
            gid = 2 * g + j - 1
            st = add(POS, gen=gid)
            sd = add(BDRY, bdry=j)
            stn = add(NEG, gen=gid)
            st.partner, stn.partner = stn.index, st.index
            pos_side[gid], neg_side[gid] = st.index, stn.index
            bdry_side[j] = sd.index
        bdry_side[1] = add(BDRY, bdry=1).index

        self.sides = sides
        self.n_sides = len(sides)
        self.pos_side = pos_side
        self.neg_side = neg_side
        self.bdry_side = bdry_side
        self._vertex_classes = None

    # -- generator bookkeeping ------------------------------------------------

    def gen_name(self, k):
        g = self.g
        if k <= 2 * g:
            i = (k + 1) // 2
            return ("x%d" if k % 2 == 1 else "y%d") % i
        return "e%d" % (k - 2 * g + 1)

    def gen_by_name(self, name):
        for k in range(1, self.rank + 1):
            if self.gen_name(k) == name:
                return k
        raise KeyError(name)

    def word_from_names(self, text):
        """Parse words like 'x1 y1 X1 Y1 e2' (uppercase = inverse)."""
        out = []
        for tok in text.split():
            inv = tok[0].isupper()
            k = self.gen_by_name(tok.lower())
            out.append(-k if inv else k)
        return reduce_word(out)

    def word_str(self, word):
        toks = []
        for x in word:
            nm = self.gen_name(abs(x))
            toks.append(nm.upper() if x < 0 else nm)
        return " ".join(toks) if toks else "1"

    # -- geometry of the model -------------------------------------------------

    def exit_side(self, letter):
        """Side through which a strand leaves the polygon when crossing
        `letter` (positive letter: the pos side)."""
        return self.pos_side[letter] if letter > 0 else self.neg_side[-letter]

    def entry_side(self, letter):
        return self.neg_side[letter] if letter > 0 else self.pos_side[-letter]

    def partner_of(self, side_index):
        p = self.sides[side_index].partner
        if p is None:
            raise ValueError("boundary side %d has no partner" % side_index)
        return p

    def boundary_word(self, j):
        """Cyclic word of a simple closed curve parallel to boundary j,
        computed by the corner walk just inside that boundary circle."""
        dj = self.bdry_side[j]
        s = (dj + 1) % self.n_sides
        letters = []
        guard = 0
        while True:
            side = self.sides[s]
            if side.kind == BDRY:
                if side.index != dj:
                    raise AssertionError("vertex classes mix boundary components")
                break
            letters.append(side.gen if side.kind == POS else -side.gen)
            s = (self.partner_of(s) + 1) % self.n_sides
            guard += 1
            if guard > 4 * self.n_sides:
                raise AssertionError("corner walk did not terminate")
        return reduce_word(letters)

    def vertex_classes(self):
        """Corner classes of the polygon under the side gluings.  Corner k is
        the tail of side k.  Returns a list of frozensets of corner indices."""
        if self._vertex_classes is not None:
            return self._vertex_classes
        n = self.n_sides
        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        def union(a, c):
            ra, rc = find(a), find(c)
            if ra != rc:
                parent[ra] = rc

        for s in self.sides:
            if s.kind == POS:
                p = s.partner
                union(s.index, (p + 1) % n)        # tail(s) ~ head(partner)
                union((s.index + 1) % n, p)        # head(s) ~ tail(partner)
        classes = {}
        for k in range(n):
            classes.setdefault(find(k), set()).add(k)
        self._vertex_classes = [frozenset(v) for v in classes.values()]
        return self._vertex_classes


_model_cache = {}


def model(g, b):
    key = (g, b)
    if key not in _model_cache:
        _model_cache[key] = PolygonModel(g, b)
    return _model_cache[key]


class Triangulation:
    """Canonical cone triangulation of the polygon model.

    Edges, in canonical order: the glued side pairs (one edge per generator,
    in generator order), then one boundary edge per boundary component, then
    the cone diagonals from corner 0 to corners 2 .. n_sides-2.  The
    ``coords`` vectors of atlas files list weights for the interior edges
    only (pairs then diagonals): 6g + 4b - 6 integers.
    """

    def __init__(self, g, b):
        Surface(g, b).require_admissible()
        if g > 64 or b > 256:
            raise DomainError("canonical_triangulation: g <= 64 and b <= 256 required")
        self.model = model(g, b)
        self.surface = self.model.surface
        m = self.model
        S = m.n_sides

        edges = []
        for k in range(1, m.rank + 1):
            edges.append(("pair", k))
        for j in range(1, b + 1):
            edges.append(("bdry", j))
        for k in range(2, S - 1):
            edges.append(("diag", k))
        self.edges = edges
        self.n_interior = m.rank + (S - 3)

        def corner_edge(k):
            # edge of the cone triangulation joining corner 0 and corner k
            if k == 1:
                return self._edge_of_side(0)
            if k == S - 1:
                return self._edge_of_side(S - 1)
            return ("diag", k)

        tris = []
        for k in range(1, S - 1):
            tris.append((corner_edge(k), self._edge_of_side(k), corner_edge(k + 1)))
        self.triangles = tris
        self.boundary_edges = {j: [("bdry", j)] for j in range(1, b + 1)}

        V = len(m.vertex_classes())
        E = len(edges)
        F = len(tris)
        if V - E + F != self.surface.chi:
            raise AssertionError("euler count mismatch in canonical triangulation")
        if V != b:
            raise AssertionError("expected one vertex class per boundary component")

    def _edge_of_side(self, side_index):
        s = self.model.sides[side_index]
        if s.kind == BDRY:
            return ("bdry", s.bdry)
        return ("pair", s.gen)

    def interior_edges(self):
        return [e for e in self.edges if e[0] != "bdry"]

    def __eq__(self, other):
        return isinstance(other, Triangulation) and self.surface == other.surface

    def __hash__(self):
        return hash(("triangulation", self.surface))

    def __repr__(self):
        return "Triangulation(%r, %d edges)" % (self.surface, len(self.edges))


_tri_cache = {}


def canonical_triangulation(g, b):
    """Deterministic canonical triangulation of S_{g,b}; see module docs."""
    key = (g, b)
    if key not in _tri_cache:
        _tri_cache[key] = Triangulation(g, b)
    return _tri_cache[key]
