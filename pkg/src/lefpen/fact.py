r"""
Positive factorizations and the certified rewriting system.

Words of twist letters are stored in display order: index 0 is the leftmost
letter, which is applied last (``t_{c_n} ... t_{c_1}`` reads left to right).
Every rewriting step preserves the product as a mapping class and the replay
machinery asserts this per step, recording a certificate of product hashes.

Letters carry atlas names so scripts stay diffable; letters created by
elementary transformations get derived names like ``b2<c11'`` ("image of
c11' under the twist about b2"), unless the resulting curve already has an
atlas name, in which case that name is reused.

File formats (UTF-8, ``#`` comments):

``.lpf``::

    surface g=<int> b=<int>
    use atlas <relative path>
    lhs <letter> <letter> ...        # leftmost applied last; ~name = inverse
    rhs <bdry>:<mult> ...

``.lps``::

    surface g=<int> b=<int>
    use atlas <relative path>
    initial <letter> <letter> ...
    ET <i> <L|R>
    CYC <k>
    CONJ <mapping-class word>
    SUB <i>..<j> { <letter> ... } BY <justification-name>
    CANCEL <i>
    COMM <i>
    expect <letter> <letter> ...
"""

import hashlib
import os

from . import words as W
from .curves import Curve, Arc, CurveAtlas, boundary_curve, geometric_intersection
from .mcg import MappingClass, DehnTwist, HalfTwist
from .surface import ContextError, DomainError


class DerivationError(ValueError):
    pass


class Letter:
    """A signed twist letter; the name is the atlas key or a derived tag."""

    __slots__ = ("name", "curve", "power")

    def __init__(self, name, curve, power=1):
        if power not in (1, -1):
            raise DomainError("letters are single twists, power +1 or -1")
        self.name = name
        self.curve = curve
        self.power = power

    def inverse(self):
        return Letter(self.name, self.curve, -self.power)

    def token(self):
        return self.name if self.power == 1 else "~" + self.name

    def __repr__(self):
        return self.token()

    def __eq__(self, other):
        return (isinstance(other, Letter) and self.power == other.power
                and self.curve == other.curve)


class GeneralWord:
    """A word of signed twist letters on one surface, with its name atlas."""

    def __init__(self, atlas, letters):
        self.atlas = atlas
        self.letters = tuple(letters)

    @property
    def tri(self):
        return self.atlas.tri

    def __len__(self):
        return len(self.letters)

    def __getitem__(self, i):
        return self.letters[i]

    def __repr__(self):
        return " ".join(l.token() for l in self.letters) or "1"

    def replace(self, letters):
        return GeneralWord(self.atlas, letters)

    def product(self):
        moves = [DehnTwist(l.curve, l.power) for l in self.letters]
        return MappingClass(self.tri, moves)

    def product_key(self):
        return self.product().signature_data()

    def all_positive(self):
        return all(l.power == 1 for l in self.letters)

    def name_for(self, curve):
        for n, obj in self.atlas.named.items():
            if isinstance(obj, Curve) and obj == curve:
                return n
        return None


def _derived_name(word, base_letter, target_letter, direction):
    c = target_letter.curve
    existing = word.name_for(c)
    if existing:
        return existing
    op = "<" if direction == "right" else ">"
    return "%s%s%s" % (base_letter.name, op, target_letter.name)


def elementary_transform(word, i, direction):
    """Hurwitz move on adjacent letters i, i+1 (display order).

    direction 'right': (t_A, t_B) -> (t_{A(B)}, t_A); 'left' is its inverse
    (t_A, t_B) -> (t_B, t_{B^-1(A)}).  Signs ride along; the product is
    unchanged.
    """
    ls = list(word.letters)
    if not (0 <= i < len(ls) - 1):
        raise DerivationError("elementary transform index %d out of range" % i)
    A, B = ls[i], ls[i + 1]
    if direction in ("right", "R"):
        f = MappingClass.twist(A.curve, A.power)
        newc = f.apply(B.curve)
        newl = Letter(None, newc, B.power)
        newl.name = _derived_name(word, A, B, "right") if word.name_for(newc) is None else word.name_for(newc)
        ls[i], ls[i + 1] = newl, A
    elif direction in ("left", "L"):
        f = MappingClass.twist(B.curve, -B.power)
        newc = f.apply(A.curve)
        newl = Letter(None, newc, A.power)
        newl.name = _derived_name(word, B, A, "left") if word.name_for(newc) is None else word.name_for(newc)
        ls[i], ls[i + 1] = B, newl
    else:
        raise DerivationError("direction must be left or right")
    return word.replace(ls)


def cyclic_permute(word, k, allow_conjugation=False):
    """Rotate the word left by k.

    Without `allow_conjugation` the product must be central (a boundary
    multitwist or the identity) so the rotation preserves it.  With the flag,
    the rotation is recorded as conjugation by the inverse of the rotated-out
    prefix, and (rotated word, conjugator) is returned; otherwise the
    conjugator slot is None.
    """
    n = len(word)
    if n == 0 or k % n == 0:
        return word, None
    k = k % n
    ls = word.letters[k:] + word.letters[:k]
    if allow_conjugation:
        head = MappingClass(word.tri, [DehnTwist(l.curve, l.power) for l in word.letters[:k]])
        return word.replace(ls), head.inverse()
    if not _is_central_product(word, word.product()):
        raise DerivationError(
            "cyclic permutation needs a central product or an explicit conjugation flag"
        )
    return word.replace(ls), None


def _is_central_product(word, prod):
    """Is the product a boundary multitwist (possibly trivial)?"""
    tri = word.tri
    b = tri.surface.b
    mults = boundary_degrees(prod)
    if mults is None:
        return False
    target = MappingClass(tri, [DehnTwist(boundary_curve(tri, j), m)
                                for j, m in mults.items() if m != 0])
    return prod.equals(target)


def boundary_degrees(mc):
    """If the mapping class could be a boundary multitwist, extract the
    multiplicities; returns {j: m_j} or None.  Used as a fast structural
    parse; callers needing certainty verify against the reconstructed
    multitwist."""
    m = mc.model
    sig = mc.signature_data()
    perm = dict(sig[0])
    if any(perm[j] != j for j in perm):
        return None
    # boundary 1 multiplicity from the conjugation part of phi(x1)
    d1 = m.boundary_word(1)
    x1img = sig[1][0]
    k1 = 0
    w = x1img
    guard = 0
    while w != (1,):
        w2 = W.concat(W.inverse(d1), w, d1)
        if len(w2) < len(w):
            w, k1 = w2, k1 + 1
        else:
            w2 = W.concat(d1, w, W.inverse(d1))
            if len(w2) < len(w):
                w, k1 = w2, k1 - 1
            else:
                return None
        guard += 1
        if guard > 500:
            return None
    m1 = -k1  # t_{d1} acts as conjugation by the inverse boundary word
    if m1:
        stripped = mc * MappingClass.twist(boundary_curve(mc.tri, 1), -m1)
        sig = stripped.signature_data()
    for idx in range(m.rank):
        if sig[1][idx] != (idx + 1,):
            return None
    mults = {1: m1}
    for idx, j in enumerate(range(2, m.b + 1)):
        u = sig[2][idx]
        ej = 2 * m.g + j - 1
        k = 0
        if u:
            if set(abs(x) for x in u) != {ej}:
                return None
            k = sum(1 if x > 0 else -1 for x in u)
            if u != W.power((ej,), k):
                return None
        mults[j] = -k
    return mults


def global_conjugate(fact_or_word, phi):
    """Replace every letter curve by its image under phi; for factorizations
    the boundary multiplicities follow the boundary permutation."""
    if isinstance(fact_or_word, Factorization):
        F = fact_or_word
        w2 = global_conjugate(F.lhs, phi)
        perm = phi.boundary_perm()
        rhs2 = {perm[j]: m for j, m in F.rhs.items()}
        return Factorization(F.atlas, w2.letters, rhs2, check=False)
    word = fact_or_word
    ls = []
    for l in word.letters:
        c2 = phi.apply(l.curve)
        nm = word.name_for(c2)
        ls.append(Letter(nm if nm else l.name + "^", c2, l.power))
    return word.replace(ls)


def substitute(word, i, j, replacement, justification=""):
    """Replace letters i..j-1 by the replacement letters; the two products
    must agree as mapping classes (checked here)."""
    if not (0 <= i <= j <= len(word)):
        raise DerivationError("substitute range %d..%d out of range" % (i, j))
    sub = GeneralWord(word.atlas, word.letters[i:j])
    rep = replacement if isinstance(replacement, GeneralWord) else GeneralWord(word.atlas, replacement)
    if not sub.product().equals(rep.product()):
        raise DerivationError(
            "substitution not product-preserving (%s): [%s] vs [%s]"
            % (justification or "unjustified", sub, rep)
        )
    return word.replace(word.letters[:i] + rep.letters + word.letters[j:])


def cancel_pair(word, i):
    """Remove letters i, i+1 when they are inverse twists about isotopic curves."""
    ls = word.letters
    if not (0 <= i < len(ls) - 1):
        raise DerivationError("cancel index %d out of range" % i)
    a, b = ls[i], ls[i + 1]
    if a.curve != b.curve or a.power + b.power != 0:
        raise DerivationError("letters %d,%d (%s %s) are not an inverse pair" % (i, i + 1, a, b))
    return word.replace(ls[:i] + ls[i + 2:])


def commute(word, i):
    """Swap adjacent letters with disjoint support."""
    ls = word.letters
    if not (0 <= i < len(ls) - 1):
        raise DerivationError("commute index %d out of range" % i)
    a, b = ls[i], ls[i + 1]
    n = geometric_intersection(a.curve, b.curve)
    if n != 0:
        raise DerivationError(
            "letters %d,%d do not commute: i(%s,%s) = %d (use an elementary transform)"
            % (i, i + 1, a.name, b.name, n)
        )
    return word.replace(ls[:i] + (b, a) + ls[i + 2:])


class Factorization:
    """A word of twist letters equated to a boundary multitwist."""

    def __init__(self, atlas, letters, rhs, check=True):
        self.atlas = atlas
        self.lhs = GeneralWord(atlas, letters)
        self.rhs = dict(rhs)
        b = atlas.surface.b
        for j, mj in self.rhs.items():
            if not (1 <= j <= b) or mj < 0:
                raise DomainError("bad boundary multiplicity %s:%s" % (j, mj))
        if check and not self.lhs.all_positive():
            raise DomainError("factorization letters must be positive twists")

    @property
    def tri(self):
        return self.atlas.tri

    @property
    def surface(self):
        return self.atlas.surface

    def __repr__(self):
        rhs = " ".join("d%d^%d" % (j, m) for j, m in sorted(self.rhs.items()) if m)
        return "Factorization(%s = %s)" % (self.lhs, rhs or "1")

    def letter_names(self):
        return [l.name for l in self.lhs.letters]

    def rhs_product(self):
        moves = []
        for j in sorted(self.rhs):
            m = self.rhs[j]
            if m:
                moves.append(DehnTwist(boundary_curve(self.tri, j), m))
        return MappingClass(self.tri, moves)

    def verify(self, level="full"):
        """Check lhs product = boundary multitwist.  Returns (ok, diagnosis)."""
        lhs = self.lhs.product()
        rhs = self.rhs_product()
        if level == "homology":
            if lhs.sp_matrix() != rhs.sp_matrix():
                return False, "homology: symplectic action differs"
            return True, "homology level passed"
        sa = lhs.signature_data()
        sb = rhs.signature_data()
        if sa == sb:
            return True, "full level passed"
        if sa[0] != sb[0]:
            return False, "boundary permutation differs: %s vs %s" % (sa[0], sb[0])
        m = self.tri.model
        for k in range(m.rank):
            if sa[1][k] != sb[1][k]:
                return False, "first failing filling loop: generator %s" % m.gen_name(k + 1)
        for idx, j in enumerate(range(2, m.b + 1)):
            if sa[2][idx] != sb[2][idx]:
                return False, "first failing test arc: boundary %d" % j
        return False, "signature mismatch"

    # -- files ------------------------------------------------------------

    def save(self, path, atlas_path=None):
        lines = ["# lefpen factorization",
                 "surface g=%d b=%d" % (self.surface.g, self.surface.b)]
        if atlas_path:
            lines.append("use atlas %s" % atlas_path)
        lines.append("lhs " + " ".join(l.token() for l in self.lhs.letters))
        lines.append("rhs " + " ".join("%d:%d" % (j, m) for j, m in sorted(self.rhs.items())))
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")

    @classmethod
    def load(cls, path, atlas=None):
        surface_seen = None
        letters = None
        rhs = None
        base = os.path.dirname(os.path.abspath(path))
        with open(path, encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                toks = line.split()
                try:
                    if toks[0] == "surface":
                        kv = dict(t.split("=") for t in toks[1:])
                        surface_seen = (int(kv["g"]), int(kv["b"]))
                    elif toks[0] == "use" and toks[1] == "atlas":
                        if atlas is None:
                            atlas = CurveAtlas.load(os.path.join(base, toks[2]))
                    elif toks[0] == "lhs":
                        letters = toks[1:]
                    elif toks[0] == "rhs":
                        rhs = {}
                        for t in toks[1:]:
                            j, m = t.split(":")
                            rhs[int(j)] = int(m)
                    else:
                        raise ValueError("unknown directive %r" % toks[0])
                except Exception as exc:
                    raise DerivationError("%s:%d: %s" % (path, lineno, exc)) from exc
        if atlas is None or letters is None or rhs is None:
            raise DerivationError("%s: incomplete factorization file" % path)
        if surface_seen and (atlas.surface.g, atlas.surface.b) != surface_seen:
            raise DerivationError("%s: surface does not match atlas" % path)
        ls = [parse_letter(atlas, t) for t in letters]
        return cls(atlas, ls, rhs)


def parse_letter(atlas, token):
    power = 1
    if token.startswith("~"):
        power = -1
        token = token[1:]
    if token not in atlas.named:
        raise DerivationError("unknown letter name %r" % token)
    return Letter(token, atlas[token], power)


def word_from_names(atlas, names_text):
    return GeneralWord(atlas, [parse_letter(atlas, t) for t in names_text.split()])


# ---------------------------------------------------------------------------
# mapping-class word expressions (External Interface of the mcg module)
# ---------------------------------------------------------------------------

def parse_mapping_class(atlas, text):
    """Parse 'T(c) T'(c) H(a) H'(a) PUSH(j,c)' into a mapping class
    (rightmost-first composition)."""
    tri = atlas.tri
    moves = []
    for tok in text.split():
        if tok.startswith("T'(") and tok.endswith(")"):
            moves.append(DehnTwist(atlas[tok[3:-1]], -1))
        elif tok.startswith("T(") and tok.endswith(")"):
            moves.append(DehnTwist(atlas[tok[2:-1]], 1))
        elif tok.startswith("H'(") and tok.endswith(")"):
            moves.append(HalfTwist(atlas[tok[3:-1]], -1))
        elif tok.startswith("H(") and tok.endswith(")"):
            moves.append(HalfTwist(atlas[tok[2:-1]], 1))
        elif tok.startswith("PUSH(") and tok.endswith(")"):
            j, cname = tok[5:-1].split(",")
            track = atlas[cname]
            push = MappingClass.boundary_push(tri, int(j), track.word)
            moves.extend(push.moves)
        else:
            raise DerivationError("bad mapping-class token %r" % tok)
    return MappingClass(tri, moves)


# ---------------------------------------------------------------------------
# derivation scripts
# ---------------------------------------------------------------------------

class Step:
    def __init__(self, kind, **kw):
        self.kind = kind
        self.kw = kw

    def __repr__(self):
        return "%s %s" % (self.kind, self.kw)


class DerivationScript:
    """A checkable sequence of rewriting steps."""

    def __init__(self, initial, steps, expect=None, name=""):
        self.initial = initial  # GeneralWord
        self.steps = list(steps)
        self.expect = expect    # optional GeneralWord to match at the end
        self.name = name

    def replay(self, check_products=True):
        """Replay all steps; raises DerivationError at the first failure.
        Returns (final word, certificate).

        The product is asserted per step: unchanged for elementary
        transforms, substitutions, cancellations and commutations; changed by
        exactly the recorded conjugator for global conjugations and
        conjugation-justified rotations.
        """
        word = self.initial
        cert = [_word_hash(word)]
        prev = word.product() if check_products else None
        conj_so_far = MappingClass.identity(word.tri)
        for idx, step in enumerate(self.steps):
            try:
                word, conj = self._apply(word, step)
            except DerivationError as exc:
                raise DerivationError("step %d (%r): %s" % (idx, step, exc)) from exc
            if conj is not None:
                conj_so_far = conj * conj_so_far
            if check_products:
                cur = word.product()
                expected = prev if conj is None else conj * prev * conj.inverse()
                if not cur.equals(expected):
                    raise DerivationError(
                        "step %d (%r) changed the product" % (idx, step))
                prev = cur
            cert.append(_word_hash(word))
        if self.expect is not None:
            if [(l.curve, l.power) for l in word.letters] != \
               [(l.curve, l.power) for l in self.expect.letters]:
                raise DerivationError(
                    "final word does not match expectation:\n  got  %s\n  want %s"
                    % (word, self.expect))
        return word, Certificate(self.name, cert, conj_so_far)

    @staticmethod
    def _apply(word, step):
        k = step.kind
        if k == "ET":
            return elementary_transform(word, step.kw["i"], step.kw["dir"]), None
        if k == "CYC":
            return cyclic_permute(word, step.kw["k"], step.kw.get("allow_conjugation", False))
        if k == "CONJ":
            return global_conjugate(word, step.kw["phi"]), step.kw["phi"]
        if k == "SUB":
            return substitute(word, step.kw["i"], step.kw["j"], step.kw["replacement"],
                              step.kw.get("justification", "")), None
        if k == "CANCEL":
            return cancel_pair(word, step.kw["i"]), None
        if k == "COMM":
            return commute(word, step.kw["i"]), None
        raise DerivationError("unknown step kind %r" % k)


class Certificate:
    def __init__(self, name, hashes, conjugator):
        self.name = name
        self.hashes = list(hashes)
        self.conjugator = conjugator

    def __repr__(self):
        return "Certificate(%s, %d steps)" % (self.name, len(self.hashes) - 1)


def _word_hash(word):
    h = hashlib.sha256()
    for l in word.letters:
        h.update(repr((l.curve.word, l.power)).encode())
    return h.hexdigest()[:16]


def load_script(path, atlas=None):
    """Parse a .lps script file."""
    base = os.path.dirname(os.path.abspath(path))
    initial = None
    expect = None
    steps = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            toks = line.split()
            try:
                if toks[0] == "surface":
                    continue
                if toks[0] == "use" and toks[1] == "atlas":
                    if atlas is None:
                        atlas = CurveAtlas.load(os.path.join(base, toks[2]))
                elif toks[0] == "initial":
                    initial = word_from_names(atlas, " ".join(toks[1:]))
                elif toks[0] == "expect":
                    expect = word_from_names(atlas, " ".join(toks[1:]))
                elif toks[0] == "ET":
                    steps.append(Step("ET", i=int(toks[1]), dir=toks[2]))
                elif toks[0] == "CYC":
                    allow = len(toks) > 2 and toks[2] == "CONJ"
                    steps.append(Step("CYC", k=int(toks[1]), allow_conjugation=allow))
                elif toks[0] == "CONJ":
                    steps.append(Step("CONJ", phi=parse_mapping_class(atlas, " ".join(toks[1:]))))
                elif toks[0] == "SUB":
                    rng = toks[1].split("..")
                    i, j = int(rng[0]), int(rng[1])
                    l = line.index("{")
                    r = line.rindex("}")
                    inner = line[l + 1:r].strip()
                    just = line[r + 1:].strip()
                    just = just[2:].strip() if just.startswith("BY") else just
                    steps.append(Step("SUB", i=i, j=j,
                                      replacement=word_from_names(atlas, inner),
                                      justification=just))
                elif toks[0] == "CANCEL":
                    steps.append(Step("CANCEL", i=int(toks[1])))
                elif toks[0] == "COMM":
                    steps.append(Step("COMM", i=int(toks[1])))
                else:
                    raise ValueError("unknown directive %r" % toks[0])
            except Exception as exc:
                raise DerivationError("%s:%d: %s" % (path, lineno, exc)) from exc
    if initial is None:
        raise DerivationError("%s: missing initial word" % path)
    return DerivationScript(initial, steps, expect=expect, name=os.path.basename(path))
