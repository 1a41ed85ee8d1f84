r"""
Free-group word algebra.

Words in a free group of rank n are tuples of nonzero integers: the letter
``+k`` is the k-th generator (1-based) and ``-k`` its inverse.  Everything in
the engine that manipulates loops, arcs or mapping classes bottoms out here,
so these helpers are kept allocation-light and defensive about reduction.
"""

Word = tuple


def reduce_word(letters):
    """Freely reduce a sequence of letters, returning a tuple."""
    out = []
    for x in letters:
        if x == 0:
            raise ValueError("zero letter in word")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def inverse(word):
    return tuple(-x for x in reversed(word))


def concat(*words):
    """Product of already-reduced words, freely reduced."""
    out = []
    for w in words:
        for x in w:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
    return tuple(out)


def conjugate(word, by):
    """by * word * by^-1, reduced."""
    return concat(by, word, inverse(by))


def power(word, k):
    if k == 0:
        return ()
    base = word if k > 0 else inverse(word)
    out = base
    for _ in range(abs(k) - 1):
        out = concat(out, base)
    return out


def cyclic_reduce(word):
    """Return (core, conj) with word = conj * core * conj^-1 and core cyclically reduced."""
    w = reduce_word(word)
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == -w[j - 1]:
        i += 1
        j -= 1
    return w[i:j], w[:i]


def rotations(word):
    n = len(word)
    return [word[i:] + word[:i] for i in range(n)] if n else [()]


def canonical_cyclic(word, unoriented=False):
    """Canonical representative of the cyclic (conjugacy) class: the minimal
    rotation of the cyclically reduced core, optionally also over the inverse."""
    core, _ = cyclic_reduce(word)
    if not core:
        return ()
    cands = rotations(core)
    if unoriented:
        cands += rotations(inverse(core))
    return min(cands)


def are_conjugate(u, v):
    return canonical_cyclic(u) == canonical_cyclic(v)


def same_unoriented_class(u, v):
    return canonical_cyclic(u, unoriented=True) == canonical_cyclic(v, unoriented=True)


def conjugating_word(u, v):
    """A word c with v = c * u * c^-1, or None if u, v are not conjugate."""
    cu, pu = cyclic_reduce(u)
    cv, pv = cyclic_reduce(v)
    if len(cu) != len(cv):
        return None
    if not cu:
        return ()
    for i in range(len(cu)):
        if cu[i:] + cu[:i] == cv:
            # v = pv (rot_i cu) pv^-1 and rot_i cu = cu[:i]^-1-conjugated core
            return concat(pv, inverse(cu[:i]), inverse(pu))
    return None


def is_primitive(word):
    """True if the cyclically reduced core is not a proper power."""
    core, _ = cyclic_reduce(word)
    n = len(core)
    if n == 0:
        return False
    for d in range(1, n):
        if n % d == 0 and core == core[d:] + core[:d]:
            return False
    return True


def substitute(word, images):
    """Apply the homomorphism sending generator k to images[k] (a dict or list
    indexed by positive generator number) to a word."""
    out = []
    for x in word:
        img = images[abs(x)]
        seq = img if x > 0 else inverse(img)
        for y in seq:
            if out and out[-1] == -y:
                out.pop()
            else:
                out.append(y)
    return tuple(out)


def abelianize(word, rank):
    """Exponent-sum vector of the word, as a list of length rank."""
    v = [0] * rank
    for x in word:
        v[abs(x) - 1] += 1 if x > 0 else -1
    return v


def generators_used(word):
    return {abs(x) for x in word}
