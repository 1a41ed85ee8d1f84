from lefpen import words as W


def test_reduce():
    assert W.reduce_word([1, 2, -2, 3]) == (1, 3)
    assert W.reduce_word([1, -1]) == ()
    assert W.reduce_word([2, 1, -1, -2, 3]) == (3,)


def test_inverse_concat():
    w = (1, 2, -3)
    assert W.concat(w, W.inverse(w)) == ()
    assert W.concat((1, 2), (-2, 3)) == (1, 3)


def test_cyclic_reduce():
    core, conj = W.cyclic_reduce((1, 2, 3, -2, -1))
    assert core == (3,)
    assert W.concat(conj, core, W.inverse(conj)) == (1, 2, 3, -2, -1)


def test_canonical_cyclic():
    assert W.canonical_cyclic((2, 1)) == W.canonical_cyclic((1, 2))
    assert W.canonical_cyclic((1, 2), unoriented=True) == W.canonical_cyclic((-2, -1), unoriented=True)
    assert W.canonical_cyclic((1, 2)) != W.canonical_cyclic((-1, -2))


def test_conjugating_word():
    u = (1, 2)
    v = W.conjugate(u, (3, -1))
    c = W.conjugating_word(u, v)
    assert c is not None
    assert W.conjugate(u, c) == v
    assert W.conjugating_word((1,), (2,)) is None


def test_primitive():
    assert W.is_primitive((1, 2))
    assert not W.is_primitive((1, 2, 1, 2))
    assert not W.is_primitive(())


def test_substitute():
    images = {1: (2, 3), 2: (1,)}
    assert W.substitute((1, -2), images) == (2, 3, -1)


def test_abelianize():
    assert W.abelianize((1, 2, -1, 2), 3) == [0, 2, 0]
