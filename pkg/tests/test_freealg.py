import itertools
import random
from fractions import Fraction

import pytest

from ncdeform import perm as P
from ncdeform.freealg import (
    NaturalElem,
    NcPoly,
    TensorElem,
    apply_partial,
    cyclic_canonical,
    double_derive,
    nc_mul,
    natural_project,
    partial_chain,
    partial_word,
    tuple_from_word,
    words_up_to,
)

x1, x2 = NcPoly.gen(1), NcPoly.gen(2)


def rand_poly(rng, terms=2, max_len=3):
    return NcPoly([(tuple(rng.randint(1, 2) for _ in range(rng.randint(0, max_len))), rng.randint(-3, 3)) for _ in range(terms)])


def test_nc_mul():
    p = x1 + x2
    assert nc_mul(NcPoly.one(), p) == p
    assert nc_mul(x1, x2) == NcPoly.word((1, 2))
    assert nc_mul(p, x1) == NcPoly.word((1, 1)) + NcPoly.word((2, 1))


def test_cyclic_canonical():
    assert cyclic_canonical((2, 1, 2)) == (1, 2, 2)
    assert cyclic_canonical(()) == ()
    assert cyclic_canonical((1, 1)) == (1, 1)


def test_natural_project():
    assert not natural_project(x1 * x2 - x2 * x1)
    assert natural_project(x1) == NaturalElem({(1,): 1})
    p = NcPoly.word((2, 1), 2) + NcPoly.word((1, 2), 3)
    assert natural_project(p) == NaturalElem({(1, 2): 5})


def test_empty_cyclic_word_is_not_zero():
    assert natural_project(NcPoly.one())


def test_natural_project_cyclic():
    rng = random.Random(5)
    for _ in range(30):
        a, b = rand_poly(rng), rand_poly(rng)
        assert natural_project(a * b) == natural_project(b * a)


def test_double_derive_examples():
    assert not double_derive(1, x2)
    assert double_derive(1, x1) == TensorElem.pure([(), ()])
    got = double_derive(1, NcPoly.word((1, 2, 1)))
    assert got == TensorElem.pure([(), (2, 1)]) + TensorElem.pure([(1, 2), ()])


def test_double_derivation_rule():
    rng = random.Random(1)
    for _ in range(30):
        a, b = rand_poly(rng), rand_poly(rng)
        for k in (1, 2):
            lhs = double_derive(k, a * b)
            rhs = double_derive(k, a).outer(None, b) + double_derive(k, b).outer(a, None)
            assert lhs == rhs


def test_flip_exchanges_outer_and_inner():
    rng = random.Random(2)
    for _ in range(20):
        a, b = rand_poly(rng), rand_poly(rng)
        x = TensorElem(2, [((rng.choice([(), (1,), (2, 1)]), rng.choice([(), (2,)])), 1) for _ in range(2)])
        assert x.outer(a, b).flip() == x.flip().inner(a, b)


def test_partial_chain_examples():
    p = rand_poly(random.Random(0))
    assert partial_chain([], p) == TensorElem.from_poly(p)
    assert partial_chain([1], x1) == TensorElem.pure([(), ()])
    assert partial_chain([1, 2], x1 * x2) == TensorElem.pure([(), (), ()])


def test_tuple_from_word():
    assert tuple_from_word((3, 2, 1)) == (3, 2, 1)
    assert tuple_from_word((1, 2, 3)) == (1, 1, 1)
    assert tuple_from_word((2, 1)) == (2, 1)


def test_partial_word_identity_is_chain():
    p = NcPoly.word((1, 2, 1, 2))
    assert partial_word((1, 2), (1, 2), p) == partial_chain((1, 2), p)


def test_partial_word_321_expansion():
    # d_{k3}(a)' (x) d_{k2}(d_{k3}(a)'')' (x) d_{k1}(d_{k2}(d_{k3}(a)'')'')' (x) ...''
    a = NcPoly.word((2, 1, 1, 2, 1)) + NcPoly.word((1, 1, 2))
    k1, k2, k3 = 1, 2, 1
    expected = apply_partial(k1, 3, apply_partial(k2, 2, double_derive(k3, a)))
    assert partial_word((3, 2, 1), (k1, k2, k3), a) == expected
    assert expected


def test_partial_word_reorders_chain_exhaustive():
    # d^{(w)}_{k_1..k_m} = d_{k_w(1), .., k_w(m)}
    for m in range(4):
        for w in P.all_perms(m):
            for ks in itertools.product((1, 2), repeat=m):
                for word in words_up_to(2, 3):
                    p = NcPoly.word(word)
                    assert partial_word(w, ks, p) == partial_chain([ks[w[i] - 1] for i in range(m)], p)


def test_tensor_permute_convention():
    x = TensorElem.pure([(1,), (2,), (1, 1)])
    # component i goes to position sigma(i)
    assert x.permute((2, 3, 1)) == TensorElem.pure([(1, 1), (1,), (2,)])


def test_json_round_trip():
    p = NcPoly([((1, 2), Fraction(3, 2)), ((), -1)])
    assert NcPoly.from_json(p.to_json()) == p
    t = TensorElem.pure([(1,), (2, 2)], Fraction(-2, 3))
    assert TensorElem.from_json(t.to_json()) == t


def test_json_rejects_garbage():
    with pytest.raises(ValueError):
        TensorElem.from_json({"a": 1})
