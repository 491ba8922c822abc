import itertools
import random

import pytest

from ncdeform import perm as P
from ncdeform.checks import index_tuples, random_oelem
from ncdeform.double_poisson import constant_bracket
from ncdeform.freealg import NcPoly, double_derive
from ncdeform.graphs import AdmGraph, enum_formality
from ncdeform.oalgebra import OElem, bimodule_act, o_mul, pi
from ncdeform.repspace import (
    CommPoly,
    MatTensor,
    comm_b_graph,
    comm_u_graph,
    covect,
    eval_element,
    pair,
    poly_entry,
    rep_partial,
    rep_poisson,
    trace_tensor,
    vect,
    word_entry,
)

CB = constant_bracket()
x = CommPoly.var


def test_eval_examples():
    assert eval_element(OElem.from_poly(NcPoly.gen(1)), (1,), (2,), 2) == x(1, 1, 2)
    assert eval_element(OElem.term([], [(1,)], ()), (), (), 2) == x(1, 1, 1) + x(1, 2, 2)
    assert eval_element(OElem.term([], [()], ()), (), (), 3) == CommPoly.const(3)
    with pytest.raises(ValueError):
        eval_element(OElem.from_poly(NcPoly.gen(1)), (3,), (1,), 2)


def test_pair_unit():
    assert pair(OElem.one(), [], 2) == CommPoly.const(1)


def test_product_relation():
    # ((a, b) (x) 1 (x) (12) | tr (x) E_ij) = sum_k a_ik b_kj
    a, b = (1, 2), (2,)
    alpha = OElem.term([a, b], [], (2, 1))
    N = 2
    for i, j in itertools.product(range(1, N + 1), repeat=2):
        lhs = pair(alpha, trace_tensor(N).tensor(MatTensor.unit([(i, j)])), N)
        rhs = sum((word_entry(a, i, k, N) * word_entry(b, k, j, N) for k in range(1, N + 1)), CommPoly.const(0))
        assert lhs == rhs


def test_unit_word_is_delta():
    for i, j in itertools.product((1, 2), repeat=2):
        assert word_entry((), i, j, 2) == CommPoly.const(1 if i == j else 0)


def test_pi_pairing():
    rng = random.Random(0)
    tr = trace_tensor(2)
    for _ in range(10):
        n = rng.randint(1, 3)
        alpha = random_oelem(rng, 2, n, with_trace=True)
        for X in index_tuples(rng, n - 1, 2, 8):
            assert pair(pi(alpha), X, 2) == pair(alpha, tr.tensor(MatTensor.unit(X)), 2)


def test_bimodule_pairing_rule():
    # (s.a.t | X) = (a | vect(t) covect(s^-1) X)
    rng = random.Random(1)
    for _ in range(10):
        n = rng.randint(1, 3)
        alpha = random_oelem(rng, 2, n, with_trace=True)
        s, t = rng.choice(list(P.all_perms(n))), rng.choice(list(P.all_perms(n)))
        for X in index_tuples(rng, n, 2, 8):
            lhs = pair(bimodule_act(s, alpha, t), X, 2)
            assert lhs == pair(alpha, vect(t, covect(P.inverse(s), X)), 2)


def test_product_pairing_rule():
    rng = random.Random(2)
    for _ in range(10):
        a = random_oelem(rng, 2, rng.randint(0, 2), with_trace=True)
        b = random_oelem(rng, 2, rng.randint(0, 2))
        ga, gb = a.grade(), b.grade()
        for X in index_tuples(rng, ga + gb, 2, 6):
            assert pair(o_mul(a, b), X, 2) == pair(a, X[:ga], 2) * pair(b, X[ga:], 2)


def test_rep_poisson_examples():
    assert rep_poisson(x(1, 1, 2), x(2, 2, 1), CB, 2) == CommPoly.const(1)
    assert not rep_poisson(x(1, 1, 1), x(2, 2, 2), CB, 2)


def test_rep_partial_examples():
    assert rep_partial(1, 1, 1, x(1, 1, 1)) == CommPoly.const(1)
    assert not rep_partial(1, 1, 1, x(2, 1, 1))


def test_partial_of_entry_uses_double_derivative():
    # d/dx_(k,p,q) a_ij = sum (d_k a)'_{ip} (d_k a)''_{qj}
    N = 2
    for L in range(4):
        for word in itertools.product((1, 2), repeat=L):
            a = NcPoly.word(word)
            for k, p, q, i, j in itertools.product((1, 2), repeat=5):
                lhs = rep_partial(k, p, q, poly_entry(a, i, j, N))
                rhs = CommPoly.const(0)
                for (u, v), c in double_derive(k, a).terms.items():
                    rhs = rhs + (word_entry(u, i, p, N) * word_entry(v, q, j, N)).scale(c)
                assert lhs == rhs


def test_asymptotic_injectivity_sanity():
    rng = random.Random(3)
    for _ in range(15):
        alpha = random_oelem(rng, 2, rng.randint(0, 2), with_trace=rng.random() < 0.5)
        n = alpha.grade()
        assert any(
            pair(alpha, X, N)
            for N in (1, 2, 3)
            for X in index_tuples(rng, n, N, 40)
        )


def test_comm_b_graph_examples():
    F, G = x(1, 1, 2) + x(2, 1, 1), x(2, 2, 1) * x(1, 1, 1)
    assert comm_b_graph(AdmGraph(0, ()), F, G, CB, 2) == F * G
    assert comm_b_graph(AdmGraph(1, (("L", "R"),)), x(1, 1, 2), x(2, 2, 1), CB, 2) == CommPoly.const(1)


def test_comm_b_graph_single_edge_is_rep_poisson():
    rng = random.Random(4)
    vs = [(k, i, j) for k in (1, 2) for i in (1, 2) for j in (1, 2)]
    for _ in range(5):
        F = x(*rng.choice(vs)) * x(*rng.choice(vs)) + x(*rng.choice(vs))
        G = x(*rng.choice(vs)) * x(*rng.choice(vs))
        assert comm_b_graph(AdmGraph(1, (("L", "R"),)), F, G, CB, 2) == rep_poisson(F, G, CB, 2)


def test_comm_u_graph_degenerate():
    (g,) = list(enum_formality(0, 2))
    F1, F2 = x(1, 1, 2), x(2, 2, 2) + x(1, 1, 1)
    assert comm_u_graph(g, [], [F1, F2], 2, 2) == F1 * F2


def test_commpoly_json():
    F = x(1, 1, 2) * x(2, 1, 1) + CommPoly.const(3)
    assert CommPoly.from_json(F.to_json()) == F
