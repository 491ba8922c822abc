import itertools
import random
from fractions import Fraction

import pytest

from ncdeform import perm as P
from ncdeform.checks import index_tuples, random_oelem, random_skew_bracket
from ncdeform.double_poisson import bracket_eval, constant_bracket
from ncdeform.freealg import NcPoly, TensorElem, apply_partial, cyclic_canonical, double_derive, natural_project
from ncdeform.graphs import (
    AdmGraph,
    DGraph,
    Splitting,
    enum_admissible,
    enum_double_fiber,
    enum_formality,
    splittings,
)
from ncdeform.oalgebra import OElem, ad, bimodule_act, hat1, left_act, o_mul, pi, right_act
from ncdeform.quantize import (
    CALIBRATION_CONSTANT,
    EMPTY_GRAPH,
    GAMMA_LR,
    GAMMA_RL,
    BoundaryData,
    MissingWeight,
    b_graph,
    b_split,
    bracket_polyvector,
    cycle_value,
    default_weights,
    diff_op,
    diff_op_word,
    dt_bracket,
    path_value,
    poly_diff_op,
    star,
    u_graph,
    vertex_tensor,
)
from ncdeform.repspace import CommPoly, comm_u_graph, pair, rep_partial, rep_poisson

CB = constant_bracket()
X1, X2 = OElem.from_poly(NcPoly.gen(1)), OElem.from_poly(NcPoly.gen(2))
SWAP_UNIT = OElem.term([(), ()], [], (2, 1))

L1, R1, OL1 = ("L", 1), ("R", 1), ("Ol", 1)
THREE_BLOCK = DGraph(3, (1, 2), (1, 1), ((OL1, R1), (R1, ("N", 3, 1)), (OL1, R1)))
SPLIT_A = Splitting.make(
    [(), (("*", 1, 2), ("e", 1, 1), ("o", "l", 1), ("*", 3, 1), ("e", 3, 2))],
    [
        (("*", 3, 2), ("*", 2, 2), ("e", 2, 1)),
        (("*", 2, 1), ("e", 2, 2), ("e", 3, 1), ("*", 1, 1), ("e", 1, 2)),
        (("o", "l", 2),),
        (("o", "r", 1),),
    ],
)


def poly(*words):
    return sum((NcPoly.word(w) for w in words), NcPoly())


def three_block_data():
    return BoundaryData(
        a=[poly((1,))],
        f=[poly((1, 2, 1, 2), (2, 2, 1)), poly((2, 1))],
        b=[poly((2, 1, 2, 1, 1), (1, 2, 1))],
        g=[poly((1, 1, 2))],
        u=(1,),
        v=(1,),
    )


def n1_graph():
    return DGraph(1, (1, 0), (1, 0), ((L1, R1),))


def test_vertex_tensor_left_vertex_without_incoming():
    g = DGraph(1, (1, 0), (1, 0), ((R1, R1),))  # no arrows land in L_1
    (_, S), = [next(splittings(g))]
    data = BoundaryData(a=[poly((1, 2))], b=[poly((2,))], u=(1,), v=(1,))
    out = vertex_tensor(g, S, {("e", 1, 1): 1, ("e", 1, 2): 2}, L1, data, CB)
    assert out == TensorElem(1, [(((1, 2),), 1)])


def test_vertex_tensor_loop_vertex_worked_example():
    # E(O_1^l) = (e_1^1, e_3^1) and w = (e_3^1, e_1^1): the derivative along e_1^1 acts
    # first, then e_3^1 acts on its left half; the twist swaps the last two slots
    data = three_block_data()
    for i11, i31 in itertools.product((1, 2), repeat=2):
        I = {e: 1 for e in THREE_BLOCK.proper_edges}
        I[("e", 1, 1)], I[("e", 3, 1)] = i11, i31
        chain = apply_partial(i31, 1, double_derive(i11, data.f[0]))
        expected = TensorElem(3, [((A, B, C), c) for (A, C, B), c in chain.terms.items()])
        assert vertex_tensor(THREE_BLOCK, SPLIT_A, I, OL1, data, CB) == expected


def test_vertex_tensor_right_vertex_nested_chain():
    # w_{R_1} = (e_1^2, e_2^1, e_3^2) is the E(R_1) order so no twist appears
    data = three_block_data()
    rng = random.Random(0)
    for _ in range(4):
        I = {e: rng.randint(1, 2) for e in THREE_BLOCK.proper_edges}
        chain = double_derive(I[("e", 3, 2)], data.b[0])
        chain = apply_partial(I[("e", 2, 1)], 1, chain)
        chain = apply_partial(I[("e", 1, 2)], 1, chain)
        assert vertex_tensor(THREE_BLOCK, SPLIT_A, I, R1, data, CB) == chain


def test_vertex_tensor_numbered_block_without_incoming():
    g = n1_graph()
    (_, S), = list(splittings(g))
    data = BoundaryData(a=[poly((1,))], b=[poly((2,))], u=(1,), v=(1,))
    B = random_skew_bracket(random.Random(5), 2)
    for i, j in itertools.product((1, 2), repeat=2):
        I = {("e", 1, 1): i, ("e", 1, 2): j}
        assert vertex_tensor(g, S, I, ("N", 1), data, B) == bracket_eval(B, NcPoly.gen(i), NcPoly.gen(j))


def test_vertex_tensor_rejects_non_principal():
    bad = Splitting.make([(), ()], [])
    with pytest.raises(ValueError):
        vertex_tensor(THREE_BLOCK, bad, {e: 1 for e in THREE_BLOCK.proper_edges}, OL1, three_block_data(), CB)


def test_trivial_path_and_loop_cycle_uncoupled():
    g = DGraph(0, (1, 2), (1, 0), ())
    (_, S), = list(splittings(g))
    data = BoundaryData(a=[poly((1, 2))], f=[poly((2, 1, 1)), poly((2,))], b=[poly((1,))], u=(1,), v=(1,))
    assert path_value(g, S, {}, 0, data, CB) == data.a[0]
    assert path_value(g, S, {}, 1, data, CB) == data.b[0]
    assert cycle_value(g, S, {}, 0, data, CB) == natural_project(data.f[0])
    assert cycle_value(g, S, {}, 1, data, CB) == natural_project(data.f[1])


def test_trivial_path_and_loop_cycle_inside_three_block():
    # sigma of splitting (a) is the identity, so slot 1 is the trivial path at L_1
    data = three_block_data()
    out = b_split(THREE_BLOCK, SPLIT_A, data, random_skew_bracket(random.Random(3), 2))
    assert out
    f2 = cyclic_canonical((2, 1))
    for (words, traces, _), _ in out.terms.items():
        assert words[0] == (1,)
        assert f2 in traces


def test_n1_paths_are_units():
    g = n1_graph()
    (_, S), = list(splittings(g))
    data = BoundaryData(a=[poly((1,))], b=[poly((2,))], u=(1,), v=(1,))
    I = {("e", 1, 1): 1, ("e", 1, 2): 2}
    assert path_value(g, S, I, 0, data, CB) == NcPoly.one()
    assert path_value(g, S, I, 1, data, CB) == NcPoly.one()


def test_cycle_value_starting_point_irrelevant():
    data = three_block_data()
    B = random_skew_bracket(random.Random(1), 2)
    rng = random.Random(2)
    for _, S in itertools.islice(splittings(THREE_BLOCK), 0, 12, 3):
        for idx in range(len(S.cycles)):
            I = {e: rng.randint(1, 2) for e in THREE_BLOCK.proper_edges}
            ref = cycle_value(THREE_BLOCK, S, I, idx, data, B)
            for start in range(1, len(S.cycles[idx])):
                assert cycle_value(THREE_BLOCK, S, I, idx, data, B, start=start) == ref


def test_b_split_degenerate_is_concatenation():
    g = DGraph(0, (2, 0), (1, 0), ())
    (_, S), = list(splittings(g))
    data = BoundaryData(a=[poly((1,)), poly((2, 2))], b=[poly((1, 2))], u=(2, 1), v=(1,))
    assert b_split(g, S, data, CB) == OElem.term([(1,), (2, 2), (1, 2)], [], (2, 1, 3))


def test_b_split_single_edge_pair():
    g = n1_graph()
    (_, S), = list(splittings(g))
    data = BoundaryData(a=[poly((1,))], b=[poly((2,))], u=(1,), v=(1,))
    assert b_split(g, S, data, CB) == SWAP_UNIT


def test_b_split_carries_trace_only_cycles():
    out = b_split(THREE_BLOCK, SPLIT_A, three_block_data(), random_skew_bracket(random.Random(3), 2))
    assert out
    g1, f2 = cyclic_canonical((1, 1, 2)), cyclic_canonical((2, 1))
    for (_, traces, _), _ in out.terms.items():
        assert g1 in traces and f2 in traces


def test_b_graph_empty_graph_is_product():
    rng = random.Random(4)
    for _ in range(10):
        a = random_oelem(rng, 2, rng.randint(0, 2), with_trace=True)
        b = random_oelem(rng, 2, rng.randint(0, 2), with_trace=True)
        assert b_graph(EMPTY_GRAPH, a, b, CB) == o_mul(a, b)


def test_b_graph_single_edge_pair():
    assert b_graph(GAMMA_LR, X1, X2, CB) == SWAP_UNIT


def _b_graph_with_lifts(gamma, a_words, f_lifts, b_words, u, v, B):
    data = BoundaryData(
        a=[NcPoly.word(w) for w in a_words],
        f=[NcPoly.word(w) for w in f_lifts],
        b=[NcPoly.word(w) for w in b_words],
        u=u,
        v=v,
    )
    out = OElem()
    for g in enum_double_fiber(gamma, (len(a_words), len(f_lifts)), (len(b_words), 0)):
        for _, S in splittings(g):
            out = out + b_split(g, S, data, B)
    return out


def test_b_graph_independent_of_trace_lift():
    B = random_skew_bracket(random.Random(6), 2)
    f = (1, 2, 2)
    rotations = [f[i:] + f[:i] for i in range(len(f))]
    for gamma in list(enum_admissible(1)) + list(enum_admissible(2))[:12]:
        results = [_b_graph_with_lifts(gamma, [(2, 1)], [lift], [(1, 2)], (1,), (1,), B) for lift in rotations]
        assert results[0] == results[1] == results[2]
        alpha = OElem.term([(2, 1)], [f], (1,))
        assert b_graph(gamma, alpha, OElem.term([(1, 2)]), B) == results[0]


def _graphs_for_identities():
    return list(enum_admissible(1)) + list(enum_admissible(2))[::5]


def test_b_graph_admissibility_identities():
    rng = random.Random(7)
    B = random_skew_bracket(rng, 2)
    for gamma in _graphs_for_identities():
        a = random_oelem(rng, 2, 2, n_terms=1)
        b = random_oelem(rng, 2, 1, n_terms=1)
        ga, gb = a.grade(), b.grade()
        phi = b_graph(gamma, a, b, B)
        assert b_graph(gamma, pi(a), b, B) == pi(phi)
        assert b_graph(gamma, a, pi(OElem.term([(1,), (2,)], [], (2, 1))), B) == pi(
            ad(P.cross(P.block_swap(ga, 1), P.identity(1)), b_graph(gamma, a, OElem.term([(1,), (2,)], [], (2, 1)), B))
        )
        assert b_graph(gamma, hat1(a), b, B) == hat1(phi)
        assert b_graph(gamma, a, hat1(b), B) == ad(P.cross(P.block_swap(1, ga), P.identity(gb)), hat1(phi))


def test_b_graph_equivariance():
    rng = random.Random(8)
    B = random_skew_bracket(rng, 2)
    for gamma in _graphs_for_identities():
        a = random_oelem(rng, 2, 2, n_terms=1)
        b = random_oelem(rng, 2, 2, n_terms=1)
        phi = b_graph(gamma, a, b, B)
        for w1, w2 in [((2, 1), (1, 2)), ((1, 2), (2, 1)), ((2, 1), (2, 1))]:
            assert b_graph(gamma, left_act(w1, a), left_act(w2, b), B) == left_act(P.cross(w1, w2), phi)
            assert b_graph(gamma, right_act(a, w1), right_act(b, w2), B) == right_act(phi, P.cross(w1, w2))


def test_b_graph_matches_commutative_side():
    from ncdeform.repspace import comm_b_graph

    rng = random.Random(9)
    B = random_skew_bracket(rng, 2)
    for gamma in enum_admissible(1):
        a = random_oelem(rng, 2, 1, with_trace=True)
        b = random_oelem(rng, 2, 1)
        phi = b_graph(gamma, a, b, B)
        for X in index_tuples(rng, 2, 2, 16):
            F, G = pair(a, X[:1], 2), pair(b, X[1:], 2)
            assert pair(phi, X, 2) == comm_b_graph(gamma, F, G, B, 2)


def test_dt_bracket_examples():
    assert dt_bracket(X1, X2, CB) == SWAP_UNIT
    assert dt_bracket(X2, X1, CB) == -SWAP_UNIT
    for c1, c2 in [(1, 0), (0, 1), (1, 1), (2, -3)]:
        alpha = X1.scale(c1) + X2.scale(c2)
        assert not dt_bracket(alpha, alpha, CB)


def test_dt_bracket_on_generators_encodes_double_bracket():
    B = random_skew_bracket(random.Random(10), 2)
    for i, j in itertools.product((1, 2), repeat=2):
        value = bracket_eval(B, NcPoly.gen(i), NcPoly.gen(j))
        expected = OElem([(((v1, v2), (), (2, 1)), c) for (v1, v2), c in value.terms.items()])
        got = dt_bracket(OElem.from_poly(NcPoly.gen(i)), OElem.from_poly(NcPoly.gen(j)), B)
        assert got == expected
        for i1, j1, i2, j2 in itertools.product((1, 2), repeat=4):
            F, G = CommPoly.var(i, i1, j1), CommPoly.var(j, i2, j2)
            assert pair(got, [(i1, j1), (i2, j2)], 2) == rep_poisson(F, G, B, 2)


def test_star_order_zero_and_unit():
    rng = random.Random(11)
    w = default_weights()
    for _ in range(5):
        a = random_oelem(rng, 2, rng.randint(0, 2), with_trace=True)
        b = random_oelem(rng, 2, rng.randint(0, 2))
        assert star(a, b, 0, w, CB).coefficient(0) == o_mul(a, b)
        assert star(OElem.one(), b, 0, w, CB).coefficient(0) == b


def test_star_first_order_coefficient():
    s = star(X1, X2, 1, default_weights(), CB)
    assert s.coefficient(1) == SWAP_UNIT.scale(2 * CALIBRATION_CONSTANT)
    assert s.coefficient(1) == (b_graph(GAMMA_LR, X1, X2, CB) - b_graph(GAMMA_RL, X1, X2, CB)).scale(CALIBRATION_CONSTANT)


def test_star_missing_weight():
    with pytest.raises(MissingWeight) as info:
        star(X1, X2, 1, {"G0:": 1, "G1:L,R": 1}, CB)
    assert info.value.key == "G1:R,L"
    with pytest.raises(ValueError):
        star(X1, X2, -1, default_weights(), CB)


def test_diff_op_trivial_cases():
    rng = random.Random(12)
    for _ in range(5):
        a = random_oelem(rng, 2, rng.randint(0, 2), with_trace=True)
        assert diff_op((), a) == a
    for ks in [(1,), (2, 1), (1, 1, 2)]:
        p = poly((1, 2, 1), (2, 1, 1, 2))
        assert diff_op(ks, OElem.from_poly(p)) == diff_op_word(ks, p)


def test_diff_op_against_partial_derivatives():
    rng = random.Random(13)
    for _ in range(6):
        a = random_oelem(rng, 2, rng.randint(1, 2), with_trace=True)
        ks = [rng.randint(1, 2) for _ in range(rng.randint(1, 2))]
        D = diff_op(ks, a)
        m, n = len(ks), a.grade()
        for X in index_tuples(rng, m + n, 2, 24):
            pq = [(q, p) for (p, q) in X[:m]]  # derivative slots carry covectors (q, p)
            F = pair(a, X[m:], 2)
            for k, (p, q) in zip(ks, pq):
                F = rep_partial(k, p, q, F)
            assert pair(D, X, 2) == F


def test_poly_diff_op_edge_cases():
    a = OElem.term([(1, 2)], [(2,)], (1,))
    b = OElem.term([(2,), (1,)], [], (2, 1))
    assert poly_diff_op([], []) == OElem.one()
    assert poly_diff_op([(1,)], [a]) == diff_op((1,), a)
    assert poly_diff_op([(), ()], [a, b]) == o_mul(a, b)
    with pytest.raises(ValueError):
        poly_diff_op([(1,)], [a, b])


def test_poly_diff_op_block_layout():
    # result slots: (#k_1, #k_2, |alpha_1|, |alpha_2|)
    a = OElem.from_poly(poly((1, 2, 1)))
    b = OElem.from_poly(poly((2, 2, 1)))
    D = poly_diff_op([(1,), (2,)], [a, b])
    rng = random.Random(14)
    for X in index_tuples(rng, 4, 2, 64):
        (q1, p1), (q2, p2), Xa, Xb = X
        lhs = pair(D, X, 2)
        rhs = rep_partial(1, p1, q1, pair(a, [Xa], 2)) * rep_partial(2, p2, q2, pair(b, [Xb], 2))
        assert lhs == rhs


def test_u_graph_matches_commutative_side():
    B = random_skew_bracket(random.Random(15), 2)
    phi = bracket_polyvector(B)
    rng = random.Random(16)
    for gamma in enum_formality(1, 2, (2,)):
        a, b = random_oelem(rng, 2, 1), random_oelem(rng, 2, 1, with_trace=True)
        U = u_graph(gamma, [phi], [a, b], 2)
        for X in index_tuples(rng, 2, 2, 16):
            F = [pair(a, X[:1], 2), pair(b, X[1:], 2)]
            assert pair(U, X, 2) == comm_u_graph(gamma, [phi], F, 2, 2)


def test_u_graph_degenerate_and_arity():
    (gamma,) = list(enum_formality(0, 2))
    a, b = OElem.from_poly(poly((1,))), OElem.from_poly(poly((2, 1)))
    assert u_graph(gamma, [], [a, b], 2) == o_mul(a, b)
    with pytest.raises(ValueError):
        u_graph(gamma, [], [a], 2)
