"""Graph operators on O(A): vertex expressions, B_Gamma, the star product,
differential operators and formality components.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from . import perm as P
from .double_poisson import DoubleBracket
from .freealg import NcPoly, TensorElem, _accumulate, as_fraction, cyclic_canonical, partial_chain
from .graphs import (
    LEFT,
    RIGHT,
    AdmGraph,
    DGraph,
    FormalityGraph,
    Splitting,
    enum_admissible,
    enum_double_fiber,
    graph_key,
    perms_from_splitting,
    sigma_of_splitting,
    splittings,
    vertex_words,
)
from .oalgebra import OElem, _merge_traces, left_act, o_mul, o_prod, pi_power, right_act


@dataclass
class BoundaryData:
    """Elements attached to left, left-loop, right and right-loop vertices, plus u and v."""

    a: Sequence[NcPoly] = ()
    f: Sequence[NcPoly] = ()
    b: Sequence[NcPoly] = ()
    g: Sequence[NcPoly] = ()
    u: P.Perm | None = None
    v: P.Perm | None = None

    def base(self, vertex) -> NcPoly:
        kind, idx = vertex[0], vertex[1]
        pool = {"L": self.a, "Ol": self.f, "R": self.b, "Or": self.g}[kind]
        return pool[idx - 1]


@lru_cache(maxsize=200_000)
def _chain_word(ks: tuple, word: tuple) -> tuple:
    """partial_chain on one word, as a tuple of (key, coef) items."""
    return tuple(partial_chain(ks, NcPoly._raw({word: Fraction(1)})).terms.items())


def _chain_poly(ks: tuple, p: NcPoly) -> dict:
    out: dict = {}
    for w, c in p.terms.items():
        _accumulate(out, ((k, c * d) for k, d in _chain_word(ks, w)))
    return out


def _twisted(ks_word: Sequence, E: Sequence, chain: dict) -> dict:
    """Reorder slots of d_{I(w_v)}(base) from [0, w(1)..w(m)] to [0, E(v) order]."""
    pos = [1 + list(ks_word).index(e) for e in E]
    return {(key[0],) + tuple(key[p] for p in pos): c for key, c in chain.items()}


def _vertex_expansion(g: DGraph, words: Mapping, I: Mapping, v, base: NcPoly) -> dict:
    w = words[v]
    chain = _chain_poly(tuple(I[e] for e in w), base)
    return _twisted(w, g.incoming(v), chain)


def vertex_tensor(g: DGraph, S: Splitting, I: Mapping, v, data: BoundaryData, B: DoubleBracket) -> TensorElem:
    """X_{I,S}(v) with slots [0, e for e in E(v)].

    For a numbered vertex the whole block is returned jointly: slots of k.1
    followed by the slots of k.2, expanded over the terms of the bracket.
    """
    perms_from_splitting(g, S)  # rejects non-principal splittings
    words = vertex_words(g, S)
    if v[0] != "N":
        exp = _vertex_expansion(g, words, I, v, data.base(v))
        return TensorElem.raw(len(g.incoming(v)) + 1, exp)
    k = v[1]
    v1, v2 = ("N", k, 1), ("N", k, 2)
    out: dict = {}
    for group_coef, assign in _block_expansion(g, words, I, k, B):
        _accumulate(out, [(assign[v1] + assign[v2], group_coef)])
    return TensorElem.raw(len(g.incoming(v1)) + len(g.incoming(v2)) + 2, out)


def _block_expansion(g: DGraph, words, I, k, B: DoubleBracket) -> list:
    v1, v2 = ("N", k, 1), ("N", k, 2)
    br = B.gen(I[("e", k, 1)], I[("e", k, 2)])
    out = []
    for (left, right), c in br.terms.items():
        e1 = _vertex_expansion(g, words, I, v1, NcPoly._raw({left: Fraction(1)}))
        if not e1:
            continue
        e2 = _vertex_expansion(g, words, I, v2, NcPoly._raw({right: Fraction(1)}))
        for k1, c1 in e1.items():
            for k2, c2 in e2.items():
                out.append((c * c1 * c2, {v1: k1, v2: k2}))
    return out


def _arrival(g: DGraph, e) -> tuple:
    """(vertex, slot) whose component is picked up when walking along e."""
    v = g.head(e)
    if e[0] == "e":
        return v, 1 + g.incoming(v).index(e)
    return v, 0


@dataclass
class _Walks:
    """Splitting data precomputed for repeated evaluation."""

    graph: DGraph
    splitting: Splitting
    words: dict
    sigma: P.Perm
    path_slots: list = field(default_factory=list)
    cycle_slots: list = field(default_factory=list)

    @classmethod
    def build(cls, g: DGraph, S: Splitting) -> "_Walks":
        words = vertex_words(g, S)
        perms_from_splitting(g, S)
        w = cls(g, S, words, sigma_of_splitting(g, S))
        for start, p in zip(g.boundary_slots, S.paths):
            w.path_slots.append([(start, 0)] + [_arrival(g, e) for e in p])
        for c in S.cycles:
            w.cycle_slots.append([_arrival(g, e) for e in c])
        return w


def _walk_value(assign: Mapping, slots) -> tuple:
    out: tuple = ()
    for v, s in slots:
        out = out + assign[v][s]
    return out


def path_value(g: DGraph, S: Splitting, I: Mapping, tau: int, data: BoundaryData, B: DoubleBracket) -> NcPoly:
    """X_{I,S}(tau) for the boundary path with slot index tau (0-based).

    Sweedler factors are shared between walks, so this sums the walk over the
    joint expansion of every vertex: a labeling that kills some other chain
    gives zero here too.
    """
    walks = _Walks.build(g, S)
    out: dict = {}
    for coef, assign in _assignments(walks, I, data, B):
        _accumulate(out, [(_walk_value(assign, walks.path_slots[tau]), coef)])
    return NcPoly._raw(out)


def cycle_value(g: DGraph, S: Splitting, I: Mapping, idx: int, data: BoundaryData, B: DoubleBracket, start: int = 0):
    """X_{I,S}(gamma) for the cycle at index idx, walked from position ``start``.

    Same joint expansion as path_value.
    """
    from .freealg import NaturalElem

    walks = _Walks.build(g, S)
    slots = walks.cycle_slots[idx]
    slots = slots[start:] + slots[:start]
    out: dict = {}
    for coef, assign in _assignments(walks, I, data, B):
        _accumulate(out, [(_walk_value(assign, slots), coef)])
    return NaturalElem(out.items())


def _assignments(walks: _Walks, I: Mapping, data: BoundaryData, B: DoubleBracket):
    """All joint choices of Sweedler terms at every vertex, with their coefficients."""
    g = walks.graph
    groups = []
    for v in g.vertices:
        if v[0] == "N":
            continue
        exp = _vertex_expansion(g, walks.words, I, v, data.base(v))
        if not exp:
            return
        groups.append([(c, {v: k}) for k, c in exp.items()])
    for k in range(1, g.n + 1):
        blk = _block_expansion(g, walks.words, I, k, B)
        if not blk:
            return
        groups.append(blk)
    for combo in itertools.product(*groups):
        coef = Fraction(1)
        assign: dict = {}
        for c, part in combo:
            coef *= c
            assign.update(part)
        if coef:
            yield coef, assign


def _labelings(g: DGraph, d: int):
    edges = g.proper_edges
    for combo in itertools.product(range(1, d + 1), repeat=len(edges)):
        yield dict(zip(edges, combo))


def _b_split_walks(walks: _Walks, data: BoundaryData, B: DoubleBracket, out: dict, scale: Fraction) -> None:
    g = walks.graph
    u = data.u if data.u is not None else P.identity(g.l[0])
    v = data.v if data.v is not None else P.identity(g.r[0])
    uv = P.cross(u, v)
    sigma = walks.sigma
    perm = P.compose(sigma, uv)
    inv = P.inverse(sigma)
    n_slots = len(g.boundary_slots)
    for I in _labelings(g, B.d):
        for coef, assign in _assignments(walks, I, data, B):
            paths = [_walk_value(assign, s) for s in walks.path_slots]
            cycles = tuple(sorted(cyclic_canonical(_walk_value(assign, s)) for s in walks.cycle_slots))
            words = tuple(paths[inv[p] - 1] for p in range(n_slots))
            _accumulate(out, [((words, cycles, perm), coef * scale)])


def b_split(g: DGraph, S: Splitting, data: BoundaryData, B: DoubleBracket) -> OElem:
    """B_{G,S}: sum over labelings I of sigma(S).[(X(tau))_tau (x) prod X(gamma) (x) (u x v)]."""
    out: dict = {}
    _b_split_walks(_Walks.build(g, S), data, B, out, Fraction(1))
    return OElem._raw(out)


_FIBER_CACHE: dict = {}


def _fiber_walks(gamma: AdmGraph, l: tuple, r: tuple) -> list:
    key = (gamma, l, r)
    hit = _FIBER_CACHE.get(key)
    if hit is None:
        hit = []
        for g in enum_double_fiber(gamma, l, r):
            for _, S in splittings(g):
                hit.append(_Walks.build(g, S))
        if len(_FIBER_CACHE) > 5000:
            _FIBER_CACHE.clear()
        _FIBER_CACHE[key] = hit
    return hit


def _term_data(aterm, bterm) -> tuple[BoundaryData, tuple, tuple]:
    (wa, fa, u), (wb, fb, v) = aterm, bterm
    data = BoundaryData(
        a=[NcPoly._raw({w: Fraction(1)}) for w in wa],
        f=[NcPoly._raw({w: Fraction(1)}) for w in fa],
        b=[NcPoly._raw({w: Fraction(1)}) for w in wb],
        g=[NcPoly._raw({w: Fraction(1)}) for w in fb],
        u=u,
        v=v,
    )
    return data, (len(wa), len(fa)), (len(wb), len(fb))


def b_graph(gamma: AdmGraph, alpha: OElem, beta: OElem, B: DoubleBracket) -> OElem:
    """B_Gamma(alpha, beta): fibers over Gamma for each term profile, all principal splittings."""
    out: dict = {}
    for aterm, ca in alpha.terms.items():
        for bterm, cb in beta.terms.items():
            data, l, r = _term_data(aterm, bterm)
            for walks in _fiber_walks(gamma, l, r):
                _b_split_walks(walks, data, B, out, ca * cb)
    return OElem._raw(out)


# ----------------------------------------------------------- star product

GAMMA_LR = AdmGraph(1, ((LEFT, RIGHT),))
GAMMA_RL = AdmGraph(1, ((RIGHT, LEFT),))
EMPTY_GRAPH = AdmGraph(0, ())

# calibrated so that the hbar-coefficient of the twisted commutator is dt_bracket
CALIBRATION_CONSTANT = Fraction(1, 4)


def default_weights() -> dict[str, Fraction]:
    c = CALIBRATION_CONSTANT
    return {graph_key(EMPTY_GRAPH): Fraction(1), graph_key(GAMMA_LR): c, graph_key(GAMMA_RL): -c}


class MissingWeight(KeyError):
    def __init__(self, key: str):
        super().__init__(key)
        self.key = key

    def __str__(self):
        return f"no weight for graph {self.key}"


@dataclass
class HbarSeries:
    coefficients: list
    order: int

    def coefficient(self, n: int) -> OElem:
        return self.coefficients[n] if n < len(self.coefficients) else OElem()

    def to_json(self):
        return {"order": self.order, "coefficients": [c.to_json() for c in self.coefficients]}


def star(alpha: OElem, beta: OElem, order: int, weights: Mapping[str, Fraction], B: DoubleBracket) -> HbarSeries:
    if order < 0:
        raise ValueError("order must be nonnegative")
    coeffs = []
    for n in range(order + 1):
        total = OElem()
        for gamma in enum_admissible(n):
            key = graph_key(gamma)
            if key not in weights:
                raise MissingWeight(key)
            w = as_fraction(weights[key])
            if w:
                total = total + b_graph(gamma, alpha, beta, B).scale(w)
        coeffs.append(total)
    return HbarSeries(coeffs, order)


def twist_swap(gb: int, ga: int) -> P.Perm:
    """(12)^{gb, ga}: the twist relating beta*alpha to alpha*beta."""
    return P.block_swap(gb, ga)


def dt_commutator(alpha: OElem, beta: OElem, order: int, weights, B) -> list:
    """Coefficients of alpha**beta - Ad((12)^{|beta|,|alpha|}) beta**alpha."""
    from .oalgebra import ad

    ga, gb = alpha.grade(), beta.grade()
    ab = star(alpha, beta, order, weights, B)
    ba = star(beta, alpha, order, weights, B)
    sw = twist_swap(gb, ga)
    return [ab.coefficient(n) - ad(sw, ba.coefficient(n)) for n in range(order + 1)]


def dt_bracket(alpha: OElem, beta: OElem, B: DoubleBracket) -> OElem:
    """The bracket induced on O(A): the single-edge-pair graph e^1 -> L, e^2 -> R."""
    return b_graph(GAMMA_LR, alpha, beta, B)


def bracket_polyvector(B: DoubleBracket) -> dict:
    """Generator table (a, b) -> dt_bracket(x_a, x_b)."""
    return {
        (a, b): dt_bracket(OElem.from_poly(NcPoly.gen(a)), OElem.from_poly(NcPoly.gen(b)), B)
        for a in range(1, B.d + 1)
        for b in range(1, B.d + 1)
    }


# ---------------------------------------------------- differential operators


def diff_op_word(ks: Sequence[int], a: NcPoly) -> OElem:
    """The single-word operator: sum over w of Ad(w^-1 x id_1)(d_{k_{w^-1(1)}..}(a) (x) 1 (x) (12)^{m,1})."""
    ks = tuple(ks)
    m = len(ks)
    base_perm = P.block_swap(m, 1)
    out = OElem()
    for w in P.all_perms(m):
        winv = P.inverse(w)
        chain = partial_chain([ks[winv[i] - 1] for i in range(m)], a)
        elem = OElem._raw({(key, (), base_perm): c for key, c in chain.terms.items()})
        conj = P.cross(winv, (1,))
        out = out + left_act(conj, right_act(elem, P.inverse(conj)))
    return out


def _splits(m: int, parts: int):
    """Assignments of each of 1..m to one of ``parts`` factors."""
    if parts == 0:
        if m == 0:
            yield ()
        return
    yield from itertools.product(range(parts), repeat=m)


def diff_op(ks: Sequence[int], alpha: OElem) -> OElem:
    """D_{k_1..k_m}(alpha); output slots are [derivative slots 1..m, alpha's slots]."""
    ks = tuple(ks)
    m = len(ks)
    out = OElem()
    for (words, traces, u), coef in alpha.terms.items():
        l, r = len(words), len(traces)
        factors = [NcPoly._raw({w: Fraction(1)}) for w in words] + [NcPoly._raw({f: Fraction(1)}) for f in traces]
        for assign in _splits(m, l + r):
            groups = [[i for i in range(m) if assign[i] == t] for t in range(l + r)]
            prod = o_prod(diff_op_word([ks[i] for i in grp], x) for grp, x in zip(groups, factors))
            if not prod:
                continue
            # rho sends each slot of the product to its target position
            rho = [0] * (m + l + r)
            pos = 0
            for t, grp in enumerate(groups):
                for i in grp:
                    rho[pos] = r + i + 1
                    pos += 1
                rho[pos] = (r + m + t + 1) if t < l else (t - l + 1)
                pos += 1
            rho = tuple(rho)
            moved = left_act(rho, right_act(prod, P.inverse(rho)))
            contracted = pi_power(moved, r)
            out = out + right_act(contracted, P.cross(P.identity(m), u)).scale(coef)
    return out


def poly_diff_op(ktuples: Sequence[Sequence[int]], alphas: Sequence[OElem]) -> OElem:
    """Ad(sigma) of the product of D_{k_i}(alpha_i), regrouped to (#k_1..#k_n, |alpha_1|..|alpha_n|)."""
    if len(ktuples) != len(alphas):
        raise ValueError("arity mismatch")
    n = len(alphas)
    parts = [diff_op(ks, a) for ks, a in zip(ktuples, alphas)]
    prod = o_prod(parts)
    if n == 0 or not prod:
        return prod
    sizes = []
    for ks, a in zip(ktuples, alphas):
        sizes += [len(ks), a.grade()]
    tau = []
    for i in range(n):
        tau += [i + 1, n + i + 1]
    sigma = P.blowup(tuple(tau), sizes)
    return left_act(sigma, right_act(prod, P.inverse(sigma)))


def u_graph(gamma: FormalityGraph, specs: Sequence[Mapping], alphas: Sequence[OElem], d: int) -> OElem:
    """The formality component U_Gamma(Phi_1..Phi_n)(alpha_1..alpha_m)."""
    if len(specs) != gamma.n or len(alphas) != gamma.m:
        raise ValueError("arity mismatch")
    edges = gamma.edges()
    grades = [a.grade() for a in alphas]
    incoming = {("a", i): gamma.incoming(("a", i)) for i in range(1, gamma.n + 1)}
    incoming.update({("b", j): gamma.incoming(("b", j)) for j in range(1, gamma.m + 1)})

    # positions in the product layout
    deriv_pos: dict = {}
    arg_pos: dict = {}
    x_pos: list = []
    pos = 1
    for i in range(1, gamma.n + 1):
        for e in incoming[("a", i)]:
            deriv_pos[e] = pos
            pos += 1
        for p in range(1, len(gamma.stars[i - 1]) + 1):
            arg_pos[(i, p)] = pos
            pos += 1
    for j in range(1, gamma.m + 1):
        for e in incoming[("b", j)]:
            deriv_pos[e] = pos
            pos += 1
        x_pos.extend(range(pos, pos + grades[j - 1]))
        pos += grades[j - 1]
    total = pos - 1
    rows = [0] * total
    cols = [0] * total
    for t, e in enumerate(edges):
        rows[2 * t], rows[2 * t + 1] = arg_pos[e], deriv_pos[e]
        cols[2 * t], cols[2 * t + 1] = deriv_pos[e], arg_pos[e]
    for s, q in enumerate(x_pos):
        rows[2 * len(edges) + s] = q
        cols[2 * len(edges) + s] = q
    sigma1, sigma2 = tuple(rows), tuple(cols)
    sigma2_inv = P.inverse(sigma2)

    out = OElem()
    for combo in itertools.product(range(1, d + 1), repeat=len(edges)):
        I = dict(zip(edges, combo))
        parts = []
        for i in range(1, gamma.n + 1):
            args = tuple(I[(i, p)] for p in range(1, len(gamma.stars[i - 1]) + 1))
            value = specs[i - 1].get(args)
            if value is None or not value:
                parts = None
                break
            parts.append(diff_op([I[e] for e in incoming[("a", i)]], value))
        if parts is None:
            continue
        for j in range(1, gamma.m + 1):
            parts.append(diff_op([I[e] for e in incoming[("b", j)]], alphas[j - 1]))
        prod = o_prod(parts)
        if not prod:
            continue
        twisted = left_act(sigma2_inv, right_act(prod, sigma1))
        out = out + pi_power(twisted, 2 * len(edges))
    return out
