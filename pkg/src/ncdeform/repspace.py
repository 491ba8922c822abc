"""Commutative oracle on N x N representation spaces.

The coordinate ring is the polynomial ring in x_(k,i,j) = (x_k)_{ij}.  Nothing
here calls into the quantize module; the graph operators are written against
CommPoly only so that comparisons with the noncommutative side are meaningful.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from . import perm as P
from .double_poisson import DoubleBracket
from .freealg import LinComb, _accumulate, as_fraction, fraction_str
from .graphs import LEFT, RIGHT, AdmGraph, FormalityGraph
from .oalgebra import OElem

Var = tuple[int, int, int]
Monomial = tuple  # sorted tuple of Vars with repetition


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    return tuple(sorted(m1 + m2))


class CommPoly(LinComb):
    __slots__ = ()

    @classmethod
    def _normalize_key(cls, key):
        return tuple(sorted(tuple(v) for v in key))

    @classmethod
    def const(cls, c) -> "CommPoly":
        c = as_fraction(c)
        return cls._raw({(): c} if c else {})

    @classmethod
    def var(cls, k: int, i: int, j: int) -> "CommPoly":
        return cls._raw({((k, i, j),): Fraction(1)})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, CommPoly):
            return NotImplemented
        out: dict = {}
        for m1, c1 in self.terms.items():
            _accumulate(out, ((_mono_mul(m1, m2), c1 * c2) for m2, c2 in other.terms.items()))
        return CommPoly._raw(out)

    def variables(self) -> set:
        return {v for m in self.terms for v in m}

    def derive(self, v: Var) -> "CommPoly":
        out: dict = {}
        for m, c in self.terms.items():
            cnt = m.count(v)
            if cnt:
                i = m.index(v)
                _accumulate(out, [(m[:i] + m[i + 1:], c * cnt)])
        return CommPoly._raw(out)

    def to_json(self):
        return [{"coef": fraction_str(c), "vars": [list(v) for v in m]} for m, c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, data) -> "CommPoly":
        return cls((tuple(tuple(v) for v in t["vars"]), as_fraction(t["coef"])) for t in data)


def comm_prod(polys: Iterable[CommPoly]) -> CommPoly:
    out = CommPoly.const(1)
    for p in polys:
        out = out * p
        if not out:
            break
    return out


# ------------------------------------------------------------ evaluation


@lru_cache(maxsize=None)
def word_entry(word: tuple, i: int, j: int, N: int) -> CommPoly:
    """(x_{w_1} ... x_{w_m})_{ij} as a polynomial."""
    _check_index(i, N)
    _check_index(j, N)
    if not word:
        return CommPoly.const(1 if i == j else 0)
    # row vector e_i times the matrices, one letter at a time
    row = {i: CommPoly.const(1)}
    for letter in word:
        nxt: dict = {}
        for s, poly in row.items():
            for t in range(1, N + 1):
                term = poly * CommPoly.var(letter, s, t)
                nxt[t] = nxt[t] + term if t in nxt else term
        row = nxt
    return row.get(j, CommPoly.const(0))


def _check_index(i: int, N: int) -> None:
    if not 1 <= i <= N:
        raise ValueError(f"matrix index {i} out of range 1..{N}")


@lru_cache(maxsize=None)
def trace_of_word(word: tuple, N: int) -> CommPoly:
    out = CommPoly.const(0)
    for i in range(1, N + 1):
        out = out + word_entry(word, i, i, N)
    return out


def poly_entry(p, i: int, j: int, N: int) -> CommPoly:
    """Entry (i, j) of an NcPoly evaluated on generic matrices."""
    out = CommPoly.const(0)
    for w, c in p.terms.items():
        out = out + word_entry(w, i, j, N).scale(c)
    return out


def eval_term(words, traces, u, i: Sequence[int], j: Sequence[int], N: int) -> CommPoly:
    n = len(words)
    uinv = P.inverse(u)
    factors = [word_entry(words[t], i[uinv[t] - 1], j[t], N) for t in range(n)]
    factors += [trace_of_word(f, N) for f in traces]
    return comm_prod(factors)


def eval_element(alpha: OElem, i: Sequence[int], j: Sequence[int], N: int) -> CommPoly:
    """alpha_{ij} = prod_t (a_t)_{i_{u^-1(t)} j_t} * prod tr(f)."""
    i, j = tuple(i), tuple(j)
    for x in i + j:
        _check_index(x, N)
    out: dict = {}
    for (words, traces, u), c in alpha.terms.items():
        if len(words) != len(i) or len(words) != len(j):
            raise ValueError("index tuples must match the grade")
        _accumulate(out, ((m, c * d) for m, d in eval_term(words, traces, u, i, j, N).terms.items()))
    return CommPoly._raw(out)


class MatTensor(LinComb):
    """Linear combination of E*_{i1 j1} (x) ... (x) E*_{in jn}; keys are tuples of (i, j)."""

    __slots__ = ()

    @classmethod
    def _normalize_key(cls, key):
        return tuple(tuple(p) for p in key)

    @classmethod
    def unit(cls, pairs: Sequence[tuple[int, int]]) -> "MatTensor":
        return cls({tuple(tuple(p) for p in pairs): 1})

    def tensor(self, other: "MatTensor") -> "MatTensor":
        out: dict = {}
        for k1, c1 in self.terms.items():
            _accumulate(out, ((k1 + k2, c1 * c2) for k2, c2 in other.terms.items()))
        return MatTensor._raw(out)


def _as_mat_tensor(X) -> MatTensor:
    if isinstance(X, MatTensor):
        return X
    return MatTensor.unit(X)


def pair(alpha: OElem, X, N: int) -> CommPoly:
    """(alpha | X): linear in X, with (alpha | E*_{i1j1} (x) ...) = alpha_{ij}."""
    X = _as_mat_tensor(X)
    out = CommPoly.const(0)
    for pairs, c in X.terms.items():
        if alpha and len(pairs) not in alpha.grades():
            raise ValueError("grade mismatch between element and matrix tensor")
        i = tuple(p[0] for p in pairs)
        j = tuple(p[1] for p in pairs)
        out = out + eval_element(alpha, i, j, N).scale(c)
    return out


def trace_tensor(N: int) -> MatTensor:
    """tr = sum_i E*_{ii}."""
    return MatTensor({((i, i),): 1 for i in range(1, N + 1)})


def vect(tau: P.Perm, X) -> MatTensor:
    """Row index at position p moves to position tau(p)."""
    X = _as_mat_tensor(X)
    inv = P.inverse(tau)

    def f(pairs):
        return tuple((pairs[inv[q] - 1][0], pairs[q][1]) for q in range(len(pairs)))

    return X.map_keys(f)


def covect(sigma: P.Perm, X) -> MatTensor:
    """Column index at position p moves to position sigma(p)."""
    X = _as_mat_tensor(X)
    inv = P.inverse(sigma)

    def f(pairs):
        return tuple((pairs[q][0], pairs[inv[q] - 1][1]) for q in range(len(pairs)))

    return X.map_keys(f)


def epsilon_first(X) -> MatTensor:
    """epsilon applied to the first tensor factor, epsilon(E*_{ij}) = delta_ij."""
    X = _as_mat_tensor(X)
    out: dict = {}
    for pairs, c in X.terms.items():
        if pairs[0][0] == pairs[0][1]:
            _accumulate(out, [(pairs[1:], c)])
    return MatTensor._raw(out)


# ------------------------------------------------------ Poisson structure


def generator_bracket(B: DoubleBracket, a: Var, b: Var, N: int) -> CommPoly:
    """{x_(k,i,j), x_(l,p,q)} = {{x_k,x_l}}'_{pj} {{x_k,x_l}}''_{iq}."""
    k, i, j = a
    l, p, q = b
    return _gen_bracket_cached(B, k, i, j, l, p, q, N)


_GEN_CACHE: dict = {}


def _gen_bracket_cached(B, k, i, j, l, p, q, N):
    key = (id(B), k, i, j, l, p, q, N)
    hit = _GEN_CACHE.get(key)
    if hit is not None and hit[0] is B:
        return hit[1]
    out = CommPoly.const(0)
    for (w1, w2), c in B.gen(k, l).terms.items():
        out = out + (word_entry(w1, p, j, N) * word_entry(w2, i, q, N)).scale(c)
    _GEN_CACHE[key] = (B, out)
    return out


def rep_poisson(F: CommPoly, G: CommPoly, B: DoubleBracket, N: int) -> CommPoly:
    out = CommPoly.const(0)
    for a in sorted(F.variables()):
        dF = F.derive(a)
        for b in sorted(G.variables()):
            br = generator_bracket(B, a, b, N)
            if br:
                out = out + dF * G.derive(b) * br
    return out


def rep_partial(k: int, p: int, q: int, F: CommPoly) -> CommPoly:
    return F.derive((k, p, q))


def rep_partial_chain(vars_: Sequence[Var], F: CommPoly) -> CommPoly:
    for v in reversed(vars_):
        F = F.derive(v)
    return F


def all_vars(d: int, N: int) -> list[Var]:
    return [(k, i, j) for k in range(1, d + 1) for i in range(1, N + 1) for j in range(1, N + 1)]


# ------------------------------------------------ graph operators (oracle)


def _bracket_letters(B: DoubleBracket) -> set[int]:
    out = set()
    for v in B.entries().values():
        for key in v.terms:
            for w in key:
                out.update(w)
    return out


def _assignment_sum(domains, factors, n_edges) -> CommPoly:
    """Sum over assignments edge -> variable of the product of factor values.

    ``factors`` is a list of (edges it depends on, function(assignment) -> CommPoly).
    A factor is evaluated as soon as all its edges are assigned and the branch is
    pruned when it vanishes.
    """
    ready_at: dict[int, list] = {}
    constant = CommPoly.const(1)
    for deps, fn in factors:
        if not deps:
            constant = constant * fn({})
        else:
            ready_at.setdefault(max(deps), []).append((deps, fn))
    if not constant:
        return constant
    total: dict = {}
    assign: dict = {}

    def rec(e: int, acc: CommPoly):
        if e == n_edges:
            _accumulate(total, acc.terms.items())
            return
        for var in domains[e]:
            assign[e] = var
            cur = acc
            for deps, fn in ready_at.get(e, ()):
                val = fn(assign)
                if not val:
                    cur = None
                    break
                cur = cur * val
            if cur is not None and cur:
                rec(e + 1, cur)
        assign.pop(e, None)

    rec(0, constant)
    return CommPoly._raw(total)


def comm_b_graph(gamma: AdmGraph, F: CommPoly, G: CommPoly, B: DoubleBracket, N: int) -> CommPoly:
    """B_Gamma(F, G) on the representation space, by direct summation over edge labels."""
    n = gamma.n
    edges = [(k, c) for k in range(1, n + 1) for c in (1, 2)]
    index = {e: t for t, e in enumerate(edges)}
    d = B.d
    letters = _bracket_letters(B)
    every = all_vars(d, N)

    def target(e):
        return gamma.targets[e[0] - 1][e[1] - 1]

    domains = []
    for e in edges:
        t = target(e)
        if t == LEFT:
            dom = sorted(F.variables())
        elif t == RIGHT:
            dom = sorted(G.variables())
        else:
            dom = [v for v in every if v[0] in letters]
        domains.append(dom)

    factors = []
    for k in range(1, n + 1):
        inc = [index[e] for e in edges if target(e) == k]
        own = [index[(k, 1)], index[(k, 2)]]

        def fn(assign, own=own, inc=inc):
            val = generator_bracket(B, assign[own[0]], assign[own[1]], N)
            for t in inc:
                val = val.derive(assign[t])
                if not val:
                    break
            return val

        factors.append((own + inc, fn))
    for side, poly in ((LEFT, F), (RIGHT, G)):
        inc = [index[e] for e in edges if target(e) == side]

        def fn(assign, inc=inc, poly=poly):
            val = poly
            for t in inc:
                val = val.derive(assign[t])
                if not val:
                    break
            return val

        factors.append((inc, fn))
    return _assignment_sum(domains, factors, len(edges))


def polyvector_value(phi: Mapping, vars_: Sequence[Var], N: int) -> CommPoly:
    """(Phi)_N(x_{v1}, ..., x_{vs}) = (Phi(x_{k1}, ..., x_{ks}) | E*_{i1 j1} (x) ...)."""
    ks = tuple(v[0] for v in vars_)
    value = phi.get(ks)
    if value is None or not value:
        return CommPoly.const(0)
    return pair(value, [(v[1], v[2]) for v in vars_], N)


def comm_u_graph(gamma: FormalityGraph, specs: Sequence[Mapping], Fs: Sequence[CommPoly], d: int, N: int) -> CommPoly:
    """Kontsevich's U_Gamma(Phi_1..Phi_n)(F_1..F_m) on the representation space."""
    if len(specs) != gamma.n or len(Fs) != gamma.m:
        raise ValueError("arity mismatch")
    edges = gamma.edges()
    index = {e: t for t, e in enumerate(edges)}
    every = all_vars(d, N)
    domains = []
    for e in edges:
        kind, j = gamma.target(e)
        domains.append(sorted(Fs[j - 1].variables()) if kind == "b" else every)
    cache: list[dict] = [dict() for _ in range(gamma.n)]
    factors = []
    for i in range(1, gamma.n + 1):
        own = [index[(i, p)] for p in range(1, len(gamma.stars[i - 1]) + 1)]
        inc = [index[e] for e in gamma.incoming(("a", i))]

        def fn(assign, own=own, inc=inc, i=i):
            key = tuple(assign[t] for t in own)
            val = cache[i - 1].get(key)
            if val is None:
                val = cache[i - 1][key] = polyvector_value(specs[i - 1], key, N)
            for t in inc:
                val = val.derive(assign[t])
                if not val:
                    break
            return val

        factors.append((own + inc, fn))
    for j in range(1, gamma.m + 1):
        inc = [index[e] for e in gamma.incoming(("b", j))]

        def fn(assign, inc=inc, j=j):
            val = Fs[j - 1]
            for t in inc:
                val = val.derive(assign[t])
                if not val:
                    break
            return val

        factors.append((inc, fn))
    return _assignment_sum(domains, factors, len(edges))
