"""Property suites shared by the command line and the acceptance tests.

Each suite takes a seed (plus d and N where they make sense) and returns a
JSON-ready report. Reports contain no timings, so identical inputs give
byte-identical output.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction
from typing import Callable

from . import perm as P
from .double_poisson import DoubleBracket, constant_bracket
from .freealg import NcPoly, TensorElem
from .graphs import (
    DGraph,
    brute_force_splittings,
    double_count_formula,
    enum_admissible,
    enum_double_fiber,
    enum_formality,
    enum_perm_tuples,
    perms_from_splitting,
    splitting_from_perms,
    validate_splitting,
)
from .oalgebra import OElem, ad, hat1, hat1_power, left_act, o_mul, pi, right_act
from .quantize import (
    GAMMA_LR,
    GAMMA_RL,
    b_graph,
    bracket_polyvector,
    default_weights,
    diff_op,
    dt_bracket,
    dt_commutator,
    star,
    u_graph,
)
from .repspace import (
    CommPoly,
    MatTensor,
    all_vars,
    comm_b_graph,
    comm_u_graph,
    epsilon_first,
    generator_bracket,
    pair,
    rep_partial_chain,
    rep_poisson,
    trace_tensor,
)

RNG_ALGORITHM = "python-random-mt19937-v3"

PROFILES = [(0, 0), (1, 0), (2, 0), (0, 1), (1, 1)]  # |l| <= 2, l_2 <= 1

KNOWN_DOUBLE_COUNTS = [
    (2, (1, 0), (1, 0), 100),
    (3, (1, 0), (1, 0), 17576),
    (3, (1, 0), (1, 1), 46656),
    (3, (1, 1), (2, 0), 110592),
]


class Property:
    """Counts checked cases and keeps the first counterexample."""

    def __init__(self, name: str):
        self.name = name
        self.checked = 0
        self.failed = 0
        self.counterexample = None

    def check(self, ok: bool, payload: Callable[[], dict] | None = None) -> bool:
        self.checked += 1
        if not ok:
            self.failed += 1
            if self.counterexample is None and payload is not None:
                self.counterexample = payload()
        return ok

    def to_json(self):
        return {
            "name": self.name,
            "passed": self.failed == 0 and self.checked > 0,
            "checked": self.checked,
            "failed": self.failed,
            "counterexample": self.counterexample,
        }


def _report(name: str, seed: int, params: dict, props: list, extra: dict | None = None) -> dict:
    rows = [p.to_json() for p in props]
    out = {
        "suite": name,
        "rng": RNG_ALGORITHM,
        "seed": seed,
        "params": params,
        "properties": rows,
        "passed": all(r["passed"] for r in rows),
    }
    if extra:
        out["data"] = extra
    return out


# ------------------------------------------------------------ sampling


def random_word(rng: random.Random, d: int, max_len: int, min_len: int = 0) -> tuple:
    return tuple(rng.randint(1, d) for _ in range(rng.randint(min_len, max_len)))


def random_oterm(rng, d: int, grade: int, max_len: int = 2, traces: int | None = None) -> tuple:
    words = [random_word(rng, d, max_len) for _ in range(grade)]
    n_tr = rng.randint(0, 1) if traces is None else traces
    tr = [random_word(rng, d, 2, 1) for _ in range(n_tr)]
    perm = list(range(1, grade + 1))
    rng.shuffle(perm)
    return words, tr, tuple(perm)


def random_oelem(rng, d: int, grade: int, n_terms: int = 2, max_len: int = 2, with_trace: bool = False) -> OElem:
    out = OElem()
    for t in range(n_terms):
        words, tr, perm = random_oterm(rng, d, grade, max_len, traces=1 if (with_trace and t == 0) else None)
        out = out + OElem.term(words, tr, perm, rng.randint(1, 3) * rng.choice((1, -1)))
    if not out:
        return random_oelem(rng, d, grade, n_terms, max_len, with_trace)
    return out


def random_tensor2(rng, d: int, n_terms: int, max_len: int = 1) -> TensorElem:
    items = []
    for _ in range(n_terms):
        items.append(((random_word(rng, d, max_len), random_word(rng, d, max_len)), rng.randint(-2, 2)))
    return TensorElem(2, items)


def random_skew_bracket(rng, d: int = 2) -> DoubleBracket:
    """Arbitrary skew table; the double Jacobi identity is not imposed."""
    table = {}
    for i in range(1, d + 1):
        for j in range(i, d + 1):
            t = random_tensor2(rng, d, rng.randint(1, 2))
            table[(i, j)] = t - t.flip() if i == j else t
    return DoubleBracket(d, table)


def index_tuples(rng, grade: int, N: int, limit: int) -> list:
    """All (i, j) slot assignments if there are at most ``limit``, else a seeded sample."""
    total = N ** (2 * grade)
    codes = range(total) if total <= limit else sorted(rng.sample(range(total), limit))
    out = []
    for code in codes:
        digits = []
        for _ in range(2 * grade):
            code, r = divmod(code, N)
            digits.append(r + 1)
        out.append([(digits[2 * s], digits[2 * s + 1]) for s in range(grade)])
    return out


def _grade_of(a: OElem) -> int:
    return a.grade() if a else 0


def _push_equal(lhs: OElem, rhs: OElem, grade: int, N: int, tuples) -> tuple[bool, list | None]:
    for X in tuples:
        if pair(lhs, X, N) != pair(rhs, X, N):
            return False, X
    return True, None


def _oj(a: OElem):
    return a.to_json()


# -------------------------------------------------------------- suites


def suite_counts(seed: int = 0, **_) -> dict:
    """Graph counts: |G_n| and the double graph totals."""
    props = []
    rows = []
    p = Property("admissible graph counts (n(n+1))^n, n <= 3")
    for n in range(4):
        got = sum(1 for _ in enum_admissible(n))
        want = (n * (n + 1)) ** n
        rows.append({"family": "G", "n": n, "count": got})
        p.check(got == want, lambda: {"n": n, "got": got, "want": want})
    props.append(p)
    q = Property("double graph totals")
    for n, l, r, want in KNOWN_DOUBLE_COUNTS:
        got = sum(1 for g in enum_admissible(n) for _ in enum_double_fiber(g, l, r))
        rows.append({"family": "DG", "n": n, "l": list(l), "r": list(r), "count": got})
        q.check(got == want == double_count_formula(n, l, r), lambda: {"n": n, "l": l, "r": r, "got": got, "want": want})
    props.append(q)
    f = Property("formality graph counts for G_{1,2} and G_{0,2}")
    f.check(sum(1 for _ in enum_formality(1, 2)) == 2)
    f.check(sum(1 for _ in enum_formality(0, 2)) == 1)
    props.append(f)
    return _report("counts", seed, {}, props, {"counts": rows})


def suite_splittings(seed: int = 0, **_) -> dict:
    """Splittings versus permutation tuples on every double graph over G_1 and G_2."""
    bij = Property("perms -> splitting -> perms is the identity")
    back = Property("splitting -> perms -> splitting is the identity")
    count = Property("splitting count equals prod |E(v)|!")
    valid = Property("generated splittings pass the independent validator")
    brute = Property("algorithmic splittings equal the brute-force set")
    n_graphs = n_split = 0
    for n in (1, 2):
        for l in PROFILES:
            for r in PROFILES:
                for gamma in enum_admissible(n):
                    for g in enum_double_fiber(gamma, l, r):
                        n_graphs += 1
                        made = set()
                        tuples = list(enum_perm_tuples(g))
                        for t in tuples:
                            S = splitting_from_perms(g, t)
                            made.add(S)
                            n_split += 1
                            errs = validate_splitting(g, S)
                            valid.check(not errs, lambda: {"graph": g.to_json(), "splitting": S.to_json(g), "errors": errs})
                            bij.check(perms_from_splitting(g, S) == t, lambda: {"graph": g.to_json()})
                        want = math.prod(math.factorial(len(g.incoming(v))) for v in g.vertices)
                        count.check(len(tuples) == want == len(made), lambda: {"graph": g.to_json(), "want": want})
                        bf = brute_force_splittings(g)
                        brute.check(bf == made, lambda: {"graph": g.to_json()})
                        for S in bf:
                            back.check(splitting_from_perms(g, perms_from_splitting(g, S)) == S, lambda: {"graph": g.to_json(), "splitting": S.to_json(g)})
    return _report(
        "splittings", seed, {"profiles": [list(p) for p in PROFILES]}, [bij, back, count, valid, brute],
        {"graphs": n_graphs, "splittings": n_split},
    )


def suite_cor2(seed: int = 0, d: int = 2, N: int = 2, n_graphs: int = 20, n_brackets: int = 5, limit: int = 8, **_) -> dict:
    """pair(b_graph(G, a, b), X (x) Y) against the commutative graph operator."""
    rng = random.Random(seed)
    brackets = [constant_bracket()] if d == 2 else []
    brackets += [random_skew_bracket(rng, d) for _ in range(n_brackets)]
    g2 = list(enum_admissible(2))
    graphs = [GAMMA_LR, GAMMA_RL] + [g2[i] for i in sorted(rng.sample(range(len(g2)), min(n_graphs, len(g2))))]
    sizes = sorted({1, N})
    prop = Property("b_graph pushes to the commutative graph operator")
    for B in brackets:
        for gamma in graphs:
            ga, gb = rng.randint(0, 2), rng.randint(0, 2)
            alpha = random_oelem(rng, d, ga, with_trace=True)
            beta = random_oelem(rng, d, gb, with_trace=True)
            value = b_graph(gamma, alpha, beta, B)
            for n in sizes:
                for X in index_tuples(rng, ga + gb, n, limit):
                    lhs = pair(value, X, n) if value else pair(OElem(), [], n)
                    rhs = comm_b_graph(gamma, pair(alpha, X[:ga], n), pair(beta, X[ga:], n), B, n)
                    prop.check(
                        lhs == rhs,
                        lambda: {
                            "graph": gamma.key(), "bracket": B.to_json(), "alpha": _oj(alpha), "beta": _oj(beta),
                            "N": n, "X": X, "lhs": lhs.to_json(), "rhs": rhs.to_json(),
                        },
                    )
    return _report(
        "cor2", seed, {"d": d, "N": sizes, "graphs": [g.key() for g in graphs], "brackets": len(brackets), "index_limit": limit},
        [prop],
    )


def suite_derivatives(seed: int = 0, d: int = 2, N: int = 2, **_) -> dict:
    """Chains of rep-space partials against pairings of diff_op."""
    rng = random.Random(seed)
    prop = Property("derivative chains equal diff_op pairings")
    for m in range(3):
        for ks in itertools.product(range(1, d + 1), repeat=m):
            for grade in (0, 1, 2):
                alpha = random_oelem(rng, d, grade, with_trace=True, max_len=3)
                D = diff_op(ks, alpha)
                for X in index_tuples(rng, m + grade, N, 256):
                    pq = X[:m]
                    lhs = rep_partial_chain([(ks[t], pq[t][0], pq[t][1]) for t in range(m)], pair(alpha, X[m:], N))
                    rhs = pair(D, [(q, p) for p, q in pq] + X[m:], N) if D else pair(OElem(), [], N)
                    prop.check(lhs == rhs, lambda: {"ks": list(ks), "alpha": _oj(alpha), "X": X})
    return _report("derivatives", seed, {"d": d, "N": N, "m": [0, 1, 2]}, [prop])


def suite_formality(seed: int = 0, N: int = 2, n_sampled: int = 5, **_) -> dict:
    """u_graph against Kontsevich's commutative U_Gamma for the bracket bivector."""
    rng = random.Random(seed)
    B = constant_bracket()
    d = B.d
    phi = bracket_polyvector(B)
    g12 = list(enum_formality(1, 2))
    g22 = list(enum_formality(2, 2, (2, 2)))
    graphs = g12 + [g22[i] for i in sorted(rng.sample(range(len(g22)), n_sampled))]
    prop = Property("formality component push equality")
    for gamma in graphs:
        grades = [rng.randint(1, 2) for _ in range(gamma.m)]
        alphas = [random_oelem(rng, d, g, with_trace=True) for g in grades]
        specs = [phi] * gamma.n
        U = u_graph(gamma, specs, alphas, d)
        for X in index_tuples(rng, sum(grades), N, 64):
            parts, pos = [], 0
            for g in grades:
                parts.append(X[pos : pos + g])
                pos += g
            Fs = [pair(a, x, N) for a, x in zip(alphas, parts)]
            lhs = pair(U, X, N) if U else pair(OElem(), [], N)
            rhs = comm_u_graph(gamma, specs, Fs, d, N)
            prop.check(lhs == rhs, lambda: {"graph": gamma.key(), "alphas": [_oj(a) for a in alphas], "X": X})
    return _report("formality", seed, {"N": N, "graphs": [g.key() for g in graphs]}, [prop])


_BASIS_WORDS = [(), (1,), (2, 1)]


def _basis_terms(n: int):
    for words in itertools.product(_BASIS_WORDS, repeat=n):
        for u in P.all_perms(n):
            yield OElem.term(words, [(1, 2)], u)


def suite_pi_unit(seed: int = 0, d: int = 2, N: int = 2, **_) -> dict:
    """pi and hat1: commutation, invariance and the two pairing identities."""
    rng = random.Random(seed)
    p8 = Property("hat1^r pi = pi Ad((12)^{r,1}) hat1^r, r <= 2")
    for r in range(3):
        for _ in range(10):
            n = rng.randint(1, 3)
            alpha = random_oelem(rng, d, n, with_trace=True)
            lhs = hat1_power(pi(alpha), r)
            twist = P.cross(P.block_swap(r, 1), P.identity(n - 1))
            rhs = pi(ad(twist, hat1_power(alpha, r)))
            p8.check(lhs == rhs, lambda: {"r": r, "alpha": _oj(alpha)})
    inv = [Property(f"pi/hat1 invariance identity {k}") for k in range(1, 5)]
    for n in range(1, 4):
        for w in P.all_perms(n - 1):
            iw = P.cross((1,), w)
            for a in _basis_terms(n - 1):
                inv[0].check(hat1(left_act(w, a)) == left_act(iw, hat1(a)), lambda: {"w": w, "alpha": _oj(a)})
                inv[1].check(hat1(right_act(a, w)) == right_act(hat1(a), iw), lambda: {"w": w, "alpha": _oj(a)})
            for a in _basis_terms(n):
                inv[2].check(right_act(pi(a), w) == pi(right_act(a, iw)), lambda: {"w": w, "alpha": _oj(a)})
                inv[3].check(left_act(w, pi(a)) == pi(left_act(iw, a)), lambda: {"w": w, "alpha": _oj(a)})
    p7 = Property("(pi(a) | X) = (a | tr (x) X)")
    pe = Property("(hat1(a) | X) = (a | eps_1(X))")
    tr = trace_tensor(N)
    for _ in range(10):
        n = rng.randint(1, 3)
        alpha = random_oelem(rng, d, n, with_trace=True)
        for X in index_tuples(rng, n - 1, N, 16):
            p7.check(pair(pi(alpha), X, N) == pair(alpha, tr.tensor(MatTensor.unit(X)), N), lambda: {"alpha": _oj(alpha), "X": X})
        n = rng.randint(0, 2)
        alpha = random_oelem(rng, d, n, with_trace=True)
        for X in index_tuples(rng, n + 1, N, 16):
            pe.check(pair(hat1(alpha), X, N) == pair(alpha, epsilon_first(X), N), lambda: {"alpha": _oj(alpha), "X": X})
    return _report("pi-unit", seed, {"d": d, "N": N}, [p8] + inv + [p7, pe])


def _sample_triple(rng, d):
    return [random_oelem(rng, d, rng.randint(0, 2), n_terms=rng.randint(1, 2), with_trace=rng.random() < 0.5) for _ in range(3)]


def suite_bracket_axioms(seed: int = 0, N: int = 2, n_triples: int = 50, limit: int = 6, **_) -> dict:
    """Skew symmetry, both Leibniz rules and Jacobi for dt_bracket with the constant bracket."""
    rng = random.Random(seed)
    B = constant_bracket()
    d = B.d

    def br(x, y):
        return dt_bracket(x, y, B)

    props = {k: Property(k) for k in ("skew", "leibniz-right", "leibniz-left", "jacobi")}
    for _ in range(n_triples):
        a, b, c = _sample_triple(rng, d)
        ga, gb, gc = _grade_of(a), _grade_of(b), _grade_of(c)
        payload = lambda: {"alpha": _oj(a), "beta": _oj(b), "gamma": _oj(c)}  # noqa: E731
        cases = {
            "skew": (br(b, a), -ad(P.block_swap(ga, gb), br(a, b)), ga + gb),
            "leibniz-right": (
                br(a, o_mul(b, c)),
                o_mul(br(a, b), c) + ad(P.block_swap(gb, ga, gc), o_mul(b, br(a, c))),
                ga + gb + gc,
            ),
            "leibniz-left": (
                br(o_mul(a, b), c),
                ad(P.blowup((1, 3, 2), [ga, gc, gb]), o_mul(br(a, c), b)) + o_mul(a, br(b, c)),
                ga + gb + gc,
            ),
            "jacobi": (
                br(a, br(b, c))
                + ad(P.blowup((2, 3, 1), [gb, gc, ga]), br(b, br(c, a)))
                + ad(P.blowup((3, 1, 2), [gc, ga, gb]), br(c, br(a, b))),
                OElem(),
                ga + gb + gc,
            ),
        }
        for name, (lhs, rhs, g) in cases.items():
            ok, X = _push_equal(lhs, rhs, g, N, index_tuples(rng, g, N, limit))
            props[name].check(ok and lhs == rhs, lambda: dict(payload(), X=X))
    jac = Property("commutative Jacobi of the induced bracket on generators")
    vs = all_vars(d, N)
    gens = {v: CommPoly.var(*v) for v in vs}
    for x, y, z in itertools.product(vs, repeat=3):
        X, Y, Z = gens[x], gens[y], gens[z]
        total = (
            rep_poisson(X, rep_poisson(Y, Z, B, N), B, N)
            + rep_poisson(Y, rep_poisson(Z, X, B, N), B, N)
            + rep_poisson(Z, rep_poisson(X, Y, B, N), B, N)
        )
        jac.check(not total, lambda: {"vars": [x, y, z]})
    return _report("bracket-axioms", seed, {"N": N, "triples": n_triples, "index_limit": limit}, list(props.values()) + [jac])


def first_order(alpha: OElem, beta: OElem, B: DoubleBracket, weights=None) -> OElem:
    """The ħ-coefficient B_1 of the star product."""
    return star(alpha, beta, 1, weights or default_weights(), B).coefficient(1)


def suite_star(seed: int = 0, N: int = 2, n_pairs: int = 50, n_calib: int = 20, n_triples: int = 10, limit: int = 8, **_) -> dict:
    """Star-product contract: order 0, calibrated commutator, Hochschild cocycle."""
    rng = random.Random(seed)
    B = constant_bracket()
    d = B.d
    W = default_weights()
    zero = Property("order-0 coefficient equals the product")
    for _ in range(n_pairs):
        a = random_oelem(rng, d, rng.randint(0, 2), with_trace=True)
        b = random_oelem(rng, d, rng.randint(0, 2), with_trace=True)
        s = star(a, b, 0, W, B)
        zero.check(s.coefficient(0) == o_mul(a, b), lambda: {"alpha": _oj(a), "beta": _oj(b)})
    calib = Property("hbar-coefficient of the twisted commutator equals dt_bracket")
    ratio = Property("unit-weight commutator is 4 dt_bracket (calibration constant 1/4)")
    unit = {k: (Fraction(1) if k != "G1:R,L" else Fraction(-1)) for k in W}
    for _ in range(n_calib):
        a = random_oelem(rng, d, rng.randint(0, 2), with_trace=True)
        b = random_oelem(rng, d, rng.randint(0, 2), with_trace=True)
        comm = dt_commutator(a, b, 1, W, B)[1]
        br = dt_bracket(a, b, B)
        calib.check(comm == br, lambda: {"alpha": _oj(a), "beta": _oj(b)})
        raw = dt_commutator(a, b, 1, unit, B)[1]
        ratio.check(raw == br.scale(4), lambda: {"alpha": _oj(a), "beta": _oj(b)})
    hoch = Property("Hochschild coboundary of the first-order term pushes to zero")
    for _ in range(n_triples):
        a, b, c = _sample_triple(rng, d)
        g = _grade_of(a) + _grade_of(b) + _grade_of(c)
        delta = (
            o_mul(a, first_order(b, c, B))
            - first_order(o_mul(a, b), c, B)
            + first_order(a, o_mul(b, c), B)
            - o_mul(first_order(a, b, B), c)
        )
        ok, X = _push_equal(delta, OElem(), g, N, index_tuples(rng, g, N, limit))
        hoch.check(ok, lambda: {"alpha": _oj(a), "beta": _oj(b), "gamma": _oj(c), "X": X})
    return _report("star", seed, {"N": N, "weights": {k: str(v) for k, v in sorted(W.items())}}, [zero, calib, ratio, hoch])


def suite_perm(seed: int = 0, **_) -> dict:
    """Blow-up identities, insertion and equivariance of the canonical projection."""
    l8a = Property("blowup(tau w, k) = blowup(tau, w.k) blowup(w, k)")
    l8b = Property("blowup(w, k)(s_1 x .. x s_n) = (s_w^-1(1) x ..) blowup(w, k)")
    for n in range(1, 4):
        for ks in itertools.product(range(3), repeat=n):
            for tau in P.all_perms(n):
                for w in P.all_perms(n):
                    winv = P.inverse(w)
                    kw = [ks[winv[i] - 1] for i in range(n)]
                    lhs = P.blowup(P.compose(tau, w), ks)
                    rhs = P.compose(P.blowup(tau, kw), P.blowup(w, ks))
                    l8a.check(lhs == rhs, lambda: {"tau": tau, "w": w, "k": ks})
            for w in P.all_perms(n):
                winv = P.inverse(w)
                for sig in itertools.product(*[list(P.all_perms(k)) for k in ks]):
                    lhs = P.compose(P.blowup(w, ks), P.cross_all(sig))
                    rhs = P.compose(P.cross_all([sig[winv[i] - 1] for i in range(n)]), P.blowup(w, ks))
                    l8b.check(lhs == rhs, lambda: {"w": w, "k": ks, "sigma": sig})
    l10 = Property("insert(w, l, tau, r) = Ad((12)^{m,l,r})(tau x w)")
    l10i = Property("insert(w, l, tau, r)^-1 = insert(w^-1, l, tau^-1, r)")
    for n in range(0, 4):
        for m in range(0, 4):
            for w in P.all_perms(n):
                for tau in P.all_perms(m):
                    for l in range(n + 1):
                        r = n - l
                        s = P.block_swap(m, l, r)
                        got = P.insert(w, l, tau, r)
                        l10.check(got == P.conjugate(s, P.cross(tau, w)), lambda: {"w": w, "tau": tau, "l": l})
                        l10i.check(P.inverse(got) == P.insert(P.inverse(w), l, P.inverse(tau), r), lambda: {"w": w, "tau": tau, "l": l})
    p9 = Property("kerov_project is two-sided equivariant, n = 3")
    for u in P.all_perms(4):
        pu = P.kerov_project(u)
        for w in P.all_perms(3):
            for w2 in P.all_perms(3):
                lhs = P.kerov_project(P.compose_all(P.cross((1,), w), u, P.cross((1,), w2)))
                p9.check(lhs == P.compose_all(w, pu, w2), lambda: {"u": u, "w": w, "w2": w2})
    return _report("perm", seed, {}, [l8a, l8b, l10, l10i, p9])


SUITES: dict[str, Callable[..., dict]] = {
    "counts": suite_counts,
    "splittings": suite_splittings,
    "cor2": suite_cor2,
    "derivatives": suite_derivatives,
    "formality": suite_formality,
    "pi-unit": suite_pi_unit,
    "bracket-axioms": suite_bracket_axioms,
    "star": suite_star,
    "perm": suite_perm,
}


def run_suite(name: str, seed: int = 0, **kw) -> dict:
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name](seed=seed, **kw)
