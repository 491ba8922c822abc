"""The double coordinate ring O(A) = sum_n A^{(x)n} (x) S(A_nat) (x) k[S(n)].

A basis term is ``(words, traces, perm)``: an n-tuple of words, a sorted tuple
of canonical cyclic words (a monomial in the symmetric algebra; the empty
cyclic word is a genuine variable) and a permutation of degree n.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from . import perm as P
from .freealg import (
    LinComb,
    NaturalElem,
    NcPoly,
    TensorElem,
    _accumulate,
    as_fraction,
    cyclic_canonical,
    fraction_str,
)

OTerm = tuple  # (words, traces, perm)


def make_term(words, traces, perm) -> OTerm:
    words = tuple(tuple(w) for w in words)
    traces = tuple(sorted(cyclic_canonical(f) for f in traces))
    perm = tuple(perm)
    if len(perm) != len(words):
        raise ValueError("perm degree must equal the number of words")
    return (words, traces, perm)


def _merge_traces(f: tuple, g: tuple) -> tuple:
    if not f:
        return g
    if not g:
        return f
    return tuple(sorted(f + g))


class OElem(LinComb):
    __slots__ = ()

    @classmethod
    def _normalize_key(cls, key):
        return make_term(*key)

    @classmethod
    def term(cls, words, traces=(), perm=None, coef=1) -> "OElem":
        if perm is None:
            perm = P.identity(len(words))
        return cls([(make_term(words, traces, perm), coef)])

    @classmethod
    def one(cls) -> "OElem":
        return cls._raw({((), (), ()): Fraction(1)})

    @classmethod
    def from_poly(cls, a: NcPoly) -> "OElem":
        """a (x) 1 (x) id_1."""
        return cls._raw({((w,), (), (1,)): c for w, c in a.terms.items()})

    @classmethod
    def trace(cls, f: NaturalElem | NcPoly) -> "OElem":
        """1 (x) f (x) id_0 for a single trace factor."""
        out: dict = {}
        _accumulate(out, ((((), (cyclic_canonical(w),), ()), c) for w, c in f.terms.items()))
        return cls._raw(out)

    def grades(self) -> set[int]:
        return {len(k[0]) for k in self.terms}

    def grade(self) -> int:
        g = self.grades()
        if len(g) > 1:
            raise ValueError(f"element is not homogeneous: grades {sorted(g)}")
        if not g:
            raise ValueError("zero element has no grade")
        return g.pop()

    def homogeneous_parts(self) -> dict[int, "OElem"]:
        out: dict[int, dict] = {}
        for k, c in self.terms.items():
            out.setdefault(len(k[0]), {})[k] = c
        return {n: OElem._raw(t) for n, t in out.items()}

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, OElem):
            return NotImplemented
        return o_mul(self, other)

    def to_json(self):
        terms = []
        for (words, traces, perm), c in sorted(self.terms.items()):
            terms.append(
                {
                    "coef": fraction_str(c),
                    "words": [list(w) for w in words],
                    "traces": [list(f) for f in traces],
                    "perm": list(perm),
                }
            )
        return {"terms": terms}

    @classmethod
    def from_json(cls, data) -> "OElem":
        if not isinstance(data, dict) or "terms" not in data:
            raise ValueError("OElem JSON must be an object with a 'terms' list")
        items = []
        for n, t in enumerate(data["terms"]):
            try:
                words = [tuple(int(x) for x in w) for w in t["words"]]
                traces = [tuple(int(x) for x in f) for f in t.get("traces", [])]
                perm = P.check_perm(t.get("perm", list(range(1, len(words) + 1))))
                items.append(((words, traces, perm), as_fraction(t.get("coef", "1"))))
            except (KeyError, TypeError, ValueError) as exc:
                raise ValueError(f"OElem term {n}: {exc}") from exc
        return cls(items)


def o_mul(alpha: OElem, beta: OElem) -> OElem:
    out: dict = {}
    for (w1, f1, u1), c1 in alpha.terms.items():
        for (w2, f2, u2), c2 in beta.terms.items():
            key = (w1 + w2, _merge_traces(f1, f2), P.cross(u1, u2))
            _accumulate(out, [(key, c1 * c2)])
    return OElem._raw(out)


def o_prod(elems: Iterable[OElem]) -> OElem:
    out = OElem.one()
    for e in elems:
        out = o_mul(out, e)
    return out


def left_act(sigma: P.Perm, alpha: OElem) -> OElem:
    n = len(sigma)
    inv = P.inverse(sigma)
    out: dict = {}
    for (words, f, u), c in alpha.terms.items():
        if len(words) != n:
            raise ValueError("grade mismatch in left action")
        key = (tuple(words[inv[p] - 1] for p in range(n)), f, P.compose(sigma, u))
        _accumulate(out, [(key, c)])
    return OElem._raw(out)


def right_act(alpha: OElem, tau: P.Perm) -> OElem:
    out: dict = {}
    for (words, f, u), c in alpha.terms.items():
        if len(words) != len(tau):
            raise ValueError("grade mismatch in right action")
        _accumulate(out, [((words, f, P.compose(u, tau)), c)])
    return OElem._raw(out)


def bimodule_act(sigma: P.Perm, alpha: OElem, tau: P.Perm) -> OElem:
    return right_act(left_act(sigma, alpha), tau)


def ad(sigma: P.Perm, alpha: OElem) -> OElem:
    """Ad(sigma) alpha = sigma . alpha . sigma^{-1}."""
    return bimodule_act(sigma, alpha, P.inverse(sigma))


def pi_term(words, traces, u):
    n = len(words)
    if n == 0:
        raise ValueError("pi is not defined on grade 0")
    first = words[0]
    k = u[0]
    if k == 1:
        new_words = words[1:]
        new_traces = _merge_traces((cyclic_canonical(first),), traces)
    else:
        rest = list(words[1:])
        rest[k - 2] = first + rest[k - 2]
        new_words = tuple(rest)
        new_traces = traces
    return (new_words, new_traces, P.kerov_project(u))


def pi(alpha: OElem) -> OElem:
    out: dict = {}
    _accumulate(out, ((pi_term(*k), c) for k, c in alpha.terms.items()))
    return OElem._raw(out)


def pi_power(alpha: OElem, r: int) -> OElem:
    for _ in range(r):
        alpha = pi(alpha)
    return alpha


def hat1(alpha: OElem) -> OElem:
    out: dict = {}
    for (words, f, u), c in alpha.terms.items():
        out[(((),) + words, f, P.cross((1,), u))] = c
    return OElem._raw(out)


def hat1_power(alpha: OElem, r: int) -> OElem:
    for _ in range(r):
        alpha = hat1(alpha)
    return alpha


def from_tensor(x: TensorElem, traces: Sequence[NaturalElem] = (), perm: P.Perm | None = None) -> OElem:
    """Expand x (x) prod(traces) (x) perm multilinearly."""
    if perm is None:
        perm = P.identity(x.arity)
    mono: dict = {(): Fraction(1)}
    for f in traces:
        nxt: dict = {}
        for m, c in mono.items():
            _accumulate(nxt, ((_merge_traces(m, (w,)), c * d) for w, d in f.terms.items()))
        mono = nxt
    out: dict = {}
    for key, c in x.terms.items():
        _accumulate(out, (((key, m, tuple(perm)), c * d) for m, d in mono.items()))
    return OElem._raw(out)


def word_tensor(words: Sequence[Sequence[int]]) -> TensorElem:
    return TensorElem.pure(words)
