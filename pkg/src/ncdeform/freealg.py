"""The free algebra k<x_1..x_d> over the rationals, its cyclic quotient and tensor powers.

Words are tuples of generator indices; the empty tuple is the unit.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .perm import Perm, inverse

Word = tuple[int, ...]
CyclicWord = tuple[int, ...]

Scalar = Fraction | int


def as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, str):
        return Fraction(c)
    return Fraction(c)


def fraction_str(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


class LinComb:
    """A finite linear combination of hashable basis keys with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | Iterable | None = None):
        out: dict = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for key, c in items:
                c = as_fraction(c)
                if c:
                    key = self._normalize_key(key)
                    v = out.get(key, 0) + c
                    if v:
                        out[key] = v
                    else:
                        out.pop(key, None)
        self.terms = out

    @classmethod
    def _normalize_key(cls, key):
        return key

    @classmethod
    def _raw(cls, terms: dict):
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    def _like(self, terms: dict):
        return type(self)._raw(terms)

    def items(self):
        return self.terms.items()

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if type(other) is not type(self):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        out = dict(self.terms)
        _accumulate(out, other.terms.items())
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        return self._like({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "LinComb":
        c = as_fraction(c)
        if not c:
            return self._like({})
        return self._like({k: v * c for k, v in self.terms.items()})

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def map_keys(self, fn: Callable) -> "LinComb":
        out: dict = {}
        _accumulate(out, ((fn(k), c) for k, c in self.terms.items()))
        return self._like(out)

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda kv: repr(kv[0]))

    def __repr__(self):
        if not self.terms:
            return f"{type(self).__name__}(0)"
        parts = [f"{c}*{k}" for k, c in self.sorted_items()]
        return f"{type(self).__name__}({' + '.join(parts)})"


def _accumulate(out: dict, items) -> None:
    for k, c in items:
        v = out.get(k, 0) + c
        if v:
            out[k] = v
        else:
            out.pop(k, None)


# ---------------------------------------------------------------- NcPoly


class NcPoly(LinComb):
    """Element of the free algebra: Word -> coefficient."""

    __slots__ = ()

    @classmethod
    def _normalize_key(cls, key):
        return tuple(key)

    @classmethod
    def word(cls, w: Sequence[int], c=1) -> "NcPoly":
        return cls({tuple(w): c})

    @classmethod
    def one(cls) -> "NcPoly":
        return cls({(): 1})

    @classmethod
    def gen(cls, k: int) -> "NcPoly":
        return cls({(k,): 1})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, NcPoly):
            return NotImplemented
        return nc_mul(self, other)

    def max_letter(self) -> int:
        return max((max(w) for w in self.terms if w), default=0)

    def to_json(self):
        return [[fraction_str(c), list(w)] for w, c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, data) -> "NcPoly":
        if not isinstance(data, list):
            raise ValueError("NcPoly JSON must be a list of [coef, letters]")
        items = []
        for n, entry in enumerate(data):
            if not (isinstance(entry, list) and len(entry) == 2 and isinstance(entry[1], list)):
                raise ValueError(f"NcPoly term {n}: expected [coef, letters]")
            items.append((tuple(int(x) for x in entry[1]), as_fraction(entry[0])))
        return cls(items)


def nc_mul(p: NcPoly, q: NcPoly) -> NcPoly:
    out: dict = {}
    for w1, c1 in p.terms.items():
        _accumulate(out, ((w1 + w2, c1 * c2) for w2, c2 in q.terms.items()))
    return NcPoly._raw(out)


def cyclic_canonical(w: Sequence[int]) -> CyclicWord:
    """Lexicographically minimal rotation of w."""
    w = tuple(w)
    if not w:
        return ()
    return min(w[i:] + w[:i] for i in range(len(w)))


class NaturalElem(LinComb):
    """Element of the cyclic quotient A/[A,A]: CyclicWord -> coefficient."""

    __slots__ = ()

    @classmethod
    def _normalize_key(cls, key):
        return cyclic_canonical(key)

    def lift(self) -> NcPoly:
        return NcPoly._raw(dict(self.terms))


def natural_project(p: NcPoly) -> NaturalElem:
    out: dict = {}
    _accumulate(out, ((cyclic_canonical(w), c) for w, c in p.terms.items()))
    return NaturalElem._raw(out)


# ---------------------------------------------------------- TensorElem


class TensorElem(LinComb):
    """Element of A^{(x)m}: tuples of m words -> coefficient."""

    __slots__ = ("arity",)

    def __init__(self, arity: int, terms=None):
        super().__init__(terms)
        self.arity = arity
        for key in self.terms:
            if len(key) != arity:
                raise ValueError(f"tensor term {key} does not have arity {arity}")

    @classmethod
    def _normalize_key(cls, key):
        return tuple(tuple(w) for w in key)

    def _like(self, terms):
        obj = TensorElem.__new__(TensorElem)
        obj.terms = terms
        obj.arity = self.arity
        return obj

    @classmethod
    def raw(cls, arity: int, terms: dict) -> "TensorElem":
        obj = cls.__new__(cls)
        obj.terms = terms
        obj.arity = arity
        return obj

    @classmethod
    def zero(cls, arity: int) -> "TensorElem":
        return cls.raw(arity, {})

    @classmethod
    def from_poly(cls, p: NcPoly) -> "TensorElem":
        return cls.raw(1, {(w,): c for w, c in p.terms.items()})

    @classmethod
    def pure(cls, words: Sequence[Sequence[int]], c=1) -> "TensorElem":
        return cls(len(words), {tuple(tuple(w) for w in words): c})

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, TensorElem):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    __hash__ = LinComb.__hash__

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        if other.arity != self.arity:
            raise ValueError("arity mismatch")
        return LinComb.__add__(self, other)

    __radd__ = __add__

    def to_poly(self) -> NcPoly:
        if self.arity != 1:
            raise ValueError("only arity-1 tensors are polynomials")
        return NcPoly._raw({k[0]: c for k, c in self.terms.items()})

    def flip(self) -> "TensorElem":
        if self.arity != 2:
            raise ValueError("flip needs arity 2")
        return self._like({(b, a): c for (a, b), c in self.terms.items()})

    def permute(self, sigma: Perm) -> "TensorElem":
        """sigma.(a_1 (x) .. (x) a_m): component i moves to position sigma(i)."""
        if len(sigma) != self.arity:
            raise ValueError("degree mismatch")
        inv = inverse(sigma)
        return self._like(
            {tuple(key[inv[p] - 1] for p in range(self.arity)): c for key, c in self.terms.items()}
        )

    def outer(self, a: NcPoly | None = None, b: NcPoly | None = None) -> "TensorElem":
        """a . x . b: a multiplies the first slot on the left, b the last slot on the right."""
        x = self
        if a is not None:
            x = x.mul_slot(0, a, left=True)
        if b is not None:
            x = x.mul_slot(self.arity - 1, b, left=False)
        return x

    def inner(self, a: NcPoly | None = None, b: NcPoly | None = None) -> "TensorElem":
        """a * x * b = x'b (x) a x'' for arity 2."""
        if self.arity != 2:
            raise ValueError("inner action needs arity 2")
        x = self
        if b is not None:
            x = x.mul_slot(0, b, left=False)
        if a is not None:
            x = x.mul_slot(1, a, left=True)
        return x

    def mul_slot(self, slot: int, p: NcPoly, left: bool) -> "TensorElem":
        out: dict = {}
        for key, c in self.terms.items():
            for w, d in p.terms.items():
                new = list(key)
                new[slot] = w + key[slot] if left else key[slot] + w
                _accumulate(out, [(tuple(new), c * d)])
        return self._like(out)

    def tensor(self, other: "TensorElem") -> "TensorElem":
        out: dict = {}
        for k1, c1 in self.terms.items():
            _accumulate(out, ((k1 + k2, c1 * c2) for k2, c2 in other.terms.items()))
        return TensorElem.raw(self.arity + other.arity, out)

    def apply_slot(self, slot: int, op: Callable[[Word], "TensorElem"]) -> "TensorElem":
        """Apply a linear map A -> A^{(x)r} to one slot (0-based), expanding it in place."""
        out: dict = {}
        new_arity = None
        cache: dict = {}
        for key, c in self.terms.items():
            w = key[slot]
            img = cache.get(w)
            if img is None:
                img = cache[w] = op(w)
            new_arity = self.arity - 1 + img.arity
            pre, post = key[:slot], key[slot + 1:]
            _accumulate(out, ((pre + k + post, c * d) for k, d in img.terms.items()))
        if new_arity is None:
            probe = op(())
            new_arity = self.arity - 1 + probe.arity
        return TensorElem.raw(new_arity, out)

    def multiply_out(self) -> NcPoly:
        """The multiplication map a_1 (x) .. (x) a_m -> a_1...a_m."""
        out: dict = {}
        _accumulate(out, ((sum(key, ()), c) for key, c in self.terms.items()))
        return NcPoly._raw(out)

    def to_json(self):
        return [[fraction_str(c), [list(w) for w in key]] for key, c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, data, arity: int | None = None) -> "TensorElem":
        if not isinstance(data, list):
            raise ValueError("TensorElem JSON must be a list of [coef, [words]]")
        items = []
        for n, entry in enumerate(data):
            if not (isinstance(entry, list) and len(entry) == 2 and isinstance(entry[1], list)):
                raise ValueError(f"tensor term {n}: expected [coef, [words]]")
            items.append((tuple(tuple(int(x) for x in w) for w in entry[1]), as_fraction(entry[0])))
        if arity is None:
            arity = len(items[0][0]) if items else 2
        return cls(arity, items)


# ------------------------------------------------------- derivations


def derive_word(k: int, w: Word) -> TensorElem:
    """The double derivation d_k on a single word."""
    out: dict = {}
    for t, letter in enumerate(w):
        if letter == k:
            key = (w[:t], w[t + 1:])
            out[key] = out.get(key, 0) + 1
    return TensorElem.raw(2, {k_: Fraction(c) for k_, c in out.items()})


def double_derive(k: int, p: NcPoly) -> TensorElem:
    return TensorElem.from_poly(p).apply_slot(0, lambda w: derive_word(k, w))


def apply_partial(k: int, slot: int, x: TensorElem) -> TensorElem:
    """d_k acting on the given (1-based) slot."""
    return x.apply_slot(slot - 1, lambda w: derive_word(k, w))


def partial_chain(ks: Sequence[int], p: NcPoly) -> TensorElem:
    """d_{k_1}^{(1)} ... d_{k_m}^{(1)}(p); the last index acts first."""
    x = TensorElem.from_poly(p)
    for k in reversed(ks):
        x = apply_partial(k, 1, x)
    return x


def tuple_from_word(w: Perm) -> tuple[int, ...]:
    """i(w): entry s is the position of s in w after deleting all letters below s."""
    out = []
    for s in range(1, len(w) + 1):
        rest = [x for x in w if x >= s]
        out.append(rest.index(s) + 1)
    return tuple(out)


def partial_word(w: Perm, ks: Sequence[int], p: NcPoly) -> TensorElem:
    """d_{k_1}^{(i_1)} ... d_{k_m}^{(i_m)}(p) with (i_1..i_m) = i(w)."""
    if len(w) != len(ks):
        raise ValueError("word and index tuple lengths differ")
    slots = tuple_from_word(w)
    x = TensorElem.from_poly(p)
    for k, j in reversed(list(zip(ks, slots))):
        x = apply_partial(k, j, x)
    return x


def words_up_to(d: int, length: int) -> Iterator[Word]:
    """All words in d letters of length <= length, shortest first."""
    level: list[Word] = [()]
    for _ in range(length + 1):
        yield from level
        level = [w + (k,) for w in level for k in range(1, d + 1)]
