"""Double brackets on the free algebra given by a table on generators."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .freealg import (
    NaturalElem,
    NcPoly,
    TensorElem,
    _accumulate,
    as_fraction,
    fraction_str,
)


class DoubleBracket:
    """Generator table {{x_i, x_j}} for i <= j, closed by {{x_j,x_i}} = -{{x_i,x_j}}^o."""

    def __init__(self, d: int, table: Mapping[tuple[int, int], TensorElem]):
        if d < 1:
            raise ValueError("need at least one generator")
        self.d = d
        full: dict[tuple[int, int], TensorElem] = {}
        for (i, j), v in table.items():
            if not (1 <= i <= d and 1 <= j <= d):
                raise ValueError(f"generator pair ({i},{j}) out of range for d={d}")
            if v.arity != 2:
                raise ValueError(f"entry ({i},{j}) must be a 2-tensor")
            if i > j:
                i, j, v = j, i, -v.flip()
            if (i, j) in full and full[(i, j)] != v:
                raise ValueError(f"conflicting entries for ({i},{j})")
            full[(i, j)] = v
        for i in range(1, d + 1):
            v = full.get((i, i))
            if v is not None and v != -v.flip():
                raise ValueError(f"diagonal entry ({i},{i}) violates v = -v^o")
        self._table = {}
        for i in range(1, d + 1):
            for j in range(1, d + 1):
                if i <= j:
                    v = full.get((i, j), TensorElem.zero(2))
                else:
                    v = -full.get((j, i), TensorElem.zero(2)).flip()
                self._table[(i, j)] = v

    def gen(self, i: int, j: int) -> TensorElem:
        return self._table[(i, j)]

    def entries(self):
        return {(i, j): v for (i, j), v in self._table.items() if i <= j}

    def __repr__(self):
        return f"DoubleBracket(d={self.d}, {self.entries()})"

    def to_json(self):
        rows = []
        for (i, j), v in sorted(self.entries().items()):
            if v:
                value = [[fraction_str(c), list(a), list(b)] for (a, b), c in sorted(v.terms.items())]
                rows.append({"i": i, "j": j, "value": value})
        return {"d": self.d, "entries": rows}

    @classmethod
    def from_json(cls, data) -> "DoubleBracket":
        if not isinstance(data, dict) or "d" not in data:
            raise ValueError("bracket JSON needs keys 'd' and 'entries'")
        table = {}
        for n, e in enumerate(data.get("entries", [])):
            try:
                i, j = int(e["i"]), int(e["j"])
                items = []
                for t in e["value"]:
                    if len(t) == 3:
                        a, b = t[1], t[2]
                    elif len(t) == 2 and len(t[1]) == 2:
                        a, b = t[1]
                    else:
                        raise ValueError("value term must be [coef, word, word]")
                    items.append(((tuple(a), tuple(b)), as_fraction(t[0])))
                table[(i, j)] = TensorElem(2, items)
            except (KeyError, TypeError, ValueError) as exc:
                raise ValueError(f"bracket entry {n}: {exc}") from exc
        return cls(int(data["d"]), table)


def bracket_from_table(d: int, entries: Mapping[tuple[int, int], TensorElem]) -> DoubleBracket:
    return DoubleBracket(d, entries)


def zero_bracket(d: int = 2) -> DoubleBracket:
    return DoubleBracket(d, {})


def constant_bracket() -> DoubleBracket:
    """d = 2 with {{x_1, x_2}} = 1 (x) 1."""
    return DoubleBracket(2, {(1, 2): TensorElem.pure([(), ()])})


def _bracket_words(B: DoubleBracket, u: tuple, w: tuple, out: dict, coef: Fraction) -> None:
    # {{u,w}} = sum_{s,t} w[:t] . (u[:s] * {{x_{u_s}, x_{w_t}}} * u[s+1:]) . w[t+1:]
    for s, us in enumerate(u):
        for t, wt in enumerate(w):
            v = B.gen(us, wt)
            if not v:
                continue
            pre_w, post_w = w[:t], w[t + 1:]
            pre_u, post_u = u[:s], u[s + 1:]
            _accumulate(
                out,
                (
                    ((pre_w + a + post_u, pre_u + b + post_w), coef * c)
                    for (a, b), c in v.terms.items()
                ),
            )


def bracket_eval(B: DoubleBracket, a: NcPoly, b: NcPoly) -> TensorElem:
    out: dict = {}
    for u, c in a.terms.items():
        for w, d in b.terms.items():
            _bracket_words(B, u, w, out, c * d)
    return TensorElem.raw(2, out)


def bracket_left(B: DoubleBracket, a: NcPoly, x: TensorElem) -> TensorElem:
    """{{a, x}}_L = {{a, x'}} (x) x'' (x) ... for a tensor x of any arity >= 1."""
    out: dict = {}
    for key, c in x.terms.items():
        br = bracket_eval(B, a, NcPoly._raw({key[0]: Fraction(1)}))
        rest = key[1:]
        _accumulate(out, ((k + rest, c * d) for k, d in br.terms.items()))
    return TensorElem.raw(x.arity + 1, out)


CYCLE3 = (2, 3, 1)  # (123): x'(x)x''(x)x''' -> x'''(x)x'(x)x''
CYCLE3_SQ = (3, 1, 2)


def jacobi_defect_polys(B: DoubleBracket, a: NcPoly, b: NcPoly, c: NcPoly) -> TensorElem:
    t1 = bracket_left(B, a, bracket_eval(B, b, c))
    t2 = bracket_left(B, b, bracket_eval(B, c, a)).permute(CYCLE3)
    t3 = bracket_left(B, c, bracket_eval(B, a, b)).permute(CYCLE3_SQ)
    return t1 + t2 + t3


def jacobi_defect(B: DoubleBracket, i: int, j: int, k: int) -> TensorElem:
    return jacobi_defect_polys(B, NcPoly.gen(i), NcPoly.gen(j), NcPoly.gen(k))


def is_double_poisson(B: DoubleBracket) -> bool:
    r = range(1, B.d + 1)
    return all(not jacobi_defect(B, i, j, k) for i in r for j in r for k in r)


def natural_bracket(B: DoubleBracket, f: NaturalElem, a: NcPoly) -> NcPoly:
    """{f, a} = m({{f*, a}}), using the canonical representative as lift."""
    return bracket_eval(B, f.lift(), a).multiply_out()
