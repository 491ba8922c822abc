"""Admissible graphs, double admissible graphs and their principal splittings.

Vertex labels of a double graph::

    ("N", k, c)   numbered vertex k.c (c = 1, 2)
    ("L", t) ("R", s)   left and right vertices
    ("Ol", p) ("Or", q) left and right loop vertices

Edge labels::

    ("e", k, c)   proper edge starting at k.c
    ("*", k, c)   reflected edge of ("e", k, c)
    ("o", "l", p) ("o", "r", q)   loops
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Mapping, Sequence

from . import perm as P

LEFT, RIGHT = "L", "R"

Vertex = tuple
Edge = tuple


# ------------------------------------------------------------ G_n


@dataclass(frozen=True)
class AdmGraph:
    """Kontsevich admissible graph: targets[k-1] = (target of e_k^1, target of e_k^2)."""

    n: int
    targets: tuple

    def key(self) -> str:
        return graph_key(self)

    def incoming(self, v) -> list[tuple[int, int]]:
        """Edges (k, c) ending at v, ordered by source."""
        return [(k, c) for k in range(1, self.n + 1) for c in (1, 2) if self.targets[k - 1][c - 1] == v]

    def to_json(self):
        return {"n": self.n, "targets": [[str(a), str(b)] for a, b in self.targets]}

    @classmethod
    def from_json(cls, data) -> "AdmGraph":
        n = int(data["n"])
        tg = []
        for k, pair in enumerate(data["targets"], start=1):
            tg.append(tuple(_adm_target(x, k, n) for x in pair))
        g = cls(n, tuple(tg))
        check_admissible(g)
        return g


def _adm_target(x, k, n):
    if x in (LEFT, RIGHT):
        return x
    try:
        v = int(x)
    except (TypeError, ValueError):
        raise ValueError(f"vertex {k}: bad target {x!r}") from None
    if not 1 <= v <= n:
        raise ValueError(f"vertex {k}: target {v} out of range")
    return v


def check_admissible(g: AdmGraph) -> None:
    if len(g.targets) != g.n:
        raise ValueError("need one target pair per vertex")
    for k, (a, b) in enumerate(g.targets, start=1):
        if a == k or b == k:
            raise ValueError(f"vertex {k} has a loop")
        if a == b:
            raise ValueError(f"edges of vertex {k} share a target")


def graph_key(g: AdmGraph) -> str:
    """Canonical encoding used as the weight-table key, e.g. 'G1:L,R'."""
    return f"G{g.n}:" + ";".join(f"{a},{b}" for a, b in g.targets)


def _adm_choices(n: int, k: int) -> list[tuple]:
    pool = [j for j in range(1, n + 1) if j != k] + [LEFT, RIGHT]
    return [(a, b) for a in pool for b in pool if a != b]


def enum_admissible(n: int) -> Iterator[AdmGraph]:
    if n < 0:
        raise ValueError("n must be nonnegative")
    per_vertex = [_adm_choices(n, k) for k in range(1, n + 1)]
    for combo in itertools.product(*per_vertex):
        yield AdmGraph(n, tuple(combo))


# ---------------------------------------------------------- G_{n,m}


@dataclass(frozen=True)
class FormalityGraph:
    """stars[i-1] is the ordered target list of first-type vertex i.

    A target is ("a", i) for a first-type vertex or ("b", j) for a second-type one.
    """

    n: int
    m: int
    stars: tuple

    def edges(self) -> list[tuple[int, int]]:
        """(source, position in star), ordered by source then position."""
        return [(i, p) for i in range(1, self.n + 1) for p in range(1, len(self.stars[i - 1]) + 1)]

    def target(self, edge: tuple[int, int]):
        i, p = edge
        return self.stars[i - 1][p - 1]

    def incoming(self, v) -> list[tuple[int, int]]:
        return [e for e in self.edges() if self.target(e) == v]

    def key(self) -> str:
        def enc(t):
            return f"{t[1]}" if t[0] == "a" else f"b{t[1]}"

        return f"F{self.n},{self.m}:" + ";".join(",".join(enc(t) for t in s) for s in self.stars)

    def to_json(self):
        return {
            "n": self.n,
            "m": self.m,
            "stars": [[f"{t[1]}" if t[0] == "a" else f"b{t[1]}" for t in s] for s in self.stars],
        }


def enum_formality(n: int, m: int, star_sizes: Sequence[int] | None = None) -> Iterator[FormalityGraph]:
    total = 2 * n + m - 2
    if total < 0:
        raise ValueError("need 2n + m - 2 >= 0")
    if star_sizes is not None:
        size_options = [tuple(star_sizes)]
        if len(star_sizes) != n or sum(star_sizes) != total:
            raise ValueError("star sizes must be n numbers summing to 2n+m-2")
    else:
        size_options = [c for c in itertools.product(range(total + 1), repeat=n) if sum(c) == total]
    for sizes in size_options:
        per_vertex = []
        for i in range(1, n + 1):
            pool = [("a", j) for j in range(1, n + 1) if j != i] + [("b", j) for j in range(1, m + 1)]
            per_vertex.append(list(itertools.permutations(pool, sizes[i - 1])))
        for combo in itertools.product(*per_vertex):
            yield FormalityGraph(n, m, tuple(combo))


# ------------------------------------------------------- double graphs


def vertex_sort_key(v: Vertex):
    order = {"N": 0, "L": 1, "R": 2, "Ol": 3, "Or": 4}
    return (order[v[0]],) + tuple(v[1:])


def vertex_label(v: Vertex) -> str:
    if v[0] == "N":
        return f"{v[1]}.{v[2]}"
    return f"{v[0]}_{v[1]}"


def parse_vertex(s: str) -> Vertex:
    s = str(s)
    if "." in s:
        k, c = s.split(".")
        return ("N", int(k), int(c))
    kind, _, idx = s.partition("_")
    if kind not in ("L", "R", "Ol", "Or") or not idx:
        raise ValueError(f"bad vertex label {s!r}")
    return (kind, int(idx))


def edge_label(e: Edge) -> str:
    if e[0] == "e":
        return f"e_{e[1]}^{e[2]}"
    if e[0] == "*":
        return f"*e_{e[1]}^{e[2]}"
    return f"o^{e[1]}_{e[2]}"


def parse_edge(s: str) -> Edge:
    s = str(s)
    if s.startswith("o^"):
        side, idx = s[2:].split("_")
        return ("o", side, int(idx))
    kind = "*" if s.startswith("*") else "e"
    body = s.lstrip("*")[2:]
    k, c = body.split("^")
    return (kind, int(k), int(c))


def loop_vertex(e: Edge) -> Vertex:
    return ("Ol" if e[1] == "l" else "Or", e[2])


def _is_left_side(v: Vertex) -> bool:
    return v[0] in ("L", "Ol")


def _is_right_side(v: Vertex) -> bool:
    return v[0] in ("R", "Or")


def _is_boundary(v: Vertex) -> bool:
    return v[0] != "N"


def _is_path_vertex(v: Vertex) -> bool:
    return v[0] in ("L", "R")


@dataclass(frozen=True)
class DGraph:
    n: int
    l: tuple
    r: tuple
    targets: tuple  # targets[k-1] = (target of e_k^1, target of e_k^2)

    # vertex and edge sets

    @cached_property
    def vertices(self) -> tuple:
        vs = [("N", k, c) for k in range(1, self.n + 1) for c in (1, 2)]
        vs += [("L", t) for t in range(1, self.l[0] + 1)]
        vs += [("R", s) for s in range(1, self.r[0] + 1)]
        vs += [("Ol", p) for p in range(1, self.l[1] + 1)]
        vs += [("Or", q) for q in range(1, self.r[1] + 1)]
        return tuple(vs)

    @cached_property
    def boundary_slots(self) -> tuple:
        """Path start vertices: L_1..L_l1 then R_1..R_r1."""
        return tuple([("L", t) for t in range(1, self.l[0] + 1)] + [("R", s) for s in range(1, self.r[0] + 1)])

    @cached_property
    def proper_edges(self) -> tuple:
        return tuple(("e", k, c) for k in range(1, self.n + 1) for c in (1, 2))

    @cached_property
    def loops(self) -> tuple:
        return tuple([("o", "l", p) for p in range(1, self.l[1] + 1)] + [("o", "r", q) for q in range(1, self.r[1] + 1)])

    @cached_property
    def edges(self) -> tuple:
        return self.proper_edges + tuple(("*", k, c) for k in range(1, self.n + 1) for c in (1, 2)) + self.loops

    def proper_target(self, k: int, c: int) -> Vertex:
        return self.targets[k - 1][c - 1]

    def tail(self, e: Edge) -> Vertex:
        if e[0] == "e":
            return ("N", e[1], e[2])
        if e[0] == "*":
            return self.proper_target(e[1], e[2])
        return loop_vertex(e)

    def head(self, e: Edge) -> Vertex:
        if e[0] == "e":
            return self.proper_target(e[1], e[2])
        if e[0] == "*":
            return ("N", e[1], 3 - e[2])
        return loop_vertex(e)

    @cached_property
    def _incoming_map(self) -> dict:
        out: dict = {v: [] for v in self.vertices}
        for e in self.proper_edges:
            out[self.head(e)].append(e)
        return {v: tuple(es) for v, es in out.items()}

    def incoming(self, v: Vertex) -> tuple:
        """E(v): proper edges ending at v, ordered by source block."""
        return self._incoming_map[v]

    def reflected_out(self, v: Vertex) -> tuple:
        return tuple(("*",) + e[1:] for e in self.incoming(v))

    def own_proper(self, v: Vertex) -> Edge:
        return ("e", v[1], v[2])

    def reflected_into(self, v: Vertex) -> Edge:
        """The unique reflected edge ending at numbered vertex v."""
        return ("*", v[1], 3 - v[2])

    def loop_of(self, v: Vertex) -> Edge:
        return ("o", "l" if v[0] == "Ol" else "r", v[1])

    def split_count(self) -> int:
        return math.prod(math.factorial(len(self.incoming(v))) for v in self.vertices)

    def to_json(self):
        return {
            "n": self.n,
            "l": list(self.l),
            "r": list(self.r),
            "targets": [[vertex_label(a), vertex_label(b)] for a, b in self.targets],
        }

    @classmethod
    def from_json(cls, data) -> "DGraph":
        if not isinstance(data, dict):
            raise ValueError("graph JSON must be an object")
        for key in ("n", "l", "r", "targets"):
            if key not in data:
                raise ValueError(f"graph JSON: missing key '{key}'")
        n = int(data["n"])
        l, r = tuple(int(x) for x in data["l"]), tuple(int(x) for x in data["r"])
        if len(l) != 2 or len(r) != 2:
            raise ValueError("graph JSON: l and r must be pairs")
        if len(data["targets"]) != n:
            raise ValueError(f"graph JSON: expected {n} target pairs")
        tg = []
        for k, pair in enumerate(data["targets"], start=1):
            try:
                a, b = (parse_vertex(x) for x in pair)
            except ValueError as exc:
                raise ValueError(f"graph JSON: targets[{k - 1}]: {exc}") from None
            tg.append((a, b))
        g = cls(n, l, r, tuple(tg))
        problems = check_dgraph(g)
        if problems:
            raise ValueError("graph JSON: " + "; ".join(problems))
        return g


def block_options(n: int, k: int, l: Sequence[int], r: Sequence[int]) -> list[tuple[Vertex, Vertex]]:
    """All allowed (target of e_k^1, target of e_k^2) pairs, in canonical order."""
    numbered = [("N", j, c) for j in range(1, n + 1) if j != k for c in (1, 2)]
    lefts = [("L", t) for t in range(1, l[0] + 1)] + [("Ol", p) for p in range(1, l[1] + 1)]
    rights = [("R", s) for s in range(1, r[0] + 1)] + [("Or", q) for q in range(1, r[1] + 1)]
    pool = sorted(numbered + lefts + rights, key=vertex_sort_key)
    out = []
    for a in pool:
        for b in pool:
            if _allowed_pair(a, b):
                out.append((a, b))
    return out


def _allowed_pair(a: Vertex, b: Vertex) -> bool:
    an, bn = a[0] == "N", b[0] == "N"
    if an and bn:
        return a[1] != b[1]
    if an != bn:
        return True
    return (_is_left_side(a) and _is_right_side(b)) or (_is_right_side(a) and _is_left_side(b))


def check_dgraph(g: DGraph) -> list[str]:
    problems = []
    vs = set(g.vertices)
    for k, pair in enumerate(g.targets, start=1):
        for v in pair:
            if v not in vs:
                problems.append(f"block {k}: unknown vertex {vertex_label(v)}")
        if any(v[0] == "N" and v[1] == k for v in pair):
            problems.append(f"block {k}: edge ends in its own block")
        elif all(v in vs for v in pair) and not _allowed_pair(*pair):
            problems.append(f"block {k}: target pair not allowed")
    return problems


def merge_vertex(v: Vertex):
    if v[0] == "N":
        return v[1]
    return LEFT if _is_left_side(v) else RIGHT


def merge(g: DGraph) -> AdmGraph:
    return AdmGraph(g.n, tuple((merge_vertex(a), merge_vertex(b)) for a, b in g.targets))


def enum_double_fiber(gamma: AdmGraph, l: Sequence[int], r: Sequence[int]) -> Iterator[DGraph]:
    l, r = tuple(l), tuple(r)
    n = gamma.n
    per_block = []
    for k in range(1, n + 1):
        want = gamma.targets[k - 1]
        per_block.append([p for p in block_options(n, k, l, r) if (merge_vertex(p[0]), merge_vertex(p[1])) == want])
    for combo in itertools.product(*per_block):
        yield DGraph(n, l, r, tuple(combo))


def enum_double(n: int, l: Sequence[int], r: Sequence[int]) -> Iterator[DGraph]:
    """The whole set of double graphs with n blocks, fiber by fiber over G_n."""
    for gamma in enum_admissible(n):
        yield from enum_double_fiber(gamma, l, r)


def double_count_formula(n: int, l: Sequence[int], r: Sequence[int]) -> int:
    if n == 0:
        return 1
    L, R = sum(l), sum(r)
    v = R * L + 2 * (n - 1) * (R + L + n - 2)
    return (2 * v) ** n


# ------------------------------------------------------------ splittings


def _edge_order(e: Edge):
    return ({"e": 0, "*": 1, "o": 2}[e[0]],) + tuple(e[1:])


def canonical_cycle(cyc: Sequence[Edge]) -> tuple:
    cyc = tuple(cyc)
    i = min(range(len(cyc)), key=lambda j: _edge_order(cyc[j]))
    return cyc[i:] + cyc[:i]


@dataclass(frozen=True)
class Splitting:
    """Boundary paths (one per slot L_1..L_l1, R_1..R_r1) and cycles, canonically ordered."""

    paths: tuple
    cycles: tuple

    @classmethod
    def make(cls, paths, cycles) -> "Splitting":
        cyc = sorted((canonical_cycle(c) for c in cycles), key=lambda c: [_edge_order(e) for e in c])
        return cls(tuple(tuple(p) for p in paths), tuple(cyc))

    def to_json(self, g: DGraph):
        return {
            "paths": [
                {"start": vertex_label(v), "edges": [edge_label(e) for e in p]}
                for v, p in zip(g.boundary_slots, self.paths)
            ],
            "cycles": [[edge_label(e) for e in c] for c in self.cycles],
        }

    @classmethod
    def from_json(cls, data) -> "Splitting":
        paths = [tuple(parse_edge(e) for e in p["edges"]) for p in data["paths"]]
        cycles = [tuple(parse_edge(e) for e in c) for c in data["cycles"]]
        return cls.make(paths, cycles)


def _successors(S: Splitting) -> tuple[dict, dict]:
    """Map edge -> next edge in its path or cycle (None at a path end) and edge -> owner."""
    nxt: dict = {}
    owner: dict = {}
    for idx, p in enumerate(S.paths):
        for a, b in zip(p, p[1:] + (None,)):
            nxt[a] = b
            owner[a] = ("path", idx)
    for idx, c in enumerate(S.cycles):
        for a, b in zip(c, c[1:] + c[:1]):
            nxt[a] = b
            owner[a] = ("cycle", idx)
    return nxt, owner


def _proper_of(e: Edge) -> Edge:
    return ("e",) + e[1:]


def _reflected_of(e: Edge) -> Edge:
    return ("*",) + e[1:]


class SplittingError(ValueError):
    pass


def vertex_words(g: DGraph, S: Splitting) -> dict:
    """The words w_v produced by the initial-edge rules and the follower iteration."""
    nxt, _ = _successors(S)
    words: dict = {}
    for v in g.vertices:
        E = g.incoming(v)
        if not E:
            words[v] = ()
            continue
        # initial edge
        if _is_path_vertex(v):
            p = S.paths[g.boundary_slots.index(v)]
            first = p[0] if p else None
        elif v[0] in ("Ol", "Or"):
            first = nxt.get(g.loop_of(v))
        else:
            first = nxt.get(g.reflected_into(v))
        if first is None or first[0] != "*":
            words[v] = ()
            continue
        word = [_proper_of(first)]
        seen = {word[0]}
        while True:
            e = word[-1]
            after = nxt.get(e)
            if _is_path_vertex(v):
                if after is None:
                    break
            elif v[0] == "N":
                if after == g.own_proper(v):
                    break
            else:
                if after == g.loop_of(v):
                    break
            if after is None or after[0] != "*":
                break
            f = _proper_of(after)
            if f in seen:
                break
            seen.add(f)
            word.append(f)
        words[v] = tuple(word)
    return words


def perms_from_splitting(g: DGraph, S: Splitting) -> dict:
    """PermTuple: vertex -> permutation of E(v) (one-line positions in the natural order)."""
    words = vertex_words(g, S)
    out = {}
    for v in g.vertices:
        E = g.incoming(v)
        if not E:
            continue
        w = words[v]
        if len(w) != len(E) or set(w) != set(E):
            raise SplittingError(f"splitting is not principal at {vertex_label(v)}: word {list(map(edge_label, w))}")
        out[v] = tuple(E.index(e) + 1 for e in w)
    return out


def _next_edge(g: DGraph, words: Mapping, last: Edge | None, v: Vertex):
    """The inverse algorithm: which edge prolongs a path that has reached v via ``last``.

    Returns None when the path stops.
    """
    w = words[v]
    if _is_path_vertex(v):
        if last is None:
            return _reflected_of(w[0]) if w else None
        p = w.index(last)
        return None if p == len(w) - 1 else _reflected_of(w[p + 1])
    if v[0] in ("Ol", "Or"):
        if last == g.loop_of(v):
            return _reflected_of(w[0]) if w else g.loop_of(v)
        p = w.index(last)
        return g.loop_of(v) if p == len(w) - 1 else _reflected_of(w[p + 1])
    if not w or last[0] == "*":
        return _reflected_of(w[0]) if w else g.own_proper(v)
    h = w.index(last)
    return g.own_proper(v) if h == len(w) - 1 else _reflected_of(w[h + 1])


def splitting_from_perms(g: DGraph, perms: Mapping | None = None) -> Splitting:
    perms = perms or {}
    words = {}
    for v in g.vertices:
        E = g.incoming(v)
        u = perms.get(v, P.identity(len(E)))
        if len(u) != len(E):
            raise ValueError(f"permutation at {vertex_label(v)} has degree {len(u)}, expected {len(E)}")
        words[v] = tuple(E[i - 1] for i in u)
    used: set = set()
    paths = []
    for start in g.boundary_slots:
        path = []
        e = _next_edge(g, words, None, start)
        while e is not None:
            if e in used:
                raise SplittingError("inverse algorithm revisited an edge")
            used.add(e)
            path.append(e)
            e = _next_edge(g, words, e, g.head(e))
        paths.append(tuple(path))
    cycles = []
    for e0 in sorted(g.edges, key=_edge_order):
        if e0 in used:
            continue
        cyc = [e0]
        used.add(e0)
        e = _next_edge(g, words, e0, g.head(e0))
        while e != e0:
            if e is None or e in used:
                raise SplittingError("inverse algorithm failed to close a cycle")
            used.add(e)
            cyc.append(e)
            e = _next_edge(g, words, e, g.head(e))
        cycles.append(tuple(cyc))
    return Splitting.make(paths, cycles)


def enum_perm_tuples(g: DGraph) -> Iterator[dict]:
    vs = [v for v in g.vertices if g.incoming(v)]
    choices = [list(P.all_perms(len(g.incoming(v)))) for v in vs]
    for combo in itertools.product(*choices):
        yield dict(zip(vs, combo))


def splittings(g: DGraph) -> Iterator[tuple[dict, Splitting]]:
    for t in enum_perm_tuples(g):
        yield t, splitting_from_perms(g, t)


def path_end(g: DGraph, S: Splitting, slot: int) -> Vertex:
    p = S.paths[slot]
    return g.head(p[-1]) if p else g.boundary_slots[slot]


def sigma_of_splitting(g: DGraph, S: Splitting) -> P.Perm:
    slots = g.boundary_slots
    return tuple(slots.index(path_end(g, S, k)) + 1 for k in range(len(slots)))


# -------------------------------------------------- independent checks


def validate_splitting(g: DGraph, S: Splitting) -> list[str]:
    """All constraints of a principal splitting, checked directly on the walk.

    Shares nothing with the forward or inverse algorithms above.
    """
    bad = []
    heads = {e: g.head(e) for e in g.edges}
    tails = {e: g.tail(e) for e in g.edges}
    slots = list(g.boundary_slots)
    if len(S.paths) != len(slots):
        return [f"expected {len(slots)} boundary paths, got {len(S.paths)}"]
    proper_in: dict = {v: [] for v in g.vertices}
    for e in g.edges:
        if e[0] == "e":
            proper_in[heads[e]].append(e)

    walks = []
    ends = []
    for start, p in zip(slots, S.paths):
        if p:
            if tails[p[0]] != start:
                bad.append(f"path from {vertex_label(start)} does not start there")
        if (len(p) == 0) != (len(proper_in[start]) == 0):
            bad.append(f"path from {vertex_label(start)}: zero length iff no incoming proper edges fails")
        for a, b in zip(p, p[1:]):
            if heads[a] != tails[b]:
                bad.append(f"path from {vertex_label(start)} is not an oriented path at {edge_label(b)}")
        end = heads[p[-1]] if p else start
        if end[0] not in ("L", "R"):
            bad.append(f"path from {vertex_label(start)} ends at {vertex_label(end)}")
        ends.append(end)
        walks.append((list(p), False))
    if len(set(ends)) != len(ends):
        bad.append("path endpoints are not pairwise distinct")
    for c in S.cycles:
        if not c:
            bad.append("empty cycle")
            continue
        for a, b in zip(c, c[1:] + c[:1]):
            if heads[a] != tails[b]:
                bad.append(f"cycle is not closed/oriented at {edge_label(b)}")
        walks.append((list(c), True))

    count: dict = {}
    for w, _ in walks:
        for e in w:
            count[e] = count.get(e, 0) + 1
    for e in g.edges:
        if count.get(e, 0) != 1:
            bad.append(f"edge {edge_label(e)} used {count.get(e, 0)} times")
    for e in count:
        if e not in heads:
            bad.append(f"unknown edge {e}")

    # consecutive pairs inside walks
    following: dict = {}
    for w, cyclic in walks:
        pairs = list(zip(w, w[1:] + w[:1])) if cyclic else list(zip(w, w[1:]))
        for a, b in pairs:
            following[a] = b
            if a[0] == "e" and b == ("*",) + a[1:]:
                bad.append(f"forbidden pattern {edge_label(a)} {edge_label(b)}")
            v = heads[a]
            if v[0] == "N" and a[0] == "*" and any(x[0] == "e" for x in g.edges if heads[x] == v):
                if b[0] != "*":
                    bad.append(f"arrived at {vertex_label(v)} on a reflected edge but left on {edge_label(b)}")
        if not cyclic and w:
            following[w[-1]] = None
    path_first = {start: (p[0] if p else None) for start, p in zip(slots, S.paths)}

    # principality: rebuild each vertex word from the walk transitions
    for v in g.vertices:
        inc = proper_in[v]
        if not inc:
            continue
        if v[0] in ("L", "R"):
            first = path_first[v]
        elif v[0] in ("Ol", "Or"):
            lp = ("o", "l" if v[0] == "Ol" else "r", v[1])
            first = following.get(lp)
        else:
            first = following.get(("*", v[1], 3 - v[2]))
        word = []
        cur = first
        while cur is not None and cur[0] == "*" and tails[cur] == v:
            pe = ("e",) + cur[1:]
            if pe in word:
                break
            word.append(pe)
            cur = following.get(pe)
        if sorted(word) != sorted(inc):
            bad.append(f"not principal at {vertex_label(v)}")
    return bad


def brute_force_splittings(g: DGraph) -> set:
    """Every principal splitting, found by gluing local in/out matchings at each vertex.

    Independent of the forward and inverse algorithms; exponential, for small graphs.
    """
    START, END = "start", "end"
    local = []
    for v in g.vertices:
        ins = [e for e in g.edges if g.head(e) == v]
        outs = [e for e in g.edges if g.tail(e) == v]
        if _is_path_vertex(v):
            ins = ins + [(START, v)]
            outs = outs + [(END, v)]
        options = []
        for perm in itertools.permutations(outs):
            ok = True
            for a, b in zip(ins, perm):
                if a[0] == "e" and b == _reflected_of(a):
                    ok = False
                    break
                if v[0] == "N" and a[0] == "*" and b[0] != "*" and g.incoming(v):
                    ok = False
                    break
                if a[0] == START and b[0] == END and g.incoming(v):
                    ok = False
                    break
            if ok:
                options.append(list(zip(ins, perm)))
        local.append(options)
    found = set()
    for combo in itertools.product(*local):
        nxt = {}
        for matching in combo:
            nxt.update(dict(matching))
        paths = []
        used = set()
        for v in g.boundary_slots:
            path = []
            e = nxt[(START, v)]
            while e[0] != END:
                path.append(e)
                used.add(e)
                e = nxt[e]
            paths.append(tuple(path))
        cycles = []
        for e0 in g.edges:
            if e0 in used:
                continue
            cyc = [e0]
            used.add(e0)
            e = nxt[e0]
            while e != e0:
                cyc.append(e)
                used.add(e)
                e = nxt[e]
            cycles.append(tuple(cyc))
        S = Splitting.make(paths, cycles)
        if not validate_splitting(g, S):
            found.add(S)
    return found
