"""Permutations of {1..n} in one-line form.

A permutation is a plain tuple of images ``p[i-1] = p(i)``.  Products are
ordinary composition: ``compose(p, q)(i) = p(q(i))``.
"""

from __future__ import annotations

from itertools import permutations as _permutations
from typing import Iterable, Iterator, Sequence

Perm = tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def is_perm(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(1, len(p) + 1))


def check_perm(p: Sequence[int]) -> Perm:
    p = tuple(int(x) for x in p)
    if not is_perm(p):
        raise ValueError(f"not a permutation: {list(p)}")
    return p


def compose(p: Perm, q: Perm) -> Perm:
    """The product p*q, applying q first."""
    if len(p) != len(q):
        raise ValueError("degree mismatch")
    return tuple(p[i - 1] for i in q)


def compose_all(*ps: Perm) -> Perm:
    out = ps[-1]
    for p in reversed(ps[:-1]):
        out = compose(p, out)
    return out


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, v in enumerate(p, start=1):
        inv[v - 1] = i
    return tuple(inv)


def conjugate(sigma: Perm, u: Perm) -> Perm:
    """Ad(sigma)(u) = sigma u sigma^-1."""
    return compose(compose(sigma, u), inverse(sigma))


def cross(w: Perm, tau: Perm) -> Perm:
    """w x tau: w on the first len(w) nodes, tau on the rest."""
    n = len(w)
    return tuple(w) + tuple(n + t for t in tau)


def cross_all(ps: Iterable[Perm]) -> Perm:
    out: Perm = ()
    for p in ps:
        out = cross(out, p)
    return out


def blowup(tau: Perm, sizes: Sequence[int]) -> Perm:
    """tau^{k_1..k_n}: consecutive blocks of the given sizes permuted by tau.

    Block i (of size k_i) is moved to block position tau(i); zero sizes are
    allowed.
    """
    n = len(tau)
    if len(sizes) != n:
        raise ValueError("need one block size per node")
    if any(k < 0 for k in sizes):
        raise ValueError("block sizes must be nonnegative")
    inv = inverse(tau)
    # target block position j holds source block inv[j]
    target_start = {}
    pos = 1
    for j in range(1, n + 1):
        src = inv[j - 1]
        target_start[src] = pos
        pos += sizes[src - 1]
    out = []
    for i in range(1, n + 1):
        start = target_start[i]
        out.extend(range(start, start + sizes[i - 1]))
    return tuple(out)


def block_swap(*sizes: int) -> Perm:
    """(12)^{k_1,k_2,...}: swap the first two blocks, fix the others."""
    n = len(sizes)
    tau = (2, 1) + tuple(range(3, n + 1))
    return blowup(tau, sizes)


def insert(w: Perm, left: int, tau: Perm, right: int) -> Perm:
    """w' *_l tau *_r w'': cut w after ``left`` nodes and put tau in between.

    Both rows of the diagram of w are split after position ``left``; the two
    halves are pulled apart keeping their edges and tau fills the gap.
    """
    n, m = len(w), len(tau)
    if left < 0 or right < 0 or left + right != n:
        raise ValueError("left + right must equal the degree of w")

    def shift(x: int) -> int:
        return x if x <= left else x + m

    out = [shift(w[i - 1]) for i in range(1, left + 1)]
    out += [left + t for t in tau]
    out += [shift(w[i - 1]) for i in range(left + 1, n + 1)]
    return tuple(out)


def kerov_project(u: Perm) -> Perm:
    """Canonical projection S(n+1) -> S(n): drop node 1 from its cycle."""
    if len(u) == 0:
        raise ValueError("kerov_project needs degree >= 1")
    images = list(u)
    if images[0] != 1:
        pre = images.index(1) + 1  # u(pre) = 1
        images[pre - 1] = images[0]
    return tuple(x - 1 for x in images[1:])


def cycles(p: Perm) -> list[tuple[int, ...]]:
    seen: set[int] = set()
    out = []
    for start in range(1, len(p) + 1):
        if start in seen:
            continue
        cyc = []
        x = start
        while x not in seen:
            seen.add(x)
            cyc.append(x)
            x = p[x - 1]
        out.append(tuple(cyc))
    return out


def from_cycles(n: int, cycs: Iterable[Sequence[int]]) -> Perm:
    out = list(range(1, n + 1))
    for cyc in cycs:
        for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
            out[a - 1] = b
    return check_perm(out)


def all_perms(n: int) -> Iterator[Perm]:
    yield from _permutations(range(1, n + 1))


def sign(p: Perm) -> int:
    s = 1
    for cyc in cycles(p):
        if len(cyc) % 2 == 0:
            s = -s
    return s
