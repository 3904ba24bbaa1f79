"""Slow, independent reference implementations used to cross-check the fast paths.

Nothing here shares code with the folding, trimming or canonical numbering in
:mod:`subrigid.stallings`; results are converted to :class:`CoreGraph` only at
the end so they can be compared for equality.
"""

from __future__ import annotations

import itertools
from typing import Iterator, Sequence

from .stallings import CoreGraph, conjugate, from_generators, join, rank
from .pullback import intersect
from .words import Word


def naive_fold(
    n: int, edges: Sequence[tuple[int, int, int]]
) -> tuple[list[int], set[tuple[int, int, int]]]:
    """Merge same-label edge pairs one at a time until none are left.

    Returns the final vertex of every original vertex and the folded edge set.
    """
    where = list(range(n))
    es = set(edges)
    while True:
        merge = None
        for e, f in itertools.combinations(sorted(es), 2):
            if e[0] != f[0]:
                continue
            if e[1] == f[1] and e[2] != f[2]:
                merge = (e[2], f[2])
            elif e[2] == f[2] and e[1] != f[1]:
                merge = (e[1], f[1])
            if merge:
                break
        if merge is None:
            return where, es
        keep, drop = min(merge), max(merge)
        where = [keep if w == drop else w for w in where]
        es = {(x, keep if u == drop else u, keep if v == drop else v) for x, u, v in es}


def _component(base: int, edges) -> set[int]:
    seen = {base}
    frontier = [base]
    while frontier:
        u = frontier.pop()
        for _, a, b in edges:
            for s, t in ((a, b), (b, a)):
                if s == u and t not in seen:
                    seen.add(t)
                    frontier.append(t)
    return seen


def naive_trim(base: int, edges) -> set[tuple[int, int, int]]:
    es = set(edges)
    while True:
        verts = {a for _, a, _ in es} | {b for _, _, b in es}
        leaf = next(
            (v for v in sorted(verts) if v != base and sum((a == v) + (b == v) for _, a, b in es) <= 1),
            None,
        )
        if leaf is None:
            return es
        es = {e for e in es if leaf not in (e[1], e[2])}


def naive_canonical(rank_: int, base: int, edges) -> CoreGraph:
    """Renumber by breadth-first search trying 1, 1^-1, 2, 2^-1, ... at each vertex."""
    order = [base]
    i = 0
    while i < len(order):
        u = order[i]
        i += 1
        for x in range(1, rank_ + 1):
            fwd = [b for y, a, b in edges if y == x and a == u]
            bwd = [a for y, a, b in edges if y == x and b == u]
            for w in fwd + bwd:
                if w not in order:
                    order.append(w)
    new = {v: k for k, v in enumerate(order)}
    return CoreGraph(rank_, len(order), tuple(sorted((x, new[a], new[b]) for x, a, b in edges)))


def naive_core(rank_: int, n: int, edges, base: int = 0) -> CoreGraph:
    where, es = naive_fold(n, edges)
    b = where[base]
    comp = _component(b, es)
    es = {e for e in es if e[1] in comp}
    return naive_canonical(rank_, b, naive_trim(b, es))


def naive_from_generators(gens: Sequence[Word], rank_: int) -> CoreGraph:
    n = 1
    edges = []
    for w in gens:
        prev = 0
        for i, x in enumerate(w.letters):
            nxt = 0 if i == len(w) - 1 else n
            if nxt:
                n += 1
            edges.append((x, prev, nxt) if x > 0 else (-x, nxt, prev))
            prev = nxt
    return naive_core(rank_, n, edges)


def set_partitions(n: int) -> Iterator[list[int]]:
    """Restricted growth strings: block label of each of n elements."""
    if n == 0:
        yield []
        return

    def grow(prefix: list[int], top: int):
        if len(prefix) == n:
            yield list(prefix)
            return
        for b in range(top + 2):
            prefix.append(b)
            yield from grow(prefix, max(top, b))
            prefix.pop()

    yield from grow([0], 0)


def all_partition_quotients(g: CoreGraph) -> set[CoreGraph]:
    """Fold the quotient of g by every set partition of its vertices."""
    out = set()
    for blocks in set_partitions(g.num_vertices):
        edges = {(x, blocks[u], blocks[v]) for x, u, v in g.edges}
        out.add(naive_core(g.rank, max(blocks) + 1, edges, blocks[g.basepoint]))
    return out


def join_member(g: CoreGraph, w: Word) -> bool:
    """w lies in H iff adding it as a generator does not change the core graph."""
    return join(g, from_generators([w], g.rank)) == g


def _add_tail(edges: list, n: int, start: int, letters) -> tuple[int, int]:
    """Append a path spelling ``letters`` from ``start``; returns (new n, end vertex)."""
    u = start
    for c in letters:
        edges.append((c, u, n) if c > 0 else (-c, n, u))
        u, n = n, n + 1
    return n, u


def double_coset_reads(gU: CoreGraph, gH: CoreGraph, x: Word, y: Word) -> bool:
    """True iff y lies in the double coset U x H.

    Right cosets of H are the vertices of its Schreier graph; the coset H x^-1
    sits at the end of a tail spelling x^-1 from H's basepoint.  y lies in UxH
    iff some path from H x^-1 to H y^-1 spells an element of U, which is a
    reachability question in the product with core(U).
    """
    edges = list(gH.edges)
    n = gH.num_vertices
    n, p = _add_tail(edges, n, gH.basepoint, [-c for c in reversed(x.letters)])
    n, q = _add_tail(edges, n, gH.basepoint, [-c for c in reversed(y.letters)])
    where, es = naive_fold(n, edges)
    p, q = where[p], where[q]
    start, goal = (p, gU.basepoint), (q, gU.basepoint)
    seen = {start}
    frontier = [start]
    while frontier:
        d, u = frontier.pop()
        for c, a, b in es:
            for c2, a2, b2 in gU.edges:
                if c != c2:
                    continue
                for here, there in (((a, a2), (b, b2)), ((b, b2), (a, a2))):
                    if here == (d, u) and there not in seen:
                        seen.add(there)
                        frontier.append(there)
    return goal in seen


def reduced_words(rank_: int, max_len: int) -> Iterator[Word]:
    letters = [s * k for k in range(1, rank_ + 1) for s in (1, -1)]
    layer: list[tuple[int, ...]] = [()]
    yield Word((), rank_)
    for _ in range(max_len):
        nxt = []
        for w in layer:
            for c in letters:
                if w and w[-1] == -c:
                    continue
                nxt.append(w + (c,))
        for w in nxt:
            yield Word(w, rank_)
        layer = nxt


def bounded_conjugator_ranks(gU: CoreGraph, gH: CoreGraph, max_len: int) -> list[int]:
    """Ranks of U ∩ xHx^-1 over distinct double cosets UxH with |x| <= max_len.

    Only nontrivial intersections are reported, sorted ascending.
    """
    reps: list[tuple[Word, int]] = []
    for x in reduced_words(gU.rank, max_len):
        r = rank(intersect(gU, conjugate(gH, x)))
        if r == 0:
            continue
        if any(double_coset_reads(gU, gH, y, x) for y, _ in reps):
            continue
        reps.append((x, r))
    return sorted(r for _, r in reps)
