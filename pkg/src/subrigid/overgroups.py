"""Quotient overgroups of a core graph, the minimum overgroup rank, and Crit.

Every f.g. overgroup L of H induces a folded quotient of core(H) (its image in
core(L)) whose rank is at most rk(L).  So the minimum rank over all folded
quotients is the minimum rank over all overgroups, and the overgroups that
realize it are themselves quotients.  Enumerating quotients therefore gives
exact answers without any free-factor detection.
"""

from __future__ import annotations

import os
from collections import Counter, deque
from dataclasses import dataclass
from functools import lru_cache, reduce

from .pullback import intersect
from .stallings import CoreGraph, build_core, contains, join, rank

ENV_LIMIT = "SUBRIGID_MAX_QUOTIENTS"
DEFAULT_LIMIT = 10**6


class EnumerationLimitError(RuntimeError):
    def __init__(self, count: int, limit: int):
        super().__init__(f"quotient enumeration exceeded {limit} members (visited {count})")
        self.count = count
        self.limit = limit


class CritError(RuntimeError):
    """Crit has no maximum member; this signals a bug, never a property of the input."""


def default_limit() -> int:
    value = os.environ.get(ENV_LIMIT)
    return int(value) if value else DEFAULT_LIMIT


@dataclass(frozen=True)
class QuotientSet:
    source: CoreGraph
    members: frozenset[CoreGraph]

    @property
    def min_rank(self) -> int:
        return min(rank(m) for m in self.members)

    def by_rank(self) -> dict[int, list[CoreGraph]]:
        out: dict[int, list[CoreGraph]] = {}
        for m in self.sorted_members():
            out.setdefault(rank(m), []).append(m)
        return out

    def histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(rank(m) for m in self.members).items()))

    def sorted_members(self) -> list[CoreGraph]:
        return sorted(self.members, key=_order_key)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, g) -> bool:
        return g in self.members


@dataclass(frozen=True)
class CritSet:
    pi_bar: int
    members: tuple[CoreGraph, ...]
    closure: CoreGraph

    def __contains__(self, g) -> bool:
        return g in self.members


def _order_key(g: CoreGraph):
    return (rank(g), g.num_vertices, g.edges)


def identify_pair(g: CoreGraph, a: int, b: int) -> CoreGraph:
    """Identify vertices a and b, fold, trim, canonicalize."""
    return build_core(g.rank, g.num_vertices, g.edges, g.basepoint, identify=[(a, b)])


def _expand(g: CoreGraph):
    n = g.num_vertices
    for a in range(n):
        for b in range(a + 1, n):
            yield identify_pair(g, a, b)


@lru_cache(maxsize=512)
def _enumerate(gH: CoreGraph, limit: int) -> frozenset[CoreGraph]:
    seen = {gH}
    queue = deque([gH])
    while queue:
        g = queue.popleft()
        for q in _expand(g):
            if q not in seen:
                seen.add(q)
                if len(seen) > limit:
                    raise EnumerationLimitError(len(seen), limit)
                queue.append(q)
    return frozenset(seen)


def enumerate_quotients(gH: CoreGraph, limit: int | None = None) -> QuotientSet:
    """All folded quotients of core(H), found by repeatedly identifying vertex pairs."""
    return QuotientSet(gH, _enumerate(gH, default_limit() if limit is None else limit))


def pi_bar(gH: CoreGraph, limit: int | None = None) -> int:
    """Minimum rank of a f.g. overgroup of H."""
    if gH.is_trivial():
        return 0
    limit = default_limit() if limit is None else limit
    if rank(gH) == 1:
        return 1
    # search for a rank-1 quotient first; fall back to the full enumeration
    seen = {gH}
    queue = deque([gH])
    while queue:
        g = queue.popleft()
        for q in _expand(g):
            if q not in seen:
                if rank(q) == 1:
                    return 1
                seen.add(q)
                if len(seen) > limit:
                    raise EnumerationLimitError(len(seen), limit)
                queue.append(q)
    return min(rank(m) for m in seen)


def crit(gH: CoreGraph, limit: int | None = None) -> CritSet:
    qs = enumerate_quotients(gH, limit)
    p = qs.min_rank
    members = tuple(m for m in qs.sorted_members() if rank(m) == p)
    top = reduce(join, members)
    if top not in qs.members or rank(top) != p:
        raise CritError(f"join of Crit members has rank {rank(top)}, expected {p}")
    if not all(contains(top, m) for m in members):
        raise CritError("join of Crit members does not contain every member")
    return CritSet(p, members, top)


def l2_closure(gH: CoreGraph, limit: int | None = None) -> CoreGraph:
    """The largest overgroup of minimum rank."""
    return crit(gH, limit).closure


def crit_lattice_violations(cs: CritSet) -> list[tuple[str, CoreGraph, CoreGraph]]:
    """Pairs of Crit members whose meet or join leaves Crit."""
    bad = []
    members = set(cs.members)
    for i, a in enumerate(cs.members):
        for b in cs.members[i:]:
            if intersect(a, b) not in members:
                bad.append(("intersect", a, b))
            if join(a, b) not in members:
                bad.append(("join", a, b))
    return bad
