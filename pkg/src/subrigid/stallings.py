"""Stallings core graphs of finitely generated subgroups of a free group.

Edges are stored once per positive letter: ``(x, u, v)`` means u --x--> v and
implicitly v --x^-1--> u.  Every graph produced by this module has its
basepoint at vertex 0 and, unless noted otherwise, is in canonical numbering
(breadth-first from the basepoint, letters explored as 1, 1^-1, 2, 2^-1, ...).
Because a folded graph is deterministic, that numbering is unique, so two core
graphs describe the same subgroup exactly when they compare equal.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .words import Alphabet, RankError, Word, letter_char, reduce
from .words import conjugate as conjugate_word


class GraphValidationError(ValueError):
    """A graph violates a core-graph invariant."""


class GraphFormatError(ValueError):
    """A serialized graph document could not be parsed."""


@dataclass(frozen=True)
class RawGraph:
    """Arbitrary based labeled graph, not necessarily folded or connected."""

    rank: int
    num_vertices: int
    edges: tuple[tuple[int, int, int], ...]
    basepoint: int = 0


@dataclass(frozen=True)
class CoreGraph:
    rank: int
    num_vertices: int
    edges: tuple[tuple[int, int, int], ...]
    basepoint: int = field(default=0)

    @cached_property
    def out_maps(self) -> list[dict[int, int]]:
        """``out_maps[x][u] = v`` for each edge u --x--> v; index 0 unused."""
        maps: list[dict[int, int]] = [{} for _ in range(self.rank + 1)]
        for x, u, v in self.edges:
            maps[x][u] = v
        return maps

    @cached_property
    def in_maps(self) -> list[dict[int, int]]:
        maps: list[dict[int, int]] = [{} for _ in range(self.rank + 1)]
        for x, u, v in self.edges:
            maps[x][v] = u
        return maps

    def step(self, u: int, x: int) -> int | None:
        """Follow signed letter ``x`` from ``u``; None if no such edge."""
        if x > 0:
            return self.out_maps[x].get(u)
        return self.in_maps[-x].get(u)

    def walk(self, start: int, word: Iterable[int]) -> int | None:
        u: int | None = start
        for x in word:
            u = self.step(u, x)
            if u is None:
                return None
        return u

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet(self.rank)

    def degree(self, u: int) -> int:
        return sum((a == u) + (b == u) for _, a, b in self.edges)

    def letters_used(self) -> set[int]:
        return {x for x, _, _ in self.edges}

    def is_trivial(self) -> bool:
        return not self.edges

    def key(self) -> bytes:
        """Canonical byte string; equal keys iff equal subgroups (for canonical graphs)."""
        return canonical(self)._raw_key()

    def _raw_key(self) -> bytes:
        parts = [self.rank, self.num_vertices]
        for e in self.edges:
            parts.extend(e)
        return ",".join(map(str, parts)).encode()

    def __repr__(self) -> str:
        es = " ".join(f"{u}-{letter_char(x)}->{v}" for x, u, v in self.edges)
        return f"CoreGraph(rank={self.rank}, V={self.num_vertices}, [{es}])"


# --------------------------------------------------------------------------
# folding machinery


class _Folder:
    """Union-find folding of a labeled graph.

    Per-class adjacency is kept only at class representatives; merging two
    classes moves the smaller adjacency into the larger one and queues any
    label collisions as further merges.
    """

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.out: list[dict[int, int]] = [{} for _ in range(n)]
        self.inn: list[dict[int, int]] = [{} for _ in range(n)]
        self.pending: list[tuple[int, int]] = []

    def find(self, a: int) -> int:
        parent = self.parent
        root = a
        while parent[root] != root:
            root = parent[root]
        while parent[a] != root:
            parent[a], a = root, parent[a]
        return root

    def add_edge(self, x: int, u: int, v: int) -> None:
        u, v = self.find(u), self.find(v)
        t = self.out[u].get(x)
        if t is None:
            self.out[u][x] = v
        else:
            self.pending.append((t, v))
        s = self.inn[v].get(x)
        if s is None:
            self.inn[v][x] = u
        else:
            self.pending.append((s, u))
        self._drain()

    def identify(self, a: int, b: int) -> None:
        self.pending.append((a, b))
        self._drain()

    def _drain(self) -> None:
        pending = self.pending
        while pending:
            a, b = pending.pop()
            a, b = self.find(a), self.find(b)
            if a == b:
                continue
            if self.size[a] < self.size[b]:
                a, b = b, a
            self.parent[b] = a
            self.size[a] += self.size[b]
            for mine, theirs in ((self.out[a], self.out[b]), (self.inn[a], self.inn[b])):
                for x, t in theirs.items():
                    s = mine.get(x)
                    if s is None:
                        mine[x] = t
                    else:
                        pending.append((s, t))
            self.out[b] = self.inn[b] = {}

    def folded_edges(self) -> list[tuple[int, int, int]]:
        edges = []
        for r in range(len(self.parent)):
            if self.parent[r] == r:
                for x, t in self.out[r].items():
                    edges.append((x, r, self.find(t)))
        return edges


def _canonical_numbering(
    rank: int, edges: Sequence[tuple[int, int, int]], base: int
) -> tuple[int, tuple[tuple[int, int, int], ...]]:
    """BFS renumbering of the basepoint component of a folded graph."""
    out: dict[int, dict[int, int]] = {}
    inn: dict[int, dict[int, int]] = {}
    for x, u, v in edges:
        out.setdefault(u, {})[x] = v
        inn.setdefault(v, {})[x] = u
    new = {base: 0}
    queue = deque([base])
    while queue:
        u = queue.popleft()
        ou, iu = out.get(u, {}), inn.get(u, {})
        for x in range(1, rank + 1):
            for w in (ou.get(x), iu.get(x)):
                if w is not None and w not in new:
                    new[w] = len(new)
                    queue.append(w)
    renamed = sorted((x, new[u], new[v]) for x, u, v in edges if u in new)
    return len(new), tuple(renamed)


def _trim_edges(
    n: int, edges: Sequence[tuple[int, int, int]], base: int
) -> list[tuple[int, int, int]]:
    deg = [0] * n
    incident: list[list[int]] = [[] for _ in range(n)]
    for i, (_, u, v) in enumerate(edges):
        deg[u] += 1
        deg[v] += 1
        incident[u].append(i)
        incident[v].append(i)
    alive = [True] * len(edges)
    stack = [u for u in range(n) if u != base and deg[u] <= 1]
    while stack:
        u = stack.pop()
        for i in incident[u]:
            if not alive[i]:
                continue
            alive[i] = False
            _, a, b = edges[i]
            for w in (a, b):
                deg[w] -= 1
                if w != base and w != u and deg[w] == 1:
                    stack.append(w)
        deg[u] = 0
    return [e for e, ok in zip(edges, alive) if ok]


def build_core(
    rank: int,
    num_vertices: int,
    edges: Iterable[tuple[int, int, int]],
    basepoint: int = 0,
    identify: Iterable[tuple[int, int]] = (),
    trimmed: bool = True,
) -> CoreGraph:
    """Fold (after identifying the given vertex pairs), optionally trim, canonicalize."""
    folder = _Folder(num_vertices)
    for a, b in identify:
        folder.identify(a, b)
    for x, u, v in edges:
        folder.add_edge(x, u, v)
    base = folder.find(basepoint)
    n, es = _canonical_numbering(rank, folder.folded_edges(), base)
    if trimmed:
        kept = _trim_edges(n, es, 0)
        if len(kept) != len(es):
            n, es = _canonical_numbering(rank, kept, 0)
    return CoreGraph(rank, n, es)


def _as_alphabet(alphabet: Alphabet | int) -> Alphabet:
    return alphabet if isinstance(alphabet, Alphabet) else Alphabet(alphabet)


def bouquet_of_words(gens: Sequence[Word], alphabet: Alphabet | int) -> RawGraph:
    """Unfolded bouquet: one closed path at the basepoint per generator."""
    rank = _as_alphabet(alphabet).rank
    n = 1
    edges = []
    for w in gens:
        if w.rank > rank:
            raise RankError(f"word {w} does not fit alphabet of rank {rank}")
        if not w.letters:
            continue
        path = [0] + list(range(n, n + len(w) - 1)) + [0]
        n += len(w) - 1
        for x, a, b in zip(w.letters, path, path[1:]):
            edges.append((x, a, b) if x > 0 else (-x, b, a))
    return RawGraph(rank, n, tuple(edges))


def from_generators(gens: Sequence[Word], alphabet: Alphabet | int) -> CoreGraph:
    return trim(fold(bouquet_of_words(gens, alphabet)))


def fold(graph: RawGraph | CoreGraph) -> CoreGraph:
    """Fold to a deterministic, co-deterministic graph on the basepoint component.

    The result is not trimmed; pass it through :func:`trim` for a core graph.
    """
    return build_core(graph.rank, graph.num_vertices, graph.edges, graph.basepoint, trimmed=False)


def trim(graph: CoreGraph) -> CoreGraph:
    """Delete non-basepoint vertices of degree <= 1 until none remain."""
    kept = _trim_edges(graph.num_vertices, graph.edges, graph.basepoint)
    n, es = _canonical_numbering(graph.rank, kept, graph.basepoint)
    return CoreGraph(graph.rank, n, es)


def trivial(alphabet: Alphabet | int) -> CoreGraph:
    return CoreGraph(_as_alphabet(alphabet).rank, 1, ())


def full_bouquet(alphabet: Alphabet | int) -> CoreGraph:
    """Core graph of the whole free group."""
    rank = _as_alphabet(alphabet).rank
    return CoreGraph(rank, 1, tuple((x, 0, 0) for x in range(1, rank + 1)))


def canonical(graph: CoreGraph) -> CoreGraph:
    n, es = _canonical_numbering(graph.rank, graph.edges, graph.basepoint)
    return CoreGraph(graph.rank, n, es)


def rank(graph: CoreGraph) -> int:
    return len(graph.edges) - graph.num_vertices + 1


def reduced_rank(graph: CoreGraph | int) -> int:
    r = graph if isinstance(graph, int) else rank(graph)
    return max(r - 1, 0)


def accepts(graph: CoreGraph, w: Word) -> bool:
    if any(abs(x) > graph.rank for x in w.letters):
        return False
    return graph.walk(graph.basepoint, w.letters) == graph.basepoint


def spanning_tree_paths(graph: CoreGraph) -> tuple[dict[int, tuple[int, ...]], set[int]]:
    """BFS tree from the basepoint: path word to each vertex and the tree edge indices."""
    index = {e: i for i, e in enumerate(graph.edges)}
    paths: dict[int, tuple[int, ...]] = {graph.basepoint: ()}
    tree: set[int] = set()
    queue = deque([graph.basepoint])
    while queue:
        u = queue.popleft()
        for x in range(1, graph.rank + 1):
            for sx in (x, -x):
                w = graph.step(u, sx)
                if w is not None and w not in paths:
                    paths[w] = paths[u] + (sx,)
                    tree.add(index[(x, u, w) if sx > 0 else (x, w, u)])
                    queue.append(w)
    return paths, tree


def basis(graph: CoreGraph) -> list[Word]:
    """Free basis read off the non-tree edges of a BFS spanning tree."""
    paths, tree = spanning_tree_paths(graph)
    out = []
    for i, (x, u, v) in enumerate(graph.edges):
        if i in tree:
            continue
        letters = paths[u] + (x,) + tuple(-y for y in reversed(paths[v]))
        out.append(reduce(letters, graph.rank))
    return out


def _check_same_rank(g1: CoreGraph, g2: CoreGraph) -> None:
    if g1.rank != g2.rank:
        raise RankError(f"alphabet mismatch: ranks {g1.rank} and {g2.rank}")


def join(g1: CoreGraph, g2: CoreGraph) -> CoreGraph:
    """Core graph of the subgroup generated by both."""
    _check_same_rank(g1, g2)
    shift = g1.num_vertices
    edges = list(g1.edges) + [(x, u + shift, v + shift) for x, u, v in g2.edges]
    return build_core(
        g1.rank, shift + g2.num_vertices, edges, g1.basepoint, identify=[(g1.basepoint, g2.basepoint + shift)]
    )


def contains(big: CoreGraph, small: CoreGraph) -> bool:
    """True iff the subgroup of ``small`` lies inside the subgroup of ``big``."""
    _check_same_rank(big, small)
    return all(accepts(big, w) for w in basis(small))


def finite_index(graph: CoreGraph, alphabet: Alphabet | int | None = None) -> int | None:
    """Index in the free group of the given rank, or None when the index is infinite."""
    r = graph.rank if alphabet is None else _as_alphabet(alphabet).rank
    if r < graph.rank and any(x > r for x, _, _ in graph.edges):
        raise RankError("graph uses letters outside the given alphabet")
    outs = graph.out_maps
    for x in range(1, r + 1):
        if x > graph.rank or len(outs[x]) != graph.num_vertices:
            return None
    return graph.num_vertices


def conjugate(graph: CoreGraph, x: Word) -> CoreGraph:
    """Core graph of x H x^-1, built from the conjugated basis."""
    return from_generators([conjugate_word(w, x) for w in basis(graph)], graph.rank)


def is_folded(graph: CoreGraph | RawGraph) -> bool:
    seen_out, seen_in = set(), set()
    for x, u, v in graph.edges:
        if (x, u) in seen_out or (x, v) in seen_in:
            return False
        seen_out.add((x, u))
        seen_in.add((x, v))
    return True


def validate(graph: CoreGraph) -> CoreGraph:
    """Check every core-graph invariant; returns the graph or raises GraphValidationError."""
    n = graph.num_vertices
    if n < 1:
        raise GraphValidationError("graph needs at least the basepoint")
    if graph.basepoint != 0:
        raise GraphValidationError("basepoint must be vertex 0")
    for x, u, v in graph.edges:
        if not 1 <= x <= graph.rank:
            raise GraphValidationError(f"edge letter {x} outside 1..{graph.rank}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphValidationError(f"edge ({x}, {u}, {v}) references a missing vertex")
    if len(set(graph.edges)) != len(graph.edges):
        raise GraphValidationError("duplicate edge")
    if not is_folded(graph):
        raise GraphValidationError("graph is not folded")
    reach, _ = _canonical_numbering(graph.rank, graph.edges, 0)
    if reach != n:
        raise GraphValidationError("graph is not connected from the basepoint")
    for u in range(1, n):
        if graph.degree(u) < 2:
            raise GraphValidationError(f"vertex {u} has degree < 2 (graph is not trimmed)")
    return graph


# --------------------------------------------------------------------------
# serialization


def to_dict(graph: CoreGraph) -> dict:
    return {
        "rank": graph.rank,
        "vertices": graph.num_vertices,
        "basepoint": graph.basepoint,
        "edges": [list(e) for e in sorted(graph.edges, key=lambda e: (e[0], e[1], e[2]))],
    }


def to_json(graph: CoreGraph) -> str:
    return json.dumps(to_dict(graph))


def from_dict(doc) -> CoreGraph:
    try:
        r = doc["rank"]
        n = doc["vertices"]
        base = doc.get("basepoint", 0)
        edges = tuple(sorted(tuple(int(c) for c in e) for e in doc["edges"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphFormatError(f"malformed graph document: {exc}") from exc
    if any(len(e) != 3 for e in edges):
        raise GraphFormatError("each edge must be [letter, from, to]")
    if not isinstance(r, int) or not isinstance(n, int):
        raise GraphFormatError("rank and vertices must be integers")
    try:
        Alphabet(r)
    except RankError as exc:
        raise GraphValidationError(str(exc)) from exc
    return validate(CoreGraph(r, n, edges, base))


def from_json(text: str) -> CoreGraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"invalid JSON: {exc}") from exc
    return from_dict(doc)


def to_dot(graph: CoreGraph, name: str = "core") -> str:
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    for u in range(graph.num_vertices):
        shape = "doublecircle" if u == graph.basepoint else "circle"
        lines.append(f'  {u} [shape={shape}, label="{u}"];')
    for x, u, v in graph.edges:
        lines.append(f'  {u} -> {v} [label="{letter_char(x)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
