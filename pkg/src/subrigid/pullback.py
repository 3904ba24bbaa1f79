"""Product (pullback) graphs of two core graphs.

The product of core(U) and core(H) has vertex set V(U) x V(H) and an x-edge
(u, h) -> (u', h') whenever both factors have the corresponding x-edges.  Its
basepoint component is the core graph of U and H intersected; every other
component with nonzero Betti number corresponds to one double coset UxH with
U ∩ xHx^-1 nontrivial, and that Betti number is the rank of the intersection.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .stallings import CoreGraph, _check_same_rank, build_core, reduced_rank


@dataclass(frozen=True)
class Component:
    vertices: tuple[tuple[int, int], ...]
    num_edges: int

    @property
    def betti(self) -> int:
        return self.num_edges - len(self.vertices) + 1


@dataclass(frozen=True)
class ProductGraph:
    left: CoreGraph
    right: CoreGraph
    edges: tuple[tuple[int, tuple[int, int], tuple[int, int]], ...]
    components: tuple[Component, ...]

    def component_of(self, vertex: tuple[int, int]) -> Component:
        for c in self.components:
            if vertex in c.vertices:
                return c
        raise KeyError(vertex)


@dataclass(frozen=True)
class Certificate:
    holds: bool
    sum: int
    bound: int
    components: list[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"sum": self.sum, "bound": self.bound, "holds": self.holds, "components": list(self.components)}


def product(gU: CoreGraph, gH: CoreGraph) -> ProductGraph:
    _check_same_rank(gU, gH)
    nh = gH.num_vertices
    n = gU.num_vertices * nh
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    edges = []
    for x in range(1, gU.rank + 1):
        hx = gH.out_maps[x]
        for u, u2 in sorted(gU.out_maps[x].items()):
            for h, h2 in sorted(hx.items()):
                a, b = u * nh + h, u2 * nh + h2
                edges.append((x, (u, h), (u2, h2)))
                ra, rb = find(a), find(b)
                if ra != rb:
                    # smaller root wins so the root is the least vertex of its class
                    if ra < rb:
                        parent[rb] = ra
                    else:
                        parent[ra] = rb

    members: dict[int, list[tuple[int, int]]] = {}
    for i in range(n):
        members.setdefault(find(i), []).append(divmod(i, nh))
    counts = dict.fromkeys(members, 0)
    for _, (u, h), _ in edges:
        counts[find(u * nh + h)] += 1
    comps = tuple(Component(tuple(members[r]), counts[r]) for r in sorted(members))
    return ProductGraph(gU, gH, tuple(edges), comps)


def intersect(gU: CoreGraph, gH: CoreGraph) -> CoreGraph:
    """Core graph of the intersection of the two subgroups."""
    _check_same_rank(gU, gH)
    nh = gH.num_vertices
    edges = []
    for x in range(1, gU.rank + 1):
        hx = gH.out_maps[x]
        for u, u2 in gU.out_maps[x].items():
            for h, h2 in hx.items():
                edges.append((x, u * nh + h, u2 * nh + h2))
    # product of folded graphs is folded; build_core keeps the basepoint component and trims
    return build_core(gU.rank, gU.num_vertices * nh, edges, gU.basepoint * nh + gH.basepoint)


def coset_component_ranks(gU: CoreGraph, gH: CoreGraph) -> list[int]:
    """Betti numbers of all product components, ordered by least vertex."""
    return [c.betti for c in product(gU, gH).components]


def strong_inert_sum(gU: CoreGraph, gH: CoreGraph) -> int:
    return sum(max(b - 1, 0) for b in coset_component_ranks(gU, gH))


def check_strong_inert(gU: CoreGraph, gH: CoreGraph) -> Certificate:
    ranks = coset_component_ranks(gU, gH)
    s = sum(max(b - 1, 0) for b in ranks)
    bound = reduced_rank(gU)
    return Certificate(s <= bound, s, bound, ranks)


def hanna_neumann_check(gU: CoreGraph, gH: CoreGraph) -> Certificate:
    ranks = coset_component_ranks(gU, gH)
    s = sum(max(b - 1, 0) for b in ranks)
    bound = reduced_rank(gU) * reduced_rank(gH)
    return Certificate(s <= bound, s, bound, ranks)
