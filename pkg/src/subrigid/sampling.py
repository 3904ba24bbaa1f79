"""Seeded random subgroups and test corpora."""

from __future__ import annotations

import random

from .stallings import CoreGraph, from_generators
from .words import Alphabet, Word, random_reduced_word


def random_generators(rng: random.Random, rank: int, max_gens: int = 3, max_len: int = 6) -> list[Word]:
    alphabet = Alphabet(rank)
    k = rng.randint(1, max_gens)
    return [random_reduced_word(rng.randint(1, max_len), alphabet, rng) for _ in range(k)]


def random_subgroup(rng: random.Random, rank: int, max_gens: int = 3, max_len: int = 6) -> CoreGraph:
    return from_generators(random_generators(rng, rank, max_gens, max_len), rank)


def corpus(
    seed: int,
    size: int = 300,
    ranks: tuple[int, ...] = (2, 3),
    max_vertices: int = 8,
    max_gens: int = 3,
    max_len: int = 5,
) -> list[CoreGraph]:
    """``size`` distinct nontrivial subgroups whose core graphs have at most ``max_vertices`` vertices."""
    rng = random.Random(seed)
    out: list[CoreGraph] = []
    seen = set()
    while len(out) < size:
        g = random_subgroup(rng, rng.choice(ranks), max_gens, max_len)
        if g.is_trivial() or g.num_vertices > max_vertices or g in seen:
            continue
        seen.add(g)
        out.append(g)
    return out
