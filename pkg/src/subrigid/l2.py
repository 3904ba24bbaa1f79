"""L²-Betti invariants of the pair (H, F) and the predicates they decide.

With π̄ the minimum overgroup rank, the augmentation-ideal quotient of the
pair has first L²-Betti number rk(H) - π̄ and zeroth rk(F) - π̄.  Compressed,
inert and strongly inert all coincide with the first Betti number vanishing;
strictly compressed coincides with H being its own L²-closure.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass

from .overgroups import crit, enumerate_quotients, pi_bar
from .pullback import intersect
from .sampling import random_subgroup
from .stallings import CoreGraph, basis, canonical, rank
from .words import RankError, Word


@dataclass(frozen=True)
class L2Report:
    ambient_rank: int
    subgroup_rank: int
    pi_bar: int
    beta0: int
    beta1: int
    chi: int
    compressed: bool
    strictly_compressed: bool
    l2_closed: bool
    closure_basis: list[Word]

    def to_dict(self) -> dict:
        d = asdict(self)
        d["closure_basis"] = [str(w) for w in self.closure_basis]
        return d


def _check_ambient(gH: CoreGraph, ambient_rank: int) -> None:
    used = max(gH.letters_used(), default=0)
    if ambient_rank < max(used, 1):
        raise RankError(f"ambient rank {ambient_rank} is smaller than the largest letter used ({used})")


def betti_pair(gH: CoreGraph, ambient_rank: int) -> tuple[int, int]:
    _check_ambient(gH, ambient_rank)
    p = pi_bar(gH)
    return ambient_rank - p, rank(gH) - p


def is_compressed(gH: CoreGraph) -> bool:
    return pi_bar(gH) == rank(gH)


def is_strictly_compressed(gH: CoreGraph) -> bool:
    """Every proper quotient overgroup has strictly larger rank."""
    r = rank(gH)
    return all(rank(m) > r for m in enumerate_quotients(gH).members if m != gH)


def analyze(gH: CoreGraph, ambient_rank: int) -> L2Report:
    _check_ambient(gH, ambient_rank)
    cs = crit(gH)
    r = rank(gH)
    closed = canonical(cs.closure) == canonical(gH)
    return L2Report(
        ambient_rank=ambient_rank,
        subgroup_rank=r,
        pi_bar=cs.pi_bar,
        beta0=ambient_rank - cs.pi_bar,
        beta1=r - cs.pi_bar,
        chi=ambient_rank - r,
        compressed=cs.pi_bar == r,
        strictly_compressed=is_strictly_compressed(gH),
        l2_closed=closed,
        closure_basis=basis(cs.closure),
    )


def inertness_witness(
    gH: CoreGraph, trials: int = 100, max_len: int = 10, seed: int = 0
) -> CoreGraph | None:
    """An overgroup L with rk(H ∩ L) > rk(L), or None.

    For non-compressed H this is the first minimum-rank quotient.  For
    compressed H, ``trials`` random subgroups are tested and a violating one
    is returned if found (which would contradict compressed => inert).
    """
    if not is_compressed(gH):
        qs = enumerate_quotients(gH)
        p = qs.min_rank
        return next(m for m in qs.sorted_members() if rank(m) == p)
    rng = random.Random(seed)
    for _ in range(trials):
        L = random_subgroup(rng, gH.rank, max_len=max_len)
        if rank(intersect(gH, L)) > rank(L):
            return L
    return None
