"""Seeded randomized checks of the structural laws, with replayable counterexamples.

Trial ``i`` of a campaign started with ``seed`` draws from ``Random(seed + i)``,
so a failing trial replays on its own with ``--seed seed+i --trials 1``.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

from . import oracles
from .l2 import analyze, is_compressed, is_strictly_compressed
from .overgroups import crit, crit_lattice_violations, enumerate_quotients, l2_closure, pi_bar
from .pullback import check_strong_inert, hanna_neumann_check, intersect, strong_inert_sum
from .sampling import corpus, random_subgroup
from .stallings import (
    CoreGraph,
    RawGraph,
    accepts,
    basis,
    build_core,
    contains,
    fold,
    join,
    rank,
    reduced_rank,
    trim,
)
from .words import Alphabet, concat, random_reduced_word


@dataclass
class CheckResult:
    name: str
    checked: int = 0
    violations: int = 0
    counterexample: dict | None = None
    seconds: float = 0.0
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def fail(self, certificate: dict) -> None:
        self.violations += 1
        if self.counterexample is None:
            self.counterexample = certificate

    def to_dict(self, timings: bool = False) -> dict:
        d = {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "violations": self.violations,
            "counterexample": self.counterexample,
        }
        if self.notes:
            d["notes"] = self.notes
        if timings:
            d["seconds"] = round(self.seconds, 3)
        return d


def _gens(g: CoreGraph) -> list[str]:
    return [str(w) for w in basis(g)]


def _replay(command: str, H: CoreGraph | None, rank_: int, seed: int) -> str:
    cmd = f"subrigid {command} --ambient-rank {rank_} --seed {seed} --trials 1"
    if H is not None:
        cmd += " -- " + " ".join(_gens(H))
    return cmd


def _timed(fn):
    def wrapper(*args, **kwargs):
        t = time.perf_counter()
        res = fn(*args, **kwargs)
        res.seconds = time.perf_counter() - t
        return res

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


# --------------------------------------------------------------------------
# checks driven from the command line


@_timed
def check_inert(
    H: CoreGraph | None, rank_: int, seed: int, trials: int, max_len: int = 10
) -> CheckResult:
    """Compressed H must satisfy rk(H ∩ L) <= rk(L); otherwise the min-rank quotient must break it."""
    res = CheckResult("check-inert")
    for i in range(trials):
        rng = random.Random(seed + i)
        h = H if H is not None else random_subgroup(rng, rank_)
        L = random_subgroup(rng, h.rank, max_len=max_len)
        res.checked += 1
        if is_compressed(h):
            lhs, rhs = rank(intersect(h, L)), rank(L)
            if lhs > rhs:
                res.fail({"H": _gens(h), "L": _gens(L), "seed": seed + i, "rank_intersection": lhs,
                          "rank_L": rhs, "replay": _replay("check-inert", H, h.rank, seed + i)})
        else:
            qs = enumerate_quotients(h)
            star = next(m for m in qs.sorted_members() if rank(m) == qs.min_rank)
            meet = rank(intersect(h, star))
            if not (meet == rank(h) > rank(star)):
                res.fail({"H": _gens(h), "L": _gens(star), "seed": seed + i, "rank_intersection": meet,
                          "rank_L": rank(star), "replay": _replay("check-inert", H, h.rank, seed + i)})
    return res


@_timed
def check_strong_inertness(
    H: CoreGraph | None, U: CoreGraph | None, rank_: int, seed: int, trials: int, max_len: int = 10
) -> CheckResult:
    """For compressed H, the double-coset sum never exceeds brk(U)."""
    res = CheckResult("check-strong-inert")
    for i in range(1 if U is not None else trials):
        rng = random.Random(seed + i)
        h = H if H is not None else random_subgroup(rng, rank_)
        u = U if U is not None else random_subgroup(rng, h.rank, max_len=max_len)
        cert = check_strong_inert(u, h)
        res.checked += 1
        if U is not None:
            res.notes = {"compressed": is_compressed(h), **cert.to_dict()}
        if not cert.holds and is_compressed(h):
            res.fail({"H": _gens(h), "U": _gens(u), "seed": seed + i, **cert.to_dict(),
                      "replay": _replay("check-strong-inert", H, h.rank, seed + i)})
    return res


@_timed
def check_crit_lattice(H: CoreGraph | None, rank_: int, seed: int, trials: int) -> CheckResult:
    """Crit is closed under meet and join, and its top contains every member."""
    res = CheckResult("check-crit-lattice")
    for i in range(1 if H is not None else trials):
        rng = random.Random(seed + i)
        h = H if H is not None else random_subgroup(rng, rank_, max_len=5)
        cs = crit(h)
        res.checked += 1
        bad = crit_lattice_violations(cs)
        extra = [m for m in cs.members if not contains(cs.closure, m)]
        if bad or extra or not contains(cs.closure, h) or l2_closure(cs.closure) != cs.closure:
            res.fail({"H": _gens(h), "seed": seed + i,
                      "violations": [[op, _gens(a), _gens(b)] for op, a, b in bad],
                      "replay": _replay("check-crit-lattice", H, h.rank, seed + i)})
    return res


# --------------------------------------------------------------------------
# selftest suites; ``n`` scales the amount of work


def suite_quotient_oracle(seed: int, n: int) -> CheckResult:
    res = CheckResult("quotients-vs-all-partitions")
    for g in corpus(seed, 30 * n, max_vertices=7):
        res.checked += 1
        if set(enumerate_quotients(g).members) != oracles.all_partition_quotients(g):
            res.fail({"H": _gens(g), "rank": g.rank})
    return res


def suite_pibar_soundness(seed: int, n: int) -> CheckResult:
    res = CheckResult("pibar-lower-bound")
    rng = random.Random(seed)
    for g in corpus(seed, 10 * n):
        p = pi_bar(g)
        for _ in range(10 * n):
            L = join(g, random_subgroup(rng, g.rank))
            res.checked += 1
            if rank(L) < p:
                res.fail({"H": _gens(g), "L": _gens(L), "pi_bar": p})
    return res


def suite_betti_identities(seed: int, n: int) -> CheckResult:
    res = CheckResult("betti-identities")
    for g in corpus(seed, 30 * n):
        rep = analyze(g, g.rank)
        res.checked += 1
        closure = l2_closure(g)
        if (rep.beta0 - rep.beta1 != g.rank - rank(g) or rank(closure) != rep.pi_bar
                or rep.compressed != (rep.beta1 == 0) or rep.l2_closed != rep.strictly_compressed):
            res.fail({"H": _gens(g), "report": rep.to_dict()})
    return res


def suite_compressed_inert(seed: int, n: int) -> CheckResult:
    res = check_inert(None, 2, seed, 30 * n)
    res.name = "compressed-iff-inert"
    return res


def suite_strong_inert(seed: int, n: int) -> CheckResult:
    res = CheckResult("compressed-strongly-inert")
    rng = random.Random(seed)
    for g in corpus(seed, 10 * n):
        if not is_compressed(g):
            continue
        for _ in range(10 * n):
            U = random_subgroup(rng, g.rank, max_len=10)
            res.checked += 1
            s = strong_inert_sum(U, g)
            if s > reduced_rank(U):
                res.fail({"H": _gens(g), "U": _gens(U), "sum": s, "bound": reduced_rank(U)})
    return res


def suite_crit_lattice(seed: int, n: int) -> CheckResult:
    res = CheckResult("crit-lattice")
    for g in corpus(seed, 20 * n):
        cs = crit(g)
        res.checked += 1
        if crit_lattice_violations(cs) or not all(contains(cs.closure, m) for m in cs.members):
            res.fail({"H": _gens(g)})
    return res


def suite_strictly_compressed(seed: int, n: int) -> CheckResult:
    res = CheckResult("strictly-compressed-iff-closed")
    for g in corpus(seed, 30 * n):
        res.checked += 1
        if is_strictly_compressed(g) != (l2_closure(g) == g):
            res.fail({"H": _gens(g)})
    return res


def suite_compressed_intersection(seed: int, n: int) -> CheckResult:
    res = CheckResult("compressed-intersection")
    rng = random.Random(seed)
    for _ in range(20 * n):
        r = rng.choice((2, 3))
        a = b = None
        while a is None or b is None:
            g = random_subgroup(rng, r, max_len=5)
            if g.num_vertices <= 8 and is_compressed(g):
                a, b = (g, None) if a is None else (a, g)
        res.checked += 1
        if not is_compressed(intersect(a, b)):
            res.fail({"H1": _gens(a), "H2": _gens(b)})
    return res


def suite_hanna_neumann(seed: int, n: int) -> CheckResult:
    res = CheckResult("hanna-neumann")
    rng = random.Random(seed)
    for _ in range(20 * n):
        r = rng.choice((2, 3))
        U, H = random_subgroup(rng, r, max_len=8), random_subgroup(rng, r, max_len=8)
        res.checked += 1
        cert = hanna_neumann_check(U, H)
        if not cert.holds:
            res.fail({"U": _gens(U), "H": _gens(H), **cert.to_dict()})
    return res


def random_complete_graph(rng: random.Random, n: int, r: int) -> CoreGraph | None:
    """Random connected complete graph (a finite-index subgroup) or None if disconnected."""
    edges = []
    for x in range(1, r + 1):
        perm = list(range(n))
        rng.shuffle(perm)
        edges += [(x, u, perm[u]) for u in range(n)]
    g = build_core(r, n, edges, trimmed=False)
    return g if g.num_vertices == n else None


def random_unfolded_graph(rng: random.Random, r: int, n: int, m: int) -> RawGraph:
    edges = [(rng.randint(1, r), rng.randrange(n), rng.randrange(n)) for _ in range(m)]
    return RawGraph(r, n, tuple(edges))


def shuffled(rng: random.Random, g: RawGraph) -> RawGraph:
    """Same graph with vertices relabeled and edges reordered."""
    perm = list(range(g.num_vertices))
    rng.shuffle(perm)
    edges = [(x, perm[u], perm[v]) for x, u, v in g.edges]
    rng.shuffle(edges)
    return RawGraph(g.rank, g.num_vertices, tuple(edges), perm[g.basepoint])


def suite_stallings(seed: int, n: int) -> CheckResult:
    res = CheckResult("stallings")
    rng = random.Random(seed)
    for _ in range(100 * n):
        r = rng.choice((2, 3))
        H = random_subgroup(rng, r)
        w = random_reduced_word(rng.randint(0, 8), Alphabet(r), rng)
        if rng.random() < 0.5:
            gens = basis(H)
            w = random_reduced_word(0, Alphabet(r), rng)
            for _ in range(rng.randint(0, 4)) if gens else ():
                g = rng.choice(gens)
                w = concat(w, g if rng.random() < 0.5 else ~g)
        res.checked += 1
        if accepts(H, w) != oracles.join_member(H, w):
            res.fail({"kind": "membership", "H": _gens(H), "word": str(w)})
    for _ in range(20 * n):
        r, k = rng.randint(1, 3), rng.randint(1, 6)
        g = random_complete_graph(rng, k, r)
        if g is None:
            continue
        res.checked += 1
        if rank(g) != 1 + k * (r - 1):
            res.fail({"kind": "nielsen-schreier", "graph": [list(e) for e in g.edges]})
    for _ in range(20 * n):
        raw = random_unfolded_graph(rng, rng.randint(1, 3), rng.randint(1, 6), rng.randint(0, 9))
        ref = trim(fold(raw))
        res.checked += 1
        if any(trim(fold(shuffled(rng, raw))) != ref for _ in range(3)):
            res.fail({"kind": "fold-confluence", "edges": [list(e) for e in raw.edges]})
    return res


SUITES: list[tuple[str, Callable[[int, int], CheckResult]]] = [
    ("stallings", suite_stallings),
    ("quotients-vs-all-partitions", suite_quotient_oracle),
    ("pibar-lower-bound", suite_pibar_soundness),
    ("betti-identities", suite_betti_identities),
    ("compressed-iff-inert", suite_compressed_inert),
    ("compressed-strongly-inert", suite_strong_inert),
    ("crit-lattice", suite_crit_lattice),
    ("strictly-compressed-iff-closed", suite_strictly_compressed),
    ("compressed-intersection", suite_compressed_intersection),
    ("hanna-neumann", suite_hanna_neumann),
]


def selftest(seed: int = 0, budget: int = 1) -> list[CheckResult]:
    """Run every suite at the given budget; budget 0 runs nothing."""
    out = []
    if budget <= 0:
        return out
    for _, suite in SUITES:
        out.append(_timed(suite)(seed, budget))
    return out
