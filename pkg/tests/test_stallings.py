import json
import random

import pytest

from subrigid import oracles
from subrigid.campaigns import random_complete_graph, random_unfolded_graph, shuffled
from subrigid.sampling import random_generators, random_subgroup
from subrigid.stallings import (
    CoreGraph,
    GraphFormatError,
    GraphValidationError,
    RawGraph,
    accepts,
    basis,
    bouquet_of_words,
    build_core,
    canonical,
    contains,
    finite_index,
    fold,
    from_generators,
    from_json,
    full_bouquet,
    join,
    rank,
    reduced_rank,
    to_dot,
    to_json,
    trim,
    trivial,
    validate,
)
from subrigid.words import Alphabet, concat, random_reduced_word

from conftest import sg, w


def test_from_generators_examples():
    g = sg("a", "a")
    assert (g.num_vertices, g.num_edges, rank(g)) == (1, 1, 1)
    g = sg("a", "b")
    assert (g.num_vertices, g.edges, rank(g)) == (1, ((1, 0, 0), (2, 0, 0)), 2)
    g = sg("aa", "ab")
    # naive fold oracle: 2 vertices, 3 edges
    assert (g.num_vertices, g.num_edges, rank(g)) == (2, 3, 2)
    assert g == oracles.naive_from_generators([w("aa"), w("ab")], 2)


def test_empty_generators_give_trivial():
    assert from_generators([], 2) == trivial(2)
    assert sg("") == trivial(2)
    assert sg("aA") == trivial(2)


def test_fold_examples():
    g = sg("aab", "bA")
    assert fold(g) == g
    loops = RawGraph(1, 1, ((1, 0, 0), (1, 0, 0)))
    assert fold(loops).edges == ((1, 0, 0),)
    raw = bouquet_of_words([w("aa"), w("ab")], 2)
    assert len(raw.edges) == 4
    assert fold(raw).num_edges == 3


def test_trim_examples():
    g = sg("abAB", "bbb")
    assert trim(g) == g
    # a-loop at 0 with a dangling path 0 -b-> 1 -b-> 2
    raw = RawGraph(2, 3, ((1, 0, 0), (2, 0, 1), (2, 1, 2)))
    folded = fold(raw)
    assert folded.num_vertices == 3
    assert trim(folded) == sg("a")


def test_trim_keeps_membership_on_dead_branch():
    # a loop "ab" at the basepoint, plus a branch reached by A that dies off
    raw = RawGraph(2, 5, ((1, 0, 1), (2, 1, 0), (1, 2, 0), (2, 3, 2), (1, 4, 3)))
    folded = fold(raw)
    trimmed = trim(folded)
    assert trimmed.num_vertices < folded.num_vertices
    rng = random.Random(4)
    for _ in range(100):
        u = random_reduced_word(rng.randint(0, 8), Alphabet(2), rng)
        assert accepts(folded, u) == accepts(trimmed, u)


def test_rank_examples():
    assert rank(trivial(3)) == 0
    assert rank(full_bouquet(3)) == 3
    g = sg("aa", "bb", "abab")
    ref = oracles.naive_from_generators([w("aa"), w("bb"), w("abab")], 2)
    assert rank(g) == ref.num_edges - ref.num_vertices + 1 == 3


def test_reduced_rank():
    assert reduced_rank(trivial(2)) == 0
    assert reduced_rank(sg("ab")) == 0
    assert reduced_rank(full_bouquet(3)) == 2
    assert reduced_rank(5) == 4


def test_accepts_examples():
    assert accepts(sg("a"), w("a"))
    assert not accepts(sg("a"), w("b"))
    H = sg("aa", "ab")
    assert accepts(H, w("aB")) == oracles.join_member(H, w("aB"))
    assert not accepts(H, w("aB"))
    assert accepts(H, w("aaBA"))  # (aa)(ab)^-1
    assert not accepts(sg("a", rank=1), w("ab"))


def test_basis_examples():
    assert [str(x) for x in basis(full_bouquet(2))] == ["a", "b"]
    assert basis(trivial(2)) == []


def test_basis_round_trip():
    rng = random.Random(0)
    for _ in range(500):
        H = random_subgroup(rng, rng.choice((2, 3)))
        b = basis(H)
        assert len(b) == rank(H)
        assert from_generators(b, H.rank) == H


def test_canonical_examples():
    g = sg("ab", "aab")
    assert canonical(canonical(g)) == canonical(g)
    assert from_generators(basis(g), 2).key() == g.key()


def test_canonical_relabel_invariance():
    rng = random.Random(1)
    for _ in range(200):
        g = random_subgroup(rng, 3)
        perm = list(range(g.num_vertices))
        rng.shuffle(perm)
        moved = CoreGraph(g.rank, g.num_vertices, tuple(sorted((x, perm[u], perm[v]) for x, u, v in g.edges)),
                          perm[0])
        assert canonical(moved) == g


def test_join_examples():
    assert join(sg("a"), sg("b")) == full_bouquet(2)
    H = sg("aab", "bAb")
    assert join(H, H) == H
    assert join(sg("aa"), sg("aaa")) == sg("a") == oracles.naive_from_generators([w("aa"), w("aaa")], 2)


def test_contains_examples():
    assert contains(sg("a"), sg("aa"))
    assert not contains(sg("aa"), sg("a"))
    rng = random.Random(2)
    for _ in range(50):
        assert contains(full_bouquet(2), random_subgroup(rng, 2))


def test_finite_index_examples():
    assert finite_index(full_bouquet(2)) == 1
    # complete graph on two vertices: a and b both swap 0 and 1
    g = validate(CoreGraph(2, 2, ((1, 0, 1), (1, 1, 0), (2, 0, 1), (2, 1, 0))))
    assert finite_index(g, 2) == 2
    assert rank(g) == 1 + 2 * (2 - 1) == g.num_edges - g.num_vertices + 1 == 3
    assert finite_index(sg("aa"), 2) is None


def test_json_round_trip():
    rng = random.Random(3)
    for _ in range(100):
        g = random_subgroup(rng, 3)
        assert from_json(to_json(g)) == g
    doc = json.loads(to_json(trivial(2)))
    assert doc == {"rank": 2, "vertices": 1, "basepoint": 0, "edges": []}


def test_json_schema_sorted_edges():
    doc = json.loads(to_json(sg("aa", "bb", "abab")))
    assert set(doc) == {"rank", "vertices", "basepoint", "edges"}
    assert doc["edges"] == sorted(doc["edges"])
    assert all(1 <= e[0] <= doc["rank"] for e in doc["edges"])


@pytest.mark.parametrize(
    "doc",
    [
        {"rank": 1, "vertices": 2, "basepoint": 0, "edges": [[1, 0, 1], [1, 0, 0], [1, 1, 0]]},  # two a-edges out of 0
        {"rank": 1, "vertices": 2, "basepoint": 0, "edges": [[1, 0, 0]]},  # vertex 1 unreachable
        {"rank": 1, "vertices": 2, "basepoint": 0, "edges": [[1, 0, 1]]},  # vertex 1 has degree 1
        {"rank": 1, "vertices": 1, "basepoint": 0, "edges": [[2, 0, 0]]},  # letter outside alphabet
    ],
)
def test_json_validation_errors(doc):
    with pytest.raises(GraphValidationError):
        from_json(json.dumps(doc))


@pytest.mark.parametrize("text", ["{", "[]", '{"rank": 1}', '{"rank": 1, "vertices": 1, "edges": [[1, 0]]}'])
def test_json_format_errors(text):
    with pytest.raises(GraphFormatError):
        from_json(text)


def test_dot_export():
    dot = to_dot(sg("aa", "ab"))
    assert dot.startswith("digraph")
    assert "0 [shape=doublecircle" in dot
    assert '[label="b"]' in dot
    assert dot.count("->") == 3


def test_fold_confluence():
    rng = random.Random(5)
    for _ in range(500):
        raw = random_unfolded_graph(rng, rng.randint(1, 3), rng.randint(1, 7), rng.randint(0, 10))
        ref = trim(fold(raw))
        for _ in range(3):
            assert trim(fold(shuffled(rng, raw))) == ref
        assert ref == oracles.naive_core(raw.rank, raw.num_vertices, raw.edges, raw.basepoint)


def test_membership_soundness():
    rng = random.Random(6)
    for _ in range(200):
        r = rng.choice((2, 3))
        gens = random_generators(rng, r)
        H = from_generators(gens, r)
        u = random_reduced_word(0, Alphabet(r), rng)
        for _ in range(rng.randint(0, 20)):
            g = rng.choice(gens)
            u = concat(u, g if rng.random() < 0.5 else ~g)
        assert accepts(H, u)
        v = random_reduced_word(rng.randint(1, 8), Alphabet(r), rng)
        assert accepts(H, v) == oracles.join_member(H, v)


def test_nielsen_schreier_on_complete_graphs():
    rng = random.Random(7)
    seen = 0
    for n in range(1, 7):
        for r in range(1, 4):
            for _ in range(30):
                g = random_complete_graph(rng, n, r)
                if g is None:
                    continue
                seen += 1
                validate(g)
                assert finite_index(g) == n
                assert rank(g) == 1 + n * (r - 1)
    assert seen > 300


def test_subgroup_faithfulness():
    rng = random.Random(8)
    for _ in range(300):
        g1 = random_subgroup(rng, 2, max_len=4)
        g2 = from_generators(basis(g1), 2) if rng.random() < 0.3 else random_subgroup(rng, 2, max_len=4)
        assert (contains(g1, g2) and contains(g2, g1)) == (g1 == g2)


def test_build_core_identify_matches_partition_oracle():
    g = sg("aa", "bb", "abab")
    q = build_core(2, g.num_vertices, g.edges, identify=[(0, 3)])
    assert q in oracles.all_partition_quotients(g)
