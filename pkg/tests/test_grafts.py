import random

import pytest
from hypothesis import given, strategies as st

from graftkit import (
    BipartiteGraft,
    Graft,
    InputError,
    Multigraph,
    bipartite_graft_sum,
    classify_balanced_path,
    graft_sum,
    is_balanced_path,
    is_graft,
    is_join,
    make_path,
    relate_ear,
    relative_weight,
    rooted_base,
    single_vertex_graft,
)

from conftest import mg, random_test_graft


def test_is_graft_examples():
    uv = mg(["u", "v"], {"uv": ("u", "v")})
    assert is_graft(uv, {"u", "v"})
    assert not is_graft(uv, {"u"})
    two = mg(["a", "b", "c", "d"], {"e1": ("a", "b"), "e2": ("c", "d")})
    # one terminal per component has the right total parity but wrong per-component parity
    assert not is_graft(two, {"a", "c"})
    assert is_graft(two, {"a", "b"})
    with pytest.raises(InputError):
        is_graft(uv, {"zz"})


def test_graft_constructor_enforces_parity():
    with pytest.raises(InputError):
        Graft(mg(["u", "v"], {"uv": ("u", "v")}), frozenset(["u"]))


def test_is_join_degree_table(path3):
    assert is_join(path3, {"ab"})
    assert not is_join(path3, {"ra"})  # r picks up odd degree but is not terminal
    empty = Graft(path3.graph, frozenset())
    assert is_join(empty, frozenset())


def test_graft_sum_with_single_vertex(path3):
    base = single_vertex_graft("r")
    summed = graft_sum(base, path3)
    assert summed.graph == path3.graph
    assert summed.terminals == path3.terminals


def test_graft_sum_symmetric_difference():
    g1 = Graft(mg(["x", "y"], {"e1": ("x", "y")}), frozenset(["x", "y"]))
    g2 = Graft(mg(["y", "z"], {"e2": ("y", "z")}), frozenset(["y", "z"]))
    assert graft_sum(g1, g2).terminals == {"x", "z"}


def test_graft_sum_rejects_duplicate_edge_ids():
    g1 = Graft(mg(["x", "y"], {"e": ("x", "y")}), frozenset(["x", "y"]))
    g2 = Graft(mg(["y", "z"], {"e": ("y", "z")}), frozenset(["y", "z"]))
    with pytest.raises(InputError):
        graft_sum(g1, g2)


def test_bipartite_sum_rejects_class_clash():
    b1 = BipartiteGraft(
        Graft(mg(["x", "y"], {"e1": ("x", "y")}), frozenset()), frozenset("x"), frozenset("y")
    )
    b2 = BipartiteGraft(
        Graft(mg(["y", "z"], {"e2": ("y", "z")}), frozenset()), frozenset("y"), frozenset("z")
    )
    with pytest.raises(InputError):
        bipartite_graft_sum(b1, b2)


def test_union_of_joins_is_join_of_sum():
    # edge-disjoint operands: a join of each side unions into a join of the sum
    rng = random.Random(41)
    for trial in range(60):
        g1 = random_test_graft(rng.randrange(10**6), max_vertices=6)
        g2raw = random_test_graft(rng.randrange(10**6), max_vertices=6)
        rename_v = {v: f"w{v}" for v in g2raw.graph.vertices}
        shared = sorted(g1.graph.vertices)[0]
        # share one vertex between the operands, keeping classesless sums legal
        victim = sorted(g2raw.graph.vertices)[0]
        rename_v[victim] = shared
        edges = {
            f"x{eid}": (rename_v[u], rename_v[v]) for eid, (u, v) in g2raw.graph.edges.items()
        }
        g2 = Graft(
            Multigraph({rename_v[v] for v in g2raw.graph.vertices}, edges),
            frozenset(rename_v[t] for t in g2raw.terminals),
        )
        from graftkit import find_any_join

        f1, f2 = find_any_join(g1), find_any_join(g2)
        summed = graft_sum(g1, g2)
        assert is_join(summed, f1 | f2)


def test_relative_weight_examples(path3):
    assert relative_weight({"ab"}, ["ab"]) == -1
    p = make_path(path3.graph, ("r", "a", "b"), ("ra", "ab"))
    assert relative_weight({"ab"}, p) == 0
    assert relative_weight({"ab"}, []) == 0


@given(st.integers(0, 2**30))
def test_relative_weight_additive_over_disjoint_sets(seed):
    rng = random.Random(seed)
    ids = [f"e{i}" for i in range(10)]
    join = {e for e in ids if rng.random() < 0.5}
    cutpoint = rng.randint(0, 10)
    s1, s2 = ids[:cutpoint], ids[cutpoint:]
    assert relative_weight(join, ids) == relative_weight(join, s1) + relative_weight(join, s2)


def test_balanced_path_examples(fixture_f2):
    g = fixture_f2.graph
    p = make_path(g, ("r", "a", "b"), ("ra", "ab"))
    assert is_balanced_path(fixture_f2, p, {"ab"})  # no interior tooth vertex

    star = BipartiteGraft(
        Graft(
            mg(["b1", "a", "b2"], {"e1": ("b1", "a"), "e2": ("a", "b2")}),
            frozenset(),
        ),
        frozenset(["a"]),
        frozenset(["b1", "b2"]),
    )
    p2 = make_path(star.graph, ("b1", "a", "b2"), ("e1", "e2"))
    assert is_balanced_path(star, p2, frozenset())  # interior is spine: vacuous

    comb = BipartiteGraft(
        Graft(
            mg(["a1", "b", "a2"], {"e1": ("a1", "b"), "e2": ("b", "a2")}),
            frozenset(),
        ),
        frozenset(["a1", "a2"]),
        frozenset(["b"]),
    )
    p3 = make_path(comb.graph, ("a1", "b", "a2"), ("e1", "e2"))
    assert not is_balanced_path(comb, p3, frozenset())  # interior tooth with 0 join edges


def test_classify_balanced_path_fixture_cases(fixture_f2):
    g = fixture_f2.graph
    join = frozenset({"ab"})
    p = make_path(g, ("r", "a", "b"), ("ra", "ab"))
    verdict = classify_balanced_path(fixture_f2, p, join)
    assert verdict.end_sides == ("tooth", "tooth")
    assert verdict.weight == 0 and verdict.expected == 0 and verdict.ok

    p2 = make_path(g, ("a", "b"), ("ab",))
    verdict2 = classify_balanced_path(fixture_f2, p2, join)
    assert verdict2.weight == -1 and verdict2.expected == -1 and verdict2.ok


def test_classify_balanced_path_interior_tooth():
    g = mg(["a1", "b", "a2"], {"e1": ("a1", "b"), "e2": ("b", "a2")})
    bg = BipartiteGraft(
        Graft(g, frozenset(["a1", "b"])), frozenset(["a1", "a2"]), frozenset(["b"])
    )
    p = make_path(g, ("a1", "b", "a2"), ("e1", "e2"))
    verdict = classify_balanced_path(bg, p, frozenset({"e1"}))
    assert verdict.balanced and verdict.weight == 0 and verdict.ok


def test_relate_ear_shapes(fixture_f2):
    base = rooted_base("r")
    ear = BipartiteGraft(
        Graft(mg(["r", "a"], {"x1": ("r", "a")}), frozenset()),
        frozenset(["a"]),
        frozenset(["r"]),
    )
    rel = relate_ear(base, ear)
    assert rel.shape.kind == "straight" and rel.shape.bonds == ("r",)
    assert rel.far_end() == "a"

    with pytest.raises(InputError):
        # class clash: r is tooth in the base but spine in the ear
        bad = BipartiteGraft(
            Graft(mg(["r", "a"], {"x1": ("r", "a")}), frozenset()),
            frozenset(["r"]),
            frozenset(["a"]),
        )
        relate_ear(base, bad)

    with pytest.raises(InputError):
        # reused edge id
        relate_ear(
            fixture_f2,
            BipartiteGraft(
                Graft(mg(["r", "z"], {"ra": ("r", "z")}), frozenset()),
                frozenset(["z"]),
                frozenset(["r"]),
            ),
        )


def test_graft_sum_fold_terminal_symmetric_difference():
    rng = random.Random(7)
    pieces = []
    for i in range(4):
        names = [f"p{i}v{j}" for j in range(3)]
        edges = {f"p{i}e{j}": (names[j], names[j + 1]) for j in range(2)}
        ts = rng.choice([frozenset(), frozenset(names[:2])])
        pieces.append(Graft(Multigraph(names, edges), ts))
    acc = pieces[0]
    expect = set(pieces[0].terminals)
    for g in pieces[1:]:
        acc = graft_sum(acc, g)
        expect ^= set(g.terminals)
    assert acc.terminals == expect
