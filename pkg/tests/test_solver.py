import random

import pytest

from graftkit import (
    CapacityError,
    Graft,
    InputError,
    Multigraph,
    SolverLimits,
    best_min_join,
    distance,
    find_any_join,
    is_join,
    min_join,
    min_join_oracle,
    relative_weight,
    shortest_path,
    verify_minimum,
)

from conftest import (
    all_circuits,
    all_joins,
    brute_distance,
    brute_min_join_size,
    c4_graph,
    mg,
    random_test_graft,
)


def c4_all_terminals() -> Graft:
    g = c4_graph()
    return Graft(g, g.vertices)


def test_find_any_join_trivial_cases(path3):
    assert find_any_join(Graft(path3.graph, frozenset())) == frozenset()
    uv = Graft(mg(["u", "v"], {"uv": ("u", "v")}), frozenset(["u", "v"]))
    assert find_any_join(uv) == {"uv"}


def test_find_any_join_is_a_join():
    for seed in range(50):
        g = random_test_graft(seed)
        assert is_join(g, find_any_join(g))


def test_oracle_path3(path3):
    res = min_join_oracle(path3)
    assert res.size == 1 and res.join == {"ab"} and res.method == "oracle"


def test_oracle_c4_all_terminals():
    res = min_join_oracle(c4_all_terminals())
    assert res.size == 2  # frozen: brute enumeration gives a 2-edge matching
    assert res.join in ({"e1", "e3"}, {"e2", "e4"})


def test_oracle_empty_terminals():
    assert min_join_oracle(Graft(c4_graph(), frozenset())).size == 0


def test_oracle_ties_break_lexicographically():
    g = mg(["u", "v"], {"e1": ("u", "v"), "e2": ("u", "v")})
    res = min_join_oracle(Graft(g, frozenset(["u", "v"])))
    assert res.join == {"e1"}


def test_matching_solver_examples(path3):
    assert min_join(path3).size == 1
    assert min_join(c4_all_terminals()).size == 2
    star = Graft(
        mg(["r", "x", "y"], {"rx": ("r", "x"), "ry": ("r", "y")}), frozenset(["x", "y"])
    )
    res = min_join(star)
    assert res.join == {"rx", "ry"} and res.size == 2 and res.method == "matching"


def test_solvers_agree_with_brute_force():
    for seed in range(80):
        g = random_test_graft(seed, max_vertices=7, max_extra=3)
        expected = brute_min_join_size(g)
        assert min_join(g).size == expected
        assert min_join_oracle(g).size == expected


def test_solvers_agree_on_random_grafts():
    for seed in range(150):
        g = random_test_graft(seed + 1000, max_vertices=10, max_extra=4, max_terminals=8)
        assert min_join(g).size == min_join_oracle(g).size


def test_capacity_errors_are_typed(path3):
    with pytest.raises(CapacityError):
        min_join_oracle(c4_all_terminals(), SolverLimits(max_cyclomatic=0))
    with pytest.raises(CapacityError):
        min_join(c4_all_terminals(), SolverLimits(max_terminals=2))
    with pytest.raises(CapacityError):
        best_min_join(c4_all_terminals(), SolverLimits(max_cyclomatic=0, max_terminals=1))


def test_verify_minimum_accepts_solver_output(path3):
    res = min_join(path3)
    assert verify_minimum(path3, res.join)
    assert verify_minimum(Graft(path3.graph, frozenset()), frozenset())


def test_verify_minimum_rejects_padded_join():
    g = Graft(c4_graph(), frozenset())
    padded = frozenset(c4_graph().edges)  # the whole 4-cycle: a join of weight -4
    assert is_join(g, padded)
    assert not verify_minimum(g, padded)


def test_verify_minimum_requires_a_join(path3):
    with pytest.raises(InputError):
        verify_minimum(path3, frozenset({"ra"}))


def test_minimumjoin_circuit_condition_both_directions():
    # F minimum <=> no circuit is negative, on instances small enough to
    # enumerate every join and every circuit
    for seed in range(40):
        g = random_test_graft(seed + 77, max_vertices=6, max_extra=3)
        if len(g.graph.edges) > 10:
            continue
        joins = all_joins(g)
        nu = min(len(j) for j in joins)
        circuits = all_circuits(g.graph)
        for join in joins:
            minimal = len(join) == nu
            negative = [c for c in circuits if relative_weight(join, c) < 0]
            assert minimal == (not negative), (seed, sorted(join))
            assert verify_minimum(g, join) == minimal


def test_distance_single_edge_is_minus_one():
    uv = Graft(mg(["u", "v"], {"uv": ("u", "v")}), frozenset(["u", "v"]))
    res = distance(uv, frozenset({"uv"}), "u", "v")
    assert res.distance == -1
    assert res.witness.edges == ("uv",)


def test_distance_path3_values(path3):
    join = min_join(path3).join
    assert distance(path3, join, "a", "r").distance == 1
    assert distance(path3, join, "b", "r").distance == 0
    assert distance(path3, join, "r", "r").distance == 0


def test_distance_requires_minimum_join(path3):
    with pytest.raises(InputError):
        distance(path3, frozenset({"ra", "ab"}), "a", "r")  # not a join at all
    g = Graft(c4_graph(), frozenset())
    with pytest.raises(InputError):
        distance(g, frozenset(c4_graph().edges), "a1", "a2")  # a join, not minimum


def test_distance_rejects_cross_component():
    g = Graft(mg(["a", "b", "c", "d"], {"e1": ("a", "b"), "e2": ("c", "d")}), frozenset())
    with pytest.raises(InputError):
        distance(g, frozenset(), "a", "c")


def test_distance_matches_brute_force_and_is_symmetric():
    checked = 0
    for seed in range(60):
        g = random_test_graft(seed + 300, max_vertices=7, max_extra=3)
        join = best_min_join(g).join
        from graftkit import connected_components

        for comp in connected_components(g.graph):
            vs = sorted(comp)
            for i, u in enumerate(vs):
                for v in vs[i:]:
                    d = distance(g, join, u, v, precheck=False).distance
                    expected = 0 if u == v else brute_distance(g.graph, join, u, v)
                    assert d == expected, (seed, u, v)
                    assert d == distance(g, join, v, u, precheck=False).distance
                    checked += 1
    assert checked > 200


def test_shortest_path_examples(path3):
    join = min_join(path3).join
    p = shortest_path(path3, join, "b", "r")
    assert p.vertices == ("b", "a", "r")
    assert relative_weight(join, p) == 0
    assert shortest_path(path3, join, "r", "r").is_trivial


def test_shortest_path_weight_equals_distance_always():
    for seed in range(40):
        g = random_test_graft(seed + 900, max_vertices=8, max_extra=4)
        join = best_min_join(g).join
        vs = sorted(g.graph.vertices)
        from graftkit import connected_components

        comp_of = {}
        for comp in connected_components(g.graph):
            for v in comp:
                comp_of[v] = comp
        for u in vs[:4]:
            for v in vs[:4]:
                if comp_of[u] is not comp_of[v]:
                    continue
                res = distance(g, join, u, v, precheck=False)
                assert relative_weight(join, res.witness) == res.distance


def test_minimum_join_of_factorizable_all_terminal_graft_is_perfect_matching():
    rng = random.Random(5)
    for _ in range(30):
        # build a graph on an even vertex set around a planted perfect matching
        n = rng.randrange(2, 9, 2)
        names = [f"v{i}" for i in range(n)]
        edges = {}
        for i in range(0, n, 2):
            edges[f"m{i}"] = (names[i], names[i + 1])
        for k in range(rng.randint(0, 5)):
            u, v = rng.sample(names, 2)
            edges[f"x{k}"] = (u, v)
        g = Graft(Multigraph(names, edges), frozenset(names))
        res = best_min_join(g)
        assert res.size == n // 2
        touched = set()
        for e in res.join:
            u, v = g.graph.endpoints(e)
            assert u not in touched and v not in touched
            touched.update((u, v))


def test_solver_determinism(path3):
    a = min_join_oracle(path3)
    b = min_join_oracle(path3)
    assert a == b
    c = min_join(path3)
    d = min_join(path3)
    assert c == d
