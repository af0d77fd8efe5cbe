import pytest

from graftkit import (
    EarShape,
    GenConfig,
    Graft,
    InputError,
    best_min_join,
    cut,
    graft_odd_ear_decomposition,
    is_factor_critical_graft,
    is_factor_critical_graph,
    odd_ear_decomposition,
    random_factor_critical,
    verify_graft_odd_ear_decomposition,
    verify_odd_ear_decomposition,
)
from graftkit.factorcritical import EarRecord, OddEarDecomposition

from conftest import c4_graph, cycle_graph, mg


def two_triangles():
    return mg(
        ["r", "x", "y", "p", "q"],
        {
            "e1": ("r", "x"),
            "e2": ("x", "y"),
            "e3": ("y", "r"),
            "e4": ("r", "p"),
            "e5": ("p", "q"),
            "e6": ("q", "r"),
        },
    )


def test_odd_cycles_are_factor_critical():
    for n in (3, 5, 7):
        assert is_factor_critical_graph(cycle_graph(n))


def test_bipartite_graphs_with_edges_are_not_factor_critical():
    assert not is_factor_critical_graph(c4_graph())
    assert not is_factor_critical_graph(mg(["r", "a", "b"], {"ra": ("r", "a"), "ab": ("a", "b")}))
    k23 = mg(
        ["u1", "u2", "v1", "v2", "v3"],
        {f"e{i}{j}": (f"u{i}", f"v{j}") for i in (1, 2) for j in (1, 2, 3)},
    )
    assert not is_factor_critical_graph(k23)


def test_even_cycles_rejected():
    for n in (4, 6, 8):
        assert not is_factor_critical_graph(cycle_graph(n))


def test_single_vertex_is_factor_critical():
    assert is_factor_critical_graph(mg(["r"], {}))


def test_triangle_decomposition_single_ear():
    tri = cycle_graph(3, prefix="t")
    d = odd_ear_decomposition(tri, "t0")
    assert len(d.ears) == 1 and len(d.ears[0].edges) == 3
    assert verify_odd_ear_decomposition(tri, d)


def test_c5_single_ear():
    c5 = cycle_graph(5)
    d = odd_ear_decomposition(c5, "v0")
    assert len(d.ears) == 1 and len(d.ears[0].edges) == 5
    assert verify_odd_ear_decomposition(c5, d)


def test_two_triangles_two_ears():
    g = two_triangles()
    d = odd_ear_decomposition(g, "r")
    assert len(d.ears) == 2
    assert all(len(e.edges) == 3 for e in d.ears)
    assert verify_odd_ear_decomposition(g, d)


def test_decomposition_failure_reports_stuck_state():
    with pytest.raises(InputError) as err:
        odd_ear_decomposition(c4_graph(), "a1")
    assert "not factor-critical" in str(err.value)


def test_verifier_rejects_even_ear():
    g = mg(["r", "x"], {"e1": ("r", "x"), "e2": ("r", "x")})
    d = OddEarDecomposition("r", (EarRecord((("e1", "r", "x"), ("e2", "x", "r")), ("r",)),))
    out = verify_odd_ear_decomposition(g, d)
    assert not out and out.failed_step == 0


def test_verifier_rejects_incomplete_replay():
    tri = cycle_graph(3, prefix="t")
    d = odd_ear_decomposition(tri, "t0")
    missing = OddEarDecomposition("t0", ())
    out = verify_odd_ear_decomposition(tri, missing)
    assert not out


def test_verifier_rejects_wrong_bonds():
    tri = cycle_graph(3, prefix="t")
    d = odd_ear_decomposition(tri, "t0")
    ear = d.ears[0]
    tampered = OddEarDecomposition("t0", (EarRecord(ear.edges, ("t1",)),))
    assert not verify_odd_ear_decomposition(tri, tampered)


def test_random_growth_round_trip():
    for seed in range(100):
        g = random_factor_critical(
            GenConfig(seed=seed, kind="factor-critical", max_vertices=14, max_ears=6)
        )
        assert is_factor_critical_graph(g), seed
        d = odd_ear_decomposition(g, "r")
        assert verify_odd_ear_decomposition(g, d), seed


def test_graft_recognition_examples():
    tri = cycle_graph(3, prefix="t")
    assert is_factor_critical_graft(Graft(tri, frozenset(["t1", "t2"])), "t0")
    with pytest.raises(InputError):
        # terminals == V makes an odd terminal count on an odd component
        Graft(tri, frozenset(["t0", "t1", "t2"]))
    # wrong root: terminals are not everything-but-root
    assert not is_factor_critical_graft(Graft(tri, frozenset(["t1", "t2"])), "t1")


def test_c5_graft_decomposition_terminals():
    c5 = cycle_graph(5)
    g = Graft(c5, c5.vertices - {"v0"})
    d = graft_odd_ear_decomposition(g, "v0")
    assert len(d.ears) == 1
    assert d.ears[0].terminals == c5.vertices - {"v0"}
    assert verify_graft_odd_ear_decomposition(g, d)


def test_graft_decomposition_round_trip_random():
    for seed in range(30):
        graph = random_factor_critical(
            GenConfig(seed=seed + 50, kind="factor-critical", max_vertices=12, max_ears=5)
        )
        g = Graft(graph, graph.vertices - {"r"})
        assert is_factor_critical_graft(g, "r")
        d = graft_odd_ear_decomposition(g, "r")
        assert verify_graft_odd_ear_decomposition(g, d), seed


def test_definition_nu_invariance():
    # a factor-critical graft keeps its minimum join size when the root
    # pairs up with any other vertex
    for seed in range(12):
        graph = random_factor_critical(
            GenConfig(seed=seed + 200, kind="factor-critical", max_vertices=11, max_ears=4)
        )
        g = Graft(graph, graph.vertices - {"r"})
        nu = best_min_join(g).size
        for v in sorted(graph.vertices - {"r"}):
            flipped = g.with_terminals(g.terminals ^ {"r", v})
            assert best_min_join(flipped).size == nu, (seed, v)


def test_minimum_join_degree_structure():
    # minimum joins meet every non-root vertex exactly once and miss the root
    for seed in range(20):
        graph = random_factor_critical(
            GenConfig(seed=seed + 300, kind="factor-critical", max_vertices=12, max_ears=5)
        )
        g = Graft(graph, graph.vertices - {"r"})
        join = best_min_join(g).join
        assert not (cut(graph, {"r"}) & join)
        for v in sorted(graph.vertices - {"r"}):
            assert len(cut(graph, {v}) & join) == 1, (seed, v)
