from graftkit import Multigraph, max_matching

from conftest import brute_max_matching_size, c4_graph, cycle_graph, mg, random_test_graft


def check_is_matching(g: Multigraph, m: frozenset[str]) -> None:
    touched = set()
    for e in m:
        u, v = g.endpoints(e)
        assert u not in touched and v not in touched
        touched.update((u, v))


def test_triangle():
    tri = cycle_graph(3)
    m = max_matching(tri)
    assert len(m) == 1
    check_is_matching(tri, m)


def test_c4_perfect():
    m = max_matching(c4_graph())
    assert len(m) == 2
    check_is_matching(c4_graph(), m)


def test_odd_cycles():
    for n in (5, 7, 9):
        assert len(max_matching(cycle_graph(n))) == n // 2


def test_parallel_edges_pick_smallest_id():
    g = mg(["u", "v"], {"e2": ("u", "v"), "e1": ("u", "v")})
    assert max_matching(g) == {"e1"}


def test_petersen_graph_has_perfect_matching():
    outer = {f"o{i}": (f"u{i}", f"u{(i + 1) % 5}") for i in range(5)}
    inner = {f"i{i}": (f"w{i}", f"w{(i + 2) % 5}") for i in range(5)}
    spokes = {f"s{i}": (f"u{i}", f"w{i}") for i in range(5)}
    g = Multigraph(
        [f"u{i}" for i in range(5)] + [f"w{i}" for i in range(5)],
        {**outer, **inner, **spokes},
    )
    m = max_matching(g)
    assert len(m) == 5
    check_is_matching(g, m)


def test_blossom_needs_shrinking():
    # two triangles joined by a bridge: maximum matching has 3 edges
    g = mg(
        ["a", "b", "c", "d", "e", "f"],
        {
            "t1": ("a", "b"),
            "t2": ("b", "c"),
            "t3": ("c", "a"),
            "m": ("c", "d"),
            "u1": ("d", "e"),
            "u2": ("e", "f"),
            "u3": ("f", "d"),
        },
    )
    m = max_matching(g)
    assert len(m) == 3
    check_is_matching(g, m)


def test_matches_brute_force_on_random_graphs():
    for seed in range(120):
        g = random_test_graft(seed + 4000, max_vertices=9, max_extra=6).graph
        m = max_matching(g)
        check_is_matching(g, m)
        assert len(m) == brute_max_matching_size(g), seed


def test_deterministic():
    g = random_test_graft(123, max_vertices=9, max_extra=6).graph
    assert max_matching(g) == max_matching(g)
