"""Shared fixtures and independent brute-force oracles.

The oracles here deliberately avoid the library's solver machinery: joins
are enumerated as raw edge subsets, paths by DFS over edges, circuits by
filtering edge subsets.  They are only usable at desk scale, which is the
point — they provide expected values the solvers must reproduce.
"""

from __future__ import annotations

import itertools
import random

import pytest

from graftkit import BipartiteGraft, Graft, Multigraph


def mg(vertices, edges) -> Multigraph:
    return Multigraph(vertices, edges)


@pytest.fixture
def path3() -> Graft:
    """Path r-a-b with terminals {a, b}."""
    return Graft(mg(["r", "a", "b"], {"ra": ("r", "a"), "ab": ("a", "b")}), frozenset("ab"))


@pytest.fixture
def fixture_f1() -> BipartiteGraft:
    g = mg(["r", "a"], {"ra": ("r", "a")})
    return BipartiteGraft(Graft(g, frozenset()), frozenset(["a"]), frozenset(["r"]))


@pytest.fixture
def fixture_f2() -> BipartiteGraft:
    g = mg(["r", "a", "b"], {"ra": ("r", "a"), "ab": ("a", "b")})
    return BipartiteGraft(
        Graft(g, frozenset(["a", "b"])), frozenset(["a"]), frozenset(["r", "b"])
    )


def c4_graph() -> Multigraph:
    return mg(
        ["a1", "b1", "a2", "b2"],
        {"e1": ("a1", "b1"), "e2": ("b1", "a2"), "e3": ("a2", "b2"), "e4": ("b2", "a1")},
    )


def cycle_graph(n: int, prefix: str = "v") -> Multigraph:
    names = [f"{prefix}{i}" for i in range(n)]
    edges = {f"e{i}": (names[i], names[(i + 1) % n]) for i in range(n)}
    return mg(names, edges)


def degree_parity(g: Multigraph, edges) -> frozenset[str]:
    deg: dict[str, int] = {}
    for e in edges:
        u, v = g.endpoints(e)
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    return frozenset(v for v, d in deg.items() if d % 2 == 1)


def all_joins(graft: Graft) -> list[frozenset[str]]:
    """Every join, by raw subset enumeration.  Exponential in |E|."""
    ids = sorted(graft.graph.edges)
    assert len(ids) <= 16, "oracle is for small instances"
    out = []
    for k in range(len(ids) + 1):
        for combo in itertools.combinations(ids, k):
            if degree_parity(graft.graph, combo) == graft.terminals:
                out.append(frozenset(combo))
    return out


def brute_min_join_size(graft: Graft) -> int:
    return min(len(j) for j in all_joins(graft))


def all_simple_paths(g: Multigraph, u: str, v: str) -> list[tuple[str, ...]]:
    """All simple u-v paths as edge-id tuples (DFS over edges)."""
    out: list[tuple[str, ...]] = []

    def walk(cur: str, seen: set[str], edges: list[str]) -> None:
        if cur == v:
            out.append(tuple(edges))
            return
        for e in g.incident(cur):
            w = g.other_end(e, cur)
            if w in seen:
                continue
            seen.add(w)
            edges.append(e)
            walk(w, seen, edges)
            edges.pop()
            seen.remove(w)

    walk(u, {u}, [])
    return out


def brute_distance(g: Multigraph, join: frozenset[str], u: str, v: str) -> int | None:
    """Minimum join-weight over all simple u-v paths, or None if unreachable."""
    best = None
    for path in all_simple_paths(g, u, v):
        w = sum(-1 if e in join else 1 for e in path)
        if best is None or w < best:
            best = w
    return best


def all_circuits(g: Multigraph) -> list[frozenset[str]]:
    """Every simple circuit as an edge set, by subset enumeration."""
    ids = sorted(g.edges)
    assert len(ids) <= 14, "oracle is for small instances"
    out = []
    for k in range(2, len(ids) + 1):
        for combo in itertools.combinations(ids, k):
            deg: dict[str, int] = {}
            for e in combo:
                for x in g.endpoints(e):
                    deg[x] = deg.get(x, 0) + 1
            if any(d != 2 for d in deg.values()):
                continue
            verts = sorted(deg)
            seen = {verts[0]}
            stack = [verts[0]]
            adj: dict[str, list[str]] = {x: [] for x in verts}
            for e in combo:
                a, b = g.endpoints(e)
                adj[a].append(b)
                adj[b].append(a)
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            if len(seen) == len(verts):
                out.append(frozenset(combo))
    return out


def brute_max_matching_size(g: Multigraph) -> int:
    """Maximum matching size by recursion over edges."""
    ids = sorted(g.edges)

    def go(i: int, used: frozenset[str]) -> int:
        if i == len(ids):
            return 0
        best = go(i + 1, used)
        u, v = g.endpoints(ids[i])
        if u not in used and v not in used:
            best = max(best, 1 + go(i + 1, used | {u, v}))
        return best

    return go(0, frozenset())


def random_test_graft(
    seed: int,
    max_vertices: int = 10,
    max_extra: int = 4,
    t_density: float = 0.5,
    max_terminals: int | None = None,
) -> Graft:
    """Small random graft for suites that need their own sampler."""
    rng = random.Random(seed)
    n = rng.randint(1, max_vertices)
    names = [f"v{i}" for i in range(n)]
    edges: dict[str, tuple[str, str]] = {}
    for j in range(1, n):
        edges[f"e{len(edges):03d}"] = (names[rng.randrange(j)], names[j])
    for _ in range(rng.randint(0, max_extra)):
        if n < 2:
            break
        u, v = rng.sample(names, 2)
        edges[f"e{len(edges):03d}"] = (u, v)
    picked = [v for v in names if rng.random() < t_density]
    if len(picked) % 2 == 1:
        picked.pop()
    if max_terminals is not None:
        picked = picked[:max_terminals]
        if len(picked) % 2 == 1:
            picked.pop()
    return Graft(Multigraph(names, edges), frozenset(picked))
