"""Exact minimum-join solvers, minimality certification, and join distances.

Two independent exact methods are provided.  ``min_join_oracle`` sweeps
the whole cycle space of the graph (every join is ``F0 Δ C`` for a fixed
join ``F0`` and a cycle-space member ``C``), which is exponential in the
cyclomatic number.  ``min_join`` runs the classical reduction: pair up
the terminals by a minimum-weight perfect matching over shortest-path
distances, found by dynamic programming over terminal subsets.  The two
must always agree on size; the test suite enforces this.

Distances follow the fixed sign convention

    distance(u, v) = nu(G, T Δ {u, v}) - nu(G, T)

which equals the minimum weight of a simple u-v path, where edges on a
minimum join weigh -1 and all others +1.  (The reversed difference would
give the single-edge graft distance +1 while the only path weighs -1.)
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CapacityError, InputError
from .grafts import Graft, is_join, relative_weight
from .matching import max_matching
from .multigraph import (
    Multigraph,
    Path,
    connected_components,
    extract_path_and_circuits,
    trivial_path,
)

__all__ = [
    "SolverLimits",
    "SolveResult",
    "DistanceResult",
    "find_any_join",
    "min_join_oracle",
    "min_join",
    "best_min_join",
    "minimum_join_size",
    "verify_minimum",
    "distance",
    "shortest_path",
    "max_matching",
    "cyclomatic_number",
]


@dataclass(frozen=True)
class SolverLimits:
    """Capacity bounds for the exact solvers; exceeding one is an error."""

    max_cyclomatic: int = 20
    max_terminals: int = 20


DEFAULT_LIMITS = SolverLimits()


@dataclass(frozen=True)
class SolveResult:
    join: frozenset[str]
    size: int
    method: str  # "oracle" | "matching"


@dataclass(frozen=True)
class DistanceResult:
    u: str
    v: str
    distance: int
    witness: Path


def cyclomatic_number(g: Multigraph) -> int:
    return len(g.edges) - len(g.vertices) + len(connected_components(g))


def _spanning_forest(g: Multigraph) -> tuple[dict[str, str | None], dict[str, str | None]]:
    """BFS forest: vertex -> parent vertex and vertex -> parent edge id.

    Roots are the smallest vertex of each component; adjacency is scanned
    in edge-id order, so the forest is deterministic.
    """
    parent: dict[str, str | None] = {}
    parent_edge: dict[str, str | None] = {}
    for start in sorted(g.vertices):
        if start in parent:
            continue
        parent[start] = None
        parent_edge[start] = None
        queue = [start]
        head = 0
        while head < len(queue):
            v = queue[head]
            head += 1
            for e in g.incident(v):
                w = g.other_end(e, v)
                if w not in parent:
                    parent[w] = v
                    parent_edge[w] = e
                    queue.append(w)
    return parent, parent_edge


def _tree_path_edges(
    parent: dict[str, str | None], parent_edge: dict[str, str | None], u: str, v: str
) -> set[str]:
    """Edge ids on the forest path between two vertices of one tree."""

    def root_path(x: str) -> list[str]:
        out = []
        while parent[x] is not None:
            out.append(x)
            x = parent[x]  # type: ignore[assignment]
        out.append(x)
        return out

    pu = root_path(u)
    pv = root_path(v)
    if pu[-1] != pv[-1]:
        raise InputError(f"{u!r} and {v!r} are in different components")
    iu, iv = len(pu) - 1, len(pv) - 1
    while iu > 0 and iv > 0 and pu[iu - 1] == pv[iv - 1]:
        iu -= 1
        iv -= 1
    edges = {parent_edge[x] for x in pu[:iu]} | {parent_edge[x] for x in pv[:iv]}
    return {e for e in edges if e is not None}


def find_any_join(graft: Graft) -> frozenset[str]:
    """Some join, not necessarily minimum.

    Terminals are paired arbitrarily within each component and the
    symmetric difference of the pairs' forest paths is returned.
    """
    g = graft.graph
    parent, parent_edge = _spanning_forest(g)
    acc: set[str] = set()
    for comp in connected_components(g):
        ts = sorted(comp & graft.terminals)
        for a, b in zip(ts[0::2], ts[1::2]):
            acc ^= _tree_path_edges(parent, parent_edge, a, b)
    return frozenset(acc)


def _edge_bits(g: Multigraph) -> tuple[list[str], dict[str, int]]:
    ids = sorted(g.edges)
    return ids, {e: i for i, e in enumerate(ids)}


def _mask_lex_smaller(a: int, b: int) -> bool:
    """Is edge set ``a`` lexicographically before ``b`` (as sorted id tuples)?

    Bit i corresponds to the i-th smallest edge id, so the set containing
    the lowest differing bit compares smaller.
    """
    d = a ^ b
    if d == 0:
        return False
    low = d & -d
    return bool(a & low)


def min_join_oracle(graft: Graft, limits: SolverLimits | None = None) -> SolveResult:
    """Exact minimum join by brute-force sweep of the cycle space.

    Every join equals ``F0 Δ C`` with ``C`` spanned by the fundamental
    circuits of a spanning forest; all ``2^mu`` combinations are tried.
    Ties are broken toward the lexicographically smallest edge-id set.
    """
    limits = limits or DEFAULT_LIMITS
    g = graft.graph
    mu = cyclomatic_number(g)
    if mu > limits.max_cyclomatic:
        raise CapacityError(
            f"cyclomatic number {mu} exceeds the limit {limits.max_cyclomatic}"
        )
    ids, bit = _edge_bits(g)
    parent, parent_edge = _spanning_forest(g)
    tree_edges = {e for e in parent_edge.values() if e is not None}
    basis: list[int] = []
    for e in ids:
        if e in tree_edges:
            continue
        u, v = g.endpoints(e)
        mask = 1 << bit[e]
        for t in _tree_path_edges(parent, parent_edge, u, v):
            mask |= 1 << bit[t]
        basis.append(mask)

    cur = 0
    for e in find_any_join(graft):
        cur |= 1 << bit[e]
    best = cur
    best_size = cur.bit_count()
    # Gray-code sweep: exactly one basis circuit flips per step.
    for i in range(1, 1 << len(basis)):
        cur ^= basis[(i & -i).bit_length() - 1]
        size = cur.bit_count()
        if size < best_size or (size == best_size and _mask_lex_smaller(cur, best)):
            best = cur
            best_size = size
    join = frozenset(ids[i] for i in range(len(ids)) if best >> i & 1)
    return SolveResult(join, best_size, "oracle")


def _bfs_parents(g: Multigraph, source: str) -> tuple[dict[str, int], dict[str, str]]:
    """Hop distances from ``source`` and a deterministic parent-edge map."""
    dist = {source: 0}
    via: dict[str, str] = {}
    queue = [source]
    head = 0
    while head < len(queue):
        v = queue[head]
        head += 1
        for e in g.incident(v):
            w = g.other_end(e, v)
            if w not in dist:
                dist[w] = dist[v] + 1
                via[w] = e
                queue.append(w)
    return dist, via


def min_join(graft: Graft, limits: SolverLimits | None = None) -> SolveResult:
    """Exact minimum join via the shortest-path matching reduction.

    Unit shortest-path distances between terminals feed a minimum-weight
    perfect matching solved by subset dynamic programming; the answer is
    the symmetric difference of the matched pairs' shortest paths.
    """
    limits = limits or DEFAULT_LIMITS
    if len(graft.terminals) > limits.max_terminals:
        raise CapacityError(
            f"{len(graft.terminals)} terminals exceed the limit {limits.max_terminals}"
        )
    g = graft.graph
    acc: set[str] = set()
    total = 0
    for comp in connected_components(g):
        ts = sorted(comp & graft.terminals)
        if not ts:
            continue
        k = len(ts)
        dists = {}
        vias = {}
        for t in ts:
            dists[t], vias[t] = _bfs_parents(g, t)
        cost = [[dists[a][b] for b in ts] for a in ts]

        full = (1 << k) - 1
        dp = [0] * (full + 1)
        choice = [0] * (full + 1)
        for mask in range(1, full + 1):
            if mask.bit_count() % 2 == 1:
                continue
            i = (mask & -mask).bit_length() - 1
            best = None
            best_j = -1
            rest = mask ^ (1 << i)
            j_bits = rest
            while j_bits:
                j = (j_bits & -j_bits).bit_length() - 1
                j_bits &= j_bits - 1
                cand = dp[mask ^ (1 << i) ^ (1 << j)] + cost[i][j]
                if best is None or cand < best:
                    best = cand
                    best_j = j
            dp[mask] = best if best is not None else 0
            choice[mask] = best_j

        total += dp[full]
        mask = full
        while mask:
            i = (mask & -mask).bit_length() - 1
            j = choice[mask]
            a, b = ts[i], ts[j]
            x = b
            while x != a:
                e = vias[a][x]
                acc ^= {e}
                x = g.other_end(e, x)
            mask ^= (1 << i) | (1 << j)

    join = frozenset(acc)
    # Shortest paths of an optimal pairing are edge-disjoint, otherwise the
    # pairing value would not be the minimum join size.
    if len(join) != total or not is_join(graft, join):
        raise AssertionError("matching reduction produced an inconsistent join")
    return SolveResult(join, total, "matching")


def best_min_join(graft: Graft, limits: SolverLimits | None = None) -> SolveResult:
    """Exact minimum join by whichever method is cheaper for this instance.

    Falls back between the matching reduction and the cycle-space oracle;
    raises ``CapacityError`` only when both limits are exceeded.
    """
    limits = limits or DEFAULT_LIMITS
    k = len(graft.terminals)
    mu = cyclomatic_number(graft.graph)
    match_ok = k <= limits.max_terminals
    oracle_ok = mu <= limits.max_cyclomatic
    if match_ok and (not oracle_ok or (1 << k) * max(k, 1) <= (1 << mu)):
        return min_join(graft, limits)
    if oracle_ok:
        return min_join_oracle(graft, limits)
    raise CapacityError(
        f"instance exceeds both limits: {k} terminals, cyclomatic number {mu}"
    )


def minimum_join_size(graft: Graft, limits: SolverLimits | None = None) -> int:
    return best_min_join(graft, limits).size


def verify_minimum(
    graft: Graft, join: frozenset[str], limits: SolverLimits | None = None
) -> bool:
    """True iff ``join`` is a join of minimum size.

    Equivalent to the absence of circuits with negative join-weight; the
    implementation uses the size test, the circuit form is cross-checked
    in the tests.
    """
    join = frozenset(join)
    if not is_join(graft, join):
        raise InputError("the given edge set is not a join of this graft")
    return len(join) == minimum_join_size(graft, limits)


def _same_component(g: Multigraph, u: str, v: str) -> bool:
    for comp in connected_components(g):
        if u in comp:
            return v in comp
    return False


def _solve_pair(
    graft: Graft,
    join: frozenset[str],
    u: str,
    v: str,
    limits: SolverLimits | None,
    precheck: bool,
) -> tuple[int, Path]:
    g = graft.graph
    for x in (u, v):
        if not g.has_vertex(x):
            raise InputError(f"unknown vertex id {x!r}")
    join = frozenset(join)
    if precheck and not verify_minimum(graft, join, limits):
        raise InputError("the given join is not minimum")
    if u == v:
        return 0, trivial_path(g, u)
    if not _same_component(g, u, v):
        raise InputError(f"{u!r} and {v!r} are in different components")
    flipped = graft.with_terminals(graft.terminals ^ {u, v})
    other = best_min_join(flipped, limits)
    dist = other.size - len(join)
    # The symmetric difference of the two joins has odd degree exactly at
    # u and v; peeling circuits (each of weight 0 for minimum joins)
    # leaves a simple path realizing the distance.
    diff = join ^ other.join
    witness, _circuits = extract_path_and_circuits(g, diff, u, v)
    w = relative_weight(join, witness)
    if w != dist:
        raise AssertionError("extracted witness weight disagrees with the distance")
    return dist, witness


def distance(
    graft: Graft,
    join: frozenset[str],
    u: str,
    v: str,
    limits: SolverLimits | None = None,
    precheck: bool = True,
) -> DistanceResult:
    """Join distance between two vertices plus a witness path.

    ``distance = nu(G, T Δ {u, v}) - nu(G, T)``; the witness is a simple
    path whose weight relative to ``join`` equals the distance.
    """
    d, witness = _solve_pair(graft, join, u, v, limits, precheck)
    return DistanceResult(u, v, d, witness)


def shortest_path(
    graft: Graft,
    join: frozenset[str],
    u: str,
    v: str,
    limits: SolverLimits | None = None,
    precheck: bool = True,
) -> Path:
    """A minimum-weight simple path between ``u`` and ``v`` w.r.t. ``join``."""
    _d, witness = _solve_pair(graft, join, u, v, limits, precheck)
    return witness
