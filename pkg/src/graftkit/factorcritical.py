"""Factor-critical graphs and grafts with odd-ear decomposition witnesses.

A graph is factor-critical when deleting any single vertex leaves a graph
with a perfect matching.  Such graphs are exactly the ones that grow from
a single root by repeatedly attaching round ears with an odd number of
edges; the decomposition below is the constructive witness.  The graft
version pins the terminal set to everything except the root and gives
each ear its interior vertices as terminals.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError
from .grafts import Graft, VerifyOutcome
from .matching import max_matching
from .multigraph import Multigraph, classify_ear


@dataclass(frozen=True)
class EarRecord:
    """One ear: its edges (id, u, v) in walk order and its bond vertices."""

    edges: tuple[tuple[str, str, str], ...]
    bonds: tuple[str, ...]

    @property
    def edge_ids(self) -> frozenset[str]:
        return frozenset(e for e, _u, _v in self.edges)

    @property
    def vertices(self) -> frozenset[str]:
        out = set()
        for _e, u, v in self.edges:
            out.update((u, v))
        return frozenset(out)


@dataclass(frozen=True)
class OddEarDecomposition:
    root: str
    ears: tuple[EarRecord, ...]


@dataclass(frozen=True)
class GraftEarRecord:
    edges: tuple[tuple[str, str, str], ...]
    bonds: tuple[str, ...]
    terminals: frozenset[str]

    @property
    def edge_ids(self) -> frozenset[str]:
        return frozenset(e for e, _u, _v in self.edges)

    @property
    def vertices(self) -> frozenset[str]:
        out = set()
        for _e, u, v in self.edges:
            out.update((u, v))
        return frozenset(out)


@dataclass(frozen=True)
class GraftOddEarDecomposition:
    root: str
    ears: tuple[GraftEarRecord, ...]


def is_factor_critical_graph(g: Multigraph) -> bool:
    """True iff deleting any one vertex leaves a perfectly matchable graph."""
    n = len(g.vertices)
    if n % 2 == 0:
        return False
    for v in sorted(g.vertices):
        rest = g.without_vertices([v])
        if 2 * len(max_matching(rest)) != n - 1:
            return False
    return True


def _perfect_matching_avoiding(g: Multigraph, avoid: str) -> dict[str, str] | None:
    """Perfect matching of ``g - avoid`` as an edge map, or None."""
    rest = g.without_vertices([avoid])
    m = max_matching(rest)
    if 2 * len(m) != len(g.vertices) - 1:
        return None
    mate_edge: dict[str, str] = {}
    for e in m:
        u, v = g.endpoints(e)
        mate_edge[u] = e
        mate_edge[v] = e
    return mate_edge


def odd_ear_decomposition(g: Multigraph, root: str) -> OddEarDecomposition:
    """Grow ``g`` from ``root`` by round ears with odd edge counts.

    The ear reaching a new vertex v is found by alternating the fixed
    matching of ``g - root`` against a matching of ``g - v``: the
    symmetric difference contains an alternating path from v that is
    truncated at its first vertex inside the grown set.  Uncovered edges
    inside the grown set become single-edge ears.  Raises with the stuck
    state when no decomposition exists.
    """
    if not g.has_vertex(root):
        raise InputError(f"unknown vertex id {root!r}")
    base_mate = _perfect_matching_avoiding(g, root)
    if base_mate is None:
        raise InputError(
            f"not factor-critical: deleting root {root!r} leaves no perfect matching"
        )
    grown = {root}
    covered: set[str] = set()
    ears: list[EarRecord] = []
    all_edges = g.edges

    def sweep_inside() -> None:
        for e in sorted(all_edges):
            if e in covered:
                continue
            u, v = all_edges[e]
            if u in grown and v in grown:
                covered.add(e)
                ears.append(EarRecord(((e, u, v),), tuple(sorted((u, v)))))

    while True:
        sweep_inside()
        if grown == g.vertices and len(covered) == len(all_edges):
            break
        cross = sorted(
            e
            for e in all_edges
            if e not in covered and (all_edges[e][0] in grown) != (all_edges[e][1] in grown)
        )
        if not cross:
            raise InputError(f"stuck while growing ears; grown set: {sorted(grown)}")
        e0 = cross[0]
        a, b = all_edges[e0]
        u, v = (a, b) if a in grown else (b, a)
        off_mate = _perfect_matching_avoiding(g, v)
        if off_mate is None:
            raise InputError(
                f"not factor-critical: no perfect matching avoids {v!r}; "
                f"grown set: {sorted(grown)}"
            )
        diff_inc: dict[str, list[str]] = {}
        diff_edges = set(base_mate.values()) ^ set(off_mate.values())
        for e in sorted(diff_edges):
            x, y = all_edges[e]
            diff_inc.setdefault(x, []).append(e)
            diff_inc.setdefault(y, []).append(e)

        # Walk the alternating path from v until it first enters the grown set.
        step_edges: list[tuple[str, str, str]] = [(e0, u, v)]
        cur = v
        prev_edge: str | None = None
        while cur not in grown:
            options = [e for e in diff_inc.get(cur, []) if e != prev_edge]
            if not options:
                raise InputError(
                    f"stuck while tracing an alternating ear at {cur!r}; "
                    f"grown set: {sorted(grown)}"
                )
            e = options[0]
            nxt = g.other_end(e, cur)
            step_edges.append((e, cur, nxt))
            prev_edge = e
            cur = nxt
        bonds = (u,) if cur == u else tuple(sorted((u, cur)))
        covered.update(e for e, _x, _y in step_edges)
        for _e, x, y in step_edges:
            grown.update((x, y))
        ears.append(EarRecord(tuple(step_edges), bonds))

    return OddEarDecomposition(root, tuple(ears))


def verify_odd_ear_decomposition(g: Multigraph, d: OddEarDecomposition) -> VerifyOutcome:
    """Replay the decomposition: round odd ears only, exact reconstruction."""
    if not g.has_vertex(d.root):
        return VerifyOutcome(False, None, f"root {d.root!r} is not a vertex")
    grown = {d.root}
    covered: set[str] = set()
    for idx, ear in enumerate(d.ears):
        if len(ear.edges) % 2 == 0:
            return VerifyOutcome(False, idx, "ear has an even number of edges")
        for e, u, v in ear.edges:
            if e in covered:
                return VerifyOutcome(False, idx, f"edge {e!r} already used")
            if e not in g.edges or set(g.endpoints(e)) != {u, v}:
                return VerifyOutcome(False, idx, f"edge {e!r} does not match the graph")
        shape = classify_ear(g, ear.edge_ids, grown & ear.vertices)
        if shape is None or not shape.is_round:
            return VerifyOutcome(False, idx, "not a round ear relative to the grown set")
        if tuple(sorted(shape.bonds)) != tuple(sorted(ear.bonds)):
            return VerifyOutcome(False, idx, "recorded bonds disagree with the shape")
        grown |= ear.vertices
        covered |= ear.edge_ids
    if grown != g.vertices:
        return VerifyOutcome(False, None, "replay does not cover every vertex")
    if covered != set(g.edges):
        return VerifyOutcome(False, None, "replay does not cover every edge")
    return VerifyOutcome(True)


def is_factor_critical_graft(graft: Graft, root: str) -> bool:
    """Recognition: factor-critical graph with terminals = everything but the root."""
    if not graft.graph.has_vertex(root):
        raise InputError(f"unknown vertex id {root!r}")
    if graft.terminals != graft.graph.vertices - {root}:
        return False
    return is_factor_critical_graph(graft.graph)


def graft_odd_ear_decomposition(graft: Graft, root: str) -> GraftOddEarDecomposition:
    """Odd-ear decomposition with each ear carrying its interior as terminals."""
    if not is_factor_critical_graft(graft, root):
        raise InputError("not a factor-critical graft with this root")
    plain = odd_ear_decomposition(graft.graph, root)
    ears = []
    for ear in plain.ears:
        interior = ear.vertices - frozenset(ear.bonds)
        ears.append(GraftEarRecord(ear.edges, ear.bonds, frozenset(interior)))
    return GraftOddEarDecomposition(root, tuple(ears))


def verify_graft_odd_ear_decomposition(
    graft: Graft, d: GraftOddEarDecomposition
) -> VerifyOutcome:
    """Replay with terminal bookkeeping: ear terminals are exactly the
    interiors, and their symmetric difference rebuilds the graft's terminals."""
    plain = OddEarDecomposition(d.root, tuple(EarRecord(e.edges, e.bonds) for e in d.ears))
    base = verify_odd_ear_decomposition(graft.graph, plain)
    if not base:
        return base
    acc: set[str] = set()
    for idx, ear in enumerate(d.ears):
        interior = ear.vertices - frozenset(ear.bonds)
        if ear.terminals != interior:
            return VerifyOutcome(False, idx, "ear terminals are not its interior")
        if len(ear.terminals) % 2 == 1:
            return VerifyOutcome(False, idx, "ear terminal set has odd size")
        acc ^= ear.terminals
    if acc != graft.terminals:
        return VerifyOutcome(False, None, "terminal replay disagrees with the graft")
    if graft.terminals != graft.graph.vertices - {d.root}:
        return VerifyOutcome(False, None, "terminals are not everything but the root")
    return VerifyOutcome(True)
