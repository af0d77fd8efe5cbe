"""Grafts, bipartite grafts with an ordered bipartition, joins, and sums.

A graft is a graph together with a set of *terminal* vertices such that
every connected component contains an even number of terminals.  A join
is an edge set whose odd-degree vertices are exactly the terminals.
Bipartite grafts carry an ordered bipartition (spine, tooth); the order
matters, `(G, T; A, B)` and `(G, T; B, A)` are different objects.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import InputError
from .multigraph import (
    Circuit,
    EarShape,
    Multigraph,
    Path,
    as_walkable,
    classify_ear,
    connected_components,
    induced_vertices,
    make_path,
)


@dataclass(frozen=True)
class VerifyOutcome:
    """Result of replaying a certificate: ok, or the first failing step."""

    ok: bool
    failed_step: int | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def is_graft(graph: Multigraph, terminals: Iterable[str]) -> bool:
    """True iff every component has an even number of terminal vertices."""
    ts = frozenset(terminals)
    for t in ts:
        if not graph.has_vertex(t):
            raise InputError(f"terminal {t!r} is not a vertex")
    return all(len(comp & ts) % 2 == 0 for comp in connected_components(graph))


@dataclass(frozen=True)
class Graft:
    graph: Multigraph
    terminals: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, "terminals", frozenset(self.terminals))
        if not is_graft(self.graph, self.terminals):
            raise InputError("some component has an odd number of terminals")

    def with_terminals(self, terminals: Iterable[str]) -> "Graft":
        return Graft(self.graph, frozenset(terminals))


@dataclass(frozen=True)
class BipartiteGraft:
    """A graft on a bipartite graph with ordered color classes.

    ``spine`` and ``tooth`` partition the vertex set and every edge joins
    the two classes.  The class names follow their role in combs and
    quasicombs; the tooth side is where roots of critical grafts live.
    """

    graft: Graft
    spine: frozenset[str]
    tooth: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, "spine", frozenset(self.spine))
        object.__setattr__(self, "tooth", frozenset(self.tooth))
        g = self.graft.graph
        if self.spine & self.tooth:
            raise InputError("spine and tooth sets overlap")
        if self.spine | self.tooth != g.vertices:
            raise InputError("spine and tooth sets must cover all vertices")
        for eid, (u, v) in g.edges.items():
            if (u in self.spine) == (v in self.spine):
                raise InputError(f"edge {eid!r} does not join the two classes")

    @property
    def graph(self) -> Multigraph:
        return self.graft.graph

    @property
    def terminals(self) -> frozenset[str]:
        return self.graft.terminals

    def side(self, v: str) -> str:
        if v in self.spine:
            return "spine"
        if v in self.tooth:
            return "tooth"
        raise InputError(f"unknown vertex id {v!r}")


def single_vertex_graft(v: str, terminal: bool = False) -> Graft:
    g = Multigraph([v], {})
    return Graft(g, frozenset([v]) if terminal else frozenset())


def rooted_base(root: str) -> BipartiteGraft:
    """The one-vertex bipartite graft with the root on the tooth side."""
    return BipartiteGraft(single_vertex_graft(root), frozenset(), frozenset([root]))


def is_join(graft: Graft, edges: Iterable[str]) -> bool:
    """True iff ``edges`` has odd degree exactly at the terminal vertices."""
    g = graft.graph
    es = frozenset(edges)
    deg: dict[str, int] = {}
    for e in es:
        u, v = g.endpoints(e)
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    for v in g.vertices:
        if (deg.get(v, 0) % 2 == 1) != (v in graft.terminals):
            return False
    return True


def odd_degree_vertices(g: Multigraph, edges: Iterable[str]) -> frozenset[str]:
    deg: dict[str, int] = {}
    for e in edges:
        u, v = g.endpoints(e)
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    return frozenset(v for v, d in deg.items() if d % 2 == 1)


def graft_sum(g1: Graft, g2: Graft) -> Graft:
    """Graph union with terminal symmetric difference.

    Operand edge-id sets must be disjoint; vertex sets may overlap and are
    identified by id.
    """
    e1, e2 = g1.graph.edges, g2.graph.edges
    clash = set(e1) & set(e2)
    if clash:
        raise InputError(f"duplicate edge ids across operands: {sorted(clash)}")
    merged = dict(e1)
    merged.update(e2)
    graph = Multigraph(g1.graph.vertices | g2.graph.vertices, merged)
    return Graft(graph, g1.terminals ^ g2.terminals)


def bipartite_graft_sum(b1: BipartiteGraft, b2: BipartiteGraft) -> BipartiteGraft:
    if b1.spine & b2.tooth or b2.spine & b1.tooth:
        raise InputError("operands disagree on the class of a shared vertex")
    return BipartiteGraft(
        graft_sum(b1.graft, b2.graft), b1.spine | b2.spine, b1.tooth | b2.tooth
    )


def _subject_edges(subject: Path | Circuit | Iterable[str]) -> tuple[str, ...]:
    if isinstance(subject, (Path, Circuit)):
        return tuple(subject.edges)
    return tuple(subject)


def relative_weight(join: Iterable[str], subject: Path | Circuit | Iterable[str]) -> int:
    """Signed size of ``subject``: +1 per edge off the join, -1 per edge on it."""
    js = frozenset(join)
    return sum(-1 if e in js else 1 for e in _subject_edges(subject))


def is_balanced_path(bg: BipartiteGraft, path: Path, join: Iterable[str]) -> bool:
    """True iff every interior tooth vertex has exactly one path edge in the join."""
    make_path(bg.graph, path.vertices, path.edges)  # validates against the host
    js = frozenset(join)
    for v in path.interior:
        if v in bg.tooth and sum(1 for e in path.edges_at(v) if e in js) != 1:
            return False
    return True


@dataclass(frozen=True)
class BalancedPathVerdict:
    """Outcome of checking a balanced path against its expected weight.

    The expectation depends on the classes of the two ends: spine-spine
    paths weigh 0, spine-tooth paths weigh -1 or +1 according to whether
    the tooth end's path edge is in the join, and tooth-tooth paths weigh
    -2, 0, or +2 according to how many end edges are in the join.
    """

    ends: tuple[str, str]
    end_sides: tuple[str, str]
    weight: int
    expected: int
    balanced: bool

    @property
    def ok(self) -> bool:
        return self.balanced and self.weight == self.expected


def classify_balanced_path(
    bg: BipartiteGraft, path: Path, join: Iterable[str]
) -> BalancedPathVerdict:
    js = frozenset(join)
    x, y = path.ends
    sx, sy = bg.side(x), bg.side(y)
    balanced = is_balanced_path(bg, path, js)
    w = relative_weight(js, path)
    if sx == "spine" and sy == "spine":
        expected = 0
    elif sx != sy:
        tooth_end = x if sx == "tooth" else y
        expected = -1 if (not path.is_trivial and path.edge_at(tooth_end) in js) else 1
    else:
        if path.is_trivial:
            expected = 0
        else:
            in_join = sum(1 for end in (x, y) if path.edge_at(end) in js)
            expected = {0: 2, 1: 0, 2: -2}[in_join]
    return BalancedPathVerdict((x, y), (sx, sy), w, expected, balanced)


@dataclass(frozen=True)
class RelativeEar:
    """An ear graft relative to some base graft, with its resolved shape.

    ``walk`` is the ear's path or circuit view; ``shape`` records whether
    the ear is round or straight and which vertices are its bonds.
    """

    ear: BipartiteGraft
    walk: Path | Circuit
    shape: EarShape

    @property
    def bonds(self) -> frozenset[str]:
        return frozenset(self.shape.bonds)

    @property
    def non_bond_vertices(self) -> frozenset[str]:
        return self.ear.graph.vertices - self.bonds

    def far_end(self) -> str:
        """The non-bond end of a straight ear."""
        if not self.shape.is_straight or not isinstance(self.walk, Path):
            raise InputError("only straight ears have a far end")
        a, b = self.walk.ends
        return b if a in self.bonds else a


def relate_ear(base: BipartiteGraft, ear: BipartiteGraft) -> RelativeEar:
    """Resolve ``ear`` as an ear graft relative to ``base``.

    Checks the class compatibility conditions, that the ear's graph is a
    path or circuit forming an ear relative to the base vertex set, and
    that the edge id sets are disjoint.
    """
    if base.spine & ear.tooth or ear.spine & base.tooth:
        raise InputError("ear and base disagree on the class of a shared vertex")
    clash = base.graph.edge_ids & ear.graph.edge_ids
    if clash:
        raise InputError(f"ear reuses base edge ids: {sorted(clash)}")
    edge_ids = ear.graph.edge_ids
    if not edge_ids:
        raise InputError("an ear must have at least one edge")
    if induced_vertices(ear.graph, edge_ids) != ear.graph.vertices:
        raise InputError("ear has vertices not covered by its edges")
    walk = as_walkable(ear.graph, edge_ids)
    if walk is None:
        raise InputError("ear edges do not form a path or circuit")
    shape = classify_ear(ear.graph, edge_ids, ear.graph.vertices & base.graph.vertices)
    if shape is None:
        raise InputError("ear does not attach to the base as a round or straight ear")
    return RelativeEar(ear, walk, shape)
