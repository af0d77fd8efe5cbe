"""Loop-free multigraphs, path/circuit views, cuts, and ear classification.

Vertices and edges are addressed by opaque string ids.  Edge ids are what
make parallel edges first-class: every edge set in this package (joins,
ears, certificates) is a set of edge ids, never of endpoint pairs.
All values are immutable after construction and all operations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .errors import InputError


class Multigraph:
    """An undirected multigraph without self-loops.

    Parallel edges are permitted and distinguished by their edge ids.
    """

    __slots__ = ("_vertices", "_edges", "_incidence")

    def __init__(self, vertices: Iterable[str], edges: Mapping[str, tuple[str, str]]):
        vs = frozenset(vertices)
        es: dict[str, tuple[str, str]] = {}
        incidence: dict[str, list[str]] = {v: [] for v in vs}
        for eid in sorted(edges):
            u, v = edges[eid]
            if u == v:
                raise InputError(f"edge {eid!r} is a self-loop at {u!r}")
            if u not in vs or v not in vs:
                raise InputError(f"edge {eid!r} references an undeclared vertex")
            es[eid] = (u, v) if u < v else (v, u)  # canonical endpoint order
            incidence[u].append(eid)
            incidence[v].append(eid)
        self._vertices = vs
        self._edges = es
        self._incidence = {v: tuple(ids) for v, ids in incidence.items()}

    @property
    def vertices(self) -> frozenset[str]:
        return self._vertices

    @property
    def edges(self) -> dict[str, tuple[str, str]]:
        """Edge id -> endpoint pair.  The returned dict is a copy."""
        return dict(self._edges)

    @property
    def edge_ids(self) -> frozenset[str]:
        return frozenset(self._edges)

    def endpoints(self, eid: str) -> tuple[str, str]:
        try:
            return self._edges[eid]
        except KeyError:
            raise InputError(f"unknown edge id {eid!r}") from None

    def has_vertex(self, v: str) -> bool:
        return v in self._vertices

    def incident(self, v: str) -> tuple[str, ...]:
        """Edge ids incident to ``v``, in ascending id order."""
        try:
            return self._incidence[v]
        except KeyError:
            raise InputError(f"unknown vertex id {v!r}") from None

    def degree(self, v: str) -> int:
        return len(self.incident(v))

    def other_end(self, eid: str, v: str) -> str:
        u, w = self.endpoints(eid)
        if v == u:
            return w
        if v == w:
            return u
        raise InputError(f"vertex {v!r} is not an endpoint of edge {eid!r}")

    def neighbors(self, v: str) -> list[str]:
        """Distinct neighbors of ``v`` in ascending order."""
        return sorted({self.other_end(e, v) for e in self.incident(v)})

    def without_vertices(self, removed: Iterable[str]) -> "Multigraph":
        """The graph obtained by deleting ``removed`` and their edges."""
        gone = set(removed)
        for v in gone:
            if v not in self._vertices:
                raise InputError(f"unknown vertex id {v!r}")
        keep_edges = {
            eid: uv
            for eid, uv in self._edges.items()
            if uv[0] not in gone and uv[1] not in gone
        }
        return Multigraph(self._vertices - gone, keep_edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._vertices, tuple(sorted(self._edges.items()))))

    def __repr__(self) -> str:
        return f"Multigraph({len(self._vertices)} vertices, {len(self._edges)} edges)"


@dataclass(frozen=True)
class Path:
    """A simple path given as alternating vertex and edge id sequences.

    ``vertices`` has one more element than ``edges``; a single vertex with
    no edge is a path.
    """

    vertices: tuple[str, ...]
    edges: tuple[str, ...]

    @property
    def ends(self) -> tuple[str, str]:
        return self.vertices[0], self.vertices[-1]

    @property
    def interior(self) -> tuple[str, ...]:
        return self.vertices[1:-1]

    @property
    def is_trivial(self) -> bool:
        return not self.edges

    def edge_at(self, end: str) -> str:
        """The path edge incident to the given end vertex."""
        if self.is_trivial:
            raise InputError("a trivial path has no end edge")
        if end == self.vertices[0]:
            return self.edges[0]
        if end == self.vertices[-1]:
            return self.edges[-1]
        raise InputError(f"{end!r} is not an end of this path")

    def edges_at(self, v: str) -> tuple[str, ...]:
        """Path edges incident to ``v`` (one for ends, two for interior)."""
        out = []
        for i, x in enumerate(self.vertices):
            if x == v:
                if i > 0:
                    out.append(self.edges[i - 1])
                if i < len(self.edges):
                    out.append(self.edges[i])
        if not out and v not in self.vertices:
            raise InputError(f"{v!r} is not on this path")
        return tuple(out)

    def reversed(self) -> "Path":
        return Path(tuple(reversed(self.vertices)), tuple(reversed(self.edges)))


@dataclass(frozen=True)
class Circuit:
    """A simple circuit; ``edges[i]`` joins ``vertices[i]`` and ``vertices[i+1 mod k]``."""

    vertices: tuple[str, ...]
    edges: tuple[str, ...]

    def edges_at(self, v: str) -> tuple[str, str]:
        i = self.vertices.index(v)
        k = len(self.vertices)
        return self.edges[(i - 1) % k], self.edges[i]

    def arcs(self, x: str, y: str) -> list[Path]:
        """The one or two arcs of the circuit between vertices ``x`` and ``y``."""
        if x not in self.vertices or y not in self.vertices:
            raise InputError("arc endpoints must lie on the circuit")
        i = self.vertices.index(x)
        k = len(self.vertices)
        if x == y:
            return [Path((x,), ())]
        j = self.vertices.index(y)
        forward_vs = [self.vertices[(i + s) % k] for s in range((j - i) % k + 1)]
        forward_es = [self.edges[(i + s) % k] for s in range((j - i) % k)]
        backward_vs = [self.vertices[(i - s) % k] for s in range((i - j) % k + 1)]
        backward_es = [self.edges[(i - s - 1) % k] for s in range((i - j) % k)]
        return [
            Path(tuple(forward_vs), tuple(forward_es)),
            Path(tuple(backward_vs), tuple(backward_es)),
        ]


def make_path(g: Multigraph, vertices: Iterable[str], edges: Iterable[str]) -> Path:
    """Build a ``Path`` and validate it against the host graph."""
    vs = tuple(vertices)
    es = tuple(edges)
    if not vs:
        raise InputError("a path needs at least one vertex")
    if len(vs) != len(es) + 1:
        raise InputError("path has mismatched vertex/edge sequence lengths")
    if len(set(vs)) != len(vs):
        raise InputError("path vertices must be pairwise distinct")
    for v in vs:
        if not g.has_vertex(v):
            raise InputError(f"unknown vertex id {v!r}")
    for i, e in enumerate(es):
        if set(g.endpoints(e)) != {vs[i], vs[i + 1]}:
            raise InputError(f"edge {e!r} does not join {vs[i]!r} and {vs[i + 1]!r}")
    if len(set(es)) != len(es):
        raise InputError("path edges must be pairwise distinct")
    return Path(vs, es)


def trivial_path(g: Multigraph, v: str) -> Path:
    return make_path(g, (v,), ())


def _check_subset(g: Multigraph, xs: Iterable[str]) -> frozenset[str]:
    out = frozenset(xs)
    for v in out:
        if not g.has_vertex(v):
            raise InputError(f"unknown vertex id {v!r}")
    return out


def cut(g: Multigraph, inside: Iterable[str]) -> frozenset[str]:
    """Edges with exactly one endpoint in ``inside``."""
    xs = _check_subset(g, inside)
    return frozenset(
        eid for eid, (u, v) in g.edges.items() if (u in xs) != (v in xs)
    )


def edges_between(g: Multigraph, left: Iterable[str], right: Iterable[str]) -> frozenset[str]:
    """Edges with one endpoint in ``left`` and the other in ``right``."""
    ls = _check_subset(g, left)
    rs = _check_subset(g, right)
    return frozenset(
        eid
        for eid, (u, v) in g.edges.items()
        if (u in ls and v in rs) or (v in ls and u in rs)
    )


def connected_components(g: Multigraph) -> list[frozenset[str]]:
    """Vertex sets of the connected components, ordered by smallest member."""
    seen: set[str] = set()
    comps = []
    for start in sorted(g.vertices):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for e in g.incident(v):
                w = g.other_end(e, v)
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def subpath(p: Path, x: str, y: str) -> Path:
    """The subpath of ``p`` with ends ``x`` and ``y`` (oriented x -> y)."""
    if x not in p.vertices or y not in p.vertices:
        raise InputError("subpath endpoints must lie on the path")
    i = p.vertices.index(x)
    j = p.vertices.index(y)
    if i <= j:
        return Path(p.vertices[i : j + 1], p.edges[i:j])
    return Path(tuple(reversed(p.vertices[j : i + 1])), tuple(reversed(p.edges[j:i])))


def induced_vertices(g: Multigraph, edge_ids: Iterable[str]) -> frozenset[str]:
    """Vertices covered by the given edges."""
    out: set[str] = set()
    for e in edge_ids:
        out.update(g.endpoints(e))
    return frozenset(out)


def as_walkable(g: Multigraph, edge_ids: Iterable[str]) -> Path | Circuit | None:
    """Interpret an edge set as a simple path or circuit, or neither.

    The orientation is canonical: paths start at the smaller end id,
    circuits start at their smallest vertex and prefer the smaller first
    edge id, so the result is deterministic.
    """
    es = sorted(set(edge_ids))
    if not es:
        return None
    deg: dict[str, int] = {}
    inc: dict[str, list[str]] = {}
    for e in es:
        for v in g.endpoints(e):
            deg[v] = deg.get(v, 0) + 1
            inc.setdefault(v, []).append(e)
    if any(d > 2 for d in deg.values()):
        return None
    odd = sorted(v for v, d in deg.items() if d == 1)

    def walk(start: str, first: str | None) -> tuple[list[str], list[str]]:
        vs = [start]
        used: list[str] = []
        used_set: set[str] = set()
        cur = start
        while True:
            options = [e for e in sorted(inc[cur]) if e not in used_set]
            if first is not None and not used:
                options = [first]
            if not options:
                break
            e = options[0]
            used.append(e)
            used_set.add(e)
            cur = g.other_end(e, cur)
            vs.append(cur)
            if cur == start:
                break
        return vs, used

    if len(odd) == 2:
        vs, used = walk(odd[0], None)
        if len(used) != len(es) or vs[-1] != odd[1]:
            return None
        if len(set(vs)) != len(vs):
            return None
        return Path(tuple(vs), tuple(used))
    if not odd and all(d == 2 for d in deg.values()):
        start = min(deg)
        vs, used = walk(start, min(inc[start]))
        if len(used) != len(es) or vs[-1] != start:
            return None
        body = vs[:-1]
        if len(set(body)) != len(body):
            return None
        return Circuit(tuple(body), tuple(used))
    return None


@dataclass(frozen=True)
class EarShape:
    """Shape of an ear relative to an anchor vertex set.

    Round path ears have two bonds (the path ends); round circuit ears and
    straight ears have one.
    """

    kind: str  # "round" | "straight"
    bonds: tuple[str, ...]

    @property
    def is_round(self) -> bool:
        return self.kind == "round"

    @property
    def is_straight(self) -> bool:
        return self.kind == "straight"


def classify_ear(
    g: Multigraph, edge_ids: Iterable[str], anchor: Iterable[str]
) -> EarShape | None:
    """Classify an edge set as an ear relative to ``anchor``.

    Returns ``None`` when the edges do not form an ear: not a path or
    circuit, or meeting the anchor in the wrong places.
    """
    xs = _check_subset(g, anchor)
    walk = as_walkable(g, edge_ids)
    if walk is None:
        return None
    if isinstance(walk, Circuit):
        shared = [v for v in walk.vertices if v in xs]
        if len(shared) == 1:
            return EarShape("round", (shared[0],))
        return None
    a, b = walk.ends
    if any(v in xs for v in walk.interior):
        return None
    if a in xs and b in xs:
        return EarShape("round", tuple(sorted((a, b))))
    if (a in xs) != (b in xs):
        bond = a if a in xs else b
        return EarShape("straight", (bond,))
    return None


def extract_path_and_circuits(
    g: Multigraph, edge_ids: Iterable[str], start: str, end: str
) -> tuple[Path, list[Circuit]]:
    """Partition an edge set into one simple start-end path plus circuits.

    Precondition: in the subgraph spanned by ``edge_ids``, ``start`` and
    ``end`` are the only odd-degree vertices and are distinct.  Branching
    is resolved by always following the unused incident edge with the
    smallest id, which makes the output reproducible.
    """
    if start == end:
        raise InputError("start and end must be distinct")
    es = set(edge_ids)
    inc: dict[str, list[str]] = {}
    deg: dict[str, int] = {}
    for e in sorted(es):
        for v in g.endpoints(e):
            inc.setdefault(v, []).append(e)
            deg[v] = deg.get(v, 0) + 1
    odd = {v for v, d in deg.items() if d % 2 == 1}
    if odd != {start, end}:
        raise InputError(
            f"odd-degree vertices are {sorted(odd)}, expected {sorted((start, end))}"
        )

    used: set[str] = set()

    def greedy_trail(v0: str) -> tuple[list[str], list[str]]:
        vs = [v0]
        trail: list[str] = []
        cur = v0
        while True:
            nxt = next((e for e in inc.get(cur, ()) if e not in used), None)
            if nxt is None:
                return vs, trail
            used.add(nxt)
            trail.append(nxt)
            cur = g.other_end(nxt, cur)
            vs.append(cur)

    def peel(vs: list[str], trail: list[str]) -> tuple[list[str], list[str], list[Circuit]]:
        # Pop a simple circuit whenever the walk revisits a vertex still on
        # the stack; what remains on the stack is vertex-simple.
        stack_v = [vs[0]]
        stack_e: list[str] = []
        circuits: list[Circuit] = []
        pos = {vs[0]: 0}
        for e, v in zip(trail, vs[1:]):
            if v in pos:
                j = pos[v]
                circ_v = stack_v[j:]
                circ_e = stack_e[j:] + [e]
                for x in stack_v[j + 1 :]:
                    del pos[x]
                del stack_v[j + 1 :]
                del stack_e[j:]
                circuits.append(Circuit(tuple(circ_v), tuple(circ_e)))
            else:
                stack_v.append(v)
                stack_e.append(e)
                pos[v] = len(stack_v) - 1
        return stack_v, stack_e, circuits

    vs, trail = greedy_trail(start)
    if vs[-1] != end:
        raise InputError("walk from start did not terminate at end")
    path_v, path_e, circuits = peel(vs, trail)
    path = Path(tuple(path_v), tuple(path_e))

    # Leftovers are even-degree everywhere; peel them into circuits.
    while len(used) < len(es):
        v0 = min(
            v for v in inc if any(e not in used for e in inc[v])
        )
        cvs, ctrail = greedy_trail(v0)
        if cvs[-1] != v0:
            raise InputError("leftover edges do not close into circuits")
        rest_v, rest_e, more = peel(cvs, ctrail)
        if rest_e:
            raise InputError("leftover edges do not close into circuits")
        circuits.extend(more)
    return path, circuits
