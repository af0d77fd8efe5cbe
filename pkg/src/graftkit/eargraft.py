"""Effective ear grafts: building and decomposing critical quasicombs.

A critical quasicomb is exactly what grows from a single tooth root by
repeatedly summing in *effective* ear grafts.  ``build`` performs the
growth and certifies every step; ``decompose`` reverses it, extracting a
certificate whose ears all carry the given minimum join's restriction as
their own minimum join (a balanced decomposition).  Certificates are
self-contained and replayable by ``verify_decomposition``.

Effectiveness of an ear ``(P, T'; A', B')`` is checked ear-locally:

* every non-bond tooth vertex of the ear is an ear terminal,
* no tooth-side bond is an ear terminal,
* straight ears additionally pin both ends (spine far end out of the
  terminals, spine bond inside) and carry *all* vertices strictly between
  the two path ends as terminals.

The last clause is what forces the unique minimum join of a straight ear
to be one of the four end-trimmed perfect matchings of its path; without
it a straight ear can smuggle in a join that breaks the growth step.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError
from .grafts import (
    BipartiteGraft,
    Graft,
    RelativeEar,
    VerifyOutcome,
    bipartite_graft_sum,
    is_balanced_path,
    is_join,
    odd_degree_vertices,
    relate_ear,
    relative_weight,
    rooted_base,
)
from .multigraph import Circuit, Multigraph, Path, edges_between, subpath, trivial_path
from .solver import SolverLimits, best_min_join, shortest_path, verify_minimum
from .quasicomb import is_critical

__all__ = [
    "EarCandidate",
    "DecompositionStep",
    "FinalSummary",
    "EarDecomposition",
    "BuildResult",
    "PathWitness",
    "is_effective",
    "straight_ear_unique_join",
    "ear_path_witness",
    "build",
    "decompose",
    "verify_decomposition",
]


def _effective_conditions(rel: RelativeEar) -> bool:
    ear = rel.ear
    terminals = ear.terminals
    bonds = rel.bonds
    for v in rel.non_bond_vertices & ear.tooth:
        if v not in terminals:
            return False
    for w in bonds & ear.tooth:
        if w in terminals:
            return False
    if rel.shape.is_straight:
        far = rel.far_end()
        bond = rel.shape.bonds[0]
        if far in ear.spine and far in terminals:
            return False
        if bond in ear.spine and bond not in terminals:
            return False
        assert isinstance(rel.walk, Path)
        for x in rel.walk.interior:
            if x not in terminals:
                return False
    return True


def is_effective(base: BipartiteGraft, ear: BipartiteGraft | RelativeEar) -> bool:
    """Is the ear graft effective relative to ``base``?

    Raises ``InputError`` when the ear is not a valid ear graft relative
    to the base at all (shape, classes, edge ids, terminal parity).
    """
    rel = ear if isinstance(ear, RelativeEar) else relate_ear(base, ear)
    return _effective_conditions(rel)


def straight_ear_unique_join(rel: RelativeEar) -> frozenset[str]:
    """The unique minimum join of an effective straight ear.

    Writing s for the far end and t for the bond, the join is the perfect
    matching of P - s - t, P - s, P, or P - t according to whether the
    sides of (s, t) are (spine, tooth), (spine, spine), (tooth, spine),
    or (tooth, tooth).
    """
    if not rel.shape.is_straight or not isinstance(rel.walk, Path):
        raise InputError("the ear is not straight")
    if not _effective_conditions(rel):
        raise InputError("the ear is not effective")
    ear = rel.ear
    bond = rel.shape.bonds[0]
    far = rel.far_end()
    p = rel.walk if rel.walk.vertices[0] == far else rel.walk.reversed()
    interior = set(p.vertices[1:-1])
    if not interior <= ear.terminals:
        raise InputError("straight ear interior is not fully terminal")
    lo = 1 if far in ear.spine else 0
    hi = len(p.vertices) - (1 if bond in ear.tooth else 0)
    span = hi - lo
    if span % 2 == 1:
        raise AssertionError("effective straight ear with an odd matching span")
    join = frozenset(p.edges[lo + 2 * j] for j in range(span // 2))
    if not is_join(ear.graft, join):
        raise AssertionError("matching formula did not produce a join")
    return join


@dataclass(frozen=True)
class PathWitness:
    """A balanced subpath from an ear vertex to one of its bonds."""

    vertex: str
    bond: str
    path: Path
    weight: int


def _witness_ok(
    ear: BipartiteGraft, x: str, bond: str, p: Path, join: frozenset[str]
) -> bool:
    if not is_balanced_path(ear, p, join):
        return False
    w = relative_weight(join, p)
    if x in ear.spine:
        return w == (0 if bond in ear.spine else 1)
    if bond in ear.spine:
        return w == -1
    return w == 0 and not p.is_trivial and p.edge_at(x) in join


def ear_path_witness(
    rel: RelativeEar, join: frozenset[str], limits: SolverLimits | None = None
) -> dict[str, PathWitness]:
    """Witness table: a contract-satisfying subpath to a bond per ear vertex.

    Spine vertices reach a spine bond at weight 0 or a tooth bond at
    weight 1; tooth vertices reach a spine bond at weight -1 or a tooth
    bond at weight 0 along a path that starts with a join edge.  All
    witness paths are balanced.  Spine bonds witness themselves by the
    trivial path; tooth bonds need no witness and are omitted.  A missing
    witness for any other vertex raises, as it refutes effectiveness.
    """
    ear = rel.ear
    join = frozenset(join)
    if not is_join(ear.graft, join) or len(join) != best_min_join(ear.graft, limits).size:
        raise InputError("the given edge set is not a minimum join of the ear")
    table: dict[str, PathWitness] = {}
    for x in sorted(ear.graph.vertices):
        if x in rel.bonds:
            if x in ear.spine:
                p = trivial_path(ear.graph, x)
                table[x] = PathWitness(x, x, p, 0)
            continue
        found = None
        for bond in sorted(rel.bonds):
            if isinstance(rel.walk, Circuit):
                candidates = rel.walk.arcs(x, bond)
            else:
                candidates = [subpath(rel.walk, x, bond)]
            for p in candidates:
                if _witness_ok(ear, x, bond, p, join):
                    found = PathWitness(x, bond, p, relative_weight(join, p))
                    break
            if found:
                break
        if found is None:
            raise InputError(f"no balanced witness path from {x!r} to a bond")
        table[x] = found
    return table


@dataclass(frozen=True)
class EarCandidate:
    """Raw material for one growth step: an ear with optional join.

    ``edges`` lists (edge id, endpoint, endpoint); class sets must cover
    exactly the ear's vertices.  When ``join`` is omitted the builder
    solves for a minimum join of the ear itself.
    """

    edges: tuple[tuple[str, str, str], ...]
    terminals: frozenset[str]
    spine: frozenset[str]
    tooth: frozenset[str]
    join: frozenset[str] | None = None


@dataclass(frozen=True)
class DecompositionStep:
    kind: str  # "round" | "straight"
    edges: tuple[tuple[str, str, str], ...]
    terminals: tuple[str, ...]
    spine: tuple[str, ...]
    tooth: tuple[str, ...]
    bonds: tuple[str, ...]
    join: tuple[str, ...]


@dataclass(frozen=True)
class FinalSummary:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, str], ...]
    terminals: tuple[str, ...]
    spine: tuple[str, ...]
    tooth: tuple[str, ...]


@dataclass(frozen=True)
class EarDecomposition:
    """Certificate: ordered effective ears that rebuild a bipartite graft."""

    root: str
    steps: tuple[DecompositionStep, ...]
    final: FinalSummary


@dataclass(frozen=True)
class BuildResult:
    graft: BipartiteGraft
    join: frozenset[str]
    decomposition: EarDecomposition


def _ear_to_graft(
    edges: tuple[tuple[str, str, str], ...],
    terminals: frozenset[str],
    spine: frozenset[str],
    tooth: frozenset[str],
) -> BipartiteGraft:
    vertices = set()
    emap: dict[str, tuple[str, str]] = {}
    for eid, u, v in edges:
        if eid in emap:
            raise InputError(f"duplicate edge id {eid!r} in an ear")
        emap[eid] = (u, v)
        vertices.update((u, v))
    if spine | tooth != vertices or spine & tooth:
        raise InputError("ear class sets do not partition its vertices")
    graph = Multigraph(vertices, emap)
    return BipartiteGraft(Graft(graph, frozenset(terminals)), spine, tooth)


def candidate_graft(cand: "EarCandidate") -> BipartiteGraft:
    """The candidate's ear as a standalone bipartite graft."""
    return _ear_to_graft(cand.edges, cand.terminals, cand.spine, cand.tooth)


def _edge_triples(g: Multigraph, edge_ids) -> tuple[tuple[str, str, str], ...]:
    return tuple((e, *g.endpoints(e)) for e in sorted(edge_ids))


def _record_step(rel: RelativeEar, join: frozenset[str]) -> DecompositionStep:
    ear = rel.ear
    return DecompositionStep(
        rel.shape.kind,
        _edge_triples(ear.graph, ear.graph.edge_ids),
        tuple(sorted(ear.terminals)),
        tuple(sorted(ear.spine)),
        tuple(sorted(ear.tooth)),
        tuple(sorted(rel.shape.bonds)),
        tuple(sorted(join)),
    )


def _summary(bg: BipartiteGraft) -> FinalSummary:
    return FinalSummary(
        tuple(sorted(bg.graph.vertices)),
        _edge_triples(bg.graph, bg.graph.edge_ids),
        tuple(sorted(bg.terminals)),
        tuple(sorted(bg.spine)),
        tuple(sorted(bg.tooth)),
    )


def build(
    root: str,
    candidates: list[EarCandidate] | tuple[EarCandidate, ...],
    limits: SolverLimits | None = None,
) -> BuildResult:
    """Grow a critical quasicomb from ``root`` by the given effective ears.

    Each candidate join is checked to be a minimum join of its ear (for
    straight ears, *the* unique one); the union of the ear joins is
    checked to stay a minimum join of the running sum after every step,
    which is what makes the result critical.
    """
    running = rooted_base(root)
    combined: frozenset[str] = frozenset()
    steps: list[DecompositionStep] = []
    for idx, cand in enumerate(candidates):
        try:
            ear = _ear_to_graft(cand.edges, cand.terminals, cand.spine, cand.tooth)
            rel = relate_ear(running, ear)
        except InputError as exc:
            raise InputError(f"ear {idx}: {exc}") from None
        if not _effective_conditions(rel):
            raise InputError(f"ear {idx}: not an effective ear graft")
        if rel.shape.is_straight:
            unique = straight_ear_unique_join(rel)
            if cand.join is not None and frozenset(cand.join) != unique:
                raise InputError(f"ear {idx}: join differs from the unique minimum join")
            ear_join = unique
        elif cand.join is None:
            ear_join = best_min_join(ear.graft, limits).join
        else:
            ear_join = frozenset(cand.join)
            if not is_join(ear.graft, ear_join):
                raise InputError(f"ear {idx}: the given edge set is not a join of the ear")
            if len(ear_join) != best_min_join(ear.graft, limits).size:
                raise InputError(f"ear {idx}: the given join is not minimum")
        running = bipartite_graft_sum(running, ear)
        combined |= ear_join
        if not is_join(running.graft, combined) or not verify_minimum(
            running.graft, combined, limits
        ):
            raise InputError(
                f"ear {idx}: combined join stopped being minimum; "
                "the ear cannot be effective"
            )
        steps.append(_record_step(rel, ear_join))
    decomposition = EarDecomposition(root, tuple(steps), _summary(running))
    return BuildResult(running, combined, decomposition)


def decompose(
    bg: BipartiteGraft,
    root: str,
    join: frozenset[str],
    limits: SolverLimits | None = None,
    precheck: bool = True,
) -> EarDecomposition:
    """Extract a balanced ear decomposition of a critical quasicomb.

    Grows a covered subgraft from the root.  While uncovered vertices
    remain: a non-join edge from a covered tooth vertex to a new spine
    vertex becomes a single-edge straight ear; otherwise an edge from a
    covered spine vertex to a new tooth vertex v is taken, and if it lies
    off the join, the weight-0 shortest path from v to the root is traced
    until it first re-enters the covered set, closing a round ear; if it
    lies on the join it becomes a single-edge straight ear carrying both
    endpoints as terminals.  Once all vertices are covered, leftover
    edges are swept in as single-edge round ears.  The invariant that no
    join edge leaves a covered tooth vertex toward an uncovered spine
    vertex is asserted after every step.
    """
    join = frozenset(join)
    if precheck:
        report = is_critical(bg, root, limits)
        if not report.verdict:
            raise InputError(f"not critical with root {root!r}: {report.violations[:3]}")
        if not verify_minimum(bg.graft, join, limits):
            raise InputError("the given join is not minimum")
    g = bg.graph
    covered_v: set[str] = {root}
    covered_e: set[str] = set()
    running = rooted_base(root)
    steps: list[DecompositionStep] = []

    def breach(msg: str) -> InputError:
        return InputError(
            f"internal invariant breach: {msg}; covered vertices "
            f"{sorted(covered_v)}, covered edges {sorted(covered_e)}"
        )

    def emit(ear: BipartiteGraft) -> None:
        nonlocal running
        rel = relate_ear(running, ear)
        if not _effective_conditions(rel):
            raise breach("emitted ear is not effective")
        ear_join = join & ear.graph.edge_ids
        if not is_join(ear.graft, ear_join):
            raise breach("join restriction is not a join of the ear")
        steps.append(_record_step(rel, ear_join))
        running = bipartite_graft_sum(running, ear)
        covered_v.update(ear.graph.vertices)
        covered_e.update(ear.graph.edge_ids)
        spill = edges_between(g, covered_v & bg.tooth, bg.spine - covered_v) & join
        if spill:
            raise breach(f"join edges {sorted(spill)} leave the covered tooth set")

    max_steps = len(g.vertices) + len(g.edges) + 1
    for _ in range(max_steps):
        if covered_v == g.vertices and len(covered_e) == len(g.edges):
            break
        tooth_covered = covered_v & bg.tooth
        spine_new = bg.spine - covered_v
        out_a = sorted(edges_between(g, tooth_covered, spine_new))
        if out_a:
            eid = out_a[0]
            if eid in join:
                raise breach(f"edge {eid!r} violates the growth invariant")
            u, v = g.endpoints(eid)
            x, y = (u, v) if u in spine_new else (v, u)
            emit(_ear_to_graft(((eid, x, y),), frozenset(), frozenset([x]), frozenset([y])))
            continue
        if covered_v != g.vertices:
            out_b = sorted(edges_between(g, covered_v & bg.spine, bg.tooth - covered_v))
            if not out_b:
                raise breach("no edge leaves the covered set although vertices remain")
            eid = out_b[0]
            a, b = g.endpoints(eid)
            u, v = (a, b) if a in bg.spine else (b, a)
            if eid in join:
                emit(
                    _ear_to_graft(
                        ((eid, u, v),), frozenset([u, v]), frozenset([u]), frozenset([v])
                    )
                )
                continue
            p = shortest_path(bg.graft, join, v, root, limits, precheck=False)
            if (
                relative_weight(join, p) != 0
                or not is_balanced_path(bg, p, join)
                or p.edge_at(v) not in join
            ):
                raise breach(f"shortest path from {v!r} is not balanced of weight 0")
            stop = next(
                (i for i, x in enumerate(p.vertices) if i > 0 and x in covered_v), None
            )
            if stop is None:
                raise breach(f"shortest path from {v!r} never re-enters the covered set")
            prefix_v = p.vertices[: stop + 1]
            prefix_e = p.edges[:stop]
            ear_edges = [(eid, u, v)] + [
                (e, *g.endpoints(e)) for e in prefix_e
            ]
            ear_ids = frozenset(e for e, _x, _y in ear_edges)
            ear_vertices = set(prefix_v) | {u}
            terminals = odd_degree_vertices(g, ear_ids & join) & ear_vertices
            emit(
                _ear_to_graft(
                    tuple(ear_edges),
                    frozenset(terminals),
                    frozenset(ear_vertices) & bg.spine,
                    frozenset(ear_vertices) & bg.tooth,
                )
            )
            continue
        # Vertex saturation: sweep uncovered edges as single-edge round ears.
        eid = min(e for e in g.edges if e not in covered_e)
        a, b = g.endpoints(eid)
        u, v = (a, b) if a in bg.spine else (b, a)
        terminals = frozenset([u, v]) if eid in join else frozenset()
        emit(_ear_to_graft(((eid, u, v),), terminals, frozenset([u]), frozenset([v])))
    else:
        raise breach("decomposition did not terminate within the step budget")

    if running.graph != bg.graph or running.terminals != bg.terminals:
        raise breach("replay of the emitted ears does not rebuild the input")
    if running.spine != bg.spine or running.tooth != bg.tooth:
        raise breach("replay classes disagree with the input")
    return EarDecomposition(root, tuple(steps), _summary(bg))


def verify_decomposition(
    bg: BipartiteGraft,
    root: str,
    d: EarDecomposition,
    join: frozenset[str] | None = None,
    limits: SolverLimits | None = None,
) -> VerifyOutcome:
    """Replay a certificate against a graft.

    Checks the base, effectiveness of every ear relative to the prefix
    sum, recorded kinds and bonds, that every recorded ear join is a
    minimum join of its ear, and exact reconstruction.  With ``join``
    given, each step's join must equal the join's restriction to the ear
    and the steps' joins must exhaust it.
    """
    if d.root != root:
        return VerifyOutcome(False, None, f"certificate root {d.root!r} != {root!r}")
    if not bg.graph.has_vertex(root) or root not in bg.tooth:
        return VerifyOutcome(False, None, f"root {root!r} is not a tooth vertex")
    running = rooted_base(root)
    combined: set[str] = set()
    for idx, step in enumerate(d.steps):
        try:
            ear = _ear_to_graft(
                step.edges,
                frozenset(step.terminals),
                frozenset(step.spine),
                frozenset(step.tooth),
            )
            rel = relate_ear(running, ear)
        except InputError as exc:
            return VerifyOutcome(False, idx, str(exc))
        if not _effective_conditions(rel):
            return VerifyOutcome(False, idx, "ear is not effective")
        if step.kind != rel.shape.kind:
            return VerifyOutcome(False, idx, "recorded kind disagrees with the shape")
        if tuple(sorted(step.bonds)) != tuple(sorted(rel.shape.bonds)):
            return VerifyOutcome(False, idx, "recorded bonds disagree with the shape")
        step_join = frozenset(step.join)
        if not step_join <= ear.graph.edge_ids:
            return VerifyOutcome(False, idx, "join edges outside the ear")
        if not is_join(ear.graft, step_join):
            return VerifyOutcome(False, idx, "recorded join is not a join of the ear")
        try:
            if len(step_join) != best_min_join(ear.graft, limits).size:
                return VerifyOutcome(False, idx, "recorded join is not minimum")
        except InputError as exc:
            return VerifyOutcome(False, idx, str(exc))
        if join is not None and step_join != frozenset(join) & ear.graph.edge_ids:
            return VerifyOutcome(
                False, idx, "recorded join differs from the join's restriction"
            )
        running = bipartite_graft_sum(running, ear)
        combined |= step_join
    if running.graph != bg.graph:
        return VerifyOutcome(False, None, "replayed graph differs from the target")
    if running.terminals != bg.terminals:
        return VerifyOutcome(False, None, "replayed terminals differ from the target")
    if running.spine != bg.spine or running.tooth != bg.tooth:
        return VerifyOutcome(False, None, "replayed classes differ from the target")
    if d.final != _summary(bg):
        return VerifyOutcome(False, None, "final summary does not match the graft")
    if join is not None and combined != frozenset(join):
        return VerifyOutcome(False, None, "step joins do not exhaust the given join")
    return VerifyOutcome(True)
