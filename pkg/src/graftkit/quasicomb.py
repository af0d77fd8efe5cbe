"""Combs, quasicombs, and critical quasicombs.

A comb has its whole tooth class among the terminals and minimum join
size equal to the tooth count; a quasicomb relaxes this to the number of
tooth terminals.  A bipartite graft is critical with root r (a tooth
vertex) when every spine vertex has join distance 1 to r and every tooth
vertex distance 0; critical grafts are quasicombs whose tooth terminals
are everything on the tooth side except the root.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InputError
from .grafts import BipartiteGraft, is_balanced_path, relative_weight
from .multigraph import cut
from .solver import SolverLimits, best_min_join, distance, shortest_path, verify_minimum


@dataclass(frozen=True)
class CriticalityReport:
    """Per-vertex distances to the root with the overall verdict.

    ``distances`` maps each vertex to its join distance to the root, or
    ``None`` when the vertex cannot reach the root.  ``nu_base`` records
    the minimum join size the distances were measured against.
    """

    root: str
    verdict: bool
    nu_base: int
    distances: dict[str, int | None] = field(compare=False)
    violations: tuple[tuple[str, str], ...] = ()


def is_comb(bg: BipartiteGraft, limits: SolverLimits | None = None) -> bool:
    if not bg.tooth <= bg.terminals:
        return False
    return best_min_join(bg.graft, limits).size == len(bg.tooth)


def is_quasicomb(bg: BipartiteGraft, limits: SolverLimits | None = None) -> bool:
    return best_min_join(bg.graft, limits).size == len(bg.tooth & bg.terminals)


def is_critical(
    bg: BipartiteGraft, root: str, limits: SolverLimits | None = None
) -> CriticalityReport:
    """Check criticality by measuring every vertex's distance to the root.

    Spine vertices must sit at distance 1 and tooth vertices at distance
    0.  Vertices in other components are violations; connectivity is not
    assumed up front.
    """
    if root not in bg.tooth:
        raise InputError(f"root {root!r} must be a tooth vertex")
    solved = best_min_join(bg.graft, limits)
    distances: dict[str, int | None] = {}
    violations: list[tuple[str, str]] = []
    for v in sorted(bg.graph.vertices):
        expected = 1 if v in bg.spine else 0
        try:
            d = distance(bg.graft, solved.join, v, root, limits, precheck=False).distance
        except InputError:
            distances[v] = None
            violations.append((v, "cannot reach the root"))
            continue
        distances[v] = d
        if d != expected:
            violations.append((v, f"distance {d}, expected {expected}"))
    return CriticalityReport(
        root, not violations, solved.size, distances, tuple(violations)
    )


def has_critical_quasicomb_shape(
    bg: BipartiteGraft, root: str, limits: SolverLimits | None = None
) -> bool:
    """A critical graft must be a quasicomb with tooth terminals B - root."""
    return is_quasicomb(bg, limits) and bg.tooth & bg.terminals == bg.tooth - {root}


@dataclass(frozen=True)
class CriticalJoinReport:
    """Structure of a minimum join on a critical quasicomb.

    Four facts are checked: the root is join-free, every other tooth
    vertex meets exactly one join edge, its shortest path to the root is
    balanced of weight 0 starting with a join edge, and every spine
    vertex's shortest path to the root is balanced of weight 1.
    """

    root_join_free: bool
    tooth_degrees_ok: bool
    tooth_paths_ok: bool
    spine_paths_ok: bool
    failures: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return (
            self.root_join_free
            and self.tooth_degrees_ok
            and self.tooth_paths_ok
            and self.spine_paths_ok
        )


def critical_join_report(
    bg: BipartiteGraft,
    root: str,
    join: frozenset[str],
    limits: SolverLimits | None = None,
) -> CriticalJoinReport:
    join = frozenset(join)
    if root not in bg.tooth:
        raise InputError(f"root {root!r} must be a tooth vertex")
    if not verify_minimum(bg.graft, join, limits):
        raise InputError("the given join is not minimum")
    g = bg.graph
    failures: list[str] = []

    root_free = not (cut(g, {root}) & join)
    if not root_free:
        failures.append(f"join edges at the root {root!r}")

    degrees_ok = True
    for v in sorted(bg.tooth - {root}):
        if len(cut(g, {v}) & join) != 1:
            degrees_ok = False
            failures.append(f"tooth vertex {v!r} does not meet exactly one join edge")

    tooth_ok = True
    for v in sorted(bg.tooth - {root}):
        p = shortest_path(bg.graft, join, v, root, limits, precheck=False)
        if not (
            is_balanced_path(bg, p, join)
            and relative_weight(join, p) == 0
            and not p.is_trivial
            and p.edge_at(v) in join
        ):
            tooth_ok = False
            failures.append(f"tooth vertex {v!r} has a bad shortest path to the root")

    spine_ok = True
    for v in sorted(bg.spine):
        p = shortest_path(bg.graft, join, v, root, limits, precheck=False)
        if not (is_balanced_path(bg, p, join) and relative_weight(join, p) == 1):
            spine_ok = False
            failures.append(f"spine vertex {v!r} has a bad shortest path to the root")

    return CriticalJoinReport(root_free, degrees_ok, tooth_ok, spine_ok, tuple(failures))


def comb_distance_sufficiency(
    bg: BipartiteGraft,
    root: str,
    join: frozenset[str],
    limits: SolverLimits | None = None,
) -> bool:
    """Distance test for combs, rooted on the spine side.

    When every spine vertex is at distance 0 from ``root`` and every
    tooth vertex at distance -1, the graft must be a comb.  Returns True
    vacuously when the distance hypothesis does not hold.
    """
    if root not in bg.spine:
        raise InputError(f"root {root!r} must be a spine vertex")
    join = frozenset(join)
    if not verify_minimum(bg.graft, join, limits):
        raise InputError("the given join is not minimum")
    for v in sorted(bg.graph.vertices):
        expected = 0 if v in bg.spine else -1
        try:
            d = distance(bg.graft, join, root, v, limits, precheck=False).distance
        except InputError:
            return True
        if d != expected:
            return True
    return is_comb(bg, limits)
