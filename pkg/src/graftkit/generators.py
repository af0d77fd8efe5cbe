"""Seeded random instance generators.

All sampling goes through one ``random.Random`` (the stdlib Mersenne
Twister) seeded from the config, and every collection is sorted before a
choice is drawn, so identical configs produce identical instances.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .eargraft import BuildResult, EarCandidate, build, candidate_graft, is_effective
from .errors import CapacityError, InputError
from .grafts import BipartiteGraft, Graft, bipartite_graft_sum, relate_ear, rooted_base
from .multigraph import Multigraph
from .solver import SolverLimits

KINDS = ("graft", "critical-quasicomb", "factor-critical")


@dataclass(frozen=True)
class GenConfig:
    seed: int
    kind: str = "graft"
    max_vertices: int = 10
    max_ears: int = 4
    max_ear_edges: int = 4
    max_extra_edges: int = 4
    t_density: float = 0.5
    max_terminals: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InputError(f"unknown generator kind {self.kind!r}")
        if self.max_vertices < 1 or self.max_ears < 0 or self.max_ear_edges < 1:
            raise InputError("generator bounds must be positive")


def random_graft(cfg: GenConfig) -> Graft:
    """A random multigraph, connected per component, with even terminal
    counts per component."""
    rng = random.Random(cfg.seed)
    n = rng.randint(1, cfg.max_vertices)
    names = [f"v{i:03d}" for i in range(n)]
    comp_count = rng.randint(1, min(3, n))
    comp_of = [rng.randrange(comp_count) for _ in range(n)]
    comps: list[list[str]] = [[] for _ in range(comp_count)]
    for name, c in zip(names, comp_of):
        comps[c].append(name)
    comps = [c for c in comps if c]

    edges: dict[str, tuple[str, str]] = {}
    counter = 0

    def add_edge(u: str, v: str) -> None:
        nonlocal counter
        edges[f"e{counter:03d}"] = (u, v)
        counter += 1

    for comp in comps:
        for j in range(1, len(comp)):
            add_edge(comp[rng.randrange(j)], comp[j])
    for _ in range(rng.randint(0, cfg.max_extra_edges)):
        big = [c for c in comps if len(c) >= 2]
        if not big:
            break
        comp = big[rng.randrange(len(big))]
        u, v = rng.sample(comp, 2)
        add_edge(u, v)

    chosen: list[list[str]] = []
    for comp in comps:
        picked = [v for v in comp if rng.random() < cfg.t_density]
        if len(picked) % 2 == 1:
            picked.pop()
        chosen.append(picked)
    if cfg.max_terminals is not None:
        while sum(len(p) for p in chosen) > cfg.max_terminals:
            chosen.sort(key=len, reverse=True)
            chosen[0] = chosen[0][:-2]
    terminals = frozenset(v for picked in chosen for v in picked)
    return Graft(Multigraph(names, edges), terminals)


def _alternating_sides(start_side: str, count: int) -> list[str]:
    sides = []
    side = start_side
    for _ in range(count):
        sides.append(side)
        side = "tooth" if side == "spine" else "spine"
    return sides


def random_critical_quasicomb(
    cfg: GenConfig, limits: SolverLimits | None = None
) -> BuildResult:
    """Grow a critical quasicomb from root ``r`` by random effective ears.

    Ears are rejection-sampled: a shape and length are drawn, terminal
    sets are drawn from the choices effectiveness leaves open, and the
    candidate is kept only if it relates to the running graft as an
    effective ear.  After repeated failures the length budget shrinks;
    exhausting it entirely is a capacity error.
    """
    rng = random.Random(cfg.seed)
    root = "r"
    running = rooted_base(root)
    candidates: list[EarCandidate] = []
    vertex_counter = 0
    edge_counter = 0
    ear_target = rng.randint(0, cfg.max_ears)

    def fresh_vertex() -> str:
        nonlocal vertex_counter
        vertex_counter += 1
        return f"v{vertex_counter:03d}"

    def fresh_edge() -> str:
        nonlocal edge_counter
        edge_counter += 1
        return f"e{edge_counter:03d}"

    def side_of(v: str) -> str:
        return "spine" if v in running.spine else "tooth"

    def sample_ear(max_len: int) -> EarCandidate | None:
        verts = sorted(running.graph.vertices)
        budget = cfg.max_vertices - len(verts)
        shapes = ["straight", "round-circuit"]
        if len(verts) >= 2:
            shapes.append("round-path")
        shape = shapes[rng.randrange(len(shapes))]

        if shape == "straight":
            feasible = [l for l in range(1, max_len + 1) if l <= budget]
            if not feasible:
                return None
            length = feasible[rng.randrange(len(feasible))]
            bond = verts[rng.randrange(len(verts))]
            vs = [bond] + [fresh_vertex() for _ in range(length)]
            sides = _alternating_sides(side_of(bond), length + 1)
            bonds = [bond]
        elif shape == "round-path":
            s, t = rng.sample(verts, 2)
            want_odd = side_of(s) != side_of(t)
            feasible = [
                l
                for l in range(1, max_len + 1)
                if l % 2 == (1 if want_odd else 0) and l - 1 <= budget
            ]
            if not feasible:
                return None
            length = feasible[rng.randrange(len(feasible))]
            vs = [s] + [fresh_vertex() for _ in range(length - 1)] + [t]
            sides = _alternating_sides(side_of(s), length) + [side_of(t)]
            bonds = [s, t]
        else:
            bond = verts[rng.randrange(len(verts))]
            feasible = [
                l for l in range(2, max_len + 1, 2) if l - 1 <= budget
            ]
            if not feasible:
                return None
            length = feasible[rng.randrange(len(feasible))]
            vs = [bond] + [fresh_vertex() for _ in range(length - 1)]
            sides = _alternating_sides(side_of(bond), length)
            bonds = [bond]

        edges = []
        for i in range(length):
            a = vs[i]
            b = vs[(i + 1) % len(vs)] if shape == "round-circuit" else vs[i + 1]
            edges.append((fresh_edge(), a, b))
        spine = frozenset(v for v, s in zip(vs, sides) if s == "spine")
        tooth = frozenset(vs) - spine

        if shape == "straight":
            far = vs[-1]
            terminals = set(vs)
            if far in spine:
                terminals.discard(far)
            if bonds[0] in tooth:
                terminals.discard(bonds[0])
        else:
            terminals = {v for v in vs if v in tooth and v not in bonds}
            optional = sorted(v for v in vs if v in spine)
            chosen = [v for v in optional if rng.random() < 0.5]
            terminals |= set(chosen)
            if len(terminals) % 2 == 1:
                flips = [v for v in optional if v not in terminals] or chosen
                if not flips:
                    return None
                pick = flips[rng.randrange(len(flips))]
                terminals ^= {pick}
        return EarCandidate(tuple(edges), frozenset(terminals), spine, tooth)

    for _ in range(ear_target):
        max_len = cfg.max_ear_edges
        placed = False
        while max_len >= 1 and not placed:
            for _attempt in range(1000):
                saved = (vertex_counter, edge_counter)
                cand = sample_ear(max_len)
                if cand is None:
                    vertex_counter, edge_counter = saved
                    break
                try:
                    step = build_step(running, cand, limits)
                except InputError:
                    vertex_counter, edge_counter = saved
                    continue
                running = step
                candidates.append(cand)
                placed = True
                break
            max_len -= 1
        if not placed and cfg.max_vertices - len(running.graph.vertices) > 0:
            raise CapacityError("ear sampling exhausted its retry budget")
        if len(running.graph.vertices) >= cfg.max_vertices:
            break
    return build(root, candidates, limits)


def build_step(
    base: BipartiteGraft, cand: EarCandidate, limits: SolverLimits | None = None
) -> BipartiteGraft:
    """Apply one candidate ear to a base graft, insisting on effectiveness."""
    ear = candidate_graft(cand)
    rel = relate_ear(base, ear)
    if not is_effective(base, rel):
        raise InputError("candidate ear is not effective")
    return bipartite_graft_sum(base, ear)


def random_factor_critical(cfg: GenConfig) -> Multigraph:
    """A factor-critical graph grown by random odd round ears from ``r``."""
    rng = random.Random(cfg.seed)
    root = "r"
    if cfg.max_vertices < 3:
        return Multigraph([root], {})
    vertices = [root]
    edges: dict[str, tuple[str, str]] = {}
    vcount = 0
    ecount = 0

    def fresh() -> str:
        nonlocal vcount
        vcount += 1
        return f"v{vcount:03d}"

    def add_edge(u: str, v: str) -> None:
        nonlocal ecount
        edges[f"e{ecount:03d}"] = (u, v)
        ecount += 1

    def add_circuit(bond: str, length: int) -> None:
        ring = [bond] + [fresh() for _ in range(length - 1)]
        vertices.extend(ring[1:])
        for i in range(length):
            add_edge(ring[i], ring[(i + 1) % length])

    def add_path(s: str, t: str, length: int) -> None:
        chain = [s] + [fresh() for _ in range(length - 1)] + [t]
        vertices.extend(chain[1:-1])
        for a, b in zip(chain, chain[1:]):
            add_edge(a, b)

    first_len = rng.choice([3, 3, 5]) if cfg.max_vertices >= 5 else 3
    add_circuit(root, first_len)
    for _ in range(rng.randint(0, max(0, cfg.max_ears - 1))):
        budget = cfg.max_vertices - len(vertices)
        options = ["edge"]
        if budget >= 2:
            options += ["path", "circuit"]
        kind = options[rng.randrange(len(options))]
        if kind == "edge":
            u, v = rng.sample(sorted(vertices), 2)
            add_edge(u, v)
        elif kind == "path":
            lengths = [l for l in (3, 5) if l - 1 <= budget]
            if not lengths:
                continue
            length = lengths[rng.randrange(len(lengths))]
            u, v = rng.sample(sorted(vertices), 2)
            add_path(u, v, length)
        else:
            lengths = [l for l in (3, 5) if l - 1 <= budget]
            if not lengths:
                continue
            length = lengths[rng.randrange(len(lengths))]
            bond = rng.choice(sorted(vertices))
            add_circuit(bond, length)
    return Multigraph(vertices, edges)


def generate(cfg: GenConfig, limits: SolverLimits | None = None):
    """Dispatch on ``cfg.kind``; used by the command-line ``gen``."""
    if cfg.kind == "graft":
        return random_graft(cfg)
    if cfg.kind == "critical-quasicomb":
        return random_critical_quasicomb(cfg, limits)
    return random_factor_critical(cfg)
