"""Instance files, join files, certificate JSON, and DOT rendering.

The graft file format is line-based UTF-8 with ``#`` comments:

    vertex <id> <A|B|->      # '-' for grafts without a bipartition
    edge <edge-id> <u> <v>
    T <id> [<id> ...]        # repeatable; the union is taken
    root <id>                # optional default root

Emission is canonical (sorted ids), so ``parse(emit(x)) == x``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .eargraft import DecompositionStep, EarDecomposition, FinalSummary
from .errors import InputError
from .grafts import BipartiteGraft, Graft
from .multigraph import Multigraph

CERTIFICATE_FORMAT = "graft-eardecomp/1"


@dataclass(frozen=True)
class ParsedInstance:
    instance: Graft | BipartiteGraft
    root: str | None

    @property
    def graft(self) -> Graft:
        inst = self.instance
        return inst.graft if isinstance(inst, BipartiteGraft) else inst

    @property
    def bipartite(self) -> BipartiteGraft:
        if not isinstance(self.instance, BipartiteGraft):
            raise InputError("this instance has no bipartition")
        return self.instance


def parse_graft_text(text: str) -> ParsedInstance:
    vertices: dict[str, str] = {}
    edges: dict[str, tuple[str, str]] = {}
    terminals: set[str] = set()
    root: str | None = None

    def fail(lineno: int, msg: str) -> InputError:
        return InputError(f"line {lineno}: {msg}")

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        directive, args = tokens[0], tokens[1:]
        if directive == "vertex":
            if len(args) != 2:
                raise fail(lineno, "expected: vertex <id> <A|B|->")
            vid, cls = args
            if cls not in ("A", "B", "-"):
                raise fail(lineno, f"unknown class {cls!r}")
            if vid in vertices:
                raise fail(lineno, f"duplicate vertex {vid!r}")
            vertices[vid] = cls
        elif directive == "edge":
            if len(args) != 3:
                raise fail(lineno, "expected: edge <edge-id> <u> <v>")
            eid, u, v = args
            if eid in edges:
                raise fail(lineno, f"duplicate edge id {eid!r}")
            for x in (u, v):
                if x not in vertices:
                    raise fail(lineno, f"edge {eid!r} references unknown vertex {x!r}")
            if u == v:
                raise fail(lineno, f"edge {eid!r} is a self-loop")
            edges[eid] = (u, v)
        elif directive == "T":
            if not args:
                raise fail(lineno, "expected: T <id> [<id> ...]")
            for x in args:
                if x not in vertices:
                    raise fail(lineno, f"unknown terminal vertex {x!r}")
            terminals.update(args)
        elif directive == "root":
            if len(args) != 1:
                raise fail(lineno, "expected: root <id>")
            if args[0] not in vertices:
                raise fail(lineno, f"unknown root vertex {args[0]!r}")
            root = args[0]
        else:
            raise fail(lineno, f"unknown directive {directive!r}")

    if not vertices:
        raise InputError("the file declares no vertices")
    classes = set(vertices.values())
    graph = Multigraph(vertices, edges)
    graft = Graft(graph, frozenset(terminals))
    if classes <= {"-"}:
        return ParsedInstance(graft, root)
    if "-" in classes:
        raise InputError("file mixes '-' vertices with A/B classed vertices")
    spine = frozenset(v for v, c in vertices.items() if c == "A")
    tooth = frozenset(v for v, c in vertices.items() if c == "B")
    return ParsedInstance(BipartiteGraft(graft, spine, tooth), root)


def emit_graft_text(instance: Graft | BipartiteGraft, root: str | None = None) -> str:
    if isinstance(instance, BipartiteGraft):
        graft = instance.graft
        cls = {v: ("A" if v in instance.spine else "B") for v in graft.graph.vertices}
    else:
        graft = instance
        cls = {v: "-" for v in graft.graph.vertices}
    lines = []
    for v in sorted(graft.graph.vertices):
        lines.append(f"vertex {v} {cls[v]}")
    for eid in sorted(graft.graph.edges):
        u, v = graft.graph.endpoints(eid)
        lines.append(f"edge {eid} {u} {v}")
    if graft.terminals:
        lines.append("T " + " ".join(sorted(graft.terminals)))
    if root is not None:
        if not graft.graph.has_vertex(root):
            raise InputError(f"root {root!r} is not a vertex")
        lines.append(f"root {root}")
    return "\n".join(lines) + "\n"


def parse_join_text(text: str, graph: Multigraph) -> frozenset[str]:
    out = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if len(line.split()) != 1:
            raise InputError(f"line {lineno}: expected one edge id per line")
        if line not in graph.edges:
            raise InputError(f"line {lineno}: unknown edge id {line!r}")
        out.add(line)
    return frozenset(out)


def emit_join_text(join: frozenset[str]) -> str:
    return "".join(f"{e}\n" for e in sorted(join))


def _str_list(value, what: str) -> tuple[str, ...]:
    if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
        raise InputError(f"{what} must be a list of strings")
    return tuple(value)


def _edge_list(value, what: str) -> tuple[tuple[str, str, str], ...]:
    if not isinstance(value, list):
        raise InputError(f"{what} must be a list of [id, u, v] triples")
    out = []
    for item in value:
        if (
            not isinstance(item, list)
            or len(item) != 3
            or not all(isinstance(x, str) for x in item)
        ):
            raise InputError(f"{what} must contain [id, u, v] string triples")
        out.append((item[0], item[1], item[2]))
    return tuple(out)


def decomposition_to_json(d: EarDecomposition) -> str:
    payload = {
        "format": CERTIFICATE_FORMAT,
        "root": d.root,
        "steps": [
            {
                "kind": s.kind,
                "edges": [list(e) for e in s.edges],
                "terminals": list(s.terminals),
                "spine": list(s.spine),
                "tooth": list(s.tooth),
                "bonds": list(s.bonds),
                "join": list(s.join),
            }
            for s in d.steps
        ],
        "final": {
            "vertices": list(d.final.vertices),
            "edges": [list(e) for e in d.final.edges],
            "terminals": list(d.final.terminals),
            "spine": list(d.final.spine),
            "tooth": list(d.final.tooth),
        },
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


_STEP_KEYS = {"kind", "edges", "terminals", "spine", "tooth", "bonds", "join"}
_FINAL_KEYS = {"vertices", "edges", "terminals", "spine", "tooth"}


def decomposition_from_json(text: str) -> EarDecomposition:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"certificate is not valid JSON: {exc}") from None
    if not isinstance(payload, dict):
        raise InputError("certificate must be a JSON object")
    if set(payload) != {"format", "root", "steps", "final"}:
        raise InputError("certificate has unexpected top-level keys")
    if payload["format"] != CERTIFICATE_FORMAT:
        raise InputError(f"unsupported certificate format {payload['format']!r}")
    if not isinstance(payload["root"], str):
        raise InputError("certificate root must be a string")
    if not isinstance(payload["steps"], list):
        raise InputError("certificate steps must be a list")
    steps = []
    for i, s in enumerate(payload["steps"]):
        if not isinstance(s, dict) or set(s) != _STEP_KEYS:
            raise InputError(f"step {i} has unexpected keys")
        if s["kind"] not in ("round", "straight"):
            raise InputError(f"step {i} has unknown kind {s['kind']!r}")
        steps.append(
            DecompositionStep(
                s["kind"],
                _edge_list(s["edges"], f"step {i} edges"),
                _str_list(s["terminals"], f"step {i} terminals"),
                _str_list(s["spine"], f"step {i} spine"),
                _str_list(s["tooth"], f"step {i} tooth"),
                _str_list(s["bonds"], f"step {i} bonds"),
                _str_list(s["join"], f"step {i} join"),
            )
        )
    f = payload["final"]
    if not isinstance(f, dict) or set(f) != _FINAL_KEYS:
        raise InputError("final summary has unexpected keys")
    final = FinalSummary(
        _str_list(f["vertices"], "final vertices"),
        _edge_list(f["edges"], "final edges"),
        _str_list(f["terminals"], "final terminals"),
        _str_list(f["spine"], "final spine"),
        _str_list(f["tooth"], "final tooth"),
    )
    return EarDecomposition(payload["root"], tuple(steps), final)


def to_dot(instance: Graft | BipartiteGraft, join: frozenset[str] | None = None) -> str:
    """DOT text with join edges bold, spine as boxes, tooth as ellipses.

    Terminal vertices get a double outline.  Vertex and edge order is
    sorted, so output is stable.
    """
    join = frozenset(join or ())
    graph = instance.graph
    terminals = instance.terminals
    if isinstance(instance, BipartiteGraft):
        spine = instance.spine
        shapes = {v: ("box" if v in spine else "ellipse") for v in graph.vertices}
    else:
        shapes = {v: "circle" for v in graph.vertices}
    for e in join:
        if e not in graph.edges:
            raise InputError(f"join edge {e!r} is not in the graph")
    lines = ["graph graft {"]
    for v in sorted(graph.vertices):
        attrs = [f"shape={shapes[v]}"]
        if v in terminals:
            attrs.append("peripheries=2")
        lines.append(f'  "{v}" [{", ".join(attrs)}];')
    for eid in sorted(graph.edges):
        u, v = graph.endpoints(eid)
        attrs = [f'label="{eid}"']
        if eid in join:
            attrs.append("style=bold")
        lines.append(f'  "{u}" -- "{v}" [{", ".join(attrs)}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
