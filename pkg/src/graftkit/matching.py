"""Exact maximum-cardinality matching via alternating search with blossoms."""

from __future__ import annotations

from .multigraph import Multigraph


def _maximum_matching_indices(adj: list[list[int]]) -> list[int]:
    """Classic blossom-shrinking search on an adjacency-list graph.

    Returns ``mate`` with ``mate[v] == -1`` for unmatched vertices.  The
    search order is fixed by the adjacency lists, so results are
    deterministic for a given input.
    """
    n = len(adj)
    mate = [-1] * n

    # Greedy warm start.
    for v in range(n):
        if mate[v] == -1:
            for w in adj[v]:
                if mate[w] == -1:
                    mate[v] = w
                    mate[w] = v
                    break

    parent = [-1] * n
    base = list(range(n))
    in_queue = [False] * n

    def lca(a: int, b: int) -> int:
        seen = [False] * n
        x = a
        while True:
            x = base[x]
            seen[x] = True
            if mate[x] == -1:
                break
            x = parent[mate[x]]
        y = b
        while True:
            y = base[y]
            if seen[y]:
                return y
            y = parent[mate[y]]

    def mark_path(v: int, b: int, child: int, blossom: list[bool]) -> None:
        while base[v] != b:
            blossom[base[v]] = True
            blossom[base[mate[v]]] = True
            parent[v] = child
            child = mate[v]
            v = parent[child]

    def augment_from(root: int) -> bool:
        nonlocal parent, base, in_queue
        parent = [-1] * n
        base = list(range(n))
        in_queue = [False] * n
        in_queue[root] = True
        queue = [root]
        head = 0
        while head < len(queue):
            v = queue[head]
            head += 1
            for to in adj[v]:
                if base[v] == base[to] or mate[v] == to:
                    continue
                if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                    cur = lca(v, to)
                    blossom = [False] * n
                    mark_path(v, cur, to, blossom)
                    mark_path(to, cur, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not in_queue[i]:
                                in_queue[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if mate[to] == -1:
                        # Alternate the matching along the found path.
                        u = to
                        while u != -1:
                            pv = parent[u]
                            nxt = mate[pv]
                            mate[u] = pv
                            mate[pv] = u
                            u = nxt
                        return True
                    in_queue[mate[to]] = True
                    queue.append(mate[to])
        return False

    for v in range(n):
        if mate[v] == -1:
            augment_from(v)
    return mate


def max_matching(g: Multigraph) -> frozenset[str]:
    """A maximum-cardinality matching of ``g`` as a set of edge ids.

    Parallel edges never help a matching; between matched endpoints the
    smallest edge id is reported.
    """
    verts = sorted(g.vertices)
    index = {v: i for i, v in enumerate(verts)}
    adj: list[list[int]] = [[] for _ in verts]
    best_edge: dict[tuple[int, int], str] = {}
    for eid in sorted(g.edges):
        u, v = g.endpoints(eid)
        iu, iv = index[u], index[v]
        key = (min(iu, iv), max(iu, iv))
        if key not in best_edge:
            best_edge[key] = eid
            adj[iu].append(iv)
            adj[iv].append(iu)
    mate = _maximum_matching_indices(adj)
    out = set()
    for i, j in enumerate(mate):
        if j > i:
            out.add(best_edge[(i, j)])
    return frozenset(out)
