"""Simple (vertex-disjoint) nonrepetitive paths and cycles in undirected graphs.

The pipeline: first every vertex is replaced by a small gadget that reduces
arbitrary labels to the two labels 0/1 while preserving simple nonrepetitive
paths (``binarize_labels``).  A 0/1-labeled instance with chosen endpoints
and endpoint labels then becomes a skew-symmetric reachability question
(``build_skew_instance``), which is decided by reduction to maximum matching
in a general graph (``regular_reachable``).

The matching reduction: each sigma-pair of the skew-symmetric graph yields
two matching nodes (a merged "enter x / leave sigma(x)" port and its
counterpart) joined by an idle edge, each arc orbit yields one matching edge
between the ports it connects, and the source pair contributes two endpoint
nodes without an idle edge.  A perfect matching exists iff a regular
source-to-mirror path does, and tracing matched edges from the source port
recovers a witness path.

The directed versions of these questions are NP-complete and deliberately
not offered.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

from .labeled_graph import FlagLabeledGraph
from .matching import perfect_matching_mate


@dataclass(frozen=True)
class BinarizedGraph:
    """0/1-labeled equivalent of a labeled graph for simple-path queries.

    ``graph`` has vertex tokens ("c", v) for the center of each original
    vertex and ("p", v, label, bit) for the per-label ports.  Original edge i
    is edge i of the new graph (``edge_origin[i] == i``); the gadget wiring
    edges map to None.  Simple nonrepetitive paths between centers correspond
    to simple nonrepetitive paths between the original vertices.
    """

    graph: FlagLabeledGraph
    center: dict
    edge_origin: tuple


def binarize_labels(g: FlagLabeledGraph) -> BinarizedGraph:
    if g.directed:
        raise ValueError("binarization is defined for undirected graphs")
    if g.has_self_loops():
        raise ValueError("self-loops are not supported")
    vertices = []
    center = {}
    for vid in range(g.num_vertices):
        name = g.vertex_name(vid)
        center[name] = ("c", name)
        vertices.append(("c", name))
    edges: list[tuple] = []
    for eid in range(g.num_edges):
        u, v = g.endpoints(eid)
        lu, lv = g.edge_labels(eid)
        edges.append((("p", u, lu, 0), ("p", v, lv, 0), 0))
    for vid in range(g.num_vertices):
        name = g.vertex_name(vid)
        for lid in g.vertex_label_ids(vid):
            lab = g.label_name(lid)
            # Port pair per label: walks pass entry-port, center, exit-port,
            # exit-port's twin, forcing a label change at the vertex.
            edges.append((("c", name), ("p", name, lab, 0), 1))
            edges.append((("c", name), ("p", name, lab, 1), 0))
            edges.append((("p", name, lab, 0), ("p", name, lab, 1), 1))
    origin = tuple(
        list(range(g.num_edges)) + [None] * (len(edges) - g.num_edges)
    )
    return BinarizedGraph(FlagLabeledGraph(False, edges, vertices=vertices), center, origin)


@dataclass
class SkewSymmetricGraph:
    """Digraph with a fixed-point-free involution reversing every arc."""

    num_nodes: int
    arcs: tuple[tuple[int, int], ...]
    sigma: tuple[int, ...]
    source: int
    arc_origin: Optional[tuple] = field(default=None, compare=False)

    def __post_init__(self):
        sig = self.sigma
        if len(sig) != self.num_nodes:
            raise ValueError("sigma must cover all nodes")
        for x in range(self.num_nodes):
            if sig[x] == x:
                raise ValueError(f"sigma fixes node {x}")
            if sig[sig[x]] != x:
                raise ValueError("sigma is not an involution")
        arc_set = set(self.arcs)
        for a, b in self.arcs:
            if (sig[b], sig[a]) not in arc_set:
                raise ValueError(f"mirror of arc ({a},{b}) is missing")


def _binary_bit(token) -> int:
    if token in (0, "0"):
        return 0
    if token in (1, "1"):
        return 1
    raise ValueError(f"label {token!r} is not binary")


def build_skew_instance(
    g: FlagLabeledGraph, p, q, start_label: int, end_label: int
) -> SkewSymmetricGraph:
    """Skew-symmetric reachability instance for one endpoint-label choice.

    Node 2v+b means "standing at v, arrived on a b-labeled edge".  There is a
    simple nonrepetitive p..q path in the 0/1-labeled graph ``g`` whose first
    edge is labeled ``start_label`` and last edge ``end_label`` iff the source
    is regular-reachable to its mirror.
    """
    if g.directed:
        raise ValueError("skew-symmetric reduction needs an undirected graph")
    pid = g.vertex_id(p)
    qid = g.vertex_id(q)
    if pid == qid:
        raise ValueError("endpoints must differ")
    n = g.num_vertices
    arcs: list[tuple[int, int]] = []
    origin: list = []
    for eid in range(g.num_edges):
        u, v, lu, lv = g.edges[eid]
        bit = _binary_bit(g.label_name(lu))
        if _binary_bit(g.label_name(lv)) != bit:
            raise ValueError("skew-symmetric reduction needs edge labels, not flags")
        # Traversing a b-labeled edge is allowed after arriving on 1-b.
        arcs.append((2 * u + (1 - bit), 2 * v + bit))
        origin.append((eid, 0))
        arcs.append((2 * v + (1 - bit), 2 * u + bit))
        origin.append((eid, 1))
    s = 2 * n
    t = 2 * n + 1
    arcs.append((s, 2 * pid + (1 - start_label)))
    origin.append(None)
    arcs.append((s, 2 * qid + (1 - end_label)))
    origin.append(None)
    arcs.append((2 * qid + end_label, t))
    origin.append(None)
    arcs.append((2 * pid + start_label, t))
    origin.append(None)
    sigma = []
    for v in range(n):
        sigma.extend((2 * v + 1, 2 * v))
    sigma.extend((t, s))
    return SkewSymmetricGraph(
        2 * n + 2, tuple(arcs), tuple(sigma), s, arc_origin=tuple(origin)
    )


def regular_reachable(ssg: SkewSymmetricGraph) -> Optional[list[int]]:
    """Arc indices of a source-to-mirror path using one node per sigma-pair.

    Returns None when no such path exists.  Decided via a perfect matching in
    the port graph described in the module docstring.
    """
    sig = ssg.sigma
    s = ssg.source
    t = sig[s]
    pair_index: dict[int, int] = {}
    for x in range(ssg.num_nodes):
        if x in (s, t):
            continue
        rep = min(x, sig[x])
        if rep not in pair_index:
            pair_index[rep] = len(pair_index)
    num_pairs = len(pair_index)
    e1 = 2 * num_pairs
    e2 = 2 * num_pairs + 1

    def port_out(a: int) -> Optional[int]:
        # Merged node containing "leave a" (equivalently "enter sigma(a)").
        if a == s:
            return e1
        if a == t:
            return None
        rep = min(a, sig[a])
        idx = pair_index[rep]
        return 2 * idx + 1 if a == rep else 2 * idx

    def port_in(b: int) -> Optional[int]:
        if b == t:
            return e2
        if b == s:
            return None
        rep = min(b, sig[b])
        idx = pair_index[rep]
        return 2 * idx if b == rep else 2 * idx + 1

    edge_arc: dict[tuple[int, int], int] = {}
    for arc_idx, (a, b) in enumerate(ssg.arcs):
        if a == b:
            continue
        ha = port_out(a)
        hb = port_in(b)
        if ha is None or hb is None or ha == hb:
            continue
        key = (ha, hb) if ha < hb else (hb, ha)
        edge_arc.setdefault(key, arc_idx)
    h_edges = list(edge_arc)
    h_edges.extend((2 * i, 2 * i + 1) for i in range(num_pairs))

    mate, perfect = perfect_matching_mate(2 * num_pairs + 2, h_edges)
    if not perfect:
        return None

    path: list[int] = []
    cur_h = e1
    cur = s
    while True:
        mh = int(mate[cur_h])
        key = (cur_h, mh) if cur_h < mh else (mh, cur_h)
        arc_idx = edge_arc[key]
        a, b = ssg.arcs[arc_idx]
        if a == cur:
            nxt = b
        else:
            # The matched orbit contains the mirror arc leaving the current node.
            assert sig[b] == cur, "matched edge does not continue the path"
            nxt = sig[a]
        path.append(arc_idx)
        if nxt == t:
            return path
        rep = min(nxt, sig[nxt])
        idx = pair_index[rep]
        consumed = 2 * idx if nxt == rep else 2 * idx + 1
        cur_h = 2 * idx + 1 if consumed == 2 * idx else 2 * idx
        cur = nxt


def path_nodes(ssg: SkewSymmetricGraph, arc_path: list[int]) -> list[int]:
    """Node sequence of an arc path, starting from the source."""
    nodes = [ssg.source]
    cur = ssg.source
    for arc_idx in arc_path:
        a, b = ssg.arcs[arc_idx]
        if a == cur:
            cur = b
        else:
            if ssg.sigma[b] != cur:
                raise ValueError("arc path is not connected")
            cur = ssg.sigma[a]
        nodes.append(cur)
    return nodes


def _loopless(g: FlagLabeledGraph) -> tuple[FlagLabeledGraph, list[int]]:
    if not g.has_self_loops():
        return g, list(range(g.num_edges))
    return g.subgraph(e for e in range(g.num_edges) if not g.is_self_loop(e))


def nonrepetitive_simple_path(g: FlagLabeledGraph, p, q) -> Optional[list[int]]:
    """Edge ids of a simple nonrepetitive p..q path in ``g``, or None.

    Tries the four endpoint-label combinations of the skew-symmetric
    reduction and returns the shortest witness found.  ``p == q`` is a
    zero-length path.  Self loops never occur on simple paths and are
    dropped up front.
    """
    if g.directed:
        raise ValueError(
            "simple-path search is restricted to undirected graphs; the "
            "directed variant is NP-complete"
        )
    pid = g.vertex_id(p)
    qid = g.vertex_id(q)
    if pid == qid:
        return []
    base, orig_ids = _loopless(g)
    binarized = binarize_labels(base)
    cp = binarized.center[p]
    cq = binarized.center[q]
    best: Optional[list[int]] = None
    for start_bit in (0, 1):
        for end_bit in (0, 1):
            ssg = build_skew_instance(binarized.graph, cp, cq, start_bit, end_bit)
            witness = regular_reachable(ssg)
            if witness is None:
                continue
            edge_ids = []
            for arc_idx in witness:
                info = ssg.arc_origin[arc_idx]
                if info is None:
                    continue
                bin_eid = info[0]
                orig = binarized.edge_origin[bin_eid]
                if orig is not None:
                    edge_ids.append(orig_ids[orig])
            # The source wires to both endpoints, so the witness may have been
            # traced q-to-p; report it from p's side.
            if len(edge_ids) > 1 and p not in g.endpoints(edge_ids[0]):
                edge_ids.reverse()
            if best is None or len(edge_ids) < len(best):
                best = edge_ids
    return best


def simple_cycle_edges(g: FlagLabeledGraph) -> set[int]:
    """Edges that belong to some simple nonrepetitive cycle.

    Per edge: drop it along with every incident edge that repeats its flag
    label at either endpoint, then ask for a simple nonrepetitive path
    between its endpoints.  Parallel edges count as 2-cycles when their
    labels differ at both ends.
    """
    if g.directed:
        raise ValueError(
            "simple-cycle search is restricted to undirected graphs; the "
            "directed variant is NP-complete"
        )
    result: set[int] = set()
    for eid in range(g.num_edges):
        if g.is_self_loop(eid):
            continue
        u, v, lu, lv = g.edges[eid]
        keep = []
        for other in range(g.num_edges):
            if other == eid:
                continue
            ou, ov, olu, olv = g.edges[other]
            if (ou == u and olu == lu) or (ov == u and olv == lu):
                continue
            if (ou == v and olu == lv) or (ov == v and olv == lv):
                continue
            keep.append(other)
        reduced, _ = g.subgraph(keep)
        if (
            nonrepetitive_simple_path(reduced, g.vertex_name(u), g.vertex_name(v))
            is not None
        ):
            result.add(eid)
    return result


def _bridges(num_vertices: int, edge_list: list[tuple[int, int, int]]) -> set[int]:
    """Bridge edge ids via iterative lowlink; parallel edges are never bridges."""
    adj: list[list[tuple[int, int]]] = [[] for _ in range(num_vertices)]
    for eid, u, v in edge_list:
        adj[u].append((v, eid))
        adj[v].append((u, eid))
    disc = [-1] * num_vertices
    low = [0] * num_vertices
    bridges: set[int] = set()
    counter = 0
    for root in range(num_vertices):
        if disc[root] != -1 or not adj[root]:
            continue
        disc[root] = low[root] = counter
        counter += 1
        stack = [(root, -1, 0)]
        while stack:
            v, in_edge, i = stack.pop()
            if i < len(adj[v]):
                stack.append((v, in_edge, i + 1))
                w, eid = adj[v][i]
                if eid == in_edge:
                    continue
                if disc[w] == -1:
                    disc[w] = low[w] = counter
                    counter += 1
                    stack.append((w, eid, 0))
                else:
                    low[v] = min(low[v], disc[w])
            elif in_edge != -1:
                # leaving v: propagate lowlink to the parent frame
                parent = stack[-1][0]
                low[parent] = min(low[parent], low[v])
                if low[v] > disc[parent]:
                    bridges.add(in_edge)
    return bridges


def has_nonrepetitive_simple_cycle(g: FlagLabeledGraph) -> bool:
    """Existence of a simple nonrepetitive cycle in a 0/1-labeled graph.

    Peels vertices whose incident edges all share one label and bridge
    edges until a fixed point; a nonempty remainder always contains such a
    cycle.  Existence only: not every surviving edge is claimed cyclic.
    """
    if g.directed:
        raise ValueError("peeling test is for undirected graphs")
    for eid in range(g.num_edges):
        lu, lv = g.edge_labels(eid)
        _binary_bit(lu)
        _binary_bit(lv)
    alive = {e for e in range(g.num_edges) if not g.is_self_loop(e)}
    removed_vertex = [False] * g.num_vertices
    while True:
        changed = False
        for vid in range(g.num_vertices):
            if removed_vertex[vid]:
                continue
            labels = set()
            incident = []
            for eid, end in g.incident(vid):
                if eid in alive:
                    labels.add(g.flag_label_id(eid, end))
                    incident.append(eid)
            if incident and len(labels) <= 1:
                removed_vertex[vid] = True
                alive.difference_update(incident)
                changed = True
        edge_list = [(eid, g.edges[eid][0], g.edges[eid][1]) for eid in sorted(alive)]
        bridges = _bridges(g.num_vertices, edge_list)
        if bridges:
            alive -= bridges
            changed = True
        if not changed:
            return bool(alive)


def oracle_enumerate(g: FlagLabeledGraph, kind: str, p=None, q=None, bound: int = 12):
    """Exhaustive backtracking enumeration of simple nonrepetitive paths or cycles.

    ``kind="paths"`` returns every p..q path as a tuple of edge ids;
    ``kind="cycles"`` returns the set of cycles as frozensets of edge ids
    (a simple cycle is determined by its edge set).  Intended as the ground
    truth for small graphs; refuses more than ``bound`` vertices.
    """
    if g.directed:
        raise ValueError("enumeration is for undirected graphs")
    if g.num_vertices > bound:
        raise ValueError(f"graph exceeds enumeration bound ({bound} vertices)")

    def steps_from(vid: int):
        for eid, end in g.incident(vid):
            if g.is_self_loop(eid):
                continue
            near = g.flag_label_id(eid, end)
            far = g.flag_label_id(eid, 1 - end)
            other = g.edges[eid][1 - end]
            yield eid, near, far, other

    if kind == "paths":
        pid = g.vertex_id(p)
        qid = g.vertex_id(q)
        if pid == qid:
            return [()]
        found: list[tuple[int, ...]] = []
        path: list[int] = []
        visited = {pid}

        def extend(vid: int, last_label: Optional[int]):
            for eid, near, far, other in steps_from(vid):
                if last_label is not None and near == last_label:
                    continue
                if other in visited:
                    continue
                path.append(eid)
                if other == qid:
                    found.append(tuple(path))
                else:
                    visited.add(other)
                    extend(other, far)
                    visited.remove(other)
                path.pop()

        extend(pid, None)
        return found

    if kind == "cycles":
        cycles: set[frozenset[int]] = set()
        for start in range(g.num_vertices):
            path_edges: list[int] = []
            visited = {start}
            on_path: set[int] = set()

            def extend(vid: int, last_label: Optional[int], first_label: Optional[int]):
                for eid, near, far, other in steps_from(vid):
                    if last_label is not None and near == last_label:
                        continue
                    if eid in on_path:
                        continue
                    if other == start:
                        if len(path_edges) >= 1 and far != first_label:
                            cycles.add(frozenset(path_edges + [eid]))
                        continue
                    if other in visited or other < start:
                        continue
                    path_edges.append(eid)
                    on_path.add(eid)
                    visited.add(other)
                    extend(other, far, near if first_label is None else first_label)
                    visited.remove(other)
                    on_path.remove(eid)
                    path_edges.pop()

            extend(start, None, None)
        return cycles

    raise ValueError(f"unknown enumeration kind {kind!r}")
