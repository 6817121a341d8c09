"""Label-switching expansion of a labeled graph, and walk queries on top of it.

Replacing every vertex of a flag-labeled graph by a switch gadget (see
``gadget``) and joining gadgets with one connector arc per edge traversal
direction yields an unlabeled digraph whose paths correspond exactly to the
walks of the input in which consecutive edges never repeat a flag label at
their shared vertex.  The expansion has O(m) nodes and arcs and is built in
O(m) time given the per-vertex label grouping.

Queries answered here:

* which edges lie on some label-switching (nonrepetitive) closed walk
  (strong connectivity of the expansion),
* which edges are reachable by nonrepetitive walks from a given
  (vertex, first label) start (DFS in the expansion),
* a minimum-edge-count nonrepetitive walk between two vertices
  (0/1 BFS, connector arcs cost 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional

import numpy as np

from . import _kernels
from .gadget import build_dense_gadget, build_switch_gadget
from .labeled_graph import FlagLabeledGraph


@dataclass(frozen=True)
class ReachedEdge:
    """One traversal of an input edge: ``tail -> head`` with the head flag label."""

    edge_id: int
    tail: Any
    head: Any
    far_label: Any


class LabelSwitchDigraph:
    """The expanded digraph plus provenance maps back to the input graph.

    Immutable after construction; all queries are read-only.
    """

    def __init__(self, graph: FlagLabeledGraph, dense: bool = False):
        if graph.has_self_loops():
            raise ValueError("self-loops are not supported by the expansion")
        self.graph = graph
        build = build_dense_gadget if dense else build_switch_gadget
        n = graph.num_vertices
        m = graph.num_edges

        entry_node: dict[tuple[int, int], int] = {}
        exit_node: dict[tuple[int, int], int] = {}
        node_origin: list[tuple[int, Optional[int], str]] = []
        tails: list[int] = []
        heads: list[int] = []
        self._vertex_label_count = [0] * n

        num_nodes = 0
        for v in range(n):
            labels = graph.vertex_label_ids(v)
            self._vertex_label_count[v] = len(labels)
            if not labels:
                continue
            gadget = build(len(labels))
            off = num_nodes
            num_nodes += gadget.num_nodes
            node_origin.extend((v, None, "internal") for _ in range(gadget.num_nodes))
            for slot, lab in enumerate(labels):
                entry = off + gadget.entry[slot]
                exit_ = off + gadget.exit[slot]
                entry_node[(v, lab)] = entry
                exit_node[(v, lab)] = exit_
                node_origin[entry] = (v, lab, "entry")
                node_origin[exit_] = (v, lab, "exit")
            for a, b in gadget.arcs:
                tails.append(off + a)
                heads.append(off + b)

        internal_arcs = len(tails)
        # Connector arcs: one per traversal direction of each edge.  A walk
        # leaves the near vertex through the exit node of the near flag label
        # and enters the far vertex at the entry node of the far flag label.
        conn_arc_index = np.full((m, 2), -1, dtype=np.int64)
        for eid, (u, v, lu, lv) in enumerate(graph.edges):
            conn_arc_index[eid, 0] = len(tails)
            tails.append(exit_node[(u, lu)])
            heads.append(entry_node[(v, lv)])
            if not graph.directed:
                conn_arc_index[eid, 1] = len(tails)
                tails.append(exit_node[(v, lv)])
                heads.append(entry_node[(u, lu)])

        self.num_nodes = num_nodes
        self.num_arcs = len(tails)
        self.entry_node = entry_node
        self.exit_node = exit_node
        self.node_origin = node_origin
        indptr, indices, pos_of_arc = _kernels.build_csr(
            num_nodes, np.array(tails, dtype=np.int64), np.array(heads, dtype=np.int64)
        )
        self.indptr = indptr
        self.indices = indices
        self._tail_of_pos = np.array(tails, dtype=np.int64)[np.argsort(pos_of_arc)]
        self.is_connector = np.zeros(self.num_arcs, dtype=np.uint8)
        self.is_connector[pos_of_arc[internal_arcs:]] = 1
        self.conn_pos = np.where(conn_arc_index >= 0, pos_of_arc[conn_arc_index], -1)
        # (edge, direction) owning each CSR position, -1 for gadget arcs
        self._pos_edge = np.full(self.num_arcs, -1, dtype=np.int64)
        self._pos_dir = np.full(self.num_arcs, -1, dtype=np.int64)
        for eid in range(m):
            for d in range(2):
                pos = self.conn_pos[eid, d]
                if pos >= 0:
                    self._pos_edge[pos] = eid
                    self._pos_dir[pos] = d
        self._scc: Optional[np.ndarray] = None

    # -- helpers -------------------------------------------------------------

    def _directions(self, eid: int):
        return (0,) if self.graph.directed else (0, 1)

    def _oriented(self, eid: int, direction: int) -> ReachedEdge:
        u, v = self.graph.endpoints(eid)
        lu, lv = self.graph.edge_labels(eid)
        if direction == 0:
            return ReachedEdge(eid, u, v, lv)
        return ReachedEdge(eid, v, u, lu)

    @property
    def scc(self) -> np.ndarray:
        """Component id per node, in reverse topological order."""
        if self._scc is None:
            self._scc = _kernels.scc_csr(self.indptr, self.indices)
        return self._scc

    # -- queries --------------------------------------------------------------

    def cycle_directions(self) -> list[ReachedEdge]:
        """Edge traversals that lie on some nonrepetitive closed walk."""
        comp = self.scc
        out = []
        for eid in range(self.graph.num_edges):
            for d in self._directions(eid):
                pos = self.conn_pos[eid, d]
                if comp[self._tail_of_pos[pos]] == comp[self.indices[pos]]:
                    out.append(self._oriented(eid, d))
        return out

    def cycle_edge_ids(self) -> set[int]:
        return {edge.edge_id for edge in self.cycle_directions()}

    def cycle_transit_pairs(self, vertex: Any) -> set[frozenset]:
        """Label pairs {x, y} of consecutive edges some nonrepetitive closed
        walk uses at this vertex (entering on one, leaving on the other).

        The pair is realized exactly when the entry node of x and the exit
        node of y share a strong component: the gadget supplies the entry
        -> exit hop and the component supplies the return path.
        """
        vid = self.graph.vertex_id(vertex)
        comp = self.scc
        labels = self.graph.vertex_label_ids(vid)
        pairs: set[frozenset] = set()
        for x in labels:
            enter = self.entry_node[(vid, x)]
            for y in labels:
                if x == y:
                    continue
                if comp[enter] == comp[self.exit_node[(vid, y)]]:
                    pairs.add(
                        frozenset(
                            (self.graph.label_name(x), self.graph.label_name(y))
                        )
                    )
        return pairs

    def reachable_from(self, vertex: Any, label: Any) -> "ReachResult":
        """Edges on nonrepetitive walks starting at ``vertex`` with first
        edge flag label ``label``; empty when no such incident edge exists."""
        vid = self.graph.vertex_id(vertex)
        lid = self.graph.label_id(label)
        start = self.exit_node.get((vid, lid)) if lid is not None else None
        if start is None:
            return ReachResult(self, None, None, [])
        visited, parent = _kernels.reach_csr(self.indptr, self.indices, start)
        edges = []
        for eid in range(self.graph.num_edges):
            for d in self._directions(eid):
                pos = self.conn_pos[eid, d]
                if visited[self._tail_of_pos[pos]]:
                    edges.append(self._oriented(eid, d))
        return ReachResult(self, start, parent, edges)

    def shortest_path(self, src: Any, dst: Any) -> Optional[list[ReachedEdge]]:
        """Minimum-edge-count nonrepetitive walk from src to dst, or None."""
        s = self.graph.vertex_id(src)
        t = self.graph.vertex_id(dst)
        if s == t:
            return []
        sources = [
            node for (v, _lab), node in self.exit_node.items() if v == s
        ]
        targets = [
            node for (v, _lab), node in self.entry_node.items() if v == t
        ]
        if not sources or not targets:
            return None
        dist, parent = _kernels.bfs01(
            self.indptr,
            self.indices,
            self.is_connector,
            np.array(sorted(sources), dtype=np.int64),
        )
        best = min(sorted(targets), key=lambda node: (int(dist[node]), node))
        if dist[best] >= _kernels._UNREACHED:
            return None
        return self._walk_to_node(parent, best)

    def _walk_to_node(self, parent: np.ndarray, node: int) -> list[ReachedEdge]:
        steps = []
        while parent[node] != -1:
            pos = parent[node]
            eid = self._pos_edge[pos]
            if eid != -1:
                steps.append(self._oriented(int(eid), int(self._pos_dir[pos])))
            node = int(self._tail_of_pos[pos])
        steps.reverse()
        return steps


class ReachResult:
    """Result of :meth:`LabelSwitchDigraph.reachable_from` plus witness walks."""

    def __init__(self, expansion, start, parent, edges: list[ReachedEdge]):
        self._expansion = expansion
        self._start = start
        self._parent = parent
        self.edges = edges
        self._by_key = {(e.edge_id, e.tail): e for e in edges}

    def __iter__(self):
        return iter(self.edges)

    def __len__(self):
        return len(self.edges)

    def edge_ids(self) -> set[int]:
        return {e.edge_id for e in self.edges}

    def walk_to(self, reached: ReachedEdge) -> list[ReachedEdge]:
        """A nonrepetitive walk from the start ending with ``reached``."""
        if self._parent is None:
            raise ValueError("empty reach result has no walks")
        ex = self._expansion
        direction = 0 if reached.tail == ex.graph.endpoints(reached.edge_id)[0] else 1
        pos = ex.conn_pos[reached.edge_id, direction]
        steps = ex._walk_to_node(self._parent, int(ex._tail_of_pos[pos]))
        steps.append(reached)
        return steps


def cyclic_edges(g: FlagLabeledGraph) -> set[int]:
    """Ids of edges lying on at least one nonrepetitive closed walk."""
    return LabelSwitchDigraph(g).cycle_edge_ids()


def cyclic_edge_directions(g: FlagLabeledGraph) -> list[ReachedEdge]:
    return LabelSwitchDigraph(g).cycle_directions()


def reachable_edges(g: FlagLabeledGraph, vertex: Any, label: Any) -> list[ReachedEdge]:
    """Edge traversals on nonrepetitive walks from (vertex, first label)."""
    return LabelSwitchDigraph(g).reachable_from(vertex, label).edges


def shortest_nonrepetitive_path(
    g: FlagLabeledGraph, src: Any, dst: Any
) -> Optional[list[ReachedEdge]]:
    """Fewest-edge nonrepetitive walk between two vertices, None if absent."""
    return LabelSwitchDigraph(g).shortest_path(src, dst)


def no_reversal_view(g: FlagLabeledGraph) -> FlagLabeledGraph:
    """Relabel every edge of an undirected graph by its own id.

    Nonrepetitive walks of the view are exactly the walks of ``g`` that never
    traverse an edge and immediately traverse it back.
    """
    if g.directed:
        raise ValueError("no-reversal view is defined for undirected graphs")
    edges = []
    for eid in range(g.num_edges):
        u, v = g.endpoints(eid)
        edges.append((u, v, eid))
    return FlagLabeledGraph(
        False, edges, vertices=[g.vertex_name(i) for i in range(g.num_vertices)]
    )
