"""Edge-labeled and flag-labeled multigraphs.

A *flag* is a (vertex, incident edge) pair; a flag-labeled graph attaches a
label to every flag, so the two ends of an edge may carry different labels.
An edge-labeled graph is the special case where both flags of an edge agree.

Vertices and labels are opaque hashable tokens; they are interned to dense
integers at construction time so the analysis modules can work with plain
array indices.  Graphs are immutable after construction.
"""

from __future__ import annotations

from typing import Any, Iterable, Sequence


class GraphParseError(ValueError):
    """Raised for malformed graph files; carries the offending line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class FlagLabeledGraph:
    """Immutable directed or undirected multigraph with labeled flags.

    Edges are identified by dense ids 0..m-1 in construction order.  Self
    loops and parallel edges are representable; the analysis modules that
    cannot handle self loops reject them explicitly.
    """

    def __init__(
        self,
        directed: bool,
        edges: Iterable[Sequence[Any]],
        vertices: Iterable[Any] = (),
    ):
        """Build a graph from edge tuples ``(u, v, label)`` or ``(u, v, label_at_u, label_at_v)``.

        ``vertices`` may declare extra (possibly isolated) vertices; endpoints
        of edges are declared implicitly.
        """
        self.directed = bool(directed)
        self._vertex_names: list[Any] = []
        self._vertex_ids: dict[Any, int] = {}
        self._label_names: list[Any] = []
        self._label_ids: dict[Any, int] = {}
        for v in vertices:
            self._intern_vertex(v)
        edge_list: list[tuple[int, int, int, int]] = []
        for spec in edges:
            if len(spec) == 3:
                u, v, label = spec
                lu = lv = label
            elif len(spec) == 4:
                u, v, lu, lv = spec
            else:
                raise ValueError(f"edge spec must have 3 or 4 fields, got {spec!r}")
            edge_list.append(
                (
                    self._intern_vertex(u),
                    self._intern_vertex(v),
                    self._intern_label(lu),
                    self._intern_label(lv),
                )
            )
        self.edges: tuple[tuple[int, int, int, int], ...] = tuple(edge_list)
        self._incidence: list[list[tuple[int, int]]] = [[] for _ in self._vertex_names]
        for eid, (u, v, _lu, _lv) in enumerate(self.edges):
            self._incidence[u].append((eid, 0))
            self._incidence[v].append((eid, 1))

    def _intern_vertex(self, token: Any) -> int:
        vid = self._vertex_ids.get(token)
        if vid is None:
            vid = len(self._vertex_names)
            self._vertex_ids[token] = vid
            self._vertex_names.append(token)
        return vid

    def _intern_label(self, token: Any) -> int:
        lid = self._label_ids.get(token)
        if lid is None:
            lid = len(self._label_names)
            self._label_ids[token] = lid
            self._label_names.append(token)
        return lid

    # -- basic accessors ----------------------------------------------------

    @property
    def num_vertices(self) -> int:
        return len(self._vertex_names)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def vertex_name(self, vid: int) -> Any:
        return self._vertex_names[vid]

    def vertex_id(self, token: Any) -> int:
        try:
            return self._vertex_ids[token]
        except KeyError:
            raise KeyError(f"unknown vertex {token!r}") from None

    def has_vertex(self, token: Any) -> bool:
        return token in self._vertex_ids

    def label_name(self, lid: int) -> Any:
        return self._label_names[lid]

    def label_id(self, token: Any):
        return self._label_ids.get(token)

    def endpoints(self, eid: int) -> tuple[Any, Any]:
        u, v, _, _ = self.edges[eid]
        return self._vertex_names[u], self._vertex_names[v]

    def edge_labels(self, eid: int) -> tuple[Any, Any]:
        _, _, lu, lv = self.edges[eid]
        return self._label_names[lu], self._label_names[lv]

    def is_self_loop(self, eid: int) -> bool:
        u, v, _, _ = self.edges[eid]
        return u == v

    def has_self_loops(self) -> bool:
        return any(u == v for u, v, _, _ in self.edges)

    def is_edge_labeled(self) -> bool:
        return all(lu == lv for _, _, lu, lv in self.edges)

    def incident(self, vid: int) -> list[tuple[int, int]]:
        """Flags at the vertex as (edge id, end) pairs; a loop appears twice."""
        return self._incidence[vid]

    def flag_label_id(self, eid: int, end: int) -> int:
        return self.edges[eid][2 + end]

    def degree(self, vid: int) -> int:
        return len(self._incidence[vid])

    def vertex_label_ids(self, vid: int) -> list[int]:
        """Distinct flag-label ids at the vertex, in first-occurrence order."""
        seen: dict[int, None] = {}
        for eid, end in self._incidence[vid]:
            seen.setdefault(self.flag_label_id(eid, end), None)
        return list(seen)

    def group_flags_by_label(self, vertex: Any) -> list[tuple[Any, list[int]]]:
        """Partition the incident flags of a vertex by flag label.

        Groups are ordered by the first occurrence of each label at the
        vertex; within a group edges keep id order.  Direction is ignored
        here; both flags of a self loop are counted.
        """
        vid = self.vertex_id(vertex)
        groups: dict[int, list[int]] = {}
        for eid, end in self._incidence[vid]:
            groups.setdefault(self.flag_label_id(eid, end), []).append(eid)
        return [(self._label_names[lid], eids) for lid, eids in groups.items()]

    def subgraph(self, edge_ids: Iterable[int]) -> tuple["FlagLabeledGraph", list[int]]:
        """Same vertex set, edges restricted to ``edge_ids`` (in id order).

        Returns the new graph and the list mapping new edge ids to old ones.
        """
        keep = sorted(set(edge_ids))
        names = self._vertex_names
        lnames = self._label_names
        edges = [
            (names[u], names[v], lnames[lu], lnames[lv])
            for u, v, lu, lv in (self.edges[e] for e in keep)
        ]
        return FlagLabeledGraph(self.directed, edges, vertices=names), keep

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FlagLabeledGraph):
            return NotImplemented
        return (
            self.directed == other.directed
            and self._vertex_names == other._vertex_names
            and [
                (self.endpoints(e), self.edge_labels(e)) for e in range(self.num_edges)
            ]
            == [
                (other.endpoints(e), other.edge_labels(e))
                for e in range(other.num_edges)
            ]
        )

    def __repr__(self) -> str:
        kind = "directed" if self.directed else "undirected"
        return f"<FlagLabeledGraph {kind} n={self.num_vertices} m={self.num_edges}>"


def parse_labeled_graph(text: str) -> FlagLabeledGraph:
    """Parse the line-oriented graph file format.

    The first non-comment line is ``graph directed`` or ``graph undirected``;
    every further line is ``edge <u> <v> <label>`` or
    ``flagedge <u> <v> <labelAtU> <labelAtV>``.  ``#`` starts a comment and
    tokens are whitespace-delimited.
    """
    directed: bool | None = None
    edges: list[tuple] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "graph":
            if directed is not None:
                raise GraphParseError("duplicate graph header", lineno)
            if len(tokens) != 2 or tokens[1] not in ("directed", "undirected"):
                raise GraphParseError(
                    "graph header must be 'graph directed' or 'graph undirected'",
                    lineno,
                )
            directed = tokens[1] == "directed"
        elif tokens[0] == "edge":
            if directed is None:
                raise GraphParseError("edge line before graph header", lineno)
            if len(tokens) != 4:
                raise GraphParseError("edge line needs '<u> <v> <label>'", lineno)
            edges.append((tokens[1], tokens[2], tokens[3]))
        elif tokens[0] == "flagedge":
            if directed is None:
                raise GraphParseError("flagedge line before graph header", lineno)
            if len(tokens) != 5:
                raise GraphParseError(
                    "flagedge line needs '<u> <v> <labelAtU> <labelAtV>'", lineno
                )
            edges.append((tokens[1], tokens[2], tokens[3], tokens[4]))
        else:
            raise GraphParseError(f"unknown keyword {tokens[0]!r}", lineno)
    if directed is None:
        raise GraphParseError("missing 'graph' header", max(1, text.count("\n") + 1))
    return FlagLabeledGraph(directed, edges)


def serialize_labeled_graph(g: FlagLabeledGraph) -> str:
    """Inverse of :func:`parse_labeled_graph` for string-token graphs."""
    lines = ["graph " + ("directed" if g.directed else "undirected")]
    for eid in range(g.num_edges):
        u, v = g.endpoints(eid)
        lu, lv = g.edge_labels(eid)
        if lu == lv:
            lines.append(f"edge {u} {v} {lu}")
        else:
            lines.append(f"flagedge {u} {v} {lu} {lv}")
    return "\n".join(lines) + "\n"
