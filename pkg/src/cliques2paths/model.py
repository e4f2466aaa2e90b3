"""Combinatorial model: crossing-annotated graphs with clique partitions.

A drawing is abstracted down to which unordered pairs of edges cross; the
order of crossings along an edge is never needed to decide feasibility, so
it is not stored. Geometric realizability of a crossing set is deliberately
not checked: the solvers operate on the combinatorial abstraction.

Vertices are dense integers 0..n-1, edges carry dense integer ids in
construction order, and every iteration order is fixed by id so that all
downstream solvers are deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import InvariantError, PartTooSmall

VertexId = int
EdgeId = int


@dataclass(frozen=True)
class Edge:
    """Undirected edge; endpoints are normalized so that u < v."""

    id: EdgeId
    u: VertexId
    v: VertexId

    @property
    def pair(self) -> tuple[VertexId, VertexId]:
        return (self.u, self.v)


@dataclass(frozen=True)
class TopoGraph:
    """Vertex count, edge list and the unordered edge-pair crossing relation."""

    n: int
    edges: tuple[Edge, ...]
    crossings: frozenset[tuple[EdgeId, EdgeId]]  # pairs stored with a < b


@dataclass(frozen=True)
class CliquePartition:
    """Partition of the vertex set; each part induces a complete subgraph."""

    parts: tuple[tuple[VertexId, ...], ...]  # each part sorted ascending


@dataclass(frozen=True)
class PathChoice:
    """An ordered spanning path for one part.

    The sequence is a permutation of the part; orientation is normalized so
    the smaller endpoint comes first.
    """

    part: int
    vertices: tuple[VertexId, ...]

    def edge_pairs(self) -> list[tuple[VertexId, VertexId]]:
        """Consecutive vertex pairs, each normalized smaller-first."""
        vs = self.vertices
        return [(min(a, b), max(a, b)) for a, b in zip(vs, vs[1:])]


@dataclass(frozen=True)
class Solution:
    """One PathChoice per part of size >= 2, ordered by part index."""

    choices: tuple[PathChoice, ...]

    @staticmethod
    def from_choices(choices) -> "Solution":
        ordered = tuple(sorted(choices, key=lambda c: c.part))
        return Solution(ordered)

    def by_part(self) -> dict[int, PathChoice]:
        return {c.part: c for c in self.choices}


@dataclass(frozen=True)
class Instance:
    """Validated problem instance with precomputed lookups.

    Immutable after construction; safe to share between workers. Size-2
    parts have a unique spanning path that keeps their only edge, so that
    edge is as unremovable as a link edge; ``removable`` marks the clique
    edges of parts of size >= 3, the only edges any solver may drop.
    """

    graph: TopoGraph
    partition: CliquePartition
    h: int
    part_of: tuple[int, ...] = field(repr=False)          # vertex -> part index
    edge_part: tuple[int | None, ...] = field(repr=False)  # edge -> part, None for link edges
    part_edges: tuple[tuple[EdgeId, ...], ...] = field(repr=False)
    crossings_of: tuple[tuple[EdgeId, ...], ...] = field(repr=False)
    edge_ids: dict[tuple[VertexId, VertexId], EdgeId] = field(repr=False)
    removable: frozenset[EdgeId] = field(repr=False)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self.graph.edges

    @property
    def crossings(self) -> frozenset[tuple[EdgeId, EdgeId]]:
        return self.graph.crossings

    @property
    def parts(self) -> tuple[tuple[VertexId, ...], ...]:
        return self.partition.parts

    def is_unremovable(self, eid: EdgeId) -> bool:
        return eid not in self.removable

    def sorted_crossings(self) -> list[tuple[EdgeId, EdgeId]]:
        return sorted(self.crossings)


def _normalize_pair(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def build_instance(
    n: int,
    edges: list[tuple[int, int]],
    crossings: list[tuple[int, int]],
    parts: list[list[int]],
) -> Instance:
    """Validate raw lists and assemble an Instance.

    ``edges`` are endpoint pairs (ids follow list order), ``crossings`` are
    edge-id pairs, ``parts`` are vertex subsets. Raises InvariantError with
    the first violating element; validation scans ascending ids.
    """
    if n < 0:
        raise InvariantError("VertexOutOfRange", "negative vertex count")

    edge_objs: list[Edge] = []
    edge_ids: dict[tuple[int, int], int] = {}
    for idx, (u, v) in enumerate(edges):
        if not (0 <= u < n and 0 <= v < n):
            raise InvariantError("VertexOutOfRange", f"edge {idx} endpoints ({u},{v}) outside 0..{n - 1}")
        if u == v:
            raise InvariantError("SelfLoop", f"edge {idx} joins vertex {u} to itself")
        pair = _normalize_pair(u, v)
        if pair in edge_ids:
            raise InvariantError("DuplicateEdge", f"edge {idx} repeats pair {pair} of edge {edge_ids[pair]}")
        edge_ids[pair] = idx
        edge_objs.append(Edge(idx, *pair))

    part_of: list[int | None] = [None] * n
    norm_parts: list[tuple[int, ...]] = []
    for pidx, part in enumerate(parts):
        if not part:
            raise InvariantError("PartitionNotCovering", f"part {pidx} is empty")
        seen = set()
        for v in part:
            if not (0 <= v < n):
                raise InvariantError("PartitionNotCovering", f"part {pidx} lists unknown vertex {v}")
            if v in seen:
                raise InvariantError("PartitionNotCovering", f"part {pidx} repeats vertex {v}")
            if part_of[v] is not None:
                raise InvariantError("PartitionNotCovering", f"vertex {v} in parts {part_of[v]} and {pidx}")
            seen.add(v)
            part_of[v] = pidx
        norm_parts.append(tuple(sorted(part)))
    for v in range(n):
        if part_of[v] is None:
            raise InvariantError("PartitionNotCovering", f"vertex {v} belongs to no part")

    for pidx, part in enumerate(norm_parts):
        for a, b in itertools.combinations(part, 2):
            if (a, b) not in edge_ids:
                raise InvariantError("CliqueIncomplete", f"part {pidx} misses edge ({a},{b})")

    n_edges = len(edge_objs)
    cross_set: set[tuple[int, int]] = set()
    normalized = []
    for a, b in crossings:
        if not (0 <= a < n_edges and 0 <= b < n_edges):
            raise InvariantError("UnknownEdgeInCrossing", f"crossing ({a},{b}) references an unknown edge id")
        normalized.append(_normalize_pair(a, b))
    for a, b in sorted(normalized):
        ea, eb = edge_objs[a], edge_objs[b]
        if a == b or {ea.u, ea.v} & {eb.u, eb.v}:
            raise InvariantError("AdjacentCrossing", f"edges {a} and {b} share an endpoint; arcs meeting at a vertex do not cross")
        if (a, b) in cross_set:
            raise InvariantError("DuplicateCrossing", f"crossing ({a},{b}) listed twice")
        cross_set.add((a, b))

    crossings_of: list[list[int]] = [[] for _ in range(n_edges)]
    for a, b in sorted(cross_set):
        crossings_of[a].append(b)
        crossings_of[b].append(a)

    edge_part: list[int | None] = []
    for e in edge_objs:
        pu, pv = part_of[e.u], part_of[e.v]
        edge_part.append(pu if pu == pv else None)

    part_edges: list[list[int]] = [[] for _ in norm_parts]
    for e in edge_objs:
        p = edge_part[e.id]
        if p is not None:
            part_edges[p].append(e.id)

    removable = frozenset(
        e.id for e in edge_objs
        if edge_part[e.id] is not None and len(norm_parts[edge_part[e.id]]) >= 3
    )

    graph = TopoGraph(n, tuple(edge_objs), frozenset(cross_set))
    partition = CliquePartition(tuple(norm_parts))
    h = max((len(p) for p in norm_parts), default=0)
    return Instance(
        graph=graph,
        partition=partition,
        h=h,
        part_of=tuple(part_of),
        edge_part=tuple(edge_part),
        part_edges=tuple(tuple(sorted(es)) for es in part_edges),
        crossings_of=tuple(tuple(cs) for cs in crossings_of),
        edge_ids=edge_ids,
        removable=removable,
    )


def max_crossings_per_edge(instance: Instance) -> int:
    """Largest number of crossings any single edge participates in."""
    return max((len(cs) for cs in instance.crossings_of), default=0)


def classify_edge(instance: Instance, eid: EdgeId) -> int | None:
    """Part index if both endpoints share a part (clique edge), else None (link edge)."""
    return instance.edge_part[eid]


def spanning_paths(part: tuple[VertexId, ...]) -> list[tuple[VertexId, ...]]:
    """All spanning paths of the complete graph on ``part``, canonically ordered.

    Orientation is normalized smaller-endpoint-first, so exactly
    ``len(part)!/2`` sequences come back, in lexicographic order.
    """
    if len(part) < 2:
        raise PartTooSmall(f"part {part} has fewer than 2 vertices")
    ordered = sorted(part)
    return [seq for seq in itertools.permutations(ordered) if seq[0] < seq[-1]]


def path_edge_ids(instance: Instance, choice: PathChoice) -> list[EdgeId]:
    """Edge ids along a path; raises KeyError for pairs that are not edges."""
    return [instance.edge_ids[p] for p in choice.edge_pairs()]


def size2_choice(instance: Instance, part_idx: int) -> PathChoice:
    """The unique spanning path of a two-vertex part."""
    part = instance.parts[part_idx]
    return PathChoice(part_idx, (part[0], part[1]))


def triangle_choice(instance: Instance, part_idx: int, removed: EdgeId) -> PathChoice:
    """The spanning path of a three-vertex part that drops ``removed``."""
    edge = instance.edges[removed]
    (mid,) = set(instance.parts[part_idx]) - {edge.u, edge.v}
    return PathChoice(part_idx, (edge.u, mid, edge.v))


class InstanceBuilder:
    """Incremental construction with parser-compatible id assignment.

    Parts allocate fresh vertices and register their clique edges at once,
    so edge ids follow (creation order of parts) x (lexicographic pairs),
    with link edges numbered as they are added. Serializing and re-parsing
    an instance built parts-first therefore preserves every edge id.
    """

    def __init__(self):
        self._n = 0
        self._parts: list[list[int]] = []
        self._edges: list[tuple[int, int]] = []
        self._edge_ids: dict[tuple[int, int], int] = {}
        self._crossings: set[tuple[EdgeId, EdgeId]] = set()

    def add_part(self, size: int) -> tuple[int, tuple[VertexId, ...]]:
        verts = tuple(range(self._n, self._n + size))
        self._n += size
        for pair in itertools.combinations(verts, 2):
            self._edge_ids[pair] = len(self._edges)
            self._edges.append(pair)
        self._parts.append(list(verts))
        return len(self._parts) - 1, verts

    def add_link(self, u: VertexId, v: VertexId) -> EdgeId:
        pair = _normalize_pair(u, v)
        if pair in self._edge_ids:
            raise InvariantError("DuplicateEdge", f"link {pair} repeats an existing edge")
        self._edge_ids[pair] = len(self._edges)
        self._edges.append(pair)
        return self._edge_ids[pair]

    def edge_id(self, u: VertexId, v: VertexId) -> EdgeId:
        return self._edge_ids[_normalize_pair(u, v)]

    def cross(self, e: EdgeId, f: EdgeId) -> None:
        """Record a crossing; repeats collapse silently."""
        self._crossings.add(_normalize_pair(e, f))

    def has_crossing(self, e: EdgeId, f: EdgeId) -> bool:
        return _normalize_pair(e, f) in self._crossings

    @property
    def n_edges(self) -> int:
        return len(self._edges)

    def edge_pair(self, eid: EdgeId) -> tuple[VertexId, VertexId]:
        return self._edges[eid]

    def part_size(self, pidx: int) -> int:
        return len(self._parts[pidx])

    def build(self) -> Instance:
        return build_instance(self._n, self._edges, sorted(self._crossings), self._parts)
