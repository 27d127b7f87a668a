"""
Graphs and Embeddings

This module holds the graph-side data used by cycle matroids and geometric duals:
1.  `Graph`: a vertex count and an edge list; edge number i (1-based) is matroid
    element i. Multi-edges and loops are allowed.
2.  `RotationSystem`: for every vertex, the cyclic order of the edge-ends at it.
    An edge-end `(e, end)` is edge e at its `end`-th listed endpoint (0 or 1).
3.  Face tracing and the dual graph of the traced embedding.
4.  The rank table of a cycle matroid for all 2^n edge subsets at once.
"""

from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import networkx as nx
import numpy as np

from .errors import DescriptorError, InvalidEmbedding
from .utils import all_masks, check_bound, status

EdgeEnd = Tuple[int, int]


@dataclass(frozen=True)
class Graph:
    vertices: int
    edges: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, 'edges', tuple((int(u), int(v)) for u, v in self.edges))
        if self.vertices < 1:
            raise DescriptorError(f"a graph needs at least one vertex, got {self.vertices}")
        for u, v in self.edges:
            if not (0 <= u < self.vertices and 0 <= v < self.vertices):
                raise DescriptorError(f"edge ({u}, {v}) has an endpoint outside 0..{self.vertices - 1}")

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def to_networkx(self) -> nx.MultiGraph:
        """MultiGraph on 0..vertices-1 whose edge keys are the 1-based element ids."""
        g = nx.MultiGraph()
        g.add_nodes_from(range(self.vertices))
        for e, (u, v) in enumerate(self.edges, start=1):
            g.add_edge(u, v, key=e)
        return g

    def incidence_matrix(self) -> np.ndarray:
        """Signed vertex-edge incidence matrix; loops give a zero column."""
        inc = np.zeros((self.vertices, self.n_edges), dtype=np.int64)
        for j, (u, v) in enumerate(self.edges):
            if u != v:
                inc[u, j] += 1
                inc[v, j] -= 1
        return inc

    def rank_table(self) -> np.ndarray:
        """
        Rank |V| - #components(V, S) for every edge subset S, indexed by bitmask.

        Every vertex carries the smallest vertex label of its component. Labels are
        propagated along the edges of each subset until nothing changes; the
        components are then the vertices still carrying their own label.
        """
        n, nv = self.n_edges, self.vertices
        check_bound(n)
        masks = all_masks(n)
        dtype = np.int8 if nv < 128 else np.int32
        labels = np.tile(np.arange(nv, dtype=dtype), (len(masks), 1))
        active = [((masks >> j) & 1).astype(bool) for j in range(n)]

        changed = True
        passes = 0
        while changed:
            changed = False
            passes += 1
            for j, (u, v) in enumerate(self.edges):
                if u == v:
                    continue
                low = np.minimum(labels[:, u], labels[:, v])
                upd = active[j] & ((labels[:, u] != low) | (labels[:, v] != low))
                if upd.any():
                    changed = True
                    labels[upd, u] = low[upd]
                    labels[upd, v] = low[upd]
        status("graph", f"label propagation converged after {passes} passes over {len(masks)} subsets")

        roots = (labels == np.arange(nv, dtype=dtype)).sum(axis=1)
        return (nv - roots).astype(np.int16)


def graph_from_networkx(g: nx.Graph) -> Graph:
    """Relabel nodes to 0..k-1 in sorted order; edges keep networkx iteration order."""
    nodes = sorted(g.nodes())
    index = {v: i for i, v in enumerate(nodes)}
    return Graph(len(nodes), tuple((index[u], index[v]) for u, v in g.edges()))


@dataclass(frozen=True)
class RotationSystem:
    rotation: Tuple[Tuple[EdgeEnd, ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self, 'rotation',
            tuple(tuple((int(e), int(end)) for e, end in cycle) for cycle in self.rotation),
        )

    def validate(self, graph: Graph):
        """Check that every edge-end of `graph` sits exactly once, at its own endpoint."""
        if len(self.rotation) != graph.vertices:
            raise InvalidEmbedding(
                f"rotation lists {len(self.rotation)} vertices, the graph has {graph.vertices}",
                {"vertices": graph.vertices, "rotation_vertices": len(self.rotation)},
            )
        seen: Dict[EdgeEnd, int] = {}
        for v, cycle in enumerate(self.rotation):
            for e, end in cycle:
                if e < 1 or e > graph.n_edges or end not in (0, 1):
                    raise InvalidEmbedding(f"edge-end ({e}, {end}) at vertex {v} does not exist",
                                           {"vertex": v, "edge_end": [e, end]})
                if (e, end) in seen:
                    raise InvalidEmbedding(f"edge-end ({e}, {end}) appears twice",
                                           {"edge_end": [e, end], "vertices": [seen[(e, end)], v]})
                if graph.edges[e - 1][end] != v:
                    raise InvalidEmbedding(
                        f"edge-end ({e}, {end}) belongs to vertex {graph.edges[e - 1][end]}, listed at {v}",
                        {"edge_end": [e, end], "vertex": v},
                    )
                seen[(e, end)] = v
        missing = [[e, end] for e in range(1, graph.n_edges + 1) for end in (0, 1) if (e, end) not in seen]
        if missing:
            raise InvalidEmbedding(f"{len(missing)} edge-ends are missing from the rotation",
                                   {"missing": missing[:8]})


def rotation_from_neighbors(graph: Graph, orders: Sequence[Sequence[int]]) -> RotationSystem:
    """
    Build a rotation system of a simple graph from cyclic neighbor orders.

    Args:
        graph: a graph without loops or multi-edges.
        orders: `orders[v]` lists the neighbors of v in cyclic order.

    Returns:
        The rotation system with each neighbor replaced by the matching edge-end.
    """
    lookup: Dict[Tuple[int, int], EdgeEnd] = {}
    for e, (u, v) in enumerate(graph.edges, start=1):
        if u == v or (u, v) in lookup:
            raise InvalidEmbedding("neighbor orders only determine rotations of simple graphs",
                                   {"edge": e})
        lookup[(u, v)] = (e, 0)
        lookup[(v, u)] = (e, 1)
    rotation = []
    for v, neighbors in enumerate(orders):
        try:
            rotation.append(tuple(lookup[(v, w)] for w in neighbors))
        except KeyError as exc:
            raise InvalidEmbedding(f"vertex {v} has no edge to {exc.args[0][1]}",
                                   {"vertex": v, "neighbor": exc.args[0][1]})
    rot = RotationSystem(tuple(rotation))
    rot.validate(graph)
    return rot


def trace_faces(graph: Graph, rot: RotationSystem) -> List[List[EdgeEnd]]:
    """
    Trace the faces of the embedding given by a rotation system.

    Leaving along edge-end h, we arrive at the other end of the same edge and
    continue with the edge-end following it in that vertex's rotation. Each
    orbit of this step is one face, listed from its smallest edge-end.
    """
    rot.validate(graph)
    if not nx.is_connected(graph.to_networkx()):
        raise InvalidEmbedding("the graph is disconnected, so the embedding is not cellular",
                               {"components": nx.number_connected_components(graph.to_networkx())})

    successor: Dict[EdgeEnd, EdgeEnd] = {}
    for cycle in rot.rotation:
        for k, h in enumerate(cycle):
            successor[h] = cycle[(k + 1) % len(cycle)]

    faces: List[List[EdgeEnd]] = []
    visited = set()
    for h in sorted(successor):
        if h in visited:
            continue
        face = []
        cur = h
        while cur not in visited:
            visited.add(cur)
            face.append(cur)
            e, end = cur
            cur = successor[(e, 1 - end)]
        faces.append(face)
    return faces


def euler_characteristic(graph: Graph, faces: List[List[EdgeEnd]]) -> int:
    return graph.vertices - graph.n_edges + len(faces)


def dual_graph(graph: Graph, rot: RotationSystem) -> Tuple[Graph, List[int], List[List[EdgeEnd]]]:
    """
    Dual of the traced embedding.

    Returns:
        (dual, bijection, faces): one dual vertex per face, dual edge e joins the
        faces on the two sides of primal edge e, and `bijection[e-1]` is the dual
        edge matched with primal edge e.
    """
    faces = trace_faces(graph, rot)
    face_of = {h: f for f, face in enumerate(faces) for h in face}
    dual_edges = tuple((face_of[(e, 0)], face_of[(e, 1)]) for e in range(1, graph.n_edges + 1))
    status("graph", f"traced {len(faces)} faces, Euler characteristic {euler_characteristic(graph, faces)}")
    return Graph(len(faces), dual_edges), list(range(1, graph.n_edges + 1)), faces
