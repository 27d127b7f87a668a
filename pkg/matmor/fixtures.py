"""
Bundled Worked Examples

Programmatic constructions of the three example morphisms. `matmor fixtures`
writes their descriptors; the copies under `fixtures/` in the repository are
exactly this output.

- fano-projection: 14 vectors (1, x1, x2, x3, x4) over GF(2) with
  (x2, x3, x4) != 0, sent two-to-one onto the Fano plane by dropping the first
  two coordinates.
- graph-hom: the triangular prism mapped onto a triangle by a proper vertex
  3-coloring.
- k7-torus: K7 embedded on the torus; the cocycle matroid of K7 maps to the
  cycle matroid of the geometric dual (the Heawood graph) by the edge bijection
  found by face tracing.
"""

from typing import Dict, List, Tuple

from .graphs import Graph, RotationSystem, rotation_from_neighbors
from .loaders import describe_graph, describe_morphism, describe_rotation
from .matroid import GraphicMatroid, dual
from .morphism import MatroidMorphism, geometric_dual, graph_homomorphism_morphism, linear_morphism

FIXTURE_NAMES = ("fano-projection", "graph-hom", "k7-torus")

# Neighbor order at vertex v of the toroidal K7: v+1, v+3, v+2, v+6, v+4, v+5 (mod 7)
K7_TORUS_STEPS = (1, 3, 2, 6, 4, 5)


def _bits(v: int) -> List[int]:
    return [(v >> k) & 1 for k in range(3)]


def fano_projection() -> MatroidMorphism:
    points = list(range(1, 8))
    target = [[_bits(v)[k] for v in points] for k in range(3)]
    columns = [[1, x1] + _bits(v) for v in points for x1 in (0, 1)]
    source = [[col[k] for col in columns] for k in range(5)]
    mapping = [v for v in points for _ in (0, 1)]
    T = [[1 if j == k + 2 else 0 for j in range(5)] for k in range(3)]
    return linear_morphism(source, target, mapping, T, 2)


def triangular_prism() -> Tuple[Graph, List[int]]:
    """
    The prism with its 3-coloring.

    Outer triangle 0, 1, 2 colored 2, 3, 1; inner triangle 3, 4, 5 colored
    1, 2, 3; spokes 0-3, 1-4, 2-5. Colors are returned 0-based.
    """
    edges = ((0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5))
    return Graph(6, edges), [1, 2, 0, 0, 1, 2]


def graph_hom() -> MatroidMorphism:
    G, coloring = triangular_prism()
    H = Graph(3, ((0, 1), (1, 2), (0, 2)))
    return graph_homomorphism_morphism(G, H, coloring)


def complete_graph(k: int) -> Graph:
    """K_k with edges in lexicographic order."""
    return Graph(k, tuple((u, v) for u in range(k) for v in range(u + 1, k)))


def k7_torus_embedding() -> Tuple[Graph, RotationSystem]:
    K7 = complete_graph(7)
    orders = [[(v + s) % 7 for s in K7_TORUS_STEPS] for v in range(7)]
    return K7, rotation_from_neighbors(K7, orders)


def k7_torus() -> MatroidMorphism:
    K7, rot = k7_torus_embedding()
    dual_g, bijection = geometric_dual(K7, rot)
    return MatroidMorphism(dual(GraphicMatroid(K7)), GraphicMatroid(dual_g), bijection)


def fixture_documents(name: str) -> Dict[str, object]:
    """
    Descriptor documents of a worked example, keyed by file name.

    The K7 example also ships its graph and rotation system, from which the
    morphism can be rebuilt with `matmor dualize`.
    """
    if name == "fano-projection":
        return {"fano-projection.json": describe_morphism(fano_projection())}
    if name == "graph-hom":
        return {"graph-hom.json": describe_morphism(graph_hom())}
    if name == "k7-torus":
        K7, rot = k7_torus_embedding()
        return {
            "k7-torus.json": describe_morphism(k7_torus()),
            "k7-torus-graph.json": describe_graph(K7),
            "k7-torus-rotation.json": describe_rotation(rot),
        }
    raise KeyError(name)
