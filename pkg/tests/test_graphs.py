"""Graphs, rotation systems, face tracing and geometric duals."""

import networkx as nx
import pytest

from matmor.errors import DescriptorError, InvalidEmbedding
from matmor.fixtures import complete_graph, k7_torus_embedding
from matmor.graphs import (Graph, RotationSystem, dual_graph, euler_characteristic, rotation_from_neighbors,
                           trace_faces)
from matmor.matroid import GraphicMatroid, dual
from matmor.morphism import MatroidMorphism, geometric_dual, is_morphism

K4_PLANAR_ORDERS = [[1, 3, 2], [2, 3, 0], [0, 3, 1], [2, 0, 1]]


def simple(graph: Graph) -> nx.Graph:
    return nx.Graph(graph.to_networkx())


@pytest.fixture
def planar_k4():
    K4 = complete_graph(4)
    return K4, rotation_from_neighbors(K4, K4_PLANAR_ORDERS)


@pytest.fixture
def bouquet():
    """Two interleaved loops at one vertex: a single face on the torus."""
    graph = Graph(1, ((0, 0), (0, 0)))
    return graph, RotationSystem((((1, 0), (2, 0), (1, 1), (2, 1)),))


def test_graph_rejects_bad_endpoint():
    with pytest.raises(DescriptorError):
        Graph(2, ((0, 2),))


def test_incidence_matrix_ignores_loops():
    inc = Graph(2, ((0, 1), (1, 1))).incidence_matrix()
    assert inc[:, 0].tolist() == [1, -1]
    assert inc[:, 1].tolist() == [0, 0]


def test_planar_k4_faces(planar_k4):
    K4, rot = planar_k4
    faces = trace_faces(K4, rot)
    assert len(faces) == 4
    assert all(len(face) == 3 for face in faces)
    assert euler_characteristic(K4, faces) == 2


def test_planar_k4_is_self_dual(planar_k4):
    K4, rot = planar_k4
    dual_g, bijection, _ = dual_graph(K4, rot)
    assert dual_g.vertices == 4
    assert bijection == list(range(1, 7))
    assert nx.is_isomorphic(simple(dual_g), nx.complete_graph(4))


def test_geometric_dual_bijection_is_a_morphism(planar_k4):
    K4, rot = planar_k4
    dual_g, bijection = geometric_dual(K4, rot, cross_check=True)
    f = MatroidMorphism(dual(GraphicMatroid(K4)), GraphicMatroid(dual_g), bijection)
    assert is_morphism(f, cross_check=True)


def test_bouquet_has_one_face(bouquet):
    graph, rot = bouquet
    faces = trace_faces(graph, rot)
    assert faces == [[(1, 0), (2, 1), (1, 1), (2, 0)]]
    assert euler_characteristic(graph, faces) == 0
    dual_g, _, _ = dual_graph(graph, rot)
    assert dual_g == Graph(1, ((0, 0), (0, 0)))


def test_rotation_with_missing_edge_end():
    graph = Graph(2, ((0, 1),))
    with pytest.raises(InvalidEmbedding) as exc:
        trace_faces(graph, RotationSystem((((1, 0),), ())))
    assert exc.value.witness["missing"] == [[1, 1]]


def test_rotation_at_wrong_vertex():
    graph = Graph(2, ((0, 1),))
    with pytest.raises(InvalidEmbedding):
        trace_faces(graph, RotationSystem((((1, 1),), ((1, 0),))))


def test_disconnected_graph_is_not_cellular():
    graph = Graph(4, ((0, 1), (2, 3)))
    rot = RotationSystem((((1, 0),), ((1, 1),), ((2, 0),), ((2, 1),)))
    with pytest.raises(InvalidEmbedding):
        trace_faces(graph, rot)


def test_neighbor_orders_need_a_simple_graph():
    with pytest.raises(InvalidEmbedding):
        rotation_from_neighbors(Graph(2, ((0, 1), (0, 1))), [[1, 1], [0, 0]])


def test_neighbor_orders_must_match_edges():
    with pytest.raises(InvalidEmbedding):
        rotation_from_neighbors(complete_graph(3), [[1, 2], [0, 2], [0, 0]])


@pytest.mark.slow
def test_k7_torus_dual_is_heawood():
    K7, rot = k7_torus_embedding()
    faces = trace_faces(K7, rot)
    assert len(faces) == 14
    assert euler_characteristic(K7, faces) == 0
    dual_g, _, _ = dual_graph(K7, rot)
    heawood = simple(dual_g)
    assert nx.is_bipartite(heawood)
    assert nx.girth(heawood) == 6
    assert nx.is_isomorphic(heawood, nx.heawood_graph())
