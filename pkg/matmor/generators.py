"""
Seeded Random Instances

Every generator takes a `numpy.random.Generator`; `make_rng` builds one from a
seed (default `settings.seed`) so sweeps and property tests reproduce exactly.

Quotient pairs come from truncations and from linear projections (the rows of
G A span a subspace of the row space of A, so the matroid of G A is a quotient
of the matroid of A). Morphisms come from stacked linear representations: with
target columns c_j and source columns a_i = (c_f(i), u_i), projecting onto the
leading coordinates is a linear map commuting with f. Graph homomorphisms give
a second family of morphisms.
"""

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from .config import settings
from .flag import FlagMatroid, truncation_chain, validate_flag
from .graphs import Graph
from .matroid import GraphicMatroid, LinearMatroid, Matroid, UniformMatroid, truncate
from .morphism import MatroidMorphism, graph_homomorphism_morphism, linear_morphism
from .setfunction import SetFunction

MATROID_KINDS = ("linear2", "linear3", "uniform", "graphic")
PRIMES = (2, 3)


def make_rng(seed: Union[int, np.random.Generator, None] = None) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(settings.seed if seed is None else seed)


def random_fraction(rng: np.random.Generator, low: Fraction = Fraction(0), high: Fraction = Fraction(1),
                    max_den: int = 12) -> Fraction:
    """A rational in [low, high] with denominator at most `max_den`."""
    den = int(rng.integers(1, max_den + 1))
    return low + (high - low) * Fraction(int(rng.integers(0, den + 1)), den)


def random_matrix(rng: np.random.Generator, rows: int, cols: int, p: int) -> List[List[int]]:
    return rng.integers(0, p, size=(rows, cols)).tolist()


def random_graph(rng: np.random.Generator, n_edges: int, vertices: Optional[int] = None) -> Graph:
    """Multigraph with `n_edges` edges; loops and parallel edges are allowed."""
    k = int(rng.integers(1, n_edges + 2)) if vertices is None else vertices
    ends = rng.integers(0, k, size=(n_edges, 2)).tolist()
    return Graph(k, tuple((u, v) for u, v in ends))


def random_matroid(rng: np.random.Generator, n: int, kinds: Sequence[str] = MATROID_KINDS) -> Matroid:
    kind = kinds[int(rng.integers(len(kinds)))]
    if kind == "uniform":
        return UniformMatroid(n, int(rng.integers(0, n + 1)))
    if kind == "graphic":
        return GraphicMatroid(random_graph(rng, n))
    p = 2 if kind == "linear2" else 3
    rows = int(rng.integers(1, n + 2))
    return LinearMatroid(p, random_matrix(rng, rows, n, p))


def random_quotient_pair(rng: np.random.Generator, n: int) -> Tuple[Matroid, Matroid]:
    """(M, N) with N a quotient of M."""
    if rng.random() < 0.5:
        M = random_matroid(rng, n)
        return M, truncate(M, int(rng.integers(0, M.full_rank + 1)))
    p = PRIMES[int(rng.integers(len(PRIMES)))]
    rows = int(rng.integers(1, n + 2))
    A = np.array(random_matrix(rng, rows, n, p), dtype=np.int64)
    G = np.array(random_matrix(rng, int(rng.integers(1, rows + 1)), rows, p), dtype=np.int64)
    return LinearMatroid(p, A.tolist()), LinearMatroid(p, ((G @ A) % p).tolist())


def random_linear_morphism(rng: np.random.Generator, n: int, m: int) -> MatroidMorphism:
    p = PRIMES[int(rng.integers(len(PRIMES)))]
    r, s = int(rng.integers(1, m + 2)), int(rng.integers(0, n + 1))
    C = np.array(random_matrix(rng, r, m, p), dtype=np.int64).reshape(r, m)
    mapping = [int(j) + 1 for j in rng.integers(0, m, size=n)]
    U = np.array(random_matrix(rng, s, n, p), dtype=np.int64).reshape(s, n)
    A = np.vstack([C[:, [j - 1 for j in mapping]], U])
    T = np.hstack([np.eye(r, dtype=np.int64), np.zeros((r, s), dtype=np.int64)])
    return linear_morphism(A.tolist(), C.tolist(), mapping, T.tolist(), p)


def random_graph_homomorphism(rng: np.random.Generator, n: int, m: int) -> MatroidMorphism:
    """
    Cycle-matroid morphism of a random vertex map. H receives every image edge
    first and then random extra edges up to m, so it may have more than m edges
    when G has many distinct image edges.
    """
    G = random_graph(rng, n)
    k = int(rng.integers(1, G.vertices + 1))
    phi = rng.integers(0, k, size=G.vertices).tolist()
    needed = sorted({tuple(sorted((phi[u], phi[v]))) for u, v in G.edges})
    extra = rng.integers(0, k, size=(max(m - len(needed), 0), 2)).tolist()
    H = Graph(k, tuple(needed) + tuple((u, v) for u, v in extra))
    return graph_homomorphism_morphism(G, H, phi)


def random_morphism(rng: np.random.Generator, n: int, m: int) -> MatroidMorphism:
    if rng.random() < 0.75:
        return random_linear_morphism(rng, n, m)
    return random_graph_homomorphism(rng, n, m)


def random_flag(rng: np.random.Generator, n: int, length: int) -> FlagMatroid:
    """
    Random flag of `length` constituents: a truncation chain of a random
    matroid, or the matroids of nested row prefixes of one matrix.
    """
    if rng.random() < 0.5:
        M = random_matroid(rng, n)
        ranks = sorted(int(r) for r in rng.integers(0, M.full_rank + 1, size=length))
        return truncation_chain(M, ranks)
    p = PRIMES[int(rng.integers(len(PRIMES)))]
    rows = int(rng.integers(1, n + 2))
    A = random_matrix(rng, rows, n, p)
    prefixes = sorted(int(k) for k in rng.integers(1, rows + 1, size=length))
    return validate_flag([LinearMatroid(p, A[:k]) for k in prefixes])


def random_setfunction(rng: np.random.Generator, n: int, low: int = -2, high: int = 4) -> SetFunction:
    """Integer values drawn uniformly from [low, high], with r(empty) = 0."""
    values = rng.integers(low, high + 1, size=1 << n).tolist()
    values[0] = 0
    return SetFunction(n, values)


def random_flag_rank_combination(rng: np.random.Generator, n: int, length: int) -> SetFunction:
    """c_0 + sum_k c_k rk_{M_k} with nonnegative integer c_k over a random flag."""
    flag = random_flag(rng, n, length)
    coeffs = rng.integers(0, 3, size=length).tolist()
    return SetFunction.rank_combination(list(flag), coeffs, int(rng.integers(-2, 3)))


def random_symmetric_matrix(rng: np.random.Generator, m: int, bound: int = 5) -> List[List[int]]:
    A = rng.integers(-bound, bound + 1, size=(m, m))
    return (np.triu(A) + np.triu(A, 1).T).tolist()
