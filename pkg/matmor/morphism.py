"""
Morphisms of Matroids

A morphism f: M -> N is a map of ground sets [n] -> [m] under which the rank
increase of images never exceeds the rank increase in the source. Quotients are
the identity-map case.

This module verifies morphisms through each of the three equivalent conditions
(rank differences, cocircuit preimages, flat preimages), enumerates the bases of
a morphism (independent in M with spanning image in N) and their counts by
cardinality, checks the delta-matroid properties of quotient basis families,
builds Higgs lifts, and converts linear data, graph homomorphisms and embedded
graphs into morphisms.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from .config import settings
from .errors import (ConsistencyError, DescriptorError, ElementOutOfRange, EmptySliceError,
                     GroundSetMismatch, NotAQuotient)
from .graphs import Graph, RotationSystem, dual_graph
from .matroid import (GraphicMatroid, InducedMatroid, LinearMatroid, Matroid, _circuit_masks, dual,
                      flat_indicator, from_bases, image_masks)
from .models import Verdict
from .utils import all_masks, check_bound, mask_elements, minimal_mask, popcounts, status, subset_key, to_mask


class MatroidMorphism:
    """
    A map of ground sets together with source and target matroids.

    Attributes:
        source (Matroid): M on [n].
        target (Matroid): N on [m].
        mapping (tuple): `mapping[i-1]` is the 1-based image f(i).
    """

    def __init__(self, source: Matroid, target: Matroid, mapping: Sequence[int]):
        if len(mapping) != source.n:
            raise DescriptorError(f"map has {len(mapping)} entries but the source has {source.n} elements",
                                  {"map_length": len(mapping), "n": source.n})
        for j in mapping:
            if isinstance(j, bool) or not isinstance(j, (int, np.integer)) or not 1 <= j <= target.n:
                raise ElementOutOfRange(j, target.n)
        self.source = source
        self.target = target
        self.mapping = tuple(int(j) for j in mapping)
        self._image_table: Optional[np.ndarray] = None

    @property
    def n(self) -> int:
        return self.source.n

    @property
    def m(self) -> int:
        return self.target.n

    def __call__(self, i: int) -> int:
        return self.mapping[i - 1]

    def image(self, subset: Iterable[int]) -> frozenset:
        return frozenset(self.mapping[i - 1] for i in subset)

    def image_table(self) -> np.ndarray:
        if self._image_table is None:
            check_bound(self.n)
            table = image_masks(self.mapping)
            table.flags.writeable = False
            self._image_table = table
        return self._image_table

    def preimage_mask(self, mask: int) -> int:
        out = 0
        for i, j in enumerate(self.mapping):
            if (mask >> (j - 1)) & 1:
                out |= 1 << i
        return out

    def induced(self) -> Matroid:
        """f^-1(N) on [n]."""
        return InducedMatroid(self.mapping, self.target)

    def image_rank_table(self) -> np.ndarray:
        """rank_N(f(S)) for every S."""
        return self.target.rank_table()[self.image_table()]

    def __repr__(self) -> str:
        return f"MatroidMorphism(n={self.n}, m={self.m}, map={list(self.mapping)})"


def identity_morphism(M: Matroid, N: Matroid) -> MatroidMorphism:
    if M.n != N.n:
        raise GroundSetMismatch(M.n, N.n)
    return MatroidMorphism(M, N, range(1, M.n + 1))


def induced_matroid(mapping: Sequence[int], N: Matroid) -> Matroid:
    return InducedMatroid(mapping, N)


# The three equivalent conditions


def _pair_key(a: int, b: int):
    return subset_key(a), subset_key(b)


def rank_difference_condition(f: MatroidMorphism, exhaustive: bool = False) -> Verdict:
    """
    rank_N(f(S2)) - rank_N(f(S1)) <= rank_M(S2) - rank_M(S1) for S1 within S2.

    By default only pairs with |S2 - S1| = 1 are checked, which implies the
    inequality for all nested pairs by telescoping. `exhaustive=True` scans all
    nested pairs (only allowed up to `enumeration.exhaustive_pairs_max_n`).
    The witness is the minimal violating pair.
    """
    t = f.source.rank_table().astype(np.int64)
    g = f.image_rank_table().astype(np.int64)
    masks = all_masks(f.n)

    if exhaustive:
        check_bound(f.n, settings.enumeration.exhaustive_pairs_max_n, "enumeration.exhaustive_pairs_max_n")
        A, B = masks[:, None], masks[None, :]
        nested = (A & B) == A
        rows, cols = np.nonzero(nested & (g[B] - g[A] > t[B] - t[A]))
        if len(rows):
            S1, S2 = min(zip(rows.tolist(), cols.tolist()), key=lambda ab: _pair_key(*ab))
            return Verdict.no("rank_difference", S1=mask_elements(S1), S2=mask_elements(S2))
        return Verdict.yes()

    worst = None
    for j in range(f.n):
        bj = 1 << j
        without = ((masks >> j) & 1) == 0
        viol = np.flatnonzero(without & (g[masks | bj] - g > t[masks | bj] - t))
        if len(viol):
            S = minimal_mask(viol)
            cand = (S, S | bj)
            if worst is None or _pair_key(*cand) < _pair_key(*worst):
                worst = cand
    if worst is not None:
        return Verdict.no("rank_difference", S1=mask_elements(worst[0]), S2=mask_elements(worst[1]))
    return Verdict.yes()


def cocircuit_condition(f: MatroidMorphism) -> Verdict:
    """The preimage of every cocircuit of N is a union of cocircuits of M."""
    source_cocircuits = [int(c) for c in _circuit_masks(dual(f.source))]
    for c in sorted((int(c) for c in _circuit_masks(dual(f.target))), key=subset_key):
        pre = f.preimage_mask(c)
        covered = 0
        for d in source_cocircuits:
            if d & ~pre == 0:
                covered |= d
        if covered != pre:
            return Verdict.no("cocircuit_preimage", cocircuit=mask_elements(c), preimage=mask_elements(pre),
                              uncovered=mask_elements(pre & ~covered))
    return Verdict.yes()


def flat_condition(f: MatroidMorphism) -> Verdict:
    """The preimage of every flat of N is a flat of M."""
    check_bound(max(f.n, f.m), settings.enumeration.circuit_max_n, "enumeration.circuit_max_n")
    source_flat = flat_indicator(f.source)
    for T in sorted((int(T) for T in np.flatnonzero(flat_indicator(f.target))), key=subset_key):
        pre = f.preimage_mask(T)
        if not source_flat[pre]:
            return Verdict.no("flat_preimage", flat=mask_elements(T), preimage=mask_elements(pre))
    return Verdict.yes()


def is_morphism(f: MatroidMorphism, exhaustive: bool = False, cross_check: Optional[bool] = None) -> Verdict:
    """
    Decide whether f is a morphism of matroids.

    The answer comes from the rank-difference condition. With cross-checking on
    (default: `settings.cross_check`) the cocircuit and flat conditions, and the
    all-pairs scan when n is small enough, are evaluated too and must agree.

    Raises:
        ConsistencyError: the equivalent conditions disagree.
    """
    verdict = rank_difference_condition(f, exhaustive=exhaustive)
    if settings.cross_check if cross_check is None else cross_check:
        others = {"cocircuit": cocircuit_condition(f), "flat": flat_condition(f)}
        if not exhaustive and f.n <= settings.enumeration.exhaustive_pairs_max_n:
            others["exhaustive"] = rank_difference_condition(f, exhaustive=True)
        disagreeing = {k: v.model_dump() for k, v in others.items() if v.ok != verdict.ok}
        if disagreeing:
            raise ConsistencyError("morphism conditions disagree",
                                   {"rank_difference": verdict.model_dump(), **disagreeing})
    status("morphism", f"{f!r}: {'morphism' if verdict.ok else 'not a morphism'}")
    return verdict


def is_quotient(M: Matroid, N: Matroid, exhaustive: bool = False, cross_check: Optional[bool] = None) -> Verdict:
    """Is N a quotient of M, i.e. is the identity of [n] a morphism M -> N?"""
    return is_morphism(identity_morphism(M, N), exhaustive=exhaustive, cross_check=cross_check)


# Bases and b-vectors


def quotient_basis_masks(M: Matroid, N: Matroid) -> np.ndarray:
    """Ascending bitmasks of the sets independent in M and spanning in N."""
    if M.n != N.n:
        raise GroundSetMismatch(M.n, N.n)
    t_N = N.rank_table()
    return np.flatnonzero((M.rank_table() == popcounts(M.n)) & (t_N == t_N[-1]))


def morphism_basis_masks(f: MatroidMorphism, cross_check: Optional[bool] = None) -> np.ndarray:
    """
    Ascending bitmasks of the bases of f: independent in M with f(S) spanning N.

    With cross-checking on, the result is compared with the bases of the
    quotient M ->> f^-1(N) when f(E) spans N, and with the empty family otherwise.
    """
    g = f.image_rank_table()
    found = np.flatnonzero((f.source.rank_table() == popcounts(f.n)) & (g == f.target.full_rank))
    if settings.cross_check if cross_check is None else cross_check:
        if g[-1] == f.target.full_rank:
            expected = quotient_basis_masks(f.source, f.induced())
        else:
            expected = np.array([], dtype=found.dtype)
        if not np.array_equal(found, expected):
            raise ConsistencyError("bases of the morphism differ from bases of the induced quotient",
                                   {"morphism": len(found), "quotient": len(expected)})
    return found


def bases_of_morphism(f: MatroidMorphism, cross_check: Optional[bool] = None) -> Iterator[frozenset]:
    """Bases of f, by cardinality then lexicographically."""
    for mask in sorted((int(b) for b in morphism_basis_masks(f, cross_check)), key=subset_key):
        yield frozenset(mask_elements(mask))


@dataclass(frozen=True)
class BVector:
    """Counts b_0..b_n of bases of a morphism by cardinality."""
    counts: Tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.counts) - 1

    def __getitem__(self, k: int) -> int:
        return self.counts[k]

    def __len__(self) -> int:
        return len(self.counts)

    def to_list(self) -> List[int]:
        return list(self.counts)

    def normalized(self) -> List[Fraction]:
        """b_k / C(n, k)."""
        return [Fraction(b, comb(self.n, k)) for k, b in enumerate(self.counts)]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"k": range(len(self.counts)), "b_k": self.counts})


def b_vector(f: MatroidMorphism, cross_check: Optional[bool] = None) -> BVector:
    found = morphism_basis_masks(f, cross_check)
    counts = np.bincount(popcounts(f.n)[found], minlength=f.n + 1)
    return BVector(tuple(int(c) for c in counts))


# Quotient structure


def check_delta_matroid(family: Iterable[Iterable[int]], n: int) -> Verdict:
    """
    Check the two properties characterizing feasible sets of a saturated delta-matroid.

    (interval) S1, S2 feasible and S1 within S3 within S2 imply S3 feasible.
    (exchange) for S1, S2 feasible and i in S1 ^ S2 there is j in S1 ^ S2
    (possibly j = i) with S1 ^ {i, j} feasible.

    Raises:
        DescriptorError: the family is empty.
    """
    check_bound(n)
    members = sorted({to_mask(s, n) for s in family}, key=subset_key)
    if not members:
        raise DescriptorError("the delta-matroid check needs a nonempty family")
    feasible = np.zeros(1 << n, dtype=bool)
    feasible[members] = True
    masks = all_masks(n)

    for S1 in members:
        supersets = (masks & S1) == S1
        below = feasible & supersets
        for j in range(n):
            bj = 1 << j
            without = ((masks >> j) & 1) == 0
            below[without] |= below[masks[without] | bj]
        gaps = np.flatnonzero(below & supersets & ~feasible)
        if len(gaps):
            S3 = minimal_mask(gaps)
            S2 = minimal_mask(S for S in members if S & S3 == S3)
            return Verdict.no("interval", S1=mask_elements(S1), S2=mask_elements(S2), S3=mask_elements(S3))

    member_array = np.array(members, dtype=np.int64)
    for S1 in members:
        diff = member_array ^ S1
        for i in range(n):
            bi = 1 << i
            needs = ((diff >> i) & 1).astype(bool)
            if not needs.any():
                continue
            served = np.zeros(len(members), dtype=bool)
            for j in range(n):
                bj = 1 << j
                target = S1 ^ bi ^ bj if j != i else S1 ^ bi
                if feasible[target]:
                    served |= ((diff >> j) & 1).astype(bool)
            bad = np.flatnonzero(needs & ~served)
            if len(bad):
                return Verdict.no("exchange", S1=mask_elements(S1), S2=mask_elements(members[bad[0]]), i=i + 1)
    return Verdict.yes()


def higgs_lift(M: Matroid, N: Matroid, k: int) -> Matroid:
    """
    The rank k Higgs lift of N toward M: the bases of M ->> N of cardinality k.

    Raises:
        NotAQuotient: N is not a quotient of M.
        EmptySliceError: M ->> N has no basis of cardinality k.
    """
    verdict = is_quotient(M, N)
    if not verdict:
        raise NotAQuotient("the Higgs lift needs a quotient pair", verdict.model_dump())
    found = quotient_basis_masks(M, N)
    slice_k = found[popcounts(M.n)[found] == k]
    if len(slice_k) == 0:
        raise EmptySliceError(k)
    status("morphism", f"Higgs lift of rank {k}: {len(slice_k)} bases")
    return from_bases(M.n, [mask_elements(b) for b in slice_k])


# Converters


def geometric_dual(graph: Graph, rot: RotationSystem,
                   cross_check: Optional[bool] = None) -> Tuple[Graph, List[int]]:
    """
    Geometric dual of a cellularly embedded graph.

    Returns:
        (dual, bijection) where `bijection[e-1]` is the dual edge crossing edge e.
        With cross-checking on, the bijection is verified to be a morphism from
        the cocycle matroid of `graph` to the cycle matroid of the dual.
    """
    dual_g, bijection, _ = dual_graph(graph, rot)
    if settings.cross_check if cross_check is None else cross_check:
        f = MatroidMorphism(dual(GraphicMatroid(graph)), GraphicMatroid(dual_g), bijection)
        verdict = rank_difference_condition(f)
        if not verdict:
            raise ConsistencyError("the edge bijection of the geometric dual is not a morphism",
                                   verdict.model_dump())
    return dual_g, bijection


def linear_morphism(phi1: Sequence[Sequence[int]], phi2: Sequence[Sequence[int]], mapping: Sequence[int],
                    T: Sequence[Sequence[int]], p: int) -> MatroidMorphism:
    """
    Morphism of linear matroids from a commuting square over GF(p).

    Args:
        phi1: r1 x n matrix; column i represents element i of the source.
        phi2: r2 x m matrix; column j represents element j of the target.
        mapping: `mapping[i-1]` is the target element of source element i.
        T: r2 x r1 matrix of the linear map between the two spaces.
        p: the prime.

    Raises:
        DescriptorError: T phi1(i) != phi2(f(i)) for some i.
    """
    source, target = LinearMatroid(p, phi1), LinearMatroid(p, phi2)
    f = MatroidMorphism(source, target, mapping)
    T = np.array(T, dtype=np.int64) % p
    if T.shape != (target.matrix.shape[0], source.matrix.shape[0]):
        raise DescriptorError(f"T has shape {T.shape}, expected {(target.matrix.shape[0], source.matrix.shape[0])}")
    image = (T @ source.matrix) % p
    for i, j in enumerate(f.mapping, start=1):
        if not np.array_equal(image[:, i - 1], target.matrix[:, j - 1]):
            raise DescriptorError(f"the square does not commute at element {i}",
                                  {"element": i, "image": image[:, i - 1].tolist(),
                                   "target_column": target.matrix[:, j - 1].tolist()})
    return f


def graph_homomorphism_morphism(G: Graph, H: Graph, vertex_map: Sequence[int],
                                edge_map: Optional[Sequence[int]] = None) -> MatroidMorphism:
    """
    Morphism of cycle matroids induced by a map of vertices.

    Each edge {u, v} of G goes to an edge of H with endpoints {phi(u), phi(v)}:
    the given `edge_map` entry, which must have those endpoints, or else the
    lowest-numbered such edge.

    Raises:
        DescriptorError: no edge of H joins phi(u) and phi(v).
    """
    if len(vertex_map) != G.vertices or any(not 0 <= w < H.vertices for w in vertex_map):
        raise DescriptorError("vertex map must send every vertex of G to a vertex of H",
                              {"vertex_map": list(vertex_map)})
    ends: Dict[Tuple[int, int], int] = {}
    for e, (a, b) in enumerate(H.edges, start=1):
        ends.setdefault((min(a, b), max(a, b)), e)

    mapping = []
    for e, (u, v) in enumerate(G.edges, start=1):
        a, b = sorted((vertex_map[u], vertex_map[v]))
        if edge_map is not None:
            target = edge_map[e - 1]
            if not 1 <= target <= H.n_edges or tuple(sorted(H.edges[target - 1])) != (a, b):
                raise DescriptorError(f"edge {e} cannot go to edge {target}", {"edge": e, "target": target})
        elif (a, b) in ends:
            target = ends[(a, b)]
        else:
            raise DescriptorError(f"no edge of H joins {a} and {b}, the image of edge {e}",
                                  {"edge": e, "endpoints": [a, b]})
        mapping.append(target)
    return MatroidMorphism(GraphicMatroid(G), GraphicMatroid(H), mapping)
