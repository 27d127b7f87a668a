"""
Matroid Core Module

This module defines the abstract base class `Matroid` and one subclass per
backing. Every matroid lives on the ground set {1..n} and is defined by its rank
function. Subclasses supply a rank oracle for a single subset (`_rank_mask`) and
may override `_build_table` with a vectorized computation of all 2^n ranks.

Backings: explicit basis list, cycle matroid of a graph, linear over GF(p),
uniform, and a stored rank table. Derived forms: dual, deletion/contraction,
truncation and the matroid induced through a map.

The module also provides the brute-force enumerations (bases, circuits, flats,
...) and the rank-axiom validator.
"""

import threading
from abc import ABC, abstractmethod
from itertools import combinations
from typing import Iterable, List, Optional, Sequence

import numpy as np
from sympy import isprime

from .config import settings
from .errors import (ConsistencyError, DescriptorError, ElementOutOfRange, ExchangeAxiomViolation,
                     GroundSetMismatch, MatmorError)
from .graphs import Graph
from .models import Verdict
from .utils import (all_masks, check_bound, mask_elements, minimal_mask, popcounts, status, subset_key,
                    to_mask, insertion_masks)

MAX_PRIME = 2 ** 31


class Matroid(ABC):
    """
    Abstract base class for matroids on {1..n}.

    The full rank table is computed lazily on first use and memoized. The
    computation runs under a lock, so concurrent rank queries from several
    threads are safe; afterwards the table is a read-only numpy array.

    Attributes:
        n (int): Size of the ground set.
    """

    def __init__(self, n: int):
        if n < 0:
            raise DescriptorError(f"ground set size must be nonnegative, got {n}")
        self.n = n
        self._table: Optional[np.ndarray] = None
        self._lock = threading.Lock()

    @abstractmethod
    def _rank_mask(self, mask: int) -> int:
        """Rank of the subset encoded by `mask`, computed from the backing."""
        pass

    def _build_table(self) -> np.ndarray:
        """Rank of every subset, indexed by bitmask. Subclasses may vectorize this."""
        return np.fromiter((self._rank_mask(m) for m in range(1 << self.n)), dtype=np.int16, count=1 << self.n)

    def rank_table(self) -> np.ndarray:
        if self._table is None:
            with self._lock:
                if self._table is None:
                    check_bound(self.n)
                    table = np.ascontiguousarray(self._build_table(), dtype=np.int16)
                    table.flags.writeable = False
                    status("matroid", f"built rank table of {type(self).__name__} on {self.n} elements")
                    self._table = table
        return self._table

    def rank_mask(self, mask: int) -> int:
        if self._table is not None:
            return int(self._table[mask])
        return int(self._rank_mask(int(mask)))

    def rank(self, subset: Iterable[int] = ()) -> int:
        return self.rank_mask(to_mask(subset, self.n))

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def full_rank(self) -> int:
        return self.rank_mask(self.full_mask)

    def is_independent(self, subset: Iterable[int]) -> bool:
        mask = to_mask(subset, self.n)
        return self.rank_mask(mask) == bin(mask).count("1")

    def is_spanning(self, subset: Iterable[int]) -> bool:
        return self.rank(subset) == self.full_rank

    def check_element(self, i: int):
        if isinstance(i, bool) or not isinstance(i, (int, np.integer)) or not 1 <= i <= self.n:
            raise ElementOutOfRange(i, self.n)

    def dual(self) -> "Matroid":
        return dual(self)

    def delete(self, i: int) -> "Matroid":
        return delete(self, i)

    def contract(self, i: int) -> "Matroid":
        return contract(self, i)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matroid):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.rank_table(), other.rank_table())

    __hash__ = None

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.n})"


class BasisMatroid(Matroid):
    """Matroid given by its list of bases, stored as bitmasks in ascending order."""

    def __init__(self, n: int, basis_masks: Iterable[int]):
        super().__init__(n)
        self.basis_masks = tuple(sorted(set(int(b) for b in basis_masks)))

    def _rank_mask(self, mask: int) -> int:
        return max(bin(mask & b).count("1") for b in self.basis_masks)

    def _build_table(self) -> np.ndarray:
        pc = popcounts(self.n)
        masks = all_masks(self.n)
        table = np.zeros(1 << self.n, dtype=np.int16)
        for b in self.basis_masks:
            np.maximum(table, pc[masks & b], out=table)
        return table

    @property
    def bases(self) -> List[frozenset]:
        return sorted((frozenset(mask_elements(b)) for b in self.basis_masks), key=lambda s: (len(s), sorted(s)))


class GraphicMatroid(Matroid):
    """Cycle matroid of a graph: rank(S) = |V| - #components(V, S)."""

    def __init__(self, graph: Graph):
        super().__init__(graph.n_edges)
        self.graph = graph

    def _rank_mask(self, mask: int) -> int:
        parent = list(range(self.graph.vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        rank = 0
        for e in mask_elements(mask):
            u, v = self.graph.edges[e - 1]
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                rank += 1
        return rank

    def _build_table(self) -> np.ndarray:
        return self.graph.rank_table()


def gf_rank(matrix: np.ndarray, p: int) -> int:
    """
    Rank of an integer matrix over GF(p) by Gaussian elimination.

    Args:
        matrix: 2-D integer array; entries are reduced mod p.
        p: a prime not larger than 2^31, so products fit in int64.

    Returns:
        The rank over GF(p).
    """
    R = np.array(matrix, dtype=np.int64) % p
    if R.size == 0:
        return 0
    rows, cols = R.shape
    pivot_row = 0
    for col in range(cols):
        if pivot_row == rows:
            break
        nonzero = np.flatnonzero(R[pivot_row:, col])
        if len(nonzero) == 0:
            continue
        found = pivot_row + int(nonzero[0])
        if found != pivot_row:
            R[[pivot_row, found]] = R[[found, pivot_row]]
        R[pivot_row] = (R[pivot_row] * pow(int(R[pivot_row, col]), -1, p)) % p
        below = R[pivot_row + 1:, col].copy()
        if below.any():
            R[pivot_row + 1:] = (R[pivot_row + 1:] - np.outer(below, R[pivot_row])) % p
        pivot_row += 1
    return pivot_row


def _xor_rank(vectors: Iterable[int]) -> int:
    """Rank over GF(2) of bit-packed vectors, keeping a basis indexed by leading bit."""
    basis = {}
    for v in vectors:
        while v:
            lead = v.bit_length() - 1
            if lead not in basis:
                basis[lead] = v
                break
            v ^= basis[lead]
    return len(basis)


class LinearMatroid(Matroid):
    """Matroid of the columns of a matrix over GF(p); column j is element j+1."""

    def __init__(self, p: int, matrix: Sequence[Sequence[int]]):
        if p > MAX_PRIME or not isprime(p):
            raise DescriptorError(f"p={p} must be a prime not larger than 2^31", {"p": p})
        M = np.array(matrix, dtype=np.int64)
        if M.ndim != 2:
            raise DescriptorError("a linear matroid needs a 2-D matrix")
        super().__init__(M.shape[1])
        self.p = p
        self.matrix = M % p
        self.matrix.flags.writeable = False
        if p == 2:
            self._columns = [int(sum(int(b) << r for r, b in enumerate(self.matrix[:, j])))
                             for j in range(self.n)]

    def _rank_mask(self, mask: int) -> int:
        elements = mask_elements(mask)
        if not elements:
            return 0
        if self.p == 2:
            return _xor_rank(self._columns[e - 1] for e in elements)
        return gf_rank(self.matrix[:, [e - 1 for e in elements]], self.p)


class UniformMatroid(Matroid):
    def __init__(self, n: int, r: int):
        if not 0 <= r <= n:
            raise DescriptorError(f"uniform matroid needs 0 <= r <= n, got r={r}, n={n}")
        super().__init__(n)
        self.r = r

    def _rank_mask(self, mask: int) -> int:
        return min(bin(mask).count("1"), self.r)

    def _build_table(self) -> np.ndarray:
        return np.minimum(popcounts(self.n), self.r)


class TableMatroid(Matroid):
    """Matroid given directly by a rank table in bitmask order (not validated here)."""

    def __init__(self, n: int, values: Sequence[int]):
        super().__init__(n)
        values = np.asarray(values, dtype=np.int16)
        if values.shape != (1 << n,):
            raise DescriptorError(f"rank table for n={n} needs {1 << n} values, got {values.size}")
        self._values = values

    def _rank_mask(self, mask: int) -> int:
        return int(self._values[mask])

    def _build_table(self) -> np.ndarray:
        return self._values


class DualMatroid(Matroid):
    """rank*(S) = |S| + rank([n] - S) - rank([n])."""

    def __init__(self, base: Matroid):
        super().__init__(base.n)
        self.base = base

    def _rank_mask(self, mask: int) -> int:
        return bin(mask).count("1") + self.base.rank_mask(self.full_mask ^ mask) - self.base.full_rank

    def _build_table(self) -> np.ndarray:
        table = self.base.rank_table()
        # full ^ mask == full - mask, so the complement lookup is the reversed table
        return popcounts(self.n) + table[::-1] - table[-1]


class MinorMatroid(Matroid):
    """
    Single-element deletion or contraction, relabeled order-preservingly to [n-1].

    Deletion: rank(S). Contraction: rank(S + i) - rank(i).
    """

    def __init__(self, base: Matroid, i: int, contracted: bool):
        base.check_element(i)
        super().__init__(base.n - 1)
        self.base = base
        self.i = i
        self.contracted = contracted
        self._extra = 1 << (i - 1) if contracted else 0
        self._shift = base.rank_mask(self._extra) if contracted else 0

    def _lift(self, mask: int) -> int:
        low = (1 << (self.i - 1)) - 1
        return (mask & low) | ((mask >> (self.i - 1)) << self.i)

    def _rank_mask(self, mask: int) -> int:
        return self.base.rank_mask(self._lift(mask) | self._extra) - self._shift

    def _build_table(self) -> np.ndarray:
        lifted = insertion_masks(self.base.n, self.i) | self._extra
        return self.base.rank_table()[lifted] - self._shift


class TruncatedMatroid(Matroid):
    def __init__(self, base: Matroid, r: int):
        super().__init__(base.n)
        if r < 0:
            raise DescriptorError(f"truncation rank must be nonnegative, got {r}")
        self.base = base
        self.r = r

    def _rank_mask(self, mask: int) -> int:
        return min(self.base.rank_mask(mask), self.r)

    def _build_table(self) -> np.ndarray:
        return np.minimum(self.base.rank_table(), self.r)


def image_masks(mapping: Sequence[int]) -> np.ndarray:
    """Bitmask of f(S) for every S, where mapping[i-1] = f(i) is 1-based."""
    masks = all_masks(len(mapping))
    image = np.zeros_like(masks)
    for j, target in enumerate(mapping):
        image |= ((masks >> j) & 1) << (target - 1)
    return image


def image_mask(mapping: Sequence[int], mask: int) -> int:
    out = 0
    for e in mask_elements(mask):
        out |= 1 << (mapping[e - 1] - 1)
    return out


class InducedMatroid(Matroid):
    """The matroid f^-1(N) on the source ground set: rank(S) = rank_N(f(S))."""

    def __init__(self, mapping: Sequence[int], target: Matroid):
        super().__init__(len(mapping))
        for j in mapping:
            target.check_element(j)
        self.mapping = tuple(int(j) for j in mapping)
        self.target = target

    def _rank_mask(self, mask: int) -> int:
        return self.target.rank_mask(image_mask(self.mapping, mask))

    def _build_table(self) -> np.ndarray:
        return self.target.rank_table()[image_masks(self.mapping)]


# Constructors


def uniform(n: int, r: int) -> Matroid:
    return UniformMatroid(n, r)


def cycle_matroid(graph: Graph) -> Matroid:
    return GraphicMatroid(graph)


def from_rank_table(n: int, values: Sequence[int], validate: bool = True) -> Matroid:
    M = TableMatroid(n, values)
    if validate:
        verdict = check_rank_axioms(M.rank_table())
        if not verdict:
            raise DescriptorError(f"rank table violates the {verdict.clause} axiom", verdict.witness)
    return M


def _exchange_witness(family: Sequence[int]):
    """First (B1, B2, i) in ascending order for which no exchange element exists."""
    members = set(family)
    for b1 in family:
        for b2 in family:
            for i in mask_elements(b1 & ~b2):
                without = b1 & ~(1 << (i - 1))
                if not any((without | (1 << (j - 1))) in members for j in mask_elements(b2 & ~b1)):
                    return b1, b2, i
    return None


def from_bases(n: int, bases: Iterable[Iterable[int]]) -> BasisMatroid:
    """
    Build a matroid from its bases, validating the basis exchange axiom.

    The family is accepted when the max-intersection rank function it defines
    satisfies the rank axioms and its rank-r independent sets are exactly the
    given sets. Only on rejection is the pairwise exchange scan run, to produce
    the witness.

    Raises:
        ElementOutOfRange: a basis element outside [n].
        ExchangeAxiomViolation: the family is not the basis family of a matroid.
    """
    family = sorted({to_mask(b, n) for b in bases}, key=subset_key)
    if not family:
        raise DescriptorError("from_bases needs a nonempty list of bases")

    M = BasisMatroid(n, family)
    sizes = {bin(b).count("1") for b in family}
    valid = False
    if len(sizes) == 1:
        table = M.rank_table()
        r = sizes.pop()
        spanning_independent = np.flatnonzero((table == r) & (popcounts(n) == r))
        valid = bool(check_rank_axioms(table)) and set(int(b) for b in spanning_independent) == set(family)
    if valid:
        return M

    witness = _exchange_witness(family)
    if witness is None:
        raise ConsistencyError("basis family rejected by the rank check but the exchange scan found no witness",
                               {"bases": [mask_elements(b) for b in family]})
    b1, b2, i = witness
    raise ExchangeAxiomViolation(mask_elements(b1), mask_elements(b2), i)


# Operations


def dual(M: Matroid) -> Matroid:
    if isinstance(M, DualMatroid):
        return M.base
    if isinstance(M, UniformMatroid):
        return UniformMatroid(M.n, M.n - M.r)
    return DualMatroid(M)


def delete(M: Matroid, i: int) -> Matroid:
    return MinorMatroid(M, i, contracted=False)


def contract(M: Matroid, i: int) -> Matroid:
    return MinorMatroid(M, i, contracted=True)


def truncate(M: Matroid, r: int) -> Matroid:
    return TruncatedMatroid(M, r)


# Enumerations


def _sets(masks: Iterable[int]) -> List[frozenset]:
    return [frozenset(mask_elements(m)) for m in sorted((int(m) for m in masks), key=subset_key)]


def _circuit_masks(M: Matroid) -> np.ndarray:
    check_bound(M.n, settings.enumeration.circuit_max_n, "enumeration.circuit_max_n")
    table, pc, masks = M.rank_table(), popcounts(M.n), all_masks(M.n)
    minimal = table < pc
    for j in range(M.n):
        has = ((masks >> j) & 1).astype(bool)
        minimal &= ~has | (table[masks & ~(1 << j)] == pc - 1)
    return np.flatnonzero(minimal)


def circuits(M: Matroid) -> List[frozenset]:
    """Minimal dependent sets, by cardinality then lexicographically."""
    return _sets(_circuit_masks(M))


def cocircuits(M: Matroid) -> List[frozenset]:
    return circuits(dual(M))


def flats(M: Matroid) -> List[frozenset]:
    """Closed sets: adding any outside element raises the rank."""
    check_bound(M.n, settings.enumeration.circuit_max_n, "enumeration.circuit_max_n")
    return _sets(np.flatnonzero(flat_indicator(M)))


def flat_indicator(M: Matroid) -> np.ndarray:
    table, masks = M.rank_table(), all_masks(M.n)
    closed = np.ones(1 << M.n, dtype=bool)
    for j in range(M.n):
        outside = ((masks >> j) & 1) == 0
        closed &= ~outside | (table[masks | (1 << j)] > table)
    return closed


def bases(M: Matroid) -> List[frozenset]:
    table, pc = M.rank_table(), popcounts(M.n)
    return _sets(np.flatnonzero((pc == M.full_rank) & (table == pc)))


def independent_sets(M: Matroid) -> List[frozenset]:
    return _sets(np.flatnonzero(M.rank_table() == popcounts(M.n)))


def spanning_sets(M: Matroid) -> List[frozenset]:
    return _sets(np.flatnonzero(M.rank_table() == M.full_rank))


def loops(M: Matroid) -> List[int]:
    return [i for i in range(1, M.n + 1) if M.rank_mask(1 << (i - 1)) == 0]


def parallel_pairs(M: Matroid) -> List[frozenset]:
    """Two-element circuits."""
    return [frozenset((i, j)) for i, j in combinations(range(1, M.n + 1), 2)
            if M.rank_mask((1 << (i - 1)) | (1 << (j - 1))) == 1
            and M.rank_mask(1 << (i - 1)) == 1 and M.rank_mask(1 << (j - 1)) == 1]


def parallel_indicator(M: Matroid, i: int, j: int) -> int:
    """rk(i) + rk(j) - rk({i, j}): 1 for a parallel pair, 0 otherwise."""
    M.check_element(i)
    M.check_element(j)
    if i == j:
        raise MatmorError("parallel_indicator needs two distinct elements", {"i": i, "j": j})
    bi, bj = 1 << (i - 1), 1 << (j - 1)
    return M.rank_mask(bi) + M.rank_mask(bj) - M.rank_mask(bi | bj)


# Validators


def _pair_key(a: int, b: int):
    return subset_key(a), subset_key(b)


def check_rank_axioms(table: Sequence[int]) -> Verdict:
    """
    Check 0 <= r(S) <= |S|, monotonicity and submodularity of a rank table.

    Monotonicity is checked on single-element extensions, which implies it for
    all nested pairs. Submodularity is checked on all pairs of subsets up to
    `enumeration.exhaustive_pairs_max_n` and through the equivalent local form
    r(S+i) + r(S+j) >= r(S+i+j) + r(S) beyond it.

    Returns:
        Verdict whose witness is the minimal violating subset (or pair).
    """
    t = np.asarray(table, dtype=np.int64)
    n = int(len(t)).bit_length() - 1
    if len(t) != 1 << n:
        raise DescriptorError(f"a rank table needs 2^n entries, got {len(t)}")
    check_bound(n)
    pc, masks = popcounts(n).astype(np.int64), all_masks(n)

    bad = np.flatnonzero((t < 0) | (t > pc))
    if len(bad):
        S = minimal_mask(bad)
        return Verdict.no("cardinality", S=mask_elements(S), rank=int(t[S]))

    worst = None
    for j in range(n):
        without = ((masks >> j) & 1) == 0
        viol = np.flatnonzero(without & (t[masks | (1 << j)] < t))
        if len(viol):
            S = minimal_mask(viol)
            cand = (S, S | (1 << j))
            if worst is None or _pair_key(*cand) < _pair_key(*worst):
                worst = cand
    if worst is not None:
        return Verdict.no("monotonicity", S1=mask_elements(worst[0]), S2=mask_elements(worst[1]))

    if n <= settings.enumeration.exhaustive_pairs_max_n:
        A, B = masks[:, None], masks[None, :]
        rows, cols = np.nonzero(t[A | B] + t[A & B] > t[A] + t[B])
        if len(rows):
            S1, S2 = min(zip(rows.tolist(), cols.tolist()), key=lambda ab: _pair_key(*ab))
            return Verdict.no("submodularity", S1=mask_elements(S1), S2=mask_elements(S2))
        return Verdict.yes()

    worst = None
    for i in range(n):
        for j in range(i + 1, n):
            bi, bj = 1 << i, 1 << j
            free = (masks & (bi | bj)) == 0
            viol = np.flatnonzero(free & (t[masks | bi] + t[masks | bj] < t[masks | bi | bj] + t))
            if len(viol):
                S = minimal_mask(viol)
                cand = (S | bi, S | bj)
                if worst is None or _pair_key(*cand) < _pair_key(*worst):
                    worst = cand
    if worst is not None:
        return Verdict.no("submodularity", S1=mask_elements(worst[0]), S2=mask_elements(worst[1]))
    return Verdict.yes()


def is_weak_map(M: Matroid, N: Matroid) -> Verdict:
    """Identity on [n] is a weak map M -> N iff rank_N(S) <= rank_M(S) for all S."""
    if M.n != N.n:
        raise GroundSetMismatch(M.n, N.n)
    bad = np.flatnonzero(N.rank_table() > M.rank_table())
    if len(bad):
        S = minimal_mask(bad)
        return Verdict.no("weak_map", S=mask_elements(S), rank_M=M.rank_mask(S), rank_N=N.rank_mask(S))
    return Verdict.yes()
