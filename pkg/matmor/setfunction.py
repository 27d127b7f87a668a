"""
Set Functions and Discrete Concavity

A set function r assigns an exact rational to every subset of [n]; values are
stored in bitmask order. This module builds the homogeneous polynomials

    Z_{p,r}(w_0..w_n) = sum_S p^-r(S) w_0^(n-|S|) prod_{i in S} w_i,

probes membership in L_n (Z_{p,r} Lorentzian for every 0 < p <= 1) on a grid of
p values, extracts limits as p -> 0, and decides submodularity and
M-natural-concavity through local exchange conditions.
"""

from fractions import Fraction
from math import lcm
from typing import Callable, Iterable, List, Optional, Sequence, Union

import numpy as np

from .config import settings
from .errors import DescriptorError, NonIntegralSetFunction
from .lorentzian import is_lorentzian
from .matroid import Matroid
from .models import ConsistencyReport, ProbePoint, ProbeReport, Rational, Verdict
from .polynomial import HomogeneousPolynomial, ParametricPolynomial, Polynomial
from .utils import (all_masks, check_bound, fraction_payload, mask_elements, minimal_mask, popcounts, status,
                    subset_key, to_mask)

Scalar = Union[int, Fraction]


class SetFunction:
    """
    Table of exact rationals over all subsets of [n].

    Attributes:
        n (int): ground set size.
        values (tuple): `values[mask]` is r of the subset encoded by `mask`.
    """

    def __init__(self, n: int, values: Sequence[Scalar]):
        check_bound(n)
        if len(values) != 1 << n:
            raise DescriptorError(f"a set function on [{n}] needs {1 << n} values, got {len(values)}")
        self.n = n
        self.values = tuple(Fraction(v) for v in values)

    @classmethod
    def from_callable(cls, n: int, fn: Callable[[frozenset], Scalar]) -> "SetFunction":
        return cls(n, [fn(frozenset(mask_elements(m))) for m in range(1 << n)])

    @classmethod
    def rank_combination(cls, matroids: Sequence[Matroid], coefficients: Sequence[Scalar],
                         constant: Scalar = 0) -> "SetFunction":
        """c_0 + sum_k c_k rk_{M_k}."""
        if not matroids:
            raise DescriptorError("need at least one matroid")
        n = matroids[0].n
        total = [Fraction(constant)] * (1 << n)
        for M, c in zip(matroids, coefficients):
            c = Fraction(c)
            total = [t + c * int(r) for t, r in zip(total, M.rank_table().tolist())]
        return cls(n, total)

    def __call__(self, subset: Iterable[int]) -> Fraction:
        return self.values[to_mask(subset, self.n)]

    def __add__(self, other: Union["SetFunction", Scalar]) -> "SetFunction":
        if isinstance(other, SetFunction):
            return SetFunction(self.n, [a + b for a, b in zip(self.values, other.values)])
        return SetFunction(self.n, [a + Fraction(other) for a in self.values])

    def __eq__(self, other) -> bool:
        return isinstance(other, SetFunction) and self.n == other.n and self.values == other.values

    __hash__ = None

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.values)

    def to_json(self) -> dict:
        return {"n": self.n, "values": [fraction_payload(v) for v in self.values]}

    def integer_table(self) -> np.ndarray:
        """Values scaled by the common denominator, as an integer array (order-preserving)."""
        scale = lcm(*(v.denominator for v in self.values)) if self.values else 1
        ints = [int(v * scale) for v in self.values]
        if max((abs(x) for x in ints), default=0) < 2 ** 60:
            return np.array(ints, dtype=np.int64)
        return np.array(ints, dtype=object)

    def __repr__(self) -> str:
        return f"SetFunction(n={self.n})"


def _integral(r: SetFunction):
    for m, v in enumerate(r.values):
        if v.denominator != 1:
            raise NonIntegralSetFunction(f"r({mask_elements(m)}) = {v} is not an integer",
                                         {"S": mask_elements(m), "value": fraction_payload(v)})


def z_of_setfunction(r: SetFunction, p: Scalar, exact: bool = True) -> HomogeneousPolynomial:
    """
    Z_{p,r} as an exact homogeneous polynomial of degree n in n+1 variables.

    Exact mode needs integer values so that every p^-r(S) is rational. With
    `exact=False` non-integral r is allowed and each coefficient is the float
    power converted to a Fraction.

    Raises:
        NonIntegralSetFunction: exact mode with a non-integer value.
    """
    p = Fraction(p)
    if p <= 0:
        raise DescriptorError(f"p must be positive, got {p}")
    n = r.n
    pc = popcounts(n).tolist()
    bits = ((all_masks(n)[:, None] >> np.arange(n)) & 1).tolist()
    if exact:
        _integral(r)
        coeff = [p ** -int(v) for v in r.values]
    else:
        coeff = [Fraction.from_float(float(p) ** -float(v)) for v in r.values]
    terms = {(n - pc[m],) + tuple(bits[m]): coeff[m] for m in range(1 << n)}
    return HomogeneousPolynomial(n + 1, terms, n)


def limit_extraction(r: SetFunction, exponents: Sequence[int]) -> Polynomial:
    """
    lim_{p->0} of Z_{p,r}(1, p^e_1 w_1, .., p^e_n w_n), as exact lowest-order terms in p.

    Every subset contributes one monomial with coefficient 1, so the limit is the
    sum of w^S over the subsets minimizing sum_{i in S} e_i - r(S).
    """
    if len(exponents) != r.n or any(isinstance(e, bool) or int(e) != e for e in exponents):
        raise DescriptorError("need one integer scaling exponent per element", {"exponents": list(exponents)})
    _integral(r)
    n = r.n
    bits = ((all_masks(n)[:, None] >> np.arange(n)) & 1).tolist()
    Z = ParametricPolynomial(1, n, {((-int(v),), tuple(bits[m])): 1 for m, v in enumerate(r.values)})
    return Z.scale_variables(0, [int(e) for e in exponents]).lowest_terms([0])


def probe_ln(r: SetFunction, grid: Optional[Sequence[Scalar]] = None) -> ProbeReport:
    """
    Exact Lorentzian test of Z_{p,r} at every p of a grid in (0, 1].

    Any failure proves r is not in L_n. Passing every grid point is evidence of
    membership only.
    """
    grid = settings.probe.grid_fractions() if grid is None else [Fraction(p) for p in grid]
    if not grid:
        raise DescriptorError("the probe grid is empty")
    for p in grid:
        if not 0 < p <= 1:
            raise DescriptorError(f"grid point {p} is outside (0, 1]", {"p": fraction_payload(p)})
    points: List[ProbePoint] = []
    failing = None
    for p in grid:
        verdict = is_lorentzian(z_of_setfunction(r, p))
        points.append(ProbePoint(p=Rational(**fraction_payload(p)), verdict=verdict))
        if not verdict and failing is None:
            failing = p
        status("probe", f"p={p}: {'Lorentzian' if verdict else 'not Lorentzian (' + verdict.clause + ')'}")
    return ProbeReport(
        outcome="not_in_Ln" if failing is not None else "consistent_with_membership",
        evidence_only=failing is None,
        failing_p=Rational(**fraction_payload(failing)) if failing is not None else None,
        points=points,
    )


def _pair_witness(best, cand):
    return cand if best is None or cand[0] < best[0] else best


def is_submodular(r: SetFunction) -> Verdict:
    """
    r(S1 | S2) + r(S1 & S2) <= r(S1) + r(S2).

    All pairs are scanned up to `enumeration.exhaustive_pairs_max_n`, the
    equivalent local form beyond.
    """
    t = r.integer_table()
    masks = all_masks(r.n)
    if r.n <= settings.enumeration.exhaustive_pairs_max_n:
        A, B = masks[:, None], masks[None, :]
        rows, cols = np.nonzero(t[A | B] + t[A & B] > t[A] + t[B])
        if len(rows):
            S1, S2 = min(zip(rows.tolist(), cols.tolist()), key=lambda ab: (subset_key(ab[0]), subset_key(ab[1])))
            return Verdict.no("submodularity", S1=mask_elements(S1), S2=mask_elements(S2))
        return Verdict.yes()
    verdict = _local_exchange(r, t)
    if not verdict:
        S, i, j = verdict.witness["S"], verdict.witness["i"], verdict.witness["j"]
        return Verdict.no("submodularity", S1=sorted(S + [i]), S2=sorted(S + [j]))
    return Verdict.yes()


def _local_exchange(r: SetFunction, t: np.ndarray) -> Verdict:
    masks = all_masks(r.n)
    best = None
    for i in range(r.n):
        for j in range(i + 1, r.n):
            bi, bj = 1 << i, 1 << j
            free = (masks & (bi | bj)) == 0
            viol = np.flatnonzero(free & (t[masks | bi | bj] + t > t[masks | bi] + t[masks | bj]))
            if len(viol):
                S = minimal_mask(viol)
                best = _pair_witness(best, ((subset_key(S), i, j), (S, i, j)))
    if best is not None:
        S, i, j = best[1]
        return Verdict.no("local_exchange", S=mask_elements(S), i=i + 1, j=j + 1)
    return Verdict.yes()


def is_mnat_concave(r: SetFunction) -> Verdict:
    """
    M-natural-concavity through local exchange.

    (local_exchange) r(S+i+j) + r(S) <= r(S+i) + r(S+j) for distinct i, j outside S.
    (three_way_max) for distinct i, j, k outside S, the largest of
        r(S+j+k) + r(S+i), r(S+i+k) + r(S+j), r(S+i+j) + r(S+k)
    is attained at least twice.

    Subsets S that already contain one of the indices make both conditions
    hold trivially given the first, so only S disjoint from them are scanned.
    """
    t = r.integer_table()
    verdict = _local_exchange(r, t)
    if not verdict:
        return verdict

    masks = all_masks(r.n)
    best = None
    for i in range(r.n):
        for j in range(i + 1, r.n):
            for k in range(j + 1, r.n):
                bi, bj, bk = 1 << i, 1 << j, 1 << k
                free = (masks & (bi | bj | bk)) == 0
                a = t[masks | bj | bk] + t[masks | bi]
                b = t[masks | bi | bk] + t[masks | bj]
                c = t[masks | bi | bj] + t[masks | bk]
                top = np.maximum(np.maximum(a, b), c)
                ties = (a == top).astype(np.int8) + (b == top).astype(np.int8) + (c == top).astype(np.int8)
                viol = np.flatnonzero(free & (ties < 2))
                if len(viol):
                    S = minimal_mask(viol)
                    best = _pair_witness(best, ((subset_key(S), i, j, k), (S, i, j, k)))
    if best is not None:
        S, i, j, k = best[1]
        return Verdict.no("three_way_max", S=mask_elements(S), i=i + 1, j=j + 1, k=k + 1)
    return Verdict.yes()


def mnat_consistency(r: SetFunction, grid: Optional[Sequence[Scalar]] = None) -> ConsistencyReport:
    """
    Functions in L_n are M-natural-concave, so a clean grid probe together with
    a failed M-natural-concavity check is flagged as a contradiction. A failed
    probe places no constraint; the converse is never asserted.
    """
    probe = probe_ln(r, grid)
    mnat = is_mnat_concave(r)
    contradiction = probe.outcome == "consistent_with_membership" and not mnat.ok
    return ConsistencyReport(probe=probe, mnat_concave=mnat, contradiction=contradiction)
