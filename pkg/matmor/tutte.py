"""
Tutte-type Polynomials

Subset-expansion constructions over all 2^n subsets of the ground set:

- multivariate_tutte:          sum_S q^-rk(S) w^S
- tutte_polynomial:            the usual bivariate T_M(x, y)
- lasvergnas_tutte:            trivariate T_{M->>N}(x, y, z) of a quotient
- quotient_multivariate_tutte: sum_S p^-rk_M(S) q^-rk_N(S) w^S
- homogeneous_tutte:           sum_S prod_k q_k^-rk_k(S) w_0^(n-|S|) w^S of a flag
- morphism_tutte:              the homogeneous polynomial of a morphism
- basis_generating:            sum over bases of a morphism
- pairing_polynomial:          sum_{i<j} prod_k q_k^d_k(i,j) w_i w_j

Limits in the parameters go through `ParametricPolynomial.lowest_terms`.
"""

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Dict, List, Sequence, Tuple, Union

import numpy as np

from .errors import DescriptorError, NotAQuotient
from .flag import FlagMatroid
from .matroid import Matroid, bases, parallel_indicator
from .morphism import MatroidMorphism, identity_morphism, is_quotient, morphism_basis_masks
from .polynomial import HomogeneousPolynomial, ParametricPolynomial, Polynomial, TrivariatePolynomial
from .utils import all_masks, check_bound, popcounts, status, to_mask

Scalar = Union[int, Fraction]


@lru_cache(maxsize=8)
def _subset_exponents(n: int) -> Tuple[Tuple[int, ...], ...]:
    """Indicator vector of every subset, indexed by bitmask."""
    check_bound(n)
    bits = (all_masks(n)[:, None] >> np.arange(n)) & 1
    return tuple(tuple(row) for row in bits.tolist())


def _homogenized_exponents(n: int) -> List[Tuple[int, ...]]:
    pc = popcounts(n).tolist()
    return [(n - pc[m],) + e for m, e in enumerate(_subset_exponents(n))]


def _nonzero(name: str, value: Scalar) -> Fraction:
    value = Fraction(value)
    if value == 0:
        raise DescriptorError(f"{name} must be nonzero")
    return value


def _powers(base: Fraction, top: int) -> List[Fraction]:
    """base^-r for r = 0..top."""
    return [base ** -r for r in range(top + 1)]


# Matroids


def multivariate_tutte(M: Matroid, q: Scalar) -> Polynomial:
    """Z_{q,M}(w_1..w_n) = sum_S q^-rk(S) prod_{i in S} w_i."""
    q = _nonzero("q", q)
    table = M.rank_table().tolist()
    powers = _powers(q, M.full_rank)
    exps = _subset_exponents(M.n)
    return Polynomial._raw(M.n, {exps[m]: powers[r] for m, r in enumerate(table)})


def multivariate_tutte_parametric(M: Matroid) -> ParametricPolynomial:
    """Z_{q,M} with q kept symbolic (one parameter)."""
    exps = _subset_exponents(M.n)
    return ParametricPolynomial(1, M.n, {((-r,), exps[m]): 1 for m, r in enumerate(M.rank_table().tolist())})


def spanning_limit(M: Matroid) -> Polynomial:
    """lim_{q->0} q^rk(E) Z_{q,M}(w)."""
    return multivariate_tutte_parametric(M).shift((M.full_rank,)).lowest_terms([0])


def independent_limit(M: Matroid) -> Polynomial:
    """lim_{q->0} Z_{q,M}(q w)."""
    return multivariate_tutte_parametric(M).scale_variables(0, [1] * M.n).lowest_terms([0])


def _indicator_polynomial(n: int, masks) -> Polynomial:
    exps = _subset_exponents(n)
    return Polynomial._raw(n, {exps[int(m)]: Fraction(1) for m in masks})


def spanning_set_polynomial(M: Matroid) -> Polynomial:
    return _indicator_polynomial(M.n, np.flatnonzero(M.rank_table() == M.full_rank))


def independent_set_polynomial(M: Matroid) -> Polynomial:
    return _indicator_polynomial(M.n, np.flatnonzero(M.rank_table() == popcounts(M.n)))


def _expand_shifted(counts: Dict[Tuple[int, ...], int], shifted: int) -> Dict[Tuple[int, ...], int]:
    """
    Expand sum count * prod_{k < shifted} (v_k - 1)^a_k * prod_{k >= shifted} v_k^a_k.

    `counts` maps exponent tuples (a_0, ...) to multiplicities.
    """
    out: Dict[Tuple[int, ...], int] = {}
    for exps, count in counts.items():
        partial = {(): count}
        for k, a in enumerate(exps):
            nxt = {}
            if k < shifted:
                choices = [(i, comb(a, i) * (-1) ** (a - i)) for i in range(a + 1)]
            else:
                choices = [(a, 1)]
            for head, c in partial.items():
                for i, b in choices:
                    key = head + (i,)
                    nxt[key] = nxt.get(key, 0) + c * b
            partial = nxt
        for key, c in partial.items():
            out[key] = out.get(key, 0) + c
    return {k: c for k, c in out.items() if c != 0}


def _aggregate(*columns: np.ndarray) -> Dict[Tuple[int, ...], int]:
    stacked = np.stack(columns, axis=1)
    keys, counts = np.unique(stacked, axis=0, return_counts=True)
    return {tuple(int(v) for v in k): int(c) for k, c in zip(keys, counts)}


def tutte_polynomial(M: Matroid) -> Polynomial:
    """T_M(x, y) = sum_S (x-1)^(rk E - rk S) (y-1)^(|S| - rk S), variables (x, y)."""
    t = M.rank_table().astype(np.int64)
    pc = popcounts(M.n).astype(np.int64)
    counts = _aggregate(M.full_rank - t, pc - t)
    return Polynomial(2, _expand_shifted(counts, 2))


def lasvergnas_tutte(M: Matroid, N: Matroid, validate: bool = True) -> TrivariatePolynomial:
    """
    Las Vergnas polynomial of the quotient M ->> N.

    T(x, y, z) = sum_S (x-1)^crk_N(S) (y-1)^(|S| - rk_M(S)) z^(crk_M(S) - crk_N(S)).

    Raises:
        NotAQuotient: when `validate` is set and N is not a quotient of M.
    """
    if validate:
        verdict = is_quotient(M, N)
        if not verdict:
            raise NotAQuotient("the Las Vergnas polynomial needs a quotient pair", verdict.model_dump())
    tM, tN = M.rank_table().astype(np.int64), N.rank_table().astype(np.int64)
    pc = popcounts(M.n).astype(np.int64)
    crk_M, crk_N = M.full_rank - tM, N.full_rank - tN
    counts = _aggregate(crk_N, pc - tM, crk_M - crk_N)
    status("tutte", f"Las Vergnas polynomial from {len(counts)} distinct rank profiles")
    return TrivariatePolynomial(_expand_shifted(counts, 2))


def quotient_multivariate_tutte(M: Matroid, N: Matroid, p: Scalar, q: Scalar) -> Polynomial:
    """sum_S p^-rk_M(S) q^-rk_N(S) prod_{i in S} w_i (no quotient check)."""
    p, q = _nonzero("p", p), _nonzero("q", q)
    tM, tN = M.rank_table().tolist(), N.rank_table().tolist()
    pM, qN = _powers(p, M.full_rank), _powers(q, N.full_rank)
    exps = _subset_exponents(M.n)
    return Polynomial._raw(M.n, {exps[m]: pM[a] * qN[b] for m, (a, b) in enumerate(zip(tM, tN))})


# Flags and morphisms


def homogeneous_tutte(flag: FlagMatroid, q: Sequence[Scalar]) -> HomogeneousPolynomial:
    """Z_{q,flag}(w_0..w_n) = sum_S prod_k q_k^-rk_{M_k}(S) w_0^(n-|S|) w^S."""
    if len(q) != len(flag):
        raise DescriptorError(f"need {len(flag)} parameters, got {len(q)}")
    qs = [_nonzero(f"q_{k + 1}", v) for k, v in enumerate(q)]
    tables = [M.rank_table().tolist() for M in flag]
    powers = [_powers(v, M.full_rank) for v, M in zip(qs, flag)]
    terms = {}
    for m, e in enumerate(_homogenized_exponents(flag.n)):
        c = Fraction(1)
        for t, pw in zip(tables, powers):
            c *= pw[t[m]]
        terms[e] = c
    return HomogeneousPolynomial(flag.n + 1, terms, flag.n)


def morphism_parametric(f: MatroidMorphism) -> ParametricPolynomial:
    """Z_{p,q,f} with parameters (p, q) kept symbolic."""
    tM = f.source.rank_table().tolist()
    tN = f.image_rank_table().tolist()
    exps = _homogenized_exponents(f.n)
    return ParametricPolynomial(2, f.n + 1, {((-tM[m], -tN[m]), e): 1 for m, e in enumerate(exps)})


def morphism_tutte(f: MatroidMorphism, p: Scalar, q: Scalar) -> HomogeneousPolynomial:
    """Z_{p,q,f}(w_0..w_n) = sum_S p^-rk_M(S) q^-rk_N(f(S)) w_0^(n-|S|) w^S."""
    p, q = _nonzero("p", p), _nonzero("q", q)
    tM = f.source.rank_table().tolist()
    tN = f.image_rank_table().tolist()
    pM, qN = _powers(p, f.source.full_rank), _powers(q, f.target.full_rank)
    exps = _homogenized_exponents(f.n)
    return HomogeneousPolynomial(f.n + 1, {e: pM[tM[m]] * qN[tN[m]] for m, e in enumerate(exps)}, f.n)


def basis_generating(f: MatroidMorphism, homogeneous: bool = True) -> Polynomial:
    """
    Basis generating polynomial of a morphism.

    Homogeneous: B_f = sum_{S in B(f)} w_0^(n-|S|) w^S in n+1 variables.
    Otherwise w_0 is set to 1.
    """
    exps = _subset_exponents(f.n)
    terms = {}
    for m in morphism_basis_masks(f).tolist():
        e = exps[m]
        terms[(f.n - sum(e),) + e if homogeneous else e] = 1
    if homogeneous:
        return HomogeneousPolynomial(f.n + 1, terms, f.n)
    return Polynomial(f.n, terms)


def basis_limit(f: MatroidMorphism, order: Union[str, Sequence[int]] = (1, 0)) -> Polynomial:
    """
    Lowest-order part of q^rk_N(f[n]) Z_{p,q,f}(w_0, p w_1, .., p w_n) as p, q -> 0.

    The default order takes q to 0 first and then p; "joint" sends both to 0
    together. Both give the basis polynomial of M ->> f^-1(N), which is B_f
    whenever f[n] spans N.
    """
    image_rank = int(f.image_rank_table()[-1])
    Z = morphism_parametric(f).shift((0, image_rank)).scale_variables(0, [0] + [1] * f.n)
    return Z.lowest_terms(order)


def matroid_basis_polynomial(M: Matroid) -> Polynomial:
    """sum over bases B of M of w^B, in variables w_0..w_n with w_0 absent."""
    exps = _subset_exponents(M.n)
    return Polynomial(M.n + 1, {(0,) + exps[to_mask(B, M.n)]: 1 for B in bases(M)})


def basis_derivative_check(M: Matroid) -> bool:
    """d^(n - rk M)/dw_0^(n - rk M) of B_{id_M} equals (n - rk M)! times the basis polynomial of M."""
    k = M.n - M.full_rank
    derived = basis_generating(identity_morphism(M, M)).partial([0] * k)
    return derived == matroid_basis_polynomial(M) * factorial(k)


# Pairing polynomial


def pairing_polynomial(flag: FlagMatroid, q: Sequence[Scalar]) -> Polynomial:
    """P(q, w) = sum_{i<j} prod_k q_k^d_k(i,j) w_i w_j, with d_k the parallel indicator of M_k."""
    n = flag.n
    if n < 2:
        raise DescriptorError("the pairing polynomial needs n >= 2")
    if len(q) != len(flag):
        raise DescriptorError(f"need {len(flag)} parameters, got {len(q)}")
    qs = [Fraction(v) for v in q]
    terms = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            c = Fraction(1)
            for v, M in zip(qs, flag):
                c *= v ** parallel_indicator(M, i, j)
            e = [0] * n
            e[i - 1] = e[j - 1] = 1
            terms[tuple(e)] = c
    return Polynomial(n, terms)


def lemma46_check(flag: FlagMatroid, q: Sequence[Scalar], w: Sequence[Scalar]) -> bool:
    """Exact check of (1/2)(1 - 1/n)(w_1 + .. + w_n)^2 >= P(q, w) for q in [0, 1]^l."""
    qs = [Fraction(v) for v in q]
    if any(not 0 <= v <= 1 for v in qs):
        raise DescriptorError("the pairing inequality needs every q_k in [0, 1]", {"q": [str(v) for v in qs]})
    n = flag.n
    w = [Fraction(v) for v in w]
    lhs = Fraction(1, 2) * (1 - Fraction(1, n)) * sum(w) ** 2
    return lhs >= pairing_polynomial(flag, qs).evaluate(w)
