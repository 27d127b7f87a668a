"""
Lorentzian Certification

A homogeneous polynomial h of degree d >= 2 is Lorentzian exactly when
(a) its coefficients are nonnegative, (b) its support is M-convex, and (c) every
(d-2)-fold partial derivative is a quadratic form with at most one positive
eigenvalue. This module decides all three exactly over the rationals.

Positive eigenvalues of a symmetric rational matrix are counted with Descartes'
rule on the characteristic polynomial (computed exactly by sympy), which is exact
because the polynomial is real-rooted.

Also here: ultra-log-concavity of sequences, linear substitution, and a
floating-point probe of log-concavity on the positive orthant.
"""

from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .config import settings
from .errors import DescriptorError
from .models import Verdict
from .polynomial import HomogeneousPolynomial, Polynomial, as_homogeneous
from .utils import fraction_payload, status

Scalar = Union[int, Fraction]


def count_sign_changes(values: Sequence) -> int:
    """Count sign changes in a sequence, ignoring zeros."""
    nonzero = [v for v in values if v != 0]
    return sum(1 for a, b in zip(nonzero, nonzero[1:]) if (a > 0) != (b > 0))


def _check_symmetric(Q: Sequence[Sequence[Scalar]]) -> List[List[Fraction]]:
    Q = [[Fraction(x) for x in row] for row in Q]
    m = len(Q)
    if any(len(row) != m for row in Q):
        raise DescriptorError("matrix is not square")
    for i in range(m):
        for j in range(i + 1, m):
            if Q[i][j] != Q[j][i]:
                raise DescriptorError(f"matrix is not symmetric at ({i}, {j})", {"i": i, "j": j})
    return Q


def characteristic_polynomial(Q: Sequence[Sequence[Scalar]]) -> List[Fraction]:
    """Coefficients of det(tI - Q), leading coefficient first."""
    Q = _check_symmetric(Q)
    m = len(Q)
    if m == 0:
        return [Fraction(1)]
    dm = DomainMatrix([[QQ(x.numerator, x.denominator) for x in row] for row in Q], (m, m), QQ)
    return [Fraction(int(c.numerator), int(c.denominator)) for c in dm.charpoly()]


def positive_eigenvalue_count(Q: Sequence[Sequence[Scalar]]) -> int:
    """
    Exact number of positive eigenvalues of a symmetric rational matrix.

    Trailing zero coefficients of the characteristic polynomial (the zero
    eigenvalues) are stripped first; the sign changes of what remains count the
    positive roots.
    """
    coeffs = characteristic_polynomial(Q)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return count_sign_changes(coeffs)


def float_positive_eigenvalue_count(Q: Sequence[Sequence[Scalar]], tolerance: float = 1e-9) -> int:
    """Floating-point oracle: eigenvalues above `tolerance` times the spectral scale."""
    A = np.array([[float(x) for x in row] for row in Q], dtype=np.float64)
    if A.size == 0:
        return 0
    eig = np.linalg.eigvalsh(A)
    scale = max(1.0, float(np.max(np.abs(eig))))
    return int(np.sum(eig > tolerance * scale))


def is_m_convex(support: Sequence[Sequence[int]]) -> Verdict:
    """
    Exhaustive exchange check.

    For all alpha, beta in J and every coordinate i with alpha_i > beta_i there
    must be j with alpha_j < beta_j, alpha - e_i + e_j in J and beta - e_j + e_i
    in J. Pairs are scanned in lexicographic order; the witness is the first
    failing (alpha, beta, i), with i a 0-based coordinate (variable index).
    """
    J = sorted({tuple(int(e) for e in a) for a in support})
    if len({sum(a) for a in J}) > 1:
        return Verdict.no("degree", degrees=sorted({sum(a) for a in J}))
    members = set(J)
    for alpha in J:
        for beta in J:
            for i in range(len(alpha)):
                if alpha[i] <= beta[i]:
                    continue
                found = False
                for j in range(len(alpha)):
                    if alpha[j] >= beta[j]:
                        continue
                    a2 = list(alpha)
                    a2[i] -= 1
                    a2[j] += 1
                    b2 = list(beta)
                    b2[j] -= 1
                    b2[i] += 1
                    if tuple(a2) in members and tuple(b2) in members:
                        found = True
                        break
                if not found:
                    return Verdict.no("m_convexity", alpha=list(alpha), beta=list(beta), i=i)
    return Verdict.yes()


def is_lorentzian(h: Polynomial) -> Verdict:
    """
    Exact Lorentzian test of a homogeneous polynomial.

    Degree 0 and 1 polynomials are Lorentzian iff their coefficients are
    nonnegative. The Hessian clause scans derivative multisets in lexicographic
    order, so the witness is the least failing multiset.

    Raises:
        NotHomogeneousError: h is not homogeneous.
    """
    h = as_homogeneous(h)
    negative = sorted(e for e, c in h.terms.items() if c < 0)
    if negative:
        return Verdict.no("nonnegativity", exps=list(negative[0]), coefficient=fraction_payload(h.terms[negative[0]]))
    d = h.total_degree
    if d <= 1 or h.is_zero():
        return Verdict.yes()

    verdict = is_m_convex(h.support())
    if not verdict:
        return verdict

    partials: Dict[Tuple[int, ...], HomogeneousPolynomial] = {(): h}

    def partial(multiset: Tuple[int, ...]) -> HomogeneousPolynomial:
        if multiset not in partials:
            partials[multiset] = partial(multiset[:-1]).derivative(multiset[-1])
        return partials[multiset]

    counts: Dict[frozenset, int] = {}
    checked = 0
    for multiset in combinations_with_replacement(range(h.nvars), d - 2):
        quad = partial(multiset)
        if quad.is_zero():
            continue
        key = frozenset(quad.terms.items())
        if key not in counts:
            counts[key] = positive_eigenvalue_count(quad.quadratic_form())
            checked += 1
        if counts[key] > 1:
            return Verdict.no("hessian", multiset=list(multiset), positive_eigenvalues=counts[key])
    status("lorentzian", f"degree {d} in {h.nvars} variables: {checked} distinct quadratic forms certified")
    return Verdict.yes()


def is_ultra_log_concave(sequence: Sequence[Scalar]) -> Verdict:
    """
    No internal zeros and (a_k/C(d,k))^2 >= (a_{k-1}/C(d,k-1)) (a_{k+1}/C(d,k+1)) for 0 < k < d.
    """
    a = [Fraction(x) for x in sequence]
    for k, v in enumerate(a):
        if v < 0:
            return Verdict.no("nonnegativity", k=k)
    support = [k for k, v in enumerate(a) if v != 0]
    if support:
        for k in range(support[0], support[-1] + 1):
            if a[k] == 0:
                return Verdict.no("internal_zero", k=k)
    d = len(a) - 1
    norm = [v / comb(d, k) for k, v in enumerate(a)]
    for k in range(1, d):
        if norm[k] ** 2 < norm[k - 1] * norm[k + 1]:
            return Verdict.no("log_concavity", k=k)
    return Verdict.yes()


def substitute_linear(h: Polynomial, A: Sequence[Sequence[Scalar]]) -> HomogeneousPolynomial:
    """
    h(A v): variable i of h becomes sum_j A[i][j] v_j.

    Args:
        h: homogeneous polynomial in n variables.
        A: n x m matrix of nonnegative rationals; m is the new variable count.
    """
    h = as_homogeneous(h)
    rows = [[Fraction(x) for x in row] for row in A]
    if len(rows) != h.nvars:
        raise DescriptorError(f"A has {len(rows)} rows, h has {h.nvars} variables")
    m = len(rows[0]) if rows else 0
    if any(len(row) != m for row in rows):
        raise DescriptorError("A is not rectangular")
    if any(x < 0 for row in rows for x in row):
        raise DescriptorError("A must have nonnegative entries")
    forms = [Polynomial.linear_form(row) for row in rows]
    return HomogeneousPolynomial(m, h.substitute(forms).terms, h.total_degree)


def _log_hessian(E: np.ndarray, c: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Hessian of log h at x > 0 for h = sum_t c_t x^E_t."""
    mono = c * np.prod(x[None, :] ** E, axis=1)
    value = mono.sum()
    grad = (mono[:, None] * E).sum(axis=0) / x
    second = np.einsum('t,ti,tj->ij', mono, E, E) - np.diag((mono[:, None] * E).sum(axis=0))
    hess = second / np.outer(x, x)
    return hess / value - np.outer(grad, grad) / value ** 2


def sampled_log_concavity(h: Polynomial, trials: Optional[int] = None, tolerance: Optional[float] = None,
                          seed: Optional[int] = None, points: Optional[Sequence[Sequence[float]]] = None,
                          low: Optional[float] = None, high: Optional[float] = None) -> Verdict:
    """
    Floating-point probe: is the Hessian of log h negative semidefinite at sample points?

    Points are drawn log-uniformly from [low, high]^n unless given explicitly.
    A point fails when the largest eigenvalue of the log-Hessian exceeds
    `tolerance` times its Frobenius norm. Evidence only; `is_lorentzian` is the
    certification path.
    """
    probe = settings.probe
    trials = probe.samples if trials is None else trials
    tolerance = probe.tolerance if tolerance is None else tolerance
    low = probe.low if low is None else low
    high = probe.high if high is None else high
    seed = settings.seed if seed is None else seed

    if h.is_zero():
        raise DescriptorError("the log-concavity probe needs a nonzero polynomial")
    if any(c < 0 for c in h.terms.values()):
        raise DescriptorError("the log-concavity probe needs nonnegative coefficients")

    E, c = h.to_arrays()
    if points is None:
        rng = np.random.default_rng(seed)
        pts = np.exp(rng.uniform(np.log(low), np.log(high), size=(trials, h.nvars)))
    else:
        pts = np.asarray(points, dtype=np.float64).reshape(-1, h.nvars)

    for k, x in enumerate(pts):
        L = _log_hessian(E, c, x)
        top = float(np.linalg.eigvalsh(L)[-1]) if h.nvars else 0.0
        scale = float(np.linalg.norm(L))
        if top > tolerance * scale and top > 0:
            return Verdict.no("log_hessian", point=[float(v) for v in x], max_eigenvalue=top, sample=k)
    return Verdict.yes()
