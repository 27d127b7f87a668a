"""Tutte-type polynomials of matroids, quotients, flags and morphisms."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matmor.errors import DescriptorError, FlagValidationError, NotAQuotient
from matmor.fixtures import graph_hom
from matmor.flag import flag_contract, flag_delete, truncation_chain, validate_flag
from matmor.generators import make_rng, random_flag, random_fraction, random_matroid, random_morphism, \
    random_quotient_pair
from matmor.lorentzian import is_lorentzian, is_m_convex, is_ultra_log_concave, sampled_log_concavity, substitute_linear
from matmor.matroid import UniformMatroid, contract, delete
from matmor.morphism import b_vector, identity_morphism, quotient_basis_masks
from matmor.polynomial import Polynomial
from matmor.tutte import (basis_derivative_check, basis_generating, basis_limit, homogeneous_tutte,
                          independent_limit, independent_set_polynomial, lasvergnas_tutte, lemma46_check,
                          morphism_tutte, multivariate_tutte, pairing_polynomial, quotient_multivariate_tutte,
                          spanning_limit, spanning_set_polynomial, tutte_polynomial)

seeds = st.integers(min_value=0, max_value=2 ** 32 - 1)
PARAMS = [Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(1), Fraction(3, 2)]


def _param(rng) -> Fraction:
    return PARAMS[int(rng.integers(len(PARAMS)))]


def _homogenized_sets(n: int, masks) -> Polynomial:
    terms = {}
    for m in masks:
        bits = tuple((int(m) >> i) & 1 for i in range(n))
        terms[(n - sum(bits),) + bits] = 1
    return Polynomial(n + 1, terms)


def test_tutte_of_u12():
    assert tutte_polynomial(UniformMatroid(2, 1)) == Polynomial(2, {(1, 0): 1, (0, 1): 1})


def test_tutte_of_u24_counts_bases():
    T = tutte_polynomial(UniformMatroid(4, 2))
    assert T.evaluate((1, 1)) == 6
    assert T.evaluate((2, 2)) == 16


def test_multivariate_tutte_of_u11():
    assert multivariate_tutte(UniformMatroid(1, 1), 2) == Polynomial(1, {(0,): 1, (1,): Fraction(1, 2)})


def test_multivariate_tutte_rejects_zero_q():
    with pytest.raises(DescriptorError):
        multivariate_tutte(UniformMatroid(2, 1), 0)


def test_lasvergnas_needs_a_quotient():
    with pytest.raises(NotAQuotient):
        lasvergnas_tutte(UniformMatroid(3, 1), UniformMatroid(3, 2))


def test_lasvergnas_of_coloop_onto_loop():
    # U_{1,1} ->> U_{1,0}: the empty set contributes z, the coloop contributes 1
    T = lasvergnas_tutte(UniformMatroid(1, 1), UniformMatroid(1, 0))
    assert T == Polynomial(3, {(0, 0, 1): 1, (0, 0, 0): 1})
    for z in (0, 1, Fraction(5, 2)):
        assert T.evaluate_at(3, Fraction(1, 2), z) == z + 1


def test_invalid_flag_reports_index():
    with pytest.raises(FlagValidationError) as exc:
        validate_flag([UniformMatroid(3, 2), UniformMatroid(3, 1)])
    assert exc.value.index == 1
    assert exc.value.witness["index"] == 1


def test_truncation_chain_is_a_flag():
    flag = truncation_chain(UniformMatroid(4, 3), [2, 1, 3])
    assert [M.full_rank for M in flag] == [1, 2, 3]


def test_homogeneous_tutte_needs_one_parameter_per_constituent():
    flag = validate_flag([UniformMatroid(3, 1), UniformMatroid(3, 2)])
    with pytest.raises(DescriptorError):
        homogeneous_tutte(flag, [Fraction(1, 2)])


def test_pairing_polynomial_of_parallel_pair():
    flag = validate_flag([UniformMatroid(2, 1)])
    assert pairing_polynomial(flag, [Fraction(1, 3)]) == Polynomial(2, {(1, 1): Fraction(1, 3)})


def test_pairing_inequality_rejects_q_above_one():
    flag = validate_flag([UniformMatroid(3, 1)])
    with pytest.raises(DescriptorError):
        lemma46_check(flag, [2], [1, 1, 1])


def test_pairing_inequality_is_tight_for_all_parallel():
    # U_{1,2} with q = 1: (1/2)(1/2)(w1 + w2)^2 >= w1 w2, equality at w1 = w2
    flag = validate_flag([UniformMatroid(2, 1)])
    assert lemma46_check(flag, [1], [1, 1])


@pytest.mark.property_based
@given(seeds)
@settings(max_examples=40, deadline=None)
def test_multivariate_deletion_contraction(seed):
    rng = make_rng(seed)
    M = random_matroid(rng, int(rng.integers(1, 6)))
    e = int(rng.integers(1, M.n + 1))
    q = _param(rng)
    with_e = Polynomial.variable(M.n, e - 1) * (q ** -M.rank([e]))
    expected = (multivariate_tutte(delete(M, e), q).insert_variable(e - 1)
                + with_e * multivariate_tutte(contract(M, e), q).insert_variable(e - 1))
    assert multivariate_tutte(M, q) == expected


@pytest.mark.property_based
@given(seeds)
@settings(max_examples=40, deadline=None)
def test_usual_tutte_from_multivariate(seed):
    rng = make_rng(seed)
    M = random_matroid(rng, int(rng.integers(1, 6)))
    x, y = Fraction(int(rng.integers(3, 7)), 2), Fraction(int(rng.integers(4, 10)), 3)
    q = (x - 1) * (y - 1)
    value = (x - 1) ** M.full_rank * multivariate_tutte(M, q).evaluate([y - 1] * M.n)
    assert tutte_polynomial(M).evaluate((x, y)) == value


@pytest.mark.property_based
@given(seeds)
@settings(max_examples=30, deadline=None)
def test_lasvergnas_of_trivial_quotient_is_tutte(seed):
    rng = make_rng(seed)
    M = random_matroid(rng, int(rng.integers(1, 6)))
    T = lasvergnas_tutte(M, M)
    assert all(e[2] == 0 for e in T.terms)
    assert T.dehomogenize(2) == tutte_polynomial(M)


@pytest.mark.property_based
@given(seeds)
@settings(max_examples=30, deadline=None)
def test_lasvergnas_counts_subsets(seed):
    rng = make_rng(seed)
    M, N = random_quotient_pair(rng, int(rng.integers(1, 6)))
    assert lasvergnas_tutte(M, N).evaluate_at(2, 2, 1) == 2 ** M.n


@pytest.mark.property_based
@given(seeds)
@settings(max_examples=40, deadline=None)
def test_lasvergnas_from_quotient_multivariate(seed):
    rng = make_rng(seed)
    M, N = random_quotient_pair(rng, int(rng.integers(1, 6)))
    x = Fraction(int(rng.integers(-3, 7)), 2)
    if x == 1:
        x = Fraction(-1, 3)
    y = Fraction(int(rng.integers(4, 10)), 3) * (1 if rng.random() < 0.5 else -1)
    z = Fraction(int(rng.integers(1, 9)), 4) * (1 if rng.random() < 0.5 else -1)
    p, q = z * (y - 1), (x - 1) / z
    scale = (x - 1) ** -N.full_rank * z ** (N.full_rank - M.full_rank)
    expected = quotient_multivariate_tutte(M, N, p, q).evaluate([y - 1] * M.n)
    assert scale * lasvergnas_tutte(M, N).evaluate_at(x, y, z) == expected


@pytest.mark.property_based
@given(seeds)
@settings(max_examples=30, deadline=None)
def test_quotient_tutte_is_identity_morphism_tutte(seed):
    rng = make_rng(seed)
    M, N = random_quotient_pair(rng, int(rng.integers(1, 6)))
    p, q = _param(rng), _param(rng)
    assert morphism_tutte(identity_morphism(M, N), p, q) == quotient_multivariate_tutte(M, N, p, q).homogenize(M.n)


@pytest.mark.property_based
@given(seeds)
@settings(max_examples=30, deadline=None)
def test_morphism_tutte_is_flag_tutte_of_induced_quotient(seed):
    rng = make_rng(seed)
    f = random_morphism(rng, int(rng.integers(1, 6)), int(rng.integers(1, 5)))
    p, q = _param(rng), _param(rng)
    flag = validate_flag([f.induced(), f.source])
    assert morphism_tutte(f, p, q) == homogeneous_tutte(flag, [q, p])


@pytest.mark.property_based
@given(seeds)
@settings(max_examples=30, deadline=None)
def test_flag_deletion_contraction(seed):
    rng = make_rng(seed)
    flag = random_flag(rng, int(rng.integers(1, 6)), int(rng.integers(1, 4)))
    i = int(rng.integers(1, flag.n + 1))
    q = [_param(rng) for _ in flag]
    factor = Fraction(1)
    for v, M in zip(q, flag):
        factor *= v ** -M.rank([i])
    n = flag.n
    D = homogeneous_tutte(flag_delete(flag, i, cross_check=True), q).insert_variable(i)
    C = homogeneous_tutte(flag_contract(flag, i, cross_check=True), q).insert_variable(i)
    expected = Polynomial.variable(n + 1, 0) * D + Polynomial.variable(n + 1, i) * factor * C
    assert homogeneous_tutte(flag, q) == expected


@pytest.mark.property_based
@given(seeds)
@settings(max_examples=30, deadline=None)
def test_limits_in_q(seed):
    rng = make_rng(seed)
    M = random_matroid(rng, int(rng.integers(1, 6)))
    assert spanning_limit(M) == spanning_set_polynomial(M)
    assert independent_limit(M) == independent_set_polynomial(M)


@pytest.mark.property_based
@given(seeds)
@settings(max_examples=30, deadline=None)
def test_basis_limit_is_quotient_basis_polynomial(seed):
    rng = make_rng(seed)
    f = random_morphism(rng, int(rng.integers(1, 6)), int(rng.integers(1, 5)))
    expected = _homogenized_sets(f.n, quotient_basis_masks(f.source, f.induced()))
    assert basis_limit(f) == expected
    assert basis_limit(f, order="joint") == expected
    if f.image_rank_table()[-1] == f.target.full_rank:
        assert basis_limit(f) == basis_generating(f)


@pytest.mark.property_based
@given(seeds)
@settings(max_examples=30, deadline=None)
def test_basis_derivative(seed):
    rng = make_rng(seed)
    assert basis_derivative_check(random_matroid(rng, int(rng.integers(1, 6))))


@pytest.mark.property_based
@given(seeds)
@settings(max_examples=25, deadline=None)
def test_morphism_basis_polynomials_are_lorentzian(seed):
    rng = make_rng(seed)
    f = random_morphism(rng, int(rng.integers(1, 6)), int(rng.integers(1, 5)))
    assert is_lorentzian(basis_generating(f))


@pytest.mark.property_based
@given(seeds)
@settings(max_examples=25, deadline=None)
def test_flag_tutte_is_lorentzian_for_small_parameters(seed):
    rng = make_rng(seed)
    flag = random_flag(rng, int(rng.integers(1, 5)), int(rng.integers(1, 3)))
    q = [PARAMS[int(rng.integers(5))] for _ in flag]
    assert is_lorentzian(homogeneous_tutte(flag, q))


@pytest.mark.property_based
@given(seeds)
@settings(max_examples=60, deadline=None)
def test_pairing_inequality(seed):
    rng = make_rng(seed)
    flag = random_flag(rng, int(rng.integers(2, 7)), int(rng.integers(1, 4)))
    q = [random_fraction(rng) for _ in flag]
    w = [random_fraction(rng, Fraction(0), Fraction(4)) for _ in range(flag.n)]
    assert lemma46_check(flag, q, w)


def _product_of_sums(n: int) -> Polynomial:
    h = Polynomial.constant(n + 1, 1)
    for i in range(1, n + 1):
        h = h * (Polynomial.variable(n + 1, 0) + Polynomial.variable(n + 1, i))
    return h


def _shift(i: int, removed: int) -> int:
    return i if i < removed else i - 1


def _collapse(n: int):
    """w_0 -> y and every w_i -> x."""
    return [[0, 1]] + [[1, 0]] * n


def test_graph_hom_basis_polynomial_is_log_concave():
    f = graph_hom()
    h = basis_generating(f)
    assert sampled_log_concavity(h, trials=50, seed=11)
    assert sampled_log_concavity(h, points=[[1.0] * (f.n + 1), [0.5] + [2.0] * f.n])


@pytest.mark.property_based
@given(seeds)
@settings(max_examples=30, deadline=None)
def test_flag_tutte_derivative_is_contraction(seed):
    rng = make_rng(seed)
    flag = random_flag(rng, int(rng.integers(1, 6)), int(rng.integers(1, 4)))
    i = int(rng.integers(1, flag.n + 1))
    q = [_param(rng) for _ in flag]
    factor = Fraction(1)
    for v, M in zip(q, flag):
        factor *= v ** -M.rank([i])
    C = homogeneous_tutte(flag_contract(flag, i, cross_check=True), q).insert_variable(i)
    assert homogeneous_tutte(flag, q).derivative(i) == C * factor


@pytest.mark.property_based
@given(seeds)
@settings(max_examples=30, deadline=None)
def test_flag_deletion_and_contraction_commute(seed):
    rng = make_rng(seed)
    flag = random_flag(rng, int(rng.integers(2, 6)), int(rng.integers(1, 4)))
    i, j = (int(k) + 1 for k in rng.permutation(flag.n)[:2])
    left = flag_contract(flag_delete(flag, i), _shift(j, i))
    right = flag_delete(flag_contract(flag, j), _shift(i, j))
    assert left == right
    assert flag_delete(flag_delete(flag, i), _shift(j, i)) == flag_delete(flag_delete(flag, j), _shift(i, j))


@pytest.mark.property_based
@given(seeds)
@settings(max_examples=30, deadline=None)
def test_flag_tutte_at_q_one_is_product_of_sums(seed):
    rng = make_rng(seed)
    flag = random_flag(rng, int(rng.integers(1, 6)), int(rng.integers(1, 4)))
    assert homogeneous_tutte(flag, [1] * len(flag)) == _product_of_sums(flag.n)


@pytest.mark.property_based
@given(seeds)
@settings(max_examples=30, deadline=None)
def test_flag_tutte_has_positive_coefficients_and_m_convex_support(seed):
    rng = make_rng(seed)
    flag = random_flag(rng, int(rng.integers(1, 6)), int(rng.integers(1, 4)))
    h = homogeneous_tutte(flag, [_param(rng) for _ in flag])
    assert len(h.terms) == 2 ** flag.n
    assert all(c > 0 for c in h.terms.values())
    assert is_m_convex(h.support())


@pytest.mark.property_based
@given(seeds)
@settings(max_examples=20, deadline=None)
def test_lorentzian_closed_under_derivatives_and_products(seed):
    rng = make_rng(seed)
    n = int(rng.integers(1, 4))
    flag = random_flag(rng, n, int(rng.integers(1, 3)))
    h = homogeneous_tutte(flag, [PARAMS[int(rng.integers(5))] for _ in flag])
    assert is_lorentzian(h)
    k = int(rng.integers(0, n + 1))
    assert is_lorentzian(h.derivative(k))
    g = basis_generating(random_morphism(rng, n, int(rng.integers(1, 4))))
    assert is_lorentzian(h * g)


@pytest.mark.property_based
@given(seeds)
@settings(max_examples=60, deadline=None)
def test_bivariate_lorentzian_iff_ultra_log_concave(seed):
    rng = make_rng(seed)
    d = int(rng.integers(0, 6))
    a = [int(v) for v in rng.integers(0, 5, size=d + 1)]
    if not any(a):
        a[int(rng.integers(d + 1))] = 1
    h = Polynomial(2, {(k, d - k): c for k, c in enumerate(a)})
    assert bool(is_lorentzian(h)) == bool(is_ultra_log_concave(a))


@pytest.mark.property_based
@given(seeds)
@settings(max_examples=30, deadline=None)
def test_collapsed_basis_polynomial_is_b_vector(seed):
    rng = make_rng(seed)
    f = random_morphism(rng, int(rng.integers(1, 7)), int(rng.integers(1, 5)))
    g = substitute_linear(basis_generating(f), _collapse(f.n))
    counts = b_vector(f).counts
    assert g.nvars == 2
    assert all(g.coefficient((k, f.n - k)) == counts[k] for k in range(f.n + 1))
    assert sum(g.terms.values()) == sum(counts)
    assert is_ultra_log_concave(counts)
    assert is_lorentzian(g)
