"""Ring axioms, known identities and the six-term sum classifier."""

import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vanishlab.cyclotomic import (
    Cyclo,
    LemmaViolationError,
    SixSumVerdict,
    cyclotomic_polynomial,
    enumerate_six_sums,
    euler_phi,
    root_of_unity,
    six_sum_classifier,
    vanishing_sum_possible,
)

ORDERS = [1, 2, 3, 4, 5, 6, 8, 9, 12, 15, 16, 24]


def small_cyclo(order: int, span: int = 3) -> st.SearchStrategy:
    coeff = st.integers(min_value=-span, max_value=span)
    return st.lists(coeff, min_size=1, max_size=euler_phi(order)).map(
        lambda cs: Cyclo.from_poly(order, cs)
    )


any_cyclo = st.sampled_from(ORDERS).flatmap(small_cyclo)


# -- cyclotomic polynomials ----------------------------------------------


def test_phi_polynomials_spot_checks():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(8) == (1, 0, 0, 0, 1)
    assert cyclotomic_polynomial(9) == (1, 0, 0, 1, 0, 0, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


@pytest.mark.parametrize("n", ORDERS)
def test_phi_degree_is_euler_phi(n):
    assert len(cyclotomic_polynomial(n)) == euler_phi(n) + 1


def test_product_of_cyclotomics_is_x_n_minus_1():
    # Phi_d over d | 12 must multiply back to x^12 - 1
    prod = [1]
    for d in (1, 2, 3, 4, 6, 12):
        phi = cyclotomic_polynomial(d)
        out = [0] * (len(prod) + len(phi) - 1)
        for i, a in enumerate(prod):
            for j, b in enumerate(phi):
                out[i + j] += a * b
        prod = out
    assert prod == [-1] + [0] * 11 + [1]


# -- ring axioms ----------------------------------------------------------


@settings(max_examples=150, deadline=None)
@given(any_cyclo, any_cyclo, any_cyclo)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a + Cyclo.zero() == a
    assert a * Cyclo.one() == a
    assert (a - a).is_zero()


@settings(max_examples=100, deadline=None)
@given(any_cyclo, any_cyclo)
def test_conjugation_is_a_ring_involution(a, b):
    assert (a + b).conj() == a.conj() + b.conj()
    assert (a * b).conj() == a.conj() * b.conj()
    assert a.conj().conj() == a


@settings(max_examples=100, deadline=None)
@given(any_cyclo)
def test_complex_embedding_tracks_exact_zero(a):
    z = a.to_complex()
    if a.is_zero():
        assert abs(z) < 1e-9
    else:
        # the norm of a nonzero algebraic integer is >= 1, which bounds the
        # embedding away from zero for these coefficient sizes
        assert abs(z) > 1e-10


# -- known identities ----------------------------------------------------


def test_cube_root_identity():
    z3 = root_of_unity(3, 1)
    assert (Cyclo.one() + z3 + z3 * z3).is_zero()


def test_quarter_root_conjugate_cancels():
    i = root_of_unity(4, 1)
    assert (i + i.conj()).is_zero()


def test_eighth_root_squares_to_quarter_root():
    z8 = root_of_unity(8, 1)
    assert z8 * z8 == root_of_unity(4, 1)


def test_sum_of_primitive_eighth_roots_vanishes():
    total = Cyclo.zero()
    for k in (1, 3, 5, 7):
        total = total + root_of_unity(8, k)
    assert total.is_zero()


def test_root_orders_are_exact():
    assert root_of_unity(8, 2).multiplicative_order() == 4
    assert root_of_unity(12, 8).multiplicative_order() == 3
    assert root_of_unity(5, 0) == Cyclo.one()


@pytest.mark.parametrize("n", [2, 3, 4, 5, 8, 12])
def test_full_sum_of_nth_roots_vanishes(n):
    total = Cyclo.zero()
    for k in range(n):
        total = total + root_of_unity(n, k)
    assert total.is_zero()


# -- vanishing-sum feasibility -------------------------------------------


def brute_force_vanishing_sum_exists(n_terms: int, m: int) -> bool:
    roots = [root_of_unity(m, k) for k in range(m)]
    for combo in itertools.combinations_with_replacement(range(m), n_terms):
        total = Cyclo.zero()
        for k in combo:
            total = total + roots[k]
        if total.is_zero():
            return True
    return False


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6, 8, 9, 12])
def test_feasibility_matches_brute_force(m):
    # the prime-combination criterion is exact for these moduli
    for n_terms in range(1, 9):
        assert vanishing_sum_possible(n_terms, m) == brute_force_vanishing_sum_exists(
            n_terms, m
        ), (n_terms, m)


def test_feasibility_examples():
    assert not vanishing_sum_possible(1, 6)
    assert vanishing_sum_possible(2, 6)
    assert vanishing_sum_possible(5, 6)
    assert not vanishing_sum_possible(1, 5)
    assert vanishing_sum_possible(5, 5)
    assert not vanishing_sum_possible(3, 4)


# -- six-term sums of 2-power roots --------------------------------------


def classify_exponents(n, ae, be):
    big = 2**n
    eps = [root_of_unity(big, a) for a in ae]
    eta = [root_of_unity(big, b) for b in be]
    return six_sum_classifier(n, eps, eta)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_six_sum_exhaustive(n):
    # every admissible tuple; any misprediction raises LemmaViolationError
    big = 2**n
    seen = set()
    for ae, be in enumerate_six_sums(n):
        res = classify_exponents(n, ae, be)
        seen.add(res.verdict)
        total_zero = res.total.is_zero()
        if res.verdict in (
            SixSumVerdict.ZERO,
            SixSumVerdict.ZERO_PART2_SHAPE,
            SixSumVerdict.ZERO_PART3_SHAPE,
        ):
            assert total_zero
        else:
            assert not total_zero
        # cross-check against floating point
        approx = sum(root_of_unity(big, k).to_complex() for k in ae + be)
        assert (abs(approx) < 1e-7) == total_zero
    if n >= 3:
        assert SixSumVerdict.ZERO_PART3_SHAPE in seen


def test_six_sum_part1_all_real_signs():
    res = classify_exponents(3, (0, 4, 4), (0, 0, 0))
    assert res.verdict == SixSumVerdict.NONZERO_BY_PART1


def test_six_sum_part2_example():
    # 1 + i - i  and  1 - 1 - 1 sum to zero with the expected shape
    res = classify_exponents(2, (0, 1, 3), (0, 2, 2))
    assert res.verdict == SixSumVerdict.ZERO_PART2_SHAPE
    assert res.total.is_zero()


def test_six_sum_part3_delta_shape():
    # a zero sum with an eps of order 8 forces delta in {±zeta4, -1}
    found = False
    for ae, be in enumerate_six_sums(3):
        if max(8 // math.gcd(8, k) for k in ae) < 8:
            continue
        res = classify_exponents(3, ae, be)
        if res.verdict == SixSumVerdict.ZERO_PART3_SHAPE:
            found = True
            orders = {d.multiplicative_order() for d in res.delta}
            assert orders <= {1, 2, 4}
    assert found


def test_six_sum_rejects_bad_products():
    from vanishlab.cyclotomic import SixSumPreconditionError

    with pytest.raises(SixSumPreconditionError):
        classify_exponents(2, (0, 0, 1), (0, 0, 0))


def test_six_sum_rejects_values_outside_ambient_group():
    with pytest.raises(ValueError):
        six_sum_classifier(
            2,
            [root_of_unity(3, 1)] * 3,
            [Cyclo.one()] * 3,
        )
