"""Group engine: conjugacy, subgroup machinery, quotients, Frobenius tests."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vanishlab.group_engine import (
    FiniteGroup,
    GroupDomainError,
    abelian_model,
    alternating_7,
    build_semidirect,
    builtin_h,
    cycles_of,
    cyclic_group,
    direct_product,
    from_permutations,
    is_a_group,
    is_frobenius_with_kernel,
    is_quasi_frobenius,
    parse_cycles,
    perm_inv,
    perm_mul,
    symmetric_3,
)
from vanishlab.constructions import build_case_family


def s4():
    return from_permutations(4, ["(1 2 3 4)", "(1 2)"], name="S4")


def a4():
    return from_permutations(4, ["(1 2 3)", "(1 2)(3 4)"], name="A4")


def test_s4_class_sizes():
    G = s4()
    assert G.order == 24
    sizes = sorted(len(c) for _, c in G.conjugacy_classes)
    assert sizes == [1, 3, 6, 6, 8]


def test_a7_class_sizes():
    G = alternating_7()
    assert G.order == 2520
    sizes = sorted(len(c) for _, c in G.conjugacy_classes)
    assert sizes == [1, 70, 105, 210, 280, 360, 360, 504, 630]
    assert sum(sizes) == 2520


def test_class_sizes_divide_order():
    for G in (s4(), a4(), symmetric_3(), builtin_h("V4")):
        for rep, cls in G.conjugacy_classes:
            assert G.order % len(cls) == 0
            assert G.centralizer(rep).order * len(cls) == G.order


@given(st.permutations(list(range(6))), st.permutations(list(range(6))))
def test_cycle_notation_round_trips(p, q):
    p, q = tuple(p), tuple(q)
    assert parse_cycles(cycles_of(p), 6) == p
    assert perm_inv(perm_mul(p, q)) == perm_mul(perm_inv(q), perm_inv(p))


def test_semidirect_invariants():
    for tag, params in [
        ("A", {"m": 3, "variant": "c7"}),
        ("A", {"m": 6, "variant": "c13"}),
        ("B2", {"variant": "s4"}),
        ("B4_1", {}),
    ]:
        G = build_case_family(tag, **params).group
        A, H = G.A_handle, G.H_handle
        assert A.order * H.order == G.order
        assert A.is_normal()
        assert A.intersection(H).order == 1
        assert A.join(H).order == G.order


def test_quotient_is_a_homomorphic_image():
    G = s4()
    V = G.normal_closure([parse_cycles("(1 2)(3 4)", 4)])
    assert V.order == 4
    Q = G.quotient(V)
    assert Q.order == 6 and not Q.is_abelian
    rng = random.Random(3)
    pi = Q.projection
    for _ in range(50):
        g, h = rng.choice(G.elements), rng.choice(G.elements)
        assert pi[G.mul(g, h)] == Q.mul(pi[g], pi[h])


def test_quotient_rejects_non_normal():
    G = s4()
    H = G.subgroup([parse_cycles("(1 2)", 4)])
    with pytest.raises(GroupDomainError):
        G.quotient(H)


def test_center_and_fitting():
    G = s4()
    assert G.center.order == 1
    assert G.fitting.order == 4
    assert G.fitting.is_normal() and G.fitting.is_abelian()
    q8 = build_case_family("PGROUP", shape="q8").group
    assert q8.center.order == 2
    assert q8.fitting.order == 8  # nilpotent: F(G) = G
    assert q8.is_nilpotent and q8.nilpotency_class() == 2


def test_sylow_orders():
    G = s4()
    assert G.sylow(2).order == 8
    assert G.sylow(3).order == 3
    assert G.sylow(5).order == 1
    M = build_case_family("M5").group
    assert M.sylow(2).order == 16
    assert M.sylow(3).order == 81
    assert M.sylow(5).order == 5


def test_derived_subgroup():
    G = s4()
    assert G.derived_subgroup.order == 12
    assert G.derived_subgroup.as_group().derived_subgroup.order == 4
    assert symmetric_3().derived_subgroup.order == 3
    assert cyclic_group(12).derived_subgroup.order == 1


def test_normal_subgroups_of_s4():
    orders = sorted(N.order for N in s4().normal_subgroups())
    assert orders == [1, 4, 12, 24]


def test_abelian_invariants():
    G = s4()
    V = G.normal_closure([parse_cycles("(1 2)(3 4)", 4)])
    assert V.abelian_invariants() == (2, 2)
    assert cyclic_group(6).full_subgroup().abelian_invariants() == (2, 3)
    assert cyclic_group(8).full_subgroup().abelian_invariants() == (8,)


def test_abelian_model_conjugation():
    G = a4()
    V = G.fitting
    model = abelian_model(V)
    assert model.shape.factor_orders in ((2, 2),)
    x = parse_cycles("(1 2 3)", 4)
    f = model.conjugation_hom(x)
    assert f.compose(f).compose(f).is_identity()
    assert not f.is_identity()


def test_frobenius_examples():
    S3 = symmetric_3()
    K = S3.subgroup([g for g in S3.elements if S3.element_order(g) == 3])
    assert is_frobenius_with_kernel(S3, K)
    F = build_case_family("A", m=3, variant="c7").group  # C7 : C3
    assert is_frobenius_with_kernel(F, F.A_handle)
    # direct factors break the centralizer criterion
    D = direct_product(S3, cyclic_group(2))
    K2 = D.subgroup([(k, 0) for k in K.elements])
    assert not is_frobenius_with_kernel(D, K2)


def test_quasi_frobenius_examples():
    assert is_quasi_frobenius(symmetric_3()).holds
    assert is_quasi_frobenius(symmetric_3()).kernel_index == 2
    assert is_quasi_frobenius(a4()).kernel_index == 3
    assert not is_quasi_frobenius(cyclic_group(6)).holds
    assert not is_quasi_frobenius(s4()).holds
    q8 = build_case_family("PGROUP", shape="q8").group
    assert not is_quasi_frobenius(q8).holds


def test_a_group_predicate():
    assert is_a_group(symmetric_3())
    assert is_a_group(a4())
    assert not is_a_group(s4())  # Sylow 2-subgroup is dihedral
    assert is_a_group(build_case_family("M5").group)


def test_element_order_and_exponent():
    G = s4()
    orders = sorted({G.element_order(g) for g in G.elements})
    assert orders == [1, 2, 3, 4]
    assert G.exponent == 12
    assert cyclic_group(20).exponent == 20


def test_build_semidirect_rejects_non_automorphism():
    from vanishlab.abelian_core import AbelianGroup
    from vanishlab.group_engine import action_from_generator_matrices

    A = AbelianGroup.of(4)
    H = builtin_h("C2")
    with pytest.raises(GroupDomainError):
        action_from_generator_matrices(A, H, {H.generators[0]: [[2]]})


def test_group_axiom_checks_reject_bad_tables():
    with pytest.raises(GroupDomainError):
        FiniteGroup([0, 1, 2], lambda a, b: 0, lambda a: a, 0)
