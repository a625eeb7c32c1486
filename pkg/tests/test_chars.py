"""Character tables: the exact class-algebra oracle and the induced-character
fast path for abelian normal subgroups."""

import itertools
from fractions import Fraction

import pytest

from vanishlab.abelian_core import DualCharacter, all_characters
from vanishlab.character_lab import (
    class_data,
    coset_transversal,
    dixon_table,
    induced_linear_value,
    proportion,
    vanish_on_abelian_normal,
)
from vanishlab.constructions import build_case_family
from vanishlab.cyclotomic import Cyclo
from vanishlab.group_engine import (
    abelian_model,
    cyclic_group,
    direct_product,
    from_permutations,
    symmetric_3,
)


def s4():
    return from_permutations(4, ["(1 2 3 4)", "(1 2)"], name="S4")


def test_s3_table():
    table = dixon_table(symmetric_3())
    assert sorted(table.degrees) == [1, 1, 2]
    # only the degree-2 character vanishes, exactly on the transpositions
    assert len(table.vanishing_classes()) == 1
    k = table.vanishing_classes()[0]
    assert table.classes.sizes[k] == 3


def test_degrees_square_sum_to_order():
    for entry in [
        build_case_family("PGROUP", shape="d8"),
        build_case_family("PGROUP", shape="q8"),
        build_case_family("PGROUP", shape="heis3"),
        build_case_family("A", m=4, variant="c5"),
        build_case_family("B2", variant="s4"),
    ]:
        G = entry.group
        table = dixon_table(G)
        assert sum(d * d for d in table.degrees) == G.order
        assert len(table.degrees) == table.classes.count


def test_value_at_identity_is_degree():
    G = s4()
    table = dixon_table(G)
    for i, d in enumerate(table.degrees):
        v = table.value(i, G.identity)
        assert v == Cyclo.one() * d


def test_row_orthogonality_exact():
    G = s4()
    table = dixon_table(G)
    data = table.classes
    for i, j in itertools.combinations_with_replacement(range(data.count), 2):
        total = Cyclo.zero()
        for k in range(data.count):
            term = table.value(i, data.reps[k]) * table.value(j, data.reps[k]).conj()
            total = total + term * data.sizes[k]
        if i == j:
            assert total == Cyclo.one() * G.order
        else:
            assert total.is_zero()


def test_known_proportions():
    cases = [
        (symmetric_3(), Fraction(1, 2)),
        (from_permutations(4, ["(1 2 3)", "(1 2)(3 4)"], name="A4"), Fraction(2, 3)),
        (s4(), Fraction(5, 6)),
        (build_case_family("PGROUP", shape="d8").group, Fraction(3, 4)),
        (build_case_family("PGROUP", shape="q8").group, Fraction(3, 4)),
        (build_case_family("PGROUP", shape="heis3").group, Fraction(8, 9)),
    ]
    for G, expected in cases:
        assert proportion(G).proportion == expected


def test_abelian_groups_have_no_vanishing_elements():
    for G in (cyclic_group(1), cyclic_group(12),
              direct_product(cyclic_group(2), cyclic_group(4))):
        report = proportion(G)
        assert report.proportion == 0
        assert report.nonvanishing == frozenset(G.elements)


def test_center_never_vanishes():
    for shape in ("d8", "q16", "heis3"):
        G = build_case_family("PGROUP", shape=shape).group
        report = proportion(G)
        assert G.center.elements <= report.nonvanishing


def test_coset_transversal_partitions_group():
    G = s4()
    A = G.fitting
    reps = coset_transversal(G, A)
    assert len(reps) == G.order // A.order
    seen = set()
    for t in reps:
        coset = {G.mul(t, a) for a in A.elements}
        assert not (coset & seen)
        seen |= coset
    assert len(seen) == G.order


def test_induced_value_concrete_zero():
    # D8 over its cyclic core: a faithful linear character of C4 induces to
    # the 2-dimensional irreducible, which vanishes on the rotation of order 4
    G = build_case_family("PGROUP", shape="d8").group
    A = next(
        H for H in (G.subgroup([g]) for g in G.elements)
        if H.order == 4 and H.is_normal()
    )
    model = abelian_model(A)
    alpha = DualCharacter(model.shape, (1,))
    a = model.shape.element((1,))
    assert induced_linear_value(alpha, a, model).is_zero()
    trivial = DualCharacter(model.shape, (0,))
    assert induced_linear_value(trivial, a, model) == Cyclo.one() * 2


def test_induced_value_matches_full_average():
    G = s4()
    A = G.fitting
    model = abelian_model(A)
    for alpha in all_characters(model.shape):
        for a in model.shape.elements():
            fast = induced_linear_value(alpha, a, model)
            g = model.group_element(a)
            total = Cyclo.zero()
            for t in G.elements:
                total = total + alpha(model.element(G.conj(g, t)))
            assert total == fast * A.order


def test_fast_path_agrees_with_oracle():
    for entry in [
        build_case_family("B2", variant="s4"),
        build_case_family("B2", variant="c4"),
        build_case_family("PGROUP", shape="d8"),
        build_case_family("A", m=6, variant="c7"),
    ]:
        G = entry.group
        V = proportion(G).vanishing
        for A in _abelian_normal(G):
            assert vanish_on_abelian_normal(G, A) == V & A.elements


def _abelian_normal(G):
    for N in G.normal_subgroups():
        if N.order > 1 and N.is_abelian():
            yield N


def test_s4_fast_path_klein_four_never_vanishes():
    G = s4()
    V4 = G.fitting
    assert vanish_on_abelian_normal(G, V4) == frozenset()
    report = proportion(G)
    assert report.nonvanishing == V4.elements
    assert report.proportion == Fraction(5, 6)


def test_fast_path_rejects_bad_inputs():
    from vanishlab.group_engine import GroupDomainError

    G = s4()
    H = G.subgroup([next(g for g in G.elements if G.element_order(g) == 2)])
    if not H.is_normal():
        with pytest.raises(GroupDomainError):
            vanish_on_abelian_normal(G, H)
    with pytest.raises(GroupDomainError):
        vanish_on_abelian_normal(G, G.full_subgroup())
