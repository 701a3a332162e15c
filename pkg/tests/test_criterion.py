import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import _oracle as ora
from conftest import cyc, small_groups
from hallpi import (
    InputError,
    PermutationGroup,
    alternating_group,
    cyclic_group,
    direct_product,
    epi_criterion,
    general_linear_group,
    hall_classes,
    is_hall_subgroup,
    quotient,
    subdirect_product,
    sylow_subgroup,
    symmetric_group,
)
from hallpi.criterion import almost_simple_epi, decide_epi, failing_layer_section, lift_hall, obstruction_element
from hallpi.primes import PrimeSet


# -- layer criterion ------------------------------------------------------------


def test_criterion_fails_on_the_extension(ghat3):
    r = epi_criterion(ghat3.group, (2, 3))
    assert r.overall is False and r.witness == 1
    first = r.layers[0]
    assert (first.factor_order, first.aut_order, first.verdict) == (168, 336, False)
    assert r.layers[1].abelian and r.layers[1].verdict
    d = r.to_dict()
    assert d["witness_layer"] == 1 and d["pi"] == [2, 3]


def test_criterion_solvable_group_passes(s4):
    r = epi_criterion(s4, (2, 3))
    assert r.overall and r.witness is None
    assert all(e.abelian and e.method == "abelian layer" for e in r.layers)
    assert epi_criterion(s4, (5,)).overall


def test_criterion_direct_product_passes(gl3):
    r = epi_criterion(direct_product(gl3, cyclic_group(2)), (2, 3))
    assert r.overall


def test_criterion_s6():
    # A6 has no subgroup of index 5, so no {2,3}-Hall subgroup
    r = epi_criterion(symmetric_group(6), (2, 3))
    assert not r.overall and r.layers[0].method in ("socle-not-E", "brute-force")


def test_criterion_gl5_extension(ghat5):
    r = epi_criterion(ghat5.group, (2, 3))
    assert r.overall
    assert [e.method for e in r.layers] == ["almost-simple", "abelian layer"]
    assert r.layers[0].aut_order == ghat5.group.order()


@settings(max_examples=20, deadline=None)
@given(small_groups(max_degree=5), st.sampled_from([(2,), (3,), (2, 3), (2, 5), (3, 5), (2, 3, 5)]))
def test_criterion_matches_enumeration(G, pi):
    # every subgroup of S5 is 2-generated, so the naive enumeration sees all Hall subgroups
    want = bool(ora.hall_classes_naive(ora.elements_of(G), G.degree, pi))
    assert epi_criterion(G, pi).overall is want
    assert hall_classes(G, pi).satisfies_E is want


@pytest.mark.parametrize("G", [symmetric_group(6), alternating_group(6),
                               direct_product(alternating_group(5), symmetric_group(3))])
@pytest.mark.parametrize("pi", [(2, 3), (2, 5), (3, 5), (2,)])
def test_criterion_matches_lattice_search(G, pi):
    assert epi_criterion(G, pi).overall is hall_classes(G, pi, method="full-lattice").satisfies_E


def test_decide_epi_branches(gl3, ghat3):
    assert decide_epi(cyclic_group(6), PrimeSet((2,)))[1] == "pi-separable"
    a6 = alternating_group(6)
    assert decide_epi(a6, PrimeSet((2, 3)), a6)[:2] == (False, "socle-not-E")
    assert decide_epi(ghat3.group, PrimeSet((2, 3)), ghat3.gl)[:2] == (False, "brute-force")


def test_failing_layer_section(ghat3, s4):
    R, S = failing_layer_section(epi_criterion(ghat3.group, (2, 3)))
    assert R.order() == 336 and S.order() == 168 and R.is_normal_subgroup(S)
    with pytest.raises(InputError):
        failing_layer_section(epi_criterion(s4, (2, 3)))


# -- almost simple groups ----------------------------------------------------------


def test_almost_simple_examples(ghat3, gl3):
    res = almost_simple_epi(ghat3.group, ghat3.gl, (2, 3))
    assert not res and res.k_pi == 2 and res.orbit_sizes == [2]
    same = almost_simple_epi(gl3, gl3, (2, 3))
    assert same and same.orbit_sizes == [1, 1]
    s5 = almost_simple_epi(symmetric_group(5), alternating_group(5), (2, 3))
    assert s5 and s5.k_pi == 1


def test_almost_simple_reduced_branch():
    # S5 over A5 with pi = {3,5}: A5 has no such Hall subgroup
    with pytest.raises(InputError):
        almost_simple_epi(symmetric_group(5), alternating_group(5), (3, 5))
    # the outer part of PGL-type extensions is a 2-group, so pi = {3, 7} goes through G/S
    res = almost_simple_epi(general_linear_group(3), general_linear_group(3), (3, 7))
    assert res.verdict and res.k_pi == 1


def test_almost_simple_hypotheses(s4, gl3):
    with pytest.raises(InputError):
        almost_simple_epi(s4, alternating_group(4), (2, 3))  # socle not simple
    P = direct_product(gl3, cyclic_group(2))
    S = P.subgroup(P._gens[:len(gl3._gens)])
    with pytest.raises(InputError):
        almost_simple_epi(P, S, (2, 3))  # nontrivial centralizer


def test_almost_simple_agrees_with_brute_force(ghat3):
    for G, S in ((ghat3.group, ghat3.gl), (symmetric_group(5), alternating_group(5)),
                 (symmetric_group(6), alternating_group(6))):
        for pi in ((2, 3), (2, 5), (2,), (3,)):
            if not hall_classes(S, pi).satisfies_E:
                continue
            assert almost_simple_epi(G, S, pi).verdict is hall_classes(G, pi).satisfies_E


# -- obstruction ------------------------------------------------------------------


def test_obstruction_on_extension(ghat3):
    ob = obstruction_element(ghat3.group, ghat3.gl, (2, 3))
    assert ob == {"element": "(1 8)(2 9)(3 10)(4 11)(5 12)(6 13)(7 14)", "order": 2,
                  "class_action": "(1 2)", "join_order": 336}


def test_obstruction_absent_and_rejected(gl3):
    assert obstruction_element(gl3, gl3, (2, 3)) is None
    with pytest.raises(InputError):
        obstruction_element(gl3, gl3, (2, 7))


# -- lifting and fiber products ----------------------------------------------------


def test_lift_trivial_kernel(s4):
    q = quotient(s4, PermutationGroup(4, []))
    Mbar = sylow_subgroup(q.image(), 2)
    H = lift_hall(s4, PermutationGroup(4, []), (2,), Mbar, q)
    assert H.order() == 8 and is_hall_subgroup(s4, H, (2,))


def test_lift_over_klein_four(s4):
    V = s4.subgroup([cyc(4, "(1 2)(3 4)"), cyc(4, "(1 3)(2 4)")])
    q = quotient(s4, V)
    Mbar = sylow_subgroup(q.image(), 3)
    H = lift_hall(s4, V, (3,), Mbar, q)
    assert H.order() == 3 and q.image_of_subgroup(H) == Mbar


def test_lift_gl5_extension(ghat5):
    q = quotient(ghat5.group, ghat5.gl)
    H = lift_hall(ghat5.group, ghat5.gl, (2, 3), q.image(), q)
    assert H.order() == 18432 and q.image_of_subgroup(H) == q.image()


def test_lift_rejects(ghat3, s4):
    q = quotient(ghat3.group, ghat3.gl)
    with pytest.raises(InputError):
        lift_hall(ghat3.group, ghat3.gl, (2, 3), q.image(), q)
    with pytest.raises(InputError):
        lift_hall(s4, s4.stabilizer(4), (2,), PermutationGroup(4, []))


def test_subdirect_examples(s4):
    triv = quotient(s4, s4)
    assert subdirect_product(s4, s4, triv, triv).order() == 576
    ident = quotient(s4, PermutationGroup(4, []))
    diag = subdirect_product(s4, s4, ident, ident)
    assert diag.order() == 24
    sign = quotient(s4, alternating_group(4))
    F = subdirect_product(s4, s4, sign, sign)
    assert F.order() == 288 and F.degree == 8
    assert epi_criterion(F, (2, 3)).overall


def test_subdirect_projections_are_onto(s4):
    S3 = symmetric_group(3)
    q1 = quotient(s4, alternating_group(4))
    q2 = quotient(S3, alternating_group(3))
    Q1, Q2 = q1.image(), q2.image()
    if Q1.degree == Q2.degree and Q1 == Q2:
        F = subdirect_product(s4, S3, q1, q2)
    else:
        pytest.skip("sign quotients realized on different domains")
    left = {g[:4] for g in F.elements()}
    right = {tuple(x - 4 for x in g[4:]) for g in F.elements()}
    assert len(left) == 24 and len(right) == 6
    assert F.order() == 24 * 6 // 2


def test_subdirect_rejects(s4):
    sign = quotient(s4, alternating_group(4))
    triv = quotient(s4, s4)
    with pytest.raises(InputError):
        subdirect_product(s4, s4, sign, triv)
