import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import _oracle as ora
from conftest import cyc, small_groups
from hallpi import (
    InputError,
    PermutationGroup,
    Section,
    alternating_group,
    composition_series,
    cyclic_group,
    direct_product,
    general_linear_group,
    induced_automorphism_group,
    section_centralizer,
    section_normalizer,
    section_transport,
    symmetric_group,
)
from hallpi.sections import PATH_COSETS, PATH_QUOTIENT, _quotient_path


def V4(s4):
    return s4.subgroup([cyc(4, "(1 2)(3 4)"), cyc(4, "(1 3)(2 4)")])


def brute_section(Gel, Hel, Ael, Bel):
    """(N_H(A/B), C_H(A/B)) as element sets, straight from the definitions."""
    N = {x for x in Hel if ora.conj_set(Ael, x) == Ael and ora.conj_set(Bel, x) == Bel}
    C = set()
    for x in N:
        # x acts on B-cosets: Ba -> B x^-1 a x
        if all(ora.mul(ora.conj(a, x), ora.inv(a)) in Bel for a in Ael):
            C.add(x)
    return N, C


def test_section_validation(s4):
    with pytest.raises(InputError):
        Section(s4, V4(s4), s4.subgroup([cyc(4, "(1 2)")]))  # not contained
    with pytest.raises(InputError):
        Section(s4, s4.subgroup([cyc(4, "(1 2)")]), alternating_group(4))


def test_section_normalizer_examples(s4):
    A4 = alternating_group(4)
    assert section_normalizer(s4, Section(s4, A4, V4(s4))) == s4
    sec = Section(s4, s4.subgroup([cyc(4, "(1 2)")]), PermutationGroup(4, []))
    N = section_normalizer(s4, sec)
    assert N == s4.subgroup([cyc(4, "(1 2)"), cyc(4, "(3 4)")])
    assert section_normalizer(s4, Section(s4, s4, A4)) == s4


def test_section_normalizer_containment(s4):
    sec = Section(s4, V4(s4), PermutationGroup(4, []))
    with pytest.raises(InputError):
        section_normalizer(symmetric_group(5), sec)


def test_section_centralizer_examples(s4):
    A4 = alternating_group(4)
    sec = Section(s4, A4, A4)
    assert section_centralizer(s4, sec) == section_normalizer(s4, sec)
    assert section_centralizer(s4, Section(s4, V4(s4), PermutationGroup(4, []))) == V4(s4)
    assert section_centralizer(s4, Section(s4, A4, V4(s4))) == A4


def test_induced_examples(s4, ghat3):
    aut = induced_automorphism_group(s4, Section(s4, V4(s4), PermutationGroup(4, [])))
    assert aut.order() == aut.realization.order() == 6
    assert not aut.realization.is_abelian()
    G, A = ghat3.group, ghat3.gl
    hat = induced_automorphism_group(G, Section(G, A, PermutationGroup(14, [])))
    assert hat.order() == 336 and hat.kernel.is_trivial()
    two = induced_automorphism_group(s4, Section(s4, s4, alternating_group(4)))
    assert two.order() == 1 and two.realization.is_trivial()


def test_quotient_path_agrees_with_coset_path(s4):
    G = direct_product(symmetric_group(4), cyclic_group(3))
    terms = composition_series(G).terms
    for B, A in zip(terms, terms[1:]):
        sec = Section(G, A, B)
        a = induced_automorphism_group(G, sec)
        N = section_normalizer(G, sec)
        hom, C = _quotient_path(N, sec)
        assert a.path == PATH_COSETS
        assert C == a.kernel
        assert hom.image().order() == a.order()


def test_large_section_uses_quotient_path(gl3):
    # index 168 * 168 exceeds the coset bound, so the normalizer quotient is used
    P = direct_product(gl3, general_linear_group(3))
    G = P.closure([tuple(list(range(7, 14)) + list(range(7)))])
    sec = Section(G, P, PermutationGroup(14, []))
    aut = induced_automorphism_group(G, sec)
    assert aut.path == PATH_QUOTIENT
    assert aut.order() == G.order()


@settings(max_examples=30, deadline=None)
@given(small_groups(max_degree=5), st.data())
def test_induced_matches_definition(G, data):
    if G.is_trivial():
        return
    terms = composition_series(G).terms
    i = data.draw(st.integers(0, len(terms) - 2))
    j = data.draw(st.integers(i + 1, len(terms) - 1))
    B, A = terms[i], terms[j]
    sec = Section(G, A, B)
    aut = induced_automorphism_group(G, sec)
    Gel = ora.elements_of(G)
    N, C = brute_section(Gel, Gel, ora.elements_of(A), ora.elements_of(B))
    assert set(aut.normalizer.elements()) == N
    assert set(aut.kernel.elements()) == C
    assert aut.realization.order() == len(N) // len(C)
    assert aut.epimorphism.kernel() == aut.kernel
    assert section_centralizer(G, sec) == aut.kernel


def test_inner_automorphisms_present():
    G = direct_product(alternating_group(5), cyclic_group(2))
    A = composition_series(G).terms[1]
    if A.order() != 60:
        A = composition_series(G).terms[2]
    aut = induced_automorphism_group(G, Section(G, A, PermutationGroup(G.degree, [])))
    assert aut.order() % 60 == 0


def test_transport_examples(gl3):
    S3, C5 = symmetric_group(3), cyclic_group(5)
    G = direct_product(S3, C5)
    M = G.subgroup(G._gens[:2])
    N = G.subgroup(G._gens[2:])
    C3 = G.subgroup([cyc(8, "(1 2 3)")])
    rep = section_transport(G, M, N, Section(G, C3, PermutationGroup(8, [])))
    assert rep["aut_G"] == rep["aut_quotient"] == 2 and rep["holds"]
    one = section_transport(G, M, PermutationGroup(8, []), Section(G, C3, PermutationGroup(8, [])))
    assert one["holds"] and one["aut_G"] == one["aut_quotient"]

    H = direct_product(gl3, cyclic_group(2))
    M = H.subgroup(H._gens[:len(gl3._gens)])
    N = H.subgroup(H._gens[len(gl3._gens):])
    rep = section_transport(H, M, N, Section(H, M, PermutationGroup(9, [])))
    assert rep["aut_G"] == rep["aut_quotient"] == 168
    assert rep["N_in_centralizer"] and rep["isomorphic"] and rep["normalizer_orders_match"]


def test_transport_hypotheses(s4):
    A4 = alternating_group(4)
    with pytest.raises(InputError):
        section_transport(s4, A4, V4(s4), Section(s4, A4, V4(s4)))  # A4 meets V4
    with pytest.raises(InputError):
        section_transport(s4, s4.subgroup([cyc(4, "(1 2)")]), PermutationGroup(4, []),
                          Section(s4, V4(s4), PermutationGroup(4, [])))
