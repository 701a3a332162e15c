import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import _oracle as ora
from conftest import cyc, perm_strategy, small_groups
from hallpi import (
    InputError,
    Permutation,
    PermutationGroup,
    ResourceError,
    alternating_group,
    derived_subgroup,
    flag_stabilizer,
    group_from_generators,
    membership_test,
    normal_closure,
    normalizer,
    orbit_partition,
    point_stabilizer,
    quotient_on_cosets,
    subgroup_conjugacy_witness,
    symmetric_group,
)
from hallpi.homomorphism import abstract_hom, quotient


# -- permutations ------------------------------------------------------------


def test_permutation_rejects_non_bijection():
    with pytest.raises(InputError):
        Permutation([1, 1, 2])


def test_cycle_round_trip():
    p = cyc(7, "(1 4 2 5 6 7 3)")
    assert str(p) == "(1 4 2 5 6 7 3)"
    assert p.order() == 7
    assert str(Permutation.identity(3)) == "()"


@given(st.integers(1, 7).flatmap(lambda n: st.tuples(perm_strategy(n), perm_strategy(n), perm_strategy(n))))
def test_composition_associative_with_inverse(triple):
    a, b, c = triple
    assert (a * b) * c == a * (b * c)
    assert (a * ~a).is_identity() and (~a * a).is_identity()
    # right action: points are mapped by a first, then b
    for x in range(1, a.degree + 1):
        assert (a * b)(x) == b(a(x))


# -- group construction --------------------------------------------------------


def test_group_from_generators_examples(gl3):
    assert group_from_generators(3, [cyc(3, "(1 2)"), cyc(3, "(1 2 3)")]).order() == 6
    assert group_from_generators(4, []).order() == 1
    assert gl3.degree == 7 and gl3.order() == 168


def test_group_from_generators_degree_mismatch():
    with pytest.raises(InputError):
        group_from_generators(4, [cyc(3, "(1 2)")])
    with pytest.raises(InputError):
        group_from_generators(3, [[1, 1, 3]])


def test_deterministic_base():
    G1 = group_from_generators(5, [cyc(5, "(1 2 3 4 5)"), cyc(5, "(1 2)")])
    G2 = group_from_generators(5, [cyc(5, "(1 2 3 4 5)"), cyc(5, "(1 2)")])
    assert G1.base == G2.base
    assert G1.base[0] == 1  # first moved point of the first generator


@settings(max_examples=60, deadline=None)
@given(small_groups())
def test_order_and_membership_match_enumeration(G):
    els = ora.elements_of(G)
    assert G.order() == len(els)
    assert set(G.elements()) == set(els)
    # order is the product of the basic orbit lengths
    prod = 1
    for k in G.basic_orbit_lengths():
        prod *= k
    assert prod == G.order()
    rng = random.Random(G.order())
    for _ in range(10):
        x = list(range(G.degree))
        rng.shuffle(x)
        assert G.contains(tuple(x)) == (tuple(x) in els)


@settings(max_examples=40, deadline=None)
@given(small_groups())
def test_strong_generators_sift_to_identity(G):
    for g in G.strong_generators + G.generators:
        residue, level = G.sift(g)
        assert residue == tuple(range(G.degree))


def test_membership_examples(gl3, s3):
    assert membership_test(s3, cyc(3, "(1 3 2)"))
    assert not membership_test(PermutationGroup(3, []), cyc(3, "(1 2)"))
    a, b = gl3.generators
    prod = a * b
    assert membership_test(gl3, prod)
    assert prod._img in ora.elements_of(gl3)
    with pytest.raises(InputError):
        membership_test(gl3, cyc(3, "(1 2)"))


# -- orbits and stabilizers ----------------------------------------------------


def test_orbit_partition_examples(s3):
    assert orbit_partition(s3) == [[1, 2, 3]]
    assert orbit_partition(PermutationGroup(4, [])) == [[1], [2], [3], [4]]
    H2 = flag_stabilizer(5, (1, 2, 2))
    assert sorted(len(o) for o in orbit_partition(H2)) == [1, 6, 24]


@settings(max_examples=40, deadline=None)
@given(small_groups())
def test_orbits_are_invariant_and_cover(G):
    orbs = orbit_partition(G)
    assert sorted(x for o in orbs for x in o) == list(range(1, G.degree + 1))
    for o in orbs:
        for g in G.generators:
            assert {g(x) for x in o} == set(o)


def test_point_stabilizer_examples(s3, gl3):
    assert point_stabilizer(s3, 3).order() == 2
    assert point_stabilizer(PermutationGroup(1, []), 1).order() == 1
    for p in range(1, 8):
        assert point_stabilizer(gl3, p).order() == 24
    with pytest.raises(InputError):
        point_stabilizer(s3, 4)


@settings(max_examples=40, deadline=None)
@given(small_groups())
def test_orbit_stabilizer(G):
    for p in range(1, G.degree + 1):
        assert G.order() == len(G.orbit(p)) * point_stabilizer(G, p).order()


def test_orbit_stabilizer_on_catalog(gl3, ghat3):
    for G in (gl3, ghat3.group, symmetric_group(5), alternating_group(6)):
        for p in range(1, G.degree + 1):
            assert G.order() == len(G.orbit(p)) * G.stabilizer(p).order()


# -- normalizer and conjugacy ----------------------------------------------------


def test_normalizer_examples(s3, s4, gl5):
    V4 = s4.subgroup([cyc(4, "(1 2)(3 4)"), cyc(4, "(1 3)(2 4)")])
    assert normalizer(s4, V4) == s4
    T = s3.subgroup([cyc(3, "(1 2)")])
    assert normalizer(s3, T) == T
    for dims in ((2, 1, 2), (1, 2, 2), (2, 2, 1)):
        H = flag_stabilizer(5, dims)
        assert normalizer(gl5, H) == H


def test_normalizer_rejects_non_subgroup():
    A3 = alternating_group(3)
    with pytest.raises(InputError):
        normalizer(A3, PermutationGroup(3, [cyc(3, "(1 2)")]))


@settings(max_examples=30, deadline=None)
@given(small_groups(max_degree=5), st.data())
def test_normalizer_matches_brute_force(G, data):
    els = sorted(ora.elements_of(G))
    k = data.draw(st.integers(0, 2))
    gens = [data.draw(st.sampled_from(els)) for _ in range(k)]
    H = G.subgroup(gens)
    N = normalizer(G, H)
    want = ora.normalizer_set(frozenset(els), ora.elements_of(H))
    assert set(N.elements()) == set(want)
    assert N.is_normal_subgroup(H)
    # random elements outside N move H
    rng = random.Random(7)
    outside = [g for g in els if g not in want]
    for g in rng.sample(outside, min(20, len(outside))):
        assert H.conjugate(g) != H


def test_conjugacy_witness_examples(s3, gl5):
    A = s3.subgroup([cyc(3, "(1 2)")])
    B = s3.subgroup([cyc(3, "(1 3)")])
    assert subgroup_conjugacy_witness(s3, A, A).is_identity()
    g = subgroup_conjugacy_witness(s3, A, B)
    assert g is not None and A.conjugate(g) == B
    H2 = flag_stabilizer(5, (1, 2, 2))
    H3 = flag_stabilizer(5, (2, 2, 1))
    assert subgroup_conjugacy_witness(gl5, H2, H3) is None


@settings(max_examples=30, deadline=None)
@given(small_groups(max_degree=5), st.data())
def test_conjugacy_witness_is_exact(G, data):
    els = sorted(ora.elements_of(G))
    h = data.draw(st.sampled_from(els))
    g = data.draw(st.sampled_from(els))
    H = G.subgroup([h])
    K = H.conjugate(g) if data.draw(st.booleans()) else G.subgroup([data.draw(st.sampled_from(els))])
    w = subgroup_conjugacy_witness(G, H, K)
    Hel, Kel = ora.elements_of(H), ora.elements_of(K)
    brute = any(ora.conj_set(Hel, x) == Kel for x in els)
    assert (w is not None) == brute
    if w is not None:
        assert all(K.contains(x.conjugate(w)) for x in H.generators)


# -- quotients -----------------------------------------------------------------


def test_quotient_on_cosets_examples(s4, ghat3):
    assert quotient_on_cosets(s4, s4).image().order() == 1
    q = quotient_on_cosets(s4, alternating_group(4))
    assert q.image().order() == 2
    hat = quotient_on_cosets(ghat3.group, ghat3.gl)
    assert hat.image().order() == 2 and hat.kernel() == ghat3.gl


def test_quotient_on_cosets_bound(s4):
    with pytest.raises(ResourceError, match="index 24"):
        quotient_on_cosets(s4, PermutationGroup(4, []), bound=10)


@settings(max_examples=30, deadline=None)
@given(small_groups(max_degree=6))
def test_quotient_sizes(G):
    for N in (G.derived_subgroup(), G.normal_closure(G._gens[:1])):
        q = quotient_on_cosets(G, N)
        assert q.image().order() * N.order() == G.order()
        assert q.kernel() == N
        r = quotient(G, N)
        assert r.image().order() * r.kernel().order() == G.order()
        assert G.is_normal_subgroup(r.kernel())
        for g in G._gens:
            assert r.image().contains(r.image_of(g))
            assert r.image_of(r.lift(r.image_of(g))) == r.image_of(g)


def test_abstract_hom_checks_relations(s3):
    # sign map onto C2
    hom = abstract_hom(s3, 2, [(1, 0) if Permutation.from_tuple(g).order() == 2 else (0, 1) for g in s3._gens])
    assert hom.kernel().order() == 3
    with pytest.raises(InputError):
        abstract_hom(s3, 3, [(1, 2, 0), (1, 2, 0)])


# -- derived subgroup and normal closure ---------------------------------------------


def test_derived_examples(s3, gl3):
    assert derived_subgroup(PermutationGroup(4, [cyc(4, "(1 2 3 4)")])).order() == 1
    assert derived_subgroup(s3).order() == 3
    assert derived_subgroup(gl3) == gl3


def test_normal_closure_examples(s4, gl3):
    assert normal_closure(s4, [Permutation.identity(4)]).order() == 1
    assert normal_closure(s4, [cyc(4, "(1 2)(3 4)")]).order() == 4
    for g in gl3.generators:
        assert normal_closure(gl3, [g]) == gl3


def test_normal_closure_rejects_outside(s3):
    A3 = alternating_group(3)
    with pytest.raises(InputError):
        normal_closure(A3, [cyc(3, "(1 2)")])


@settings(max_examples=30, deadline=None)
@given(small_groups(max_degree=5), st.data())
def test_normal_closure_matches_brute_force(G, data):
    els = ora.elements_of(G)
    x = data.draw(st.sampled_from(sorted(els)))
    N = normal_closure(G, [x])
    assert set(N.elements()) == ora.normal_closure_set(els, [x], G.degree)
    D = derived_subgroup(G)
    assert G.is_normal_subgroup(D)
    assert quotient(G, D).image().is_abelian()
