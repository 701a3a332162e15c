import pytest

from hallpi import InputError, alternating_group, symmetric_group
from hallpi.corpus import (
    DEFAULT_PI_MENU,
    PROPERTIES,
    corpus_groups,
    fiber_over_prime,
    normal_subgroups,
    parse_pi_menu,
    run_corpus,
)
from hallpi.primes import PrimeSet


def test_corpus_contents():
    groups = corpus_groups(2000)
    assert len(groups) >= 25
    assert len({c.name for c in groups}) == len(groups)
    assert all(c.group.order() <= 2000 for c in groups)
    assert [c.name for c in corpus_groups(100)] == [c.name for c in groups if c.group.order() <= 100]


def test_parse_pi_menu():
    assert [p.primes for p in parse_pi_menu("2,3;3,5")] == [(2, 3), (3, 5)]
    assert [p.tag() for p in parse_pi_menu(";".join(DEFAULT_PI_MENU))] == list(DEFAULT_PI_MENU)
    for bad in ("", "2,3;;3", "2;4"):
        with pytest.raises(InputError):
            parse_pi_menu(bad)


def test_fiber_over_prime():
    s4 = symmetric_group(4)
    F = fiber_over_prime(s4, s4, 2)
    assert F.order() == 288
    assert fiber_over_prime(s4, symmetric_group(3), 1).order() == 144
    with pytest.raises(InputError):
        fiber_over_prime(alternating_group(5), s4, 2)


def test_normal_subgroups_are_proper_and_normal():
    G = symmetric_group(4)
    Ns = normal_subgroups(G)
    assert sorted(A.order() for A in Ns) == [4, 12]
    assert all(G.is_normal_subgroup(A) for A in Ns)


@pytest.mark.parametrize("prop", ["section-transport", "separable-dominance", "class-stability",
                                  "obstruction-shape", "composition-factors", "simple-class-count",
                                  "odd-pi-conjugacy"])
def test_remaining_properties(prop):
    run = run_corpus(max_order=400, properties=[prop])
    n, passed = run.table().get(prop, (0, 0))
    assert n > 0 and passed == n, [f.to_dict() for f in run.failures]


def test_unknown_property():
    with pytest.raises(InputError):
        run_corpus(max_order=10, properties=["nope"])
    assert len(PROPERTIES) == 13
