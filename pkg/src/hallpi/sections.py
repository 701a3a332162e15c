"""Sections A/B and the automorphisms they inherit from a subgroup H.

An element x of N_H(A/B) acts on A/B by Ba -> B x^-1 a x.  The image of
this action is the induced automorphism group and its kernel is C_H(A/B).
Two realizations are available: the action on the non-trivial B-cosets of
A (small sections), or the action of N_H(A/B) on the cosets of C_H(A/B),
with the centralizer found through a quotient by B.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, ResourceError
from .group import PermutationGroup
from .homomorphism import (
    COSET_DEGREE_BOUND,
    GroupHomomorphism,
    quotient,
)
from .perm import pconj, pidentity, pmul
from .search import centralizer, intersection, normalizer_in

ACTION_DEGREE_BOUND = 10_000

PATH_COSETS = "section-cosets"
PATH_QUOTIENT = "normalizer-quotient"


@dataclass
class Section:
    G: PermutationGroup
    A: PermutationGroup
    B: PermutationGroup

    def __post_init__(self):
        G, A, B = self.G, self.A, self.B
        if not (A.degree == B.degree == G.degree):
            raise InputError("section groups must share the ambient degree")
        if not (G.contains_group(A) and G.contains_group(B)):
            raise InputError("A and B must lie in the ambient group")
        if not A.is_normal_subgroup(B):
            raise InputError("B is not normal in A")

    @property
    def index(self) -> int:
        return self.A.order() // self.B.order()


@dataclass
class InducedAutomorphismGroup:
    section: Section
    normalizer: PermutationGroup
    epimorphism: GroupHomomorphism
    kernel: PermutationGroup
    path: str

    @property
    def realization(self) -> PermutationGroup:
        return self.epimorphism.image()

    def order(self) -> int:
        return self.normalizer.order() // self.kernel.order()

    def summary(self) -> dict:
        return {"A": self.section.A.order(), "B": self.section.B.order(),
                "aut": self.order(), "path": self.path}


def _check_ambient(H: PermutationGroup, sec: Section) -> None:
    if H.degree != sec.G.degree or not sec.G.contains_group(H):
        raise InputError("H must be a subgroup of the section's ambient group")


def section_normalizer(H: PermutationGroup, sec: Section) -> PermutationGroup:
    """N_H(A) and N_H(B) intersected."""
    _check_ambient(H, sec)
    return normalizer_in(normalizer_in(H, sec.A), sec.B)


def section_centralizer(H: PermutationGroup, sec: Section) -> PermutationGroup:
    """Kernel of the action of N_H(A/B) on the B-cosets of A."""
    return induced_automorphism_group(H, sec).kernel


def _coset_reps(A: PermutationGroup, B: PermutationGroup) -> tuple[list[tuple], dict]:
    """Canonical right coset representatives of B in A, the trivial coset first."""
    start = B.coset_canonical(pidentity(A.degree))
    reps = [start]
    index = {start: 0}
    for r in reps:
        for s in A._gens:
            c = B.coset_canonical(pmul(r, s))
            if c not in index:
                index[c] = len(reps)
                reps.append(c)
    return reps, index


def _coset_path(N: PermutationGroup, sec: Section) -> GroupHomomorphism:
    A, B = sec.A, sec.B
    reps, index = _coset_reps(A, B)
    if len(reps) <= 2:
        # Aut of a group of order at most 2 is trivial
        return GroupHomomorphism(N, 1, [(0,)] * len(N._gens), "restriction",
                                 direct=lambda g: (0,))
    moved = reps[1:]

    def direct(x):
        return tuple(index[B.coset_canonical(pconj(r, x))] - 1 for r in moved)

    hom = GroupHomomorphism(N, len(moved), [direct(x) for x in N._gens], "coset action",
                            direct=direct)
    hom.section_points = moved
    return hom


def _quotient_path(N: PermutationGroup, sec: Section) -> tuple[GroupHomomorphism, PermutationGroup]:
    A, B = sec.A, sec.B
    if B.is_trivial():
        C = centralizer(N, A)
    else:
        J = N.closure(list(A._gens) + list(B._gens))
        q = quotient(J, B)
        Abar = q.image_of_subgroup(A)
        Jbar = q.image()
        D = q.preimage(centralizer(Jbar, Abar))
        C = intersection(D, N)
    return quotient(N, C), C


def induced_automorphism_group(H: PermutationGroup, sec: Section) -> InducedAutomorphismGroup:
    """Aut_H(A/B) with its epimorphism from N_H(A/B) and kernel C_H(A/B)."""
    N = section_normalizer(H, sec)
    if sec.index <= ACTION_DEGREE_BOUND:
        hom = _coset_path(N, sec)
        K = hom.kernel()
        path = PATH_COSETS
    else:
        try:
            hom, K = _quotient_path(N, sec)
        except ResourceError as exc:
            raise ResourceError(f"section of index {sec.index}: no realization within bounds "
                                f"({ACTION_DEGREE_BOUND} points, {COSET_DEGREE_BOUND} cosets): {exc}") from None
        path = PATH_QUOTIENT
    return InducedAutomorphismGroup(sec, N, hom, K, path)


def section_transport(G: PermutationGroup, M: PermutationGroup, N: PermutationGroup,
                      sec: Section) -> dict:
    """Compare Aut_G(A/B) with the automorphisms induced on (AN/N)/(BN/N) by G/N.

    Hypotheses: M and N normal in G, M and N intersect trivially, A and B in M.
    """
    if not (G.is_normal_subgroup(M) and G.is_normal_subgroup(N)):
        raise InputError("M and N must be normal in G")
    if M.closure(N._gens).order() != M.order() * N.order():
        raise InputError("M and N must intersect trivially")
    if not (M.contains_group(sec.A) and M.contains_group(sec.B)):
        raise InputError("the section must lie inside M")
    left = induced_automorphism_group(G, sec)
    n_central = left.kernel.contains_group(N)
    q = quotient(G, N)
    Gbar = q.image()
    Abar = q.image_of_subgroup(sec.A)
    Bbar = q.image_of_subgroup(sec.B)
    right = induced_automorphism_group(Gbar, Section(Gbar, Abar, Bbar))
    # graph of x^left -> (xN)^right over generators of N_G(A/B)
    d1 = left.epimorphism.target_degree
    d2 = right.epimorphism.target_degree
    pairs = []
    for x in left.normalizer._gens:
        a = left.epimorphism.image_of(x)
        b = right.epimorphism.image_of(q.image_of(x))
        pairs.append(a + tuple(d1 + y for y in b))
    graph = PermutationGroup(d1 + d2, pairs)
    iso = graph.order() == left.order() == right.order()
    normalizer_ok = left.normalizer.order() // N.order() == right.normalizer.order() \
        if n_central else False
    return {
        "aut_G": left.order(),
        "aut_quotient": right.order(),
        "paths": [left.path, right.path],
        "N_in_centralizer": n_central,
        "isomorphic": iso,
        "normalizer_orders_match": normalizer_ok,
        "holds": n_central and iso and normalizer_ok,
    }
