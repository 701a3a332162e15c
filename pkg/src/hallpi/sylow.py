"""Sylow subgroups.

Small groups: start from 1 and keep adjoining p-elements that normalize
the current p-subgroup; a p-subgroup that is not Sylow always has such an
element outside it (it is properly contained in its normalizer inside a
Sylow subgroup), so the loop ends at a Sylow subgroup.

Larger groups first try a subgroup of index prime to p: a point
stabilizer, the derived subgroup, or the normalizer of a Sylow subgroup
of the derived subgroup (Frattini argument).  Failing that, pick an element z of order p whose centralizer still has
full p-part, and recurse into that centralizer.  When only central such z
turn up, pass to G/<z> and take the preimage.
"""

from __future__ import annotations

from .errors import ResourceError
from .group import PermutationGroup, canonical
from .perm import pconj, porder, ppow
from .primes import is_power_of, p_part
from .search import centralizer_of_element, normalizer

ENUMERATION_BOUND = 20_000
RANDOM_TRIES = 400


def sylow_subgroup(G: PermutationGroup, p: int) -> PermutationGroup:
    """A Sylow p-subgroup of G (trivial when p does not divide |G|)."""
    G = canonical(G)
    key = ("sylow", p)
    got = G._cache.get(key)
    if got is None:
        got = _sylow(G, p)
        assert got.order() == p_part(G.order(), p) and G.contains_group(got)
        G._cache[key] = got
    return got


def _sylow(G: PermutationGroup, p: int) -> PermutationGroup:
    target = p_part(G.order(), p)
    if target == 1:
        return PermutationGroup(G.degree, [])
    if target == G.order():
        return G
    if G.order() <= ENUMERATION_BOUND:
        return _sylow_by_elements(G, p, target)
    # a subgroup of p'-index holds a Sylow subgroup of G
    for orb in G._orbits0():
        if len(orb) > 1 and len(orb) % p:
            return sylow_subgroup(G._stabilizer0(orb[0]), p)
    D = G.derived_subgroup()
    if D.order() < G.order() and (G.order() // D.order()) % p:
        return sylow_subgroup(D, p)
    if 1 < D.order() < G.order() and D.order() % p == 0:
        # Frattini: N_G(P_D) has p'-index in G
        M = normalizer(G, sylow_subgroup(D, p))
        if M.order() < G.order():
            return sylow_subgroup(M, p)
    return _sylow_by_centralizers(G, p, target)


def _sylow_by_elements(G: PermutationGroup, p: int, target: int) -> PermutationGroup:
    pel = []
    for g in G.elements():
        o = porder(g)
        if o > 1 and is_power_of(o, p):
            pel.append(g)
    P = PermutationGroup(G.degree, [])
    grew = True
    while grew and P.order() < target:
        grew = False
        for x in pel:
            if P.contains(x):
                continue
            if all(P.contains(pconj(h, x)) for h in P._gens):
                P = P.closure([x])
                grew = True
                if P.order() == target:
                    break
    return P


def _sylow_by_centralizers(G: PermutationGroup, p: int, target: int) -> PermutationGroup:
    sample = G.uniform_sampler()
    central = None
    for _ in range(RANDOM_TRIES):
        g = sample()
        o = porder(g)
        if o % p:
            continue
        x = ppow(g, o // p_part(o, p))
        if p_part(o, p) == target:
            return PermutationGroup(G.degree, [x], order=target)
        z = ppow(g, o // p)
        C = centralizer_of_element(G, z)
        if p_part(C.order(), p) != target:
            continue
        if C.order() < G.order():
            return sylow_subgroup(C, p)
        central = z
    if central is None:
        raise ResourceError(f"Sylow {p}-subgroup search found no suitable element "
                            f"in {RANDOM_TRIES} tries")
    from .homomorphism import quotient
    Z = PermutationGroup(G.degree, [central], order=p)
    q = quotient(G, Z)
    Q = q.image()
    return q.preimage(sylow_subgroup(Q, p))
