"""Minimal normal subgroups, chief series and composition series.

Minimal normal subgroups are read off Sylow centres: a non-trivial normal
subgroup M with p dividing |M| meets the centre of a Sylow p-subgroup P
non-trivially (M and P is normal in P), so M contains the normal closure of
some z of order p in Z(P).  Hence the minimal normal subgroups are exactly
the inclusion-minimal normal closures of such z.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import InputError, ResourceError
from .group import PermutationGroup, canonical
from .homomorphism import quotient
from .perm import pinv, pmul, porder
from .primes import factorize, prime_divisors
from .search import center
from .sylow import sylow_subgroup

OMEGA_ENUM_BOUND = 1 << 16

KINDS = ("chief", "composition", "subnormal")


@dataclass
class Factor:
    """Descriptor of the factor terms[index] / terms[index - 1]."""

    index: int
    order: int
    abelian: bool
    simple: bool
    layer: int | None = None

    def to_dict(self) -> dict:
        return {"index": self.index, "order": self.order, "abelian": self.abelian,
                "simple": self.simple, "layer": self.layer}


@dataclass
class SeriesChain:
    group: PermutationGroup
    terms: list[PermutationGroup]
    kind: str
    factors: list[Factor] = field(default_factory=list)

    def orders(self) -> list[int]:
        return [T.order() for T in self.terms]

    def layer_bounds(self, layer: int) -> tuple[int, int]:
        """Term indices (lo, hi) spanned by a chief layer."""
        idx = [f.index for f in self.factors if f.layer == layer]
        if not idx:
            raise InputError(f"no chief layer {layer}")
        return min(idx) - 1, max(idx)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "orders": self.orders(),
                "factors": [f.to_dict() for f in self.factors]}

    def __len__(self) -> int:
        return len(self.terms) - 1


def _group_key(H: PermutationGroup) -> tuple:
    return tuple(sorted(tuple(x + 1 for x in g) for g in H._gens))


def _order_p_subgroups(Z: PermutationGroup, p: int) -> list[tuple]:
    """One generator for each subgroup of order p of the abelian group Z."""
    if Z.order() > OMEGA_ENUM_BOUND:
        raise ResourceError(f"Sylow centre of order {Z.order()} too large to enumerate")
    seen = set()
    out = []
    for z in Z.elements():
        if z in seen or porder(z) != p:
            continue
        out.append(z)
        w = z
        for _ in range(p - 1):
            seen.add(w)
            w = pmul(w, z)
    return out


def _normal_closure_candidates(G: PermutationGroup, stop_on_proper: bool = False):
    for p in prime_divisors(G.order()):
        P = sylow_subgroup(G, p)
        for z in _order_p_subgroups(center(P), p):
            N = G.normal_closure([z])
            yield N
            if stop_on_proper and N.order() < G.order():
                return


def minimal_normal_subgroups(G: PermutationGroup) -> list[PermutationGroup]:
    """All minimal normal subgroups of G, sorted by generator list."""
    if G.is_trivial():
        raise InputError("the trivial group has no minimal normal subgroups")
    G = canonical(G)
    got = G._cache.get("minimal_normal")
    if got is not None:
        return got
    cands: list[PermutationGroup] = []
    for N in _normal_closure_candidates(G):
        if not any(N == C for C in cands):
            cands.append(N)
    out = [N for N in cands
           if not any(M.order() < N.order() and N.contains_group(M) for M in cands)]
    out.sort(key=_group_key)
    G._cache["minimal_normal"] = out
    return out


def is_simple(G: PermutationGroup) -> bool:
    if G.is_trivial():
        raise InputError("simplicity is undefined for the trivial group")
    G = canonical(G)
    got = G._cache.get("simple")
    if got is None:
        if G.is_abelian():
            got = _is_prime_order(G.order())
        elif G.derived_subgroup().order() < G.order():
            got = False
        else:
            got = all(N.order() == G.order()
                      for N in _normal_closure_candidates(G, stop_on_proper=True))
        G._cache["simple"] = got
    return got


def _is_prime_order(n: int) -> bool:
    f = factorize(n)
    return len(f) == 1 and sum(f.values()) == 1


def _factor_abelian(lo: PermutationGroup, hi: PermutationGroup) -> bool:
    gens = hi._gens
    for i, a in enumerate(gens):
        for b in gens[i + 1:]:
            c = pmul(pmul(pinv(a), pinv(b)), pmul(a, b))
            if not lo.contains(c):
                return False
    return True


def chief_series(G: PermutationGroup, seed: int | None = None) -> SeriesChain:
    """Ascending chief series 1 = G_0 < ... < G_n = G.

    At each step the minimal normal subgroup of G/G_i with the least sorted
    generator list is taken; a seed picks one at random instead.
    """
    G = canonical(G)
    key = ("chief", seed)
    got = G._cache.get(key)
    if got is not None:
        return got
    rng = random.Random(seed) if seed is not None else None
    cur = PermutationGroup(G.degree, [])
    terms = [cur]
    factors = []
    while cur.order() < G.order():
        q = quotient(G, cur)
        Q = q.image()
        mins = minimal_normal_subgroups(Q)
        pick = mins[0] if rng is None else rng.choice(mins)
        nxt = q.preimage(pick)
        abelian = pick.is_abelian()
        simple = _is_prime_order(pick.order()) if abelian else is_simple(pick)
        factors.append(Factor(len(terms), pick.order(), abelian, simple, len(terms)))
        terms.append(nxt)
        cur = nxt
    chain = SeriesChain(G, terms, "chief", factors)
    G._cache[key] = chain
    return chain


def _check_chief(chain: SeriesChain) -> None:
    G = chain.group
    if chain.kind != "chief":
        raise InputError("expected a chief series")
    T = chain.terms
    if not T or not T[0].is_trivial() or T[-1] != G:
        raise InputError("a chief series must run from 1 to G")
    for lo, hi in zip(T, T[1:]):
        if not (hi.order() > lo.order() and hi.contains_group(lo) and G.is_normal_subgroup(hi)):
            raise InputError("terms must be ascending normal subgroups of G")


def refine_to_composition_series(chain: SeriesChain) -> SeriesChain:
    """Composition series through every term of a chief series.

    An abelian chief layer is elementary abelian and is split one generator
    at a time.  A non-abelian layer T_1 x ... x T_s is split through the
    preimages of T_1, T_1 T_2, ...; the first inserted term is the preimage
    of the lexicographically first component.
    """
    _check_chief(chain)
    G = chain.group
    terms = [chain.terms[0]]
    factors: list[Factor] = []
    for layer, (lo, hi) in enumerate(zip(chain.terms, chain.terms[1:]), start=1):
        if _factor_abelian(lo, hi):
            H = lo
            for g in _strong_gens(hi):
                while not H.contains(g):
                    nxt = H.closure([g])
                    factors.append(Factor(len(terms), nxt.order() // H.order(), True, True, layer))
                    terms.append(nxt)
                    H = nxt
            continue
        q = quotient(G, lo)
        Q = q.image()
        Nbar = q.image_of_subgroup(hi)
        Nbar = PermutationGroup(Nbar.degree, Nbar._gens, order=hi.order() // lo.order())
        comps = [minimal_normal_subgroups(Nbar)[0]]
        i = 0
        while i < len(comps):
            for s in Q._gens:
                C = comps[i].conjugate(s)
                if not any(C == D for D in comps):
                    comps.append(C)
            i += 1
        tsize = comps[0].order()
        P = comps[0]
        for l, T in enumerate(comps):
            if l > 0:
                P = PermutationGroup(P.degree, list(P._gens) + list(T._gens),
                                     order=P.order() * tsize)
            factors.append(Factor(len(terms), tsize, False, True, layer))
            terms.append(q.preimage(P) if P.order() < Nbar.order() else hi)
    return SeriesChain(G, terms, "composition", factors)


def _strong_gens(H: PermutationGroup) -> list[tuple]:
    out = list(H._gens)
    for lev in H._chain.levels:
        out += [g for g in lev.gens if g not in out]
    return out


def composition_series(G: PermutationGroup, seed: int | None = None) -> SeriesChain:
    return refine_to_composition_series(chief_series(G, seed))

