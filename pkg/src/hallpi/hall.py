"""Hall subgroups: search, conjugacy classes and the E/C/D verdicts.

Two exhaustive searches are used.

full-lattice (|G| <= 20000)
    Conjugacy classes of pi-subgroups by cyclic extension.  Every
    pi-subgroup V > 1 is <U, x> with U maximal in V and x in V \\ U of prime
    power order, so extending one representative U per class by one
    representative x per N_G(U)-class of pi-elements of prime power order
    reaches every class.  Subgroups are kept as frozensets of element
    indices; a class is stored as the set of all its conjugates.

sylow-overgroup (larger groups)
    Fix p in pi with the largest p-part and a Sylow p-subgroup P.  A
    pi-Hall subgroup H containing P is a union of P-double cosets, hence is
    generated by P and double coset representatives lying in H.  A search
    over <P, d_1, ..., d_k> (never letting the order pass |G|_pi) finds all
    of them; two such H are G-conjugate iff they are N_G(P)-conjugate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .errors import InputError
from .group import PermutationGroup, canonical
from .homomorphism import quotient, quotient_on_cosets
from .perm import pconj, pinv, pmul, porder
from .primes import PrimeSet, factorize, p_part
from .search import (
    _stabilizer_from_schreier,
    normalizer,
    small_generators,
    subgroup_conjugacy_witness,
)
from .sylow import sylow_subgroup

LATTICE_BOUND = 20_000
D_BOUND = 5_000

Verdict = Union[bool, str]
NOT_COMPUTED = "not computed"


@dataclass
class HallClassification:
    group: PermutationGroup
    pi: PrimeSet
    representatives: list[PermutationGroup]
    method: str
    satisfies_D: Verdict = NOT_COMPUTED
    d_details: dict = field(default_factory=dict)

    @property
    def k_pi(self) -> int:
        return len(self.representatives)

    @property
    def satisfies_E(self) -> bool:
        return self.k_pi >= 1

    @property
    def satisfies_C(self) -> bool:
        return self.k_pi == 1

    @property
    def hall_order(self) -> int:
        return self.pi.part(self.group.order())

    def summary(self) -> dict:
        return {
            "pi": list(self.pi.primes),
            "hall_order": self.hall_order,
            "k_pi": self.k_pi,
            "E": self.satisfies_E,
            "C": self.satisfies_C,
            "D": self.satisfies_D,
            "method": self.method,
            "representatives": [_rep_summary(H) for H in self.representatives],
        }


def _rep_summary(H: PermutationGroup) -> dict:
    return {"order": H.order(), "orbit_lengths": sorted(len(o) for o in H._orbits0())}


def _group_key(H: PermutationGroup) -> tuple:
    return tuple(sorted(tuple(x + 1 for x in g) for g in small_generators(H)))


def is_hall_subgroup(G: PermutationGroup, H: PermutationGroup, pi) -> bool:
    pi = PrimeSet.of(pi)
    if H.degree != G.degree or not G.contains_group(H):
        raise InputError("H is not a subgroup of G")
    return pi.is_pi_number(H.order()) and pi.is_coprime_number(G.order() // H.order())


# ---------------------------------------------------------------------------
# full lattice of pi-subgroup classes


class _Elements:
    """Element list of a small group with a reverse index."""

    def __init__(self, G: PermutationGroup):
        self.elems = list(G.elements())
        self.index = {g: i for i, g in enumerate(self.elems)}
        self.orders = [porder(g) for g in self.elems]

    def subset(self, H: PermutationGroup) -> frozenset:
        idx = self.index
        return frozenset(idx[h] for h in H.elements())

    def conj_set(self, S: frozenset, g: tuple) -> frozenset:
        elems, idx = self.elems, self.index
        return frozenset(idx[pconj(elems[i], g)] for i in S)


def _elements(G: PermutationGroup) -> _Elements:
    G = canonical(G)
    got = G._cache.get("element_table")
    if got is None:
        got = _Elements(G)
        G._cache["element_table"] = got
    return got


@dataclass
class _Class:
    rep: PermutationGroup
    key: frozenset
    members: set
    normalizer: PermutationGroup


class _PiLattice:
    def __init__(self, G: PermutationGroup, pi: PrimeSet):
        self.G, self.pi = G, pi
        self.table = _elements(G)
        self.limit = pi.part(G.order())
        self.classes: list[_Class] = []
        self.where: dict[frozenset, int] = {}
        tab = self.table
        self.pi_elements = []
        for i, o in enumerate(tab.orders):
            if o > 1 and len(factorize(o)) == 1 and next(iter(factorize(o))) in pi:
                self.pi_elements.append(i)
        self._run()

    def _add_class(self, U: PermutationGroup, key: frozenset) -> None:
        G, tab = self.G, self.table
        trans = {key: G._chain.ident}
        queue = [key]
        schreier = []
        for S in queue:
            t = trans[S]
            for s in G._gens:
                T = tab.conj_set(S, s)
                ts = pmul(t, s)
                u = trans.get(T)
                if u is None:
                    trans[T] = ts
                    queue.append(T)
                else:
                    schreier.append(pmul(ts, pinv(u)))
        N = _stabilizer_from_schreier(U, schreier, G.order() // len(trans))
        cid = len(self.classes)
        self.classes.append(_Class(U, key, set(trans), N))
        for S in trans:
            self.where[S] = cid

    def _run(self) -> None:
        G, tab, pi = self.G, self.table, self.pi
        one = PermutationGroup(G.degree, [])
        self._add_class(one, tab.subset(one))
        i = 0
        while i < len(self.classes):
            cls = self.classes[i]
            U = cls.rep
            for x in self._orbit_reps(cls.normalizer):
                if x in cls.key:
                    continue
                V = U.closure([tab.elems[x]], max_order=self.limit)
                if V is None or not pi.is_pi_number(V.order()):
                    continue
                key = tab.subset(V)
                if key in self.where:
                    continue
                self._add_class(V, key)
            i += 1

    def _orbit_reps(self, N: PermutationGroup) -> list[int]:
        tab = self.table
        parent = {i: i for i in self.pi_elements}

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        gens = small_generators(N)
        for i in self.pi_elements:
            e = tab.elems[i]
            for s in gens:
                j = tab.index[pconj(e, s)]
                a, b = find(i), find(j)
                if a != b:
                    parent[max(a, b)] = min(a, b)
        return sorted({find(i) for i in self.pi_elements})

    def hall_classes(self) -> list[_Class]:
        return [c for c in self.classes if c.rep.order() == self.limit]


def _lattice(G: PermutationGroup, pi: PrimeSet) -> _PiLattice:
    G = canonical(G)
    key = ("pi_lattice", pi.primes)
    got = G._cache.get(key)
    if got is None:
        got = _PiLattice(G, pi)
        G._cache[key] = got
    return got


def pi_subgroup_classes(G: PermutationGroup, pi) -> list[PermutationGroup]:
    """Representatives of the conjugacy classes of pi-subgroups (small G)."""
    pi = PrimeSet.of(pi)
    if G.order() > LATTICE_BOUND:
        raise InputError(f"pi-subgroup lattice needs |G| <= {LATTICE_BOUND}")
    return [c.rep for c in _lattice(G, pi).classes]


# ---------------------------------------------------------------------------
# Sylow overgroups


def _double_coset_reps(G: PermutationGroup, P: PermutationGroup) -> list[tuple]:
    act = quotient_on_cosets(G, P)
    m = act.target_degree
    pgens = [act.image_of(g) for g in P._gens]
    seen = bytearray(m)
    reps = []
    for c in range(m):
        if seen[c]:
            continue
        seen[c] = 1
        queue = [c]
        for a in queue:
            for s in pgens:
                b = s[a]
                if not seen[b]:
                    seen[b] = 1
                    queue.append(b)
        reps.append(act.reps[c])
    return reps


def _sylow_overgroup_halls(G: PermutationGroup, pi: PrimeSet) -> list[PermutationGroup]:
    limit = pi.part(G.order())
    p = max(pi.primes, key=lambda q: (p_part(G.order(), q), q))
    P = sylow_subgroup(G, p)
    reps = [d for d in _double_coset_reps(G, P) if not P.contains(d)]
    states = [P]
    halls: list[PermutationGroup] = []
    i = 0
    while i < len(states):
        K = states[i]
        i += 1
        if K.order() == limit:
            halls.append(K)
            continue
        for d in reps:
            if K.contains(d):
                continue
            V = K.closure([d], max_order=limit)
            if V is None or not pi.is_pi_number(V.order()):
                continue
            if any(V == W for W in states):
                continue
            states.append(V)
    if not halls:
        return []
    # classes = N_G(P)-orbits on the Hall subgroups through P
    NP = normalizer(G, P)
    parent = list(range(len(halls)))

    def find(a):
        while parent[a] != a:
            a = parent[a]
        return a

    for a, H in enumerate(halls):
        for s in small_generators(NP):
            Hs = H.conjugate(s)
            b = next(j for j, W in enumerate(halls) if W == Hs)
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    classes: dict[int, list[PermutationGroup]] = {}
    for a, H in enumerate(halls):
        classes.setdefault(find(a), []).append(H)
    return [min(members, key=_group_key) for members in classes.values()]


# ---------------------------------------------------------------------------
# classification


def hall_classes(G: PermutationGroup, pi, method: str | None = None) -> HallClassification:
    """One representative for each conjugacy class of pi-Hall subgroups."""
    pi = PrimeSet.of(pi)
    G = canonical(G)
    key = ("hall_classes", pi.primes, method)
    got = G._cache.get(key)
    if got is not None:
        return got
    limit = pi.part(G.order())
    primes_here = [p for p in pi if G.order() % p == 0]
    if method is None:
        if limit == 1 or limit == G.order() or len(primes_here) == 1:
            method = "structural"
        elif G.order() <= LATTICE_BOUND:
            method = "full-lattice"
        else:
            method = "sylow-overgroup"
    if method == "structural":
        if limit == 1:
            reps = [PermutationGroup(G.degree, [])]
        elif limit == G.order():
            reps = [G]
        elif len(primes_here) == 1:
            reps = [sylow_subgroup(G, primes_here[0])]
        else:
            raise InputError("no structural answer for this (G, pi)")
    elif method == "full-lattice":
        if G.order() > LATTICE_BOUND:
            raise InputError(f"full-lattice search needs |G| <= {LATTICE_BOUND}")
        reps = [c.rep for c in _lattice(G, pi).hall_classes()]
    elif method == "sylow-overgroup":
        reps = _sylow_overgroup_halls(G, pi)
    else:
        raise InputError(f"unknown method {method!r}")
    reps.sort(key=_group_key)
    for H in reps:
        assert H.order() == limit and G.contains_group(H)
    out = HallClassification(G, pi, reps, method)
    G._cache[key] = out
    return out


def classify_ECD(G: PermutationGroup, pi, d_bound: int = D_BOUND,
                 force_d: bool = False) -> HallClassification:
    """E/C from hall_classes; D by brute force over the pi-subgroup classes."""
    pi = PrimeSet.of(pi)
    base = hall_classes(G, pi)
    out = HallClassification(G, pi, base.representatives, base.method)
    if G.order() <= d_bound or force_d:
        out.satisfies_D = _decide_D(G, pi, out)
    return out


def _decide_D(G: PermutationGroup, pi: PrimeSet, cls: HallClassification) -> bool:
    if not cls.satisfies_C:
        return False
    H = cls.representatives[0]
    if H.order() == G.order() or H.is_trivial():
        return True
    lat = _lattice(G, pi)
    hkey = _elements(G).subset(H)
    for c in lat.classes:
        if not any(S <= hkey for S in c.members):
            cls.d_details = {"uncovered_order": c.rep.order()}
            return False
    return True


def hall_extension_over_normal(G: PermutationGroup, A: PermutationGroup, pi,
                               M: PermutationGroup) -> PermutationGroup | None:
    """A pi-Hall H of G with H and A meeting in M, or None when the A-class of M is not G-stable.

    With A normal, G/A a pi-group and M pi-Hall in A: if the class is
    G-stable then G = A N_G(M), and a complement to the pi'-group N_A(M)/M in
    N_G(M)/M pulls back to H.
    """
    pi = PrimeSet.of(pi)
    if not G.is_normal_subgroup(A):
        raise InputError("A is not normal in G")
    if not pi.is_pi_number(G.order() // A.order()):
        raise InputError("G/A is not a pi-group")
    if not (A.contains_group(M) and is_hall_subgroup(A, M, pi)):
        raise InputError("M is not a pi-Hall subgroup of A")
    if A.order() == G.order():
        return M
    for s in small_generators(G):
        if subgroup_conjugacy_witness(A, M, M.conjugate(s)) is None:
            return None
    N = normalizer(G, M)
    q = quotient(N, M)
    Q = q.image()
    Hbar = hall_classes(Q, pi).representatives[0]
    H = q.preimage(Hbar)
    assert H.order() == pi.part(G.order())
    return H


def normal_series_dpi(G: PermutationGroup, pi) -> Verdict:
    """True when a chief series has every factor a pi- or pi'-group, else "inconclusive"."""
    from .series import chief_series

    pi = PrimeSet.of(pi)
    n = G.order()
    if pi.is_pi_number(n) or pi.is_coprime_number(n) or G.is_solvable():
        return True
    for f in chief_series(G).factors:
        if not (pi.is_pi_number(f.order) or pi.is_coprime_number(f.order)):
            return "inconclusive"
    return True
