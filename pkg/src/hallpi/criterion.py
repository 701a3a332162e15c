"""Deciding E_pi through the automorphisms induced on composition factors.

For a composition series refining a chief series, G has a pi-Hall subgroup
iff for every non-abelian chief layer the group of automorphisms that G
induces on the first composition factor of that layer has one.  Abelian
layers always pass.  Each induced group is decided by the cheapest
applicable route: pi-separability, brute force, or the action of an almost
simple group on the conjugacy classes of pi-Hall subgroups of its socle.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InputError, ResourceError
from .group import PermutationGroup
from .hall import LATTICE_BOUND, hall_classes, is_hall_subgroup, normal_series_dpi
from .homomorphism import GroupHomomorphism, quotient
from .perm import format_cycles, pmul, porder, psupport
from .primes import PrimeSet, is_power_of
from .search import centralizer, subgroup_conjugacy_witness
from .sections import Section, induced_automorphism_group
from .series import SeriesChain, chief_series, is_simple, refine_to_composition_series

BRUTE_BOUND = LATTICE_BOUND
OBSTRUCTION_ENUM_BOUND = 500_000


@dataclass
class LayerEntry:
    layer: int
    factor_order: int
    abelian: bool
    aut_order: int | None
    verdict: bool
    method: str
    section: dict | None = None

    def to_dict(self) -> dict:
        return {"layer": self.layer, "factor_order": self.factor_order,
                "abelian": self.abelian, "aut_order": self.aut_order,
                "verdict": self.verdict, "method": self.method, "section": self.section}


@dataclass
class CriterionReport:
    group: PermutationGroup
    pi: PrimeSet
    chief: SeriesChain
    series: SeriesChain
    layers: list[LayerEntry]
    overall: bool
    witness: int | None = None
    obstruction: dict | None = None
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "pi": list(self.pi.primes),
            "chief_series": self.chief.to_dict(),
            "composition_series": self.series.to_dict(),
            "layers": [e.to_dict() for e in self.layers],
            "overall": self.overall,
            "witness_layer": self.witness,
            "obstruction": self.obstruction,
        }


@dataclass
class ClassAction:
    """Result of the almost simple test: verdict plus the action on K_pi(S)."""

    verdict: bool
    k_pi: int
    orbit_sizes: list[int]
    generators: list[str]
    reduced: bool = False

    def __bool__(self) -> bool:
        return self.verdict

    def to_dict(self) -> dict:
        return {"verdict": self.verdict, "k_pi": self.k_pi, "orbit_sizes": self.orbit_sizes,
                "generators": self.generators, "reduced": self.reduced}


# ---------------------------------------------------------------------------


def _class_action(G: PermutationGroup, S: PermutationGroup, reps: list[PermutationGroup]) -> GroupHomomorphism:
    """Action of G by conjugation on the S-classes of the subgroups ``reps``."""
    k = len(reps)
    images = []
    for g in G._gens:
        img = []
        for H in reps:
            Hg = H.conjugate(g)
            j = next((j for j, K in enumerate(reps)
                      if subgroup_conjugacy_witness(S, K, Hg) is not None), None)
            if j is None:
                raise AssertionError("conjugate of a Hall subgroup left the list of classes")
            img.append(j)
        images.append(tuple(img))
    return GroupHomomorphism(G, k, images, "abstract generator map")


def _check_almost_simple(G: PermutationGroup, S: PermutationGroup) -> None:
    if not G.is_normal_subgroup(S):
        raise InputError("S is not a normal subgroup of G")
    if S.is_abelian() or not is_simple(S):
        raise InputError("S is not a non-abelian simple group")
    if not centralizer(G, S).is_trivial():
        raise InputError("C_G(S) is not trivial")


def almost_simple_epi(G: PermutationGroup, S: PermutationGroup, pi) -> ClassAction:
    """E_pi for an almost simple G with socle S, through its action on K_pi(S)."""
    pi = PrimeSet.of(pi)
    _check_almost_simple(G, S)
    hs = hall_classes(S, pi)
    if not hs.satisfies_E:
        raise InputError("S has no pi-Hall subgroup")
    reps = hs.representatives
    outer = G.order() // S.order()
    if pi.is_pi_number(outer):
        return _fixed_class(G, S, reps, reduced=False)
    # G has a pi-Hall subgroup iff the preimage of some pi-Hall subgroup of G/S does
    q = quotient(G, S)
    qs = hall_classes(q.image(), pi)
    best = None
    for Hbar in qs.representatives:
        res = _fixed_class(q.preimage(Hbar), S, reps, reduced=True)
        if res.verdict:
            return res
        best = best or res
    if best is None:
        return ClassAction(False, len(reps), [], [], reduced=True)
    return best


def _fixed_class(G: PermutationGroup, S: PermutationGroup, reps, reduced: bool) -> ClassAction:
    act = _class_action(G, S, reps)
    img = act.image()
    orbits = sorted(len(o) for o in img._orbits0()) if len(reps) > 1 else [1]
    gens = [format_cycles(t) for t in act.images]
    return ClassAction(1 in orbits, len(reps), orbits, gens, reduced)


def obstruction_element(G: PermutationGroup, S: PermutationGroup, pi) -> dict | None:
    """An x of 2- or 3-power order with <x, S> lacking pi-Hall subgroups.

    Search order: 2-elements before 3-elements, then by order, then by
    support size, then by image sequence.
    """
    pi = PrimeSet.of(pi)
    if 2 not in pi or 3 not in pi:
        raise InputError("the obstruction search needs 2 and 3 in pi")
    res = almost_simple_epi(G, S, pi)
    if res.verdict:
        return None
    reps = hall_classes(S, pi).representatives
    act = _class_action(G, S, reps)
    if G.order() > OBSTRUCTION_ENUM_BOUND:
        raise ResourceError(f"obstruction search enumerates at most {OBSTRUCTION_ENUM_BOUND} elements")
    best = None
    for x in G.elements():
        if S.contains(x):
            continue
        o = porder(x)
        if is_power_of(o, 2):
            cat = 0
        elif is_power_of(o, 3):
            cat = 1
        else:
            continue
        perm = act.image_of(x)
        if any(perm[i] == i for i in range(len(perm))):
            continue
        key = (cat, o, psupport(x), x)
        if best is None or key < best:
            best = key
    if best is None:
        return None
    x = best[3]
    return {"element": format_cycles(x), "order": best[1],
            "class_action": format_cycles(act.image_of(x)),
            "join_order": S.order() * _coset_order(S, x)}


def _coset_order(S: PermutationGroup, x: tuple) -> int:
    """Order of xS in N_G(S)/S."""
    y, k = x, 1
    while not S.contains(y):
        y = pmul(y, x)
        k += 1
    return k


# ---------------------------------------------------------------------------


def decide_epi(R: PermutationGroup, pi: PrimeSet, socle: PermutationGroup | None = None) -> tuple[bool, str, dict]:
    """E_pi of an induced automorphism group R; returns (verdict, method, extra)."""
    if normal_series_dpi(R, pi) is True:
        return True, "pi-separable", {}
    if socle is not None:
        hs = hall_classes(socle, pi)
        if not hs.satisfies_E:
            return False, "socle-not-E", {"socle_k_pi": 0}
    if R.order() <= BRUTE_BOUND:
        return hall_classes(R, pi).satisfies_E, "brute-force", {}
    if socle is not None:
        try:
            _check_almost_simple(R, socle)
        except InputError:
            pass
        else:
            res = almost_simple_epi(R, socle, pi)
            return res.verdict, "almost-simple", {"class_action": res.to_dict()}
    raise ResourceError("induced automorphism group undecided: not pi-separable, "
                        "too large for brute force and not almost simple")


def epi_criterion(G: PermutationGroup, pi) -> CriterionReport:
    """Decide E_pi(G) layer by layer along a chief series."""
    pi = PrimeSet.of(pi)
    chief = chief_series(G)
    comp = refine_to_composition_series(chief)
    entries = []
    for f in chief.factors:
        if f.abelian:
            entries.append(LayerEntry(f.layer, f.order, True, None, True, "abelian layer"))
            continue
        lo_idx, _ = comp.layer_bounds(f.layer)
        B = comp.terms[lo_idx]
        A = comp.terms[lo_idx + 1]
        try:
            aut = induced_automorphism_group(G, Section(G, A, B))
            R = aut.realization
            socle = aut.epimorphism.image_of_subgroup(A)
            socle = PermutationGroup(socle.degree, socle._gens, order=A.order() // B.order())
            verdict, method, extra = decide_epi(R, pi, socle)
        except ResourceError as exc:
            raise ResourceError(f"chief layer {f.layer} (factor order {f.order}): {exc}") from None
        sec = aut.summary()
        sec.update(extra)
        entries.append(LayerEntry(f.layer, f.order, False, aut.order(), verdict, method, sec))
    overall = all(e.verdict for e in entries)
    witness = None if overall else next(e.layer for e in entries if not e.verdict)
    return CriterionReport(G, pi, chief, comp, entries, overall, witness)


def failing_layer_section(report: CriterionReport) -> tuple[PermutationGroup, PermutationGroup]:
    """(Aut_G of the failing factor, its socle) for the witness layer."""
    if report.witness is None:
        raise InputError("the criterion did not fail")
    G = report.group
    lo_idx, _ = report.series.layer_bounds(report.witness)
    B = report.series.terms[lo_idx]
    A = report.series.terms[lo_idx + 1]
    aut = induced_automorphism_group(G, Section(G, A, B))
    socle = aut.epimorphism.image_of_subgroup(A)
    return aut.realization, PermutationGroup(socle.degree, socle._gens, order=A.order() // B.order())


# ---------------------------------------------------------------------------


def lift_hall(G: PermutationGroup, A: PermutationGroup, pi, Mbar: PermutationGroup,
              q: GroupHomomorphism | None = None) -> PermutationGroup:
    """A pi-Hall subgroup of G mapping onto the pi-Hall subgroup Mbar of G/A."""
    pi = PrimeSet.of(pi)
    if not G.is_normal_subgroup(A):
        raise InputError("A is not normal in G")
    if q is None:
        q = quotient(G, A)
    Q = q.image()
    if not (Mbar.degree == Q.degree and Q.contains_group(Mbar) and is_hall_subgroup(Q, Mbar, pi)):
        raise InputError("Mbar is not a pi-Hall subgroup of G/A")
    if not epi_criterion(G, pi).overall:
        raise InputError("G has no pi-Hall subgroup")
    M = q.preimage(Mbar)
    if not epi_criterion(M, pi).overall:
        raise AssertionError("the preimage of a Hall subgroup failed the criterion")
    H = hall_classes(M, pi).representatives[0]
    assert is_hall_subgroup(G, H, pi)
    return H


def subdirect_product(G1: PermutationGroup, G2: PermutationGroup, q1: GroupHomomorphism,
                      q2: GroupHomomorphism, correspondence: GroupHomomorphism | None = None) -> PermutationGroup:
    """Fiber product of q1 and q2 on the disjoint union of the two domains.

    ``correspondence`` identifies the image of q1 with the image of q2;
    without it the two images must be the same permutation group.
    """
    if q1.source is not G1 and q1.source != G1:
        raise InputError("q1 must be defined on G1")
    if q2.source is not G2 and q2.source != G2:
        raise InputError("q2 must be defined on G2")
    Q1, Q2 = q1.image(), q2.image()
    if correspondence is None:
        if Q1.degree != Q2.degree or Q1 != Q2:
            raise InputError("quotient images differ and no correspondence was given")
        to2 = lambda y: y
    else:
        c = correspondence
        if c.source != Q1 or c.image() != Q2 or not c.kernel().is_trivial():
            raise InputError("the correspondence is not an isomorphism between the quotients")
        to2 = c.image_of
    n1, n2 = G1.degree, G2.degree
    shift = lambda b: tuple(n1 + x for x in b)
    gens = []
    for a in G1._gens:
        b = q2.lift(to2(q1.image_of(a)))
        gens.append(a + shift(b))
    K2 = q2.kernel()
    for k in K2._gens:
        gens.append(tuple(range(n1)) + shift(k))
    return PermutationGroup(n1 + n2, gens, order=G1.order() * K2.order())

