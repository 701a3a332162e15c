"""Corpus of small groups and the property suite run over it.

Every property compares a library answer with an independent one, usually
the exhaustive pi-subgroup lattice search.  Properties:

criterion-vs-search    layer criterion verdict equals brute-force existence
hall-meets-normal      H meet A is Hall in A, HA/A is Hall in G/A
dominance-extension    D(G) iff D(A) and D(G/A)
subdirect-closure      fiber products of E-groups are E-groups
quotient-closure       quotients of E-groups are E-groups
quotient-lifting       every Hall subgroup of G/A lifts to one of G
section-transport      induced automorphisms survive factoring out a direct factor
separable-dominance    a pi-separable chief series certifies D
class-stability        Hall extension over A iff the A-class is G-stable
obstruction-shape      class action agrees with brute force; obstruction orders
simple-class-count     k_pi of a simple group lies in {1, 2, 3, 4, 9}
odd-pi-conjugacy       2 not in pi and E for a simple group forces C
composition-factors    composition factors do not depend on the chief series
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable

from .catalog import (
    alternating_group,
    cyclic_group,
    dihedral_group,
    direct_product,
    extend_by_inverse_transpose,
    general_linear_group,
    symmetric_group,
)
from .criterion import almost_simple_epi, epi_criterion, lift_hall, obstruction_element, subdirect_product
from .errors import InputError
from .group import PermutationGroup
from .hall import classify_ECD, hall_classes, hall_extension_over_normal, is_hall_subgroup, normal_series_dpi
from .homomorphism import quotient, quotient_on_cosets
from .primes import PrimeSet, is_power_of
from .search import centralizer, intersection, subgroup_conjugacy_witness
from .sections import Section, section_transport
from .series import chief_series, composition_series, is_simple, minimal_normal_subgroups

DEFAULT_MAX_ORDER = 2000
DEFAULT_PI_MENU = ("2,3", "2,5", "3,5", "2,7", "3,7", "2,3,5", "5,7")
FIBER_COUNT = 100
FIBER_ORDER_BOUND = 5000
FIBER_SEED = 20240

PROPERTIES = (
    "criterion-vs-search",
    "hall-meets-normal",
    "dominance-extension",
    "subdirect-closure",
    "quotient-closure",
    "quotient-lifting",
    "section-transport",
    "separable-dominance",
    "class-stability",
    "obstruction-shape",
    "simple-class-count",
    "odd-pi-conjugacy",
    "composition-factors",
)


@dataclass
class CorpusGroup:
    name: str
    group: PermutationGroup
    factors: tuple[PermutationGroup, PermutationGroup] | None = None  # (M, N) with G = M x N


def _embedded_factors(G1: PermutationGroup, G2: PermutationGroup) -> tuple:
    P = direct_product(G1, G2)
    n1 = G1.degree
    M = PermutationGroup(P.degree, P._gens[:len(G1._gens)], order=G1.order())
    N = PermutationGroup(P.degree, P._gens[len(G1._gens):], order=G2.order())
    return P, (M, N)


def _index_normal(G: PermutationGroup, p: int) -> PermutationGroup:
    for A in normal_subgroups(G):
        if A.order() * p == G.order():
            return A
    raise InputError(f"no normal subgroup of index {p}")


def fiber_over_prime(G1: PermutationGroup, G2: PermutationGroup, p: int) -> PermutationGroup:
    """Fiber product of G1 and G2 over a common cyclic quotient of order p (p = 1: direct)."""
    if p == 1:
        return direct_product(G1, G2)
    q1 = quotient_on_cosets(G1, _index_normal(G1, p))
    q2 = quotient_on_cosets(G2, _index_normal(G2, p))
    return subdirect_product(G1, G2, q1, q2)


def _product(name, G1, G2) -> CorpusGroup:
    P, f = _embedded_factors(G1, G2)
    return CorpusGroup(name, P, f)


@lru_cache(maxsize=None)
def _all_groups() -> tuple[CorpusGroup, ...]:
    out = [CorpusGroup(f"sym:{n}", symmetric_group(n)) for n in range(2, 7)]
    out += [CorpusGroup(f"alt:{n}", alternating_group(n)) for n in range(3, 7)]
    out += [CorpusGroup(f"cyclic:{n}", cyclic_group(n)) for n in (4, 6, 12, 30)]
    out += [CorpusGroup(f"dihedral:{n}", dihedral_group(n)) for n in (4, 5, 6, 10)]
    out.append(CorpusGroup("gl2:3", general_linear_group(3)))
    out.append(CorpusGroup("ghat:3", extend_by_inverse_transpose(3).group))
    S3, S4, S5 = symmetric_group(3), symmetric_group(4), symmetric_group(5)
    out.append(_product("gl2:3 x cyclic:2", general_linear_group(3), cyclic_group(2)))
    out.append(_product("sym:3 x cyclic:5", S3, cyclic_group(5)))
    out.append(_product("alt:5 x cyclic:2", alternating_group(5), cyclic_group(2)))
    out.append(_product("alt:4 x cyclic:3", alternating_group(4), cyclic_group(3)))
    out.append(_product("sym:3 x sym:3", S3, symmetric_group(3)))
    out.append(_product("sym:4 x cyclic:3", S4, cyclic_group(3)))
    out.append(CorpusGroup("sym:4 x_2 sym:4", fiber_over_prime(S4, symmetric_group(4), 2)))
    out.append(CorpusGroup("sym:3 x_2 sym:4", fiber_over_prime(S3, S4, 2)))
    out.append(CorpusGroup("alt:4 x_3 alt:4", fiber_over_prime(alternating_group(4), alternating_group(4), 3)))
    out.append(CorpusGroup("sym:5 x_2 sym:3", fiber_over_prime(S5, S3, 2)))
    out.append(CorpusGroup("dihedral:5 x_2 sym:3", fiber_over_prime(dihedral_group(5), S3, 2)))
    return tuple(out)


def corpus_groups(max_order: int = DEFAULT_MAX_ORDER) -> list[CorpusGroup]:
    return [c for c in _all_groups() if c.group.order() <= max_order]


def parse_pi_menu(text: str) -> list[PrimeSet]:
    if not text.strip():
        raise InputError("empty pi menu")
    sets = [s.strip() for s in text.split(";")]
    if not all(sets):
        raise InputError(f"empty entry in pi menu {text!r}")
    return [PrimeSet.parse(s) for s in sets]


# ---------------------------------------------------------------------------
# helpers


def normal_subgroups(G: PermutationGroup) -> list[PermutationGroup]:
    """Proper non-trivial normal subgroups met in the computed series of G."""
    got = G._cache.get("corpus_normals")
    if got is not None:
        return got
    cands: list[PermutationGroup] = []
    if not G.is_trivial():
        cands += chief_series(G).terms
        cands += G.derived_series()
        cands += minimal_normal_subgroups(G)
    out: list[PermutationGroup] = []
    for A in cands:
        if 1 < A.order() < G.order() and not any(A == B for B in out):
            out.append(A)
    out.sort(key=lambda A: A.order())
    G._cache["corpus_normals"] = out
    return out


def brute_k(G: PermutationGroup, pi: PrimeSet) -> int:
    """k_pi by exhaustive search; trivially 1 when G or 1 is the Hall subgroup."""
    part = pi.part(G.order())
    if part == 1 or part == G.order():
        return 1
    return hall_classes(G, pi, method="full-lattice").k_pi


def _almost_simple_socle(G: PermutationGroup) -> PermutationGroup | None:
    if G.is_trivial() or G.is_solvable():
        return None
    mins = minimal_normal_subgroups(G)
    if len(mins) != 1:
        return None
    S = mins[0]
    if S.is_abelian() or not is_simple(S) or not centralizer(G, S).is_trivial():
        return None
    return S


# ---------------------------------------------------------------------------
# the run


@dataclass
class Check:
    group: str
    pi: str
    prop: str
    ok: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {"group": self.group, "pi": self.pi, "property": self.prop,
                "ok": self.ok, "detail": self.detail}


@dataclass
class CorpusRun:
    checks: list[Check] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)
    groups: list[dict] = field(default_factory=list)
    menu: list[str] = field(default_factory=list)

    def add(self, group: str, pi, prop: str, ok: bool, detail: str = "") -> None:
        self.checks.append(Check(group, str(pi), prop, bool(ok), detail))

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    @property
    def ok(self) -> bool:
        return not self.failures

    def table(self) -> dict[str, tuple[int, int]]:
        out: dict[str, list[int]] = {}
        for c in self.checks:
            row = out.setdefault(c.prop, [0, 0])
            row[0] += 1
            row[1] += c.ok
        return {k: (v[0], v[1]) for k, v in out.items()}

    def to_dict(self) -> dict:
        return {"groups": self.groups, "pi_menu": self.menu,
                "summary": {k: {"run": r, "passed": p} for k, (r, p) in self.table().items()},
                "failures": [c.to_dict() for c in self.failures], "ok": self.ok}


def run_corpus(max_order: int = DEFAULT_MAX_ORDER, pi_menu: Iterable = DEFAULT_PI_MENU,
               properties: Iterable[str] | None = None, fiber_count: int = FIBER_COUNT) -> CorpusRun:
    menu = [PrimeSet.of(p) for p in pi_menu]
    props = list(PROPERTIES if properties is None else properties)
    bad = [p for p in props if p not in PROPERTIES]
    if bad:
        raise InputError(f"unknown properties {bad}")
    groups = corpus_groups(max_order)
    run = CorpusRun(groups=[{"name": c.name, "order": c.group.order()} for c in groups],
                    menu=[p.tag() for p in menu])
    for prop in props:
        t0 = time.perf_counter()
        fn = _SUITES[prop]
        if prop == "subdirect-closure":
            fn(run, groups, menu, fiber_count)
        else:
            fn(run, groups, menu)
        run.timings[prop] = round(time.perf_counter() - t0, 3)
    return run


def _criterion_vs_search(run, groups, menu):
    for c in groups:
        for pi in menu:
            report = epi_criterion(c.group, pi)
            k = brute_k(c.group, pi)
            ok = report.overall == (k >= 1)
            if report.overall is False:
                layer = next(e for e in report.layers if e.layer == report.witness)
                ok = ok and layer.verdict is False
            run.add(c.name, pi, "criterion-vs-search", ok, f"criterion={report.overall} k={k}")


def _hall_meets_normal(run, groups, menu):
    for c in groups:
        G = c.group
        for pi in menu:
            if brute_k(G, pi) == 0:
                continue
            for H in hall_classes(G, pi).representatives:
                for A in normal_subgroups(G):
                    meet = intersection(H, A)
                    q = quotient(G, A)
                    img = q.image_of_subgroup(H)
                    ok = is_hall_subgroup(A, meet, pi) and is_hall_subgroup(q.image(), img, pi) \
                        and img.order() * meet.order() == H.order()
                    run.add(c.name, pi, "hall-meets-normal", ok,
                            f"|A|={A.order()} |H^A|={meet.order()} |HA/A|={img.order()}")


def _d(G: PermutationGroup, pi: PrimeSet) -> bool:
    return classify_ECD(G, pi, force_d=True).satisfies_D is True


def _dominance_extension(run, groups, menu):
    for c in groups:
        G = c.group
        if G.order() > 5000:
            continue
        for pi in menu:
            dg = _d(G, pi)
            for A in normal_subgroups(G):
                da = _d(A, pi)
                dq = _d(quotient(G, A).image(), pi)
                run.add(c.name, pi, "dominance-extension", dg == (da and dq),
                        f"|A|={A.order()} D(G)={dg} D(A)={da} D(G/A)={dq}")


def fiber_candidates(groups, menu) -> list[tuple]:
    """(pi, name1, name2, p) with both groups E_pi and a common quotient of order p."""
    out = []
    for pi in menu:
        epi = [c for c in groups if brute_k(c.group, pi) >= 1]
        for i, a in enumerate(epi):
            for b in epi[i:]:
                for p in (1, 2, 3):
                    order = a.group.order() * b.group.order() // p
                    if order > FIBER_ORDER_BOUND:
                        continue
                    if p > 1 and not (_has_index(a.group, p) and _has_index(b.group, p)):
                        continue
                    out.append((pi, a, b, p))
    return out


def _has_index(G: PermutationGroup, p: int) -> bool:
    return any(A.order() * p == G.order() for A in normal_subgroups(G))


def _subdirect_closure(run, groups, menu, count):
    cands = fiber_candidates(groups, menu)
    rng = random.Random(FIBER_SEED)
    picks = cands if len(cands) <= count else rng.sample(cands, count)
    for pi, a, b, p in picks:
        F = fiber_over_prime(a.group, b.group, p)
        size_ok = F.order() * p == a.group.order() * b.group.order()
        verdict = epi_criterion(F, pi).overall
        run.add(f"{a.name} x_{p} {b.name}", pi, "subdirect-closure", size_ok and verdict,
                f"|F|={F.order()} criterion={verdict}")


def _quotient_closure(run, groups, menu):
    for c in groups:
        for pi in menu:
            if brute_k(c.group, pi) == 0:
                continue
            for A in normal_subgroups(c.group):
                Q = quotient(c.group, A).image()
                run.add(c.name, pi, "quotient-closure", brute_k(Q, pi) >= 1, f"|A|={A.order()}")


def _quotient_lifting(run, groups, menu):
    for c in groups:
        G = c.group
        for pi in menu:
            if brute_k(G, pi) == 0:
                continue
            for A in normal_subgroups(G):
                q = quotient(G, A)
                for Mbar in hall_classes(q.image(), pi).representatives:
                    H = lift_hall(G, A, pi, Mbar, q)
                    ok = is_hall_subgroup(G, H, pi) and q.image_of_subgroup(H) == Mbar
                    run.add(c.name, pi, "quotient-lifting", ok, f"|A|={A.order()} |H|={H.order()}")


def _section_transport(run, groups, menu):
    for c in groups:
        if c.factors is None:
            continue
        G = c.group
        for M, N in (c.factors, c.factors[::-1]):
            if M.is_trivial():
                continue
            terms = composition_series(M).terms
            for B, A in zip(terms, terms[1:]):
                rep = section_transport(G, M, N, Section(G, A, B))
                run.add(c.name, "-", "section-transport", rep["holds"],
                        f"|A|={A.order()} |B|={B.order()} aut={rep['aut_G']}/{rep['aut_quotient']}")


def _separable_dominance(run, groups, menu):
    for c in groups:
        for pi in menu:
            v = normal_series_dpi(c.group, pi)
            if v is True:
                ok = _d(c.group, pi)
            else:
                ok = v == "inconclusive"
            run.add(c.name, pi, "separable-dominance", ok, f"verdict={v}")


def _class_stability(run, groups, menu):
    for c in groups:
        G = c.group
        for pi in menu:
            for A in normal_subgroups(G) + [G]:
                if not pi.is_pi_number(G.order() // A.order()) or brute_k(A, pi) == 0:
                    continue
                any_stable = False
                for M in hall_classes(A, pi).representatives:
                    stable = all(subgroup_conjugacy_witness(A, M, M.conjugate(s)) is not None
                                 for s in G._gens)
                    H = hall_extension_over_normal(G, A, pi, M)
                    ok = (H is not None) == stable
                    if H is not None:
                        ok = ok and is_hall_subgroup(G, H, pi) and intersection(H, A) == M
                    any_stable = any_stable or stable
                    run.add(c.name, pi, "class-stability", ok, f"|A|={A.order()} stable={stable}")
                run.add(c.name, pi, "class-stability", any_stable == (brute_k(G, pi) >= 1),
                        f"|A|={A.order()} some class stable={any_stable}")


def _obstruction_shape(run, groups, menu):
    for c in groups:
        G = c.group
        S = _almost_simple_socle(G)
        if S is None:
            continue
        for pi in menu:
            if brute_k(S, pi) == 0:
                continue
            res = almost_simple_epi(G, S, pi)
            run.add(c.name, pi, "obstruction-shape", res.verdict == (brute_k(G, pi) >= 1),
                    f"class action orbits={res.orbit_sizes}")
            if res.verdict or 2 not in pi or 3 not in pi:
                continue
            ob = obstruction_element(G, S, pi)
            if ob is None:
                run.add(c.name, pi, "obstruction-shape", False, "no obstruction element found")
                continue
            idx = ob["join_order"] // S.order()
            o = ob["order"]
            x = _element_of(G, ob["element"])
            J = S.closure([x])
            ok = (is_power_of(o, 2) or is_power_of(o, 3)) and (is_power_of(idx, 2) or is_power_of(idx, 3)) \
                and J.order() == ob["join_order"] and brute_k(J, pi) == 0
            if res.k_pi == 2:
                ok = ok and is_power_of(o, 2)
            run.add(c.name, pi, "obstruction-shape", ok, f"x={ob['element']} order={o}")


def _element_of(G: PermutationGroup, cycles: str) -> tuple:
    from .perm import Permutation, parse_cycles

    return Permutation.from_cycles(G.degree, parse_cycles(cycles))._img


def _simple_groups(groups):
    return [c for c in groups if not c.group.is_abelian() and is_simple(c.group)]


def _simple_class_count(run, groups, menu):
    for c in _simple_groups(groups):
        for pi in menu:
            k = brute_k(c.group, pi)
            if k >= 1:
                run.add(c.name, pi, "simple-class-count", k in (1, 2, 3, 4, 9), f"k={k}")


def _odd_pi_conjugacy(run, groups, menu):
    for c in _simple_groups(groups):
        for pi in menu:
            if 2 in pi:
                continue
            k = brute_k(c.group, pi)
            if k >= 1:
                run.add(c.name, pi, "odd-pi-conjugacy", k == 1, f"k={k}")


def _composition_factors(run, groups, menu):
    for c in groups:
        if c.group.is_trivial():
            continue
        ref = sorted(f.order for f in composition_series(c.group).factors)
        for seed in (1, 2):
            got = sorted(f.order for f in composition_series(c.group, seed=seed).factors)
            run.add(c.name, "-", "composition-factors", got == ref, f"seed={seed}")


_SUITES: dict[str, Callable] = {
    "criterion-vs-search": _criterion_vs_search,
    "hall-meets-normal": _hall_meets_normal,
    "dominance-extension": _dominance_extension,
    "subdirect-closure": _subdirect_closure,
    "quotient-closure": _quotient_closure,
    "quotient-lifting": _quotient_lifting,
    "section-transport": _section_transport,
    "separable-dominance": _separable_dominance,
    "class-stability": _class_stability,
    "obstruction-shape": _obstruction_shape,
    "simple-class-count": _simple_class_count,
    "odd-pi-conjugacy": _odd_pi_conjugacy,
    "composition-factors": _composition_factors,
}
