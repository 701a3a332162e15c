"""Claim-by-claim checklists for the two matrix-group examples.

Case 1 is GL_3(2) with its inverse-transpose extension (no {2,3}-Hall
subgroup); case 2 is GL_5(2), whose three parabolic {2,3}-Hall classes
are permuted by the extension, with N(H_1) a Hall subgroup of the extension.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any, Callable

from .catalog import extend_by_inverse_transpose, flag_stabilizer, general_linear_group, gl_order
from .criterion import almost_simple_epi, epi_criterion, lift_hall, obstruction_element
from .errors import InputError
from .group import PermutationGroup
from .hall import hall_classes, hall_extension_over_normal, is_hall_subgroup
from .homomorphism import quotient
from .perm import format_cycles
from .primes import PrimeSet, factorize
from .search import intersection, normalizer, subgroup_conjugacy_witness

PI = PrimeSet((2, 3))

# printed order of GL_5(2) in the reference text; its own factorization disagrees
GL5_PRINTED = 99_999_360

FLAG_DIMS = {"H1": (2, 1, 2), "H2": (1, 2, 2), "H3": (2, 2, 1)}


@dataclass
class Claim:
    key: str
    statement: str
    expected: Any
    observed: Any = None
    passed: bool = False

    def to_dict(self) -> dict:
        return {"key": self.key, "statement": self.statement, "expected": self.expected,
                "observed": self.observed, "status": "PASS" if self.passed else "FAIL"}

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.key}: {self.statement}"


@dataclass
class Reproduction:
    example: int
    claims: list[Claim] = field(default_factory=list)
    notes: list[dict] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.claims)

    def check(self, key: str, statement: str, expected, compute: Callable[[], Any]) -> Claim:
        t0 = time.perf_counter()
        try:
            observed = compute()
        except Exception as exc:  # a crashing claim is a failed claim
            observed = f"error: {type(exc).__name__}: {exc}"
        self.timings[key] = round(time.perf_counter() - t0, 4)
        claim = Claim(key, statement, expected, observed, observed == expected)
        self.claims.append(claim)
        return claim

    def to_dict(self) -> dict:
        return {"example": self.example, "ok": self.ok,
                "claims": [c.to_dict() for c in self.claims], "notes": self.notes}


def _factor_str(n: int) -> str:
    return "*".join(f"{p}^{e}" if e > 1 else str(p) for p, e in sorted(factorize(n).items()))


def _class_index(A: PermutationGroup, reps: list[PermutationGroup], H: PermutationGroup) -> int | None:
    for j, K in enumerate(reps):
        if subgroup_conjugacy_witness(A, K, H) is not None:
            return j
    return None


def example_1() -> Reproduction:
    rep = Reproduction(1)
    G = general_linear_group(3)
    ext = extend_by_inverse_transpose(3)
    Ghat, A, iota = ext.group, ext.gl, ext.iota

    rep.check("gl3.order", "|GL_3(2)| = 168 = 2^3*3*7", [168, "2^3*3*7"],
              lambda: [G.order(), _factor_str(G.order())])
    cls = hall_classes(G, PI)
    rep.check("gl3.classes", "GL_3(2) has exactly two classes of {2,3}-Hall subgroups, both of order 24",
              [2, [24, 24]], lambda: [cls.k_pi, [H.order() for H in cls.representatives]])
    rep.check("gl3.line_stabilizer", "a point (line) stabilizer of GL_3(2) is a {2,3}-Hall subgroup of order 24",
              [24, True], lambda: [G.stabilizer(1).order(), is_hall_subgroup(G, G.stabilizer(1), PI)])

    reps_hat = hall_classes(A, PI).representatives

    def swap():
        first = reps_hat[0].conjugate(iota)
        return [iota.order(), _class_index(A, reps_hat, first)]

    rep.check("iota.swaps", "iota has order 2 and conjugates a class-1 representative into class 2",
              [2, 1], swap)
    rep.check("ghat3.order", "|GL_3(2) x| <iota>| = 336 on 14 points", [336, 14],
              lambda: [Ghat.order(), Ghat.degree])
    rep.check("ghat3.brute_force", "exhaustive lattice search finds no {2,3}-Hall subgroup of the extension",
              [0, "full-lattice"],
              lambda: [hall_classes(Ghat, PI, method="full-lattice").k_pi,
                       hall_classes(Ghat, PI, method="full-lattice").method])

    def crit():
        r = epi_criterion(Ghat, PI)
        layer = next(e for e in r.layers if e.layer == r.witness)
        return [r.overall, r.witness, layer.factor_order, layer.aut_order]

    rep.check("ghat3.criterion", "composition-series criterion: false, failing at the GL_3(2) layer (|Aut| = 336)",
              [False, 1, 168, 336], crit)

    def action():
        res = almost_simple_epi(Ghat, A, PI)
        return [res.verdict, res.k_pi, res.orbit_sizes]

    rep.check("ghat3.class_action", "the extension swaps the two Hall classes of its socle (no fixed class)",
              [False, 2, [2]], action)

    def obstruction():
        ob = obstruction_element(Ghat, A, PI)
        return [ob["element"] == format_cycles(iota._img) if ob else None,
                ob["order"] if ob else None,
                ob["join_order"] if ob else None]

    rep.check("ghat3.obstruction", "the obstruction search returns iota, of order 2, with <iota, S> of order 336",
              [True, 2, 336], obstruction)
    rep.check("ghat3.no_extension", "the first Hall class of GL_3(2) is not stable under the extension",
              None, lambda: hall_extension_over_normal(Ghat, A, PI, reps_hat[0]))
    return rep


def example_2() -> Reproduction:
    rep = Reproduction(2)
    ext = extend_by_inverse_transpose(5)
    Ghat, A, iota = ext.group, ext.gl, ext.iota
    derived = gl_order(5)
    rep.notes.append({
        "quantity": "|GL_5(2)|",
        "reference_value": GL5_PRINTED,
        "derived_value": derived,
        "factorization": _factor_str(derived),
        "resolution": "the printed value disagrees with 2^10*3^2*5*7*31; the derived value is used",
    })
    rep.check("gl5.order", "|GL_5(2)| = 2^10*3^2*5*7*31 = 9999360 (not the printed 99999360)",
              [9_999_360, "2^10*3^2*5*7*31", False],
              lambda: [A.order(), _factor_str(A.order()), A.order() == GL5_PRINTED])

    Hs = {k: flag_stabilizer(5, d, extended=True) for k, d in FLAG_DIMS.items()}

    def hall_flags():
        out = []
        for k in Hs:
            H = Hs[k]
            fresh = PermutationGroup(H.degree, H._gens)  # order recomputed from scratch
            out.append([fresh.order(), A.contains_group(H) and is_hall_subgroup(A, H, PI)])
        return out

    rep.check("flags.hall", "the flag stabilizers of types 2|1|2, 1|2|2, 2|2|1 have order 9216 and are {2,3}-Hall",
              [[9216, True]] * 3, hall_flags)

    def pairwise():
        keys = list(Hs)
        return [subgroup_conjugacy_witness(A, Hs[a], Hs[b]) is not None
                for i, a in enumerate(keys) for b in keys[i + 1:]]

    rep.check("flags.nonconjugate", "the three flag stabilizers are pairwise non-conjugate in GL_5(2)",
              [False, False, False], pairwise)
    rep.check("flags.self_normalizing", "each flag stabilizer is its own normalizer in GL_5(2)",
              [9216, 9216, 9216], lambda: [normalizer(A, H).order() for H in Hs.values()])

    def count():
        cls = hall_classes(A, PI, method="sylow-overgroup")
        reps = cls.representatives
        hit = sorted(_class_index(A, reps, H) for H in Hs.values())
        return [cls.k_pi, cls.method, hit == list(range(len(reps)))]

    rep.check("gl5.classes", "Sylow-overgroup search finds exactly 3 classes, each containing a flag stabilizer",
              [3, "sylow-overgroup", True], count)

    def iota_action():
        keys = list(Hs)
        reps = [Hs[k] for k in keys]
        return {k: keys[_class_index(A, reps, Hs[k].conjugate(iota))] for k in keys}

    rep.check("iota.action", "iota fixes the class of H1 and swaps the classes of H2 and H3",
              {"H1": "H1", "H2": "H3", "H3": "H2"}, iota_action)

    def ext_h1():
        H = hall_extension_over_normal(Ghat, A, PI, Hs["H1"])
        if H is None:
            return None
        return [H.order(), intersection(H, A) == Hs["H1"], H == normalizer(Ghat, Hs["H1"])]

    rep.check("ghat5.extend_H1", "the class of H1 extends: a {2,3}-Hall subgroup of order 18432 meeting GL_5(2) in H1, equal to N(H1)",
              [18432, True, True], ext_h1)
    rep.check("ghat5.extend_H2", "the class of H2 does not extend", [None, None],
              lambda: [hall_extension_over_normal(Ghat, A, PI, Hs["H2"]),
                       hall_extension_over_normal(Ghat, A, PI, Hs["H3"])])

    def none_contains_h2():
        # every Hall subgroup of the extension meets GL_5(2) in a Hall subgroup
        # of GL_5(2), so it contains a conjugate of H2 iff that meet is one
        cls = hall_classes(Ghat, PI)
        keys = list(Hs)
        meets = [keys[_class_index(A, [Hs[k] for k in keys], intersection(H, A))]
                 for H in cls.representatives]
        return [cls.k_pi, meets]

    rep.check("ghat5.no_hall_over_H2", "every {2,3}-Hall subgroup of the extension meets GL_5(2) in the class of H1, so none contains H2",
              [1, ["H1"]], none_contains_h2)

    def crit():
        r = epi_criterion(Ghat, PI)
        return [r.overall, [e.method for e in r.layers]]

    rep.check("ghat5.criterion", "composition-series criterion: the extension has a {2,3}-Hall subgroup",
              [True, ["almost-simple", "abelian layer"]], crit)

    def lifted():
        q = quotient(Ghat, A)
        H = lift_hall(Ghat, A, PI, q.image(), q)
        return [H.order(), is_hall_subgroup(Ghat, H, PI)]

    rep.check("ghat5.lift", "the whole quotient (order 2) lifts to a Hall subgroup of order 18432",
              [18432, True], lifted)
    return rep


EXAMPLES = {1: example_1, 2: example_2}


def reproduce(example: int) -> Reproduction:
    if example not in EXAMPLES:
        raise InputError(f"unknown example {example!r}; expected 1 or 2")
    return EXAMPLES[example]()
