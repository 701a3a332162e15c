"""Permutation groups carried by a base and strong generating set.

The stabilizer chain is built by Schreier-Sims.  When the order of the
group is known in advance (subgroups transported from a parent, rebasing,
Schreier generators of a stabilizer of known index) a seeded randomized
variant is used; it stops exactly when the product of the basic orbit
lengths reaches the known order, which certifies the chain.
"""

from __future__ import annotations

import itertools
import random
import weakref
from math import prod
from typing import Iterable, Iterator, Sequence

from .errors import InputError
from .perm import (
    Permutation,
    as_tuple,
    first_moved,
    is_identity,
    pconj,
    pidentity,
    pinv,
    pmul,
    porder,
)

DEFAULT_SEED = 20100917


class _Level:
    __slots__ = ("point", "gens", "trans", "_inv", "ident")

    def __init__(self, point: int, gens: list, ident: tuple):
        self.point = point
        self.gens = gens
        self.ident = ident
        self.recompute()

    def recompute(self) -> None:
        trans = {self.point: self.ident}
        queue = [self.point]
        gens = self.gens
        for beta in queue:
            u = trans[beta]
            for s in gens:
                gamma = s[beta]
                if gamma not in trans:
                    trans[gamma] = pmul(u, s)
                    queue.append(gamma)
        self.trans = trans
        self._inv = {}

    def inverse(self, beta: int) -> tuple:
        v = self._inv.get(beta)
        if v is None:
            v = pinv(self.trans[beta])
            self._inv[beta] = v
        return v

    def copy(self) -> "_Level":
        new = object.__new__(_Level)
        new.point = self.point
        new.gens = list(self.gens)
        new.ident = self.ident
        new.trans = dict(self.trans)
        new._inv = dict(self._inv)
        return new


class OrderExceeded(Exception):
    """Internal signal: a closure grew beyond the permitted order."""


class _Chain:
    """Mutable stabilizer chain used while a group is being built."""

    def __init__(self, degree: int, levels: list[_Level] | None = None):
        self.n = degree
        self.ident = pidentity(degree)
        self.levels = levels if levels is not None else []

    def copy(self) -> "_Chain":
        return _Chain(self.n, [lev.copy() for lev in self.levels])

    def order(self) -> int:
        return prod(len(lev.trans) for lev in self.levels)

    def sift(self, g: tuple, start: int = 0) -> tuple[tuple, int]:
        levels = self.levels
        for idx in range(start, len(levels)):
            lev = levels[idx]
            beta = g[lev.point]
            if beta == lev.point:
                continue
            if beta not in lev.trans:
                return g, idx
            g = pmul(g, lev.inverse(beta))
        return g, len(levels)

    def contains(self, g: tuple) -> bool:
        h, _ = self.sift(g)
        return h == self.ident

    def _add(self, h: tuple, lo: int, hi: int) -> None:
        """Insert the residue h as a strong generator on levels lo..hi."""
        if hi == len(self.levels):
            self.levels.append(_Level(first_moved(h), [], self.ident))
        for idx in range(lo, hi + 1):
            lev = self.levels[idx]
            lev.gens.append(h)
            lev.recompute()

    def schreier_sims(self, start: int, max_order: int | None = None) -> None:
        i = start
        while i >= 0:
            lev = self.levels[i]
            added = False
            for beta in list(lev.trans):
                ub = lev.trans[beta]
                for s in list(lev.gens):
                    sch = pmul(pmul(ub, s), lev.inverse(s[beta]))
                    if sch == self.ident:
                        continue
                    h, j = self.sift(sch, i + 1)
                    if h != self.ident:
                        self._add(h, i + 1, j)
                        if max_order is not None and self.order() > max_order:
                            raise OrderExceeded
                        i = j
                        added = True
                        break
                if added:
                    break
            if not added:
                i -= 1

    def extend(self, g: tuple, max_order: int | None = None) -> bool:
        """Add g to the group; returns False when g was already a member."""
        h, j = self.sift(g)
        if h == self.ident:
            return False
        self._add(h, 0, j)
        if max_order is not None and self.order() > max_order:
            raise OrderExceeded
        self.schreier_sims(j, max_order)
        return True

    def random_fill(self, sample, target: int) -> None:
        """Randomized Schreier-Sims for a group of known order."""
        guard = 0
        while self.order() < target:
            g = sample()
            h, j = self.sift(g)
            if h != self.ident:
                self._add(h, 0, j)
                guard = 0
            else:
                guard += 1
                if guard > 4000:
                    raise RuntimeError("random Schreier-Sims stalled; order hint is wrong")
        if self.order() != target:
            raise RuntimeError("order hint is smaller than the generated group")


def build_chain(degree: int, gens: Sequence[tuple], base: Sequence[int] = (),
                order: int | None = None, sample=None, seed: int = DEFAULT_SEED) -> _Chain:
    chain = _Chain(degree)
    ident = chain.ident
    base = list(base)
    for idx, b in enumerate(base):
        fixed = base[:idx]
        level_gens = [g for g in gens if all(g[x] == x for x in fixed)]
        chain.levels.append(_Level(b, level_gens, ident))
    if order is not None:
        if sample is None:
            sample = ProductReplacer(gens, degree, seed).next
        chain.random_fill(sample, order)
        return chain
    # deterministic base rule: first moved point of the first generator that
    # fixes every base point chosen so far
    for g in gens:
        if all(g[b] == b for b in base):
            b = first_moved(g)
            if b is None:
                continue
            base.append(b)
            fixed = base[:-1]
            chain.levels.append(_Level(b, [h for h in gens if all(h[x] == x for x in fixed)], ident))
    if chain.levels:
        chain.schreier_sims(len(chain.levels) - 1)
    return chain


class ProductReplacer:
    """Seeded product-replacement generator of pseudo-random group elements."""

    def __init__(self, gens: Sequence[tuple], degree: int, seed: int = DEFAULT_SEED):
        self.rng = random.Random(seed)
        gens = [g for g in gens if not is_identity(g)]
        if not gens:
            gens = [pidentity(degree)]
        k = max(10, len(gens))
        self.state = [gens[i % len(gens)] for i in range(k)]
        self.acc = pidentity(degree)
        for _ in range(40):
            self.next()

    def next(self) -> tuple:
        st, rng = self.state, self.rng
        i, j = rng.sample(range(len(st)), 2)
        if rng.random() < 0.5:
            st[i] = pmul(st[i], st[j])
        else:
            st[i] = pmul(st[j], st[i])
        self.acc = pmul(self.acc, st[i])
        return self.acc


def _dedupe(gens: Iterable[tuple]) -> tuple:
    out = []
    seen = set()
    for g in gens:
        if g in seen or is_identity(g):
            continue
        seen.add(g)
        out.append(g)
    return tuple(out)


class PermutationGroup:
    """A subgroup of Sym(degree) given by generators and a verified BSGS.

    Groups are immutable; ``_cache`` only memoizes derived data.
    """

    def __init__(self, degree: int, generators: Iterable = (), *,
                 base: Sequence[int] = (), order: int | None = None,
                 _chain: _Chain | None = None, _sample=None):
        if degree < 1:
            raise InputError("degree must be positive")
        self.degree = degree
        self._gens = _dedupe(as_tuple(g, degree) for g in generators)
        self._cache: dict = {}
        if _chain is None:
            _chain = build_chain(degree, self._gens, base, order, _sample)
        self._chain = _chain
        self._order = _chain.order()

    # -- basic data -----------------------------------------------------

    @property
    def generators(self) -> list[Permutation]:
        return [Permutation.from_tuple(g) for g in self._gens]

    @property
    def base(self) -> list[int]:
        return [lev.point + 1 for lev in self._chain.levels]

    @property
    def strong_generators(self) -> list[Permutation]:
        seen = []
        for lev in self._chain.levels:
            for g in lev.gens:
                if g not in seen:
                    seen.append(g)
        return [Permutation.from_tuple(g) for g in seen]

    def basic_orbit_lengths(self) -> list[int]:
        return [len(lev.trans) for lev in self._chain.levels]

    def order(self) -> int:
        return self._order

    def is_trivial(self) -> bool:
        return self._order == 1

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def __len__(self) -> int:  # pragma: no cover - convenience only
        return self._order

    def __repr__(self) -> str:
        return f"<PermutationGroup degree={self.degree} order={self._order}>"

    # -- membership and comparison --------------------------------------

    def contains(self, g) -> bool:
        return self._chain.contains(as_tuple(g, self.degree))

    __contains__ = contains

    def sift(self, g) -> tuple[tuple, int]:
        return self._chain.sift(as_tuple(g, self.degree))

    def contains_group(self, H: "PermutationGroup") -> bool:
        if H.degree != self.degree:
            return False
        return all(self._chain.contains(g) for g in H._gens)

    def is_subgroup_of(self, G: "PermutationGroup") -> bool:
        return G.contains_group(self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PermutationGroup):
            return NotImplemented
        return (self.degree == other.degree and self._order == other._order
                and self.contains_group(other))

    def __hash__(self) -> int:
        return hash((self.degree, self._order))

    def is_normal_subgroup(self, N: "PermutationGroup") -> bool:
        """True iff N is a normal subgroup of self."""
        if not self.contains_group(N):
            return False
        return all(N._chain.contains(pconj(x, g)) for x in N._gens for g in self._gens)

    def normalizes(self, H: "PermutationGroup") -> bool:
        """True iff every generator of self normalizes H."""
        return all(H._chain.contains(pconj(x, g)) for x in H._gens for g in self._gens)

    # -- elements -------------------------------------------------------

    def elements(self) -> Iterator[tuple]:
        """Every element exactly once, as internal tuples."""
        levels = self._chain.levels
        if not levels:
            yield self._chain.ident
            return
        transversals = [list(lev.trans.values()) for lev in levels]

        # g = u_k ... u_1; build from the deepest level upward
        def rec(idx: int, acc: tuple):
            if idx < 0:
                yield acc
                return
            for u in transversals[idx]:
                yield from rec(idx - 1, pmul(acc, u))

        yield from rec(len(levels) - 1, self._chain.ident)

    def random_element(self, rng: random.Random) -> tuple:
        g = self._chain.ident
        for lev in reversed(self._chain.levels):
            vals = list(lev.trans.values())
            g = pmul(g, vals[rng.randrange(len(vals))])
        return g

    def uniform_sampler(self, seed: int = DEFAULT_SEED):
        rng = random.Random(seed)
        levels = self._chain.levels
        tables = [list(lev.trans.values()) for lev in reversed(levels)]
        ident = self._chain.ident

        def sample():
            g = ident
            for vals in tables:
                g = pmul(g, vals[rng.randrange(len(vals))])
            return g
        return sample

    # -- orbits ---------------------------------------------------------

    def orbit(self, point: int) -> list[int]:
        """Orbit of a 1-based point, in breadth-first order."""
        self._check_point(point)
        return [x + 1 for x in self._orbit0(point - 1)]

    def _orbit0(self, p: int) -> list[int]:
        seen = {p}
        queue = [p]
        for x in queue:
            for g in self._gens:
                y = g[x]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return queue

    def orbits(self) -> list[list[int]]:
        """Orbit partition of 1..degree; each orbit sorted, orbits by least point."""
        return [[x + 1 for x in orb] for orb in self._orbits0()]

    def _orbits0(self) -> list[list[int]]:
        cached = self._cache.get("orbits0")
        if cached is None:
            parent = list(range(self.degree))

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            for g in self._gens:
                for i, j in enumerate(g):
                    a, b = find(i), find(j)
                    if a != b:
                        if a < b:
                            parent[b] = a
                        else:
                            parent[a] = b
            groups: dict[int, list[int]] = {}
            for i in range(self.degree):
                groups.setdefault(find(i), []).append(i)
            cached = sorted(groups.values())
            self._cache["orbits0"] = cached
        return cached

    def _check_point(self, point: int) -> None:
        if not 1 <= point <= self.degree:
            raise InputError(f"point {point} outside 1..{self.degree}")

    # -- derived groups -------------------------------------------------

    def with_base(self, prefix: Sequence[int]) -> "PermutationGroup":
        """Same group with a stabilizer chain whose base starts with ``prefix`` (0-based)."""
        prefix = list(prefix)
        if [lev.point for lev in self._chain.levels[:len(prefix)]] == prefix:
            return self
        key = ("rebase", tuple(prefix))
        got = self._cache.get(key)
        if got is None:
            chain = build_chain(self.degree, self._gens, prefix, self._order,
                                self.uniform_sampler())
            got = PermutationGroup(self.degree, self._gens, _chain=chain)
            self._cache[key] = got
        return got

    def stabilizer(self, point: int) -> "PermutationGroup":
        """Point stabilizer of a 1-based point."""
        self._check_point(point)
        return self._stabilizer0(point - 1)

    def _stabilizer0(self, p: int) -> "PermutationGroup":
        G = self.with_base([p])
        levels = [lev.copy() for lev in G._chain.levels[1:]]
        gens = levels[0].gens if levels else []
        return PermutationGroup(self.degree, gens, _chain=_Chain(self.degree, levels))

    def pointwise_stabilizer(self, points: Sequence[int]) -> "PermutationGroup":
        """Pointwise stabilizer of 0-based points."""
        points = list(points)
        G = self.with_base(points)
        levels = [lev.copy() for lev in G._chain.levels[len(points):]]
        gens = levels[0].gens if levels else []
        return PermutationGroup(self.degree, gens, _chain=_Chain(self.degree, levels))

    def subgroup(self, gens: Iterable, order: int | None = None) -> "PermutationGroup":
        """Subgroup generated by elements of self (not checked)."""
        return PermutationGroup(self.degree, gens, order=order)

    def closure(self, extra: Iterable, max_order: int | None = None) -> "PermutationGroup | None":
        """⟨self, extra⟩, or None when its order would exceed ``max_order``."""
        extra = [as_tuple(g, self.degree) for g in extra]
        chain = self._chain.copy()
        new = []
        try:
            for g in extra:
                if chain.extend(g, max_order):
                    new.append(g)
        except OrderExceeded:
            return None
        if not new:
            return self
        return PermutationGroup(self.degree, list(self._gens) + new, _chain=chain)

    def conjugate(self, g) -> "PermutationGroup":
        """H^g = g^-1 H g, with the chain transported."""
        g = as_tuple(g, self.degree)
        levels = []
        for lev in self._chain.levels:
            new = object.__new__(_Level)
            new.point = g[lev.point]
            new.gens = [pconj(s, g) for s in lev.gens]
            new.ident = lev.ident
            new.trans = {g[b]: pconj(u, g) for b, u in lev.trans.items()}
            new._inv = {}
            levels.append(new)
        return PermutationGroup(self.degree, [pconj(s, g) for s in self._gens],
                                _chain=_Chain(self.degree, levels))

    def normal_closure(self, elements: Iterable) -> "PermutationGroup":
        """Smallest normal subgroup of self containing ``elements``."""
        elems = [as_tuple(x, self.degree) for x in elements]
        for x in elems:
            if not self._chain.contains(x):
                raise InputError("normal_closure: element outside the group")
        chain = _Chain(self.degree)
        gens: list[tuple] = []
        for x in elems:
            if chain.extend(x):
                gens.append(x)
        i = 0
        while i < len(gens):
            x = gens[i]
            for g in self._gens:
                c = pconj(x, g)
                if chain.extend(c):
                    gens.append(c)
            i += 1
        return PermutationGroup(self.degree, gens, _chain=chain)

    def derived_subgroup(self) -> "PermutationGroup":
        got = self._cache.get("derived")
        if got is None:
            comms = []
            gens = self._gens
            for a, b in itertools.combinations(gens, 2):
                c = pmul(pmul(pinv(a), pinv(b)), pmul(a, b))
                if not is_identity(c):
                    comms.append(c)
            got = self.normal_closure(comms)
            self._cache["derived"] = got
        return got

    def is_abelian(self) -> bool:
        gens = self._gens
        return all(pmul(a, b) == pmul(b, a) for a, b in itertools.combinations(gens, 2))

    def is_solvable(self) -> bool:
        H = self
        while not H.is_trivial():
            D = H.derived_subgroup()
            if D.order() == H.order():
                return False
            H = D
        return True

    def derived_series(self) -> list["PermutationGroup"]:
        out = [self]
        while True:
            D = out[-1].derived_subgroup()
            if D.order() == out[-1].order():
                return out
            out.append(D)

    def coset_canonical(self, g: tuple) -> tuple:
        """Canonical element of the right coset H g (least base images)."""
        for lev in self._chain.levels:
            best = None
            best_img = None
            for delta in lev.trans:
                img = g[delta]
                if best_img is None or img < best_img:
                    best_img = img
                    best = delta
            if best != lev.point:
                g = pmul(lev.trans[best], g)
        return g

    def element_order_counts(self) -> dict[int, int]:  # pragma: no cover - diagnostic
        counts: dict[int, int] = {}
        for g in self.elements():
            o = porder(g)
            counts[o] = counts.get(o, 0) + 1
        return counts


_REGISTRY: dict[tuple, list] = {}


def canonical(H: PermutationGroup) -> PermutationGroup:
    """A previously seen group equal to H (or H itself), so derived data is shared."""
    bucket = _REGISTRY.setdefault((H.degree, H._order), [])
    alive = []
    found = None
    for ref in bucket:
        G = ref()
        if G is None:
            continue
        alive.append(ref)
        if found is None and (G is H or G.contains_group(H)):
            found = G
    if found is None:
        alive.append(weakref.ref(H))
        found = H
    bucket[:] = alive
    return found


def trivial_group(degree: int) -> PermutationGroup:
    return PermutationGroup(degree, ())


def group_from_generators(degree: int, gens: Iterable) -> PermutationGroup:
    """Group generated by ``gens`` (Permutations or 1-based image sequences)."""
    tuples = []
    for g in gens:
        if isinstance(g, Permutation):
            if g.degree != degree:
                raise InputError(f"generator of degree {g.degree}, expected {degree}")
            tuples.append(g._img)
        else:
            p = Permutation(g)
            if p.degree != degree:
                raise InputError(f"generator of degree {p.degree}, expected {degree}")
            tuples.append(p._img)
    return PermutationGroup(degree, tuples)


def membership_test(G: PermutationGroup, g: Permutation) -> bool:
    if g.degree != G.degree:
        raise InputError("degree mismatch in membership test")
    return G.contains(g)


def orbit_partition(G: PermutationGroup) -> list[list[int]]:
    return G.orbits()


def point_stabilizer(G: PermutationGroup, p: int) -> PermutationGroup:
    return G.stabilizer(p)


def derived_subgroup(G: PermutationGroup) -> PermutationGroup:
    return G.derived_subgroup()


def normal_closure(G: PermutationGroup, S: Iterable) -> PermutationGroup:
    return G.normal_closure(S)


def element_from(g, degree: int) -> tuple:
    return as_tuple(g, degree)
