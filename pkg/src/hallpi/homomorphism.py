"""Homomorphisms between permutation groups, coset actions and quotients.

A homomorphism is carried by its graph: the group generated by the pairs
(s, phi(s)) acting on the disjoint union of source and target points.
With the target points first in the base, the tail of that chain is the
kernel and sifting a target element yields a preimage; with the source
points first, sifting a source element yields its image.
"""

from __future__ import annotations

from typing import Callable, Sequence

from .errors import InputError, ResourceError
from .group import PermutationGroup, build_chain
from .perm import Permutation, as_tuple, pidentity, pinv, pmul

COSET_DEGREE_BOUND = 200_000

KINDS = ("coset action", "restriction", "abstract generator map")


class GroupHomomorphism:
    """phi: source -> target, determined by the images of the source generators."""

    def __init__(self, source: PermutationGroup, target_degree: int, images: Sequence[tuple],
                 kind: str, *, direct: Callable[[tuple], tuple] | None = None,
                 checked: bool = True, image: PermutationGroup | None = None):
        if kind not in KINDS:
            raise InputError(f"unknown homomorphism kind {kind!r}")
        if len(images) != len(source._gens):
            raise InputError("need one image per source generator")
        self.source = source
        self.kind = kind
        self.target_degree = target_degree
        self.images = tuple(as_tuple(t, target_degree) for t in images)
        self._direct = direct
        self._image = image
        self._graph_tgt = None
        self._graph_src = None
        self._kernel = None
        if not checked:
            self._verify()

    # -- graph group ------------------------------------------------------

    def _graph_gens(self) -> list[tuple]:
        n = self.source.degree
        return [s + tuple(n + x for x in t) for s, t in zip(self.source._gens, self.images)]

    def _verify(self) -> None:
        n = self.source.degree
        D = PermutationGroup(n + self.target_degree, self._graph_gens())
        if D.order() != self.source.order():
            raise InputError("generator images do not define a homomorphism")
        self._graph_plain = D

    def _graph_with_target_base(self) -> PermutationGroup:
        if self._graph_tgt is None:
            n = self.source.degree
            img = self.image()
            prefix = [n + b - 1 for b in img.base]
            chain = build_chain(n + self.target_degree, self._graph_gens(), prefix,
                                order=self.source.order())
            self._graph_tgt = (PermutationGroup(n + self.target_degree, self._graph_gens(),
                                                _chain=chain), len(prefix))
        return self._graph_tgt

    def _graph_with_source_base(self) -> PermutationGroup:
        if self._graph_src is None:
            n = self.source.degree
            prefix = [b - 1 for b in self.source.base]
            chain = build_chain(n + self.target_degree, self._graph_gens(), prefix,
                                order=self.source.order())
            self._graph_src = (PermutationGroup(n + self.target_degree, self._graph_gens(),
                                                _chain=chain), len(prefix))
        return self._graph_src

    # -- queries ----------------------------------------------------------

    @property
    def target(self) -> PermutationGroup:
        return self.image()

    def image(self) -> PermutationGroup:
        if self._image is None:
            ksize = None
            if self._kernel is not None:
                ksize = self._kernel.order()
            self._image = PermutationGroup(self.target_degree, self.images,
                                           order=None if ksize is None else self.source.order() // ksize)
        return self._image

    def image_of(self, g) -> tuple:
        g = as_tuple(g, self.source.degree)
        if self._direct is not None:
            return self._direct(g)
        D, k = self._graph_with_source_base()
        n = self.source.degree
        c = g
        acc = D._chain.ident
        for lev in D._chain.levels[:k]:
            beta = c[lev.point]
            u = lev.trans.get(beta)
            if u is None:
                raise InputError("element is not in the source group")
            c = pmul(c, pinv(u[:n]))
            acc = pmul(u, acc)
        if any(c[i] != i for i in range(n)):
            raise InputError("element is not in the source group")
        return tuple(x - n for x in acc[n:])

    def lift(self, y) -> tuple:
        """Some preimage of an image element."""
        y = as_tuple(y, self.target_degree)
        D, k = self._graph_with_target_base()
        n = self.source.degree
        c = y
        acc = D._chain.ident
        for lev in D._chain.levels[:k]:
            beta = c[lev.point - n]
            u = lev.trans.get(beta + n)
            if u is None:
                raise InputError("element is not in the image")
            c = pmul(c, pinv(tuple(x - n for x in u[n:])))
            acc = pmul(u, acc)
        if any(c[i] != i for i in range(self.target_degree)):
            raise InputError("element is not in the image")
        return acc[:n]

    def kernel(self) -> PermutationGroup:
        if self._kernel is None:
            D, k = self._graph_with_target_base()
            n = self.source.degree
            levels = D._chain.levels[k:]
            gens = []
            for lev in levels:
                for g in lev.gens:
                    s = g[:n]
                    if s not in gens:
                        gens.append(s)
            order = 1
            for lev in levels:
                order *= len(lev.trans)
            self._kernel = PermutationGroup(n, gens, order=order)
        return self._kernel

    def image_of_subgroup(self, H: PermutationGroup) -> PermutationGroup:
        imgs = [self.image_of(h) for h in H._gens]
        return PermutationGroup(self.target_degree, imgs)

    def preimage(self, U: PermutationGroup) -> PermutationGroup:
        if U.order() * self.kernel().order() == self.source.order():
            return self.source
        K = self.kernel()
        lifts = [self.lift(u) for u in U._gens]
        return PermutationGroup(self.source.degree, list(K._gens) + lifts,
                                order=K.order() * U.order())

    def __repr__(self) -> str:
        return f"<GroupHomomorphism {self.kind} |source|={self.source.order()} -> degree {self.target_degree}>"


def restriction(G: PermutationGroup, points: Sequence[int]) -> GroupHomomorphism:
    """Action of G on a G-invariant set of 0-based points (relabelled in order)."""
    pts = sorted(points)
    pos = {p: i for i, p in enumerate(pts)}

    def direct(g):
        return tuple(pos[g[p]] for p in pts)

    imgs = [direct(g) for g in G._gens]
    return GroupHomomorphism(G, max(1, len(pts)), imgs if pts else [(0,)] * len(imgs),
                             "restriction", direct=direct if pts else (lambda g: (0,)))


def block_action(G: PermutationGroup, blocks: Sequence[Sequence[int]]) -> GroupHomomorphism:
    """Action of G on a G-invariant partition into blocks (0-based points)."""
    where = {}
    for i, blk in enumerate(blocks):
        for p in blk:
            where[p] = i
    reps = [blk[0] for blk in blocks]

    def direct(g):
        return tuple(where[g[r]] for r in reps)

    return GroupHomomorphism(G, len(blocks), [direct(g) for g in G._gens], "restriction",
                             direct=direct)


class CosetAction(GroupHomomorphism):
    """Action of G on the right cosets of H, cosets numbered in discovery order."""

    def __init__(self, G: PermutationGroup, H: PermutationGroup, reps: list[tuple],
                 index: dict[tuple, int]):
        self.subgroup = H
        self.reps = reps
        self._index = index

        def direct(g):
            return tuple(index[H.coset_canonical(pmul(r, g))] for r in reps)

        imgs = [direct(g) for g in G._gens]
        super().__init__(G, len(reps), imgs, "coset action", direct=direct)


def quotient_on_cosets(G: PermutationGroup, H: PermutationGroup,
                       bound: int = COSET_DEGREE_BOUND) -> CosetAction:
    """Action of G on the right cosets of H <= G."""
    if H.degree != G.degree or not G.contains_group(H):
        raise InputError("H is not a subgroup of G")
    idx = G.order() // H.order()
    if idx > bound:
        raise ResourceError(f"coset action of index {idx} exceeds degree bound {bound}")
    start = H.coset_canonical(pidentity(G.degree))
    reps = [start]
    index = {start: 0}
    for r in reps:
        for s in G._gens:
            c = H.coset_canonical(pmul(r, s))
            if c not in index:
                index[c] = len(reps)
                reps.append(c)
    if len(reps) != idx:
        raise AssertionError("coset enumeration disagrees with the index")
    if idx == 1:
        return CosetAction(G, H, reps, index)
    return CosetAction(G, H, reps, index)


def quotient(G: PermutationGroup, N: PermutationGroup,
             bound: int = COSET_DEGREE_BOUND) -> GroupHomomorphism:
    """A homomorphism G -> G/N with kernel exactly N (N normal in G)."""
    key = ("quotient", id(N))
    hit = G._cache.get(key)
    if hit is not None and hit[0] is N:
        return hit[1]
    hom = _quotient(G, N, bound)
    G._cache[key] = (N, hom)
    return hom


def _quotient(G: PermutationGroup, N: PermutationGroup, bound: int) -> GroupHomomorphism:
    if not G.is_normal_subgroup(N):
        raise InputError("quotient: N is not a normal subgroup of G")
    target = G.order() // N.order()
    if N.is_trivial():
        hom = restriction(G, range(G.degree))
        hom._kernel = N
        hom._image = G
        return hom
    if target == 1:
        hom = GroupHomomorphism(G, 1, [(0,)] * len(G._gens), "restriction",
                                direct=lambda g: (0,))
        hom._kernel = N
        return hom
    # G-orbits fixed pointwise by N
    fixed = []
    for orb in G._orbits0():
        if all(g[p] == p for g in N._gens for p in orb):
            fixed.extend(orb)
    if fixed:
        hom = restriction(G, fixed)
        if hom.image().order() == target:
            hom._kernel = N
            return hom
    # orbits of N are blocks for G
    blocks = N._orbits0()
    if len(blocks) > 1:
        hom = block_action(G, blocks)
        if hom.image().order() == target:
            hom._kernel = N
            return hom
    hom = quotient_on_cosets(G, N, bound)
    hom._kernel = N
    return hom


def abstract_hom(source: PermutationGroup, target_degree: int, images: Sequence) -> GroupHomomorphism:
    """Generator map; raises InputError when it does not extend to a homomorphism."""
    return GroupHomomorphism(source, target_degree, [as_tuple(t, target_degree) for t in images],
                             "abstract generator map", checked=False)


def as_perm(t: tuple) -> Permutation:
    return Permutation.from_tuple(t)
