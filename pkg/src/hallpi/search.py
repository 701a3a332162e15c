"""Normalizers, centralizers and conjugacy witnesses.

Two exact routes are combined.  A backtrack over base images (pruned by
orbit structure, or by forced images for centralizers) is tried first
with a small node budget.  If that budget runs out, the conjugacy class of
the object is enumerated under the generators of the ambient group and
the stabilizer is read off Schreier generators; its order is known in
advance (|G| / class length), so it is complete once it reaches that
order.  Classes longer than ``orbit_cap`` go back to the backtrack with
the full node ceiling.
"""

from __future__ import annotations

from typing import Callable, Sequence

from .errors import InputError, ResourceError
from .group import PermutationGroup, _Chain, canonical
from .perm import Permutation, as_tuple, pconj, pinv, pmul

ORBIT_CAP = 200_000
NODE_CEILING = 10 ** 8
QUICK_NODES = 20_000


def _orbit_key(gens: Sequence[tuple], n: int) -> tuple:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for i, j in enumerate(g):
            a, b = find(i), find(j)
            if a != b:
                if a < b:
                    parent[b] = a
                else:
                    parent[a] = b
    return tuple(find(i) for i in range(n))


def small_generators(H: PermutationGroup) -> list[tuple]:
    """A short generating set picked greedily from the generators of H."""
    got = H._cache.get("small_gens")
    if got is None:
        chain = _Chain(H.degree)
        got = []
        pool = list(H._gens)
        for lev in H._chain.levels:
            pool += [g for g in lev.gens if g not in pool]
        for g in pool:
            if chain.order() == H.order():
                break
            if chain.extend(g):
                got.append(g)
        H._cache["small_gens"] = got
    return got


class _SubgroupOrbit:
    """Breadth-first enumeration of the conjugates of H under G."""

    def __init__(self, G: PermutationGroup, H: PermutationGroup, cap: int):
        self.G, self.H, self.cap = G, H, cap
        self.n = G.degree
        self.hgens = small_generators(H)
        ident = tuple(range(self.n))
        self.entries: list[tuple[tuple, tuple]] = [(tuple(self.hgens), ident)]
        self.index: dict[tuple, list[int]] = {_orbit_key(self.hgens, self.n): [0]}
        self.schreier: list[tuple] = []
        self.done = 0

    def locate(self, gens: Sequence[tuple]) -> int | None:
        """Entry index whose subgroup is generated by ``gens`` (a conjugate of H)."""
        cands = self.index.get(_orbit_key(gens, self.n), ())
        for idx in cands:
            t = self.entries[idx][1]
            ti = pinv(t)
            # <gens> = H^t  iff  t gens t^-1 lie in H
            if all(self.H._chain.contains(pconj(w, ti)) for w in gens):
                return idx
        return None

    def run(self, stop: Callable[[int], bool] | None = None) -> bool:
        """Extend the orbit; returns True when complete, stops early on ``stop``."""
        Ggens = self.G._gens
        while self.done < len(self.entries):
            gens, t = self.entries[self.done]
            for s in Ggens:
                new = tuple(pconj(w, s) for w in gens)
                ts = pmul(t, s)
                idx = self.locate(new)
                if idx is None:
                    if len(self.entries) >= self.cap:
                        raise ResourceError(f"conjugacy class exceeds orbit cap {self.cap}")
                    self.entries.append((new, ts))
                    self.index.setdefault(_orbit_key(new, self.n), []).append(len(self.entries) - 1)
                    if stop is not None and stop(len(self.entries) - 1):
                        return False
                else:
                    sg = pmul(ts, pinv(self.entries[idx][1]))
                    self.schreier.append(sg)
            self.done += 1
        return True


def _stabilizer_from_schreier(start: PermutationGroup, schreier: Sequence[tuple],
                              target: int) -> PermutationGroup:
    chain = start._chain.copy()
    gens = list(start._gens)
    for s in schreier:
        if chain.order() == target:
            break
        if chain.extend(s):
            gens.append(s)
    if chain.order() != target:
        raise AssertionError("Schreier generators did not reach the stabilizer order")
    return PermutationGroup(start.degree, gens, _chain=chain)


def _check_sub(G: PermutationGroup, H: PermutationGroup, what: str) -> None:
    if H.degree != G.degree or not G.contains_group(H):
        raise InputError(f"{what} is not contained in the ambient group")


def normalizer(G: PermutationGroup, H: PermutationGroup, *, orbit_cap: int = ORBIT_CAP,
               node_ceiling: int = NODE_CEILING) -> PermutationGroup:
    """N_G(H) for H <= G."""
    _check_sub(G, H, "H")
    if G.normalizes(H):
        return G
    key = ("normalizer", id(H))
    hit = G._cache.get(key)
    if hit is not None and hit[0] is H:
        return hit[1]
    try:
        N = _normalizer_backtrack(G, H, min(QUICK_NODES, node_ceiling))
    except ResourceError:
        try:
            orb = _SubgroupOrbit(G, H, orbit_cap)
            orb.run()
            N = _stabilizer_from_schreier(H, orb.schreier, G.order() // len(orb.entries))
        except ResourceError:
            N = _normalizer_backtrack(G, H, node_ceiling)
    G._cache[key] = (H, N)
    return N


def subgroup_conjugacy_witness(G: PermutationGroup, H: PermutationGroup, K: PermutationGroup, *,
                               orbit_cap: int = ORBIT_CAP,
                               node_ceiling: int = NODE_CEILING) -> Permutation | None:
    """Some g in G with H^g = K, or None."""
    _check_sub(G, H, "H")
    _check_sub(G, K, "K")
    g = _conjugator(G, H, K, orbit_cap, node_ceiling)
    return None if g is None else Permutation.from_tuple(g)


def _invariants(H: PermutationGroup) -> tuple:
    return (H.order(), tuple(sorted(len(o) for o in H._orbits0())))


def _conjugator(G, H, K, orbit_cap=ORBIT_CAP, node_ceiling=NODE_CEILING) -> tuple | None:
    if _invariants(H) != _invariants(K):
        return None
    if H == K:
        return tuple(range(G.degree))
    kgens = small_generators(K)
    try:
        g = _conjugacy_backtrack(G, H, K, min(QUICK_NODES, node_ceiling))
        if g is None:
            return None
        return g
    except ResourceError:
        pass
    try:
        orb = _SubgroupOrbit(G, H, orbit_cap)
        found = []

        def stop(idx):
            if orb.locate(kgens) == idx:
                found.append(orb.entries[idx][1])
                return True
            return False

        orb.run(stop)
        if not found:
            return None
        g = found[0]
    except ResourceError:
        g = _conjugacy_backtrack(G, H, K, node_ceiling)
        if g is None:
            return None
    assert all(K._chain.contains(pconj(h, g)) for h in H._gens)
    return g


def are_conjugate(G: PermutationGroup, H: PermutationGroup, K: PermutationGroup) -> bool:
    return _conjugator(G, H, K) is not None


# ---------------------------------------------------------------------------
# element centralizers


def centralizer_of_element(G: PermutationGroup, x, *, orbit_cap: int = ORBIT_CAP,
                           node_ceiling: int = NODE_CEILING) -> PermutationGroup:
    x = as_tuple(x, G.degree)
    if all(pmul(g, x) == pmul(x, g) for g in G._gens):
        return G
    try:
        return _centralizer_backtrack(G, [x], min(QUICK_NODES, node_ceiling))
    except ResourceError:
        pass
    try:
        return _centralizer_orbit(G, x, orbit_cap)
    except ResourceError:
        return _centralizer_backtrack(G, [x], node_ceiling)


def _centralizer_orbit(G: PermutationGroup, x: tuple, cap: int) -> PermutationGroup:
    trans = {x: tuple(range(G.degree))}
    queue = [x]
    schreier = []
    for y in queue:
        t = trans[y]
        for s in G._gens:
            z = pconj(y, s)
            ts = pmul(t, s)
            u = trans.get(z)
            if u is None:
                if len(trans) >= cap:
                    raise ResourceError(f"element class exceeds orbit cap {cap}")
                trans[z] = ts
                queue.append(z)
            else:
                schreier.append(pmul(ts, pinv(u)))
    start = PermutationGroup(G.degree, [x])
    if not G._chain.contains(x):
        start = PermutationGroup(G.degree, [])
    return _stabilizer_from_schreier(start, schreier, G.order() // len(trans))


def centralizer(G: PermutationGroup, A: PermutationGroup | Sequence, **kw) -> PermutationGroup:
    """C_G(A) for a subgroup or a set of elements A."""
    elems = small_generators(A) if isinstance(A, PermutationGroup) else [as_tuple(a, G.degree) for a in A]
    C = G
    for a in elems:
        C = centralizer_of_element(C, a, **kw)
        if C.is_trivial():
            break
    return C


def center(G: PermutationGroup) -> PermutationGroup:
    G = canonical(G)
    got = G._cache.get("center")
    if got is None:
        got = centralizer(G, G)
        G._cache["center"] = got
    return got


# ---------------------------------------------------------------------------
# backtrack over base images


class _Counter:
    def __init__(self, ceiling: int):
        self.n = 0
        self.ceiling = ceiling

    def tick(self):
        self.n += 1
        if self.n > self.ceiling:
            raise ResourceError(f"backtrack search exceeded {self.ceiling} nodes")


def _dfs(levels, m: int, s: tuple, pairs: list, test, prune, counter: _Counter):
    counter.tick()
    if m == len(levels):
        return s if test(s) else None
    lev = levels[m]
    b = lev.point
    cands = sorted(lev.trans.items(), key=lambda kv: s[kv[0]])
    for delta, w in cands:
        img = s[delta]
        pairs.append((b, img))
        if prune(pairs):
            r = _dfs(levels, m + 1, pmul(w, s), pairs, test, prune, counter)
            if r is not None:
                pairs.pop()
                return r
        pairs.pop()
    return None


def _subgroup_search(G: PermutationGroup, test, prune, known: PermutationGroup,
                     ceiling: int) -> PermutationGroup:
    levels = G._chain.levels
    base = [lev.point for lev in levels]
    K = known.with_base(base)
    counter = _Counter(ceiling)
    for i in reversed(range(len(levels))):
        lev = levels[i]
        for gamma in sorted(lev.trans):
            if gamma in K._chain.levels[i].trans:
                continue
            pairs = [(b, b) for b in base[:i]] + [(base[i], gamma)]
            if not prune(pairs):
                continue
            g = _dfs(levels, i + 1, lev.trans[gamma], pairs, test, prune, counter)
            if g is not None:
                K = K.closure([g]).with_base(base)
    return K


def _orbit_pruner(H: PermutationGroup, K: PermutationGroup):
    """Partial maps sending H-orbits onto K-orbits of equal length."""
    n = H.degree
    oh = [0] * n
    lh = {}
    for idx, orb in enumerate(H._orbits0()):
        for p in orb:
            oh[p] = idx
        lh[idx] = len(orb)
    ok = [0] * n
    lk = {}
    for idx, orb in enumerate(K._orbits0()):
        for p in orb:
            ok[p] = idx
        lk[idx] = len(orb)

    def prune(pairs):
        fwd, back = {}, {}
        for p, q in pairs:
            if lh[oh[p]] != lk[ok[q]]:
                return False
            a, b = oh[p], ok[q]
            if fwd.setdefault(a, b) != b or back.setdefault(b, a) != a:
                return False
        return True
    return prune


def _normalizer_backtrack(G, H, ceiling):
    def test(g):
        return all(H._chain.contains(pconj(h, g)) for h in H._gens)
    return _subgroup_search(G, test, _orbit_pruner(H, H), H, ceiling)


def _conjugacy_backtrack(G, H, K, ceiling):
    def test(g):
        return all(K._chain.contains(pconj(h, g)) for h in H._gens)
    return _dfs(G._chain.levels, 0, tuple(range(G.degree)), [], test,
                _orbit_pruner(H, K), _Counter(ceiling))


def _centralizer_backtrack(G, xs, ceiling):
    def propagate(pairs):
        fmap, used = {}, {}
        stack = list(pairs)
        while stack:
            p, q = stack.pop()
            old = fmap.get(p)
            if old is not None:
                if old != q:
                    return False
                continue
            if used.get(q, p) != p:
                return False
            fmap[p] = q
            used[q] = p
            for x in xs:
                stack.append((x[p], x[q]))
        return True

    def test(g):
        return all(pmul(g, x) == pmul(x, g) for x in xs)

    if len(xs) == 1 and G._chain.contains(xs[0]):
        known = PermutationGroup(G.degree, xs)
    else:
        known = PermutationGroup(G.degree, [])
    return _subgroup_search(G, test, propagate, known, ceiling)


# ---------------------------------------------------------------------------
# intersections and normalizers of subgroups from outside


def intersection(G1: PermutationGroup, G2: PermutationGroup, *,
                 node_ceiling: int = NODE_CEILING) -> PermutationGroup:
    """G1 and G2 intersected, by backtrack over G1 pruned by the orbits of G2."""
    if G1.degree != G2.degree:
        raise InputError("degree mismatch in intersection")
    if G2.contains_group(G1):
        return G1
    if G1.contains_group(G2):
        return G2
    if G1.order() > G2.order():
        G1, G2 = G2, G1
    where = [0] * G2.degree
    for idx, orb in enumerate(G2._orbits0()):
        for p in orb:
            where[p] = idx

    def prune(pairs):
        return all(where[p] == where[q] for p, q in pairs)

    return _subgroup_search(G1, G2._chain.contains, prune,
                            PermutationGroup(G1.degree, []), node_ceiling)


def normalizer_in(H: PermutationGroup, A: PermutationGroup) -> PermutationGroup:
    """N_H(A) where A need not lie in H."""
    if H.degree != A.degree:
        raise InputError("degree mismatch in normalizer")
    if H.normalizes(A):
        return H
    if H.contains_group(A):
        return normalizer(H, A)
    J = H.closure(A._gens)
    return intersection(normalizer(J, A), H)
