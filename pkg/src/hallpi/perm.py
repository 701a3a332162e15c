"""Permutations of {1..n}.

Internally a permutation is a tuple ``img`` of 0-based images, and the
library composes left to right: ``(a * b)(x) = b(a(x))``, so that
``x^(ab) = (x^a)^b`` as in the usual right-action notation.  The
:class:`Permutation` wrapper exposes 1-based points.
"""

from __future__ import annotations

import re
from math import gcd
from typing import Iterable, Sequence

from .errors import InputError

# ---------------------------------------------------------------------------
# raw tuple helpers (hot paths use these directly)


def pmul(a: tuple, b: tuple) -> tuple:
    return tuple(map(b.__getitem__, a))


def pinv(a: tuple) -> tuple:
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


def pconj(a: tuple, g: tuple) -> tuple:
    """Return g^-1 a g."""
    # (g^-1 a g)[g[i]] = g[a[i]]
    out = [0] * len(a)
    for i, ai in enumerate(a):
        out[g[i]] = g[ai]
    return tuple(out)


def pidentity(n: int) -> tuple:
    return tuple(range(n))


def ppow(a: tuple, k: int) -> tuple:
    n = len(a)
    if k < 0:
        a = pinv(a)
        k = -k
    result = tuple(range(n))
    base = a
    while k:
        if k & 1:
            result = pmul(result, base)
        base = pmul(base, base)
        k >>= 1
    return result


def pcycles(a: tuple) -> list[list[int]]:
    """Non-trivial cycles (0-based), each starting at its least point."""
    seen = bytearray(len(a))
    out = []
    for i in range(len(a)):
        if seen[i] or a[i] == i:
            continue
        cyc = [i]
        seen[i] = 1
        j = a[i]
        while j != i:
            seen[j] = 1
            cyc.append(j)
            j = a[j]
        out.append(cyc)
    return out


def porder(a: tuple) -> int:
    o = 1
    for c in pcycles(a):
        L = len(c)
        o = o * L // gcd(o, L)
    return o


def psupport(a: tuple) -> int:
    return sum(1 for i, j in enumerate(a) if i != j)


def is_identity(a: tuple) -> bool:
    return all(i == j for i, j in enumerate(a))


def first_moved(a: tuple) -> int | None:
    for i, j in enumerate(a):
        if i != j:
            return i
    return None


# ---------------------------------------------------------------------------


class Permutation:
    """An immutable permutation of the points 1..degree."""

    __slots__ = ("_img", "_hash")

    def __init__(self, images: Sequence[int], *, _raw: bool = False):
        if _raw:
            self._img = images
        else:
            img = tuple(int(x) - 1 for x in images)
            if sorted(img) != list(range(len(img))):
                raise InputError(f"images {list(images)} do not form a bijection")
            self._img = img
        self._hash = None

    @classmethod
    def from_tuple(cls, img: tuple) -> "Permutation":
        return cls(img, _raw=True)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(tuple(range(degree)), _raw=True)

    @classmethod
    def from_cycles(cls, degree: int, cycles) -> "Permutation":
        """Build from a cycle string like ``"(1 2 3)(4 5)"`` or a list of cycles."""
        if isinstance(cycles, str):
            cycles = parse_cycles(cycles)
        img = list(range(degree))
        seen = set()
        for cyc in cycles:
            cyc = [int(x) for x in cyc]
            for x in cyc:
                if not 1 <= x <= degree:
                    raise InputError(f"point {x} outside 1..{degree}")
                if x in seen:
                    raise InputError(f"point {x} repeated in cycle notation")
                seen.add(x)
            for k, x in enumerate(cyc):
                img[x - 1] = cyc[(k + 1) % len(cyc)] - 1
        return cls(tuple(img), _raw=True)

    @property
    def degree(self) -> int:
        return len(self._img)

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(x + 1 for x in self._img)

    def __call__(self, point: int) -> int:
        return self._img[point - 1] + 1

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.degree != other.degree:
            raise InputError("degree mismatch in product")
        return Permutation(pmul(self._img, other._img), _raw=True)

    def __invert__(self) -> "Permutation":
        return Permutation(pinv(self._img), _raw=True)

    inverse = __invert__

    def __pow__(self, k: int) -> "Permutation":
        return Permutation(ppow(self._img, k), _raw=True)

    def conjugate(self, g: "Permutation") -> "Permutation":
        """g^-1 * self * g."""
        return Permutation(pconj(self._img, g._img), _raw=True)

    def order(self) -> int:
        return porder(self._img)

    def support_size(self) -> int:
        return psupport(self._img)

    def is_identity(self) -> bool:
        return is_identity(self._img)

    def cycles(self) -> list[list[int]]:
        return [[x + 1 for x in c] for c in pcycles(self._img)]

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self._img == other._img

    def __lt__(self, other: "Permutation") -> bool:
        return self._img < other._img

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._img)
        return self._hash

    def __str__(self) -> str:
        return format_cycles(self._img)

    def __repr__(self) -> str:
        return f"Permutation.from_cycles({self.degree}, {str(self)!r})"


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str) -> list[list[int]]:
    """Parse ``(1 2 3)(4 5)``; commas are accepted as separators too."""
    s = text.strip()
    pos = 0
    cycles = []
    while pos < len(s):
        if s[pos].isspace():
            pos += 1
            continue
        m = _CYCLE_RE.match(s, pos)
        if not m:
            raise InputError(f"cannot parse cycle notation near {s[pos:pos + 12]!r}")
        body = m.group(1).replace(",", " ").split()
        try:
            cyc = [int(tok) for tok in body]
        except ValueError:
            raise InputError(f"non-integer point in cycle {m.group(0)!r}") from None
        if cyc:
            cycles.append(cyc)
        pos = m.end()
    return cycles


def format_cycles(img: tuple) -> str:
    """Canonical cycle form: 1-based, cycles sorted by least moved point."""
    cyc = pcycles(img)
    if not cyc:
        return "()"
    return "".join("(" + " ".join(str(x + 1) for x in c) + ")" for c in cyc)


def as_tuple(g, degree: int | None = None) -> tuple:
    """Coerce a Permutation or raw tuple to the internal tuple form."""
    if isinstance(g, Permutation):
        img = g._img
    else:
        img = tuple(g)
    if degree is not None and len(img) != degree:
        raise InputError(f"permutation of degree {len(img)} where {degree} expected")
    return img


def perms(gens: Iterable[tuple]) -> list[Permutation]:
    return [Permutation.from_tuple(g) for g in gens]
