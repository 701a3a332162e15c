"""Sets of primes and the arithmetic of pi-numbers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import InputError


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division (orders here stay small)."""
    if n < 1:
        raise ValueError("factorize needs a positive integer")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_divisors(n: int) -> list[int]:
    return sorted(factorize(n))


def is_prime(p: int) -> bool:
    return p >= 2 and factorize(p) == {p: 1}


def p_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def is_power_of(n: int, p: int) -> bool:
    return p_part(n, p) == n


@dataclass(frozen=True)
class PrimeSet:
    """A finite set of primes pi; everything else is pi'."""

    primes: tuple[int, ...]

    def __post_init__(self):
        ps = tuple(sorted(set(int(p) for p in self.primes)))
        for p in ps:
            if not is_prime(p):
                raise InputError(f"{p} is not a prime")
        object.__setattr__(self, "primes", ps)

    @classmethod
    def of(cls, primes: "Iterable[int] | str | PrimeSet") -> "PrimeSet":
        if isinstance(primes, PrimeSet):
            return primes
        if isinstance(primes, str):
            return cls.parse(primes)
        return cls(tuple(primes))

    @classmethod
    def parse(cls, text: str) -> "PrimeSet":
        """Comma-separated primes, e.g. ``"2,3"``."""
        if not text.strip():
            raise InputError("empty prime set")
        toks = [t.strip() for t in text.split(",")]
        if not all(toks):
            raise InputError(f"empty entry in prime set {text!r}")
        try:
            vals = [int(t) for t in toks]
        except ValueError:
            raise InputError(f"cannot parse prime set {text!r}") from None
        return cls(tuple(vals))

    def __contains__(self, p: int) -> bool:
        return p in self.primes

    def __iter__(self):
        return iter(self.primes)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.primes)) + "}"

    def tag(self) -> str:
        return ",".join(map(str, self.primes))

    def part(self, n: int) -> int:
        """The pi-part of n."""
        out = 1
        for p in self.primes:
            out *= p_part(n, p)
        return out

    def is_pi_number(self, n: int) -> bool:
        return self.part(n) == n

    def is_coprime_number(self, n: int) -> bool:
        """True iff n is a pi'-number."""
        return self.part(n) == 1

    def meets(self, n: int) -> bool:
        return self.part(n) > 1
