"""Exact coefficient fields: prime fields GF(p) and the rationals."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

DEFAULT_PRIME = 32003


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class CoefficientField:
    """A prime field when ``p`` is set, the rationals when ``p`` is None."""

    p: int | None = DEFAULT_PRIME

    def __post_init__(self):
        if self.p is not None and not _is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")

    @classmethod
    def prime(cls, p: int = DEFAULT_PRIME) -> CoefficientField:
        return cls(p)

    @classmethod
    def rationals(cls) -> CoefficientField:
        return cls(None)

    @property
    def kind(self) -> str:
        return "rationals" if self.p is None else "prime-field"

    def __call__(self, c) -> int | Fraction:
        """Coerce an integer or fraction into canonical field representation."""
        if self.p is None:
            c = Fraction(c)
            return int(c) if c.denominator == 1 else c
        if isinstance(c, Fraction):
            return c.numerator * pow(c.denominator, -1, self.p) % self.p
        return c % self.p

    def inv(self, c):
        if self.p is None:
            r = 1 / Fraction(c)
            return int(r) if r.denominator == 1 else r
        return pow(c, -1, self.p)

    def norm(self, c):
        # hot path: assumes c is already an int/Fraction produced by ring arithmetic
        if self.p is None:
            if isinstance(c, Fraction) and c.denominator == 1:
                return c.numerator
            return c
        return c % self.p

    def random_element(self, rng, nonzero: bool = False):
        if self.p is None:
            lo, hi = -50, 50
            while True:
                c = rng.randint(lo, hi)
                if c or not nonzero:
                    return c
        if nonzero:
            return rng.randrange(1, self.p)
        return rng.randrange(self.p)

    def to_signed(self, c) -> int | Fraction:
        """Symmetric representative, used only for printing."""
        if self.p is None:
            return c
        return c - self.p if c > self.p // 2 else c

    def __str__(self):
        return "QQ" if self.p is None else f"GF({self.p})"
