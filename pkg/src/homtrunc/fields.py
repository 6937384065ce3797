"""Exact scalar arithmetic over the rationals and over prime fields.

Scalars are plain Python values: `fractions.Fraction` over the rationals
(always reduced, positive denominator) and `int` residues in ``[0, p)``
over a prime field.  Both representations are canonical, so two scalars
are equal exactly when their representations are equal, and nothing in
the engine ever rounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Scalar = Union[Fraction, int]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Field:
    """Coefficient field descriptor: ``Field("Q")`` or ``Field("Fp", p)``."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == "Q":
            if self.p is not None:
                raise ValueError("the rational field takes no modulus")
        elif self.kind == "Fp":
            if self.p is None or not _is_prime(self.p):
                raise ValueError(f"prime field needs a prime modulus, got {self.p!r}")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    # ---- element construction ------------------------------------------

    @property
    def zero(self) -> Scalar:
        return Fraction(0) if self.kind == "Q" else 0

    @property
    def one(self) -> Scalar:
        return Fraction(1) if self.kind == "Q" else 1

    def from_int(self, n: int) -> Scalar:
        return Fraction(n) if self.kind == "Q" else n % self.p

    # ---- arithmetic ------------------------------------------------------

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return a + b if self.kind == "Q" else (a + b) % self.p

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return a - b if self.kind == "Q" else (a - b) % self.p

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return a * b if self.kind == "Q" else (a * b) % self.p

    def neg(self, a: Scalar) -> Scalar:
        return -a if self.kind == "Q" else (-a) % self.p

    def inv(self, a: Scalar) -> Scalar:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a if self.kind == "Q" else pow(a, -1, self.p)

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.mul(a, self.inv(b))

    @staticmethod
    def is_zero(a: Scalar) -> bool:
        return a == 0

    # ---- workspace-file scalar encoding ---------------------------------
    # Rationals travel as strings "p/q" or "p"; prime-field residues as ints.

    def parse_scalar(self, raw) -> Scalar:
        if self.kind == "Q":
            if not isinstance(raw, str):
                raise ValueError(f"rational scalar must be a string, got {raw!r}")
            try:
                return Fraction(raw)
            except (ValueError, ZeroDivisionError) as exc:
                raise ValueError(f"bad rational scalar {raw!r}: {exc}") from None
        if isinstance(raw, bool) or not isinstance(raw, int):
            raise ValueError(f"prime-field scalar must be an integer, got {raw!r}")
        return raw % self.p

    def format_scalar(self, a: Scalar):
        return str(a) if self.kind == "Q" else int(a)


QQ = Field("Q")


def GF(p: int) -> Field:
    """The prime field with ``p`` elements."""
    return Field("Fp", p)
