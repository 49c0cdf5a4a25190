"""Signed n-qubit Pauli strings and their algebra.

A Pauli string is stored as two bitmasks plus a +/-1 sign.  Bit q of
``x``/``z`` gives the X/Z component on qubit q, so the letter at qubit q
is I, X, Y or Z for bit pairs (0,0), (1,0), (1,1), (0,1).  In text form
the leftmost character is qubit 0, and a negative string is rendered
with a leading ``-``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidLetter, InvalidSize, LengthMismatch

_LETTER_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
# indexed by x_bit + 2*z_bit
_BITS_LETTER = "IXZY"


@dataclass(frozen=True)
class PauliString:
    """Hermitian Pauli word with a +/-1 sign (no +/-i phases)."""

    n: int
    x: int = 0
    z: int = 0
    sign: int = 1

    def __post_init__(self):
        if self.n < 1:
            raise InvalidSize(f"qubit count must be positive, got {self.n}")
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")
        full = (1 << self.n) - 1
        if not 0 <= self.x <= full or not 0 <= self.z <= full:
            raise ValueError("bit masks exceed the qubit count")

    @classmethod
    def from_label(cls, text: str) -> "PauliString":
        """Parse ``[+|-]<letters>`` with letters drawn from I/X/Y/Z."""
        sign = 1
        if text[:1] in ("+", "-", "−"):
            if text[0] != "+":
                sign = -1
            text = text[1:]
        if not text:
            raise InvalidLetter("empty Pauli word")
        x = z = 0
        for q, ch in enumerate(text):
            try:
                xb, zb = _LETTER_BITS[ch]
            except KeyError:
                raise InvalidLetter(f"invalid Pauli letter {ch!r} at position {q}") from None
            x |= xb << q
            z |= zb << q
        return cls(len(text), x, z, sign)

    def letter(self, q: int) -> str:
        return _BITS_LETTER[((self.x >> q) & 1) + 2 * ((self.z >> q) & 1)]

    def letters(self) -> str:
        """Unsigned word, leftmost character is qubit 0."""
        return "".join(self.letter(q) for q in range(self.n))

    def label(self) -> str:
        """Canonical text form; negative strings carry a ``-`` prefix."""
        return ("-" if self.sign < 0 else "") + self.letters()

    def weight(self) -> int:
        return (self.x | self.z).bit_count()

    def support(self) -> tuple[int, ...]:
        m = self.x | self.z
        return tuple(q for q in range(self.n) if (m >> q) & 1)

    def commutes(self, other: "PauliString") -> bool:
        if self.n != other.n:
            raise LengthMismatch(f"cannot compare {self.n}- and {other.n}-qubit strings")
        return (((self.x & other.z).bit_count() + (self.z & other.x).bit_count()) & 1) == 0

    def __str__(self) -> str:
        return self.label()


@dataclass(frozen=True)
class PauliTerm:
    """A Pauli string together with its real rotation coefficient."""

    pauli: PauliString
    coeff: float

    def __post_init__(self):
        if not math.isfinite(self.coeff):
            raise ValueError(f"coefficient must be finite, got {self.coeff}")


def parse_pauli(text: str) -> PauliString:
    """Parse a signed Pauli word such as ``XIZ`` or ``-ZZ``."""
    return PauliString.from_label(text)


def weight(p: PauliString) -> int:
    """Number of non-identity letters."""
    return p.weight()


def commutes(p: PauliString, q: PauliString) -> bool:
    """True iff the strings commute (symplectic product is zero)."""
    return p.commutes(q)


def multiply(p: PauliString, q: PauliString) -> tuple[PauliString, int]:
    """Product ``p*q`` as ``i**k * result`` with an unsigned result.

    The phase exponent k (mod 4) accumulates the per-qubit single-letter
    phases plus a contribution of 2 for each negative input sign.
    """
    if p.n != q.n:
        raise LengthMismatch(f"cannot multiply {p.n}- and {q.n}-qubit strings")
    x1, z1, x2, z2 = p.x, p.z, q.x, q.z
    ex1, wy1, ez1 = x1 & ~z1, x1 & z1, z1 & ~x1
    ex2, wy2, ez2 = x2 & ~z2, x2 & z2, z2 & ~x2
    # cyclic letter pairs (XY, YZ, ZX) contribute +1, anticyclic -1
    k = (
        (ex1 & wy2).bit_count()
        + (wy1 & ez2).bit_count()
        + (ez1 & ex2).bit_count()
        - (wy1 & ex2).bit_count()
        - (ez1 & wy2).bit_count()
        - (ex1 & ez2).bit_count()
    )
    if p.sign < 0:
        k += 2
    if q.sign < 0:
        k += 2
    return PauliString(p.n, x1 ^ x2, z1 ^ z2, 1), k & 3
