"""Negative continued fractions.

A finite integer sequence ``[a1, ..., am]`` evaluates right to left as
``a1 - 1/(a2 - 1/(... - 1/am))``.  When a suffix evaluates to zero the
next step is infinite; infinity is an in-band value (``1/inf == 0``),
never an error, because intermediate surgery manipulations may pass
through it.

Slopes are plain ``fractions.Fraction`` values (stored reduced with a
positive denominator), with :data:`INFINITY` as the extra point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


class Infinity:
    """The infinite slope 1/0.  A singleton comparable only to itself."""

    _instance: "Infinity | None" = None

    def __new__(cls) -> "Infinity":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "inf"


INFINITY = Infinity()

Slope = Fraction  # reduced, positive denominator; Fraction guarantees both


class BothOdd(ValueError):
    """All-even expansion requested for a slope with odd numerator and denominator."""


@dataclass(frozen=True)
class NcfExpansion:
    """Coefficient list of a negative continued fraction (possibly empty)."""

    coefficients: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "coefficients", tuple(int(a) for a in self.coefficients)
        )

    def __len__(self) -> int:
        return len(self.coefficients)

    def __iter__(self):
        return iter(self.coefficients)

    def all_even(self) -> bool:
        return all(a % 2 == 0 for a in self.coefficients)


def ncf(*coefficients: int) -> NcfExpansion:
    return NcfExpansion(tuple(int(a) for a in coefficients))


def parse_slope(text: str) -> Fraction:
    """Parse ``"p/q"`` (or a bare integer string) into a reduced Fraction."""
    return Fraction(text.strip())


def format_slope(value: Fraction | Infinity | int) -> str:
    if isinstance(value, Infinity):
        return "inf"
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def eval_ncf(expansion: NcfExpansion) -> Fraction | Infinity:
    """Evaluate a negative continued fraction, folding from the right.

    The empty expansion evaluates to infinity, so that prepending a
    coefficient ``a`` yields ``a - 1/inf == a``.
    """
    value: Fraction | Infinity = INFINITY
    for a in reversed(expansion.coefficients):
        if isinstance(value, Infinity):
            value = Fraction(a)
        elif value == 0:
            value = INFINITY
        else:
            value = Fraction(a) - 1 / value
    return value


def expand_standard(slope: Fraction) -> NcfExpansion:
    """Ceiling-algorithm expansion; round-trips under :func:`eval_ncf`."""
    r = Fraction(slope)
    coeffs: list[int] = []
    while True:
        a = math.ceil(r)
        coeffs.append(a)
        if a == r:
            break
        r = 1 / (a - r)
    return NcfExpansion(tuple(coeffs))


def _nearest_even(r: Fraction) -> int:
    lo = 2 * math.floor(r / 2)
    hi = lo + 2
    below, above = r - lo, hi - r
    # A tie would force r to be an odd integer, excluded by the parity
    # precondition of expand_even.
    assert below != above, f"no unique nearest even integer to {r}"
    return lo if below < above else hi


def expand_even(slope: Fraction) -> NcfExpansion:
    """Expansion with every coefficient even.

    Requires exactly one of numerator and denominator of the reduced
    slope to be even (they are coprime, so never both).  Each step takes
    the nearest even integer ``a`` and recurses on ``1/(a - r)``; the
    denominator strictly decreases, so the expansion terminates and its
    length is at most ``|p| + q``.
    """
    r = Fraction(slope)
    if r.numerator % 2 == 1 and r.denominator % 2 == 1:
        raise BothOdd(f"{r} has odd numerator and denominator")
    coeffs: list[int] = []
    while True:
        a = _nearest_even(r)
        coeffs.append(a)
        if a == r:
            break
        r = 1 / (a - r)
    return NcfExpansion(tuple(coeffs))
