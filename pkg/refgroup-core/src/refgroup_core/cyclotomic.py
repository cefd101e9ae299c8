"""Exact arithmetic in the 8th cyclotomic field Q(zeta).

Elements are stored over the power basis 1, zeta, zeta^2, zeta^3 with
zeta^4 = -1, so i = zeta^2 and sqrt(2) = zeta - zeta^3. Every gate used by
the group constructors has entries in this field.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import TYPE_CHECKING

import sympy

from refgroup_core.exceptions import CyclotomicZeroDivisionError, ParseError

if TYPE_CHECKING:
    from collections.abc import Iterable

type Coefficients = tuple[Fraction, Fraction, Fraction, Fraction]
type Scalar = CycEight | Fraction | int

_TERM = re.compile(r"(0|-?[1-9]\d*)(?:/([1-9]\d*))?")


def _fraction(value: Fraction | int) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


@dataclass(slots=True, frozen=True)
class CycEight:
    """An element c0 + c1*zeta + c2*zeta^2 + c3*zeta^3 of Q(zeta_8)."""

    """Rational coefficients over the power basis"""
    coeffs: Coefficients

    @classmethod
    def of(cls, *coeffs: Fraction | int) -> CycEight:
        """Builds an element from up to four coefficients, padding with zeros."""
        if len(coeffs) > 4:  # noqa: PLR2004
            msg = f"expected at most 4 coefficients, got {len(coeffs)}"
            raise ValueError(msg)
        padded = [*map(_fraction, coeffs), *(Fraction(0),) * (4 - len(coeffs))]
        return cls(coeffs=(padded[0], padded[1], padded[2], padded[3]))

    @classmethod
    def coerce(cls, value: Scalar) -> CycEight:
        """Lifts integers and fractions into the field."""
        if isinstance(value, CycEight):
            return value
        return cls.of(value)

    def is_zero(self) -> bool:
        """True for the additive identity."""
        return not any(self.coeffs)

    def is_real(self) -> bool:
        """True when complex conjugation fixes the element."""
        return self.conj() == self

    def __add__(self, other: Scalar) -> CycEight:
        b = CycEight.coerce(other).coeffs
        a = self.coeffs
        return CycEight(coeffs=(a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]))

    __radd__ = __add__

    def __neg__(self) -> CycEight:
        a = self.coeffs
        return CycEight(coeffs=(-a[0], -a[1], -a[2], -a[3]))

    def __sub__(self, other: Scalar) -> CycEight:
        return self + (-CycEight.coerce(other))

    def __rsub__(self, other: Scalar) -> CycEight:
        return CycEight.coerce(other) - self

    def __mul__(self, other: Scalar) -> CycEight:
        b = CycEight.coerce(other).coeffs
        a = self.coeffs
        full = [Fraction(0)] * 7
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                full[i + j] += ai * bj
        # zeta^4 = -1
        return CycEight(
            coeffs=(
                full[0] - full[4],
                full[1] - full[5],
                full[2] - full[6],
                full[3],
            )
        )

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> CycEight:
        return self * CycEight.coerce(other).inv()

    def __rtruediv__(self, other: Scalar) -> CycEight:
        return CycEight.coerce(other) * self.inv()

    def __pow__(self, exponent: int) -> CycEight:
        base = self if exponent >= 0 else self.inv()
        result = ONE
        for _ in range(abs(exponent)):
            result *= base
        return result

    def times_zeta(self) -> CycEight:
        """Multiplies by zeta, which rotates the coefficients with a sign."""
        c0, c1, c2, c3 = self.coeffs
        return CycEight(coeffs=(-c3, c0, c1, c2))

    def conj(self) -> CycEight:
        """Complex conjugation, zeta -> zeta^-1 = -zeta^3, extended linearly."""
        c0, c1, c2, c3 = self.coeffs
        return CycEight(coeffs=(c0, -c3, -c2, -c1))

    def inv(self) -> CycEight:
        """Multiplicative inverse.

        Solves the 4x4 rational system whose matrix is multiplication by
        ``self`` in the power basis.

        Raises:
            CyclotomicZeroDivisionError: if ``self`` is zero.
        """
        if self.is_zero():
            msg = "inverse of zero in Q(zeta_8)"
            raise CyclotomicZeroDivisionError(msg)

        columns: list[Coefficients] = []
        power = self
        for _ in range(4):
            columns.append(power.coeffs)
            power = power.times_zeta()
        system = sympy.Matrix(
            [
                [sympy.Rational(c[r].numerator, c[r].denominator) for c in columns]
                for r in range(4)
            ]
        )
        unit = sympy.Matrix([1, 0, 0, 0])
        solution = [sympy.Rational(v) for v in system.LUsolve(unit)]
        return CycEight.of(*(Fraction(int(v.p), int(v.q)) for v in solution))

    def serialize(self) -> str:
        """Text form ``c0,c1,c2,c3`` with each term ``p/q`` in lowest terms."""
        return ",".join(map(_format_fraction, self.coeffs))

    def __str__(self) -> str:
        return self.serialize()


def _format_fraction(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _parse_fraction(text: str) -> Fraction:
    match = _TERM.fullmatch(text)
    if match is None:
        msg = f"malformed rational {text!r}"
        raise ParseError(msg)
    numerator = int(match.group(1))
    if match.group(2) is None:
        return Fraction(numerator)
    denominator = int(match.group(2))
    if denominator == 1 or numerator == 0 or gcd(numerator, denominator) != 1:
        msg = f"rational {text!r} is not in lowest terms"
        raise ParseError(msg)
    return Fraction(numerator, denominator)


def parse_cyc_eight(text: str) -> CycEight:
    """Strict inverse of CycEight.serialize.

    Raises:
        ParseError: on anything other than four canonical rationals.
    """
    parts = text.split(",")
    if len(parts) != 4:  # noqa: PLR2004
        msg = f"expected 4 comma separated coefficients, got {text!r}"
        raise ParseError(msg)
    return CycEight.of(*map(_parse_fraction, parts))


def zeta_power(k: int) -> CycEight:
    """zeta^k for any integer k, as a signed basis vector."""
    k %= 8
    sign = -1 if k >= 4 else 1  # noqa: PLR2004
    coeffs = [0, 0, 0, 0]
    coeffs[k % 4] = sign
    return CycEight.of(*coeffs)


def total(values: Iterable[CycEight]) -> CycEight:
    """Sum of an iterable of field elements."""
    result = ZERO
    for value in values:
        result += value
    return result


ZERO = CycEight.of()
ONE = CycEight.of(1)
ZETA = CycEight.of(0, 1)
I = CycEight.of(0, 0, 1)  # noqa: E741
SQRT2 = CycEight.of(0, 1, 0, -1)
INV_SQRT2 = CycEight.of(0, Fraction(1, 2), 0, Fraction(-1, 2))
