"""Exact arithmetic in cyclotomic extensions of the rationals.

Elements live in Q[z] modulo the n-th cyclotomic polynomial, which is enough
to decide polynomial identities in a primitive n-th root of unity.  Only ring
operations are provided; nothing here ever needs division by a non-rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[Fraction, ...]:
    """Coefficients of the n-th cyclotomic polynomial, low degree first."""
    if n < 1:
        raise ValueError("n must be positive")
    # z^n - 1 divided by the product of the proper-divisor cyclotomics
    poly = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divide_exact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def _poly_divide_exact(num: list[Fraction], den: list[Fraction]) -> list[Fraction]:
    num = list(num)
    out = [Fraction(0)] * (len(num) - len(den) + 1)
    while len(num) >= len(den) and any(num):
        shift = len(num) - len(den)
        factor = num[-1] / den[-1]
        out[shift] = factor
        for i, c in enumerate(den):
            num[shift + i] -= factor * c
        while num and num[-1] == 0:
            num.pop()
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return out


@dataclass(frozen=True)
class CyclotomicNumber:
    """A residue modulo the order-n cyclotomic polynomial."""

    order: int
    coeffs: tuple[Fraction, ...]

    @staticmethod
    def of(order: int, value) -> "CyclotomicNumber":
        degree = len(cyclotomic_polynomial(order)) - 1
        coeffs = [Fraction(0)] * degree
        coeffs[0] = Fraction(value)
        return CyclotomicNumber(order, tuple(coeffs))

    @staticmethod
    def root(order: int) -> "CyclotomicNumber":
        """The class of z: a primitive root of unity of the given order."""
        degree = len(cyclotomic_polynomial(order)) - 1
        coeffs = [Fraction(0)] * degree
        if degree == 1:
            # linear modulus: z is congruent to the rational root
            modulus = cyclotomic_polynomial(order)
            coeffs[0] = -modulus[0] / modulus[1]
        else:
            coeffs[1] = Fraction(1)
        return CyclotomicNumber(order, tuple(coeffs))

    def _check(self, other: "CyclotomicNumber") -> None:
        if self.order != other.order:
            raise ValueError("mixed cyclotomic orders")

    def __add__(self, other):
        other = _coerce(self.order, other)
        return CyclotomicNumber(self.order, tuple(a + b for a, b in
                                                  zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        other = _coerce(self.order, other)
        return CyclotomicNumber(self.order, tuple(a - b for a, b in
                                                  zip(self.coeffs, other.coeffs)))

    def __mul__(self, other):
        other = _coerce(self.order, other)
        modulus = list(cyclotomic_polynomial(self.order))
        degree = len(modulus) - 1
        prod = [Fraction(0)] * (2 * degree - 1) if degree > 0 else [Fraction(0)]
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b != 0:
                    prod[i + j] += a * b
        # reduce modulo the monic-normalized modulus
        lead = modulus[-1]
        monic = [c / lead for c in modulus]
        for i in range(len(prod) - 1, degree - 1, -1):
            factor = prod[i]
            if factor != 0:
                for j in range(len(monic)):
                    prod[i - degree + j] -= factor * monic[j]
        return CyclotomicNumber(self.order, tuple(prod[:degree]))

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return _coerce(self.order, other) - self

    def __neg__(self):
        return CyclotomicNumber(self.order, tuple(-a for a in self.coeffs))

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not needed here")
        out = CyclotomicNumber.of(self.order, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)


def _coerce(order: int, value) -> CyclotomicNumber:
    if isinstance(value, CyclotomicNumber):
        if value.order != order:
            raise ValueError("mixed cyclotomic orders")
        return value
    return CyclotomicNumber.of(order, value)
