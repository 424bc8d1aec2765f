"""Exact rational polynomials in the CSIT-quality exponent ``a``.

Every power exponent, payload prefactor and region coefficient in this
package is a polynomial in the quality exponent ``a`` (the estimation
error variance scales as ``P**-a``).  DoF bookkeeping must be exact, so
coefficients are :class:`fractions.Fraction` throughout; no floats enter
any symbolic computation.

Two shapes cover everything that occurs:

* :class:`AffineAlpha` -- ``c0 + c1*a``; exponents and payloads.
* :class:`PolyAlpha`   -- degree <= 2; region right-hand sides such as
  ``(2+a)*(3+a)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

RationalLike = Union[int, str, Fraction]


def as_fraction(x: RationalLike) -> Fraction:
    """Coerce ints, ``"p/q"`` strings and Fractions to an exact Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"not an exact rational: {x!r}")


def format_fraction(x: Fraction) -> str:
    """Render as ``p/q`` (or plain ``p`` for integers)."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class AffineAlpha:
    """Exact affine function ``c0 + c1*a`` of the quality exponent."""

    c0: Fraction
    c1: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "c0", as_fraction(self.c0))
        object.__setattr__(self, "c1", as_fraction(self.c1))

    # -- construction helpers -------------------------------------------------

    @staticmethod
    def const(x: RationalLike) -> "AffineAlpha":
        return AffineAlpha(as_fraction(x), Fraction(0))

    @staticmethod
    def alpha() -> "AffineAlpha":
        """The identity function ``a``."""
        return AffineAlpha(Fraction(0), Fraction(1))

    @staticmethod
    def one_minus_alpha() -> "AffineAlpha":
        return AffineAlpha(Fraction(1), Fraction(-1))

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other: "AffineAlpha") -> "AffineAlpha":
        o = _coerce_affine(other)
        return AffineAlpha(self.c0 + o.c0, self.c1 + o.c1)

    __radd__ = __add__

    def __sub__(self, other: "AffineAlpha") -> "AffineAlpha":
        o = _coerce_affine(other)
        return AffineAlpha(self.c0 - o.c0, self.c1 - o.c1)

    def __rsub__(self, other) -> "AffineAlpha":
        return _coerce_affine(other) - self

    def __neg__(self) -> "AffineAlpha":
        return AffineAlpha(-self.c0, -self.c1)

    def scale(self, k: RationalLike) -> "AffineAlpha":
        k = as_fraction(k)
        return AffineAlpha(self.c0 * k, self.c1 * k)

    def __mul__(self, k: RationalLike) -> "AffineAlpha":
        return self.scale(k)

    __rmul__ = __mul__

    def __truediv__(self, k: RationalLike) -> "AffineAlpha":
        return self.scale(Fraction(1) / as_fraction(k))

    # -- evaluation and order -------------------------------------------------

    def at(self, alpha: RationalLike) -> Fraction:
        """Exact value at a rational quality exponent."""
        a = as_fraction(alpha)
        return self.c0 + self.c1 * a

    def is_nonneg_on_unit(self) -> bool:
        """True iff the function is >= 0 for every a in [0, 1].

        Affine functions attain their extrema at the interval endpoints,
        so checking a = 0 and a = 1 is exact.
        """
        return self.c0 >= 0 and self.c0 + self.c1 >= 0

    def is_zero(self) -> bool:
        return self.c0 == 0 and self.c1 == 0

    def crossing(self, other: "AffineAlpha") -> Fraction | None:
        """The a where the two affine functions meet, if unique."""
        o = _coerce_affine(other)
        if self.c1 == o.c1:
            return None
        return (o.c0 - self.c0) / (self.c1 - o.c1)

    def __str__(self) -> str:
        if self.c1 == 0:
            return format_fraction(self.c0)
        if self.c0 == 0:
            return f"{format_fraction(self.c1)}*a"
        sign = "+" if self.c1 > 0 else "-"
        return f"{format_fraction(self.c0)} {sign} {format_fraction(abs(self.c1))}*a"

    # -- serialization --------------------------------------------------------

    def to_doc(self) -> dict:
        return {"c0": format_fraction(self.c0), "c1": format_fraction(self.c1)}

    @staticmethod
    def from_doc(doc: dict) -> "AffineAlpha":
        return AffineAlpha(as_fraction(doc["c0"]), as_fraction(doc.get("c1", 0)))


def _coerce_affine(x) -> AffineAlpha:
    if isinstance(x, AffineAlpha):
        return x
    return AffineAlpha.const(as_fraction(x))


# Handy module-level constants.
ZERO = AffineAlpha.const(0)
ONE = AffineAlpha.const(1)
ALPHA = AffineAlpha.alpha()
ONE_MINUS_ALPHA = AffineAlpha.one_minus_alpha()


@dataclass(frozen=True)
class PolyAlpha:
    """Exact polynomial in ``a`` of degree <= 2, as coefficient tuple.

    ``coeffs[k]`` multiplies ``a**k``.  Degree two is all the region
    descriptions require (products of two affine bounds).
    """

    coeffs: tuple

    def __post_init__(self):
        cs = tuple(as_fraction(c) for c in self.coeffs)
        while len(cs) > 1 and cs[-1] == 0:
            cs = cs[:-1]
        if len(cs) > 3:
            raise ValueError("degree above 2 is never needed here")
        object.__setattr__(self, "coeffs", cs)

    @staticmethod
    def const(x: RationalLike) -> "PolyAlpha":
        return PolyAlpha((as_fraction(x),))

    @staticmethod
    def affine(c0: RationalLike, c1: RationalLike = 0) -> "PolyAlpha":
        return PolyAlpha((as_fraction(c0), as_fraction(c1)))

    @staticmethod
    def from_affine(f: AffineAlpha) -> "PolyAlpha":
        return PolyAlpha((f.c0, f.c1))

    def at(self, alpha: RationalLike) -> Fraction:
        a = as_fraction(alpha)
        out = Fraction(0)
        for c in reversed(self.coeffs):
            out = out * a + c
        return out

    def __add__(self, other: "PolyAlpha") -> "PolyAlpha":
        o = _coerce_poly(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return PolyAlpha(tuple(self[k] + o[k] for k in range(n)))

    __radd__ = __add__

    def __sub__(self, other: "PolyAlpha") -> "PolyAlpha":
        return self + (-_coerce_poly(other))

    def __neg__(self) -> "PolyAlpha":
        return PolyAlpha(tuple(-c for c in self.coeffs))

    def __mul__(self, other) -> "PolyAlpha":
        o = _coerce_poly(other)
        deg = (len(self.coeffs) - 1) + (len(o.coeffs) - 1)
        if deg > 2:
            raise ValueError("product would exceed degree 2")
        out = [Fraction(0)] * (deg + 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(o.coeffs):
                out[i + j] += a * b
        return PolyAlpha(tuple(out))

    __rmul__ = __mul__

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if k < len(self.coeffs) else Fraction(0)

    def __str__(self) -> str:
        names = ["", "*a", "*a^2"]
        parts = [
            f"{format_fraction(c)}{names[k]}"
            for k, c in enumerate(self.coeffs)
            if c != 0
        ]
        return " + ".join(parts) if parts else "0"

    def to_doc(self) -> list:
        return [format_fraction(c) for c in self.coeffs]

    @staticmethod
    def from_doc(doc: Iterable) -> "PolyAlpha":
        return PolyAlpha(tuple(as_fraction(c) for c in doc))


def _coerce_poly(x) -> PolyAlpha:
    if isinstance(x, PolyAlpha):
        return x
    if isinstance(x, AffineAlpha):
        return PolyAlpha.from_affine(x)
    return PolyAlpha.const(as_fraction(x))
