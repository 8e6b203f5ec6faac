"""Exact arithmetic in the space Q + Q*theta + Q*theta^2.

The rotation parameter theta is treated as a formal transcendental, so a
triple of rationals (p, q, r) represents p + q*theta + r*theta^2 uniquely.
Degree is capped at two: that is exactly what the lattice-time formulas
need (an integer times theta times theta appears, nothing higher), and the
cap turns silent precision loss into a loud DegreeOverflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DegreeOverflow, InvalidMu, PoleAtTheta

Rational = Union[int, Fraction]


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected int or Fraction, got {type(value).__name__}")


@dataclass(frozen=True)
class ThetaScalar:
    """p + q*theta + r*theta^2 with rational p, q, r."""

    p: Fraction = Fraction(0)
    q: Fraction = Fraction(0)
    r: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "p", _as_fraction(self.p))
        object.__setattr__(self, "q", _as_fraction(self.q))
        object.__setattr__(self, "r", _as_fraction(self.r))

    @classmethod
    def of(cls, value) -> "ThetaScalar":
        """Coerce an int, Fraction or ThetaScalar."""
        if isinstance(value, ThetaScalar):
            return value
        return cls(_as_fraction(value))

    @classmethod
    def theta(cls, coeff: Rational = 1) -> "ThetaScalar":
        return cls(Fraction(0), _as_fraction(coeff), Fraction(0))

    @classmethod
    def theta_squared(cls, coeff: Rational = 1) -> "ThetaScalar":
        return cls(Fraction(0), Fraction(0), _as_fraction(coeff))

    # ---- ring operations -------------------------------------------------

    def __add__(self, other) -> "ThetaScalar":
        o = ThetaScalar.of(other)
        return ThetaScalar(self.p + o.p, self.q + o.q, self.r + o.r)

    __radd__ = __add__

    def __neg__(self) -> "ThetaScalar":
        return ThetaScalar(-self.p, -self.q, -self.r)

    def __sub__(self, other) -> "ThetaScalar":
        return self + (-ThetaScalar.of(other))

    def __rsub__(self, other) -> "ThetaScalar":
        return ThetaScalar.of(other) + (-self)

    def __mul__(self, other) -> "ThetaScalar":
        o = ThetaScalar.of(other)
        # convolution of coefficient triples; degrees 3 and 4 must vanish
        deg3 = self.q * o.r + self.r * o.q
        deg4 = self.r * o.r
        if deg3 != 0 or deg4 != 0:
            raise DegreeOverflow(
                f"product ({self}) * ({o}) has a theta^3 or theta^4 part"
            )
        return ThetaScalar(
            self.p * o.p,
            self.p * o.q + self.q * o.p,
            self.p * o.r + self.q * o.q + self.r * o.p,
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> "ThetaScalar":
        o = ThetaScalar.of(other)
        if o.q != 0 or o.r != 0:
            raise ValueError("exact division only by rational scalars")
        if o.p == 0:
            raise ZeroDivisionError("division by zero scalar")
        inv = Fraction(1) / o.p
        return ThetaScalar(self.p * inv, self.q * inv, self.r * inv)

    # ---- predicates and views -------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.q == 0 and self.r == 0

    @property
    def is_integer(self) -> bool:
        return self.is_rational and self.p.denominator == 1

    def as_integer(self) -> int:
        if not self.is_integer:
            raise ValueError(f"{self} is not an integer")
        return int(self.p)

    def evalf(self, theta: float) -> float:
        return float(self.p) + float(self.q) * theta + float(self.r) * theta * theta

    def __repr__(self) -> str:
        parts = []
        if self.p or not (self.q or self.r):
            parts.append(str(self.p))
        if self.q:
            parts.append(f"{self.q}*theta")
        if self.r:
            parts.append(f"{self.r}*theta^2")
        return " + ".join(parts).replace("+ -", "- ")


ZERO = ThetaScalar()
ONE = ThetaScalar(Fraction(1))
THETA = ThetaScalar.theta()


def scalar_arith(lhs, op: str, rhs) -> ThetaScalar:
    """Dispatch +, -, * on ThetaScalar operands."""
    a, b = ThetaScalar.of(lhs), ThetaScalar.of(rhs)
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def scalar_eval(value, theta: float) -> float:
    """Numeric value of a ThetaScalar or TorusPoint at a concrete theta."""
    if isinstance(value, TorusPoint):
        return value.evalf(theta)
    return ThetaScalar.of(value).evalf(theta)


@dataclass(frozen=True)
class TorusPoint:
    """A point of R/Z written as [x] for x in Q + Q*theta + Q*theta^2.

    The stored representative is canonical: the rational part lies in [0, 1)
    while the theta parts are untouched. Because 1, theta, theta^2 are
    linearly independent over Q, two canonical representatives are equal in
    the circle iff they are equal on the nose, so equality is structural.
    """

    x: ThetaScalar

    def __post_init__(self):
        s = ThetaScalar.of(self.x)
        shift = math.floor(s.p)
        object.__setattr__(self, "x", ThetaScalar(s.p - shift, s.q, s.r))

    def __add__(self, other) -> "TorusPoint":
        o = other.x if isinstance(other, TorusPoint) else ThetaScalar.of(other)
        return TorusPoint(self.x + o)

    __radd__ = __add__

    def __sub__(self, other) -> "TorusPoint":
        o = other.x if isinstance(other, TorusPoint) else ThetaScalar.of(other)
        return TorusPoint(self.x - o)

    def __neg__(self) -> "TorusPoint":
        return TorusPoint(-self.x)

    def scale(self, factor: Rational) -> "TorusPoint":
        # well defined only for integer factors; guarded for that reason
        f = _as_fraction(factor)
        if f.denominator != 1:
            raise ValueError("circle points only scale by integers")
        return TorusPoint(self.x * f)

    def evalf(self, theta: float) -> float:
        return self.x.evalf(theta) % 1.0

    def __repr__(self) -> str:
        return f"[{self.x}]"


def torus_reduce(value) -> TorusPoint:
    """Reduce a scalar modulo 1 to its canonical circle representative."""
    if isinstance(value, TorusPoint):
        return value
    return TorusPoint(ThetaScalar.of(value))


@dataclass(frozen=True)
class IntMatrix2:
    """2x2 integer matrix [[a, b], [c, d]], usually with det = +-1."""

    a: int
    b: int
    c: int
    d: int

    @classmethod
    def identity(cls) -> "IntMatrix2":
        return cls(1, 0, 0, 1)

    @classmethod
    def from_rows(cls, rows) -> "IntMatrix2":
        (a, b), (c, d) = rows
        return cls(int(a), int(b), int(c), int(d))

    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other: "IntMatrix2") -> "IntMatrix2":
        return IntMatrix2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "IntMatrix2":
        det = self.det()
        if det not in (1, -1):
            raise ValueError(f"matrix with det {det} has no integer inverse")
        return IntMatrix2(self.d * det, -self.b * det, -self.c * det, self.a * det)

    def apply_pair(self, x, y):
        """Image of a column vector, entries ThetaScalar, TorusPoint or numeric."""
        if isinstance(x, TorusPoint) or isinstance(y, TorusPoint):
            xs = x.x if isinstance(x, TorusPoint) else ThetaScalar.of(x)
            ys = y.x if isinstance(y, TorusPoint) else ThetaScalar.of(y)
            return (
                TorusPoint(xs * self.a + ys * self.b),
                TorusPoint(xs * self.c + ys * self.d),
            )
        if isinstance(x, ThetaScalar) or isinstance(y, ThetaScalar):
            xs, ys = ThetaScalar.of(x), ThetaScalar.of(y)
            return (xs * self.a + ys * self.b, xs * self.c + ys * self.d)
        return (self.a * x + self.b * y, self.c * x + self.d * y)

    def is_upper_triangular(self) -> bool:
        return self.c == 0

    def rows(self):
        return ((self.a, self.b), (self.c, self.d))

    def __repr__(self) -> str:
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


def mobius_defect(g: IntMatrix2) -> ThetaScalar:
    """Denominator-cleared displacement of theta under the fractional action.

    For g = [[a, b], [c, d]] this is (a*theta + b) - theta*(c*theta + d),
    i.e. b + (a - d)*theta - c*theta^2. It vanishes exactly when the
    fractional-linear action of g fixes theta.
    """
    return ThetaScalar(Fraction(g.b), Fraction(g.a - g.d), Fraction(-g.c))


def mobius_transform(g: IntMatrix2, theta: float) -> float:
    """Fractional-linear action (a*theta + b) / (c*theta + d)."""
    den = g.c * theta + g.d
    if den == 0.0:
        raise PoleAtTheta(f"{g} has a pole at theta = {theta}")
    return (g.a * theta + g.b) / den


def require_nonzero_defect(g: IntMatrix2) -> ThetaScalar:
    """mobius_defect(g), raising InvalidMu when it vanishes identically."""
    mu = mobius_defect(g)
    if mu.p == 0 and mu.q == 0 and mu.r == 0:
        raise InvalidMu(f"{g} fixes theta formally; transversal formulas divide by zero")
    return mu
