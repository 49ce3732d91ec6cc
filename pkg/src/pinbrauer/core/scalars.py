"""Exact scalars: the quadratic field Q(sqrt2) and polynomials in X over it.

Every coefficient of the construction lives in Q(sqrt2): the spinor embeddings
carry factors 2^{m/2}, and the diagram algebra keeps N as an indeterminate X.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple, Union

from pinbrauer.core.errors import InvalidInputError, InvalidOperandError

RationalLike = Union[int, Fraction]

_RATIONAL = r"[-+]?\d+(?:/\d+)?"
_SCALAR_RE = re.compile(
    rf"^(?:(?P<a>{_RATIONAL})(?:\s*\+\s*(?P<b>{_RATIONAL})\*sqrt2)?|(?P<b_only>{_RATIONAL})\*sqrt2)$"
)


class QSqrt2:
    """Immutable element a + b*sqrt2 with rational a and b."""

    __slots__ = ("_a", "_b")

    def __init__(self, a: RationalLike = 0, b: RationalLike = 0) -> None:
        self._a = Fraction(a)
        self._b = Fraction(b)

    @property
    def a(self) -> Fraction:
        return self._a

    @property
    def b(self) -> Fraction:
        return self._b

    @classmethod
    def coerce(cls, x: "ScalarLike") -> "QSqrt2":
        if isinstance(x, QSqrt2):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x, 0)
        raise InvalidInputError(f"cannot interpret {x!r} as an element of Q(sqrt2)")

    @classmethod
    def sqrt2(cls) -> "QSqrt2":
        return cls(0, 1)

    def is_zero(self) -> bool:
        return self._a == 0 and self._b == 0

    def is_rational(self) -> bool:
        return self._b == 0

    def conjugate(self) -> "QSqrt2":
        return QSqrt2(self._a, -self._b)

    def norm(self) -> Fraction:
        return self._a * self._a - 2 * self._b * self._b

    def inverse(self) -> "QSqrt2":
        if self.is_zero():
            raise InvalidOperandError("division by zero in Q(sqrt2)")
        nrm = self.norm()
        return QSqrt2(self._a / nrm, -self._b / nrm)

    def __add__(self, other: "ScalarLike") -> "QSqrt2":
        try:
            o = QSqrt2.coerce(other)
        except InvalidInputError:
            return NotImplemented
        return QSqrt2(self._a + o._a, self._b + o._b)

    __radd__ = __add__

    def __neg__(self) -> "QSqrt2":
        return QSqrt2(-self._a, -self._b)

    def __sub__(self, other: "ScalarLike") -> "QSqrt2":
        try:
            o = QSqrt2.coerce(other)
        except InvalidInputError:
            return NotImplemented
        return QSqrt2(self._a - o._a, self._b - o._b)

    def __rsub__(self, other: "ScalarLike") -> "QSqrt2":
        return QSqrt2.coerce(other) - self

    def __mul__(self, other: "ScalarLike") -> "QSqrt2":
        if isinstance(other, (int, Fraction)):
            return QSqrt2(self._a * other, self._b * other)
        if not isinstance(other, QSqrt2):
            return NotImplemented
        a, b, c, d = self._a, self._b, other._a, other._b
        return QSqrt2(a * c + 2 * b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other: "ScalarLike") -> "QSqrt2":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise InvalidOperandError("division by zero in Q(sqrt2)")
            return QSqrt2(self._a / other, self._b / other)
        if not isinstance(other, QSqrt2):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: "ScalarLike") -> "QSqrt2":
        return QSqrt2.coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> "QSqrt2":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result, base = QSqrt2(1), self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QSqrt2):
            return self._a == other._a and self._b == other._b
        if isinstance(other, (int, Fraction)):
            return self._b == 0 and self._a == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._b == 0:
            return hash(self._a)
        return hash((self._a, self._b))

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        return f"QSqrt2({self._a}, {self._b})"

    def __str__(self) -> str:
        if self._b == 0:
            return str(self._a)
        if self._a == 0:
            return f"{self._b}*sqrt2"
        return f"{self._a} + {self._b}*sqrt2"

    @classmethod
    def parse(cls, text: str) -> "QSqrt2":
        """Parse the canonical textual form "a/b + c/d*sqrt2"."""
        s = text.strip()
        m = _SCALAR_RE.match(s)
        if m is None:
            raise InvalidInputError(f"malformed scalar: {text!r}")
        a = Fraction(m.group("a") or 0)
        b = Fraction(m.group("b") or m.group("b_only") or 0)
        return cls(a, b)


ScalarLike = Union[QSqrt2, int, Fraction]

ZERO = QSqrt2(0)
ONE = QSqrt2(1)
SQRT2 = QSqrt2(0, 1)


def pow2_half(m: int) -> QSqrt2:
    """Return 2^{m/2} exactly, for any integer m."""
    if m % 2 == 0:
        return QSqrt2(Fraction(2) ** (m // 2))
    return QSqrt2(0, Fraction(2) ** ((m - 1) // 2))


def scalar_arith(op: str, x: ScalarLike, y: ScalarLike) -> QSqrt2:
    """Apply one of "+", "-", "*", "/" to two field elements."""
    x, y = QSqrt2.coerce(x), QSqrt2.coerce(y)
    if op == "+":
        return x + y
    if op == "-":
        return x - y
    if op == "*":
        return x * y
    if op == "/":
        return x / y
    raise InvalidInputError(f"unknown operator {op!r}")


class PolyX:
    """Univariate polynomial in X over Q(sqrt2), lowest degree first."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[ScalarLike] = ()) -> None:
        cs: List[QSqrt2] = [QSqrt2.coerce(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self._coeffs: Tuple[QSqrt2, ...] = tuple(cs)

    @classmethod
    def x(cls) -> "PolyX":
        return cls((0, 1))

    @classmethod
    def constant(cls, c: ScalarLike) -> "PolyX":
        return cls((c,))

    @classmethod
    def coerce(cls, p: Union["PolyX", ScalarLike]) -> "PolyX":
        if isinstance(p, PolyX):
            return p
        return cls.constant(p)

    @property
    def coeffs(self) -> Tuple[QSqrt2, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    def is_zero(self) -> bool:
        return not self._coeffs

    def __add__(self, other: Union["PolyX", ScalarLike]) -> "PolyX":
        o = PolyX.coerce(other)
        size = max(len(self._coeffs), len(o._coeffs))
        return PolyX(
            (self._coeffs[i] if i < len(self._coeffs) else ZERO)
            + (o._coeffs[i] if i < len(o._coeffs) else ZERO)
            for i in range(size)
        )

    __radd__ = __add__

    def __neg__(self) -> "PolyX":
        return PolyX(-c for c in self._coeffs)

    def __sub__(self, other: Union["PolyX", ScalarLike]) -> "PolyX":
        return self + (-PolyX.coerce(other))

    def __rsub__(self, other: Union["PolyX", ScalarLike]) -> "PolyX":
        return PolyX.coerce(other) - self

    def __mul__(self, other: Union["PolyX", ScalarLike]) -> "PolyX":
        if not isinstance(other, PolyX):
            c = QSqrt2.coerce(other)
            return PolyX(a * c for a in self._coeffs)
        if self.is_zero() or other.is_zero():
            return PolyX()
        out = [ZERO] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            for j, b in enumerate(other._coeffs):
                out[i + j] = out[i + j] + a * b
        return PolyX(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "PolyX":
        result = PolyX.constant(1)
        for _ in range(exponent):
            result = result * self
        return result

    def eval(self, N: ScalarLike) -> QSqrt2:
        acc = ZERO
        for c in reversed(self._coeffs):
            acc = acc * N + c
        return acc

    def __eq__(self, other: object) -> bool:
        if isinstance(other, PolyX):
            return self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction, QSqrt2)):
            return self == PolyX.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        return f"PolyX({[str(c) for c in self._coeffs]})"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts: List[str] = []
        for deg in range(len(self._coeffs) - 1, -1, -1):
            c = self._coeffs[deg]
            if c.is_zero():
                continue
            mono = "" if deg == 0 else ("X" if deg == 1 else f"X^{deg}")
            negative = c.is_rational() and c.a < 0
            mag = -c if negative else c
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            elif mag.is_rational():
                body = f"{mag}*{mono}"
            else:
                body = f"({mag})*{mono}"
            if not parts:
                parts.append(f"-{body}" if negative else body)
            else:
                parts.append(f"{'-' if negative else '+'} {body}")
        return " ".join(parts)

    def to_list(self) -> List[str]:
        return [str(c) for c in self._coeffs]

    @classmethod
    def from_list(cls, items: Sequence[str]) -> "PolyX":
        return cls(QSqrt2.parse(s) for s in items)


X = PolyX.x()


def lower_factorial(x, i: int):
    """x(x-1)...(x-i+1); the empty product for i = 0.

    Works for integers, field elements and PolyX alike.
    """
    if i < 0:
        raise InvalidInputError("lower factorial needs i >= 0")
    result = PolyX.constant(1) if isinstance(x, PolyX) else 1
    for j in range(i):
        result = result * (x - j)
    return result


def poly_eval(p: PolyX, N: int) -> QSqrt2:
    return p.eval(N)
