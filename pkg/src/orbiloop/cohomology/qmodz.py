"""Exact coefficient values: ℤ, ℚ and the torsion circle ℚ/ℤ."""
import enum
from typing import Union

from sympy import Integer, Rational

from ..exceptions import SchemaError

__all__ = ["QmodZ", "Coefficients", "format_rational", "parse_rational"]


def parse_rational(text: Union[str, int, Rational]) -> Rational:
    """``"p/q"``, ``"p"`` or an int to a sympy Rational."""
    if isinstance(text, bool):
        raise SchemaError(f"expected a number, got {text!r}")
    if isinstance(text, (int, Integer, Rational)):
        return Rational(text)
    if not isinstance(text, str):
        raise SchemaError(f"expected a number or 'p/q', got {text!r}")
    parts = text.strip().split("/")
    try:
        if len(parts) == 1:
            return Rational(int(parts[0]))
        if len(parts) == 2:
            return Rational(int(parts[0]), int(parts[1]))
    except (ValueError, ZeroDivisionError):
        pass
    raise SchemaError(f"'{text}' is not a fraction p/q")


def format_rational(value: Rational) -> Union[int, str]:
    """JSON form: integers as ints, other values as ``"p/q"``."""
    value = Rational(value)
    if value.q == 1:
        return int(value.p)
    return f"{value.p}/{value.q}"


class QmodZ:
    """An element of ℚ/ℤ, stored as the reduced fraction ``p/q`` with ``0 <= p < q``.

    ``p/q`` stands for ``exp(2πi p/q)`` in U(1).
    """

    __slots__ = ("_value",)

    def __init__(self, numerator: Union[int, Rational, "QmodZ"] = 0, denominator: int = 1):
        if isinstance(numerator, QmodZ):
            value = numerator._value
        else:
            value = Rational(numerator, denominator)
        self._value = value - (value.p // value.q)

    @classmethod
    def parse(cls, value) -> "QmodZ":
        if isinstance(value, QmodZ):
            return value
        return cls(parse_rational(value))

    @property
    def numerator(self) -> int:
        return int(self._value.p)

    @property
    def denominator(self) -> int:
        return int(self._value.q)

    @property
    def order(self) -> int:
        """Order in ℚ/ℤ, equal to the reduced denominator."""
        return self.denominator

    def lift(self) -> Rational:
        """Representative in ``[0, 1)``."""
        return self._value

    def is_zero(self) -> bool:
        return self._value == 0

    def __add__(self, other):
        if isinstance(other, QmodZ):
            return QmodZ(self._value + other._value)
        if isinstance(other, (int, Integer)):
            return self
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return QmodZ(-self._value)

    def __sub__(self, other):
        if isinstance(other, QmodZ):
            return QmodZ(self._value - other._value)
        if isinstance(other, (int, Integer)):
            return self
        return NotImplemented

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, k):
        if isinstance(k, (int, Integer)) and not isinstance(k, bool):
            return QmodZ(self._value * int(k))
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, QmodZ):
            return self._value == other._value
        if isinstance(other, (int, Integer)):
            return self._value == 0
        return NotImplemented

    def __hash__(self):
        return hash(("QmodZ", self._value))

    def __lt__(self, other):
        return self._value < QmodZ.parse(other)._value

    def __str__(self):
        return "0" if self._value == 0 else f"{self._value.p}/{self._value.q}"

    def __repr__(self):
        return f"QmodZ({self})"

    def to_json(self) -> Union[int, str]:
        return 0 if self._value == 0 else str(self)


class Coefficients(enum.Enum):
    """Coefficient groups of cochains.

    Each member knows how to parse, reduce and print values of its group.
    """

    Z = "Z"
    Q = "Q"
    QMODZ = "QmodZ"

    @classmethod
    def parse(cls, name: str) -> "Coefficients":
        for member in cls:
            if member.value == name:
                return member
        raise SchemaError(f"unknown coefficients '{name}', expected one of Z, Q, QmodZ")

    @property
    def symbol(self) -> str:
        return {"Z": "Z", "Q": "Q", "QmodZ": "Q/Z"}[self.value]

    def zero(self):
        return QmodZ(0) if self is Coefficients.QMODZ else Integer(0)

    def coerce(self, value):
        """Parse ``value`` into this coefficient group.

        Raises:
            SchemaError: If ``value`` is not an element (for example a proper
                fraction for ℤ coefficients).
        """
        if self is Coefficients.QMODZ:
            return QmodZ.parse(value)
        if isinstance(value, QmodZ):
            raise SchemaError(f"{value} is a Q/Z value, expected {self.symbol}")
        rational = parse_rational(value)
        if self is Coefficients.Z and rational.q != 1:
            raise SchemaError(f"{rational} is not an integer")
        return rational

    def to_json(self, value):
        if self is Coefficients.QMODZ:
            return QmodZ.parse(value).to_json()
        return format_rational(value)
