"""Tropical (min-plus) weights over the 64-bit integers extended with +infinity.

The weight domain is Z union {INF}.  Tropical addition is ``min`` and
tropical multiplication is ordinary integer addition, with INF absorbing.
All finite arithmetic is checked against the signed 64-bit range; leaving
it raises :class:`WeightOverflow` rather than wrapping or degrading to
floats.
"""

from __future__ import annotations

from typing import Iterable, Union

MAX_WEIGHT = 2**63 - 1
MIN_WEIGHT = -(2**63)


class WeightOverflow(ArithmeticError):
    """A finite weight left the signed 64-bit range."""


class _Infinity:
    """Singleton +infinity sentinel, absorbing under tropical multiplication.

    Compares strictly above every int so the builtin ``min``/``sorted``
    work on mixed values.  Only one instance (``INF``) exists.
    """

    __slots__ = ()

    def __lt__(self, other: object) -> bool:
        return False

    def __le__(self, other: object) -> bool:
        return other is INF

    def __gt__(self, other: object) -> bool:
        return other is not INF

    def __ge__(self, other: object) -> bool:
        return True

    def __eq__(self, other: object) -> bool:
        return other is INF

    def __hash__(self) -> int:
        return hash("minplus.INF")

    def __add__(self, other: object) -> "_Infinity":
        return INF

    __radd__ = __add__

    def __repr__(self) -> str:
        return "inf"


INF = _Infinity()

Weight = Union[int, _Infinity]


def is_finite(w: Weight) -> bool:
    return w is not INF


def check_weight(value: int) -> int:
    """Validate a finite weight against the 64-bit range."""
    if not isinstance(value, int) or isinstance(value, bool):
        raise TypeError(f"finite weight must be an int, got {value!r}")
    if value > MAX_WEIGHT or value < MIN_WEIGHT:
        raise WeightOverflow(f"weight {value} outside signed 64-bit range")
    return value


def wsum(a: Weight, b: Weight) -> Weight:
    """Tropical multiplication: checked integer addition, INF absorbing."""
    if a is INF or b is INF:
        return INF
    s = a + b
    if s > MAX_WEIGHT or s < MIN_WEIGHT:
        raise WeightOverflow(f"{a} + {b} overflows signed 64-bit range")
    return s


def wmin(a: Weight, b: Weight) -> Weight:
    """Tropical addition: minimum, with INF as the identity."""
    if a is INF:
        return b
    if b is INF:
        return a
    return a if a <= b else b


def wmin_all(values: Iterable[Weight]) -> Weight:
    best: Weight = INF
    for v in values:
        best = wmin(best, v)
    return best


def weight_to_json(w: Weight) -> "int | str":
    return "inf" if w is INF else w


def weight_from_json(value: "int | str") -> Weight:
    if value == "inf":
        return INF
    if isinstance(value, int) and not isinstance(value, bool):
        return check_weight(value)
    raise ValueError(f"not a weight: {value!r}")
