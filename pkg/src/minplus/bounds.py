"""Recurrence families behind the determinisability gap bound.

Three families are implemented exactly as defined:

* ``simp``: Len, Cov, MaxW, Amp, Typ for the potential-side analysis,
  with H = Amp(n, 0).
* ``gen``: the same shapes for the charge side, threaded through H;
  the headline bound is main_bound(n) = gen Amp(n, 0).
* ``upper``: the single-parameter majorants W, C, T, A, L and the
  recursion-eliminating Len1, Len2 used for the growth-rate placement,
  kept verbatim including their index asymmetries.

Evaluation contract: products evaluate left to right in written order
and stop at the first zero factor without touching later factors; x**0
is 1 without evaluating x.  Exact mode uses gmpy2 integers and refuses
to materialise anything beyond 2**26 bits, raising InfeasibleValue with
a decimal-digit estimate instead.  Saturating mode clips to a cap, and
the cap is absorbing: once saturated, later factors (zero included) no
longer change the value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Tuple, Union

import gmpy2

from .cactus import stabilisation_constant

BITS_GUARD = 1 << 26

FAMILIES = ("simp", "gen", "upper")
LOWER_NAMES = ("Len", "Cov", "MaxW", "Amp", "Typ")
UPPER_NAMES = ("W", "C", "T", "A", "L", "Len1", "Len2")


class UndefinedPointError(ValueError):
    """The recurrences simply do not cover this (d, i) point."""


class InfeasibleValue(RuntimeError):
    """The exact value would not fit in the materialisation budget."""

    def __init__(self, point: str, digits_estimate: int):
        digits_estimate = int(digits_estimate)
        # the estimate itself can outgrow what str() will render
        if digits_estimate.bit_length() > 4000:
            shown = f"about 10**{digits10(digits_estimate) - 1}"
        else:
            shown = str(digits_estimate)
        super().__init__(f"{point} needs about {shown} decimal digits")
        self.point = point
        self.digits_estimate = digits_estimate


class _Sat:
    """Absorbing top element of saturating arithmetic."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "SATURATED"


SATURATED = _Sat()

_Value = Union[int, _Sat]


def digits10(x) -> int:
    """Cheap decimal-digit count from the bit length.

    Deliberately formulaic (never via str) so that independent
    implementations agree digit for digit on infeasibility estimates.
    """
    bits = int(x).bit_length() if not isinstance(x, _Sat) else 0
    return bits * 30103 // 100000 + 1


@dataclass(frozen=True)
class BoundsValue:
    """Result of one evaluation: an exact integer or a saturated cap."""

    value: int
    saturated: bool
    cap: Optional[int] = None

    def __int__(self) -> int:
        if self.saturated:
            raise ValueError(f"saturated at cap {self.cap}")
        return self.value

    __index__ = __int__

    def digits(self) -> int:
        if self.saturated:
            raise ValueError(f"saturated at cap {self.cap}")
        return len(gmpy2.mpz(self.value).digits(10))

    def __repr__(self) -> str:
        if self.saturated:
            return f"BoundsValue(SATURATED, cap={self.cap})"
        return f"BoundsValue({self.value})"


class _Evaluator:
    """One evaluation tree: fixed n, base weight, and mode."""

    def __init__(self, n: int, base_weight: int, cap: Optional[int]):
        if n < 1:
            raise ValueError("n must be at least 1")
        if base_weight < 0:
            raise ValueError("base weight must be nonnegative")
        if cap is not None and cap < 1:
            raise ValueError("saturation cap must be positive")
        self.n = n
        self.b = base_weight
        self.cap = cap
        self.mbar = stabilisation_constant(n)
        self.big = 2 * n * math.factorial(n)      # the majorants' constant
        self.memo: Dict[Tuple, _Value] = {}
        self._H: Optional[_Value] = None

    # -- arithmetic under the evaluation contract -----------------------------

    def _norm(self, v: _Value) -> _Value:
        if isinstance(v, _Sat):
            return v
        if self.cap is not None and v > self.cap:
            return SATURATED
        return v if self.cap is not None else gmpy2.mpz(v)

    def add(self, *terms: _Value) -> _Value:
        total: _Value = 0
        for t in terms:
            if isinstance(t, _Sat) or isinstance(total, _Sat):
                return SATURATED
            total = self._norm(total + t)
            if isinstance(total, _Sat):
                return total
        return total

    def mul(self, *factors) -> _Value:
        """Product of values and thunks, written order, zero short-circuit.

        A zero factor ends evaluation early unless the accumulator has
        already saturated; saturation itself also ends evaluation, since
        the cap absorbs everything including zero.
        """
        acc: _Value = 1 if self.cap is not None else gmpy2.mpz(1)
        for f in factors:
            v = f() if callable(f) else f
            if isinstance(v, _Sat):
                return SATURATED
            if v == 0:
                return SATURATED if isinstance(acc, _Sat) else self._norm(0)
            if isinstance(acc, _Sat):
                return SATURATED
            if self.cap is None and acc.bit_length() + gmpy2.mpz(v).bit_length() > BITS_GUARD:
                raise InfeasibleValue("product", digits10(acc) + digits10(v))
            acc = self._norm(acc * v)
        return acc

    def pow(self, base, exponent, point: str = "power") -> _Value:
        """base ** exponent; the exponent decides whether base is even looked at."""
        e = exponent() if callable(exponent) else exponent
        if isinstance(e, _Sat):
            return SATURATED
        if e == 0:
            return self._norm(1)
        v = base() if callable(base) else base
        if isinstance(v, _Sat):
            return SATURATED
        if v == 0:
            return self._norm(0)
        if v == 1:
            return self._norm(1)
        if self.cap is not None:
            if e > self.cap.bit_length():
                return SATURATED
            return self._norm(int(v) ** int(e))
        v = gmpy2.mpz(v)
        if e * v.bit_length() > BITS_GUARD:
            raise InfeasibleValue(point, int(e) * digits10(v))
        return self._norm(v ** e)

    def ramsey(self, k: _Value) -> _Value:
        """Ramsey(k, 3) through the folklore bound k ** (3 k)."""
        return self.pow(k, lambda: self.mul(3, k), point="Ramsey")

    # -- memo plumbing ---------------------------------------------------------

    def _get(self, key: Tuple, build: Callable[[], _Value]) -> _Value:
        if key not in self.memo:
            self.memo[key] = build()
        return self.memo[key]

    # -- the simple family -----------------------------------------------------

    def simp_len(self, d: int, i: int) -> _Value:
        n = self.n
        if d < 0 or i < 0 or i > n + 1:
            raise UndefinedPointError(f"simp Len({d},{i}) at n={n}")
        if d == 0:
            return self._norm(1)
        if i == n + 1:
            return self._norm(0)
        return self._get(("sL", d, i), lambda: self.mul(
            32 * self.mbar ** 2,
            lambda: self.simp_len(d - 1, 1),
            lambda: self.simp_len(d, i + 1),
            lambda: self.pow(
                lambda: self.add(self.ramsey(self.simp_typ(d, i)), 2),
                lambda: self.add(self.mul(2, lambda: self.simp_amp(d, i)), 1),
                point=f"simp Len({d},{i})")))

    def simp_cov(self, d: int, i: int) -> _Value:
        n = self.n
        if d < 0 or i < 0 or i > n:
            raise UndefinedPointError(f"simp Cov({d},{i}) at n={n}")
        if i == n:
            return self._norm(1)
        if d == 0:
            raise UndefinedPointError(f"simp Cov(0,{i}) has no defining clause")
        return self._get(("sC", d, i), lambda: self.mul(
            8 * self.mbar ** 2,
            lambda: self.add(
                self.mul(lambda: self.simp_maxw(d - 1),
                         lambda: self.simp_len(d - 1, 1),
                         lambda: self.simp_len(d, i + 1)),
                self.simp_cov(d, i + 1))))

    def simp_maxw(self, d: int) -> _Value:
        if d < 0:
            raise UndefinedPointError(f"simp MaxW({d})")
        if d == 0:
            return self._norm(self.b)
        return self._get(("sW", d), lambda: self.mul(
            2 * self.mbar,
            lambda: self.simp_maxw(d - 1),
            lambda: self.simp_len(d, 1)))

    def simp_amp(self, d: int, i: int) -> _Value:
        n = self.n
        if d < 1 or i < 0 or i > n:
            raise UndefinedPointError(f"simp Amp({d},{i}) at n={n}")
        return self._get(("sA", d, i), lambda: self.mul(
            32 * self.mbar ** 2,
            lambda: self.mul(2, lambda: self.simp_maxw(d - 1)),
            lambda: self.add(self.ramsey(self.simp_typ(d, i)),
                             self.simp_len(d, i + 1),
                             self.simp_len(d - 1, 1))))

    def simp_typ(self, d: int, i: int) -> _Value:
        n = self.n
        if d < 1 or i < 0 or i > n:
            raise UndefinedPointError(f"simp Typ({d},{i}) at n={n}")
        return self._get(("sT", d, i), lambda: self.mul(
            lambda: self.pow(3, i),
            lambda: self.pow(
                lambda: self.add(self.mul(2, lambda: self.simp_cov(d, i)), 2),
                2 * n * i,
                point=f"simp Typ({d},{i})")))

    def H(self) -> _Value:
        if self._H is None:
            self._H = self.simp_amp(self.n, 0)
        return self._H

    # -- the general family ------------------------------------------------------

    def gen_len(self, d: int, i: int) -> _Value:
        n = self.n
        if d < 0 or i < 0 or i > n + 1:
            raise UndefinedPointError(f"gen Len({d},{i}) at n={n}")
        if d == 0:
            return self._norm(1)
        if i == n + 1:
            return self._norm(0)
        return self._get(("gL", d, i), lambda: self.mul(
            32 * self.mbar ** 2,
            lambda: self.gen_len(d - 1, 1),
            lambda: self.gen_len(d, i + 1),
            lambda: self.pow(
                lambda: self.add(self.ramsey(self.gen_typ(d, i)), 2),
                lambda: self.add(self.mul(2, lambda: self.gen_amp(d, i)), 1),
                point=f"gen Len({d},{i})")))

    def gen_cov(self, d: int, i: int) -> _Value:
        n = self.n
        if d < 0 or i < 0 or i > n:
            raise UndefinedPointError(f"gen Cov({d},{i}) at n={n}")
        if i == n:
            return self._norm(1)
        if d == 0:
            raise UndefinedPointError(f"gen Cov(0,{i}) has no defining clause")
        return self._get(("gC", d, i), lambda: self.mul(
            8 * self.mbar ** 2,
            lambda: self.add(
                self.mul(lambda: self.gen_maxw(d - 1),
                         lambda: self.gen_len(d - 1, 1),
                         lambda: self.gen_len(d, i + 1)),
                self.gen_cov(d, i + 1),
                self.H())))

    def gen_maxw(self, d: int) -> _Value:
        if d < 0:
            raise UndefinedPointError(f"gen MaxW({d})")
        if d == 0:
            return self._norm(self.b)
        # index 0 here, where the simple family uses 1: kept as defined
        return self._get(("gW", d), lambda: self.mul(
            2 * self.mbar,
            lambda: self.gen_maxw(d - 1),
            lambda: self.gen_len(d, 0)))

    def gen_amp(self, d: int, i: int) -> _Value:
        n = self.n
        if d < 1 or i < 0 or i > n:
            raise UndefinedPointError(f"gen Amp({d},{i}) at n={n}")
        return self._get(("gA", d, i), lambda: self.mul(
            32 * self.mbar ** 2,
            lambda: self.add(self.H(),
                             self.mul(2, lambda: self.gen_maxw(d - 1))),
            lambda: self.add(self.ramsey(self.gen_typ(d, i)),
                             self.gen_len(d, i + 1),
                             self.gen_len(d - 1, 1))))

    def gen_typ(self, d: int, i: int) -> _Value:
        n = self.n
        if d < 1 or i < 0 or i > n:
            raise UndefinedPointError(f"gen Typ({d},{i}) at n={n}")
        return self._get(("gT", d, i), lambda: self.mul(
            lambda: self.pow(3, i),
            lambda: self.pow(
                lambda: self.add(self.mul(2, lambda: self.gen_cov(d, i)), 2),
                2 * n * i,
                point=f"gen Typ({d},{i})")))

    # -- the majorant family -------------------------------------------------------

    def up_w(self, d: int, ld: _Value) -> _Value:
        if d < 0:
            raise UndefinedPointError(f"upper W({d})")
        if d == 0:
            return self._norm(self.n)
        return self.mul(self.big, lambda: self.up_w(d - 1, ld), ld)

    def up_c(self, d: int, i: int, ld: _Value, li: _Value) -> _Value:
        if i < 0:
            raise UndefinedPointError(f"upper C(i={i})")
        if i == 0:
            return self._norm(1)
        return self.mul(
            8 * self.big ** 2,
            lambda: self.add(self.mul(lambda: self.up_w(d, ld), ld, li),
                             self.up_c(d, i - 1, ld, li)))

    def up_t(self, d: int, i: int, ld: _Value, li: _Value) -> _Value:
        return self.mul(
            lambda: self.pow(3, i),
            lambda: self.pow(
                lambda: self.add(self.mul(2, lambda: self.up_c(d, i, ld, li)), 2),
                2 * self.n * i,
                point=f"upper T({d},{i})"))

    def up_a(self, d: int, i: int, ld: _Value, li: _Value) -> _Value:
        # W(n, d-1, .) as written, so d = 0 falls outside the domain
        return self.mul(
            32 * self.big ** 2,
            lambda: self.add(
                self.mul(2, lambda: self.up_w(d - 1, ld),
                         lambda: self.ramsey(self.up_t(d, i, ld, li))),
                li, ld))

    def up_l(self, d: int, i: int, ld: _Value, li: _Value) -> _Value:
        if i < 0:
            raise UndefinedPointError(f"upper L(i={i})")
        if i == 0:
            return self._norm(0)
        return self.mul(
            32 * self.big ** 2,
            lambda: self.pow(
                lambda: self.add(self.mul(ld, li,
                                          lambda: self.ramsey(self.up_t(d, i, ld, li))),
                                 2),
                lambda: self.add(self.mul(2, lambda: self.up_a(d, i, ld, li)), 1),
                point=f"upper L({d},{i})"))

    def up_len1(self, d: int, i: int, ld: _Value) -> _Value:
        if i < 0:
            raise UndefinedPointError(f"upper Len1(i={i})")
        if i == 0:
            return self.up_l(d, 0, ld, 0)
        return self.up_l(d, i, ld, self.up_len1(d, i - 1, ld))

    def up_len2(self, d: int) -> _Value:
        if d < 1:
            raise UndefinedPointError(f"upper Len2({d}) starts at depth 1")
        if d == 1:
            return self.up_len1(1, self.n - 1, 1)
        return self.up_len1(d, self.n - 1, self.up_len2(d - 1))


def _wrap(v: _Value, cap: Optional[int]) -> BoundsValue:
    if isinstance(v, _Sat):
        return BoundsValue(value=cap, saturated=True, cap=cap)
    return BoundsValue(value=int(v), saturated=False, cap=cap)


def evaluate(family: str, name: str, n: int, d: int = 0, i: int = 0,
             base_weight: int = 1, saturate: Optional[int] = None,
             ld: Optional[int] = None, li: Optional[int] = None) -> BoundsValue:
    """Evaluate one point of one recurrence family.

    ``ld`` and ``li`` only apply to the upper family, standing for the
    length values its functions take as parameters; they default to the
    instantiations used when eliminating them (ld=1, li=0).
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    ev = _Evaluator(n, base_weight, saturate)
    if family in ("simp", "gen"):
        if name not in LOWER_NAMES + ("H",):
            raise ValueError(f"unknown {family} function {name!r}")
        table = {
            ("simp", "Len"): lambda: ev.simp_len(d, i),
            ("simp", "Cov"): lambda: ev.simp_cov(d, i),
            ("simp", "MaxW"): lambda: ev.simp_maxw(d),
            ("simp", "Amp"): lambda: ev.simp_amp(d, i),
            ("simp", "Typ"): lambda: ev.simp_typ(d, i),
            ("simp", "H"): ev.H,
            ("gen", "Len"): lambda: ev.gen_len(d, i),
            ("gen", "Cov"): lambda: ev.gen_cov(d, i),
            ("gen", "MaxW"): lambda: ev.gen_maxw(d),
            ("gen", "Amp"): lambda: ev.gen_amp(d, i),
            ("gen", "Typ"): lambda: ev.gen_typ(d, i),
            ("gen", "H"): ev.H,
        }
        return _wrap(table[(family, name)](), saturate)
    if name not in UPPER_NAMES:
        raise ValueError(f"unknown upper function {name!r}")
    ld = 1 if ld is None else ld
    li = 0 if li is None else li
    table = {
        "W": lambda: ev.up_w(d, ld),
        "C": lambda: ev.up_c(d, i, ld, li),
        "T": lambda: ev.up_t(d, i, ld, li),
        "A": lambda: ev.up_a(d, i, ld, li),
        "L": lambda: ev.up_l(d, i, ld, li),
        "Len1": lambda: ev.up_len1(d, i, ld),
        "Len2": lambda: ev.up_len2(d),
    }
    return _wrap(table[name](), saturate)


def main_bound(n: int, base_weight: int = 1,
               saturate: Optional[int] = None) -> BoundsValue:
    """The headline gap bound: the general amplitude at full depth."""
    return evaluate("gen", "Amp", n, d=n, i=0, base_weight=base_weight,
                    saturate=saturate)


def length_function(n: int, base_weight: int = 1, family: str = "simp",
                    saturate: Optional[int] = None) -> Callable[[int], BoundsValue]:
    """Depth-indexed length budget, as needed by the letter validators."""
    if family not in ("simp", "gen"):
        raise ValueError("length budgets exist for the simp and gen families")

    def fn(d: int) -> BoundsValue:
        return evaluate(family, "Len", n, d=d, i=1, base_weight=base_weight,
                        saturate=saturate)
    return fn


def w_closed_form(n: int, d: int, ld: int) -> int:
    """The expanded majorant for W, used as a cross-check."""
    return (2 * n * math.factorial(n)) ** n * ld ** n + n
