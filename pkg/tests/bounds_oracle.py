"""Second, independent transcription of the bound recurrences.

Written separately from minplus.bounds as a per-family recursive
dispatcher over plain values.  The evaluation contract is the same by
construction (written-order products with zero short-circuit, absorbing
saturation, exponent-before-base powers, the 2**26-bit materialisation
guard, and the bit-length digit estimate), so any disagreement points at
a transcription slip on one of the sides.

gmpy2 is shared for raw bignum arithmetic only; the recursion structure,
memoisation, and dispatch are this module's own.
"""

from __future__ import annotations

import math

import gmpy2

GUARD_BITS = 1 << 26

SAT = object()  # saturated marker; absorbing


class OracleUndefined(Exception):
    pass


class OracleInfeasible(Exception):
    def __init__(self, point, digits_estimate):
        digits_estimate = int(digits_estimate)
        shown = ("huge" if digits_estimate.bit_length() > 4000
                 else str(digits_estimate))
        super().__init__(f"{point}: ~{shown} digits")
        self.point = point
        self.digits_estimate = digits_estimate


def est_digits(x) -> int:
    return int(x).bit_length() * 30103 // 100000 + 1


def stab_const(n: int) -> int:
    return n * math.factorial(n)


class Oracle:
    """Evaluation context: fixed n, base weight, optional saturation cap."""

    def __init__(self, n, base_weight=1, cap=None):
        self.n = n
        self.b = base_weight
        self.cap = cap
        self.m = stab_const(n)
        self.big = 2 * n * math.factorial(n)
        self._memo = {}

    # arithmetic -------------------------------------------------------------

    def clip(self, v):
        if v is SAT:
            return SAT
        if self.cap is not None and v > self.cap:
            return SAT
        return v

    def plus(self, *terms):
        if any(t is SAT for t in terms):
            return SAT
        return self.clip(sum(terms))

    def times(self, *factors):
        """Product over values and nullary callables, left to right.

        Encountering zero before saturation yields zero and skips the
        rest; saturation anywhere is absorbing.
        """
        acc = 1
        for f in factors:
            v = f() if callable(f) else f
            if v is SAT:
                return SAT
            if v == 0:
                return SAT if acc is SAT else self.clip(0)
            if acc is SAT:
                return SAT
            if self.cap is None:
                if int(acc).bit_length() + int(v).bit_length() > GUARD_BITS:
                    raise OracleInfeasible("product",
                                           est_digits(acc) + est_digits(v))
            acc = self.clip(acc * v)
        return acc

    def power(self, base, exp, point="power"):
        e = exp() if callable(exp) else exp
        if e is SAT:
            return SAT
        if e == 0:
            return self.clip(1)
        v = base() if callable(base) else base
        if v is SAT:
            return SAT
        if v == 0:
            return self.clip(0)
        if v == 1:
            return self.clip(1)
        if self.cap is not None:
            if e > self.cap.bit_length():
                return SAT
            return self.clip(int(v) ** int(e))
        bits = int(v).bit_length()
        if e * bits > GUARD_BITS:
            raise OracleInfeasible(point, int(e) * est_digits(v))
        return int(gmpy2.mpz(v) ** e)

    def r3(self, k):
        """Ramsey number bound for triangles: k ** (3k)."""
        return self.power(k, lambda: self.times(3, k), point="Ramsey")

    # lower families -----------------------------------------------------------

    def lower(self, fam, name, d, i=0):
        """simp / gen point; gen threads H into Cov, Amp, MaxW's index."""
        key = (fam, name, d, i)
        if key in self._memo:
            return self._memo[key]
        n = self.n
        gen = fam == "gen"
        if name == "Len":
            if d < 0 or i < 0 or i > n + 1:
                raise OracleUndefined(key)
            if d == 0:
                v = self.clip(1)
            elif i == n + 1:
                v = self.clip(0)
            else:
                v = self.times(
                    32 * self.m ** 2,
                    lambda: self.lower(fam, "Len", d - 1, 1),
                    lambda: self.lower(fam, "Len", d, i + 1),
                    lambda: self.power(
                        lambda: self.plus(self.r3(self.lower(fam, "Typ", d, i)), 2),
                        lambda: self.plus(
                            self.times(2, lambda: self.lower(fam, "Amp", d, i)), 1),
                        point=f"{fam} Len({d},{i})"))
        elif name == "Cov":
            if d < 0 or i < 0 or i > n:
                raise OracleUndefined(key)
            if i == n:
                v = self.clip(1)
            elif d == 0:
                raise OracleUndefined(key)
            else:
                tail = [self.lower(fam, "Cov", d, i + 1)]
                if gen:
                    tail.append(self.lower("simp", "Amp", n, 0))
                v = self.times(
                    8 * self.m ** 2,
                    lambda: self.plus(
                        self.times(lambda: self.lower(fam, "MaxW", d - 1),
                                   lambda: self.lower(fam, "Len", d - 1, 1),
                                   lambda: self.lower(fam, "Len", d, i + 1)),
                        *tail))
        elif name == "MaxW":
            if d < 0:
                raise OracleUndefined(key)
            if d == 0:
                v = self.clip(self.b)
            else:
                v = self.times(
                    2 * self.m,
                    lambda: self.lower(fam, "MaxW", d - 1),
                    lambda: self.lower(fam, "Len", d, 0 if gen else 1))
        elif name == "Amp":
            if d < 1 or i < 0 or i > n:
                raise OracleUndefined(key)
            if gen:
                weight = lambda: self.plus(
                    self.lower("simp", "Amp", n, 0),
                    self.times(2, lambda: self.lower(fam, "MaxW", d - 1)))
            else:
                weight = lambda: self.times(
                    2, lambda: self.lower(fam, "MaxW", d - 1))
            v = self.times(
                32 * self.m ** 2,
                weight,
                lambda: self.plus(self.r3(self.lower(fam, "Typ", d, i)),
                                  self.lower(fam, "Len", d, i + 1),
                                  self.lower(fam, "Len", d - 1, 1)))
        elif name == "Typ":
            if d < 1 or i < 0 or i > n:
                raise OracleUndefined(key)
            v = self.times(
                lambda: self.power(3, i),
                lambda: self.power(
                    lambda: self.plus(
                        self.times(2, lambda: self.lower(fam, "Cov", d, i)), 2),
                    2 * n * i,
                    point=f"{fam} Typ({d},{i})"))
        elif name == "H":
            v = self.lower("simp", "Amp", n, 0)
        else:
            raise ValueError(name)
        self._memo[key] = v
        return v

    # majorant family ------------------------------------------------------------

    def upper(self, name, d, i=0, ld=1, li=0):
        if name == "W":
            if d < 0:
                raise OracleUndefined(("W", d))
            if d == 0:
                return self.clip(self.n)
            return self.times(self.big, lambda: self.upper("W", d - 1, ld=ld), ld)
        if name == "C":
            if i < 0:
                raise OracleUndefined(("C", i))
            if i == 0:
                return self.clip(1)
            return self.times(
                8 * self.big ** 2,
                lambda: self.plus(
                    self.times(lambda: self.upper("W", d, ld=ld), ld, li),
                    self.upper("C", d, i - 1, ld, li)))
        if name == "T":
            return self.times(
                lambda: self.power(3, i),
                lambda: self.power(
                    lambda: self.plus(
                        self.times(2, lambda: self.upper("C", d, i, ld, li)), 2),
                    2 * self.n * i,
                    point=f"upper T({d},{i})"))
        if name == "A":
            return self.times(
                32 * self.big ** 2,
                lambda: self.plus(
                    self.times(2, lambda: self.upper("W", d - 1, ld=ld),
                               lambda: self.r3(self.upper("T", d, i, ld, li))),
                    li, ld))
        if name == "L":
            if i < 0:
                raise OracleUndefined(("L", i))
            if i == 0:
                return self.clip(0)
            return self.times(
                32 * self.big ** 2,
                lambda: self.power(
                    lambda: self.plus(
                        self.times(ld, li,
                                   lambda: self.r3(self.upper("T", d, i, ld, li))),
                        2),
                    lambda: self.plus(
                        self.times(2, lambda: self.upper("A", d, i, ld, li)), 1),
                    point=f"upper L({d},{i})"))
        if name == "Len1":
            if i < 0:
                raise OracleUndefined(("Len1", i))
            if i == 0:
                return self.upper("L", d, 0, ld, 0)
            return self.upper("L", d, i, ld, self.upper("Len1", d, i - 1, ld=ld))
        if name == "Len2":
            if d < 1:
                raise OracleUndefined(("Len2", d))
            if d == 1:
                return self.upper("Len1", 1, self.n - 1, ld=1)
            return self.upper("Len1", d, self.n - 1, ld=self.upper("Len2", d - 1))
        raise ValueError(name)


def oracle_point(family, name, n, d=0, i=0, base_weight=1, cap=None,
                 ld=1, li=0):
    """One point as (value, saturated) or an Oracle* exception."""
    o = Oracle(n, base_weight, cap)
    if family in ("simp", "gen"):
        v = o.lower(family, name, d, i)
    elif family == "upper":
        v = o.upper(name, d, i, ld, li)
    else:
        raise ValueError(family)
    if v is SAT:
        return None, True
    return int(v), False


def oracle_main(n, base_weight=1, cap=None):
    return oracle_point("gen", "Amp", n, d=n, i=0, base_weight=base_weight,
                        cap=cap)
