"""Truncated formal q-series with exact coefficients.

Exponents live in (1/unit)*Z_{>=0} plus an optional global fractional
offset (used by eta-type products, which carry a q^(s/24) prefactor).
Coefficients are Fractions or Cyclotomic values; arithmetic never
rounds.  Truncation orders combine by the min rule and offsets add
under multiplication.
"""

from __future__ import annotations

from fractions import Fraction

from .cyclo import Cyclotomic


def _czero(sample):
    return sample * 0


def _is_zero(x):
    if isinstance(x, Cyclotomic):
        return x.is_zero()
    return x == 0


class QSeries:
    __slots__ = ("unit", "coeffs", "truncation", "offset")

    def __init__(self, unit: int, coeffs: dict, truncation, offset=Fraction(0)):
        if unit < 1:
            raise ValueError("unit must be a positive integer")
        self.unit = int(unit)
        self.truncation = Fraction(truncation)
        self.offset = Fraction(offset)
        clean = {}
        for e, c in coeffs.items():
            e = Fraction(e)
            if e >= self.truncation:
                continue
            if e < 0:
                raise ValueError(f"negative exponent {e}")
            if (e * unit).denominator != 1:
                raise ValueError(f"exponent {e} not a multiple of 1/{unit}")
            if not _is_zero(c):
                clean[e] = c if isinstance(c, (Fraction, Cyclotomic)) else Fraction(c)
        self.coeffs = clean

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zero(unit: int, truncation, offset=Fraction(0)) -> "QSeries":
        return QSeries(unit, {}, truncation, offset)

    @staticmethod
    def one(unit: int, truncation) -> "QSeries":
        return QSeries(unit, {Fraction(0): Fraction(1)}, truncation)

    @staticmethod
    def monomial(coefficient, exponent, unit: int, truncation) -> "QSeries":
        return QSeries(unit, {Fraction(exponent): coefficient}, truncation)

    # -- access ------------------------------------------------------------

    def coefficient(self, exponent):
        e = Fraction(exponent)
        if e >= self.truncation:
            raise ValueError(f"exponent {e} beyond truncation {self.truncation}")
        return self.coeffs.get(e, Fraction(0))

    def exponents(self):
        return sorted(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def valuation(self):
        if not self.coeffs:
            return self.truncation
        return min(self.coeffs)

    def integer_coefficients(self, upto: int | None = None) -> list:
        """Coefficients at integer exponents 0..upto (requires integral support)."""
        if any(e.denominator != 1 for e in self.coeffs):
            raise ValueError("series has non-integer exponents")
        top = int(self.truncation) if upto is None else min(upto + 1, int(self.truncation))
        return [self.coeffs.get(Fraction(n), Fraction(0)) for n in range(top)]

    # -- ring operations -----------------------------------------------

    def _align(self, other: "QSeries"):
        if self.offset != other.offset:
            raise ValueError(f"offsets differ: {self.offset} vs {other.offset}")
        unit = self.unit
        if other.unit != unit:
            from math import lcm

            unit = lcm(self.unit, other.unit)
        return unit

    def __add__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            other = QSeries(self.unit, {Fraction(0): other}, self.truncation, self.offset) \
                if self.offset == 0 else NotImplemented
            if other is NotImplemented:
                raise ValueError("cannot add a constant to an offset series")
        unit = self._align(other)
        trunc = min(self.truncation, other.truncation)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            cur = out.get(e)
            out[e] = c if cur is None else cur + c
        return QSeries(unit, out, trunc, self.offset)

    __radd__ = __add__

    def __neg__(self):
        return QSeries(
            self.unit, {e: -c for e, c in self.coeffs.items()}, self.truncation, self.offset
        )

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            return QSeries(
                self.unit,
                {e: c * other for e, c in self.coeffs.items()},
                self.truncation,
                self.offset,
            )
        unit = self.unit
        if other.unit != unit:
            from math import lcm

            unit = lcm(self.unit, other.unit)
        trunc = min(self.truncation, other.truncation)
        out: dict = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                if e >= trunc:
                    continue
                v = c1 * c2
                cur = out.get(e)
                out[e] = v if cur is None else cur + v
        return QSeries(unit, out, trunc, self.offset + other.offset)

    __rmul__ = __mul__

    def inverse(self) -> "QSeries":
        """Multiplicative inverse; the constant term must be invertible."""
        c0 = self.coeffs.get(Fraction(0))
        if c0 is None or _is_zero(c0):
            raise ZeroDivisionError("series has no invertible constant term")
        inv0 = (Fraction(1) / c0) if isinstance(c0, Fraction) else c0.inverse()
        order = sorted(self.coeffs)
        out = {Fraction(0): inv0}
        # Newton-free triangular solve, exponent by exponent
        support = [e for e in order if e != 0]
        known = sorted(
            set(
                e
                for e in self._exponent_grid()
                if Fraction(0) < e < self.truncation
            )
        )
        for e in known:
            acc = None
            for e1 in support:
                if e1 > e:
                    break
                c2 = out.get(e - e1)
                if c2 is None:
                    continue
                term = self.coeffs[e1] * c2
                acc = term if acc is None else acc + term
            if acc is not None and not _is_zero(acc):
                out[e] = -inv0 * acc
        return QSeries(self.unit, out, self.truncation, -self.offset)

    def _exponent_grid(self):
        n = 0
        step = Fraction(1, self.unit)
        while n * step < self.truncation:
            yield n * step
            n += 1

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        return self * other.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("use pow_fraction for non-integer exponents")
        if k < 0:
            return self.inverse() ** (-k)
        result = QSeries.one(self.unit, self.truncation)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- transcendental (truncated, exact) -------------------------------

    def log(self) -> "QSeries":
        """log of a series with constant term 1 (offset must be 0)."""
        if self.offset != 0:
            raise ValueError("log of an offset series")
        c0 = self.coeffs.get(Fraction(0))
        if c0 is None or c0 != 1:
            raise ValueError("log requires constant term exactly 1")
        u = self - 1
        out = QSeries.zero(self.unit, self.truncation)
        term = QSeries.one(self.unit, self.truncation)
        v = u.valuation()
        if v <= 0:
            return out
        nmax = int(self.truncation / v) + 1
        for n in range(1, nmax + 1):
            term = term * u
            if term.is_zero():
                break
            out = out + term * Fraction((-1) ** (n + 1), n)
        return out

    def exp(self) -> "QSeries":
        """exp of a series with zero constant term (offset must be 0)."""
        if self.offset != 0:
            raise ValueError("exp of an offset series")
        if Fraction(0) in self.coeffs:
            raise ValueError("exp requires zero constant term")
        out = QSeries.one(self.unit, self.truncation)
        term = QSeries.one(self.unit, self.truncation)
        v = self.valuation()
        if v <= 0:
            return out
        nmax = int(self.truncation / v) + 1
        fact = 1
        for n in range(1, nmax + 1):
            term = term * self
            fact *= n
            if term.is_zero():
                break
            out = out + term * Fraction(1, fact)
        return out

    def pow_fraction(self, alpha: Fraction) -> "QSeries":
        """(series)^alpha for constant term 1, alpha rational."""
        alpha = Fraction(alpha)
        if alpha.denominator == 1:
            return self ** int(alpha)
        return (self.log() * alpha).exp()

    # -- reshaping --------------------------------------------------------

    def rescale_exponents(self, s: int) -> "QSeries":
        """Substitute q -> q^s."""
        return QSeries(
            self.unit,
            {e * s: c for e, c in self.coeffs.items()},
            self.truncation * s,
            self.offset * s,
        )

    def truncate(self, new_truncation) -> "QSeries":
        t = Fraction(new_truncation)
        if t > self.truncation:
            raise ValueError("cannot extend a truncated series")
        return QSeries(self.unit, self.coeffs, t, self.offset)

    def with_unit(self, unit: int) -> "QSeries":
        for e in self.coeffs:
            if (e * unit).denominator != 1:
                raise ValueError(f"exponent {e} incompatible with unit {unit}")
        return QSeries(unit, self.coeffs, self.truncation, self.offset)

    def agrees_with(self, other: "QSeries") -> bool:
        """Coefficient equality up to the smaller truncation (offsets must match)."""
        if self.offset != other.offset:
            return False
        t = min(self.truncation, other.truncation)
        for e in set(self.coeffs) | set(other.coeffs):
            if e >= t:
                continue
            a = self.coeffs.get(e, Fraction(0))
            b = other.coeffs.get(e, Fraction(0))
            if not _is_zero(a - b):
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return (
            self.offset == other.offset
            and self.truncation == other.truncation
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        items = sorted(self.coeffs)[:8]
        body = " + ".join(f"({self.coeffs[e]})q^{e}" for e in items)
        suffix = " + ..." if len(self.coeffs) > 8 else ""
        off = f" [offset q^{self.offset}]" if self.offset else ""
        return f"QSeries({body or '0'}{suffix}; O(q^{self.truncation})){off}"

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        def enc(c):
            if isinstance(c, Cyclotomic):
                return c.to_json()
            return str(c)

        return {
            "unit": self.unit,
            "offset": str(self.offset),
            "truncation": str(self.truncation),
            "coeffs": [
                {"exp": str(e), "value": enc(self.coeffs[e])} for e in sorted(self.coeffs)
            ],
        }

    @staticmethod
    def from_json(obj: dict) -> "QSeries":
        def dec(v):
            if isinstance(v, dict):
                return Cyclotomic.from_json(v)
            return Fraction(v)

        return QSeries(
            int(obj["unit"]),
            {Fraction(item["exp"]): dec(item["value"]) for item in obj["coeffs"]},
            Fraction(obj["truncation"]),
            Fraction(obj["offset"]),
        )

    def to_csv_rows(self) -> list[tuple[str, str, str]]:
        """(exponent, exact value, decimal approximation) rows."""
        rows = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            if isinstance(c, Cyclotomic):
                exact = repr(c)
                approx = format(c.to_complex().real, ".12g") if all(
                    abs(c.to_complex().imag) < 1e-9 for _ in (0,)
                ) else format(c.to_complex(), ".12g")
            else:
                exact = str(c)
                approx = format(float(c), ".12g")
            rows.append((str(e + self.offset), exact, approx))
        return rows
