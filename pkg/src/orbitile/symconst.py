"""Symbolic constants: exact polynomials in pi and i*theta_N.

Volume values live in Q[2*pi*i*theta_N]; cusp polynomials have
coefficients mixing powers of pi with powers of i*theta_N.  Both are
represented as bivariate polynomials over Q in the formal symbols
``pi`` and ``ith`` (= i*theta_N), tagged with the level N.

For N in {3, 6}, i*theta_N = -sqrt(3); for N = 4, i*theta_4 = -2 is
rational but is still tracked formally so output stays level-uniform.
"""

from __future__ import annotations

from fractions import Fraction


class SymbolicConstant:
    """Element of Q[pi, ith] for a fixed level N."""

    __slots__ = ("level", "terms")

    def __init__(self, level: int, terms: dict | None = None):
        self.level = level
        clean = {}
        if terms:
            for key, val in terms.items():
                v = Fraction(val)
                if v:
                    clean[key] = v
        self.terms = clean

    @staticmethod
    def const(level: int, value) -> "SymbolicConstant":
        return SymbolicConstant(level, {(0, 0): Fraction(value)})

    @staticmethod
    def pi_power(level: int, value, pi_exp: int, ith_exp: int = 0) -> "SymbolicConstant":
        return SymbolicConstant(level, {(pi_exp, ith_exp): Fraction(value)})

    def _check(self, other: "SymbolicConstant"):
        if self.level != other.level:
            raise ValueError(f"mixed levels {self.level} and {other.level}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SymbolicConstant.const(self.level, other)
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return SymbolicConstant(self.level, out)

    __radd__ = __add__

    def __neg__(self):
        return SymbolicConstant(self.level, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SymbolicConstant.const(self.level, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return SymbolicConstant(
                self.level, {k: v * other for k, v in self.terms.items()}
            )
        self._check(other)
        out: dict = {}
        for (a1, b1), v1 in self.terms.items():
            for (a2, b2), v2 in other.terms.items():
                key = (a1 + a2, b1 + b2)
                out[key] = out.get(key, Fraction(0)) + v1 * v2
        return SymbolicConstant(self.level, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return SymbolicConstant(
                self.level, {k: v / Fraction(other) for k, v in self.terms.items()}
            )
        raise TypeError("can only divide a symbolic constant by a rational")

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SymbolicConstant.const(self.level, other)
        if not isinstance(other, SymbolicConstant):
            return NotImplemented
        return self.level == other.level and self.terms == other.terms

    def __hash__(self):
        return hash((self.level, tuple(sorted(self.terms.items()))))

    def __bool__(self):
        return bool(self.terms)

    def is_rational(self) -> bool:
        return all(k == (0, 0) for k in self.terms)

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.terms.get((0, 0), Fraction(0))

    def fold_ith_squared(self) -> "SymbolicConstant":
        """Rewrite using (i*theta_N)^2 = theta-norm, keeping ith-degree 0 or 1.

        theta_N = zeta_N - zeta_N^(-1) is purely imaginary, so
        (i*theta_N)^2 = -theta_N^2 is rational: 3 for N in {3, 6}, 4 for
        N = 4, and N = 2 gives 4 as well (theta_2 = -2i ... the value
        2*Im(zeta_N) squared).
        """
        sq = _ith_squared(self.level)
        out: dict = {}
        for (a, b), v in self.terms.items():
            val = v * sq ** (b // 2)
            key = (a, b % 2)
            out[key] = out.get(key, Fraction(0)) + val
        return SymbolicConstant(self.level, out)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (a, b), v in sorted(self.terms.items()):
            bits = []
            if v != 1 or (a == 0 and b == 0):
                bits.append(str(v))
            if a:
                bits.append("pi" + (f"^{a}" if a > 1 else ""))
            if b:
                bits.append("i*theta" + (f"^{b}" if b > 1 else ""))
            parts.append("*".join(bits))
        return " + ".join(parts)

    __repr__ = __str__

    def evaluate(self, prec_digits: int = 30):
        """High-precision numeric value (mpmath), for validation only."""
        import mpmath

        with mpmath.workdps(prec_digits):
            ith = _ith_numeric(self.level)
            total = mpmath.mpf(0)
            for (a, b), v in self.terms.items():
                total += mpmath.mpf(v.numerator) / v.denominator * mpmath.pi**a * ith**b
            return total

    def to_json(self) -> list:
        return [
            {"pi": a, "ith": b, "coeff": str(v)}
            for (a, b), v in sorted(self.terms.items())
        ]


def _ith_squared(level: int) -> Fraction:
    # (i*theta_N)^2 where theta_N = zeta_N - zeta_N^{-1} = 2*i*sin(2*pi/N)
    from .cyclo import theta_constant

    th = theta_constant(level)
    val = -(th * th)
    return val.as_fraction()


def _ith_numeric(level: int):
    import mpmath

    return -2 * mpmath.sin(2 * mpmath.pi / level)
