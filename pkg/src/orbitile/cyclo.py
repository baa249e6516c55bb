"""Exact cyclotomic arithmetic.

A value of order M is a residue mod the M-th cyclotomic polynomial
Phi_M, stored as phi(M) rational coordinates in the power basis
1, z, ..., z^(phi(M)-1) with z a primitive M-th root of unity.  The
representation is canonical, so equality is coefficient equality.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm


class OrderMismatch(ValueError):
    """Raised when combining cyclotomic values of incompatible orders."""


def euler_phi(m: int) -> int:
    result = m
    p, n = 2, m
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


def _poly_divide_exact(num: list[int], den: list[int]) -> list[int]:
    # exact division in Z[x]; num is destroyed
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        if c % den[-1] != 0:
            raise ArithmeticError("non-exact polynomial division")
        q = c // den[-1]
        out[i] = q
        for j, d in enumerate(den):
            num[i + j] -= q * d
    if any(num):
        raise ArithmeticError("non-exact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, low degree first."""
    if m == 1:
        return (-1, 1)
    poly = [0] * m + [1]
    poly[0] = -1  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            poly = _poly_divide_exact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _reduction_rows(m: int, count: int) -> tuple[tuple[int, ...], ...]:
    """x^j mod Phi_m for j = phi(m) .. phi(m)+count-1, integer coordinate rows."""
    phi = euler_phi(m)
    phi_poly = cyclotomic_polynomial(m)
    # x^phi = -(lower part) since Phi_m is monic
    rows: list[tuple[int, ...]] = []
    cur = [-c for c in phi_poly[:phi]]
    rows.append(tuple(cur))
    for _ in range(count - 1):
        nxt = [0] + cur[:-1]
        top = cur[-1]
        if top:
            base = rows[0]
            nxt = [a + top * b for a, b in zip(nxt, base)]
        cur = nxt
        rows.append(tuple(cur))
    return tuple(rows)


def _reduce_coeffs(m: int, coeffs: list[Fraction]) -> list[Fraction]:
    phi = euler_phi(m)
    if len(coeffs) <= phi:
        return coeffs + [Fraction(0)] * (phi - len(coeffs))
    rows = _reduction_rows(m, len(coeffs) - phi)
    out = list(coeffs[:phi])
    for j in range(phi, len(coeffs)):
        c = coeffs[j]
        if c:
            row = rows[j - phi]
            for i in range(phi):
                if row[i]:
                    out[i] += c * row[i]
    return out


class Cyclotomic:
    """Exact element of Q(zeta_M)."""

    __slots__ = ("order", "coeffs", "_hash")

    def __init__(self, order: int, coeffs):
        if order < 1:
            raise ValueError(f"invalid order {order}")
        coeffs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        coeffs = _reduce_coeffs(order, coeffs)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *a):
        raise AttributeError("Cyclotomic values are immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def rational(x, order: int = 1) -> "Cyclotomic":
        c = [Fraction(x)] + [Fraction(0)] * (euler_phi(order) - 1)
        return Cyclotomic(order, c)

    @staticmethod
    def root(order: int, power: int = 1) -> "Cyclotomic":
        power %= order
        coeffs = [Fraction(0)] * (power + 1)
        coeffs[power] = Fraction(1)
        return Cyclotomic(order, coeffs)

    # -- coercion ------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Cyclotomic):
            if other.order == self.order:
                return other
            if other.order == 1:
                return Cyclotomic.rational(other.coeffs[0], self.order)
            if self.order == 1:
                return NotImplemented  # handled by reflected op
            raise OrderMismatch(
                f"orders {self.order} and {other.order} differ; lift to lcm first"
            )
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.rational(other, self.order)
        return NotImplemented

    def lift(self, order: int) -> "Cyclotomic":
        """Embed into Q(zeta_order); requires self.order | order."""
        if order == self.order:
            return self
        if order % self.order != 0:
            raise OrderMismatch(f"{self.order} does not divide {order}")
        step = order // self.order
        out = [Fraction(0)] * (euler_phi(self.order) * step + 1)
        for k, c in enumerate(self.coeffs):
            if c:
                out[k * step] += c
        return Cyclotomic(order, out)

    # -- ring operations ----------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            if isinstance(other, Cyclotomic):
                return self.lift(other.order) + other
            return NotImplemented
        return Cyclotomic(self.order, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.order, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            if isinstance(other, Cyclotomic):
                return self.lift(other.order) - other
            return NotImplemented
        return Cyclotomic(self.order, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            if isinstance(other, Cyclotomic):
                return self.lift(other.order) * other
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        n = len(a)
        out = [Fraction(0)] * (2 * n - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] += ai * bj
        return Cyclotomic(self.order, out)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if not any(self.coeffs):
            raise ZeroDivisionError("cyclotomic division by zero")
        # extended Euclid in Q[x] against Phi_M
        mod = [Fraction(c) for c in cyclotomic_polynomial(self.order)]
        a = list(self.coeffs)
        r0, r1 = mod, a
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while True:
            while r1 and not r1[-1]:
                r1.pop()
            if len(r1) == 1:
                inv = 1 / r1[0]
                return Cyclotomic(self.order, [c * inv for c in s1])
            q, rem = _poly_divmod_q(r0, r1)
            r0, r1 = r1, rem
            s_new = _poly_sub(s0, _poly_mul(q, s1))
            s0, s1 = s1, s_new

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            if isinstance(other, Cyclotomic):
                return self.lift(other.order) / other
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return Cyclotomic.rational(other, self.order) / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = Cyclotomic.rational(1, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- structure -----------------------------------------------------

    def conjugate(self) -> "Cyclotomic":
        """Galois image under zeta -> zeta^(-1)."""
        m = self.order
        out = [Fraction(0)] * m
        for k, c in enumerate(self.coeffs):
            if c:
                out[(-k) % m] += c
        return Cyclotomic(m, out)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    def to_complex(self) -> complex:
        import cmath

        z = cmath.exp(2j * cmath.pi / self.order)
        return sum(float(c) * z**k for k, c in enumerate(self.coeffs))

    # -- protocol ------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        if self.order != other.order:
            m = lcm(self.order, other.order)
            return self.lift(m) == other.lift(m)
        return self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                h = hash(self.coeffs[0])
            else:
                h = hash((self.order, self.coeffs))
            object.__setattr__(self, "_hash", h)
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                z = f"z{self.order}" + (f"^{k}" if k > 1 else "")
                terms.append(f"{c}*{z}" if c != 1 else z)
        return " + ".join(terms) if terms else "0"

    # -- JSON ------------------------------------------------------------

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [str(c) for c in self.coeffs]}

    @staticmethod
    def from_json(obj: dict) -> "Cyclotomic":
        return Cyclotomic(obj["order"], [Fraction(s) for s in obj["coeffs"]])


def _poly_divmod_q(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    while b and not b[-1]:
        b = b[:-1]
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] / b[-1]
        q[i] = c
        if c:
            for j, d in enumerate(b):
                a[i + j] -= c * d
    while len(a) > 1 and not a[-1]:
        a.pop()
    return q, a


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def zeta(order: int, power: int = 1) -> Cyclotomic:
    """Primitive root of unity zeta_order^power."""
    return Cyclotomic.root(order, power)


def cyclo_embed(power: int, source_order: int, target_order: int) -> Cyclotomic:
    """zeta_{M1}^power viewed in Q(zeta_{M2}); requires M1 | M2."""
    if target_order % source_order != 0:
        raise OrderMismatch(
            f"source order {source_order} does not divide target {target_order}"
        )
    return Cyclotomic.root(target_order, power * (target_order // source_order))


def cyclo_conjugate(x: Cyclotomic) -> Cyclotomic:
    return x.conjugate()


def theta_constant(n: int) -> Cyclotomic:
    """theta_N = zeta_N - zeta_N^(-1), as an element of Q(zeta_{2N})."""
    z = cyclo_embed(1, n, 2 * n)
    return z - z.conjugate()


def rational_lcm_order(*values: Cyclotomic) -> int:
    out = 1
    for v in values:
        out = lcm(out, v.order)
    return out
