"""The empty-core weight w_N and its core-shifted generalizations.

w_N(lambda) vanishes unless the N-core of lambda is empty, and then
equals +-<1><N-1>/<0>^2 where <a> is the product of the hook lengths
congruent to a mod N.  For N in {2, 3, 4, 6} the sign is the product of
peeling signs sgn_t over the orders t of the orbifold points of the
order-N elliptic orbifold; for other N the sign is delegated to the
Fock-space oracle (only the empty core is meaningful there).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .characters import c_t, dim, sgn_t
from .partitions import Partition

ORBIFOLD_ORDERS = {2: (2, 2, 2, 2), 3: (3, 3, 3), 4: (2, 4, 4), 6: (2, 3, 6)}


@dataclass(frozen=True)
class WeightSpec:
    level: int
    eta: Partition
    orbifold_orders: tuple[int, ...]

    @staticmethod
    def make(level: int, eta: Partition | None = None) -> "WeightSpec":
        if level not in ORBIFOLD_ORDERS:
            raise ValueError(f"no elliptic orbifold of order {level}")
        eta = eta or Partition()
        if not eta.is_t_core(level):
            raise ValueError(f"{eta} is not a {level}-core")
        return WeightSpec(level, eta, ORBIFOLD_ORDERS[level])


def hook_class_products(lam: Partition, level: int) -> dict[int, int]:
    out = {a: 1 for a in range(level)}
    for h in lam.hook_multiset():
        out[h % level] *= h
    return out


def unsigned_weight(lam: Partition, level: int) -> Fraction:
    """<1><N-1>/<0>^2, no support guard, no sign."""
    prods = hook_class_products(lam, level)
    return Fraction(prods[1 % level] * prods[(level - 1) % level], prods[0] ** 2)


def weight_sign(lam: Partition, level: int) -> int:
    """Product of sgn_t over the orbifold orders of E/<zeta_N>."""
    sign = 1
    for t in ORBIFOLD_ORDERS[level]:
        sign *= sgn_t(lam, t)
    return sign


def w_n(lam: Partition, level: int) -> Fraction:
    """Empty-core weight; the bracket measure."""
    if level < 2:
        raise ValueError("level must be at least 2")
    if lam.size % level or not lam.is_decomposable(level):
        return Fraction(0)
    if level in ORBIFOLD_ORDERS:
        return weight_sign(lam, level) * unsigned_weight(lam, level)
    # no orbifold: sign comes from the Fock diagonal (nonzero there)
    from .fock import wn_diagonal

    det = wn_diagonal(lam, level)
    mag = unsigned_weight(lam, level)
    return mag if det > 0 else (-mag if det < 0 else Fraction(0))


def tilde_w(lam: Partition, spec: WeightSpec) -> Fraction:
    """Character-route weight (dim/|lam|!)^2 prod_t c_t, guarded by the core."""
    if lam.t_core(spec.level) != spec.eta:
        return Fraction(0)
    val = Fraction(dim(lam), factorial(lam.size)) ** 2
    for t in spec.orbifold_orders:
        val *= c_t(lam, t)
    return val


@lru_cache(maxsize=None)
def _eta_normalizer(level: int, eta_parts: tuple) -> Fraction:
    eta = Partition(eta_parts)
    if level in ORBIFOLD_ORDERS:
        base = tilde_w(eta, WeightSpec.make(level, eta))
    else:
        base = unsigned_weight(eta, level)
    if base == 0:
        raise ArithmeticError("weight normalizer vanished")
    return Fraction(1) / base


def w_n_eta(lam: Partition, level: int, eta: Partition, sign_hint: int = 1) -> Fraction:
    """Normalized eta-weight: equals 1 at lambda = eta, 0 off the core.

    For levels with an orbifold the sign convention follows the
    character route; otherwise ``sign_hint`` supplies the caller's
    convention on top of the unsigned normalized ratio.
    """
    if not eta.is_t_core(level):
        raise ValueError(f"{eta} is not a {level}-core")
    if lam.t_core(level) != eta:
        return Fraction(0)
    u = _eta_normalizer(level, eta.parts)
    if level in ORBIFOLD_ORDERS:
        return u * tilde_w(lam, WeightSpec.make(level, eta))
    return sign_hint * u * unsigned_weight(lam, level)
