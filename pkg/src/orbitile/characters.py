"""Symmetric group characters via the Murnaghan-Nakayama rule.

Irreducible and skew characters, dimensions, rim-hook decomposition
signs, central characters with the padding conventions (short contents
are padded with fixed points, oversized contents give zero), and the
per-partition constants c_t that factor out of the equal-part central
characters.

The Murnaghan-Nakayama recursion is memoized on the canonicalized
(skew) shape and the sorted remaining content.  The cache is process
wide; call :func:`clear_caches` to drop it.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

from .partitions import Partition, core_and_quotients


def content_key(mu) -> tuple[int, ...]:
    """Canonical content: parts sorted decreasing."""
    parts = tuple(sorted((int(m) for m in mu if m != 0), reverse=True))
    if any(m < 0 for m in parts):
        raise ValueError(f"negative content part in {parts}")
    return parts


class SkewShape:
    """outer / inner with cell-wise containment."""

    __slots__ = ("outer", "inner")

    def __init__(self, outer: Partition, inner: Partition):
        if not outer.contains(inner):
            raise ValueError(f"{inner} is not contained in {outer}")
        self.outer = outer
        self.inner = inner

    @property
    def size(self) -> int:
        return self.outer.size - self.inner.size

    def __repr__(self):
        return f"SkewShape({self.outer}/{self.inner})"


@lru_cache(maxsize=None)
def _chi_skew_cached(outer: tuple, inner: tuple, content: tuple) -> int:
    if not content:
        return 1
    out = Partition(outer)
    inn = Partition(inner)
    t, rest = content[0], content[1:]
    total = 0
    for hook in out.rim_hooks(t):
        smaller = out.remove_rim_hook(hook)
        if smaller.contains(inn):
            total += hook.sign * _chi_skew_cached(smaller.parts, inner, rest)
    return total


def chi(lam: Partition, mu) -> int:
    """Character of the irreducible indexed by lam at cycle type mu."""
    mu = content_key(mu)
    if sum(mu) != lam.size:
        raise ValueError(f"content size {sum(mu)} != |lambda| = {lam.size}")
    return _chi_skew_cached(lam.parts, (), mu)


def chi_skew(shape: SkewShape, mu) -> int:
    mu = content_key(mu)
    if sum(mu) != shape.size:
        raise ValueError(f"content size {sum(mu)} != skew size {shape.size}")
    return _chi_skew_cached(shape.outer.parts, shape.inner.parts, mu)


def dim(lam: Partition) -> int:
    """Dimension |lambda|! / (product of hook lengths)."""
    num = factorial(lam.size)
    for h in lam.hook_multiset():
        num //= h
    return num


@lru_cache(maxsize=None)
def _dim_skew_cached(outer: tuple, inner: tuple) -> int:
    size = sum(outer) - sum(inner)
    return _chi_skew_cached(outer, inner, (1,) * size)


def dim_skew(shape: SkewShape) -> int:
    return _dim_skew_cached(shape.outer.parts, shape.inner.parts)


def sgn_t(lam: Partition, t: int) -> int:
    """Sign of any full t-rim-hook peeling of lam down to its t-core.

    For t-decomposable lam this is the sign of the equal-part character
    chi(lam, (t,...,t)); the extension to non-decomposable lam is the
    sign of a decomposition of lam minus its core.
    """
    if t < 2:
        raise ValueError("t must be at least 2")
    return core_and_quotients(lam, t).sign


def abs_chi_t(lam: Partition, t: int) -> int:
    """|chi(lam, (t,...,t))| by the divisible-hook formula (fast path)."""
    if lam.size % t:
        return 0
    cq = core_and_quotients(lam, t)
    if cq.core.size:
        return 0
    m = lam.size // t
    num = t**m * factorial(m)
    for h in lam.hook_multiset():
        if h % t == 0:
            num, rem = divmod(num, h)
            if rem:
                raise AssertionError("hook formula division must be exact")
    return num


def conjugacy_class_size(mu, n: int) -> int:
    """|C_mu| in S_n, mu padded with fixed points to size n."""
    mu = content_key(mu)
    total = sum(mu)
    if total > n:
        raise ValueError("content larger than the group degree")
    padded = mu + (1,) * (n - total)
    denom = 1
    mult: dict[int, int] = {}
    for m in padded:
        denom *= m
        mult[m] = mult.get(m, 0) + 1
    for k in mult.values():
        denom *= factorial(k)
    return factorial(n) // denom


def central_character(nu, lam: Partition) -> Fraction:
    """f_nu(lambda) = |C_nu| chi(lambda, nu) / dim(lambda), padded by 1s."""
    nu = content_key(nu)
    if sum(nu) > lam.size:
        return Fraction(0)
    padded = nu + (1,) * (lam.size - sum(nu))
    cls = conjugacy_class_size(nu, lam.size)
    return Fraction(cls * chi(lam, padded), dim(lam))


def skew_central_character(nu, shape: SkewShape) -> Fraction:
    """Skew analogue; the empty shape gives 1 by convention."""
    nu = content_key(nu)
    if shape.size == 0:
        if sum(nu) != 0:
            return Fraction(0)
        return Fraction(1)
    if sum(nu) > shape.size:
        return Fraction(0)
    padded = nu + (1,) * (shape.size - sum(nu))
    cls = conjugacy_class_size(nu, shape.size)
    d = dim_skew(shape)
    if d == 0:
        raise ArithmeticError("skew dimension vanished on a nonempty shape")
    return Fraction(cls * chi_skew(shape, padded), d)


def c_t(lam: Partition, t: int) -> Fraction:
    """Quotient-data constant that factors out of equal-part central
    characters:

        c_t(lam) = sgn_t(lam) / t^floor(|lam|/t) * |lam|!/dim(lam)
                   * prod over quotients of dim(q)/|q|!

    This is the unique value satisfying, for every nu contained in lam
    with the same t-core,

        c_t(lam) = f_{t..t}(lam\\nu) sgn_t(nu) s_nu(lam)
                   / (t^{|nu|/t} prod_i s_{nu^{i/t}}(lam^{i/t})),

    as the choice nu = lam shows (s_lam(lam) = |lam|!/dim lam).  The
    t-power uses the integer exponent floor(|lam|/t); for sizes not
    divisible by t the remaining irrational constant cancels from every
    normalized quantity built on c_t, so it is dropped to keep the
    value rational.
    """
    if t < 2:
        raise ValueError("t must be at least 2")
    cq = core_and_quotients(lam, t)
    val = Fraction(cq.sign, t ** (lam.size // t))
    val *= Fraction(factorial(lam.size), dim(lam))
    for q in cq.quotients:
        val *= Fraction(dim(q), factorial(q.size))
    return val


def clear_caches():
    _chi_skew_cached.cache_clear()
    _dim_skew_cached.cache_clear()


# -- independent oracle (Frobenius character formula) -------------------


def chi_frobenius(lam: Partition, mu) -> int:
    """Character value by expanding the Vandermonde times power sums.

    chi(lam, mu) is the coefficient of x^(lam + delta) in
    a_delta * p_mu with delta = (k-1, ..., 1, 0).  Exponential cost;
    intended as a desk-scale oracle independent of the rim-hook
    recursion.
    """
    mu = content_key(mu)
    if sum(mu) != lam.size:
        raise ValueError("size mismatch")
    k = max(len(lam.parts), 1)
    delta = tuple(range(k - 1, -1, -1))
    target = tuple((lam.parts[i] if i < len(lam.parts) else 0) + delta[i] for i in range(k))
    cap = max(target) + 1

    from itertools import permutations

    terms: dict[tuple, int] = {}
    for perm in permutations(range(k)):
        sign = _perm_sign(perm)
        expo = tuple(delta[perm[i]] for i in range(k))
        terms[expo] = terms.get(expo, 0) + sign

    for m in mu:
        new: dict[tuple, int] = {}
        for expo, c in terms.items():
            for j in range(k):
                e = list(expo)
                e[j] += m
                if e[j] >= cap:
                    continue
                key = tuple(e)
                new[key] = new.get(key, 0) + c
        terms = new
    return terms.get(target, 0)


def _perm_sign(perm) -> int:
    inv = 0
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                inv += 1
    return -1 if inv % 2 else 1
