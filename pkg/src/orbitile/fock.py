"""Finite-truncation Fock space computations.

The charge-zero subspace has a basis indexed by partitions (occupied
slots lambda_i - i).  The Heisenberg operator alpha_n hops one bead down
by n (up for negative n) with the wedge reordering sign.  The operator
used as the weight oracle is the normal-ordered exponential of
sum alpha_n / n over n not divisible by N; its one-particle matrix
entries have the generating function

    f(x, y) = 1/(1-xy) * (1-x)/(1-x^N)^(1/N) * (1-y^N)^(1/N)/(1-y)

and diagonal minors of that matrix reproduce the empty-core hook weight
up to the sign fixed here by taking the raw (unpermuted) determinant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .linalg import det_bareiss_fractions
from .partitions import Partition, _partition_from_bead_window


@dataclass(frozen=True)
class FockVector:
    """Finite rational combination of charge-zero basis vectors."""

    entries: tuple  # tuple of (Partition, Fraction)
    energy_bound: int

    def __post_init__(self):
        for lam, _ in self.entries:
            if lam.size > self.energy_bound:
                raise ValueError(
                    f"basis label of energy {lam.size} exceeds bound {self.energy_bound}"
                )

    @staticmethod
    def basis(lam: Partition, energy_bound: int | None = None) -> "FockVector":
        bound = lam.size if energy_bound is None else energy_bound
        return FockVector(((lam, Fraction(1)),), bound)

    def as_dict(self) -> dict:
        out: dict = {}
        for lam, c in self.entries:
            out[lam] = out.get(lam, Fraction(0)) + c
        return {k: v for k, v in out.items() if v}

    def coefficient(self, lam: Partition) -> Fraction:
        return self.as_dict().get(lam, Fraction(0))

    def inner(self, other: "FockVector") -> Fraction:
        mine = self.as_dict()
        total = Fraction(0)
        for lam, c in other.as_dict().items():
            if lam in mine:
                total += mine[lam] * c
        return total


@dataclass(frozen=True)
class TruncationWindow:
    """Window parameters for minor extraction: lambda_i = 0 for i > N*ell."""

    level: int
    ell: int
    width: int


def alpha(n: int, v: FockVector) -> FockVector:
    """Heisenberg action: hop one bead down by n (up if n < 0)."""
    if n == 0:
        raise ValueError("alpha_0 is not defined here")
    out: dict = {}
    for lam, coeff in v.as_dict().items():
        depth = len(lam.parts) + abs(n) + 2
        window = lam.bead_positions(depth)
        beads = set(window)
        floor = -depth
        for s in window:
            dst = s - n
            if dst < floor or dst in beads:
                continue
            between = sum(1 for b in beads if min(s, dst) < b < max(s, dst))
            sign = -1 if between % 2 else 1
            new_beads = sorted(beads - {s} | {dst}, reverse=True)
            mu = _partition_from_bead_window(new_beads)
            out[mu] = out.get(mu, Fraction(0)) + sign * coeff
    bound = v.energy_bound - n if n < 0 else v.energy_bound
    entries = tuple((k, c) for k, c in out.items() if c)
    return FockVector(entries, max(bound, 0) if entries else max(bound, 0))


def vacuum_coefficient(mu, lam: Partition) -> Fraction:
    """[v_empty] alpha_{mu_1} ... alpha_{mu_k} v_lam."""
    v = FockVector.basis(lam)
    for m in mu:
        v = alpha(m, v)
    return v.coefficient(Partition())


@lru_cache(maxsize=None)
def _lowering_symbol(level: int, count: int) -> tuple[Fraction, ...]:
    """Coefficients of (1-x) * (1-x^N)^(-1/N), degrees 0..count-1."""
    return _symbol(level, Fraction(-1, level), True, count)


@lru_cache(maxsize=None)
def _raising_symbol(level: int, count: int) -> tuple[Fraction, ...]:
    """Coefficients of (1-y^N)^(1/N) / (1-y), degrees 0..count-1."""
    return _symbol(level, Fraction(1, level), False, count)


def _symbol(level: int, alpha_exp: Fraction, numerator_linear: bool, count: int):
    # (1 - u^N)^alpha coefficients by the generalized binomial series
    binom = [Fraction(1)]
    a = alpha_exp
    k = 0
    while (k + 1) * level < count:
        binom.append(binom[-1] * (a - k) / (k + 1))
        k += 1
    series = [Fraction(0)] * count
    for j, b in enumerate(binom):
        series[j * level] = b * (-1) ** j
    if numerator_linear:
        # multiply by (1 - u)
        out = list(series)
        for i in range(count - 1, 0, -1):
            out[i] -= series[i - 1]
        return tuple(out)
    # divide by (1 - u): prefix sums
    out = []
    acc = Fraction(0)
    for c in series:
        acc += c
        out.append(acc)
    return tuple(out)


def wn_entry(k: int, l: int, level: int) -> Fraction:
    """Matrix entry <e_k| W |e_l> by bivariate coefficient extraction."""
    if k < 0 or l < 0:
        raise ValueError("negative slot index")
    count = max(k, l) + 1
    A = _lowering_symbol(level, count)
    B = _raising_symbol(level, count)
    total = Fraction(0)
    for m in range(min(k, l) + 1):
        total += A[k - m] * B[l - m]
    return total


def wn_entry_closed(k: int, l: int, level: int) -> Fraction:
    """Three-case closed formula for the same entry (level >= 3).

    The row factor multiplies r = 1 mod N over r <= k, the column factor
    r = -1 mod N over r <= l (each divided by the multiples of N); the
    1/(l-k) branch applies whenever k = l+1 mod N, including when k = 0
    mod N as well.  Pinned against the series extraction.
    """
    if level < 3:
        raise ValueError("closed form stated for level >= 3")
    if k % level != 0 and (k - l - 1) % level != 0:
        return Fraction(0)
    row = Fraction(1)
    for r in range(1, k + 1):
        if r % level == 1:
            row *= r
        if r % level == 0:
            row /= r
    col = Fraction(1)
    for r in range(1, l + 1):
        if r % level == level - 1:
            col *= r
        if r % level == 0:
            col /= r
    if (k - l - 1) % level == 0:
        return row * col / (l - k)
    return row * col


def minimal_window(lam: Partition, level: int) -> TruncationWindow:
    ell = 1
    while len(lam.parts) > level * ell:
        ell += 1
    width = (lam.parts[0] if lam.parts else 0) + level * ell
    return TruncationWindow(level, ell, width)


def wn_diagonal(lam: Partition, level: int, ell: int | None = None) -> Fraction:
    """<v_lam| W |v_lam> as the raw determinant of the indicated minor.

    The row/column order is the natural decreasing bead order; no
    congruence-class reordering is performed, so the determinant's sign
    is taken as computed.
    """
    if ell is None:
        ell = minimal_window(lam, level).ell
    size = level * ell
    if len(lam.parts) > size:
        raise ValueError("window does not cover the partition")
    indices = [
        (lam.parts[i] if i < len(lam.parts) else 0) - (i + 1) + size
        for i in range(size)
    ]
    matrix = [[wn_entry(ki, kj, level) for kj in indices] for ki in indices]
    return det_bareiss_fractions(matrix)
