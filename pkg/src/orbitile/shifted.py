"""Shifted-symmetric and cyclotomic shifted-symmetric function evaluation.

The building blocks are the regularized power sums p_k and their
root-of-unity twists p_k^r (values in Q(zeta_{2N})), the shifted Schur
functions s_eta, and formal linear combinations of monomials in the
p_k^r graded by wt p_k^r = k + [r = 0 mod N].  Elements of that algebra
can be fitted exactly to arbitrary partition functions by sampling
partitions until the evaluation matrix rank stabilizes, solving the
linear system exactly, and validating on a disjoint holdout set.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Iterable, Iterator

from .characters import SkewShape, c_t, central_character, chi, dim, dim_skew, sgn_t
from .cyclo import Cyclotomic, cyclo_embed
from .linalg import solve_linear_exact
from .partitions import (
    Partition,
    core_and_quotients,
    enumerate_with_core,
    partitions_of,
)

# -- regularization constants -------------------------------------------


@lru_cache(maxsize=None)
def c_k_r(level: int, r: int, k: int) -> Cyclotomic:
    """Taylor constants of 1/(e^{z/2} - zeta_N^{-r} e^{-z/2}).

    For r = 0 the expansion has a 1/z pole and the constants come from
    1/(e^{z/2}-e^{-z/2}) - 1/z instead.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    r %= level
    order = 2 * level
    terms = k + 2
    if r == 0:
        # e^{z/2}-e^{-z/2} = z * U(z), U = sum_{j even} z^j / (2^j (j+1)!)
        u = [
            Fraction(1, 2**j * factorial(j + 1)) if j % 2 == 0 else Fraction(0)
            for j in range(terms + 1)
        ]
        inv = _invert_series_fractions(u, terms + 1)
        # (1/U - 1)/z : coefficient of z^k is inv[k+1]
        return Cyclotomic.rational(inv[k + 1] * factorial(k), order)
    zr = cyclo_embed(-r, level, order)
    s = [
        (Cyclotomic.rational(1, order) - zr * (-1) ** j) * Fraction(1, 2**j * factorial(j))
        for j in range(terms + 1)
    ]
    inv = _invert_series_cyclo(s, terms + 1, order)
    return inv[k] * factorial(k)


def _invert_series_fractions(a: list[Fraction], n: int) -> list[Fraction]:
    inv0 = Fraction(1) / a[0]
    out = [inv0]
    for m in range(1, n):
        acc = Fraction(0)
        for j in range(1, m + 1):
            if j < len(a):
                acc += a[j] * out[m - j]
        out.append(-inv0 * acc)
    return out


def _invert_series_cyclo(a: list[Cyclotomic], n: int, order: int) -> list[Cyclotomic]:
    inv0 = a[0].inverse()
    out = [inv0]
    zero = Cyclotomic.rational(0, order)
    for m in range(1, n):
        acc = zero
        for j in range(1, m + 1):
            if j < len(a):
                acc = acc + a[j] * out[m - j]
        out.append(-(inv0 * acc))
    return out


# -- power sums ----------------------------------------------------------


def p_k(lam: Partition, k: int) -> Fraction:
    """Regularized k-th power sum of the shifted parts lambda_i - i + 1/2."""
    if k < 1:
        raise ValueError("k must be at least 1")
    const = c_k_r(1, 0, k).as_fraction()
    total = const
    for i, part in enumerate(lam.parts, start=1):
        x = Fraction(2 * (part - i) + 1, 2)
        y = Fraction(1 - 2 * i, 2)
        total += x**k - y**k
    return total


def p_k_r(lam: Partition, level: int, r: int, k: int) -> Cyclotomic:
    """Root-of-unity twisted power sum; value in Q(zeta_{2N})."""
    r %= level
    if r == 0:
        return Cyclotomic.rational(p_k(lam, k), 2 * level)
    order = 2 * level
    total = c_k_r(level, r, k)
    for i, part in enumerate(lam.parts, start=1):
        x = part - i
        zx = cyclo_embed(r * (x + 1), level, order)
        zy = cyclo_embed(r * (1 - i), level, order)
        total = total + zx * (Fraction(2 * x + 1, 2) ** k) - zy * (
            Fraction(1 - 2 * i, 2) ** k
        )
    return total


def exp_sum_series(lam: Partition, level: int, r: int, z_terms: int) -> list[Cyclotomic]:
    """Truncated expansion of the bead exponential sum at z + 2*pi*i*r/N.

    Independent route: builds zeta_N^{r/2} e(lam, z + 2 pi i r/N) (pole
    part regularized) as a finite exponential sum over Q(zeta_{2N})[[z]]
    plus the constant-series tail, so that k! [z^k] reproduces p_k^r.
    """
    order = 2 * level
    out = [c_k_r(level, r, j) * Fraction(1, factorial(j)) for j in range(z_terms)]
    for i, part in enumerate(lam.parts, start=1):
        x = Fraction(2 * (part - i) + 1, 2)
        y = Fraction(1 - 2 * i, 2)
        # zeta_{2N}^r * zeta_N^{r(x - 1/2 + 1/2 + ...)}: the prefactor
        # combines with e^{(x+1/2) 2 pi i r / N} to zeta_N^{r(x+1)}
        zx = Cyclotomic.root(order, 2 * r * (part - i + 1))
        zy = Cyclotomic.root(order, 2 * r * (1 - i))
        xp = Fraction(1)
        yp = Fraction(1)
        for j in range(z_terms):
            coeff = Fraction(1, factorial(j))
            out[j] = out[j] + zx * (xp * coeff) - zy * (yp * coeff)
            xp *= x
            yp *= y
    return out


# -- shifted Schur functions ---------------------------------------------


@lru_cache(maxsize=None)
def _shifted_schur_cached(eta: tuple, lam: tuple) -> Fraction:
    e, l = Partition(eta), Partition(lam)
    if not l.contains(e):
        return Fraction(0)
    shape = SkewShape(l, e)
    return Fraction(dim_skew(shape) * factorial(l.size), factorial(shape.size) * dim(l))


def shifted_schur(eta: Partition, lam: Partition) -> Fraction:
    """s_eta(lam): 0 off containment, else dim(lam/eta)/|lam/eta|! * |lam|!/dim lam."""
    return _shifted_schur_cached(eta.parts, lam.parts)


# -- the graded cyclotomic algebra ---------------------------------------


def monomial_weight(monomial: tuple, level: int) -> int:
    return sum(k + (1 if r % level == 0 else 0) for k, r in monomial)


def normalize_monomial(monomial) -> tuple:
    return tuple(sorted(((int(k), int(r)) for k, r in monomial), reverse=True))


def monomials_up_to_weight(level: int, bound: int) -> list[tuple]:
    """All p_k^r monomials of weight <= bound, constants first, graded."""
    singles = []
    for k in range(1, bound + 1):
        for r in range(level):
            w = k + (1 if r == 0 else 0)
            if w <= bound:
                singles.append(((k, r), w))
    singles.sort(key=lambda s: (s[1], s[0]))
    results: list[tuple] = []

    def extend(prefix, prefix_weight, start):
        results.append(tuple(prefix))
        for idx in range(start, len(singles)):
            gen, w = singles[idx]
            if prefix_weight + w <= bound:
                extend(prefix + [gen], prefix_weight + w, idx)

    extend([], 0, 0)
    results.sort(key=lambda m: (monomial_weight(m, level), m))
    return [normalize_monomial(m) for m in results]


def eval_monomial(monomial: tuple, lam: Partition, level: int) -> Cyclotomic:
    out = Cyclotomic.rational(1, 2 * level)
    for k, r in monomial:
        out = out * p_k_r(lam, level, r, k)
    return out


class LambdaNElement:
    """Finite Q(zeta_{2N})-combination of monomials in the p_k^r."""

    __slots__ = ("level", "terms")

    def __init__(self, level: int, terms: dict | None = None):
        self.level = level
        clean: dict = {}
        order = 2 * level
        for mono, coeff in (terms or {}).items():
            mono = normalize_monomial(mono)
            if isinstance(coeff, (int, Fraction)):
                coeff = Cyclotomic.rational(coeff, order)
            elif coeff.order != order:
                coeff = coeff.lift(order)
            if not coeff.is_zero():
                clean[mono] = clean.get(mono, Cyclotomic.rational(0, order)) + coeff
        self.terms = {m: c for m, c in clean.items() if not c.is_zero()}

    @staticmethod
    def constant(level: int, value) -> "LambdaNElement":
        return LambdaNElement(level, {(): value})

    def weight(self) -> int:
        if not self.terms:
            return 0
        return max(monomial_weight(m, self.level) for m in self.terms)

    def is_pure_weight(self) -> bool:
        weights = {monomial_weight(m, self.level) for m in self.terms}
        return len(weights) <= 1

    def __add__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            other = LambdaNElement.constant(self.level, other)
        if self.level != other.level:
            raise ValueError("mixed levels")
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Cyclotomic.rational(0, 2 * self.level)) + c
        return LambdaNElement(self.level, out)

    __radd__ = __add__

    def __neg__(self):
        return LambdaNElement(self.level, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            other = LambdaNElement.constant(self.level, other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            return LambdaNElement(
                self.level, {m: c * other for m, c in self.terms.items()}
            )
        if self.level != other.level:
            raise ValueError("mixed levels")
        out: dict = {}
        zero = Cyclotomic.rational(0, 2 * self.level)
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = normalize_monomial(m1 + m2)
                out[m] = out.get(m, zero) + c1 * c2
        return LambdaNElement(self.level, out)

    __rmul__ = __mul__

    def eval(self, lam: Partition) -> Cyclotomic:
        total = Cyclotomic.rational(0, 2 * self.level)
        for mono, coeff in self.terms.items():
            total = total + coeff * eval_monomial(mono, lam, self.level)
        return total

    def __eq__(self, other):
        if not isinstance(other, LambdaNElement):
            return NotImplemented
        return self.level == other.level and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for m in sorted(self.terms, key=lambda m: (monomial_weight(m, self.level), m)):
            mono = "*".join(f"p{k}^{r}" for k, r in m) or "1"
            bits.append(f"({self.terms[m]})*{mono}")
        return " + ".join(bits)

    def to_json(self) -> dict:
        return {
            "N": self.level,
            "terms": [
                {"monomial": [[k, r] for k, r in m], "coeff": c.to_json()}
                for m, c in sorted(self.terms.items())
            ],
        }

    @staticmethod
    def from_json(obj: dict) -> "LambdaNElement":
        return LambdaNElement(
            int(obj["N"]),
            {
                tuple((int(k), int(r)) for k, r in t["monomial"]): Cyclotomic.from_json(
                    t["coeff"]
                )
                for t in obj["terms"]
            },
        )


# -- partition functions and exact fitting --------------------------------


@dataclass
class PartitionFunction:
    """Evaluator contract: deterministic Partition -> value, with a stated domain."""

    evaluate: Callable[[Partition], object]
    domain: str = "all"  # "all" or "core"
    level: int = 0
    core: Partition = field(default_factory=Partition)

    def sample_stream(self) -> Iterator[list[Partition]]:
        """Batches of domain partitions in deterministic size order."""
        size = 0
        while True:
            if self.domain == "all":
                batch = partitions_of(size)
            else:
                batch = list(enumerate_with_core(self.core, self.level, size))
            if batch:
                yield batch
            size += 1


@dataclass
class FitReport:
    element: LambdaNElement | None
    status: str  # "ok" | "not_representable"
    kernel: list
    monomials: list[tuple]
    samples_used: int
    holdout_checked: int
    residual_zero: bool


def fit_in_basis(
    func: PartitionFunction,
    level: int,
    weight_bound: int,
    holdout: int = 10,
    stable_batches: int = 3,
    max_batches: int = 60,
) -> FitReport:
    """Exact fit of a partition function into the weight-bounded monomial span.

    Samples domain partitions by increasing size until the evaluation
    matrix rank is stable across ``stable_batches`` consecutive
    enlargements, solves exactly, then validates on at least ``holdout``
    further domain partitions.  An inconsistent system is reported as
    "not_representable" (a meaningful outcome, not an error); a rank
    deficient system reports the kernel and returns the particular
    solution with free coordinates set to zero (support-minimal under
    the fixed monomial order).
    """
    monos = monomials_up_to_weight(level, weight_bound)
    order = 2 * level
    rows: list[list[Cyclotomic]] = []
    rhs: list[Cyclotomic] = []
    samples: list[Partition] = []

    stream = func.sample_stream()
    last_rank = -1
    stable = 0
    batches = 0
    for batch in stream:
        batches += 1
        if batches > max_batches:
            break
        for lam in batch:
            rows.append([eval_monomial(m, lam, level) for m in monos])
            val = func.evaluate(lam)
            if isinstance(val, (int, Fraction)):
                val = Cyclotomic.rational(val, order)
            elif val.order != order:
                val = val.lift(order)
            rhs.append(val)
            samples.append(lam)
        result = solve_linear_exact(rows, rhs)
        if result.status == "inconsistent":
            return FitReport(None, "not_representable", [], monos, len(samples), 0, False)
        if result.rank == last_rank:
            stable += 1
        else:
            stable = 0
            last_rank = result.rank
        if stable >= stable_batches:
            break

    result = solve_linear_exact(rows, rhs)
    if result.status == "inconsistent":
        return FitReport(None, "not_representable", [], monos, len(samples), 0, False)
    element = LambdaNElement(
        level, {m: c for m, c in zip(monos, result.solution)}
    )

    checked = 0
    residual_zero = True
    for batch in stream:
        for lam in batch:
            got = element.eval(lam)
            want = func.evaluate(lam)
            if isinstance(want, (int, Fraction)):
                want = Cyclotomic.rational(want, order)
            if not (got - want).is_zero():
                residual_zero = False
            checked += 1
        if checked >= holdout:
            break

    kernel = [
        {m: c for m, c in zip(monos, vec) if not _zeroish(c)} for vec in result.kernel
    ]
    return FitReport(
        element,
        "ok" if residual_zero else "holdout_mismatch",
        kernel,
        monos,
        len(samples),
        checked,
        residual_zero,
    )


def _zeroish(c) -> bool:
    if isinstance(c, Cyclotomic):
        return c.is_zero()
    return c == 0


# -- equal-part central characters with extra content ---------------------


def f_equal_parts(lam: Partition, t: int) -> Fraction:
    """f_{t,...,t}(lambda); zero unless lambda is t-decomposable."""
    if lam.size % t or not lam.is_decomposable(t):
        return Fraction(0)
    return c_t(lam, t)


def f_equal_parts_with_extra(lam: Partition, t: int, mu) -> Fraction:
    """f_{t,..,t,mu}(lambda) through the quotient expansion (fast path).

    Equals c_t(lam) * sum over eta with |eta| = |mu| and the same t-core
    as lam of sgn_t(eta) chi^eta(mu) t^{|mu|/t} / (|Aut mu| prod mu_i)
    * prod_i s_{eta^{i/t}}(lam^{i/t}).

    Parts of mu equal to t are padding in disguise (the padded content is
    the same multiset) and are stripped before the expansion, whose
    symmetry factor is only correct for the reduced form; the vanishing
    guard |lam| >= |mu| is checked on the original content first.
    """
    mu = tuple(sorted(mu, reverse=True))
    if (lam.size - sum(mu)) % t or lam.size < sum(mu):
        return Fraction(0)
    mu = tuple(m for m in mu if m != t)
    total_extra = sum(mu)
    cq = core_and_quotients(lam, t)
    lam_core = cq.core
    acc = Fraction(0)
    aut = _aut(mu)
    prod_mu = 1
    for m in mu:
        prod_mu *= m
    # t^{|mu|/t} with the same floor convention as c_t's t-power; the two
    # floors recombine to the exact integer exponent (|mu| - |lam|)/t
    t_pow = Fraction(t) ** (total_extra // t)
    for eta in enumerate_with_core(lam_core, t, total_extra):
        ch = chi(eta, mu)
        if ch == 0:
            continue
        eta_cq = core_and_quotients(eta, t)
        prod_s = Fraction(1)
        for qe, ql in zip(eta_cq.quotients, cq.quotients):
            s = shifted_schur(qe, ql)
            if s == 0:
                prod_s = Fraction(0)
                break
            prod_s *= s
        if prod_s == 0:
            continue
        acc += Fraction(eta_cq.sign * ch * t_pow, aut * prod_mu) * prod_s
    return c_t(lam, t) * acc


def f_equal_parts_with_extra_direct(lam: Partition, t: int, mu) -> Fraction:
    """Same value straight from the central character (oracle path)."""
    mu = tuple(sorted(mu, reverse=True))
    rest = lam.size - sum(mu)
    if rest < 0 or rest % t:
        return Fraction(0)
    content = (t,) * (rest // t) + mu
    return central_character(content, lam)


def _aut(mu) -> int:
    mult: dict[int, int] = {}
    for m in mu:
        mult[m] = mult.get(m, 0) + 1
    out = 1
    for c in mult.values():
        out *= factorial(c)
    return out


def g_n_mu(lam: Partition, level: int, mu) -> Fraction:
    """Ratio of padded equal-part central characters with and without mu."""
    if not lam.is_decomposable(level):
        raise ValueError(f"{lam} is not {level}-decomposable")
    denom = f_equal_parts(lam, level)
    if denom == 0:
        raise ArithmeticError("denominator vanished on a decomposable partition")
    return f_equal_parts_with_extra_direct(lam, level, mu) / denom


def g_n_mu_function(level: int, mu) -> PartitionFunction:
    mu = tuple(sorted(mu, reverse=True))
    return PartitionFunction(
        evaluate=lambda lam: g_n_mu(lam, level, mu),
        domain="core",
        level=level,
        core=Partition(),
    )


# -- small shifted-Schur expansions (for scan fast paths) -----------------


@lru_cache(maxsize=None)
def shifted_schur_polynomial(eta_parts: tuple) -> dict:
    """s_eta expanded in monomials of the plain p_k (weight <= |eta|).

    Determined by exact fit on small partitions and validated on a
    holdout; evaluation of the result needs only the p_k of the target.
    """
    eta = Partition(eta_parts)
    if eta.size == 0:
        return {(): Fraction(1)}
    bound = 2 * eta.size
    func = PartitionFunction(lambda lam: shifted_schur(eta, lam), "all")
    report = fit_in_basis(func, 1, bound, holdout=12, stable_batches=3)
    if report.element is None or not report.residual_zero:
        raise ArithmeticError(f"shifted Schur expansion failed for {eta}")
    out = {}
    for mono, coeff in report.element.terms.items():
        out[tuple(k for k, _ in mono)] = coeff.as_fraction()
    return out


def eval_shifted_schur_polynomial(poly: dict, p_values: dict[int, Fraction]) -> Fraction:
    total = Fraction(0)
    for ks, coeff in poly.items():
        term = coeff
        for k in ks:
            term *= p_values[k]
        total += term
    return total
