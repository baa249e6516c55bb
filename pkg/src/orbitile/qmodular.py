"""Quasimodular machinery: eta and theta expansions, Eisenstein series,
level bases, exact q-series fits, and cusp-asymptotic substitution.

Bases for levels 3, 4, 6 are spanned by divisor-sum Eisenstein series
(odd character weight 1 and 3, rescaled weight-2 series) whose
q-expansions are exact and whose behaviour as q -> 1 is a polynomial in
ell = -(2 pi i tau)^(-1) with coefficients in Q[pi, i*theta_N]; the
polynomials come from Mellin pole bookkeeping of the divisor sums and
are validated numerically at high precision.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .cyclo import Cyclotomic
from .linalg import solve_linear_exact
from .qseries import QSeries
from .symconst import SymbolicConstant

# -- divisor sums and characters -----------------------------------------


def chi_quadratic(modulus: int, n: int) -> int:
    """The odd quadratic character mod 3 or mod 4."""
    n %= modulus
    if modulus == 3:
        return (0, 1, -1)[n]
    if modulus == 4:
        return (0, 1, 0, -1)[n]
    raise ValueError("supported characters: mod 3 and mod 4")


def sigma1(n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    return sum(d for d in range(1, n + 1) if n % d == 0)


def sigma_chi(modulus: int, power: int, n: int) -> int:
    """sum over positive divisors d|n of chi(d) d^power."""
    if n < 1:
        raise ValueError("n must be positive")
    return sum(
        chi_quadratic(modulus, d) * d**power for d in range(1, n + 1) if n % d == 0
    )


def divisor_sums(kind: str, n: int) -> int:
    """kinds: "sigma1", "sigma0_chi3", "sigma0_chi4", "sigma2_chi3", "sigma2_chi4"."""
    if kind == "sigma1":
        return sigma1(n)
    if kind.startswith("sigma0_chi"):
        return sigma_chi(int(kind[-1]), 0, n)
    if kind.startswith("sigma2_chi"):
        return sigma_chi(int(kind[-1]), 2, n)
    raise ValueError(f"unknown divisor sum kind {kind}")


def bernoulli_chi(modulus: int, n: int) -> Fraction:
    """Generalized Bernoulli number B_{n,chi} for the odd character."""
    from .qseries import QSeries as _QS  # local alias, avoids confusion

    # B_{n,chi} = m^{n-1} sum_a chi(a) B_n(a/m)
    out = Fraction(0)
    for a in range(1, modulus + 1):
        ch = chi_quadratic(modulus, a)
        if ch:
            out += ch * _bernoulli_poly(n, Fraction(a, modulus))
    return out * modulus ** (n - 1)


@lru_cache(maxsize=None)
def _bernoulli_number(n: int) -> Fraction:
    if n == 0:
        return Fraction(1)
    total = Fraction(0)
    for k in range(n):
        total += Fraction(_binom(n + 1, k)) * _bernoulli_number(k)
    return -total / (n + 1)


def _binom(n, k):
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


def _bernoulli_poly(n: int, x: Fraction) -> Fraction:
    return sum(
        Fraction(_binom(n, k)) * _bernoulli_number(k) * x ** (n - k) for k in range(n + 1)
    )


def l_value_nonpositive(modulus: int, s: int) -> Fraction:
    """L(s, chi) at s <= 0 via L(1-n, chi) = -B_{n,chi}/n."""
    n = 1 - s
    return -bernoulli_chi(modulus, n) / n


# -- eta products ---------------------------------------------------------


def eta(scale: int, order) -> QSeries:
    """prod_{m>=1} (1 - q^{scale*m}), offset q^{scale/24} tracked separately."""
    out = QSeries.one(1, order)
    m = scale
    while m < out.truncation:
        out = out * QSeries(1, {0: Fraction(1), m: Fraction(-1)}, order)
        m += scale
    return QSeries(out.unit, out.coeffs, out.truncation, Fraction(scale, 24))


# -- bivariate z/q series --------------------------------------------------


class ZSeries:
    """Polynomial in z with QSeries coefficients (z truncated)."""

    __slots__ = ("coeffs", "z_order")

    def __init__(self, coeffs: list[QSeries], z_order: int):
        self.coeffs = list(coeffs[:z_order])
        self.z_order = z_order

    def __mul__(self, other):
        if isinstance(other, ZSeries):
            out = [None] * self.z_order
            for i, a in enumerate(self.coeffs):
                if a.is_zero():
                    continue
                for j, b in enumerate(other.coeffs):
                    if i + j >= self.z_order:
                        break
                    if b.is_zero():
                        continue
                    v = a * b
                    out[i + j] = v if out[i + j] is None else out[i + j] + v
            zero = self.coeffs[0] * 0
            return ZSeries([c if c is not None else zero for c in out], self.z_order)
        return ZSeries([c * other for c in self.coeffs], self.z_order)

    __rmul__ = __mul__

    def __add__(self, other):
        return ZSeries(
            [a + b for a, b in zip(self.coeffs, other.coeffs)], self.z_order
        )

    def __sub__(self, other):
        return ZSeries(
            [a - b for a, b in zip(self.coeffs, other.coeffs)], self.z_order
        )

    def scale_q(self, s: QSeries) -> "ZSeries":
        return ZSeries([c * s for c in self.coeffs], self.z_order)

    def log_unit(self) -> "ZSeries":
        """log of a ZSeries whose z^0 coefficient is the exact series 1."""
        one = QSeries.one(self.coeffs[0].unit, self.coeffs[0].truncation)
        v = ZSeries([self.coeffs[0] - one] + self.coeffs[1:], self.z_order)
        zero = self.coeffs[0] * 0
        out = ZSeries([zero for _ in range(self.z_order)], self.z_order)
        power = ZSeries([one] + [zero] * (self.z_order - 1), self.z_order)
        for j in range(1, self.z_order + 1):
            power = power * v
            if all(c.is_zero() for c in power.coeffs):
                break
            out = out + power * Fraction((-1) ** (j + 1), j)
        return out


def _exp_z(a: Fraction, unit_const, z_order: int, unit: int, trunc) -> ZSeries:
    """unit_const * exp(a z) as a ZSeries with constant q-coefficients."""
    coeffs = []
    for j in range(z_order):
        coeffs.append(
            QSeries(unit, {0: unit_const * (a**j * Fraction(1, factorial(j)))}, trunc)
        )
    return ZSeries(coeffs, z_order)


@lru_cache(maxsize=None)
def theta_expansion(level: int, r: int, z_order: int, q_order: int) -> tuple:
    """z-coefficients of Theta(z + 2 pi i r / N, q) over Q(zeta_{2N}).

    For r = 0 the returned expansion is of Theta(z)/z (pole-free
    normalization, constant coefficient 1 + 0*q).  Returns a tuple of
    QSeries, index = z power.
    """
    order = 2 * level
    r %= level
    one = Cyclotomic.rational(1, order)
    trunc = Fraction(q_order)

    if r == 0:
        # (e^{z/2} - e^{-z/2})/z = sum z^{2j} / (4^j (2j+1)!)
        lead = ZSeries(
            [
                QSeries(
                    1,
                    {0: one * Fraction(1, 4 ** (j // 2) * factorial(j + 1))}
                    if j % 2 == 0
                    else {},
                    trunc,
                )
                for j in range(z_order)
            ],
            z_order,
        )
        zx = one
        zxi = one
    else:
        zx = Cyclotomic.root(order, r)  # zeta_{2N}^r
        zxi = zx.inverse()
        lead = _exp_z(Fraction(1, 2), zx, z_order, 1, trunc) - _exp_z(
            Fraction(-1, 2), zxi, z_order, 1, trunc
        )

    total = lead
    x = zx * zx  # zeta_N^r
    xi = zxi * zxi
    m = 1
    while m < q_order:
        qm = QSeries(1, {m: Fraction(1)}, trunc)
        fac1 = ZSeries(
            [QSeries.one(1, trunc)] + [QSeries.zero(1, trunc)] * (z_order - 1), z_order
        ) - _exp_z(Fraction(1), x, z_order, 1, trunc).scale_q(qm)
        fac2 = ZSeries(
            [QSeries.one(1, trunc)] + [QSeries.zero(1, trunc)] * (z_order - 1), z_order
        ) - _exp_z(Fraction(-1), xi, z_order, 1, trunc).scale_q(qm)
        total = total * fac1 * fac2
        m += 1
    denom = QSeries.one(1, trunc)
    m = 1
    while m < q_order:
        denom = denom * QSeries(1, {0: Fraction(1), m: Fraction(-1)}, trunc)
        m += 1
    inv2 = (denom * denom).inverse()
    return tuple(c * inv2 for c in total.coeffs)


def theta_special_value(level: int, q_order: int) -> QSeries:
    """Theta(2 pi i / N) / (zeta_{2N} - zeta_{2N}^{-1}), a rational q-series."""
    t0 = theta_expansion(level, 1, 1, q_order)[0]
    z = Cyclotomic.root(2 * level, 1)
    return t0 * (z - z.inverse()).inverse()


def eisenstein_kr(level: int, r: int, k: int, order: int) -> QSeries:
    """Torsion-point Eisenstein series: k! [z^k] log(Theta(a)/Theta(z+a)).

    a = 2 pi i r / N; for r = 0 only even k >= 4 are defined (from the
    log of z/Theta(z)); r = 0 with odd k or k = 2 is rejected.
    """
    r %= level
    if r == 0 and (k % 2 or k == 2 or k < 4):
        raise ValueError("r = 0 requires even k >= 4; E_2 has its own constructor")
    comps = theta_expansion(level, r, k + 1, order)
    t0_inv = comps[0].inverse()
    normalized = ZSeries([c * t0_inv for c in comps], k + 1)
    logs = normalized.log_unit()
    return logs.coeffs[k] * Fraction(-factorial(k))


def e2(scale: int, order) -> QSeries:
    """-1/24 + sum sigma_1(n) q^{scale n}."""
    coeffs = {0: Fraction(-1, 24)}
    n = 1
    while scale * n < order:
        coeffs[scale * n] = Fraction(sigma1(n))
        n += 1
    return QSeries(1, coeffs, order)


# -- generators carrying cusp data ----------------------------------------


@dataclass(frozen=True)
class Generator:
    """A basis generator: exact q-expansion plus cusp polynomial data."""

    name: str
    weight: int
    kind: str  # "one" | "e2" | "e1chi" | "e3chi"
    modulus: int = 0
    scale: int = 1

    def series(self, order: int) -> QSeries:
        if self.kind == "one":
            return QSeries.one(1, order)
        if self.kind == "e2":
            return e2(self.scale, order)
        const = l_value_nonpositive(self.modulus, 1 - self.weight) / 2
        coeffs = {0: const}
        n = 1
        while self.scale * n < order:
            coeffs[self.scale * n] = Fraction(
                sigma_chi(self.modulus, self.weight - 1, n)
            )
            n += 1
        return QSeries(1, coeffs, order)

    def cusp_polynomial(self, level: int) -> list[SymbolicConstant]:
        """Asymptotics of the series at q = e^{-1/ell} as a polynomial in ell.

        From the poles of Gamma(w) (ell/s)^w Zeta(w) L(w - weight + 1, chi):
        the weight-2 series picks up pi^2 ell^2/(6 s^2) - ell/(2s); the
        weight-1 character series picks up L(1, chi) ell/s with
        L(1, chi_3) = -pi (i theta)/9 for levels 3 and 6 and
        L(1, chi_4) = pi/4; the weight-3 character series is flat zero
        (L(-1, chi) = 0 and the Gamma-pole constant cancels the series
        constant).  Constant terms always cancel for these presets.
        """
        zero = SymbolicConstant.const(level, 0)
        if self.kind == "one":
            return [SymbolicConstant.const(level, 1)]
        if self.kind == "e2":
            return [
                zero,
                SymbolicConstant.const(level, Fraction(-1, 2 * self.scale)),
                SymbolicConstant.pi_power(level, Fraction(1, 6 * self.scale**2), 2),
            ]
        if self.kind == "e1chi":
            if self.modulus == 3:
                lead = SymbolicConstant.pi_power(
                    level, Fraction(-1, 9 * self.scale), 1, 1
                )
            else:
                lead = SymbolicConstant.pi_power(level, Fraction(1, 4 * self.scale), 1)
            return [zero, lead]
        if self.kind == "e3chi":
            return [zero]
        raise ValueError(self.kind)

    def numeric(self, ell, dps: int = 40):
        """High-precision value at q = exp(-1/ell); validation only."""
        import mpmath

        with mpmath.workdps(dps):
            q = mpmath.e ** (mpmath.mpf(-1) / ell)
            if self.kind == "one":
                return mpmath.mpf(1)
            qs = q**self.scale
            cutoff = int(ell * (dps * 2.5 + 30) / self.scale) + 10
            if self.kind == "e2":
                total = mpmath.mpf(-1) / 24
                for n in range(1, cutoff):
                    total += sigma1(n) * qs**n
                return total
            total = mpmath.mpf(
                l_value_nonpositive(self.modulus, 1 - self.weight).numerator
            ) / l_value_nonpositive(self.modulus, 1 - self.weight).denominator
            total /= 2
            for n in range(1, cutoff):
                total += sigma_chi(self.modulus, self.weight - 1, n) * qs**n
            return total


GENERATORS = {
    3: [
        Generator("X", 1, "e1chi", 3, 1),
        Generator("Y", 2, "e2", scale=1),
        Generator("Z", 2, "e2", scale=3),
        Generator("W", 3, "e3chi", 3, 1),
    ],
    4: [
        Generator("A", 1, "e1chi", 4, 1),
        Generator("E2", 2, "e2", scale=1),
        Generator("E2[2]", 2, "e2", scale=2),
        Generator("E2[4]", 2, "e2", scale=4),
        Generator("V", 3, "e3chi", 4, 1),
        Generator("V[2]", 3, "e3chi", 4, 2),
    ],
    6: [
        Generator("a", 1, "e1chi", 3, 1),
        Generator("b", 1, "e1chi", 3, 2),
        Generator("E2", 2, "e2", scale=1),
        Generator("E2[2]", 2, "e2", scale=2),
        Generator("E2[3]", 2, "e2", scale=3),
        Generator("E2[6]", 2, "e2", scale=6),
        Generator("w", 3, "e3chi", 3, 1),
        Generator("w[2]", 3, "e3chi", 3, 2),
    ],
}


@dataclass
class BasisElement:
    name: str
    weight: int
    series: QSeries
    cusp_poly: list[SymbolicConstant]
    factors: tuple[Generator, ...]

    def numeric(self, ell, dps: int = 40):
        import mpmath

        with mpmath.workdps(dps):
            out = mpmath.mpf(1)
            for g in self.factors:
                out *= g.numeric(ell, dps)
            return out


class BasisConstructionError(RuntimeError):
    pass


@dataclass
class QMBasis:
    level: int
    weight_bound: int
    order: int
    elements: list[BasisElement]

    def names(self):
        return [e.name for e in self.elements]

    def by_weight(self, weights) -> list[BasisElement]:
        return [e for e in self.elements if e.weight in weights]


def _poly_mul_sym(a: list[SymbolicConstant], b: list[SymbolicConstant], level: int):
    if not a or not b:
        return []
    zero = SymbolicConstant.const(level, 0)
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


@lru_cache(maxsize=None)
def qm_basis(level: int, weight_bound: int, order: int) -> QMBasis:
    """Monomials in the level generators up to the weight bound, pruned
    to a rank-verified independent set (deterministic greedy order).
    """
    if level not in GENERATORS:
        raise ValueError(f"no preset basis for level {level}")
    gens = [g for g in GENERATORS[level] if g.weight <= weight_bound]
    # enumerate monomials by multiset, graded by weight then generator order
    monomials: list[tuple[Generator, ...]] = [()]
    for idx, g in enumerate(gens):
        new = []
        for mono in monomials:
            w = sum(f.weight for f in mono)
            count = 1
            while w + count * g.weight <= weight_bound:
                new.append(mono + (g,) * count)
                count += 1
        monomials.extend(new)
    monomials.sort(
        key=lambda m: (sum(f.weight for f in m), len(m), [gens.index(f) for f in m])
    )

    elements: list[BasisElement] = []
    rows: list[list[Fraction]] = []
    pivots: list[int] = []
    for mono in monomials:
        series = QSeries.one(1, order)
        poly = [SymbolicConstant.const(level, 1)]
        for g in mono:
            series = series * g.series(order)
            poly = _poly_mul_sym(poly, g.cusp_polynomial(level), level)
        name = "*".join(g.name for g in mono) or "1"
        vec = [Fraction(c) for c in series.integer_coefficients(order - 1)]
        if _try_reduce(rows, pivots, vec):
            elements.append(
                BasisElement(name, sum(g.weight for g in mono), series, poly, mono)
            )
    if order < 2 * len(elements) + 10:
        raise BasisConstructionError(
            f"order {order} too small to certify a rank-{len(elements)} basis; increase it"
        )
    return QMBasis(level, weight_bound, order, elements)


def _try_reduce(rows: list, pivots: list, vec: list) -> bool:
    """Gaussian step: add vec to the row space if independent."""
    v = list(vec)
    for row, p in zip(rows, pivots):
        if v[p]:
            f = v[p] / row[p]
            v = [a - f * b for a, b in zip(v, row)]
    piv = next((i for i, a in enumerate(v) if a), None)
    if piv is None:
        return False
    rows.append(v)
    pivots.append(piv)
    return True


# -- exact fitting ---------------------------------------------------------


@dataclass
class FitResult:
    basis: QMBasis
    coefficients: dict  # element name -> Fraction or Cyclotomic
    residual_zero: bool
    reconstructed: QSeries
    used_elements: list[BasisElement] = field(default_factory=list)

    def coefficient_list(self):
        return [(e.name, self.coefficients.get(e.name, Fraction(0))) for e in self.basis.elements]


class FitError(ValueError):
    pass


def fit_qseries(series: QSeries, basis: QMBasis, holdout_margin: int = 10,
                weights=None) -> FitResult:
    """Exact solve of series = sum c_e * element_e on a leading window,
    then validation on every remaining known coefficient.

    A failed validation is reported through residual_zero = False (the
    series is not in the chosen span: a meaningful outcome).  Raises
    FitError when the series carries too few coefficients.
    """
    active = basis.elements if weights is None else basis.by_weight(weights)
    n_known = int(min(series.truncation, Fraction(basis.order)))
    need = len(active) + holdout_margin
    if n_known < need:
        raise FitError(
            f"need at least {need} coefficients ({len(active)} basis + "
            f"{holdout_margin} holdout); series has {n_known}"
        )
    target = series.integer_coefficients(n_known - 1)
    cols = [e.series.integer_coefficients(n_known - 1) for e in active]

    window = len(active)
    while True:
        rows = [[cols[j][i] for j in range(len(active))] for i in range(window)]
        rhs = list(target[:window])
        result = solve_linear_exact(_promote(rows), _promote_vec(rhs))
        if result.status == "unique":
            break
        if result.status == "inconsistent":
            return FitResult(basis, {}, False, QSeries.zero(1, series.truncation))
        window += 1
        if window > n_known - holdout_margin:
            raise FitError("rank never stabilized inside the known coefficients")

    coeffs = {e.name: c for e, c in zip(active, result.solution)}
    recon = QSeries.zero(1, Fraction(n_known))
    for e, c in zip(active, result.solution):
        recon = recon + e.series.truncate(n_known) * c
    residual = all(
        _iszero(recon.coefficient(n) - target[n]) for n in range(n_known)
    )
    return FitResult(basis, coeffs, residual, recon, list(active))


def _promote(rows):
    out = []
    for r in rows:
        out.append([c if isinstance(c, (Fraction, Cyclotomic)) else Fraction(c) for c in r])
    return out


def _promote_vec(v):
    return [c if isinstance(c, (Fraction, Cyclotomic)) else Fraction(c) for c in v]


def _iszero(x):
    if isinstance(x, Cyclotomic):
        return x.is_zero()
    return x == 0


def cusp_polynomial(fit: FitResult) -> list[SymbolicConstant]:
    """ell-polynomial of the fitted combination (rational coefficients only)."""
    level = fit.basis.level
    zero = SymbolicConstant.const(level, 0)
    out: list[SymbolicConstant] = []
    for e in fit.used_elements or fit.basis.elements:
        c = fit.coefficients.get(e.name, Fraction(0))
        if isinstance(c, Cyclotomic):
            if not c.is_rational():
                raise ValueError(
                    f"cusp polynomial needs rational fit coefficients; {e.name} has {c}"
                )
            c = c.as_fraction()
        if not c:
            continue
        for d, term in enumerate(e.cusp_poly):
            while len(out) <= d:
                out.append(zero)
            out[d] = out[d] + term * c
    while out and not out[-1]:
        out.pop()
    return out


def validate_cusp_numeric(basis: QMBasis, ells=(40, 80, 160), dps: int = 40,
                          rel_tol: float = 1e-6) -> list[tuple]:
    """Compare each element's cusp polynomial with a high-precision
    evaluation of its q-expansion; returns (name, ell, rel_err, ok) rows.
    """
    import mpmath

    rows = []
    for e in basis.elements:
        for ell in ells:
            with mpmath.workdps(dps):
                num = e.numeric(mpmath.mpf(ell), dps)
                poly = mpmath.mpf(0)
                scale = mpmath.mpf(1)
                for d, term in enumerate(e.cusp_poly):
                    val = term.evaluate(dps) * mpmath.mpf(ell) ** d
                    poly += val
                    scale = max(scale, abs(val))
                err = abs(num - poly) / scale
                rows.append((e.name, ell, float(err), err <= rel_tol))
    return rows
