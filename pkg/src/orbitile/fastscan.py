"""Integer-core enumeration of empty-N-core partitions for series work.

Sums of the form  sum over lambda with empty N-core of
q^{|lambda|/N} * w_N(lambda) * F(lambda)  dominate the runtime of the
whole artifact (orders of 10^5..10^7 partitions).  This module walks
the quotient-tuple parameterization directly and reduces every
per-partition quantity to integer arithmetic:

* hook-class products <1> and <N-1> factor over ordered pairs of
  quotients into window-free integer cross products, memoized per pair;
* <0>^2 = N^{2m} * (prod of quotient hook products)^2 divides the fixed
  class denominator N^{2m} (prod a_i!)^2, leaving (prod dim)^2 as an
  integer multiplier;
* the peeling signs sgn_t factor into per-pair bead inversion parities,
  memoized as bits;
* twisted power sums p_k^r restrict to per-quotient bead sums, memoized
  as integers scaled by 2^k.

Accumulation happens per (size, sorted-size-class) with one uniform
denominator per class, so the inner loop performs no rational
arithmetic at all.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

from .cyclo import Cyclotomic, _reduction_rows, euler_phi
from .partitions import partitions_of

ORBIFOLD_ORDERS = {2: (2, 2, 2, 2), 3: (3, 3, 3), 4: (2, 4, 4), 6: (2, 3, 6)}


# -- static per-level tables ------------------------------------------------


@lru_cache(maxsize=None)
def _sign_pair_plan(level: int) -> tuple:
    """Ordered residue pairs whose bead-inversion parity flips the sign.

    For each orbifold order t and each ordered residue pair (u, v) with
    (u mod t) < (v mod t), the unshuffle parity of the mod-t classes
    picks up the pair count GT(nu_u, nu_v) when u < v and GE when u > v.
    Pairs contributing an even number of times cancel mod 2.
    """
    counts: dict[tuple[int, int, bool], int] = {}
    for t in ORBIFOLD_ORDERS[level]:
        for u in range(level):
            for v in range(level):
                if u == v:
                    continue
                if (u % t) < (v % t):
                    key = (u, v, u > v)  # True -> GE, False -> GT
                    counts[key] = counts.get(key, 0) + 1
    return tuple(key for key, c in counts.items() if c % 2)


@lru_cache(maxsize=None)
def _hook_pair_plan(level: int) -> tuple:
    """(residue of bead, residue of gap, ge?, progression offset) factors
    building <1> and <N-1>: hook length = N*delta + c with delta >= 0.

    For class c: bead residue u, gap residue v = (u - c) mod N; when
    u > v the pair condition is y >= y' with factor N(y-y')+c, when
    u < v it is y > y' with factor N(y-y'-1)+c.
    """
    plan = []
    for c in (1, level - 1):
        for u in range(level):
            v = (u - c) % level
            plan.append((u, v, u > v, c))
    return tuple(plan)


@lru_cache(maxsize=None)
def _mul_tables(order: int):
    phi = euler_phi(order)
    rows = _reduction_rows(order, phi) if phi > 1 else ()
    return phi, rows


def _vec_mul(a: list[int], b: list[int], phi: int, rows) -> list[int]:
    out = [0] * (2 * phi - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    res = out[:phi]
    for j in range(phi, 2 * phi - 1):
        c = out[j]
        if c:
            row = rows[j - phi]
            for i in range(phi):
                if row[i]:
                    res[i] += c * row[i]
    return res


class QuotientTable:
    """Per-quotient cached integer data for a scan at one level."""

    def __init__(self, level: int, m_max: int):
        self.level = level
        self.m_max = m_max
        self.parts: list[tuple[int, ...]] = []
        self.ids_by_size: list[list[int]] = []
        self.dims: list[int] = []
        self._beadsets: list[frozenset] = []
        for s in range(m_max + 1):
            ids = []
            for p in partitions_of(s):
                pid = len(self.parts)
                self.parts.append(p.parts)
                from .characters import dim as _dim
                from .partitions import Partition as _P

                self.dims.append(_dim(_P(p.parts)))
                ids.append(pid)
            self.ids_by_size.append(ids)
        self._pair_ge: dict = {}
        self._pair_gt: dict = {}
        self._parity_gt: dict = {}
        self._parity_ge: dict = {}
        self._tsums: dict = {}

    # bead positions y_j = parts[j] - (j+1), listed for j < depth
    def _beads(self, pid: int, depth: int) -> list[int]:
        parts = self.parts[pid]
        lp = len(parts)
        return [
            (parts[j] if j < lp else 0) - (j + 1) for j in range(depth)
        ]

    def _beadset(self, pid: int) -> frozenset:
        parts = self.parts[pid]
        return frozenset(parts[j] - (j + 1) for j in range(len(parts)))

    def pair_hook_product(self, pid_a: int, pid_b: int, ge: bool, c: int) -> int:
        """prod over beads y of a and gaps y' of b (y >= y' or y > y')
        of N(y - y') + c resp. N(y - y' - 1) + c."""
        key = (pid_a, pid_b, c)
        cache = self._pair_ge if ge else self._pair_gt
        hit = cache.get(key)
        if hit is not None:
            return hit
        n = self.level
        parts_a = self.parts[pid_a]
        parts_b = self.parts[pid_b]
        la, lb = len(parts_a), len(parts_b)
        top_a = (parts_a[0] - 1) if la else -1
        bead_a = [parts_a[j] - (j + 1) for j in range(la)]
        floor = -(la + lb + 1)
        bead_a += list(range(-la - 1, floor - 1, -1))
        bset_b = set(parts_b[j] - (j + 1) for j in range(lb))
        out = 1
        for yp in range(floor, top_a + 1):
            if yp >= -lb and yp not in bset_b:
                for y in bead_a:
                    if ge:
                        if y < yp:
                            break
                        out *= n * (y - yp) + c
                    else:
                        if y <= yp:
                            break
                        out *= n * (y - yp - 1) + c
        cache[key] = out
        return out

    def pair_parity(self, pid_a: int, pid_b: int, ge: bool) -> int:
        """Parity of the window-normalized count of (y in a, y' in b)
        with y > y' (or y >= y'), relative to the vacuum pair."""
        key = (pid_a, pid_b)
        cache = self._parity_ge if ge else self._parity_gt
        hit = cache.get(key)
        if hit is not None:
            return hit
        la = len(self.parts[pid_a])
        lb = len(self.parts[pid_b])
        depth = la + lb + 1
        a = self._beads(pid_a, depth)
        b = self._beads(pid_b, depth)
        count = 0
        bi = 0
        bset = set(b)
        for y in a:  # a, b are strictly decreasing
            while bi < depth and b[bi] >= y:
                bi += 1
            count += depth - bi  # y' < y
            if ge and y in bset:
                count += 1
        vacuum = depth * (depth - 1) // 2 + (depth if ge else 0)
        bit = (count - vacuum) % 2
        cache[key] = bit
        return bit

    def tsum(self, pid: int, scale: int, off2: int, k: int) -> int:
        """2^k-scaled bead power sum: sum over j of
        (2*scale*y_j + off2)^k - (2*scale*(-j) + off2)^k."""
        key = (pid, scale, off2, k)
        hit = self._tsums.get(key)
        if hit is not None:
            return hit
        parts = self.parts[pid]
        total = 0
        for j, p in enumerate(parts, start=1):
            y = p - j
            total += (2 * scale * y + off2) ** k - (-2 * scale * j + off2) ** k
        self._tsums[key] = total
        return total


# -- evaluators -------------------------------------------------------------


class MonomialEvaluator:
    """Product of twisted power sums, integer-scaled.

    Value * denom = cyclotomic integer vector (order 2N power basis).
    """

    def __init__(self, level: int, monomial: tuple, table: QuotientTable):
        from .shifted import c_k_r

        self.level = level
        self.table = table
        self.monomial = monomial
        order = 2 * level
        self.phi, self.rows = _mul_tables(order)
        self.factors = []
        self.denom = 1
        for k, r in monomial:
            c = c_k_r(level, r % level, k)
            dc = 1
            for fr in c.coeffs:
                dc = dc * fr.denominator // _gcd(dc, fr.denominator)
            scale = 2**k * dc
            c_int = [int(fr * scale) for fr in c.coeffs]
            # zeta_N^{r(rho+1)} coordinates for each residue rho
            zvecs = []
            for rho in range(level):
                z = Cyclotomic.root(order, (2 * (r % level) * (rho + 1)) % order)
                zvecs.append([int(fr) for fr in z.coeffs])
            self.factors.append((k, r % level, dc, c_int, zvecs))
            self.denom *= scale

    def eval_scaled(self, pids: tuple[int, ...]) -> list[int]:
        phi, rows = self.phi, self.rows
        tsum = self.table.tsum
        level = self.level
        out = None
        for k, r, dc, c_int, zvecs in self.factors:
            vec = list(c_int)
            if r == 0:
                total = 0
                for rho in range(level):
                    total += tsum(pids[rho], level, 2 * rho + 1, k)
                add = total * dc
                vec[0] += add
            else:
                for rho in range(level):
                    t = tsum(pids[rho], level, 2 * rho + 1, k)
                    if t:
                        zv = zvecs[rho]
                        m = t * dc
                        for c0 in range(phi):
                            if zv[c0]:
                                vec[c0] += m * zv[c0]
            out = vec if out is None else _vec_mul(out, vec, phi, rows)
        if out is None:
            out = [1] + [0] * (phi - 1)
        return out


class SlotSumEvaluator:
    """The quotient expansion of f_{t..t,mu}/f_{t..t} on empty-core input.

    F(lambda) = sum over eta (|eta| = |mu|, empty t-core) of
    sgn_t(eta) chi^eta(mu) t^{|mu|/t} / (|Aut mu| prod mu_i)
    * prod over t-residues of s_{eta-quotient}(lambda t-quotient),
    with the shifted Schur values evaluated through their power-sum
    expansions on integer-scaled quotient data.
    """

    def __init__(self, level: int, slot_order: int, mu: tuple, table: QuotientTable):
        from .characters import chi
        from .partitions import Partition, core_and_quotients, enumerate_with_core
        from .shifted import shifted_schur_polynomial

        self.level = level
        self.t = slot_order
        self.table = table
        self.phi, self.rows = _mul_tables(2 * level)
        mu = tuple(sorted((m for m in mu if m != slot_order), reverse=True))
        self.mu = mu
        total = sum(mu)
        if total % slot_order:
            raise ValueError("extra content size must be divisible by the slot order")
        aut = 1
        mult: dict[int, int] = {}
        prod_mu = 1
        for m in mu:
            mult[m] = mult.get(m, 0) + 1
            prod_mu *= m
        for cnt in mult.values():
            aut *= factorial(cnt)
        t_pow = slot_order ** (total // slot_order)

        # collect eta terms: rational coefficient and per-residue s-polys
        self.eta_terms = []
        self.k_max = 0
        poly_dens = [1]
        terms = []
        for eta in enumerate_with_core(Partition(), slot_order, total):
            ch = chi(eta, mu) if total else 1
            if ch == 0:
                continue
            cq = core_and_quotients(eta, slot_order)
            coeff = Fraction(cq.sign * ch * t_pow, aut * prod_mu)
            polys = []
            for qi in range(slot_order):
                # residue rho pairs with quotient index t-1-rho
                poly = shifted_schur_polynomial(cq.quotients[qi].parts)
                polys.append(poly)
                for ks in poly:
                    for k in ks:
                        self.k_max = max(self.k_max, k)
                    for c in poly.values():
                        poly_dens.append(c.denominator)
            terms.append((coeff, polys))
        # uniform scaling: p_k carries denominator 2^k * den(c_k), the
        # polynomials their own; fold everything into one integer denom
        from .shifted import c_k_r

        self.pk_dens = []
        for k in range(1, self.k_max + 1):
            d = c_k_r(1, 0, k).as_fraction().denominator
            self.pk_dens.append(2**k * d)
        lcm = 1
        for coeff, polys in terms:
            dens = [coeff.denominator]
            for poly in polys:
                for ks, c in poly.items():
                    d = c.denominator
                    for k in ks:
                        d *= self.pk_dens[k - 1]
                    dens.append(d)
            for d in dens:
                lcm = lcm * d // _gcd(lcm, d)
        self.denom = lcm
        for coeff, polys in terms:
            scaled_polys = []
            for poly in polys:
                items = []
                for ks, c in poly.items():
                    scale = c
                    for k in ks:
                        scale /= self.pk_dens[k - 1]
                    items.append((tuple(ks), scale))
                scaled_polys.append(items)
            self.eta_terms.append((coeff, scaled_polys))

        # residues of the big level contributing to each t-residue
        self.sub = [
            [rho for rho in range(level) if rho % slot_order == r]
            for r in range(slot_order)
        ]
        self.scale = level // slot_order

    def eval_scaled(self, pids: tuple[int, ...]) -> list[int]:
        """Returns [num] with value = num / denom (rational: phi-vector
        with only the rational coordinate when the value is rational)."""
        t = self.t
        tsum = self.table.tsum
        from .shifted import c_k_r

        # p_k of each t-quotient of lambda, as exact Fractions
        pvals = []
        for r in range(t):
            per_k = {}
            for k in range(1, self.k_max + 1):
                const = c_k_r(1, 0, k).as_fraction()
                total = 0
                for rho in self.sub[r]:
                    off2 = 2 * ((rho - r) // t) + 1
                    total += tsum(pids[rho], self.scale, off2, k)
                per_k[k] = const + Fraction(total, 2**k)
            pvals.append(per_k)
        acc = Fraction(0)
        for coeff, polys in self.eta_terms:
            term = coeff
            for r in range(t):
                pv = pvals[r]
                sub = Fraction(0)
                for ks, c in polys[r]:
                    val = c * self.denom / self.denom  # keep Fraction type
                    val = c
                    for k in ks:
                        val *= pv[k] * self.pk_dens[k - 1]
                    sub += val
                term *= sub
                if not term:
                    break
            acc += term
        scaled = acc * self.denom
        if scaled.denominator != 1:
            raise AssertionError("scan scaling failed to clear denominators")
        out = [0] * self.phi
        out[0] = scaled.numerator
        return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


# -- the scan ---------------------------------------------------------------


def empty_core_scan(level: int, m_max: int, evaluators: list) -> tuple:
    """Accumulate sum over empty-core lambda of w_N(lambda) F_i(lambda)
    per size m = |lambda|/N, for each evaluator F_i, plus the bare
    weight sums (F = 1).

    Returns (weight_sums, values) where weight_sums[m] is a Fraction and
    values[i][m] a Cyclotomic of order 2N.
    """
    table = evaluators[0].table if evaluators else QuotientTable(level, m_max)
    for ev in evaluators:
        if ev.table is not table:
            raise ValueError("evaluators must share one quotient table")
    phi, _rows = _mul_tables(2 * level)
    sign_plan = _sign_pair_plan(level)
    hook_plan = _hook_pair_plan(level)
    dims = table.dims
    ids_by_size = table.ids_by_size
    parity = table.pair_parity
    hookprod = table.pair_hook_product

    # accumulators: {(m, sizes_key): [den_int, [vec per evaluator]]}
    acc: dict = {}

    def visit(pids: tuple[int, ...], m: int, key: tuple):
        slot = acc.get((m, key))
        if slot is None:
            slot = [0, [[0] * phi for _ in evaluators]]
            acc[(m, key)] = slot
        bit = 0
        for u, v, ge in sign_plan:
            bit ^= parity(pids[u], pids[v], ge)
        w = 1
        for u, v, ge, c in hook_plan:
            w *= hookprod(pids[u], pids[v], ge, c)
        d = 1
        for pid in pids:
            d *= dims[pid]
        w *= d * d
        if bit:
            w = -w
        slot[0] += w
        for ev, vec in zip(evaluators, slot[1]):
            fv = ev.eval_scaled(pids)
            for c0 in range(phi):
                if fv[c0]:
                    vec[c0] += w * fv[c0]

    sizes_range = range(m_max + 1)
    for m in sizes_range:
        for comp in _compositions(m, level):
            key = tuple(sorted(comp))
            pools = [ids_by_size[s] for s in comp]
            _iterate(pools, (), visit, m, key)

    weight_sums = [Fraction(0)] * (m_max + 1)
    values = [
        [Cyclotomic.rational(0, 2 * level) for _ in range(m_max + 1)]
        for _ in evaluators
    ]
    for (m, key), (den_acc, vecs) in acc.items():
        class_den = level ** (2 * m)
        for a in key:
            class_den *= factorial(a) ** 2
        weight_sums[m] += Fraction(den_acc, class_den)
        for i, vec in enumerate(vecs):
            if any(vec):
                coeffs = [Fraction(c0, class_den * evaluators[i].denom) for c0 in vec]
                values[i][m] = values[i][m] + Cyclotomic(2 * level, coeffs)
    return weight_sums, values


def _compositions(total: int, buckets: int):
    if buckets == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, buckets - 1):
            yield (first,) + rest


def _iterate(pools, prefix, visit, m, key):
    if not pools:
        visit(prefix, m, key)
        return
    head, *tail = pools
    for pid in head:
        _iterate(tail, prefix + (pid,), visit, m, key)
