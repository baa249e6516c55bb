"""Exact linear algebra over Q and cyclotomic fields.

Elimination follows the fraction-free (Bareiss) schema: after each pivot
step every entry is divided by the previous pivot, which keeps
intermediate values the size of minors instead of growing geometrically.
Over a field the divisions are exact by construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .cyclo import Cyclotomic


class InconsistentSystem(ValueError):
    """Raised by callers that require a solution when none exists."""


@dataclass
class LinearSolveResult:
    status: str  # "unique" | "underdetermined" | "inconsistent"
    solution: list | None
    kernel: list[list] = field(default_factory=list)
    rank: int = 0

    def require_unique(self):
        if self.status == "inconsistent":
            raise InconsistentSystem("no solution exists")
        if self.status != "unique":
            raise InconsistentSystem("solution is not unique (nontrivial kernel)")
        return self.solution


def _is_zero(x) -> bool:
    if isinstance(x, Cyclotomic):
        return x.is_zero()
    return x == 0


def solve_linear_exact(rows: list[list], rhs: list) -> LinearSolveResult:
    """Exact solve of A x = b.

    Returns the unique solution, or a particular solution together with a
    kernel basis, or an inconsistency report.  Never silently falls back
    to an approximate answer.
    """
    m = len(rows)
    if m != len(rhs):
        raise ValueError("matrix and right-hand side sizes differ")
    n = len(rows[0]) if m else 0
    work = [list(r) + [rhs[i]] for i, r in enumerate(rows)]

    pivot_cols: list[int] = []
    prev_pivot = None
    r = 0
    for c in range(n):
        pr = None
        for i in range(r, m):
            if not _is_zero(work[i][c]):
                pr = i
                break
        if pr is None:
            continue
        work[r], work[pr] = work[pr], work[r]
        piv = work[r][c]
        for i in range(r + 1, m):
            row_i, row_r = work[i], work[r]
            lead = row_i[c]
            for j in range(c + 1, n + 1):
                val = row_i[j] * piv - lead * row_r[j]
                if prev_pivot is not None:
                    val = val / prev_pivot
                row_i[j] = val
            row_i[c] = 0 * piv
        prev_pivot = piv
        pivot_cols.append(c)
        r += 1
        if r == m:
            break

    rank = len(pivot_cols)
    for i in range(rank, m):
        if not _is_zero(work[i][n]):
            return LinearSolveResult("inconsistent", None, [], rank)

    # back substitution on the echelon rows
    free_cols = [c for c in range(n) if c not in pivot_cols]
    zero = rhs[0] * 0 if m else Fraction(0)

    def back_solve(use_rhs: bool, free_assignment: dict[int, int]):
        x = [zero] * n
        for c, v in free_assignment.items():
            x[c] = x[c] + v
        for i in range(rank - 1, -1, -1):
            c = pivot_cols[i]
            s = work[i][n] if use_rhs else zero
            for j in range(c + 1, n):
                if not _is_zero(work[i][j]) and not _is_zero(x[j]):
                    s = s - work[i][j] * x[j]
            x[c] = s / work[i][c]
        return x

    particular = back_solve(True, {})
    kernel = [back_solve(False, {fc: 1}) for fc in free_cols]

    if not free_cols:
        return LinearSolveResult("unique", particular, [], rank)
    return LinearSolveResult("underdetermined", particular, kernel, rank)


def matrix_rank(rows: list[list]) -> int:
    if not rows:
        return 0
    zero_rhs = [rows[0][0] * 0 for _ in rows]
    return solve_linear_exact(rows, zero_rhs).rank


def det_bareiss_fractions(matrix: list[list[Fraction]]) -> Fraction:
    """Exact determinant of a rational matrix.

    Rows are scaled to integers first, then the integer Bareiss recursion
    runs divisions that are exact by the Sylvester identity.
    """
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    work: list[list[int]] = []
    for row in matrix:
        den = 1
        for x in row:
            den = den * x.denominator // _gcd(den, x.denominator)
        scale /= den
        work.append([int(x * den) for x in row])

    sign = 1
    prev = 1
    for k in range(n - 1):
        if work[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if work[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            work[k], work[swap] = work[swap], work[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                work[i][j] = (work[i][j] * work[k][k] - work[i][k] * work[k][j]) // prev
            work[i][k] = 0
        prev = work[k][k]
    return sign * scale * work[n - 1][n - 1]


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a
