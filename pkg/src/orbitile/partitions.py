"""Partitions, Young diagrams, hooks, the abacus, cores and quotients.

A partition is identified with the set of occupied slots of its
(01)-sequence: slot n (an integer standing for the half-integer
position n + 1/2) is occupied exactly when n is one of lambda_i - i.
Beads far to the left (very negative n) are always occupied, slots far
to the right always empty.

The t-quotient labeling is fixed so that quotient i collects the slots
with n = t - 1 - i (mod t).  With this choice the displayed example
lambda = (6,5,2,2,1), t = 3 reproduces the documented 3-core (3,1) and
abacus charge vector (1, -1, 0).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache


class Partition:
    """Weakly decreasing positive integer parts; () is the empty partition."""

    __slots__ = ("parts", "size", "_hash")

    def __init__(self, parts=()):
        parts = tuple(int(p) for p in parts if p != 0)
        if any(p < 0 for p in parts):
            raise ValueError(f"negative part in {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts not weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "size", sum(parts))
        object.__setattr__(self, "_hash", hash(parts))

    def __setattr__(self, *a):
        raise AttributeError("Partition is immutable")

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __eq__(self, other):
        if isinstance(other, Partition):
            return self.parts == other.parts
        if isinstance(other, tuple):
            return self.parts == other
        return NotImplemented

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.parts < other.parts

    def __repr__(self):
        return f"Partition({list(self.parts)})"

    def __str__(self):
        return ",".join(map(str, self.parts)) if self.parts else "-"

    @staticmethod
    def parse(text: str) -> "Partition":
        """Parse a literal like "6,5,2,2,1"; empty or "-" is the empty partition."""
        text = text.strip()
        if text in ("", "-"):
            return Partition()
        return Partition(sorted((int(t) for t in text.split(",")), reverse=True))

    def to_json(self):
        return list(self.parts)

    # -- diagram geometry ---------------------------------------------

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        out = [0] * self.parts[0]
        for p in self.parts:
            for j in range(p):
                out[j] += 1
        return Partition(out)

    def contains(self, other: "Partition") -> bool:
        if len(other) > len(self):
            return False
        return all(other.parts[i] <= self.parts[i] for i in range(len(other)))

    def hook_lengths(self) -> list[list[int]]:
        """Grid of hook lengths, cell (i, j) -> arm + leg + 1."""
        conj = self.conjugate().parts
        return [
            [self.parts[i] - j + conj[j] - i - 1 for j in range(self.parts[i])]
            for i in range(len(self.parts))
        ]

    def hook_multiset(self) -> list[int]:
        return [h for row in self.hook_lengths() for h in row]

    def add_cell(self, row: int) -> "Partition":
        parts = list(self.parts)
        if row == len(parts):
            parts.append(1)
        else:
            parts[row] += 1
        return Partition(parts)

    # -- abacus --------------------------------------------------------

    def bead_positions(self, depth: int | None = None) -> list[int]:
        """Occupied slots lambda_i - i for i = 1..depth, decreasing."""
        if depth is None:
            depth = len(self.parts)
        return [
            (self.parts[i] if i < len(self.parts) else 0) - (i + 1)
            for i in range(depth)
        ]

    def to_beads(self) -> "BeadSequence":
        occupied = {p - (i + 1) for i, p in enumerate(self.parts)}
        nonneg = frozenset(n for n in occupied if n >= 0)
        # slots n < 0 unoccupied: vacuum has all of them occupied
        neg_empty = frozenset(
            n for n in range(-len(self.parts), 0) if n not in occupied
        )
        return BeadSequence(nonneg, neg_empty)

    # -- rim hooks -------------------------------------------------------

    def rim_hooks(self, t: int) -> list["RimHook"]:
        """All removable rim hooks of length t."""
        beads = set(self.bead_positions())
        floor = -len(self.parts)  # slots below this are vacuum-occupied
        out = []
        for n in sorted(beads, reverse=True):
            dst = n - t
            if dst >= floor and dst not in beads:
                between = sum(1 for b in beads if dst < b < n)
                out.append(RimHook(t, between + 1, n, dst))
        return out

    def remove_rim_hook(self, hook: "RimHook") -> "Partition":
        depth = len(self.parts)
        beads = set(self.bead_positions(depth))
        if hook.slot_from not in beads or hook.slot_to in beads:
            raise ValueError("rim hook does not fit this partition")
        beads.remove(hook.slot_from)
        beads.add(hook.slot_to)
        return _partition_from_bead_window(sorted(beads, reverse=True))

    # -- cores and quotients --------------------------------------------

    def core_and_quotients(self, t: int) -> "CoreQuotientData":
        return core_and_quotients(self, t)

    def t_core(self, t: int) -> "Partition":
        return core_and_quotients(self, t).core

    def is_t_core(self, t: int) -> bool:
        return all(h % t for h in self.hook_multiset())

    def is_decomposable(self, t: int) -> bool:
        return self.size % t == 0 and self.t_core(t).size == 0


@dataclass(frozen=True)
class BeadSequence:
    """Finite description of a charge-tracked (01)-sequence.

    ``occupied_nonneg``: occupied slots n >= 0; ``empty_neg``: unoccupied
    slots n < 0.  Charge = |occupied_nonneg| - |empty_neg|.
    """

    occupied_nonneg: frozenset
    empty_neg: frozenset

    @property
    def charge(self) -> int:
        return len(self.occupied_nonneg) - len(self.empty_neg)

    def is_occupied(self, n: int) -> bool:
        if n >= 0:
            return n in self.occupied_nonneg
        return n not in self.empty_neg

    def to_partition(self) -> Partition:
        if self.charge != 0:
            raise ValueError(f"charge {self.charge} != 0 cannot be a partition")
        window = sorted(
            list(self.occupied_nonneg)
            + [n for n in range(min(self.empty_neg, default=0), 0) if n not in self.empty_neg],
            reverse=True,
        )
        return _partition_from_bead_window(window)


@dataclass(frozen=True)
class RimHook:
    length: int
    rows_touched: int
    slot_from: int
    slot_to: int

    @property
    def sign(self) -> int:
        return -1 if self.rows_touched % 2 == 0 else 1


@dataclass(frozen=True)
class CoreQuotientData:
    core: Partition
    quotients: tuple[Partition, ...]
    sign: int
    lattice_point: tuple[int, ...]


def _partition_from_bead_window(window_desc: list[int]) -> Partition:
    """Partition from the occupied slots >= some floor, listed decreasing.

    The window must contain every occupied slot above its minimum, i.e.
    all slots below min(window)-ish are occupied.
    """
    parts = []
    for i, n in enumerate(window_desc):
        p = n + i + 1
        if p < 0:
            raise ValueError("window is not the top of a valid bead sequence")
        parts.append(p)
    return Partition([p for p in parts if p > 0])


def quotient_residue(t: int, quotient_index: int) -> int:
    """Slot residue class collected by quotient ``quotient_index``."""
    return (t - 1 - quotient_index) % t


def core_and_quotients(par: Partition, t: int) -> CoreQuotientData:
    """Split the abacus into t runners; clear each to get core and quotients.

    The sign is the product of rim-hook signs over any full peeling of
    lambda down to its core (well defined).
    """
    if t < 2:
        raise ValueError("t must be at least 2")
    depth = len(par.parts)
    depth += (-depth) % t  # pad so every runner has the same tail shape
    beads = par.bead_positions(depth)

    # runner r holds slots n = t*y + r
    runner_beads: list[list[int]] = [[] for _ in range(t)]
    for n in beads:
        r = n % t
        runner_beads[r].append((n - r) // t)

    # the padded window covers slots n >= -depth; runner r sees exactly
    # depth/t of them, namely y >= ceil((-depth - r)/t) = -depth//t (aligned)
    y_floor = -(depth // t)
    quotients = []
    charges = []
    for r in range(t):
        ys = sorted(runner_beads[r], reverse=True)
        charge = len([y for y in ys if y >= 0]) - len(
            [y for y in range(y_floor, 0) if y not in runner_beads[r]]
        )
        charges.append(charge)
        shifted = [y - charge for y in ys]
        quotients.append(_partition_from_bead_window(shifted))

    sign = _peel_sign(par, t)

    core_beads = []
    for r in range(t):
        c = charges[r]
        core_beads.extend(t * y + r for y in range(y_floor, c))
    core = _partition_from_bead_window(sorted(core_beads, reverse=True))

    by_index = tuple(quotients[quotient_residue(t, i)] for i in range(t))
    lattice = tuple(charges[quotient_residue(t, i)] for i in range(t))
    return CoreQuotientData(core, by_index, sign, lattice)


def _peel_sign(par: Partition, t: int) -> int:
    """Product of (-1)^(ht+1) over a greedy full t-rim-hook peeling."""
    beads = set(par.bead_positions())
    floor = -len(par.parts)
    sign = 1
    moved = True
    while moved:
        moved = False
        for n in sorted(beads, reverse=True):
            dst = n - t
            if dst >= floor and dst not in beads:
                between = sum(1 for b in beads if dst < b < n)
                if between % 2:
                    sign = -sign
                beads.remove(n)
                beads.add(dst)
                moved = True
                break
    return sign


def combine(core: Partition, quotients) -> Partition:
    """Inverse of core_and_quotients: rebuild lambda from core and quotients."""
    quotients = tuple(
        q if isinstance(q, Partition) else Partition(q) for q in quotients
    )
    t = len(quotients)
    if t < 2:
        raise ValueError("need at least 2 quotients")
    if not core.is_t_core(t):
        raise ValueError(f"{core} is not a {t}-core")

    max_qlen = max((len(q.parts) for q in quotients), default=0)
    depth = t * (max_qlen + len(core.parts) + 2)

    y_floor = -(depth // t)
    core_beads = core.bead_positions(depth)
    runner_core: list[list[int]] = [[] for _ in range(t)]
    for n in core_beads:
        runner_core[n % t].append((n - n % t) // t)
    beads = []
    for r in range(t):
        ys = runner_core[r]
        charge = len([y for y in ys if y >= 0]) - len(
            [y for y in range(y_floor, 0) if y not in ys]
        )
        q = quotients[quotient_residue(t, r)]
        qbeads = q.bead_positions(depth // t + abs(charge) + 1)
        beads.extend(t * (y + charge) + r for y in qbeads if y + charge >= y_floor)
    return _partition_from_bead_window(sorted(beads, reverse=True))


# -- enumeration -------------------------------------------------------


@lru_cache(maxsize=None)
def _partition_tuples(n: int, max_part: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in _partition_tuples(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def partitions_of(n: int) -> list[Partition]:
    """All partitions of n in ascending lexicographic order on parts."""
    items = [Partition(t) for t in _partition_tuples(n, n if n else 1)]
    items.sort(key=lambda p: p.parts)
    return items


def enumerate_partitions(n: int):
    """Stream the partitions of n in ascending lexicographic order."""
    yield from partitions_of(n)


def compositions(total: int, buckets: int):
    """All tuples of nonnegative ints of length ``buckets`` summing to total."""
    if buckets == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, buckets - 1):
            yield (first,) + rest


def enumerate_with_core(core: Partition, t: int, total_size: int):
    """All lambda with this t-core and |lambda| = total_size.

    Yields in a deterministic order (quotient-size compositions in
    lexicographic order, partitions in lexicographic order within each).
    """
    if not core.is_t_core(t):
        raise ValueError(f"{core} is not a {t}-core")
    rem = total_size - core.size
    if rem < 0 or rem % t != 0:
        return
    m = rem // t
    for sizes in compositions(m, t):
        pools = [partitions_of(s) for s in sizes]
        for combo in _product_lists(pools):
            yield combine(core, combo)


def _product_lists(pools):
    if not pools:
        yield ()
        return
    head, *tail = pools
    for h in head:
        for rest in _product_lists(tail):
            yield (h,) + rest
