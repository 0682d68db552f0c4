"""Equal-sum partition of an arithmetic progression into odd-shaped blocks.

The hub-merging constructions need the t*s induced hub sums, which form an
arithmetic progression, grouped into t blocks of s terms with one common
block sum (the "magic rectangle with constant row sum").  Only equal *row*
sums are required here, so this module solves the weaker equal-sum-partition
problem.

Because block values are affine in their positions, it suffices to partition
the positions 0..t*s-1.  For odd t and odd s >= 3 an explicit scheme always
works: three leading slices of t consecutive positions are combined by a
pair of offset permutations with constant offset sum, and every remaining
pair of slices is combined by reflection.  The produced partition is
verified unconditionally; a bounded backtracking fallback exists for any
shape the scheme would miss (none are known).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InfeasibleShape


@dataclass(frozen=True)
class ApSpec:
    """Arithmetic progression ``first, first+step, ...`` of ``length`` terms."""

    first: int
    step: int
    length: int

    def values(self) -> list[int]:
        return [self.first + self.step * i for i in range(self.length)]


@dataclass(frozen=True)
class EqualSumPartition:
    blocks: tuple[tuple[int, ...], ...]
    target: int


def _triple_offsets(t: int) -> tuple[list[int], list[int]]:
    """Two permutations a, b of [0, t) with i + a[i] + b[i] == 3(t-1)/2.

    For t = 2h+1: a maps [0..h] -> [h..2h] and [h+1..2h] -> [0..h-1];
    b picks up the exact remainder, hitting the even then odd residues.
    """
    h = (t - 1) // 2
    a = [h + i if i <= h else i - h - 1 for i in range(t)]
    b = [3 * h - i - a[i] for i in range(t)]
    assert sorted(a) == list(range(t)) and sorted(b) == list(range(t))
    return a, b


def _position_blocks(t: int, s: int) -> list[list[int]]:
    """t blocks of s positions from [0, t*s) with equal position sums."""
    if t == 1:
        return [list(range(s))]
    if s == 1:
        raise InfeasibleShape(
            f"{t} singleton blocks of distinct terms cannot have equal sums"
        )
    blocks = [[] for _ in range(t)]
    a, b = _triple_offsets(t)
    for i in range(t):
        blocks[i].extend([i, t + a[i], 2 * t + b[i]])
    lo = 3 * t
    while lo < t * s:
        for i in range(t):
            blocks[i].extend([lo + i, lo + 2 * t - 1 - i])
        lo += 2 * t
    return blocks


def _backtrack_blocks(values: list[int], t: int, s: int) -> list[list[int]] | None:
    """Exhaustive fallback: partition ``values`` into t blocks of s terms with
    equal sums, or ``None``.  Values are taken largest-first and ties broken
    by first feasible block, so the result is deterministic."""
    total = sum(values)
    if total % t:
        return None
    target = total // t
    order = sorted(values, reverse=True)
    blocks: list[list[int]] = [[] for _ in range(t)]
    sums = [0] * t

    def place(idx: int) -> bool:
        if idx == len(order):
            return True
        v = order[idx]
        seen_states = set()
        for b in range(t):
            state = (sums[b], len(blocks[b]))
            if state in seen_states:
                continue
            seen_states.add(state)
            if len(blocks[b]) == s or sums[b] + v > target:
                continue
            blocks[b].append(v)
            sums[b] += v
            if place(idx + 1):
                return True
            blocks[b].pop()
            sums[b] -= v
        return False

    return blocks if place(0) else None


def partition_ap(spec: ApSpec, t: int, s: int) -> EqualSumPartition:
    """Partition the AP into t blocks of s terms with equal block sums.

    Only odd t and s are in scope; a singleton-block shape with t > 1 is
    mathematically infeasible and raises :class:`InfeasibleShape`.  Within a
    block the values are listed descending, so blocks are canonical and the
    whole function is deterministic.
    """
    if t < 1 or s < 1:
        raise InfeasibleShape(f"block shape {t}x{s} is not positive")
    if t % 2 == 0 or s % 2 == 0:
        raise InfeasibleShape(f"block shape {t}x{s} has an even side")
    if spec.length != t * s:
        raise InfeasibleShape(f"AP length {spec.length} != {t}*{s}")
    if spec.step < 1:
        raise InfeasibleShape("AP step must be positive")

    values = spec.values()
    try:
        pos_blocks = _position_blocks(t, s)
        blocks = [[values[p] for p in blk] for blk in pos_blocks]
    except InfeasibleShape:
        raise
    target, ok = None, True
    sums = [sum(b) for b in blocks]
    if len(set(sums)) == 1:
        target = sums[0]
    else:
        ok = False

    if not ok:
        found = _backtrack_blocks(values, t, s)
        if found is None:
            raise InfeasibleShape(f"no equal-sum {t}x{s} partition exists")
        blocks, target = found, sum(found[0])

    # unconditional certificate: disjoint cover with one common sum
    flat = sorted(v for b in blocks for v in b)
    assert flat == sorted(values), "partition does not cover the AP"
    assert all(sum(b) == target for b in blocks), "unequal block sums"
    assert t * target == sum(values)

    canonical = tuple(tuple(sorted(b, reverse=True)) for b in blocks)
    return EqualSumPartition(canonical, target)
