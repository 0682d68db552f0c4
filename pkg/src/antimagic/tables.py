"""Closed-form generators for the three odd-width label matrices.

Three integer matrices drive every construction in this package:

* ``m1`` -- 5 x (2k+1) with entries bijective on [1, 10k+5]; rows are named
  after the fan-blade edges they label (uw, vw, xw, xu, xv).
* ``pt`` -- 5 x (2k+1), also bijective on [1, 10k+5]; rows R1..R5 feed the
  peanut/bracelet constructions through two traced sequences S1 and S2.
* ``m3`` -- 11 x (2k+1) bijective on [1, 22k+11] for the triple-hub join
  families.

This module commits to per-column closed forms; the test suite gates them
behind frozen endpoint golden values, so any mismatch fails loudly instead
of silently reindexing.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidK, ObservationViolated, SequenceSchemeViolated

M1_ROWS = ("uw", "vw", "xw", "xu", "xv")
PT_ROWS = ("R1", "R2", "R3", "R4", "R5")
M3_ROWS = ("L", "R", "C1", "C2", "C3", "L1", "L2", "L3", "R1", "R2", "R3")

_SPANS = {"m1": M1_ROWS, "pt": PT_ROWS, "m3": M3_ROWS}


@dataclass(frozen=True)
class LabelTable:
    """One named-row integer matrix with 2k+1 columns."""

    kind: str
    k: int
    rows: dict[str, tuple[int, ...]]

    @property
    def row_names(self) -> tuple[str, ...]:
        return _SPANS[self.kind]

    @property
    def columns(self) -> int:
        return 2 * self.k + 1

    @property
    def max_entry(self) -> int:
        return len(self.rows) * self.columns

    def entry(self, row: str, i: int) -> int:
        """1-based column access, mirroring the usual subscript convention."""
        return self.rows[row][i - 1]

    def column(self, i: int) -> dict[str, int]:
        return {name: self.rows[name][i - 1] for name in self.row_names}

    def all_entries(self) -> list[int]:
        out: list[int] = []
        for name in self.row_names:
            out.extend(self.rows[name])
        return out

    def is_bijective(self) -> bool:
        return sorted(self.all_entries()) == list(range(1, self.max_entry + 1))


def _check_k(k: int) -> None:
    if not isinstance(k, int) or k < 1:
        raise InvalidK(f"k must be a positive integer, got {k!r}")


def _row(k: int, low, high=None):
    """Build one 2k+1 row from per-column formulas (low: i<=k+1, high: rest)."""
    if high is None:
        high = low
    return tuple(low(i) if i <= k + 1 else high(i) for i in range(1, 2 * k + 2))


def table_m1(k: int) -> LabelTable:
    """The fan-blade matrix: entries are a permutation of [1, 10k+5]."""
    _check_k(k)
    rows = {
        "uw": _row(k, lambda i: 2 * i - 1, lambda i: 2 * i - 2 * k - 2),
        "vw": _row(k, lambda i: 3 * k + 3 - i, lambda i: 5 * k + 4 - i),
        "xw": _row(k, lambda i: 6 * k + 4 - i),
        "xu": _row(k, lambda i: 10 * k + 7 - 2 * i, lambda i: 12 * k + 8 - 2 * i),
        "xv": _row(k, lambda i: 7 * k + 3 + i, lambda i: 5 * k + 2 + i),
    }
    t = LabelTable("m1", k, rows)
    assert t.is_bijective(), f"m1 matrix not bijective at k={k}"
    return t


def table_pt(k: int) -> LabelTable:
    """The peanut matrix: entries are a permutation of [1, 10k+5]."""
    _check_k(k)
    rows = {
        "R1": _row(k, lambda i: 2 * i - 1, lambda i: 2 * i - 2 * k - 2),
        "R2": _row(k, lambda i: 4 * k + 3 - i),
        "R3": _row(k, lambda i: 5 * k + 4 - i, lambda i: 7 * k + 5 - i),
        "R4": _row(k, lambda i: 8 * k + 5 - i),
        "R5": _row(k, lambda i: 8 * k + 3 + 2 * i, lambda i: 6 * k + 2 + 2 * i),
    }
    t = LabelTable("pt", k, rows)
    assert t.is_bijective(), f"pt matrix not bijective at k={k}"
    return t


def table_m3(k: int) -> LabelTable:
    """The triple-hub matrix: entries are a permutation of [1, 22k+11]."""
    _check_k(k)
    rows = {
        "L": _row(k, lambda i: 2 * i - 1, lambda i: 2 * i - 2 * k - 2),
        "R": _row(k, lambda i: 3 * k + 3 - i, lambda i: 5 * k + 4 - i),
        "C1": _row(k, lambda i: 6 * k + 4 - i),
        "C2": _row(k, lambda i: 10 * k + 6 - i),
        "C3": _row(k, lambda i: 6 * k + 3 + i),
        "L1": _row(k, lambda i: 14 * k + 9 - 2 * i, lambda i: 16 * k + 10 - 2 * i),
        "L2": _row(k, lambda i: 18 * k + 8 + 2 * i, lambda i: 16 * k + 7 + 2 * i),
        "L3": _row(k, lambda i: 18 * k + 11 - 2 * i, lambda i: 20 * k + 12 - 2 * i),
        "R1": _row(k, lambda i: 22 * k + 13 - 2 * i, lambda i: 24 * k + 14 - 2 * i),
        "R2": _row(k, lambda i: 11 * k + 5 + i, lambda i: 9 * k + 4 + i),
        "R3": _row(k, lambda i: 14 * k + 6 + 2 * i, lambda i: 12 * k + 5 + 2 * i),
    }
    t = LabelTable("m3", k, rows)
    assert t.is_bijective(), f"m3 matrix not bijective at k={k}"
    return t


def make_table(kind: str, k: int) -> LabelTable:
    try:
        maker = {"m1": table_m1, "pt": table_pt, "m3": table_m3}[kind]
    except KeyError:
        raise InvalidK(f"unknown table kind {kind!r}") from None
    return maker(k)


# -- m1 observations ------------------------------------------------------------


def _odd_factorizations(n: int, min_r: int = 3):
    """All (r, s) with r*s == n and r >= min_r; n odd so both factors are odd."""
    for r in range(min_r, n + 1):
        if n % r == 0:
            yield r, n // r


def check_m1_observations(
    t: LabelTable, r: int | None = None, s: int | None = None
) -> dict:
    """Verify the six structural properties of the fan-blade matrix.

    1. columns of the first three rows sum to S1 = 9k+6;
    2. rows (1,4) and rows (2,5) sum to S2 = 10k+6 per column;
    3. last-three-row column sums form the AP 23k+12 .. 19k+12, step -2;
    4. rows (4,5) column sums form an AP with step -1;
    5. the last three rows total S = (7k+4)(6k+3);
    6. splitting the columns into r blocks of s, the row-3 sum of block j plus
       the rows-(4,5) sum of block r+1-j is S3 = s(21k+12), and the middle
       block's last-three-row sum is also S3.

    With ``r``/``s`` omitted, (6) runs over every factorization 2k+1 = r*s
    with r >= 3.  Raises :class:`ObservationViolated` on the first failure;
    returns a report of the computed constants.
    """
    if t.kind != "m1":
        raise InvalidK("observations (1)-(6) apply to the m1 table")
    k = t.k
    n = t.columns
    s1, s2 = 9 * k + 6, 10 * k + 6
    uw, vw, xw, xu, xv = (t.rows[name] for name in M1_ROWS)

    for i in range(n):
        if uw[i] + vw[i] + xw[i] != s1:
            raise ObservationViolated(1, f"column {i + 1}: first-3-rows sum != {s1}")
        if uw[i] + xu[i] != s2:
            raise ObservationViolated(2, f"column {i + 1}: rows 1+4 sum != {s2}")
        if vw[i] + xv[i] != s2:
            raise ObservationViolated(2, f"column {i + 1}: rows 2+5 sum != {s2}")

    last3 = [xw[i] + xu[i] + xv[i] for i in range(n)]
    expected_ap = [23 * k + 12 - 2 * i for i in range(n)]
    if last3 != expected_ap:
        raise ObservationViolated(3, "last-3-rows column sums are not the stated AP")

    rows45 = [xu[i] + xv[i] for i in range(n)]
    if any(rows45[i] - rows45[i + 1] != 1 for i in range(n - 1)):
        raise ObservationViolated(4, "rows 4+5 column sums do not decrease by 1")

    grand = sum(last3)
    if grand != (7 * k + 4) * (6 * k + 3):
        raise ObservationViolated(5, f"last-3-rows total {grand} != (7k+4)(6k+3)")

    shapes = [(r, s)] if r is not None else list(_odd_factorizations(n))
    block_sums: dict[tuple[int, int], int] = {}
    for br, bs in shapes:
        if br * bs != n:
            raise ObservationViolated(6, f"block shape {br}x{bs} does not tile {n} columns")
        s3 = bs * (21 * k + 12)
        for j in range(1, br + 1):
            cols_j = range((j - 1) * bs, j * bs)
            cols_opp = range((br - j) * bs, (br + 1 - j) * bs)
            paired = sum(xw[i] for i in cols_j) + sum(rows45[i] for i in cols_opp)
            if paired != s3:
                raise ObservationViolated(
                    6, f"blocks ({j}, {br + 1 - j}) of shape {br}x{bs} pair to {paired} != {s3}"
                )
        mid = (br + 1) // 2
        mid_sum = sum(last3[i] for i in range((mid - 1) * bs, mid * bs))
        if mid_sum != s3:
            raise ObservationViolated(6, f"middle block sum {mid_sum} != {s3}")
        block_sums[(br, bs)] = s3

    return {
        "k": k,
        "S1": s1,
        "S2": s2,
        "ap_first": 23 * k + 12,
        "ap_last": 19 * k + 12,
        "grand_total": grand,
        "block_sums": block_sums,
    }


# -- m3 observations ------------------------------------------------------------


def check_m3_observations(t: LabelTable) -> dict:
    """Verify the three structural properties of the triple-hub matrix."""
    if t.kind != "m3":
        raise InvalidK("observations (a)-(c) apply to the m3 table")
    k = t.k
    n = t.columns
    top = 25 * k + 15
    side = 50 * k + 27
    class_total = (2 * k + 1) * (39 * k + 21)

    for i in range(n):
        col = {name: t.rows[name][i] for name in M3_ROWS}
        if col["L"] + col["R"] + col["C1"] + col["C2"] + col["C3"] != top:
            raise ObservationViolated("a", f"column {i + 1}: first-5-rows sum != {top}")
        if col["L"] + col["L1"] + col["L2"] + col["L3"] != side:
            raise ObservationViolated("b", f"column {i + 1}: L-rows sum != {side}")
        if col["R"] + col["R1"] + col["R2"] + col["R3"] != side:
            raise ObservationViolated("b", f"column {i + 1}: R-rows sum != {side}")

    for a in (1, 2, 3):
        total = sum(
            sum(t.rows[name]) for name in (f"C{a}", f"R{a}", f"L{a}")
        )
        if total != class_total:
            raise ObservationViolated(
                "c", f"rows C{a}+R{a}+L{a} total {total} != {class_total}"
            )

    return {"k": k, "first_five": top, "side_sum": side, "class_total": class_total}


# -- traced sequences -----------------------------------------------------------

Source = tuple[str, int]


@dataclass(frozen=True)
class TracedSequences:
    """The two sequences S1, S2 walked out of the pt table.

    Positions are 1-based.  ``r3_columns[j-1]`` is the column whose pair of
    consecutive terms (2j-1, 2j) the j-th row-3 entry accompanies; it is the
    rung-label order of the peanut construction.
    """

    s1: tuple[int, ...]
    s2: tuple[int, ...]
    s1_sources: tuple[Source, ...]
    s2_sources: tuple[Source, ...]
    r3_columns: tuple[int, ...]
    pair_classes: tuple[str, ...]  # "top" (rows 1-2) or "bottom" (rows 4-5) per pair


def _sequence_sources(k: int) -> tuple[list[Source], list[Source]]:
    """Cell walk for S1/S2: even k uses k/2 eight-term segments, odd k uses
    (k-1)/2 segments plus explicit four-term tails."""
    s1: list[Source] = [("R2", k + 1), ("R1", k + 1)]
    s2: list[Source] = [("R4", k + 1), ("R5", k + 1)]

    def segment(i: int) -> None:
        s1.extend(
            [
                ("R5", i), ("R4", i),
                ("R2", 2 * k + 2 - i), ("R1", 2 * k + 2 - i),
                ("R5", k + 1 + i), ("R4", k + 1 + i),
                ("R2", k + 1 - i), ("R1", k + 1 - i),
            ]
        )
        s2.extend(
            [
                ("R1", i), ("R2", i),
                ("R4", 2 * k + 2 - i), ("R5", 2 * k + 2 - i),
                ("R1", k + 1 + i), ("R2", k + 1 + i),
                ("R4", k + 1 - i), ("R5", k + 1 - i),
            ]
        )

    if k % 2 == 0:
        for i in range(1, k // 2 + 1):
            segment(i)
    else:
        for i in range(1, (k - 1) // 2 + 1):
            segment(i)
        half, tail_col = (k + 1) // 2, (3 * k + 3) // 2
        s1.extend([("R5", half), ("R4", half), ("R2", tail_col), ("R1", tail_col)])
        s2.extend([("R1", half), ("R2", half), ("R4", tail_col), ("R5", tail_col)])
    return s1, s2


def trace_sequences(t: LabelTable) -> TracedSequences:
    """Trace S1 and S2 and assert their three defining properties:

    (A) first terms of S1 and S2 sum to 10k+6, and so do the last terms;
    (B) within each sequence the terms at positions (2r, 2r+1) sum to 10k+6;
    (C) the terms at positions (2j-1, 2j) share a column (the same column in
        both sequences), and together with that column's row-3 entry sum to
        9k+6 when drawn from the top two rows or 21k+12 from the bottom two.
    """
    if t.kind != "pt":
        raise SequenceSchemeViolated("sequences are traced from the pt table")
    k = t.k
    src1, src2 = _sequence_sources(k)
    s1 = [t.entry(row, col) for row, col in src1]
    s2 = [t.entry(row, col) for row, col in src2]

    length = 4 * k + 2
    if len(s1) != length or len(s2) != length:
        raise SequenceSchemeViolated(f"sequences must have {length} terms")

    used = set(src1) | set(src2)
    wanted = {
        (row, col)
        for row in ("R1", "R2", "R4", "R5")
        for col in range(1, 2 * k + 2)
    }
    if used != wanted or len(src1) + len(src2) != len(wanted):
        raise SequenceSchemeViolated("trace must cover rows R1,R2,R4,R5 exactly once")

    pair_sum = 10 * k + 6
    if s1[0] + s2[0] != pair_sum or s1[-1] + s2[-1] != pair_sum:
        raise SequenceSchemeViolated("first/last cross-sequence sums are off (A)")
    for seq in (s1, s2):
        for r in range(1, 2 * k + 1):
            if seq[2 * r - 1] + seq[2 * r] != pair_sum:
                raise SequenceSchemeViolated(
                    f"positions {2 * r},{2 * r + 1} do not sum to {pair_sum} (B)"
                )

    r3_columns: list[int] = []
    pair_classes: list[str] = []
    for j in range(2 * k + 1):
        (row_a, col_a), (row_b, col_b) = src1[2 * j], src1[2 * j + 1]
        (row_c, col_c), (row_d, col_d) = src2[2 * j], src2[2 * j + 1]
        if not (col_a == col_b == col_c == col_d):
            raise SequenceSchemeViolated(f"pair {j + 1} spans several columns (C)")
        top = {row_a, row_b} <= {"R1", "R2"}
        with_r3 = s1[2 * j] + s1[2 * j + 1] + t.entry("R3", col_a)
        expected = 9 * k + 6 if top else 21 * k + 12
        if with_r3 != expected:
            raise SequenceSchemeViolated(
                f"pair {j + 1} + row-3 entry sums to {with_r3}, expected {expected} (C)"
            )
        # the companion pair in S2 sits in the complementary row class
        other = s2[2 * j] + s2[2 * j + 1] + t.entry("R3", col_a)
        if other != (21 * k + 12 if top else 9 * k + 6):
            raise SequenceSchemeViolated(f"pair {j + 1} of S2 breaks the complement (C)")
        r3_columns.append(col_a)
        pair_classes.append("top" if top else "bottom")

    if sorted(r3_columns) != list(range(1, 2 * k + 2)):
        raise SequenceSchemeViolated("row-3 pairing must use every column once")

    return TracedSequences(
        tuple(s1), tuple(s2), tuple(src1), tuple(src2),
        tuple(r3_columns), tuple(pair_classes),
    )
