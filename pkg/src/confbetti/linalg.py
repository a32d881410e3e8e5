"""Exact rank computation for sparse matrices over the rationals.

Ranks are computed by fraction-free (Bareiss) elimination on integer rows
obtained by clearing denominators, so no rounding can occur anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm


@dataclass
class RationalMatrix:
    """Sparse matrix over Q; `entries` maps (row, col) to a nonzero rational."""

    rows: int
    cols: int
    entries: dict[tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (r, c), v in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise ValueError(f"entry ({r},{c}) outside {self.rows}x{self.cols}")
            v = Fraction(v)
            if v:
                clean[(r, c)] = v
        self.entries = clean

    @classmethod
    def from_rows(cls, dense):
        rows = len(dense)
        cols = len(dense[0]) if rows else 0
        entries = {}
        for r, row in enumerate(dense):
            for c, v in enumerate(row):
                if v:
                    entries[(r, c)] = Fraction(v)
        return cls(rows, cols, entries)

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(
            self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()}
        )

    def nnz(self) -> int:
        return len(self.entries)


def _integer_rows(m: RationalMatrix) -> list[dict[int, int]]:
    # Row scaling by the denominator lcm leaves the rank unchanged.
    by_row: dict[int, dict[int, Fraction]] = {}
    for (r, c), v in m.entries.items():
        by_row.setdefault(r, {})[c] = v
    rows = []
    for r in sorted(by_row):
        row = by_row[r]
        mult = lcm(*(v.denominator for v in row.values()))
        rows.append({c: int(v * mult) for c, v in sorted(row.items())})
    return rows


def rank(m: RationalMatrix) -> int:
    """Exact rank of `m` over Q.

    Bareiss elimination: columns are eliminated left to right, the pivot row
    is the sparsest candidate, and every surviving row is updated with

        new = (pivot * row - row[pc] * pivot_row) // prev_pivot

    where the division is exact (the entries stay determinants of minors of
    the original integer matrix).
    """
    active = _integer_rows(m)
    prev_piv = 1
    rk = 0
    for col in range(m.cols):
        cand = [(len(row), i) for i, row in enumerate(active) if row.get(col)]
        if not cand:
            continue
        _, pi = min(cand)
        pivot_row = active.pop(pi)
        piv = pivot_row[col]
        nxt = []
        for row in active:
            f = row.get(col, 0)
            if f:
                support = set(row) | set(pivot_row)
                support.discard(col)
                new = {}
                for c in support:
                    val = piv * row.get(c, 0) - f * pivot_row.get(c, 0)
                    if val:
                        q, rem = divmod(val, prev_piv)
                        assert rem == 0, "fraction-free invariant broken"
                        new[c] = q
            else:
                new = {}
                for c, val in row.items():
                    q, rem = divmod(piv * val, prev_piv)
                    assert rem == 0, "fraction-free invariant broken"
                    new[c] = q
            if new:
                nxt.append(new)
        active = nxt
        prev_piv = piv
        rk += 1
    return rk


def betti_from_ranks(dim_i: int, rank_out_i: int, rank_in_i: int) -> int:
    """dim C^i - rank d_i - rank d_{i-1}; negative input budget means an
    upstream assembly bug (impossible for a genuine complex)."""
    if rank_out_i + rank_in_i > dim_i:
        raise ValueError(
            f"ranks {rank_out_i}+{rank_in_i} exceed dimension {dim_i}: "
            "matrices do not come from a complex"
        )
    return dim_i - rank_out_i - rank_in_i
