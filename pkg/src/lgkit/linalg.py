"""Exact linear algebra over Q: dense fraction-free kernels and a sparse rank engine.

The dense path (Bareiss elimination on integer rows) backs the documented
`linear_kernel` operation and stays exact with controlled coefficient
growth.  The sparse path is an incremental row eliminator used for the
large bidegree blocks, where rows are integer dicts and pivoting follows
column order with gcd normalization after every combination.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


def row_to_int(row: dict[int, Fraction]) -> dict[int, int]:
    """Clear denominators and divide by the content; rank is unchanged."""
    if not row:
        return {}
    denom_lcm = 1
    for c in row.values():
        d = c.denominator
        denom_lcm = denom_lcm * d // gcd(denom_lcm, d)
    ints = {k: int(c * denom_lcm) for k, c in row.items()}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
    if g > 1:
        ints = {k: v // g for k, v in ints.items()}
    # sign convention: leading (smallest-column) entry positive
    if ints[min(ints)] < 0:
        ints = {k: -v for k, v in ints.items()}
    return ints


class RowEliminator:
    """Incremental exact rank of a growing set of sparse integer rows.

    Pivot rows are keyed by their leading column; each incoming row is
    reduced left to right, so the leading column strictly increases and
    the loop terminates.  Rows are renormalized by gcd after every
    combination to keep entries small.
    """

    def __init__(self) -> None:
        self.pivots: dict[int, dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _reduce(self, row: dict[int, int]) -> dict[int, int]:
        pivots = self.pivots
        while row:
            lead = min(row)
            piv = pivots.get(lead)
            if piv is None:
                return row
            a = row[lead]
            b = piv[lead]
            g = gcd(a, b)
            ma, mb = b // g, a // g
            if ma == 1:
                nxt = dict(row)
            else:
                nxt = {k: ma * v for k, v in row.items()}
            get = nxt.get
            for k, pv in piv.items():
                v = get(k, 0) - mb * pv
                if v:
                    nxt[k] = v
                else:
                    nxt.pop(k, None)
            row = nxt
            if ma != 1 and row:
                g2 = 0
                for v in row.values():
                    g2 = gcd(g2, v)
                    if g2 == 1:
                        break
                if g2 > 1:
                    row = {k: v // g2 for k, v in row.items()}
        return row

    def add(self, row: dict[int, int]) -> bool:
        """Insert a row; returns True when it increases the rank."""
        row = self._reduce(dict(row))
        if not row:
            return False
        g = 0
        for v in row.values():
            g = gcd(g, v)
        if g > 1:
            row = {k: v // g for k, v in row.items()}
        if row[min(row)] < 0:
            row = {k: -v for k, v in row.items()}
        self.pivots[min(row)] = row
        return True

    def contains(self, row: dict[int, int]) -> bool:
        """Row-space membership test; does not modify the eliminator."""
        return not self._reduce(dict(row))


def sparse_rank(rows: Iterable[dict[int, Fraction]]) -> int:
    """Exact rank of sparse rational rows (duplicates and zero rows welcome)."""
    elim = RowEliminator()
    int_rows = [row_to_int(r) for r in rows]
    int_rows.sort(key=lambda r: (len(r), sorted(r.items())))
    for r in int_rows:
        if r:
            elim.add(r)
    return elim.rank


# ---------------------------------------------------------------------------
# Dense fraction-free elimination


def _rows_to_int_matrix(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    out = []
    for row in rows:
        denom_lcm = 1
        for c in row:
            c = Fraction(c)
            denom_lcm = denom_lcm * c.denominator // gcd(denom_lcm, c.denominator)
        out.append([int(Fraction(c) * denom_lcm) for c in row])
    return out


def linear_kernel(
    rows: Sequence[Sequence[Fraction]],
) -> tuple[int, list[list[Fraction]]]:
    """Rank and left-kernel basis of a stack of row vectors over Q.

    The kernel consists of coefficient vectors c with sum(c_i * rows[i]) = 0,
    i.e. the linear relations among the rows.  Elimination is Bareiss-style
    fraction free on the integer matrix [A | I]; kernel rows come out of the
    identity block wherever the A block vanished, normalized to content 1
    with positive leading entry.
    """
    nrows = len(rows)
    if nrows == 0:
        return 0, []
    ncols = len(rows[0])
    for r in rows:
        if len(r) != ncols:
            raise ValueError("rows have inconsistent lengths")
    a = _rows_to_int_matrix(rows)
    aug = [a[i] + [1 if j == i else 0 for j in range(nrows)] for i in range(nrows)]
    width = ncols + nrows

    rank = 0
    prev = 1
    for col in range(ncols):
        piv = None
        for i in range(rank, nrows):
            if aug[i][col]:
                piv = i
                break
        if piv is None:
            continue
        if piv != rank:
            aug[rank], aug[piv] = aug[piv], aug[rank]
        pval = aug[rank][col]
        # Bareiss step: exact division by the previous pivot requires that
        # every row below the pivot is updated uniformly.
        for i in range(rank + 1, nrows):
            ival = aug[i][col]
            for j in range(width):
                aug[i][j] = (pval * aug[i][j] - ival * aug[rank][j]) // prev
        prev = pval
        rank += 1
        if rank == nrows:
            break

    kernel: list[list[Fraction]] = []
    for i in range(rank, nrows):
        if any(aug[i][:ncols]):
            raise AssertionError("elimination left a nonzero row below the rank")
        vec = aug[i][ncols:]
        g = 0
        for v in vec:
            g = gcd(g, v)
        if g > 1:
            vec = [v // g for v in vec]
        lead = next(v for v in vec if v)
        if lead < 0:
            vec = [-v for v in vec]
        kernel.append([Fraction(v) for v in vec])
    return rank, kernel
