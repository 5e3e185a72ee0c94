"""Exact rational and GF(2) linear algebra on small dense {-1,0,1} matrices.

Everything here works on plain Python ints and :class:`fractions.Fraction`;
no floating point is involved anywhere.  GF(2) vectors are packed into
Python ints (bit ``i`` is coordinate ``i``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

Rational = Fraction


class NotTotallyUnimodular(ValueError):
    """Raised when an operation produces an entry outside {-1, 0, 1}."""


@dataclass(frozen=True)
class TUMatrix:
    """Immutable dense matrix with entries in {-1, 0, 1}.

    ``data`` holds the rows.  ``ncols`` is stored separately so that a
    matrix with zero rows still knows its width.
    """

    data: tuple[tuple[int, ...], ...]
    ncols: int

    def __post_init__(self):
        for row in self.data:
            if len(row) != self.ncols:
                raise ValueError("ragged matrix")
            for x in row:
                if x not in (-1, 0, 1):
                    raise NotTotallyUnimodular(f"entry {x} outside {{-1,0,1}}")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], ncols: Optional[int] = None) -> "TUMatrix":
        data = tuple(tuple(int(x) for x in r) for r in rows)
        if ncols is None:
            if not data:
                raise ValueError("ncols required for a matrix without rows")
            ncols = len(data[0])
        return cls(data, ncols)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "TUMatrix":
        return cls(tuple((0,) * ncols for _ in range(nrows)), ncols)

    @property
    def nrows(self) -> int:
        return len(self.data)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.data), self.ncols)

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.data)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.ncols)]

    def select_columns(self, cols: Sequence[int]) -> "TUMatrix":
        return TUMatrix(tuple(tuple(row[j] for j in cols) for row in self.data), len(cols))

    def delete_rows(self, rows: Iterable[int]) -> "TUMatrix":
        drop = set(rows)
        return TUMatrix(tuple(r for i, r in enumerate(self.data) if i not in drop), self.ncols)

    def negate_columns(self, cols: Iterable[int]) -> "TUMatrix":
        flip = set(cols)
        return TUMatrix(
            tuple(tuple(-x if j in flip else x for j, x in enumerate(row)) for row in self.data),
            self.ncols,
        )

    def times_vector(self, x: Sequence) -> list:
        return [sum(a * b for a, b in zip(row, x)) for row in self.data]

    def to_text(self) -> str:
        lines = [f"{self.nrows} {self.ncols}"]
        lines += [" ".join(str(x) for x in row) for row in self.data]
        return "\n".join(lines) + "\n"


def parse_tu_matrix(text: str) -> TUMatrix:
    """Parse the ``rows cols`` header format; ``#`` starts a comment."""
    tokens: list[str] = []
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        tokens.extend(line.split())
    if len(tokens) < 2:
        raise ValueError("missing 'rows cols' header")
    try:
        nrows, ncols = int(tokens[0]), int(tokens[1])
        values = [int(t) for t in tokens[2:]]
    except ValueError as exc:
        raise ValueError(f"non-integer token: {exc}") from None
    if nrows < 0 or ncols < 0:
        raise ValueError("negative dimensions")
    if len(values) != nrows * ncols:
        raise ValueError(f"expected {nrows * ncols} entries, found {len(values)}")
    rows = [values[i * ncols:(i + 1) * ncols] for i in range(nrows)]
    return TUMatrix.from_rows(rows, ncols)


# ---------------------------------------------------------------------------
# rational elimination


def _rref(rows: Sequence[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; pivots chosen by least column, then least row."""
    a = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(a):
            break
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        if piv != 1:
            a[r] = [x / piv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(m: TUMatrix | Sequence[Sequence[int]], ncols: Optional[int] = None) -> int:
    """Rank over the rationals."""
    if isinstance(m, TUMatrix):
        rows, ncols = m.data, m.ncols
    else:
        rows = m
        ncols = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    return len(_rref(rows, ncols)[1])


def column_rank(m: TUMatrix, cols: Iterable[int]) -> int:
    cols = list(cols)
    if not cols:
        return 0
    return rank(m.select_columns(cols))


def kernel_basis(m: TUMatrix) -> TUMatrix:
    """Rows spanning ker(m), each a {-1,0,1} vector.

    For a TU input the reduced echelon form is again TU, so the standard
    basis ``[-N^T | I]`` built from it stays in {-1,0,1}.  Anything else
    means the input was not TU.
    """
    red, pivots = _rref(m.data, m.ncols)
    free = [j for j in range(m.ncols) if j not in set(pivots)]
    out = []
    for j in free:
        v = [0] * m.ncols
        v[j] = 1
        for i, p in enumerate(pivots):
            x = -red[i][j]
            if x.denominator != 1 or x not in (-1, 0, 1):
                raise NotTotallyUnimodular(f"kernel entry {x} at column {p}")
            v[p] = int(x)
        out.append(v)
    return TUMatrix.from_rows(out, m.ncols)


def pivot_unit_column(m: TUMatrix, col: int) -> TUMatrix:
    """Row-equivalent TU matrix whose column ``col`` is the first unit vector.

    The least-index nonzero row is moved to the top and scaled to +1, then
    eliminated from every other row.  Row operations keep the represented
    oriented matroid unchanged; dropping row 0 and ``col`` afterwards gives
    a representation of the contraction.
    """
    column = m.column(col)
    p = next((i for i, x in enumerate(column) if x != 0), None)
    if p is None:
        raise ValueError(f"column {col} is zero (a loop)")
    rows = [list(r) for r in m.data]
    rows[0], rows[p] = rows[p], rows[0]
    if rows[0][col] == -1:
        rows[0] = [-x for x in rows[0]]
    for i in range(1, len(rows)):
        f = rows[i][col]
        if f:
            rows[i] = [x - f * y for x, y in zip(rows[i], rows[0])]
    try:
        return TUMatrix.from_rows(rows, m.ncols)
    except NotTotallyUnimodular as exc:
        raise NotTotallyUnimodular(f"pivot on column {col} left {{-1,0,1}}: {exc}") from None


# ---------------------------------------------------------------------------
# total unimodularity


@dataclass(frozen=True)
class TUVerdict:
    status: str  # "verified" | "refuted" | "unchecked_above_order"
    checked_order: int
    witness_rows: tuple[int, ...] = ()
    witness_cols: tuple[int, ...] = ()
    determinant: int = 0

    @property
    def verified(self) -> bool:
        return self.status == "verified"

    @property
    def refuted(self) -> bool:
        return self.status == "refuted"


def _det(a: list[list[int]]) -> int:
    # Bareiss fraction-free elimination
    n = len(a)
    a = [row[:] for row in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def check_tu(m: TUMatrix | Sequence[Sequence[int]], max_order: int = 6) -> TUVerdict:
    """Brute-force determinant check of every square submatrix up to ``max_order``."""
    if isinstance(m, TUMatrix):
        rows = [list(r) for r in m.data]
        ncols = m.ncols
    else:
        rows = [list(map(int, r)) for r in m]
        ncols = len(rows[0]) if rows else 0
    nrows = len(rows)
    full = min(nrows, ncols)
    top = min(max_order, full)
    for k in range(1, top + 1):
        for rs in itertools.combinations(range(nrows), k):
            sub_rows = [rows[i] for i in rs]
            if k > 1 and any(not any(r[j] for j in range(ncols)) for r in sub_rows):
                continue
            for cs in itertools.combinations(range(ncols), k):
                d = _det([[r[j] for j in cs] for r in sub_rows])
                if d not in (-1, 0, 1):
                    return TUVerdict("refuted", k, rs, cs, d)
    if top >= full:
        return TUVerdict("verified", top)
    return TUVerdict("unchecked_above_order", top)


# ---------------------------------------------------------------------------
# GF(2)


def gf2_solve_bits(rows: Sequence[int], rhs: Sequence[int]) -> Optional[int]:
    """Solve ``<rows[i], x> = rhs[i]`` over GF(2), rows packed as ints.

    Pivots are taken on the least-index bit; free variables are set to 0.
    Returns ``x`` packed as an int, or ``None`` when inconsistent.
    """
    # echelon with augmented bit kept separately
    basis: list[tuple[int, int, int]] = []  # (pivot bit, row, rhs)
    for r, b in zip(rows, rhs):
        b &= 1
        for pbit, prow, pb in basis:
            if r & pbit:
                r ^= prow
                b ^= pb
        if r == 0:
            if b:
                return None
            continue
        pbit = r & -r
        new = []
        for qbit, qrow, qb in basis:
            if qrow & pbit:
                qrow ^= r
                qb ^= b
            new.append((qbit, qrow, qb))
        new.append((pbit, r, b))
        basis = new
    x = 0
    for pbit, prow, pb in basis:
        if pb:
            x |= pbit
    return x


def gf2_rank_bits(rows: Iterable[int]) -> int:
    basis: dict[int, int] = {}
    for r in rows:
        while r:
            top = r.bit_length() - 1
            if top in basis:
                r ^= basis[top]
            else:
                basis[top] = r
                break
    return len(basis)


def gf2_in_span_bits(rows: Iterable[int], target: int) -> bool:
    basis: dict[int, int] = {}
    for r in rows:
        while r:
            top = r.bit_length() - 1
            if top in basis:
                r ^= basis[top]
            else:
                basis[top] = r
                break
    while target:
        top = target.bit_length() - 1
        if top not in basis:
            return False
        target ^= basis[top]
    return True


def pack_bits(v: Sequence[int]) -> int:
    return sum(1 << i for i, x in enumerate(v) if x % 2)


def unpack_bits(x: int, n: int) -> list[int]:
    return [(x >> i) & 1 for i in range(n)]


def gf2_solve(a: Sequence[Sequence[int]], b: Sequence[int]) -> Optional[list[int]]:
    """Some ``x`` with ``a x = b`` over GF(2), or ``None`` if infeasible."""
    if len(a) != len(b):
        raise ValueError("row count of a does not match length of b")
    n = len(a[0]) if a else 0
    x = gf2_solve_bits([pack_bits(r) for r in a], [int(v) & 1 for v in b])
    return None if x is None else unpack_bits(x, n)


# ---------------------------------------------------------------------------
# conical feasibility: exact phase-1 simplex with Bland's rule


def conical_feasibility(
    cols: Sequence[Sequence[int]], target: Sequence[int]
) -> Optional[list[Fraction]]:
    """Nonnegative ``alpha`` with ``sum alpha_j cols[j] = target``, or ``None``.

    Phase 1 of the simplex method over Q with one artificial per row and
    Bland's least-index rule for both entering and leaving variables.
    """
    m = len(target)
    n = len(cols)
    for c in cols:
        if len(c) != m:
            raise ValueError("dimension mismatch")
    if all(t == 0 for t in target):
        return [Fraction(0)] * n

    # tableau rows: [a_1 .. a_n | art_1 .. art_m | rhs], rhs >= 0
    width = n + m
    tab: list[list[Fraction]] = []
    for i in range(m):
        s = -1 if target[i] < 0 else 1
        row = [Fraction(s * cols[j][i]) for j in range(n)]
        row += [Fraction(1 if k == i else 0) for k in range(m)]
        row.append(Fraction(s * target[i]))
        tab.append(row)
    basis = [n + i for i in range(m)]
    # reduced costs of the phase-1 objective (minimise sum of artificials)
    cost = [Fraction(0)] * (width + 1)
    for row in tab:
        for j in range(n):
            cost[j] -= row[j]
        cost[width] -= row[width]

    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        best = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][width] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:  # unbounded cannot happen in phase 1
            raise AssertionError("phase-1 objective unbounded")
        r = best[1]
        piv = tab[r][enter]
        tab[r] = [x / piv for x in tab[r]]
        for i in range(m):
            if i != r and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[r])]
        f = cost[enter]
        cost = [x - f * y for x, y in zip(cost, tab[r])]
        basis[r] = enter

    if cost[width] != 0:
        return None
    alpha = [Fraction(0)] * n
    for i, var in enumerate(basis):
        if var < n:
            alpha[var] = tab[i][width]
    return alpha
