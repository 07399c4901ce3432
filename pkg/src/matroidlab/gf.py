"""Exact dense linear algebra over the prime fields GF(3) and GF(5).

Everything in this module is immutable: each operation returns a new matrix,
so values can be shared freely between concurrent workers.  Entries are kept
as least non-negative residues; ``signed_rows`` produces the balanced form
(2 mod 3 prints as -1) used when displaying matrices.  Matrices with zero
rows or zero columns are legal everywhere and stand for empty blocks.
"""

from __future__ import annotations

from typing import Iterable, Sequence

SUPPORTED_FIELDS = (3, 5)


def _check_field(p: int) -> int:
    if p not in SUPPORTED_FIELDS:
        raise ValueError(f"unsupported field GF({p}); only GF(3) and GF(5) are supported")
    return p


class GFMatrix:
    """A dense matrix over GF(p) for p in {3, 5}, stored row-major.

    Instances are value objects: equality and hashing look at the field and
    the entries, and no method mutates ``self``.
    """

    def __init__(self, p: int, rows: Iterable[Iterable[int]], ncols: int | None = None):
        self.p = _check_field(int(p))
        body = tuple(tuple(int(x) % self.p for x in row) for row in rows)
        if body:
            width = len(body[0])
            if any(len(row) != width for row in body):
                raise ValueError("rows have unequal lengths")
            if ncols is not None and ncols != width:
                raise ValueError(f"ncols={ncols} does not match row width {width}")
        else:
            width = int(ncols) if ncols is not None else 0
            if width < 0:
                raise ValueError("ncols must be non-negative")
        self.rows: tuple[tuple[int, ...], ...] = body
        self.nrows = len(body)
        self.ncols = width

    # -- construction helpers -------------------------------------------------

    @classmethod
    def identity(cls, p: int, n: int) -> "GFMatrix":
        return cls(p, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, p: int, nrows: int, ncols: int) -> "GFMatrix":
        return cls(p, [[0] * ncols for _ in range(nrows)], ncols=ncols)

    @classmethod
    def from_columns(cls, p: int, columns: Sequence[Sequence[int]], nrows: int | None = None) -> "GFMatrix":
        cols = [tuple(int(x) for x in c) for c in columns]
        if cols:
            height = len(cols[0])
            if any(len(c) != height for c in cols):
                raise ValueError("columns have unequal lengths")
        else:
            height = int(nrows) if nrows is not None else 0
        return cls(p, [[cols[j][i] for j in range(len(cols))] for i in range(height)], ncols=len(cols))

    # -- basic accessors -------------------------------------------------------

    def entry(self, i: int, j: int) -> int:
        return self.rows[i][j]

    def column(self, j: int) -> tuple[int, ...]:
        if not 0 <= j < self.ncols:
            raise IndexError(f"column index {j} out of range")
        return tuple(row[j] for row in self.rows)

    @property
    def columns(self) -> tuple[tuple[int, ...], ...]:
        cached = self.__dict__.get("_columns")
        if cached is None:
            cached = tuple(tuple(row[j] for row in self.rows) for j in range(self.ncols))
            self.__dict__["_columns"] = cached
        return cached

    def transpose(self) -> "GFMatrix":
        return GFMatrix(self.p, self.columns, ncols=self.nrows)

    def signed_rows(self) -> tuple[tuple[int, ...], ...]:
        """Entries remapped to the balanced residue system, e.g. 2 -> -1 mod 3."""
        half = self.p // 2
        return tuple(tuple(x if x <= half else x - self.p for x in row) for row in self.rows)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, GFMatrix)
            and self.p == other.p
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.p, self.ncols, self.rows))

    def __repr__(self) -> str:
        return f"GFMatrix(p={self.p}, {self.nrows}x{self.ncols})"

    # -- elimination -----------------------------------------------------------

    def rref(self) -> tuple["GFMatrix", tuple[int, ...]]:
        """Reduced row echelon form together with the pivot column indices."""
        p = self.p
        work = [list(row) for row in self.rows]
        pivots: list[int] = []
        r = 0
        for c in range(self.ncols):
            if r == self.nrows:
                break
            pivot_row = next((i for i in range(r, self.nrows) if work[i][c]), None)
            if pivot_row is None:
                continue
            work[r], work[pivot_row] = work[pivot_row], work[r]
            inv = pow(work[r][c], p - 2, p)
            work[r] = [(x * inv) % p for x in work[r]]
            for i in range(self.nrows):
                if i != r and work[i][c]:
                    f = work[i][c]
                    top = work[r]
                    work[i] = [(a - f * b) % p for a, b in zip(work[i], top)]
            pivots.append(c)
            r += 1
        return GFMatrix(self.p, work, ncols=self.ncols), tuple(pivots)

    def pivot_columns(self) -> tuple[int, ...]:
        cached = self.__dict__.get("_pivots")
        if cached is None:
            _, cached = self.rref()
            self.__dict__["_pivots"] = cached
        return cached

    def rank(self) -> int:
        return len(self.pivot_columns())

    # -- row and column operations ----------------------------------------------

    def scale_col(self, j: int, s: int) -> "GFMatrix":
        s = int(s) % self.p
        if s == 0:
            raise ValueError("column scalar must be nonzero")
        if not 0 <= j < self.ncols:
            raise IndexError(f"column index {j} out of range")
        return GFMatrix(
            self.p,
            [[(x * s) % self.p if k == j else x for k, x in enumerate(row)] for row in self.rows],
            ncols=self.ncols,
        )

    def permute_rows(self, order: Sequence[int]) -> "GFMatrix":
        order = list(order)
        if sorted(order) != list(range(self.nrows)):
            raise ValueError("row order is not a permutation")
        return GFMatrix(self.p, [self.rows[i] for i in order], ncols=self.ncols)

    def permute_cols(self, order: Sequence[int]) -> "GFMatrix":
        order = list(order)
        if sorted(order) != list(range(self.ncols)):
            raise ValueError("column order is not a permutation")
        return GFMatrix(self.p, [[row[j] for j in order] for row in self.rows], ncols=len(order))

    def delete_rows(self, indices: Iterable[int]) -> "GFMatrix":
        drop = set(indices)
        if any(not 0 <= i < self.nrows for i in drop):
            raise IndexError("row index out of range")
        return GFMatrix(self.p, [row for i, row in enumerate(self.rows) if i not in drop], ncols=self.ncols)

    def delete_cols(self, indices: Iterable[int]) -> "GFMatrix":
        drop = set(indices)
        if any(not 0 <= j < self.ncols for j in drop):
            raise IndexError("column index out of range")
        keep = [j for j in range(self.ncols) if j not in drop]
        return GFMatrix(self.p, [[row[j] for j in keep] for row in self.rows], ncols=len(keep))

    def take_cols(self, indices: Sequence[int]) -> "GFMatrix":
        if any(not 0 <= j < self.ncols for j in indices):
            raise IndexError("column index out of range")
        return GFMatrix(self.p, [[row[j] for j in indices] for row in self.rows], ncols=len(indices))

    def take_rows(self, indices: Sequence[int]) -> "GFMatrix":
        if any(not 0 <= i < self.nrows for i in indices):
            raise IndexError("row index out of range")
        return GFMatrix(self.p, [self.rows[i] for i in indices], ncols=self.ncols)

    def append_rows(self, new_rows: Iterable[Iterable[int]]) -> "GFMatrix":
        extra = [list(r) for r in new_rows]
        if any(len(r) != self.ncols for r in extra):
            raise ValueError("appended rows must match the column count")
        return GFMatrix(self.p, list(self.rows) + extra, ncols=self.ncols)

    def append_cols(self, new_cols: Sequence[Sequence[int]]) -> "GFMatrix":
        extra = [list(c) for c in new_cols]
        if any(len(c) != self.nrows for c in extra):
            raise ValueError("appended columns must match the row count")
        rows = [list(row) + [c[i] for c in extra] for i, row in enumerate(self.rows)]
        return GFMatrix(self.p, rows, ncols=self.ncols + len(extra))

    def add_row_to(self, src: int, dst: int, coeff: int = 1) -> "GFMatrix":
        """Row operation ``row[dst] += coeff * row[src]``."""
        if not (0 <= src < self.nrows and 0 <= dst < self.nrows):
            raise IndexError("row index out of range")
        if src == dst:
            raise ValueError("source and destination rows must differ")
        c = int(coeff) % self.p
        rows = [list(r) for r in self.rows]
        rows[dst] = [(a + c * b) % self.p for a, b in zip(rows[dst], rows[src])]
        return GFMatrix(self.p, rows, ncols=self.ncols)

    def neg(self) -> "GFMatrix":
        return GFMatrix(self.p, [[(-x) % self.p for x in row] for row in self.rows], ncols=self.ncols)


def reduce(entries: Iterable[Iterable[int]], p: int, ncols: int | None = None) -> GFMatrix:
    """Reduce integer entries into GF(p) and wrap them as a matrix."""
    return GFMatrix(p, entries, ncols=ncols)


def support(v: Iterable[int]) -> frozenset[int]:
    """Indices of the nonzero entries of a column (entries given as residues)."""
    return frozenset(i for i, x in enumerate(v) if x != 0)


def weight(v: Iterable[int]) -> int:
    """Number of nonzero entries of a column."""
    return sum(1 for x in v if x != 0)


def hstack(*mats: GFMatrix) -> GFMatrix:
    """Concatenate matrices side by side; all must share field and row count."""
    mats = tuple(m for m in mats)
    if not mats:
        raise ValueError("hstack needs at least one matrix")
    p = mats[0].p
    nrows = mats[0].nrows
    if any(m.p != p or m.nrows != nrows for m in mats):
        raise ValueError("hstack requires matching field and row count")
    rows = [[x for m in mats for x in (m.rows[i] if m.rows else ())] for i in range(nrows)]
    return GFMatrix(p, rows, ncols=sum(m.ncols for m in mats))


def vstack(*mats: GFMatrix) -> GFMatrix:
    mats = tuple(m for m in mats)
    if not mats:
        raise ValueError("vstack needs at least one matrix")
    p = mats[0].p
    ncols = mats[0].ncols
    if any(m.p != p or m.ncols != ncols for m in mats):
        raise ValueError("vstack requires matching field and column count")
    rows = [row for m in mats for row in m.rows]
    return GFMatrix(p, rows, ncols=ncols)


# -- matrix file format --------------------------------------------------------
#
# Canonical layout (writer output, parser accepts '#' comment lines and any
# integer entries, which are reduced modulo the field):
#
#   field 3
#   rows 2
#   cols 3
#   0 1 2
#   1 0 1


def to_text(m: GFMatrix) -> str:
    lines = [f"field {m.p}", f"rows {m.nrows}", f"cols {m.ncols}"]
    for row in m.rows:
        lines.append(" ".join(str(x) for x in row))
    return "\n".join(lines) + "\n"


def from_text(text: str) -> GFMatrix:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if len(lines) < 3:
        raise ValueError("matrix text too short: expected field/rows/cols headers")

    def header(line: str, key: str) -> int:
        parts = line.split()
        if len(parts) != 2 or parts[0] != key:
            raise ValueError(f"expected '{key} <n>', got {line!r}")
        return int(parts[1])

    p = header(lines[0], "field")
    nrows = header(lines[1], "rows")
    ncols = header(lines[2], "cols")
    data = lines[3:]
    if len(data) != nrows:
        raise ValueError(f"expected {nrows} data lines, got {len(data)}")
    rows = []
    for ln in data:
        vals = [int(tok) for tok in ln.split()]
        if len(vals) != ncols:
            raise ValueError(f"expected {ncols} entries per row, got {len(vals)}")
        rows.append(vals)
    return GFMatrix(p, rows, ncols=ncols)


def write_file(m: GFMatrix, path: str) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(to_text(m))


def read_file(path: str) -> GFMatrix:
    with open(path, "r", encoding="ascii") as fh:
        return from_text(fh.read())
