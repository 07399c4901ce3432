"""Slow, independently written reference implementations used as test oracles.

Nothing here shares algorithm structure with the package: rank goes through
determinant expansion instead of elimination, isomorphism and minor tests are
plain brute force over bijections and ordered partitions, and the submatrix
scanner enumerates every row injection.  Keep these dumb; their only job is
to disagree with the fast code when the fast code is wrong.
"""

from __future__ import annotations

import itertools
import random
from typing import Iterable, Sequence

from matroidlab.gf import GFMatrix


def naive_det(p: int, rows: Sequence[Sequence[int]]) -> int:
    """Determinant mod p by Laplace expansion along the first row."""
    n = len(rows)
    if n == 0:
        return 1 % p
    if any(len(r) != n for r in rows):
        raise ValueError("determinant needs a square matrix")
    if n == 1:
        return rows[0][0] % p
    total = 0
    for j, x in enumerate(rows[0]):
        if x % p == 0:
            continue
        sub = [[r[k] for k in range(n) if k != j] for r in rows[1:]]
        sign = 1 if j % 2 == 0 else -1
        total += sign * x * naive_det(p, sub)
    return total % p


def naive_rank(m: GFMatrix) -> int:
    """Largest k such that some k-by-k submatrix has nonzero determinant."""
    rows = m.rows
    for k in range(min(m.nrows, m.ncols), 0, -1):
        for ri in itertools.combinations(range(m.nrows), k):
            for ci in itertools.combinations(range(m.ncols), k):
                sub = [[rows[i][j] for j in ci] for i in ri]
                if naive_det(m.p, sub) != 0:
                    return k
    return 0


# -- matroid-level oracles -----------------------------------------------------
#
# These work on anything exposing .labels (a tuple) and .rank(iterable of
# labels).  Rank itself is validated against naive_rank elsewhere, so the
# oracles below may call it.


def subset_rank_table(matroid) -> dict[frozenset, int]:
    labels = list(matroid.labels)
    table = {}
    for k in range(len(labels) + 1):
        for sub in itertools.combinations(labels, k):
            table[frozenset(sub)] = matroid.rank(sub)
    return table


def _tables_isomorphic(labels_a, table_a, labels_b, table_b):
    """Brute force: some bijection carries every subset rank of A onto B."""
    if len(labels_a) != len(labels_b):
        return None
    for perm in itertools.permutations(labels_b):
        mapping = dict(zip(labels_a, perm))
        if all(
            table_a[sub] == table_b[frozenset(mapping[x] for x in sub)]
            for sub in table_a
        ):
            return mapping
    return None


def naive_is_isomorphic(m, n) -> bool:
    if len(m.labels) > 8:
        raise ValueError("naive isomorphism oracle is limited to 8 elements")
    ta = subset_rank_table(m)
    tb = subset_rank_table(n)
    if sorted(ta.values()) != sorted(tb.values()):
        return False
    return _tables_isomorphic(tuple(m.labels), ta, tuple(n.labels), tb) is not None


def _minor_rank_table(m, contract: frozenset, keep: Sequence) -> dict[frozenset, int]:
    """Rank table of the minor m / contract restricted to keep.

    Uses only the rank axiom identity r_{M/T}(X) = r_M(X + T) - r_M(T), no
    contraction code from the package.
    """
    base = m.rank(contract)
    table = {}
    for k in range(len(keep) + 1):
        for sub in itertools.combinations(keep, k):
            table[frozenset(sub)] = m.rank(set(sub) | contract) - base
    return table


def naive_has_minor(m, n) -> bool:
    """Does some M / T \\ D equal N up to isomorphism?  All ordered (T, D) pairs."""
    spare = len(m.labels) - len(n.labels)
    if spare < 0:
        return False
    if len(n.labels) > 8:
        raise ValueError("naive minor oracle is limited to 8-element targets")
    tn = subset_rank_table(n)
    target_profile = sorted(tn.values())
    ground = tuple(m.labels)
    for removed in itertools.combinations(ground, spare):
        keep = tuple(x for x in ground if x not in removed)
        for t_size in range(spare + 1):
            for contract in itertools.combinations(removed, t_size):
                tm = _minor_rank_table(m, frozenset(contract), keep)
                if sorted(tm.values()) != target_profile:
                    continue
                if _tables_isomorphic(keep, tm, tuple(n.labels), tn) is not None:
                    return True
    return False


# -- exhaustive scaled-submatrix search ------------------------------------------


def naive_find_submatrix(haystack: GFMatrix, needle: GFMatrix):
    """Search for needle inside haystack up to row injection, column injection
    and column scaling.  Entries must match exactly, zeros included.

    Returns (row_map, col_map, scalars) or None.  row_map[i] is the haystack
    row playing needle row i; col_map[j] the haystack column playing needle
    column j; scalars[j] the nonzero factor applied to that haystack column.
    """
    p = haystack.p
    if needle.p != p:
        raise ValueError("field mismatch")
    if needle.nrows > haystack.nrows or needle.ncols > haystack.ncols:
        return None
    units = [s for s in range(1, p)]
    for rows in itertools.permutations(range(haystack.nrows), needle.nrows):
        projected = [tuple(haystack.rows[i][j] for i in rows) for j in range(haystack.ncols)]
        used: list[int] = []
        scalars: list[int] = []

        def place(j: int) -> bool:
            if j == needle.ncols:
                return True
            want = needle.column(j)
            for cand in range(haystack.ncols):
                if cand in used:
                    continue
                col = projected[cand]
                for s in units:
                    if all((x * s) % p == w for x, w in zip(col, want)):
                        used.append(cand)
                        scalars.append(s)
                        if place(j + 1):
                            return True
                        used.pop()
                        scalars.pop()
                        break  # other scalars can't also match unless column is zero
            return False

        # the inner break assumes a nonzero column matches under at most one
        # scalar, which holds; all-zero needle columns match any scalar, and
        # taking s=1 first is enough for existence
        if place(0):
            return tuple(rows), tuple(used), tuple(scalars)
    return None


# -- random generators -----------------------------------------------------------


def random_matrix(rng: random.Random, p: int, nrows: int, ncols: int) -> GFMatrix:
    return GFMatrix(p, [[rng.randrange(p) for _ in range(ncols)] for _ in range(nrows)])


def random_int_matrix(rng: random.Random, nrows: int, ncols: int, lo: int = -2, hi: int = 2):
    """Integer matrix usable over both GF(3) and GF(5) simultaneously."""
    return [[rng.randint(lo, hi) for _ in range(ncols)] for _ in range(nrows)]
