"""Linear matroids presented by matrices over GF(3) or GF(5).

A LinearMatroid is a GFMatrix plus distinct integer labels, one per column.
Everything downstream (minor search, isomorphism, embedding) works through
the subset rank oracle, so results are matroid-level statements even though
all the arithmetic is exact linear algebra.

Determinism contract: every search in this module iterates labels and
candidates in sorted order, so the first witness found is the
lexicographically least one and repeated runs agree byte for byte.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .gf import GFMatrix


def _insert_into_basis(v: Sequence[int], basis: list, p: int) -> bool:
    """Reduce v against an echelon basis; insert if independent.

    basis holds (lead_index, normalized_vector) pairs.  Returns True when v
    was independent of the span and got inserted.
    """
    w = list(v)
    for lead, row in basis:
        c = w[lead]
        if c:
            w = [(a - c * b) % p for a, b in zip(w, row)]
    for i, x in enumerate(w):
        if x:
            inv = pow(x, p - 2, p)
            w = [(a * inv) % p for a in w]
            basis.append((i, w))
            return True
    return False


class LinearMatroid:
    """Vector matroid of a matrix, with stable integer column labels."""

    def __init__(self, matrix: GFMatrix, labels: Sequence[int] | None = None):
        if labels is None:
            labels = range(matrix.ncols)
        labels = tuple(int(x) for x in labels)
        if len(labels) != matrix.ncols:
            raise ValueError("need exactly one label per column")
        if len(set(labels)) != len(labels):
            raise ValueError("labels must be distinct")
        self.matrix = matrix
        self.labels = labels
        self._col_of = {lab: j for j, lab in enumerate(labels)}
        self._rank_memo: dict[tuple[int, ...], int] = {}

    # -- basics ---------------------------------------------------------------

    @property
    def p(self) -> int:
        return self.matrix.p

    @property
    def size(self) -> int:
        return len(self.labels)

    def column_of(self, label: int) -> tuple[int, ...]:
        return self.matrix.column(self._col_index(label))

    def _col_index(self, label: int) -> int:
        try:
            return self._col_of[label]
        except KeyError:
            raise KeyError(f"unknown element label {label}") from None

    def __repr__(self) -> str:
        return f"LinearMatroid(GF({self.p}), rank {self.rank()}, {self.size} elements)"

    # -- rank oracle ------------------------------------------------------------

    def rank(self, subset: Iterable[int] | None = None) -> int:
        if subset is None:
            cols = tuple(range(self.matrix.ncols))
        else:
            cols = tuple(sorted(self._col_index(x) for x in set(subset)))
        hit = self._rank_memo.get(cols)
        if hit is not None:
            return hit
        basis: list = []
        p = self.p
        r = 0
        for j in cols:
            if _insert_into_basis(self.matrix.column(j), basis, p):
                r += 1
        self._rank_memo[cols] = r
        return r

    def is_independent(self, subset: Iterable[int]) -> bool:
        subset = set(subset)
        return self.rank(subset) == len(subset)

    # -- minors -----------------------------------------------------------------

    def delete(self, labels: Iterable[int]) -> "LinearMatroid":
        drop = {self._col_index(x) for x in set(labels)}
        keep = [j for j in range(self.matrix.ncols) if j not in drop]
        return LinearMatroid(self.matrix.take_cols(keep), [self.labels[j] for j in keep])

    def restrict(self, labels: Iterable[int]) -> "LinearMatroid":
        keep_set = set(labels)
        for x in keep_set:
            self._col_index(x)
        keep = [j for j, lab in enumerate(self.labels) if lab in keep_set]
        return LinearMatroid(self.matrix.take_cols(keep), [self.labels[j] for j in keep])

    def contract(self, labels: Iterable[int]) -> "LinearMatroid":
        """Contract by pivoting: each contracted non-loop removes one row."""
        todo = sorted(set(labels))
        for x in todo:
            self._col_index(x)
        work = [list(row) for row in self.matrix.rows]
        live = list(self.labels)
        p = self.p
        for x in todo:
            j = live.index(x)
            col = [work[i][j] for i in range(len(work))]
            pivot = next((i for i, c in enumerate(col) if c), None)
            if pivot is None:
                # loop: contraction equals deletion
                for row in work:
                    del row[j]
                del live[j]
                continue
            inv = pow(work[pivot][j], p - 2, p)
            work[pivot] = [(c * inv) % p for c in work[pivot]]
            for i in range(len(work)):
                if i != pivot and work[i][j]:
                    f = work[i][j]
                    work[i] = [(a - f * b) % p for a, b in zip(work[i], work[pivot])]
            del work[pivot]
            for row in work:
                del row[j]
            del live[j]
        return LinearMatroid(GFMatrix(p, work, ncols=len(live)), live)

    def minor(self, contract: Iterable[int] = (), delete: Iterable[int] = ()) -> "LinearMatroid":
        contract = set(contract)
        delete = set(delete)
        if contract & delete:
            raise ValueError("contract and delete sets must be disjoint")
        return self.contract(contract).delete(delete)

    # -- loops, parallel classes, simplification ----------------------------------

    def loops(self) -> tuple[int, ...]:
        return tuple(x for x in self.labels if all(c == 0 for c in self.column_of(x)))

    def _parallel_key(self, label: int) -> tuple[int, ...] | None:
        col = self.column_of(label)
        lead = next((c for c in col if c), None)
        if lead is None:
            return None
        inv = pow(lead, self.p - 2, self.p)
        return tuple((c * inv) % self.p for c in col)

    def parallel_classes(self) -> tuple[tuple[int, ...], ...]:
        """Non-loop elements grouped by projective point, each class sorted."""
        groups: dict[tuple[int, ...], list[int]] = {}
        for x in self.labels:
            key = self._parallel_key(x)
            if key is not None:
                groups.setdefault(key, []).append(x)
        return tuple(tuple(sorted(g)) for g in sorted(groups.values(), key=lambda g: min(g)))

    def simplify(self) -> "LinearMatroid":
        keep = [min(cls) for cls in self.parallel_classes()]
        return self.restrict(keep)

    def is_simple(self) -> bool:
        return not self.loops() and all(len(c) == 1 for c in self.parallel_classes())

    # -- duality ------------------------------------------------------------------

    def dual(self) -> "LinearMatroid":
        rref, piv = self.matrix.rref()
        n = self.matrix.ncols
        nonpiv = [j for j in range(n) if j not in piv]
        p = self.p
        cols: list[list[int]] = [[0] * len(nonpiv) for _ in range(n)]
        for i, j in enumerate(piv):
            cols[j] = [(-rref.rows[i][q]) % p for q in nonpiv]
        for k, q in enumerate(nonpiv):
            cols[q] = [1 if t == k else 0 for t in range(len(nonpiv))]
        dual_matrix = GFMatrix.from_columns(p, cols, nrows=len(nonpiv))
        return LinearMatroid(dual_matrix, self.labels)


def vector_matroid(matrix: GFMatrix, labels: Sequence[int] | None = None) -> LinearMatroid:
    return LinearMatroid(matrix, labels)


# -- witnesses ---------------------------------------------------------------------


@dataclass(frozen=True)
class MinorWitness:
    """Certificate that N is isomorphic to M/contracted\\deleted.

    mapping is a sorted tuple of (target label, surviving M label) pairs.
    """

    contracted: tuple[int, ...]
    deleted: tuple[int, ...]
    mapping: tuple[tuple[int, int], ...]

    def as_dict(self) -> dict[int, int]:
        return dict(self.mapping)


def verify_bijection(m: LinearMatroid, n: LinearMatroid, mapping: Mapping[int, int]) -> bool:
    """Full check that mapping (labels of m -> labels of n) is an isomorphism.

    Independence of subsets of size at most rank determines every rank value,
    so checking those subsets in both directions is a complete test.
    """
    if set(mapping.keys()) != set(m.labels) or set(mapping.values()) != set(n.labels):
        return False
    if m.size != n.size or m.rank() != n.rank():
        return False
    r = m.rank()
    for k in range(1, r + 1):
        for sub in itertools.combinations(m.labels, k):
            if m.is_independent(sub) != n.is_independent([mapping[x] for x in sub]):
                return False
    return True


def verify_embedding(m: LinearMatroid, n: LinearMatroid, mapping: Mapping[int, int]) -> bool:
    """Full check that mapping embeds m into n preserving every subset rank."""
    if set(mapping.keys()) != set(m.labels):
        return False
    image = list(mapping.values())
    if len(set(image)) != len(image) or not set(image) <= set(n.labels):
        return False
    r = m.rank()
    if n.rank(image) != r:
        # ranks above r inside the image would otherwise go unnoticed
        return False
    for k in range(1, r + 1):
        for sub in itertools.combinations(m.labels, k):
            if m.is_independent(sub) != n.is_independent([mapping[x] for x in sub]):
                return False
    return True


def verify_witness(m: LinearMatroid, n: LinearMatroid, witness: MinorWitness) -> bool:
    """Recheck a minor witness using only the rank oracle of m.

    Uses r_{M/T}(S) = r_M(S + T) - r_M(T); no contraction code involved.
    """
    contracted = set(witness.contracted)
    deleted = set(witness.deleted)
    mapping = witness.as_dict()
    if contracted & deleted:
        return False
    if set(mapping.keys()) != set(n.labels):
        return False
    image = set(mapping.values())
    if len(image) != n.size:
        return False
    survivors = set(m.labels) - contracted - deleted
    if not image <= survivors:
        return False
    base = m.rank(contracted)
    if m.rank() - base != n.rank() or len(survivors) != n.size:
        return False
    for k in range(1, n.rank() + 1):
        for sub in itertools.combinations(n.labels, k):
            want = len(sub) if n.is_independent(sub) else None
            got = m.rank({mapping[x] for x in sub} | contracted) - base
            if want is None:
                if got == len(sub):
                    return False
            elif got != len(sub):
                return False
    return True


# -- line structure and search fingerprints -------------------------------------------


def _key2(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a <= b else (b, a)


def _key3(a: int, b: int, c: int) -> tuple[int, int, int]:
    if a > b:
        a, b = b, a
    if b > c:
        b, c = c, b
    if a > b:
        a, b = b, a
    return (a, b, c)


def _small_rank_tables(m: LinearMatroid):
    """Rank lookups for all pairs and triples of labels."""
    labels = sorted(m.labels)
    r2 = {}
    r3 = {}
    for pair in itertools.combinations(labels, 2):
        r2[pair] = m.rank(pair)
    for triple in itertools.combinations(labels, 3):
        r3[triple] = m.rank(triple)
    return r2, r3


def _line_data(m: LinearMatroid):
    """Rank-2 closures of simple matroids.

    Returns (lines, through) where lines is the set of maximal rank-2 flats
    with at least 3 points (as frozensets of labels) and through[x] is the
    sorted tuple of sizes of such lines containing x.
    """
    labels = sorted(m.labels)
    closures: set[frozenset[int]] = set()
    for a, b in itertools.combinations(labels, 2):
        flat = frozenset(c for c in labels if m.rank({a, b, c}) <= 2)
        if len(flat) >= 3:
            closures.add(flat)
    through: dict[int, tuple[int, ...]] = {
        x: tuple(sorted((len(l) for l in closures if x in l), reverse=True)) for x in labels
    }
    return closures, through


def _profile_dominates(big: tuple[int, ...], small: tuple[int, ...]) -> bool:
    """Can every line size in small be matched to a distinct >= size in big?

    Both profiles sorted descending; greedy matching is optimal here.
    """
    if len(big) < len(small):
        return False
    i = 0
    for want in small:
        while i < len(big) and big[i] < want:
            return False
        i += 1
    return all(b >= s for b, s in zip(big, small))


def _closure_table(m: LinearMatroid):
    """closure[(a, b)] -> sorted tuple of labels on the line through a and b."""
    labels = sorted(m.labels)
    table: dict[tuple[int, int], tuple[int, ...]] = {}
    for a, b in itertools.combinations(labels, 2):
        pts = tuple(c for c in labels if m.rank({a, b, c}) <= 2)
        table[(a, b)] = pts
        table[(b, a)] = pts
    return table


def _search_order(m: LinearMatroid):
    """Element order where each element sits on a line with two placed ones
    whenever possible.  Returns [(label, (anchor_a, anchor_b) | None), ...]."""
    labels = sorted(m.labels)
    _, through = _line_data(m)
    closure = _closure_table(m)
    remaining = set(labels)
    order: list[tuple[int, tuple[int, int] | None]] = []
    placed: list[int] = []

    def line_anchor(x: int):
        for a, b in itertools.combinations(placed, 2):
            if x in closure[(a, b)] and m.rank({a, b}) == 2:
                return (a, b)
        return None

    while remaining:
        best = None
        best_anchor = None
        for x in sorted(remaining):
            anchor = line_anchor(x)
            if anchor is not None:
                best, best_anchor = x, anchor
                break
        if best is None:
            # no line-constrained element: take the most line-covered one
            best = max(sorted(remaining), key=lambda x: (len(through[x]), sum(through[x])))
            best_anchor = None
        order.append((best, best_anchor))
        placed.append(best)
        remaining.discard(best)
    return order


class _RankPreservingSearch:
    """Backtracking search for rank-preserving injections m -> n.

    bijective=True additionally requires equal sizes and equal line profiles
    and yields the lexicographically least bijection by iterating m's labels
    and n's candidates in sorted order.
    """

    def __init__(self, m: LinearMatroid, n: LinearMatroid, bijective: bool):
        self.m = m
        self.n = n
        self.bijective = bijective
        self.simple = m.is_simple() and n.is_simple()

    def run(self) -> dict[int, int] | None:
        m, n = self.m, self.n
        if m.rank() > n.rank() or m.size > n.size:
            return None
        if self.bijective and (m.size != n.size or m.rank() != n.rank()):
            return None
        if m.size == 0:
            return {}
        if self.simple:
            _, self.through_m = _line_data(m)
            _, self.through_n = _line_data(n)
            self.closure_n = _closure_table(n)
            if self.bijective:
                if sorted(self.through_m.values()) != sorted(self.through_n.values()):
                    return None
                order = [(x, None) for x in sorted(m.labels)]
                self.anchors = self._anchors_for(sorted(m.labels))
            else:
                order = _search_order(m)
                self.anchors = {x: a for x, a in order}
        else:
            order = [(x, None) for x in self._generic_order()]
            self.anchors = {x: None for x, _ in order}
        self.order = [x for x, _ in order]
        self.prefix_rank = []
        seen: list[int] = []
        for x in self.order:
            seen.append(x)
            self.prefix_rank.append(m.rank(seen))
        self.rank2_m, self.rank3_m = _small_rank_tables(m)
        self.rank2_n, self.rank3_n = _small_rank_tables(n)
        assignment: dict[int, int] = {}
        used: set[int] = set()
        basis: list = []
        return self._dfs(0, assignment, used, basis)

    def _anchors_for(self, order: list[int]):
        closure = _closure_table(self.m)
        anchors: dict[int, tuple[int, int] | None] = {}
        placed: list[int] = []
        for x in order:
            found = None
            for a, b in itertools.combinations(placed, 2):
                if self.m.rank({a, b}) == 2 and x in closure[(a, b)]:
                    found = (a, b)
                    break
            anchors[x] = found
            placed.append(x)
        return anchors

    def _generic_order(self) -> list[int]:
        m = self.m
        loops = set(m.loops())
        class_of = {}
        for cls in m.parallel_classes():
            for x in cls:
                class_of[x] = len(cls)
        return sorted(m.labels, key=lambda x: (x not in loops, -class_of.get(x, 0), x))

    def _candidates(self, x: int, assignment: dict[int, int], used: set[int]):
        n = self.n
        anchor = self.anchors.get(x)
        if anchor is not None:
            a, b = anchor
            pool: Iterable[int] = self.closure_n[(assignment[a], assignment[b])]
        else:
            pool = sorted(n.labels)
        for y in pool:
            if y in used:
                continue
            if self.simple:
                if self.bijective:
                    if self.through_m[x] != self.through_n[y]:
                        continue
                elif not _profile_dominates(self.through_n[y], self.through_m[x]):
                    continue
            else:
                x_loop = all(c == 0 for c in self.m.column_of(x))
                y_loop = all(c == 0 for c in self.n.column_of(y))
                if self.bijective:
                    if x_loop != y_loop:
                        continue
                elif x_loop and not y_loop:
                    continue
            yield y

    def _dfs(self, depth: int, assignment: dict[int, int], used: set[int], basis: list):
        if depth == len(self.order):
            # pruning along the way is heuristic; the leaf check is the proof
            found = dict(assignment)
            if self.bijective:
                return found if verify_bijection(self.m, self.n, found) else None
            return found if verify_embedding(self.m, self.n, found) else None
        x = self.order[depth]
        placed = self.order[:depth]
        r2m, r3m, r2n, r3n = self.rank2_m, self.rank3_m, self.rank2_n, self.rank3_n
        for y in self._candidates(x, assignment, used):
            ok = True
            # pairwise and triple rank agreement with everything placed
            for i, p_ in enumerate(placed):
                fp = assignment[p_]
                if r2m[_key2(p_, x)] != r2n[_key2(fp, y)]:
                    ok = False
                    break
                for q in placed[i + 1:]:
                    if r3m[_key3(p_, q, x)] != r3n[_key3(fp, assignment[q], y)]:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                continue
            new_basis = [(lead, row) for lead, row in basis]
            _insert_into_basis(self.n.column_of(y), new_basis, self.n.p)
            if len(new_basis) != self.prefix_rank[depth]:
                continue
            assignment[x] = y
            used.add(y)
            hit = self._dfs(depth + 1, assignment, used, new_basis)
            if hit is not None:
                return hit
            del assignment[x]
            used.discard(y)
        return None


def find_isomorphism(m: LinearMatroid, n: LinearMatroid) -> dict[int, int] | None:
    """Lexicographically least label bijection preserving all subset ranks."""
    return _RankPreservingSearch(m, n, bijective=True).run()


def is_isomorphic(m: LinearMatroid, n: LinearMatroid) -> bool:
    return find_isomorphism(m, n) is not None


def find_embedding(m: LinearMatroid, n: LinearMatroid) -> dict[int, int] | None:
    """Injection of m into n preserving all subset ranks (restriction test)."""
    return _RankPreservingSearch(m, n, bijective=False).run()


def is_restriction_of(m: LinearMatroid, n: LinearMatroid) -> bool:
    return find_embedding(m, n) is not None


# -- minor search -----------------------------------------------------------------------


def _minor_witness_from_embedding(
    m: LinearMatroid, contracted: tuple[int, ...], embedding: dict[int, int]
) -> MinorWitness:
    image = set(embedding.values())
    deleted = tuple(sorted(set(m.labels) - set(contracted) - image))
    mapping = tuple(sorted(embedding.items()))
    return MinorWitness(tuple(sorted(contracted)), deleted, mapping)


def has_minor(m: LinearMatroid, n: LinearMatroid, hint: Iterable[int] | None = None) -> MinorWitness | None:
    """Search for an n-minor of m; n must be simple (and is, for every target
    used here: all are 3-connected).

    With a hint, that set is contracted first and the search continues in the
    simplification, mirroring how the original computations were expedited.
    Candidate contract sets are enumerated in lexicographic order, so the
    returned witness is deterministic.
    """
    if not n.is_simple():
        raise ValueError("minor search targets must be simple")
    hint = tuple(sorted(set(hint))) if hint else ()
    for x in hint:
        m._col_index(x)
    start = m.contract(hint) if hint else m
    base = start.simplify()
    spare_rank = base.rank() - n.rank()
    if spare_rank < 0 or base.size < n.size:
        return None
    for extra in itertools.combinations(sorted(base.labels), spare_rank):
        if not base.is_independent(extra):
            continue
        stage = base.contract(extra).simplify() if extra else base
        if stage.size < n.size:
            continue
        embedding = find_embedding(n, stage)
        if embedding is not None:
            contracted = tuple(sorted(hint + extra))
            return _minor_witness_from_embedding(m, contracted, embedding)
    return None


def has_u24_minor(m: LinearMatroid) -> bool:
    """True iff some independent contraction to rank 2 leaves >= 4 points."""
    r = m.rank()
    if r < 2:
        return False
    if r == 2:
        return len(m.simplify().labels) >= 4
    for t in itertools.combinations(sorted(m.labels), r - 2):
        if not m.is_independent(t):
            continue
        if len(m.contract(t).simplify().labels) >= 4:
            return True
    return False
