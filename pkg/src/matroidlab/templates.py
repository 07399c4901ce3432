"""Frame templates over GF(3) and the Y-template classifier.

The first half implements presented frame templates: the sign group, the
column classes C, Y0, Y1, Z, the row class X, the fixed block A1 and the
two vector collections, together with the respects and conforms
predicates for explicit matrices carrying explicit placements.

The second half classifies complete lifted Y-templates.  Such a template
is determined by one GF(3) matrix P; classify_Y_template sorts P into
SignedGraphic, Pi, Sigma, Omega or ContainsAG23e and returns a
certificate that verify_classification can replay from scratch.  The
moves the classifier is allowed to make on P (appending the row that
makes column sums vanish, removing a row when column sums vanish,
dropping graphic or duplicate columns, scaling columns) all preserve the
family of matroids the template generates, so a verdict for the
normalized matrix is a verdict for the input.
"""

from __future__ import annotations

import itertools
import re
from collections.abc import Mapping, Sequence
from dataclasses import dataclass

from .catalog import FORBIDDEN, T1, T2, T3, build_D, named, universal_matrix, universal_matroid
from .gf import GFMatrix, from_text, hstack, reduce, vstack, weight
from .matroid import LinearMatroid, MinorWitness, has_minor, verify_witness

# classifier verdicts
SIGNED_GRAPHIC = "SignedGraphic"
PI = "Pi"
SIGMA = "Sigma"
OMEGA = "Omega"
CONTAINS_AG23E = "ContainsAG23e"
UNCLASSIFIED = "Unclassified"

# column kinds
ZERO = "zero"
GRAPHIC = "graphic"
TYPE3 = "type3"
TYPE4 = "type4"
OTHER = "other"


# -- column taxonomy ---------------------------------------------------------------


def classify_column(col: Sequence[int], p: int = 3) -> tuple[str, int | None]:
    """Sort one GF(3) column into zero/graphic/type3/type4/other.

    The second component is a signed unit s such that s*col is in normal
    form: a unit or a difference of two units for graphic, all ones for
    type 3, two -1 entries against two 1 entries for type 4.  When both
    units work the smaller signed scalar wins, so ties go to -1.  Zero
    columns get 1 and other columns get None.
    """
    if p != 3:
        raise ValueError("the column taxonomy is specific to GF(3)")
    nz = [x % 3 for x in col if x % 3]
    ones = nz.count(1)
    twos = len(nz) - ones
    w = len(nz)
    if w == 0:
        return ZERO, 1
    if w == 1:
        return GRAPHIC, 1 if ones else -1
    if w == 2:
        if ones == 1:
            # difference of two units; both scalars keep the shape
            return GRAPHIC, -1
        return OTHER, None
    if w == 3 and (ones == 3 or twos == 3):
        return TYPE3, 1 if ones == 3 else -1
    if w == 4 and ones == 2 and twos == 2:
        return TYPE4, -1
    return OTHER, None


# -- moves on determining matrices ----------------------------------------------------


def add_zero_sum_row(P: GFMatrix) -> GFMatrix:
    """Append the unique row that makes every column sum vanish."""
    new = tuple((-sum(col)) % P.p for col in P.columns)
    return P.append_rows([new])


def remove_row(P: GFMatrix, i: int) -> GFMatrix:
    """Drop row i.  Legal only while every column sum vanishes, which is
    what keeps the move reversible by add_zero_sum_row."""
    if not 0 <= i < P.nrows:
        raise ValueError("row index out of range")
    if any(sum(col) % P.p for col in P.columns):
        raise ValueError("row removal needs vanishing column sums")
    return P.delete_rows([i])


def strip_graphic_columns(P: GFMatrix) -> GFMatrix:
    """Remove zero columns and columns that are a scaled unit or a scaled
    difference of two units."""
    kept = [j for j, col in enumerate(P.columns) if classify_column(col, P.p)[0] not in (ZERO, GRAPHIC)]
    return P.take_cols(kept)


def _scalar_multiple(a: Sequence[int], b: Sequence[int], p: int) -> bool:
    return any(all(x == (s * y) % p for x, y in zip(a, b)) for s in range(1, p))


def _dedupe_indices(P: GFMatrix) -> list[int]:
    kept: list[int] = []
    for j, col in enumerate(P.columns):
        if not any(_scalar_multiple(col, P.column(k), P.p) for k in kept):
            kept.append(j)
    return kept


def dedupe_scalar_columns(P: GFMatrix) -> GFMatrix:
    """Keep the first column of every parallel class of scalar multiples."""
    return P.take_cols(_dedupe_indices(P))


def _scale_columns(P: GFMatrix, scalars: Sequence[int]) -> GFMatrix:
    cols = [tuple((x * s) % P.p for x in col) for col, s in zip(P.columns, scalars)]
    return GFMatrix.from_columns(P.p, cols, nrows=P.nrows)


def apply_moves(P: GFMatrix, moves: Sequence[tuple]) -> GFMatrix:
    """Replay a move trail, re-checking the legality of every step.

    Recognized moves: ("append_zero_sum_row",), ("remove_row", i),
    ("strip_columns", kept), ("dedupe_columns", kept),
    ("scale_columns", scalars), ("drop_zero_rows", kept).  The kept
    tuples are strictly increasing index lists into the matrix at that
    point of the replay; dropped material must be droppable (graphic or
    zero columns, duplicate columns, zero rows).  Raises ValueError on
    any illegal step.
    """
    cur = P
    for mv in moves:
        op = mv[0]
        if op == "append_zero_sum_row":
            cur = add_zero_sum_row(cur)
        elif op == "remove_row":
            cur = remove_row(cur, mv[1])
        elif op == "strip_columns":
            kept = list(mv[1])
            _check_kept(kept, cur.ncols, "column")
            for j in range(cur.ncols):
                if j not in kept and classify_column(cur.column(j), cur.p)[0] not in (ZERO, GRAPHIC):
                    raise ValueError(f"column {j} is neither zero nor graphic")
            cur = cur.take_cols(kept)
        elif op == "dedupe_columns":
            kept = list(mv[1])
            _check_kept(kept, cur.ncols, "column")
            for j in range(cur.ncols):
                if j not in kept and not any(
                    _scalar_multiple(cur.column(j), cur.column(k), cur.p) for k in kept
                ):
                    raise ValueError(f"column {j} duplicates no kept column")
            cur = cur.take_cols(kept)
        elif op == "scale_columns":
            scalars = [s % cur.p for s in mv[1]]
            if len(scalars) != cur.ncols or any(s == 0 for s in scalars):
                raise ValueError("need one unit scalar per column")
            cur = _scale_columns(cur, scalars)
        elif op == "drop_zero_rows":
            kept = list(mv[1])
            _check_kept(kept, cur.nrows, "row")
            for i in range(cur.nrows):
                if i not in kept and any(cur.rows[i]):
                    raise ValueError(f"row {i} is not zero")
            cur = cur.take_rows(kept)
        else:
            raise ValueError(f"unknown move {op!r}")
    return cur


def _check_kept(kept: list[int], bound: int, what: str) -> None:
    if kept != sorted(set(kept)) or any(not 0 <= j < bound for j in kept):
        raise ValueError(f"kept {what} indices must be strictly increasing and in range")


# -- submatrix search --------------------------------------------------------------


@dataclass(frozen=True)
class SubmatrixHit:
    """Placement of a needle inside a haystack matrix.

    Needle row i sits at haystack row row_map[i]; needle column j,
    scaled by scalars[j], sits at haystack column col_map[j].  Scalars
    are signed units.
    """

    row_map: tuple[int, ...]
    col_map: tuple[int, ...]
    scalars: tuple[int, ...]


def check_submatrix_hit(haystack: GFMatrix, needle: GFMatrix, hit: SubmatrixHit) -> bool:
    """Entry by entry validation of a SubmatrixHit."""
    p = haystack.p
    if needle.p != p:
        return False
    if len(hit.row_map) != needle.nrows or len(hit.col_map) != needle.ncols:
        return False
    if len(hit.scalars) != needle.ncols:
        return False
    if len(set(hit.row_map)) != needle.nrows or len(set(hit.col_map)) != needle.ncols:
        return False
    if any(not 0 <= r < haystack.nrows for r in hit.row_map):
        return False
    if any(not 0 <= c < haystack.ncols for c in hit.col_map):
        return False
    if any(s % p == 0 for s in hit.scalars):
        return False
    for j in range(needle.ncols):
        s = hit.scalars[j] % p
        for i in range(needle.nrows):
            if haystack.entry(hit.row_map[i], hit.col_map[j]) != (s * needle.entry(i, j)) % p:
                return False
    return True


def find_submatrix(haystack: GFMatrix, needle: GFMatrix) -> SubmatrixHit | None:
    """First occurrence of needle inside haystack, up to row injection,
    column injection and column scaling.

    Row scaling is deliberately not among the allowed identifications.
    The search is deterministic: needle columns are placed left to
    right, candidate haystack columns, scalars and rows are tried in
    ascending order, and the first complete placement wins.
    """
    if haystack.p != needle.p:
        raise ValueError("field mismatch between haystack and needle")
    p = haystack.p
    if needle.nrows > haystack.nrows or needle.ncols > haystack.ncols:
        return None
    hay_cols = haystack.columns
    hay_w = [weight(col) for col in hay_cols]
    ndl_cols = needle.columns
    ndl_w = [weight(col) for col in ndl_cols]

    row_of: list[int | None] = [None] * needle.nrows
    used_row = [False] * haystack.nrows
    used_col = [False] * haystack.ncols
    col_map: list[int] = []
    col_scalar: list[int] = []
    # haystack columns that must vanish on rows not yet assigned
    pins: list[list[int]] = [[] for _ in range(needle.nrows)]

    def place_rows(pend: list[int], target: tuple[int, ...], h: int, k: int, after) -> bool:
        if k == len(pend):
            return after()
        i = pend[k]
        want = target[i]
        for r in range(haystack.nrows):
            if used_row[r] or hay_cols[h][r] != want:
                continue
            if any(hay_cols[h2][r] for h2 in pins[i]):
                continue
            row_of[i] = r
            used_row[r] = True
            if place_rows(pend, target, h, k + 1, after):
                return True
            row_of[i] = None
            used_row[r] = False
        return False

    def place_col(j: int) -> bool:
        if j == needle.ncols:
            return finish()
        col = ndl_cols[j]
        for h in range(haystack.ncols):
            if used_col[h] or hay_w[h] < ndl_w[j]:
                continue
            for s in range(1, p):
                target = tuple((s * x) % p for x in col)
                if any(row_of[i] is not None and hay_cols[h][row_of[i]] != target[i] for i in range(needle.nrows)):
                    continue
                pend = [i for i in range(needle.nrows) if row_of[i] is None and target[i]]
                fresh_pins = [i for i in range(needle.nrows) if row_of[i] is None and not target[i]]
                used_col[h] = True
                col_map.append(h)
                col_scalar.append(s)
                for i in fresh_pins:
                    pins[i].append(h)

                def after() -> bool:
                    return place_col(j + 1)

                if place_rows(pend, target, h, 0, after):
                    return True
                for i in fresh_pins:
                    pins[i].pop()
                col_scalar.pop()
                col_map.pop()
                used_col[h] = False
        return False

    def finish() -> bool:
        leftover = [i for i in range(needle.nrows) if row_of[i] is None]

        def fill(k: int) -> bool:
            if k == len(leftover):
                return True
            i = leftover[k]
            for r in range(haystack.nrows):
                if used_row[r] or any(hay_cols[h][r] for h in pins[i]):
                    continue
                row_of[i] = r
                used_row[r] = True
                if fill(k + 1):
                    return True
                row_of[i] = None
                used_row[r] = False
            return False

        return fill(0)

    if not place_col(0):
        return None
    signed = tuple(s if s <= p // 2 else s - p for s in col_scalar)
    return SubmatrixHit(tuple(row_of), tuple(col_map), signed)


# -- forbidden matrices ------------------------------------------------------------


@dataclass(frozen=True)
class ScanHit:
    id: str
    hit: SubmatrixHit


def forbidden_scan(P: GFMatrix, ids: Sequence[str] | None = None) -> tuple[ScanHit, ...]:
    """Every catalog forbidden matrix occurring in P, in catalog order.

    A matrix that occurs several times is still reported once, with its
    first placement.
    """
    if P.p != 3:
        raise ValueError("the forbidden catalog lives over GF(3)")
    out = []
    for key in ids if ids is not None else FORBIDDEN.keys():
        hit = find_submatrix(P, reduce(FORBIDDEN[key][0], 3))
        if hit is not None:
            out.append(ScanHit(key, hit))
    return tuple(out)


# Cropped variants of catalog matrices that the classifier also scans
# for.  Each is reproduced from its base matrix by a replayable move
# trail, so a hit on the variant certifies the base just as well.
_DERIVED: dict[str, tuple[str, tuple[tuple, ...]]] = {
    "A'": ("A", (("append_zero_sum_row",), ("remove_row", 0))),
    "E'": ("E", (("remove_row", 2),)),
    "G'": ("G", (("remove_row", 3),)),
}


def derived_needle(name: str) -> GFMatrix:
    base, trail = _DERIVED[name]
    return apply_moves(reduce(FORBIDDEN[base][0], 3), trail)


_NEEDLES: tuple[tuple[str, str, tuple, GFMatrix], ...] | None = None


def _classifier_needles() -> tuple[tuple[str, str, tuple, GFMatrix], ...]:
    global _NEEDLES
    if _NEEDLES is None:
        rows: list[tuple[str, str, tuple, GFMatrix]] = []
        for key, (mat, _) in FORBIDDEN.items():
            rows.append((key, key, (), reduce(mat, 3)))
        for name, (base, trail) in _DERIVED.items():
            rows.append((name, base, trail, derived_needle(name)))
        _NEEDLES = tuple(rows)
    return _NEEDLES


_WITNESS_CACHE: dict[str, MinorWitness] = {}


def _table_witness(base: str) -> MinorWitness:
    """Minor witness tying a catalog matrix to the eight-point affine
    witness, computed once per letter."""
    w = _WITNESS_CACHE.get(base)
    if w is None:
        mat, hint = FORBIDDEN[base]
        w = has_minor(universal_matroid(mat, len(mat)), named("AG23E").matroid(), hint)
        if w is None:
            raise RuntimeError(f"catalog matrix {base} lost its minor")
        _WITNESS_CACHE[base] = w
    return w


# -- the classifier ----------------------------------------------------------------


@dataclass(frozen=True)
class Classification:
    """Outcome of classify_Y_template.

    moves carries the normalization trail from the input to normalized;
    certificate is a tagged tuple that verify_classification re-derives.
    """

    verdict: str
    moves: tuple
    normalized: GFMatrix
    certificate: tuple
    notes: tuple[str, ...] = ()


def _main_case(P: GFMatrix) -> tuple[int, int, tuple[int, ...]] | None:
    """Look for two rows where every column is nonzero with equal values.

    Returns the lexicographically first such pair plus the per-column
    scalars that put -1 entries there for the 4-nonzero columns, or
    None.  Assumes columns are in normal form.
    """
    for r1, r2 in itertools.combinations(range(P.nrows), 2):
        if all(col[r1] and col[r1] == col[r2] for col in P.columns):
            orient = tuple(-1 if col[r1] == 1 and weight(col) == 4 else 1 for col in P.columns)
            return r1, r2, orient
    return None


def classify_Y_template(P: GFMatrix) -> Classification:
    """Sort the complete lifted Y-template determined by P.

    The cascade: bring P to a zero-sum normal form, scan for forbidden
    matrices, then try the two shapes whose members are signed-graphic
    (a pair of full rows with matching signs; all-ones columns sharing a
    row), then match what is left against the payload matrices behind
    the Pi, Sigma and Omega families.  Every verdict except Unclassified
    carries a replayable certificate.
    """
    if P.p != 3:
        raise ValueError("Y-template classification works over GF(3)")
    moves: list[tuple] = []
    notes: list[str] = []
    cur = P

    if any(sum(col) % 3 for col in cur.columns):
        moves.append(("append_zero_sum_row",))
        cur = add_zero_sum_row(cur)
        notes.append("appended the zero-sum row")

    kept = tuple(j for j, col in enumerate(cur.columns) if classify_column(col)[0] not in (ZERO, GRAPHIC))
    if len(kept) != cur.ncols:
        moves.append(("strip_columns", kept))
        cur = cur.take_cols(kept)
        notes.append("stripped graphic or zero columns")
    kept = tuple(_dedupe_indices(cur))
    if len(kept) != cur.ncols:
        moves.append(("dedupe_columns", kept))
        cur = cur.take_cols(kept)
        notes.append("merged duplicate columns")

    graded = [classify_column(col) for col in cur.columns]
    scalars = tuple(1 if s is None else s for _, s in graded)
    if any(s != 1 for s in scalars):
        moves.append(("scale_columns", scalars))
        cur = _scale_columns(cur, [s % 3 for s in scalars])
    kinds = tuple(k for k, _ in graded)

    for name, base, trail, needle in _classifier_needles():
        sub = find_submatrix(cur, needle)
        if sub is not None:
            cert = ("forbidden_hit", name, base, trail, sub, _table_witness(base))
            return Classification(
                CONTAINS_AG23E, tuple(moves), cur, cert, (*notes, f"forbidden matrix {name} found")
            )

    if OTHER in kinds:
        # a zero-sum column outside the taxonomy always carries a
        # forbidden pattern, so this arm should be unreachable; kept so
        # a scanner defect degrades loudly instead of misclassifying
        return Classification(
            UNCLASSIFIED, tuple(moves), cur, ("none",),
            (*notes, "column outside the type taxonomy survived the scan"),
        )

    nz_rows = tuple(i for i in range(cur.nrows) if any(cur.rows[i]))
    if len(nz_rows) != cur.nrows:
        moves.append(("drop_zero_rows", nz_rows))
        cur = cur.take_rows(nz_rows)

    if cur.ncols == 0:
        cert = ("frame_form", universal_matrix(cur, cur.nrows))
        return Classification(
            SIGNED_GRAPHIC, tuple(moves), cur, cert, (*notes, "no columns survive normalization")
        )

    mc = _main_case(cur)
    if mc is not None:
        r1, r2, orient = mc
        if any(s != 1 for s in orient):
            moves.append(("scale_columns", orient))
            cur = _scale_columns(cur, [s % 3 for s in orient])
        moves.append(("remove_row", r1))
        cur = remove_row(cur, r1)
        border = r2 - 1  # r1 < r2, so the partner row moves up once
        pre = universal_matrix(cur, cur.nrows)
        post = signed_graphic_reduce(pre, border)
        cert = ("main_case", border, pre, post)
        return Classification(
            SIGNED_GRAPHIC, tuple(moves), cur, cert,
            (*notes, f"rows {r1} and {r2} cover every column with equal signs"),
        )

    if kinds and all(k == TYPE3 for k in kinds):
        common = set(range(cur.nrows))
        for col in cur.columns:
            common &= {i for i, x in enumerate(col) if x}
        if common:
            r = min(common)
            moves.append(("remove_row", r))
            cur = remove_row(cur, r)
            cert = ("frame_form", universal_matrix(cur, cur.nrows))
            return Classification(
                SIGNED_GRAPHIC, tuple(moves), cur, cert,
                (*notes, f"all-ones columns share row {r}"),
            )

    for t_index, rows, verdict in ((1, T1, PI), (2, T2, SIGMA), (3, T3, OMEGA)):
        target = add_zero_sum_row(reduce(rows, 3))
        sub = find_submatrix(target, cur)
        if sub is not None:
            cert = ("t_embedding", t_index, sub)
            return Classification(
                verdict, tuple(moves), cur, cert,
                (*notes, f"embeds in the completed T{t_index} payload"),
            )

    return Classification(
        UNCLASSIFIED, tuple(moves), cur, ("none",), (*notes, "no cascade rule matched")
    )


def signed_graphic_reduce(A: GFMatrix, border_row: int = 0) -> GFMatrix:
    """Subtract every other row from the border row.

    For a matrix [I | D | P] whose payload splits, under a full border
    row of units, into unit columns and two-ones columns, this leaves at
    most two nonzero entries in every column.  The operation is an
    invertible row transformation, so column dependences are untouched.
    Raises ValueError when some column stays heavier than two.
    """
    if not 0 <= border_row < A.nrows:
        raise ValueError("border row out of range")
    border = list(A.rows[border_row])
    for i, row in enumerate(A.rows):
        if i != border_row:
            border = [(b - x) % A.p for b, x in zip(border, row)]
    rows = [tuple(border) if i == border_row else A.rows[i] for i in range(A.nrows)]
    out = GFMatrix(A.p, rows, ncols=A.ncols)
    for j, col in enumerate(out.columns):
        if weight(col) > 2:
            raise ValueError(f"column {j} keeps {weight(col)} nonzero entries")
    return out


def is_signed_graphic_form(A: GFMatrix) -> bool:
    """At most two nonzero entries in every column."""
    return all(weight(col) <= 2 for col in A.columns)


def verify_classification(P: GFMatrix, cls: Classification) -> tuple[bool, str]:
    """Re-check a Classification against its input from scratch.

    Replays the move trail (every move re-validates its own legality),
    compares the outcome with cls.normalized, then re-derives whatever
    the certificate asserts.  Returns (ok, reason).
    """
    try:
        cur = apply_moves(P, cls.moves)
    except ValueError as exc:
        return False, f"move replay failed: {exc}"
    if cur != cls.normalized:
        return False, "replayed moves do not reproduce the normalized matrix"
    tag = cls.certificate[0]

    if tag == "frame_form":
        if cls.verdict != SIGNED_GRAPHIC:
            return False, "frame_form certificate with a non signed-graphic verdict"
        _, uni = cls.certificate
        if uni != universal_matrix(cur, cur.nrows):
            return False, "stored universal matrix does not match the normalized matrix"
        if not is_signed_graphic_form(uni):
            return False, "universal matrix is not in frame shape"
        return True, "ok"

    if tag == "main_case":
        if cls.verdict != SIGNED_GRAPHIC:
            return False, "main_case certificate with a non signed-graphic verdict"
        _, border, pre, post = cls.certificate
        if pre != universal_matrix(cur, cur.nrows):
            return False, "stored universal matrix does not match the normalized matrix"
        try:
            redone = signed_graphic_reduce(pre, border)
        except ValueError as exc:
            return False, f"border reduction failed: {exc}"
        if redone != post:
            return False, "border reduction does not reproduce the stored matrix"
        if not is_signed_graphic_form(post):
            return False, "reduced matrix is not in frame shape"
        return True, "ok"

    if tag == "t_embedding":
        families = {1: PI, 2: SIGMA, 3: OMEGA}
        _, t_index, sub = cls.certificate
        if families.get(t_index) != cls.verdict:
            return False, "embedding certificate names the wrong family"
        payload = {1: T1, 2: T2, 3: T3}[t_index]
        target = add_zero_sum_row(reduce(payload, 3))
        if not check_submatrix_hit(target, cur, sub):
            return False, "embedding does not check out entry by entry"
        return True, "ok"

    if tag == "forbidden_hit":
        if cls.verdict != CONTAINS_AG23E:
            return False, "forbidden_hit certificate with the wrong verdict"
        _, name, base, trail, sub, witness = cls.certificate
        if base not in FORBIDDEN:
            return False, f"unknown catalog matrix {base!r}"
        base_rows, _ = FORBIDDEN[base]
        try:
            needle = apply_moves(reduce(base_rows, 3), trail)
        except ValueError as exc:
            return False, f"needle derivation failed: {exc}"
        if not check_submatrix_hit(cur, needle, sub):
            return False, "forbidden hit does not check out entry by entry"
        if witness is None:
            return False, "missing minor witness"
        if not verify_witness(universal_matroid(base_rows, len(base_rows)), named("AG23E").matroid(), witness):
            return False, "minor witness fails"
        return True, "ok"

    if tag == "none":
        if cls.verdict != UNCLASSIFIED:
            return False, "certificate missing for a classified verdict"
        return True, "ok"

    return False, f"unknown certificate tag {tag!r}"


# -- frame templates ---------------------------------------------------------------


def _in_row_space(basis: GFMatrix, v: Sequence[int]) -> bool:
    vec = tuple(x % 3 for x in v)
    if len(vec) != basis.ncols:
        raise ValueError("vector length does not match the collection")
    if not any(vec):
        return True
    if basis.nrows == 0:
        return False
    return vstack(basis, GFMatrix(3, [vec], ncols=basis.ncols)).rank() == basis.nrows


@dataclass(frozen=True)
class FrameTemplate:
    """A frame template over GF(3).

    gamma is the sign group as residues, frozenset({1}) or
    frozenset({1, 2}).  c, x, y0, y1 are disjoint label tuples.  a1 has
    one row per X label and one column per C, Y0, Y1 label in that
    order.  delta_basis rows span the row collection (coordinates
    C, Y0, Y1) and lambda_basis rows span the column collection
    (coordinates X); either basis may have zero rows, meaning the
    trivial collection.
    """

    gamma: frozenset
    c: tuple[int, ...]
    x: tuple[int, ...]
    y0: tuple[int, ...]
    y1: tuple[int, ...]
    a1: GFMatrix
    delta_basis: GFMatrix
    lambda_basis: GFMatrix

    def __post_init__(self) -> None:
        if self.gamma not in (frozenset({1}), frozenset({1, 2})):
            raise ValueError("gamma must be {1} or {1,-1} as residues mod 3")
        labels = (*self.c, *self.x, *self.y0, *self.y1)
        if len(set(labels)) != len(labels):
            raise ValueError("C, X, Y0, Y1 must be disjoint")
        ncols = len(self.c) + len(self.y0) + len(self.y1)
        if self.a1.p != 3 or self.delta_basis.p != 3 or self.lambda_basis.p != 3:
            raise ValueError("template matrices live over GF(3)")
        if self.a1.nrows != len(self.x) or self.a1.ncols != ncols:
            raise ValueError("A1 must be |X| by |C|+|Y0|+|Y1|")
        if self.delta_basis.ncols != ncols:
            raise ValueError("delta basis width must be |C|+|Y0|+|Y1|")
        if self.lambda_basis.ncols != len(self.x):
            raise ValueError("lambda basis width must be |X|")
        if self.delta_basis.rank() != self.delta_basis.nrows:
            raise ValueError("delta basis rows are dependent")
        if self.lambda_basis.rank() != self.lambda_basis.nrows:
            raise ValueError("lambda basis rows are dependent")

    def in_delta(self, v: Sequence[int]) -> bool:
        return _in_row_space(self.delta_basis, v)

    def in_lambda(self, v: Sequence[int]) -> bool:
        return _in_row_space(self.lambda_basis, v)


_SIGNS = frozenset({1, 2})


def named_template(id_: str) -> FrameTemplate:
    """The six minimal templates: PHI2, PHI_C, PHI_X, PHI_Y0, PHI_CX,
    PHI_CX2."""
    one = reduce([[1]], 3)
    if id_ == "PHI2":
        e0 = GFMatrix.zeros(3, 0, 0)
        return FrameTemplate(_SIGNS, (), (), (), (), e0, e0, e0)
    if id_ == "PHI_C":
        return FrameTemplate(_SIGNS, (0,), (), (), (), GFMatrix.zeros(3, 0, 1), one, GFMatrix.zeros(3, 0, 0))
    if id_ == "PHI_X":
        return FrameTemplate(_SIGNS, (), (0,), (), (), GFMatrix.zeros(3, 1, 0), GFMatrix.zeros(3, 0, 0), one)
    if id_ == "PHI_Y0":
        return FrameTemplate(_SIGNS, (), (), (0,), (), GFMatrix.zeros(3, 0, 1), one, GFMatrix.zeros(3, 0, 0))
    if id_ == "PHI_CX":
        return FrameTemplate(_SIGNS, (0,), (1,), (), (), one, one, one)
    if id_ == "PHI_CX2":
        return FrameTemplate(_SIGNS, (0,), (1,), (), (), reduce([[-1]], 3), one, one)
    raise KeyError(f"unknown template id {id_!r}")


def template_ids() -> tuple[str, ...]:
    return ("PHI2", "PHI_C", "PHI_X", "PHI_Y0", "PHI_CX", "PHI_CX2")


# -- respects and conforms ----------------------------------------------------------


@dataclass(frozen=True)
class Placement:
    """Row and column roles for testing a matrix against a template.

    x_rows lists the rows playing X, in template order; the column
    tuples likewise.  Columns in none of the tuples are the frame
    columns.
    """

    x_rows: tuple[int, ...] = ()
    c_cols: tuple[int, ...] = ()
    y0_cols: tuple[int, ...] = ()
    y1_cols: tuple[int, ...] = ()
    z_cols: tuple[int, ...] = ()


@dataclass(frozen=True)
class RespectsReport:
    ok: bool
    reason: str


def _is_frame_column(entries: Sequence[int], gamma: frozenset) -> bool:
    nz = [x for x in entries if x]
    if len(nz) == 0:
        return True
    if len(nz) == 1:
        return nz[0] == 1
    if len(nz) == 2:
        a, b = nz
        return (a == 1 and (-b) % 3 in gamma) or (b == 1 and (-a) % 3 in gamma)
    return False


def respects(A: GFMatrix, pl: Placement, t: FrameTemplate) -> RespectsReport:
    """Check the structural requirements for A to respect t under pl.

    In order: the A1 block equals t.a1; Z columns vanish on X and are
    unit or zero below; the frame columns form a gamma-frame matrix
    below X; the frame columns restricted to X lie in the lambda
    collection; the non-X rows of the C, Y0, Y1 block lie in the delta
    collection.  The first failure is reported.  Malformed placements
    raise ValueError.
    """
    if A.p != 3:
        raise ValueError("templates operate over GF(3)")
    if (
        len(pl.x_rows) != len(t.x)
        or len(pl.c_cols) != len(t.c)
        or len(pl.y0_cols) != len(t.y0)
        or len(pl.y1_cols) != len(t.y1)
    ):
        raise ValueError("placement sizes disagree with the template")
    if len(set(pl.x_rows)) != len(pl.x_rows) or any(not 0 <= i < A.nrows for i in pl.x_rows):
        raise ValueError("X rows out of range or repeated")
    special = (*pl.c_cols, *pl.y0_cols, *pl.y1_cols)
    taken = (*special, *pl.z_cols)
    if len(set(taken)) != len(taken) or any(not 0 <= j < A.ncols for j in taken):
        raise ValueError("placement columns out of range or overlapping")

    x_set = set(pl.x_rows)
    rest_rows = tuple(i for i in range(A.nrows) if i not in x_set)
    frame_cols = tuple(j for j in range(A.ncols) if j not in set(taken))

    for jj, j in enumerate(special):
        for ii, i in enumerate(pl.x_rows):
            if A.entry(i, j) != t.a1.entry(ii, jj):
                return RespectsReport(False, f"A1 block differs at X position {ii}, column {j}")
    for j in pl.z_cols:
        col = A.column(j)
        if any(col[i] for i in pl.x_rows):
            return RespectsReport(False, f"Z column {j} is nonzero on an X row")
        below = [col[i] for i in rest_rows]
        w = weight(below)
        if w > 1 or (w == 1 and 1 not in below):
            return RespectsReport(False, f"Z column {j} is not unit or zero below X")
    for j in frame_cols:
        col = A.column(j)
        if not _is_frame_column([col[i] for i in rest_rows], t.gamma):
            return RespectsReport(False, f"column {j} breaks the frame shape below X")
    for j in frame_cols:
        if not t.in_lambda([A.entry(i, j) for i in pl.x_rows]):
            return RespectsReport(False, f"column {j} leaves the lambda collection on X")
    for i in rest_rows:
        if not t.in_delta([A.entry(i, j) for j in special]):
            return RespectsReport(False, f"row {i} leaves the delta collection")
    return RespectsReport(True, "ok")


def conforms_step(A: GFMatrix, pl: Placement, z_assignment: Mapping[int, int]) -> GFMatrix:
    """Add the assigned Y1 column into each Z column.

    z_assignment maps Z column indices to Y1 column indices and must
    cover every Z column.  This is the one rewriting move a respecting
    matrix undergoes before the conforming contraction.
    """
    if set(z_assignment.keys()) != set(pl.z_cols):
        raise ValueError("z_assignment must cover exactly the Z columns")
    if not set(z_assignment.values()) <= set(pl.y1_cols):
        raise ValueError("z_assignment must land in the Y1 columns")
    cols = [list(col) for col in A.columns]
    for zc, yc in z_assignment.items():
        cols[zc] = [(a + b) % A.p for a, b in zip(cols[zc], cols[yc])]
    return GFMatrix.from_columns(A.p, cols, nrows=A.nrows)


def conforming_matroid(A: GFMatrix, pl: Placement, labels: Sequence[int] | None = None) -> LinearMatroid:
    """Matroid of A with the C columns contracted and Y1 deleted."""
    m = LinearMatroid(A, labels)
    contracted = [m.labels[j] for j in pl.c_cols]
    deleted = [m.labels[j] for j in pl.y1_cols]
    if contracted:
        m = m.contract(contracted)
    if deleted:
        m = m.delete(deleted)
    return m


# -- reduced and lifted shape --------------------------------------------------------


@dataclass(frozen=True)
class ReductionInfo:
    """Partition of the X positions into X0 and X1."""

    x0: tuple[int, ...]
    x1: tuple[int, ...]


def check_reduction(t: FrameTemplate, info: ReductionInfo) -> tuple[bool, str]:
    """Test the three reduced-shape requirements for the given partition.

    One: the delta collection splits off the full space on the C
    coordinates.  Two: the lambda collection projects onto the whole X0
    space, vanishes on X1, and the X1 rows of A1 vanish against C.
    Three: the X1 rows of A1 are independent and meet the delta
    collection only in zero.
    """
    if sorted((*info.x0, *info.x1)) != list(range(len(t.x))):
        raise ValueError("X0 and X1 must partition the X positions")
    k = len(t.c)
    width = t.delta_basis.ncols
    for j in range(k):
        unit = [0] * width
        unit[j] = 1
        if not t.in_delta(unit):
            return False, f"unit vector of C coordinate {j} misses the delta collection"
    lam = t.lambda_basis
    if info.x0 and lam.take_cols(list(info.x0)).rank() != len(info.x0):
        return False, "lambda does not project onto the whole X0 space"
    if any(lam.entry(i, j) for i in range(lam.nrows) for j in info.x1):
        return False, "lambda has support on X1"
    if any(t.a1.entry(i, j) for i in info.x1 for j in range(k)):
        return False, "A1 is nonzero on X1 rows against C columns"
    x1rows = t.a1.take_rows(list(info.x1))
    if x1rows.rank() != len(info.x1):
        return False, "X1 rows of A1 are dependent"
    if info.x1 and vstack(t.delta_basis, x1rows).rank() != t.delta_basis.nrows + len(info.x1):
        return False, "X1 rows of A1 meet the delta collection"
    return True, "ok"


def is_lifted(t: FrameTemplate, info: ReductionInfo) -> tuple[bool, str]:
    """Reduced, plus: on the Y1 block of A1 the X0 rows vanish and the
    X1 rows start with the identity."""
    ok, why = check_reduction(t, info)
    if not ok:
        return False, why
    if len(t.y1) < len(info.x1):
        return False, "Y1 has fewer columns than X1"
    base = len(t.c) + len(t.y0)
    for i in info.x0:
        if any(t.a1.entry(i, base + jj) for jj in range(len(t.y1))):
            return False, "A1 is nonzero on X0 rows against Y1 columns"
    for ii, i in enumerate(info.x1):
        for jj in range(len(info.x1)):
            if t.a1.entry(i, base + jj) != (1 if jj == ii else 0):
                return False, "A1 on X1 rows does not open with the identity"
    return True, "ok"


# -- Y-templates -------------------------------------------------------------------


@dataclass(frozen=True)
class YTemplate:
    """Y-template: C empty, trivial collections, A1 = [P0 | I | P1] in
    C, Y0, Y1 column order.  Determined by the pair (P0, P1)."""

    p0: GFMatrix
    p1: GFMatrix

    def __post_init__(self) -> None:
        if self.p0.p != 3 or self.p1.p != 3:
            raise ValueError("Y-templates live over GF(3)")
        if self.p0.nrows != self.p1.nrows:
            raise ValueError("P0 and P1 need equal row counts")

    def frame_template(self) -> FrameTemplate:
        k = self.p0.nrows
        x = tuple(range(k))
        y0 = tuple(range(k, k + self.p0.ncols))
        y1 = tuple(range(k + self.p0.ncols, 2 * k + self.p0.ncols + self.p1.ncols))
        a1 = hstack(self.p0, GFMatrix.identity(3, k), self.p1)
        ncols = a1.ncols
        return FrameTemplate(
            frozenset({1}), (), x, y0, y1, a1,
            GFMatrix.zeros(3, 0, ncols), GFMatrix.zeros(3, 0, k),
        )


def complete_lifted(P: GFMatrix) -> YTemplate:
    """The complete lifted Y-template determined by P: P0 = [P | D],
    P1 empty."""
    if P.p != 3:
        raise ValueError("Y-templates live over GF(3)")
    k = P.nrows
    return YTemplate(hstack(P, build_D(k, 3)), GFMatrix.zeros(3, k, 0))


# -- template files ----------------------------------------------------------------


_SETS_RE = re.compile(r"^sets C=(\d+) X=(\d+) Y0=(\d+) Y1=(\d+)$")


def write_template(t: FrameTemplate) -> str:
    """Serialize a template; labels are not stored, only set sizes."""
    g = "{1}" if t.gamma == frozenset({1}) else "{1,-1}"
    parts = [
        "template",
        f"gamma {g}",
        f"sets C={len(t.c)} X={len(t.x)} Y0={len(t.y0)} Y1={len(t.y1)}",
    ]
    for name, mat in (("A1", t.a1), ("delta", t.delta_basis), ("lambda", t.lambda_basis)):
        parts.append(name)
        parts.append(f"field {mat.p}")
        parts.append(f"rows {mat.nrows}")
        parts.append(f"cols {mat.ncols}")
        if mat.ncols:
            # zero-column rows would serialize as blank lines, so skip them
            parts.extend(" ".join(str(x) for x in row) for row in mat.rows)
    return "\n".join(parts) + "\n"


def read_template(text: str) -> FrameTemplate:
    """Parse write_template output; labels are synthesized as consecutive
    integers in C, X, Y0, Y1 order."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or lines[0] != "template":
        raise ValueError("not a template file")
    if len(lines) < 3 or not lines[1].startswith("gamma "):
        raise ValueError("missing gamma line")
    g = lines[1][6:].strip()
    if g == "{1}":
        gamma = frozenset({1})
    elif g in ("{1,-1}", "{-1,1}"):
        gamma = frozenset({1, 2})
    else:
        raise ValueError(f"unknown gamma {g!r}")
    m = _SETS_RE.match(lines[2])
    if not m:
        raise ValueError("missing sets line")
    nc, nx, ny0, ny1 = (int(x) for x in m.groups())
    idx = 3
    mats: dict[str, GFMatrix] = {}
    for want in ("A1", "delta", "lambda"):
        if idx >= len(lines) or lines[idx] != want:
            raise ValueError(f"expected the {want} block")
        idx += 1
        if idx + 2 >= len(lines):
            raise ValueError(f"truncated {want} block")
        r = int(lines[idx + 1].split()[1])
        c = int(lines[idx + 2].split()[1])
        if c == 0:
            mats[want] = GFMatrix.zeros(3, r, 0)
            idx += 3
        else:
            mats[want] = from_text("\n".join(lines[idx : idx + 3 + r]))
            idx += 3 + r
    if idx != len(lines):
        raise ValueError("trailing content after the lambda block")
    c = tuple(range(nc))
    x = tuple(range(nc, nc + nx))
    y0 = tuple(range(nc + nx, nc + nx + ny0))
    y1 = tuple(range(nc + nx + ny0, nc + nx + ny0 + ny1))
    return FrameTemplate(gamma, c, x, y0, y1, mats["A1"], mats["delta"], mats["lambda"])
