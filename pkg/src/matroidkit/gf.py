"""Finite-field scalars and dense matrices over GF(q), q in {2, 3, 4, 5, 7}.

Matrices are immutable and small (at most 64 rows and 64 columns), so a
set of columns always fits in a machine-word bit mask.  GF(2) gets a fast
path: columns are packed into ints and rank is word-level Gaussian
elimination.  GF(4) is not a prime field; its tables are built from
w^2 = w + 1 with elements encoded 0, 1, 2 = w, 3 = w + 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

__all__ = [
    "SUPPORTED_ORDERS",
    "MAX_DIM",
    "GFError",
    "FieldSpec",
    "field",
    "GFMatrix",
    "rref",
    "rank_of_columns",
    "null_space",
    "projective_points",
    "point_to_vector",
    "vector_to_point",
    "gf2_rank",
    "subspace_masks",
    "parse_matrix",
    "format_matrix",
]

SUPPORTED_ORDERS = (2, 3, 4, 5, 7)
MAX_DIM = 64


class GFError(ValueError):
    """Bad field order, malformed matrix, or out-of-range argument."""


@dataclass(frozen=True)
class FieldSpec:
    """Arithmetic tables for GF(q).  Elements are the ints 0..q-1."""

    q: int
    char: int
    add: tuple
    mul: tuple
    neg: tuple
    inv: tuple

    def __repr__(self):
        return f"FieldSpec(q={self.q})"


def _gf4_tables():
    # encode a = a0 + a1*w by the int a0 + 2*a1; addition is xor
    add = tuple(tuple(a ^ b for b in range(4)) for a in range(4))
    mul = [[0] * 4 for _ in range(4)]
    for a in range(4):
        for b in range(4):
            a0, a1 = a & 1, a >> 1
            b0, b1 = b & 1, b >> 1
            c0 = (a0 * b0 + a1 * b1) & 1
            c1 = (a0 * b1 + a1 * b0 + a1 * b1) & 1
            mul[a][b] = c0 + 2 * c1
    return add, tuple(tuple(row) for row in mul)


@lru_cache(maxsize=None)
def field(q: int) -> FieldSpec:
    """Return the FieldSpec for GF(q)."""
    if q not in SUPPORTED_ORDERS:
        raise GFError(f"unsupported field order {q}; supported: {SUPPORTED_ORDERS}")
    if q == 4:
        add, mul = _gf4_tables()
        char = 2
    else:
        add = tuple(tuple((a + b) % q for b in range(q)) for a in range(q))
        mul = tuple(tuple((a * b) % q for b in range(q)) for a in range(q))
        char = q
    neg = tuple(next(b for b in range(q) if add[a][b] == 0) for a in range(q))
    inv = tuple(
        0 if a == 0 else next(b for b in range(q) if mul[a][b] == 1) for a in range(q)
    )
    return FieldSpec(q=q, char=char, add=add, mul=mul, neg=neg, inv=inv)


class GFMatrix:
    """Immutable r x n matrix over GF(q).

    `rows` is a tuple of row tuples.  For q = 2 the columns are also
    cached as ints with bit i = row i (`col_bits`).
    """

    __slots__ = ("field", "rows", "nrows", "ncols", "_col_bits")

    def __init__(self, fld: FieldSpec, rows):
        if isinstance(fld, int):
            fld = field(fld)
        rows = tuple(tuple(int(x) for x in row) for row in rows)
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        if nrows > MAX_DIM or ncols > MAX_DIM:
            raise GFError(f"matrix {nrows}x{ncols} exceeds the {MAX_DIM} cap")
        for row in rows:
            if len(row) != ncols:
                raise GFError("ragged rows")
            for x in row:
                if not 0 <= x < fld.q:
                    raise GFError(f"entry {x} not in GF({fld.q})")
        object.__setattr__(self, "field", fld)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "nrows", nrows)
        object.__setattr__(self, "ncols", ncols)
        object.__setattr__(self, "_col_bits", None)

    def __setattr__(self, name, value):
        raise AttributeError("GFMatrix is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, GFMatrix)
            and self.field.q == other.field.q
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.field.q, self.rows))

    def __repr__(self):
        return f"GFMatrix(q={self.field.q}, {self.nrows}x{self.ncols})"

    @property
    def col_bits(self):
        """GF(2) only: tuple of column masks, bit i = row i."""
        if self.field.q != 2:
            raise GFError("col_bits is a GF(2) fast path")
        cached = object.__getattribute__(self, "_col_bits")
        if cached is None:
            cached = tuple(
                sum(self.rows[i][j] << i for i in range(self.nrows))
                for j in range(self.ncols)
            )
            object.__setattr__(self, "_col_bits", cached)
        return cached

    def column(self, j):
        return tuple(self.rows[i][j] for i in range(self.nrows))

    def columns(self):
        return tuple(self.column(j) for j in range(self.ncols))

    def point_values(self):
        """GF(2) only: columns as ints read with row 0 as the high bit.

        Point value v corresponds to index v - 1 in projective_points(r, 2).
        """
        if self.field.q != 2:
            raise GFError("point values are a GF(2) notion here")
        r = self.nrows
        return tuple(
            sum(self.rows[i][j] << (r - 1 - i) for i in range(r))
            for j in range(self.ncols)
        )

    def transpose(self):
        return GFMatrix(self.field, tuple(zip(*self.rows)) if self.rows else ())

    def select_columns(self, cols):
        """New matrix keeping the columns listed in `cols` (in that order)."""
        return GFMatrix(
            self.field, tuple(tuple(row[j] for j in cols) for row in self.rows)
        )

    def stack_row(self, row):
        return GFMatrix(self.field, self.rows + (tuple(row),))

    def append_column(self, col):
        col = tuple(col)
        if len(col) != self.nrows:
            raise GFError("column length mismatch")
        return GFMatrix(
            self.field,
            tuple(self.rows[i] + (col[i],) for i in range(self.nrows)),
        )

    @staticmethod
    def identity(fld, r):
        if isinstance(fld, int):
            fld = field(fld)
        return GFMatrix(
            fld, tuple(tuple(1 if i == j else 0 for j in range(r)) for i in range(r))
        )

    @staticmethod
    def from_columns(fld, cols, nrows=None):
        if isinstance(fld, int):
            fld = field(fld)
        cols = [tuple(c) for c in cols]
        if nrows is None:
            if not cols:
                raise GFError("from_columns needs nrows for an empty column list")
            nrows = len(cols[0])
        rows = tuple(tuple(c[i] for c in cols) for i in range(nrows))
        return GFMatrix(fld, rows)

    @staticmethod
    def from_point_values(values, r):
        """GF(2) matrix whose columns are the given point values (row 0 = high bit)."""
        cols = [point_to_vector(v, r) for v in values]
        return GFMatrix(field(2), tuple(tuple(c[i] for c in cols) for i in range(r)))


def gf2_rank(vectors) -> int:
    """Rank of a collection of GF(2) vectors packed as ints."""
    piv = [0] * (MAX_DIM + 1)
    rank = 0
    for v in vectors:
        while v:
            b = v.bit_length()
            w = piv[b]
            if w:
                v ^= w
            else:
                piv[b] = v
                rank += 1
                break
    return rank


def rref(m: GFMatrix):
    """Reduced row echelon form.  Returns (matrix, rank, pivot column tuple)."""
    fld = m.field
    add, mul, neg, inv = fld.add, fld.mul, fld.neg, fld.inv
    rows = [list(r) for r in m.rows]
    nrows, ncols = m.nrows, m.ncols
    pivots = []
    r = 0
    for j in range(ncols):
        sel = next((i for i in range(r, nrows) if rows[i][j] != 0), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        s = inv[rows[r][j]]
        if s != 1:
            rows[r] = [mul[s][x] for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][j] != 0:
                c = neg[rows[i][j]]
                ri, rr = rows[i], rows[r]
                rows[i] = [add[ri[t]][mul[c][rr[t]]] for t in range(ncols)]
        pivots.append(j)
        r += 1
        if r == nrows:
            break
    return GFMatrix(fld, rows), r, tuple(pivots)


def rank_of_columns(m: GFMatrix, mask: int) -> int:
    """Rank of the set of columns selected by `mask` (bit j = column j)."""
    if mask < 0 or mask >> m.ncols:
        raise GFError(f"column mask {mask:#x} out of range for {m.ncols} columns")
    if m.field.q == 2:
        cols = m.col_bits
        piv = [0] * (MAX_DIM + 1)
        rank = 0
        mm = mask
        while mm:
            low = mm & -mm
            mm ^= low
            v = cols[low.bit_length() - 1]
            while v:
                b = v.bit_length()
                w = piv[b]
                if w:
                    v ^= w
                else:
                    piv[b] = v
                    rank += 1
                    break
        return rank
    cols = [j for j in range(m.ncols) if (mask >> j) & 1]
    _, rank, _ = rref(m.select_columns(cols))
    return rank


def null_space(m: GFMatrix):
    """Deterministic basis of {x : m x = 0}, one vector per non-pivot column."""
    fld = m.field
    red, rank, pivots = rref(m)
    pivset = set(pivots)
    basis = []
    for j in range(m.ncols):
        if j in pivset:
            continue
        vec = [0] * m.ncols
        vec[j] = 1
        for i, pj in enumerate(pivots):
            vec[pj] = fld.neg[red.rows[i][j]]
        basis.append(tuple(vec))
    return tuple(basis)


def projective_points(r: int, q: int = 2):
    """Points of PG(r-1, q): normalized vectors (leading nonzero entry 1),
    in lexicographic order.  len = (q**r - 1) // (q - 1)."""
    if r < 1:
        raise GFError("projective dimension needs r >= 1")
    if r > MAX_DIM:
        raise GFError(f"r exceeds the {MAX_DIM} cap")
    fld = field(q)
    pts = []
    for vec in itertools.product(range(fld.q), repeat=r):
        lead = next((x for x in vec if x != 0), None)
        if lead == 1:
            pts.append(vec)
    assert len(pts) == (q**r - 1) // (q - 1)
    return tuple(pts)


def point_to_vector(v: int, r: int):
    """Inverse of vector_to_point: GF(2) point value -> coordinate tuple."""
    if not 0 < v < (1 << r):
        raise GFError(f"point value {v} out of range for r={r}")
    return tuple((v >> (r - 1 - i)) & 1 for i in range(r))


def vector_to_point(vec) -> int:
    """GF(2) coordinate tuple -> point value (coordinate 0 is the high bit)."""
    v = 0
    for x in vec:
        v = (v << 1) | (x & 1)
    return v


@lru_cache(maxsize=None)
def subspace_masks(r: int):
    """All linear subspaces of GF(2)^r as point-set masks, keyed by dimension.

    The mask has bit (v - 1) set iff point value v lies in the subspace.
    Used for flat-counting in search pruning; r is capped at 6 to keep the
    table small.
    """
    if not 1 <= r <= 6:
        raise GFError("subspace tables are built for 1 <= r <= 6")
    out = {d: [] for d in range(r + 1)}
    out[0].append(0)
    for d in range(1, r + 1):
        for pivots in itertools.combinations(range(r), d):
            free_positions = []
            for i, p in enumerate(pivots):
                cols = [c for c in range(p + 1, r) if c not in pivots]
                free_positions.append(cols)
            # enumerate echelon bases: row i has a 1 at pivots[i], free bits after
            choices = [
                itertools.product((0, 1), repeat=len(cols)) for cols in free_positions
            ]
            for assignment in itertools.product(*choices):
                basis = []
                for i, p in enumerate(pivots):
                    vec = 1 << (r - 1 - p)
                    for c, bit in zip(free_positions[i], assignment[i]):
                        if bit:
                            vec |= 1 << (r - 1 - c)
                    basis.append(vec)
                mask = 0
                for combo in range(1, 1 << d):
                    v = 0
                    for i in range(d):
                        if (combo >> i) & 1:
                            v ^= basis[i]
                    mask |= 1 << (v - 1)
                out[d].append(mask)
    return {d: tuple(sorted(ms)) for d, ms in out.items()}


def parse_matrix(text: str) -> GFMatrix:
    """Parse the matrix text format: first line `q r n`, then r rows of n digits."""
    lines = [ln for ln in (s.strip() for s in text.splitlines()) if ln]
    if not lines:
        raise GFError("empty matrix text")
    head = lines[0].split()
    if len(head) != 3:
        raise GFError(f"bad header {lines[0]!r}; expected 'q r n'")
    try:
        q, r, n = (int(x) for x in head)
    except ValueError:
        raise GFError(f"bad header {lines[0]!r}") from None
    if len(lines) != r + 1:
        raise GFError(f"expected {r} rows, got {len(lines) - 1}")
    rows = []
    for ln in lines[1:]:
        row = [int(x) for x in ln.split()]
        if len(row) != n:
            raise GFError(f"row {ln!r} has {len(row)} entries, expected {n}")
        rows.append(row)
    return GFMatrix(field(q), rows)


def format_matrix(m: GFMatrix) -> str:
    head = f"{m.field.q} {m.nrows} {m.ncols}"
    body = [" ".join(str(x) for x in row) for row in m.rows]
    return "\n".join([head] + body) + "\n"
