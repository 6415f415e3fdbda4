"""Matroids as rank oracles over labeled ground sets (at most 64 elements).

Four backends: Linear (matrix columns), RankTable (dense table over all
subsets, n <= 25), Graphic (graph edges, spanning-forest rank), Graft
(graph plus a vertex set gamma; rank in the incidence matroid with
gamma's incidence vector adjoined as one extra element).  Minors and
duals stay in-backend where that is natural and materialize as
RankTable otherwise.
"""

from __future__ import annotations

import itertools

from .gf import GFMatrix, field, format_matrix, gf2_rank, null_space, rank_of_columns, rref

__all__ = [
    "MatroidError",
    "TABLE_CAP",
    "CIRCUIT_SCAN_CAP",
    "LinearRep",
    "RankTableRep",
    "GraphicRep",
    "GraftRep",
    "Matroid",
    "from_matrix",
    "from_graph",
    "graft_matroid",
    "incidence_matrix",
    "full_rank_table",
    "as_rank_table",
    "direct_sum",
    "parallel_connection",
    "binary_three_sum",
    "is_binary_affine",
    "parse_graph_text",
    "format_graph_text",
]

TABLE_CAP = 25
CIRCUIT_SCAN_CAP = 20


class MatroidError(ValueError):
    """Violated precondition or unsupported backend operation."""


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def default_labels(n):
    return tuple(str(i + 1) for i in range(n))


class LinearRep:
    """Columns of a GF(q) matrix; element i = column i."""

    __slots__ = ("matrix",)

    def __init__(self, matrix: GFMatrix):
        self.matrix = matrix

    @property
    def n(self):
        return self.matrix.ncols

    def rank(self, mask):
        return rank_of_columns(self.matrix, mask)


class RankTableRep:
    """Dense rank table; table[mask] = rank of the subset mask."""

    __slots__ = ("nelts", "table")

    def __init__(self, nelts, table):
        if nelts > TABLE_CAP:
            raise MatroidError(f"rank table capped at n <= {TABLE_CAP}")
        if len(table) != 1 << nelts:
            raise MatroidError("table length must be 2^n")
        self.nelts = nelts
        self.table = bytes(table)

    @property
    def n(self):
        return self.nelts

    def rank(self, mask):
        return self.table[mask]


class GraphicRep:
    """Edge set of a graph; rank of X = |V touched by X| - #components of (V, X),
    computed as the size of a spanning forest of X."""

    __slots__ = ("nverts", "edges")

    def __init__(self, nverts, edges):
        edges = tuple((int(u), int(v)) for u, v in edges)
        for u, v in edges:
            if not (0 <= u < nverts and 0 <= v < nverts):
                raise MatroidError("edge endpoint out of range")
        self.nverts = nverts
        self.edges = edges

    @property
    def n(self):
        return len(self.edges)

    def _forest(self, mask, parent):
        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        r = 0
        for j in _bits(mask):
            u, v = self.edges[j]
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                r += 1
        return r, find

    def rank(self, mask):
        r, _ = self._forest(mask, list(range(self.nverts)))
        return r


class GraftRep:
    """Graph plus gamma <= V; ground set = edges + one extra element (last index)
    standing for gamma's incidence vector over GF(2)."""

    __slots__ = ("nverts", "edges", "gamma", "_graphic")

    def __init__(self, nverts, edges, gamma):
        self._graphic = GraphicRep(nverts, edges)
        gamma = frozenset(int(v) for v in gamma)
        for v in gamma:
            if not 0 <= v < nverts:
                raise MatroidError("gamma vertex out of range")
        self.nverts = nverts
        self.edges = self._graphic.edges
        self.gamma = gamma

    @property
    def n(self):
        return len(self.edges) + 1

    def rank(self, mask):
        gbit = 1 << len(self.edges)
        parent = list(range(self.nverts))
        r, find = self._graphic._forest(mask & ~gbit, parent)
        if mask & gbit:
            # gamma's vector lies in the span of the chosen edge columns iff
            # every component of (V, X) holds an even number of gamma vertices
            odd = set()
            for v in self.gamma:
                root = find(v)
                odd.symmetric_difference_update({root})
            if odd:
                r += 1
        return r


class Matroid:
    """Labeled ground set + rank backend.  Subsets are int masks over label
    positions; helpers translate label collections to masks and back."""

    __slots__ = ("labels", "n", "rep", "name", "_pos", "_memo", "_full")

    def __init__(self, rep, labels=None, name=""):
        n = rep.n
        if n > 64:
            raise MatroidError("ground set capped at 64 elements")
        if labels is None:
            labels = default_labels(n)
        labels = tuple(str(x) for x in labels)
        if len(labels) != n or len(set(labels)) != n:
            raise MatroidError("labels must be distinct and match the backend size")
        self.labels = labels
        self.n = n
        self.rep = rep
        self.name = name
        self._pos = {lab: i for i, lab in enumerate(labels)}
        self._memo = {}
        self._full = None

    def __repr__(self):
        tag = self.name or type(self.rep).__name__
        return f"Matroid({tag}, n={self.n}, r={self.rank()})"

    # ---- masks and labels

    def mask_of(self, elements):
        mask = 0
        for lab in elements:
            try:
                mask |= 1 << self._pos[str(lab)]
            except KeyError:
                raise MatroidError(f"unknown element {lab!r}") from None
        return mask

    def labels_of(self, mask):
        return tuple(self.labels[i] for i in _bits(mask))

    @property
    def full_mask(self):
        return (1 << self.n) - 1

    def _as_mask(self, X):
        if X is None:
            return self.full_mask
        if isinstance(X, int):
            if X < 0 or X >> self.n:
                raise MatroidError("mask out of range")
            return X
        return self.mask_of(X)

    # ---- rank oracle

    def r(self, mask):
        if isinstance(self.rep, RankTableRep):
            return self.rep.table[mask]
        memo = self._memo
        val = memo.get(mask)
        if val is None:
            val = self.rep.rank(mask)
            memo[mask] = val
        return val

    def rank(self, X=None):
        if X is None:
            if self._full is None:
                self._full = self.r(self.full_mask)
            return self._full
        return self.r(self._as_mask(X))

    def nullity(self, X=None):
        mask = self._as_mask(X)
        return mask.bit_count() - self.r(mask)

    def closure(self, X):
        mask = self._as_mask(X)
        rm = self.r(mask)
        cl = mask
        for i in range(self.n):
            bit = 1 << i
            if not mask & bit and self.r(mask | bit) == rm:
                cl |= bit
        return cl

    def flats_of_rank(self, k):
        """Every flat of rank exactly k, as closures of independent k-sets."""
        if not 0 <= k <= self.rank():
            raise MatroidError(f"flat rank {k} out of range")
        if k == 0:
            return [self.closure(0)]
        seen = set()
        out = []
        for combo in itertools.combinations(range(self.n), k):
            mask = 0
            for i in combo:
                mask |= 1 << i
            if self.r(mask) != k:
                continue
            fl = self.closure(mask)
            if fl not in seen:
                seen.add(fl)
                out.append(fl)
        return out

    # ---- circuits

    def circuits(self, max_size=None):
        """All minimal dependent sets up to max_size, sorted by (size, mask)."""
        rep = self.rep
        if isinstance(rep, LinearRep) and rep.matrix.field.q == 2:
            d = self.n - self.rank()
            if d <= 16:
                return self._circuits_from_cycle_space(max_size)
        return self._circuits_by_scan(max_size)

    def _circuits_from_cycle_space(self, max_size):
        # supports of nonzero cycle-space vectors, kept if inclusion-minimal
        basis = [
            sum(b << i for i, b in enumerate(vec))
            for vec in null_space(self.rep.matrix)
        ]
        cycles = {0}
        vecs = [0]
        for b in basis:
            vecs += [v ^ b for v in vecs]
        cycles = [v for v in vecs if v]
        cycles.sort(key=lambda v: (v.bit_count(), v))
        kept = []
        for v in cycles:
            if max_size is not None and v.bit_count() > max_size:
                break
            if not any(k & v == k for k in kept):
                kept.append(v)
        return tuple(sorted(kept, key=lambda v: (v.bit_count(), v)))

    def _circuits_by_scan(self, max_size):
        top = self.rank() + 1
        if max_size is not None:
            top = min(top, max_size)
        if max_size is None and self.n > CIRCUIT_SCAN_CAP:
            raise MatroidError(
                f"full circuit scan capped at n <= {CIRCUIT_SCAN_CAP}; pass max_size"
            )
        found = []
        for size in range(1, top + 1):
            for combo in itertools.combinations(range(self.n), size):
                mask = 0
                for i in combo:
                    mask |= 1 << i
                if any(c & mask == c for c in found):
                    continue
                # no smaller circuit inside, so dependent means minimal dependent
                if self.r(mask) < size:
                    found.append(mask)
        return tuple(sorted(found, key=lambda v: (v.bit_count(), v)))

    def cocircuits(self, max_size=None):
        return self.dual().circuits(max_size)

    # ---- loops, parallel and series structure

    def loops(self):
        mask = 0
        for i in range(self.n):
            if self.r(1 << i) == 0:
                mask |= 1 << i
        return mask

    def coloops(self):
        full = self.full_mask
        rm = self.rank()
        mask = 0
        for i in range(self.n):
            if self.r(full ^ (1 << i)) == rm - 1:
                mask |= 1 << i
        return mask

    def parallel_classes(self):
        """Masks of maximal parallel classes over the non-loop elements."""
        loops = self.loops()
        groups = {}
        for i in range(self.n):
            if loops >> i & 1:
                continue
            key = self.closure(1 << i) & ~loops
            groups.setdefault(key, 0)
            groups[key] |= 1 << i
        return sorted(groups.values())

    def series_classes(self):
        return self.dual().parallel_classes()

    def is_simple(self):
        return self.loops() == 0 and all(
            c.bit_count() == 1 for c in self.parallel_classes()
        )

    def is_cosimple(self):
        return self.dual().is_simple()

    def si(self):
        """Simplification: drop loops and all but the first of each parallel class."""
        keep = 0
        for cls in self.parallel_classes():
            keep |= cls & -cls
        return self.delete(self.full_mask ^ keep)

    def cosi(self):
        """Cosimplification: contract all but the first of every series class,
        plus the coloops (contracting a coloop equals deleting it)."""
        dual_keep = 0
        for cls in self.series_classes():
            dual_keep |= cls & -cls
        return self.contract(self.full_mask ^ dual_keep)

    def reduced(self):
        """Alternate si/cosi until simple and cosimple."""
        m = self
        while True:
            if not m.is_simple():
                m = m.si()
            elif not m.is_cosimple():
                m = m.cosi()
            else:
                return m

    # ---- duality

    def dual(self):
        rep = self.rep
        if isinstance(rep, LinearRep):
            return Matroid(LinearRep(_linear_dual(rep.matrix)), self.labels)
        n, full, rm = self.n, self.full_mask, self.rank()
        if n > TABLE_CAP:
            raise MatroidError("dual of a non-linear backend needs n <= table cap")
        table = bytearray(1 << n)
        for mask in range(1 << n):
            table[mask] = mask.bit_count() + self.r(full ^ mask) - rm
        return Matroid(RankTableRep(n, table), self.labels)

    # ---- minors

    def delete(self, D):
        return self.minor(delete=D)

    def contract(self, C):
        return self.minor(contract=C)

    def minor(self, contract=0, delete=0):
        con = self._as_mask(contract)
        del_ = self._as_mask(delete)
        if con & del_:
            raise MatroidError("contract and delete sets overlap")
        keep = [i for i in range(self.n) if not (con | del_) >> i & 1]
        labels = tuple(self.labels[i] for i in keep)
        rep = self.rep
        if isinstance(rep, LinearRep):
            return Matroid(
                LinearRep(_linear_minor(rep.matrix, sorted(_bits(con)), keep)), labels
            )
        if isinstance(rep, GraphicRep):
            nv, edges = _graph_minor(rep.nverts, rep.edges, con, keep)
            return Matroid(GraphicRep(nv, edges), labels)
        if isinstance(rep, GraftRep):
            gidx = len(rep.edges)
            if not (con | del_) >> gidx & 1:
                nv, edges, gamma = _graft_minor(rep, con, keep[:-1])
                return Matroid(GraftRep(nv, edges, gamma), labels)
            if del_ >> gidx & 1:
                nv, edges = _graph_minor(
                    rep.nverts, rep.edges, con & ~(1 << gidx), keep
                )
                return Matroid(GraphicRep(nv, edges), labels)
            # contracting the gamma element leaves the graph world
        rcon = self.r(con)
        table = bytearray(1 << len(keep))
        for mask in range(1 << len(keep)):
            big = con
            for pos, i in enumerate(keep):
                if mask >> pos & 1:
                    big |= 1 << i
            table[mask] = self.r(big) - rcon
        return Matroid(RankTableRep(len(keep), table), labels)

    def relabel(self, mapping):
        labels = tuple(str(mapping.get(lab, lab)) for lab in self.labels)
        return Matroid(self.rep, labels, name=self.name)

    def with_name(self, name):
        m = Matroid(self.rep, self.labels, name=name)
        m._memo = self._memo
        return m

    # ---- connectivity

    def lambda_of(self, X):
        mask = self._as_mask(X)
        return self.r(mask) + self.r(self.full_mask ^ mask) - self.rank()

    def _has_separation(self, max_lambda, min_side):
        n, full = self.n, self.full_mask
        if n > TABLE_CAP:
            raise MatroidError("connectivity brute force capped at n <= table cap")
        if n < 2 * min_side:
            return False
        for half in range(1 << (n - 1)):  # element 0 stays on the X side
            mask = (half << 1) | 1
            k = mask.bit_count()
            if k < min_side or n - k < min_side:
                continue
            if self.r(mask) + self.r(full ^ mask) - self.rank() <= max_lambda:
                return True
        return False

    def is_connected(self):
        if self.n <= 1:
            return True
        return not self._has_separation(0, 1)

    def is_3connected(self):
        return self.is_connected() and not self._has_separation(1, 2)

    def components(self):
        """Masks of the connected components (classes of 'lies on a common circuit';
        elements in no circuit are their own components)."""
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for c in self.circuits():
            ids = list(_bits(c))
            for other in ids[1:]:
                parent[find(other)] = find(ids[0])
        comps = {}
        for i in range(self.n):
            comps.setdefault(find(i), 0)
            comps[find(i)] |= 1 << i
        return sorted(comps.values())

    # ---- export

    def to_linear(self):
        """A Matroid with a Linear backend and the same rank function."""
        rep = self.rep
        if isinstance(rep, LinearRep):
            return self
        if isinstance(rep, GraphicRep):
            return Matroid(
                LinearRep(incidence_matrix(rep.nverts, rep.edges)), self.labels,
                name=self.name,
            )
        if isinstance(rep, GraftRep):
            return Matroid(
                LinearRep(incidence_matrix(rep.nverts, rep.edges, rep.gamma)),
                self.labels, name=self.name,
            )
        raise MatroidError("rank-table matroids have no canned linear form")

    def export_text(self):
        rep = self.rep
        if isinstance(rep, LinearRep):
            return format_matrix(rep.matrix)
        if isinstance(rep, GraphicRep):
            return format_graph_text(rep.nverts, rep.edges)
        if isinstance(rep, GraftRep):
            return format_graph_text(rep.nverts, rep.edges, rep.gamma)
        raise MatroidError("rank-table matroids have no text form")


# ---- linear backend helpers


def _linear_dual(matrix):
    red, r, pivots = rref(matrix)
    n = matrix.ncols
    pivset = set(pivots)
    nonpivots = [j for j in range(n) if j not in pivset]
    fld = matrix.field
    if not nonpivots:
        return GFMatrix(fld, ((0,) * n,))  # rank n, dual rank 0
    rows = []
    for i, nj in enumerate(nonpivots):
        row = [0] * n
        row[nj] = 1
        for t, pj in enumerate(pivots):
            row[pj] = fld.neg[red.rows[t][nj]]
        rows.append(row)
    return GFMatrix(fld, rows)


def _linear_minor(matrix, con_cols, keep_cols):
    if not con_cols:
        sub = matrix.select_columns(keep_cols)
        return sub if sub.nrows else GFMatrix(matrix.field, ((0,) * len(keep_cols),))
    arranged = matrix.select_columns(list(con_cols) + list(keep_cols))
    red, _, pivots = rref(arranged)
    t = sum(1 for p in pivots if p < len(con_cols))
    rows = [row[len(con_cols):] for row in red.rows[t:]]
    if not rows:
        rows = [(0,) * len(keep_cols)]
    return GFMatrix(matrix.field, rows)


def _graph_minor(nverts, edges, con, keep_edge_ids):
    parent = list(range(nverts))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for j in _bits(con):
        u, v = edges[j]
        parent[find(u)] = find(v)
    roots = sorted({find(v) for v in range(nverts)})
    newid = {root: i for i, root in enumerate(roots)}
    new_edges = [(newid[find(edges[j][0])], newid[find(edges[j][1])]) for j in keep_edge_ids]
    return len(roots), new_edges


def _graft_minor(rep, con, keep_edge_ids):
    parent = list(range(rep.nverts))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for j in _bits(con):
        u, v = rep.edges[j]
        parent[find(u)] = find(v)
    roots = sorted({find(v) for v in range(rep.nverts)})
    newid = {root: i for i, root in enumerate(roots)}
    new_edges = [
        (newid[find(rep.edges[j][0])], newid[find(rep.edges[j][1])])
        for j in keep_edge_ids
    ]
    # gamma contracts by parity: a merged vertex is in gamma' iff it absorbed
    # an odd number of gamma vertices
    counts = {}
    for v in rep.gamma:
        root = find(v)
        counts[root] = counts.get(root, 0) + 1
    gamma = {newid[root] for root, c in counts.items() if c % 2 == 1}
    return len(roots), new_edges, gamma


def incidence_matrix(nverts, edges, gamma=None):
    """GF(2) vertex-edge incidence matrix, with gamma's vector as a final column."""
    cols = []
    for u, v in edges:
        vec = [0] * nverts
        vec[u] ^= 1
        vec[v] ^= 1
        cols.append(vec)
    if gamma is not None:
        vec = [0] * nverts
        for v in gamma:
            vec[v] ^= 1
        cols.append(vec)
    if not cols:
        return GFMatrix(field(2), ((),))
    return GFMatrix(field(2), list(zip(*cols)))


# ---- constructors


def from_matrix(matrix, labels=None, name=""):
    return Matroid(LinearRep(matrix), labels, name=name)


def from_graph(nverts, edges, labels=None, name=""):
    return Matroid(GraphicRep(nverts, edges), labels, name=name)


def graft_matroid(nverts, edges, gamma, labels=None, name=""):
    if labels is None:
        labels = default_labels(len(edges)) + ("g",)
    return Matroid(GraftRep(nverts, edges, gamma), labels, name=name)


def full_rank_table(m: Matroid):
    """Dense rank table of m as bytes; fast echelon walk for binary matrices."""
    n = m.n
    if n > TABLE_CAP:
        raise MatroidError(f"rank table capped at n <= {TABLE_CAP}")
    rep = m.rep
    if isinstance(rep, RankTableRep):
        return rep.table
    table = bytearray(1 << n)
    if isinstance(rep, LinearRep) and rep.matrix.field.q == 2:
        cols = rep.matrix.col_bits
        bases = [()] * (1 << n)
        for mask in range(1, 1 << n):
            low = mask & -mask
            prev = mask ^ low
            v = cols[low.bit_length() - 1]
            b = bases[prev]
            for w in b:  # kept sorted descending, so this fully reduces v
                vw = v ^ w
                if vw < v:
                    v = vw
            if v:
                i = 0
                while i < len(b) and b[i] > v:
                    i += 1
                bases[mask] = b[:i] + (v,) + b[i:]
                table[mask] = table[prev] + 1
            else:
                bases[mask] = b
                table[mask] = table[prev]
        return bytes(table)
    for mask in range(1 << n):
        table[mask] = m.r(mask)
    return bytes(table)


def as_rank_table(m: Matroid):
    return Matroid(RankTableRep(m.n, full_rank_table(m)), m.labels, name=m.name)


def _fresh_labels(taken, labels):
    out = []
    for lab in labels:
        while lab in taken:
            lab = lab + "'"
        taken.add(lab)
        out.append(lab)
    return out


def direct_sum(m1: Matroid, m2: Matroid):
    """Disjoint union; m2's labels get primes appended on collision."""
    taken = set(m1.labels)
    labels = list(m1.labels) + _fresh_labels(taken, m2.labels)
    r1, r2 = m1.rep, m2.rep
    if (
        isinstance(r1, LinearRep)
        and isinstance(r2, LinearRep)
        and r1.matrix.field.q == r2.matrix.field.q
    ):
        a, b = r1.matrix, r2.matrix
        rows = [row + (0,) * b.ncols for row in a.rows]
        rows += [(0,) * a.ncols + row for row in b.rows]
        if not rows:
            rows = [(0,) * (a.ncols + b.ncols)]
        return Matroid(LinearRep(GFMatrix(a.field, rows)), labels)
    n = m1.n + m2.n
    if n > TABLE_CAP:
        raise MatroidError("direct sum too large for a rank table")
    table = bytearray(1 << n)
    full1 = m1.full_mask
    for mask in range(1 << n):
        table[mask] = m1.r(mask & full1) + m2.r(mask >> m1.n)
    return Matroid(RankTableRep(n, table), labels)


def _rank_table_from_circuits(n, circuit_masks):
    # greedy basis per mask, reusing the basis of mask minus its top element;
    # circuits are bucketed by top element, so the independence check when the
    # top element joins only scans circuits it could complete
    by_top = [[] for _ in range(n)]
    for c in circuit_masks:
        by_top[c.bit_length() - 1].append(c)
    table = bytearray(1 << n)
    greedy = [0] * (1 << n)
    for mask in range(1, 1 << n):
        top = mask.bit_length() - 1
        base = greedy[mask ^ (1 << top)]
        cand = base | (1 << top)
        for c in by_top[top]:
            if c & cand == c:
                cand = base
                break
        greedy[mask] = cand
        table[mask] = cand.bit_count()
    return bytes(table)


def parallel_connection(m1: Matroid, p1, m2: Matroid, p2):
    """Glue m1 and m2 along a basepoint; circuits are those of each part plus
    the through-circuits (C1 - p1) u (C2 - p2).  Result is a RankTable matroid
    keeping m1's labels; the basepoint keeps the label of p1."""
    i1 = m1._pos[str(p1)]
    i2 = m2._pos[str(p2)]
    for m, i in ((m1, i1), (m2, i2)):
        if m.r(1 << i) == 0 or m.coloops() >> i & 1:
            raise MatroidError("basepoint must be neither a loop nor a coloop")
    taken = set(m1.labels)
    rest2 = [i for i in range(m2.n) if i != i2]
    labels = list(m1.labels) + _fresh_labels(taken, [m2.labels[i] for i in rest2])
    n = m1.n + m2.n - 1
    if n > TABLE_CAP:
        raise MatroidError("parallel connection too large for a rank table")
    # index map: m1 keeps its indices; m2's element j lands at offset index
    pos2 = {}
    for off, j in enumerate(rest2):
        pos2[j] = m1.n + off
    pos2[i2] = i1

    def embed2(c):
        out = 0
        for j in _bits(c):
            out |= 1 << pos2[j]
        return out

    c1s = m1.circuits()
    c2s = [embed2(c) for c in m2.circuits()]
    pbit = 1 << i1
    circuits = set(c1s) | set(c2s)
    for a in c1s:
        if a & pbit:
            for b in c2s:
                if b & pbit:
                    circuits.add((a | b) ^ pbit)
    table = _rank_table_from_circuits(n, circuits)
    out = Matroid(RankTableRep(n, table), labels)
    assert out.rank() == m1.rank() + m2.rank() - 1
    return out


def _is_triangle(m: Matroid, mask):
    return (
        mask.bit_count() == 3
        and m.r(mask) == 2
        and all(m.r(mask ^ (1 << i)) == 2 for i in _bits(mask))
    )


def binary_three_sum(m1: Matroid, m2: Matroid, t_labels):
    """3-sum of two binary matroids across the common triangle t_labels.
    The cycle space of the result is every T-avoiding symmetric difference of
    a cycle of m1 and a cycle of m2, restricted to the new ground set."""
    t = [str(x) for x in t_labels]
    common = set(m1.labels) & set(m2.labels)
    if common != set(t) or len(t) != 3:
        raise MatroidError("ground sets must overlap in exactly the three glue labels")
    if m1.n < 7 or m2.n < 7:
        raise MatroidError("3-sum needs at least 7 elements on each side")
    a = m1.to_linear()
    b = m2.to_linear()
    if a.rep.matrix.field.q != 2 or b.rep.matrix.field.q != 2:
        raise MatroidError("3-sum is defined here for binary matroids")
    if not _is_triangle(a, a.mask_of(t)) or not _is_triangle(b, b.mask_of(t)):
        raise MatroidError("glue set must be a triangle of both sides")
    new_labels = [lab for lab in a.labels if lab not in common]
    new_labels += [lab for lab in b.labels if lab not in common]
    m = len(new_labels)
    pos = {lab: i for i, lab in enumerate(new_labels)}
    # combined coordinates: new ground set in bits 0..m-1, glue labels on top
    # so that echelon rows led by a non-glue bit are zero on the glue
    for k, lab in enumerate(t):
        pos[lab] = m + k

    def embed(matroid, vec):
        out = 0
        for i, x in enumerate(vec):
            if x:
                out |= 1 << pos[matroid.labels[i]]
        return out

    vectors = [embed(a, v) for v in null_space(a.rep.matrix)]
    vectors += [embed(b, v) for v in null_space(b.rep.matrix)]
    echelon = []
    for v in vectors:
        for w in echelon:
            vw = v ^ w
            if vw < v:
                v = vw
        if v:
            echelon.append(v)
            echelon.sort(reverse=True)
    lowmask = (1 << m) - 1
    cycle_rows = [v for v in echelon if v <= lowmask]
    if cycle_rows:
        k = GFMatrix(
            field(2),
            [tuple(v >> i & 1 for i in range(m)) for v in cycle_rows],
        )
        rows = null_space(k)
    else:
        rows = [tuple(1 if j == i else 0 for j in range(m)) for i in range(m)]
    if not rows:
        rows = [(0,) * m]
    return Matroid(LinearRep(GFMatrix(field(2), rows)), new_labels)


def is_binary_affine(m: Matroid):
    """True iff every circuit is even; cross-checked against the row-space test
    (the all-ones functional must lie in the row space of the matrix)."""
    lin = m.to_linear()
    if lin.rep.matrix.field.q != 2:
        raise MatroidError("affine test is for binary matroids")
    by_circuits = all(c.bit_count() % 2 == 0 for c in m.circuits())
    mat = lin.rep.matrix
    stacked = mat.stack_row((1,) * mat.ncols)
    _, r0, _ = rref(mat)
    _, r1, _ = rref(stacked)
    by_rows = r0 == r1
    assert by_circuits == by_rows
    return by_rows


# ---- graph text format


def parse_graph_text(text):
    """'graph V E' header, E lines 'u v' (0-based), optional 'gamma v1 v2 ...'."""
    lines = [ln for ln in (s.strip() for s in text.splitlines()) if ln]
    if not lines or len(lines[0].split()) != 3 or lines[0].split()[0] != "graph":
        raise MatroidError("expected header 'graph V E'")
    _, vs, es = lines[0].split()
    nverts, nedges = int(vs), int(es)
    body = lines[1:]
    gamma = None
    if body and body[-1].split()[0] == "gamma":
        gamma = [int(x) for x in body[-1].split()[1:]]
        body = body[:-1]
    if len(body) != nedges:
        raise MatroidError(f"expected {nedges} edge lines, got {len(body)}")
    edges = []
    for ln in body:
        parts = ln.split()
        if len(parts) != 2:
            raise MatroidError(f"bad edge line {ln!r}")
        edges.append((int(parts[0]), int(parts[1])))
    for u, v in edges:
        if not (0 <= u < nverts and 0 <= v < nverts):
            raise MatroidError("edge endpoint out of range")
    if gamma is not None:
        for v in gamma:
            if not 0 <= v < nverts:
                raise MatroidError("gamma vertex out of range")
    return nverts, edges, gamma


def format_graph_text(nverts, edges, gamma=None):
    out = [f"graph {nverts} {len(edges)}"]
    out += [f"{u} {v}" for u, v in edges]
    if gamma is not None:
        out.append("gamma " + " ".join(str(v) for v in sorted(gamma)))
    return "\n".join(out) + "\n"
