"""Named binary matroids and generated families.

Fixed GF(2) matrices for the named rank-4 and rank-5 matroids, graphic
and graft constructions, binary spikes, projective and affine
geometries, and the generated family of binary (2,2)-uniform matroids
that are not 3-connected.
"""

from __future__ import annotations

import re

from .gf import GFMatrix, parse_matrix
from .iso import element_orbits, is_binary, iso_key
from .matroid import (
    Matroid,
    MatroidError,
    RankTableRep,
    direct_sum,
    from_graph,
    from_matrix,
    graft_matroid,
    parallel_connection,
)

# Fixed matrices.  P10 and L10 share their first four rows; L10 replaces the
# fifth row with all-ones.
P10_MATRIX = """2 5 10
1 0 0 0 0 1 0 0 1 1
0 1 0 0 0 1 1 0 0 1
0 0 1 0 0 0 1 1 0 1
0 0 0 1 0 0 0 1 1 0
0 0 0 0 1 1 1 1 0 0
"""

L10_MATRIX = """2 5 10
1 0 0 0 0 1 0 0 1 1
0 1 0 0 0 1 1 0 0 1
0 0 1 0 0 0 1 1 0 1
0 0 0 1 0 0 0 1 1 0
1 1 1 1 1 1 1 1 1 1
"""

P9_MATRIX = """2 4 9
1 0 0 0 1 0 0 1 1
0 1 0 0 1 1 0 0 1
0 0 1 0 0 1 1 0 1
0 0 0 1 0 0 1 1 0
"""

MK33_MATRIX = """2 5 9
1 0 0 0 0 1 0 0 1
0 1 0 0 0 1 1 0 0
0 0 1 0 0 0 1 1 0
0 0 0 1 0 0 0 1 1
1 1 1 1 1 1 1 1 1
"""

F7_MATRIX = """2 3 7
1 0 0 1 1 0 1
0 1 0 1 0 1 1
0 0 1 0 1 1 1
"""

K4_EDGES = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
# Rank-4 wheel: hub 0, rim cycle 1-2-3-4.
W4_EDGES = ((0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4), (4, 1))
# K5 on {0..4} minus the edge {3,4}.
K5E_EDGES = ((0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4))
# K(3,3) with parts {0,1,2} and {3,4,5}.
K33_EDGES = ((0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5))


def graft(nverts, edges, gamma, labels=None, name=""):
    """Graft matroid: columns of the vertex-edge incidence matrix over GF(2)
    plus the incidence vector of the marked vertex set gamma."""
    return graft_matroid(nverts, edges, gamma, labels=labels, name=name)


def uniform(r, n, labels=None, name=""):
    """U_{r,n}: rank function min(|X|, r), as a rank table."""
    if not 0 <= r <= n:
        raise MatroidError(f"uniform({r},{n}): need 0 <= r <= n")
    if n > 20:
        raise MatroidError(f"uniform({r},{n}): too many elements for a table")
    table = bytes(min(bin(m).count("1"), r) for m in range(1 << n))
    return Matroid(RankTableRep(n, table), labels=labels, name=name or f"U({r},{n})")


def geometry(kind, dim, q=2):
    """PG(dim,2) on all nonzero GF(2) vectors of length dim+1, or AG(dim,2)
    on the vectors with last coordinate 1 (complement of a hyperplane)."""
    if q != 2:
        raise MatroidError("only q = 2 geometries are supported")
    if dim < 1:
        raise MatroidError("geometry needs dim >= 1")
    r = dim + 1
    if kind == "PG":
        values = list(range(1, 1 << r))
    elif kind == "AG":
        # Row 0 of a column is the high bit, so the last coordinate is bit 0.
        values = [v for v in range(1, 1 << r) if v & 1]
    else:
        raise MatroidError(f"unknown geometry kind {kind!r}")
    if len(values) > 64:
        raise MatroidError(f"geometry({kind},{dim},{q}): too many points")
    return from_matrix(GFMatrix.from_point_values(values, r), name=f"{kind}({dim},{q})")


def spike(r, name=""):
    """Binary r-spike Z_r: columns I_r (legs x_i), J_r - I_r (co-legs y_i),
    and the all-ones tip t."""
    if r < 3:
        raise MatroidError("spike(r) needs r >= 3")
    cols = [[1 if i == j else 0 for i in range(r)] for j in range(r)]
    cols += [[0 if i == j else 1 for i in range(r)] for j in range(r)]
    cols.append([1] * r)
    labels = (
        tuple(f"x{j + 1}" for j in range(r))
        + tuple(f"y{j + 1}" for j in range(r))
        + ("t",)
    )
    return from_matrix(GFMatrix.from_columns(2, cols), labels=labels, name=name or f"Z{r}")


def spike_minus_tip(r):
    z = spike(r)
    return z.delete(z.mask_of(("t",))).with_name(f"Z{r}\\t")


def spike_minus_y(r):
    z = spike(r)
    return z.delete(z.mask_of((f"y{r}",))).with_name(f"Z{r}\\y")


def _named_builders():
    return {
        "F7": lambda: from_matrix(parse_matrix(F7_MATRIX), name="F7"),
        "F7*": lambda: from_matrix(parse_matrix(F7_MATRIX)).dual().with_name("F7*"),
        "AG32": lambda: geometry("AG", 3).with_name("AG32"),
        "S8": lambda: spike_minus_y(4).with_name("S8"),
        "P9": lambda: from_matrix(parse_matrix(P9_MATRIX), name="P9"),
        "P10": lambda: from_matrix(parse_matrix(P10_MATRIX), name="P10"),
        "L10": lambda: from_matrix(parse_matrix(L10_MATRIX), name="L10"),
        "R10": lambda: graft(6, K33_EDGES, (0, 1, 2, 3, 4, 5), name="R10"),
        "MK5e": lambda: from_graph(5, K5E_EDGES, name="MK5e"),
        "MK33": lambda: from_matrix(parse_matrix(MK33_MATRIX), name="MK33"),
        "MK33*": lambda: from_matrix(parse_matrix(MK33_MATRIX)).dual().with_name("MK33*"),
        "MW3": lambda: from_graph(4, K4_EDGES, name="MW3"),
        "MW4": lambda: from_graph(5, W4_EDGES, name="MW4"),
    }


_NAMED = _named_builders()

NAMED_ORDER = (
    "F7", "F7*", "AG32", "S8", "P9", "P10", "L10", "R10",
    "MK5e", "MK33", "MK33*", "MW3", "MW4",
)


def named(name):
    """One of the fixed named matroids, by its catalog name."""
    try:
        builder = _NAMED[name]
    except KeyError:
        raise MatroidError(f"unknown catalog name {name!r}") from None
    return builder()


def matrix_a(alpha):
    """The 4x9 matrix on e1..e9 with one free entry: the cycle matroid of
    K5 minus an edge when alpha = 0 and P9 when alpha = 1."""
    if alpha not in (0, 1):
        raise MatroidError("alpha must be 0 or 1")
    rows = (
        (1, 0, 0, 0, 1, 0, 0, 1, 1),
        (0, 1, 0, 0, 1, 1, 0, 0, alpha),
        (0, 0, 1, 0, 0, 1, 1, 0, 1),
        (0, 0, 0, 1, 0, 0, 1, 1, 0),
    )
    labels = tuple(f"e{i + 1}" for i in range(9))
    return from_matrix(GFMatrix(2, rows), labels=labels, name=f"A[alpha={alpha}]")


def matrix_b(alpha, betas):
    """The 5x10 coextension shape on e1..e9, x: matrix A with a zero column
    appended for x, plus the row (0,0,0,0,b5,...,b9,1)."""
    if alpha not in (0, 1):
        raise MatroidError("alpha must be 0 or 1")
    b5, b6, b7, b8, b9 = betas
    if any(b not in (0, 1) for b in (b5, b6, b7, b8, b9)):
        raise MatroidError("betas must be 0 or 1")
    rows = (
        (1, 0, 0, 0, 1, 0, 0, 1, 1, 0),
        (0, 1, 0, 0, 1, 1, 0, 0, alpha, 0),
        (0, 0, 1, 0, 0, 1, 1, 0, 1, 0),
        (0, 0, 0, 1, 0, 0, 1, 1, 0, 0),
        (0, 0, 0, 0, b5, b6, b7, b8, b9, 1),
    )
    labels = tuple(f"e{i + 1}" for i in range(9)) + ("x",)
    name = f"B[alpha={alpha},betas={b5}{b6}{b7}{b8}{b9}]"
    return from_matrix(GFMatrix(2, rows), labels=labels, name=name)


class CatalogEntry:
    """A constructed matroid together with the claims made about it.  The
    claimed rank, size, and (when stated) simplicity, cosimplicity, and
    binary-ness are all checked at construction time."""

    def __init__(self, name, params, matroid, note, *, rank, size,
                 simple=None, cosimple=None, binary=True):
        if matroid.rank() != rank:
            raise MatroidError(f"{name}: rank {matroid.rank()} != claimed {rank}")
        if matroid.n != size:
            raise MatroidError(f"{name}: size {matroid.n} != claimed {size}")
        if simple is not None and matroid.is_simple() != simple:
            raise MatroidError(f"{name}: simplicity claim failed")
        if cosimple is not None and matroid.is_cosimple() != cosimple:
            raise MatroidError(f"{name}: cosimplicity claim failed")
        if binary and not is_binary(matroid):
            raise MatroidError(f"{name}: not binary")
        self.name = name
        self.params = dict(params)
        self.matroid = matroid.with_name(name)
        self.note = note

    def __repr__(self):
        return f"CatalogEntry({self.name}: n={self.matroid.n}, r={self.matroid.rank()})"


_NAMED_CLAIMS = {
    # name: (rank, size, simple, cosimple, note)
    "F7": (3, 7, True, True, "fixed 3x7 matrix; equals the rank-3 binary spike"),
    "F7*": (4, 7, True, True, "dual of F7"),
    "AG32": (4, 8, True, True, "affine geometry AG(3,2)"),
    "S8": (4, 8, True, True, "the non-tip single-element deletion of the binary 4-spike"),
    "P9": (4, 9, True, True,
           "fixed 4x9 matrix; also the graft of the rank-4 wheel with the hub "
           "and three rim vertices marked"),
    "P10": (5, 10, True, True, "fixed 5x10 matrix; a coextension of P9"),
    "L10": (5, 10, True, True,
            "fixed 5x10 matrix; also the graft of K(3,3) with all vertices "
            "but two in one part marked"),
    "R10": (5, 10, True, True, "graft of K(3,3) with every vertex marked"),
    "MK5e": (4, 9, True, True, "cycle matroid of K5 minus an edge"),
    "MK33": (5, 9, True, True, "fixed 5x9 matrix; the cycle matroid of K(3,3)"),
    "MK33*": (4, 9, True, True, "dual of MK33"),
    "MW3": (3, 6, True, True, "cycle matroid of K4, the rank-3 wheel"),
    "MW4": (4, 8, True, True, "cycle matroid of the rank-4 wheel"),
}


def entries():
    """CatalogEntry list for the named matroids, claims checked."""
    out = []
    for name in NAMED_ORDER:
        rank, size, simple, cosimple, note = _NAMED_CLAIMS[name]
        out.append(CatalogEntry(name, {}, named(name), note,
                                rank=rank, size=size, simple=simple, cosimple=cosimple))
    return out


# ---- the family of binary (2,2)-uniform matroids that are not 3-connected


def _triangle_on(p, q1, q2):
    return uniform(2, 3, labels=(p, q1, q2))


def _pc(m, base):
    """Parallel connection of m with a triangle at the given basepoint label."""
    tri = _triangle_on("p0", "q1", "q2")
    return parallel_connection(m, base, tri, "p0")


def _pc_delete(m, base):
    """Parallel connection with a triangle at base, then delete the basepoint;
    the triangle remainder q1, q2 becomes a series pair replacing base."""
    joined = _pc(m, base)
    return joined.delete(joined.mask_of((base,)))


def _require_transitive(name, m):
    if len(element_orbits(m)) != 1:
        raise MatroidError(f"{name}: expected a transitive automorphism group")


def _family_raw(max_n):
    """All family members before deduplication, as (name, params, matroid,
    note, rank, size, simple) tuples; simple = None when unclaimed."""
    raw = []

    def add(name, params, m, note, rank, size, simple=None):
        raw.append((name, params, m, note, rank, size, simple))

    # (a) rank at most 1, excluding the four tiny 3-connected ones (the empty
    # matroid is 3-connected by convention and is excluded as well).
    for loops in range(2, max_n + 1):
        add(f"U(0,{loops})", {"item": "i", "loops": loops},
            uniform(0, loops), "loops only", 0, loops, simple=False)
    for b in range(1, max_n + 1):
        for loops in range(0, max_n + 1 - b):
            if loops == 0 and b in (1, 2, 3):
                continue
            m = uniform(1, b)
            name = f"U(1,{b})"
            if loops:
                m = direct_sum(m, uniform(0, loops))
                name += f"+U(0,{loops})"
            add(name, {"item": "i", "parallel": b, "loops": loops},
                m, "one parallel class plus loops", 1, b + loops,
                simple=(b == 1 and loops == 0))

    # (b) non-simple rank-2 binary with at most one loop: multiplicities on
    # the three points of the rank-2 projective line, sorted descending.
    for a in range(1, max_n + 1):
        for b in range(1, a + 1):
            for c in range(0, b + 1):
                for lp in (0, 1):
                    if a + b + c + lp > max_n:
                        continue
                    if lp == 0 and a == 1:
                        continue
                    vals = [1] * a + [2] * b + [3] * c
                    m = from_matrix(GFMatrix.from_point_values(vals, 2))
                    if lp:
                        m = direct_sum(m, uniform(0, 1))
                    name = f"line[{a},{b},{c}]" + ("+loop" if lp else "")
                    add(name, {"item": "ii", "multiplicities": (a, b, c), "loops": lp},
                        m, "rank-2 point multiplicities with at most one loop",
                        2, a + b + c + lp, simple=False)

    # (c) loopless non-simple rank-3 binary with parallel classes of size at
    # most 2: a simple rank-3 restriction of the rank-3 projective plane with
    # some points doubled.  Cores are deduplicated up to isomorphism first.
    cores = {}
    for mask in range(1 << 7):
        pts = [v + 1 for v in range(7) if mask >> v & 1]
        if len(pts) < 3 or len(pts) > max_n:
            continue
        core = from_matrix(GFMatrix.from_point_values(pts, 3))
        if core.rank() != 3:
            continue
        cores.setdefault(iso_key(core), tuple(pts))
    for pts in sorted(cores.values(), key=lambda t: (len(t), t)):
        k = len(pts)
        for dmask in range(1, 1 << k):
            doubled = tuple(pts[i] for i in range(k) if dmask >> i & 1)
            if k + len(doubled) > max_n:
                continue
            vals = list(pts) + list(doubled)
            m = from_matrix(GFMatrix.from_point_values(vals, 3))
            name = "plane[" + ",".join(map(str, pts)) + "|" + ",".join(map(str, doubled)) + "]"
            add(name, {"item": "iii", "points": pts, "doubled": doubled},
                m, "rank-3 point set with some points doubled, loopless",
                3, k + len(doubled), simple=False)

    # (d) direct sums with a loop or with a two-point parallel class.
    bases = [(bn, named(bn)) for bn in ("MW3", "F7", "F7*", "AG32")]
    for bn, bm in bases:
        add(f"{bn}+U(0,1)", {"item": "iv", "base": bn, "summand": "U(0,1)"},
            direct_sum(bm, uniform(0, 1)), "direct sum with a single loop",
            bm.rank(), bm.n + 1, simple=False)
        add(f"{bn}+U(1,2)", {"item": "iv", "base": bn, "summand": "U(1,2)"},
            direct_sum(bm, uniform(1, 2)), "direct sum with a two-point parallel class",
            bm.rank() + 1, bm.n + 2, simple=False)

    # (e) triangle glued at the spike tip, tip deleted.
    z4 = spike(4)
    add("P(Z4,U23)\\t", {"item": "v", "base": "Z4", "basepoint": "t"},
        _pc_delete(z4, "t"), "triangle glued at the 4-spike tip, tip deleted",
        5, 10, simple=True)
    s8 = named("S8")
    add("P(S8,U23)\\t", {"item": "v", "base": "S8", "basepoint": "t"},
        _pc_delete(s8, "t"), "triangle glued at the tip of S8, tip deleted",
        5, 9, simple=True)

    # (f) triangle glued at a point, point deleted; the bases are
    # point-transitive so the choice of basepoint is immaterial.
    for bn in ("F7", "AG32"):
        bm = named(bn)
        _require_transitive(bn, bm)
        add(f"P({bn},U23)\\p", {"item": "vi", "base": bn, "basepoint": bm.labels[0]},
            _pc_delete(bm, bm.labels[0]), "triangle glued at a point, point deleted",
            bm.rank() + 1, bm.n + 1, simple=True)

    # (g) triangle glued at a point, kept; transitive bases again.
    for bn, bm in bases:
        _require_transitive(bn, bm)
        add(f"P({bn},U23)", {"item": "vii", "base": bn, "basepoint": bm.labels[0]},
            _pc(bm, bm.labels[0]), "triangle glued at a point",
            bm.rank() + 1, bm.n + 2, simple=True)

    return raw


_COR33_CACHE = None


def cor33_family(max_n=10):
    """The binary (2,2)-uniform matroids that are not 3-connected, as
    CatalogEntry objects: explicit members plus representatives of the
    unbounded low-rank families up to max_n elements, closed under duality
    and deduplicated up to isomorphism."""
    global _COR33_CACHE
    if max_n == 10 and _COR33_CACHE is not None:
        return list(_COR33_CACHE)
    raw = _family_raw(max_n)
    entries_out = []
    seen = {}
    for dualize in (False, True):
        for name, params, m, note, rank, size, simple in raw:
            if dualize:
                name += "*"
                params = dict(params, dual=True)
                m, note = m.dual(), f"dual of: {note}"
                rank, simple = size - rank, None
            key = iso_key(m)
            if key in seen:
                continue
            seen[key] = name
            entries_out.append(CatalogEntry(name, params, m, note,
                                            rank=rank, size=size, simple=simple))
    if max_n == 10:
        _COR33_CACHE = list(entries_out)
    return entries_out


def s8_basepoint_variants():
    """Triangle glued at each automorphism-orbit representative of S8, the
    basepoint deleted; returns (basepoint, matroid, is_22_uniform) triples.
    S8 has three element orbits, so the glued result depends on the choice."""
    from .uniformity import is_kl_uniform_flats
    s8 = named("S8")
    reps = []
    seen = set()
    for orbit in element_orbits(s8):
        if orbit[0] not in seen:
            reps.append(orbit[0])
            seen.update(orbit)
    out = []
    for b in reps:
        m = _pc_delete(s8, b)
        ok = is_kl_uniform_flats(m, 2, 2)[0]
        out.append((b, m, ok))
    return out


# ---- CLI name resolution

_URI_FORMS = (
    "a catalog name (F7, P10, ...), a trailing * for the dual, U<r><n> or "
    "U(r,n), PG(d,2) or AG(d,2), Z<r> for spikes, Z<r>-t or Z<r>-y for "
    "spike deletions"
)


def resolve(text):
    """Resolve a catalog URI body: named matroids, U/PG/AG/Z constructions,
    and a trailing * for the dual of any of these."""
    if text in _NAMED:
        return named(text)
    if text.endswith("*"):
        return resolve(text[:-1]).dual().with_name(text)
    mu = re.fullmatch(r"U\((\d+),(\d+)\)", text) or re.fullmatch(r"U(\d)(\d)", text)
    if mu:
        return uniform(int(mu.group(1)), int(mu.group(2)))
    mg = re.fullmatch(r"(PG|AG)\((\d+),2\)", text)
    if mg:
        return geometry(mg.group(1), int(mg.group(2)))
    mz = re.fullmatch(r"Z(\d+)([-\\][ty])?", text)
    if mz:
        r = int(mz.group(1))
        if mz.group(2) is None:
            return spike(r)
        return spike_minus_tip(r) if mz.group(2)[1] == "t" else spike_minus_y(r)
    raise MatroidError(f"cannot resolve {text!r}; expected {_URI_FORMS}")
