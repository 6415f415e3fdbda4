"""Isomorphism testing, canonical forms for binary matroids, minor search.

The core engine canonicalizes a set of projective points over GF(2) under
the general linear group: the least sorted image over all linear maps is
reached by mapping an ordered basis drawn from the set to 1, 2, 4, ...,
so a depth-first search over basis prefixes with prefix pruning and
automorphism orbit skipping finds it without touching all of GL(r,2).
Weights ride along (for parallel-class multiplicities and markings) by
comparing sorted (image, weight) pairs.
"""

from __future__ import annotations

import itertools

from .gf import GFMatrix, field, rref
from .matroid import LinearRep, Matroid, MatroidError, from_matrix, full_rank_table

__all__ = [
    "BudgetExhausted",
    "NotBinary",
    "weighted_canonical_form",
    "canonical_point_set",
    "is_canonical_point_set",
    "binary_canonical_form",
    "binary_representation",
    "is_binary",
    "iso_key",
    "fingerprint",
    "are_isomorphic",
    "has_minor",
    "element_orbits",
    "mw4_free_check",
]

DEFAULT_MINOR_BUDGET = 2_000_000


class BudgetExhausted(Exception):
    """Search node budget ran out before a definitive answer."""


class NotBinary(MatroidError):
    """The matroid provably has no GF(2) representation."""


class _Smaller(Exception):
    """Canonicity test found a strictly smaller image."""


# ---- point-set canonicalization


def _reduce(vec, img, rows):
    # rows are (v, i) pairs with distinct high bits, sorted by v descending
    for v, i in rows:
        nv = vec ^ v
        if nv < vec:
            vec, img = nv, img ^ i
    return vec, img


def _canon_search(points, weights, target=None):
    """Minimize the sorted (image, weight) list over injective linear maps.

    Returns (best_pairs, best_map, autos).  With a target, raises _Smaller
    the moment any map provably beats it and otherwise confirms the target
    (autos collect the weight-preserving linear symmetries found on ties).
    """
    n = len(points)
    wt = dict(zip(points, weights))
    if n == 0:
        return (), {}, []
    testing = target is not None
    best = [tuple(pair) for pair in target] if testing else None
    best_map = {p: p for p, _ in target} if testing else None
    autos = []

    def rec(prefix, rows, forced, img_of, outside):
        nonlocal best, best_map
        j = len(prefix)
        if best is not None:
            limit = len(forced)
            pre = best[:limit]
            if forced > pre:
                return
            if forced < pre:
                if testing:
                    raise _Smaller
            elif limit < len(best):
                nxt = best[limit][0]
                lim = 1 << j
                if nxt < lim:
                    return
                if testing and nxt > lim:
                    raise _Smaller  # this branch completes with lim in slot `limit`
        if not outside:
            pairs = list(forced)
            if best is None or pairs < best:
                # testing mode never lands here with pairs < target: the
                # prefix comparison above would have raised already
                best = pairs
                best_map = dict(img_of)
            elif pairs == best:
                inv = {v: p for p, v in best_map.items()}
                autos.append({p: inv[v] for p, v in img_of.items()})
            return
        lim = 1 << j
        cands = sorted(outside, key=lambda p: (wt[p], p))
        done = []
        for p in cands:
            if autos:
                fixing = [g for g in autos if all(g[q] == q for q in prefix)]
                if fixing and _orbit_hits(p, fixing, done):
                    continue
            v, i = _reduce(p, lim, rows)
            newrows = sorted(rows + [(v, i)], reverse=True)
            new_img = dict(img_of)
            new_img[p] = lim
            new_pairs = [(lim, wt[p])]
            new_out = []
            for x in outside:
                if x == p:
                    continue
                xv, xi = _reduce(x, 0, newrows)
                if xv == 0:
                    new_img[x] = xi
                    new_pairs.append((xi, wt[x]))
                else:
                    new_out.append(x)
            new_pairs.sort()
            rec(prefix + [p], newrows, forced + new_pairs, new_img, new_out)
            done.append(p)

    rec([], [], [], {}, list(points))
    return tuple(best), best_map, autos


def _orbit_hits(p, gens, done):
    if not done:
        return False
    doneset = set(done)
    orbit = {p}
    frontier = [p]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = g[x]
            if y in doneset:
                return True
            if y not in orbit:
                orbit.add(y)
                frontier.append(y)
    return False


def weighted_canonical_form(pairs):
    """Least sorted ((image, weight), ...) over linear maps; also the map."""
    pts = tuple(p for p, _ in pairs)
    wts = tuple(w for _, w in pairs)
    if len(set(pts)) != len(pts) or any(p <= 0 for p in pts):
        raise MatroidError("points must be distinct and nonzero")
    form, mapping, _ = _canon_search(pts, wts)
    return form, mapping


def canonical_point_set(points):
    """Least sorted image of a set of distinct nonzero GF(2) points."""
    form, _ = weighted_canonical_form(tuple((p, 0) for p in sorted(points)))
    return tuple(v for v, _ in form)


def is_canonical_point_set(points, weights=None):
    """True iff sorted(points) is its own canonical form (orbit representative)."""
    pts = tuple(sorted(points))
    if weights is None:
        pairs = tuple((p, 0) for p in pts)
    else:
        w = dict(zip(points, weights))
        pairs = tuple((p, w[p]) for p in pts)
        if list(pairs) != sorted(pairs):
            return False
    try:
        _canon_search(tuple(p for p, _ in pairs), tuple(w for _, w in pairs), target=pairs)
    except _Smaller:
        return False
    return True


# ---- binary representations


def _rank_rows(matrix):
    red, r, _ = rref(matrix)
    if r == 0:
        return GFMatrix(matrix.field, ((0,) * matrix.ncols,))
    return GFMatrix(matrix.field, red.rows[:r])


def binary_representation(m: Matroid):
    """GF(2) matrix representing m (columns in element order), or None if m is
    provably non-binary.  Certified by full rank-table comparison (n <= 16)."""
    rep = m.rep
    if isinstance(rep, LinearRep) and rep.matrix.field.q == 2:
        return rep.matrix
    try:
        lin = m.to_linear()
    except MatroidError:
        lin = None
    if lin is not None and lin.rep.matrix.field.q == 2:
        return lin.rep.matrix
    if m.n > 16:
        raise MatroidError("cannot certify a binary representation beyond n = 16")
    r = m.rank()
    basis = []
    bmask = 0
    for i in range(m.n):
        if m.r(bmask | (1 << i)) > len(basis):
            basis.append(i)
            bmask |= 1 << i
    rows = [[0] * m.n for _ in range(max(r, 1))]
    for j, b in enumerate(basis):
        rows[j][b] = 1
    for e in range(m.n):
        if bmask >> e & 1:
            continue
        for j, b in enumerate(basis):
            # b lies in the fundamental circuit of e iff swapping it for e
            # keeps a basis
            if m.r((bmask ^ (1 << b)) | (1 << e)) == r:
                rows[j][e] = 1
    mat = GFMatrix(field(2), rows)
    if full_rank_table(m) == full_rank_table(from_matrix(mat)):
        return mat
    return None


def is_binary(m: Matroid):
    return binary_representation(m) is not None


def binary_canonical_form(m: Matroid):
    """Canonical form of a simple binary matroid: the sorted indices (into the
    fixed projective point order of its rank) of the least GL-image."""
    mat = binary_representation(m)
    if mat is None:
        raise NotBinary("canonical form needs a binary matroid")
    if not m.is_simple():
        raise MatroidError("canonical form is defined for simple matroids")
    r = m.rank()
    if r > 6:
        raise MatroidError("canonical form capped at rank 6")
    if r == 0:
        return ()
    values = _rank_rows(mat).point_values()
    return tuple(v - 1 for v in canonical_point_set(values))


def _binary_profile(m: Matroid):
    """Complete invariant data for a binary matroid of rank <= 6: loop count
    plus the weighted canonical form of its simple core (weights = parallel
    class sizes).  Returns (key_part, details for certificate building)."""
    mat = binary_representation(m)
    if mat is None:
        raise NotBinary("profile needs a binary matroid")
    loops = m.loops()
    classes = m.parallel_classes()
    values = _rank_rows(mat).point_values()
    pairs = []
    class_of_point = {}
    for cls in classes:
        first = (cls & -cls).bit_length() - 1
        p = values[first]
        pairs.append((p, cls.bit_count()))
        class_of_point[p] = cls
    pairs.sort()
    form, mapping = weighted_canonical_form(tuple(pairs))
    return form, mapping, class_of_point, loops


def iso_key(m: Matroid):
    """Hashable complete isomorphism invariant for binary matroids with
    min(rank, corank) <= 6; works through the dual when the rank is large."""
    r, n = m.rank(), m.n
    if r <= 6:
        side, mm = "p", m
    elif n - r <= 6:
        side, mm = "d", m.dual()
    else:
        raise MatroidError("iso_key needs rank or corank at most 6")
    form, _, _, loops = _binary_profile(mm)
    return (n, r, side, loops.bit_count(), form)


# ---- fingerprints and generic isomorphism


def fingerprint(m: Matroid):
    """Cheap isomorphism invariant: counts of small flats and circuits plus the
    multiset of per-element small-circuit degrees."""
    r, n = m.rank(), m.n
    flat_counts = {}
    for k in range(0, min(3, r) + 1):
        for f in m.flats_of_rank(k):
            key = (k, f.bit_count())
            flat_counts[key] = flat_counts.get(key, 0) + 1
    circuits = m.circuits(max_size=6)
    spectrum = {}
    degree = [[0] * 7 for _ in range(n)]
    for c in circuits:
        s = c.bit_count()
        spectrum[s] = spectrum.get(s, 0) + 1
        mask = c
        while mask:
            low = mask & -mask
            degree[low.bit_length() - 1][s] += 1
            mask ^= low
    return (
        n,
        r,
        m.loops().bit_count(),
        m.coloops().bit_count(),
        tuple(sorted(flat_counts.items())),
        tuple(sorted(spectrum.items())),
        tuple(sorted(tuple(d) for d in degree)),
    )


def _verify_bijection(m1, m2, mapping):
    import random

    idx = [m2._pos[mapping[lab]] for lab in m1.labels]

    def translate(mask):
        out = 0
        for i in range(m1.n):
            if mask >> i & 1:
                out |= 1 << idx[i]
        return out

    if m1.n <= 12:
        masks = range(1 << m1.n)
    else:
        rng = random.Random(0xC0FFEE)
        masks = (rng.randrange(1 << m1.n) for _ in range(10_000))
    for mask in masks:
        if m1.r(mask) != m2.r(translate(mask)):
            raise MatroidError("certificate failed rank verification")
    return mapping


def _generic_isomorphism(m1, m2):
    c1 = m1.circuits()
    c2 = m2.circuits()
    if len(c1) != len(c2):
        return None
    if sorted(c.bit_count() for c in c1) != sorted(c.bit_count() for c in c2):
        return None
    top = max((c.bit_count() for c in c1), default=0)

    def degrees(m, circuits):
        deg = [[0] * (top + 1) for _ in range(m.n)]
        for c in circuits:
            s = c.bit_count()
            mask = c
            while mask:
                low = mask & -mask
                deg[low.bit_length() - 1][s] += 1
                mask ^= low
        return [tuple(d) for d in deg]

    d1 = degrees(m1, c1)
    d2 = degrees(m2, c2)
    if sorted(d1) != sorted(d2):
        return None
    c2set = set(c2)
    by_elem1 = [[c for c in c1 if c >> i & 1] for i in range(m1.n)]
    # rarest invariant first for early failure
    freq = {}
    for d in d1:
        freq[d] = freq.get(d, 0) + 1
    order = sorted(range(m1.n), key=lambda i: (freq[d1[i]], d1[i], i))
    cands = {i: [j for j in range(m2.n) if d2[j] == d1[i]] for i in order}
    assign = {}
    used = 0

    def translate_ok(c):
        out = 0
        for i in range(m1.n):
            if c >> i & 1:
                j = assign.get(i)
                if j is None:
                    return True  # not fully mapped yet
                out |= 1 << j
        return out in c2set

    def rec(k):
        nonlocal used
        if k == len(order):
            return True
        i = order[k]
        for j in cands[i]:
            if used >> j & 1:
                continue
            assign[i] = j
            used |= 1 << j
            if all(translate_ok(c) for c in by_elem1[i]):
                if rec(k + 1):
                    return True
            used ^= 1 << j
            del assign[i]
        return False

    if not rec(0):
        return None
    return {m1.labels[i]: m2.labels[j] for i, j in assign.items()}


def _binary_matrix_or_unknown(m):
    """GFMatrix, None (provably non-binary), or 'unknown' (size cap)."""
    try:
        return binary_representation(m)
    except MatroidError:
        return "unknown"


def are_isomorphic(m1: Matroid, m2: Matroid):
    """Label bijection m1 -> m2 if isomorphic, else None.  Binary matroids go
    through canonical forms; everything else through circuit backtracking."""
    if (m1.n, m1.rank()) != (m2.n, m2.rank()):
        return None
    if m1.n == 0:
        return {}
    a = _binary_matrix_or_unknown(m1)
    b = _binary_matrix_or_unknown(m2)
    if a is None and b is None:
        pass  # both non-binary: generic path
    elif isinstance(a, GFMatrix) and isinstance(b, GFMatrix):
        if min(m1.rank(), m1.n - m1.rank()) <= 6:
            return _binary_iso(m1, m2)
    elif a != "unknown" and b != "unknown":
        return None  # one binary, one not
    if fingerprint(m1) != fingerprint(m2):
        return None
    mapping = _generic_isomorphism(m1, m2)
    if mapping is None:
        return None
    return _verify_bijection(m1, m2, mapping)


def _binary_iso(m1, m2):
    r = m1.rank()
    if r <= 6:
        a, bb = m1, m2
    else:
        a, bb = m1.dual(), m2.dual()
    form1, map1, classes1, loops1 = _binary_profile(a)
    form2, map2, classes2, loops2 = _binary_profile(bb)
    if form1 != form2 or loops1.bit_count() != loops2.bit_count():
        return None
    inv2 = {img: p for p, img in map2.items()}
    mapping = {}
    l1 = [a.labels[i] for i in _bit_positions(loops1)]
    l2 = [bb.labels[i] for i in _bit_positions(loops2)]
    mapping.update(zip(l1, l2))
    for p, img in map1.items():
        q = inv2[img]
        e1 = [a.labels[i] for i in _bit_positions(classes1[p])]
        e2 = [bb.labels[i] for i in _bit_positions(classes2[q])]
        mapping.update(zip(e1, e2))
    return _verify_bijection(m1, m2, mapping)


def _bit_positions(mask):
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


# ---- minors


def has_minor(m: Matroid, target: Matroid, budget=DEFAULT_MINOR_BUDGET):
    """(contract_mask, delete_mask) with m/C\\D isomorphic to target, or None.
    C runs over independent sets of size r(m) - r(target) in mask order, so C
    is independent and D is forced coindependent.  Raises BudgetExhausted."""
    dr = m.rank() - target.rank()
    if dr < 0 or m.n < target.n:
        return None
    target_fp = fingerprint(target)
    spent = 0
    for combo in itertools.combinations(range(m.n), dr):
        cmask = 0
        for i in combo:
            cmask |= 1 << i
        if m.r(cmask) != dr:
            continue
        mc = m.contract(cmask)
        for keep in itertools.combinations(range(mc.n), target.n):
            spent += 1
            if spent > budget:
                raise BudgetExhausted(f"minor search exceeded {budget} candidates")
            kmask = 0
            for i in keep:
                kmask |= 1 << i
            restr = mc.delete(mc.full_mask ^ kmask)
            if restr.rank() != target.rank():
                continue
            if fingerprint(restr) != target_fp:
                continue
            if are_isomorphic(restr, target) is not None:
                dmask = m.full_mask ^ cmask ^ m.mask_of(restr.labels)
                return cmask, dmask
    return None


# ---- orbits and the wheel-free classification


def element_orbits(m: Matroid):
    """Automorphism orbits of a simple binary matroid (rank <= 6), via the
    canonical form of the configuration with one marked point."""
    mat = binary_representation(m)
    if mat is None or not m.is_simple():
        raise MatroidError("orbits are computed for simple binary matroids")
    values = _rank_rows(mat).point_values()
    by_form = {}
    for i, p in enumerate(values):
        pairs = tuple(sorted((q, 1 if q == p else 0) for q in values))
        form, _ = weighted_canonical_form(pairs)
        by_form.setdefault(form, []).append(m.labels[i])
    return sorted(tuple(v) for v in by_form.values())


def mw4_free_check(m: Matroid):
    """For a 3-connected binary matroid: (True, classification) when m has no
    rank-4 wheel minor (classification = which spike relative or small uniform
    matroid it is); (False, None) when the minor exists.  A minor-free matroid
    matching no listed case raises, since that would contradict the catalog's
    expected closure."""
    from . import catalog

    wheel = catalog.named("MW4")
    if has_minor(m, wheel) is not None:
        return False, None
    key = iso_key(m)
    cands = []
    if m.n <= 3:
        for name in ("U00", "U01", "U11", "U12", "U13", "U23"):
            cands.append((name, catalog.uniform(*_uniform_params(name))))
    r, n = m.rank(), m.n
    if n == 2 * r + 1 and r >= 3:
        cands.append((f"Z{r}", catalog.spike(r)))
    if n == 2 * (r - 1) + 1 and r - 1 >= 3:
        cands.append((f"Z{r - 1}*", catalog.spike(r - 1).dual()))
    if n == 2 * r and r >= 3:
        cands.append((f"Z{r}\\t", catalog.spike_minus_tip(r)))
        cands.append((f"Z{r}\\y", catalog.spike_minus_y(r)))
    for name, cand in cands:
        if iso_key(cand) == key:
            return True, name
    raise MatroidError("wheel-free matroid outside the expected classification")


def _uniform_params(name):
    return int(name[1]), int(name[2])
