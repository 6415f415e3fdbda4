"""(k,l)-uniformity predicates, implemented three independent ways, together
with paving tests and structure classifiers for (2,2)-uniform matroids that
are disconnected or connected but not 3-connected.

A matroid is (k,l)-uniform when it has no minor isomorphic to
U_{k,k} + U_{0,l} (direct sum), equivalently when every rank-(r-k) flat has
nullity less than l.  For k above the rank the condition is vacuous.
"""

from __future__ import annotations

from dataclasses import dataclass

from .matroid import Matroid, MatroidError, RankTableRep, parallel_connection

__all__ = [
    "FlatWitness",
    "MinorWitness",
    "StructureClass",
    "is_kl_uniform_flats",
    "is_kl_uniform_minor",
    "is_22_uniform_circuits",
    "is_paving",
    "is_sparse_paving",
    "simple_iff_uniform_check",
    "minimal_kl_frontier",
    "classify_disconnected_22",
    "classify_connected_not3_22",
]


@dataclass(frozen=True)
class FlatWitness:
    """A rank-(r-k) flat with nullity at least l (masks in element order)."""

    flat: int


@dataclass(frozen=True)
class MinorWitness:
    """contract/delete masks with M/contract\\delete = U_{k,k} + U_{0,l}."""

    contract: int
    delete: int


@dataclass(frozen=True)
class StructureClass:
    clause: str
    data: tuple


def _check_kl(k, l):
    if k < 1 or l < 1:
        raise MatroidError("k and l must be positive")


def is_kl_uniform_flats(m: Matroid, k: int, l: int):
    """(True, None) or (False, FlatWitness) by scanning rank-(r-k) flats."""
    _check_kl(k, l)
    r = m.rank()
    if k > r:
        return True, None
    witness = None
    for f in sorted(m.flats_of_rank(r - k)):
        if f.bit_count() - (r - k) >= l:
            witness = FlatWitness(f)
            break
    return (witness is None), witness


def is_kl_uniform_minor(m: Matroid, k: int, l: int):
    """(True, None) or (False, MinorWitness): scan independent sets I of size
    r-k in mask order for closures of nullity >= l, then assemble the minor
    (contract I; keep k spanning elements and l dependent ones)."""
    _check_kl(k, l)
    r = m.rank()
    if k > r:
        return True, None
    t = r - k
    full = m.full_mask
    for mask in range(1 << m.n):
        if mask.bit_count() != t or m.r(mask) != t:
            continue
        cl = m.closure(mask)
        if cl.bit_count() - t < l:
            continue
        extra = cl ^ mask
        loops = 0
        for _ in range(l):
            low = extra & -extra
            loops |= low
            extra ^= low
        keep = mask
        free = 0
        probe = full ^ cl
        while keep.bit_count() < t + k:
            low = probe & -probe
            probe ^= low
            if m.r(keep | low) > m.r(keep):
                keep |= low
                free |= low
        return False, MinorWitness(mask, full ^ mask ^ loops ^ free)
    return True, None


def is_22_uniform_circuits(m: Matroid):
    """True iff every pair of distinct circuits has union of rank >= r(M)-1."""
    circuits = m.circuits()
    r = m.rank()
    for i, c1 in enumerate(circuits):
        for c2 in circuits[i + 1 :]:
            if m.r(c1 | c2) < r - 1:
                return False
    return True


def is_paving(m: Matroid):
    return is_kl_uniform_flats(m, 2, 1)[0]


def is_sparse_paving(m: Matroid):
    return is_kl_uniform_flats(m, 2, 1)[0] and is_kl_uniform_flats(m, 1, 2)[0]


def simple_iff_uniform_check(m: Matroid):
    """is_simple(m), asserted equal to (r-1,1)-uniformity.  Below rank 2 the
    pair (r-1, 1) is out of range and the simplicity answer stands alone."""
    r = m.rank()
    simple = m.is_simple()
    if r < 2:
        return simple
    uniform = is_kl_uniform_flats(m, r - 1, 1)[0]
    if simple != uniform:
        raise MatroidError("internal error: simplicity disagrees with (r-1,1)-uniformity")
    return simple


def minimal_kl_frontier(m: Matroid, k_max: int, l_max: int):
    """Minimal (k,l) pairs within the box for which m is (k,l)-uniform."""
    if k_max < 1 or l_max < 1:
        raise MatroidError("bounds must be positive")
    table = {}
    for k in range(1, k_max + 1):
        for l in range(1, l_max + 1):
            table[k, l] = is_kl_uniform_flats(m, k, l)[0]
    for (k, l), ok in table.items():
        if ok:
            if k + 1 <= k_max and not table[k + 1, l]:
                raise MatroidError("internal error: uniformity not upward closed")
            if l + 1 <= l_max and not table[k, l + 1]:
                raise MatroidError("internal error: uniformity not upward closed")
    out = []
    for (k, l), ok in sorted(table.items()):
        if ok and not (k > 1 and table[k - 1, l]) and not (l > 1 and table[k, l - 1]):
            out.append((k, l))
    return out


# ---- structure of (2,2)-uniform matroids below 3-connectivity


def _is_22(m):
    return is_kl_uniform_flats(m, 2, 2)[0]


def classify_disconnected_22(m: Matroid):
    """First applicable clause for a disconnected (2,2)-uniform matroid:
    D-i: M or M* is paving;
    D-ii: M = M_p + U_{0,1} or M_p* + U_{1,1} with M_p paving;
    D-iii: M = M_p + U_{1,2} with M_p sparse paving."""
    if m.is_connected():
        raise MatroidError("classifier expects a disconnected matroid")
    if not _is_22(m):
        raise MatroidError("classifier expects a (2,2)-uniform matroid")
    if is_paving(m):
        return StructureClass("D-i", ("M",))
    if is_paving(m.dual()):
        return StructureClass("D-i", ("M*",))
    loops = m.loops()
    if loops:
        e = loops & -loops
        if is_paving(m.delete(e)):
            return StructureClass("D-ii", ("loop", m.labels_of(e)[0]))
    coloops = m.coloops()
    if coloops:
        e = coloops & -coloops
        if is_paving(m.delete(e).dual()):
            return StructureClass("D-ii", ("coloop", m.labels_of(e)[0]))
    for comp in m.components():
        if comp.bit_count() == 2 and m.r(comp) == 1:
            rest = m.delete(comp)
            if is_sparse_paving(rest):
                return StructureClass("D-iii", ("pair", m.labels_of(comp)))
    raise MatroidError("no clause applies: structure theorem violated")


def classify_connected_not3_22(m: Matroid):
    """First applicable clause for a connected, not 3-connected, (2,2)-uniform
    matroid:
    C-i: M or M* is paving;
    C-ii: M or M* has rank 3 and no parallel class of size more than two;
    C-iii: M has a parallel or series pair {p,p'} with M\\p/p' sparse paving;
    C-iv: M = P(N, U_{2,4})\\p with N connected and N/p, N*/p both paving."""
    if not m.is_connected():
        raise MatroidError("classifier expects a connected matroid")
    if m.is_3connected():
        raise MatroidError("classifier expects a matroid that is not 3-connected")
    if not _is_22(m):
        raise MatroidError("classifier expects a (2,2)-uniform matroid")
    if is_paving(m):
        return StructureClass("C-i", ("M",))
    if is_paving(m.dual()):
        return StructureClass("C-i", ("M*",))
    if m.rank() == 3 and all(c.bit_count() <= 2 for c in m.parallel_classes()):
        return StructureClass("C-ii", ("M",))
    if m.dual().rank() == 3 and all(c.bit_count() <= 2 for c in m.series_classes()):
        return StructureClass("C-ii", ("M*",))
    hit = _find_pair_reduction(m)
    if hit is not None:
        return hit
    hit = _find_u24_decomposition(m)
    if hit is not None:
        return hit
    raise MatroidError("no clause applies: structure theorem violated")


def _find_pair_reduction(m):
    pairs = []
    for cls in m.parallel_classes():
        pairs.extend(("parallel", a, b) for a, b in _two_subsets(cls))
    for cls in m.series_classes():
        pairs.extend(("series", a, b) for a, b in _two_subsets(cls))
    for kind, a, b in sorted(pairs, key=lambda t: (t[1] | t[2], t[0])):
        for p, q in ((a, b), (b, a)):
            if is_sparse_paving(m.minor(contract=q, delete=p)):
                return StructureClass(
                    "C-iii", (kind, m.labels_of(p)[0], m.labels_of(q)[0])
                )
    return None


def _two_subsets(mask):
    bits = []
    while mask:
        low = mask & -mask
        bits.append(low)
        mask ^= low
    for i in range(len(bits)):
        for j in range(i + 1, len(bits)):
            yield bits[i], bits[j]


def _u24_on(labels):
    table = bytes(min(mask.bit_count(), 2) for mask in range(16))
    return Matroid(RankTableRep(4, table), labels=labels)


def _find_u24_decomposition(m):
    # M = P(N, U_{2,4})\p leaves the triangle {x,y,z} of U_{2,4} behind;
    # contracting z makes x and y parallel, and N is M/z\x with y playing
    # the basepoint.
    triangles = [c for c in m.circuits(max_size=3) if c.bit_count() == 3]
    for tri in sorted(triangles):
        labs = m.labels_of(tri)
        for zi in range(3):
            zl = labs[zi]
            a, b = [labs[i] for i in range(3) if i != zi]
            for xl, yl in ((a, b), (b, a)):
                hit = _try_u24(m, labs, xl, yl, zl)
                if hit is not None:
                    return hit
    return None


def _try_u24(m, tri_labels, xl, yl, zl):
    mz = m.contract(m.mask_of((zl,)))
    if not _parallel_pair(mz, xl, yl):
        return None
    n = mz.delete(mz.mask_of((xl,)))
    if not n.is_connected():
        return None
    bmask = n.mask_of((yl,))
    if not is_paving(n.contract(bmask)):
        return None
    if not is_paving(n.dual().contract(bmask)):
        return None
    if not _rebuild_matches(m, n, yl, xl, zl):
        return None
    return StructureClass(
        "C-iv", ("triangle", tri_labels, "contract", zl, "basepoint", yl)
    )


def _parallel_pair(m, a, b):
    pair = m.mask_of((a, b))
    one = m.mask_of((a,))
    other = m.mask_of((b,))
    return m.r(pair) == 1 and m.r(one) == 1 and m.r(other) == 1


def _rebuild_matches(m, n, base, xl, zl):
    import random

    tmp = base + "~"
    while tmp in m._pos or tmp in n._pos:
        tmp += "~"
    u = _u24_on((base, xl, tmp, zl))
    rebuilt = parallel_connection(n, base, u, base)
    rebuilt = rebuilt.delete(rebuilt.mask_of((base,))).relabel({tmp: base})
    if sorted(rebuilt.labels) != sorted(m.labels):
        return False
    pos = [rebuilt._pos[lab] for lab in m.labels]

    def translate(mask):
        out = 0
        for i in range(m.n):
            if mask >> i & 1:
                out |= 1 << pos[i]
        return out

    if m.n <= 16:
        masks = range(1 << m.n)
    else:
        rng = random.Random(0x22)
        masks = (rng.randrange(1 << m.n) for _ in range(10_000))
    return all(m.r(mask) == rebuilt.r(translate(mask)) for mask in masks)
