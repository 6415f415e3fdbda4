"""Exhaustive isomorph-reduced searches over binary matroids.

Orderly generation of the simple (k,l)-uniform restrictions of a rank-r
binary projective space, single-element extension and coextension
enumeration, f-value computation, and the two-route census of the
3-connected binary (2,2)-uniform matroids.
"""

from __future__ import annotations

import dataclasses
import json
import multiprocessing
import os
import time
from collections import Counter
from dataclasses import dataclass

from . import catalog
from .gf import GFMatrix, format_matrix, rref, subspace_masks
from .iso import (
    BudgetExhausted,
    binary_canonical_form,
    binary_representation,
    has_minor,
    is_canonical_point_set,
    iso_key,
)
from .matroid import Matroid, MatroidError, from_matrix

_SPLIT_DEPTH = 4  # subtree roots handed to workers have this many points


@dataclass
class SearchConfig:
    """Parameters for one orderly-generation run: ambient rank, the (k,l)
    pair to preserve, leaf filters, a node budget, and worker count."""

    r: int
    k: int
    l: int
    require_simple: bool = True
    require_cosimple: bool = False
    require_3connected: bool = False
    max_size: int | None = None
    budget: int = 5_000_000
    workers: int = 1
    checkpoint: str | None = None
    checkpoint_every: int = 50_000

    def __post_init__(self):
        if not 1 <= self.r <= 6:
            raise MatroidError("full enumeration supports 1 <= r <= 6")
        if self.k < 1 or self.l < 1:
            raise MatroidError("k and l must be positive")
        if self.budget < 1 or self.workers < 1:
            raise MatroidError("budget and workers must be positive")
        if self.max_size is not None and self.max_size < 0:
            raise MatroidError("max_size must be nonnegative")


@dataclass
class SearchReport:
    """Outcome of a search: pairwise non-isomorphic representatives, counts
    by (rank, size), the largest rank attained, the derived f-value, and
    pruning statistics."""

    config: SearchConfig | None
    representatives: list
    forms: list | None
    counts: dict
    max_rank: int | None
    f_value: int | None
    stats: dict
    wall_time: float
    schema: int = 1

    def to_json_dict(self):
        cfg = self.config
        return {
            "schema": self.schema,
            "config": None if cfg is None else {
                "r": cfg.r, "k": cfg.k, "l": cfg.l,
                "require_simple": cfg.require_simple,
                "require_cosimple": cfg.require_cosimple,
                "require_3connected": cfg.require_3connected,
                "budget": cfg.budget, "workers": cfg.workers,
            },
            "f_value": self.f_value,
            "representatives": [_export_any(m) for m in self.representatives],
            "counts": [[r, n, c] for (r, n), c in sorted(self.counts.items())],
            "stats": dict(self.stats),
            "wall_time": round(self.wall_time, 3),
        }


def _export_any(m):
    try:
        return m.export_text()
    except MatroidError:
        # rank-table matroid: recover a GF(2) matrix if one exists
        return format_matrix(binary_representation(m))


def kl_uniform_points(m, k, l):
    """(k,l)-uniformity of a binary matroid decided by subspace counting:
    m fails iff some subspace W with dim W = r(m) - k holds total column
    weight (parallel multiplicities plus loops) at least dim W + l.  Agrees
    with the flats oracle; needs a representation of at most six rows."""
    t = m.rank()
    if k > t:
        return True
    mat = binary_representation(m)
    if mat.nrows > t:
        red, rk, _ = rref(mat)
        mat = GFMatrix(mat.field, red.rows[:rk])
    nr = mat.nrows
    if nr > 6:
        raise MatroidError("subspace check supports rank <= 6")
    weights = Counter()
    loops = 0
    pmask = 0
    for j in range(mat.ncols):
        v = 0
        for i in range(nr):
            v = v << 1 | mat.rows[i][j]
        if v == 0:
            loops += 1
        else:
            weights[v] += 1
            pmask |= 1 << (v - 1)
    d = t - k
    need = d + l
    subs = subspace_masks(max(nr, 1))[d]
    if loops == 0 and all(wt == 1 for wt in weights.values()):
        return all((pmask & w).bit_count() < need for w in subs)
    for w_mask in subs:
        tot = loops + sum(wt for v, wt in weights.items() if w_mask >> (v - 1) & 1)
        if tot >= need:
            return False
    return True


def _as_predicate(pred):
    if callable(pred):
        return pred
    k, l = pred
    return lambda m: kl_uniform_points(m, k, l)


# ---- orderly generation


def _new_stats():
    return {"nodes": 0, "kept": 0, "pruned_uniformity": 0, "pruned_canonical": 0}


def _span_values(span_mask):
    out = []
    v = 1
    while span_mask:
        if span_mask & 1:
            out.append(v)
        span_mask >>= 1
        v += 1
    return out


def _passes_kl(points_mask, t, k, l, subs):
    d = t - k
    if d < 0:
        return True
    need = d + l
    for w in subs[d]:
        if (points_mask & w).bit_count() >= need:
            return False
    return True


def _matroid_from_points(points, r):
    return from_matrix(GFMatrix.from_point_values(list(points), r))


def _leaf_passes(m, cfg):
    if cfg.require_simple and not m.is_simple():
        return False
    if cfg.require_cosimple and not m.is_cosimple():
        return False
    if cfg.require_3connected and not m.is_3connected():
        return False
    return True


def _node_state(points):
    """(points mask, span mask, rank) recomputed from the point tuple."""
    pmask = 0
    span = 0
    rank = 0
    for v in points:
        pmask |= 1 << (v - 1)
        if not span >> (v - 1) & 1:
            rank += 1
            vals = _span_values(span)
            span |= 1 << (v - 1)
            for s in vals:
                span |= 1 << ((s ^ v) - 1)
    return pmask, span, rank


def _serial_search(cfg, stack, forms, counts, stats, defer_depth=None, frontier=None):
    """Depth-first expansion of canonical (k,l)-uniform point sets.  Nodes on
    the stack are point tuples already known canonical and uniform.  When
    defer_depth is set, nodes of that size are moved to the frontier instead
    of being expanded (used to split work across processes)."""
    subs = subspace_masks(cfg.r)
    top = (1 << cfg.r) - 1
    while stack:
        points = stack.pop()
        if defer_depth is not None and len(points) == defer_depth:
            frontier.append(points)
            continue
        stats["nodes"] += 1
        if stats["nodes"] > cfg.budget:
            if cfg.checkpoint:
                _write_checkpoint(cfg, stack + [points] + (frontier or []),
                                  forms, counts, stats)
            raise BudgetExhausted(
                f"search budget of {cfg.budget} nodes exhausted")
        if cfg.checkpoint and stats["nodes"] % cfg.checkpoint_every == 0:
            _write_checkpoint(cfg, stack + [points] + (frontier or []),
                              forms, counts, stats)
        pmask, span, rank = _node_state(points)
        if _leaf_passes(_matroid_from_points(points, cfg.r), cfg):
            stats["kept"] += 1
            counts[rank, len(points)] += 1
            forms.append(points)
        if cfg.max_size is not None and len(points) >= cfg.max_size:
            continue
        start = points[-1] + 1 if points else 1
        for v in range(start, top + 1):
            t2 = rank if span >> (v - 1) & 1 else rank + 1
            if not _passes_kl(pmask | 1 << (v - 1), t2, cfg.k, cfg.l, subs):
                stats["pruned_uniformity"] += 1
                continue
            child = points + (v,)
            if not is_canonical_point_set(child):
                stats["pruned_canonical"] += 1
                continue
            stack.append(child)


def _write_checkpoint(cfg, stack, forms, counts, stats):
    state = {
        "schema": 1,
        "config": [cfg.r, cfg.k, cfg.l, cfg.require_simple,
                   cfg.require_cosimple, cfg.require_3connected, cfg.max_size],
        "stack": [list(p) for p in stack],
        "forms": [list(p) for p in forms],
        "counts": [[r, n, c] for (r, n), c in counts.items()],
        "stats": dict(stats),
    }
    tmp = cfg.checkpoint + ".tmp"
    with open(tmp, "w") as fh:
        json.dump(state, fh)
    os.replace(tmp, cfg.checkpoint)


def _load_checkpoint(cfg, path):
    with open(path) as fh:
        state = json.load(fh)
    want = [cfg.r, cfg.k, cfg.l, cfg.require_simple,
            cfg.require_cosimple, cfg.require_3connected, cfg.max_size]
    if state.get("schema") != 1 or state.get("config") != want:
        raise MatroidError("checkpoint does not match the search configuration")
    stack = [tuple(p) for p in state["stack"]]
    forms = [tuple(p) for p in state["forms"]]
    counts = Counter({(r, n): c for r, n, c in state["counts"]})
    stats = _new_stats()
    stats.update(state["stats"])
    return stack, forms, counts, stats


def _branch_task(args):
    cfg, node = args
    cfg = dataclasses.replace(cfg, checkpoint=None)
    forms, counts, stats = [], Counter(), _new_stats()
    _serial_search(cfg, [node], forms, counts, stats)
    return forms, counts, stats


def _finish(cfg, forms, counts, stats, t0):
    order = sorted(range(len(forms)), key=lambda i: (len(forms[i]), forms[i]))
    forms = [forms[i] for i in order]
    reps = [_matroid_from_points(p, cfg.r) for p in forms]
    max_rank = max((m.rank() for m in reps), default=None)
    return SearchReport(
        config=cfg,
        representatives=reps,
        forms=forms,
        counts=dict(counts),
        max_rank=max_rank,
        f_value=max_rank,
        stats=stats,
        wall_time=time.time() - t0,
    )


def enumerate_kl_uniform(cfg: SearchConfig, resume=None):
    """Every simple binary (k,l)-uniform matroid of rank at most cfg.r, one
    canonical representative per isomorphism class, filtered at the leaves
    by the configured flags.  Orderly generation: a child set is expanded
    only if it is its own canonical form, and any set failing (k,l)-
    uniformity is pruned together with its whole subtree (restriction of a
    superset is a minor, so the failure is hereditary)."""
    t0 = time.time()
    if resume is not None:
        stack, forms, counts, stats = _load_checkpoint(cfg, resume)
    else:
        stack, forms, counts, stats = [()], [], Counter(), _new_stats()
    if cfg.workers == 1:
        _serial_search(cfg, stack, forms, counts, stats)
        return _finish(cfg, forms, counts, stats, t0)
    frontier = []
    _serial_search(cfg, stack, forms, counts, stats,
                   defer_depth=_SPLIT_DEPTH, frontier=frontier)
    with multiprocessing.Pool(cfg.workers) as pool:
        results = pool.map(_branch_task, [(cfg, node) for node in sorted(frontier)])
    for bforms, bcounts, bstats in results:
        forms.extend(bforms)
        counts.update(bcounts)
        for key in bstats:
            stats[key] += bstats[key]
    if stats["nodes"] > cfg.budget:
        raise BudgetExhausted(f"search budget of {cfg.budget} nodes exhausted")
    return _finish(cfg, forms, counts, stats, t0)


# ---- f values


def compute_f(k, l, r_max=5, budget=5_000_000, workers=1):
    """Largest rank r <= r_max carrying a simple cosimple (k,l)-uniform
    binary matroid.  For k = 1 the search runs on the dual side: simple
    cosimple (l,1)-uniform matroids are enumerated up to rank r_max and the
    value is max(|E| - r) over them, the rank of the dual.  The answer is
    exact as long as no family member exists above the cap."""
    if k == 1 and l == 1:
        raise MatroidError("(1,1)-uniform matroids of every rank exist")
    kk, ll = (l, 1) if k == 1 else (k, l)
    cfg = SearchConfig(r=r_max, k=kk, l=ll, require_simple=True,
                       require_cosimple=True, budget=budget, workers=workers)
    report = enumerate_kl_uniform(cfg)
    if k == 1:
        vals = [m.n - m.rank() for m in report.representatives]
    else:
        vals = [m.rank() for m in report.representatives]
    if not vals:
        raise MatroidError(f"no simple cosimple ({k},{l})-uniform matroids found")
    return max(vals)


# ---- single-element extension / coextension searches


def extensions(m: Matroid, predicate):
    """Single-element extensions of a simple binary matroid by unused points
    of its rank-r projective space, filtered by the predicate (a callable or
    a (k,l) pair) and deduplicated up to isomorphism."""
    pred = _as_predicate(predicate)
    r = m.rank()
    if r > 6:
        raise MatroidError("extension search supports rank <= 6")
    if not m.is_simple():
        raise MatroidError("extension search needs a simple input")
    vals = [i + 1 for i in binary_canonical_form(m)]
    out, seen = [], set()
    for v in range(1, 1 << r):
        if v in vals:
            continue
        ext = from_matrix(GFMatrix.from_point_values(vals + [v], r))
        if not pred(ext):
            continue
        key = iso_key(ext)
        if key not in seen:
            seen.add(key)
            out.append(ext)
    return out


def coextensions(m: Matroid, predicate):
    """Single-element binary coextensions: the representation gains a new
    row and a new column x carrying the only 1 of that row, so contracting
    x recovers m.  Rows in the same coset of the input's row space give the
    same matroid, so the new row runs over coset representatives (zero in
    every pivot position), 2^(n-r) candidates.  Filtered by the predicate
    and deduplicated up to isomorphism; results need not be simple."""
    pred = _as_predicate(predicate)
    r, n = m.rank(), m.n
    if r > 5:
        raise MatroidError("coextension search supports rank <= 5")
    mat = binary_representation(m)
    red, rk, pivots = rref(mat)
    rows = [tuple(red.rows[i]) + (0,) for i in range(rk)]
    free = [j for j in range(n) if j not in set(pivots)]
    xlabel = "x"
    while xlabel in m.labels:
        xlabel += "x"
    out, seen = [], set()
    for combo in range(1 << len(free)):
        beta = [0] * n
        for idx, j in enumerate(free):
            beta[j] = combo >> idx & 1
        coext = from_matrix(GFMatrix(2, rows + [tuple(beta) + (1,)]),
                            labels=m.labels + (xlabel,))
        if not pred(coext):
            continue
        key = iso_key(coext)
        if key not in seen:
            seen.add(key)
            out.append(coext)
    return out


# ---- census of 3-connected binary (2,2)-uniform matroids

_TINY_ROWS = {
    "U00": ((),),
    "U01": ((0,),),
    "U11": ((1,),),
    "U12": ((1, 1),),
    "U13": ((1, 1, 1),),
    "U23": ((1, 0, 1), (0, 1, 1)),
}


def _tiny_six():
    return {name: from_matrix(GFMatrix(2, rows), name=name)
            for name, rows in _TINY_ROWS.items()}


def census_seeds():
    """The four maximal members the census descends from."""
    ag42 = catalog.geometry("AG", 4)
    return [catalog.spike_minus_tip(5), catalog.named("P10"),
            ag42, ag42.dual().with_name("AG(4,2)*")]


def _minor_closure_3connected(seeds):
    """Isomorph-reduced closure of the seeds under single-element minors
    followed by simplification/cosimplification.  Every 3-connected minor
    with at least four elements survives that reduction, so filtering the
    visited set to 3-connected matroids yields them all; matroids on at
    most three elements are handled separately."""
    queue = [m.reduced() for m in seeds]
    visited = {}
    for m in queue:
        visited.setdefault(iso_key(m), m)
    queue = list(visited.values())
    while queue:
        m = queue.pop()
        for e in range(m.n):
            for child in (m.delete(1 << e).reduced(), m.contract(1 << e).reduced()):
                key = iso_key(child)
                if key not in visited:
                    visited[key] = child
                    queue.append(child)
    return {key: m for key, m in visited.items()
            if m.n >= 4 and m.is_3connected()}


def three_connected_census_22(budget=5_000_000, workers=1):
    """The 3-connected binary (2,2)-uniform matroids, computed two ways and
    cross-checked: (a) the 3-connected minors of the four maximal members;
    (b) direct orderly enumeration at rank <= 5 with simple, cosimple, and
    3-connected leaf filters, closed under duality (every member has rank
    or corank at most 5), plus the six matroids on at most 3 elements.
    Raises when the two routes disagree."""
    t0 = time.time()
    seeds = census_seeds()
    census_a = _minor_closure_3connected(seeds)
    tiny = _tiny_six()
    for name, m in tiny.items():
        if any(has_minor(s, m) is not None for s in seeds):
            census_a.setdefault(iso_key(m), m)
    cfg = SearchConfig(r=5, k=2, l=2, require_simple=True,
                       require_cosimple=True, require_3connected=True,
                       budget=budget, workers=workers)
    report = enumerate_kl_uniform(cfg)
    census_b = {}
    for m in report.representatives:
        if m.n < 4:
            continue
        census_b.setdefault(iso_key(m), m)
        d = m.dual()
        census_b.setdefault(iso_key(d), d)
    for name, m in tiny.items():
        census_b.setdefault(iso_key(m), m)
    if set(census_a) != set(census_b):
        only_a = [census_a[k].name or str(k) for k in set(census_a) - set(census_b)]
        only_b = [census_b[k].name or str(k) for k in set(census_b) - set(census_a)]
        raise MatroidError(
            f"census mismatch: minors-only {only_a}, enumeration-only {only_b}")
    members = [census_b[k] for k in census_b]
    members.sort(key=lambda m: (m.rank(), m.n, iso_key(m)))
    counts = Counter((m.rank(), m.n) for m in members)
    f_value = max(m.rank() for m in members if m.is_simple() and m.is_cosimple())
    stats = dict(report.stats)
    stats["census_size"] = len(members)
    return SearchReport(
        config=cfg,
        representatives=members,
        forms=None,
        counts=dict(counts),
        max_rank=max(m.rank() for m in members),
        f_value=f_value,
        stats=stats,
        wall_time=time.time() - t0,
    )
