"""Enumeration of reflexive polytopes for a space, up to automorphism.

The search walks candidate vertex sets inside a coordinate box.  Any
reflexive polytope has 0 as its only interior lattice point, every other
lattice point it contains is primitive and sits on the boundary, and its
vertices are lattice points or color points; this cuts the rank-two
search to an angular DFS over primitive directions with exact hollowness
pruning on integer cross products.

Completeness in a fixed box is exact; the public entry point grows the
box until the set of canonical representatives is stable for two
consecutive bounds (ranks one and two; higher ranks are best-effort).
"""

from __future__ import annotations

import os
from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations
from math import ceil, gcd
from typing import Optional, Sequence

from .linalg import primitive_vector
from .polytopes import Polytope
from .spaces import HoroSpace

MAX_STABILIZATION_BOX = 12
STABLE_RUNS = 3


def worker_count() -> int:
    """Worker count from HOROFAN_WORKERS; absent or 0 means auto."""
    raw = os.environ.get("HOROFAN_WORKERS", "").strip()
    if raw:
        k = int(raw)
        if k < 1:
            raise ValueError("HOROFAN_WORKERS must be a positive integer")
        return k
    return 1


def enumerate_reflexive(
    space: HoroSpace, box_bound: Optional[int] = None
) -> list[Polytope]:
    """All reflexive polytopes of the space up to automorphisms of the
    lattice preserving the colored structure.

    With an explicit box_bound, exactly the classes having a representative
    with coordinates bounded by it; otherwise the bound grows until the
    class set is stable for three consecutive bounds.  (Two-bound plateaus
    demonstrably occur below the true count, so stability is required one
    step longer than the minimum.)
    """
    if box_bound is not None:
        return _sorted_classes(_classes(space, box_bound))
    bound = _minimum_box(space)
    history = [_classes(space, bound)]
    while True:
        bound += 1
        if bound > MAX_STABILIZATION_BOX:
            raise RuntimeError(
                f"enumeration did not stabilize below box bound {MAX_STABILIZATION_BOX}"
            )
        history.append(_classes(space, bound))
        if len(history) >= STABLE_RUNS and all(
            set(h) == set(history[-1]) for h in history[-STABLE_RUNS:]
        ):
            return _sorted_classes(history[-1])


def _sorted_classes(classes: dict[tuple, Polytope]) -> list[Polytope]:
    return [classes[k] for k in sorted(classes, key=lambda k: (len(k), k))]


def _minimum_box(space: HoroSpace) -> int:
    b = 2 if space.n <= 2 else 1
    for c in space.colors:
        for x in c.point:
            b = max(b, ceil(abs(x)))
    return b


def _classes(space: HoroSpace, bound: int) -> dict[tuple, Polytope]:
    if space.n == 1:
        raw = _raw_rank1(space)
    elif space.n == 2:
        raw = _raw_rank2_parallel(space, bound)
    else:
        raw = _raw_highrank(space, bound)
    classes: dict[tuple, Polytope] = {}
    for poly in raw:
        canon = space.canonicalize_colored(poly)
        classes.setdefault(canon.vertices, canon)
    return classes


def _rank2_task(payload) -> list:
    space, bound, starts = payload
    return [p.vertices for p in _raw_rank2(space, bound, starts)]


def _raw_rank2_parallel(space: HoroSpace, bound: int) -> list[Polytope]:
    workers = worker_count()
    starts = _rank2_start_indices(space, bound)
    if workers <= 1 or len(starts) < 2 * workers:
        return _raw_rank2(space, bound)
    from multiprocessing import Pool

    chunks = [starts[i::workers] for i in range(workers)]
    with Pool(workers) as pool:
        results = pool.map(_rank2_task, [(space, bound, chunk) for chunk in chunks])
    merged: set[tuple] = set()
    for part in results:
        merged.update(part)
    return [Polytope.hull(list(v)) for v in sorted(merged)]


def _color_data(space: HoroSpace) -> Optional[list[tuple[Fraction, ...]]]:
    """Distinct nonzero color points, or None when no hollow polytope can
    contain them all (a lattice point sits strictly between 0 and a point)."""
    points = []
    for p in space.distinct_color_points():
        if not any(p):
            continue
        prim = primitive_vector(p)
        # p = (content/a)·prim; a lattice point strictly inside [0, p) exists
        # iff the ratio exceeds 1
        ratio = next(Fraction(x) / y for x, y in zip(p, prim) if y != 0)
        if ratio > 1:
            return None
        points.append(p)
    return points


# -- rank 1 ------------------------------------------------------------------


def _raw_rank1(space: HoroSpace) -> list[Polytope]:
    cps = _color_data(space)
    if cps is None:
        return []
    pos = {Fraction(1)}
    neg = {Fraction(-1)}
    for (x,) in cps:
        if 0 < x <= 1:
            pos.add(x)
        elif -1 <= x < 0:
            neg.add(x)
    out = []
    for u in sorted(neg):
        for w in sorted(pos):
            if any(not (u <= x <= w) for (x,) in cps):
                continue
            if u.numerator != -1 or w.numerator != 1:
                continue  # dual [−1/w, −1/u] must be integral
            out.append(Polytope.hull([(u,), (w,)]))
    return out


# -- rank 2 ------------------------------------------------------------------


def _cross(a, b) -> int:
    return a[0] * b[1] - a[1] * b[0]


def _angular_cmp(a, b) -> int:
    ha = 0 if (a[1] > 0 or (a[1] == 0 and a[0] > 0)) else 1
    hb = 0 if (b[1] > 0 or (b[1] == 0 and b[0] > 0)) else 1
    if ha != hb:
        return ha - hb
    c = _cross(a, b)
    return 0 if c == 0 else (-1 if c > 0 else 1)


def _rank2_setup(space: HoroSpace, bound: int):
    """Candidate vertices grouped by ray in angular order, plus prune data."""
    scale = space.denom
    cps = _color_data(space)
    if cps is None:
        return None
    scaled_cps = [tuple(int(x * scale) for x in p) for p in cps]
    lattice_scaled = set()
    for x in range(-bound, bound + 1):
        for y in range(-bound, bound + 1):
            if (x or y) and gcd(abs(x), abs(y)) == 1:
                lattice_scaled.add((x * scale, y * scale))
    candidates: dict[tuple[int, int], set[tuple[int, int]]] = {}
    for p in lattice_scaled:
        candidates.setdefault(primitive_vector(p), set()).add(p)
    for sp in scaled_cps:
        candidates.setdefault(primitive_vector(sp), set()).add(sp)
    dirs = sorted(candidates, key=cmp_to_key(_angular_cmp))
    per_ray = [sorted(candidates[d]) for d in dirs]
    forbidden = sorted(lattice_scaled)
    return scale, scaled_cps, dirs, per_ray, forbidden


def _rank2_start_indices(space: HoroSpace, bound: int) -> list[int]:
    setup = _rank2_setup(space, bound)
    if setup is None:
        return []
    return list(range(len(setup[2])))


def _raw_rank2(
    space: HoroSpace, bound: int, starts: Optional[Sequence[int]] = None
) -> list[Polytope]:
    setup = _rank2_setup(space, bound)
    if setup is None:
        return []
    scale, scaled_cps, dirs, per_ray, forbidden = setup
    nrays = len(dirs)
    edge_ok_cache: dict[tuple, bool] = {}

    def edge_ok(p, q) -> bool:
        """No forbidden lattice point strictly inside the triangle (0, p, q)."""
        key = (p, q)
        cached = edge_ok_cache.get(key)
        if cached is not None:
            return cached
        ok = True
        for f in forbidden:
            if _cross(p, f) > 0 and _cross(q, f) < 0 and _cross(
                (q[0] - p[0], q[1] - p[1]), (f[0] - p[0], f[1] - p[1])
            ) > 0:
                ok = False
                break
        edge_ok_cache[key] = ok
        return ok

    polygons: list[tuple[tuple[int, int], ...]] = []
    start_range = range(nrays) if starts is None else starts

    def close_and_emit(chain):
        first, second = chain[0], chain[1]
        last, prev = chain[-1], chain[-2]
        if _cross(last, first) <= 0:
            return
        if _cross((first[0] - last[0], first[1] - last[1]),
                  (second[0] - first[0], second[1] - first[1])) <= 0:
            return
        if _cross((last[0] - prev[0], last[1] - prev[1]),
                  (first[0] - last[0], first[1] - last[1])) <= 0:
            return
        if not edge_ok(last, first):
            return
        poly = tuple(chain)
        for q in scaled_cps:
            for i in range(len(poly)):
                a, b = poly[i], poly[(i + 1) % len(poly)]
                if _cross((b[0] - a[0], b[1] - a[1]), (q[0] - a[0], q[1] - a[1])) < 0:
                    return
        polygons.append(poly)

    def extend(chain, ray_idx):
        if len(chain) >= 3:
            close_and_emit(chain)
        last = chain[-1]
        prev = chain[-2] if len(chain) >= 2 else None
        for idx in range(ray_idx + 1, nrays):
            for cand in per_ray[idx]:
                if _cross(last, cand) <= 0:
                    continue
                if prev is not None and _cross(
                    (last[0] - prev[0], last[1] - prev[1]),
                    (cand[0] - last[0], cand[1] - last[1]),
                ) <= 0:
                    continue
                if not edge_ok(last, cand):
                    continue
                chain.append(cand)
                extend(chain, idx)
                chain.pop()

    for s in start_range:
        for cand in per_ray[s]:
            extend([cand], s)

    out = []
    for poly in polygons:
        if not _dual_integral(poly, scale):
            continue
        out.append(Polytope.hull([(Fraction(x, scale), Fraction(y, scale)) for x, y in poly]))
    return out


def _dual_integral(poly: Sequence[tuple[int, int]], scale: int) -> bool:
    k = len(poly)
    for i in range(k):
        u, w = poly[i], poly[(i + 1) % k]
        d = _cross(u, w)
        if (scale * (w[1] - u[1])) % d or (scale * (u[0] - w[0])) % d:
            return False
    return True


# -- rank ≥ 3 (best effort) ----------------------------------------------------


def _raw_highrank(space: HoroSpace, bound: int) -> list[Polytope]:
    """Growth search over hollow hulls; complete within the box for the
    states reachable from full-dimensional simplex seeds."""
    n = space.n
    cps = _color_data(space)
    if cps is None:
        return []
    candidates: set[tuple[Fraction, ...]] = {tuple(map(Fraction, p)) for p in cps}
    from itertools import product as iproduct

    for z in iproduct(range(-bound, bound + 1), repeat=n):
        if any(z) and gcd(*(abs(x) for x in z)) == 1:
            candidates.add(tuple(map(Fraction, z)))
    cand_list = sorted(candidates)

    def hollow(poly: Polytope) -> bool:
        return all(not any(p) for p in poly.interior_lattice_points(1))

    seen: set[tuple] = set()
    accepted: list[Polytope] = []
    stack: list[Polytope] = []
    for seed in combinations(cand_list, n + 1):
        try:
            poly = Polytope.hull(list(seed))
        except ValueError:
            continue
        if poly.vertices in seen:
            continue
        seen.add(poly.vertices)
        if hollow(poly):
            stack.append(poly)
    while stack:
        poly = stack.pop()
        if poly.has_zero_in_interior() and all(poly.contains(p) for p in cps):
            from .fano import is_reflexive

            if is_reflexive(space, poly):
                accepted.append(poly)
        for p in cand_list:
            if poly.contains(p):
                continue
            grown = Polytope.hull(list(poly.vertices) + [list(p)])
            if grown.vertices in seen:
                continue
            seen.add(grown.vertices)
            if hollow(grown):
                stack.append(grown)
    return accepted


# -- filtered counting -----------------------------------------------------------


def classify_classes(space: HoroSpace, classes: Sequence[Polytope]) -> dict[str, int]:
    """Counts of the standard filters over a list of canonical classes."""
    from .fano import is_locally_factorial, is_q_factorial, is_smooth

    counts = {"total": len(classes), "smooth": 0, "locfac": 0, "qfact": 0}
    for poly in classes:
        if is_smooth(space, poly):
            counts["smooth"] += 1
        if is_locally_factorial(space, poly):
            counts["locfac"] += 1
        if is_q_factorial(space, poly):
            counts["qfact"] += 1
    return counts
