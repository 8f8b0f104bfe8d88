"""Exact rational convex polytopes in small dimension.

Vertex and facet representations are kept together and consistent; all
arithmetic is over ``Fraction``.  Complete and exact for ambient
dimension ≤ 4, which is where every desk-scale computation here lives.
Facet normals are primitive integer covectors with the polytope on the
``⟨normal, u⟩ ≤ offset`` side.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from math import factorial, floor, ceil
from itertools import combinations, product
from typing import Iterable, Sequence

from .linalg import (
    Vec,
    primitive_vector,
    det,
    rank,
    solve_rational,
    kernel_basis,
)

Point = tuple[Fraction, ...]


def _as_point(p: Sequence) -> Point:
    return tuple(Fraction(x) for x in p)


def affine_rank(points: Sequence[Point]) -> int:
    """Dimension of the affine span of the points."""
    if len(points) <= 1:
        return 0
    base = points[0]
    return rank([[x - b for x, b in zip(p, base)] for p in points[1:]])


def _dot(w: Sequence, v: Sequence) -> Fraction:
    return sum(Fraction(a) * Fraction(b) for a, b in zip(w, v))


class Polytope:
    """A full-dimensional rational polytope with both representations."""

    __slots__ = ("n", "vertices", "facets", "__dict__")

    def __init__(self, vertices: Sequence[Sequence], facets: Sequence[tuple] | None = None):
        pts = sorted({_as_point(p) for p in vertices})
        if not pts:
            raise ValueError("empty polytope")
        self.n = len(pts[0])
        if facets is None:
            raise ValueError("use Polytope.hull to build from points")
        self.vertices: tuple[Point, ...] = tuple(pts)
        self.facets: tuple[tuple[tuple[int, ...], Fraction], ...] = tuple(
            sorted((tuple(int(x) for x in w), Fraction(c)) for w, c in facets)
        )

    # -- construction -----------------------------------------------------

    @staticmethod
    def hull(points: Sequence[Sequence]) -> "Polytope":
        """Irredundant hull of a full-dimensional point set."""
        pts = sorted({_as_point(p) for p in points})
        if not pts:
            raise ValueError("empty point set")
        n = len(pts[0])
        if any(len(p) != n for p in pts):
            raise ValueError("points of mixed dimension")
        if affine_rank(pts) != n:
            raise ValueError(
                f"points span an affine set of dimension {affine_rank(pts)} < {n}; "
                "full-dimensional input required"
            )
        if n == 1:
            lo, hi = pts[0][0], pts[-1][0]
            facets = [((1,), hi), ((-1,), -lo)]
            return Polytope([(lo,), (hi,)], facets)
        if n == 2:
            verts = _hull2d(pts)
            facets = []
            m = len(verts)
            for i in range(m):
                a, b = verts[i], verts[(i + 1) % m]
                w = (b[1] - a[1], a[0] - b[0])  # outward for ccw order
                wp = primitive_vector(w)
                facets.append((wp, _dot(wp, a)))
            return Polytope(verts, facets)
        return _hull_brute(pts, n)

    @staticmethod
    def from_inequalities(rows: Sequence[tuple[Sequence, Fraction]]) -> "Polytope":
        """Bounded intersection of half-spaces ⟨w, x⟩ ≥ c (one per row).

        Vertices are found as the feasible basic solutions; raises if the
        region is empty, unbounded, or not full-dimensional.
        """
        if not rows:
            raise ValueError("no inequalities")
        if not region_is_bounded([w for w, _ in rows]):
            raise ValueError("inequality system is unbounded")
        candidates = basic_feasible_points(rows)
        if not candidates:
            raise ValueError("empty inequality system")
        return Polytope.hull(candidates)

    # -- basic queries ------------------------------------------------------

    def contains(self, p: Sequence) -> bool:
        q = _as_point(p)
        return all(_dot(w, q) <= c for w, c in self.facets)

    def strictly_contains(self, p: Sequence) -> bool:
        q = _as_point(p)
        return all(_dot(w, q) < c for w, c in self.facets)

    def on_boundary(self, p: Sequence) -> bool:
        return self.contains(p) and not self.strictly_contains(p)

    def has_zero_in_interior(self) -> bool:
        return all(c > 0 for _, c in self.facets)

    def facet_vertex_sets(self) -> list[tuple[int, ...]]:
        """Vertex index set of each facet, aligned with self.facets."""
        out = []
        for w, c in self.facets:
            out.append(tuple(i for i, v in enumerate(self.vertices) if _dot(w, v) == c))
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Polytope) and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    def __repr__(self) -> str:
        return f"Polytope(n={self.n}, vertices={len(self.vertices)}, facets={len(self.facets)})"

    # -- duality ------------------------------------------------------------

    def dual(self) -> "Polytope":
        """The polytope {v : ⟨v, u⟩ ≥ −1 for all u here}; needs 0 interior."""
        if not self.has_zero_in_interior():
            raise ValueError("dual requires 0 in the interior")
        dual_vertices = [tuple(-Fraction(x) / c for x in w) for w, c in self.facets]
        dual_facets = []
        for u in self.vertices:
            wp = primitive_vector([-x for x in u])
            # −u = t·wp with t > 0; ⟨−u, v⟩ ≤ 1 becomes ⟨wp, v⟩ ≤ 1/t
            t = next(Fraction(-x) / w for x, w in zip(u, wp) if w != 0)
            dual_facets.append((wp, 1 / t))
        return Polytope(dual_vertices, dual_facets)

    # -- faces ---------------------------------------------------------------

    @cached_property
    def _face_lattice(self) -> dict[int, list[tuple[int, ...]]]:
        """All faces by dimension, each as a sorted vertex index tuple."""
        facet_sets = [frozenset(s) for s in self.facet_vertex_sets()]
        seen: set[frozenset[int]] = {frozenset(range(len(self.vertices)))}
        frontier = list(seen)
        while frontier:
            nxt = []
            for face in frontier:
                for fs in facet_sets:
                    cut = face & fs
                    if cut and cut not in seen:
                        seen.add(cut)
                        nxt.append(cut)
            frontier = nxt
        by_dim: dict[int, list[tuple[int, ...]]] = {}
        for face in seen:
            pts = [self.vertices[i] for i in face]
            d = affine_rank(pts)
            # a vertex set is a face only if it is cut out by the facets containing it
            tight = [fs for fs in facet_sets if face <= fs]
            closure = frozenset(range(len(self.vertices)))
            for fs in tight:
                closure = closure & fs
            if closure != face:
                continue
            by_dim.setdefault(d, []).append(tuple(sorted(face)))
        for d in by_dim:
            by_dim[d].sort()
        return by_dim

    def faces(self, k: int) -> list[tuple[int, ...]]:
        """All k-dimensional faces as vertex index tuples."""
        if not 0 <= k < self.n:
            raise ValueError(f"face dimension {k} out of range")
        return list(self._face_lattice.get(k, []))

    # -- metric quantities ----------------------------------------------------

    def triangulate(self) -> list[tuple[Point, ...]]:
        """Deterministic triangulation fanned from the lex-smallest vertex."""
        return _triangulate(list(self.vertices), self.n, self.facets)

    def volume(self) -> Fraction:
        """Lebesgue volume, normalized so the unit lattice cube has volume 1."""
        total = Fraction(0)
        for simplex in self.triangulate():
            base = simplex[0]
            mat = [[x - b for x, b in zip(v, base)] for v in simplex[1:]]
            total += abs(det(mat))
        return total / factorial(self.n)

    def integrate_linear_product(
        self, forms: Sequence[tuple[Sequence, Fraction]]
    ) -> Fraction:
        """Exact ∫ over the polytope of Π_k (⟨ℓ_k, x⟩ + c_k) dx.

        Each affine form restricted to a simplex is linear in barycentric
        coordinates, so the product expands into monomials t^a with
        ∫_Δ t^a = n!·vol(Δ)·(Π a_i!)/(n + Σ a_i)!.
        """
        n = self.n
        total = Fraction(0)
        for simplex in self.triangulate():
            base = simplex[0]
            mat = [[x - b for x, b in zip(v, base)] for v in simplex[1:]]
            vol = abs(det(mat)) / factorial(n)
            if vol == 0:
                continue
            # polynomial in t_0..t_n as {exponent tuple: coefficient}
            poly = {(0,) * (n + 1): Fraction(1)}
            for ell, const in forms:
                values = [_dot(ell, v) + Fraction(const) for v in simplex]
                new: dict[tuple[int, ...], Fraction] = {}
                for mono, coef in poly.items():
                    for i, a in enumerate(values):
                        if a == 0:
                            continue
                        m2 = list(mono)
                        m2[i] += 1
                        key = tuple(m2)
                        new[key] = new.get(key, Fraction(0)) + coef * a
                poly = new
            part = Fraction(0)
            for mono, coef in poly.items():
                s = sum(mono)
                num = 1
                for a in mono:
                    num *= factorial(a)
                part += coef * Fraction(num, 1) / Fraction(
                    factorial(n + s), factorial(n)
                )
            total += vol * part
        return total

    def lattice_points(self, scale: int = 1) -> list[tuple[int, ...]]:
        """All points of (1/scale)·Z^n inside, as integer vectors times scale."""
        if scale < 1:
            raise ValueError("scale must be a positive integer")
        los, his = [], []
        for j in range(self.n):
            coords = [v[j] * scale for v in self.vertices]
            los.append(ceil(min(coords)))
            his.append(floor(max(coords)))
        result = []
        for candidate in product(*(range(lo, hi + 1) for lo, hi in zip(los, his))):
            if all(_dot(w, candidate) <= c * scale for w, c in self.facets):
                result.append(candidate)
        result.sort()
        return result

    def interior_lattice_points(self, scale: int = 1) -> list[tuple[int, ...]]:
        return [
            p
            for p in self.lattice_points(scale)
            if all(_dot(w, p) < c * scale for w, c in self.facets)
        ]


def basic_feasible_points(rows: Sequence[tuple[Sequence, Fraction]]) -> list[Point]:
    """Feasible basic solutions of the system ⟨w, x⟩ ≥ c."""
    n = len(rows[0][0])
    candidates = set()
    for subset in combinations(range(len(rows)), n):
        a = [list(rows[i][0]) for i in subset]
        b = [rows[i][1] for i in subset]
        if rank(a) != n:
            continue
        x = solve_rational(a, b)
        if x is None:
            continue
        if all(sum(Fraction(wi) * xi for wi, xi in zip(w, x)) >= c for w, c in rows):
            candidates.add(tuple(x))
    return sorted(candidates)


def region_is_bounded(normals: Sequence[Sequence]) -> bool:
    """Whether {x : ⟨w, x⟩ ≥ c ∀w} is bounded: the normals positively span."""
    from .cones import Cone

    nonzero = [tuple(int(x) for x in primitive_vector(w)) for w in normals if any(w)]
    if not nonzero:
        return False
    cone = Cone(nonzero)
    n = len(nonzero[0])
    for i in range(n):
        for s in (1, -1):
            e = tuple(s if j == i else 0 for j in range(n))
            if not cone.contains(e):
                return False
    return True


def _hull2d(pts: list[Point]) -> list[Point]:
    """Monotone-chain hull; returns extreme points in ccw order."""

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _hull_brute(pts: list[Point], n: int) -> Polytope:
    """Hyperplane-enumeration hull for n in {3, 4}."""
    facets: set[tuple[tuple[int, ...], Fraction]] = set()
    for subset in combinations(pts, n):
        if affine_rank(list(subset)) != n - 1:
            continue
        base = subset[0]
        rows = [[x - b for x, b in zip(p, base)] for p in subset[1:]]
        kern = kernel_basis(rows)
        if len(kern) != 1:
            continue
        w = primitive_vector(kern[0])
        c = _dot(w, base)
        side = [_dot(w, p) - c for p in pts]
        if all(s <= 0 for s in side):
            facets.add((w, c))
        elif all(s >= 0 for s in side):
            facets.add((tuple(-x for x in w), -c))
    vertices = []
    for p in pts:
        tight = [w for w, c in facets if _dot(w, p) == c]
        if tight and rank(tight) == n:
            vertices.append(p)
    return Polytope(vertices, sorted(facets))


def _triangulate(vertices: list[Point], n: int, facets) -> list[tuple[Point, ...]]:
    if n == 1:
        return [tuple(vertices)]
    if len(vertices) == n + 1:
        return [tuple(vertices)]
    v0 = min(vertices)
    simplices = []
    for w, c in facets:
        if _dot(w, v0) == c:
            continue
        fverts = [v for v in vertices if _dot(w, v) == c]
        for s in _triangulate_lower(fverts):
            simplices.append((v0,) + s)
    return simplices


def _triangulate_lower(fverts: list[Point]) -> list[tuple[Point, ...]]:
    """Triangulate a lower-dimensional face via exact affine coordinates."""
    k = affine_rank(fverts)
    if len(fverts) == k + 1:
        return [tuple(sorted(fverts))]
    base = min(fverts)
    diffs = [[x - b for x, b in zip(v, base)] for v in fverts]
    basis: list[list[Fraction]] = []
    for d in diffs:
        if rank(basis + [d]) > len(basis):
            basis.append([Fraction(x) for x in d])
        if len(basis) == k:
            break
    bt = [[basis[j][i] for j in range(k)] for i in range(len(base))]
    mapped = {}
    for v in fverts:
        target = [x - b for x, b in zip(v, base)]
        y = solve_rational(bt, target)
        assert y is not None
        mapped[tuple(y)] = v
    sub = Polytope.hull(list(mapped.keys()))
    out = []
    for simplex in sub.triangulate():
        out.append(tuple(mapped[p] for p in simplex))
    return out
