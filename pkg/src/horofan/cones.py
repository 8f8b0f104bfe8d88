"""Pointed rational cones and Hilbert bases of their lattice-point monoids."""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from math import ceil, floor
from typing import Sequence

from .linalg import (
    hnf,
    kernel_basis,
    primitive_vector,
    rank,
    solve_rational,
)


def _dot(a: Sequence, b: Sequence) -> Fraction:
    return sum(Fraction(x) * Fraction(y) for x, y in zip(a, b))


def integer_kernel_basis(rows: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Z-basis of the integer kernel {x : A x = 0} via column reduction."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    at = [[int(rows[i][j]) for i in range(m)] for j in range(n)]
    h, u = hnf(at)  # h = u · A^T, so A · u^T has columns h's rows transposed
    basis = []
    for j in range(n):
        if all(h[j][i] == 0 for i in range(m)):
            basis.append(tuple(u[j][i] for i in range(n)))
    return basis


class Cone:
    """The nonnegative span of finitely many integer vectors."""

    def __init__(self, generators: Sequence[Sequence[int]]):
        gens = sorted({primitive_vector(g) for g in generators if any(x != 0 for x in g)})
        if not gens:
            raise ValueError("cone needs at least one nonzero generator")
        self.n = len(gens[0])
        self.generators: tuple[tuple[int, ...], ...] = tuple(gens)

    def __repr__(self) -> str:
        return f"Cone({list(self.generators)})"

    @cached_property
    def dim(self) -> int:
        return rank(self.generators)

    @cached_property
    def _span_basis(self) -> list[tuple[int, ...]]:
        """Basis of the saturated lattice span ∩ Z^n."""
        if self.dim == self.n:
            return [tuple(int(i == j) for j in range(self.n)) for i in range(self.n)]
        eqs = kernel_basis(self.generators)
        int_eqs = [primitive_vector(e) for e in eqs]
        return integer_kernel_basis(int_eqs)

    def _to_span_coords(self, v: Sequence) -> tuple[Fraction, ...] | None:
        """Coordinates of v in the span basis, or None if v is off the span."""
        basis = self._span_basis
        cols = [[Fraction(basis[j][i]) for j in range(len(basis))] for i in range(self.n)]
        y = solve_rational(cols, [Fraction(x) for x in v])
        if y is None:
            return None
        # consistency: the system may be overdetermined
        for i in range(self.n):
            if sum(cols[i][j] * y[j] for j in range(len(basis))) != Fraction(v[i]):
                return None
        return tuple(y)

    @cached_property
    def _span_gens(self) -> list[tuple[Fraction, ...]]:
        out = []
        for g in self.generators:
            y = self._to_span_coords(g)
            assert y is not None
            out.append(y)
        return out

    @cached_property
    def _span_facets(self) -> list[tuple[int, ...]]:
        """Facet normals in span coordinates: cone = {y : ⟨w, y⟩ ≥ 0 ∀w}."""
        d = self.dim
        gens = self._span_gens
        if d == 1:
            signs = {1 if g[0] > 0 else -1 for g in gens}
            if len(signs) == 2:
                return []  # the cone is a full line
            return [(signs.pop(),)]
        normals: set[tuple[int, ...]] = set()
        for subset in combinations(gens, d - 1):
            if rank(subset) != d - 1:
                continue
            kern = kernel_basis(list(subset))
            if len(kern) != 1:
                continue
            w = primitive_vector(kern[0])
            side = [_dot(w, g) for g in gens]
            if all(s >= 0 for s in side):
                normals.add(w)
            elif all(s <= 0 for s in side):
                normals.add(tuple(-x for x in w))
        return sorted(normals)

    def contains(self, v: Sequence) -> bool:
        if all(Fraction(x) == 0 for x in v):
            return True
        y = self._to_span_coords(v)
        if y is None:
            return False
        return all(_dot(w, y) >= 0 for w in self._span_facets)

    def strictly_contains(self, v: Sequence) -> bool:
        """Membership in the relative interior."""
        y = self._to_span_coords(v)
        if y is None:
            return False
        return all(_dot(w, y) > 0 for w in self._span_facets)

    @cached_property
    def is_pointed(self) -> bool:
        """No line inside: the facet normals span the span."""
        return rank(self._span_facets) == self.dim

    @cached_property
    def extreme_rays(self) -> tuple[tuple[int, ...], ...]:
        """Primitive generators of the 1-faces, in ambient coordinates."""
        if not self.is_pointed:
            raise ValueError("extreme rays of a non-pointed cone")
        rays = []
        for g, y in zip(self.generators, self._span_gens):
            tight = [w for w in self._span_facets if _dot(w, y) == 0]
            if rank(tight) == self.dim - 1:
                rays.append(g)
        return tuple(sorted(set(rays)))

    def facet_ray_sets(self) -> list[tuple[tuple[int, ...], ...]]:
        """Extreme-ray set of each facet subcone (for fan wall pairing)."""
        out = []
        for w in self._span_facets:
            tight = tuple(
                sorted(
                    g
                    for g, y in zip(self.generators, self._span_gens)
                    if g in self.extreme_rays and _dot(w, y) == 0
                )
            )
            out.append(tight)
        return out

    def is_simplicial(self) -> bool:
        return self.is_pointed and len(self.extreme_rays) == self.dim

    def _simplicial_subcones(self) -> list[tuple[tuple[int, ...], ...]]:
        """Triangulate into simplicial subcones fanned from the first ray."""
        rays = list(self.extreme_rays)
        d = self.dim
        if len(rays) == d:
            return [tuple(rays)]
        assert d == self.n, "triangulation implemented for full-dimensional cones"
        r0 = rays[0]
        subcones = []
        for w in self._span_facets:
            if _dot(w, r0) == 0:
                continue
            wall = [g for g in rays if _dot(w, g) == 0]
            sub = Cone(wall)
            for piece in sub._lower_simplices():
                subcones.append((r0,) + piece)
        return subcones

    def _lower_simplices(self) -> list[tuple[tuple[int, ...], ...]]:
        if len(self.extreme_rays) == self.dim:
            return [tuple(self.extreme_rays)]
        rays = list(self.extreme_rays)
        r0 = rays[0]
        out = []
        for w in self._span_facets:
            gens_y = dict(zip(self.generators, self._span_gens))
            if _dot(w, gens_y[r0]) == 0:
                continue
            wall = [g for g in rays if _dot(w, gens_y[g]) == 0]
            for piece in Cone(wall)._lower_simplices():
                out.append((r0,) + piece)
        return out


def hilbert_basis(cone: Cone) -> list[tuple[int, ...]]:
    """Minimal generating set of the monoid of lattice points of a pointed cone.

    Candidates are the primitive extreme rays plus the lattice points of
    the half-open fundamental parallelepiped of every simplicial subcone;
    an element is dropped iff it splits as a sum of two nonzero monoid
    elements, tested against the candidate set.
    """
    if not cone.is_pointed:
        raise ValueError("Hilbert basis requires a pointed cone")
    if cone.dim < cone.n:
        # work inside the saturated span lattice, then map back
        basis = cone._span_basis
        sub = Cone([cone._to_span_coords(g) for g in cone.generators])
        sub_hb = hilbert_basis(sub)
        out = [
            tuple(sum(basis[j][i] * y[j] for j in range(len(basis))) for i in range(cone.n))
            for y in sub_hb
        ]
        return sorted(out)

    candidates: set[tuple[int, ...]] = set(cone.extreme_rays)
    for simplex in cone._simplicial_subcones():
        candidates.update(_parallelepiped_points(simplex))
    candidates.discard((0,) * cone.n)
    cand = sorted(candidates)
    result = []
    for x in cand:
        reducible = False
        for y in cand:
            if y == x:
                continue
            z = tuple(a - b for a, b in zip(x, y))
            if any(z) and cone.contains(z):
                reducible = True
                break
        if not reducible:
            result.append(x)
    return result


def _parallelepiped_points(gens: Sequence[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Lattice points of {Σ t_i g_i : 0 ≤ t_i < 1} for independent gens."""
    n = len(gens[0])
    cols = [[Fraction(gens[j][i]) for j in range(len(gens))] for i in range(n)]
    los, his = [], []
    for i in range(n):
        corner_coords = [
            sum(cols[i][j] * e[j] for j in range(len(gens)))
            for e in product((0, 1), repeat=len(gens))
        ]
        los.append(ceil(min(corner_coords)))
        his.append(floor(max(corner_coords)))
    points = []
    for candidate in product(*(range(lo, hi + 1) for lo, hi in zip(los, his))):
        t = solve_rational(cols, [Fraction(c) for c in candidate])
        if t is None:
            continue
        if any(
            sum(cols[i][j] * t[j] for j in range(len(gens))) != candidate[i]
            for i in range(n)
        ):
            continue
        if all(0 <= ti < 1 for ti in t):
            points.append(candidate)
    return points
