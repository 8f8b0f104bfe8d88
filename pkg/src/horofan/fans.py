"""Colored cones and fans: the embedding classifier and its divisor calculus.

A colored cone pairs a strictly convex rational cone with a set of colors
whose images it contains; a colored fan is a compatible finite family of
them.  Cartier data, ampleness, Picard numbers, and section polytopes are
all exact linear algebra over the ray and color vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .cones import Cone, integer_kernel_basis
from .linalg import (
    kernel_basis,
    hnf,
    hnf_pivots,
    primitive_vector,
    rank,
    solve_integer,
)
from .polytopes import Polytope, affine_rank, basic_feasible_points
from .spaces import HoroSpace


def _dot(a, b) -> Fraction:
    return sum(Fraction(x) * Fraction(y) for x, y in zip(a, b))


@dataclass(frozen=True)
class ColoredCone:
    """Primitive ray generators (not arising from colors) plus color labels."""

    rays: tuple[tuple[int, ...], ...]
    colors: frozenset[int]

    def generators(self, space: HoroSpace) -> list[tuple[int, ...]]:
        gens = list(self.rays)
        for c in space.colors:
            if c.root_index in self.colors:
                gens.append(c.vector)
        return gens


@dataclass(frozen=True)
class DivisorData:
    """Integer coefficients on the fan's colorless rays and on ALL colors."""

    ray_coeffs: tuple[int, ...]
    color_coeffs: tuple[int, ...]


class NotCartier:
    """Classification outcome: no integral per-cone character exists."""

    def __init__(self, cone_index: int, reason: str):
        self.cone_index = cone_index
        self.reason = reason

    def __repr__(self) -> str:
        return f"NotCartier(cone {self.cone_index}: {self.reason})"


CartierCertificate = dict[int, tuple[int, ...]]


@dataclass(frozen=True)
class DegenerateSection:
    """Section polytope that collapsed to a single character."""

    vertices: tuple[tuple[Fraction, ...], ...]


class ColoredFan:
    """A finite family of maximal colored cones over a fixed space."""

    def __init__(self, space: HoroSpace, maximal: Sequence[ColoredCone]):
        self.space = space
        self.maximal = tuple(maximal)
        if not self.maximal:
            raise ValueError("fan needs at least one maximal cone")
        self._geom = [Cone(c.generators(space)) for c in self.maximal]

    def geometric(self, i: int) -> Cone:
        return self._geom[i]

    @property
    def fan_colors(self) -> frozenset[int]:
        out: frozenset[int] = frozenset()
        for c in self.maximal:
            out |= c.colors
        return out

    @property
    def rays(self) -> tuple[tuple[int, ...], ...]:
        """Extreme rays not arising from a fan color (the G-stable rays x_i)."""
        color_rays = {
            primitive_vector(c.vector)
            for c in self.space.colors
            if c.root_index in self.fan_colors and any(c.vector)
        }
        out = set()
        for g in self._geom:
            for r in g.extreme_rays:
                if r not in color_rays:
                    out.add(r)
        return tuple(sorted(out))


def face_fan_from_polytope(space: HoroSpace, poly: Polytope) -> ColoredFan:
    """One maximal colored cone per facet of a 0-interior polytope.

    The colors of the cone over a facet are the colors whose marked point
    α̌_M/a_α lies on that facet.
    """
    if poly.n != space.n:
        raise ValueError("polytope dimension does not match space rank")
    if not poly.has_zero_in_interior():
        raise ValueError("face fan requires 0 in the interior")
    boundary_points = {
        c.point for c in space.colors if any(c.vector) and poly.on_boundary(c.point)
    }
    cones = []
    for w, c_off in poly.facets:
        verts = [v for v in poly.vertices if _dot(w, v) == c_off]
        colors = frozenset(
            c.root_index
            for c in space.colors
            if any(c.vector) and poly.contains(c.point) and _dot(w, c.point) == c_off
        )
        rays = tuple(
            sorted(primitive_vector(v) for v in verts if v not in boundary_points)
        )
        cones.append(ColoredCone(rays, colors))
    return ColoredFan(space, cones)


# -- validity and completeness ----------------------------------------------


def _ambient_rows(cone: Cone) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """(equations, inequalities) cutting the cone out of ambient space."""
    n = cone.n
    if cone.dim == n:
        return [], list(cone._span_facets)
    eqs = [primitive_vector(e) for e in kernel_basis(cone.generators)]
    basis = cone._span_basis
    cols = [[basis[j][i] for j in range(len(basis))] for i in range(n)]
    h, u = hnf(cols)
    assert all(h[i][j] == int(i == j) for i, j in hnf_pivots(h))
    lifted = []
    for w in cone._span_facets:
        amb = tuple(
            sum(w[j] * u[j][i] for j in range(len(basis))) for i in range(n)
        )
        lifted.append(primitive_vector(amb) if any(amb) else amb)
    return eqs, lifted


def cone_intersection_rays(c1: Cone, c2: Cone) -> list[tuple[int, ...]]:
    """Extreme rays of the intersection of two pointed cones."""
    n = c1.n
    eqs1, ineq1 = _ambient_rows(c1)
    eqs2, ineq2 = _ambient_rows(c2)
    rows: list[tuple[int, ...]] = []
    for e in eqs1 + eqs2:
        rows.append(tuple(e))
        rows.append(tuple(-x for x in e))
    rows.extend(tuple(w) for w in ineq1 + ineq2)
    rows = sorted(set(rows))

    def feasible(d) -> bool:
        return all(_dot(r, d) >= 0 for r in rows)

    rays = set()
    if n == 1:
        for d in ((1,), (-1,)):
            if feasible(d):
                rays.add(d)
        return sorted(rays)
    for subset in combinations(rows, n - 1):
        if rank(subset) != n - 1:
            continue
        kern = kernel_basis(list(subset))
        if len(kern) != 1:
            continue
        d = primitive_vector(kern[0])
        if feasible(d):
            rays.add(d)
        neg = tuple(-x for x in d)
        if feasible(neg):
            rays.add(neg)
    return sorted(rays)


def _minimal_face_rays(cone: Cone, rays: Sequence[tuple[int, ...]]) -> tuple:
    """Extreme rays of the smallest face of cone containing the given rays."""
    if not rays:
        return ()
    coords = [cone._to_span_coords(r) for r in rays]
    assert all(y is not None for y in coords)
    tight = [w for w in cone._span_facets if all(_dot(w, y) == 0 for y in coords)]
    out = []
    for g, y in zip(cone.generators, cone._span_gens):
        if g in cone.extreme_rays and all(_dot(w, y) == 0 for w in tight):
            out.append(g)
    return tuple(sorted(out))


def validate_fan(space: HoroSpace, fan: ColoredFan, explain: bool = False):
    """Strict convexity, color containment, face compatibility, disjoint interiors."""
    problems: list[str] = []
    for i, cc in enumerate(fan.maximal):
        geom = fan.geometric(i)
        for alpha in cc.colors:
            color = next(c for c in space.colors if c.root_index == alpha)
            if not any(color.vector):
                problems.append(f"cone {i}: color {alpha} has image 0")
        if not geom.is_pointed:
            problems.append(f"cone {i} contains a line")
    for i, j in combinations(range(len(fan.maximal)), 2):
        gi, gj = fan.geometric(i), fan.geometric(j)
        if not (gi.is_pointed and gj.is_pointed):
            continue
        meet = cone_intersection_rays(gi, gj)
        face_i = _minimal_face_rays(gi, meet)
        face_j = _minimal_face_rays(gj, meet)
        if not (set(face_i) == set(meet) == set(face_j)):
            problems.append(f"cones {i} and {j} do not intersect in a common face")
            continue
        ci = {a for a in fan.maximal[i].colors if _color_in(space, a, meet, gi)}
        cj = {a for a in fan.maximal[j].colors if _color_in(space, a, meet, gj)}
        if ci != cj:
            problems.append(f"cones {i} and {j} induce different colors on their common face")
    if explain:
        return not problems, problems
    return not problems


def _color_in(space: HoroSpace, alpha: int, rays, geom: Cone) -> bool:
    color = next(c for c in space.colors if c.root_index == alpha)
    if not rays:
        return False
    face = Cone(rays)
    return face.contains(color.vector)


def is_complete(space: HoroSpace, fan: ColoredFan) -> bool:
    """Completeness by wall pairing: every facet of a maximal cone is shared."""
    if not validate_fan(space, fan):
        return False
    n = space.n
    walls: dict[tuple, list[int]] = {}
    for i in range(len(fan.maximal)):
        geom = fan.geometric(i)
        if geom.dim != n or not geom.is_pointed:
            return False
        for wall in geom.facet_ray_sets():
            walls.setdefault(tuple(sorted(wall)), []).append(i)
    if any(len(owners) != 2 for owners in walls.values()):
        return False
    # connectivity through shared walls
    adjacency: dict[int, set[int]] = {i: set() for i in range(len(fan.maximal))}
    for owners in walls.values():
        a, b = owners
        adjacency[a].add(b)
        adjacency[b].add(a)
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in adjacency[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(fan.maximal)


# -- divisors ------------------------------------------------------------------


def anticanonical_divisor(space: HoroSpace, fan: ColoredFan) -> DivisorData:
    """Coefficient 1 on every G-stable ray, a_α on every color."""
    return DivisorData(
        ray_coeffs=(1,) * len(fan.rays),
        color_coeffs=tuple(c.a for c in space.colors),
    )


def cartier_data(
    space: HoroSpace, fan: ColoredFan, div: DivisorData
) -> CartierCertificate | NotCartier:
    """Per maximal cone, an integral character matching the divisor, if any."""
    rays = fan.rays
    if len(div.ray_coeffs) != len(rays) or len(div.color_coeffs) != len(space.colors):
        raise ValueError("divisor coefficients misaligned with fan rays or colors")
    cert: CartierCertificate = {}
    for i, cc in enumerate(fan.maximal):
        geom = fan.geometric(i)
        rows: list[list[int]] = []
        rhs: list[int] = []
        for r, b in zip(rays, div.ray_coeffs):
            if geom.contains(r):
                rows.append(list(r))
                rhs.append(b)
        for c, b in zip(space.colors, div.color_coeffs):
            if c.root_index in cc.colors:
                rows.append(list(c.vector))
                rhs.append(b)
        if not rows:
            cert[i] = (0,) * space.n
            continue
        chi = solve_integer(rows, rhs)
        if chi is None:
            return NotCartier(i, "no integral character solves the cone's system")
        cert[i] = chi
    return cert


def cartier_scale(space: HoroSpace, fan: ColoredFan, div: DivisorData) -> Optional[int]:
    """Least k ≥ 1 with k·div Cartier, or None if not even Q-Cartier.

    Maximal cones of a complete fan determine their characters uniquely
    over the rationals, so k is the lcm of the solution denominators.
    """
    from math import lcm

    from .linalg import solve_rational

    k = 1
    for i, cc in enumerate(fan.maximal):
        geom = fan.geometric(i)
        rows: list[list[int]] = []
        rhs: list[int] = []
        for r, b in zip(fan.rays, div.ray_coeffs):
            if geom.contains(r):
                rows.append(list(r))
                rhs.append(b)
        for c, b in zip(space.colors, div.color_coeffs):
            if c.root_index in cc.colors:
                rows.append(list(c.vector))
                rhs.append(b)
        if not rows:
            continue
        chi = solve_rational(rows, rhs)
        if chi is None:
            return None
        for i2 in range(len(rows)):
            if sum(Fraction(rows[i2][j]) * chi[j] for j in range(space.n)) != rhs[i2]:
                return None
        for x in chi:
            k = lcm(k, Fraction(x).denominator)
    return k


def is_ample(
    space: HoroSpace, fan: ColoredFan, div: DivisorData, cert: CartierCertificate
) -> bool:
    """Strict convexity of the support function plus strict color bounds."""
    if not is_complete(space, fan):
        raise ValueError("ampleness is defined here only for complete fans")
    m = len(fan.maximal)
    for i in range(m):
        gens_i = fan.maximal[i].generators(space)
        for j in range(m):
            if i == j:
                continue
            geom_j = fan.geometric(j)
            strict_any = False
            for g in gens_i:
                if geom_j.contains(g):
                    continue
                strict_any = True
                if _dot(cert[i], g) <= _dot(cert[j], g):
                    return False
            if not strict_any:
                return False  # cone i inside cone j: not even a fan of distinct cones
    for i, cc in enumerate(fan.maximal):
        for c, b in zip(space.colors, div.color_coeffs):
            if c.root_index not in cc.colors:
                if _dot(cert[i], c.vector) >= b:
                    return False
    return True


def is_q_factorial_fan(space: HoroSpace, fan: ColoredFan) -> bool:
    """Every maximal cone simplicial, counting color vectors as constraints."""
    for i, cc in enumerate(fan.maximal):
        geom = fan.geometric(i)
        vectors = set(geom.extreme_rays)
        vectors.update(
            tuple(c.vector) for c in space.colors if c.root_index in cc.colors
        )
        vec_list = sorted(vectors)
        if rank(vec_list) != len(vec_list):
            return False
    return True


def picard_number(space: HoroSpace, fan: ColoredFan) -> int:
    """ρ = m + #(S∖I) − n with m the number of colorless rays.

    Refuses (raises ValueError) unless the fan is complete and every
    maximal cone is simplicial, the regime where the formula is asserted.
    """
    if not is_complete(space, fan):
        raise ValueError("Picard number formula needs a complete fan")
    if not is_q_factorial_fan(space, fan):
        raise ValueError("Picard number formula needs a Q-factorial fan")
    return len(fan.rays) + space.num_colors - space.n


def section_polytope(
    space: HoroSpace, fan: ColoredFan, div: DivisorData
) -> Polytope | DegenerateSection:
    """{χ : ⟨χ, x_i⟩ ≥ −b_i, ⟨χ, α̌_M⟩ ≥ −b_α}, cross-checked against conv{−χ_C}.

    For an ample Cartier divisor the two descriptions agree; a mismatch
    raises, signalling a non-ample input.
    """
    cert = cartier_data(space, fan, div)
    if isinstance(cert, NotCartier):
        raise ValueError(f"divisor is not Cartier: {cert!r}")
    rows: list[tuple[tuple[int, ...], Fraction]] = []
    for r, b in zip(fan.rays, div.ray_coeffs):
        rows.append((r, Fraction(-b)))
    for c, b in zip(space.colors, div.color_coeffs):
        if any(c.vector):
            rows.append((tuple(c.vector), Fraction(-b)))
    neg_chis = sorted({tuple(Fraction(-x) for x in cert[i]) for i in cert})
    if not rows:
        raise ValueError("divisor has no constraints")
    if affine_rank(neg_chis) == space.n:
        poly = Polytope.from_inequalities(rows)
        expected = Polytope.hull(neg_chis)
        if poly != expected:
            raise ValueError(
                "divisor is not ample: inequality and character descriptions disagree"
            )
        return poly
    candidates = basic_feasible_points(rows)
    if candidates == neg_chis and len(neg_chis) == 1:
        # tight degenerate case, e.g. the zero divisor
        return DegenerateSection((neg_chis[0],))
    raise ValueError("divisor is not ample: section polytope is degenerate")
