"""Fano classification layer: reflexivity, smoothness, degree, bounds.

All predicates read a candidate polytope Q in N-coordinates against a
fixed horospherical space; the Fano embedding itself is only ever touched
through its combinatorial avatar (Q, face fan, divisor data).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Optional

from .cones import Cone, hilbert_basis
from .fans import (
    ColoredFan,
    DivisorData,
    NotCartier,
    anticanonical_divisor,
    cartier_data,
    cartier_scale,
    face_fan_from_polytope,
    is_ample,
    picard_number,
    section_polytope,
)
from .linalg import det, is_primitive
from .polytopes import Polytope
from .spaces import HoroSpace


def _is_integral(v) -> bool:
    return all(Fraction(x).denominator == 1 for x in v)


def _boundary_color_points(space: HoroSpace, poly: Polytope) -> set:
    return {
        c.point
        for c in space.colors
        if any(c.vector) and poly.on_boundary(c.point)
    }


def is_reflexive(space: HoroSpace, poly: Polytope) -> bool:
    """Vertices in N ∪ {color points}, 0 interior, integral dual,
    and every color point inside."""
    if poly.n != space.n:
        raise ValueError("polytope dimension does not match space rank")
    if not poly.has_zero_in_interior():
        return False
    points = set(space.color_points())
    for v in poly.vertices:
        if not _is_integral(v) and v not in points:
            return False
    if any(not poly.contains(p) for p in points):
        return False
    return all(_is_integral(v) for v in poly.dual().vertices)


def is_q_reflexive(space: HoroSpace, poly: Polytope) -> bool:
    """Vertices primitive in N or color points, 0 interior, color points inside."""
    if poly.n != space.n:
        raise ValueError("polytope dimension does not match space rank")
    if not poly.has_zero_in_interior():
        return False
    points = set(space.color_points())
    for v in poly.vertices:
        if v in points:
            continue
        if not _is_integral(v) or not is_primitive([int(x) for x in v]):
            return False
    return all(poly.contains(p) for p in points)


def _facet_vertex_scale(space: HoroSpace, poly: Polytope, v) -> Optional[int]:
    """The multiplier a_u of a facet vertex: 1 for lattice vertices, a_α for
    the unique color sitting at the vertex; None when ill-formed."""
    matching = [
        c for c in space.colors if any(c.vector) and c.point == v
    ]
    if matching:
        if len(matching) > 1:
            return None
        return matching[0].a
    if _is_integral(v):
        return 1
    return None


def is_locally_factorial(space: HoroSpace, poly: Polytope) -> bool:
    """Every facet a simplex whose scaled vertex system is a basis of N,
    with color points appearing only as vertices, one color per point."""
    if not poly.has_zero_in_interior():
        return False
    n = poly.n
    boundary_points = _boundary_color_points(space, poly)
    for w, off in poly.facets:
        verts = [v for v in poly.vertices if sum(Fraction(a) * b for a, b in zip(w, v)) == off]
        for p in boundary_points:
            if sum(Fraction(a) * b for a, b in zip(w, p)) == off and p not in verts:
                return False
        if len(verts) != n:
            return False
        scaled = []
        for v in verts:
            a = _facet_vertex_scale(space, poly, v)
            if a is None:
                return False
            scaled.append([int(a * x) for x in v])
        if abs(det(scaled)) != 1:
            return False
    return True


def is_smooth(space: HoroSpace, poly: Polytope) -> bool:
    """Locally factorial and every facet's color set forms a smooth pair with I."""
    if not is_locally_factorial(space, poly):
        return False
    for w, off in poly.facets:
        J = {
            c.root_index
            for c in space.colors
            if any(c.vector)
            and poly.contains(c.point)
            and sum(Fraction(a) * b for a, b in zip(w, c.point)) == off
        }
        if not space.rs.is_pair_smooth(space.I, J):
            return False
    return True


def is_q_factorial(space: HoroSpace, poly: Polytope) -> bool:
    """Every face a simplex; color points on the boundary are vertices."""
    if not poly.has_zero_in_interior():
        return False
    n = poly.n
    for tight in poly.facet_vertex_sets():
        if len(tight) != n:
            return False
    vertex_set = set(poly.vertices)
    for p in _boundary_color_points(space, poly):
        if p not in vertex_set:
            return False
    return True


# -- degree ---------------------------------------------------------------------


def degree_forms(space: HoroSpace) -> list[tuple[tuple[Fraction, ...], Fraction]]:
    """One affine form per positive root outside I, in M-coordinates.

    For β with coroot height h = ⟨ρ^B, β̌⟩ the form is
    (⟨2ρ^P, β̌⟩ + ⟨χ, β̌⟩)/h as a function of χ ∈ M_R.
    """
    rs = space.rs
    two_rho = rs.two_rho_parabolic(space.I)
    forms = []
    for beta in rs.roots_outside(space.I):
        h = Fraction(sum(beta.cocoeffs))
        const = Fraction(rs.pair_weight_coroot(two_rho, beta)) / h
        ell = tuple(
            Fraction(rs.pair_weight_coroot(mu, beta)) / h for mu in space.M_basis
        )
        forms.append((ell, const))
    return forms


def degree_value(space: HoroSpace, poly: Polytope) -> Fraction:
    """d! times the exact integral of the degree integrand over the dual."""
    dual = poly.dual()
    return factorial(space.d) * dual.integrate_linear_product(degree_forms(space))


def degree(space: HoroSpace, poly: Polytope) -> int:
    """The anticanonical self-intersection number of the Fano embedding."""
    if not is_reflexive(space, poly):
        raise ValueError("degree of the anticanonical divisor needs a reflexive polytope")
    value = degree_value(space, poly)
    assert value.denominator == 1 and value > 0, value
    return int(value)


# -- very-ampleness -----------------------------------------------------------


def is_very_ample(space: HoroSpace, fan: ColoredFan, div: DivisorData) -> bool:
    """Corner-monoid generation test at every vertex of the section polytope."""
    cert = cartier_data(space, fan, div)
    if isinstance(cert, NotCartier):
        raise ValueError(f"divisor is not Cartier: {cert!r}")
    if not is_ample(space, fan, div, cert):
        raise ValueError("very-ampleness test requires an ample divisor")
    section = section_polytope(space, fan, div)
    assert isinstance(section, Polytope)
    lattice = set(section.lattice_points(1))
    for v in section.vertices:
        assert _is_integral(v)
        vi = tuple(int(x) for x in v)
        others = [
            tuple(int(x) - y for x, y in zip(u, vi))
            for u in section.vertices
            if u != v
        ]
        corner = Cone(others)
        shifted = {tuple(p - y for p, y in zip(q, vi)) for q in lattice}
        for h in hilbert_basis(corner):
            if h not in shifted:
                return False
    return True


# -- bound verification ---------------------------------------------------------


@dataclass(frozen=True)
class BoundCheck:
    name: str
    satisfied: bool
    lhs: object
    rhs: object


def verify_bounds(space: HoroSpace, poly: Polytope) -> list[BoundCheck]:
    """Exact evaluation of the published inequalities this polytope must satisfy.

    Degree and dual-volume rows are emitted only for locally factorial
    polytopes, Picard rows only for Q-factorial ones, matching the
    hypotheses under which they are asserted.
    """
    if not is_reflexive(space, poly):
        raise ValueError("bound verification needs a reflexive polytope")
    checks: list[BoundCheck] = []
    n, d, C = space.n, space.d, space.C_const
    checks.append(BoundCheck("c_le_d", C <= d, C, d))
    sum_a = sum(c.a - 1 for c in space.colors)
    checks.append(
        BoundCheck("color_excess_le_flag_dim", sum_a <= space.flag_dim, sum_a, space.flag_dim)
    )
    locfac = is_locally_factorial(space, poly)
    qfact = is_q_factorial(space, poly)
    r = len(poly.vertices) - n
    max_a = space.max_a()
    if qfact:
        fan = face_fan_from_polytope(space, poly)
        rho = picard_number(space, fan)
        bound1 = 2 * n + space.num_colors
        checks.append(BoundCheck("picard_le_2n_plus_colors", rho <= bound1, rho, bound1))
        checks.append(BoundCheck("colors_le_n_plus_d", bound1 <= n + d, bound1, n + d))
        checks.append(BoundCheck("n_plus_d_le_2d", n + d <= 2 * d, n + d, 2 * d))
    if locfac:
        deg = degree_value(space, poly)
        fan = face_fan_from_polytope(space, poly)
        rho = picard_number(space, fan)
        if rho > 1:
            rhs = factorial(d) * d ** (d * rho + n)
            checks.append(BoundCheck("degree_le_factorial_pow", deg <= rhs, deg, rhs))
        else:
            rhs = factorial(d) * (d + 1) ** (d + n)
            checks.append(BoundCheck("degree_le_factorial_pow", deg <= rhs, deg, rhs))
        vol = poly.dual().volume()
        if rho >= 2:
            vrhs = Fraction(C**r * max_a) ** n
        else:
            vrhs = Fraction((C + 1) * max_a) ** n
        checks.append(BoundCheck("dual_volume_bound", vol <= vrhs, vol, vrhs))
        if r >= 2:
            worst = None
            dual = poly.dual()
            for u in poly.vertices:
                a_u = _facet_vertex_scale(space, poly, u)
                assert a_u is not None
                for v in dual.vertices:
                    val = a_u * (1 + sum(Fraction(a) * b for a, b in zip(v, u)))
                    worst = val if worst is None else max(worst, val)
                    if val < 0:
                        checks.append(BoundCheck("vertex_pairing_nonneg", False, val, 0))
            rhs2 = Fraction(C) ** r
            checks.append(
                BoundCheck("vertex_pairing_le_c_pow_r", worst <= rhs2, worst, rhs2)
            )
    return checks


# -- finiteness bound --------------------------------------------------------------


@dataclass(frozen=True)
class FinitenessBound:
    """Exact value  factor · 2^exp2  of the classification-count bound.

    The power of two is kept in exponent form: already for rank one the
    plain integer has tens of billions of digits.
    """

    factor: int
    exp2: int
    volume_bound: int

    def __str__(self) -> str:
        return f"{self.factor} * 2^{self.exp2}"


def finiteness_bound(space: HoroSpace) -> FinitenessBound:
    """Bound on the number of Fano embedding classes for this space."""
    n, a = space.n, space.a_prod
    if n < 1:
        raise ValueError("finiteness bound needs rank at least 1")
    V = (7 * (a + 1)) ** (n * 2 ** (n + 1))
    base = factorial(n) * a * V
    return FinitenessBound(
        factor=base ** (n * (n + 1) // 2),
        exp2=2**n * base ** (n + 1),
        volume_bound=V,
    )


# -- aggregated report -----------------------------------------------------------


@dataclass
class FanoReport:
    reflexive: bool
    q_reflexive: bool
    locally_factorial: bool
    smooth: bool
    q_factorial: bool
    degree: Optional[int] = None
    degree_scale: Optional[int] = None
    picard: Optional[int] = None
    very_ample_anticanonical: Optional[bool] = None
    bound_checks: list[BoundCheck] = None  # type: ignore[assignment]

    def __post_init__(self):
        if self.bound_checks is None:
            self.bound_checks = []
        assert not self.smooth or self.locally_factorial
        assert not self.locally_factorial or self.q_factorial or not self.reflexive
        assert not self.reflexive or self.q_reflexive


def build_report(space: HoroSpace, poly: Polytope) -> FanoReport:
    """Classify one polytope completely."""
    if poly.n != space.n:
        raise ValueError("polytope dimension does not match space rank")
    reflexive = is_reflexive(space, poly)
    q_reflexive = is_q_reflexive(space, poly)
    locfac = is_locally_factorial(space, poly) if q_reflexive else False
    smooth = is_smooth(space, poly) if locfac else False
    qfact = is_q_factorial(space, poly) if q_reflexive else False
    report = FanoReport(
        reflexive=reflexive,
        q_reflexive=q_reflexive,
        locally_factorial=locfac,
        smooth=smooth,
        q_factorial=qfact,
    )
    if not q_reflexive:
        return report
    fan = face_fan_from_polytope(space, poly)
    minus_k = anticanonical_divisor(space, fan)
    if qfact:
        report.picard = picard_number(space, fan)
    if reflexive:
        report.degree = degree(space, poly)
        report.degree_scale = 1
        report.very_ample_anticanonical = is_very_ample(space, fan, minus_k)
        report.bound_checks = verify_bounds(space, poly)
        return report
    k = cartier_scale(space, fan, minus_k)
    if k is not None and k > 1:
        value = Fraction(k) ** space.d * degree_value(space, poly)
        assert value.denominator == 1 and value > 0
        report.degree = int(value)
        report.degree_scale = k
    return report
