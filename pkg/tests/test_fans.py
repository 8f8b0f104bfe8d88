from fractions import Fraction as F

import pytest

from horofan.fans import (
    ColoredCone,
    ColoredFan,
    DegenerateSection,
    DivisorData,
    NotCartier,
    anticanonical_divisor,
    cartier_data,
    cartier_scale,
    face_fan_from_polytope,
    is_ample,
    is_complete,
    picard_number,
    section_polytope,
    validate_fan,
)
from horofan.polytopes import Polytope


def p2_fan(torus2):
    return face_fan_from_polytope(torus2, Polytope.hull([(1, 0), (0, 1), (-1, -1)]))


def test_face_fan_of_segment_with_color(sl2u):
    fan = face_fan_from_polytope(sl2u, Polytope.hull([(-1,), (F(1, 2),)]))
    assert len(fan.maximal) == 2
    assert fan.fan_colors == frozenset({0})
    assert fan.rays == ((-1,),)
    by_colors = {cc.colors: cc for cc in fan.maximal}
    assert by_colors[frozenset({0})].rays == ()
    assert by_colors[frozenset()].rays == ((-1,),)


def test_face_fan_toric_square(torus2):
    sq = Polytope.hull([(1, 1), (1, -1), (-1, 1), (-1, -1)])
    fan = face_fan_from_polytope(torus2, sq)
    assert len(fan.maximal) == 4
    assert all(cc.colors == frozenset() for cc in fan.maximal)
    assert len(fan.rays) == 4


def test_face_fan_sl3u_color_facet(sl3u):
    q = Polytope.hull([(F(1, 2), 0), (0, F(1, 2)), (-1, -1)])
    fan = face_fan_from_polytope(sl3u, q)
    assert len(fan.maximal) == 3
    both = [cc for cc in fan.maximal if cc.colors == frozenset({0, 1})]
    assert len(both) == 1 and both[0].rays == ()
    assert fan.rays == ((-1, -1),)


def test_face_fan_requires_interior_origin(torus2):
    shifted = Polytope.hull([(1, 0), (2, 0), (1, 1)])
    with pytest.raises(ValueError):
        face_fan_from_polytope(torus2, shifted)


def test_validate_and_complete(torus2, sl2u):
    fan = p2_fan(torus2)
    assert validate_fan(torus2, fan)
    assert is_complete(torus2, fan)
    quad = ColoredFan(torus2, [ColoredCone(((1, 0), (0, 1)), frozenset())])
    assert validate_fan(torus2, quad)
    assert not is_complete(torus2, quad)
    overlap = ColoredFan(
        torus2,
        [
            ColoredCone(((1, 0), (0, 1)), frozenset()),
            ColoredCone(((1, 1), (-1, 1)), frozenset()),
        ],
    )
    ok, problems = validate_fan(torus2, overlap, explain=True)
    assert not ok and problems
    segs = face_fan_from_polytope(sl2u, Polytope.hull([(-1,), (1,)]))
    assert is_complete(sl2u, segs)
    half = ColoredFan(sl2u, [ColoredCone(((1,),), frozenset())])
    assert not is_complete(sl2u, half)


def test_anticanonical_divisor(sl2u, torus2, sl3u):
    fan = face_fan_from_polytope(sl2u, Polytope.hull([(-1,), (F(1, 2),)]))
    div = anticanonical_divisor(sl2u, fan)
    assert div.ray_coeffs == (1,) and div.color_coeffs == (2,)
    toric = anticanonical_divisor(torus2, p2_fan(torus2))
    assert toric.ray_coeffs == (1, 1, 1) and toric.color_coeffs == ()
    q = Polytope.hull([(F(1, 2), 0), (0, F(1, 2)), (-1, -1)])
    fan3 = face_fan_from_polytope(sl3u, q)
    div3 = anticanonical_divisor(sl3u, fan3)
    assert div3.ray_coeffs == (1,) and div3.color_coeffs == (2, 2)


def test_cartier_toric_p2(torus2):
    fan = p2_fan(torus2)
    cert = cartier_data(torus2, fan, anticanonical_divisor(torus2, fan))
    assert not isinstance(cert, NotCartier)
    # the characters are minus the dual triangle's vertices
    assert sorted(cert.values()) == [(-2, 1), (1, -2), (1, 1)]


def test_not_cartier_on_weighted_plane(torus2):
    fan = face_fan_from_polytope(torus2, Polytope.hull([(1, 0), (0, 1), (-1, -2)]))
    coeffs = tuple(1 if r == (1, 0) else 0 for r in fan.rays)
    result = cartier_data(torus2, fan, DivisorData(coeffs, ()))
    assert isinstance(result, NotCartier)
    assert cartier_scale(torus2, fan, DivisorData(coeffs, ())) == 2


def test_zero_divisor_cartier(torus2):
    fan = p2_fan(torus2)
    zero = DivisorData((0, 0, 0), ())
    cert = cartier_data(torus2, fan, zero)
    assert cert == {0: (0, 0), 1: (0, 0), 2: (0, 0)}
    assert not is_ample(torus2, fan, zero, cert)
    section = section_polytope(torus2, fan, zero)
    assert isinstance(section, DegenerateSection)
    assert section.vertices == ((F(0), F(0)),)


def test_ample_anticanonical(sl2u, torus2):
    for space, poly in (
        (sl2u, Polytope.hull([(-1,), (F(1, 2),)])),
        (torus2, Polytope.hull([(1, 0), (0, 1), (-1, -1)])),
    ):
        fan = face_fan_from_polytope(space, poly)
        div = anticanonical_divisor(space, fan)
        cert = cartier_data(space, fan, div)
        assert is_ample(space, fan, div, cert)


def test_ruling_fiber_not_ample(torus2):
    cross = Polytope.hull([(1, 0), (-1, 0), (0, 1), (0, -1)])
    fan = face_fan_from_polytope(torus2, cross)
    assert fan.rays == ((-1, 0), (0, -1), (0, 1), (1, 0))
    div = DivisorData(tuple(1 if r == (1, 0) else 0 for r in fan.rays), ())
    assert sum(div.ray_coeffs) == 1
    cert = cartier_data(torus2, fan, div)
    assert not isinstance(cert, NotCartier)
    assert not is_ample(torus2, fan, div, cert)


def test_picard_numbers(sl2u, torus2):
    assert picard_number(sl2u, face_fan_from_polytope(sl2u, Polytope.hull([(-1,), (F(1, 2),)]))) == 1
    assert picard_number(sl2u, face_fan_from_polytope(sl2u, Polytope.hull([(-1,), (1,)]))) == 2
    assert picard_number(torus2, p2_fan(torus2)) == 1
    hexagon = Polytope.hull([(1, 0), (0, 1), (-1, 0), (0, -1), (1, -1), (-1, 1)])
    assert picard_number(torus2, face_fan_from_polytope(torus2, hexagon)) == 4


def test_picard_refuses_non_q_factorial():
    from horofan.spaces import toric_space

    t3 = toric_space(3)
    cube = Polytope.hull([(x, y, z) for x in (-1, 1) for y in (-1, 1) for z in (-1, 1)])
    fan = face_fan_from_polytope(t3, cube)
    with pytest.raises(ValueError, match="factorial"):
        picard_number(t3, fan)


def test_picard_refuses_incomplete(torus2):
    quad = ColoredFan(torus2, [ColoredCone(((1, 0), (0, 1)), frozenset())])
    with pytest.raises(ValueError, match="complete"):
        picard_number(torus2, quad)


def test_section_polytopes(sl2u, torus2):
    fan = face_fan_from_polytope(sl2u, Polytope.hull([(-1,), (F(1, 2),)]))
    sec = section_polytope(sl2u, fan, anticanonical_divisor(sl2u, fan))
    assert sec == Polytope.hull([(-2,), (1,)])
    fanp2 = p2_fan(torus2)
    sec2 = section_polytope(torus2, fanp2, anticanonical_divisor(torus2, fanp2))
    assert sec2 == Polytope.hull([(2, -1), (-1, 2), (-1, -1)])


def test_section_polytope_rejects_non_ample(torus2):
    cross = Polytope.hull([(1, 0), (-1, 0), (0, 1), (0, -1)])
    fan = face_fan_from_polytope(torus2, cross)
    div = DivisorData(tuple(1 if r == (1, 0) else 0 for r in fan.rays), ())
    with pytest.raises(ValueError, match="ample"):
        section_polytope(torus2, fan, div)


def test_picard_formula_on_enumerated_polytopes(enumerated):
    """ρ = (#vertices − n) + #colors − #(boundary color points), spot-checked."""
    for key in ("sl2u", "toric2"):
        space, classes = enumerated[key]
        for poly in classes:
            fan = face_fan_from_polytope(space, poly)
            boundary = {
                c.point
                for c in space.colors
                if any(c.vector) and poly.on_boundary(c.point)
            }
            r = len(poly.vertices) - space.n
            expected = r + space.num_colors - len(boundary)
            assert picard_number(space, fan) == expected


def test_fan_round_trip_recovers_polytope(sl2u, torus2, sl3u):
    for space, poly in (
        (sl2u, Polytope.hull([(-1,), (F(1, 2),)])),
        (torus2, Polytope.hull([(1, 0), (0, 1), (-1, -1)])),
        (sl3u, Polytope.hull([(F(1, 2), 0), (0, F(1, 2)), (-1, -1)])),
    ):
        fan = face_fan_from_polytope(space, poly)
        cert = cartier_data(space, fan, anticanonical_divisor(space, fan))
        rows = [(tuple(-x for x in chi), F(-1)) for chi in cert.values()]
        assert Polytope.from_inequalities(rows) == poly
