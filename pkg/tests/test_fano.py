from fractions import Fraction as F

import pytest

from horofan.fano import (
    build_report,
    degree,
    degree_value,
    finiteness_bound,
    is_locally_factorial,
    is_q_factorial,
    is_q_reflexive,
    is_reflexive,
    is_smooth,
    is_very_ample,
    verify_bounds,
)
from horofan.fans import anticanonical_divisor, face_fan_from_polytope
from horofan.polytopes import Polytope
from horofan.spaces import toric_space


def tri(*pts):
    return Polytope.hull(list(pts))


def test_reflexive_examples(sl2u, torus1, torus2):
    assert is_reflexive(sl2u, tri((-1,), (F(1, 2),)))
    assert is_reflexive(sl2u, tri((-1,), (1,)))
    assert not is_reflexive(torus1, tri((-2,), (1,)))  # dual has vertex -1/2
    assert not is_reflexive(sl2u, tri((-1,), (F(1, 3),)))  # vertex outside N ∪ points
    assert is_reflexive(torus2, tri((1, 0), (0, 1), (-1, -2)))


def test_color_point_membership_required(sl2u):
    # [-1, 1/3] has a bad vertex; [-1, 2/5]... build one missing the color point:
    # the segment [-2/..]-free case is rank 1 with point 1/2, so [-1, 1/4] fails (1)
    assert not is_reflexive(sl2u, tri((-1,), (F(1, 4),)))


def test_q_reflexive_examples(sl2u, torus1, torus2):
    assert is_q_reflexive(sl2u, tri((-1,), (F(1, 2),)))
    assert not is_q_reflexive(torus1, tri((-2,), (1,)))  # -2 is not primitive
    q = tri((1, 0), (0, 1), (-1, -3))
    assert is_q_reflexive(torus2, q) and not is_reflexive(torus2, q)


def test_locally_factorial_examples(torus2, sl3u, sl2sl2):
    assert is_locally_factorial(torus2, tri((1, 0), (0, 1), (-1, -1)))
    assert not is_locally_factorial(torus2, tri((1, 0), (0, 1), (-1, -2)))
    q = tri((F(1, 2), 0), (0, F(1, 2)), (-1, -1))
    assert is_locally_factorial(sl3u, q)
    assert is_locally_factorial(sl2sl2, q)


def test_smooth_examples(sl2u, sl3u, sl2sl2, torus2):
    assert is_smooth(sl2u, tri((-1,), (F(1, 2),)))
    assert is_smooth(sl2u, tri((-1,), (1,)))
    q = tri((F(1, 2), 0), (0, F(1, 2)), (-1, -1))
    assert is_smooth(sl2sl2, q)
    assert not is_smooth(sl3u, q)
    # toric: smooth iff locally factorial
    for poly in (tri((1, 0), (0, 1), (-1, -1)), tri((1, 0), (0, 1), (-1, -2))):
        assert is_smooth(torus2, poly) == is_locally_factorial(torus2, poly)


def test_q_factorial_examples(torus2):
    t3 = toric_space(3)
    cube = Polytope.hull([(x, y, z) for x in (-1, 1) for y in (-1, 1) for z in (-1, 1)])
    assert not is_q_factorial(t3, cube)
    assert is_q_factorial(torus2, tri((1, 0), (0, 1), (-1, -2)))
    assert not is_locally_factorial(torus2, tri((1, 0), (0, 1), (-1, -2)))


def test_boundary_color_point_must_be_vertex(sl2sl2):
    # both color points sit on the boundary edge x+y = 1/2... use the square
    # through (1/2,0),(0,1/2) with lattice vertices: the points are edge-interior
    q = Polytope.hull([(1, -1), (-1, 1), (1, 0), (0, 1), (-1, -1)])
    on_edge = [p for p in ((F(1, 2), 0), (0, F(1, 2))) if q.on_boundary(p)]
    if on_edge:
        assert not is_q_factorial(sl2sl2, q) or all(
            p in q.vertices for p in on_edge
        )


def test_degrees(sl2u, torus1, torus2, sl3u, sl2sl2):
    assert degree(torus1, tri((-1,), (1,))) == 2
    assert degree(sl2u, tri((-1,), (F(1, 2),))) == 9
    assert degree(sl2u, tri((-1,), (1,))) == 8
    assert degree(torus2, tri((1, 0), (0, 1), (-1, -1))) == 9
    q = tri((F(1, 2), 0), (0, F(1, 2)), (-1, -1))
    assert degree(sl2sl2, q) == 625
    assert degree(sl3u, q) == 6250
    with pytest.raises(ValueError):
        degree(torus1, tri((-2,), (1,)))


def test_degree_by_hand_antiderivative(sl2u):
    # (−K)^2 = 2·∫_{-2}^{1}(2+t)dt and 2·∫_{-1}^{1}(2+t)dt, done by hand
    def integral(a, b):
        prim = lambda t: 2 * t + F(t * t, 2)
        return prim(b) - prim(a)

    assert 2 * integral(F(-2), F(1)) == 9
    assert 2 * integral(F(-1), F(1)) == 8
    assert degree_value(sl2u, tri((-1,), (F(1, 2),))) == 9
    assert degree_value(sl2u, tri((-1,), (1,))) == 8


def test_very_ample_examples(torus2):
    for poly in (tri((1, 0), (0, 1), (-1, -1)), tri((1, 0), (0, 1), (-1, -2))):
        fan = face_fan_from_polytope(torus2, poly)
        assert is_very_ample(torus2, fan, anticanonical_divisor(torus2, fan))


def test_very_ample_requires_ample(torus2):
    from horofan.fans import DivisorData

    sq = Polytope.hull([(1, 1), (1, -1), (-1, 1), (-1, -1)])
    fan = face_fan_from_polytope(torus2, sq)
    div = DivisorData(tuple(1 if r == (1, 0) else 0 for r in fan.rays), ())
    with pytest.raises(ValueError):
        is_very_ample(torus2, fan, div)


def test_bounds_satisfied(sl2u, sl2sl2, sl3u, torus2):
    cases = [
        (sl2u, tri((-1,), (F(1, 2),))),
        (sl2u, tri((-1,), (1,))),
        (sl2sl2, tri((F(1, 2), 0), (0, F(1, 2)), (-1, -1))),
        (sl3u, tri((F(1, 2), 0), (0, F(1, 2)), (-1, -1))),
        (torus2, tri((1, 0), (0, 1), (-1, -1))),
    ]
    for space, poly in cases:
        checks = verify_bounds(space, poly)
        assert checks and all(c.satisfied for c in checks), (space, poly.vertices)


def test_bounds_degree_row_values(sl2u):
    checks = {c.name: c for c in verify_bounds(sl2u, tri((-1,), (F(1, 2),)))}
    row = checks["degree_le_factorial_pow"]
    assert row.lhs == 9 and row.rhs == 54  # 2!·3^(2·1+1)
    assert checks["c_le_d"].lhs == 2 and checks["c_le_d"].rhs == 2


def test_hexagon_extremal_picard(torus2):
    hexagon = Polytope.hull([(1, 0), (0, 1), (-1, 0), (0, -1), (1, -1), (-1, 1)])
    assert is_smooth(torus2, hexagon)
    checks = {c.name: c for c in verify_bounds(torus2, hexagon)}
    assert checks["picard_le_2n_plus_colors"].lhs == 4  # = 2d, the extremal case
    assert checks["picard_le_2n_plus_colors"].satisfied


def test_finiteness_bound_values(sl2u, torus1, sl2sl2):
    fb = finiteness_bound(sl2u)
    assert fb.volume_bound == 21**4 == 194481
    assert fb.factor == 2 * 194481
    assert fb.exp2 == 2 * (2 * 194481) ** 2
    assert str(fb) == "388962 * 2^302582874888"
    assert finiteness_bound(torus1).volume_bound == 14**4 == 38416
    fb2 = finiteness_bound(sl2sl2)
    # independent two-step evaluation: V then the two factors
    V = (7 * (4 + 1)) ** (2 * 2**3)
    base = 2 * 4 * V
    assert fb2.volume_bound == V
    assert fb2.factor == base**3
    assert fb2.exp2 == 4 * base**3


def test_report_spec_examples(sl2u, sl3u, torus2):
    rep = build_report(sl2u, tri((-1,), (F(1, 2),)))
    assert rep.reflexive and rep.smooth
    assert rep.degree == 9 and rep.picard == 1 and rep.very_ample_anticanonical
    rep2 = build_report(sl3u, tri((F(1, 2), 0), (0, F(1, 2)), (-1, -1)))
    assert rep2.locally_factorial and not rep2.smooth
    rep3 = build_report(torus2, tri((1, 0), (0, 1), (-1, -2)))
    assert rep3.reflexive and rep3.q_factorial and not rep3.locally_factorial
    assert all(c.satisfied for c in rep3.bound_checks if c.name != "degree_le_factorial_pow")


def test_report_scaled_q_fano(torus2):
    rep = build_report(torus2, tri((1, 0), (0, 1), (-1, -3)))
    assert rep.q_reflexive and not rep.reflexive
    assert rep.degree_scale == 3
    assert rep.degree == 75  # (3·(−K))² on P(1,1,3), whose (−K)² = 25/3
    assert rep.picard == 1
    assert rep.very_ample_anticanonical is None


def test_report_rejects_dimension_mismatch(sl2u):
    with pytest.raises(ValueError):
        build_report(sl2u, tri((1, 0), (0, 1), (-1, -1)))
