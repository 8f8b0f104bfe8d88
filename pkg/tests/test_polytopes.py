import random
from fractions import Fraction as F

import pytest

from horofan.polytopes import Polytope, affine_rank, basic_feasible_points


def test_hull_simplex():
    t = Polytope.hull([(1, 0), (0, 1), (-1, -1)])
    assert len(t.vertices) == 3
    assert len(t.facets) == 3


def test_hull_drops_interior_points():
    sq = Polytope.hull([(1, 1), (1, -1), (-1, 1), (-1, -1), (0, 0)])
    assert len(sq.vertices) == 4


def test_hull_rational_triangle_matches_dual():
    t = Polytope.hull([(F(1, 2), 0), (0, F(1, 2)), (-1, -1)])
    assert t.dual() == Polytope.hull([(-2, -2), (-2, 3), (3, -2)])


def test_hull_rejects_degenerate():
    with pytest.raises(ValueError):
        Polytope.hull([(0, 0), (1, 1), (2, 2)])
    with pytest.raises(ValueError):
        Polytope.hull([])


def test_dual_examples():
    assert Polytope.hull([(-1,), (1,)]).dual() == Polytope.hull([(-1,), (1,)])
    assert Polytope.hull([(-1,), (F(1, 2),)]).dual() == Polytope.hull([(-2,), (1,)])
    square = Polytope.hull([(1, 1), (1, -1), (-1, 1), (-1, -1)])
    cross = Polytope.hull([(1, 0), (-1, 0), (0, 1), (0, -1)])
    assert square.dual() == cross
    assert cross.dual() == square


def test_dual_requires_interior_origin():
    shifted = Polytope.hull([(1, 0), (2, 0), (1, 1)])
    with pytest.raises(ValueError):
        shifted.dual()


def test_facet_vertex_duality_counts():
    p = Polytope.hull([(2, -1), (-1, 2), (-1, -1)])
    d = p.dual()
    assert len(p.facets) == len(d.vertices)
    assert len(p.vertices) == len(d.facets)


def test_lattice_points():
    seg = Polytope.hull([(-2,), (1,)])
    assert seg.lattice_points() == [(-2,), (-1,), (0,), (1,)]
    t = Polytope.hull([(1, 0), (0, 1), (-1, -1)])
    assert len(t.lattice_points()) == 4
    assert t.interior_lattice_points() == [(0, 0)]
    assert (1, 0) in t.lattice_points(2)  # the half point (1/2, 0)


def test_volume():
    assert Polytope.hull([(0, 0), (1, 0), (0, 1), (1, 1)]).volume() == 1
    assert Polytope.hull([(2, -1), (-1, 2), (-1, -1)]).volume() == F(9, 2)
    assert Polytope.hull([(-2,), (1,)]).volume() == 3
    cube = Polytope.hull(
        [(x, y, z) for x in (-1, 1) for y in (-1, 1) for z in (-1, 1)]
    )
    assert cube.volume() == 8


def test_volume_unimodular_invariance():
    rng = random.Random(3)
    base = Polytope.hull([(2, -1), (-1, 2), (-1, -1)])
    for _ in range(20):
        b = rng.randint(-3, 3)
        mat = [[1, b], [0, 1]] if rng.random() < 0.5 else [[1, 0], [b, 1]]
        image = Polytope.hull(
            [tuple(sum(mat[i][j] * v[j] for j in range(2)) for i in range(2)) for v in base.vertices]
        )
        assert image.volume() == base.volume()


def test_integrate_linear_product():
    seg = Polytope.hull([(-1,), (1,)])
    assert seg.integrate_linear_product([((1,), 2)]) == 4
    tri = Polytope.hull([(0, 0), (1, 0), (0, 1)])
    assert tri.integrate_linear_product([]) == F(1, 2)
    assert Polytope.hull([(-2,), (1,)]).integrate_linear_product([((1,), 2)]) == F(9, 2)
    # empty form list equals the volume
    sq = Polytope.hull([(1, 1), (1, -1), (-1, 1), (-1, -1)])
    assert sq.integrate_linear_product([]) == sq.volume()
    # product of two forms over the square: ∫(1+x)(1+y) = 4
    assert sq.integrate_linear_product([((1, 0), 1), ((0, 1), 1)]) == 4


def test_faces():
    sq = Polytope.hull([(1, 1), (1, -1), (-1, 1), (-1, -1)])
    assert len(sq.faces(1)) == 4
    assert len(sq.faces(0)) == 4
    tri = Polytope.hull([(1, 0), (0, 1), (-1, -1)])
    assert len(tri.faces(0)) == 3
    cube = Polytope.hull(
        [(x, y, z) for x in (-1, 1) for y in (-1, 1) for z in (-1, 1)]
    )
    assert len(cube.faces(2)) == 6
    assert all(len(f) == 4 for f in cube.faces(2))
    assert len(cube.faces(1)) == 12
    with pytest.raises(ValueError):
        cube.faces(3)


def test_asymmetric_3d_hull_orientation():
    # not centrally symmetric: orientation errors cannot hide here
    p = Polytope.hull([(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)])
    assert p.contains((0, 0, 0))
    assert p.has_zero_in_interior()
    assert p.strictly_contains((F(1, 4), F(1, 4), F(1, 4)))
    assert not p.contains((1, 1, 1))
    assert ((1, 1, 1), F(1)) in p.facets
    assert p.dual().dual() == p
    assert len(p.lattice_points()) == 5


def test_four_dimensional_cross_polytope():
    cross = Polytope.hull(
        [tuple(s if i == j else 0 for j in range(4)) for i in range(4) for s in (1, -1)]
    )
    assert len(cross.facets) == 16
    assert cross.volume() == F(2, 3)
    assert cross.dual().volume() == 16


def test_from_inequalities():
    sq = Polytope.from_inequalities(
        [((1, 0), -1), ((-1, 0), -1), ((0, 1), -1), ((0, -1), -1)]
    )
    assert sq == Polytope.hull([(1, 1), (1, -1), (-1, 1), (-1, -1)])
    with pytest.raises(ValueError):
        Polytope.from_inequalities([((1, 0), 0), ((0, 1), 0)])  # unbounded


def test_basic_feasible_points_degenerate():
    pts = basic_feasible_points([((1, 0), 0), ((-1, 0), 0), ((0, 1), 0), ((0, -1), 0)])
    assert pts == [(0, 0)]


def _random_zero_interior_polytope(rng, n):
    pool = [-2, -1, 1, 2]
    while True:
        count = rng.randint(n + 1, n + 3)
        pts = [tuple(F(rng.choice(pool)) for _ in range(n)) for _ in range(count)]
        if affine_rank(pts) != n:
            continue
        try:
            p = Polytope.hull(pts)
        except ValueError:
            continue
        if p.has_zero_in_interior():
            return p


def test_dual_dual_randomized():
    rng = random.Random(11)
    for _ in range(150):
        n = rng.choice([1, 2, 2, 3])
        p = _random_zero_interior_polytope(rng, n)
        assert p.dual().dual() == p
        assert len(p.facets) == len(p.dual().vertices)
