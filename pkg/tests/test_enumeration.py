import os
import subprocess
import sys
from fractions import Fraction as F

from horofan.enumeration import classify_classes, enumerate_reflexive
from horofan.fano import is_reflexive
from horofan.spaces import toric_space


def test_sl2u_segments(enumerated):
    space, classes = enumerated["sl2u"]
    assert len(classes) == 2
    vertex_sets = {p.vertices for p in classes}
    assert ((F(-1),), (F(1, 2),)) in vertex_sets
    assert ((F(-1),), (F(1),)) in vertex_sets


def test_toric_rank1():
    t1 = toric_space(1)
    classes = enumerate_reflexive(t1)
    assert len(classes) == 1
    assert classes[0].vertices == ((F(-1),), (F(1),))


def test_toric_rank2_counts(enumerated):
    space, classes = enumerated["toric2"]
    counts = classify_classes(space, classes)
    assert counts == {"total": 16, "smooth": 5, "locfac": 5, "qfact": 16}


def test_enumerated_classes_are_reflexive_and_canonical(enumerated):
    for key in ("sl2u", "toric2"):
        space, classes = enumerated[key]
        for poly in classes:
            assert is_reflexive(space, poly)
            assert space.canonicalize_colored(poly) == poly


def test_enumeration_deterministic(enumerated):
    space, classes = enumerated["toric2"]
    again = enumerate_reflexive(space)
    assert [p.vertices for p in again] == [p.vertices for p in classes]


def test_explicit_box_is_monotone(torus2):
    small = {p.vertices for p in enumerate_reflexive(torus2, box_bound=2)}
    large = {p.vertices for p in enumerate_reflexive(torus2, box_bound=3)}
    assert small <= large


def test_worker_count_invariance(torus2):
    script = (
        "import sys\n"
        "from horofan.spaces import toric_space\n"
        "from horofan.enumeration import enumerate_reflexive\n"
        "for p in enumerate_reflexive(toric_space(2), box_bound=3):\n"
        "    print(p.vertices)\n"
    )
    outputs = []
    for workers in ("1", "3"):
        env = dict(os.environ, HOROFAN_WORKERS=workers)
        proc = subprocess.run(
            [sys.executable, "-c", script], capture_output=True, text=True, env=env
        )
        assert proc.returncode == 0, proc.stderr
        outputs.append(proc.stdout)
    assert outputs[0] == outputs[1]
    assert outputs[0].count("\n") == 16


def test_rank3_best_effort_growth():
    t3 = toric_space(3)
    classes = enumerate_reflexive(t3, box_bound=1)
    assert classes, "box-1 toric rank 3 enumeration found nothing"
    for poly in classes:
        assert is_reflexive(t3, poly)
        assert t3.canonicalize_colored(poly) == poly
    # the cube and the simplex conv{e1,e2,e3,-(1,1,1)} are both in the unit box
    from horofan.polytopes import Polytope

    cube = t3.canonicalize_colored(
        Polytope.hull([(x, y, z) for x in (-1, 1) for y in (-1, 1) for z in (-1, 1)])
    )
    simplex = t3.canonicalize_colored(
        Polytope.hull([(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)])
    )
    found = {p.vertices for p in classes}
    assert cube.vertices in found
    assert simplex.vertices in found
