"""Horospherical homogeneous spaces as lattice-plus-parabolic data.

A space is the pair (M, I): a subset I of the simple roots and a basis of
a sublattice M of the character lattice orthogonal to the coroots of I.
Everything the classification needs is derived here: the color vectors in
N (dual coordinates to the M basis), their anticanonical coefficients,
rank, dimension, and the canonicalization of polytopes under lattice
automorphisms fixing every color.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import permutations, product
from math import ceil, floor, gcd, lcm
from typing import Iterable, Sequence

from .linalg import (
    det,
    hnf,
    hnf_pivots,
    invert,
    kernel_basis,
    mat_mul,
    mat_vec,
    primitive_vector,
    rank,
)
from .polytopes import Polytope
from .roots import RootSystem, Weight


@dataclass(frozen=True)
class Color:
    """One color: its simple root, image vector in N, and coefficient a."""

    root_index: int
    vector: tuple[int, ...]
    a: int

    @property
    def point(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self.a) for x in self.vector)


class HoroSpace:
    """The combinatorial avatar (M, I) of a horospherical space G/H."""

    def __init__(self, rs: RootSystem, I: Iterable[int], M_basis: Sequence[Weight]):
        self.rs = rs
        self.I = frozenset(I)
        for i in self.I:
            rs.check_index(i)
        basis = tuple(M_basis)
        for mu in basis:
            if len(mu.fund) != rs.s or len(mu.torus) != rs.torus_rank:
                raise ValueError("basis weight has wrong coordinate lengths")
            for x in list(mu.fund) + list(mu.torus):
                if Fraction(x).denominator != 1:
                    raise ValueError("M basis rows must be integral")
            for i in sorted(self.I):
                if mu.fund[i] != 0:
                    raise ValueError(
                        f"basis weight {mu} pairs nontrivially with coroot {i} of I"
                    )
        rows = [list(mu.fund) + list(mu.torus) for mu in basis]
        if rows and rank(rows) != len(basis):
            raise ValueError("M basis rows are linearly dependent")
        self.M_basis = basis
        self.n = len(basis)

        free = sorted(set(range(rs.s)) - self.I)
        two_rho = rs.two_rho_parabolic(self.I)
        self.colors: tuple[Color, ...] = tuple(
            Color(
                alpha,
                tuple(int(mu.fund[alpha]) for mu in basis),
                int(rs.pair_weight_simple_coroot(two_rho, alpha)),
            )
            for alpha in free
        )
        for c in self.colors:
            assert c.a >= 2

        self.flag_dim = len(rs.roots_outside(self.I))
        self.d = self.n + self.flag_dim
        self.C_const = self.n + sum(c.a - 1 for c in self.colors)
        self.a_prod = 1
        for c in self.colors:
            self.a_prod *= c.a
        self.denom = 1
        for c in self.colors:
            self.denom = lcm(self.denom, c.a)

    def __repr__(self) -> str:
        factors = "x".join(f"{t}{r}" for t, r in self.rs.factors) or "torus"
        return f"HoroSpace({factors}+T{self.rs.torus_rank}, I={sorted(self.I)}, n={self.n})"

    @property
    def num_colors(self) -> int:
        return len(self.colors)

    def color_points(self) -> list[tuple[Fraction, ...]]:
        return [c.point for c in self.colors]

    def distinct_color_points(self) -> list[tuple[Fraction, ...]]:
        return sorted({c.point for c in self.colors})

    def max_a(self, default: int = 1) -> int:
        return max((c.a for c in self.colors), default=default)

    # -- canonicalization under automorphisms fixing every color ------------

    @cached_property
    def _color_span_rank(self) -> int:
        vectors = [c.vector for c in self.colors if any(c.vector)]
        return rank(vectors) if vectors else 0

    @cached_property
    def _adapted_basis_change(self) -> tuple[list[list[int]], list[list[Fraction]]]:
        """Unimodular T sending the saturated color span onto the first
        l coordinates, together with T^{-1}."""
        from .cones import integer_kernel_basis

        vectors = [list(c.vector) for c in self.colors if any(c.vector)]
        l = self._color_span_rank
        n = self.n
        assert 0 < l < n
        eqs = [primitive_vector(e) for e in kernel_basis(vectors)]
        span_basis = integer_kernel_basis(eqs)
        # complete: rows of B are the saturated basis; U·(columns B) = [I; 0]
        cols = [[span_basis[j][i] for j in range(l)] for i in range(n)]
        h, u = hnf(cols)
        assert all(h[i][j] == int(i == j) for i, j in hnf_pivots(h))
        t = u
        t_inv = invert(t)
        return t, t_inv

    def automorphism_fixes_colors(self, a: Sequence[Sequence[int]]) -> bool:
        for c in self.colors:
            if tuple(mat_vec(a, c.vector)) != tuple(c.vector):
                return False
        return True

    def auto_canonicalize(self, poly: Polytope) -> Polytope:
        """Canonical orbit representative under {A ∈ GL(N) : A fixes each color}.

        Idempotent; two polytopes canonicalize equally iff some color-fixing
        lattice automorphism maps one onto the other.  The representative
        minimizes (max |coordinate|, sorted vertex list) over the orbit,
        searched over a provably sufficient finite window.
        """
        if poly.n != self.n:
            raise ValueError("polytope dimension does not match space rank")
        l = self._color_span_rank
        n = self.n
        if l == n:
            return poly
        if l == 0:
            return _canonicalize_full_gl(poly)
        if n - l == 1:
            return _canonicalize_shear(self, poly)
        raise NotImplementedError(
            "canonicalization with color-span codimension ≥ 2 is not supported"
        )

    @cached_property
    def color_permutation_maps(self) -> list[list[list[int]]]:
        """Unimodular maps permuting the color vectors compatibly.

        One representative per realizable permutation of the colors that
        preserves the coefficients a; the identity comes first.  Together
        with the color-fixing stabilizer these generate every lattice
        automorphism preserving the colored structure.
        """
        from itertools import permutations as iperm

        vectors = [c.vector for c in self.colors if any(c.vector)]
        coeffs = [c.a for c in self.colors if any(c.vector)]
        n = self.n
        identity = [[int(i == j) for j in range(n)] for i in range(n)]
        if not vectors:
            return [identity]
        pivots = []
        for j, v in enumerate(vectors):
            if rank([vectors[i] for i in pivots] + [v]) > len(pivots):
                pivots.append(j)
        l = len(pivots)
        maps: list[list[list[int]]] = []
        seen: set[tuple] = set()
        for perm in iperm(range(len(vectors))):
            if any(coeffs[perm[j]] != coeffs[j] for j in range(len(vectors))):
                continue
            a = _realize_color_map(self, vectors, perm, pivots, l)
            if a is None:
                continue
            key = tuple(tuple(row) for row in a)
            if key not in seen:
                seen.add(key)
                maps.append(a)
        assert any(m == identity for m in maps)
        maps.sort(key=lambda m: (m != identity, tuple(map(tuple, m))))
        return maps

    def canonicalize_colored(self, poly: Polytope) -> Polytope:
        """Canonical representative under all automorphisms preserving the
        colored structure (color permutations allowed)."""
        best = None
        best_key = None
        for a in self.color_permutation_maps:
            moved = Polytope.hull([mat_vec(a, v) for v in poly.vertices])
            candidate = self.auto_canonicalize(moved)
            key = _polytope_key(candidate)
            if best_key is None or key < best_key:
                best_key = key
                best = candidate
        assert best is not None
        return best


def build_space(rs: RootSystem, I: Iterable[int], M_basis: Sequence[Weight]) -> HoroSpace:
    return HoroSpace(rs, I, M_basis)


def toric_space(n: int) -> HoroSpace:
    """The rank-n torus: no simple factors, no colors."""
    rs = RootSystem([], torus_rank=n)
    return HoroSpace(rs, [], [rs.torus_character(k) for k in range(n)])


def _polytope_key(poly: Polytope):
    scale = 1
    for v in poly.vertices:
        for x in v:
            scale = lcm(scale, Fraction(x).denominator)
    scaled = sorted(tuple(int(x * scale) for x in v) for v in poly.vertices)
    return (max(abs(x) for v in scaled for x in v), scale, tuple(scaled))


def _realize_color_map(space, vectors, perm, pivots, l):
    """A unimodular matrix sending each color vector to its permuted image,
    identity on a complement of the color span; None if impossible."""
    n = space.n
    cols = [[Fraction(vectors[j][i]) for j in pivots] for i in range(n)]
    target = [[Fraction(vectors[perm[j]][i]) for j in pivots] for i in range(n)]
    # linear map on the span: L·(pivot columns) = (permuted pivot columns)
    if l == n:
        inv = invert(cols)
        lmap = mat_mul(target, inv)
    else:
        t, t_inv = space._adapted_basis_change
        # span coordinates of pivot vectors and their images
        src = [mat_vec(t, [vectors[j][i] for i in range(n)])[:l] for j in pivots]
        dst = [mat_vec(t, [vectors[perm[j]][i] for i in range(n)])[:l] for j in pivots]
        src_cols = [[src[j][i] for j in range(l)] for i in range(l)]
        dst_cols = [[dst[j][i] for j in range(l)] for i in range(l)]
        lmap_span = mat_mul(dst_cols, invert(src_cols))
        block = [
            [lmap_span[i][j] if i < l and j < l else Fraction(int(i == j)) for j in range(n)]
            for i in range(n)
        ]
        lmap = mat_mul(mat_mul(t_inv, block), t)
    a = []
    for row in lmap:
        arow = []
        for x in row:
            x = Fraction(x)
            if x.denominator != 1:
                return None
            arow.append(int(x))
        a.append(arow)
    if abs(det(a)) != 1:
        return None
    for j, v in enumerate(vectors):
        if tuple(mat_vec(a, v)) != tuple(vectors[perm[j]]):
            return None
    return a


def _scaled_vertex_matrix(poly: Polytope) -> tuple[int, list[list[int]]]:
    scale = 1
    for v in poly.vertices:
        for x in v:
            scale = lcm(scale, Fraction(x).denominator)
    cols = [[int(x * scale) for x in v] for v in poly.vertices]
    mat = [[cols[j][i] for j in range(len(cols))] for i in range(poly.n)]
    return scale, mat


def _boundary_cycle(poly: Polytope) -> list[int]:
    """Vertex indices of a polygon in cyclic boundary order."""
    edges = poly.facet_vertex_sets()
    adj: dict[int, list[int]] = {}
    for a, b in edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    start = 0
    cycle = [start]
    prev = None
    while True:
        nxt = [w for w in adj[cycle[-1]] if w != prev]
        prev = cycle[-1]
        if nxt[0] == start:
            break
        cycle.append(nxt[0])
    return cycle


def _canonicalize_full_gl(poly: Polytope) -> Polytope:
    """Canonical form under all of GL(n, Z): minimal HNF of the vertex
    matrix over the orbit-invariant set of column orders."""
    scale, mat = _scaled_vertex_matrix(poly)
    n = poly.n
    k = len(poly.vertices)
    if n == 2:
        cycle = _boundary_cycle(poly)
        orders = []
        for shift in range(len(cycle)):
            rot = cycle[shift:] + cycle[:shift]
            orders.append(rot)
            orders.append(list(reversed(rot)))
    elif n == 1:
        orders = [list(range(k)), list(reversed(range(k)))]
    else:
        orders = [list(p) for p in permutations(range(k))]
    best = None
    for order in orders:
        arranged = [[mat[i][j] for j in order] for i in range(n)]
        h, _ = hnf(arranged)
        key = tuple(tuple(row) for row in h)
        if best is None or key < best:
            best = key
    verts = [
        tuple(Fraction(best[i][j], scale) for i in range(n)) for j in range(k)
    ]
    return Polytope.hull(verts)


def _canonicalize_shear(space: HoroSpace, poly: Polytope) -> Polytope:
    """Canonical form when the color span has codimension one.

    In an adapted basis the stabilizer is x ↦ (u + b·y, ε·y) with b ∈ Z^l
    and ε = ±1; the (max-abs, sorted-vertices) key makes a finite window
    of b provably contain the minimum.
    """
    t, t_inv = space._adapted_basis_change
    n = space.n
    l = n - 1
    scale = 1
    for v in poly.vertices:
        for x in v:
            scale = lcm(scale, Fraction(x).denominator)
    adapted = [tuple(x * scale for x in mat_vec(t, v)) for v in poly.vertices]
    m0 = max(abs(x) for v in adapted for x in v)
    ys = [v[l] for v in adapted]

    def window(i: int) -> range:
        lo, hi = None, None
        for v in adapted:
            y = v[l]
            if y == 0:
                continue
            a = Fraction(-m0 - v[i], y)
            b = Fraction(m0 - v[i], y)
            a, b = min(a, b), max(a, b)
            lo = a if lo is None else max(lo, a)
            hi = b if hi is None else min(hi, b)
        if lo is None:
            return range(0, 1)
        return range(ceil(lo), floor(hi) + 1)

    best_key = None
    best_vertices = None
    windows = [window(i) for i in range(l)]
    for eps in (1, -1):
        for b in product(*windows):
            moved = sorted(
                tuple(v[i] + b[i] * v[l] for i in range(l)) + (eps * v[l],)
                for v in adapted
            )
            key = (max(abs(x) for v in moved for x in v), tuple(moved))
            if best_key is None or key < best_key:
                best_key = key
                best_vertices = moved
    assert best_vertices is not None
    verts = [
        tuple(x for x in mat_vec(t_inv, [Fraction(c, scale) for c in v]))
        for v in best_vertices
    ]
    return Polytope.hull(verts)
