"""Root systems, Dynkin diagrams, and the combinatorics derived from them.

A reductive group is presented as an ordered product of simple factors
plus a central torus.  Simple roots follow Bourbaki numbering inside each
factor; factors are concatenated in declaration order.  Every positive
root is stored together with the expansion of its coroot in simple
coroots, so all pairings ⟨·,·̌⟩ are exact integer computations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .linalg import IntMatrix

LEGAL_TYPES = {"A", "B", "C", "D", "E", "F", "G"}


def _check_factor(typ: str, rank: int) -> None:
    ok = (
        (typ == "A" and rank >= 1)
        or (typ in ("B", "C") and rank >= 2)
        or (typ == "D" and rank >= 3)
        or (typ == "E" and rank in (6, 7, 8))
        or (typ == "F" and rank == 4)
        or (typ == "G" and rank == 2)
    )
    if not ok:
        raise ValueError(f"illegal simple factor {typ}{rank}")


def cartan_matrix(typ: str, rank: int) -> IntMatrix:
    """Bourbaki Cartan matrix with C[i][j] = ⟨α_{j+1}, coroot(α_{i+1})⟩."""
    _check_factor(typ, rank)
    c = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]

    def edge(i, j, cij=-1, cji=-1):
        c[i][j] = cij
        c[j][i] = cji

    if typ in ("A", "B", "C"):
        for i in range(rank - 1):
            edge(i, i + 1)
        if typ == "B" and rank >= 2:
            # α_rank is short: ⟨α_{r-1}, coroot(α_r)⟩ = -2
            edge(rank - 2, rank - 1, cij=-1, cji=-2)
        if typ == "C" and rank >= 2:
            # α_rank is long
            edge(rank - 2, rank - 1, cij=-2, cji=-1)
    elif typ == "D":
        for i in range(rank - 2):
            edge(i, i + 1)
        edge(rank - 3, rank - 1)
    elif typ == "E":
        chain = [0] + list(range(2, rank))
        for a, b in zip(chain, chain[1:]):
            edge(a, b)
        edge(1, 3)
    elif typ == "F":
        edge(0, 1)
        edge(1, 2, cij=-1, cji=-2)  # α1, α2 long; α3, α4 short
        edge(2, 3)
    elif typ == "G":
        edge(0, 1, cij=-3, cji=-1)  # α1 short, α2 long
    return c


POSITIVE_ROOT_COUNT = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "G": lambda n: 6,
}


@dataclass(frozen=True)
class PositiveRoot:
    """A positive root β with its coroot's expansion in simple coroots.

    ``coeffs``: β = Σ coeffs[j]·α_j,  ``cocoeffs``: β̌ = Σ cocoeffs[j]·α̌_j;
    both are global (length s) with support inside one factor.
    """

    coeffs: tuple[int, ...]
    cocoeffs: tuple[int, ...]
    factor: int

    @property
    def height(self) -> int:
        return sum(self.coeffs)


@dataclass(frozen=True)
class Weight:
    """A character in fundamental-weight plus torus coordinates."""

    fund: tuple
    torus: tuple = ()

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(
            tuple(a + b for a, b in zip(self.fund, other.fund)),
            tuple(a + b for a, b in zip(self.torus, other.torus)),
        )

    def scale(self, k) -> "Weight":
        return Weight(tuple(k * a for a in self.fund), tuple(k * a for a in self.torus))


def _factor_positive_roots(cartan: IntMatrix) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All positive roots of one simple factor as (coeffs, cocoeffs) pairs.

    The full root set is the Weyl orbit of the simple roots; reflections
    act on the root and its coroot simultaneously, which keeps the
    β ↔ β̌ correspondence exact.
    """
    rank = len(cartan)
    simples = []
    for i in range(rank):
        e = tuple(int(i == j) for j in range(rank))
        simples.append((e, e))
    seen = set(simples)
    frontier = list(simples)
    while frontier:
        nxt = []
        for c, d in frontier:
            for k in range(rank):
                pairing_root = sum(c[j] * cartan[k][j] for j in range(rank))
                pairing_coroot = sum(d[j] * cartan[j][k] for j in range(rank))
                c2 = tuple(c[j] if j != k else c[j] - pairing_root for j in range(rank))
                d2 = tuple(d[j] if j != k else d[j] - pairing_coroot for j in range(rank))
                if (c2, d2) not in seen:
                    seen.add((c2, d2))
                    nxt.append((c2, d2))
        frontier = nxt
    positive = [(c, d) for c, d in seen if all(x >= 0 for x in c)]
    positive.sort(key=lambda cd: (sum(cd[0]), cd[0]))
    return positive


class RootSystem:
    """Root data for a product of simple factors and a central torus."""

    def __init__(self, factors: Sequence[tuple[str, int]], torus_rank: int = 0):
        if torus_rank < 0:
            raise ValueError("torus rank must be nonnegative")
        for typ, rank in factors:
            _check_factor(typ, rank)
        self.factors = tuple((typ, int(rank)) for typ, rank in factors)
        self.torus_rank = int(torus_rank)
        self.s = sum(rank for _, rank in self.factors)
        self.factor_offsets = []
        off = 0
        for _, rank in self.factors:
            self.factor_offsets.append(off)
            off += rank

        self.cartan: IntMatrix = [[0] * self.s for _ in range(self.s)]
        for f, (typ, rank) in enumerate(self.factors):
            block = cartan_matrix(typ, rank)
            o = self.factor_offsets[f]
            for i in range(rank):
                for j in range(rank):
                    self.cartan[o + i][o + j] = block[i][j]

        self.positive_roots: list[PositiveRoot] = []
        for f, (typ, rank) in enumerate(self.factors):
            o = self.factor_offsets[f]
            for c, d in _factor_positive_roots(cartan_matrix(typ, rank)):
                glob_c = tuple(0 if not o <= j < o + rank else c[j - o] for j in range(self.s))
                glob_d = tuple(0 if not o <= j < o + rank else d[j - o] for j in range(self.s))
                self.positive_roots.append(PositiveRoot(glob_c, glob_d, f))
            expected = POSITIVE_ROOT_COUNT[typ](rank)
            got = sum(1 for r in self.positive_roots if r.factor == f)
            assert got == expected, f"{typ}{rank}: {got} positive roots, expected {expected}"

    # -- basic pairings ---------------------------------------------------

    def check_index(self, i: int) -> None:
        if not 0 <= i < self.s:
            raise IndexError(f"simple root index {i} out of range (s={self.s})")

    def pair_weight_simple_coroot(self, chi: Weight, i: int):
        """⟨χ, coroot(α_i)⟩: reads fundamental coordinate i directly."""
        self.check_index(i)
        return chi.fund[i]

    def pair_root_simple_coroot(self, coeffs: Sequence[int], i: int):
        """⟨β, coroot(α_i)⟩ for β given by simple-root coefficients."""
        self.check_index(i)
        return sum(coeffs[j] * self.cartan[i][j] for j in range(self.s))

    def pair_weight_coroot(self, chi: Weight, beta: PositiveRoot):
        """⟨χ, β̌⟩ through the coroot's simple-coroot expansion."""
        return sum(chi.fund[j] * beta.cocoeffs[j] for j in range(self.s))

    def root_as_weight(self, beta: PositiveRoot) -> Weight:
        fund = tuple(self.pair_root_simple_coroot(beta.coeffs, i) for i in range(self.s))
        return Weight(fund, (0,) * self.torus_rank)

    def fundamental_weight(self, i: int) -> Weight:
        self.check_index(i)
        return Weight(tuple(int(i == j) for j in range(self.s)), (0,) * self.torus_rank)

    def torus_character(self, k: int) -> Weight:
        if not 0 <= k < self.torus_rank:
            raise IndexError("torus coordinate out of range")
        return Weight((0,) * self.s, tuple(int(k == j) for j in range(self.torus_rank)))

    def zero_weight(self) -> Weight:
        return Weight((0,) * self.s, (0,) * self.torus_rank)

    # -- subsets of simple roots ------------------------------------------

    def roots_supported_on(self, subset: frozenset[int]) -> list[PositiveRoot]:
        return [
            r
            for r in self.positive_roots
            if all(c == 0 or j in subset for j, c in enumerate(r.coeffs))
        ]

    def roots_outside(self, subset: Iterable[int]) -> list[PositiveRoot]:
        sub = frozenset(subset)
        return [
            r
            for r in self.positive_roots
            if any(c != 0 and j not in sub for j, c in enumerate(r.coeffs))
        ]

    def two_rho_parabolic(self, I: Iterable[int]) -> Weight:
        """Sum of the positive roots not supported on I, as a Weight."""
        total = self.zero_weight()
        for r in self.roots_outside(I):
            total = total + self.root_as_weight(r)
        return total

    def anticanonical_coefficient(self, I: Iterable[int], alpha: int) -> int:
        """⟨2ρ^P, coroot(α)⟩ for α ∉ I; always ≥ 2."""
        I = frozenset(I)
        if alpha in I:
            raise ValueError("α must lie outside I")
        a = self.pair_weight_simple_coroot(self.two_rho_parabolic(I), alpha)
        assert a >= 2
        return a

    # -- Dynkin subdiagram combinatorics -----------------------------------

    def adjacent(self, i: int, j: int) -> bool:
        return i != j and self.cartan[i][j] != 0

    def components(self, subset: Iterable[int]) -> list[list[int]]:
        """Connected components of the induced subdiagram, sorted."""
        remaining = set(subset)
        comps = []
        while remaining:
            start = min(remaining)
            comp = {start}
            stack = [start]
            while stack:
                v = stack.pop()
                for w in list(remaining):
                    if w not in comp and self.adjacent(v, w):
                        comp.add(w)
                        stack.append(w)
            remaining -= comp
            comps.append(sorted(comp))
        return comps

    def _edge_kind(self, i: int, j: int) -> int:
        """Number of Dynkin edges between adjacent i, j (1, 2 or 3)."""
        return self.cartan[i][j] * self.cartan[j][i]

    def _path_from(self, comp: list[int], start: int) -> list[int] | None:
        """Walk comp as a simple path starting at start; None if not a path."""
        degrees = {v: [w for w in comp if w != v and self.adjacent(v, w)] for v in comp}
        if any(len(nb) > 2 for nb in degrees.values()):
            return None
        if len(degrees[start]) > 1:
            return None
        path = [start]
        while True:
            nxt = [w for w in degrees[path[-1]] if w not in path]
            if not nxt:
                break
            path.append(nxt[0])
        return path if len(path) == len(comp) else None

    def is_pair_smooth(self, I: Iterable[int], J: Iterable[int]) -> bool:
        """Dynkin-diagram smoothness test for a disjoint pair (I, J).

        Every connected component of the subdiagram on I ∪ J must be
        entirely inside I, or a single-edge-type A chain with exactly one
        endpoint in J, or a C chain whose far end carries the double edge
        (the long root) with the lone J vertex at the simple end.
        """
        I, J = frozenset(I), frozenset(J)
        if I & J:
            raise ValueError("I and J must be disjoint")
        for v in I | J:
            self.check_index(v)
        for comp in self.components(I | J):
            j_verts = [v for v in comp if v in J]
            if not j_verts:
                continue
            if len(j_verts) > 1:
                return False
            path = self._path_from(comp, j_verts[0])
            if path is None:
                return False
            kinds = [self._edge_kind(path[k], path[k + 1]) for k in range(len(path) - 1)]
            if all(k == 1 for k in kinds):
                continue  # type A with the J vertex at an end
            if (
                len(path) >= 2
                and all(k == 1 for k in kinds[:-1])
                and kinds[-1] == 2
                and self.cartan[path[-2]][path[-1]] == -2
            ):
                continue  # type C: double edge at the far end, long root last
            return False
        return True

    def color_table_row(self, I: Iterable[int], alpha: int) -> tuple[int, int]:
        """(−Σ_{β∈R_I⁺}⟨β, coroot(α)⟩, #(R⁺_{I∪{α}} \\ R⁺_I) − 1)."""
        I = frozenset(I)
        if alpha in I:
            raise ValueError("α must lie outside I")
        self.check_index(alpha)
        first = -sum(
            self.pair_root_simple_coroot(r.coeffs, alpha)
            for r in self.roots_supported_on(I)
        )
        grown = len(self.roots_supported_on(I | {alpha}))
        second = grown - len(self.roots_supported_on(I)) - 1
        return first, second

    # -- representations ----------------------------------------------------

    def weyl_dim(self, lam: Weight) -> int:
        """dim V(λ) by the Weyl dimension formula, exactly.

        λ must be dominant; the torus part does not affect the dimension.
        """
        if any(x < 0 for x in lam.fund):
            raise ValueError("weight is not dominant")
        dim = Fraction(1)
        for beta in self.positive_roots:
            num = sum((lam.fund[j] + 1) * beta.cocoeffs[j] for j in range(self.s))
            den = sum(beta.cocoeffs)
            dim *= Fraction(num, den)
        assert dim.denominator == 1 and dim > 0
        return int(dim)

    def is_horospherical_module(self, alpha: int) -> bool:
        """Whether the simple module with highest weight ϖ_α is horospherical.

        Needs a single simple factor.  The test is: ϖ_α minuscule and
        dim G/P(ϖ_α) = dim V(ϖ_α) − 1, both computed exactly.
        """
        if len(self.factors) != 1:
            raise ValueError("requires a single simple factor")
        self.check_index(alpha)
        lam = self.fundamental_weight(alpha)
        minuscule = all(
            self.pair_weight_coroot(lam, beta) in (0, 1) for beta in self.positive_roots
        )
        if not minuscule:
            return False
        dim_flag = sum(1 for beta in self.positive_roots if beta.coeffs[alpha] != 0)
        return dim_flag == self.weyl_dim(lam) - 1


@lru_cache(maxsize=None)
def _cached_simple(typ: str, rank: int) -> RootSystem:
    return RootSystem([(typ, rank)])


def horospherical_fundamental_weights(typ: str, rank: int) -> list[int]:
    """0-based indices α with V(ϖ_α) horospherical, for one simple type."""
    rs = _cached_simple(typ, rank)
    return [i for i in range(rs.s) if rs.is_horospherical_module(i)]


# One concrete instantiation per row of the connected-attachment table:
# Γ_I connected of the stated type, the extra simple root α attached to it
# inside Γ_S.  Parametric rows are pinned at their smallest legal index.
# Entries: (label, Γ_S spec, I (0-based), α (0-based), expected row).
def attachment_table_cases() -> list[tuple[str, tuple[str, int], list[int], int, tuple[int, int]]]:
    cases: list[tuple[str, tuple[str, int], list[int], int, tuple[int, int]]] = []

    def add(label, spec, I, alpha, expected):
        cases.append((label, spec, I, alpha, expected))

    for i in (0, 1, 2, 3):
        add(f"A{i} in A{i + 1}", ("A", i + 1), list(range(1, i + 1)), 0, (i, i))
    for i in (1, 2, 3):
        add(f"A{i} in B{i + 1}", ("B", i + 1), list(range(i)), i, (2 * i, i * (i + 3) // 2))
        add(f"A{i} in C{i + 1}", ("C", i + 1), list(range(i)), i, (i, i * (i + 3) // 2))
    for i in (3, 4):
        add(
            f"A{i} in D{i + 1}",
            ("D", i + 1),
            list(range(i)),
            i,
            (2 * (i - 1), (i - 1) * (i + 2) // 2),
        )
    add("A5 in E6", ("E", 6), [0, 2, 3, 4, 5], 1, (9, 20))
    add("A6 in E7", ("E", 7), [0, 2, 3, 4, 5, 6], 1, (12, 41))
    add("A7 in E8", ("E", 8), [0, 2, 3, 4, 5, 6, 7], 1, (15, 91))
    add("A1 in G2 (arrow toward added root)", ("G", 2), [1], 0, (3, 4))
    add("A1 in G2 (arrow from added root)", ("G", 2), [0], 1, (1, 4))
    for i in (2, 3):
        add(f"B{i} in B{i + 1}", ("B", i + 1), list(range(1, i + 1)), 0, (2 * i - 1, 2 * i))
    add("B2 in C3", ("C", 3), [1, 2], 0, (4, 4))
    add("B3 in F4", ("F", 4), [0, 1, 2], 3, (9, 14))
    for i in (3, 4):
        add(f"C{i} in C{i + 1}", ("C", i + 1), list(range(1, i + 1)), 0, (2 * i, 2 * i))
    add("C3 in F4", ("F", 4), [1, 2, 3], 0, (6, 14))
    for i in (4, 5):
        add(f"D{i} in D{i + 1}", ("D", i + 1), list(range(1, i + 1)), 0, (2 * i - 2, 2 * i - 1))
    add("D5 in E6", ("E", 6), [1, 2, 3, 4, 5], 0, (10, 15))
    add("D6 in E7", ("E", 7), [1, 2, 3, 4, 5, 6], 0, (15, 32))
    add("D7 in E8", ("E", 8), [1, 2, 3, 4, 5, 6, 7], 0, (21, 77))
    add("E6 in E7", ("E", 7), [0, 1, 2, 3, 4, 5], 6, (16, 26))
    add("E7 in E8", ("E", 8), [0, 1, 2, 3, 4, 5, 6], 7, (27, 56))
    return cases


def attachment_table() -> list[tuple[str, tuple[int, int], tuple[int, int], bool]]:
    """Recompute every attachment-table row and mark it against the pinned values."""
    out = []
    for label, spec, I, alpha, expected in attachment_table_cases():
        rs = _cached_simple(*spec)
        got = rs.color_table_row(I, alpha)
        out.append((label, got, expected, got == expected))
    return out
