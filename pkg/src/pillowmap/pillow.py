"""The (2,2,2,2) pillow sphere and its level-n cell decompositions.

The sphere is the plane modulo the group generated by translations by
2Z^2 and the point reflection x -> -x.  A map is given by an integer
matrix L with det(L) > 1 whose eigenvalues all have modulus above 1.

Everything is computed in integer index space.  The level-n tiles are
the images of the unit squares (i, j) under L**(-n); two index squares
describe the same tile exactly when they differ by the level-n group,
generated by translations by the lattice 2 * L**n * Z^2 together with
the tile involution (i, j) -> (-i - 1, -j - 1).  Edges and vertices use
the induced actions, with involutions (-i - 1, -j) / (-i, -j - 1) on
bottom/left edges and (-i, -j) on vertices.  A canonical representative
is the lexicographic minimum over the two involution branches of the
Hermite-box residue, which makes equality and hashing O(1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import geometry
from .errors import CELL_BUDGET, BudgetExceededError
from .exact import (
    AlgebraicModulus,
    IntMat2,
    RatMat2,
    column_hnf,
    eig_min_modulus,
    hnf_residue_from,
    inv_pow,
    mat_pow,
)

_EDGE_SIDES = ("bottom", "left")
_ZERO_EDGE_SEGMENTS = {
    "bottom": ((0, 0), (1, 0)),
    "top": ((0, 1), (1, 1)),
    "left": ((0, 0), (0, 1)),
    "right": ((1, 0), (1, 1)),
}


@dataclass(frozen=True)
class LattesTypeMap:
    """A validated torus-quotient map on the pillow.

    The lattice is fixed to 2Z^2 and the folding rotation has order 2;
    degree equals det(matrix) and lambda0 caches the minimum eigenvalue
    modulus (the combinatorial expansion factor).
    """

    matrix: IntMat2
    degree: int
    lambda0: AlgebraicModulus = field(compare=False)

    def __repr__(self) -> str:
        m = self.matrix
        return f"LattesTypeMap([[{m.a},{m.b}],[{m.c},{m.d}]])"


def make_map(matrix: IntMat2) -> LattesTypeMap:
    """Validate an integer matrix and wrap it as a pillow map.

    Rejects matrices of determinant <= 1 and matrices with an eigenvalue
    of modulus <= 1.  The expansion gate is exact: for a non-negative
    discriminant both real roots exceed 1 in modulus iff det > 1 and
    |tr| < 1 + det (Schur-Cohn for a monic quadratic); for a negative
    discriminant the common modulus is sqrt(det) > 1 already.
    """
    det = matrix.det()
    if det <= 1:
        raise ValueError("degree must exceed 1")
    if abs(matrix.trace()) >= 1 + det:
        raise ValueError("not expanding")
    return LattesTypeMap(matrix, det, eig_min_modulus(matrix))


@lru_cache(maxsize=None)
def _level_data(matrix: IntMat2, n: int):
    """(L**n, Hermite form of 2*L**n) for the level-n index group."""
    p = mat_pow(matrix, n)
    return p, column_hnf(p.scaled(2))


@dataclass(frozen=True)
class TileIndex:
    map: LattesTypeMap
    level: int
    i: int
    j: int


@dataclass(frozen=True)
class EdgeIndex:
    map: LattesTypeMap
    level: int
    i: int
    j: int
    side: str


@dataclass(frozen=True)
class VertexIndex:
    map: LattesTypeMap
    level: int
    i: int
    j: int


def _canonical_coords(matrix: IntMat2, n: int, i: int, j: int) -> tuple[int, int]:
    _, hnf = _level_data(matrix, n)
    a = hnf_residue_from(hnf, (i, j))
    b = hnf_residue_from(hnf, (-i - 1, -j - 1))
    return a if a <= b else b


def canonical_tile(map: LattesTypeMap, n: int, i: int, j: int) -> TileIndex:
    """Canonical index of the level-n tile holding index square (i, j)."""
    if n < 0:
        raise ValueError("level must be non-negative")
    ci, cj = _canonical_coords(map.matrix, n, i, j)
    return TileIndex(map, n, ci, cj)


def _canonical_edge_coords(matrix, n, i, j, side) -> tuple[int, int, str]:
    _, hnf = _level_data(matrix, n)
    if side == "bottom":
        flipped = (-i - 1, -j)
    elif side == "left":
        flipped = (-i, -j - 1)
    else:
        raise ValueError(f"unknown edge side {side!r}")
    a = hnf_residue_from(hnf, (i, j))
    b = hnf_residue_from(hnf, flipped)
    return (*(a if a <= b else b), side)


def _canonical_vertex_coords(matrix, n, i, j) -> tuple[int, int]:
    _, hnf = _level_data(matrix, n)
    a = hnf_residue_from(hnf, (i, j))
    b = hnf_residue_from(hnf, (-i, -j))
    return a if a <= b else b


def _lattice_residue_is_zero(hnf, v) -> bool:
    h11, h21, h22 = hnf
    if v[0] % h11:
        return False
    return (v[1] - (v[0] // h11) * h21) % h22 == 0


def _check_same_chart(t1: TileIndex, t2: TileIndex) -> None:
    if t1.level != t2.level:
        raise ValueError("level mismatch")
    if t1.map != t2.map:
        raise ValueError("map mismatch")


def _offset_adjacent(t1: TileIndex, t2: TileIndex, offsets) -> bool:
    _, hnf = _level_data(t1.map.matrix, t1.level)
    for bi, bj in ((t2.i, t2.j), (-t2.i - 1, -t2.j - 1)):
        for dx, dy in offsets:
            if _lattice_residue_is_zero(hnf, (t1.i - bi - dx, t1.j - bj - dy)):
                return True
    return False


_CHEBYSHEV_OFFSETS = tuple(
    (dx, dy) for dx in (-1, 0, 1) for dy in (-1, 0, 1)
)
_SIDE_OFFSETS = ((1, 0), (-1, 0), (0, 1), (0, -1))


def chain_adjacent(t1: TileIndex, t2: TileIndex) -> bool:
    """True iff the two closed tiles intersect on the pillow.

    Corner contact counts.  Reflexive and symmetric.
    """
    _check_same_chart(t1, t2)
    if (t1.i, t1.j) == (t2.i, t2.j):
        return True
    return _offset_adjacent(t1, t2, _CHEBYSHEV_OFFSETS)


def edge_adjacent(t1: TileIndex, t2: TileIndex) -> bool:
    """True iff the two tiles share a full level-n edge.

    A tile never shares an edge with itself: the group translations are
    even while a side-sharing relation would need an odd one.
    """
    _check_same_chart(t1, t2)
    if (t1.i, t1.j) == (t2.i, t2.j):
        return False
    return _offset_adjacent(t1, t2, _SIDE_OFFSETS)


@dataclass(frozen=True, init=False)
class PillowPoint:
    """A point of the pillow, stored as its canonical plane representative.

    The representative lies in [0, 2) x [0, 2) and is the lexicographic
    minimum over the two point-reflection branches, so two points are
    equal iff their stored coordinates are equal.
    """

    x: Fraction
    y: Fraction

    def __init__(self, x, y):
        x, y = Fraction(x), Fraction(y)
        a = (x % 2, y % 2)
        b = ((-x) % 2, (-y) % 2)
        cx, cy = a if a <= b else b
        object.__setattr__(self, "x", cx)
        object.__setattr__(self, "y", cy)


def tiles_containing(map: LattesTypeMap, n: int, p: PillowPoint) -> frozenset[TileIndex]:
    """All level-n tiles whose closure contains p (1, 2 or 4 tiles).

    The point is pushed forward by L**n exactly; boundary and cone-point
    incidences fall out of the square enumeration plus canonical
    deduplication.
    """
    power, _ = _level_data(map.matrix, n)
    wx = power.a * p.x + power.b * p.y
    wy = power.c * p.x + power.d * p.y
    return frozenset(
        canonical_tile(map, n, i, j)
        for i, j in geometry.squares_containing_point(wx, wy)
    )


def zero_edge_tiles(map: LattesTypeMap, n: int, side: str, *,
                    closed: bool = True) -> frozenset[TileIndex]:
    """Level-n tiles whose closure meets one closed side of the base square.

    side is one of bottom/top/left/right, naming the four arcs of the
    folding curve.  With closed=False the two endpoint cone points do
    not count as meeting the arc.
    """
    try:
        (ax, ay), (bx, by) = _ZERO_EDGE_SEGMENTS[side]
    except KeyError:
        raise ValueError(f"unknown side {side!r}") from None
    power, _ = _level_data(map.matrix, n)
    p = power.apply((ax, ay))
    q = power.apply((bx, by))
    squares = geometry.squares_meeting_segment(p, q)
    if not closed:
        squares = [
            (i, j) for i, j in squares
            if geometry.segment_interior_meets_square(p[0], p[1], q[0], q[1], i, j)
        ]
    return frozenset(canonical_tile(map, n, i, j) for i, j in squares)


def _check_budget(map: LattesTypeMap, n: int, budget: int) -> None:
    if 2 * map.degree**n > budget:
        raise BudgetExceededError("level too deep")


class CellDecomposition:
    """Enumerated level-n cells of the pillow under a given map.

    Immutable after construction; tiles, edges and vertices are sorted
    canonical index tuples obtained by folding one fundamental box of
    the translation lattice, never by the closed-form counts.
    """

    def __init__(self, map: LattesTypeMap, level: int, *, budget: int = CELL_BUDGET):
        _check_budget(map, level, budget)
        self.map = map
        self.level = level
        matrix = map.matrix
        _, (h11, _, h22) = _level_data(matrix, level)
        tiles = set()
        edges = set()
        vertices = set()
        for i in range(h11):
            for j in range(h22):
                tiles.add(_canonical_coords(matrix, level, i, j))
                for side in _EDGE_SIDES:
                    edges.add(_canonical_edge_coords(matrix, level, i, j, side))
                vertices.add(_canonical_vertex_coords(matrix, level, i, j))
        self._tiles = tuple(
            TileIndex(map, level, i, j) for i, j in sorted(tiles)
        )
        self._edges = tuple(
            EdgeIndex(map, level, i, j, side) for i, j, side in sorted(edges)
        )
        self._vertices = tuple(
            VertexIndex(map, level, i, j) for i, j in sorted(vertices)
        )

    def tiles(self) -> tuple[TileIndex, ...]:
        return self._tiles

    def edges(self) -> tuple[EdgeIndex, ...]:
        return self._edges

    def vertices(self) -> tuple[VertexIndex, ...]:
        return self._vertices

    def counts(self) -> tuple[int, int, int]:
        return (len(self._vertices), len(self._edges), len(self._tiles))

    def tile_neighbors(self, t: TileIndex, *, edge_only: bool = False):
        """Distinct canonical tiles touching t (sharing an edge if asked)."""
        offsets = _SIDE_OFFSETS if edge_only else _CHEBYSHEV_OFFSETS
        out = set()
        for dx, dy in offsets:
            c = canonical_tile(self.map, self.level, t.i + dx, t.j + dy)
            if (c.i, c.j) != (t.i, t.j):
                out.add(c)
        return out


def tiles(map: LattesTypeMap, n: int, *, budget: int = CELL_BUDGET):
    """Enumerate the canonical level-n tiles (2 * degree**n of them)."""
    return CellDecomposition(map, n, budget=budget).tiles()


def cell_counts(map: LattesTypeMap, n: int, *, budget: int = CELL_BUDGET) -> tuple[int, int, int]:
    """(vertices, edges, tiles) at level n, counted by enumeration.

    The enumerated counts are checked against the closed forms
    (2d**n + 2, 4d**n, 2d**n) before returning.
    """
    counts = CellDecomposition(map, n, budget=budget).counts()
    d = map.degree**n
    if counts != (2 * d + 2, 4 * d, 2 * d):
        raise RuntimeError(f"cell count mismatch at level {n}: {counts}")
    return counts


def level_matrix(map: LattesTypeMap, n: int) -> IntMat2:
    """L**n for the map's matrix L."""
    power, _ = _level_data(map.matrix, n)
    return power


def level_inverse(map: LattesTypeMap, n: int) -> RatMat2:
    """Exact L**(-n)."""
    return inv_pow(map.matrix, n)
