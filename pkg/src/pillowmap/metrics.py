"""Separation indices and the finite-level chain metrics d_n.

For two points, m is the first level at which they sit in disjoint
tiles and m' the last level at which they sit in touching ones.  The
level-n distance d_n counts the shortest tile chain between the tiles
holding the two points, scaled by lambda0**(-n); the scale is kept as
an exact quadratic surd so the sandwich checks never round.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import CELL_BUDGET, BudgetExceededError, CapExceededError
from .exact import AlgebraicModulus
from .orbifold import INFINITY
from .pillow import (
    LattesTypeMap,
    PillowPoint,
    TileIndex,
    _canonical_coords,
    chain_adjacent,
    level_inverse,
    tiles_containing,
)

_NEIGHBOR_OFFSETS = tuple(
    (dx, dy) for dx in (-1, 0, 1) for dy in (-1, 0, 1) if (dx, dy) != (0, 0)
)


def _has_disjoint_pair(tiles_x, tiles_y) -> bool:
    return any(
        not chain_adjacent(tx, ty) for tx in tiles_x for ty in tiles_y
    )


def m_index(map: LattesTypeMap, x: PillowPoint, y: PillowPoint, n_cap: int = 32):
    """First level with disjoint tiles containing x and y; INFINITY if x == y."""
    if x == y:
        return INFINITY
    for n in range(n_cap + 1):
        if _has_disjoint_pair(tiles_containing(map, n, x), tiles_containing(map, n, y)):
            return n
    raise CapExceededError(f"no disjoint tiles up to level {n_cap}")


@dataclass(frozen=True)
class MPrimeIndex:
    value: int
    exact: bool  # False when the tiles still touch at the cap


def m_prime_index(map: LattesTypeMap, x: PillowPoint, y: PillowPoint,
                  n_cap: int = 32) -> MPrimeIndex:
    """Last level <= n_cap with touching tiles containing x and y.

    Scans downward; when the pair still shares touching tiles at the
    cap the result is only a lower bound and is flagged as inexact.
    """
    if x == y:
        raise ValueError("points must differ")
    for n in range(n_cap, -1, -1):
        tx = tiles_containing(map, n, x)
        ty = tiles_containing(map, n, y)
        if any(chain_adjacent(a, b) for a in tx for b in ty):
            return MPrimeIndex(n, n < n_cap)
    raise RuntimeError("level-0 tiles always touch")


def _chain_count_between(map: LattesTypeMap, n: int, tiles_x, tiles_y,
                         budget: int) -> int:
    """Tiles on a shortest chain from one tile set to the other."""
    matrix = map.matrix
    sources = {(t.i, t.j) for t in tiles_x}
    targets = {(t.i, t.j) for t in tiles_y}
    if sources & targets:
        return 1
    visited = set(sources)
    frontier = list(sources)
    depth = 1
    while frontier:
        depth += 1
        fresh = []
        for i, j in frontier:
            for dx, dy in _NEIGHBOR_OFFSETS:
                cell = _canonical_coords(matrix, n, i + dx, j + dy)
                if cell in visited:
                    continue
                if cell in targets:
                    return depth
                visited.add(cell)
                fresh.append(cell)
        if len(visited) > budget:
            raise BudgetExceededError("budget exceeded")
        frontier = fresh
    raise RuntimeError("chain search exhausted the sphere")


@dataclass(frozen=True)
class DnMetricValue:
    """A d_n value as the exact pair (chain tile count, level)."""

    count: int
    level: int
    lambda0: AlgebraicModulus

    def exact(self) -> AlgebraicModulus:
        if self.count == 0:
            return AlgebraicModulus(0)
        return self.count * self.lambda0 ** (-self.level)

    def as_fraction(self) -> Fraction:
        return self.exact().as_fraction()

    def __float__(self) -> float:
        return float(self.exact())


def dn_metric(map: LattesTypeMap, x: PillowPoint, y: PillowPoint, n: int, *,
              budget: int = CELL_BUDGET) -> DnMetricValue:
    """Shortest-chain distance between x and y at level n.

    Zero for equal points; otherwise the minimum cardinality of a tile
    chain whose first tile contains x and last contains y, times
    lambda0**(-n).
    """
    if x == y:
        return DnMetricValue(0, n, map.lambda0)
    count = _chain_count_between(
        map, n, tiles_containing(map, n, x), tiles_containing(map, n, y), budget
    )
    return DnMetricValue(count, n, map.lambda0)


def default_sample_pairs() -> tuple[tuple[PillowPoint, PillowPoint], ...]:
    """Twelve deterministic point pairs off the cone points."""
    coords = [(1, 1), (3, 5), (5, 11), (7, 7), (9, 3), (11, 13), (13, 9), (15, 15)]
    pts = [PillowPoint(Fraction(a, 16), Fraction(b, 16)) for a, b in coords]
    pairs = [(pts[i], pts[(i + 1) % 8]) for i in range(8)]
    pairs += [(pts[i], pts[(i + 3) % 8]) for i in range(4)]
    return tuple(pairs)


def stress_sample_pairs() -> tuple[tuple[PillowPoint, PillowPoint], ...]:
    """Cone-point and boundary pairs used as stress cases."""
    return (
        (PillowPoint(0, 0), PillowPoint(Fraction(1, 2), Fraction(1, 2))),
        (PillowPoint(1, 0), PillowPoint(Fraction(1, 3), Fraction(2, 3))),
    )


@dataclass(frozen=True)
class PairSample:
    x: PillowPoint
    y: PillowPoint
    m: int
    m_prime: int
    m_prime_exact: bool
    dn_counts: tuple[tuple[int, int], ...]  # (level, chain tile count)


@dataclass(frozen=True)
class VisualReport:
    """Sampled separation indices and d_n values with their envelope.

    empirical_c and empirical_C are the observed extremes of
    d_n * lambda0**m over all sampled pairs and window levels;
    tile_diameter_scale is the observed maximum of corner-sampled tile
    diameters times lambda0**(tile level).
    """

    lambda0: AlgebraicModulus
    window: int
    samples: tuple[PairSample, ...]
    excluded_pairs: int
    empirical_c: AlgebraicModulus
    empirical_C: AlgebraicModulus
    max_m_minus_mprime: int
    tile_diameter_scale: AlgebraicModulus
    tile_diameter_spread: tuple[AlgebraicModulus, AlgebraicModulus]


def _tile_corner_points(map: LattesTypeMap, tile: TileIndex):
    inv = level_inverse(map, tile.level)
    corners = []
    for dx, dy in ((0, 0), (1, 0), (0, 1), (1, 1)):
        px, py = inv.apply((Fraction(tile.i + dx), Fraction(tile.j + dy)))
        corners.append(PillowPoint(px, py))
    return corners


def visual_report(map: LattesTypeMap, sample_pairs, n_window: int = 5, *,
                  n_cap: int = 32, budget: int = CELL_BUDGET,
                  diameter_tiles: int = 3) -> VisualReport:
    """Assemble m, m', and d_n over a level window for every sample pair.

    Pairs of equal points are excluded (and counted).  For each kept
    pair the window runs over levels m+1 .. m+n_window.  A few tiles
    holding sample points are measured for diameter at the deepest
    window level via their corner points.
    """
    lam = map.lambda0
    samples = []
    excluded = 0
    ratio_min = ratio_max = None
    gap_max = 0
    deepest = 0
    for x, y in sample_pairs:
        if x == y:
            excluded += 1
            continue
        m = m_index(map, x, y, n_cap)
        mp = m_prime_index(map, x, y, n_cap=m + 3)
        gap_max = max(gap_max, m - mp.value)
        counts = []
        for n in range(m + 1, m + n_window + 1):
            value = dn_metric(map, x, y, n, budget=budget)
            counts.append((n, value.count))
            ratio = value.count * lam ** (m - n)
            if ratio_min is None or ratio < ratio_min:
                ratio_min = ratio
            if ratio_max is None or ratio > ratio_max:
                ratio_max = ratio
        deepest = max(deepest, m + n_window)
        samples.append(PairSample(x, y, m, mp.value, mp.exact, tuple(counts)))
    if not samples:
        raise ValueError("sample contains no distinct pairs")

    # corner-sampled diameters of a few mid-window tiles, measured with
    # the deepest-level metric
    tile_level = max(1, deepest - 2)
    probe_tiles = []
    seen = set()
    for sample in samples:
        tile = min(tiles_containing(map, tile_level, sample.x),
                   key=lambda t: (t.i, t.j))
        if (tile.i, tile.j) not in seen:
            seen.add((tile.i, tile.j))
            probe_tiles.append(tile)
        if len(probe_tiles) >= diameter_tiles:
            break
    scale_min = scale_max = None
    for tile in probe_tiles:
        corners = _tile_corner_points(map, tile)
        diam = None
        for a in range(4):
            for b in range(a + 1, 4):
                if corners[a] == corners[b]:
                    continue
                value = dn_metric(map, corners[a], corners[b], deepest, budget=budget)
                exact = value.exact()
                if diam is None or exact > diam:
                    diam = exact
        scaled = diam * lam**tile_level
        if scale_min is None or scaled < scale_min:
            scale_min = scaled
        if scale_max is None or scaled > scale_max:
            scale_max = scaled
    return VisualReport(
        lambda0=lam,
        window=n_window,
        samples=tuple(samples),
        excluded_pairs=excluded,
        empirical_c=ratio_min,
        empirical_C=ratio_max,
        max_m_minus_mprime=gap_max,
        tile_diameter_scale=scale_max,
        tile_diameter_spread=(scale_min, scale_max),
    )


def chain_counts_table(map: LattesTypeMap, points, levels, *,
                       budget: int = CELL_BUDGET):
    """d_n chain counts for all point pairs at the given levels.

    Returns {(level, index_a, index_b): count} with a < b; used for the
    symmetry and triangle-inequality checks of the finite-level metric.
    """
    table = {}
    for n in levels:
        for a in range(len(points)):
            for b in range(a + 1, len(points)):
                value = dn_metric(map, points[a], points[b], n, budget=budget)
                table[(n, a, b)] = value.count
    return table
