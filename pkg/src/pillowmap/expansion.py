"""Joining numbers D_n, their operator-norm sandwich, and flow checks.

D_n is the minimum number of level-n tiles whose connected union joins
two opposite arcs of the folding curve.  It is computed two independent
ways: a breadth-first search on the unfolded integer grid (dn_planar)
and a search over canonical folded tiles (dn_folded); the two must
agree.  Both are bracketed by the exact bounds 1/||L^-n|| and
1/||L^-n|| + 1.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from . import geometry
from .errors import CELL_BUDGET, FRONTIER_BUDGET, BudgetExceededError
from .exact import AlgebraicModulus, inv_pow, linf_norm
from .pillow import (
    LattesTypeMap,
    _canonical_coords,
    _check_budget,
    level_matrix,
    zero_edge_tiles,
)

_NEIGHBOR_OFFSETS = tuple(
    (dx, dy) for dx in (-1, 0, 1) for dy in (-1, 0, 1) if (dx, dy) != (0, 0)
)


def _line_chain_search(u: tuple[int, int], c: tuple[int, int], budget: int,
                       cap: int) -> int | None:
    """Minimum tiles chaining the line span(u) to its translate by c.

    Grid squares are chain-adjacent when their closures touch (king
    moves).  Seeds are the squares meeting one primitive period of the
    source line, which suffices because the whole configuration is
    invariant under translation by u / gcd(u).  The frontier is ordered
    by chain length plus an admissible consistent lower bound (the
    cross-product gap to the target line over the largest per-move
    change), so the search stays inside a corridor; chains longer than
    cap are abandoned and None is returned.
    """
    g = math.gcd(abs(u[0]), abs(u[1]))
    ux, uy = u[0] // g, u[1] // g
    lo, hi = geometry.corner_band(ux, uy)
    level = ux * c[1] - uy * c[0]
    tlo, thi = level - hi, level - lo
    step = abs(ux) + abs(uy)

    def remaining(b: int) -> int:
        if b < tlo:
            gap = tlo - b
        elif b > thi:
            gap = b - thi
        else:
            return 0
        return -(-gap // step)

    best = {}
    buckets: dict[int, list] = {}
    for cell in geometry.squares_meeting_segment((0, 0), (ux, uy)):
        if cell in best:
            continue
        h = remaining(ux * cell[1] - uy * cell[0])
        if h == 0:
            return 1
        best[cell] = 1
        buckets.setdefault(1 + h, []).append(cell)
    f = min(buckets, default=cap + 1)
    while f <= cap:
        bucket = buckets.pop(f, None)
        if bucket is None:
            f += 1
            continue
        for i, j in bucket:
            depth = best[(i, j)]
            if depth + remaining(ux * j - uy * i) != f:
                continue  # stale entry
            for dx, dy in _NEIGHBOR_OFFSETS:
                cell = (i + dx, j + dy)
                if best.get(cell, cap + 1) <= depth + 1:
                    continue
                h = remaining(ux * cell[1] - uy * cell[0])
                if h == 0:
                    return depth + 1
                best[cell] = depth + 1
                buckets.setdefault(depth + 1 + h, []).append(cell)
            if len(best) > budget:
                raise BudgetExceededError("budget exceeded")
        # f only grows: the bound is consistent (it changes by at most
        # one per move)
    return None


def dn_planar(map: LattesTypeMap, n: int, *,
              frontier_budget: int = FRONTIER_BUDGET) -> int:
    """D_n by shortest-chain search over unfolded level-n index squares.

    Takes the minimum over the two pairs of opposite arcs; those unfold
    to the horizontal and vertical unit-spaced line pairs, pushed
    forward by L**n into index space.  Each direction's search is
    capped by the exact norm upper bound, which the minimum always
    satisfies.
    """
    if n < 0:
        raise ValueError("level must be non-negative")
    p = level_matrix(map, n)
    col1, col2 = (p.a, p.c), (p.b, p.d)
    _, upper = dn_bounds(map, n)
    cap = upper.numerator // upper.denominator
    first = _line_chain_search(col1, col2, frontier_budget, cap)
    if first is not None:
        cap = min(cap, first - 1)
    second = _line_chain_search(col2, col1, frontier_budget, cap)
    value = second if second is not None else first
    if value is None:
        raise RuntimeError("no chain within the proven upper bound")
    return value


def _folded_chain_bfs(map: LattesTypeMap, n: int, sources, targets,
                      budget: int) -> int:
    matrix = map.matrix
    source_coords = {(t.i, t.j) for t in sources}
    target_coords = {(t.i, t.j) for t in targets}
    if source_coords & target_coords:
        return 1
    visited = set(source_coords)
    frontier = list(source_coords)
    depth = 1
    while frontier:
        depth += 1
        fresh = []
        for i, j in frontier:
            for dx, dy in _NEIGHBOR_OFFSETS:
                cell = _canonical_coords(matrix, n, i + dx, j + dy)
                if cell in visited:
                    continue
                if cell in target_coords:
                    return depth
                visited.add(cell)
                fresh.append(cell)
        if len(visited) > budget:
            raise BudgetExceededError("budget exceeded")
        frontier = fresh
    raise RuntimeError("folded chain search exhausted the sphere")


def dn_folded(map: LattesTypeMap, n: int, *, budget: int = CELL_BUDGET,
              cross_check: bool = True) -> int:
    """D_n over the folded sphere: canonical tiles and orbit adjacency.

    Chains run from the tiles meeting the bottom arc to those meeting
    the top arc, then left to right; the minimum is cross-checked
    against dn_planar unless disabled.
    """
    _check_budget(map, n, budget)
    value = min(
        _folded_chain_bfs(
            map, n,
            zero_edge_tiles(map, n, "bottom"),
            zero_edge_tiles(map, n, "top"),
            budget,
        ),
        _folded_chain_bfs(
            map, n,
            zero_edge_tiles(map, n, "left"),
            zero_edge_tiles(map, n, "right"),
            budget,
        ),
    )
    if cross_check:
        planar = dn_planar(map, n)
        if planar != value:
            raise RuntimeError(
                f"folded/planar disagreement at level {n}: {value} != {planar}"
            )
    return value


def dn_bounds(map: LattesTypeMap, n: int) -> tuple[Fraction, Fraction]:
    """Exact bracket (1/||L^-n||, 1/||L^-n|| + 1) around D_n."""
    norm = linf_norm(inv_pow(map.matrix, n))
    return (1 / norm, 1 / norm + 1)


@dataclass(frozen=True)
class DnReport:
    level: int
    dn: int
    lower_bound: Fraction
    upper_bound: Fraction
    method: str
    agreement: bool


def dn_report(map: LattesTypeMap, n: int, *, method: str = "both",
              budget: int = CELL_BUDGET,
              frontier_budget: int = FRONTIER_BUDGET) -> DnReport:
    """Compute D_n by the requested method(s) and verify the bracket."""
    if method not in ("planar", "folded", "both"):
        raise ValueError(f"unknown method {method!r}")
    value_planar = value_folded = None
    if method in ("planar", "both"):
        value_planar = dn_planar(map, n, frontier_budget=frontier_budget)
    if method in ("folded", "both"):
        value_folded = dn_folded(map, n, budget=budget, cross_check=False)
    agreement = True
    if method == "both":
        agreement = value_planar == value_folded
    dn = value_planar if value_planar is not None else value_folded
    lower, upper = dn_bounds(map, n)
    if not (lower <= dn <= upper):
        raise RuntimeError(f"D_{n} = {dn} escapes [{lower}, {upper}]")
    if (dn - 1) ** 2 > map.degree**n:
        raise RuntimeError(f"D_{n} = {dn} violates the degree bound")
    return DnReport(n, dn, lower, upper, method, agreement)


@dataclass(frozen=True)
class Lambda0Report:
    entries: tuple[tuple[int, int, float], ...]
    target: AlgebraicModulus
    tolerance: float
    within_tolerance: bool


def lambda0_estimate(map: LattesTypeMap, n_max: int, *,
                     tolerance: float = 0.15,
                     frontier_budget: int = FRONTIER_BUDGET) -> Lambda0Report:
    """Sequence D_n**(1/n) for n <= n_max against the exact eigenvalue answer."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    entries = []
    for n in range(1, n_max + 1):
        dn = dn_planar(map, n, frontier_budget=frontier_budget)
        entries.append((n, dn, dn ** (1.0 / n)))
    target = map.lambda0
    within = abs(entries[-1][2] - float(target)) <= tolerance
    return Lambda0Report(tuple(entries), target, tolerance, within)


def _bfs_min_path_tiles(adjacency, sources, targets) -> int:
    """Minimum number of vertices on a path from sources to targets."""
    sources = set(sources)
    targets = set(targets)
    if sources & targets:
        return 1
    visited = set(sources)
    queue = deque((v, 1) for v in sources)
    while queue:
        v, depth = queue.popleft()
        for w in adjacency[v]:
            if w in visited:
                continue
            if w in targets:
                return depth + 1
            visited.add(w)
            queue.append((w, depth + 1))
    raise RuntimeError("no path between the opposite arcs")


def _edmonds_karp(capacity, source, sink) -> int:
    """Max flow on an integer-capacity digraph given as nested dicts."""
    flow = 0
    while True:
        parent = {source: None}
        queue = deque([source])
        while queue and sink not in parent:
            v = queue.popleft()
            for w, cap in capacity[v].items():
                if cap > 0 and w not in parent:
                    parent[w] = v
                    queue.append(w)
        if sink not in parent:
            return flow
        w = sink
        while parent[w] is not None:
            v = parent[w]
            capacity[v][w] -= 1
            capacity[w][v] = capacity[w].get(v, 0) + 1
            w = v
        flow += 1


def _max_vertex_disjoint_paths(vertices, adjacency, sources, targets) -> int:
    """Menger count via unit-capacity max flow with node splitting."""
    capacity = {}
    source, sink = ("super", 0), ("super", 1)
    capacity[source] = {}
    capacity[sink] = {}
    for v in vertices:
        capacity[("in", v)] = {("out", v): 1}
        capacity[("out", v)] = {}
    for v in vertices:
        for w in adjacency[v]:
            capacity[("out", v)][("in", w)] = 1
    for v in sources:
        capacity[source][("in", v)] = 1
    for v in targets:
        capacity[("out", v)][sink] = 1
    return _edmonds_karp(capacity, source, sink)


@dataclass(frozen=True)
class MengerReport:
    level: int
    dn: int
    path_min_tiles: int
    max_disjoint_paths: int
    tile_budget: int
    within_single_tile_budget: bool


def menger_verify(map: LattesTypeMap, n: int, *,
                  budget: int = CELL_BUDGET,
                  frontier_budget: int = FRONTIER_BUDGET) -> MengerReport:
    """Check D_n against the disjoint-path bound inside one 0-tile.

    Builds the shared-edge dual graph of the degree**n level-n tiles
    inside one face, with A/B the tiles meeting that face's bottom/top
    arcs, and computes the max number of vertex-disjoint A-B paths (k)
    plus the minimum tiles on any A-B path (N).  Requires a matrix that
    maps grid lines to grid lines (diagonal or antidiagonal): only then
    is the folding curve forward invariant and the face subdivided by
    deeper tiles.
    """
    m = map.matrix
    diagonal = m.b == 0 and m.c == 0
    antidiagonal = m.a == 0 and m.d == 0
    if not (diagonal or antidiagonal):
        raise ValueError("requires a diagonal or antidiagonal matrix")
    if map.degree**n > budget:
        raise BudgetExceededError("budget exceeded")
    p = level_matrix(map, n)
    corners = [(0, 0), (p.a, p.c), (p.b, p.d), (p.a + p.b, p.c + p.d)]
    xs = [c[0] for c in corners]
    ys = [c[1] for c in corners]
    cells = [
        (i, j)
        for i in range(min(xs), max(xs))
        for j in range(min(ys), max(ys))
        if geometry.square_inside_parallelogram(i, j, p)
    ]
    if len(cells) != map.degree**n:
        raise RuntimeError("face subdivision count mismatch")
    cell_set = set(cells)
    adjacency = {
        v: [
            w
            for w in ((v[0] + 1, v[1]), (v[0] - 1, v[1]), (v[0], v[1] + 1), (v[0], v[1] - 1))
            if w in cell_set
        ]
        for v in cells
    }
    e1p, e1q = (0, 0), (p.a, p.c)
    e3p, e3q = (p.b, p.d), (p.a + p.b, p.c + p.d)
    side_a = [v for v in cells if geometry.segment_meets_square(*e1p, *e1q, *v)]
    side_b = [v for v in cells if geometry.segment_meets_square(*e3p, *e3q, *v)]
    path_min = _bfs_min_path_tiles(adjacency, side_a, side_b)
    disjoint = _max_vertex_disjoint_paths(cells, adjacency, side_a, side_b)
    dn = dn_planar(map, n, frontier_budget=frontier_budget)
    tile_budget = map.degree**n
    if dn > path_min or dn > disjoint:
        raise RuntimeError("joining number exceeds a Menger bound")
    if disjoint * path_min > 2 * tile_budget:
        raise RuntimeError("disjoint paths overfill both faces")
    return MengerReport(
        n, dn, path_min, disjoint, tile_budget,
        disjoint * path_min <= tile_budget,
    )
