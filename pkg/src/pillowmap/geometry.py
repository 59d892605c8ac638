"""Exact incidence predicates between unit grid squares, segments and lines.

All tests run on integers (or Fractions where stated); square (i, j) means
the closed box [i, i+1] x [j, j+1].
"""

from __future__ import annotations

from fractions import Fraction

from .exact import IntMat2


def corner_band(ux: int, uy: int) -> tuple[int, int]:
    """Range of cross(u, corner) offsets over the corners of any unit square.

    With f(x, y) = ux*y - uy*x and b = f(i, j), the four corner values of
    square (i, j) are b + {0, -uy, ux, ux - uy}; returns (min, max) of that
    offset set.
    """
    offsets = (0, -uy, ux, ux - uy)
    return min(offsets), max(offsets)


def square_meets_line(i: int, j: int, ux: int, uy: int, level: int,
                      band: tuple[int, int] | None = None) -> bool:
    """Closed square (i, j) intersects the line {t*(ux, uy)} + level offset.

    The line is the set of points with cross((ux, uy), point) == level.
    """
    lo, hi = band if band is not None else corner_band(ux, uy)
    b = ux * j - uy * i
    return b + lo <= level <= b + hi


def segment_meets_square(px: int, py: int, qx: int, qy: int,
                         i: int, j: int) -> bool:
    """Closed segment pq intersects closed square (i, j); exact SAT test."""
    if i > max(px, qx) or i + 1 < min(px, qx):
        return False
    if j > max(py, qy) or j + 1 < min(py, qy):
        return False
    ux, uy = qx - px, qy - py
    lo, hi = corner_band(ux, uy)
    level = ux * py - uy * px
    b = ux * j - uy * i
    return b + lo <= level <= b + hi


def _int_range_for(c: int, lo: int, hi: int) -> range:
    """Integers j with lo <= c*j <= hi, for c != 0."""
    if c < 0:
        c, lo, hi = -c, -hi, -lo
    return range(-(-lo // c), hi // c + 1)


def squares_meeting_segment(p: tuple[int, int], q: tuple[int, int]):
    """All squares whose closed body meets the closed segment pq.

    Endpoints are integer points.  Runs in time linear in the segment's
    bounding-box perimeter: one coordinate is scanned and the other is
    solved from the cross-product band before the exact test.
    """
    px, py = p
    qx, qy = q
    ux, uy = qx - px, qy - py
    found = []
    if ux == 0 and uy == 0:
        for i in (px - 1, px):
            for j in (py - 1, py):
                found.append((i, j))
        return found
    lo, hi = corner_band(ux, uy)
    level = ux * py - uy * px
    jlo, jhi = min(py, qy) - 1, max(py, qy)
    ilo, ihi = min(px, qx) - 1, max(px, qx)
    if abs(ux) >= abs(uy):
        for i in range(ilo, ihi + 1):
            # need level - hi <= ux*j - uy*i <= level - lo
            if ux != 0:
                cand = _int_range_for(ux, level - hi + uy * i, level - lo + uy * i)
            else:
                cand = range(jlo, jhi + 1)
            for j in cand:
                if jlo <= j <= jhi and segment_meets_square(px, py, qx, qy, i, j):
                    found.append((i, j))
    else:
        for j in range(jlo, jhi + 1):
            # need level - hi <= ux*j - uy*i <= level - lo, solved for i
            cand = _int_range_for(-uy, level - hi - ux * j, level - lo - ux * j)
            for i in cand:
                if ilo <= i <= ihi and segment_meets_square(px, py, qx, qy, i, j):
                    found.append((i, j))
    return found


def segment_square_param_interval(px, py, qx, qy, i: int, j: int):
    """Parameter interval of segment pq inside square (i, j), or None.

    Liang-Barsky clipping with exact Fractions; the segment is
    p + t*(q - p) for t in [0, 1].
    """
    t0, t1 = Fraction(0), Fraction(1)
    dx, dy = qx - px, qy - py
    for delta, lo, hi in ((dx, i - px, i + 1 - px), (dy, j - py, j + 1 - py)):
        if delta == 0:
            if lo > 0 or hi < 0:
                return None
            continue
        ta, tb = Fraction(lo, delta), Fraction(hi, delta)
        if ta > tb:
            ta, tb = tb, ta
        t0, t1 = max(t0, ta), min(t1, tb)
        if t0 > t1:
            return None
    return t0, t1


def segment_interior_meets_square(px: int, py: int, qx: int, qy: int,
                                  i: int, j: int) -> bool:
    """Square (i, j) meets the segment pq minus its two endpoints."""
    interval = segment_square_param_interval(px, py, qx, qy, i, j)
    if interval is None:
        return False
    t0, t1 = interval
    return t0 < 1 and t1 > 0


def squares_containing_point(x: Fraction, y: Fraction):
    """Squares whose closure contains the point (1, 2 or 4 of them)."""
    ix = x.numerator // x.denominator
    iy = y.numerator // y.denominator
    xs = [ix] if x != ix else [ix - 1, ix]
    ys = [iy] if y != iy else [iy - 1, iy]
    return [(i, j) for i in xs for j in ys]


def square_inside_parallelogram(i: int, j: int, m: IntMat2) -> bool:
    """Closed square (i, j) lies inside the parallelogram m([0,1]^2).

    Requires det(m) > 0.  A corner v is inside iff adj(m) @ v lands in
    [0, det]^2, which keeps the test in integers.
    """
    det = m.det()
    adj = m.adjugate()
    for cx in (i, i + 1):
        for cy in (j, j + 1):
            wx, wy = adj.apply((cx, cy))
            if not (0 <= wx <= det and 0 <= wy <= det):
                return False
    return True


def square_interior_overlaps_parallelogram(i: int, j: int, m: IntMat2) -> bool:
    """Open square (i, j) meets the open parallelogram m([0,1]^2).

    Separating-axis test over the axis normals and both column normals
    of m, with strict inequalities throughout.
    """
    cols = ((m.a, m.c), (m.b, m.d))
    corners = ((0, 0), cols[0], cols[1], (cols[0][0] + cols[1][0], cols[0][1] + cols[1][1]))
    xs = [c[0] for c in corners]
    ys = [c[1] for c in corners]
    if not (i < max(xs) and i + 1 > min(xs)):
        return False
    if not (j < max(ys) and j + 1 > min(ys)):
        return False
    sq = ((i, j), (i + 1, j), (i, j + 1), (i + 1, j + 1))
    for ux, uy in cols:
        para_vals = [ux * cy - uy * cx for cx, cy in corners]
        sq_vals = [ux * cy - uy * cx for cx, cy in sq]
        if not (min(sq_vals) < max(para_vals) and max(sq_vals) > min(para_vals)):
            return False
    return True
