"""Lower Newton polygons of integer point clouds.

A cloud is a list of (abscissa, ordinate) pairs, one per abscissa, where the
ordinate may be INF to mark a missing point. The polygon is the lower convex
hull of the finite points; sides are listed left to right, so slopes are
strictly increasing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

INF = math.inf

Ordinate = int | Fraction | float
PointCloud = Sequence[tuple[int, Ordinate]]


@dataclass(frozen=True)
class Side:
    """One side of a polygon, from (x0, y0) to (x1, y1), x0 < x1.

    For a side of negative slope, slope = -h/e in lowest terms with h, e > 0,
    and the side covers degree = (x1 - x0) / e lattice segments.
    """

    x0: int
    y0: Ordinate
    x1: int
    y1: Ordinate

    @property
    def slope(self) -> Fraction:
        return Fraction(self.y1 - self.y0, self.x1 - self.x0)

    @property
    def h(self) -> int:
        s = self.slope
        if s >= 0:
            raise ValueError("h/e only defined for negative slopes")
        return -s.numerator

    @property
    def e(self) -> int:
        s = self.slope
        if s >= 0:
            raise ValueError("h/e only defined for negative slopes")
        return s.denominator

    @property
    def width(self) -> int:
        return self.x1 - self.x0

    @property
    def degree(self) -> int:
        w, e = self.width, self.e
        if w % e:
            raise ValueError("side width not divisible by ramification e")
        return w // e

    def ordinate_at(self, x: int) -> Fraction:
        if not self.x0 <= x <= self.x1:
            raise ValueError("abscissa outside side")
        return Fraction(self.y0) + self.slope * (x - self.x0)


def lower_hull(points: PointCloud) -> list[tuple[int, Ordinate]]:
    """Vertices of the lower convex hull, collinear interior points dropped."""
    finite = sorted((x, y) for x, y in points if y != INF)
    if not finite:
        return []
    hull: list[tuple[int, Ordinate]] = []
    for pt in finite:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # keep only strict left turns: slopes strictly increasing
            if (x2 - x1) * (pt[1] - y1) - (y2 - y1) * (pt[0] - x1) <= 0:
                hull.pop()
            else:
                break
        # a later point at the same abscissa can't be lower (one per abscissa)
        hull.append(pt)
    return hull


class NewtonPolygon:
    """Lower hull of a cloud, with side decomposition."""

    def __init__(self, points: PointCloud):
        self.vertices = lower_hull(points)
        self.sides = [
            Side(x0, y0, x1, y1)
            for (x0, y0), (x1, y1) in zip(self.vertices, self.vertices[1:])
        ]

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def principal(self) -> list[Side]:
        """Sides of negative slope."""
        return [s for s in self.sides if s.slope < 0]

    def partial(self, H: int | Fraction) -> list[Side]:
        """Sides of slope strictly below -H (H >= 0 recovers the principal part
        only when no side has slope exactly 0 excluded, i.e. partial(0))."""
        return [s for s in self.sides if s.slope < -Fraction(H)]

    def ordinate_at(self, x: int) -> Fraction:
        for s in self.sides:
            if s.x0 <= x <= s.x1:
                return s.ordinate_at(x)
        if len(self.vertices) == 1 and self.vertices[0][0] == x:
            return Fraction(self.vertices[0][1])
        raise ValueError("abscissa outside polygon")


def chain_length(sides: Sequence[Side]) -> int:
    """Total lattice width of a chain of sides."""
    return sum(s.width for s in sides)


def polygon_index(sides: Sequence[Side]) -> int:
    """Number of integer lattice points (x, y) with x in [max(1, x0), xlast],
    y strictly above the last vertex's ordinate, and on or below the chain."""
    if not sides:
        return 0
    y_last = Fraction(sides[-1].y1)
    if y_last.denominator != 1:
        raise ValueError("chain must end at an integer ordinate")
    total = 0
    idx = 0
    for x in range(max(1, sides[0].x0), sides[-1].x1 + 1):
        while sides[idx].x1 < x:
            idx += 1
        total += max(0, math.floor(sides[idx].ordinate_at(x)) - int(y_last))
    return total


def lambda_component(points: PointCloud, lam: Fraction) -> tuple[int, int]:
    """Abscissa span [s, s'] where the support line of slope lam touches the
    cloud: the points minimizing y - lam * x."""
    best: Fraction | None = None
    lo = hi = -1
    for x, y in points:
        if y == INF:
            continue
        val = Fraction(y) - Fraction(lam) * x
        if best is None or val < best:
            best, lo, hi = val, x, x
        elif val == best:
            lo, hi = min(lo, x), max(hi, x)
    if best is None:
        raise ValueError("empty cloud")
    return lo, hi


def render_ascii(points: PointCloud, width: int = 64) -> str:
    """Small diagnostic plot of a cloud and its hull for trace output."""
    finite = [(x, y) for x, y in points if y != INF]
    if not finite:
        return "(empty cloud)"
    verts = lower_hull(finite)
    xs = [x for x, _ in finite]
    ys = [Fraction(y) for _, y in finite]
    x_min, x_max = min(xs), max(xs)
    y_min, y_max = min(ys), max(ys)
    rows = min(16, int(y_max - y_min) + 1) or 1
    cols = min(width, x_max - x_min + 1)
    grid = [[" "] * cols for _ in range(rows)]

    def cell(x: int, y: Fraction) -> tuple[int, int]:
        cx = 0 if x_max == x_min else round((x - x_min) * (cols - 1) / (x_max - x_min))
        cy = 0 if y_max == y_min else round((y - y_min) * (rows - 1) / (y_max - y_min))
        return rows - 1 - cy, cx

    for x, y in finite:
        r, c = cell(x, Fraction(y))
        grid[r][c] = "."
    for x, y in verts:
        r, c = cell(x, Fraction(y))
        grid[r][c] = "o"
    lines = ["".join(row) for row in grid]
    lines.append(f"x: {x_min}..{x_max}  y: {y_min}..{y_max}  vertices: {verts}")
    return "\n".join(lines)
