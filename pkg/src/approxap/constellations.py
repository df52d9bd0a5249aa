"""Planar constellation search: dilated translates of a pattern near a set.

The approximation distance uses the L-infinity norm so every comparison is
exact integer arithmetic; acceptance is the same rational-exponent test as
for progressions, distance^q <= delta^p.
"""
from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass

from .ap_core import RationalExponent
from .errors import EmptySetError, InvalidArgumentError
from .near_miss import iroot

Point = tuple[int, int]


@dataclass(frozen=True)
class Pattern2D:
    """A finite nonempty set of integer points, the constellation shape."""

    points: tuple[Point, ...]

    def __post_init__(self) -> None:
        if not self.points:
            raise InvalidArgumentError("pattern must be nonempty")
        if len(set(self.points)) != len(self.points):
            raise InvalidArgumentError("pattern contains duplicate points")

    @classmethod
    def parse(cls, text: str) -> "Pattern2D":
        """Parse 'x0,y0;x1,y1;...'."""
        pts = []
        for chunk in text.split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            try:
                xs, ys = chunk.split(",")
                pts.append((int(xs), int(ys)))
            except ValueError:
                raise InvalidArgumentError(f"cannot parse pattern point {chunk!r}") from None
        return cls(tuple(pts))

    def bbox(self) -> tuple[int, int, int, int]:
        xs = [p[0] for p in self.points]
        ys = [p[1] for p in self.points]
        return min(xs), min(ys), max(xs), max(ys)


class PlanarSet:
    """Sorted, deduplicated set of integer points with bucketed L-infinity queries."""

    def __init__(self, points: list[Point] | tuple[Point, ...], bucket: int | None = None):
        self.points: tuple[Point, ...] = tuple(sorted(set(points)))
        if bucket is None:
            bucket = 8
        self._bucket = max(1, bucket)
        self._grid: dict[Point, list[Point]] = {}
        for pt in self.points:
            key = (pt[0] // self._bucket, pt[1] // self._bucket)
            self._grid.setdefault(key, []).append(pt)

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, pt: Point) -> bool:
        key = (pt[0] // self._bucket, pt[1] // self._bucket)
        return pt in self._grid.get(key, ())

    def nearest_linf(self, x: int, y: int) -> int:
        """min over points of max(|dx|, |dy|), by expanding bucket rings.

        Seeded with the nearest-in-x neighbors so the ring expansion is
        bounded; a point in bucket ring r is at distance > (r-1)*bucket,
        which gives the exact stopping rule.
        """
        if not self.points:
            raise EmptySetError("nearest query over an empty planar set")
        i = bisect_left(self.points, (x, y))
        best: int | None = None
        for cand in (i - 1, i, i + 1):
            if 0 <= cand < len(self.points):
                px, py = self.points[cand]
                d = max(abs(px - x), abs(py - y))
                if best is None or d < best:
                    best = d
        assert best is not None
        if best == 0:
            return 0

        b = self._bucket
        cx, cy = x // b, y // b
        ring = 0
        while (ring - 1) * b <= best:
            for kx in range(cx - ring, cx + ring + 1):
                for ky in range(cy - ring, cy + ring + 1):
                    if max(abs(kx - cx), abs(ky - cy)) != ring:
                        continue
                    for px, py in self._grid.get((kx, ky), ()):
                        d = max(abs(px - x), abs(py - y))
                        if d < best:
                            best = d
                            if best == 0:
                                return 0
            ring += 1
        return best


@dataclass(frozen=True)
class ConstellationMatch:
    """A verified dilated translate: distance^q <= delta^p holds exactly."""

    delta: int
    shift: Point
    distance: int
    alpha: RationalExponent


def constellation_distance(
    C: Pattern2D, delta: int, shift: Point, A: PlanarSet, threshold: int | None = None
) -> int:
    """max over pattern points of the L-infinity distance from delta*c + shift to A."""
    if delta < 1:
        raise InvalidArgumentError(f"delta must be >= 1, got {delta}")
    if not len(A):
        raise EmptySetError("constellation_distance over an empty set")
    worst = 0
    for cx, cy in C.points:
        d = A.nearest_linf(delta * cx + shift[0], delta * cy + shift[1])
        if d > worst:
            worst = d
            if threshold is not None and worst > threshold:
                return worst
    return worst


def search_constellation(
    A: PlanarSet,
    C: Pattern2D,
    alpha: RationalExponent,
    delta_0: int,
    window: tuple[int, int, int, int],
) -> ConstellationMatch | None:
    """Find (delta >= delta_0, shift) with distance <= delta^alpha, exactly verified.

    Dilations are scanned from the largest that structurally fits the
    window downward; shifts walk a grid coarsened to the candidate distance
    bound (the floor of delta^alpha), every candidate verified exactly.
    A returned match is certain; None means this stride found nothing.
    """
    alpha.require_unit_interval()
    if delta_0 < 1:
        raise InvalidArgumentError(f"delta_0 must be >= 1, got {delta_0}")
    x0, y0, x1, y1 = window
    if x1 < x0 or y1 < y0:
        raise InvalidArgumentError(f"empty window {window}")
    bx0, by0, bx1, by1 = C.bbox()
    w, h = bx1 - bx0, by1 - by0

    def max_delta() -> int:
        dx = (x1 - x0) // w if w > 0 else None
        dy = (y1 - y0) // h if h > 0 else None
        if dx is None and dy is None:
            return max(x1 - x0, y1 - y0, delta_0)
        return min(d for d in (dx, dy) if d is not None)

    for delta in range(max_delta(), delta_0 - 1, -1):
        allowed = iroot(delta**alpha.p, alpha.q)
        stride = max(1, allowed)
        tx_lo, tx_hi = x0 - delta * bx0, x1 - delta * bx1
        ty_lo, ty_hi = y0 - delta * by0, y1 - delta * by1
        if tx_hi < tx_lo or ty_hi < ty_lo:
            continue
        for tx in range(tx_lo, tx_hi + 1, stride):
            for ty in range(ty_lo, ty_hi + 1, stride):
                d = constellation_distance(C, delta, (tx, ty), A, threshold=allowed)
                if d <= allowed and d**alpha.q <= delta**alpha.p:
                    return ConstellationMatch(
                        delta=delta, shift=(tx, ty), distance=d, alpha=alpha
                    )
    return None


def load_planar_set(path: str) -> PlanarSet:
    """Read 'x,y' integer pairs, one per line; blank lines ignored."""
    from .errors import ParseError

    pts: list[Point] = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            tok = line.strip()
            if not tok:
                continue
            try:
                xs, ys = tok.split(",")
                pts.append((int(xs), int(ys)))
            except ValueError:
                raise ParseError(f"{path}: line {lineno}: not an integer pair: {tok!r}") from None
    if not pts:
        raise EmptySetError(f"{path}: no points found")
    return PlanarSet(pts)
