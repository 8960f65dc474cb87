"""Closed-set representations and point-level operations.

A ClosedSet pairs an ambient space with one of a small family of
finite descriptions.  Every description denotes a nonempty closed
subset of its ambient, and every operation that consumes one either
has an exact closed form for the representation or raises
UnsupportedPair.

SampledCloud is deliberately second class: it stores a finite sample
of an unknown closed set together with a resolution h (the sample is
h-dense in the true set and vice versa).  Distance queries answer for
the sample; interval-valued operations widen their certificates by the
declared slack.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import geom
from .errors import UnsupportedPair
from .spaces import (
    EUCLIDEAN,
    FINITE,
    LINE,
    OPEN_INTERVAL,
    AmbientSpace,
    Point,
)


@dataclass(frozen=True)
class FinitePoints:
    points: tuple[Point, ...]


@dataclass(frozen=True)
class IntervalUnion:
    intervals: tuple[tuple[float, float], ...]  # disjoint, sorted


@dataclass(frozen=True)
class BoxUnion:
    boxes: tuple[tuple[tuple[float, ...], tuple[float, ...]], ...]  # (lo, hi) corners


@dataclass(frozen=True)
class BallUnion:
    balls: tuple[tuple[tuple[float, ...], float], ...]  # (center, radius)


@dataclass(frozen=True)
class SegmentUnion:
    segments: tuple[tuple[tuple[float, ...], tuple[float, ...]], ...]


@dataclass(frozen=True)
class Ray:
    anchor: Point
    direction: Point  # unit vector; +-1.0 on the line


@dataclass(frozen=True)
class SampledCloud:
    points: tuple[Point, ...]
    resolution: float


Rep = FinitePoints | IntervalUnion | BoxUnion | BallUnion | SegmentUnion | Ray | SampledCloud


def _merge_intervals(ivs):
    ivs = sorted((float(a), float(b)) for a, b in ivs)
    for a, b in ivs:
        if b < a:
            raise ValueError(f"interval [{a}, {b}] is empty")
    merged = [list(ivs[0])]
    for a, b in ivs[1:]:
        if a <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], b)
        else:
            merged.append([a, b])
    return tuple((a, b) for a, b in merged)


@dataclass(frozen=True)
class ClosedSet:
    space: AmbientSpace
    rep: Rep

    # -- constructors -------------------------------------------------

    @staticmethod
    def points(space: AmbientSpace, pts) -> "ClosedSet":
        canon = sorted({space.canon_point(p) for p in pts})
        if not canon:
            raise ValueError("a closed set must be nonempty")
        return ClosedSet(space, FinitePoints(tuple(canon)))

    @staticmethod
    def intervals(space: AmbientSpace, ivs) -> "ClosedSet":
        if not space.is_one_dimensional or space.kind == FINITE:
            raise ValueError("interval unions live on the line or an interval subspace")
        merged = _merge_intervals(ivs)
        if space.kind == OPEN_INTERVAL:
            a, b = space.bounds
            if not all(a < lo and hi < b for lo, hi in merged):
                raise ValueError("intervals must sit strictly inside the open subspace")
        if not merged:
            raise ValueError("a closed set must be nonempty")
        return ClosedSet(space, IntervalUnion(merged))

    @staticmethod
    def balls(space: AmbientSpace, balls) -> "ClosedSet":
        if space.kind != EUCLIDEAN:
            raise ValueError("ball unions need a Euclidean ambient")
        canon = []
        for c, r in balls:
            r = float(r)
            if r < 0:
                raise ValueError("negative radius")
            canon.append((space.canon_point(c), r))
        if not canon:
            raise ValueError("a closed set must be nonempty")
        return ClosedSet(space, BallUnion(tuple(sorted(canon))))

    @staticmethod
    def boxes(space: AmbientSpace, boxes) -> "ClosedSet":
        if space.kind != EUCLIDEAN:
            raise ValueError("box unions need a Euclidean ambient")
        canon = []
        for lo, hi in boxes:
            lo = space.canon_point(lo)
            hi = space.canon_point(hi)
            if any(h < l for l, h in zip(lo, hi)):
                raise ValueError(f"box {lo} .. {hi} is empty")
            canon.append((lo, hi))
        if not canon:
            raise ValueError("a closed set must be nonempty")
        return ClosedSet(space, BoxUnion(tuple(sorted(canon))))

    @staticmethod
    def segments(space: AmbientSpace, segs) -> "ClosedSet":
        if space.kind != EUCLIDEAN:
            raise ValueError("segment unions need a Euclidean ambient")
        canon = tuple(sorted((space.canon_point(p), space.canon_point(q)) for p, q in segs))
        if not canon:
            raise ValueError("a closed set must be nonempty")
        return ClosedSet(space, SegmentUnion(canon))

    @staticmethod
    def ray(space: AmbientSpace, anchor, direction) -> "ClosedSet":
        if not space.is_euclidean_kind or space.kind == OPEN_INTERVAL:
            raise ValueError("rays need an unbounded Euclidean ambient")
        anchor = space.canon_point(anchor)
        if space.kind == LINE:
            d = float(direction[0]) if isinstance(direction, (tuple, list)) else float(direction)
            if d == 0.0:
                raise ValueError("zero direction")
            direction = 1.0 if d > 0 else -1.0
        else:
            direction = geom.unit(space.canon_point(direction))
        return ClosedSet(space, Ray(anchor, direction))

    @staticmethod
    def cloud(space: AmbientSpace, pts, resolution: float) -> "ClosedSet":
        resolution = float(resolution)
        if resolution < 0:
            raise ValueError("resolution must be nonnegative")
        canon = sorted({space.canon_point(p) for p in pts})
        if not canon:
            raise ValueError("a closed set must be nonempty")
        return ClosedSet(space, SampledCloud(tuple(canon), resolution))

    # -- structure ----------------------------------------------------

    @property
    def slack(self) -> float:
        """Representation slack: how far a distance answer may sit from
        the truth (zero for every exact representation)."""
        return self.rep.resolution if isinstance(self.rep, SampledCloud) else 0.0

    def components(self):
        """The set as a list of primitive shapes (see geom module).

        1-D sets normalize everything to points and intervals (a 1-D
        ray becomes a half-infinite interval), which keeps the 1-D
        sweep algorithms uniform.
        """
        space, rep = self.space, self.rep
        one_d = space.is_one_dimensional and space.kind != FINITE

        if isinstance(rep, (FinitePoints, SampledCloud)):
            if one_d:
                return [("point", float(p[0] if isinstance(p, tuple) else p))
                        for p in rep.points]
            return [("point", p) for p in rep.points]
        if isinstance(rep, IntervalUnion):
            return [("interval", iv) for iv in rep.intervals]
        if isinstance(rep, BallUnion):
            if one_d:
                return [("interval", (c[0] - r, c[0] + r)) for c, r in rep.balls]
            return [("ball", b) for b in rep.balls]
        if isinstance(rep, BoxUnion):
            if one_d:
                return [("interval", (lo[0], hi[0])) for lo, hi in rep.boxes]
            return [("box", b) for b in rep.boxes]
        if isinstance(rep, SegmentUnion):
            return [("segment", s) for s in rep.segments]
        if isinstance(rep, Ray):
            if one_d:
                a = float(rep.anchor)
                return [("interval", (a, math.inf) if rep.direction > 0 else (-math.inf, a))]
            return [("ray", (rep.anchor, rep.direction))]
        raise UnsupportedPair(f"unknown representation {type(rep).__name__}")


# ---------------------------------------------------------------------------
# operations


def dist_to_set(x, A: ClosedSet, ) -> float:
    """Distance from a point to the set.

    Exact for every exact representation; for a SampledCloud the answer
    is the distance to the sample and is within A.slack of the truth.
    """
    space = A.space
    x = space.canon_point(x)
    if space.kind == FINITE:
        return min(space.matrix[x][p] for p in _finite_indices(A))
    best = math.inf
    for comp in A.components():
        best = min(best, geom.gap(("point", x), comp))
        if best == 0.0:
            break
    return best


def _finite_indices(A: ClosedSet):
    if not isinstance(A.rep, (FinitePoints, SampledCloud)):
        raise UnsupportedPair("finite metric spaces only carry point sets")
    return A.rep.points


def in_r_neighborhood(x, A: ClosedSet, r: float) -> bool:
    """Is x strictly within distance r of A (i.e. in the open
    r-enlargement)?"""
    return dist_to_set(x, A) < r


def is_bounded(A: ClosedSet) -> bool:
    return math.isfinite(bounding_radius(A))


def bounding_radius(A: ClosedSet) -> float:
    """sup of d(base point, a) over the set; inf for rays.

    Internal helper for window saturation; the public metric API wraps
    infinities in ExtReal instead of leaking floats.
    """
    space = A.space
    if space.kind == FINITE:
        return max(space.matrix[space.base_point][p] for p in _finite_indices(A))
    x0 = space.canon_point(space.base_point)
    out = 0.0
    for kind, data in A.components():
        if kind == "point":
            d = abs(x0 - data) if isinstance(data, float) else math.dist(x0, data)
        elif kind == "interval":
            lo, hi = data
            if math.isinf(lo) or math.isinf(hi):
                return math.inf
            d = max(abs(x0 - lo), abs(x0 - hi))
        elif kind == "ball":
            c, r = data
            d = math.dist(x0, c) + r
        elif kind == "box":
            lo, hi = data
            d = math.dist(x0, tuple(h if abs(h - c) >= abs(l - c) else l
                                    for l, h, c in zip(lo, hi, x0)))
        elif kind == "segment":
            p, q = data
            d = max(math.dist(x0, p), math.dist(x0, q))
        else:  # ray
            return math.inf
        out = max(out, d)
    return out


def truncate(A: ClosedSet, L: float):
    """A intersected with the closed ball of radius L around the base
    point, in the same representation family.

    Returns None when the intersection is empty.  Partial overlaps that
    the family cannot express exactly (a ball or solid box cut by the
    window sphere) raise UnsupportedPair.
    """
    space = A.space
    L = float(L)
    if L < 0:
        raise ValueError("radius must be nonnegative")
    rep = A.rep

    if space.kind == FINITE:
        kept = tuple(p for p in _finite_indices(A) if space.matrix[space.base_point][p] <= L)
        if not kept:
            return None
        return ClosedSet(space, type(rep)(kept) if isinstance(rep, FinitePoints)
                         else SampledCloud(kept, rep.resolution))

    x0 = space.canon_point(space.base_point)

    if isinstance(rep, (FinitePoints, SampledCloud)):
        if space.is_one_dimensional:
            kept = tuple(p for p in rep.points if abs(p - x0) <= L)
        else:
            kept = tuple(p for p in rep.points if math.dist(p, x0) <= L)
        if not kept:
            return None
        new = FinitePoints(kept) if isinstance(rep, FinitePoints) else SampledCloud(kept, rep.resolution)
        return ClosedSet(space, new)

    if isinstance(rep, IntervalUnion):
        lo_w, hi_w = x0 - L, x0 + L
        clipped = [(max(a, lo_w), min(b, hi_w)) for a, b in rep.intervals]
        clipped = [(a, b) for a, b in clipped if a <= b]
        if not clipped:
            return None
        return ClosedSet(space, IntervalUnion(tuple(clipped)))

    if isinstance(rep, BallUnion):
        kept = []
        for c, r in rep.balls:
            d = math.dist(c, x0)
            if d + r <= L:
                kept.append((c, r))
            elif d - r > L:
                continue
            else:
                raise UnsupportedPair(
                    "ball partially overlaps the window; the intersection is not a ball union"
                )
        if not kept:
            return None
        return ClosedSet(space, BallUnion(tuple(kept)))

    if isinstance(rep, BoxUnion):
        kept = []
        for lo, hi in rep.boxes:
            far = math.dist(x0, tuple(h if abs(h - c) >= abs(l - c) else l
                                      for l, h, c in zip(lo, hi, x0)))
            if far <= L:
                kept.append((lo, hi))
            elif geom.dist_point_box(x0, lo, hi) > L:
                continue
            else:
                raise UnsupportedPair(
                    "box partially overlaps the window; the intersection is not a box union"
                )
        if not kept:
            return None
        return ClosedSet(space, BoxUnion(tuple(kept)))

    if isinstance(rep, SegmentUnion):
        kept = []
        for p, q in rep.segments:
            piece = _clip_param_to_ball(p, geom.sub(q, p), 1.0, x0, L)
            if piece is None:
                continue
            t1, t2 = piece
            kept.append((geom.add(p, geom.scale(geom.sub(q, p), t1)),
                         geom.add(p, geom.scale(geom.sub(q, p), t2))))
        if not kept:
            return None
        return ClosedSet(space, SegmentUnion(tuple(kept)))

    if isinstance(rep, Ray):
        if space.is_one_dimensional:
            a = float(rep.anchor)
            lo_w, hi_w = x0 - L, x0 + L
            if rep.direction > 0:
                lo, hi = max(a, lo_w), hi_w
            else:
                lo, hi = lo_w, min(a, hi_w)
            if lo > hi:
                return None
            return ClosedSet(space, IntervalUnion(((lo, hi),)))
        piece = _clip_param_to_ball(rep.anchor, rep.direction, math.inf, x0, L)
        if piece is None:
            return None
        t1, t2 = piece
        p = geom.add(rep.anchor, geom.scale(rep.direction, t1))
        q = geom.add(rep.anchor, geom.scale(rep.direction, t2))
        return ClosedSet(space, SegmentUnion(((p, q),)))

    raise UnsupportedPair(f"cannot truncate {type(rep).__name__}")


def _clip_param_to_ball(p, d, tmax, center, L):
    """Parameter range of {p + t d : 0 <= t <= tmax} inside the closed
    ball B(center, L), or None.  Solves the quadratic exactly."""
    w = geom.sub(p, center)
    a = geom.dot(d, d)
    b = 2.0 * geom.dot(w, d)
    c = geom.dot(w, w) - L * L
    if a == 0.0:
        return (0.0, min(tmax, 0.0)) if c <= 0.0 else None
    disc = b * b - 4.0 * a * c
    if disc < 0.0:
        return None
    s = math.sqrt(disc)
    t1 = (-b - s) / (2.0 * a)
    t2 = (-b + s) / (2.0 * a)
    t1 = max(t1, 0.0)
    t2 = min(t2, tmax)
    if t1 > t2:
        return None
    return (t1, t2)


def union_sets(A: ClosedSet, B: ClosedSet) -> ClosedSet:
    """Union of two sets in one representation.

    1-D sets of mixed kinds merge through interval normal form; in
    higher dimension only same-family unions are expressible.
    """
    A.space.require_same(B.space)
    space = A.space
    ra, rb = A.rep, B.rep
    if isinstance(ra, (FinitePoints,)) and isinstance(rb, (FinitePoints,)):
        return ClosedSet.points(space, ra.points + rb.points)
    if space.is_one_dimensional and space.kind != FINITE:
        ivs = []
        for S in (A, B):
            for kind, data in S.components():
                if kind == "point":
                    ivs.append((data, data))
                elif kind == "interval":
                    if math.isinf(data[0]) or math.isinf(data[1]):
                        raise UnsupportedPair("1-D unions with rays are not representable")
                    ivs.append(data)
                else:
                    raise UnsupportedPair("cannot union this 1-D representation")
        return ClosedSet.intervals(space, ivs)
    if isinstance(ra, BallUnion) and isinstance(rb, BallUnion):
        return ClosedSet.balls(space, ra.balls + rb.balls)
    if isinstance(ra, BoxUnion) and isinstance(rb, BoxUnion):
        return ClosedSet.boxes(space, ra.boxes + rb.boxes)
    if isinstance(ra, SegmentUnion) and isinstance(rb, SegmentUnion):
        return ClosedSet.segments(space, ra.segments + rb.segments)
    raise UnsupportedPair(
        f"no common representation for {type(ra).__name__} | {type(rb).__name__}"
    )


def is_subset(A: ClosedSet, B: ClosedSet, tol: float = 1e-9) -> bool:
    """Exact containment test A <= B for the supported pairs.

    The tolerance only softens boundary comparisons (a point that
    lands within tol of B counts as inside); set tol=0 for bit-exact
    checks.  Raises UnsupportedPair when neither True nor False can be
    certified for the representations at hand.
    """
    A.space.require_same(B.space)
    if isinstance(A.rep, SampledCloud):
        raise UnsupportedPair("containment of a sampled cloud cannot be certified")

    if isinstance(A.rep, FinitePoints):
        return all(dist_to_set(p, B) <= tol for p in A.rep.points)

    if A.space.is_one_dimensional and A.space.kind != FINITE:
        b_ivs = []
        for kind, data in B.components():
            b_ivs.append((data, data) if kind == "point" else data)
        b_ivs.sort()
        for kind, data in A.components():
            a_lo, a_hi = (data, data) if kind == "point" else data
            # disjoint closed targets: a connected piece must fit in one of them
            if not any(lo - tol <= a_lo and a_hi <= hi + tol for lo, hi in b_ivs):
                return False
        return True

    b_comps = B.components()
    if isinstance(A.rep, Ray):
        a, u = A.rep.anchor, A.rep.direction
        for kind, data in b_comps:
            if kind == "ray":
                b, v = data
                if geom.dot(u, v) >= 1.0 - tol and geom.dist_point_ray(a, b, v) <= tol:
                    return True
        if all(kind != "ray" for kind, _ in b_comps):
            return False  # an unbounded set never fits in a bounded one
        raise UnsupportedPair("ray containment is only decidable against rays")

    # bounded convex components: check vertices / closed forms against a
    # single target component (sufficient); otherwise undecidable here
    def comp_inside(comp, target) -> bool:
        kind, data = comp
        tkind, tdata = target
        if tkind == "ball":
            c, r = tdata
            if kind == "ball":
                c2, r2 = data
                return math.dist(c, c2) + r2 <= r + tol
            if kind == "box":
                lo, hi = data
                corners = _box_corners(lo, hi)
                return all(math.dist(c, v) <= r + tol for v in corners)
            if kind == "segment":
                p, q = data
                return math.dist(c, p) <= r + tol and math.dist(c, q) <= r + tol
        if tkind == "box":
            lo, hi = tdata
            if kind == "ball":
                c, r = data
                return all(l - tol <= ci - r and ci + r <= h + tol for ci, l, h in zip(c, lo, hi))
            if kind == "box":
                lo2, hi2 = data
                return all(l - tol <= l2 and h2 <= h + tol for l, h, l2, h2 in zip(lo, hi, lo2, hi2))
            if kind == "segment":
                p, q = data
                return (geom.dist_point_box(p, lo, hi) <= tol
                        and geom.dist_point_box(q, lo, hi) <= tol)
        if tkind == "segment":
            if kind == "segment":
                p, q = data
                return (geom.dist_point_segment(p, *tdata) <= tol
                        and geom.dist_point_segment(q, *tdata) <= tol)
        if tkind == "point":
            if kind == "segment":
                p, q = data
                tp = tdata
                return math.dist(p, tp) <= tol and math.dist(q, tp) <= tol
            if kind == "ball":
                c, r = data
                return r <= tol and math.dist(c, tdata) <= tol
        return False

    for comp in A.components():
        if not any(comp_inside(comp, t) for t in b_comps):
            if len(b_comps) == 1:
                return False
            raise UnsupportedPair(
                "containment against a multi-component target is only decidable "
                "when each piece fits a single component"
            )
    return True


def _box_corners(lo, hi):
    corners = [()]
    for l, h in zip(lo, hi):
        corners = [c + (v,) for c in corners for v in ((l, h) if l != h else (l,))]
    return corners


def representative_points(A: ClosedSet, m: int):
    """Deterministic sample of points of A (used by the canonical
    hit-neighborhood construction).  Points come out sorted; at most m."""
    if m < 1:
        raise ValueError("need at least one sample point")
    space = A.space
    if space.kind == FINITE:
        return list(_finite_indices(A))[:m]
    out = set()
    for kind, data in A.components():
        if kind == "point":
            out.add(data)
        elif kind == "interval":
            lo, hi = data
            pick = [v for v in (lo, hi, 0.5 * (lo + hi)) if math.isfinite(v)]
            if not pick:
                pick = [0.0]
            out.update(pick)
        elif kind == "ball":
            c, r = data
            out.add(c)
            for i in range(len(c)):
                for s in (-r, r):
                    out.add(tuple(x + s if j == i else x for j, x in enumerate(c)))
        elif kind == "box":
            lo, hi = data
            out.update(_box_corners(lo, hi))
            out.add(tuple(0.5 * (l + h) for l, h in zip(lo, hi)))
        elif kind == "segment":
            p, q = data
            out.update([p, q, tuple(0.5 * (a + b) for a, b in zip(p, q))])
        else:  # ray
            a, u = data
            out.update(geom.add(a, geom.scale(u, float(k))) for k in range(m))
    return sorted(out)[:m]
