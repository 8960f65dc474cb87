"""Maps between ambient spaces and the functions they induce on
closed sets.

Every map knows how to push each exact representation forward to an
exact representation of the closed image (closure taken where the raw
image is not closed, e.g. the far end of a ray under a bounded map).
Representations with no exact finite image raise UnsupportedPair rather
than silently approximating; sampled clouds go through only when the
map has a Lipschitz constant to rescale their resolution.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import geom
from .errors import UnsupportedPair
from .hypermetrics import (CertifiedValue, aw_distance, hausdorff,
                           hausdorff_lower, hausdorff_upper)
from .sets import (ClosedSet, bounding_radius, dist_to_set, is_bounded,
                   representative_points)
from .spaces import (EUCLIDEAN, FINITE, LINE, OPEN_INTERVAL, AmbientSpace)

_HALF_PI = math.pi / 2.0


# ---------------------------------------------------------------------------
# distance ranges (shared by image rules and preimage analysis)


def _far_from_point(x, comp) -> float:
    """sup of d(x, y) over a primitive shape (inf when unbounded)."""
    kind, data = comp
    if kind == "point":
        if isinstance(data, tuple):
            return math.dist(x, data)
        return abs(x - data)
    if kind == "interval":
        lo, hi = data
        if math.isinf(lo) or math.isinf(hi):
            return math.inf
        return max(abs(x - lo), abs(x - hi))
    if kind == "ball":
        c, r = data
        return math.dist(x, c) + r
    if kind == "box":
        lo, hi = data
        far = tuple(h if abs(h - a) >= abs(l - a) else l for l, h, a in zip(lo, hi, x))
        return math.dist(x, far)
    if kind == "segment":
        p, q = data
        return max(math.dist(x, p), math.dist(x, q))
    return math.inf  # ray


def dist_range(anchor, A: ClosedSet) -> tuple[float, float]:
    """(inf, sup) of d(anchor, y) over A; sup may be math.inf."""
    space = A.space
    anchor = space.canon_point(anchor)
    if space.kind == FINITE:
        row = space.matrix[anchor]
        ds = [row[p] for p in A.rep.points]
        return min(ds), max(ds)
    lo = math.inf
    hi = 0.0
    for comp in A.components():
        lo = min(lo, geom.gap(("point", anchor), comp))
        hi = max(hi, _far_from_point(anchor, comp))
    return lo, hi


# ---------------------------------------------------------------------------
# the map catalog


@dataclass(frozen=True)
class Identity:
    space: AmbientSpace

    @property
    def domain(self):
        return self.space

    @property
    def codomain(self):
        return self.space

    def apply(self, x):
        return self.space.canon_point(x)

    def image(self, A: ClosedSet) -> ClosedSet:
        self.space.require_same(A.space)
        return A

    def lipschitz_constant(self):
        return 1.0

    def uniform_modulus(self, eps: float):
        return float(eps)

    def preserves_boundedness(self):
        return True

    def describe(self):
        return "identity"


@dataclass(frozen=True)
class Affine:
    """x -> a*x + b on the line."""

    a: float
    b: float

    @property
    def domain(self):
        return AmbientSpace.line()

    @property
    def codomain(self):
        return AmbientSpace.line()

    def apply(self, x):
        return self.a * float(x) + self.b

    def image(self, A: ClosedSet) -> ClosedSet:
        self.domain.require_same(A.space)
        space, rep = self.codomain, A.rep
        name = type(rep).__name__
        if self.a == 0.0:
            return ClosedSet.points(space, [self.b])
        if name in ("FinitePoints", "SampledCloud"):
            pts = [self.apply(p) for p in rep.points]
            if name == "SampledCloud":
                return ClosedSet.cloud(space, pts, abs(self.a) * rep.resolution)
            return ClosedSet.points(space, pts)
        if name == "IntervalUnion":
            ivs = [tuple(sorted((self.apply(lo), self.apply(hi))))
                   for lo, hi in rep.intervals]
            return ClosedSet.intervals(space, ivs)
        if name == "Ray":
            d = rep.direction if self.a > 0 else -rep.direction
            return ClosedSet.ray(space, self.apply(rep.anchor), d)
        raise UnsupportedPair(f"affine image of {name}")

    def lipschitz_constant(self):
        return abs(self.a)

    def uniform_modulus(self, eps: float):
        return float(eps) if self.a == 0.0 else float(eps) / abs(self.a)

    def preserves_boundedness(self):
        return True

    def describe(self):
        return f"affine(a={self.a}, b={self.b})"


def _np(mat):
    return np.array(mat, dtype=float)


@dataclass(frozen=True)
class LinearMatrix:
    """x -> M x between Euclidean spaces (matrix stored row-major)."""

    matrix: tuple

    def __post_init__(self):
        m = _np(self.matrix)
        if m.ndim != 2 or m.size == 0:
            raise ValueError("need a 2-D matrix")
        object.__setattr__(self, "matrix", tuple(tuple(float(v) for v in row) for row in m))

    @property
    def _m(self):
        return _np(self.matrix)

    @property
    def domain(self):
        n = len(self.matrix[0])
        return AmbientSpace.line() if n == 1 else AmbientSpace.euclidean(n)

    @property
    def codomain(self):
        p = len(self.matrix)
        return AmbientSpace.line() if p == 1 else AmbientSpace.euclidean(p)

    def apply(self, x):
        x = self.domain.canon_point(x)
        vec = x if isinstance(x, tuple) else (x,)
        y = self._m @ _np(vec)
        if len(self.matrix) == 1:
            return float(y[0])
        return tuple(float(v) for v in y)

    def _scaled_orthogonal(self) -> Optional[float]:
        # M^T M = mu^2 I  (within 1e-12 relative) => balls map to balls
        g = self._m.T @ self._m
        mu2 = float(np.mean(np.diag(g)))
        if np.allclose(g, mu2 * np.eye(g.shape[0]), rtol=0.0,
                       atol=1e-12 * max(1.0, mu2)):
            return math.sqrt(mu2)
        return None

    def _signed_perm_diag(self) -> bool:
        m = self._m
        return (np.count_nonzero(m, axis=0) <= 1).all() and \
               (np.count_nonzero(m, axis=1) <= 1).all()

    def image(self, A: ClosedSet) -> ClosedSet:
        self.domain.require_same(A.space)
        space, rep = self.codomain, A.rep
        name = type(rep).__name__
        if name in ("FinitePoints", "SampledCloud"):
            pts = [self.apply(p) for p in rep.points]
            if name == "SampledCloud":
                return ClosedSet.cloud(space, pts, self.sigma_max() * rep.resolution)
            return ClosedSet.points(space, pts)
        if name == "SegmentUnion":
            return ClosedSet.segments(
                space, [(self.apply(p), self.apply(q)) for p, q in rep.segments])
        if name == "Ray":
            u = self._m @ _np(rep.direction)
            a = self.apply(rep.anchor)
            if float(np.linalg.norm(u)) == 0.0:
                return ClosedSet.points(space, [a])
            return ClosedSet.ray(space, a, tuple(float(v) for v in u))
        if name == "BallUnion":
            mu = self._scaled_orthogonal()
            if mu is None:
                raise UnsupportedPair(
                    "balls stay balls only under scaled-orthogonal matrices")
            return ClosedSet.balls(
                space, [(self.apply(c), mu * r) for c, r in rep.balls])
        if name == "BoxUnion":
            if not self._signed_perm_diag():
                raise UnsupportedPair(
                    "boxes stay boxes only under signed-permutation-diagonal matrices")
            out = []
            for lo, hi in rep.boxes:
                a = self.apply(lo)
                b = self.apply(hi)
                out.append((tuple(min(x, y) for x, y in zip(a, b)),
                            tuple(max(x, y) for x, y in zip(a, b))))
            return ClosedSet.boxes(space, out)
        if name == "IntervalUnion":
            # 1-column matrix: an interval maps to an interval or a segment
            out = []
            for lo, hi in rep.intervals:
                if math.isinf(lo) or math.isinf(hi):
                    raise UnsupportedPair("no exact image for an unbounded interval")
                out.append((self.apply(lo), self.apply(hi)))
            if len(self.matrix) == 1:
                return ClosedSet.intervals(space, [tuple(sorted(pq)) for pq in out])
            return ClosedSet.segments(space, out)
        raise UnsupportedPair(f"linear image of {name}")

    def sigma_max(self) -> float:
        return float(np.linalg.svd(self._m, compute_uv=False)[0])

    def sigma_min(self) -> float:
        s = np.linalg.svd(self._m, compute_uv=False)
        # a wide matrix has a kernel regardless of its listed singular values
        if self._m.shape[1] > self._m.shape[0]:
            return 0.0
        return float(s[-1])

    def is_injective(self) -> bool:
        smax = self.sigma_max()
        return self.sigma_min() > 1e-12 * max(1.0, smax)

    def kernel_vector(self):
        _, _, vt = np.linalg.svd(self._m)
        v = vt[-1]
        return tuple(float(x) for x in v)

    def lipschitz_constant(self):
        return self.sigma_max()

    def uniform_modulus(self, eps: float):
        s = self.sigma_max()
        return float(eps) if s == 0.0 else float(eps) / s

    def preserves_boundedness(self):
        return True

    def describe(self):
        return f"linear({self.matrix})"


@dataclass(frozen=True)
class SinReciprocal:
    """x -> sin(1/x) on the open interval (0, 1)."""

    @property
    def domain(self):
        return AmbientSpace.open_interval(0.0, 1.0)

    @property
    def codomain(self):
        return AmbientSpace.line()

    def apply(self, x):
        return math.sin(1.0 / float(x))

    @staticmethod
    def _interval_image(a: float, b: float):
        # image of sin over the reciprocal range [1/b, 1/a]; extrema are
        # exactly +-1 whenever a crest/trough argument falls inside
        u1, u2 = 1.0 / b, 1.0 / a
        if u2 - u1 >= 2.0 * math.pi:
            return (-1.0, 1.0)
        vals = [math.sin(u1), math.sin(u2)]
        crest = _HALF_PI + 2.0 * math.pi * math.ceil((u1 - _HALF_PI) / (2.0 * math.pi))
        trough = 3.0 * _HALF_PI + 2.0 * math.pi * math.ceil(
            (u1 - 3.0 * _HALF_PI) / (2.0 * math.pi))
        hi = 1.0 if u1 <= crest <= u2 else max(vals)
        lo = -1.0 if u1 <= trough <= u2 else min(vals)
        return (lo, hi)

    def image(self, A: ClosedSet) -> ClosedSet:
        self.domain.require_same(A.space)
        space, rep = self.codomain, A.rep
        name = type(rep).__name__
        if name == "FinitePoints":
            return ClosedSet.points(space, [self.apply(p) for p in rep.points])
        if name == "IntervalUnion":
            return ClosedSet.intervals(
                space, [self._interval_image(lo, hi) for lo, hi in rep.intervals])
        raise UnsupportedPair(
            f"sin-reciprocal image of {name} (no uniform modulus to widen by)")

    def lipschitz_constant(self):
        return None  # derivative blows up at 0

    def uniform_modulus(self, eps: float):
        return None

    def preserves_boundedness(self):
        return True

    def oscillation_pair(self, k: int):
        """Points of (0,1) a crest and a trough apart, distance O(1/k^2)."""
        return (1.0 / (_HALF_PI + 2.0 * math.pi * k),
                1.0 / (3.0 * _HALF_PI + 2.0 * math.pi * k))

    def describe(self):
        return "sin-reciprocal"


@dataclass(frozen=True)
class ArctanOfDistance:
    """x -> arctan(d(anchor, x)); 1-Lipschitz into the line."""

    space: AmbientSpace
    anchor: object = None

    def __post_init__(self):
        a = self.space.base_point if self.anchor is None else self.space.canon_point(self.anchor)
        object.__setattr__(self, "anchor", a)

    @property
    def domain(self):
        return self.space

    @property
    def codomain(self):
        return AmbientSpace.line()

    def apply(self, x):
        return math.atan(self.space.distance(self.anchor, x))

    def image(self, A: ClosedSet) -> ClosedSet:
        self.space.require_same(A.space)
        out_space, rep = self.codomain, A.rep
        name = type(rep).__name__
        if name in ("FinitePoints", "SampledCloud") or self.space.kind == FINITE:
            pts = [self.apply(p) for p in rep.points]
            if name == "SampledCloud":
                return ClosedSet.cloud(out_space, pts, rep.resolution)
            return ClosedSet.points(out_space, pts)
        ivs = []
        for comp in A.components():
            dmin = geom.gap(("point", self.anchor), comp)
            dmax = _far_from_point(self.anchor, comp)
            # the closed image: arctan never attains pi/2, the closure does
            ivs.append((math.atan(dmin),
                        _HALF_PI if math.isinf(dmax) else math.atan(dmax)))
        return ClosedSet.intervals(out_space, ivs)

    def lipschitz_constant(self):
        return 1.0

    def uniform_modulus(self, eps: float):
        return float(eps)

    def preserves_boundedness(self):
        return True

    def describe(self):
        return f"arctan-distance(anchor={self.anchor})"


@dataclass(frozen=True)
class PiecewiseMonotone1D:
    """Piecewise-linear map on the line: values at knots, linear between,
    straight tails with the given slopes beyond the first and last knot."""

    knots: tuple
    values: tuple
    left_slope: float = 0.0
    right_slope: float = 0.0

    def __post_init__(self):
        ks = tuple(float(k) for k in self.knots)
        vs = tuple(float(v) for v in self.values)
        if len(ks) != len(vs) or not ks:
            raise ValueError("need equally many knots and values, at least one")
        if any(b <= a for a, b in zip(ks, ks[1:])):
            raise ValueError("knots must be strictly increasing")
        object.__setattr__(self, "knots", ks)
        object.__setattr__(self, "values", vs)
        object.__setattr__(self, "left_slope", float(self.left_slope))
        object.__setattr__(self, "right_slope", float(self.right_slope))

    @property
    def domain(self):
        return AmbientSpace.line()

    @property
    def codomain(self):
        return AmbientSpace.line()

    def apply(self, x):
        x = float(x)
        ks, vs = self.knots, self.values
        if x <= ks[0]:
            return vs[0] + self.left_slope * (x - ks[0])
        if x >= ks[-1]:
            return vs[-1] + self.right_slope * (x - ks[-1])
        i = bisect_right(ks, x) - 1
        t = (x - ks[i]) / (ks[i + 1] - ks[i])
        return vs[i] + t * (vs[i + 1] - vs[i])

    def _interval_image(self, lo: float, hi: float):
        vals = []
        if math.isinf(lo):
            if self.left_slope == 0.0:
                vals.append(self.values[0])
            else:
                vals.append(math.inf if self.left_slope < 0 else -math.inf)
            lo = self.knots[0]
        if math.isinf(hi):
            if self.right_slope == 0.0:
                vals.append(self.values[-1])
            else:
                vals.append(math.inf if self.right_slope > 0 else -math.inf)
            hi = self.knots[-1]
        if lo <= hi:
            vals.extend((self.apply(lo), self.apply(hi)))
            vals.extend(v for k, v in zip(self.knots, self.values) if lo < k < hi)
        return (min(vals), max(vals))

    def image(self, A: ClosedSet) -> ClosedSet:
        self.domain.require_same(A.space)
        space, rep = self.codomain, A.rep
        name = type(rep).__name__
        if name in ("FinitePoints", "SampledCloud"):
            pts = [self.apply(p) for p in rep.points]
            if name == "SampledCloud":
                return ClosedSet.cloud(space, pts,
                                       self.lipschitz_constant() * rep.resolution)
            return ClosedSet.points(space, pts)
        if name == "IntervalUnion":
            return ClosedSet.intervals(
                space, [self._interval_image(lo, hi) for lo, hi in rep.intervals])
        if name == "Ray":
            iv = (rep.anchor, math.inf) if rep.direction > 0 else (-math.inf, rep.anchor)
            return ClosedSet.intervals(space, [self._interval_image(*iv)])
        raise UnsupportedPair(f"piecewise image of {name}")

    def lipschitz_constant(self):
        slopes = [abs(self.left_slope), abs(self.right_slope)]
        slopes.extend(abs((v2 - v1) / (k2 - k1)) for (k1, v1), (k2, v2)
                      in zip(zip(self.knots, self.values),
                             zip(self.knots[1:], self.values[1:])))
        return max(slopes)

    def uniform_modulus(self, eps: float):
        L = self.lipschitz_constant()
        return float(eps) if L == 0.0 else float(eps) / L

    def preserves_boundedness(self):
        return True

    def describe(self):
        return f"piecewise(knots={self.knots})"


@dataclass(frozen=True)
class Composed:
    outer: object
    inner: object

    def __post_init__(self):
        self.outer.domain.require_same(self.inner.codomain, "composition")

    @property
    def domain(self):
        return self.inner.domain

    @property
    def codomain(self):
        return self.outer.codomain

    def apply(self, x):
        return self.outer.apply(self.inner.apply(x))

    def image(self, A: ClosedSet) -> ClosedSet:
        return self.outer.image(self.inner.image(A))

    def lipschitz_constant(self):
        a = self.outer.lipschitz_constant()
        b = self.inner.lipschitz_constant()
        return None if a is None or b is None else a * b

    def uniform_modulus(self, eps: float):
        mid = self.outer.uniform_modulus(eps)
        return None if mid is None else self.inner.uniform_modulus(mid)

    def preserves_boundedness(self):
        return self.outer.preserves_boundedness() and self.inner.preserves_boundedness()

    def describe(self):
        return f"{self.outer.describe()} . {self.inner.describe()}"


# ---------------------------------------------------------------------------
# the induced function on closed sets


def induced_image(f, A: ClosedSet) -> ClosedSet:
    """The closed image of A under f (closure of the pointwise image)."""
    f.domain.require_same(A.space, "map domain")
    return f.image(A)


# ---------------------------------------------------------------------------
# preimage boundedness


@dataclass(frozen=True)
class PreimageReport:
    verdict: str                       # bounded-within | escape-evidence | not-applicable
    radius: Optional[float] = None     # verdict bounded-within: d(base, x) <= radius
    witnesses: tuple = ()              # verdict escape-evidence: points at the radii
    note: str = ""


def _bounded_hull(B: ClosedSet) -> tuple[float, float]:
    lo = math.inf
    hi = -math.inf
    for comp in B.components():
        kind, data = comp
        if kind == "point":
            lo, hi = min(lo, data), max(hi, data)
        else:
            lo, hi = min(lo, data[0]), max(hi, data[1])
    return lo, hi


def check_preimage_boundedness(f, B: ClosedSet, radii=(10.0, 100.0, 1000.0)) -> PreimageReport:
    """Is the preimage of the bounded target B a bounded set?

    Closed forms per catalog map.  Escape evidence is a list of preimage
    points at the scheduled distances from the base point; a bounded
    verdict carries a certified radius.  Targets meeting the image in at
    most one point get the not-applicable verdict: a single fiber says
    nothing about the boundedness condition the induced-map analysis
    needs.
    """
    f.codomain.require_same(B.space, "preimage target")
    if not is_bounded(B):
        raise ValueError("the target of the boundedness check must be bounded")
    base = f.domain.base_point

    if isinstance(f, Identity):
        _, dmax = dist_range(base, B)
        return PreimageReport("bounded-within", radius=dmax, note="identity")

    if isinstance(f, Affine):
        if f.a == 0.0:
            if dist_to_set(f.b, B) > 0.0:
                return PreimageReport("bounded-within", radius=0.0,
                                      note="constant value outside the target: empty preimage")
            return PreimageReport("not-applicable",
                                  note="constant map: the target meets the image in one point")
        lo, hi = _bounded_hull(B)
        r = max(abs((lo - f.b) / f.a - base), abs((hi - f.b) / f.a - base))
        return PreimageReport("bounded-within", radius=r)

    if isinstance(f, LinearMatrix):
        if f.is_injective():
            _, dmax = dist_range(f.codomain.base_point, B)
            return PreimageReport("bounded-within", radius=dmax / f.sigma_min(),
                                  note=f"injective, sigma_min={f.sigma_min():.6g}")
        v = f.kernel_vector()
        m = f._m
        anchor = None
        for y in representative_points(B, 16):
            yv = np.atleast_1d(_np(y))
            x_hat, _, _, _ = np.linalg.lstsq(m, yv, rcond=None)
            if float(np.linalg.norm(m @ x_hat - yv)) <= 1e-9 * (1.0 + float(np.linalg.norm(yv))):
                anchor = x_hat
                break
        if anchor is None:
            return PreimageReport("not-applicable",
                                  note="sampled search found no point of the target in the image")
        wit = tuple(tuple(float(c) for c in anchor + r * _np(v)) for r in radii)
        return PreimageReport("escape-evidence", witnesses=wit,
                              note="kernel direction keeps the image fixed")

    if isinstance(f, SinReciprocal):
        a, b = f.domain.bounds
        r = max(base - a, b - base)
        return PreimageReport("bounded-within", radius=r, note="bounded domain")

    if isinstance(f, ArctanOfDistance):
        space = f.space
        if space.kind == FINITE:
            row = space.matrix[space.base_point]
            return PreimageReport("bounded-within", radius=max(row), note="finite domain")
        if space.kind == OPEN_INTERVAL:
            a, b = space.bounds
            return PreimageReport("bounded-within", radius=max(base - a, b - base),
                                  note="bounded domain")
        escape_lo = None
        reach_hi = 0.0
        for comp in B.components():
            kind, data = comp
            lo, hi = (data, data) if kind == "point" else data
            if lo >= _HALF_PI:
                continue  # arctan of a distance never gets this high
            if hi >= _HALF_PI:
                escape_lo = lo if escape_lo is None else min(escape_lo, lo)
            else:
                reach_hi = max(reach_hi, math.tan(max(hi, 0.0)))
        if escape_lo is not None:
            wit = []
            shift = math.tan((max(escape_lo, 0.0) + _HALF_PI) / 2.0)
            for r in radii:
                d = r if math.atan(r) > escape_lo else shift + r
                if space.kind == LINE:
                    wit.append(f.anchor + d)
                else:
                    wit.append(tuple(c + (d if i == 0 else 0.0)
                                     for i, c in enumerate(f.anchor)))
            return PreimageReport("escape-evidence", witnesses=tuple(wit),
                                  note="the target reaches the arctan ceiling from below")
        r = reach_hi + space.distance(base, f.anchor)
        return PreimageReport("bounded-within", radius=r)

    if isinstance(f, PiecewiseMonotone1D):
        wit_right = f.right_slope == 0.0 and dist_to_set(f.values[-1], B) == 0.0
        wit_left = f.left_slope == 0.0 and dist_to_set(f.values[0], B) == 0.0
        if wit_right or wit_left:
            k = f.knots[-1] if wit_right else f.knots[0]
            sgn = 1.0 if wit_right else -1.0
            return PreimageReport(
                "escape-evidence",
                witnesses=tuple(k + sgn * r for r in radii),
                note="a flat tail sits at a value inside the target")
        lo, hi = _bounded_hull(B)
        cands = [abs(f.knots[0] - base), abs(f.knots[-1] - base)]
        if f.right_slope != 0.0:
            k, v = f.knots[-1], f.values[-1]
            cands.append(max(k, k + max((lo - v) / f.right_slope,
                                        (hi - v) / f.right_slope)) - base)
        if f.left_slope != 0.0:
            k, v = f.knots[0], f.values[0]
            cands.append(base - min(k, k + min((lo - v) / f.left_slope,
                                               (hi - v) / f.left_slope)))
        return PreimageReport("bounded-within", radius=max(cands))

    return PreimageReport("not-applicable",
                          note=f"no preimage analysis for {f.describe()}")


# ---------------------------------------------------------------------------
# uniform continuity


@dataclass(frozen=True)
class ModulusReport:
    verdict: str                       # certified | counterexample | inconclusive
    delta: Optional[float] = None
    pair: Optional[tuple] = None       # counterexample points
    gap: Optional[float] = None        # |f(x) - f(y)| at the pair
    note: str = ""


def estimate_uniform_modulus(f, A: ClosedSet, eps: float, trials: int = 200) -> ModulusReport:
    """A certified delta for eps on A, or a concrete counterexample pair."""
    f.domain.require_same(A.space, "modulus domain")
    eps = float(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")

    if isinstance(f, SinReciprocal):
        rep = A.rep
        name = type(rep).__name__
        if name == "IntervalUnion":
            a = min(lo for lo, _ in rep.intervals)
            pair = _oscillation_pair_in(f, rep.intervals)
            if pair is not None and eps <= 2.0:
                return ModulusReport("counterexample", pair=pair,
                                     gap=abs(f.apply(pair[0]) - f.apply(pair[1])),
                                     note="full oscillations persist at every scale near 0")
            # away from 0 the derivative is bounded by 1/a^2
            return ModulusReport("certified", delta=eps * a * a,
                                 note=f"derivative bound 1/a^2 with a={a}")
        if name == "FinitePoints":
            return _finite_modulus(f, rep.points, eps)
        raise UnsupportedPair(f"no modulus analysis for {name}")

    delta = f.uniform_modulus(eps)
    if delta is not None:
        L = f.lipschitz_constant()
        return ModulusReport("certified", delta=delta,
                             note=f"Lipschitz constant {L}" if L is not None else "catalog modulus")

    if type(A.rep).__name__ in ("FinitePoints", "SampledCloud"):
        return _finite_modulus(f, A.rep.points, eps)
    return ModulusReport("inconclusive", note=f"no modulus rule for {f.describe()}")


def _finite_modulus(f, pts, eps: float) -> ModulusReport:
    # on a finite set a modulus always exists; take half the closest
    # eps-separated pair
    worst = math.inf
    diam = 0.0
    space = f.domain
    for i, p in enumerate(pts):
        for q in pts[:i]:
            d = space.distance(p, q)
            diam = max(diam, d)
            gap = abs(f.apply(p) - f.apply(q))
            if gap >= eps:
                worst = min(worst, d)
    if math.isinf(worst):
        return ModulusReport("certified", delta=max(diam, 1.0),
                             note="no pair separates by eps")
    return ModulusReport("certified", delta=worst / 2.0,
                         note="half the closest eps-separated pair distance")


def _oscillation_pair_in(f: SinReciprocal, intervals):
    best = None
    for lo, hi in intervals:
        # deepest crest/trough pair inside [lo, hi]: largest k keeps both in
        k_hi = math.floor((1.0 / lo - 3.0 * _HALF_PI) / (2.0 * math.pi))
        k_lo = math.ceil((1.0 / hi - _HALF_PI) / (2.0 * math.pi))
        if k_hi < max(k_lo, 0):
            continue
        pair = f.oscillation_pair(k_hi)
        if best is None or abs(pair[0] - pair[1]) < abs(best[0] - best[1]):
            best = pair
    return best


# ---------------------------------------------------------------------------
# the moving-point witness family


@dataclass(frozen=True)
class WitnessRecord:
    m: int
    pair_distance: float
    set_distance: CertifiedValue       # between the base family and its m-th variant
    image_distance: CertifiedValue     # between the induced images
    bound_ok: bool                     # set_distance.hi <= pair_distance
    separated: bool                    # image_distance.lo > set_distance.hi


def uniform_continuity_witness(f, pairs, m: int) -> WitnessRecord:
    """Swap the m-th member of a point family for its close partner and
    measure both hyperspace distances.

    pairs: [(a_1, x_1), ..., (a_M, x_M)] with d(a_n, x_n) < 1/n.  The
    base set B collects the x_n; the variant C_m replaces x_m by a_m.
    For a map that is not uniformly continuous the set distance shrinks
    like the pair distance while the image distance stays separated.
    """
    pairs = [(f.domain.canon_point(a), f.domain.canon_point(x)) for a, x in pairs]
    if not 1 <= m <= len(pairs):
        raise ValueError("m out of range")
    for n, (a, x) in enumerate(pairs, start=1):
        d = f.domain.distance(a, x)
        if not d < 1.0 / n:
            raise ValueError(f"pair {n} is {d} apart, needs < 1/{n}")
    a_m, x_m = pairs[m - 1]
    B = ClosedSet.points(f.domain, [x for _, x in pairs])
    C = ClosedSet.points(f.domain, [a_m if x == x_m else x for _, x in pairs])
    d_pair = f.domain.distance(a_m, x_m)
    d_sets = aw_distance(B, C)
    d_images = aw_distance(induced_image(f, B), induced_image(f, C))
    return WitnessRecord(
        m=m,
        pair_distance=d_pair,
        set_distance=d_sets,
        image_distance=d_images,
        bound_ok=not d_sets.hi.is_inf and d_sets.hi.as_float() <= d_pair,
        separated=d_images.lo > (0.0 if d_sets.hi.is_inf else d_sets.hi.as_float()),
    )


# ---------------------------------------------------------------------------
# the two continuity conditions


@dataclass(frozen=True)
class ConditionsReport:
    cond1: Optional[bool]              # uniformly continuous on bounded sets
    cond2: Optional[bool]              # bounded targets pull back to bounded sets
    overall: Optional[bool]
    cond1_note: str = ""
    cond2_note: str = ""
    cond1_witness: Optional[tuple] = None
    cond2_witness: Optional[object] = None


def aw_continuity_conditions(f) -> ConditionsReport:
    """Catalog verdicts for the two conditions that together make the
    induced function continuous for the bounded-window metric."""
    if isinstance(f, Identity):
        return ConditionsReport(True, True, True, "isometry", "preimage is the set itself")
    if isinstance(f, Affine):
        if f.a == 0.0:
            return ConditionsReport(True, True, True, "constant",
                                    "single-point image: vacuous")
        return ConditionsReport(True, True, True, f"Lipschitz {abs(f.a)}",
                                "affine rescale of the target")
    if isinstance(f, LinearMatrix):
        inj = f.is_injective()
        note2 = (f"injective, sigma_min={f.sigma_min():.6g}" if inj
                 else "kernel direction escapes")
        return ConditionsReport(True, inj, inj, f"Lipschitz {f.sigma_max():.6g}", note2,
                                cond2_witness=None if inj else f.kernel_vector())
    if isinstance(f, SinReciprocal):
        pair = f.oscillation_pair(100)
        return ConditionsReport(False, True, False,
                                "oscillation near 0 defeats every modulus",
                                "the whole domain is bounded",
                                cond1_witness=pair)
    if isinstance(f, ArctanOfDistance):
        bounded = f.space.kind in (OPEN_INTERVAL, FINITE)
        if bounded:
            return ConditionsReport(True, True, True, "1-Lipschitz", "bounded domain")
        wit = ClosedSet.intervals(AmbientSpace.line(), [(0.0, 1.6)])
        return ConditionsReport(True, False, False, "1-Lipschitz",
                                "targets reaching the arctan ceiling pull back unbounded",
                                cond2_witness=wit)
    if isinstance(f, PiecewiseMonotone1D):
        ok = f.left_slope != 0.0 and f.right_slope != 0.0
        note2 = ("both tails escape to infinity" if ok
                 else "a flat tail keeps an unbounded preimage available")
        wit = None if ok else (f.values[0] if f.left_slope == 0.0 else f.values[-1])
        return ConditionsReport(True, ok, ok, f"Lipschitz {f.lipschitz_constant():.6g}",
                                note2, cond2_witness=wit)
    return ConditionsReport(None, None, None,
                            f"no catalog analysis for {f.describe()}", "")


# ---------------------------------------------------------------------------
# empirical continuity probes


_METRICS = {
    "H": hausdorff,
    "H-": hausdorff_lower,
    "H+": hausdorff_upper,
    "AW": aw_distance,
}


def metric_by_name(name: str):
    try:
        return _METRICS[name]
    except KeyError:
        raise ValueError(f"unknown metric {name!r}; pick one of {sorted(_METRICS)}")


@dataclass(frozen=True)
class ProbeRow:
    label: str
    d_in: CertifiedValue
    d_out: CertifiedValue


@dataclass(frozen=True)
class ProbeReport:
    map_name: str
    metric: str
    eps: float
    delta_schedule: tuple
    rows: tuple
    violation: bool                    # an eps-jump under every delta

    def __bool__(self):
        return not self.violation


def probe_induced_continuity(f, A: ClosedSet, metric: str, perturbations,
                             delta_schedule=(1.0, 0.1, 0.01), eps: float = 0.1,
                             **metric_kwargs) -> ProbeReport:
    """Measure in/out hyperspace distances from A to each perturbation.

    A violation needs, under every delta of the schedule, a perturbation
    within delta whose image sits more than eps away — certified on both
    sides (d_in.hi below the delta, d_out.lo above eps), so a reported
    violation is a proof, not noise.
    """
    dist = metric_by_name(metric)
    fA = induced_image(f, A)
    rows = []
    for i, B in enumerate(perturbations):
        d_in = dist(A, B, **metric_kwargs)
        d_out = dist(fA, induced_image(f, B), **metric_kwargs)
        rows.append(ProbeRow(f"perturbation-{i + 1}", d_in, d_out))
    violation = all(
        any(not r.d_in.hi.is_inf and r.d_in.hi.as_float() < delta
            and r.d_out.lo > eps for r in rows)
        for delta in delta_schedule
    )
    return ProbeReport(f.describe(), metric, float(eps), tuple(delta_schedule),
                       tuple(rows), violation)
