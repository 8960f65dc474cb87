"""Affine group elements x -> M x + t and their action on closed sets.

Elements are stored as exact row tuples, so composing integer or
signed-permutation elements stays bit-exact; inverses use the transpose
whenever M M^T is the identity bitwise and fall back to a numerical
inverse otherwise.  The action pushes every exact representation
forward exactly when the matrix shape allows it (balls need a
scaled-orthogonal matrix, boxes a signed-permutation-diagonal one) and
refuses otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import Indeterminate, UnsupportedPair
from .hypermetrics import INF, CertifiedValue
from .induced import metric_by_name
from .sets import ClosedSet, is_bounded, is_subset
from .spaces import AmbientSpace

DEFAULT_REF_RADIUS = 10.0


def _np(rows):
    return np.array(rows, dtype=float)


def _rows(m) -> tuple:
    a = _np(m)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("group elements need a square matrix")
    return tuple(tuple(float(v) for v in row) for row in a)


def _eye(n: int) -> tuple:
    return tuple(tuple(1.0 if i == j else 0.0 for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class GroupElement:
    matrix: tuple
    offset: tuple
    kind: str = "affine"

    def __post_init__(self):
        rows = _rows(self.matrix)
        off = tuple(float(v) for v in self.offset)
        if len(off) != len(rows):
            raise ValueError("offset dimension mismatch")
        if float(abs(np.linalg.det(_np(rows)))) == 0.0:
            raise ValueError("group elements must be invertible")
        object.__setattr__(self, "matrix", rows)
        object.__setattr__(self, "offset", off)

    # -- constructors -------------------------------------------------

    @staticmethod
    def identity(n: int) -> "GroupElement":
        return GroupElement(_eye(n), (0.0,) * n, "identity")

    @staticmethod
    def rotation(theta: float) -> "GroupElement":
        c, s = math.cos(theta), math.sin(theta)
        return GroupElement(((c, -s), (s, c)), (0.0, 0.0), "rotation")

    @staticmethod
    def translation(v) -> "GroupElement":
        v = tuple(float(x) for x in (v if isinstance(v, (tuple, list)) else (v,)))
        return GroupElement(_eye(len(v)), v, "translation")

    @staticmethod
    def scaling(lam: float, n: int) -> "GroupElement":
        lam = float(lam)
        if lam <= 0:
            raise ValueError("scaling factor must be positive")
        return GroupElement(tuple(tuple(lam if i == j else 0.0 for j in range(n))
                                  for i in range(n)), (0.0,) * n, "scaling")

    @staticmethod
    def isometry(Q, t) -> "GroupElement":
        g = GroupElement(Q, t, "isometry")
        if not g.is_isometry():
            raise ValueError("matrix is not orthogonal")
        return g

    # -- structure ----------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.matrix)

    @property
    def space(self) -> AmbientSpace:
        return AmbientSpace.line() if self.dim == 1 else AmbientSpace.euclidean(self.dim)

    def apply(self, x):
        space = self.space
        x = space.canon_point(x)
        vec = x if isinstance(x, tuple) else (x,)
        y = tuple(float(v) for v in self._m @ _np(vec) + _np(self.offset))
        return y[0] if self.dim == 1 else y

    @property
    def _m(self):
        return _np(self.matrix)

    def is_isometry(self, tol: float = 1e-12) -> bool:
        g = self._m.T @ self._m
        return bool(np.allclose(g, np.eye(self.dim), rtol=0.0, atol=tol))

    def sigma_max(self) -> float:
        return float(np.linalg.svd(self._m, compute_uv=False)[0])

    def scaled_orthogonal(self) -> Optional[float]:
        return _scaled_orth(self._m)

    def signed_perm_diag(self) -> bool:
        m = self._m
        return bool((np.count_nonzero(m, axis=0) <= 1).all()
                    and (np.count_nonzero(m, axis=1) <= 1).all())

    def describe(self) -> str:
        return f"{self.kind}(matrix={self.matrix}, offset={self.offset})"


def _scaled_orth(m) -> Optional[float]:
    g = m.T @ m
    mu2 = float(np.mean(np.diag(g)))
    if np.allclose(g, mu2 * np.eye(g.shape[0]), rtol=0.0, atol=1e-12 * max(1.0, mu2)):
        return math.sqrt(mu2)
    return None


def compose(g: GroupElement, h: GroupElement) -> GroupElement:
    """g after h: x -> g(h(x))."""
    if g.dim != h.dim:
        raise ValueError("dimension mismatch")
    m = g._m @ h._m
    t = g._m @ _np(h.offset) + _np(g.offset)
    kind = g.kind if g.kind == h.kind and g.kind in ("translation", "rotation") else "composition"
    return GroupElement(tuple(tuple(float(v) for v in row) for row in m),
                        tuple(float(v) for v in t), kind)


def inverse(g: GroupElement) -> GroupElement:
    m = g._m
    if (m @ m.T == np.eye(g.dim)).all():
        minv = m.T  # orthogonal bitwise: the transpose is exact
    else:
        minv = np.linalg.inv(m)
    t = -(minv @ _np(g.offset))
    return GroupElement(tuple(tuple(float(v) for v in row) for row in minv),
                        tuple(float(v) for v in t), g.kind)


# ---------------------------------------------------------------------------
# the action on closed sets


def act(g: GroupElement, A: ClosedSet) -> ClosedSet:
    """The image g(A), exact per representation."""
    g.space.require_same(A.space, "action")
    space, rep = A.space, A.rep
    name = type(rep).__name__
    if name in ("FinitePoints", "SampledCloud"):
        pts = [g.apply(p) for p in rep.points]
        if name == "SampledCloud":
            mu = g.scaled_orthogonal()
            factor = mu if mu is not None else g.sigma_max()
            return ClosedSet.cloud(space, pts, factor * rep.resolution)
        return ClosedSet.points(space, pts)
    if name == "IntervalUnion":
        # infinite endpoints ride along: a*inf + b keeps the right sign
        out = [tuple(sorted((g.apply(lo), g.apply(hi)))) for lo, hi in rep.intervals]
        return ClosedSet.intervals(space, out)
    if name == "SegmentUnion":
        return ClosedSet.segments(space, [(g.apply(p), g.apply(q))
                                          for p, q in rep.segments])
    if name == "Ray":
        if space.dim == 1:
            d = rep.direction if g.matrix[0][0] > 0 else -rep.direction
            return ClosedSet.ray(space, g.apply(rep.anchor), d)
        u = g._m @ _np(rep.direction)
        return ClosedSet.ray(space, g.apply(rep.anchor), tuple(float(v) for v in u))
    if name == "BallUnion":
        mu = g.scaled_orthogonal()
        if mu is None:
            raise UnsupportedPair("balls stay balls only under scaled-orthogonal elements")
        return ClosedSet.balls(space, [(g.apply(c), mu * r) for c, r in rep.balls])
    if name == "BoxUnion":
        if not g.signed_perm_diag():
            raise UnsupportedPair(
                "boxes stay boxes only under signed-permutation-diagonal elements")
        out = []
        for lo, hi in rep.boxes:
            p, q = g.apply(lo), g.apply(hi)
            out.append((tuple(min(a, b) for a, b in zip(p, q)),
                        tuple(max(a, b) for a, b in zip(p, q))))
        return ClosedSet.boxes(space, out)
    raise UnsupportedPair(f"action on {name}")


def maps_into(g: GroupElement, A: ClosedSet, B: ClosedSet, tol: float = 0.0) -> bool:
    return is_subset(act(g, A), B, tol=tol)


# ---------------------------------------------------------------------------
# uniform-on-a-set distance between two affine elements


_SPHERE_SAMPLES = 64


def _unit_directions(n: int):
    if n == 1:
        return [(1.0,), (-1.0,)]
    if n == 2:
        return [(math.cos(2 * math.pi * k / _SPHERE_SAMPLES),
                 math.sin(2 * math.pi * k / _SPHERE_SAMPLES))
                for k in range(_SPHERE_SAMPLES)]
    rng = np.random.RandomState(12345)
    vs = rng.standard_normal((_SPHERE_SAMPLES, n))
    vs /= np.linalg.norm(vs, axis=1, keepdims=True)
    return [tuple(float(c) for c in v) for v in vs]


def _affine_norm_at(D, c, x) -> float:
    vec = x if isinstance(x, tuple) else (x,)
    return float(np.linalg.norm(D @ _np(vec) + c))


def affine_sup_norm(D, c, A: ClosedSet) -> CertifiedValue:
    """Certified sup of |D x + c| over A.

    Exact on points, segments, boxes, intervals (convexity: the max of a
    convex function sits at extreme points) and on balls when D is
    scaled-orthogonal; other balls get a sampled lower and a norm-bound
    upper end.  Rays are infinite unless D kills the direction.
    """
    D = _np(D)
    c = _np(c if isinstance(c, (tuple, list, np.ndarray)) else (c,))
    rep = A.rep
    name = type(rep).__name__
    if name in ("FinitePoints", "SampledCloud"):
        best = max(_affine_norm_at(D, c, p) for p in rep.points)
        if name == "SampledCloud":
            smax = float(np.linalg.svd(D, compute_uv=False)[0])
            return CertifiedValue.interval(best, best + smax * rep.resolution,
                                           "finite-max+cloud")
        return CertifiedValue.point(best, "finite-max")

    lo = 0.0
    hi = 0.0
    exact = True
    for kind, data in A.components():
        if kind == "point":
            v = _affine_norm_at(D, c, data)
            lo, hi = max(lo, v), max(hi, v)
        elif kind == "interval":
            a, b = data
            if math.isinf(a) or math.isinf(b):
                if float(np.linalg.norm(D)) == 0.0:
                    v = float(np.linalg.norm(c))
                    lo, hi = max(lo, v), max(hi, v)
                else:
                    return CertifiedValue.infinite("ray-closed-form")
            else:
                v = max(_affine_norm_at(D, c, a), _affine_norm_at(D, c, b))
                lo, hi = max(lo, v), max(hi, v)
        elif kind == "segment":
            p, q = data
            v = max(_affine_norm_at(D, c, p), _affine_norm_at(D, c, q))
            lo, hi = max(lo, v), max(hi, v)
        elif kind == "box":
            blo, bhi = data
            corners = _corners(blo, bhi)
            v = max(_affine_norm_at(D, c, p) for p in corners)
            lo, hi = max(lo, v), max(hi, v)
        elif kind == "ball":
            center, r = data
            mid = _affine_norm_at(D, c, center)
            mu = _scaled_orth(D)
            if mu is not None:
                v = mid + mu * r
                lo, hi = max(lo, v), max(hi, v)
            else:
                exact = False
                smax = float(np.linalg.svd(D, compute_uv=False)[0])
                samp = max(
                    _affine_norm_at(D, c, tuple(ci + r * ui for ci, ui in zip(center, u)))
                    for u in _unit_directions(len(center)))
                lo = max(lo, samp)
                hi = max(hi, mid + smax * r)
        else:  # ray
            anchor, u = data
            if float(np.linalg.norm(D @ _np(u))) == 0.0:
                v = _affine_norm_at(D, c, anchor)
                lo, hi = max(lo, v), max(hi, v)
            else:
                return CertifiedValue.infinite("ray-closed-form")
    if exact:
        return CertifiedValue.point(lo, "finite-max")
    return CertifiedValue.interval(lo, hi, "sphere-sample")


def _corners(lo, hi):
    out = [()]
    for l, h in zip(lo, hi):
        out = [c + (v,) for c in out for v in ((l,) if l == h else (l, h))]
    return out


def group_distance(g: GroupElement, h: GroupElement,
                   ref_radius: float = DEFAULT_REF_RADIUS) -> CertifiedValue:
    """sup |g(x) - h(x)| over the closed reference ball at the base point."""
    if g.dim != h.dim:
        raise ValueError("dimension mismatch")
    D = g._m - h._m
    c = _np(g.offset) - _np(h.offset)
    space = g.space
    if g.dim == 1:
        ref = ClosedSet.intervals(space, [(space.base_point - ref_radius,
                                           space.base_point + ref_radius)])
    else:
        ref = ClosedSet.balls(space, [(space.base_point, ref_radius)])
    return affine_sup_norm(D, c, ref)


# ---------------------------------------------------------------------------
# uniform comparison on a set


@dataclass(frozen=True)
class UniformComparison:
    contains: bool
    sup: CertifiedValue


def ucb_nbhd_contains(h: GroupElement, A: ClosedSet, f: GroupElement,
                      eps: float) -> UniformComparison:
    """Is sup_{x in A} |h(x) - f(x)| < eps?

    A must be bounded; the answer is certified on both sides and an
    interval straddling eps raises Indeterminate.
    """
    eps = float(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if not is_bounded(A):
        raise ValueError("the uniform comparison needs a bounded set")
    h.space.require_same(A.space, "comparison")
    if h.dim != f.dim:
        raise ValueError("dimension mismatch")
    D = h._m - f._m
    c = _np(h.offset) - _np(f.offset)
    sup = affine_sup_norm(D, c, A)
    if not sup.hi.is_inf and sup.hi.as_float() < eps:
        return UniformComparison(True, sup)
    if sup.lo >= eps:
        return UniformComparison(False, sup)
    raise Indeterminate(
        f"sup estimate {sup!r} straddles eps={eps}; tighten the region or eps")


# ---------------------------------------------------------------------------
# continuity probe for the action


@dataclass(frozen=True)
class ActionProbeRow:
    label: str
    d_group: CertifiedValue
    d_set: CertifiedValue
    d_out: CertifiedValue


@dataclass(frozen=True)
class ActionProbeReport:
    metric: str
    eps: float
    delta_schedule: tuple
    rows: tuple
    violation: bool

    def __bool__(self):
        return not self.violation


def probe_action_continuity(g: GroupElement, A: ClosedSet, metric: str,
                            perturbations, delta_schedule=(1.0, 0.1, 0.01),
                            eps: float = 0.1, ref_radius: float = DEFAULT_REF_RADIUS,
                            **metric_kwargs) -> ActionProbeReport:
    """Joint-continuity probe at (g, A).

    Each perturbation is a pair (h, B); the row records the group
    distance (uniform on the reference ball), the set distance, and the
    output distance between g(A) and h(B).  A violation requires, under
    every delta, a row whose certified input proximity sits below delta
    while the certified output distance exceeds eps.
    """
    dist = metric_by_name(metric)
    gA = act(g, A)
    rows = []
    for i, (h, B) in enumerate(perturbations):
        d_group = group_distance(g, h, ref_radius)
        d_set = dist(A, B, **metric_kwargs)
        d_out = dist(gA, act(h, B), **metric_kwargs)
        rows.append(ActionProbeRow(f"perturbation-{i + 1}", d_group, d_set, d_out))

    def prox(row):
        if row.d_group.hi.is_inf or row.d_set.hi.is_inf:
            return math.inf
        return max(row.d_group.hi.as_float(), row.d_set.hi.as_float())

    violation = all(
        any(prox(r) < delta and r.d_out.lo > eps for r in rows)
        for delta in delta_schedule
    )
    return ActionProbeReport(metric, float(eps), tuple(delta_schedule),
                             tuple(rows), violation)
