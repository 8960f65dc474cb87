"""Hit-and-miss neighborhood predicates and horizon-bounded
convergence reports.

An OpenSetRep is either a finite union of open balls or the complement
of a compact obstacle.  Neighborhood constraints come in three shapes:

  * hit(U)     -- the set meets U
  * contain(U) -- the set lies inside U
  * miss(K)    -- the set is disjoint from the compact K

All predicates are decision procedures on the exact representations
(sampled clouds decide only when the margin beats their resolution,
otherwise UnsupportedPair).  A convergence pass over a finite horizon
is evidence; a failure carries a witness index and is a proof.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import AmbientMismatch, GeneratorFault, UnsupportedPair
from .hypermetrics import set_gap
from .sets import ClosedSet, dist_to_set, is_bounded, representative_points
from .spaces import FINITE, AmbientSpace

Ball = tuple  # (center, radius)


def _check_balls(space: AmbientSpace, balls):
    out = []
    for c, r in balls:
        r = float(r)
        if r <= 0:
            raise ValueError("open balls need positive radius")
        out.append((space.canon_point(c), r))
    if not out:
        raise ValueError("an open set needs at least one ball")
    return tuple(out)


@dataclass(frozen=True)
class OpenSetRep:
    """A finite union of open balls, or the complement of a compact."""

    space: AmbientSpace
    balls: Optional[tuple[Ball, ...]] = None
    complement_of: Optional[ClosedSet] = None

    @staticmethod
    def ball_union(space: AmbientSpace, balls) -> "OpenSetRep":
        return OpenSetRep(space, balls=_check_balls(space, balls))

    @staticmethod
    def complement(K: ClosedSet) -> "OpenSetRep":
        if not is_bounded(K):
            raise ValueError("only complements of compact (bounded closed) sets")
        return OpenSetRep(K.space, complement_of=K)

    def __post_init__(self):
        if (self.balls is None) == (self.complement_of is None):
            raise ValueError("exactly one of balls / complement_of")

    def describe(self) -> str:
        if self.balls is not None:
            return "union(" + ", ".join(f"ball({c}, {r})" for c, r in self.balls) + ")"
        return f"complement({self.complement_of.rep})"


def _point_dist(space: AmbientSpace, p, q) -> float:
    return space.distance(p, q)


def hits(A: ClosedSet, U: OpenSetRep) -> bool:
    """A meets the open set U."""
    U.space.require_same(A.space)
    if U.complement_of is not None:
        # A is nonempty, so it sticks out of K exactly when not inside K
        from .sets import is_subset

        return not is_subset(A, U.complement_of, tol=0.0)
    slack = A.slack
    verdict = False
    for c, r in U.balls:
        d = dist_to_set(c, A)
        if d < r - slack:
            return True
        if d < r + slack:
            verdict = None  # undecidable at this resolution
    if verdict is None:
        raise UnsupportedPair("cloud resolution straddles a hit-ball boundary")
    return False


def misses(A: ClosedSet, K: ClosedSet) -> bool:
    """A and the compact obstacle K are disjoint."""
    if not is_bounded(K):
        raise ValueError("miss obstacles must be compact (bounded closed)")
    g = set_gap(A, K)
    slack = A.slack + K.slack
    if g > slack:
        return True
    if slack == 0.0 or g == 0.0:
        return False
    raise UnsupportedPair("cloud resolution straddles an obstacle gap")


def subset_of(A: ClosedSet, U: OpenSetRep) -> bool:
    """A is contained in the open set U."""
    U.space.require_same(A.space)
    if U.complement_of is not None:
        return misses(A, U.complement_of)
    if A.slack > 0.0:
        raise UnsupportedPair("coverage of a sampled cloud cannot be certified")
    space = U.space
    if space.kind == FINITE:
        return all(
            any(space.matrix[c][p] < r for c, r in U.balls) for p in A.rep.points
        )
    if space.is_one_dimensional:
        ivs = sorted((c - r, c + r) for c, r in U.balls)
        return all(
            _closed_in_open_union(*_as_iv(comp), ivs) for comp in A.components()
        )
    return all(_comp_covered(comp, U.balls) for comp in A.components())


def _as_iv(comp):
    kind, data = comp
    return (data, data) if kind == "point" else data


def _closed_in_open_union(lo: float, hi: float, open_ivs) -> bool:
    """Closed [lo, hi] inside a union of open intervals: greedy sweep,
    strict at every endpoint."""
    if math.isinf(lo) or math.isinf(hi):
        return False
    cur = lo
    while True:
        nxt = None
        for a, b in open_ivs:
            if a < cur < b and (nxt is None or b > nxt):
                nxt = b
        if nxt is None:
            return False
        if nxt > hi:
            return True
        cur = nxt  # the sweep point itself is not covered by the interval that reached it


def _comp_covered(comp, balls) -> bool:
    kind, data = comp
    if kind == "ray":
        return False  # unbounded piece, bounded cover
    if kind == "point":
        return any(math.dist(data, c) < r for c, r in balls)
    # bounded connected pieces: certified when a single open ball takes
    # the whole piece (balls are convex, so vertex checks are exact)
    for c, r in balls:
        if kind == "ball":
            c2, r2 = data
            if math.dist(c, c2) + r2 < r:
                return True
        elif kind == "box":
            lo, hi = data
            far = math.dist(c, tuple(
                h if abs(h - x) >= abs(l - x) else l for l, h, x in zip(lo, hi, c)))
            if far < r:
                return True
        elif kind == "segment":
            p, q = data
            if math.dist(c, p) < r and math.dist(c, q) < r:
                return True
    if len(balls) == 1:
        return False
    raise UnsupportedPair(
        "coverage by several balls is only certified when one ball takes each piece"
    )


# ---------------------------------------------------------------------------
# neighborhood specs


@dataclass(frozen=True)
class Constraint:
    tag: str  # hit | contain | miss
    open_set: Optional[OpenSetRep] = None
    obstacle: Optional[ClosedSet] = None

    @staticmethod
    def hit(U: OpenSetRep) -> "Constraint":
        return Constraint("hit", open_set=U)

    @staticmethod
    def contain(U: OpenSetRep) -> "Constraint":
        return Constraint("contain", open_set=U)

    @staticmethod
    def miss(K: ClosedSet) -> "Constraint":
        return Constraint("miss", obstacle=K)

    def satisfied_by(self, S: ClosedSet) -> bool:
        if self.tag == "hit":
            return hits(S, self.open_set)
        if self.tag == "contain":
            return subset_of(S, self.open_set)
        if self.tag == "miss":
            return misses(S, self.obstacle)
        raise ValueError(f"unknown constraint tag {self.tag!r}")

    def describe(self) -> str:
        if self.tag == "miss":
            return f"miss({self.obstacle.rep})"
        return f"{self.tag}({self.open_set.describe()})"


NeighborhoodSpec = tuple  # tuple[Constraint, ...], nonempty


def neighborhood(*constraints: Constraint) -> NeighborhoodSpec:
    if not constraints:
        raise ValueError("a neighborhood needs at least one constraint")
    return tuple(constraints)


def canonical_neighborhoods(A: ClosedSet, topology: str, r: float, m: int = 8,
                            miss_compacts=()) -> NeighborhoodSpec:
    """Finite subbasic families around A.

    lowerV:   one hit-ball of radius r at each of m deterministic
              sample points of A.
    upperV:   one containment constraint: the open r-enlargement of A
              as a ball union (representations without a finite such
              form are unsupported).
    fell:     lowerV plus caller-supplied miss obstacles.
    vietoris: lowerV plus upperV.
    """
    r = float(r)
    if r <= 0:
        raise ValueError("scale must be positive")
    if m < 1:
        raise ValueError("need at least one sample point")
    if topology not in ("lowerV", "upperV", "fell", "vietoris"):
        raise ValueError(f"unknown topology {topology!r}")

    out = []
    if topology in ("lowerV", "fell", "vietoris"):
        for p in representative_points(A, m):
            out.append(Constraint.hit(OpenSetRep.ball_union(A.space, [(p, r)])))
    if topology in ("upperV", "vietoris"):
        out.append(Constraint.contain(_enlargement(A, r)))
    if topology == "fell":
        for K in miss_compacts:
            if set_gap(A, K) <= 0.0:
                raise ValueError("a miss obstacle touches the reference set")
            out.append(Constraint.miss(K))
    return tuple(out)


def _enlargement(A: ClosedSet, r: float) -> OpenSetRep:
    """The open r-enlargement of A as a finite union of open balls."""
    space = A.space
    if A.slack > 0.0:
        raise UnsupportedPair("no certified enlargement for a sampled cloud")
    if space.kind == FINITE:
        return OpenSetRep(space, balls=tuple((p, r) for p in A.rep.points))
    balls = []
    for kind, data in A.components():
        if kind == "point":
            balls.append((data, r))
        elif kind == "interval":
            lo, hi = data
            if math.isinf(lo) or math.isinf(hi):
                raise UnsupportedPair("no finite ball cover for an unbounded interval")
            balls.append((0.5 * (lo + hi), 0.5 * (hi - lo) + r))
        elif kind == "ball":
            c, rr = data
            balls.append((c, rr + r))
        else:
            raise UnsupportedPair(
                f"no open-ball enlargement for component kind {kind!r}"
            )
    return OpenSetRep.ball_union(space, balls)


# ---------------------------------------------------------------------------
# convergence against a neighborhood family


@dataclass(frozen=True)
class ConstraintEntry:
    label: str
    passed: bool
    settles_at: Optional[int] = None   # least N with [N, horizon] inside
    witness: Optional[int] = None      # first failing index when failed


@dataclass(frozen=True)
class ConvergenceReport:
    passed: bool
    horizon: int
    entries: tuple[ConstraintEntry, ...]

    def __bool__(self):
        return self.passed


def converges(seq: Callable[[int], ClosedSet], nbhds: NeighborhoodSpec,
              horizon: int = 1000) -> ConvergenceReport:
    """Scan seq(1..horizon) against every constraint.

    Per constraint: passes with the least N such that indices N..horizon
    all satisfy it (a failure at the horizon itself means fail, with the
    first failing index as witness).  Overall verdict: all constraints
    pass.  A pass is evidence of convergence; a fail is a proof of exit
    at the witness index.  Generator exceptions become GeneratorFault.
    """
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    if not nbhds:
        raise ValueError("no constraints to check")
    first_fail = [None] * len(nbhds)
    last_fail = [None] * len(nbhds)
    for k in range(1, horizon + 1):
        try:
            term = seq(k)
        except (AmbientMismatch, UnsupportedPair):
            raise
        except Exception as exc:  # noqa: BLE001 - reported with its index
            raise GeneratorFault(k, exc) from exc
        for i, constraint in enumerate(nbhds):
            if not constraint.satisfied_by(term):
                last_fail[i] = k
                if first_fail[i] is None:
                    first_fail[i] = k
    entries = []
    for i, constraint in enumerate(nbhds):
        label = constraint.describe()
        if last_fail[i] is None:
            entries.append(ConstraintEntry(label, True, settles_at=1))
        elif last_fail[i] < horizon:
            entries.append(ConstraintEntry(label, True, settles_at=last_fail[i] + 1,
                                           witness=first_fail[i]))
        else:
            entries.append(ConstraintEntry(label, False, witness=first_fail[i]))
    return ConvergenceReport(all(e.passed for e in entries), horizon, tuple(entries))
