"""Ambient metric spaces.

Every set-level computation in this package happens inside one of four
concrete ambient spaces:

* the real line,
* Euclidean n-space,
* an open interval (a, b) viewed as a metric subspace of the line,
* a finite metric space given by an explicit distance matrix.

Each space carries a distinguished base point: the center used by all
windowed (ball-restricted) comparisons.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

from .errors import AmbientMismatch

LINE = "line"
EUCLIDEAN = "euclidean"
OPEN_INTERVAL = "open-interval"
FINITE = "finite"

Vector = tuple[float, ...]
Point = Union[float, Vector, int]


@dataclass(frozen=True)
class MetricViolation:
    """First metric-axiom failure found in a candidate distance matrix."""

    axiom: str  # "diagonal" | "symmetry" | "positivity" | "triangle"
    indices: tuple[int, ...]
    detail: str


def validate_finite_metric(matrix: Sequence[Sequence[float]], tol: float = 1e-9):
    """Check a square matrix for the metric axioms.

    Returns None when every axiom holds, otherwise a MetricViolation
    naming the first offending entry or triple (row-major scan order).
    Non-square input is a usage error and raises ValueError.
    """
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    for row in matrix:
        if len(row) != n:
            raise ValueError("matrix is not square")
    for i in range(n):
        if abs(matrix[i][i]) > tol:
            return MetricViolation("diagonal", (i,), f"d({i},{i}) = {matrix[i][i]!r} != 0")
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if matrix[i][j] <= tol:
                return MetricViolation(
                    "positivity", (i, j), f"d({i},{j}) = {matrix[i][j]!r} is not positive"
                )
            if abs(matrix[i][j] - matrix[j][i]) > tol:
                return MetricViolation(
                    "symmetry", (i, j), f"d({i},{j}) = {matrix[i][j]!r} != d({j},{i}) = {matrix[j][i]!r}"
                )
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if matrix[i][k] > matrix[i][j] + matrix[j][k] + tol:
                    return MetricViolation(
                        "triangle",
                        (i, j, k),
                        f"d({i},{k}) = {matrix[i][k]!r} > d({i},{j}) + d({j},{k}) "
                        f"= {matrix[i][j] + matrix[j][k]!r}",
                    )
    return None


@dataclass(frozen=True)
class AmbientSpace:
    kind: str
    dim: int
    base_point: Point
    bounds: tuple[float, float] | None = None
    matrix: tuple[Vector, ...] | None = None

    # -- constructors ------------------------------------------------

    @staticmethod
    def line(x0: float = 0.0) -> "AmbientSpace":
        return AmbientSpace(LINE, 1, float(x0))

    @staticmethod
    def euclidean(n: int, x0: Sequence[float] | None = None) -> "AmbientSpace":
        if n < 1:
            raise ValueError("dimension must be >= 1")
        base = tuple(0.0 for _ in range(n)) if x0 is None else tuple(float(c) for c in x0)
        if len(base) != n:
            raise ValueError("base point has wrong dimension")
        return AmbientSpace(EUCLIDEAN, n, base)

    @staticmethod
    def open_interval(a: float, b: float, x0: float | None = None) -> "AmbientSpace":
        a, b = float(a), float(b)
        if not a < b:
            raise ValueError("need a < b")
        base = 0.5 * (a + b) if x0 is None else float(x0)
        if not a < base < b:
            raise ValueError("base point must lie strictly inside the interval")
        return AmbientSpace(OPEN_INTERVAL, 1, base, bounds=(a, b))

    @staticmethod
    def finite(matrix: Sequence[Sequence[float]], x0: int = 0, tol: float = 1e-9) -> "AmbientSpace":
        bad = validate_finite_metric(matrix, tol=tol)
        if bad is not None:
            raise ValueError(f"not a metric: {bad.axiom} at {bad.indices}: {bad.detail}")
        frozen = tuple(tuple(float(v) for v in row) for row in matrix)
        x0 = int(x0)
        if not 0 <= x0 < len(frozen):
            raise ValueError("base index out of range")
        return AmbientSpace(FINITE, 1, x0, matrix=frozen)

    # -- points ------------------------------------------------------

    @property
    def is_one_dimensional(self) -> bool:
        return self.kind in (LINE, OPEN_INTERVAL) or (self.kind == EUCLIDEAN and self.dim == 1)

    @property
    def is_euclidean_kind(self) -> bool:
        return self.kind in (LINE, EUCLIDEAN, OPEN_INTERVAL)

    @property
    def is_locally_compact(self) -> bool:
        # every shipped ambient is locally compact; the flag exists so
        # callers can gate arguments that need it
        return True

    @property
    def size(self) -> int:
        if self.kind != FINITE:
            raise AmbientMismatch("size is only defined for finite spaces")
        return len(self.matrix)

    def canon_point(self, p) -> Point:
        """Normalize a user-supplied point to this space's canonical form."""
        if self.kind == FINITE:
            q = int(p)
            if q != p or not 0 <= q < self.size:
                raise ValueError(f"{p!r} is not a valid index into this finite space")
            return q
        if self.kind in (LINE, OPEN_INTERVAL):
            if isinstance(p, (tuple, list)):
                if len(p) != 1:
                    raise ValueError(f"{p!r} is not a point on the line")
                p = p[0]
            q = float(p)
            if self.kind == OPEN_INTERVAL:
                a, b = self.bounds
                if not a < q < b:
                    raise ValueError(f"{q!r} lies outside the open interval ({a}, {b})")
            return q
        # euclidean
        if isinstance(p, (int, float)):
            if self.dim != 1:
                raise ValueError(f"scalar point in {self.dim}-dimensional space")
            return (float(p),)
        q = tuple(float(c) for c in p)
        if len(q) != self.dim:
            raise ValueError(f"point {p!r} has dimension {len(q)}, expected {self.dim}")
        return q

    def contains(self, p) -> bool:
        try:
            self.canon_point(p)
        except (ValueError, TypeError):
            return False
        return True

    def distance(self, p, q) -> float:
        p = self.canon_point(p)
        q = self.canon_point(q)
        if self.kind == FINITE:
            return self.matrix[p][q]
        if self.kind in (LINE, OPEN_INTERVAL):
            return abs(p - q)
        return math.dist(p, q)

    def require_same(self, other: "AmbientSpace", what: str = "operands") -> None:
        if self != other:
            raise AmbientMismatch(f"{what} live in different ambient spaces")


def distance(space: AmbientSpace, p, q) -> float:
    """Distance between two points of the given ambient space."""
    return space.distance(p, q)
