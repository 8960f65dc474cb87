"""End-to-end acceptance suite.

Ten independent criteria, each a single test emitting one [PASS]/[FAIL]
line (run with -s or read the -v report).  Tolerances are part of the
criterion statements; randomized corpora are seeded and deterministic.
"""
import math

import numpy as np

from hypermet import scenarios
from hypermet.actions import GroupElement, act, compose, group_distance
from hypermet.hitmiss import canonical_neighborhoods, converges
from hypermet.hypermetrics import aw_distance, aw_less_than, excess, hausdorff
from hypermet.induced import (Affine, ArctanOfDistance, Identity,
                              LinearMatrix, PiecewiseMonotone1D,
                              SinReciprocal, induced_image,
                              probe_induced_continuity,
                              uniform_continuity_witness)
from hypermet.sets import ClosedSet, dist_to_set, truncate, union_sets
from hypermet.spaces import AmbientSpace

LINE = AmbientSpace.line()
E2 = AmbientSpace.euclidean(2)
OI = AmbientSpace.open_interval(0.0, 1.0)
ROT90 = LinearMatrix(((0.0, -1.0), (1.0, 0.0)))


def _report(num, desc):
    def deco(fn):
        def wrapper():
            try:
                fn()
            except BaseException:
                print(f"[FAIL] criterion {num}: {desc}")
                raise
            print(f"[PASS] criterion {num}: {desc}")
        wrapper.__name__ = fn.__name__
        return wrapper
    return deco


def _rand_pts(rng, span=20.0, k=(1, 6)):
    return [float(p) for p in rng.uniform(-span, span, rng.randint(*k))]


# ---------------------------------------------------------------------------


@_report(1, "oscillating tail: exact two-sided law at 1e-9")
def test_criterion_01_oscillating_tail():
    f = SinReciprocal()
    nodes = [1.0 / (2.0 * math.pi * n) for n in range(1, 51)]
    A = ClosedSet.points(OI, nodes)
    fA = induced_image(f, A)
    for k in range(1, 21):
        slab = ClosedSet.intervals(
            OI, [(1.0 / (2.0 * math.pi * (k + 1)), 1.0 / (2.0 * math.pi * k))])
        Ak = union_sets(A, slab)
        d_in = hausdorff(Ak, A)
        assert d_in.is_exact
        assert abs(d_in.lo - 1.0 / (4.0 * math.pi * k * (k + 1))) <= 1e-9
        d_out = hausdorff(induced_image(f, Ak), fA)
        assert d_out.is_exact and abs(d_out.lo - 1.0) <= 1e-9
    assert scenarios.run("oscillating-tail").passed


@_report(2, "escaping pair: certified AW <= 2/n while images stay 1/2 apart")
def test_criterion_02_escaping_pair():
    f = ArctanOfDistance(LINE, 0.0)
    A = ClosedSet.points(LINE, [0.0])
    for n in (15, 100, 1000):
        B = ClosedSet.points(LINE, [0.0, float(n)])
        v = aw_distance(A, B)
        assert v.hi.as_float() <= 2.0 / n
        d_img = aw_distance(induced_image(f, A), induced_image(f, B))
        assert d_img.is_exact and abs(d_img.lo - 0.5) <= 1e-9
    assert scenarios.run("escaping-pair").passed


@_report(3, "tilted ray: infinite excess, truncated distance R sin(theta) at 1e-6 R")
def test_criterion_03_tilted_ray():
    base = ClosedSet.ray(E2, (0.0, 0.0), (1.0, 0.0))
    for theta in (0.01, 0.1, 1.0):
        tilted = ClosedSet.ray(E2, (0.0, 0.0), (math.cos(theta), math.sin(theta)))
        assert excess(tilted, base).is_infinite
        assert hausdorff(tilted, base).is_infinite
        for R in (10.0, 100.0, 1000.0):
            d = hausdorff(truncate(tilted, R), truncate(base, R))
            assert abs(d.hi.as_float() - R * math.sin(theta)) <= 1e-6 * R
    assert scenarios.run("tilted-ray").passed


@_report(4, "localization: windowed distances are bit-exact after truncation")
def test_criterion_04_localization():
    rng = np.random.RandomState(40)
    for _ in range(1000):
        C = ClosedSet.points(LINE, _rand_pts(rng, span=30.0))
        j = float(rng.uniform(0.5, 10.0))
        d0 = dist_to_set(0.0, C)
        L = 2.0 * j + d0 + float(rng.uniform(0.1, 5.0))
        T = truncate(C, L)
        for x in rng.uniform(-j, j, 100):
            assert dist_to_set(float(x), T) == dist_to_set(float(x), C)
    for _ in range(200):
        pts = [tuple(p) for p in rng.uniform(-30, 30, (rng.randint(1, 6), 2))]
        C = ClosedSet.points(E2, pts)
        j = float(rng.uniform(0.5, 10.0))
        d0 = dist_to_set((0.0, 0.0), C)
        L = 2.0 * j + d0 + float(rng.uniform(0.1, 5.0))
        T = truncate(C, L)
        for x in rng.uniform(-j / math.sqrt(2), j / math.sqrt(2), (100, 2)):
            p = (float(x[0]), float(x[1]))
            assert dist_to_set(p, T) == dist_to_set(p, C)


@_report(5, "threshold decision agrees with the certified distance: 0/500 splits")
def test_criterion_05_threshold_consistency():
    rng = np.random.RandomState(50)
    disagreements = 0
    for _ in range(500):
        A = ClosedSet.points(LINE, _rand_pts(rng))
        B = ClosedSet.points(LINE, _rand_pts(rng))
        eps = float(rng.uniform(0.005, 0.995))
        v = aw_distance(A, B)  # exact on the line
        if aw_less_than(A, B, eps) != (v.lo < eps):
            disagreements += 1
    assert disagreements == 0


@_report(6, "metric axioms: symmetry bit-exact, triangle at 1e-9, range [0,1]")
def test_criterion_06_metric_axioms():
    rng = np.random.RandomState(60)
    for _ in range(1000):
        A = ClosedSet.points(LINE, _rand_pts(rng))
        B = ClosedSet.points(LINE, _rand_pts(rng))
        C = ClosedSet.points(LINE, _rand_pts(rng))
        h1, h2 = hausdorff(A, B), hausdorff(B, A)
        assert h1.lo == h2.lo
        v1, v2 = aw_distance(A, B), aw_distance(B, A)
        assert v1.lo == v2.lo and v1.hi == v2.hi
        assert hausdorff(A, A).lo == 0.0 and aw_distance(A, A).lo == 0.0
        if A.rep.points != B.rep.points:
            assert h1.lo > 0.0 and v1.lo > 0.0
        assert hausdorff(A, C).lo <= h1.lo + hausdorff(B, C).lo + 1e-9
        vAC = aw_distance(A, C)
        assert vAC.lo <= v1.hi.as_float() + aw_distance(B, C).hi.as_float() + 1e-9
        assert 0.0 <= v1.lo <= v1.hi.as_float() <= 1.0
        assert v1.lo <= min(1.0, h1.hi.as_float()) + v1.width + 1e-12


@_report(7, "nonexpansive catalog maps transfer: d_H drops, zero false violations")
def test_criterion_07_lipschitz_transfer():
    rng = np.random.RandomState(70)
    one_lip_line = [Identity(LINE), ArctanOfDistance(LINE, 0.0),
                    Affine(-0.8, 2.0),
                    PiecewiseMonotone1D((0.0, 1.0), (0.0, 0.5), 0.3, -0.9)]
    for _ in range(1000):
        P, Q = _rand_pts(rng, span=8.0), _rand_pts(rng, span=8.0)
        A, B = ClosedSet.points(LINE, P), ClosedSet.points(LINE, Q)
        d = hausdorff(A, B).hi.as_float()
        for f in one_lip_line:
            di = hausdorff(induced_image(f, A), induced_image(f, B))
            assert di.hi.as_float() <= d + 1e-9, f.describe()
    for _ in range(200):
        P = [tuple(p) for p in rng.uniform(-8, 8, (rng.randint(1, 5), 2))]
        Q = [tuple(q) for q in rng.uniform(-8, 8, (rng.randint(1, 5), 2))]
        A, B = ClosedSet.points(E2, P), ClosedSet.points(E2, Q)
        d = hausdorff(A, B).hi.as_float()
        di = hausdorff(induced_image(ROT90, A), induced_image(ROT90, B))
        assert di.hi.as_float() <= d + 1e-9
    # maps whose two conditions certify continuity never show a violation
    for f in (Identity(LINE), Affine(0.5, 3.0)):
        for _ in range(20):
            base = _rand_pts(rng, span=5.0)
            A = ClosedSet.points(LINE, base)
            perts = [ClosedSet.points(LINE, [p + d for p in base])
                     for d in (0.5, 0.05, 0.005)]
            rep = probe_induced_continuity(f, A, "H", perts, eps=0.1)
            assert not rep.violation


@_report(8, "moving witness: bounded set distance, image pinned at 1 up to 1e-9")
def test_criterion_08_moving_witness():
    f = SinReciprocal()
    pairs = [f.oscillation_pair(n) for n in range(1, 51)]
    for m in range(1, 51):
        rec = uniform_continuity_witness(f, pairs, m)
        assert rec.bound_ok and rec.separated
        assert rec.set_distance.hi.as_float() <= rec.pair_distance
        assert abs(rec.image_distance.lo - 1.0) <= 1e-9
        assert abs(rec.image_distance.hi.as_float() - 1.0) <= 1e-9
    assert scenarios.run("moving-witness").passed


@_report(9, "rigid motions: invariance, additive bounds, lower-Vietoris stability")
def test_criterion_09_rigid_actions():
    rng = np.random.RandomState(90)

    def signed_perm():
        perm = rng.permutation(2)
        m = [[0.0, 0.0], [0.0, 0.0]]
        for i, j in enumerate(perm):
            m[i][j] = float(rng.choice([-1.0, 1.0]))
        off = tuple(float(v) for v in rng.randint(-9, 10, 2))
        return GroupElement(tuple(tuple(r) for r in m), off, "isometry")

    for _ in range(1000):
        g = signed_perm()
        P = [tuple(float(v) for v in rng.randint(-9, 10, 2)) for _ in range(3)]
        Q = [tuple(float(v) for v in rng.randint(-9, 10, 2)) for _ in range(3)]
        A, B = ClosedSet.points(E2, P), ClosedSet.points(E2, Q)
        assert hausdorff(act(g, A), act(g, B)).lo == hausdorff(A, B).lo

    assert scenarios.run("windowed-action").passed
    rigid = scenarios.run("rigid-corpus")
    assert rigid.passed
    (summary,) = [r for r in rigid.rows if r["instance"] == "summary"]
    assert summary["violations"] == 0 and summary["checked"] == 100

    # g_k -> g and A_k -> A force g_k(A_k) into every lower-Vietoris
    # neighborhood of g(A)
    for _ in range(100):
        g = signed_perm()
        anchors = [tuple(float(v) for v in rng.randint(-9, 10, 2))
                   for _ in range(3)]
        jit = rng.uniform(-1, 1, (len(anchors), 2))
        v = tuple(float(c) for c in rng.uniform(-1, 1, 2))
        A = ClosedSet.points(E2, anchors)
        target = canonical_neighborhoods(act(g, A), "lowerV", 0.05)

        def seq(k):
            gk = compose(GroupElement.translation((v[0] / k, v[1] / k)), g)
            Ak = ClosedSet.points(
                E2, [(a[0] + jit[i][0] / k, a[1] + jit[i][1] / k)
                     for i, a in enumerate(anchors)])
            return act(gk, Ak)

        assert converges(seq, target, horizon=200).passed
        gk = compose(GroupElement.translation((v[0] / 50, v[1] / 50)), g)
        assert group_distance(g, gk).hi.as_float() <= (abs(v[0]) + abs(v[1])) / 50


@_report(10, "hit/contain/miss properties hold on the randomized corpus")
def test_criterion_10_hitmiss_properties():
    rng = np.random.RandomState(100)

    # (a) shrinking excess implies lower-Vietoris convergence
    for _ in range(50):
        anchors = _rand_pts(rng, span=10.0)
        jit = [float(j) for j in rng.uniform(-1, 1, len(anchors))]
        A = ClosedSet.points(LINE, anchors)
        seq = lambda k: ClosedSet.points(
            LINE, [a + j / k for a, j in zip(anchors, jit)])
        assert converges(seq, canonical_neighborhoods(A, "lowerV", 0.05),
                         horizon=100).passed

    # (b) passing the containment constraint bounds the excess by the scale
    A = ClosedSet.intervals(LINE, [(0.0, 2.0)])
    (contain,) = canonical_neighborhoods(A, "upperV", 0.5)
    hits_seen = 0
    for _ in range(500):
        S = ClosedSet.points(LINE, [float(p) for p in
                                    rng.uniform(-1, 3, rng.randint(1, 5))])
        if contain.satisfied_by(S):
            hits_seen += 1
            assert excess(S, A).hi.as_float() <= 0.5 + 1e-12
    assert hits_seen >= 50

    # (c) scale separation: drifting families pass until the scale sees
    # the stuck 0.02 offset
    for _ in range(25):
        n = rng.randint(2, 5)
        anchors = sorted(float(3.0 * i + rng.uniform(0, 1)) for i in range(n))
        A = ClosedSet.points(LINE, anchors)
        stuck_i = rng.randint(n)
        good = lambda k: ClosedSet.points(
            LINE, [a + 0.5 / k for a in anchors])
        stuck = lambda k: ClosedSet.points(
            LINE, [a + (0.02 if i == stuck_i else 0.0) + 0.3 / k
                   for i, a in enumerate(anchors)])
        for r in (1.0, 0.1, 0.01):
            fam = canonical_neighborhoods(A, "vietoris", r)
            assert converges(good, fam, horizon=200).passed
        for r in (1.0, 0.1):
            fam = canonical_neighborhoods(A, "vietoris", r)
            assert converges(stuck, fam, horizon=200).passed
        rep = converges(stuck, canonical_neighborhoods(A, "vietoris", 0.01),
                        horizon=200)
        assert not rep.passed

    assert scenarios.run("proper-miss").passed
