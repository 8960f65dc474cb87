import math

import numpy as np
import pytest

from hypermet.errors import AmbientMismatch, UnsupportedPair
from hypermet.hypermetrics import aw_distance, hausdorff
from hypermet.induced import (Affine, ArctanOfDistance, Composed, Identity,
                              LinearMatrix, PiecewiseMonotone1D,
                              SinReciprocal, aw_continuity_conditions,
                              check_preimage_boundedness, dist_range,
                              estimate_uniform_modulus, induced_image,
                              metric_by_name, probe_induced_continuity,
                              uniform_continuity_witness)
from hypermet.sets import ClosedSet, dist_to_set
from hypermet.spaces import AmbientSpace

LINE = AmbientSpace.line()
E2 = AmbientSpace.euclidean(2)
HALF_PI = math.pi / 2.0


# ---------------------------------------------------------------------------
# images


def test_dist_range():
    assert dist_range(0.0, ClosedSet.intervals(LINE, [(2.0, 5.0)])) == (2.0, 5.0)
    lo, hi = dist_range((0.0, 0.0), ClosedSet.balls(E2, [((3.0, 0.0), 1.0)]))
    assert (lo, hi) == (2.0, 4.0)
    lo, hi = dist_range(0.0, ClosedSet.ray(LINE, 2.0, 1.0))
    assert lo == 2.0 and math.isinf(hi)


def test_affine_images():
    A = ClosedSet.intervals(LINE, [(0.0, 1.0), (2.0, 3.0)])
    f = Affine(-2.0, 1.0)
    img = induced_image(f, A)
    assert img.rep.intervals == ((-5.0, -3.0), (-1.0, 1.0))
    g = Affine(0.0, 7.0)  # constant
    assert induced_image(g, A).rep.points == (7.0,)


def test_rotation_maps_balls_exactly():
    rot = LinearMatrix(((0.0, -1.0), (1.0, 0.0)))
    B = ClosedSet.balls(E2, [((2.0, 0.0), 1.0)])
    img = induced_image(rot, B)
    assert img.rep.balls == (((0.0, 2.0), 1.0),)


def test_signed_scaled_axis_map_keeps_boxes():
    M = LinearMatrix(((0.0, 2.0), (-1.0, 0.0)))  # (x,y) -> (2y, -x)
    box = ClosedSet.boxes(E2, [((0.0, 0.0), (1.0, 2.0))])
    img = induced_image(M, box)
    assert img.rep.boxes == (((0.0, -1.0), (4.0, 0.0)),)
    seg = ClosedSet.segments(E2, [((0.0, 0.0), (1.0, 1.0))])
    assert induced_image(M, seg).rep.segments == (((0.0, 0.0), (2.0, -1.0)),)


def test_shear_on_ball_has_no_exact_form():
    shear = LinearMatrix(((2.0, 1.0), (0.0, 1.0)))
    B = ClosedSet.balls(E2, [((0.0, 0.0), 1.0)])
    with pytest.raises(UnsupportedPair):
        induced_image(shear, B)
    # point sets always work
    P = ClosedSet.points(E2, [(1.0, 1.0)])
    assert induced_image(shear, P).rep.points == ((3.0, 1.0),)


def test_projection_collapses_a_vertical_ray():
    proj = LinearMatrix(((1.0, 0.0),))
    R = ClosedSet.ray(E2, (3.0, 4.0), (0.0, 1.0))
    img = induced_image(proj, R)
    assert img.space.is_one_dimensional
    assert img.rep.points == (3.0,)
    assert not proj.is_injective()
    kx, ky = proj.kernel_vector()
    assert abs(kx) < 1e-12 and abs(abs(ky) - 1.0) < 1e-12


def test_singular_values():
    M = LinearMatrix(((2.0, 1.0), (0.0, 1.0)))
    s = np.linalg.svd(np.array(M.matrix), compute_uv=False)
    assert M.sigma_max() == pytest.approx(float(s[0]), abs=1e-12)
    assert M.sigma_min() == pytest.approx(float(s[-1]), abs=1e-12)
    assert M.is_injective()


def test_sin_reciprocal_images():
    f = SinReciprocal()
    # one full oscillation inside: the image closes up to [-1, 1]
    A = ClosedSet.intervals(f.domain, [(2.0 / (5.0 * math.pi), 2.0 / math.pi)])
    img = induced_image(f, A)
    (lo, hi), = img.rep.intervals
    assert lo == pytest.approx(-1.0, abs=1e-12) and hi == pytest.approx(1.0, abs=1e-12)
    # short monotone stretch: endpoint images only
    B = ClosedSet.intervals(f.domain, [(0.9, 0.95)])
    (lo, hi), = induced_image(f, B).rep.intervals
    assert lo == pytest.approx(math.sin(1.0 / 0.95), abs=1e-12)
    assert hi == pytest.approx(math.sin(1.0 / 0.9), abs=1e-12)
    # a crest without the matching trough pins the top at exactly 1
    C = ClosedSet.intervals(f.domain, [(0.5, 1.0 / 1.2)])
    (lo, hi), = induced_image(f, C).rep.intervals
    assert hi == 1.0
    assert lo == pytest.approx(min(math.sin(2.0), math.sin(1.2)), abs=1e-12)


def test_arctan_images():
    f = ArctanOfDistance(LINE, 3.0)
    R = ClosedSet.ray(LINE, 5.0, 1.0)
    (lo, hi), = induced_image(f, R).rep.intervals
    assert lo == pytest.approx(math.atan(2.0), abs=1e-15) and hi == HALF_PI

    g = ArctanOfDistance(E2, (0.0, 0.0))
    B = ClosedSet.balls(E2, [((5.0, 0.0), 1.0)])
    (lo, hi), = induced_image(g, B).rep.intervals
    assert lo == pytest.approx(math.atan(4.0)) and hi == pytest.approx(math.atan(6.0))

    P = ClosedSet.points(E2, [(3.0, 4.0), (0.0, 0.0)])
    assert induced_image(g, P).rep.points == (0.0, math.atan(5.0))


def test_piecewise_images():
    f = PiecewiseMonotone1D((0.0, 1.0), (0.0, 2.0), left_slope=0.0,
                            right_slope=-1.0)
    assert f.apply(-5.0) == 0.0 and f.apply(0.5) == 1.0 and f.apply(3.0) == 0.0
    A = ClosedSet.intervals(LINE, [(0.0, 1.0)])
    (lo, hi), = induced_image(f, A).rep.intervals
    assert (lo, hi) == (0.0, 2.0)
    R = ClosedSet.ray(LINE, 1.0, 1.0)  # right tail slope -1: image (-inf, 2]
    (lo, hi), = induced_image(f, R).rep.intervals
    assert math.isinf(lo) and lo < 0 and hi == 2.0


def test_composed_map():
    f = Composed(Affine(2.0, 0.0), Affine(1.0, 3.0))
    assert f.apply(1.0) == 8.0
    A = ClosedSet.intervals(LINE, [(0.0, 1.0)])
    assert induced_image(f, A).rep.intervals == ((6.0, 8.0),)
    assert f.lipschitz_constant() == 2.0


def test_image_rejects_wrong_space():
    f = Affine(1.0, 0.0)
    with pytest.raises(AmbientMismatch):
        induced_image(f, ClosedSet.points(E2, [(0.0, 0.0)]))


def test_lipschitz_transfer_to_hyperspace():
    # d_H(f A, f B) <= L d_H(A, B) for every Lipschitz catalog map
    rng = np.random.RandomState(6)
    line_maps = [
        (Identity(LINE), 1.0),
        (Affine(0.5, 3.0), 0.5),
        (Affine(-2.0, 1.0), 2.0),
        (ArctanOfDistance(LINE, 0.0), 1.0),
        (PiecewiseMonotone1D((0.0, 1.0), (0.0, 0.5), 0.3, -0.8), 0.8),
    ]
    for _ in range(60):
        P = [float(p) for p in rng.uniform(-8, 8, rng.randint(1, 5))]
        Q = [float(q) for q in rng.uniform(-8, 8, rng.randint(1, 5))]
        A, B = ClosedSet.points(LINE, P), ClosedSet.points(LINE, Q)
        d = hausdorff(A, B).hi.as_float()
        for f, L in line_maps:
            di = hausdorff(induced_image(f, A), induced_image(f, B))
            assert di.hi.as_float() <= L * d + 1e-9, f.describe()
    rot = LinearMatrix(((0.0, -1.0), (1.0, 0.0)))
    for _ in range(30):
        P = [tuple(p) for p in rng.uniform(-8, 8, (rng.randint(1, 5), 2))]
        Q = [tuple(q) for q in rng.uniform(-8, 8, (rng.randint(1, 5), 2))]
        A, B = ClosedSet.points(E2, P), ClosedSet.points(E2, Q)
        d = hausdorff(A, B).hi.as_float()
        di = hausdorff(induced_image(rot, A), induced_image(rot, B))
        assert di.hi.as_float() <= d + 1e-9


def test_arctan_image_distance_settles_at_half():
    # {0} vs {0,n}: the arctan images are {0} vs {0, atan n}; once
    # 2 - atan n < 1/2 (n >= 15) the window sup is exactly 1/2.
    f = ArctanOfDistance(LINE, 0.0)
    A = ClosedSet.points(LINE, [0.0])
    for n in (15, 100, 1000):
        B = ClosedSet.points(LINE, [0.0, float(n)])
        v = aw_distance(induced_image(f, A), induced_image(f, B))
        assert v.is_exact and v.lo == 0.5


# ---------------------------------------------------------------------------
# preimage boundedness


def test_preimage_affine():
    B = ClosedSet.intervals(LINE, [(3.0, 7.0)])
    rep = check_preimage_boundedness(Affine(2.0, 1.0), B)
    assert rep.verdict == "bounded-within" and rep.radius == 3.0

    const_out = check_preimage_boundedness(Affine(0.0, 9.0), B)
    assert const_out.verdict == "bounded-within" and const_out.radius == 0.0
    const_in = check_preimage_boundedness(Affine(0.0, 5.0), B)
    assert const_in.verdict == "not-applicable"


def test_preimage_arctan_escape():
    f = ArctanOfDistance(LINE, 0.0)
    B = ClosedSet.intervals(LINE, [(0.0, 1.6)])  # reaches past pi/2
    rep = check_preimage_boundedness(f, B)
    assert rep.verdict == "escape-evidence"
    assert len(rep.witnesses) == 3
    for w, r in zip(rep.witnesses, (10.0, 100.0, 1000.0)):
        assert abs(w) >= r
        assert dist_to_set(f.apply(w), B) == 0.0  # witnesses really land


def test_preimage_arctan_bounded():
    f = ArctanOfDistance(LINE, 0.0)
    B = ClosedSet.intervals(LINE, [(0.0, 1.0)])
    rep = check_preimage_boundedness(f, B)
    assert rep.verdict == "bounded-within"
    assert rep.radius == pytest.approx(math.tan(1.0), abs=1e-12)


def test_preimage_projection_escapes_along_kernel():
    proj = LinearMatrix(((1.0, 0.0),))
    B = ClosedSet.intervals(LINE, [(0.0, 1.0)])
    rep = check_preimage_boundedness(proj, B)
    assert rep.verdict == "escape-evidence"
    for w, r in zip(rep.witnesses, (10.0, 100.0, 1000.0)):
        assert math.hypot(*w) >= r
        assert dist_to_set(proj.apply(w), B) <= 1e-9


def test_preimage_injective_linear_bounded():
    M = LinearMatrix(((2.0, 1.0), (0.0, 1.0)))
    B = ClosedSet.balls(E2, [((0.0, 0.0), 1.0)])
    rep = check_preimage_boundedness(M, B)
    assert rep.verdict == "bounded-within"
    assert rep.radius == pytest.approx(1.0 / M.sigma_min())


def test_preimage_flat_tail_escapes():
    f = PiecewiseMonotone1D((0.0, 1.0), (0.0, 2.0), left_slope=0.0,
                            right_slope=-1.0)
    B = ClosedSet.intervals(LINE, [(-0.5, 0.5)])
    rep = check_preimage_boundedness(f, B)
    assert rep.verdict == "escape-evidence"
    for w, r in zip(rep.witnesses, (10.0, 100.0, 1000.0)):
        assert abs(w) >= r and dist_to_set(f.apply(w), B) == 0.0
    steep = PiecewiseMonotone1D((0.0, 1.0), (0.0, 2.0), left_slope=1.0,
                                right_slope=-1.0)
    assert check_preimage_boundedness(steep, B).verdict == "bounded-within"


def test_preimage_rejects_unbounded_target():
    with pytest.raises(ValueError):
        check_preimage_boundedness(Affine(1.0, 0.0), ClosedSet.ray(LINE, 0.0, 1.0))


# ---------------------------------------------------------------------------
# uniform continuity


def test_modulus_affine():
    A = ClosedSet.intervals(LINE, [(0.0, 10.0)])
    rep = estimate_uniform_modulus(Affine(2.0, 0.0), A, eps=0.1)
    assert rep.verdict == "certified" and rep.delta == pytest.approx(0.05)


def test_modulus_sin_counterexample_near_zero():
    f = SinReciprocal()
    A = ClosedSet.intervals(f.domain, [(0.01, 0.9)])
    rep = estimate_uniform_modulus(f, A, eps=0.5)
    assert rep.verdict == "counterexample"
    x, y = rep.pair
    assert 0.01 <= min(x, y) and max(x, y) <= 0.9
    assert rep.gap == pytest.approx(2.0, abs=1e-9)


def test_modulus_sin_certified_away_from_zero():
    f = SinReciprocal()
    A = ClosedSet.intervals(f.domain, [(0.5, 0.9)])
    rep = estimate_uniform_modulus(f, A, eps=0.2)
    assert rep.verdict == "certified"
    assert rep.delta == pytest.approx(0.2 * 0.25)


def test_modulus_finite_set():
    A = ClosedSet.points(LINE, [0.0, 1.0, 5.0])
    rep = estimate_uniform_modulus(Affine(1.0, 0.0), A, eps=0.5)
    assert rep.verdict == "certified" and rep.delta == pytest.approx(0.5)
    far = estimate_uniform_modulus(Affine(1.0, 0.0), A, eps=100.0)
    assert far.verdict == "certified"  # nothing separates by 100


def test_witness_family_for_sin():
    f = SinReciprocal()
    pairs = [f.oscillation_pair(n) for n in range(1, 9)]
    rec = uniform_continuity_witness(f, pairs, m=5)
    assert rec.m == 5
    assert rec.bound_ok and rec.separated
    assert rec.set_distance.hi.as_float() <= rec.pair_distance
    assert abs(rec.image_distance.lo - 1.0) <= 1e-9  # one swapped crest
    with pytest.raises(ValueError):
        uniform_continuity_witness(f, pairs, m=0)
    bad = [pairs[0], (0.1, 0.9)] + pairs[2:]  # 0.8 apart, needs < 1/2
    with pytest.raises(ValueError):
        uniform_continuity_witness(f, bad, m=2)


def test_witness_pair_distances_shrink():
    f = SinReciprocal()
    pairs = [f.oscillation_pair(n) for n in range(1, 26)]
    ds = [uniform_continuity_witness(f, pairs, m=m).pair_distance
          for m in (1, 5, 10, 25)]
    assert all(a > b for a, b in zip(ds, ds[1:]))
    assert all(d < 1.0 / m for d, m in zip(ds, (1, 5, 10, 25)))


# ---------------------------------------------------------------------------
# continuity conditions catalog


def test_conditions_catalog():
    ok = aw_continuity_conditions(Identity(LINE))
    assert (ok.cond1, ok.cond2, ok.overall) == (True, True, True)
    assert aw_continuity_conditions(Affine(3.0, -1.0)).overall is True
    assert aw_continuity_conditions(Affine(0.0, 2.0)).overall is True

    rot = aw_continuity_conditions(LinearMatrix(((0.0, -1.0), (1.0, 0.0))))
    assert rot.overall is True
    proj = aw_continuity_conditions(LinearMatrix(((1.0, 0.0),)))
    assert proj.cond1 is True and proj.cond2 is False and proj.overall is False
    assert proj.cond2_witness is not None

    sin = aw_continuity_conditions(SinReciprocal())
    assert sin.cond1 is False and sin.cond2 is True and sin.overall is False
    a, x = sin.cond1_witness
    assert abs(math.sin(1.0 / a) - math.sin(1.0 / x)) == pytest.approx(2.0, abs=1e-9)

    at = aw_continuity_conditions(ArctanOfDistance(LINE, 0.0))
    assert at.cond1 is True and at.cond2 is False and at.overall is False

    pw_ok = aw_continuity_conditions(
        PiecewiseMonotone1D((0.0, 1.0), (0.0, 1.0), 1.0, 1.0))
    assert pw_ok.overall is True
    pw_flat = aw_continuity_conditions(
        PiecewiseMonotone1D((0.0, 1.0), (0.0, 1.0), 0.0, 1.0))
    assert pw_flat.cond2 is False and pw_flat.overall is False

    comp = aw_continuity_conditions(Composed(Affine(1.0, 0.0), Affine(1.0, 1.0)))
    assert comp.overall is None


# ---------------------------------------------------------------------------
# probes


def _trough_family(f, ks):
    return [f.oscillation_pair(k)[1] for k in ks]


def test_probe_finds_sin_violation():
    f = SinReciprocal()
    ks = list(range(1, 16))
    A = ClosedSet.points(f.domain, _trough_family(f, ks))
    perturbations = []
    for swap in (5, 10, 15):
        pts = _trough_family(f, ks)
        pts[swap - 1] = f.oscillation_pair(swap)[0]  # crest instead
        perturbations.append(ClosedSet.points(f.domain, pts))
    rep = probe_induced_continuity(f, A, "H", perturbations, eps=0.1)
    assert rep.violation and not bool(rep)
    assert len(rep.rows) == 3


def test_probe_identity_never_violates():
    f = Identity(LINE)
    A = ClosedSet.points(LINE, [0.0, 1.0])
    perts = [ClosedSet.points(LINE, [0.0, 1.0 + d]) for d in (0.5, 0.05, 0.005)]
    rep = probe_induced_continuity(f, A, "H", perts, eps=0.1)
    assert not rep.violation and bool(rep)


def test_metric_by_name():
    A = ClosedSet.points(LINE, [0.0])
    B = ClosedSet.points(LINE, [0.0, 4.0])
    assert metric_by_name("H-")(A, B).lo == 0.0
    assert metric_by_name("H+")(A, B).lo == 4.0
    assert metric_by_name("H")(A, B).lo == 4.0
    assert metric_by_name("AW")(A, B).lo == pytest.approx(1.0 / 3.0)
    with pytest.raises(ValueError):
        metric_by_name("L2")
