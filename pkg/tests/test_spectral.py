import numpy as np
import pytest

import ergolab as e
from ergolab.systems import make_system

PLAN = e.RandomPlan(31337)
SYS_R = make_system(e.rotation(e.GOLDEN))
SYS_D = make_system(e.doubling())
SYS_I = make_system(e.identity())


def test_koopman_identity_system():
    f = e.Character(1)
    for n in (-3, 0, 5):
        assert e.koopman_value(SYS_I, f, n, 0.3) == pytest.approx(
            np.exp(2j * np.pi * 0.3)
        )


def test_koopman_rotation_eigen_relation():
    f = e.Character(1)
    x = 0.123
    lam = np.exp(2j * np.pi * SYS_R.theta)
    assert e.koopman_value(SYS_R, f, 1, x) == pytest.approx(lam * f.eval(SYS_R, x))


def test_koopman_doubling_doubles_frequency():
    x = SYS_D.sample_measure(1, PLAN)[0]
    v = e.koopman_value(SYS_D, e.Character(1), 1, x)
    assert v == pytest.approx(complex(e.Character(2).eval(SYS_D, x)), abs=1e-9)


def test_l2_distance_identical_zero():
    f = e.Character(1)
    assert e.l2_distance(SYS_R, f, f, 1000, PLAN) == 0.0


def test_l2_distance_constants():
    assert e.l2_distance(SYS_R, e.Constant(1.0), e.Constant(3.5), 1000, PLAN) == 2.5


def test_l2_orthonormal_characters():
    d = e.l2_distance(SYS_R, e.Character(1), e.Character(2), 10**5, PLAN)
    assert d == pytest.approx(np.sqrt(2), abs=0.02)


def test_l2_symmetric():
    f, g = e.Character(1), e.Character(3)
    assert e.l2_distance(SYS_R, f, g, 5000, PLAN) == e.l2_distance(
        SYS_R, g, f, 5000, PLAN
    )


def test_eigen_residual_rotation_character():
    lam = np.exp(2j * np.pi * SYS_R.theta)
    assert e.eigen_residual(SYS_R, e.Character(1), lam, 4096, PLAN) <= 1e-10


def test_eigen_residual_identity():
    assert e.eigen_residual(SYS_I, e.Character(1), 1.0, 1000, PLAN) <= 1e-12


def test_eigen_residual_doubling_not_eigen():
    # Uf = character(2) is orthogonal to f: residual near sqrt(2)
    r = e.eigen_residual(SYS_D, e.Character(1), 1.0, 4000, PLAN)
    assert r == pytest.approx(np.sqrt(2), abs=0.05)


def test_eigen_residual_unit_circle_check():
    with pytest.raises(e.InvalidParameterError):
        e.eigen_residual(SYS_R, e.Character(1), 2.0, 100, PLAN)


def test_orbit_cover_trivial_radius():
    f = e.Character(1)
    og = e.orbit_covering_number(SYS_R, f, 50, 2.5, 500, PLAN)
    assert og.covering_count == 1  # radius exceeds the orbit diameter


def test_orbit_cover_doubling_orthonormal():
    og = e.orbit_covering_number(SYS_D, e.Character(1), 64, 1.0, 800, PLAN)
    assert og.covering_count == 64
    assert og.dist_min == pytest.approx(np.sqrt(2), abs=0.1)


def test_orbit_cover_monotone():
    f = e.Character(1)
    small_r = e.orbit_covering_number(SYS_R, f, 128, 0.25, 500, PLAN).covering_count
    big_r = e.orbit_covering_number(SYS_R, f, 128, 1.0, 500, PLAN).covering_count
    assert small_r >= big_r
    short = e.orbit_covering_number(SYS_R, f, 32, 0.5, 500, PLAN).covering_count
    long = e.orbit_covering_number(SYS_R, f, 256, 0.5, 500, PLAN).covering_count
    assert long >= short


def test_rotation_covering_stabilizes():
    """The rotation orbit {lambda^n f} is totally bounded: counts match
    between N=100 and N=2000."""
    f = e.Character(1)
    c1 = e.orbit_covering_number(SYS_R, f, 100, 0.5, 400, PLAN).covering_count
    c2 = e.orbit_covering_number(SYS_R, f, 2000, 0.5, 400, PLAN).covering_count
    assert c1 == c2


def test_koopman_isometry():
    # measure invariance: distances between shifted observables persist
    f, g = e.Character(1), e.Character(2)
    base = e.l2_distance(SYS_R, f, g, 20000, PLAN)
    # U^n multiplies both by unimodular constants; distance is unchanged
    og = e.orbit_covering_number(SYS_R, f, 8, 3.0, 20000, PLAN)
    assert og.covering_count == 1
    assert base == pytest.approx(np.sqrt(2), abs=3 / np.sqrt(20000) * 3)


def test_classify_rotation_ap():
    v = e.classify_almost_periodic(SYS_R, e.Character(1), [64, 256, 1024], 0.5, 500, PLAN)
    assert v == "ap"


def test_classify_doubling_not_ap():
    v = e.classify_almost_periodic(SYS_D, e.Character(1), [16, 32, 64], 1.0, 500, PLAN)
    assert v == "not_ap"


def test_classify_constant_ap():
    v = e.classify_almost_periodic(SYS_R, e.Constant(1.0), [8, 16, 32], 0.5, 200, PLAN)
    assert v == "ap"


def test_classify_validation():
    with pytest.raises(e.InvalidParameterError):
        e.classify_almost_periodic(SYS_R, e.Character(1), [8, 16], 0.5, 100, PLAN)
    with pytest.raises(e.InvalidParameterError):
        e.classify_almost_periodic(SYS_R, e.Character(1), [8, 16, 32], -1.0, 100, PLAN)


def test_orbit_geometry_json():
    og = e.orbit_covering_number(SYS_R, e.Character(1), 32, 0.5, 200, PLAN)
    obj = og.to_json()
    assert obj["covering_count"] == og.covering_count
    assert 1 <= og.covering_count <= 32
