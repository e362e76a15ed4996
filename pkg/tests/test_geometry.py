import math

import numpy as np
import pytest

from vlspeed import CurvedScenario, StraightScenario, curved_pose, straight_pose
from vlspeed.errors import DomainError, OutOfSegmentError
from vlspeed.geometry import segment_end


class TestStraightPose:
    def test_initial_pose(self, straight):
        pose = straight_pose(straight, 0.0)
        assert pose.R == 15.0
        assert pose.D == pytest.approx(15.0083310198, abs=1e-9)
        assert math.degrees(pose.theta) == pytest.approx(1.9091524330, abs=1e-8)
        assert pose.beta is None

    def test_abeam(self, straight):
        pose = straight_pose(straight, 0.75)
        assert pose.R == 0.0
        assert pose.D == pytest.approx(0.5, abs=1e-15)
        assert math.degrees(pose.theta) == pytest.approx(90.0, abs=1e-12)

    def test_mid_segment(self, straight):
        pose = straight_pose(straight, 0.3)
        assert pose.R == pytest.approx(9.0, abs=1e-12)
        assert pose.D == pytest.approx(9.0138781887, abs=1e-9)
        assert math.degrees(pose.theta) == pytest.approx(3.1798301199, abs=1e-8)

    @pytest.mark.parametrize("t", [-0.01, 0.7501, 1.0])
    def test_out_of_segment(self, straight, t):
        with pytest.raises(OutOfSegmentError):
            straight_pose(straight, t)

    def test_invariants_on_grid(self, straight):
        ts = np.linspace(0.0, 0.75, 751)
        poses = [straight_pose(straight, float(t)) for t in ts]
        d_arr = np.array([p.D for p in poses])
        th_arr = np.array([p.theta for p in poses])
        r_arr = np.array([p.R for p in poses])
        assert np.all(np.diff(d_arr) < 0)
        assert np.all(np.diff(th_arr) > 0)
        # D^2 - R^2 = d^2 everywhere
        assert np.allclose(d_arr**2 - r_arr**2, 0.25, rtol=1e-12, atol=0)

    def test_range_decrement_matches_speed(self, straight):
        dt = 1e-3
        r = [straight_pose(straight, i * dt).R for i in range(300)]
        steps = -np.diff(r)
        assert np.allclose(steps, straight.v * dt, rtol=1e-12)

    def test_random_scenarios_keep_invariants(self):
        rng = np.random.default_rng(1234)
        for _ in range(200):
            d = rng.uniform(0.1, 5.0)
            r0 = rng.uniform(5.0, 100.0)
            v = rng.uniform(1.0, 60.0)
            s = StraightScenario(d=d, r0=r0, v=v)
            t = rng.uniform(0.0, r0 / v)
            pose = straight_pose(s, t)
            assert pose.D >= pose.R >= 0.0
            assert 0.0 <= pose.theta <= math.pi / 2
            # one hypot rounding; the residual scales with D^2, not d^2
            assert abs(pose.D**2 - pose.R**2 - d * d) <= 1e-12 * pose.D**2

    @pytest.mark.parametrize("kw", [dict(d=0.0), dict(r0=-1.0), dict(v=0.0)])
    def test_bad_parameters(self, kw):
        params = dict(d=0.5, r0=15.0, v=20.0)
        params.update(kw)
        with pytest.raises(DomainError):
            StraightScenario(**params)


class TestCurvedPose:
    def test_quarter_arc(self, curved):
        pose = curved_pose(curved, 0.0)
        assert pose.beta == pytest.approx(math.pi / 2, abs=1e-15)
        assert pose.D == pytest.approx(56.5685424949, abs=1e-8)
        assert math.degrees(pose.theta) == pytest.approx(45.0, abs=1e-10)

    def test_full_chord_is_diameter(self):
        s = CurvedScenario(r_c=40.0, w=1.0, beta0=math.pi)
        pose = curved_pose(s, 0.0)
        assert pose.D == pytest.approx(80.0, rel=1e-12)
        assert math.degrees(pose.theta) == pytest.approx(90.0, abs=1e-10)

    def test_half_second_in(self, curved):
        pose = curved_pose(curved, 0.5)
        assert pose.beta == pytest.approx(1.0707963268, abs=1e-9)
        assert pose.D == pytest.approx(40.8146821189, abs=1e-8)
        assert math.degrees(pose.theta) == pytest.approx(30.6760551217, abs=1e-8)

    def test_chord_identity_over_beta_grid(self):
        # closed-form chord must match the general hypot expression
        r_c = 40.0
        for beta in np.linspace(1e-6, math.pi, 1000):
            s = CurvedScenario(r_c=r_c, w=1.0, beta0=float(beta))
            pose = curved_pose(s, 0.0)
            chord = 2.0 * r_c * math.sin(beta / 2.0)
            assert abs(pose.D - chord) <= 1e-12 * chord
            assert abs(pose.theta - beta / 2.0) <= 1e-12

    def test_offsets_change_theta(self):
        s = CurvedScenario(r_c=40.0, w=1.0, beta0=math.pi / 2, r0=40.0)
        pose = curved_pose(s, 0.0)
        # theta = arccos((R + r0) / D) with the detector moved back
        assert pose.theta == pytest.approx(math.acos((pose.R + 40.0) / pose.D), abs=1e-12)

    def test_out_of_segment(self, curved):
        with pytest.raises(OutOfSegmentError):
            curved_pose(curved, math.pi / 2 + 0.01)

    @pytest.mark.parametrize(
        "kw", [dict(r_c=0.0), dict(w=-1.0), dict(beta0=0.0), dict(beta0=3.5), dict(d0=-1.0)]
    )
    def test_bad_parameters(self, kw):
        params = dict(r_c=40.0, w=1.0, beta0=math.pi / 2)
        params.update(kw)
        with pytest.raises(DomainError):
            CurvedScenario(**params)

    def test_speed_property(self, curved):
        assert curved.v == 40.0


def test_segment_end(straight, curved):
    assert segment_end(straight) == pytest.approx(0.75)
    assert segment_end(curved) == pytest.approx(math.pi / 2)
