"""IMU conversion, attitude, filter, ADC, and water-sensor tests."""

import math
import random

import pytest
from hypothesis import given, strategies as st

from softfish import sensors as sn


def test_round_half_away_from_zero():
    assert sn._round_half_away(0.5) == 1
    assert sn._round_half_away(-0.5) == -1
    assert sn._round_half_away(1.5) == 2
    assert sn._round_half_away(2.5) == 3
    assert sn._round_half_away(-2.5) == -3
    assert sn._round_half_away(0.49) == 0


def test_imu_config_validation():
    with pytest.raises(ValueError):
        sn.ImuConfig(accel_scale=3)
    with pytest.raises(ValueError):
        sn.ImuConfig(gyro_scale=123)


def test_accel_scale_anchors():
    cfg = sn.ImuConfig(accel_scale=2)
    assert sn.accel_raw_to_g(cfg, 16384) == pytest.approx(1.0)
    assert sn.g_to_accel_raw(cfg, 1.0) == 16384
    cfg16 = sn.ImuConfig(accel_scale=16)
    assert sn.accel_raw_to_g(cfg16, 16384) == pytest.approx(8.0)


def test_gyro_scale_anchors():
    cfg = sn.ImuConfig(gyro_scale=250)
    assert sn.dps_to_gyro_raw(cfg, 125.0) == 16384
    assert sn.gyro_raw_to_dps(cfg, 16384) == pytest.approx(125.0)
    assert sn.dps_to_gyro_raw(cfg, 0.0) == 0


def test_raw_round_trip_within_one_lsb_all_scales():
    rng = random.Random(20240811)
    for accel_scale in sn.ACCEL_SCALES:
        cfg = sn.ImuConfig(accel_scale=accel_scale)
        for _ in range(1000):
            a = rng.uniform(-accel_scale, accel_scale)
            raw = sn.g_to_accel_raw(cfg, a)
            back = sn.accel_raw_to_g(cfg, raw)
            lsb = accel_scale / sn.RAW_FULL_SCALE
            assert abs(back - a) <= lsb
    for gyro_scale in sn.GYRO_SCALES:
        cfg = sn.ImuConfig(gyro_scale=gyro_scale)
        for _ in range(1000):
            r = rng.uniform(-gyro_scale, gyro_scale)
            raw = sn.dps_to_gyro_raw(cfg, r)
            back = sn.gyro_raw_to_dps(cfg, raw)
            assert abs(back - r) <= gyro_scale / sn.RAW_FULL_SCALE


def test_raw_encoding_clamps_at_int16():
    cfg = sn.ImuConfig(accel_scale=2)
    assert sn.g_to_accel_raw(cfg, 5.0) == 32767
    assert sn.g_to_accel_raw(cfg, -5.0) == -32768


def test_attitude_known_angles():
    for theta in (10.0, 35.0, 60.0):
        t = math.radians(theta)
        att = sn.attitude_from_accel(math.sin(t), 0.0, math.cos(t))
        assert att.pitch == pytest.approx(theta, abs=1e-9)
        assert att.roll == pytest.approx(0.0, abs=1e-9)
        att = sn.attitude_from_accel(0.0, -math.sin(t), math.cos(t))
        assert att.roll == pytest.approx(theta, abs=1e-9)
        assert att.pitch == pytest.approx(0.0, abs=1e-9)


def test_attitude_sign_quadrants():
    g = math.sin(math.radians(30.0))
    c = math.cos(math.radians(30.0))
    # pitch sign follows x, roll sign is opposite y
    assert sn.attitude_from_accel(g, 0.0, c).pitch == pytest.approx(30.0, abs=1e-9)
    assert sn.attitude_from_accel(-g, 0.0, c).pitch == pytest.approx(-30.0, abs=1e-9)
    assert sn.attitude_from_accel(0.0, g, c).roll == pytest.approx(-30.0, abs=1e-9)
    assert sn.attitude_from_accel(0.0, -g, c).roll == pytest.approx(30.0, abs=1e-9)


def test_attitude_scale_invariance_and_errors():
    a = sn.attitude_from_accel(0.3, -0.2, 0.9)
    b = sn.attitude_from_accel(0.6, -0.4, 1.8)
    assert a.pitch == pytest.approx(b.pitch, abs=1e-12)
    assert a.roll == pytest.approx(b.roll, abs=1e-12)
    with pytest.raises(ValueError):
        sn.attitude_from_accel(0.0, 0.0, 0.0)


def test_complementary_matches_geometric_recursion():
    # constant accel angle A from rest with zero gyro: after k updates
    # the estimate is A*(1 - alpha^k)
    alpha = 0.98
    a_true = 25.0
    angle = 0.0
    for k in range(1, 201):
        angle = sn.complementary_update(angle, 0.0, a_true, 0.01, alpha)
        expect = a_true * (1.0 - alpha ** k)
        assert angle == pytest.approx(expect, abs=1e-12)


def test_complementary_blends_gyro_path():
    # pure gyro (accel agrees with integration): estimate integrates rate
    angle = 10.0
    out = sn.complementary_update(angle, 5.0, 10.05, 0.01, 0.98)
    assert out == pytest.approx(0.98 * (10.0 + 0.05) + 0.02 * 10.05, abs=1e-12)


def test_complementary_validation():
    with pytest.raises(ValueError):
        sn.complementary_update(0.0, 0.0, 0.0, 0.01, alpha=1.5)
    with pytest.raises(ValueError):
        sn.complementary_update(0.0, 0.0, 0.0, 0.0)


def test_complementary_attitude_pair():
    att = sn.Attitude(roll=0.0, pitch=0.0)
    meas = sn.Attitude(roll=10.0, pitch=-20.0)
    out = sn.complementary_attitude(att, 0.0, 0.0, meas, 0.01)
    assert out.roll == pytest.approx(0.2, abs=1e-12)
    assert out.pitch == pytest.approx(-0.4, abs=1e-12)


def test_kalman_converges_to_static_angle():
    st = sn.KalmanAxisState()
    for _ in range(100):
        st = sn.kalman_update(st, 0.0, 5.5, 0.01)
    assert st.angle == pytest.approx(5.5, abs=1e-3)


def test_kalman_estimates_gyro_bias():
    # gyro reads a steady +3 deg/s while the body holds still: the
    # filter must push the bias state toward +3
    st = sn.KalmanAxisState()
    for _ in range(3000):
        st = sn.kalman_update(st, 3.0, 0.0, 0.01)
    assert st.bias == pytest.approx(3.0, abs=0.05)
    assert st.angle == pytest.approx(0.0, abs=0.05)


def test_kalman_returns_new_state():
    st = sn.KalmanAxisState()
    out = sn.kalman_update(st, 1.0, 2.0, 0.01)
    assert out is not st
    assert st.angle == 0.0 and st.bias == 0.0


def test_kalman_covariance_stays_symmetric_positive():
    st = sn.KalmanAxisState()
    for _ in range(500):
        st = sn.kalman_update(st, 0.5, 1.0, 0.01)
    p = st.p
    assert p[0, 1] == pytest.approx(p[1, 0], rel=1e-9)
    assert p[0, 0] > 0.0 and p[1, 1] > 0.0


def test_current_adc_paper_mode_anchor_triple():
    assert sn.current_digital("paper-eq", 0.0) == 512
    assert sn.current_digital("paper-eq", 5.0) == 716
    assert sn.current_digital("paper-eq", -5.0) == 307


def test_current_adc_datasheet_mode():
    # 0 A sits at 2.5 V of a 5 V, 10-bit scale
    assert sn.current_digital("datasheet", 0.0) == 512
    assert sn.current_digital("datasheet", 5.0) == \
        sn._round_half_away((0.185 * 5.0 + 2.5) / 5.0 * 1023.0)


def test_current_adc_clamps_and_validates():
    assert sn.current_digital("paper-eq", 100.0) == 1023
    assert sn.current_digital("paper-eq", -100.0) == 0
    with pytest.raises(ValueError):
        sn.current_digital("nonsense", 0.0)


@given(st.floats(min_value=-20.0, max_value=20.0))
def test_current_adc_monotone(i):
    a = sn.current_digital("paper-eq", i)
    b = sn.current_digital("paper-eq", i + 0.5)
    assert b >= a


def test_water_sensor_threshold():
    assert sn.water_sensor_low(1.0) is True
    assert sn.water_sensor_low(1e-9) is True
    assert sn.water_sensor_low(0.0) is False
    assert sn.water_sensor_low(-0.05) is False
