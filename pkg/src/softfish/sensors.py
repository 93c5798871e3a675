"""Sensor emulation and attitude estimation.

Raw<->physical conversions for the 16-bit IMU at its four programmable
ranges, accelerometer attitude with the sign rule (roll negated when y
is positive, pitch negated when x is negative), complementary and
two-state Kalman filters, the Hall current sensor ADC, and the water
contact probe.
"""

import math
from dataclasses import dataclass, field

import numpy as np

ACCEL_SCALES = (2, 4, 8, 16)        # g full-scale options
GYRO_SCALES = (250, 500, 1000, 2000)  # deg/s full-scale options
RAW_FULL_SCALE = 32768
RAW_MIN, RAW_MAX = -32768, 32767

ADC_MODES = ("paper-eq", "datasheet")


def _round_half_away(x):
    """Round half away from zero (the ADC offset lands exactly on .5)."""
    return int(math.copysign(math.floor(abs(x) + 0.5), x))


@dataclass(frozen=True)
class ImuConfig:
    accel_scale: int = 2   # g
    gyro_scale: int = 250  # deg/s

    def __post_init__(self):
        if self.accel_scale not in ACCEL_SCALES:
            raise ValueError(f"accel_scale must be one of {ACCEL_SCALES}")
        if self.gyro_scale not in GYRO_SCALES:
            raise ValueError(f"gyro_scale must be one of {GYRO_SCALES}")


@dataclass(frozen=True)
class ImuSample:
    ax: int
    ay: int
    az: int
    gx: int
    gy: int
    gz: int


@dataclass(frozen=True)
class Attitude:
    roll: float   # deg
    pitch: float  # deg


def accel_raw_to_g(cfg, d):
    """Acceleration in g for a signed 16-bit raw count."""
    return cfg.accel_scale * d / RAW_FULL_SCALE


def g_to_accel_raw(cfg, a):
    """Raw count encoding an acceleration; rounds, clamps to 16 bits."""
    d = _round_half_away(a / cfg.accel_scale * RAW_FULL_SCALE)
    return min(max(d, RAW_MIN), RAW_MAX)


def gyro_raw_to_dps(cfg, d):
    """Angular rate in deg/s for a signed 16-bit raw count."""
    return cfg.gyro_scale * d / RAW_FULL_SCALE


def dps_to_gyro_raw(cfg, rate):
    """Raw count encoding an angular rate; rounds, clamps to 16 bits."""
    d = _round_half_away(rate / cfg.gyro_scale * RAW_FULL_SCALE)
    return min(max(d, RAW_MIN), RAW_MAX)


def attitude_from_accel(ax, ay, az):
    """Roll and pitch from a gravity measurement in g, degrees.

    roll  = arccos(sqrt(x^2+z^2)/|a|), negative when y > 0
    pitch = arccos(sqrt(y^2+z^2)/|a|), negative when x < 0

    Scale-invariant; both angles lie in [-90, +90].
    """
    norm = math.sqrt(ax * ax + ay * ay + az * az)
    if norm == 0.0:
        raise ValueError("attitude undefined for a zero accelerometer vector")
    roll = math.degrees(math.acos(min(1.0, math.sqrt(ax * ax + az * az) / norm)))
    if ay > 0:
        roll = -roll
    pitch = math.degrees(math.acos(min(1.0, math.sqrt(ay * ay + az * az) / norm)))
    if ax < 0:
        pitch = -pitch
    return Attitude(roll=roll, pitch=pitch)


def complementary_update(prev_angle, gyro_rate, accel_angle, dt, alpha=0.98):
    """One complementary filter step for a single axis, degrees.

    Blends the integrated gyro (weight alpha) with the accelerometer
    angle (weight 1 - alpha).
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("alpha must be in [0, 1]")
    if dt <= 0:
        raise ValueError("dt must be > 0")
    return alpha * (prev_angle + gyro_rate * dt) + (1.0 - alpha) * accel_angle


def complementary_attitude(prev, roll_rate, pitch_rate, accel_att, dt,
                           alpha=0.98):
    """Complementary update applied per axis to an Attitude pair."""
    return Attitude(
        roll=complementary_update(prev.roll, roll_rate, accel_att.roll, dt, alpha),
        pitch=complementary_update(prev.pitch, pitch_rate, accel_att.pitch, dt, alpha),
    )


@dataclass
class KalmanAxisState:
    """Angle/bias state for one axis with its 2x2 covariance.

    The initial covariance is large (unknown start angle and bias), which
    makes the filter lock to the first consistent measurements quickly.
    """

    angle: float = 0.0  # deg
    bias: float = 0.0   # deg/s
    p: np.ndarray = field(default_factory=lambda: np.diag([100.0, 100.0]))


def kalman_update(st, gyro_rate, accel_angle, dt,
                  q_angle=0.001, q_bias=0.003, r_measure=0.03):
    """One predict/update cycle of the two-state angle/bias filter.

    Predict integrates the bias-corrected gyro rate; update corrects
    against the accelerometer angle. Returns a new state; covariance
    stays symmetric positive-semidefinite.
    """
    if dt <= 0:
        raise ValueError("dt must be > 0")
    p = st.p.astype(float).copy()
    angle = st.angle + dt * (gyro_rate - st.bias)
    bias = st.bias
    p[0, 0] += dt * (dt * p[1, 1] - p[0, 1] - p[1, 0] + q_angle)
    p[0, 1] -= dt * p[1, 1]
    p[1, 0] -= dt * p[1, 1]
    p[1, 1] += q_bias * dt

    innovation = accel_angle - angle
    s = p[0, 0] + r_measure
    k0 = p[0, 0] / s
    k1 = p[1, 0] / s
    angle += k0 * innovation
    bias += k1 * innovation
    p00, p01 = p[0, 0], p[0, 1]
    p[0, 0] -= k0 * p00
    p[0, 1] -= k0 * p01
    p[1, 0] -= k1 * p00
    p[1, 1] -= k1 * p01
    return KalmanAxisState(angle=angle, bias=bias, p=p)


def current_digital(mode, i_p):
    """10-bit ADC code for a sensed current, clamped to [0, 1023].

    paper-eq mode evaluates 40.92*I + 511.5 directly; datasheet mode maps
    0.185 V/A about a 2.5 V offset onto the 0-5 V input. The two are
    deliberately not reconciled.
    """
    if mode not in ADC_MODES:
        raise ValueError(f"mode must be one of {ADC_MODES}")
    if mode == "paper-eq":
        code = _round_half_away(40.92 * i_p + 511.5)
    else:
        v_out = 0.185 * i_p + 2.5
        code = _round_half_away(v_out / 5.0 * 1023.0)
    return min(max(code, 0), 1023)


def water_sensor_low(depth_at_probe):
    """True when the probe is strictly submerged (output pulled LOW)."""
    return depth_at_probe > 0.0
