"""Swim-controller tests: duty envelope, key map, window latching,
battery model."""

import math

import pytest
from hypothesis import given, strategies as st

from softfish import controller as ct


def collect_windows(mode, vbat=12.0, a0=0):
    """Windowed (duty, polarity, mean V) over one full envelope."""
    st_ = ct.ControllerState(mode=mode, a_count=a0)
    out = []
    for _ in range(40):
        for t in range(25):
            ct.tick_1ms(st_)
            if t == 0:
                duty, pol = st_.duty_counts, st_.polarity
        out.append((duty, pol, ct.reconstruct_mean_voltage(duty, pol, vbat)))
    return out


def test_duty_counts_follow_floored_sine():
    for a in range(40):
        expect = int(math.floor(25 * math.sin(math.pi * (a % 20) / 20.0)))
        assert ct.duty_for(ct.Mode.STRAIGHT, a) == expect
    # the weak half of a turn runs 4 counts
    assert ct.duty_for(ct.Mode.LEFT_TURN, 30) == \
        int(math.floor(4 * math.sin(math.pi * 10 / 20.0)))


def test_window_examples():
    st_ = ct.ControllerState(mode=ct.Mode.STRAIGHT, a_count=10)
    ct.tick_1ms(st_)
    assert st_.duty_counts == 25
    assert st_.polarity == -1
    assert ct.window_mean_voltage(st_, 12.0) == pytest.approx(-12.0)

    st_ = ct.ControllerState(mode=ct.Mode.LEFT_TURN, a_count=30)
    ct.tick_1ms(st_)
    assert st_.duty_counts == 4
    assert ct.window_mean_voltage(st_, 12.0) == pytest.approx(1.92)

    st_ = ct.ControllerState(mode=ct.Mode.STRAIGHT, a_count=0)
    ct.tick_1ms(st_)
    assert st_.duty_counts == 0
    assert ct.window_mean_voltage(st_, 12.0) == 0.0


def test_reconstruct_mean_voltage_examples():
    assert ct.reconstruct_mean_voltage(25, -1, 12.0) == -12.0
    assert ct.reconstruct_mean_voltage(0, 1, 12.0) == 0.0
    assert ct.reconstruct_mean_voltage(13, 1, 12.0) == pytest.approx(6.24)


def test_enable_high_for_duty_ticks():
    st_ = ct.ControllerState(mode=ct.Mode.STRAIGHT, a_count=10)
    highs = sum(ct.tick_1ms(st_).enable_duty for _ in range(25))
    assert highs == 25  # full duty window
    st_ = ct.ControllerState(mode=ct.Mode.STRAIGHT, a_count=1)
    duty = ct.duty_for(ct.Mode.STRAIGHT, 1)
    highs = [ct.tick_1ms(st_).enable_duty for _ in range(25)]
    assert sum(highs) == duty
    # HIGH ticks come first in the window
    assert highs[:duty] == [1.0] * duty


def test_polarity_pins_by_half_cycle():
    st_ = ct.ControllerState(mode=ct.Mode.STRAIGHT, a_count=5)
    hb = ct.tick_1ms(st_)
    assert (hb.in1, hb.in2) == (0, 1)
    st_ = ct.ControllerState(mode=ct.Mode.STRAIGHT, a_count=25)
    hb = ct.tick_1ms(st_)
    assert (hb.in1, hb.in2) == (1, 0)


def test_counts_wrap():
    st_ = ct.ControllerState()
    for _ in range(25 * 40):
        ct.tick_1ms(st_)
    assert st_.t_count == 0
    assert st_.a_count == 0


def test_mode_change_does_not_tear_window():
    st_ = ct.ControllerState(mode=ct.Mode.STRAIGHT, a_count=10)
    ct.tick_1ms(st_)
    latched = st_.duty_counts
    ct.handle_key(st_, 2)  # switch to LeftTurn mid-window
    for _ in range(10):
        ct.tick_1ms(st_)
    assert st_.duty_counts == latched
    # next window picks up the new mode's amplitude at its first tick
    for _ in range(15):
        ct.tick_1ms(st_)
    assert st_.duty_counts == ct.duty_for(ct.Mode.LEFT_TURN, 11)


def test_straight_envelope_tracks_minus_sine_within_one_quantum():
    means = [m for _, _, m in collect_windows(ct.Mode.STRAIGHT)]
    for a, mean in enumerate(means):
        t = a * 0.025
        target = -12.0 * math.sin(2.0 * math.pi * t)
        assert abs(mean - target) <= 0.48


def test_turn_envelopes_mirror():
    left = [(d, p) for d, p, _ in collect_windows(ct.Mode.LEFT_TURN)]
    right = [(d, p) for d, p, _ in collect_windows(ct.Mode.RIGHT_TURN)]
    for a in range(40):
        dl, pl = left[a]
        dr, pr = right[(a + 20) % 40]
        assert dl == dr
        assert pl == -pr
    # strong/weak amplitude ratio 25:4
    assert max(d for d, _ in left) == 25
    assert max(d for d, p in left if p > 0) == 4


def test_key_map():
    st_ = ct.ControllerState(mode=ct.Mode.ELEVATOR_UP, stepper_target=-600)
    ct.handle_key(st_, 1)
    assert st_.mode == ct.Mode.STRAIGHT
    assert st_.stepper_target == 0
    assert st_.fin_cmd == (0.0, 0.0)
    ct.handle_key(st_, 4)
    assert st_.mode == ct.Mode.ELEVATOR_UP
    assert st_.stepper_target == -600
    assert st_.fin_cmd == (-30.0, -30.0)
    ct.handle_key(st_, 2)
    assert st_.fin_cmd == (30.0, -30.0)
    ct.handle_key(st_, 3)
    assert st_.fin_cmd == (-30.0, 30.0)
    ct.handle_key(st_, 5)
    assert st_.stepper_target == 600
    assert st_.fin_cmd == (30.0, 30.0)


def test_invalid_key_rejected_without_side_effects():
    st_ = ct.ControllerState(mode=ct.Mode.LEFT_TURN, stepper_target=0)
    with pytest.raises(ValueError):
        ct.handle_key(st_, 9)
    assert st_.mode == ct.Mode.LEFT_TURN
    with pytest.raises(ValueError):
        ct.handle_key(st_, "2")


@given(st.integers(min_value=0, max_value=39),
       st.sampled_from(list(ct.Mode)))
def test_duty_always_within_counts(a, mode):
    d = ct.duty_for(mode, a)
    assert 0 <= d <= 25


def test_battery_examples():
    b = ct.BatteryState()
    assert b.voltage == pytest.approx(12.6)
    ct.battery_update(b, 0.0, 1.0)
    assert b.soc == 1.0
    b2 = ct.BatteryState()
    for _ in range(36000):
        ct.battery_update(b2, 3.4, 0.1)
    assert b2.soc == pytest.approx(0.0, abs=1e-9)
    assert b2.voltage == pytest.approx(9.0)


def test_battery_monotone_and_clamped():
    b = ct.BatteryState(soc=0.001)
    last = b.soc
    for _ in range(100):
        ct.battery_update(b, 3.4, 1.0)
        assert b.soc <= last
        last = b.soc
    assert b.soc == 0.0


def test_battery_validation():
    with pytest.raises(ValueError):
        ct.battery_update(ct.BatteryState(), -1.0, 1.0)
    with pytest.raises(ValueError):
        ct.battery_update(ct.BatteryState(), 1.0, 0.0)
