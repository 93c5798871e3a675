"""Five-mode swim controller emulating the 1 ms interrupt firmware.

PWM windows are 25 ticks (25 ms); 40 windows make one 1.000 s duty
envelope. Duty counts follow floor(A * sin(pi * (a mod 20) / 20)) with
A = 25 normally and 4 on a turn's weak half-cycle; polarity is negative
(in1, in2) = (0, 1) for the first 20 windows and positive (1, 0) for the
rest. Duty and polarity latch at window start, so mode changes never
tear a window.
"""

import math
from dataclasses import dataclass
from enum import Enum

from .drivetrain import HBridgeInput

PWM_WINDOW_TICKS = 25
ENVELOPE_WINDOWS = 40
DUTY_FULL = 25
DUTY_WEAK = 4


class Mode(str, Enum):
    STRAIGHT = "Straight"
    LEFT_TURN = "LeftTurn"
    RIGHT_TURN = "RightTurn"
    ELEVATOR_UP = "ElevatorUp"
    ELEVATOR_DOWN = "ElevatorDown"


# Duty amplitude counts (first half-cycle, second half-cycle) per mode.
AMPLITUDE_COUNTS = {
    Mode.STRAIGHT: (DUTY_FULL, DUTY_FULL),
    Mode.LEFT_TURN: (DUTY_FULL, DUTY_WEAK),
    Mode.RIGHT_TURN: (DUTY_WEAK, DUTY_FULL),
    Mode.ELEVATOR_UP: (DUTY_FULL, DUTY_FULL),
    Mode.ELEVATOR_DOWN: (DUTY_FULL, DUTY_FULL),
}

# key -> (mode, absolute stepper target in steps, (left fin, right fin) deg)
KEY_ACTIONS = {
    1: (Mode.STRAIGHT, 0, (0.0, 0.0)),
    2: (Mode.LEFT_TURN, 0, (30.0, -30.0)),
    3: (Mode.RIGHT_TURN, 0, (-30.0, 30.0)),
    4: (Mode.ELEVATOR_UP, -600, (-30.0, -30.0)),   # -1080 deg, mass aft
    5: (Mode.ELEVATOR_DOWN, 600, (30.0, 30.0)),    # +1080 deg, mass forward
}


@dataclass
class WaveformParams:
    """Envelope the duty counts realize at the nominal 12 V rail."""

    v_a: float = 12.0     # V, symmetric amplitude
    v_a1: float = 12.0    # V, strong half-cycle of a turn
    v_a2: float = 1.92    # V, weak half-cycle (4 of 25 counts)
    omega: float = 2.0 * math.pi  # rad/s, 1 Hz tail beat


@dataclass
class ControllerState:
    mode: Mode = Mode.STRAIGHT
    t_count: int = 0        # tick within the PWM window, 0..24
    a_count: int = 0        # envelope window index, 0..39
    duty_counts: int = 0    # latched duty for the current window
    polarity: int = -1      # latched +-1; negative first half-cycle
    stepper_target: int = 0
    fin_cmd: tuple = (0.0, 0.0)


def duty_for(mode, a_count):
    """Duty counts the firmware computes at window a_count."""
    amp = AMPLITUDE_COUNTS[mode][0 if a_count < 20 else 1]
    return int(math.floor(amp * math.sin(math.pi * (a_count % 20) / 20.0)))


def handle_key(st, key):
    """Apply a console key (1..5); invalid keys raise and change nothing."""
    if key not in KEY_ACTIONS:
        raise ValueError(f"key must be 1..5, got {key!r}")
    mode, target, fins = KEY_ACTIONS[key]
    st.mode = mode
    st.stepper_target = target
    st.fin_cmd = fins
    return st


def tick_1ms(st):
    """Advance one millisecond; returns the H-bridge pins for this tick.

    Window duty and polarity latch when t_count wraps to 0, so a mode
    change mid-window takes effect at the next window.
    """
    if st.t_count == 0:
        st.duty_counts = duty_for(st.mode, st.a_count)
        st.polarity = -1 if st.a_count < 20 else 1
    enable = 1.0 if st.t_count < st.duty_counts else 0.0
    if st.polarity > 0:
        hb = HBridgeInput(1, 0, enable)
    else:
        hb = HBridgeInput(0, 1, enable)
    st.t_count += 1
    if st.t_count == PWM_WINDOW_TICKS:
        st.t_count = 0
        st.a_count = (st.a_count + 1) % ENVELOPE_WINDOWS
    return hb


def window_mean_voltage(st, vbat):
    """Mean motor voltage of the latched window at supply vbat, V."""
    return reconstruct_mean_voltage(st.duty_counts, st.polarity, vbat)


def reconstruct_mean_voltage(duty_counts, polarity, vbat):
    """Mean voltage a (duty, polarity) window produces at supply vbat, V."""
    return polarity * (duty_counts / PWM_WINDOW_TICKS) * vbat


@dataclass
class BatteryState:
    """3S lithium pack, linear open-circuit voltage over state of charge."""

    capacity_mah: float = 3400.0
    soc: float = 1.0

    @property
    def voltage(self):
        return 9.0 + 3.6 * self.soc  # 12.6 V full, 9.0 V empty


def battery_update(b, current, dt):
    """Coulomb-count a discharge; soc clamps at 0 (system halt level)."""
    if current < 0:
        raise ValueError("discharge current must be >= 0")
    if dt <= 0:
        raise ValueError("dt must be > 0")
    b.soc = max(0.0, b.soc - current * dt / (3600.0 * b.capacity_mah / 1000.0))
    return b
