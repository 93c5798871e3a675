"""Electromechanical plant: H-bridge, gear-pump hydraulics, stepper with
lead screw, and fin servo pulse mapping.

The pump sees the PWM mean voltage (motor time constant well above the
25 ms window), and cavity pressures follow a first-order lag toward the
inflate/vacuum envelope. The balance-mass stepper full-steps at 5 ms per
1.8 degree step; the lead screw converts 200 steps/rev to 2 mm of travel.
"""

import math
import warnings
from dataclasses import dataclass

from .tail_actuator import cavity_pressures

PUMP_RATED_V = 12.0       # V
PUMP_RATED_FLOW = 2.0     # L/min at rated voltage
HYDRAULIC_TAU = 0.05      # s, pressure lag time constant

STEP_ANGLE_DEG = 1.8      # 360 / (4 phases * 50 teeth), full-step
STEP_INTERVAL = 0.005     # s per full step
STEPS_PER_REV = 200
LEADSCREW_LEAD = 0.002    # m per revolution

SERVO_FRAME = 0.020       # s, pulse repetition period
SERVO_MIN_US = 1000.0
SERVO_MAX_US = 2000.0

# Supply current model: pump draws 0.8 A at full duty, servos and logic
# a constant 0.3 A through the 5 V regulator.
PUMP_FULL_LOAD_A = 0.8
LOGIC_SERVO_A = 0.3


@dataclass
class HBridgeInput:
    in1: int
    in2: int
    enable_duty: float = 1.0  # fraction of the window the enable is high

    def __post_init__(self):
        if self.in1 not in (0, 1) or self.in2 not in (0, 1):
            raise ValueError(f"pins must be 0 or 1, got ({self.in1}, {self.in2})")
        if not 0.0 <= self.enable_duty <= 1.0:
            raise ValueError(f"enable_duty must be in [0, 1], got {self.enable_duty}")


def hbridge_output(vbat, in_):
    """Mean motor voltage over a PWM window, V.

    (in1, in2) = (1, 0) drives positive, (0, 1) negative, equal pins
    brake to 0. The negative first half-cycle of the swim envelope uses
    (0, 1).
    """
    if vbat < 0:
        raise ValueError("vbat must be >= 0")
    if in_.in1 == in_.in2:
        return 0.0
    v = in_.enable_duty * vbat
    return v if in_.in1 else -v


def pump_flow(v):
    """Gear pump flow at drive voltage v, L/min; linear and invertible."""
    if abs(v) > PUMP_RATED_V:
        warnings.warn(
            f"pump voltage {v:.2f} V beyond {PUMP_RATED_V} V rating, clamped",
            stacklevel=2,
        )
        v = math.copysign(PUMP_RATED_V, v)
    return PUMP_RATED_FLOW * (v / PUMP_RATED_V)


@dataclass
class PumpState:
    v_cmd: float = 0.0         # V, last commanded drive
    delta_p_frac: float = 0.0  # lag state in [-1, 1]
    flow: float = 0.0          # L/min


def hydraulic_update(pump, v_cmd, dt, tau=HYDRAULIC_TAU):
    """Advance the pump lag state and return (p_left, p_right), Pa.

    delta_p_frac relaxes exponentially toward v_cmd/12 (clamped to
    [-1, 1]: the converged actuator envelope binds before the pump's
    own pressure ceiling). Steady +12 V gives (44500, -8000).
    """
    if dt <= 0:
        raise ValueError("dt must be > 0")
    target = min(max(v_cmd / PUMP_RATED_V, -1.0), 1.0)
    decay = math.exp(-dt / tau)
    pump.delta_p_frac = target + (pump.delta_p_frac - target) * decay
    pump.v_cmd = v_cmd
    # Overdrive saturates silently here; a fully charged pack sits above
    # the pump rating by design. pump_flow keeps the loud contract for
    # direct callers.
    pump.flow = PUMP_RATED_FLOW * target
    return cavity_pressures(pump.delta_p_frac)


@dataclass
class StepperState:
    position: int = 0               # steps
    target: int = 0                 # steps
    phase: int = 0                  # full-step phase 0..3
    step_interval: float = STEP_INTERVAL  # s
    timer: float = 0.0              # s since last step while moving

    def angle_deg(self):
        return self.position * STEP_ANGLE_DEG


def stepper_tick(st, dt):
    """Advance at most one full step toward target per elapsed interval.

    The timer runs only while motion is pending, so the first step of
    a move lands one interval after the command.
    """
    if st.position == st.target:
        st.timer = 0.0
        return st
    st.timer += dt
    # 1e-12 slack absorbs float accumulation of repeated dt adds
    if st.timer >= st.step_interval - 1e-12:
        st.timer -= st.step_interval
        if st.target > st.position:
            st.position += 1
            st.phase = (st.phase + 1) % 4
        else:
            st.position -= 1
            st.phase = (st.phase - 1) % 4
        if st.position == st.target:
            st.timer = 0.0
    return st


def leadscrew_position(steps):
    """Carriage travel for a signed step count, m (2 mm per 200 steps)."""
    return steps / STEPS_PER_REV * LEADSCREW_LEAD


@dataclass
class ServoState:
    fin_angle: float = 0.0  # deg, logical angle (0 = neutral), +-45 range

    @property
    def pulse_us(self):
        return servo_pulse(self.fin_angle)


def servo_pulse(fin_angle):
    """Command pulse width for a logical fin angle, microseconds.

    Logical 0 deg is the servo's 45 deg midpoint; the +-45 deg range maps
    linearly onto 1000-2000 us inside a 20 ms frame. Out-of-range angles
    clamp with a warning.
    """
    if fin_angle < -45.0 or fin_angle > 45.0:
        warnings.warn(
            f"fin angle {fin_angle:.1f} deg outside +-45, clamped",
            stacklevel=2,
        )
        fin_angle = min(max(fin_angle, -45.0), 45.0)
    return SERVO_MIN_US + (fin_angle + 45.0) / 90.0 * (SERVO_MAX_US - SERVO_MIN_US)


def supply_current(duty_frac):
    """Pack discharge current at a given pump duty fraction, A."""
    return PUMP_FULL_LOAD_A * abs(duty_frac) + LOGIC_SERVO_A
