"""Deterministic simulation loop, scenario runner, and CSV telemetry.

The whole system advances on a fixed 1 ms tick. A scenario is a JSON
object {seed, duration_ms, events, initial}; key events are applied at
their tick boundary, before that tick runs, ordered by time then key
number. One telemetry record is emitted after every decimation
interval. There is no randomness anywhere in the model; the seed is
recorded so equal (scenario, seed) pairs can be checked byte for byte.
"""

import json
import math
from dataclasses import dataclass, field, fields

from . import controller, drivetrain, sensors, tail_actuator, vehicle
from .config import SimConfig

TICK_S = 0.001
# Mean tail curvature is averaged over exactly one envelope cycle so a
# symmetric beat contributes no steady yaw moment. The window reports 0
# until it fills, which also keeps the first second free of a spurious
# turn-on transient.
KAPPA_MEAN_TICKS = 1000


class ScenarioError(ValueError):
    """Scenario file failed validation; message names the field."""


@dataclass
class Scenario:
    seed: int = 0
    duration_ms: int = 1000
    events: list = field(default_factory=list)   # [(t_ms, key)] sorted
    initial: dict = field(default_factory=dict)


# Starting pose accepted in a scenario's "initial" section. The fish
# starts submerged at 1 m so surfacing behavior is observable.
INITIAL_DEFAULTS = {
    "x": 0.0,
    "y": 0.0,
    "depth": 1.0,
    "yaw_deg": 0.0,
    "pitch_deg": 0.0,
    "surge": 0.0,
}


def load_scenario(source):
    """Parse and validate a scenario from a dict, JSON text, or path."""
    if isinstance(source, dict):
        data = source
    else:
        text = source
        if "{" not in str(source):
            with open(source, "r", encoding="utf-8") as fh:
                text = fh.read()
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ScenarioError(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ScenarioError("scenario must be a JSON object")
    unknown = set(data) - {"seed", "duration_ms", "events", "initial"}
    if unknown:
        raise ScenarioError(f"unknown scenario fields: {sorted(unknown)}")

    seed = data.get("seed", 0)
    if not isinstance(seed, int) or seed < 0:
        raise ScenarioError("seed: must be a non-negative integer")
    duration = data.get("duration_ms", 1000)
    if not isinstance(duration, int) or duration <= 0:
        raise ScenarioError("duration_ms: must be a positive integer")

    events = []
    last_t = -1
    for i, ev in enumerate(data.get("events", [])):
        where = f"events[{i}]"
        if not isinstance(ev, dict) or set(ev) != {"t_ms", "key"}:
            raise ScenarioError(f"{where}: must be {{t_ms, key}}")
        t_ms, key = ev["t_ms"], ev["key"]
        if not isinstance(t_ms, int) or t_ms < 0 or t_ms > duration:
            raise ScenarioError(f"{where}.t_ms: must lie in [0, duration_ms]")
        if key not in controller.KEY_ACTIONS:
            raise ScenarioError(f"{where}.key: must be 1..5")
        if t_ms < last_t:
            raise ScenarioError(f"{where}.t_ms: events must be sorted by time")
        last_t = t_ms
        events.append((t_ms, key))
    # Same-tick events apply in key-number order.
    events.sort(key=lambda e: (e[0], e[1]))

    initial = dict(INITIAL_DEFAULTS)
    extra = data.get("initial", {})
    if not isinstance(extra, dict):
        raise ScenarioError("initial: must be an object")
    bad = set(extra) - set(INITIAL_DEFAULTS)
    if bad:
        raise ScenarioError(f"initial: unknown fields {sorted(bad)}")
    for k, v in extra.items():
        if not isinstance(v, (int, float)) or not math.isfinite(v):
            raise ScenarioError(f"initial.{k}: must be a finite number")
        initial[k] = float(v)

    return Scenario(seed=seed, duration_ms=duration,
                    events=events, initial=initial)


@dataclass
class TelemetryRecord:
    t_ms: int
    mode: str
    x: float
    y: float
    depth: float
    yaw_deg: float
    pitch_deg: float
    surge: float
    tail_kappa: float
    p_left: float
    p_right: float
    stepper_steps: int
    mass_x_mm: float
    fin_l_deg: float
    fin_r_deg: float
    vbat: float
    current_a: float
    adc_current: int
    soc: float
    water_low: int
    flex_ra: float
    flex_rb: float


TELEMETRY_FIELDS = tuple(f.name for f in fields(TelemetryRecord))


class Simulation:
    """Full system state advanced one millisecond per tick()."""

    def __init__(self, cfg=None, initial=None):
        self.cfg = cfg if cfg is not None else SimConfig()
        self.t_ms = 0
        self.halted = False
        self.ctrl = controller.ControllerState()
        self.battery = controller.BatteryState(
            capacity_mah=self.cfg.battery.capacity_mah,
            soc=self.cfg.battery.soc)
        self.pump = drivetrain.PumpState()
        self.stepper = drivetrain.StepperState()
        self.servo_l = drivetrain.ServoState()
        self.servo_r = drivetrain.ServoState()
        self.vehicle = vehicle.VehicleState()
        init = dict(INITIAL_DEFAULTS)
        if initial:
            init.update(initial)
        self.vehicle.x = init["x"]
        self.vehicle.y = init["y"]
        self.vehicle.depth = init["depth"]
        self.vehicle.yaw = math.radians(init["yaw_deg"])
        self.vehicle.pitch = math.radians(init["pitch_deg"])
        self.vehicle.u = init["surge"]

        self.kappa = 0.0
        self.kappa_rate = 0.0
        self.p_left = 0.0
        self.p_right = 0.0
        self.current_a = 0.0
        # Flex sensors are scaled to the full-load curvature of the
        # configured material and geometry.
        kappa_full = tail_actuator.solve_curvature(
            self.cfg.geometry, self.cfg.material,
            tail_actuator.P_INFLATE_MAX, tail_actuator.P_VACUUM_MIN)
        self.flex = tail_actuator.FlexPair(kappa_max=abs(kappa_full))

        self._kappa_ring = [0.0] * KAPPA_MEAN_TICKS
        self._kappa_idx = 0
        self._kappa_count = 0
        self._kappa_sum = 0.0
        self.kappa_mean = 0.0

        self.distance = 0.0
        self.energy_j = 0.0

    def apply_key(self, key):
        controller.handle_key(self.ctrl, key)

    def _push_kappa(self, k):
        self._kappa_sum += k - self._kappa_ring[self._kappa_idx]
        self._kappa_ring[self._kappa_idx] = k
        self._kappa_idx = (self._kappa_idx + 1) % KAPPA_MEAN_TICKS
        if self._kappa_count < KAPPA_MEAN_TICKS:
            self._kappa_count += 1
        self.kappa_mean = (self._kappa_sum / KAPPA_MEAN_TICKS
                           if self._kappa_count == KAPPA_MEAN_TICKS else 0.0)

    def tick(self):
        """Advance the whole system by one millisecond."""
        cfg = self.cfg
        vbat = self.battery.voltage

        if not self.halted:
            controller.tick_1ms(self.ctrl)
            # The hydraulic time constant spans windows, so the pump
            # responds to the latched window mean rather than the chop.
            v_cmd = controller.window_mean_voltage(self.ctrl, vbat)
            duty_frac = self.ctrl.duty_counts / controller.PWM_WINDOW_TICKS
            self.stepper.target = self.ctrl.stepper_target
            drivetrain.stepper_tick(self.stepper, TICK_S)
            self.servo_l.fin_angle = self.ctrl.fin_cmd[0]
            self.servo_r.fin_angle = self.ctrl.fin_cmd[1]
            self.current_a = drivetrain.supply_current(duty_frac)
            controller.battery_update(self.battery, self.current_a, TICK_S)
            if self.battery.soc <= 0.0:
                self.halted = True
        else:
            v_cmd = 0.0
            self.current_a = 0.0
        self.energy_j += vbat * self.current_a * TICK_S

        self.p_left, self.p_right = drivetrain.hydraulic_update(
            self.pump, v_cmd, TICK_S)
        prev_kappa = self.kappa
        self.kappa = tail_actuator.solve_curvature(
            cfg.geometry, cfg.material, self.p_left, self.p_right,
            x0=prev_kappa)
        self.kappa_rate = (self.kappa - prev_kappa) / TICK_S
        self._push_kappa(self.kappa)

        vs = self.vehicle
        heave, pitch_m, yaw_m = vehicle.fin_forces(
            vs.u, self.servo_l.fin_angle, self.servo_r.fin_angle, cfg.hydro)
        mass_x = drivetrain.leadscrew_position(self.stepper.position)
        f = vehicle.Forces(
            thrust=vehicle.tail_thrust(
                self.kappa_rate, cfg.geometry.length, cfg.hydro),
            heave_down=heave,
            pitch_moment=(pitch_m
                          + vehicle.cog_pitch_moment(mass_x, cfg.hydro)),
            yaw_moment=(yaw_m
                        + vehicle.tail_yaw_moment(
                            vs.u, self.kappa_mean, cfg.hydro)),
        )
        vehicle.step_dynamics(vs, f, cfg.hydro, TICK_S)
        self.distance += abs(vs.u) * TICK_S
        self.t_ms += 1

    def record(self):
        """Snapshot the current state as a telemetry record."""
        vs = self.vehicle
        mass_x = drivetrain.leadscrew_position(self.stepper.position)
        ra, rb = tail_actuator.flex_resistances(self.flex, self.kappa)
        return TelemetryRecord(
            t_ms=self.t_ms,
            mode=self.ctrl.mode.value,
            x=vs.x,
            y=vs.y,
            depth=vs.depth,
            yaw_deg=math.degrees(vs.yaw),
            pitch_deg=math.degrees(vs.pitch),
            surge=vs.u,
            tail_kappa=self.kappa,
            p_left=self.p_left,
            p_right=self.p_right,
            stepper_steps=self.stepper.position,
            mass_x_mm=mass_x * 1000.0,
            fin_l_deg=self.servo_l.fin_angle,
            fin_r_deg=self.servo_r.fin_angle,
            vbat=self.battery.voltage,
            current_a=self.current_a,
            adc_current=sensors.current_digital(
                self.cfg.adc_mode, self.current_a),
            soc=self.battery.soc,
            water_low=int(sensors.water_sensor_low(vs.depth)),
            flex_ra=ra,
            flex_rb=rb,
        )

    def summary(self):
        return {
            "t_ms": self.t_ms,
            "distance_m": self.distance,
            "net_yaw_rad": self.vehicle.yaw,
            "energy_j": self.energy_j,
            "halted": self.halted,
            "fault": None,
        }


def run_scenario(sc, cfg=None, decimation_ms=10):
    """Run a scenario to completion; returns (records, summary).

    A simulation fault stops the run early; the records produced so far
    are returned and the summary carries the fault message.
    """
    if decimation_ms <= 0:
        raise ValueError("decimation_ms must be positive")
    sim = Simulation(cfg, sc.initial)
    records = []
    pending = list(sc.events)
    next_ev = 0
    fault = None
    try:
        while sim.t_ms < sc.duration_ms:
            while next_ev < len(pending) and pending[next_ev][0] == sim.t_ms:
                sim.apply_key(pending[next_ev][1])
                next_ev += 1
            sim.tick()
            if sim.t_ms % decimation_ms == 0:
                records.append(sim.record())
    except vehicle.SimulationFault as exc:
        fault = str(exc)
    summary = sim.summary()
    summary["fault"] = fault
    return records, summary


def _format_value(v):
    if isinstance(v, float):
        return format(v, ".9g")
    return str(v)


def write_csv(records, fh):
    """Write records in the stable schema: fixed columns, %.9g floats."""
    fh.write(",".join(TELEMETRY_FIELDS) + "\n")
    for rec in records:
        fh.write(",".join(
            _format_value(getattr(rec, name)) for name in TELEMETRY_FIELDS)
            + "\n")


def record_to_dict(rec):
    """Record as a plain dict, for the wire protocol."""
    return {name: getattr(rec, name) for name in TELEMETRY_FIELDS}
