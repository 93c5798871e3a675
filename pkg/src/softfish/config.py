"""Runtime configuration: documented defaults plus JSON overrides.

A config file is a JSON object with any of the sections below; absent
sections and fields keep their defaults. Unknown sections or fields are
rejected so typos fail loudly.

  material  c1, c2 (Pa)
  geometry  length, half_thickness, width, cavity_area, moment_arm,
            n_segments, calibration_gain
  hydro     every HydroParams coefficient
  imu       accel_scale (g), gyro_scale (deg/s)
  filters   alpha, q_angle, q_bias, r_measure
  waveform  v_a, v_a1, v_a2, omega
  battery   capacity_mah, soc
  adc_mode  "paper-eq" or "datasheet"
"""

import dataclasses
import json

from .controller import WaveformParams
from .hyperelastic import DEMO_MATERIAL, MaterialParams
from .sensors import ADC_MODES, ImuConfig
from .tail_actuator import ActuatorGeometry
from .vehicle import HydroParams


@dataclasses.dataclass
class FilterParams:
    alpha: float = 0.98       # complementary blend toward the gyro
    q_angle: float = 0.001    # Kalman process noise, angle
    q_bias: float = 0.003     # Kalman process noise, gyro bias
    r_measure: float = 0.03   # Kalman accelerometer-angle variance

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError("alpha must lie in [0, 1]")
        for name in ("q_angle", "q_bias", "r_measure"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be positive")


@dataclasses.dataclass
class BatteryParams:
    capacity_mah: float = 3400.0
    soc: float = 1.0

    def __post_init__(self):
        if not self.capacity_mah > 0.0:
            raise ValueError("capacity_mah must be positive")
        if not 0.0 <= self.soc <= 1.0:
            raise ValueError("soc must lie in [0, 1]")


_SECTIONS = {
    "material": MaterialParams,
    "geometry": ActuatorGeometry,
    "hydro": HydroParams,
    "imu": ImuConfig,
    "filters": FilterParams,
    "waveform": WaveformParams,
    "battery": BatteryParams,
}


@dataclasses.dataclass
class SimConfig:
    material: MaterialParams = dataclasses.field(
        default_factory=lambda: DEMO_MATERIAL)
    geometry: ActuatorGeometry = dataclasses.field(
        default_factory=ActuatorGeometry)
    hydro: HydroParams = dataclasses.field(default_factory=HydroParams)
    imu: ImuConfig = dataclasses.field(default_factory=ImuConfig)
    filters: FilterParams = dataclasses.field(default_factory=FilterParams)
    waveform: WaveformParams = dataclasses.field(default_factory=WaveformParams)
    battery: BatteryParams = dataclasses.field(default_factory=BatteryParams)
    adc_mode: str = "paper-eq"

    def __post_init__(self):
        if self.adc_mode not in ADC_MODES:
            raise ValueError(f"adc_mode must be one of {ADC_MODES}")


def config_to_dict(cfg):
    """Plain nested dict of a config, JSON-serializable."""
    return dataclasses.asdict(cfg)


def config_from_dict(data):
    """Build a SimConfig from a (possibly partial) nested dict."""
    if not isinstance(data, dict):
        raise ValueError("config must be a JSON object")
    unknown = set(data) - set(_SECTIONS) - {"adc_mode"}
    if unknown:
        raise ValueError(f"unknown config sections: {sorted(unknown)}")
    kwargs = {}
    for section, cls in _SECTIONS.items():
        if section not in data:
            continue
        body = data[section]
        if not isinstance(body, dict):
            raise ValueError(f"config section {section!r} must be an object")
        names = {f.name for f in dataclasses.fields(cls)}
        bad = set(body) - names
        if bad:
            raise ValueError(
                f"unknown fields in config section {section!r}: {sorted(bad)}")
        defaults = dataclasses.asdict(getattr(SimConfig(), section))
        defaults.update(body)
        kwargs[section] = cls(**defaults)
    if "adc_mode" in data:
        kwargs["adc_mode"] = data["adc_mode"]
    return SimConfig(**kwargs)


def load_config(path):
    """Read a JSON config file; None returns pure defaults."""
    if path is None:
        return SimConfig()
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: invalid JSON ({exc})") from None
    try:
        return config_from_dict(data)
    except ValueError as exc:
        raise ValueError(f"{path}: {exc}") from None
