"""Reduced rigid-body motion model and IMU synthesis.

Four velocity states (surge u, heave w, pitch rate q, yaw rate r) plus
pose. Roll is held at zero and sway is omitted; the chassis suppresses
roll by design and nothing in the five-mode repertoire excites sway.

Conventions, used consistently here and in telemetry:
  depth  positive down, 0 at the surface
  pitch  positive nose up
  yaw    positive turning left (counterclockwise in the plan view)
  heave  positive down (so positive w increases depth)
"""

import math
from dataclasses import dataclass

from . import sensors

G_ACCEL = 9.81  # m/s^2

# Hull crown breaks the surface slightly above depth 0; the integrator
# clamps here rather than letting the body leave the water.
SURFACE_DEPTH_M = -0.05


class SimulationFault(RuntimeError):
    """Non-finite state was produced; carries the offending snapshot."""

    def __init__(self, msg, snapshot):
        super().__init__(msg)
        self.snapshot = snapshot


@dataclass
class HydroParams:
    """Invented hydrodynamic defaults; every figure is configurable.

    c_drag_surge comes from 1/2*rho*Cd*A with Cd=0.1, A=0.008 m^2.
    k_thrust is tuned so Straight mode settles near 0.2 m/s surge.
    """

    mass: float = 1.2               # kg
    pitch_inertia: float = 0.02     # kg m^2
    yaw_inertia: float = 0.02       # kg m^2
    k_thrust: float = 0.18          # N s^2/m^2 on squared tail-tip speed
    c_drag_surge: float = 0.4       # N s^2/m^2
    c_drag_heave: float = 4.0       # N s^2/m^2, blunt vertical profile
    k_fin_lift: float = 2.0         # N/rad per (m/s)^2
    fin_arm: float = 0.1            # m, fins aft of the mass centre
    k_fin_yaw: float = 0.4          # N m/rad per (m/s)^2
    k_tail_yaw: float = 0.5         # N m per (m/s)^2 per unit mean curvature
    k_restore_pitch: float = 0.03   # N m/rad, metacentric righting
    cog_moment_per_m: float = 1.0   # N m per m of mass travel
    damping_q: float = 0.05         # N m s
    damping_r: float = 0.02         # N m s

    def __post_init__(self):
        for name, value in self.__dict__.items():
            if not value > 0.0:
                raise ValueError(f"{name} must be positive, got {value}")


@dataclass
class VehicleState:
    x: float = 0.0
    y: float = 0.0
    depth: float = 0.0
    yaw: float = 0.0     # rad
    pitch: float = 0.0   # rad
    u: float = 0.0       # m/s
    w: float = 0.0       # m/s
    q: float = 0.0       # rad/s
    r: float = 0.0       # rad/s
    # accelerations of the last step, kept for IMU synthesis
    du: float = 0.0
    dw: float = 0.0


@dataclass
class Forces:
    """External actions on the body for one step.

    Signs follow the module conventions: heave_down pushes the body
    deeper, pitch_moment raises the nose, yaw_moment turns left.
    """

    thrust: float = 0.0
    heave_down: float = 0.0
    pitch_moment: float = 0.0
    yaw_moment: float = 0.0


def tail_thrust(kappa_rate, geom_length, hp):
    """Thrust from tail oscillation, N; quadratic in tip speed, >= 0."""
    tip_speed = kappa_rate * geom_length * geom_length / 2.0
    return hp.k_thrust * tip_speed * tip_speed


def fin_forces(u, fin_l_deg, fin_r_deg, hp):
    """(heave_down N, pitch_moment N m, yaw_moment N m) from the fins.

    Common-mode deflection c = (fl+fr)/2 drives heave and pitch: both
    fins at -30 deg lift the body (heave_down < 0) and raise the nose.
    Differential deflection d = fl - fr drives yaw: (+30, -30) yields a
    positive (left) moment. Fins are assumed within their +-45 deg
    travel; the servo layer clamps before angles reach here.
    """
    c_rad = math.radians((fin_l_deg + fin_r_deg) / 2.0)
    d_rad = math.radians(fin_l_deg - fin_r_deg)
    u_sq = u * u
    heave_down = hp.k_fin_lift * u_sq * c_rad
    pitch_moment = -hp.k_fin_lift * hp.fin_arm * u_sq * c_rad
    yaw_moment = hp.k_fin_yaw * u_sq * d_rad
    return heave_down, pitch_moment, yaw_moment


def cog_pitch_moment(mass_x, hp):
    """Nose-up moment from the mass carriage at mass_x metres forward.

    Moving the mass aft (negative mass_x, the ElevatorUp target) raises
    the nose. Static balance against the righting spring puts the
    equilibrium pitch at cog_moment_per_m*|mass_x|/k_restore_pitch.
    """
    return -hp.cog_moment_per_m * mass_x


def tail_yaw_moment(u, kappa_mean, hp):
    """Yaw moment from a sustained curvature bias, N m.

    A tail held bent to one side acts as a deflected rudder; the mean
    curvature over the last envelope cycle is the bias measure.
    """
    return -hp.k_tail_yaw * u * u * kappa_mean


def step_dynamics(vs, forces, hp, dt):
    """Advance one tick with semi-implicit Euler (velocities, then pose).

    Quadratic drag opposes surge and heave; linear springs and dampers
    act on pitch and yaw. Buoyancy is exactly neutral. The surface
    clamp stops upward motion at SURFACE_DEPTH_M.
    """
    du = (forces.thrust - hp.c_drag_surge * vs.u * abs(vs.u)) / hp.mass
    dw = (forces.heave_down - hp.c_drag_heave * vs.w * abs(vs.w)) / hp.mass
    dq = (forces.pitch_moment - hp.k_restore_pitch * vs.pitch
          - hp.damping_q * vs.q) / hp.pitch_inertia
    dr = (forces.yaw_moment - hp.damping_r * vs.r) / hp.yaw_inertia

    vs.u += du * dt
    vs.w += dw * dt
    vs.q += dq * dt
    vs.r += dr * dt
    vs.du = du
    vs.dw = dw

    vs.pitch += vs.q * dt
    vs.yaw += vs.r * dt
    cos_pitch = math.cos(vs.pitch)
    vs.x += vs.u * cos_pitch * math.cos(vs.yaw) * dt
    vs.y += vs.u * cos_pitch * math.sin(vs.yaw) * dt
    vs.depth += (vs.w - vs.u * math.sin(vs.pitch)) * dt
    if vs.depth < SURFACE_DEPTH_M:
        vs.depth = SURFACE_DEPTH_M
        vs.w = max(vs.w, 0.0)

    if not (math.isfinite(vs.x) and math.isfinite(vs.y)
            and math.isfinite(vs.depth) and math.isfinite(vs.u)
            and math.isfinite(vs.w) and math.isfinite(vs.q)
            and math.isfinite(vs.r) and math.isfinite(vs.pitch)
            and math.isfinite(vs.yaw)):
        raise SimulationFault("vehicle state became non-finite", vs)
    return vs


def kinetic_energy(vs, hp):
    """Body kinetic energy, J."""
    return 0.5 * (hp.mass * (vs.u * vs.u + vs.w * vs.w)
                  + hp.pitch_inertia * vs.q * vs.q
                  + hp.yaw_inertia * vs.r * vs.r)


def specific_force_g(vs):
    """Body-frame accelerometer truth in g before quantization.

    The sensor reads gravity minus body acceleration: a level, resting
    body shows (0, 0, 1). Pitching the nose up moves gravity onto +x.
    """
    ax = (vs.du + G_ACCEL * math.sin(vs.pitch)) / G_ACCEL
    ay = 0.0
    az = (-vs.dw + G_ACCEL * math.cos(vs.pitch)) / G_ACCEL
    return ax, ay, az


def emit_imu(vs, cfg):
    """Synthesize a raw-count IMU sample for the current state."""
    ax, ay, az = specific_force_g(vs)
    return sensors.ImuSample(
        ax=sensors.g_to_accel_raw(cfg, ax),
        ay=sensors.g_to_accel_raw(cfg, ay),
        az=sensors.g_to_accel_raw(cfg, az),
        gx=sensors.dps_to_gyro_raw(cfg, 0.0),
        gy=sensors.dps_to_gyro_raw(cfg, math.degrees(vs.q)),
        gz=sensors.dps_to_gyro_raw(cfg, math.degrees(vs.r)),
    )
