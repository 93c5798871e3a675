"""Reduced-order model of the dual-cavity soft tail.

A single uniform curvature kappa describes the bent section
(pseudo-rigid-body reduction). Material fibers at offset y from the
inextensible constraining layer stretch by lam = 1 + kappa*y and store
incompressible uniaxial Mooney-Rivlin energy; the cross-section integral
gives U(kappa) in closed form (kernel backends). The static curvature
balances dU/dkappa against the differential cavity pressure load

    load = calibration_gain * (p_left - p_right) * cavity_area * moment_arm

with calibration_gain fitted once so the full inflate/vacuum load
(44500, -8000) Pa reproduces a 40 mm tip deflection magnitude, then
frozen.
"""

import math
from dataclasses import dataclass, replace

from . import kernel

# Cavity pressure envelope, Pa: converged inflate/vacuum saturation limits.
P_INFLATE_MAX = 44500.0
P_VACUUM_MIN = -8000.0

# Drive waveform 2*pi/16 rad/s: one tail cycle per 16 s in the slow
# bench waveform used for quasi-static checks.
WAVE_OMEGA = 0.125 * math.pi

# Curvature search bracket for the static solve, 1/m.
KAPPA_BRACKET = 20.0
SOLVE_MAX_ITER = 100
SOLVE_REL_TOL = 1e-10

# Gain fitted to the 40 mm tip anchor with the Ecoflex fit; see
# calibrate_gain.
CALIBRATION_GAIN = 1.7464690812979988

# Flat and full-scale flex sensor resistances, Ohm.
FLEX_R_FLAT = 10e3
FLEX_R_SPAN = 100e3


class NonConvergenceError(ArithmeticError):
    """Static curvature solve failed; carries the searched bracket."""

    def __init__(self, msg, bracket):
        super().__init__(msg)
        self.bracket = bracket


@dataclass
class ActuatorGeometry:
    length: float = 0.15           # m, bent section
    half_thickness: float = 0.015  # m, constraining layer to outer face
    width: float = 0.04            # m
    cavity_area: float = 3e-4      # m^2, loaded internal face
    moment_arm: float = 7.5e-3     # m, pressure centroid offset
    n_segments: int = 1            # reserved for curvature profiles
    calibration_gain: float = CALIBRATION_GAIN

    def __post_init__(self):
        for name in ("length", "half_thickness", "width", "cavity_area",
                     "moment_arm", "calibration_gain"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be > 0")
        if self.n_segments < 1:
            raise ValueError("n_segments must be >= 1")


@dataclass
class ActuatorState:
    p_left: float = 0.0       # Pa
    p_right: float = 0.0      # Pa
    curvature: float = 0.0    # 1/m
    tip_deflection: float = 0.0  # m


@dataclass
class FlexPair:
    """Back-to-back flex sensor pair on the constraining layer."""

    kappa_max: float          # 1/m, full-scale curvature
    r_a: float = FLEX_R_FLAT  # Ohm, increases for positive curvature
    r_b: float = FLEX_R_FLAT  # Ohm, mounted reversed


def cavity_pressures(frac):
    """Left/right cavity pressures at drive fraction frac in [-1, 1].

    Positive drive inflates the left cavity toward +44500 Pa while the
    right is evacuated toward -8000 Pa; negative drive mirrors the pair.
    """
    if frac >= 0.0:
        return (P_INFLATE_MAX * frac, P_VACUUM_MIN * frac)
    return (-P_VACUUM_MIN * frac, -P_INFLATE_MAX * frac)


def pressure_waveform(t):
    """Bench pressure pair at time t, period 16 s."""
    if t < 0:
        raise ValueError("t must be >= 0")
    return cavity_pressures(math.sin(WAVE_OMEGA * t))


def bending_energy_per_length(geom, mat, kappa):
    """U(kappa), J/m. Even in kappa; zero at zero curvature."""
    return kernel.bend_energy(mat.c1, mat.c2, geom.half_thickness,
                              geom.width, kappa)


def bending_moment_per_length(geom, mat, kappa):
    """dU/dkappa, N*m/m."""
    return kernel.bend_moment(mat.c1, mat.c2, geom.half_thickness,
                              geom.width, kappa)


def bending_stiffness_per_length(geom, mat, kappa):
    """d2U/dkappa2, N*m^2/m."""
    return kernel.bend_stiffness(mat.c1, mat.c2, geom.half_thickness,
                                 geom.width, kappa)


def pressure_load(geom, p_left, p_right):
    """Generalized load conjugate to curvature, N*m/m."""
    return (geom.calibration_gain * (p_left - p_right)
            * geom.cavity_area * geom.moment_arm)


def solve_curvature(geom, mat, p_left, p_right, x0=0.0):
    """Static curvature balancing the cavity pressure difference, 1/m.

    Safeguarded Newton over the bracket [-20, 20] 1/m, residual within
    1e-10 of the load term; x0 warm-starts the iteration. Antisymmetric
    under swapping the pressure pair or negating both pressures.
    """
    load = pressure_load(geom, p_left, p_right)
    try:
        return kernel.solve_kappa(
            mat.c1, mat.c2, geom.half_thickness, geom.width, load,
            x0, -KAPPA_BRACKET, KAPPA_BRACKET, SOLVE_MAX_ITER, SOLVE_REL_TOL)
    except ArithmeticError as err:
        raise NonConvergenceError(
            str(err), bracket=(-KAPPA_BRACKET, KAPPA_BRACKET)) from None


def tip_deflection(kappa, length):
    """Lateral tip deflection of a constant-curvature arc, m."""
    if length <= 0:
        raise ValueError("length must be > 0")
    kl = kappa * length
    if math.fabs(kl) < 1e-6:
        return kappa * length * length / 2.0
    return (1.0 - math.cos(kl)) / kappa


def flex_resistances(pair, kappa):
    """Resistances of the reversed sensor pair at curvature kappa, Ohm.

    Linear in curvature up to the full-scale clamp: the vendor gives no
    resistance-curvature law beyond the 10k flat / 110k bent endpoints.
    """
    fa = min(max(kappa / pair.kappa_max, 0.0), 1.0)
    fb = min(max(-kappa / pair.kappa_max, 0.0), 1.0)
    return (FLEX_R_FLAT + FLEX_R_SPAN * fa, FLEX_R_FLAT + FLEX_R_SPAN * fb)


def curvature_from_resistances(pair, r_a, r_b):
    """Invert the linear sensor model inside [-kappa_max, +kappa_max]."""
    return pair.kappa_max * (r_a - r_b) / FLEX_R_SPAN


def calibrate_gain(geom, mat, target_tip=0.040,
                   p_left=P_INFLATE_MAX, p_right=P_VACUUM_MIN):
    """Fit calibration_gain so the anchor load hits the target tip magnitude.

    Bisection over gain; |tip(kappa*(gain))| is monotone in gain while
    the solve stays inside its bracket. Returns the fitted gain.
    """
    lo, hi = 1e-4, 10.0

    def tip_err(gain):
        g = replace(geom, calibration_gain=gain)
        try:
            kap = solve_curvature(g, mat, p_left, p_right)
        except NonConvergenceError:
            # load beyond the reachable moment range reads as an
            # arbitrarily large deflection for bracketing purposes
            return math.inf
        return abs(tip_deflection(kap, geom.length)) - target_tip

    f_lo = tip_err(lo)
    f_hi = tip_err(hi)
    if (f_lo > 0) == (f_hi > 0):
        raise ValueError(
            f"target tip {target_tip} m not bracketed by gains [{lo}, {hi}]")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        f_mid = tip_err(mid)
        if (f_mid > 0) == (f_hi > 0):
            hi, f_hi = mid, f_mid
        else:
            lo, f_lo = mid, f_mid
    gain = 0.5 * (lo + hi)
    err = tip_err(gain)
    if not abs(err) < 1e-6:
        raise ValueError(
            f"target tip {target_tip} m not attainable; bisection stalled "
            f"at gain {gain} with tip error {err}")
    return gain
