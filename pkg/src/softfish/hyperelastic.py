"""Two-parameter Mooney-Rivlin material core.

Strain energy density W = c1*(I1 - 3) + c2*(I2 - 3) over the invariants
of the right Cauchy-Green tensor C, with the closed-form responses used
to cross-check the tail bending solver:

    incompressible uniaxial path   I1 = lam^2 + 2/lam,  I2 = 2*lam + 1/lam^2
    uniaxial Cauchy stress         sigma = 2*(lam^2 - 1/lam)*(c1 + c2/lam)
    small-strain shear modulus     mu = 2*(c1 + c2)

All functions are pure; material and deformation values are immutable.
"""

import warnings
from dataclasses import dataclass

import numpy as np

# Smallest-eigenvalue tolerance when validating a deformation tensor.
SPD_TOL = 1e-9


class InvalidDeformationError(ValueError):
    """Deformation tensor is not symmetric positive-definite."""


@dataclass(frozen=True)
class MaterialParams:
    """Mooney-Rivlin constants in Pa.

    No sign restriction: the silicone fit used for the deflection
    calibration anchor has c1 + c2 < 0, i.e. a negative small-strain
    modulus. See small_strain_shear_modulus.
    """

    c1: float
    c2: float


# Ecoflex 00-30 fit; only sound where the deflection anchor applies.
ECOFLEX_30 = MaterialParams(c1=48e3, c2=-152e3)
# Well-behaved pair used for dynamics runs.
DEMO_MATERIAL = MaterialParams(c1=60e3, c2=2e3)


@dataclass(frozen=True)
class Invariants:
    i1: float
    i2: float


def invariants_from_cauchy_green(c_tensor):
    """First and second invariants of a right Cauchy-Green tensor.

    I1 = tr(C), I2 = (tr(C)^2 - tr(C^2)) / 2.  The input must be a
    symmetric positive-definite 3x3 matrix; for det(C) = 1 both
    invariants are >= 3 with equality only at the identity.
    """
    c = np.asarray(c_tensor, dtype=float)
    if c.shape != (3, 3):
        raise InvalidDeformationError(f"expected 3x3 tensor, got {c.shape}")
    if not np.all(np.isfinite(c)):
        raise InvalidDeformationError("non-finite tensor entries")
    scale = max(1.0, float(np.abs(c).max()))
    if float(np.abs(c - c.T).max()) > SPD_TOL * scale:
        raise InvalidDeformationError("tensor is not symmetric")
    eigmin = float(np.linalg.eigvalsh(c).min())
    if eigmin < SPD_TOL:
        raise InvalidDeformationError(
            f"tensor is not positive-definite (min eigenvalue {eigmin:.3e})"
        )
    tr = float(np.trace(c))
    tr2 = float(np.trace(c @ c))
    return Invariants(i1=tr, i2=0.5 * (tr * tr - tr2))


def strain_energy(params, inv):
    """Strain energy density in Pa: c1*(I1 - 3) + c2*(I2 - 3)."""
    return params.c1 * (inv.i1 - 3.0) + params.c2 * (inv.i2 - 3.0)


def uniaxial_invariants(lam):
    """Invariants along the incompressible uniaxial path (lam, 1/sqrt(lam), 1/sqrt(lam))."""
    if lam <= 0:
        raise ValueError(f"stretch ratio must be > 0, got {lam}")
    return Invariants(i1=lam * lam + 2.0 / lam, i2=2.0 * lam + 1.0 / (lam * lam))


def uniaxial_strain_energy(params, lam):
    """Energy density at uniaxial stretch lam on the incompressible path."""
    return strain_energy(params, uniaxial_invariants(lam))


def uniaxial_cauchy_stress(params, lam):
    """Cauchy stress for incompressible uniaxial stretch, Pa.

    sigma = lam * dW/dlam along the path, which reduces to
    2*(lam^2 - 1/lam)*(c1 + c2/lam); zero at lam = 1.
    """
    if lam <= 0:
        raise ValueError(f"stretch ratio must be > 0, got {lam}")
    return 2.0 * (lam * lam - 1.0 / lam) * (params.c1 + params.c2 / lam)


def small_strain_shear_modulus(params):
    """Consistency diagnostic mu = 2*(c1 + c2), Pa.

    Warns when mu <= 0: the material has no stable small-strain response
    and is accepted only because the source data uses such a fit.
    """
    mu = 2.0 * (params.c1 + params.c2)
    if mu <= 0:
        warnings.warn(
            f"non-physical material: small-strain shear modulus {mu:.4g} Pa <= 0",
            stacklevel=2,
        )
    return mu


def simple_shear_tensor(gamma):
    """Right Cauchy-Green tensor for simple shear of amount gamma."""
    return np.array(
        [
            [1.0, gamma, 0.0],
            [gamma, 1.0 + gamma * gamma, 0.0],
            [0.0, 0.0, 1.0],
        ]
    )
