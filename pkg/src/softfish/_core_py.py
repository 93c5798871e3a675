"""Pure-Python bending kernel, the fallback for the compiled core.

Energy per unit length of the bent tail section, its first two curvature
derivatives, and the safeguarded Newton curvature solve. Fiber stretch is
lam = 1 + kappa*y across the half-thickness, each fiber carrying the
incompressible uniaxial Mooney-Rivlin energy; integrating analytically
over the section gives closed forms, with a Taylor series below
|kappa*h| = 0.02 where the closed form loses digits to cancellation.

Every expression here mirrors _core.pyx token for token so the two
backends return bit-identical doubles; keep them in sync.
"""

from math import fabs, log

# |kappa*h| below which the series expansion replaces the closed form.
SERIES_KH = 0.02


def _gfun(c1, c2, lam):
    # antiderivative of the fiber energy density over stretch
    return c1 * (lam * lam * lam / 3.0 + 2.0 * log(lam) - 3.0 * lam) + c2 * (
        lam * lam - 1.0 / lam - 3.0 * lam
    )


def _wfun(c1, c2, lam):
    # fiber energy density at stretch lam, incompressible uniaxial path
    return c1 * (lam * lam + 2.0 / lam - 3.0) + c2 * (
        2.0 * lam + 1.0 / (lam * lam) - 3.0
    )


def _wpfun(c1, c2, lam):
    # d(energy density)/d(stretch)
    return c1 * (2.0 * lam - 2.0 / (lam * lam)) + c2 * (
        2.0 - 2.0 / (lam * lam * lam)
    )


def _check_range(kh):
    if fabs(kh) >= 1.0:
        raise ValueError(
            f"curvature out of range: |kappa*half_thickness| = {fabs(kh)} >= 1"
        )


def bend_energy(c1, c2, h, w, kappa):
    """Stored energy per unit length of the bent section, J/m."""
    kh = kappa * h
    _check_range(kh)
    if fabs(kh) < SERIES_KH:
        e2 = kh * kh
        a2 = 3.0 * (c1 + c2)
        a4 = 2.0 * c1 + 5.0 * c2
        a6 = 2.0 * c1 + 7.0 * c2
        a8 = 2.0 * c1 + 9.0 * c2
        return 2.0 * w * h * (
            a2 * e2 / 3.0
            + a4 * e2 * e2 / 5.0
            + a6 * e2 * e2 * e2 / 7.0
            + a8 * e2 * e2 * e2 * e2 / 9.0
        )
    lp = 1.0 + kh
    lm = 1.0 - kh
    return (w / kappa) * (_gfun(c1, c2, lp) - _gfun(c1, c2, lm))


def bend_moment(c1, c2, h, w, kappa):
    """dU/dkappa, the internal moment resisting curvature, N*m/m."""
    kh = kappa * h
    _check_range(kh)
    if fabs(kh) < SERIES_KH:
        e = kh
        a2 = 3.0 * (c1 + c2)
        a4 = 2.0 * c1 + 5.0 * c2
        a6 = 2.0 * c1 + 7.0 * c2
        a8 = 2.0 * c1 + 9.0 * c2
        return 2.0 * w * h * h * (
            2.0 * a2 * e / 3.0
            + 4.0 * a4 * e * e * e / 5.0
            + 6.0 * a6 * e * e * e * e * e / 7.0
            + 8.0 * a8 * e * e * e * e * e * e * e / 9.0
        )
    lp = 1.0 + kh
    lm = 1.0 - kh
    u = (w / kappa) * (_gfun(c1, c2, lp) - _gfun(c1, c2, lm))
    return (w * h / kappa) * (_wfun(c1, c2, lp) + _wfun(c1, c2, lm)) - u / kappa


def bend_stiffness(c1, c2, h, w, kappa):
    """d2U/dkappa2, the tangent bending stiffness, N*m^2/m."""
    kh = kappa * h
    _check_range(kh)
    if fabs(kh) < SERIES_KH:
        e = kh
        a2 = 3.0 * (c1 + c2)
        a4 = 2.0 * c1 + 5.0 * c2
        a6 = 2.0 * c1 + 7.0 * c2
        a8 = 2.0 * c1 + 9.0 * c2
        return 2.0 * w * h * h * h * (
            2.0 * a2 / 3.0
            + 12.0 * a4 * e * e / 5.0
            + 30.0 * a6 * e * e * e * e / 7.0
            + 56.0 * a8 * e * e * e * e * e * e / 9.0
        )
    lp = 1.0 + kh
    lm = 1.0 - kh
    u = (w / kappa) * (_gfun(c1, c2, lp) - _gfun(c1, c2, lm))
    return (
        (w * h * h / kappa) * (_wpfun(c1, c2, lp) - _wpfun(c1, c2, lm))
        - (2.0 * w * h / (kappa * kappa)) * (_wfun(c1, c2, lp) + _wfun(c1, c2, lm))
        + 2.0 * u / (kappa * kappa)
    )


def solve_kappa(c1, c2, h, w, load, x0=0.0, lo=-20.0, hi=20.0, max_iter=100,
                rel_tol=1e-10):
    """Curvature where the internal moment balances the pressure load.

    Newton iteration safeguarded by a maintained bracket: any step that
    leaves the bracket, or a zero derivative, falls back to bisection.
    The residual tolerance is relative to the load. Raises
    ArithmeticError(message, lo, hi, f_lo, f_hi) when the bracket holds
    no sign change or the iteration budget runs out.
    """
    if load == 0.0:
        return 0.0
    tol = rel_tol * fabs(load)
    flo = bend_moment(c1, c2, h, w, lo) - load
    fhi = bend_moment(c1, c2, h, w, hi) - load
    if fabs(flo) <= tol:
        return lo
    if fabs(fhi) <= tol:
        return hi
    if (flo > 0.0) == (fhi > 0.0):
        raise ArithmeticError(
            f"no sign change in curvature bracket [{lo}, {hi}]", lo, hi, flo, fhi
        )
    # orient the bracket so f(xl) < 0 < f(xh)
    if flo < 0.0:
        xl = lo
        xh = hi
    else:
        xl = hi
        xh = lo
    if lo < x0 and x0 < hi:
        x = x0
    else:
        x = 0.5 * (lo + hi)
    for _ in range(max_iter):
        f = bend_moment(c1, c2, h, w, x) - load
        if fabs(f) <= tol:
            return x
        if f < 0.0:
            xl = x
        else:
            xh = x
        fp = bend_stiffness(c1, c2, h, w, x)
        if fp != 0.0:
            xn = x - f / fp
        else:
            xn = 0.5 * (xl + xh)
        if xl < xh:
            inside = xl < xn and xn < xh
        else:
            inside = xh < xn and xn < xl
        if not inside:
            xn = 0.5 * (xl + xh)
        x = xn
    raise ArithmeticError(
        f"curvature solve did not converge in {max_iter} iterations", lo, hi,
        flo, fhi
    )
