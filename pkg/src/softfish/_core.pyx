# cython: language_level=3
"""Compiled bending kernel.

Same contract as _core_py (see that module's docstring for the math).
Built with -ffp-contract=off; expressions mirror _core_py token for token
so both backends return bit-identical doubles. Keep them in sync.
"""

from libc.math cimport fabs, log

# |kappa*h| below which the series expansion replaces the closed form.
SERIES_KH = 0.02

cdef double _SERIES_KH = 0.02


cdef inline double _gfun(double c1, double c2, double lam):
    return c1 * (lam * lam * lam / 3.0 + 2.0 * log(lam) - 3.0 * lam) + c2 * (
        lam * lam - 1.0 / lam - 3.0 * lam
    )


cdef inline double _wfun(double c1, double c2, double lam):
    return c1 * (lam * lam + 2.0 / lam - 3.0) + c2 * (
        2.0 * lam + 1.0 / (lam * lam) - 3.0
    )


cdef inline double _wpfun(double c1, double c2, double lam):
    return c1 * (2.0 * lam - 2.0 / (lam * lam)) + c2 * (
        2.0 - 2.0 / (lam * lam * lam)
    )


cdef int _check_range(double kh) except -1:
    if fabs(kh) >= 1.0:
        raise ValueError(
            f"curvature out of range: |kappa*half_thickness| = {fabs(kh)} >= 1"
        )
    return 0


cdef double _energy(double c1, double c2, double h, double w,
                    double kappa) except *:
    cdef double kh, e2, a2, a4, a6, a8, lp, lm
    kh = kappa * h
    _check_range(kh)
    if fabs(kh) < _SERIES_KH:
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


cdef double _moment(double c1, double c2, double h, double w,
                    double kappa) except *:
    cdef double kh, e, a2, a4, a6, a8, lp, lm, u
    kh = kappa * h
    _check_range(kh)
    if fabs(kh) < _SERIES_KH:
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


cdef double _stiffness(double c1, double c2, double h, double w,
                       double kappa) except *:
    cdef double kh, e, a2, a4, a6, a8, lp, lm, u
    kh = kappa * h
    _check_range(kh)
    if fabs(kh) < _SERIES_KH:
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


def bend_energy(double c1, double c2, double h, double w, double kappa):
    """Stored energy per unit length of the bent section, J/m."""
    return _energy(c1, c2, h, w, kappa)


def bend_moment(double c1, double c2, double h, double w, double kappa):
    """dU/dkappa, the internal moment resisting curvature, N*m/m."""
    return _moment(c1, c2, h, w, kappa)


def bend_stiffness(double c1, double c2, double h, double w, double kappa):
    """d2U/dkappa2, the tangent bending stiffness, N*m^2/m."""
    return _stiffness(c1, c2, h, w, kappa)


def solve_kappa(double c1, double c2, double h, double w, double load,
                double x0=0.0, double lo=-20.0, double hi=20.0,
                int max_iter=100, double rel_tol=1e-10):
    """Curvature where the internal moment balances the pressure load.

    Safeguarded Newton; same behavior and bit-identical results as the
    pure-Python fallback (see _core_py.solve_kappa).
    """
    cdef double tol, flo, fhi, xl, xh, x, f, fp, xn
    cdef int it
    cdef bint inside
    if load == 0.0:
        return 0.0
    tol = rel_tol * fabs(load)
    flo = _moment(c1, c2, h, w, lo) - load
    fhi = _moment(c1, c2, h, w, hi) - load
    if fabs(flo) <= tol:
        return lo
    if fabs(fhi) <= tol:
        return hi
    if (flo > 0.0) == (fhi > 0.0):
        raise ArithmeticError(
            f"no sign change in curvature bracket [{lo}, {hi}]", lo, hi, flo, fhi
        )
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
    for it in range(max_iter):
        f = _moment(c1, c2, h, w, x) - load
        if fabs(f) <= tol:
            return x
        if f < 0.0:
            xl = x
        else:
            xh = x
        fp = _stiffness(c1, c2, h, w, x)
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
