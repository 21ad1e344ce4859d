"""Chebyshev interpolation helpers used by the 1D and 2D renormalization code.

Everything lives on the reference square [-1,1] (or [-1,1]^2); callers are
responsible for any affine domain changes.  The heavy lifting is delegated to
numpy.polynomial.chebyshev.
"""

import numpy as np
from numpy.polynomial import chebyshev as C


def cheb_nodes(m):
    """m Chebyshev-Gauss nodes on (-1,1), increasing order."""
    k = np.arange(m)
    return np.sort(np.cos(np.pi * (2 * k + 1) / (2 * m)))


def fit1d(func, degree):
    """Interpolate ``func`` on degree+1 Gauss nodes; returns Chebyshev coefficients."""
    x = cheb_nodes(degree + 1)
    return C.chebfit(x, func(x), degree)


def eval1d(coeffs, x):
    return C.chebval(x, coeffs)


def deriv1d(coeffs):
    return C.chebder(coeffs)


def fit2d(func, degx, degy):
    """Tensor interpolation of ``func(x, y)`` at Gauss nodes.

    Returns a (degx+1, degy+1) coefficient matrix for chebval2d conventions
    (first index = x degree).
    """
    xs = cheb_nodes(degx + 1)
    ys = cheb_nodes(degy + 1)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    vals = func(X, Y)
    # fit along x for every y-node column, then along y
    cx = C.chebfit(xs, vals, degx)              # (degx+1, ny)
    cxy = C.chebfit(ys, cx.T, degy)             # (degy+1, degx+1)
    return np.ascontiguousarray(cxy.T)


def eval2d(coeffs, x, y):
    """Evaluate a tensor Chebyshev series at (broadcastable) points x, y."""
    return C.chebval2d(x, y, coeffs)


def eval2d_dx(coeffs, x, y):
    return C.chebval2d(x, y, C.chebder(coeffs, axis=0))


def eval2d_dy(coeffs, x, y):
    return C.chebval2d(x, y, C.chebder(coeffs, axis=1))


def interp_error(coeffs, func, n_probe=121):
    """Sup-norm of (series - func) on a probe grid off the fitting nodes."""
    if coeffs.ndim == 1:
        x = np.linspace(-1.0, 1.0, n_probe)
        return float(np.max(np.abs(C.chebval(x, coeffs) - func(x))))
    x = np.linspace(-1.0, 1.0, n_probe)
    y = np.linspace(-1.0, 1.0, max(7, n_probe // 4))
    X, Y = np.meshgrid(x, y, indexing="ij")
    return float(np.max(np.abs(C.chebval2d(X, Y, coeffs) - func(X, Y))))
