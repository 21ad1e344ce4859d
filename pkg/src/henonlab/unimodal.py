"""One-dimensional period-doubling renormalization.

The renormalization of a unimodal map f on [-1,1] is the affine rescaling of
f^2 restricted to the interval spanned by f^2(c) and f^4(c), where c is the
critical point.  This module provides the operator itself, a Newton solver
for its fixed point f_*, the nested renormalization cycles of f_*, the
proper scaling function read off those cycles, and distortion estimates of
long compositions on cycle intervals.

Conventions: maps are Chebyshev series on [-1,1]; fixed-point candidates are
normalized so that f(c) = 1 and f(f(c)) = -1; the rescaling to [-1,1] is
orientation reversing (it sends f^2(c) to +1), which preserves that
normalization.
"""

import json
import os
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import chebyshev as C

from . import spectral
from .errors import (
    CriticalPointInside,
    DepthOverflow,
    IndexMismatch,
    NoConvergence,
    NotRenormalizable,
    ProjectionLoss,
    SingularJacobian,
)

DEFAULT_DEGREE = 40
DEPTH_FLOOR = 1e-13  # interval widths below this overflow double precision

_GOLDEN_PATH = os.path.join(os.path.dirname(__file__), "data", "fstar_degree40.json")


class UnimodalMap:
    """Analytic map of [-1,1] stored as a Chebyshev series with one interior max."""

    def __init__(self, coeffs):
        self.coeffs = np.asarray(coeffs, dtype=float)
        self._dcoeffs = C.chebder(self.coeffs)
        self._d2coeffs = C.chebder(self._dcoeffs)
        self._crit = None

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @classmethod
    def from_callable(cls, func, degree=DEFAULT_DEGREE):
        return cls(spectral.fit1d(func, degree))

    def __call__(self, x):
        return C.chebval(x, self.coeffs)

    def deriv(self, x):
        return C.chebval(x, self._dcoeffs)

    def deriv2(self, x):
        return C.chebval(x, self._d2coeffs)

    def iterate(self, x, k):
        for _ in range(k):
            x = self(x)
        return x

    @property
    def critical_point(self):
        """Interior critical point with f'' < 0 (the maximum)."""
        if self._crit is None:
            roots = C.chebroots(self._dcoeffs)
            real = roots[np.abs(roots.imag) < 1e-9].real
            cand = [r for r in real if -1.0 + 1e-12 < r < 1.0 - 1e-12 and self.deriv2(r) < 0]
            if not cand:
                raise NotRenormalizable("map has no interior non-degenerate maximum")
            self._crit = max(cand, key=lambda r: float(self(r)))
        return self._crit

    def validate(self, tol=1e-9):
        """Check the structural invariants; raises ValueError on failure."""
        c = self.critical_point
        if not self.deriv2(c) < 0:
            raise ValueError("critical point is degenerate")
        x = np.linspace(-1.0, 1.0, 513)
        v = self(x)
        if v.max() > 1.0 + tol or v.min() < -1.0 - tol:
            raise ValueError("map leaves [-1,1] on the evaluation grid")
        return True

    def is_normalized(self, tol=1e-9):
        c = self.critical_point
        return abs(self(c) - 1.0) <= tol and abs(self(self(c)) + 1.0) <= tol

    def to_dict(self):
        return {
            "basis": "chebyshev",
            "degree": self.degree,
            "coefficients": [float(a) for a in self.coeffs],
        }

    @classmethod
    def from_dict(cls, d):
        if d.get("basis") != "chebyshev":
            raise ValueError("unknown basis %r" % d.get("basis"))
        return cls(np.asarray(d["coefficients"], dtype=float))


def renorm_interval(f):
    """The interval [f^2(c), f^4(c)] together with the critical orbit points.

    Raises NotRenormalizable when the defining conditions fail: the interval
    must contain c, f^2 restricted to it must be unimodal, and it must be
    disjoint from its f-image.
    """
    c = f.critical_point
    v1 = float(f(c))
    e1 = float(f(v1))            # f^2(c)
    e2 = float(f(f(e1)))         # f^4(c)
    if not (e1 < c < e2):
        raise NotRenormalizable("interval [f^2(c), f^4(c)] does not straddle c")
    grid = np.linspace(e1, e2, 257)
    img = f(grid)
    jv_lo, jv_hi = float(img.min()), float(img.max())
    # disjointness J_c cap f(J_c) = empty
    if not (jv_lo > e2 or jv_hi < e1):
        raise NotRenormalizable("renormalization interval meets its image")
    # f^2 unimodal on J_c: f must be monotone on f(J_c)
    dv = f.deriv(np.linspace(jv_lo, jv_hi, 257))
    if dv.max() > 0 and dv.min() < 0:
        raise NotRenormalizable("f^2 is not unimodal on the renormalization interval")
    return e1, e2, v1


def renormalize_unimodal(f, degree=None, proj_tol=1e-8):
    """Affine rescaling of f^2 on [f^2(c), f^4(c)] back to [-1,1].

    The rescaling is orientation reversing (sends f^2(c) to +1), so the
    normalization f(c)=1, f^2(c)=-1 is preserved.
    """
    e1, e2, _ = renorm_interval(f)
    degree = f.degree if degree is None else degree

    def lam(z):
        return (e1 + e2 - 2.0 * z) / (e2 - e1)

    def lam_inv(x):
        return (e1 + e2 - x * (e2 - e1)) / 2.0

    def rf(x):
        return lam(f(f(lam_inv(x))))

    coeffs = spectral.fit1d(rf, degree)
    err = spectral.interp_error(coeffs, rf)
    if err > proj_tol:
        raise ProjectionLoss("projection residual %.3e exceeds tolerance %.3e"
                             % (err, proj_tol))
    return UnimodalMap(coeffs)


@dataclass
class RenormCycle:
    """The 2^n pairwise disjoint intervals I_j(n) = [f^j(v), f^(j+2^n)(v)] in orbit order."""

    level: int
    endpoints: np.ndarray  # shape (2^n, 2), raw orbit endpoints (not sorted)

    @property
    def intervals(self):
        return np.sort(self.endpoints, axis=1)

    @property
    def widths(self):
        iv = self.intervals
        return iv[:, 1] - iv[:, 0]

    def interval(self, j):
        return self.intervals[j % len(self.endpoints)]


def compute_cycle(f, n):
    """Renormalization cycle at level n for an (at least) n-times renormalizable map."""
    c = f.critical_point
    v = float(f(c))
    period = 1 << n
    orbit = np.empty(2 * period)
    x = v
    for j in range(2 * period):
        orbit[j] = x
        x = float(f(x))
    endpoints = np.column_stack([orbit[:period], orbit[period:]])
    width = np.abs(endpoints[:, 1] - endpoints[:, 0])
    if width.min() < DEPTH_FLOOR:
        raise DepthOverflow("cycle interval width %.2e below %.1e at level %d"
                            % (width.min(), DEPTH_FLOOR, n))
    return RenormCycle(level=n, endpoints=endpoints)


def cycles_disjoint(cycle):
    iv = cycle.intervals
    order = np.argsort(iv[:, 0])
    s = iv[order]
    return bool(np.all(s[1:, 0] > s[:-1, 1]))


def proper_scaling(cycle_pair, i):
    """1D proper scaling sigma* = |I_{i-1}(n+1)| / |I_{i_hat-1}(n)|.

    ``cycle_pair`` is (cycle at level n, cycle at level n+1) of the same map;
    ``i`` indexes the child interval at level n+1 in orbit order.  The i-1
    shift reflects that vertical measurements of Henon-like pieces lag the
    horizontal ones by one iterate.
    """
    parent, child = cycle_pair
    if child.level != parent.level + 1:
        raise IndexMismatch("expected consecutive levels, got %d and %d"
                            % (parent.level, child.level))
    n = parent.level
    i = int(i) % (1 << (n + 1))
    i_hat = i % (1 << n)
    ci = child.interval(i)
    pi = parent.interval(i_hat)
    slack = 1e-9 * max(pi[1] - pi[0], 1e-300)
    if not (pi[0] - slack <= ci[0] and ci[1] <= pi[1] + slack):
        raise IndexMismatch("child interval %d not nested in parent %d" % (i, i_hat))
    num = child.widths[(i - 1) % (1 << (n + 1))]
    den = parent.widths[(i_hat - 1) % (1 << n)]
    return float(num / den)


def distortion(f, interval, iterates, grid_points=257):
    """Dist(f^t | interval) = max over grid pairs of log Df^t(y)/Df^t(x).

    Requires every intermediate image to stay clear of critical points of f
    (the derivative must keep one sign on each image grid).
    """
    lo, hi = float(min(interval)), float(max(interval))
    x = np.linspace(lo, hi, grid_points)
    acc = np.zeros_like(x)
    for s in range(iterates):
        d = f.deriv(x)
        if d.max() > 0 and d.min() < 0 or np.any(d == 0.0):
            raise CriticalPointInside("derivative changes sign at iterate %d" % s)
        acc += np.log(np.abs(d))
        x = f(x)
    return float(acc.max() - acc.min())


# ---------------------------------------------------------------------------
# fixed-point solver
# ---------------------------------------------------------------------------

@dataclass
class FixedPointSolution:
    f_star: UnimodalMap
    sigma: float
    residual: float
    critical_point: float
    even_coeffs: np.ndarray  # Chebyshev-in-(x-c)^2 coefficients (solver basis)


def _even_eval(a, c, x):
    """Evaluate the even representation sum a_i T_i(u), u = 2(x-c)^2/wmax - 1."""
    wmax = (1.0 + abs(c)) ** 2
    u = 2.0 * (x - c) ** 2 / wmax - 1.0
    return C.chebval(u, a)


def _solver_residual(theta, n_colloc):
    a, c = theta[:-1], theta[-1]
    wmax = (1.0 + abs(c)) ** 2

    def f(x):
        return _even_eval(a, c, x)

    v1 = f(c)
    e1 = f(v1)
    e2 = f(f(e1))
    span = e2 - e1
    if abs(span) < 1e-14:
        return np.full(len(theta), 1e6)
    u = np.cos(np.pi * (2 * np.arange(n_colloc) + 1) / (2 * n_colloc))
    xj = c + np.sqrt((u + 1.0) * wmax / 2.0)
    z = (e1 + e2 - xj * span) / 2.0          # Lambda^{-1}(x_j)
    rfx = (e1 + e2 - 2.0 * f(f(z))) / span   # Lambda(f^2(z))
    res = np.empty(n_colloc + 2)
    res[:n_colloc] = f(xj) - rfx
    res[n_colloc] = v1 - 1.0
    res[n_colloc + 1] = f(1.0) + 1.0
    return res


def solve_fixed_point(initial=None, degree=DEFAULT_DEGREE, tol=1e-12,
                      max_iter=60, seed_c=-0.43):
    """Newton solve of Rf = f in the even-polynomial basis about the critical point.

    ``initial`` may be a UnimodalMap used as seed; otherwise a normalized
    quadratic seed is used.  Newton steps are damped by 0.5 for the first
    three iterations.  Returns a FixedPointSolution whose f_star is re-fit as
    a plain degree-``degree`` Chebyshev series.
    """
    m = degree // 2            # w-Chebyshev degree
    n_colloc = m               # collocation count; +2 normalization rows = unknowns
    if initial is not None:
        c0 = float(initial.critical_point)
        wmax = (1.0 + abs(c0)) ** 2
        u = spectral.cheb_nodes(m + 1)
        xj = c0 + np.sqrt((u + 1.0) * wmax / 2.0)
        a0 = C.chebfit(u, initial(xj), m)
    else:
        c0 = seed_c
        a0 = np.zeros(m + 1)
        a0[1] = -1.0
    theta = np.append(a0, c0)

    res = _solver_residual(theta, n_colloc)
    for it in range(max_iter):
        nrm = np.max(np.abs(res))
        if nrm <= tol:
            break
        jac = np.empty((len(theta), len(theta)))
        for k in range(len(theta)):
            h = 1e-7 * max(1.0, abs(theta[k]))
            tp = theta.copy()
            tp[k] += h
            jac[:, k] = (_solver_residual(tp, n_colloc) - res) / h
        try:
            step = np.linalg.solve(jac, res)
        except np.linalg.LinAlgError as exc:
            raise SingularJacobian(str(exc)) from exc
        if not np.all(np.isfinite(step)):
            raise SingularJacobian("non-finite Newton step")
        theta = theta - (0.5 if it < 3 else 1.0) * step
        res = _solver_residual(theta, n_colloc)
    else:
        raise NoConvergence("residual %.3e after %d iterations" % (np.max(np.abs(res)), max_iter))

    a, c = theta[:-1], float(theta[-1])
    f_star = UnimodalMap.from_callable(lambda x: _even_eval(a, c, x), degree)
    e1 = float(_even_eval(a, c, _even_eval(a, c, c)))
    e2 = float(_even_eval(a, c, _even_eval(a, c, e1)))
    sigma = abs(e2 - e1) / 2.0
    # independent residual report: sup |Rf - f| on a fine off-node grid
    rf = renormalize_unimodal(f_star)
    x = np.linspace(-1.0, 1.0, 401)
    residual = float(np.max(np.abs(rf(x) - f_star(x))))
    return FixedPointSolution(f_star=f_star, sigma=sigma, residual=residual,
                              critical_point=c, even_coeffs=a.copy())


def solution_to_json(sol):
    return {
        "basis": "chebyshev",
        "degree": sol.f_star.degree,
        "coefficients": [float(v) for v in sol.f_star.coeffs],
        "sigma": float(sol.sigma),
        "residual": float(sol.residual),
    }


def save_fixed_point(sol, path=_GOLDEN_PATH):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w") as fh:
        json.dump(solution_to_json(sol), fh, indent=1)
        fh.write("\n")


_CACHED = None


def load_fixed_point(path=_GOLDEN_PATH):
    """Golden fixed point: returns (UnimodalMap, sigma, residual)."""
    global _CACHED
    if _CACHED is None or path != _GOLDEN_PATH:
        with open(path) as fh:
            d = json.load(fh)
        out = (UnimodalMap.from_dict(d), float(d["sigma"]), float(d["residual"]))
        if path != _GOLDEN_PATH:
            return out
        _CACHED = out
    return _CACHED
