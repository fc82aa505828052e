"""Self-contained numerical kernel.

Complex error function, adaptive quadrature (finite, infinite and
regulated-oscillatory 1D integrals), principal inverse square root of 2x2
matrices, complex Newton refinement, and argument-principle zero counting
on rectangular contours.  Everything here is pure and reentrant.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.integrate
import scipy.special

from .errors import (
    BranchError,
    ContourError,
    DomainError,
    NoConvergenceError,
    QuadratureError,
)

__all__ = [
    "ComplexRect",
    "QuadratureSpec",
    "erf_complex",
    "integrate_1d",
    "integrate_oscillatory",
    "matrix_inv_sqrt",
    "count_zeros",
    "refine_root",
]


@dataclass(frozen=True)
class ComplexRect:
    """Axis-aligned rectangle in the complex k-plane."""

    re_min: float
    re_max: float
    im_min: float
    im_max: float

    def __post_init__(self):
        if not (self.re_min < self.re_max and self.im_min < self.im_max):
            raise DomainError("degenerate rectangle: need re_min < re_max and im_min < im_max")

    @property
    def corners(self):
        return (
            complex(self.re_min, self.im_min),
            complex(self.re_max, self.im_min),
            complex(self.re_max, self.im_max),
            complex(self.re_min, self.im_max),
        )

    def split(self):
        """Halve along the longer side; counts must add over the parts."""
        if (self.re_max - self.re_min) >= (self.im_max - self.im_min):
            mid = 0.5 * (self.re_min + self.re_max)
            return (
                ComplexRect(self.re_min, mid, self.im_min, self.im_max),
                ComplexRect(mid, self.re_max, self.im_min, self.im_max),
            )
        mid = 0.5 * (self.im_min + self.im_max)
        return (
            ComplexRect(self.re_min, self.re_max, self.im_min, mid),
            ComplexRect(self.re_min, self.re_max, mid, self.im_max),
        )

    def contains(self, k: complex, margin: float = 0.0) -> bool:
        return (
            self.re_min + margin <= k.real <= self.re_max - margin
            and self.im_min + margin <= k.imag <= self.im_max - margin
        )


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and budget for the quadrature routines.

    ``oscillatory_regulator`` is the Gaussian damping rate eps used for
    conditionally convergent k-integrals: the integrand is multiplied by
    exp(-eps*k^2) and the limit eps -> 0 is taken by Richardson
    extrapolation over {4 eps, 2 eps, eps}.
    """

    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_subdivisions: int = 400
    oscillatory_regulator: float = 0.01

    def __post_init__(self):
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise DomainError("tolerances must be positive")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be a positive integer")
        if self.oscillatory_regulator < 0:
            raise DomainError("oscillatory_regulator must be nonnegative")


DEFAULT_SPEC = QuadratureSpec()

_ERF_GUARD = 1e6


def erf_complex(w):
    """Analytic continuation of erf; relative error <= 1e-12 for |w| <= 10.

    Uses the Faddeeva-function route (scipy's erf handles complex input via
    the Faddeeva package).  Accepts scalars or arrays.
    """
    w = np.asarray(w, dtype=complex)
    if np.any(np.abs(w) >= _ERF_GUARD):
        raise DomainError("erf argument beyond overflow guard |w| < 1e6")
    out = scipy.special.erf(w)
    if w.ndim == 0:
        return complex(out)
    return out


def integrate_1d(f, lo, hi, spec: QuadratureSpec = DEFAULT_SPEC, points=None):
    """Adaptive quadrature of a complex-valued integrand on (lo, hi).

    ``points`` lists interior locations of integrable singularities or
    discontinuities declared by the caller.  Infinite endpoints are
    supported (mapped internally by QUADPACK); ``points`` is honoured only
    on finite intervals, as in QUADPACK.
    """
    finite = np.isfinite(lo) and np.isfinite(hi)
    kwargs = dict(
        epsabs=spec.abs_tol,
        epsrel=spec.rel_tol,
        limit=spec.max_subdivisions,
        complex_func=True,
    )
    if points is not None and finite:
        pts = sorted(p for p in points if lo < p < hi)
        if pts:
            kwargs["points"] = pts
    with np.errstate(all="ignore"):
        val, err = scipy.integrate.quad(f, lo, hi, **kwargs)
    bound = abs(err)
    if bound > max(spec.abs_tol, spec.rel_tol * abs(val)) * 50:
        raise QuadratureError(
            f"quadrature error bound {bound:.3e} exceeds tolerance for value {val!r}",
            estimate=val,
            error_bound=bound,
        )
    return val


def _regulated(f, eps, spec, points):
    cut = 9.0 / np.sqrt(eps)
    return integrate_1d(
        lambda k: (f(k) + f(-k)) * np.exp(-eps * k * k),
        1e-9,
        cut,
        spec,
        points=points,
    )


def integrate_oscillatory(f, spec: QuadratureSpec = DEFAULT_SPEC, points=None):
    """Regulated integral of f over the whole real line.

    For integrands that decay too slowly for absolute convergence
    (oscillatory 1/k tails), computes int f(k) exp(-eps k^2) dk on the
    ladder eps in {4 e0, 2 e0, e0} and removes the regulator by second
    order Richardson extrapolation.
    """
    e0 = spec.oscillatory_regulator
    if e0 == 0:
        return integrate_1d(lambda k: f(k) + f(-k), 1e-9, np.inf, spec)
    i4 = _regulated(f, 4 * e0, spec, points)
    i2 = _regulated(f, 2 * e0, spec, points)
    i1 = _regulated(f, e0, spec, points)
    return (8.0 * i1 - 6.0 * i2 + i4) / 3.0


_BRANCH_TOL = 1e-13


def matrix_inv_sqrt(K):
    """Principal inverse square root of a diagonalizable 2x2 matrix.

    Returns M with M @ M = inv(K), principal branch taken per eigenvalue.
    Raises BranchError for an eigenvalue on the closed negative real axis
    or a defective (non-diagonalizable) input.
    """
    K = np.asarray(K, dtype=complex)
    if K.shape != (2, 2):
        raise DomainError("matrix_inv_sqrt expects a 2x2 matrix")
    lam, V = np.linalg.eig(K)
    scale = np.linalg.norm(K)
    for ev in lam:
        if ev.real <= 0 and abs(ev.imag) <= _BRANCH_TOL * max(1.0, scale):
            raise BranchError(f"eigenvalue {ev} on the branch cut (closed negative real axis)")
    cond = np.linalg.cond(V)
    if not np.isfinite(cond) or cond > 1e8:
        raise BranchError("defective (or nearly defective) matrix: eigenvectors ill-conditioned")
    root = np.exp(-0.5 * np.log(lam))  # principal log
    M = V @ np.diag(root) @ np.linalg.inv(V)
    return M


def refine_root(f, seed, max_iter=100, tol_factor=1e-10):
    """Newton refinement of a simple zero from a nearby seed.

    The derivative is taken by complex central differences (f analytic).
    Returns the root; raises NoConvergenceError after ``max_iter`` steps.
    """
    k = complex(seed)
    for _ in range(max_iter):
        fk = f(k)
        h = 1e-7 * max(1.0, abs(k))
        df = (f(k + h) - f(k - h)) / (2 * h)
        if df == 0:
            raise NoConvergenceError("vanishing derivative during Newton refinement")
        step = fk / df
        k = k - step
        if abs(step) <= 1e-14 * max(1.0, abs(k)):
            break
    else:
        raise NoConvergenceError(f"no convergence after {max_iter} Newton iterations")
    fk = f(k)
    h = 1e-7 * max(1.0, abs(k))
    df = (f(k + h) - f(k - h)) / (2 * h)
    if abs(fk) > tol_factor * max(1.0, abs(df) * abs(k)):
        raise NoConvergenceError(f"Newton stalled at |f| = {abs(fk):.3e}")
    return k


_WINDING_RESIDUAL = 0.25


def count_zeros(f, rect: ComplexRect, spec: QuadratureSpec = DEFAULT_SPEC):
    """Number of zeros of an analytic f inside a rectangle.

    Evaluates the argument-principle integral (1/2 pi i) closed-int f'/f dk
    as the total winding of f along the boundary, with adaptive bisection
    of each edge until the phase step per sample is below pi/2.  The
    pre-rounding residual must stay below 0.25 or ContourError is raised
    (a zero too close to the contour shows up as unresolvable phase
    steps or a non-integer winding).
    """
    corners = rect.corners
    total = 0.0
    for a, b in zip(corners, corners[1:] + corners[:1]):
        # initial sampling guards against phase aliasing on long edges,
        # adaptive bisection resolves the rest
        ts = np.linspace(0.0, 1.0, 65)
        zs = a + (b - a) * ts
        fs = [f(z) for z in zs]
        for i in range(len(zs) - 1):
            total += _segment_winding(f, zs[i], zs[i + 1], fs[i], fs[i + 1], depth=24)
    winding = total / (2 * np.pi)
    n = int(round(winding))
    residual = abs(winding - n)
    if residual >= _WINDING_RESIDUAL:
        raise ContourError(
            f"winding residual {residual:.3f} >= 0.25: zero too close to the contour; "
            "shrink or shift the rectangle",
            raw_winding=winding,
        )
    if n < 0:
        raise ContourError(f"negative winding {n}: f not analytic inside?", raw_winding=winding)
    return n


def _segment_winding(f, a, b, fa, fb, depth):
    if fa == 0 or fb == 0:
        raise ContourError("exact zero on the contour")
    dphi = float(np.angle(fb / fa))
    if abs(dphi) <= 0.5 * np.pi:
        return dphi
    if depth == 0:
        raise ContourError("cannot resolve phase along edge: zero on or near the contour")
    m = 0.5 * (a + b)
    fm = f(m)
    return _segment_winding(f, a, m, fa, fm, depth - 1) + _segment_winding(
        f, m, b, fm, fb, depth - 1
    )
