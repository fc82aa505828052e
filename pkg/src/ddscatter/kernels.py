"""Symbolic distributional kernels.

The metric, Hermitianized-Hamiltonian and pseudo-Hermitian observable
kernels are all finite sums of terms

    coefficient * product of primitives in x, y, x-y, x+y,

where the primitives are constants, signs, step functions, Dirac deltas,
|u| and exp(-rate |u|) factors, each with a real shift.  Keeping them
symbolic lets Dirac factors be integrated out exactly when pairing with
wave functions, instead of sampling distributions on a grid.

Conventions: theta(0) = 1/2, sign(0) = 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .errors import DomainError, SingularPointError
from .numerics import DEFAULT_SPEC, QuadratureSpec, integrate_1d

__all__ = [
    "KernelPrimitive",
    "KernelTerm",
    "DistributionalKernel",
    "kernel_eval",
    "kernel_pair",
    "regular_part_grid",
    "hermitian_completion",
]

_KINDS = ("const", "sign", "heaviside", "dirac", "exp_abs", "abs", "linear")
_ARGS = ("x", "y", "x-y", "x+y")

# linear-form coefficients of each argument in (x, y)
_ARG_COEFFS = {"x": (1.0, 0.0), "y": (0.0, 1.0), "x-y": (1.0, -1.0), "x+y": (1.0, 1.0)}


@dataclass(frozen=True)
class KernelPrimitive:
    """One factor: kind(argument + shift), with a decay rate for exp_abs."""

    kind: str
    argument: str
    shift: float = 0.0
    rate: float = 0.0

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise DomainError(f"unknown primitive kind {self.kind!r}")
        if self.argument not in _ARGS:
            raise DomainError(f"unknown argument {self.argument!r}")
        if self.kind == "exp_abs" and self.rate <= 0:
            raise DomainError("exp_abs needs a positive rate")

    def u(self, x, y):
        cx, cy = _ARG_COEFFS[self.argument]
        return cx * x + cy * y + self.shift

    def value(self, x, y):
        """Pointwise value; Dirac factors are not pointwise evaluable."""
        u = self.u(x, y)
        if self.kind == "const":
            return np.ones_like(np.asarray(u, dtype=float))
        if self.kind == "sign":
            return np.sign(u)
        if self.kind == "heaviside":
            return 0.5 * (np.sign(u) + 1.0)
        if self.kind == "exp_abs":
            return np.exp(-self.rate * np.abs(u))
        if self.kind == "abs":
            return np.abs(u)
        if self.kind == "linear":
            return u
        raise SingularPointError("Dirac factor has no pointwise value")


@dataclass(frozen=True)
class KernelTerm:
    coefficient: complex
    factors: tuple

    def __post_init__(self):
        diracs = [f for f in self.factors if f.kind == "dirac"]
        args = [f.argument for f in diracs]
        if len(args) != len(set(args)):
            raise DomainError("at most one Dirac factor per independent direction")

    @property
    def dirac_factors(self):
        return tuple(f for f in self.factors if f.kind == "dirac")

    @property
    def regular_factors(self):
        return tuple(f for f in self.factors if f.kind != "dirac")

    def regular_value(self, x, y):
        v = np.asarray(self.coefficient) * np.ones_like(np.asarray(x, dtype=float), dtype=complex)
        for f in self.regular_factors:
            v = v * f.value(x, y)
        return v


def term(coefficient, *factors) -> KernelTerm:
    return KernelTerm(complex(coefficient), tuple(factors))


@dataclass(frozen=True)
class DistributionalKernel:
    """delta(x-y)-diagonal parts plus a finite list of product terms.

    ``identity_coefficient`` multiplies delta(x-y); the flags mark a
    delta(x-y)(-d^2/dx^2) kinetic part and a delta(x-y)(-i d/dx) momentum
    part, which pointwise evaluation and pairing treat as out of scope for
    this module (the Hamiltonian module applies them analytically).
    """

    identity_coefficient: complex = 0.0
    second_derivative_flag: bool = False
    momentum_flag: bool = False
    terms: tuple = field(default_factory=tuple)

    def singular_lines(self):
        """All Dirac supports, as (argument, shift) pairs, identity included."""
        lines = []
        if self.identity_coefficient != 0 or self.second_derivative_flag or self.momentum_flag:
            lines.append(("x-y", 0.0))
        for t in self.terms:
            for f in t.dirac_factors:
                lines.append((f.argument, f.shift))
        return lines

    def to_records(self):
        return {
            "identity_coefficient": [self.identity_coefficient.real, self.identity_coefficient.imag],
            "second_derivative": self.second_derivative_flag,
            "momentum": self.momentum_flag,
            "terms": [
                {
                    "coefficient": [t.coefficient.real, t.coefficient.imag],
                    "factors": [
                        {"kind": f.kind, "argument": f.argument, "shift": f.shift, "rate": f.rate}
                        for f in t.factors
                    ],
                }
                for t in self.terms
            ],
        }

    @staticmethod
    def from_records(rec) -> "DistributionalKernel":
        terms = tuple(
            KernelTerm(
                complex(*t["coefficient"]),
                tuple(KernelPrimitive(**f) for f in t["factors"]),
            )
            for t in rec["terms"]
        )
        return DistributionalKernel(
            identity_coefficient=complex(*rec["identity_coefficient"]),
            second_derivative_flag=rec["second_derivative"],
            momentum_flag=rec["momentum"],
            terms=terms,
        )


_SUPPORT_TOL = 1e-12


def kernel_eval(kern: DistributionalKernel, x: float, y: float) -> complex:
    """Regular-part value at a point off every Dirac support."""
    scale = max(1.0, abs(x), abs(y))
    for arg, shift in kern.singular_lines():
        cx, cy = _ARG_COEFFS[arg]
        if abs(cx * x + cy * y + shift) < _SUPPORT_TOL * scale:
            raise SingularPointError(
                f"({x}, {y}) lies on the Dirac support {arg} + {shift} = 0"
            )
    total = 0.0 + 0.0j
    for t in kern.terms:
        if t.dirac_factors:
            continue
        total += complex(t.regular_value(x, y))
    return total


def regular_part_grid(kern: DistributionalKernel, xs, ys):
    """Vectorized regular part (Dirac-carrying terms contribute nothing)."""
    X, Y = np.meshgrid(np.asarray(xs, float), np.asarray(ys, float), indexing="ij")
    total = np.zeros(X.shape, dtype=complex)
    for t in kern.terms:
        if t.dirac_factors:
            continue
        total = total + t.regular_value(X, Y)
    return total


def _solve_dirac_point(diracs):
    """Intersection point of two Dirac lines and the Jacobian factor."""
    (a1, s1), (a2, s2) = [(f.argument, f.shift) for f in diracs]
    A = np.array([_ARG_COEFFS[a1], _ARG_COEFFS[a2]], dtype=float)
    det = np.linalg.det(A)
    if abs(det) < 1e-14:
        raise DomainError(f"parallel Dirac factors {a1}, {a2} in one term")
    sol = np.linalg.solve(A, [-s1, -s2])
    return sol[0], sol[1], 1.0 / abs(det)


def _y_breakpoints(factors, x):
    pts = []
    for f in factors:
        cx, cy = _ARG_COEFFS[f.argument]
        if cy != 0:
            pts.append((-f.shift - cx * x) / cy)
    return pts


def _x_breakpoints(factors):
    pts = []
    for f in factors:
        cx, cy = _ARG_COEFFS[f.argument]
        if cy == 0 and cx != 0:
            pts.append(-f.shift / cx)
    return pts


def _x_breakpoints_at(factors, y):
    pts = []
    for f in factors:
        cx, cy = _ARG_COEFFS[f.argument]
        if cx != 0:
            pts.append((-f.shift - cy * y) / cx)
    return pts


def _infer_support(bra, ket):
    box = 40.0
    for fn in (bra, ket):
        sigma = getattr(fn, "sigma", None)
        x0 = getattr(fn, "x0", 0.0)
        if sigma is None:
            return (-box, box)
    lo = min(bra.x0 - 14 * bra.sigma, ket.x0 - 14 * ket.sigma)
    hi = max(bra.x0 + 14 * bra.sigma, ket.x0 + 14 * ket.sigma)
    return (min(lo, -2.0), max(hi, 2.0))


def kernel_pair(
    kern: DistributionalKernel,
    bra,
    ket,
    spec: QuadratureSpec = DEFAULT_SPEC,
    support=None,
):
    """<bra | K | ket> = int int conj(bra(x)) K(x, y) ket(y) dx dy.

    Dirac factors are integrated out analytically (one dimension removed
    per Dirac, with the proper Jacobian); what remains is evaluated by
    iterated adaptive quadrature with the factor kinks declared as
    breakpoints.  bra and ket must be absolutely integrable and bounded.
    """
    if kern.second_derivative_flag or kern.momentum_flag:
        raise DomainError(
            "kernel_pair handles multiplication-type kernels only; "
            "derivative parts are applied by the Hamiltonian module"
        )
    lo, hi = support if support is not None else _infer_support(bra, ket)

    total = 0.0 + 0.0j
    if kern.identity_coefficient != 0:
        total += kern.identity_coefficient * integrate_1d(
            lambda x: np.conj(bra(x)) * ket(x), lo, hi, spec
        )

    regular_group = []
    for t in kern.terms:
        diracs = t.dirac_factors
        if len(diracs) == 2:
            x0, y0, jac = _solve_dirac_point(diracs)
            if lo <= x0 <= hi and lo <= y0 <= hi:
                total += jac * complex(t.regular_value(x0, y0)) * np.conj(bra(x0)) * ket(y0)
        elif len(diracs) == 1:
            total += _pair_single_dirac(t, diracs[0], bra, ket, lo, hi, spec)
        else:
            regular_group.append(t)
    if regular_group:
        total += _pair_regular_group(regular_group, bra, ket, lo, hi, spec)
    return total


def _pair_single_dirac(t, d, bra, ket, lo, hi, spec):
    cx, cy = _ARG_COEFFS[d.argument]
    reg = t.regular_factors

    if cy == 0:  # delta in x alone: x = -shift
        x0 = -d.shift
        if not (lo <= x0 <= hi):
            return 0.0

        def g(y):
            v = t.coefficient * np.conj(bra(x0)) * ket(y)
            for f in reg:
                v = v * f.value(x0, y)
            return v

        return integrate_1d(g, lo, hi, spec, points=_y_breakpoints(reg, x0))

    if cx == 0:  # delta in y alone: y = -shift
        y0 = -d.shift
        if not (lo <= y0 <= hi):
            return 0.0

        def g(x):
            v = t.coefficient * np.conj(bra(x)) * ket(y0)
            for f in reg:
                v = v * f.value(x, y0)
            return v

        return integrate_1d(g, lo, hi, spec, points=_x_breakpoints_at(reg, y0))

    # delta on a diagonal line: parametrize by y, x = (-shift - cy*y)/cx
    jac = 1.0 / abs(cx)

    def g(y):
        x = (-d.shift - cy * y) / cx
        if x < lo or x > hi:
            return 0.0
        v = t.coefficient * np.conj(bra(x)) * ket(y)
        for f in reg:
            v = v * f.value(x, y)
        return v

    pts = []
    for f in reg:
        fx, fy = _ARG_COEFFS[f.argument]
        # factor argument restricted to the line, as a function of y
        slope = fy - fx * cy / cx
        if slope != 0:
            pts.append((-f.shift + fx * d.shift / cx) / slope)
    return jac * integrate_1d(g, lo, hi, spec, points=pts)


def _pair_regular_group(terms, bra, ket, lo, hi, spec):
    """All Dirac-free terms in one iterated 2D quadrature (shared adaptive
    sampling; breakpoints are the union over the group)."""
    inner_spec = replace(spec, abs_tol=max(spec.abs_tol, 1e-12), rel_tol=max(spec.rel_tol, 1e-11))
    all_factors = [f for t in terms for f in t.regular_factors]

    def outer(x):
        bx = np.conj(bra(x))
        if bx == 0:
            return 0.0

        def g(y):
            total = 0.0 + 0.0j
            for t in terms:
                v = t.coefficient
                for f in t.regular_factors:
                    v = v * f.value(x, y)
                total += v
            return total * ket(y)

        return bx * integrate_1d(g, lo, hi, inner_spec, points=_y_breakpoints(all_factors, x))

    return integrate_1d(outer, lo, hi, spec, points=_x_breakpoints(all_factors))


_MIRROR_ARG = {"x": "y", "y": "x", "x+y": "x+y"}
_ODD_KINDS = ("sign", "linear")
_EVEN_KINDS = ("abs", "exp_abs", "dirac", "const")


def _mirror_factor(f: KernelPrimitive):
    """Factor with x and y interchanged; returns (factor, sign_flip)."""
    if f.argument in _MIRROR_ARG:
        return KernelPrimitive(f.kind, _MIRROR_ARG[f.argument], f.shift, f.rate), 1.0
    # argument x-y: value at swapped point is kind(-(x-y) + shift) = kind(-(x-y-shift))
    if f.kind in _EVEN_KINDS:
        return KernelPrimitive(f.kind, "x-y", -f.shift, f.rate), 1.0
    if f.kind in _ODD_KINDS:
        return KernelPrimitive(f.kind, "x-y", -f.shift, f.rate), -1.0
    raise DomainError(f"cannot mirror {f.kind} factor in x-y (would split the term)")


def hermitian_completion(kern: DistributionalKernel) -> DistributionalKernel:
    """K(x,y) + conj(K(y,x)): the (x <-> y)* completion.

    Guarantees Hermitian symmetry of the result; the identity coefficient
    doubles (so a listed 1/2 delta becomes the full delta).
    """
    mirrored = []
    for t in kern.terms:
        sign_flip = 1.0
        factors = []
        for f in t.factors:
            mf, s = _mirror_factor(f)
            factors.append(mf)
            sign_flip *= s
        mirrored.append(KernelTerm(np.conj(t.coefficient) * sign_flip, tuple(factors)))
    return DistributionalKernel(
        identity_coefficient=kern.identity_coefficient + np.conj(kern.identity_coefficient),
        second_derivative_flag=kern.second_derivative_flag,
        momentum_flag=kern.momentum_flag,
        terms=kern.terms + tuple(mirrored),
    )
