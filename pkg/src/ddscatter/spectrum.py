"""Spectral geography of the double-delta model.

Spectral singularities are real zeros of the transfer-matrix element
M_22 (zero-width resonances); bound states are its zeros in the upper
half k-plane, with energy E = k^2 (real iff k^2 is real).  Coupling-plane
scans classify each grid cell and flag the quasi-Hermitian region (no
singularities, all bound-state energies real).
"""

from __future__ import annotations

import concurrent.futures
from dataclasses import dataclass, field

import numpy as np

from .errors import ContourError, DomainError, NoConvergenceError
from .model import Couplings, m22
from .numerics import ComplexRect, count_zeros, refine_root

__all__ = [
    "ScanCell",
    "ScanMode",
    "find_spectral_singularities",
    "count_bound_states",
    "bound_state_roots",
    "default_bound_rect",
    "scan_region",
]

K_MIN_CUT = 1e-3           # small-k exclusion: the 1/k enhancement is genuine
_SS_RESIDUAL_TOL = 1e-10   # |M22| at an accepted spectral singularity
_SS_IMAG_TOL = 1e-8        # |Im k| at an accepted spectral singularity
_REAL_ENERGY_TOL = 1e-8    # |Im k^2| for a bound state to count as real energy


@dataclass(frozen=True)
class ScanMode:
    """Map from figure-plane coordinates (r, s) to couplings.

    antisymmetric: z_+ = -z_- = (r + i s)/a
    pt_symmetric:  z_+ = (r + i s)/a, z_- = conj(z_+)
    general:       z_+ = (r + i s)/a, z_- fixed (z_minus_fixed)
    """

    mode: str
    z_minus_fixed: complex = 0.0

    def __post_init__(self):
        if self.mode not in ("antisymmetric", "pt_symmetric", "general"):
            raise DomainError(f"unknown scan mode {self.mode!r}")

    def couplings(self, r: float, s: float, a: float) -> Couplings:
        zp = complex(r, s) / a
        if self.mode == "antisymmetric":
            return Couplings(zp, -zp, a)
        if self.mode == "pt_symmetric":
            return Couplings(zp, np.conj(zp), a)
        return Couplings(zp, self.z_minus_fixed, a)


@dataclass
class ScanCell:
    r: float
    s: float
    n_bound: int = 0
    n_bound_real_energy: int = 0
    spectral_singularities: list = field(default_factory=list)
    quasi_hermitian: bool = False
    status: str = "ok"

    def finalize(self):
        self.quasi_hermitian = (
            not self.spectral_singularities
            and self.n_bound == self.n_bound_real_energy
            and self.status == "ok"
        )
        return self


def find_spectral_singularities(c: Couplings, k_max: float, n_samples: int = None):
    """All real zeros of M_22 on (K_MIN_CUT, k_max].

    Dense |M_22| sampling seeds local minima, Newton refinement polishes
    them, and a candidate is accepted only if |M_22| <= 1e-10 with
    |Im k| <= 1e-8.  Refinement failures are skipped (reported via the
    returned diagnostics of scan cells; the scan itself never aborts).
    """
    if k_max <= K_MIN_CUT:
        raise DomainError("k_max must exceed the small-k cut 1e-3")
    if n_samples is None:
        # resolve the e^{4iak} oscillation: ~40 samples per period
        n_samples = int(max(2000, 40 * 4 * c.a * k_max / (2 * np.pi) * 10))
    ks = np.linspace(K_MIN_CUT, k_max, n_samples)
    vals = np.abs(m22(c, ks))
    interior = (vals[1:-1] <= vals[:-2]) & (vals[1:-1] <= vals[2:])
    # only minima that plausibly dip toward zero are worth refining
    cand = np.where(interior & (vals[1:-1] < 0.5))[0] + 1

    roots = []
    f = lambda k: complex(m22(c, complex(k)))
    for idx in cand:
        try:
            root = refine_root(f, complex(ks[idx]))
        except NoConvergenceError:
            continue
        if abs(root.imag) > _SS_IMAG_TOL:
            continue
        k = root.real
        if not (K_MIN_CUT < k <= k_max):
            continue
        if abs(f(k)) > _SS_RESIDUAL_TOL:
            continue
        if all(abs(k - r) > 1e-6 * max(1.0, k) for r in roots):
            roots.append(k)
    return sorted(roots)


def default_bound_rect(c: Couplings) -> ComplexRect:
    """Default upper-half-plane search window: bound-state zeros sit at
    |k| = O(|z|) for small couplings, and the floor keeps clear of the
    essential point k = 0."""
    zmax = max(abs(c.z_plus), abs(c.z_minus), 1.0)
    half = max(3.0, 3.0 * zmax / c.a)
    return ComplexRect(-half, half, K_MIN_CUT, 5.0)


def count_bound_states(c: Couplings, rect: ComplexRect = None):
    """(total, real_energy) bound-state counts inside a UHP rectangle.

    total comes from the argument-principle count of M_22 zeros;
    real_energy from refining each isolated zero and testing
    |Im(k^2)| <= 1e-8.  ContourError propagates with a hint to perturb
    the rectangle.
    """
    if rect is None:
        rect = default_bound_rect(c)
    if rect.im_min <= 0:
        raise DomainError("bound-state rectangle must lie in the open upper half plane")
    f = lambda k: complex(m22(c, k))
    total = count_zeros(f, rect)
    if total == 0:
        return 0, 0
    roots = bound_state_roots(c, rect, expected=total)
    real_energy = sum(1 for k in roots if abs((k * k).imag) <= _REAL_ENERGY_TOL)
    return total, real_energy


def bound_state_roots(c: Couplings, rect: ComplexRect, expected: int = None):
    """Distinct zeros of M_22 inside rect, located by recursive rectangle
    bisection (argument principle) plus Newton refinement."""
    f = lambda k: complex(m22(c, k))
    if expected is None:
        expected = count_zeros(f, rect)
    roots = []
    _isolate(f, rect, expected, roots, depth=40)
    return roots


def _add_root(out, root):
    if all(abs(root - r) > 1e-8 * max(1.0, abs(root)) for r in out):
        out.append(root)


def _isolate(f, rect, n, out, depth):
    if n == 0:
        return
    center = complex(0.5 * (rect.re_min + rect.re_max), 0.5 * (rect.im_min + rect.im_max))
    if n == 1:
        try:
            root = refine_root(f, center)
        except NoConvergenceError:
            root = None
        # accept a refined root in (or hugging) the box; otherwise Newton
        # jumped out and the box must be narrowed first
        if root is not None and rect.contains(root, margin=-1e-7):
            _add_root(out, root)
            return
    if depth <= 0:
        return
    for attempt in range(5):
        parts = _jittered_split(rect, seed=depth * 5 + attempt)
        try:
            counts = [count_zeros(f, p) for p in parts]
        except ContourError:
            continue  # a zero sits on the split line: re-jitter
        if sum(counts) == n:
            for part, cnt in zip(parts, counts):
                _isolate(f, part, cnt, out, depth - 1)
            return


def _jittered_split(rect, seed=0):
    wide = (rect.re_max - rect.re_min) >= (rect.im_max - rect.im_min)
    frac = 0.5 + 0.017 * ((seed % 7) - 3)
    if wide:
        mid = rect.re_min + frac * (rect.re_max - rect.re_min)
        return (
            ComplexRect(rect.re_min, mid, rect.im_min, rect.im_max),
            ComplexRect(mid, rect.re_max, rect.im_min, rect.im_max),
        )
    mid = rect.im_min + frac * (rect.im_max - rect.im_min)
    return (
        ComplexRect(rect.re_min, rect.re_max, rect.im_min, mid),
        ComplexRect(rect.re_min, rect.re_max, mid, rect.im_max),
    )


def _scan_cell(args):
    mode, r, s, a, k_max = args
    cell = ScanCell(r=r, s=s)
    try:
        c = mode.couplings(r, s, a)
        cell.spectral_singularities = find_spectral_singularities(c, k_max)
        total, real_e = count_bound_states(c)
        cell.n_bound = total
        cell.n_bound_real_energy = real_e
    except Exception as exc:  # per-cell failures recorded, scan continues
        cell.status = f"error: {type(exc).__name__}: {exc}"
    return cell.finalize()


def scan_region(
    mode: ScanMode,
    r_range,
    s_range,
    n: int,
    a: float = 1.0,
    k_max: float = 20.0,
    jobs: int = 1,
):
    """Grid of ScanCell over the (r, s) plane, row-major in (s, r).

    Cells are independent; with jobs != 1 they are computed by a process
    pool and merged by index.  Deterministic for given inputs.
    """
    if n < 2:
        raise DomainError("grid size n must be at least 2")
    rs = np.linspace(r_range[0], r_range[1], n)
    ss = np.linspace(s_range[0], s_range[1], n)
    tasks = [(mode, r, s, a, k_max) for s in ss for r in rs]
    if jobs == 1:
        cells = [_scan_cell(t) for t in tasks]
    else:
        workers = None if jobs in (0, -1) else jobs
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as ex:
            cells = list(ex.map(_scan_cell, tasks, chunksize=16))
    grid = np.empty((n, n), dtype=object)
    for idx, cell in enumerate(cells):
        grid[idx // n, idx % n] = cell  # [s_index, r_index]
    return grid
