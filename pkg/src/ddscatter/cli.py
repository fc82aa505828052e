"""Command-line frontend.

Subcommands: scan (coupling-plane maps), energy (Gaussian-packet energy
sweeps), kernel (metric/Hamiltonian/observable kernel dumps), inm
(closed-form vs quadrature of the Fourier integral family), verify (the
named validation suites).

Exit codes: 0 success, 2 usage, 3 unsupported coupling class,
4 numerical failure, 5 verification failure.

Data files are byte-stable across runs for identical flags: CSV output
carries no timestamps; run metadata lives in a sidecar .meta.json.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time

import numpy as np

from . import hermitianize as herm
from . import metric as metricmod
from .errors import (
    BranchError,
    ContourError,
    DdscatterError,
    DomainError,
    NoConvergenceError,
    QuadratureError,
    UnsupportedCouplingError,
)
from .model import Couplings, PhysicalContext
from .spectrum import ScanMode, scan_region

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_UNSUPPORTED = 3
EXIT_NUMERICAL = 4
EXIT_VERIFY = 5


def _parse_range(text, name):
    try:
        lo, hi = text.split(":")
        return float(lo), float(hi)
    except ValueError as exc:
        raise DomainError(f"{name} must look like MIN:MAX, got {text!r}") from exc


def _parse_grid(text, name):
    try:
        lo, hi, n = text.split(":")
        return float(lo), float(hi), int(n)
    except ValueError as exc:
        raise DomainError(f"{name} must look like MIN:MAX:N, got {text!r}") from exc


def _write_sidecar(path, payload):
    payload = dict(payload)
    payload["written_at"] = time.strftime("%Y-%m-%dT%H:%M:%S")
    with open(str(path) + ".meta.json", "w") as fh:
        json.dump(payload, fh, indent=2, default=str)


def _cmd_scan(args):
    mode_map = {"antisym": "antisymmetric", "pt": "pt_symmetric", "general": "general"}
    mode = ScanMode(
        mode_map[args.mode],
        z_minus_fixed=complex(args.z_minus_re, args.z_minus_im),
    )
    r_range = _parse_range(args.r, "--r")
    s_range = _parse_range(args.s, "--s")
    grid = scan_region(
        mode, r_range, s_range, args.n, a=args.a, k_max=args.k_max, jobs=args.jobs
    )
    with open(args.out, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(
            ["r", "s", "n_bound", "n_bound_real", "n_spectral_singularities",
             "quasi_hermitian", "status"]
        )
        for si in range(grid.shape[0]):
            for ri in range(grid.shape[1]):
                cell = grid[si, ri]
                w.writerow(
                    [f"{cell.r:.12g}", f"{cell.s:.12g}", cell.n_bound,
                     cell.n_bound_real_energy, len(cell.spectral_singularities),
                     str(cell.quasi_hermitian).lower(), cell.status]
                )
    _write_sidecar(args.out, vars(args))
    return EXIT_OK


def _couplings_from_args(args):
    zp = complex(args.re_z, args.im_z)
    re_minus = args.re_z_minus if args.re_z_minus is not None else args.re_z
    im_minus = args.im_z_minus if getattr(args, "im_z_minus", None) is not None else -args.im_z
    zm = complex(re_minus, im_minus)
    return Couplings(zp, zm, args.a)


def _energy_scale(args):
    if args.mass is not None and args.hbar is not None and args.ell is not None:
        ctx = PhysicalContext(
            mass=args.mass, hbar=args.hbar, length_scale=args.ell,
            alpha=args.a * args.ell, zeta_plus=0.0, zeta_minus=0.0,
        )
        return ctx.energy_scale()
    return None


def _cmd_energy(args):
    c = _couplings_from_args(args)
    if not c.im_antisymmetric:
        raise UnsupportedCouplingError("energy command needs Im(z_+) = -Im(z_-)")
    scale = _energy_scale(args)

    base = {"sigma": args.sigma, "k": args.k, "x0": args.x0}
    sweeps = [dict(base)]
    sweep_var = None
    if args.sweep:
        var, rng = args.sweep.split("=", 1)
        var = var.strip()
        if var not in base:
            raise DomainError(f"--sweep variable must be one of sigma,k,x0; got {var!r}")
        lo, hi, steps = _parse_grid(rng, "--sweep")
        sweep_var = var
        sweeps = []
        for v in np.linspace(lo, hi, steps):
            row = dict(base)
            row[var] = float(v)
            sweeps.append(row)

    header = [
        "sigma", "k0", "x0",
        "kinetic", "local", "nonlocal", "total",
        "quad_total", "abs_diff",
    ]
    if scale is not None:
        header.append("total_physical")
    with open(args.out, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in sweeps:
            packet = herm.GaussianPacket(row["sigma"], row["k"], row["x0"])
            closed = herm.energy_gaussian(c, packet)
            oracle = herm.energy_quadrature(c, packet)
            out = [
                f"{row['sigma']:.12g}", f"{row['k']:.12g}", f"{row['x0']:.12g}",
                f"{closed.kinetic:.12g}", f"{closed.local_potential:.12g}",
                f"{closed.nonlocal_part:.12g}", f"{closed.total:.12g}",
                f"{oracle.total:.12g}", f"{abs(closed.total - oracle.total):.3e}",
            ]
            if scale is not None:
                out.append(f"{closed.total * scale:.12g}")
            w.writerow(out)
    _write_sidecar(args.out, {**vars(args), "sweep_var": sweep_var})
    return EXIT_OK


def _cmd_kernel(args):
    lo, hi, n = _parse_grid(args.grid, "--grid")
    if args.which == "appendixA":
        p = metricmod.AppendixAParams(
            r_plus=args.r_plus, r_minus=args.r_minus,
            eps_plus=args.eps_plus, eps_minus=args.eps_minus,
            gamma=args.gamma, a=args.a,
        )
        kern = metricmod.eta1_appendixA(p)
    else:
        c = _couplings_from_args(args)
        builder = {
            "eta1": metricmod.eta1_bounded,
            "h": herm.h_kernel,
            "X": herm.x_kernel,
            "P": herm.p_kernel,
        }[args.which]
        kern = builder(c)

    with open(str(args.out) + ".terms.json", "w") as fh:
        json.dump(kern.to_records(), fh, indent=2)

    from .kernels import kernel_eval
    from .errors import SingularPointError

    xs = np.linspace(lo, hi, n)
    with open(args.out, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["x", "y", "re", "im"])
        for x in xs:
            for y in xs:
                try:
                    v = kernel_eval(kern, float(x), float(y))
                    re, im = f"{v.real:.12g}", f"{v.imag:.12g}"
                except SingularPointError:
                    re, im = "nan", "nan"
                w.writerow([f"{x:.12g}", f"{y:.12g}", re, im])
    _write_sidecar(args.out, vars(args))
    return EXIT_OK


def _cmd_inm(args):
    delta, regular = metricmod.inm(args.n, args.m, args.alpha)
    quad = metricmod.inm_quadrature(args.n, args.m, args.alpha)
    print(f"I[n={args.n}, m={args.m}](alpha={args.alpha}):")
    print(f"  delta coefficient : {delta}")
    print(f"  regular (closed)  : {regular}")
    print(f"  regular (quad)    : {quad}")
    print(f"  |difference|      : {abs(regular - quad):.3e}")
    return EXIT_OK


def _cmd_verify(args):
    from .verify import run_verify

    if args.perturbation:
        from .perturbation import run_instance

        with open(args.perturbation) as fh:
            payload = json.load(fh)
        result = run_instance(payload)
        out_path = args.perturbation + ".out.json"
        with open(out_path, "w") as fh:
            json.dump(result, fh, indent=2)
        print(f"instance solved; results in {out_path}")
        print(f"pseudo-hermiticity residual: {result['pseudo_hermiticity_residual']:.3e}")
        return EXIT_OK

    ok, report = run_verify(args.level)
    for check in report["checks"]:
        mark = "PASS" if check["passed"] else "FAIL"
        print(f"{mark}  {check['name']:45s} ({check['seconds']:6.2f}s)  {check['detail']}")
    print(f"{'ALL PASSED' if ok else 'FAILURES PRESENT'} at level {args.level}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(report, fh, indent=2)
    return EXIT_OK if ok else EXIT_VERIFY


def build_parser():
    ap = argparse.ArgumentParser(
        prog="ddscatter",
        description="Pseudo-Hermitian toolkit for the complex double-delta potential",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sc = sub.add_parser("scan", help="coupling-plane map of bound states and singularities")
    sc.add_argument("--mode", choices=("antisym", "pt", "general"), required=True)
    sc.add_argument("--r", required=True, help="MIN:MAX")
    sc.add_argument("--s", required=True, help="MIN:MAX")
    sc.add_argument("--n", type=int, required=True)
    sc.add_argument("--a", type=float, default=1.0)
    sc.add_argument("--k-max", type=float, default=20.0)
    sc.add_argument("--jobs", type=int, default=1, help="0 = all cores")
    sc.add_argument("--z-minus-re", type=float, default=0.0, help="general mode only")
    sc.add_argument("--z-minus-im", type=float, default=0.0, help="general mode only")
    sc.add_argument("--out", required=True)
    sc.set_defaults(fn=_cmd_scan)

    en = sub.add_parser("energy", help="Gaussian-packet energy expectation values")
    en.add_argument("--sigma", type=float, default=1.5)
    en.add_argument("--k", type=float, default=0.0)
    en.add_argument("--x0", type=float, default=0.0)
    en.add_argument("--re-z", type=float, default=0.0)
    en.add_argument("--im-z", type=float, required=True)
    en.add_argument("--re-z-minus", type=float, default=None,
                    help="defaults to --re-z (PT-symmetric pair)")
    en.add_argument("--im-z-minus", type=float, default=None,
                    help="defaults to -(--im-z); other values are outside the supported class")
    en.add_argument("--a", type=float, default=1.0)
    en.add_argument("--sweep", default=None, help="VAR=MIN:MAX:STEPS")
    en.add_argument("--mass", type=float, default=None)
    en.add_argument("--hbar", type=float, default=None)
    en.add_argument("--ell", type=float, default=None)
    en.add_argument("--out", required=True)
    en.set_defaults(fn=_cmd_energy)

    ke = sub.add_parser("kernel", help="dump a distributional kernel (terms + samples)")
    ke.add_argument("--which", choices=("eta1", "h", "X", "P", "appendixA"), required=True)
    ke.add_argument("--a", type=float, default=1.0)
    ke.add_argument("--im-z", type=float, default=0.1)
    ke.add_argument("--re-z", type=float, default=0.0)
    ke.add_argument("--re-z-minus", type=float, default=None)
    ke.add_argument("--im-z-minus", type=float, default=None)
    ke.add_argument("--r-plus", type=float, default=1.0)
    ke.add_argument("--r-minus", type=float, default=1.0)
    ke.add_argument("--eps-plus", type=float, default=0.0)
    ke.add_argument("--eps-minus", type=float, default=0.0)
    ke.add_argument("--gamma", type=float, default=1.0)
    ke.add_argument("--grid", required=True, help="MIN:MAX:N")
    ke.add_argument("--out", required=True)
    ke.set_defaults(fn=_cmd_kernel)

    im = sub.add_parser("inm", help="Fourier integral family: closed form vs quadrature")
    im.add_argument("--n", type=int, required=True)
    im.add_argument("--m", type=int, required=True)
    im.add_argument("--alpha", type=float, required=True)
    im.set_defaults(fn=_cmd_inm)

    ve = sub.add_parser("verify", help="run the named validation suites")
    ve.add_argument("--level", choices=("fast", "full"), default="fast")
    ve.add_argument("--json", default=None)
    ve.add_argument("--perturbation", default=None, metavar="FILE",
                    help="solve a JSON matrix instance (dense row-major [re,im] arrays) "
                         "through the perturbative engine instead of the suites")
    ve.set_defaults(fn=_cmd_verify)

    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except UnsupportedCouplingError as exc:
        print(f"unsupported coupling class: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (QuadratureError, NoConvergenceError, ContourError, BranchError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except DomainError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DdscatterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
