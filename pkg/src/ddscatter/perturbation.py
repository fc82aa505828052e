"""Multi-parameter perturbative metric machinery on finite matrices.

H = H0 + sum_i z_i H_i with Hermitian H0, H_i and complex couplings z_i.
Solves the first- and second-order commutator equations for the Hermitian
generator Q of the metric eta = exp(-Q), builds the equivalent Hermitian
matrix, and maps observables into the pseudo-Hermitian representation.

Gauge: the diagonal of Q vanishes in the H0 eigenbasis at every order
(minimal choice; matches the identity metric in the Hermitian limit).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DegeneracyError,
    DomainError,
    InconsistencyError,
    NonQuasiHermitianError,
)

__all__ = [
    "PerturbedOperator",
    "QExpansion",
    "solve_q1",
    "solve_q2",
    "equivalent_h",
    "conjugated_h",
    "map_observable",
    "eta_from_q",
]

_HERM_TOL = 1e-12
_GAP_TOL = 1e-8
_DIAG_TOL = 1e-10
_SOLVE_TOL = 1e-8


def _require_hermitian(M, name):
    M = np.asarray(M, dtype=complex)
    scale = max(1.0, np.linalg.norm(M))
    if np.linalg.norm(M - M.conj().T) > _HERM_TOL * scale:
        raise DomainError(f"{name} must be Hermitian")
    return M


@dataclass(frozen=True)
class PerturbedOperator:
    """H0 plus coupling-weighted Hermitian generators."""

    h0: np.ndarray
    generators: tuple
    couplings: tuple

    def __post_init__(self):
        h0 = _require_hermitian(self.h0, "H0")
        object.__setattr__(self, "h0", h0)
        gens = tuple(_require_hermitian(g, f"H_{i+1}") for i, g in enumerate(self.generators))
        if len(gens) != len(self.couplings):
            raise DomainError("one coupling per generator required")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "couplings", tuple(complex(z) for z in self.couplings))

    @property
    def h1(self):
        return sum(z * g for z, g in zip(self.couplings, self.generators))

    @property
    def h1_hermitian(self):
        return sum(z.real * g for z, g in zip(self.couplings, self.generators))

    @property
    def h1_antihermitian(self):
        return sum(1j * z.imag * g for z, g in zip(self.couplings, self.generators))

    @property
    def total(self):
        return self.h0 + self.h1

    def coupling_norm(self):
        return max(abs(z) for z in self.couplings) if self.couplings else 0.0


@dataclass(frozen=True)
class QExpansion:
    """First two orders of the Hermitian generator, diagonal-free in the
    H0 eigenbasis."""

    q1: np.ndarray
    q2: np.ndarray


def _commutator(A, B):
    return A @ B - B @ A


def _solve_sylvester_diag(energies, rhs, coupling_tol):
    """Solve [diag(E), Q] = rhs for off-diagonal Q (diagonal gauged to 0).

    rhs is expressed in the H0 eigenbasis.  Raises DegeneracyError when a
    (near-)degenerate pair is actually coupled by rhs.
    """
    n = len(energies)
    gaps = energies[:, None] - energies[None, :]
    Q = np.zeros((n, n), dtype=complex)
    off = ~np.eye(n, dtype=bool)
    small = np.abs(gaps) < _GAP_TOL
    coupled_degenerate = off & small & (np.abs(rhs) > coupling_tol)
    if np.any(coupled_degenerate):
        i, j = np.argwhere(coupled_degenerate)[0]
        raise DegeneracyError(
            f"levels {i} and {j} are degenerate (gap {abs(gaps[i, j]):.2e}) "
            "but coupled by the perturbation"
        )
    sel = off & ~small
    Q[sel] = rhs[sel] / gaps[sel]
    return Q


def solve_q1(p: PerturbedOperator) -> np.ndarray:
    """First-order generator: [H0, Q1] = -2 H1_antihermitian.

    In the H0 eigenbasis Q1_mn = -2 (H1_ah)_mn / (E_m - E_n) off the
    diagonal, zero on it.  Requires the anti-Hermitian diagonal to vanish
    (otherwise the spectrum is complex at first order and no metric
    exists).
    """
    E, V = np.linalg.eigh(p.h0)
    A = V.conj().T @ p.h1_antihermitian @ V
    scale = max(1.0, np.linalg.norm(A))
    if np.max(np.abs(np.diag(A))) > _DIAG_TOL * scale:
        raise NonQuasiHermitianError(
            "anti-Hermitian perturbation has nonzero diagonal in the H0 "
            "eigenbasis: complex first-order energies, not quasi-Hermitian"
        )
    Q1_eig = _solve_sylvester_diag(E, -2.0 * A, coupling_tol=_DIAG_TOL * scale)
    Q1 = V @ Q1_eig @ V.conj().T
    resid = np.linalg.norm(_commutator(p.h0, Q1) + 2 * p.h1_antihermitian)
    if resid > 1e-10 * max(1.0, np.linalg.norm(p.h1_antihermitian)):
        raise InconsistencyError(f"first-order commutator residual {resid:.2e}")
    return 0.5 * (Q1 + Q1.conj().T)  # symmetrize roundoff


def solve_q2(p: PerturbedOperator, q1: np.ndarray) -> np.ndarray:
    """Second-order generator: [H0, Q2] = R with

        R = -[H1, Q1] - (1/2) [[H0, Q1], Q1].

    Solvable only when diag(R) vanishes in the H0 eigenbasis; a nonzero
    diagonal equals -2i Im(second-order energy shift) and signals
    breakdown of quasi-Hermiticity at second order.
    """
    q1 = _require_hermitian(q1, "Q1")
    R = -_commutator(p.h1, q1) - 0.5 * _commutator(_commutator(p.h0, q1), q1)
    E, V = np.linalg.eigh(p.h0)
    R_eig = V.conj().T @ R @ V
    scale = max(1.0, np.linalg.norm(R_eig))
    if np.max(np.abs(np.diag(R_eig))) > _SOLVE_TOL * scale:
        raise InconsistencyError(
            "second-order solvability violated: diag of R nonzero "
            "(quasi-Hermiticity breaks down at second order)"
        )
    Q2_eig = _solve_sylvester_diag(E, R_eig, coupling_tol=_SOLVE_TOL * scale)
    Q2 = V @ Q2_eig @ V.conj().T
    resid = np.linalg.norm(_commutator(p.h0, Q2) - R)
    if resid > 1e-10 * max(1.0, np.linalg.norm(R)):
        raise InconsistencyError(f"second-order commutator residual {resid:.2e}")
    return 0.5 * (Q2 + Q2.conj().T)


def equivalent_h(p: PerturbedOperator, q1: np.ndarray) -> np.ndarray:
    """Truncated equivalent Hermitian matrix

        h = H0 + H1_hermitian + (1/4)[H1_antihermitian, Q1],

    exactly Hermitian by construction (the commutator of an anti-Hermitian
    with a Hermitian matrix is Hermitian)."""
    return p.h0 + p.h1_hermitian + 0.25 * _commutator(p.h1_antihermitian, q1)


def conjugated_h(p: PerturbedOperator, q: QExpansion) -> np.ndarray:
    """rho H rho^{-1} with rho = exp(-(Q1+Q2)/2): Hermitian up to O(z^3).

    This is the similarity-transform realization whose anti-Hermitian
    residual exhibits the cubic coupling scaling; the closed formula
    equivalent_h agrees with it to the same order.
    """
    rho = _expm_hermitian(-0.5 * (q.q1 + q.q2))
    rho_inv = _expm_hermitian(0.5 * (q.q1 + q.q2))
    return rho @ p.total @ rho_inv


def map_observable(o: np.ndarray, q1: np.ndarray, q2: np.ndarray) -> np.ndarray:
    """Pseudo-Hermitian image of a Hermitian observable:

        O = o - (1/2)([o, Q1] + [o, Q2] - (1/4)[[o, Q1], Q1]).

    Satisfies O^dag = eta O eta^{-1} to O(z^3) with eta = exp(-Q1-Q2).
    """
    o = _require_hermitian(o, "observable")
    q1 = np.asarray(q1, dtype=complex)
    q2 = np.asarray(q2, dtype=complex)
    c1 = _commutator(o, q1)
    return o - 0.5 * (c1 + _commutator(o, q2) - 0.25 * _commutator(c1, q1))


def _expm_hermitian(A):
    """exp(A) for Hermitian A via eigendecomposition (positive result)."""
    w, V = np.linalg.eigh(A)
    return (V * np.exp(w)) @ V.conj().T


def eta_from_q(q1: np.ndarray, q2: np.ndarray = None) -> np.ndarray:
    """Positive-definite metric eta = exp(-Q1 - Q2)."""
    q1 = _require_hermitian(q1, "Q1")
    q = q1 if q2 is None else q1 + _require_hermitian(q2, "Q2")
    eta = _expm_hermitian(-q)
    check = np.linalg.norm(_expm_hermitian(q) @ eta - np.eye(len(q)))
    if check > 1e-10 * len(q):
        raise InconsistencyError(f"matrix exponential inversion residual {check:.2e}")
    return eta


# dense JSON wire format: row-major nested lists of [re, im] pairs


def matrix_to_json(M) -> list:
    M = np.asarray(M, dtype=complex)
    return [[[v.real, v.imag] for v in row] for row in M]


def matrix_from_json(rows) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in rows], dtype=complex)


def run_instance(payload: dict) -> dict:
    """Solve a JSON-described instance end to end.

    Input keys: "h0", "generators" (list of matrices), "couplings"
    (list of [re, im]).  Returns Q1, Q2, the equivalent Hermitian matrix,
    the metric, and the pseudo-Hermiticity residuals.
    """
    p = PerturbedOperator(
        matrix_from_json(payload["h0"]),
        tuple(matrix_from_json(g) for g in payload["generators"]),
        tuple(complex(re, im) for re, im in payload["couplings"]),
    )
    q1 = solve_q1(p)
    q2 = solve_q2(p, q1)
    h = equivalent_h(p, q1)
    eta = eta_from_q(q1, q2)
    H = p.total
    return {
        "q1": matrix_to_json(q1),
        "q2": matrix_to_json(q2),
        "equivalent_h": matrix_to_json(h),
        "eta": matrix_to_json(eta),
        "pseudo_hermiticity_residual": float(
            np.linalg.norm(eta @ H - H.conj().T @ eta)
        ),
        "conjugated_h_antihermitian_residual": float(
            np.linalg.norm(
                conjugated_h(p, QExpansion(q1, q2))
                - conjugated_h(p, QExpansion(q1, q2)).conj().T
            )
        ),
    }
