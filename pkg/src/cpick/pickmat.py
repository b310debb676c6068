"""Pick matrices for classical and derivative-constrained interpolation.

The classical matrix [(1 - w_i conj(w_j)) / (1 - z_i conj(z_j))] decides
plain Nevanlinna-Pick solvability.  The constrained variant replaces the
numerator with z_i^E conj(z_j)^E - phi_lam(w_i) conj(phi_lam(w_j)) and the
denominator with 1 - (z_i conj(z_j))^d; its positive semidefiniteness for
some disk parameter lam is the feasibility criterion in the constrained
classes.  The module also checks the congruence

    M = D P D*,    D = diag(z_i^E),

relating the constrained matrix to a classical one, which underpins both
directions of the criterion.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DomainError,
    InvalidExponent,
    InvalidProblem,
    NumericalError,
)
from .analytic import mobius, mobius_inverse

__all__ = [
    "HermitianMatrix",
    "PsdVerdict",
    "classical_pick",
    "constrained_pick",
    "psd_check",
    "factorization_residual",
]


class HermitianMatrix:
    """Square complex matrix with conjugate symmetry enforced by mirroring.

    The strict upper triangle of the input is copied, the lower triangle is
    its exact conjugate transpose, and the diagonal keeps only its real
    part, so ``entries[i, j] == conj(entries[j, i])`` holds exactly.  The
    backing array is frozen after construction.
    """

    def __init__(self, entries):
        a = np.asarray(entries, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise InvalidProblem(f"expected a square matrix, got shape {a.shape}")
        if a.shape[0] == 0:
            raise InvalidProblem("matrix order must be at least 1")
        upper = np.triu(a, 1)
        m = upper + upper.conj().T + np.diag(a.diagonal().real.astype(complex))
        m.flags.writeable = False
        self._m = m

    @property
    def entries(self) -> np.ndarray:
        return self._m

    @property
    def order(self) -> int:
        return self._m.shape[0]

    def __repr__(self):
        return f"HermitianMatrix(order={self.order})"


@dataclass(frozen=True)
class PsdVerdict:
    """Outcome of a positive-semidefiniteness test."""

    is_psd: bool
    min_eigenvalue: float
    tolerance_used: float


def _as_disk_nodes(nodes, label: str) -> np.ndarray:
    z = np.asarray([complex(v) for v in nodes], dtype=complex)
    if np.any(np.abs(z) >= 1.0):
        raise DomainError(f"{label} must lie strictly inside the unit disk")
    return z


def classical_pick(nodes, values) -> HermitianMatrix:
    """Classical Pick matrix [(1 - v_i conj(v_j)) / (1 - z_i conj(z_j))]."""
    z = _as_disk_nodes(nodes, "nodes")
    v = np.asarray([complex(x) for x in values], dtype=complex)
    if len(z) != len(v):
        raise InvalidProblem(f"{len(z)} nodes vs {len(v)} values")
    if len(set(z.tolist())) != len(z):
        raise InvalidProblem("nodes must be distinct")
    num = 1.0 - np.outer(v, v.conj())
    den = 1.0 - np.outer(z, z.conj())
    return HermitianMatrix(num / den)


def constrained_pick(nodes, targets, lam: complex, E: int, d: int) -> HermitianMatrix:
    """Constrained Pick matrix with numerator exponent E and scale d.

    Entry (i, j) is

        (z_i^E conj(z_j)^E - phi_lam(w_i) conj(phi_lam(w_j)))
        / (1 - (z_i conj(z_j))^d),

    defined when d divides E, the nodes and their d-th powers are distinct,
    and the targets and lam lie in the open disk.
    """
    if d < 1 or E < 1:
        raise InvalidExponent(f"exponents must be positive, got E={E}, d={d}")
    if E % d != 0:
        raise InvalidExponent(f"scale d={d} must divide the numerator exponent E={E}")
    z = _as_disk_nodes(nodes, "nodes")
    w = _as_disk_nodes(targets, "targets")
    if len(z) != len(w):
        raise InvalidProblem(f"{len(z)} nodes vs {len(w)} targets")
    powers = z**d
    if len(set(z.tolist())) != len(z) or len(set(powers.tolist())) != len(z):
        raise InvalidProblem("nodes and their d-th powers must both be distinct")
    phi = np.asarray(mobius(lam, w), dtype=complex).reshape(len(w))
    ze = z**E
    num = np.outer(ze, ze.conj()) - np.outer(phi, phi.conj())
    den = 1.0 - np.outer(z, z.conj()) ** d
    return HermitianMatrix(num / den)


def psd_check(m, tol: float = 1e-9) -> PsdVerdict:
    """Smallest eigenvalue with a relative positive-semidefiniteness verdict.

    Uses a Hermitian eigensolver; the verdict is
    min_eigenvalue >= -tol * max(1, s) with s the Gershgorin bound
    max_i sum_j |m_ij|, a cheap spectral-norm overestimate.
    """
    if tol < 0:
        raise ValueError(f"tolerance must be nonnegative, got {tol}")
    a = m.entries if isinstance(m, HermitianMatrix) else HermitianMatrix(m).entries
    if not np.all(np.isfinite(a.view(float))):
        raise NumericalError("matrix contains non-finite entries")
    min_eig = float(np.linalg.eigvalsh(a)[0])
    scale = float(np.max(np.sum(np.abs(a), axis=1)))
    tol_used = tol * max(1.0, scale)
    return PsdVerdict(is_psd=min_eig >= -tol_used, min_eigenvalue=min_eig, tolerance_used=tol_used)


def factorization_residual(nodes, h_values, lam: complex, E: int, d: int) -> float:
    """Max elementwise gap between the constrained matrix and D P D*.

    Targets are induced by the boundary data: phi_lam(w_i) = z_i^E h_i.  The
    constrained matrix built from them should equal
    diag(z_i^E) P diag(z_i^E)* with P the classical Pick matrix of the
    h-values on the d-th powers of the nodes; the identity is exact, so the
    residual measures floating-point noise only.
    """
    z = _as_disk_nodes(nodes, "nodes")
    if np.any(z == 0):
        raise InvalidProblem("factorization requires nonzero nodes (D must be invertible)")
    h = np.asarray([complex(v) for v in h_values], dtype=complex)
    if len(h) != len(z):
        raise InvalidProblem(f"{len(z)} nodes vs {len(h)} h-values")
    if np.any(np.abs(h) > 1.0 + 1e-12):
        raise DomainError("h-values must lie in the closed unit disk")
    ze = z**E
    targets = np.asarray(mobius_inverse(lam, ze * h), dtype=complex).reshape(len(z))
    m1 = constrained_pick(z, targets, lam, E, d).entries
    p = classical_pick(z**d, h).entries
    dd = np.diag(ze)
    m2 = dd @ p @ dd.conj().T
    return float(np.max(np.abs(m1 - m2)))
