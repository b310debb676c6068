"""Evaluable analytic machinery on the unit disk.

Provides the elementary Möbius disk automorphisms, a Schur-Nevanlinna
recursion solving the classical Nevanlinna-Pick problem, Taylor coefficient
extraction by sampling the Cauchy integral on a circle, and sup-norm
estimation on circles.

The solver returns a ``SchurFunction``: a chain of fractional-linear
reduction records plus a terminal constant.  Each reduction step divides
out one interpolation condition; unwinding the chain maps the closed disk
into itself at every stage, so the represented function is Schur class by
construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, Infeasible, InvalidConfig, InvalidProblem

__all__ = [
    "SchurFunction",
    "TaylorReport",
    "mobius",
    "mobius_inverse",
    "np_solve",
    "evaluate",
    "taylor_coeffs",
    "sup_norm_estimate",
]

# Absolute slack when testing membership of the closed disk / circle.
BOUNDARY_TOL = 1e-12
# Reduced targets drifting this far past the circle mean genuinely bad data.
OVERSHOOT_TOL = 1e-9
# When a reduced target lands on the circle the remaining data must agree
# with the forced constant to this accuracy.
CONSTANT_MATCH_TOL = 1e-8
# Below this Pick-matrix eigenvalue floor results are flagged low confidence.
LOW_CONFIDENCE_EIG = 1e-6


def _check_closed_disk(z, label: str):
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) > 1.0 + BOUNDARY_TOL):
        worst = np.max(np.abs(z))
        raise DomainError(f"{label} must lie in the closed unit disk, got modulus {worst:.6g}")
    return z


def _check_open_disk(z: complex, label: str) -> complex:
    z = complex(z)
    if abs(z) >= 1.0:
        raise DomainError(f"{label} must lie strictly inside the unit disk, got modulus {abs(z):.6g}")
    return z


def mobius(lam: complex, z):
    """Elementary disk automorphism (z - lam) / (1 - conj(lam) z).

    Vanishes at lam, maps the open disk onto itself and the circle onto the
    circle.  Accepts a scalar or an ndarray for z (closed disk).
    """
    lam = _check_open_disk(lam, "Möbius parameter")
    z = _check_closed_disk(z, "Möbius argument")
    out = (z - lam) / (1.0 - np.conj(lam) * z)
    return complex(out) if out.ndim == 0 else out


def mobius_inverse(lam: complex, z):
    """The inverse automorphism, i.e. ``mobius(-lam, z)``."""
    return mobius(-complex(lam), z)


@dataclass(frozen=True)
class SchurFunction:
    """Chain representation of a disk-to-closed-disk analytic function.

    ``steps`` holds (node, value) reduction records in the order they were
    consumed; ``tail`` is the terminal constant (closed disk).  Instances are
    immutable and safe to evaluate concurrently.  ``low_confidence`` marks
    solutions extracted from a nearly singular Pick matrix; verification
    tolerances should be widened for those.
    """

    steps: tuple[tuple[complex, complex], ...]
    tail: complex
    low_confidence: bool = False

    def __call__(self, z):
        return evaluate(self, z)


def evaluate(f: SchurFunction, z):
    """Evaluate by unwinding the reduction chain (scalar or ndarray input).

    Innermost value is the tail constant; each step wraps it as
    phi_inverse(value_j, blaschke(node_j, z) * inner).  All intermediate
    moduli stay at most 1 for |z| <= 1.
    """
    z = _check_closed_disk(z, "evaluation point")
    scalar = z.ndim == 0
    g = np.full_like(z, complex(f.tail)) if not scalar else complex(f.tail)
    for node, val in reversed(f.steps):
        blaschke = (z - node) / (1.0 - np.conj(node) * z)
        x = blaschke * g
        g = (x + val) / (1.0 + np.conj(val) * x)
    return complex(g) if scalar else g


def np_solve(nodes, values, tol: float = 1e-9) -> SchurFunction:
    """Solve the classical Nevanlinna-Pick problem by Schur reduction.

    Finds F with |F| <= 1 on the disk and F(nodes[i]) = values[i].  The
    associated Pick matrix [(1 - v_i conj(v_j)) / (1 - z_i conj(z_j))] is
    checked for positive semidefiniteness (relative tolerance ``tol``)
    before any reduction; failure raises ``Infeasible``.

    Each step consumes one node: with current target u_j strictly inside the
    disk, remaining targets become mobius(u_j, u_i) / blaschke_{z_j}(z_i).
    A target on the circle forces the constant solution, which is accepted
    only when all remaining targets agree with it.  The free parameter of
    the final step is fixed to 0, which makes the solver deterministic.
    """
    nodes = [complex(z) for z in nodes]
    values = [complex(v) for v in values]
    if len(nodes) != len(values):
        raise InvalidProblem(f"{len(nodes)} nodes vs {len(values)} values")
    if len(set(nodes)) != len(nodes):
        raise InvalidProblem("interpolation nodes must be distinct")
    for z in nodes:
        _check_open_disk(z, "interpolation node")
    for v in values:
        if abs(v) > 1.0 + BOUNDARY_TOL:
            raise DomainError(f"target modulus {abs(v):.6g} exceeds 1")
    n = len(nodes)
    if n == 0:
        return SchurFunction(steps=(), tail=0j)

    zs = np.array(nodes)
    vs = np.array(values)
    pick = (1.0 - np.outer(vs, vs.conj())) / (1.0 - np.outer(zs, zs.conj()))
    pick = 0.5 * (pick + pick.conj().T)
    min_eig = float(np.linalg.eigvalsh(pick)[0])
    scale = max(1.0, float(np.max(np.sum(np.abs(pick), axis=1))))
    if min_eig < -tol * scale:
        raise Infeasible(f"Pick matrix is not positive semidefinite (min eigenvalue {min_eig:.3e})")
    low_confidence = min_eig < LOW_CONFIDENCE_EIG

    steps: list[tuple[complex, complex]] = []
    targets = list(values)
    tail = 0j
    for j in range(n):
        u = targets[j]
        mag = abs(u)
        if mag > 1.0 + OVERSHOOT_TOL:
            raise Infeasible(
                f"reduced target left the closed disk (|u| = {mag:.6g}); data is numerically singular"
            )
        if mag >= 1.0 - BOUNDARY_TOL:
            u = u / mag  # project onto the circle; solution is the constant u
            for i in range(j + 1, n):
                if abs(targets[i] - u) > CONSTANT_MATCH_TOL:
                    raise Infeasible(
                        "a boundary target forces a constant solution but other targets disagree"
                    )
            tail = u
            break
        steps.append((nodes[j], complex(u)))
        zj = nodes[j]
        for i in range(j + 1, n):
            blaschke = (nodes[i] - zj) / (1.0 - zj.conjugate() * nodes[i])
            targets[i] = complex((targets[i] - u) / (1.0 - u.conjugate() * targets[i]) / blaschke)
    return SchurFunction(steps=tuple(steps), tail=tail, low_confidence=low_confidence)


@dataclass(frozen=True)
class TaylorReport:
    """Taylor coefficients c_0 ... c_B recovered from circle samples."""

    radius: float
    samples: int
    coeffs: tuple[complex, ...]


def taylor_coeffs(f, count: int, radius: float = 0.5, samples: int = 1024) -> TaylorReport:
    """Coefficients of f at 0 via the discretized Cauchy formula.

    c_j = (1/N) sum_t f(r e^{2 pi i t / N}) r^{-j} e^{-2 pi i j t / N}.

    Requires 0 < radius < 1 and ``samples`` a power of two with
    samples >= 4 * count.  For f bounded by 1 the aliasing error in c_j is
    at most r^N / (1 - r^N), negligible at the defaults; the practical
    accuracy limit is roundoff amplified by the r^(-j) factor, so very high
    indices need a radius closer to 1.
    """
    if count < 0:
        raise InvalidConfig(f"coefficient count must be nonnegative, got {count}")
    if not 0.0 < radius < 1.0:
        raise InvalidConfig(f"sampling radius must lie in (0, 1), got {radius}")
    if samples < max(1, 4 * count) or samples & (samples - 1):
        raise InvalidConfig(
            f"samples must be a power of two with samples >= 4 * count, got {samples}"
        )
    t = np.arange(samples)
    ring = radius * np.exp(2j * np.pi * t / samples)
    vals = _sample(f, ring)
    spectrum = np.fft.fft(vals)[: count + 1]
    coeffs = spectrum / (samples * radius ** np.arange(count + 1))
    return TaylorReport(radius=radius, samples=samples, coeffs=tuple(complex(c) for c in coeffs))


def sup_norm_estimate(f, radius: float = 0.999, samples: int = 4096) -> float:
    """Max |f| over ``samples`` equispaced points on the circle |z| = radius.

    By the maximum principle this grows with the radius for analytic f, so
    radius 0.999 with 4096 samples is the standard norm check.
    """
    if not 0.0 < radius < 1.0:
        raise InvalidConfig(f"sampling radius must lie in (0, 1), got {radius}")
    if samples < 1:
        raise InvalidConfig(f"need at least one sample, got {samples}")
    t = np.arange(samples)
    ring = radius * np.exp(2j * np.pi * t / samples)
    return float(np.max(np.abs(_sample(f, ring))))


def _sample(f, points: np.ndarray) -> np.ndarray:
    """Evaluate a callable on an array, falling back to a scalar loop."""
    try:
        vals = np.asarray(f(points), dtype=complex)
        if vals.shape == points.shape:
            return vals
    except (TypeError, ValueError):
        pass
    return np.array([complex(f(z)) for z in points])
