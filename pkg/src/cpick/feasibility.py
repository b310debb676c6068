"""Search for a Möbius parameter making the constrained Pick matrix PSD.

Feasibility of a constrained interpolation problem is an existential
statement over a disk parameter lam.  When some node sits at the origin the
parameter is pinned exactly (any interpolant satisfies f(0) = target), so a
single evaluation settles the question up to the PSD tolerance.  Otherwise
the feasible region has no known description and the search is heuristic:
a coarse polar grid followed by a derivative-free simplex refinement of the
smallest eigenvalue.  A positive answer carries a verifiable witness; a
negative answer is evidence only, except in the pinned case.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvalidConfig, InvalidExponent, InvalidProblem
from .pickmat import constrained_pick, psd_check

__all__ = [
    "Problem",
    "SearchConfig",
    "FeasibilityResult",
    "min_eig_objective",
    "find_lambda",
]

DEFAULT_RADII = (0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99)
# Witnesses are kept strictly inside the disk; the criterion requires it.
LAMBDA_CLAMP = 0.999
MAX_POINTS = 16


@dataclass(frozen=True)
class Problem:
    """Distinct interpolation nodes and targets, all strictly inside the disk."""

    nodes: tuple[complex, ...]
    targets: tuple[complex, ...]

    def __post_init__(self):
        nodes = tuple(complex(z) for z in self.nodes)
        targets = tuple(complex(w) for w in self.targets)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "targets", targets)
        if len(nodes) != len(targets):
            raise InvalidProblem(f"{len(nodes)} nodes vs {len(targets)} targets")
        if not 1 <= len(nodes) <= MAX_POINTS:
            raise InvalidProblem(f"problem size must lie in [1, {MAX_POINTS}], got {len(nodes)}")
        if len(set(nodes)) != len(nodes):
            raise InvalidProblem("nodes must be distinct")
        if any(abs(z) >= 1.0 for z in nodes):
            raise DomainError("nodes must lie strictly inside the unit disk")
        if any(abs(w) >= 1.0 for w in targets):
            raise DomainError("targets must lie strictly inside the unit disk")

    @property
    def n(self) -> int:
        return len(self.nodes)


@dataclass(frozen=True)
class SearchConfig:
    """Grid and refinement parameters for the parameter search."""

    radii: tuple[float, ...] = DEFAULT_RADII
    angles: int = 64
    refine_iters: int = 200
    tol: float = 1e-8

    def __post_init__(self):
        radii = tuple(float(r) for r in self.radii)
        object.__setattr__(self, "radii", radii)
        if not radii or any(not 0.0 <= r < 1.0 for r in radii):
            raise InvalidConfig(f"radii must be nonempty and lie in [0, 1), got {radii}")
        if self.angles < 1:
            raise InvalidConfig(f"need at least one angle, got {self.angles}")
        if self.refine_iters < 0:
            raise InvalidConfig(f"refinement iterations must be nonnegative, got {self.refine_iters}")
        if self.tol < 0:
            raise InvalidConfig(f"tolerance must be nonnegative, got {self.tol}")

    def to_json(self) -> dict:
        return {
            "radii": list(self.radii),
            "angles": self.angles,
            "refine_iters": self.refine_iters,
            "tol": self.tol,
        }

    @staticmethod
    def from_json(obj: dict) -> "SearchConfig":
        if not isinstance(obj, dict):
            raise InvalidConfig(f"search config must be a JSON object, got {type(obj).__name__}")
        known = {"radii", "angles", "refine_iters", "tol"}
        unknown = set(obj) - known
        if unknown:
            raise InvalidConfig(f"unknown search config keys: {sorted(unknown)}")
        kwargs = {}
        if "radii" in obj:
            kwargs["radii"] = tuple(float(r) for r in obj["radii"])
        for key in ("angles", "refine_iters"):
            if key in obj:
                kwargs[key] = int(obj[key])
        if "tol" in obj:
            kwargs["tol"] = float(obj["tol"])
        return SearchConfig(**kwargs)


@dataclass(frozen=True)
class FeasibilityResult:
    """Outcome of a parameter search.

    ``lambda_`` is present exactly when ``feasible`` and then re-verifies
    under ``psd_check`` at the search tolerance.  ``pinned`` marks the exact
    single-point search forced by a node at the origin; only then is a
    negative verdict certified rather than heuristic.
    """

    feasible: bool
    lambda_: complex | None
    best_min_eigenvalue: float
    evaluations: int
    pinned: bool


def min_eig_objective(lam: complex, problem: Problem, E: int, d: int) -> float:
    """Smallest eigenvalue of the constrained Pick matrix at ``lam``.

    When a node sits at the origin and ``lam`` equals its target exactly,
    that row and column vanish identically and are dropped, so the value
    reported is the informative eigenvalue of the reduced block (0.0 if
    nothing remains).  Continuous in lam on the open disk.
    """
    lam = complex(lam)
    keep = [
        i
        for i, z in enumerate(problem.nodes)
        if not (z == 0 and problem.targets[i] == lam)
    ]
    if not keep:
        return 0.0
    nodes = [problem.nodes[i] for i in keep]
    targets = [problem.targets[i] for i in keep]
    m = constrained_pick(nodes, targets, lam, E, d)
    return float(np.linalg.eigvalsh(m.entries)[0])


def _objective_factory(problem: Problem, E: int, d: int):
    """Precompute the lam-independent matrix blocks for the search hot loop.

    Agrees with ``min_eig_objective`` to roundoff; only the Möbius images of
    the targets depend on lam, so the outer products of the node powers and
    the denominator are cached across the whole grid.
    """
    if d < 1 or E < 1 or E % d != 0:
        raise InvalidExponent(f"exponents must be positive with d | E, got E={E}, d={d}")
    z = np.array(problem.nodes)
    if len(set((z**d).tolist())) != len(z):
        raise InvalidProblem("nodes and their d-th powers must both be distinct")
    w = np.array(problem.targets)
    ze = z**E
    powers = np.outer(ze, ze.conj())
    den = 1.0 - np.outer(z, z.conj()) ** d

    def objective(lam: complex) -> float:
        phi = (w - lam) / (1.0 - np.conjugate(lam) * w)
        m = (powers - np.outer(phi, phi.conj())) / den
        m = 0.5 * (m + m.conj().T)
        return float(np.linalg.eigvalsh(m)[0])

    return objective


def find_lambda(problem: Problem, E: int, d: int, cfg: SearchConfig | None = None) -> FeasibilityResult:
    """Search the disk for a parameter with a PSD constrained Pick matrix.

    A node at the origin pins the parameter to its target (at most one node
    can be zero), collapsing the search to a single exact evaluation.
    Otherwise all grid candidates radius x angle are scored by the
    smallest-eigenvalue objective and the best three start a
    reflection/contraction simplex capped at ``cfg.refine_iters`` iterations
    with trial points clamped to modulus 0.999.  Fully deterministic for a
    fixed config; grid ties resolve to the smallest (radius index, angle
    index), and any returned witness re-verifies under ``psd_check``.
    """
    cfg = cfg or SearchConfig()
    zero_idx = [i for i, z in enumerate(problem.nodes) if z == 0]
    if zero_idx:
        lam = problem.targets[zero_idx[0]]
        best = min_eig_objective(lam, problem, E, d)
        verdict = psd_check(constrained_pick(problem.nodes, problem.targets, lam, E, d), cfg.tol)
        return FeasibilityResult(
            feasible=verdict.is_psd,
            lambda_=lam if verdict.is_psd else None,
            best_min_eigenvalue=best,
            evaluations=1,
            pinned=True,
        )

    evaluations = 0
    raw_objective = _objective_factory(problem, E, d)

    def objective(lam: complex) -> float:
        nonlocal evaluations
        evaluations += 1
        return raw_objective(lam)

    scored: list[tuple[float, int, int, complex]] = []
    seen: set[complex] = set()
    for ri, r in enumerate(cfg.radii):
        for ai in range(cfg.angles):
            lam = complex(r * np.exp(2j * np.pi * ai / cfg.angles))
            if lam in seen:
                continue
            seen.add(lam)
            scored.append((objective(lam), ri, ai, lam))
    scored.sort(key=lambda rec: (-rec[0], rec[1], rec[2]))

    best_obj, _, _, best_lam = scored[0]
    simplex = [np.array([rec[3].real, rec[3].imag]) for rec in scored[:3]]
    while len(simplex) < 3:  # degenerate user grids: pad around the best point
        simplex.append(simplex[0] + 0.01 * np.eye(2)[len(simplex) - 1])

    def clamp(x: np.ndarray) -> np.ndarray:
        r = float(np.hypot(x[0], x[1]))
        return x * (LAMBDA_CLAMP / r) if r > LAMBDA_CLAMP else x

    def score(x: np.ndarray) -> float:
        nonlocal best_obj, best_lam
        lam = complex(x[0], x[1])
        val = objective(lam)
        if val > best_obj:
            best_obj, best_lam = val, lam
        return val

    simplex = [clamp(x) for x in simplex]
    vals = [score(x) for x in simplex]
    for _ in range(cfg.refine_iters):
        order = sorted(range(3), key=lambda i: -vals[i])
        simplex = [simplex[i] for i in order]
        vals = [vals[i] for i in order]
        if max(np.max(np.abs(simplex[0] - simplex[i])) for i in (1, 2)) < 1e-12:
            break
        centroid = 0.5 * (simplex[0] + simplex[1])
        reflected = clamp(centroid + (centroid - simplex[2]))
        f_r = score(reflected)
        if f_r > vals[0]:
            expanded = clamp(centroid + 2.0 * (centroid - simplex[2]))
            f_e = score(expanded)
            if f_e > f_r:
                simplex[2], vals[2] = expanded, f_e
            else:
                simplex[2], vals[2] = reflected, f_r
        elif f_r > vals[1]:
            simplex[2], vals[2] = reflected, f_r
        else:
            contracted = clamp(centroid + 0.5 * (simplex[2] - centroid))
            f_c = score(contracted)
            if f_c > vals[2]:
                simplex[2], vals[2] = contracted, f_c
            else:
                for i in (1, 2):
                    simplex[i] = clamp(simplex[0] + 0.5 * (simplex[i] - simplex[0]))
                    vals[i] = score(simplex[i])

    verdict = psd_check(constrained_pick(problem.nodes, problem.targets, best_lam, E, d), cfg.tol)
    return FeasibilityResult(
        feasible=verdict.is_psd,
        lambda_=best_lam if verdict.is_psd else None,
        best_min_eigenvalue=best_obj,
        evaluations=evaluations,
        pinned=False,
    )
