"""Shared helpers for the test suite."""

import json
import subprocess
import sys

import numpy as np
import pytest

# Constraint sets exercised throughout: the regression set from worked
# examples plus one scaled (infinite) set.
FIXTURE_K_JSON = [
    {"K": [1]},
    {"K": [1, 2]},
    {"K": [1, 2, 3]},
    {"K": [1, 3]},
    {"K": [1, 2, 4]},
    {"d": 2, "gaps": [1]},
]


def fixture_kspecs():
    from cpick import KSpec

    return [KSpec.from_json(obj) for obj in FIXTURE_K_JSON]


def disk_point(rng, radius):
    """Uniform sample from the disk of the given radius."""
    r = radius * np.sqrt(rng.uniform())
    return complex(r * np.exp(2j * np.pi * rng.uniform()))


def blaschke_product(factors, scale=0.9):
    """Scaled finite Blaschke product, vectorized over z."""

    def f(z):
        z = np.asarray(z, dtype=complex)
        out = np.full_like(z, scale)
        for a in factors:
            out = out * (z - a) / (1.0 - np.conjugate(a) * z)
        return out

    return f


@pytest.fixture
def run_cli(tmp_path):
    """Invoke the CLI in a subprocess; returns (exit_code, stdout, stderr)."""

    def run(*argv, env=None):
        proc = subprocess.run(
            [sys.executable, "-m", "cpick", *argv],
            capture_output=True,
            text=True,
            cwd=tmp_path,
            env=env,
        )
        return proc.returncode, proc.stdout, proc.stderr

    return run


@pytest.fixture
def write_json(tmp_path):
    def write(name, payload):
        path = tmp_path / name
        path.write_text(json.dumps(payload))
        return str(path)

    return write
