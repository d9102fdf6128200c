"""CSV loading with header validation for the rabipat wire format."""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

SWEEP_COLUMNS = (
    "g", "g_over_gc", "level", "energy",
    "e_pat1", "e_pat2", "e_pat3",
    "photon", "photon_pat1", "photon_pat2", "photon_pat3",
    "sigmax", "sigmax_pat1", "sigmax_pat2", "sigmax_pat3",
    "d2e",
)
PATTERNS_COLUMNS = (
    "g", "g_over_gc",
    "lambda1", "lambda2", "lambda3",
    "u11", "u12", "u13", "u21", "u22", "u23", "u31", "u32", "u33",
    "dlam1", "dlam2", "dlam3", "d2lam1", "d2lam2", "d2lam3",
)
WAVEFUNCTION_COLUMNS = (
    "g_over_gc", "level", "m", "psi_up", "w1_up", "w2_up", "w3_up", "energy",
)

SCHEMAS = {
    "sweep": SWEEP_COLUMNS,
    "patterns": PATTERNS_COLUMNS,
    "wavefunction": WAVEFUNCTION_COLUMNS,
}

INTEGER_COLUMNS = {"level", "m"}


class InputError(Exception):
    """Input CSV missing, empty or not matching the documented header."""


def load_csv(path: Path, schema: str) -> dict[str, np.ndarray]:
    """Load a rabipat CSV as column arrays, validating the header."""
    required = SCHEMAS[schema]
    path = Path(path)
    if not path.exists():
        raise InputError(f"input file not found: {path}")
    with open(path, newline="") as stream:
        reader = csv.DictReader(stream)
        if reader.fieldnames is None:
            raise InputError(f"empty CSV (no header): {path}")
        for column in required:
            if column not in reader.fieldnames:
                raise InputError(f"missing column '{column}' in {path}")
        rows = list(reader)
    if not rows:
        raise InputError(f"no data rows in {path}")
    out: dict[str, np.ndarray] = {}
    for column in required:
        if column in INTEGER_COLUMNS:
            out[column] = np.array([int(row[column]) for row in rows])
        else:
            out[column] = np.array([float(row[column]) for row in rows])
    return out
