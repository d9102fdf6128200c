"""Deterministic CSV and manifest emission.

All numbers are written with 17 significant digits ('%.17g'), '.'
decimal separator and '\\n' newlines, so identical runs produce
byte-identical files and doubles round-trip exactly. NaN cells (the
derivative endpoints) are written as 'nan'.
"""

from __future__ import annotations

import hashlib
import json
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, Sequence

from . import __version__
from .observables import WavefunctionSlice
from .sweep import SweepRecord

SWEEP_HEADER = (
    "g,g_over_gc,level,energy,e_pat1,e_pat2,e_pat3,"
    "photon,photon_pat1,photon_pat2,photon_pat3,"
    "sigmax,sigmax_pat1,sigmax_pat2,sigmax_pat3,d2e"
)
PATTERNS_HEADER = (
    "g,g_over_gc,lambda1,lambda2,lambda3,"
    "u11,u12,u13,u21,u22,u23,u31,u32,u33,"
    "dlam1,dlam2,dlam3,d2lam1,d2lam2,d2lam3"
)
WAVEFUNCTION_HEADER = "g_over_gc,level,m,psi_up,w1_up,w2_up,w3_up,energy"


def fmt(x: float) -> str:
    return f"{x:.17g}"


def _write_lines(path: Path, lines: Iterable[str]) -> None:
    with open(path, "w", newline="") as stream:
        for line in lines:
            stream.write(line)
            stream.write("\n")


def write_sweep_csv(records: Sequence[SweepRecord], path: Path) -> None:
    """One row per (grid point, level)."""
    lines = [SWEEP_HEADER]
    for rec in records:
        for level, obs in enumerate(rec.observables):
            cells = [
                fmt(rec.g),
                fmt(rec.g_over_gc),
                str(level),
                fmt(obs.energy),
                *[fmt(v) for v in obs.pattern_energies],
                fmt(obs.photon_total),
                *[fmt(v) for v in obs.photon_by_pattern],
                fmt(obs.sigma_x_total),
                *[fmt(v) for v in obs.sigma_x_by_pattern],
                fmt(rec.d2_energies[level]),
            ]
            lines.append(",".join(cells))
    _write_lines(path, lines)


def write_patterns_csv(records: Sequence[SweepRecord], path: Path) -> None:
    """One row per grid point: eigenvalues, rows and derivatives of the 3x3 system."""
    lines = [PATTERNS_HEADER]
    for rec in records:
        cells = [fmt(rec.g), fmt(rec.g_over_gc)]
        cells += [fmt(v) for v in rec.basis.eigenvalues]
        cells += [fmt(v) for v in rec.basis.eigenvectors.ravel()]
        cells += [fmt(v) for v in rec.derivatives.dlambda]
        cells += [fmt(v) for v in rec.derivatives.d2lambda]
        lines.append(",".join(cells))
    _write_lines(path, lines)


def write_wavefunction_csv(
    slices: Sequence[WavefunctionSlice], gc: float, path: Path
) -> None:
    """One row per (slice, photon index m) over the up-spin branch."""
    lines = [WAVEFUNCTION_HEADER]
    for sl in slices:
        ratio = sl.g_value / gc
        for m in range(len(sl.amplitudes)):
            cells = [
                fmt(ratio),
                str(sl.level),
                str(m),
                fmt(sl.amplitudes[m]),
                fmt(sl.pattern_components[0, m]),
                fmt(sl.pattern_components[1, m]),
                fmt(sl.pattern_components[2, m]),
                fmt(sl.energy),
            ]
            lines.append(",".join(cells))
    _write_lines(path, lines)


def sha256_of(path: Path) -> str:
    digest = hashlib.sha256()
    digest.update(path.read_bytes())
    return digest.hexdigest()


def write_manifest(
    out_dir: Path, command: str, config: dict, n_max: int, data_files: Sequence[str]
) -> Path:
    """manifest.json referencing every emitted data file with checksums."""
    files = {
        name: {
            "sha256": sha256_of(out_dir / name),
            "size_bytes": (out_dir / name).stat().st_size,
        }
        for name in data_files
    }
    manifest = {
        "tool": "rabipat",
        "version": __version__,
        "command": command,
        "generated_at": datetime.now(timezone.utc).isoformat(),
        "config": config,
        "truncation_n_max": n_max,
        "files": files,
    }
    path = out_dir / "manifest.json"
    with open(path, "w", newline="") as stream:
        json.dump(manifest, stream, indent=2, sort_keys=True)
        stream.write("\n")
    return path
