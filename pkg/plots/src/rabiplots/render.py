"""The five figure kinds rendered from rabipat CSV columns.

House style: totals heavy black, pattern components thin red, green and
blue for patterns 1, 2 and 3; x-axis in g/g_c for sweep-based kinds and
Fock index m for wavefunction slices.
"""

from __future__ import annotations

import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .reader import InputError, load_csv

PATTERN_COLORS = ("red", "green", "blue")
TOTAL_STYLE = dict(color="black", linewidth=1.8)
THIN = 0.9

# wavefunction components are normalized by the emitted energy only when
# it is safely away from zero
ENERGY_FLOOR = 1e-8

KINDS = ("levels", "transition", "patterns", "wavefunction", "decomposition")


def _per_level(data: dict[str, np.ndarray]):
    for level in np.unique(data["level"]):
        mask = data["level"] == level
        yield int(level), mask


def _pattern_sum(data, stem: str, mask) -> np.ndarray:
    return sum(data[f"{stem}{n}"][mask] for n in (1, 2, 3))


def render_levels(data: dict[str, np.ndarray], output: Path) -> None:
    """Totals vs pattern sums for energies, photon number and spin flip."""
    fig, axes = plt.subplots(3, 1, figsize=(7, 10), sharex=True)
    panels = (
        ("energy", "e_pat", "energy"),
        ("photon", "photon_pat", r"$\langle a^\dagger a\rangle$"),
        ("sigmax", "sigmax_pat", r"$\langle \sigma_x\rangle$"),
    )
    for ax, (total_col, pat_stem, label) in zip(axes, panels):
        for level, mask in _per_level(data):
            x = data["g_over_gc"][mask]
            ax.plot(x, _pattern_sum(data, pat_stem, mask),
                    color="black", linewidth=1.2)
            stride = max(1, len(x) // 20)
            ax.plot(x[::stride], data[total_col][mask][::stride], "o",
                    markersize=4, markerfacecolor="none", color="black",
                    label=f"level {level}" if total_col == "energy" else None)
        ax.set_ylabel(label)
        ax.grid(alpha=0.2)
    axes[0].set_title("pattern sums (lines) vs exact diagonalization (symbols)")
    axes[-1].set_xlabel(r"$g/g_c$")
    fig.tight_layout()
    fig.savefig(output)
    plt.close(fig)


def render_transition(data: dict[str, np.ndarray], output: Path) -> None:
    """Energies with pattern components, and their second derivatives."""
    levels = [level for level, _ in _per_level(data)][:2]
    fig, axes = plt.subplots(len(levels), 2, figsize=(10, 4 * len(levels)),
                             squeeze=False, sharex=True)
    for row, level in enumerate(levels):
        mask = data["level"] == level
        x = data["g_over_gc"][mask]
        ax = axes[row][0]
        ax.plot(x, data["energy"][mask], **TOTAL_STYLE, label="total")
        for n, color in enumerate(PATTERN_COLORS, start=1):
            ax.plot(x, data[f"e_pat{n}"][mask], color=color, linewidth=THIN,
                    label=f"pattern {n}")
        ax.set_ylabel(f"$E_{{{level}}}$ and components")
        ax.grid(alpha=0.2)
        if row == 0:
            ax.legend(fontsize=8)
        ax2 = axes[row][1]
        d2 = data["d2e"][mask]
        keep = ~np.isnan(d2)
        ax2.plot(x[keep], d2[keep], **TOTAL_STYLE)
        ax2.set_ylabel(f"$d^2E_{{{level}}}/dg^2$")
        ax2.grid(alpha=0.2)
    for ax in axes[-1]:
        ax.set_xlabel(r"$g/g_c$")
    fig.tight_layout()
    fig.savefig(output)
    plt.close(fig)


COMPONENT_STYLES = ("-", "--", "-.")  # coefficients of i sigma_y, sigma_z, a
COMPONENT_LABELS = (r"$i\sigma_y$", r"$\sigma_z$", r"$a$")


def render_patterns(data: dict[str, np.ndarray], output: Path) -> None:
    """Eigenvalues with derivatives (top) and row components (bottom)."""
    x = data["g_over_gc"]
    fig, axes = plt.subplots(2, 3, figsize=(12, 7), sharex=True)
    for n, color in enumerate(PATTERN_COLORS, start=1):
        ax = axes[0][n - 1]
        ax.plot(x, data[f"lambda{n}"], color=color, linewidth=1.6,
                label=rf"$\lambda_{n}$")
        ax.plot(x, data[f"dlam{n}"], color=color, linewidth=THIN, linestyle="--",
                label=rf"$d\lambda_{n}/dg$")
        ax.plot(x, data[f"d2lam{n}"], color=color, linewidth=THIN, linestyle=":",
                label=rf"$d^2\lambda_{n}/dg^2$")
        ax.set_title(f"pattern {n}")
        ax.legend(fontsize=8)
        ax.grid(alpha=0.2)
        ax_rows = axes[1][n - 1]
        for m, (style, label) in enumerate(zip(COMPONENT_STYLES, COMPONENT_LABELS), start=1):
            ax_rows.plot(x, data[f"u{n}{m}"], color=color, linewidth=THIN,
                         linestyle=style, label=label)
        ax_rows.set_ylabel(f"$u_{{{n},m}}$")
        ax_rows.set_xlabel(r"$g/g_c$")
        ax_rows.legend(fontsize=8)
        ax_rows.grid(alpha=0.2)
    fig.tight_layout()
    fig.savefig(output)
    plt.close(fig)


def render_wavefunction(data: dict[str, np.ndarray], output: Path) -> None:
    """Panel grid of up-spin amplitudes with normalized pattern components."""
    ratios = sorted(set(np.round(data["g_over_gc"], 12)))
    levels = sorted(set(int(v) for v in data["level"]))
    fig, axes = plt.subplots(len(levels), len(ratios),
                             figsize=(4 * len(ratios), 3.2 * len(levels)),
                             squeeze=False)
    for row, level in enumerate(levels):
        for col, ratio in enumerate(ratios):
            mask = (data["level"] == level) & (np.round(data["g_over_gc"], 12) == ratio)
            order = np.argsort(data["m"][mask])
            m = data["m"][mask][order]
            ax = axes[row][col]
            ax.plot(m, data["psi_up"][mask][order], **TOTAL_STYLE)
            energy = float(data["energy"][mask][0])
            if abs(energy) > ENERGY_FLOOR:
                for n, color in enumerate(PATTERN_COLORS, start=1):
                    ax.plot(m, data[f"w{n}_up"][mask][order] / energy,
                            color=color, linewidth=THIN)
            else:
                print(
                    f"warning: |energy| = {abs(energy):.2e} <= {ENERGY_FLOOR:g} at "
                    f"g/gc = {ratio}, level {level}; pattern components omitted",
                    file=sys.stderr,
                )
            ax.set_title(f"$g/g_c$ = {ratio}, level {level}", fontsize=9)
            if row == len(levels) - 1:
                ax.set_xlabel("$m$")
            if col == 0:
                ax.set_ylabel(r"$\psi(\uparrow, m)$")
            ax.grid(alpha=0.2)
    fig.tight_layout()
    fig.savefig(output)
    plt.close(fig)


def render_decomposition(data: dict[str, np.ndarray], output: Path) -> None:
    """Ground-state photon number and spin flip with pattern components."""
    mask = data["level"] == np.min(data["level"])
    x = data["g_over_gc"][mask]
    fig, axes = plt.subplots(2, 1, figsize=(7, 7), sharex=True)
    for ax, (total_col, pat_stem, label) in zip(
        axes,
        (
            ("photon", "photon_pat", r"$\langle a^\dagger a\rangle$"),
            ("sigmax", "sigmax_pat", r"$\langle \sigma_x\rangle$"),
        ),
    ):
        ax.plot(x, data[total_col][mask], **TOTAL_STYLE, label="total")
        for n, color in enumerate(PATTERN_COLORS, start=1):
            ax.plot(x, data[f"{pat_stem}{n}"][mask], color=color,
                    linewidth=THIN, label=f"pattern {n}")
        ax.set_ylabel(label)
        ax.grid(alpha=0.2)
    axes[0].legend(fontsize=8)
    axes[-1].set_xlabel(r"$g/g_c$")
    fig.tight_layout()
    fig.savefig(output)
    plt.close(fig)


def render(kind: str, input_path: Path, patterns_path: Path | None, output: Path) -> None:
    """Validate inputs for the kind and write the figure file."""
    if kind not in KINDS:
        raise InputError(f"unknown plot kind {kind!r}; expected one of {', '.join(KINDS)}")
    if kind == "patterns":
        source = patterns_path if patterns_path is not None else input_path
        data = load_csv(source, "patterns")
        render_patterns(data, output)
    elif kind == "wavefunction":
        data = load_csv(input_path, "wavefunction")
        render_wavefunction(data, output)
    else:
        data = load_csv(input_path, "sweep")
        {
            "levels": render_levels,
            "transition": render_transition,
            "decomposition": render_decomposition,
        }[kind](data, output)
