"""rabiplots: pure CSV-to-figure renderer for rabipat sweep output.

Reads the documented sweep.csv / patterns.csv / wavefunction.csv
schemas and renders the five standard figure kinds. Never recomputes
physics: every plotted value comes from the CSV (the only arithmetic is
summing the three pattern columns for overlay comparisons and dividing
wavefunction components by the emitted energy).
"""

__version__ = "0.1.0"

from .reader import InputError, load_csv
from .render import KINDS, render

__all__ = ["InputError", "KINDS", "load_csv", "render", "__version__"]
