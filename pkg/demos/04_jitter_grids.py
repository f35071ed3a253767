"""Jitter models and admissible grids.

Unit-period grids never separate by more than about one sample period, so they
sit below the frame constant. Dilating the grid is how the energy bounds are
brought into play.
"""

from jitter_energy import FRAME_CONSTANT, JitterSpec, generate_grid, min_plus_separation
from jitter_energy.jitter import admissible_scaled_grid, validate_spacing

specs = [
    JitterSpec("none", 6),
    JitterSpec("sinusoidal", 6, amplitude=0.2, frequency=0.25),
    JitterSpec("uniform", 6, amplitude=0.1, seed=42),
    JitterSpec("gaussian", 6, amplitude=0.2, seed=42),
]
for spec in specs:
    grid = generate_grid(spec)
    gamma = min_plus_separation(grid)
    print(f"{spec.kind:10s} {grid.instants.round(4)} gamma={gamma:.4f} "
          f"admissible={validate_spacing(grid, FRAME_CONSTANT)} resampled={grid.resampled}")

grid = admissible_scaled_grid(specs[1], 1.6)
print("dilated sinusoidal grid:", grid.instants, "gamma", min_plus_separation(grid))
