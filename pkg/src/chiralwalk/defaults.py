"""Central numeric defaults: every tolerance and grid constant lives here."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class NumericDefaults:
    # validation tolerances
    hermiticity: float = 1e-12        # max |M - M^dag| accepted by eig_hermitian
    self_edge: float = 1e-12          # shifted diagonal above this counts as a self-edge
    uniform_magnitude: float = 1e-12  # edge-|h| spread accepted by the splitting circuit

    # contract tolerances
    reconstruction: float = 1e-10     # ||V D V^dag - H||_max, scaled
    unitarity: float = 1e-10          # ||U^dag U - I||_max
    column_sum: float = 1e-9          # probability column normalization
    pts: float = 1e-9                 # sampled probability-symmetry verdict
    gauge: float = 1e-12              # gauge-invariance of probability tables
    exact: float = 1e-12              # "exact up to rounding" operator identities

    # grids and iteration limits
    pts_samples: int = 64             # default time-sample count for pts_numeric
    scan_points: int = 4096           # coarse grid for max_transfer
    refine_dt: float = 1e-8           # golden-section bracket width target
    qubit_space_max: int = 14         # dense statevector limit (2^n amplitudes)


DEFAULTS = NumericDefaults()
