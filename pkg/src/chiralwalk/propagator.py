"""Exact evolution U = exp(-iHt) via Hermitian eigendecomposition.

The spectrum is computed once per Hamiltonian and reused across every time
sample, so a sweep costs one O(N^3) factorization plus O(N^2) per grid
point.  Probabilities follow the column convention ``p[to, from]``: entry
``|U[to, from]|^2`` is the probability of the transition ``from -> to``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .defaults import DEFAULTS
from .graph import WalkHamiltonian, to_dense


def _freeze(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues (ascending) and orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def n(self) -> int:
        return self.eigenvalues.shape[0]

    @property
    def spectral_norm(self) -> float:
        return float(np.abs(self.eigenvalues).max()) if self.n else 0.0

    def propagator_matrix(self, t: float) -> np.ndarray:
        phases = np.exp(-1j * self.eigenvalues * t)
        return (self.eigenvectors * phases) @ self.eigenvectors.conj().T

    def propagator_batch(self, times: np.ndarray) -> np.ndarray:
        """Stack of unitaries, shape (len(times), n, n)."""
        phases = np.exp(-1j * np.outer(np.asarray(times, dtype=float),
                                       self.eigenvalues))
        return np.einsum("ik,tk,jk->tij", self.eigenvectors, phases,
                         self.eigenvectors.conj())


@dataclass(frozen=True)
class Propagator:
    """Dense unitary with a human-readable note on where it came from."""

    matrix: np.ndarray
    provenance: str = ""

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def unitarity_defect(self) -> float:
        gram = self.matrix.conj().T @ self.matrix
        return float(np.abs(gram - np.eye(self.n)).max())

    def dagger(self) -> "Propagator":
        return Propagator(_freeze(self.matrix.conj().T.copy()),
                          self.provenance + " (dagger)")


def eig_hermitian(matrix: np.ndarray,
                  hermiticity_tol: float = DEFAULTS.hermiticity) -> SpectralDecomposition:
    """Eigendecomposition with an explicit Hermiticity gate on the input."""
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError("expected a square matrix")
    asym = float(np.abs(matrix - matrix.conj().T).max()) if matrix.size else 0.0
    if asym > hermiticity_tol:
        raise ValueError(f"matrix is not Hermitian (asymmetry {asym:.3e})")
    eigenvalues, eigenvectors = np.linalg.eigh(matrix)
    return SpectralDecomposition(_freeze(eigenvalues), _freeze(eigenvectors))


def decompose(hamiltonian) -> SpectralDecomposition:
    """eig_hermitian of a WalkHamiltonian or of an already-dense matrix."""
    if isinstance(hamiltonian, SpectralDecomposition):
        return hamiltonian
    if isinstance(hamiltonian, WalkHamiltonian):
        return eig_hermitian(to_dense(hamiltonian))
    return eig_hermitian(hamiltonian)


def propagate(hamiltonian, t: float) -> Propagator:
    """U = exp(-iHt) through the spectral factorization."""
    dec = decompose(hamiltonian)
    return Propagator(_freeze(dec.propagator_matrix(float(t))),
                      f"exp(-iHt) n={dec.n} t={t!r}")


def transition_probability(propagator: Propagator, from_node: int, to_node: int) -> float:
    n = propagator.n
    if not (0 <= from_node < n and 0 <= to_node < n):
        raise ValueError(f"node pair ({from_node}, {to_node}) out of range for n={n}")
    return float(abs(propagator.matrix[to_node, from_node]) ** 2)


@dataclass(frozen=True)
class TransportTable:
    """Transition-probability tensor over a parameter grid.

    ``probabilities[k, to, from]`` is the ``from -> to`` probability at grid
    point ``k``.  ``axis_kind`` selects the CSV schema: ``"time"`` rows are
    ``axis,from,to,probability``; ``"circuit"`` rows carry the gate
    parameters, ``alpha,theta,from,to,probability``.
    """

    axis_kind: str
    axes: tuple
    probabilities: np.ndarray

    def __post_init__(self):
        if self.axis_kind not in ("time", "circuit"):
            raise ValueError(f"unknown axis kind {self.axis_kind!r}")
        if len(self.axes) != self.probabilities.shape[0]:
            raise ValueError("axis length does not match probability tensor")

    @property
    def n(self) -> int:
        return self.probabilities.shape[1]

    def probability(self, k: int, from_node: int, to_node: int) -> float:
        return float(self.probabilities[k, to_node, from_node])

    def column_sum_defect(self) -> float:
        return float(np.abs(self.probabilities.sum(axis=1) - 1.0).max())

    def to_csv(self) -> str:
        fmt = lambda x: format(float(x), ".17g")  # noqa: E731
        lines = []
        if self.axis_kind == "time":
            lines.append("axis,from,to,probability")
            for k, t in enumerate(self.axes):
                for frm in range(self.n):
                    for to in range(self.n):
                        lines.append(f"{fmt(t)},{frm},{to},"
                                     f"{fmt(self.probabilities[k, to, frm])}")
        else:
            lines.append("alpha,theta,from,to,probability")
            for k, (alpha, theta) in enumerate(self.axes):
                for frm in range(self.n):
                    for to in range(self.n):
                        lines.append(f"{fmt(alpha)},{fmt(theta)},{frm},{to},"
                                     f"{fmt(self.probabilities[k, to, frm])}")
        return "\n".join(lines) + "\n"


def sweep_time(hamiltonian, t_grid: Sequence[float]) -> TransportTable:
    """Probability tables over a time grid, one eigendecomposition total."""
    t_grid = tuple(float(t) for t in t_grid)
    if not t_grid:
        raise ValueError("time grid must be nonempty")
    dec = decompose(hamiltonian)
    unitaries = dec.propagator_batch(np.array(t_grid))
    return TransportTable("time", t_grid, _freeze(np.abs(unitaries) ** 2))


_CSV_HEADERS = ("axis,from,to,probability", "alpha,theta,from,to,probability")


def validate_table_csv(text: str) -> None:
    """Schema gate for probability CSVs: column count, finite reals, p in [0, 1]."""
    lines = text.strip().split("\n")
    if not lines or lines[0] not in _CSV_HEADERS:
        raise ValueError(f"unknown table header {lines[0] if lines else ''!r}")
    width = lines[0].count(",") + 1
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split(",")
        if len(parts) != width:
            raise ValueError(f"row {lineno}: expected {width} columns")
        try:
            values = [float(p) for p in parts]
        except ValueError:
            raise ValueError(f"row {lineno}: non-numeric field") from None
        if not all(np.isfinite(v) for v in values):
            raise ValueError(f"row {lineno}: non-finite value")
        if not (-1e-12 <= values[-1] <= 1.0 + 1e-12):
            raise ValueError(f"row {lineno}: probability {values[-1]} out of range")


def _golden_section_max(f, lo: float, hi: float, width: float) -> tuple[float, float]:
    inv_phi = (np.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = f(c), f(d)
    while (b - a) > width:
        if fc < fd:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = f(d)
        else:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = f(c)
    t = (a + b) / 2.0
    return t, f(t)


def max_transfer(hamiltonian, from_node: int, to_node: int,
                 t_range: tuple[float, float],
                 scan_points: int = DEFAULTS.scan_points,
                 refine_dt: float = DEFAULTS.refine_dt) -> tuple[float, float]:
    """Maximize the ``from -> to`` probability over a time window.

    Coarse scan over ``scan_points`` samples, then golden-section refinement
    of the best bracket down to ``refine_dt``.  Returns ``(t_star, p_star)``.
    """
    lo, hi = float(t_range[0]), float(t_range[1])
    if not (np.isfinite(lo) and np.isfinite(hi)) or hi <= lo:
        raise ValueError("t_range must be a finite interval of positive length")
    dec = decompose(hamiltonian)
    n = dec.n
    if not (0 <= from_node < n and 0 <= to_node < n):
        raise ValueError("node index out of range")
    coeff = dec.eigenvectors[to_node, :] * dec.eigenvectors[from_node, :].conj()

    def prob(t: float) -> float:
        return float(abs(np.dot(coeff, np.exp(-1j * dec.eigenvalues * t))) ** 2)

    grid = np.linspace(lo, hi, scan_points)
    values = np.abs(np.exp(-1j * np.outer(grid, dec.eigenvalues)) @ coeff) ** 2
    best = int(values.argmax())
    bracket_lo = grid[max(best - 1, 0)]
    bracket_hi = grid[min(best + 1, scan_points - 1)]
    t_star, p_star = _golden_section_max(prob, bracket_lo, bracket_hi, refine_dt)
    if values[best] > p_star:
        t_star, p_star = float(grid[best]), float(values[best])
    return t_star, p_star
