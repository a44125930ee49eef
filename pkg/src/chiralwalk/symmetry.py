"""Time-reversal classification of walk Hamiltonians.

Structural verdicts are exact graph computations on the support skeleton;
numeric verdicts sample ``|U(t)[i, j]|^2 - |U(t)[j, i]|^2`` on a spectral
time grid.  Gauge certificates witness the structural claims: a forest
admits a phase-removal gauge, a bipartite graph a sign-flip gauge.

Gauge convention, fixed project-wide: ``apply_gauge`` maps each directed
phase ``alpha(u -> v)`` to ``alpha(u -> v) + lambda_u - lambda_v`` (dense
form ``H -> L H L^dag`` with ``L = diag(exp(1j * lambda))``).  The sign is
anchored by the round trip ``apply_gauge(H, tree_phase_removal(H))`` having
all edge phases zero, which the test suite enforces.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .defaults import DEFAULTS
from .graph import Edge, GraphSkeleton, WalkHamiltonian, skeleton
from .propagator import decompose

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class GaugePhase:
    """Per-node phase vector defining the diagonal unitary diag(e^{i lambda})."""

    phases: tuple[float, ...]

    def __len__(self) -> int:
        return len(self.phases)

    def matrix(self) -> np.ndarray:
        return np.diag(np.exp(1j * np.array(self.phases)))

    def __add__(self, other: "GaugePhase") -> "GaugePhase":
        if len(self) != len(other):
            raise ValueError("gauge length mismatch")
        return GaugePhase(tuple(a + b for a, b in zip(self.phases, other.phases)))


class BipartiteCheck(NamedTuple):
    bipartite: bool
    coloring: tuple[int, ...] | None
    odd_cycle: tuple[int, ...] | None


class PtsCheck(NamedTuple):
    residual: float
    symmetric: bool
    t_samples: tuple[float, ...]


def apply_gauge(hamiltonian: WalkHamiltonian, gauge: GaugePhase) -> WalkHamiltonian:
    """Conjugate by the diagonal unitary; diagonals are untouched."""
    if len(gauge) != hamiltonian.n_nodes:
        raise ValueError(f"gauge has {len(gauge)} phases for {hamiltonian.n_nodes} nodes")
    lam = gauge.phases
    new_edges = tuple(Edge(e.i, e.j, e.h, e.alpha + lam[e.i] - lam[e.j])
                      for e in hamiltonian.edges)
    return WalkHamiltonian(hamiltonian.n_nodes, new_edges,
                           hamiltonian.self_energies, hamiltonian.labels)


def _odd_walk(u: int, v: int, parent: list[int]) -> tuple[int, ...]:
    path_u = [u]
    while parent[path_u[-1]] != -1:
        path_u.append(parent[path_u[-1]])
    path_v = [v]
    while parent[path_v[-1]] != -1:
        path_v.append(parent[path_v[-1]])
    # drop the shared tail above the lowest common ancestor
    while len(path_u) >= 2 and len(path_v) >= 2 and path_u[-2] == path_v[-2]:
        path_u.pop()
        path_v.pop()
    return tuple(reversed(path_u)) + tuple(path_v)


def is_bipartite(skel: GraphSkeleton) -> BipartiteCheck:
    """Breadth-first two-coloring; self-edges are length-1 odd cycles."""
    if skel.self_nodes:
        node = skel.self_nodes[0]
        return BipartiteCheck(False, None, (node, node))
    n = skel.n_nodes
    adjacency = skel.adjacency()
    color = [-1] * n
    parent = [-1] * n
    for root in range(n):
        if color[root] != -1:
            continue
        color[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in adjacency[u]:
                if color[v] == -1:
                    color[v] = 1 - color[u]
                    parent[v] = u
                    queue.append(v)
                elif color[v] == color[u]:
                    return BipartiteCheck(False, None, _odd_walk(u, v, parent))
    return BipartiteCheck(True, tuple(color), None)


def is_forest(skel: GraphSkeleton) -> bool:
    """True when the simple edges are acyclic (self-edges do not count)."""
    parent = list(range(skel.n_nodes))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in skel.edges:
        ri, rj = find(i), find(j)
        if ri == rj:
            return False
        parent[ri] = rj
    return True


def tree_phase_removal(hamiltonian: WalkHamiltonian) -> GaugePhase:
    """Gauge zeroing every edge phase of a forest.

    Roots each component and propagates ``lambda_child = lambda_parent +
    alpha(parent -> child)``, so the gauged phase ``alpha + lambda_parent -
    lambda_child`` vanishes edge by edge.
    """
    skel = skeleton(hamiltonian)
    if not is_forest(skel):
        raise ValueError("support graph is not a forest")
    n = hamiltonian.n_nodes
    adjacency = skel.adjacency()
    lam = [0.0] * n
    visited = [False] * n
    for root in range(n):
        if visited[root]:
            continue
        visited[root] = True
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in adjacency[u]:
                if not visited[v]:
                    visited[v] = True
                    lam[v] = lam[u] + hamiltonian.directed_phase(u, v)
                    queue.append(v)
    return GaugePhase(tuple(lam))


def bipartite_negation_gauge(hamiltonian: WalkHamiltonian,
                             self_edge_tol: float = DEFAULTS.self_edge) -> GaugePhase:
    """Gauge with lambda = 0 / pi on the two color classes, flipping H's sign.

    Requires all self-energies equal: the sign flip acts on the Hamiltonian
    after its uniform diagonal has been removed.
    """
    diag = hamiltonian.diagonal()
    if diag.size and (diag.max() - diag.min()) > self_edge_tol:
        raise ValueError("self-energies must all be equal for a negation gauge")
    check = is_bipartite(GraphSkeleton(hamiltonian.n_nodes,
                                       tuple((e.i, e.j) for e in hamiltonian.edges)))
    if not check.bipartite:
        raise ValueError("support graph is not bipartite")
    return GaugePhase(tuple(math.pi * c for c in check.coloring))


def default_time_samples(hamiltonian, count: int = DEFAULTS.pts_samples) -> tuple[float, ...]:
    """Uniform samples in (0, 2*pi / ||H||], made dimensionless by the spectrum."""
    scale = decompose(hamiltonian).spectral_norm
    if scale <= 0.0:
        scale = 1.0
    horizon = TWO_PI / scale
    return tuple(horizon * k / count for k in range(1, count + 1))


def pts_numeric(hamiltonian, t_samples: Sequence[float] | None = None,
                tol: float = DEFAULTS.pts) -> PtsCheck:
    """Sampled probability-symmetry test (evidence, not a proof).

    Residual is the worst ``| |U(t)[i, j]|^2 - |U(t)[j, i]|^2 |`` over the
    sample times and all node pairs.
    """
    dec = decompose(hamiltonian)
    if t_samples is None:
        t_samples = default_time_samples(dec)
    t_samples = tuple(float(t) for t in t_samples)
    if not t_samples:
        raise ValueError("t_samples must be nonempty")
    probs = np.abs(dec.propagator_batch(np.array(t_samples))) ** 2
    residual = float(np.abs(probs - probs.transpose(0, 2, 1)).max())
    return PtsCheck(residual, residual <= tol, t_samples)


def eq_parity_residual(hamiltonian, t: float, i: int, j: int) -> complex:
    """Residual of the odd/even path-parity balance at one (t, i, j).

    Splits U = exp(-iHt) into its even part (U^dag + U)/2 and odd part
    (U^dag - U)/2 and returns ``odd[j,i] * even[i,j] - odd[i,j] * even[j,i]``;
    this vanishes exactly when the pair's transition probabilities are
    time-symmetric at t.
    """
    dec = decompose(hamiltonian)
    n = dec.n
    if not (0 <= i < n and 0 <= j < n):
        raise ValueError("node index out of range")
    u = dec.propagator_matrix(float(t))
    udag = u.conj().T
    even = (udag + u) / 2.0
    odd = (udag - u) / 2.0
    return complex(odd[j, i] * even[i, j] - odd[i, j] * even[j, i])


def cycle_flux(hamiltonian: WalkHamiltonian, cycle: Sequence[int]) -> float:
    """Sum of directed edge phases around a closed walk, reduced to (-pi, pi].

    Gauge transformations shift each directed phase by a telescoping
    difference, so the flux is gauge-invariant.
    """
    cycle = [int(v) for v in cycle]
    if len(cycle) < 2 or cycle[0] != cycle[-1]:
        raise ValueError("cycle must be a closed walk (first node repeated last)")
    total = 0.0
    for u, v in zip(cycle, cycle[1:]):
        if not hamiltonian.has_edge(u, v):
            raise ValueError(f"cycle uses a missing edge ({u}, {v})")
        total += hamiltonian.directed_phase(u, v)
    reduced = math.remainder(total, TWO_PI)
    if reduced <= -math.pi:
        reduced += TWO_PI
    return reduced


_REPORT_CSV_FIELDS = (
    "structural_class", "n_nodes", "n_edges", "is_forest", "is_bipartite",
    "structural_pts", "phase_dependent", "numeric_pts_residual",
    "pts_symmetric_at_samples", "two_coloring", "odd_cycle",
    "phase_removal_gauge", "negation_gauge", "labels",
)


def _yes_no(flag: bool) -> str:
    return "Yes" if flag else "No"


def _join_reals(values) -> str:
    return ";".join(format(float(v), ".17g") for v in values)


@dataclass(frozen=True)
class SymmetryReport:
    """Structural class, certificates and numeric residual for one Hamiltonian."""

    structural_class: str
    n_nodes: int
    n_edges: int
    is_forest: bool
    is_bipartite: bool
    structural_pts: bool
    phase_dependent: bool
    numeric_pts_residual: float
    pts_symmetric_at_samples: bool
    two_coloring: tuple[int, ...] | None = None
    odd_cycle: tuple[int, ...] | None = None
    phase_removal_gauge: GaugePhase | None = None
    negation_gauge: GaugePhase | None = None
    labels: tuple[str, ...] | None = None

    def to_text(self) -> str:
        lines = [
            f"structural_class={self.structural_class}",
            f"n_nodes={self.n_nodes}",
            f"n_edges={self.n_edges}",
            f"is_forest={_yes_no(self.is_forest)}",
            f"is_bipartite={_yes_no(self.is_bipartite)}",
            f"structural_pts={_yes_no(self.structural_pts)}",
            f"phase_dependent={_yes_no(self.phase_dependent)}",
            f"numeric_pts_residual={format(self.numeric_pts_residual, '.17g')}",
            f"pts_symmetric_at_samples={_yes_no(self.pts_symmetric_at_samples)}",
        ]
        if self.two_coloring is not None:
            lines.append("two_coloring=" + ";".join(str(c) for c in self.two_coloring))
        if self.odd_cycle is not None:
            lines.append("odd_cycle=" + ";".join(str(v) for v in self.odd_cycle))
        if self.phase_removal_gauge is not None:
            lines.append("phase_removal_gauge=" + _join_reals(self.phase_removal_gauge.phases))
        if self.negation_gauge is not None:
            lines.append("negation_gauge=" + _join_reals(self.negation_gauge.phases))
        if self.labels is not None:
            lines.append("labels=" + ";".join(f"{name}:{k}"
                                              for k, name in enumerate(self.labels)))
        return "\n".join(lines) + "\n"

    @staticmethod
    def csv_header() -> str:
        return ",".join(_REPORT_CSV_FIELDS)

    def to_csv_row(self) -> str:
        values = {
            "structural_class": self.structural_class,
            "n_nodes": str(self.n_nodes),
            "n_edges": str(self.n_edges),
            "is_forest": _yes_no(self.is_forest),
            "is_bipartite": _yes_no(self.is_bipartite),
            "structural_pts": _yes_no(self.structural_pts),
            "phase_dependent": _yes_no(self.phase_dependent),
            "numeric_pts_residual": format(self.numeric_pts_residual, ".17g"),
            "pts_symmetric_at_samples": _yes_no(self.pts_symmetric_at_samples),
            "two_coloring": ";".join(str(c) for c in self.two_coloring)
                            if self.two_coloring is not None else "",
            "odd_cycle": ";".join(str(v) for v in self.odd_cycle)
                         if self.odd_cycle is not None else "",
            "phase_removal_gauge": _join_reals(self.phase_removal_gauge.phases)
                                   if self.phase_removal_gauge is not None else "",
            "negation_gauge": _join_reals(self.negation_gauge.phases)
                              if self.negation_gauge is not None else "",
            "labels": ";".join(f"{name}:{k}" for k, name in enumerate(self.labels))
                      if self.labels is not None else "",
        }
        return ",".join(values[field] for field in _REPORT_CSV_FIELDS)


def classify(hamiltonian: WalkHamiltonian,
             t_samples: Sequence[float] | None = None,
             tol: float = DEFAULTS.pts) -> SymmetryReport:
    """Full structural + numeric symmetry report for one Hamiltonian."""
    skel = skeleton(hamiltonian)
    bipartite_check = is_bipartite(skel)
    forest = is_forest(skel)

    if forest:
        structural_class = "tree-with-self-edges" if skel.self_nodes else "tree"
    elif bipartite_check.bipartite:
        structural_class = "bipartite-with-cycles"
    else:
        structural_class = "non-bipartite"

    phase_removal = tree_phase_removal(hamiltonian) if forest else None
    negation = (bipartite_negation_gauge(hamiltonian)
                if bipartite_check.bipartite else None)
    numeric = pts_numeric(hamiltonian, t_samples, tol)

    return SymmetryReport(
        structural_class=structural_class,
        n_nodes=hamiltonian.n_nodes,
        n_edges=len(hamiltonian.edges),
        is_forest=forest,
        is_bipartite=bipartite_check.bipartite,
        structural_pts=forest or bipartite_check.bipartite,
        phase_dependent=not forest,
        numeric_pts_residual=numeric.residual,
        pts_symmetric_at_samples=numeric.symmetric,
        two_coloring=bipartite_check.coloring,
        odd_cycle=bipartite_check.odd_cycle,
        phase_removal_gauge=phase_removal,
        negation_gauge=negation,
        labels=hamiltonian.labels,
    )
