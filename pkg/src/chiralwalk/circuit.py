"""Palindromic two-site-gate circuits and their walk-node action.

Each gate ``(i, j, alpha, theta)`` mixes one pair of sites.  On the walk
node space it is the identity except for the 2x2 block

    [[cos(theta),                 -1j * exp(-1j*alpha) * sin(theta)],
     [-1j * exp(1j*alpha) * sin(theta),               cos(theta)  ]]

on ``(|i>, |j>)``.  On qubits it is generated by ``cos(alpha) * S + sin(alpha)
* A`` with ``S = XiXj + YiYj`` and ``A = XiYj - YiXj``, and factors as a pair
of local z-rotations around the symmetric ``alpha = 0`` gate,

    U(alpha, theta) = Rz_j(alpha) U(0, theta) Rz_j(alpha)^dag,

with ``Rz(a) = exp(-1j * (a/2) * Z)``.  That conjugation identity is the
anchor that fixes which of ``exp(+-1j*alpha)`` sits above the diagonal;
the test suite enforces it.  Tensor convention: qubit k is factor k,
factor 0 leftmost; walk node ``|k>`` is the basis state with qubit k in
``|1>`` and the rest in ``|0>``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .defaults import DEFAULTS
from .graph import GraphFormatError, GraphSkeleton, WalkHamiltonian
from .propagator import Propagator, TransportTable, _freeze, propagate

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
_I2 = np.eye(2, dtype=complex)
_I4 = np.eye(4, dtype=complex)


@dataclass(frozen=True)
class GateSpec:
    """Two-site gate parameters: pair (i, j), chirality alpha, angle theta."""

    i: int
    j: int
    alpha: float
    theta: float

    def __post_init__(self):
        if not (isinstance(self.i, (int, np.integer))
                and isinstance(self.j, (int, np.integer))):
            raise ValueError("gate endpoints must be integers")
        object.__setattr__(self, "i", int(self.i))
        object.__setattr__(self, "j", int(self.j))
        if self.i == self.j:
            raise ValueError(f"gate endpoints must differ, got ({self.i}, {self.j})")
        if self.i < 0 or self.j < 0:
            raise ValueError("gate endpoints must be nonnegative")
        for angle in (self.alpha, self.theta):
            if not math.isfinite(float(angle)):
                raise ValueError("gate angles must be finite")
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "theta", float(self.theta))

    def pair(self) -> tuple[int, int]:
        return (self.i, self.j) if self.i < self.j else (self.j, self.i)


@dataclass(frozen=True)
class CircuitGraph:
    """Support skeleton of a circuit: an edge wherever some gate acts."""

    n_nodes: int
    edges: tuple[tuple[int, int], ...]

    def to_skeleton(self) -> GraphSkeleton:
        return GraphSkeleton(self.n_nodes, self.edges)


@dataclass(frozen=True)
class PalindromicCircuit:
    """Mirror-symmetric gate sequence: half, optional center, reversed half."""

    n_nodes: int
    half: tuple[GateSpec, ...]
    center: GateSpec | None = None

    def __post_init__(self):
        object.__setattr__(self, "half", tuple(self.half))
        gates = self.half + ((self.center,) if self.center is not None else ())
        for gate in gates:
            if gate.i >= self.n_nodes or gate.j >= self.n_nodes:
                raise ValueError(f"gate {gate} out of range for {self.n_nodes} nodes")

    @property
    def full(self) -> tuple[GateSpec, ...]:
        middle = (self.center,) if self.center is not None else ()
        return self.half + middle + tuple(reversed(self.half))

    def support(self) -> CircuitGraph:
        pairs = sorted({gate.pair() for gate in self.full})
        return CircuitGraph(self.n_nodes, tuple(pairs))


def build_palindrome(half: Iterable[GateSpec], n_nodes: int,
                     center: GateSpec | None = None) -> PalindromicCircuit:
    return PalindromicCircuit(n_nodes, tuple(half), center)


# ---------------------------------------------------------------------------
# node-space action

def gate_node_matrix(gate: GateSpec, n_nodes: int) -> np.ndarray:
    if gate.i >= n_nodes or gate.j >= n_nodes:
        raise ValueError(f"gate {gate} out of range for {n_nodes} nodes")
    u = np.eye(n_nodes, dtype=complex)
    c, s = math.cos(gate.theta), math.sin(gate.theta)
    u[gate.i, gate.i] = u[gate.j, gate.j] = c
    u[gate.i, gate.j] = -1j * np.exp(-1j * gate.alpha) * s
    u[gate.j, gate.i] = -1j * np.exp(1j * gate.alpha) * s
    return u


def gate_node_space(gate: GateSpec, n_nodes: int) -> Propagator:
    """Single-gate walk unitary: identity outside the (i, j) mixing block."""
    return Propagator(_freeze(gate_node_matrix(gate, n_nodes)),
                      f"two-site gate ({gate.i},{gate.j}) node space")


# ---------------------------------------------------------------------------
# qubit-space action

def _generator_qubit(alpha: float) -> np.ndarray:
    sym = np.kron(PAULI_X, PAULI_X) + np.kron(PAULI_Y, PAULI_Y)
    antisym = np.kron(PAULI_X, PAULI_Y) - np.kron(PAULI_Y, PAULI_X)
    return math.cos(alpha) * sym + math.sin(alpha) * antisym


def gate_qubit_space(gate: GateSpec) -> np.ndarray:
    """4x4 two-qubit gate in (qubit i, qubit j) factor order.

    Closed form of the exponential: the (1 + ZZ)/2 sector (|00>, |11>) is
    untouched for every (alpha, theta); the single-excitation sector mixes.
    """
    zz = np.kron(PAULI_Z, PAULI_Z)
    return 0.5 * (_I4 + zz + math.cos(gate.theta) * (_I4 - zz)
                  - 1j * math.sin(gate.theta) * _generator_qubit(gate.alpha))


def rz_rotation(alpha: float) -> np.ndarray:
    """Rz(alpha) = exp(-1j * (alpha/2) * Z)."""
    return np.array([[np.exp(-0.5j * alpha), 0.0],
                     [0.0, np.exp(0.5j * alpha)]], dtype=complex)


def rz_decompose(gate: GateSpec) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Factor the gate as (Rz on qubit j) @ symmetric gate @ (inverse Rz).

    Returned as three 4x4 matrices in (qubit i, qubit j) order whose product
    reproduces ``gate_qubit_space(gate)``.
    """
    rotation = np.kron(_I2, rz_rotation(gate.alpha))
    symmetric = gate_qubit_space(GateSpec(gate.i, gate.j, 0.0, gate.theta))
    return rotation, symmetric, rotation.conj().T


# ---------------------------------------------------------------------------
# circuit application

def single_excitation_index(node: int, n_nodes: int) -> int:
    """Computational-basis index of |0...010...0> with qubit ``node`` excited."""
    return 1 << (n_nodes - 1 - node)


def _apply_two_qubit(state: np.ndarray, gate4: np.ndarray,
                     qi: int, qj: int, n: int) -> np.ndarray:
    psi = state.reshape((2,) * n)
    psi = np.moveaxis(psi, (qi, qj), (0, 1)).reshape(4, -1)
    psi = gate4 @ psi
    psi = np.moveaxis(psi.reshape((2, 2) + (2,) * (n - 2)), (0, 1), (qi, qj))
    return psi.reshape(-1)


def _qubit_columns(circuit: PalindromicCircuit) -> np.ndarray:
    """Full statevectors after the circuit, one column per excited start node."""
    n = circuit.n_nodes
    if n > DEFAULTS.qubit_space_max:
        raise ValueError(f"qubit-space evaluation limited to {DEFAULTS.qubit_space_max} qubits")
    dim = 1 << n
    columns = np.zeros((dim, n), dtype=complex)
    gates = [(gate_qubit_space(g), g.i, g.j) for g in circuit.full]
    for node in range(n):
        psi = np.zeros(dim, dtype=complex)
        psi[single_excitation_index(node, n)] = 1.0
        for gate4, qi, qj in gates:
            psi = _apply_two_qubit(psi, gate4, qi, qj, n)
        columns[:, node] = psi
    return columns


def apply_circuit(circuit: PalindromicCircuit, space: str = "node") -> Propagator:
    """Ordered product of the full gate sequence.

    ``space="node"`` multiplies N x N walk-space gates.  ``space="qubit"``
    runs dense statevectors and reports the N x N single-excitation block
    ``B[i, j] = <i excited| circuit |j excited>``.
    """
    if space == "node":
        u = np.eye(circuit.n_nodes, dtype=complex)
        for gate in circuit.full:
            u = gate_node_matrix(gate, circuit.n_nodes) @ u
        return Propagator(_freeze(u),
                          f"palindromic circuit ({len(circuit.full)} gates, node space)")
    if space == "qubit":
        n = circuit.n_nodes
        columns = _qubit_columns(circuit)
        rows = [single_excitation_index(node, n) for node in range(n)]
        block = columns[rows, :]
        return Propagator(_freeze(block),
                          f"palindromic circuit ({len(circuit.full)} gates, "
                          "qubit-space single-excitation block)")
    raise ValueError(f"unknown space {space!r} (expected 'node' or 'qubit')")


def excitation_preservation_check(circuit: PalindromicCircuit) -> float:
    """Worst probability weight leaked outside the single-excitation subspace."""
    n = circuit.n_nodes
    columns = _qubit_columns(circuit)
    keep = np.zeros(columns.shape[0], dtype=bool)
    for node in range(n):
        keep[single_excitation_index(node, n)] = True
    outside = np.abs(columns[~keep, :]) ** 2
    return float(outside.sum(axis=0).max()) if outside.size else 0.0


# ---------------------------------------------------------------------------
# the three-node palindrome

def three_cycle_circuit(alpha: float, theta: float,
                        fuse_center: bool = False) -> PalindromicCircuit:
    """Six-gate palindrome on the triangle, every gate sharing (alpha, theta).

    The smallest palindrome whose support has an odd cycle; its directed
    flux is three times the per-gate phase, so transport depends on alpha
    only through ``3 * alpha mod 2*pi``.  With ``fuse_center`` the doubled
    middle gate is merged into one gate at angle ``2 * theta`` (same
    unitary, five gates).
    """
    gates = (GateSpec(0, 1, alpha, theta),
             GateSpec(1, 2, alpha, theta),
             GateSpec(2, 0, alpha, theta))
    if fuse_center:
        return build_palindrome(gates[:2], 3,
                                center=GateSpec(2, 0, alpha, 2.0 * theta))
    return build_palindrome(gates, 3)


_THREE_CYCLE_ORDER = ((0, 1), (1, 2), (2, 0), (2, 0), (1, 2), (0, 1))
_THREE_CYCLE_ORDER_FUSED = ((0, 1, 1.0), (1, 2, 1.0), (2, 0, 2.0),
                            (1, 2, 1.0), (0, 1, 1.0))


def _batched_gate(i: int, j: int, alpha: float, thetas: np.ndarray) -> np.ndarray:
    count = thetas.shape[0]
    u = np.zeros((count, 3, 3), dtype=complex)
    u[:, 0, 0] = u[:, 1, 1] = u[:, 2, 2] = 1.0
    c, s = np.cos(thetas), np.sin(thetas)
    u[:, i, i] = c
    u[:, j, j] = c
    u[:, i, j] = -1j * np.exp(-1j * alpha) * s
    u[:, j, i] = -1j * np.exp(1j * alpha) * s
    return u


def three_cycle_unitaries(alphas: Sequence[float], thetas: Sequence[float],
                          fuse_center: bool = False) -> np.ndarray:
    """Unitary stack ``u[a, k]`` (3x3 each) for the triangle palindrome.

    Batched over the theta axis: a handful of 3x3 matmuls per alpha
    regardless of grid size, so dense sweeps stay fast.
    """
    thetas = np.asarray(list(thetas), dtype=float)
    order = (_THREE_CYCLE_ORDER_FUSED if fuse_center
             else tuple((i, j, 1.0) for i, j in _THREE_CYCLE_ORDER))
    out = np.empty((len(alphas), thetas.shape[0], 3, 3), dtype=complex)
    for a_index, alpha in enumerate(alphas):
        unitary = None
        for i, j, theta_factor in order:
            gate = _batched_gate(i, j, float(alpha), theta_factor * thetas)
            unitary = gate if unitary is None else gate @ unitary
        out[a_index] = unitary
    return out


def three_cycle_probabilities(alphas: Sequence[float], thetas: Sequence[float],
                              fuse_center: bool = False) -> np.ndarray:
    """Probability tensor ``p[a, k, to, from]`` for the triangle palindrome."""
    return np.abs(three_cycle_unitaries(alphas, thetas, fuse_center)) ** 2


def circuit_sweep_table(alphas: Sequence[float], thetas: Sequence[float],
                        fuse_center: bool = False) -> TransportTable:
    """Triangle-palindrome sweep as a circuit-schema TransportTable."""
    alphas = [float(a) for a in alphas]
    thetas_list = [float(t) for t in thetas]
    if not alphas or not thetas_list:
        raise ValueError("sweep grids must be nonempty")
    probs = three_cycle_probabilities(alphas, thetas_list, fuse_center)
    axes = tuple((a, t) for a in alphas for t in thetas_list)
    flat = probs.reshape(len(axes), 3, 3)
    return TransportTable("circuit", axes, _freeze(flat))


@dataclass(frozen=True)
class FusedThreeCycle:
    """Triangle palindrome rewritten with a single interior rotation pair.

    ``unitary = B @ S01 @ S12 @ P(-phi) @ S20 @ S20 @ P(+phi) @ S12 @ S01
    @ B^dag`` where the S's are the symmetric (alpha = 0) gates, ``P`` puts
    phase ``exp(-+1j*phi)`` on ``rotation_node`` (one z-rotation pair, angle
    ``phi = 3 * alpha``), and ``B = diag(exp(1j * boundary_phases))``.  The
    boundary diagonals never change site-basis transition probabilities.
    """

    boundary_phases: tuple[float, float, float]
    rotation_node: int
    rotation_phase: float
    symmetric_gates: tuple[GateSpec, ...]


def three_cycle_rotation_fusion(alpha: float, theta: float) -> FusedThreeCycle:
    symmetric = tuple(GateSpec(i, j, 0.0, float(theta))
                      for i, j in _THREE_CYCLE_ORDER)
    return FusedThreeCycle(boundary_phases=(-float(alpha), 0.0, float(alpha)),
                           rotation_node=2,
                           rotation_phase=3.0 * float(alpha),
                           symmetric_gates=symmetric)


def fused_three_cycle_unitary(fused: FusedThreeCycle) -> np.ndarray:
    boundary = np.diag(np.exp(1j * np.array(fused.boundary_phases)))
    rot_minus = np.eye(3, dtype=complex)
    rot_minus[fused.rotation_node, fused.rotation_node] = np.exp(-1j * fused.rotation_phase)
    rot_plus = np.eye(3, dtype=complex)
    rot_plus[fused.rotation_node, fused.rotation_node] = np.exp(1j * fused.rotation_phase)
    g = [gate_node_matrix(gate, 3) for gate in fused.symmetric_gates]
    return (boundary @ g[0] @ g[1] @ rot_minus @ g[2] @ g[3]
            @ rot_plus @ g[4] @ g[5] @ boundary.conj().T)


# ---------------------------------------------------------------------------
# splitting a Hamiltonian evolution into a gate palindrome

def trotter_error(hamiltonian: WalkHamiltonian, scale: float,
                  magnitude_tol: float = DEFAULTS.uniform_magnitude) -> float:
    """Max-norm error of the symmetric edge-splitting palindrome.

    The half sequence holds one gate per edge at angle ``scale / 2``
    (the full palindrome applies each edge for the whole step), compared
    against ``exp(-iHt)`` with ``t = scale / h``.  Requires uniform edge
    magnitudes and a zero diagonal, which is what the construction can
    express.
    """
    if not hamiltonian.edges:
        raise ValueError("splitting circuit needs at least one edge")
    magnitudes = [e.h for e in hamiltonian.edges]
    if max(magnitudes) - min(magnitudes) > magnitude_tol * max(magnitudes):
        raise ValueError("edge magnitudes must be uniform for the splitting circuit")
    if np.abs(hamiltonian.diagonal()).max() > magnitude_tol:
        raise ValueError("splitting circuit does not represent self-energies")
    h = magnitudes[0]
    t = float(scale) / h
    # node gate carries exp(-1j*alpha) on its (i, j) entry, so the edge
    # phase enters negated to reproduce exp(-1j * H_edge * t / 2)
    half = tuple(GateSpec(e.i, e.j, -e.alpha, float(scale) / 2.0)
                 for e in hamiltonian.edges)
    circuit = build_palindrome(half, hamiltonian.n_nodes)
    approx = apply_circuit(circuit, "node").matrix
    exact = propagate(hamiltonian, t).matrix
    return float(np.abs(approx - exact).max())


# ---------------------------------------------------------------------------
# circuit files

def parse_circuit(text: str, n_nodes: int | None = None) -> PalindromicCircuit:
    """Parse 'gate <i> <j> <alpha> <theta>' lines as a palindrome half."""
    half: list[GateSpec] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] != "gate" or len(tokens) != 5:
            raise GraphFormatError("expected 'gate <i> <j> <alpha> <theta>'", lineno)
        try:
            i, j = int(tokens[1]), int(tokens[2])
            alpha, theta = float(tokens[3]), float(tokens[4])
        except ValueError:
            raise GraphFormatError("bad gate parameters", lineno) from None
        try:
            half.append(GateSpec(i, j, alpha, theta))
        except ValueError as exc:
            raise GraphFormatError(str(exc), lineno) from None
    if not half and n_nodes is None:
        raise GraphFormatError("empty circuit file")
    if n_nodes is None:
        n_nodes = max(max(g.i, g.j) for g in half) + 1
    return build_palindrome(half, n_nodes)


def render_circuit(circuit: PalindromicCircuit) -> str:
    if circuit.center is not None:
        raise ValueError("circuit files list a mirrored half; fused centers are not expressible")
    fmt = lambda x: format(float(x), ".17g")  # noqa: E731
    lines = [f"gate {g.i} {g.j} {fmt(g.alpha)} {fmt(g.theta)}" for g in circuit.half]
    return "\n".join(lines) + "\n"
