"""Complex-weighted graph Hamiltonians: data model, file format, validation.

A walk Hamiltonian over N labeled nodes stores each coupling as an edge
``(i, j, h, alpha)`` meaning matrix entry ``H[i, j] = h * exp(1j * alpha)``
with ``H[j, i]`` its complex conjugate; the diagonal holds real
self-energies.  Hermiticity is structural: edges are canonicalized to
``i < j`` (declaring ``(j, i, h, a)`` stores ``(i, j, h, -a)``), so the
dense matrix reconstructs conjugate pairs exactly rather than approximately.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple

import numpy as np

from .defaults import DEFAULTS


class Edge(NamedTuple):
    i: int
    j: int
    h: float
    alpha: float


class GraphFormatError(ValueError):
    """Raised on malformed graph or circuit files; carries the line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


def _check_finite_real(value, what: str) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{what} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class WalkHamiltonian:
    """Hermitian walk generator over ``n_nodes`` basis states.

    Immutable after construction; edges are stored canonically (``i < j``,
    sorted) and ``self_energies`` as sorted ``(node, energy)`` pairs.
    ``labels`` optionally records the string names a graph file used for
    each index, for traceability in reports.
    """

    n_nodes: int
    edges: tuple[Edge, ...] = ()
    self_energies: tuple[tuple[int, float], ...] = ()
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if not isinstance(self.n_nodes, int) or self.n_nodes < 1:
            raise ValueError("n_nodes must be a positive integer")
        canonical = []
        seen: set[tuple[int, int]] = set()
        for raw in self.edges:
            i, j, h, alpha = raw
            if not (isinstance(i, (int, np.integer)) and isinstance(j, (int, np.integer))):
                raise ValueError(f"edge endpoints must be integers, got {raw!r}")
            i, j = int(i), int(j)
            if i == j:
                raise ValueError(f"self-coupling ({i}, {j}) is not an edge; use a self-energy")
            if not (0 <= i < self.n_nodes and 0 <= j < self.n_nodes):
                raise ValueError(f"edge ({i}, {j}) index out of range for {self.n_nodes} nodes")
            h = _check_finite_real(h, "edge magnitude")
            alpha = _check_finite_real(alpha, "edge phase")
            if h == 0.0:
                raise ValueError(f"edge ({i}, {j}) has zero magnitude; omit absent edges")
            if h < 0.0:
                raise ValueError(f"edge ({i}, {j}) has negative magnitude {h}")
            if i > j:
                i, j, alpha = j, i, -alpha
            if (i, j) in seen:
                raise ValueError(f"duplicate edge ({i}, {j})")
            seen.add((i, j))
            canonical.append(Edge(i, j, h, alpha))
        canonical.sort(key=lambda e: (e.i, e.j))
        object.__setattr__(self, "edges", tuple(canonical))

        energies = self.self_energies
        if isinstance(energies, Mapping):
            energies = energies.items()
        selfs = []
        seen_nodes: set[int] = set()
        for node, energy in energies:
            node = int(node)
            if not (0 <= node < self.n_nodes):
                raise ValueError(f"self-energy node {node} out of range")
            if node in seen_nodes:
                raise ValueError(f"duplicate self-energy for node {node}")
            seen_nodes.add(node)
            if isinstance(energy, complex) and energy.imag != 0.0:
                raise ValueError(f"self-energy of node {node} must be real, got {energy!r}")
            selfs.append((node, _check_finite_real(energy, "self-energy")))
        selfs.sort()
        object.__setattr__(self, "self_energies", tuple(selfs))

        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) > self.n_nodes:
                raise ValueError("more labels than nodes")
            object.__setattr__(self, "labels", labels)

        object.__setattr__(self, "_edge_index",
                           {(e.i, e.j): e for e in self.edges})

    def has_edge(self, u: int, v: int) -> bool:
        key = (u, v) if u < v else (v, u)
        return key in self._edge_index  # type: ignore[attr-defined]

    def directed_phase(self, u: int, v: int) -> float:
        """Phase of the dense entry ``H[u, v]`` (raises if the edge is absent)."""
        edge = self._edge_index.get((u, v) if u < v else (v, u))  # type: ignore[attr-defined]
        if edge is None:
            raise ValueError(f"no edge between {u} and {v}")
        return edge.alpha if u < v else -edge.alpha

    def diagonal(self) -> np.ndarray:
        diag = np.zeros(self.n_nodes)
        for node, energy in self.self_energies:
            diag[node] = energy
        return diag

    def with_edges(self, edges: Iterable) -> "WalkHamiltonian":
        return WalkHamiltonian(self.n_nodes, tuple(edges), self.self_energies, self.labels)

    def zero_phase_copy(self) -> "WalkHamiltonian":
        return self.with_edges(Edge(e.i, e.j, e.h, 0.0) for e in self.edges)


@dataclass(frozen=True)
class GraphSkeleton:
    """Unweighted support structure: simple edges plus self-edge markers."""

    n_nodes: int
    edges: tuple[tuple[int, int], ...]
    self_nodes: tuple[int, ...] = ()

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n_nodes)]
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return adj


def to_dense(hamiltonian: WalkHamiltonian) -> np.ndarray:
    """Dense Hermitian matrix; conjugate pairs are exact by construction."""
    n = hamiltonian.n_nodes
    matrix = np.zeros((n, n), dtype=complex)
    for i, j, h, alpha in hamiltonian.edges:
        value = h * np.exp(1j * alpha)
        matrix[i, j] = value
        matrix[j, i] = value.conjugate()
    for node, energy in hamiltonian.self_energies:
        matrix[node, node] = energy
    return matrix


def skeleton(hamiltonian: WalkHamiltonian,
             self_edge_tol: float = DEFAULTS.self_edge) -> GraphSkeleton:
    """Support graph of the Hamiltonian.

    A node carries a self-edge only when its energy exceeds the minimum
    diagonal by more than ``self_edge_tol``: adding the same constant to
    every self-energy does not change the walk, so a uniform diagonal is
    no structure at all.
    """
    diag = hamiltonian.diagonal()
    shifted = diag - diag.min()
    self_nodes = tuple(int(i) for i in np.flatnonzero(shifted > self_edge_tol))
    edges = tuple((e.i, e.j) for e in hamiltonian.edges)
    return GraphSkeleton(hamiltonian.n_nodes, edges, self_nodes)


def _format_real(x: float) -> str:
    return format(float(x), ".17g")


def render_graph(hamiltonian: WalkHamiltonian) -> str:
    """Graph-file text for the Hamiltonian; ``parse_graph`` round-trips it."""
    lines = [f"nodes {hamiltonian.n_nodes}"]
    for i, j, h, alpha in hamiltonian.edges:
        lines.append(f"edge {i} {j} {_format_real(h)} {_format_real(alpha)}")
    for node, energy in hamiltonian.self_energies:
        lines.append(f"self {node} {_format_real(energy)}")
    return "\n".join(lines) + "\n"


def _looks_like_int(token: str) -> bool:
    body = token[1:] if token[:1] in "+-" else token
    return body.isdigit() and body != ""


class _NodeResolver:
    """Maps node tokens to dense indices.

    Integer tokens are indices directly; non-integer tokens are string
    labels assigned indices in order of first appearance.  The two styles
    cannot be mixed within one file.
    """

    def __init__(self, n_nodes: int):
        self.n_nodes = n_nodes
        self.mode: str | None = None
        self.label_map: dict[str, int] = {}

    def resolve(self, token: str, line: int) -> int:
        if _looks_like_int(token):
            if self.mode == "label":
                raise GraphFormatError("cannot mix integer indices and string labels", line)
            self.mode = "index"
            index = int(token)
            if not (0 <= index < self.n_nodes):
                raise GraphFormatError(f"node index {index} out of range", line)
            return index
        if self.mode == "index":
            raise GraphFormatError("cannot mix integer indices and string labels", line)
        self.mode = "label"
        if token not in self.label_map:
            if len(self.label_map) >= self.n_nodes:
                raise GraphFormatError(f"label {token!r} exceeds declared node count", line)
            self.label_map[token] = len(self.label_map)
        return self.label_map[token]

    def labels(self) -> tuple[str, ...] | None:
        if self.mode != "label":
            return None
        return tuple(sorted(self.label_map, key=self.label_map.get))


def _parse_real(token: str, what: str, line: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise GraphFormatError(f"bad {what} {token!r}", line) from None
    if not math.isfinite(value):
        raise GraphFormatError(f"{what} must be finite, got {token!r}", line)
    return value


def parse_graph(text: str) -> WalkHamiltonian:
    """Parse graph-file text into a validated WalkHamiltonian.

    Format (line oriented, ``#`` starts a comment):

        nodes <N>
        edge <i> <j> <h> <alpha>     # h > 0, alpha in radians
        self <i> <energy>
    """
    n_nodes: int | None = None
    resolver: _NodeResolver | None = None
    edges: list[Edge] = []
    seen_edges: set[tuple[int, int]] = set()
    selfs: list[tuple[int, float]] = []
    seen_selfs: set[int] = set()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        keyword = tokens[0]
        if n_nodes is None:
            if keyword != "nodes":
                raise GraphFormatError("first declaration must be 'nodes <N>'", lineno)
            if len(tokens) != 2 or not _looks_like_int(tokens[1]):
                raise GraphFormatError("expected 'nodes <N>'", lineno)
            n_nodes = int(tokens[1])
            if n_nodes < 1:
                raise GraphFormatError("node count must be positive", lineno)
            resolver = _NodeResolver(n_nodes)
            continue
        if keyword == "nodes":
            raise GraphFormatError("duplicate 'nodes' declaration", lineno)
        if keyword == "edge":
            if len(tokens) != 5:
                raise GraphFormatError("expected 'edge <i> <j> <h> <alpha>'", lineno)
            u = resolver.resolve(tokens[1], lineno)
            v = resolver.resolve(tokens[2], lineno)
            if u == v:
                raise GraphFormatError(f"edge endpoints coincide ({tokens[1]})", lineno)
            h = _parse_real(tokens[3], "edge magnitude", lineno)
            alpha = _parse_real(tokens[4], "edge phase", lineno)
            if h == 0.0:
                raise GraphFormatError("zero-magnitude edge (omit absent edges)", lineno)
            if h < 0.0:
                raise GraphFormatError("negative edge magnitude", lineno)
            if u > v:
                u, v, alpha = v, u, -alpha
            if (u, v) in seen_edges:
                raise GraphFormatError(f"duplicate edge between {tokens[1]} and {tokens[2]}", lineno)
            seen_edges.add((u, v))
            edges.append(Edge(u, v, h, alpha))
        elif keyword == "self":
            if len(tokens) != 3:
                raise GraphFormatError("expected 'self <i> <energy>'", lineno)
            node = resolver.resolve(tokens[1], lineno)
            if node in seen_selfs:
                raise GraphFormatError(f"duplicate self-energy for {tokens[1]}", lineno)
            seen_selfs.add(node)
            selfs.append((node, _parse_real(tokens[2], "self-energy", lineno)))
        else:
            raise GraphFormatError(f"unknown declaration {keyword!r}", lineno)

    if n_nodes is None:
        raise GraphFormatError("empty graph file (missing 'nodes <N>')")
    return WalkHamiltonian(n_nodes, tuple(edges), tuple(selfs), resolver.labels())


def load_graph(path) -> WalkHamiltonian:
    with open(path, encoding="utf-8") as handle:
        return parse_graph(handle.read())
