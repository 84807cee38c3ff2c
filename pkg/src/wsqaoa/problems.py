"""
Classical objectives over n-bit strings and graph ingestion.

Bitstrings are written with character ``j`` holding ``x_j``; under the
little-endian basis convention that string ``b`` sits at index
``sum(int(b[j]) << j)``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import InvalidInputError, ParseError, SizeGuardError

MAX_BRUTE_FORCE_QUBITS = 20


def bitstring_to_index(b: str) -> int:
    if not b or any(ch not in "01" for ch in b):
        raise InvalidInputError(f"not a bitstring: {b!r}")
    return sum(1 << j for j, ch in enumerate(b) if ch == "1")


def index_to_bitstring(k: int, n: int) -> str:
    return "".join("1" if (k >> j) & 1 else "0" for j in range(n))


def _bit_matrix(n: int) -> np.ndarray:
    """(2**n, n) array whose row k holds the bits of k, qubit 0 first."""
    k = np.arange(1 << n)
    return ((k[:, None] >> np.arange(n)[None, :]) & 1).astype(np.int8)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if self.n < 1:
            raise InvalidInputError("graph needs at least one vertex")
        seen = set()
        for u, v, w in self.edges:
            if u == v:
                raise InvalidInputError(f"self-loop on vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidInputError(f"edge ({u}, {v}) out of range for n={self.n}")
            if int(w) != w or w < 1:
                raise InvalidInputError(f"edge ({u}, {v}) weight must be a positive integer")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise InvalidInputError(f"duplicate edge ({u}, {v})")
            seen.add(key)

    @property
    def total_weight(self) -> int:
        return sum(w for _, _, w in self.edges)

    @classmethod
    def from_edges(cls, edges, n: int | None = None) -> "Graph":
        norm = tuple((int(e[0]), int(e[1]), int(e[2]) if len(e) > 2 else 1) for e in edges)
        if n is None:
            n = 1 + max((max(u, v) for u, v, _ in norm), default=0)
        return cls(n, norm)


def complete_graph(n: int) -> Graph:
    return Graph.from_edges([(u, v) for u in range(n) for v in range(u + 1, n)], n)


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges([(u, (u + 1) % n) for u in range(n)], n)


def parse_graph(text: str) -> Graph:
    """Parse the edge-list format.

    One edge per line as ``u v`` or ``u v w``; ``#`` starts a comment and an
    optional first line ``n <count>`` fixes the vertex count.
    """
    n = None
    edges = []
    seen: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "n":
            if n is not None or edges:
                raise ParseError("vertex-count header must precede all edges", lineno)
            if len(tokens) != 2:
                raise ParseError(f"malformed header {raw!r}", lineno)
            n = _parse_int(tokens[1], lineno)
            if n < 1:
                raise ParseError("vertex count must be positive", lineno)
            continue
        if len(tokens) not in (2, 3):
            raise ParseError(f"expected 'u v' or 'u v w', got {raw!r}", lineno)
        u, v = _parse_int(tokens[0], lineno), _parse_int(tokens[1], lineno)
        w = _parse_int(tokens[2], lineno) if len(tokens) == 3 else 1
        if u < 0 or v < 0:
            raise ParseError("vertex indices must be non-negative", lineno)
        if u == v:
            raise ParseError(f"self-loop on vertex {u}", lineno)
        if w < 1:
            raise ParseError(f"weight must be a positive integer, got {w}", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"duplicate edge ({u}, {v}), first seen on line {seen[key]}", lineno)
        seen[key] = lineno
        edges.append((u, v, w))
    if not edges and n is None:
        raise ParseError("edge list is empty")
    inferred = 1 + max((max(u, v) for u, v, _ in edges), default=0)
    if n is not None and inferred > n:
        raise ParseError(f"edge endpoint {inferred - 1} exceeds declared vertex count {n}")
    return Graph(n if n is not None else inferred, tuple(edges))


def _parse_int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"not an integer: {token!r}", lineno) from None


def load_graph(path) -> Graph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))


@dataclass(frozen=True, eq=False)
class Objective:
    """A non-negative integer objective with brute-force statistics.

    ``values[k]`` is c evaluated at the bitstring of basis index ``k``.
    """

    n: int
    values: np.ndarray
    name: str = "table"
    c_max: int = field(init=False)
    c_avg: float = field(init=False)
    maximizers: tuple[str, ...] = field(init=False)

    def __post_init__(self):
        if self.n > MAX_BRUTE_FORCE_QUBITS:
            raise SizeGuardError(
                f"brute force refused for n={self.n} > {MAX_BRUTE_FORCE_QUBITS}"
            )
        vals = np.asarray(self.values)
        if vals.shape != (1 << self.n,):
            raise InvalidInputError(f"objective table needs {1 << self.n} values, got {vals.shape}")
        if not np.all(np.isfinite(vals)) or np.any(vals != np.round(vals)):
            raise InvalidInputError("objective values must be integers")
        vals = vals.astype(np.int64)
        if np.any(vals < 0):
            raise InvalidInputError("objective values must be non-negative")
        c_max = int(vals.max())
        if c_max <= 0:
            raise InvalidInputError("objective is identically zero")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "c_max", c_max)
        object.__setattr__(self, "c_avg", float(vals.mean()))
        object.__setattr__(self, "maximizers", tuple(
            index_to_bitstring(int(k), self.n) for k in np.flatnonzero(vals == c_max)
        ))

    def __call__(self, x: str) -> int:
        if len(x) != self.n:
            raise InvalidInputError(f"expected a {self.n}-bit string, got {x!r}")
        return int(self.values[bitstring_to_index(x)])


def maxcut_objective(g: Graph) -> Objective:
    if g.n > MAX_BRUTE_FORCE_QUBITS:
        raise SizeGuardError(f"brute force refused for n={g.n} > {MAX_BRUTE_FORCE_QUBITS}")
    bits = _bit_matrix(g.n)
    values = np.zeros(1 << g.n, dtype=np.int64)
    for u, v, w in g.edges:
        values += w * (bits[:, u] != bits[:, v])
    return Objective(g.n, values, name="maxcut")


def toy_objective() -> Objective:
    """The single-bit objective c(x) = x."""
    return Objective(1, np.array([0, 1]), name="toy")


def objective_from_table(doc: dict) -> Objective:
    try:
        n = int(doc["n"])
        values = doc["values"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"objective table needs integer 'n' and list 'values' ({exc})") from None
    if n < 1:
        raise ParseError("objective table needs n >= 1")
    if n > MAX_BRUTE_FORCE_QUBITS:
        raise SizeGuardError(f"brute force refused for n={n} > {MAX_BRUTE_FORCE_QUBITS}")
    if not isinstance(values, list) or len(values) != 1 << n:
        raise ParseError(f"objective table needs exactly {1 << n} values")
    if any(isinstance(v, bool) or not isinstance(v, int) for v in values):
        raise ParseError("objective values must be JSON integers")
    return Objective(n, np.array(values, dtype=np.int64), name=doc.get("name", "table"))


def load_objective(path) -> Objective:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    return objective_from_table(doc)


def cost_diagonal(obj: Objective) -> np.ndarray:
    return np.array(obj.values)


def random_graph(n: int, rng: np.random.Generator, edge_prob: float = 0.5, max_weight: int = 3) -> Graph:
    """Erdos-Renyi graph with integer weights; always has at least one edge."""
    edges = [
        (u, v, int(rng.integers(1, max_weight + 1)))
        for u in range(n) for v in range(u + 1, n)
        if rng.random() < edge_prob
    ]
    if not edges:
        u, v = sorted(rng.choice(n, size=2, replace=False).tolist())
        edges.append((u, v, int(rng.integers(1, max_weight + 1))))
    return Graph(n, tuple(edges))
