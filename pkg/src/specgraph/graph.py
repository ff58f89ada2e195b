"""Immutable simple graphs, the graph6 codec, and the graph constructions.

Vertex orderings produced by the constructors are fixed so that spectra and
eigenvector-based tests are reproducible:

* cliques / multipartite parts are laid out consecutively in the listed order;
* cones and multicones put their apex vertices first;
* ``rook(m)`` indexes cell ``(i, j)`` as ``i * m + j`` (row-major);
* ``petersen()`` and ``triangular(m)`` index 2-subsets of ``{0..m-1}`` in
  lexicographic order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np

GRAPH6_HEADER = ">>graph6<<"
GRAPH6_MAX_N = 258047


class Graph6Error(ValueError):
    """Malformed graph6 word; ``offset`` is the byte position of the fault."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class CapacityError(ValueError):
    pass


class ConstructionError(ValueError):
    pass


class Graph:
    """A simple undirected graph on vertices ``0..n-1``.

    The adjacency matrix is stored as a read-only ``uint8`` array; instances
    are never mutated after construction.
    """

    __slots__ = ("_adj", "_degrees")

    def __init__(self, adjacency, *, _trusted: bool = False):
        adj = np.array(adjacency, dtype=np.uint8, copy=True)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            if adj.size == 0:
                adj = np.zeros((0, 0), dtype=np.uint8)
            else:
                raise ValueError("adjacency must be a square matrix")
        if not _trusted:
            if adj.size and adj.max() > 1:
                raise ValueError("adjacency entries must be 0 or 1")
            if np.any(adj != adj.T):
                raise ValueError("adjacency must be symmetric")
            if np.any(np.diagonal(adj)):
                raise ValueError("simple graphs have no loops")
        adj.setflags(write=False)
        self._adj = adj
        self._degrees = tuple(int(d) for d in adj.sum(axis=1))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        adj = np.zeros((n, n), dtype=np.uint8)
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            adj[u, v] = adj[v, u] = 1
        return cls(adj, _trusted=True)

    @property
    def n(self) -> int:
        return self._adj.shape[0]

    @property
    def adjacency(self) -> np.ndarray:
        return self._adj

    @property
    def degrees(self) -> tuple[int, ...]:
        return self._degrees

    @property
    def num_edges(self) -> int:
        return sum(self._degrees) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u, v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(int(x) for x in np.flatnonzero(self._adj[v]))

    def edges(self) -> list[tuple[int, int]]:
        rows, cols = np.nonzero(np.triu(self._adj, 1))
        return [(int(u), int(v)) for u, v in zip(rows, cols)]

    def is_regular(self) -> bool:
        return len(set(self._degrees)) <= 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj.shape == other._adj.shape and bool(np.array_equal(self._adj, other._adj))

    def __hash__(self) -> int:
        return hash((self.n, self._adj.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.num_edges})"


# ---------------------------------------------------------------------------
# graph6
# ---------------------------------------------------------------------------


@lru_cache(maxsize=128)
def _pair_order(n: int) -> tuple[np.ndarray, np.ndarray]:
    # graph6 visits (i, j) with j outer and i < j inner; tril row-major gives
    # exactly (j, i) in that order.
    hi, lo = np.tril_indices(n, -1)
    return lo, hi


def _encode_size(n: int) -> bytes:
    if n < 0:
        raise CapacityError("negative vertex count")
    if n <= 62:
        return bytes([n + 63])
    if n <= GRAPH6_MAX_N:
        return bytes([126, (n >> 12) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63])
    raise CapacityError(f"graph6 encoding supports n <= {GRAPH6_MAX_N}, got {n}")


def parse_graph6(text: str | bytes) -> Graph:
    """Decode one graph6 word (a trailing newline and the stream header are tolerated)."""
    if isinstance(text, str):
        try:
            data = text.encode("ascii")
        except UnicodeEncodeError as exc:
            raise Graph6Error("non-ASCII character", exc.start) from None
    else:
        data = bytes(text)
    data = data.rstrip(b"\r\n")
    base = 0
    if data.startswith(GRAPH6_HEADER.encode()):
        base = len(GRAPH6_HEADER)
        data = data[base:]
    if not data:
        raise Graph6Error("empty graph6 word", base)
    for i, b in enumerate(data):
        if not 63 <= b <= 126:
            raise Graph6Error(f"byte 0x{b:02x} outside graph6 range 63..126", base + i)

    if data[0] != 126:
        n, pos = data[0] - 63, 1
    else:
        if len(data) >= 2 and data[1] == 126:
            raise Graph6Error("8-byte size prefix not supported", base + 1)
        if len(data) < 4:
            raise Graph6Error("truncated size prefix", base + len(data))
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        pos = 4
        if n <= 62:
            raise Graph6Error("non-canonical long size prefix", base)

    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(data) - pos != nbytes:
        raise Graph6Error(
            f"expected {nbytes} body bytes for n={n}, found {len(data) - pos}",
            base + min(len(data), pos + nbytes),
        )
    adj = np.zeros((n, n), dtype=np.uint8)
    if nbytes:
        body = np.frombuffer(data, dtype=np.uint8, offset=pos) - 63
        bits = np.unpackbits(body[:, None], axis=1)[:, 2:].ravel()
        if bits[nbits:].any():
            raise Graph6Error("nonzero padding bits", base + len(data) - 1)
        lo, hi = _pair_order(n)
        adj[lo, hi] = bits[:nbits]
        adj[hi, lo] = bits[:nbits]
    return Graph(adj, _trusted=True)


def encode_graph6(g: Graph) -> str:
    """Canonical graph6 word for ``g`` (no header, no newline)."""
    head = _encode_size(g.n)
    lo, hi = _pair_order(g.n)
    bits = g.adjacency[lo, hi].astype(np.uint8)
    pad = (-len(bits)) % 6
    if pad:
        bits = np.concatenate([bits, np.zeros(pad, dtype=np.uint8)])
    if len(bits):
        groups = bits.reshape(-1, 6) @ np.array([32, 16, 8, 4, 2, 1], dtype=np.uint8)
        body = (groups.astype(np.uint8) + 63).tobytes()
    else:
        body = b""
    return (head + body).decode("ascii")


def read_graph6_lines(lines: Iterable[str | bytes]) -> Iterator[tuple[int, str]]:
    """Yield ``(line_number, word)`` for non-blank lines, skipping stream headers."""
    for lineno, raw in enumerate(lines, start=1):
        line = raw.decode("ascii", "replace") if isinstance(raw, bytes) else raw
        line = line.rstrip("\r\n")
        if line.startswith(GRAPH6_HEADER):
            line = line[len(GRAPH6_HEADER):]
        if not line:
            continue
        yield lineno, line


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------


def empty_graph(n: int) -> Graph:
    if n < 0:
        raise ConstructionError("vertex count must be nonnegative")
    return Graph(np.zeros((n, n), dtype=np.uint8), _trusted=True)


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise ConstructionError("complete graph needs at least one vertex")
    adj = np.ones((n, n), dtype=np.uint8)
    np.fill_diagonal(adj, 0)
    return Graph(adj, _trusted=True)


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ConstructionError("cycle needs at least 3 vertices")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    if n < 1:
        raise ConstructionError("path needs at least one vertex")
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def star_graph(k: int) -> Graph:
    """K_{1,k} with the centre at vertex 0."""
    if k < 1:
        raise ConstructionError("star needs at least one leaf")
    return Graph.from_edges(k + 1, ((0, i) for i in range(1, k + 1)))


def cliques_union(sizes: Sequence[int]) -> Graph:
    if not sizes or any(s < 1 for s in sizes):
        raise ConstructionError("clique sizes must be >= 1")
    n = sum(sizes)
    adj = np.zeros((n, n), dtype=np.uint8)
    start = 0
    for s in sizes:
        adj[start:start + s, start:start + s] = 1
        start += s
    np.fill_diagonal(adj, 0)
    return Graph(adj, _trusted=True)


def complete_multipartite(parts: Sequence[int]) -> Graph:
    if not parts or any(p < 1 for p in parts):
        raise ConstructionError("part sizes must be >= 1")
    return complement(cliques_union(parts))


def rook_graph(m: int) -> Graph:
    """The m x m rook's graph, i.e. the line graph of K_{m,m}."""
    if m < 2:
        raise ConstructionError("rook graph needs m >= 2")
    cells = [(i, j) for i in range(m) for j in range(m)]
    return Graph.from_edges(
        m * m,
        ((a, b) for a, b in combinations(range(m * m), 2)
         if cells[a][0] == cells[b][0] or cells[a][1] == cells[b][1]),
    )


def rook_row(m: int, i: int) -> frozenset[int]:
    """Cells of row ``i`` of ``rook_graph(m)``, a Delsarte clique of size m."""
    if not 0 <= i < m:
        raise ConstructionError(f"row {i} out of range for m={m}")
    return frozenset(i * m + j for j in range(m))


def rook_column(m: int, j: int) -> frozenset[int]:
    if not 0 <= j < m:
        raise ConstructionError(f"column {j} out of range for m={m}")
    return frozenset(i * m + j for i in range(m))


def triangular_graph(m: int) -> Graph:
    """L(K_m): 2-subsets of {0..m-1}, adjacent when they share an element."""
    if m < 2:
        raise ConstructionError("triangular graph needs m >= 2")
    pairs = list(combinations(range(m), 2))
    return Graph.from_edges(
        len(pairs),
        ((a, b) for a, b in combinations(range(len(pairs)), 2) if set(pairs[a]) & set(pairs[b])),
    )


def petersen_graph() -> Graph:
    """Kneser graph K(5,2): 2-subsets of {0..4}, adjacent when disjoint."""
    pairs = list(combinations(range(5), 2))
    return Graph.from_edges(
        10,
        ((a, b) for a, b in combinations(range(10), 2) if not set(pairs[a]) & set(pairs[b])),
    )


def complement(g: Graph) -> Graph:
    adj = 1 - g.adjacency
    np.fill_diagonal(adj, 0)
    return Graph(adj, _trusted=True)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    n = g.n + h.n
    adj = np.zeros((n, n), dtype=np.uint8)
    adj[:g.n, :g.n] = g.adjacency
    adj[g.n:, g.n:] = h.adjacency
    return Graph(adj, _trusted=True)


def join(g: Graph, h: Graph) -> Graph:
    adj = np.array(disjoint_union(g, h).adjacency)
    adj[:g.n, g.n:] = 1
    adj[g.n:, :g.n] = 1
    return Graph(adj, _trusted=True)


def compose(op: str, g: Graph, h: Graph) -> Graph:
    if op == "disjoint-union":
        return disjoint_union(g, h)
    if op == "join":
        return join(g, h)
    raise ValueError(f"unknown composition {op!r}")


def multicone(s: int, g: Graph) -> Graph:
    """Join of ``s`` isolated apex vertices (placed first) with ``g``."""
    if s < 1:
        raise ConstructionError("multicone needs at least one apex")
    return join(empty_graph(s), g)


def cone(g: Graph) -> Graph:
    return multicone(1, g)


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise IndexError(f"vertex {v} out of range for n={g.n}")


def induced_subgraph(g: Graph, vertices: Sequence[int]) -> Graph:
    idx = list(vertices)
    for v in idx:
        _check_vertex(g, v)
    return Graph(g.adjacency[np.ix_(idx, idx)], _trusted=True)


def delete_vertex(g: Graph, v: int) -> Graph:
    _check_vertex(g, v)
    return induced_subgraph(g, [u for u in range(g.n) if u != v])


def relabel(g: Graph, order: Sequence[int]) -> Graph:
    """Graph whose vertex ``i`` is vertex ``order[i]`` of ``g``."""
    if sorted(order) != list(range(g.n)):
        raise ValueError("order must be a permutation of the vertices")
    return induced_subgraph(g, order)


def seidel_switch(g: Graph, u: Iterable[int]) -> Graph:
    members = set(u)
    for v in members:
        _check_vertex(g, v)
    mask = np.zeros(g.n, dtype=bool)
    mask[list(members)] = True
    cross = np.logical_xor.outer(mask, mask)
    return Graph(np.where(cross, 1 - g.adjacency, g.adjacency), _trusted=True)


def connected_components(g: Graph) -> list[tuple[int, ...]]:
    """Components as sorted vertex tuples, ordered by smallest vertex."""
    seen = [False] * g.n
    nbrs = [np.flatnonzero(row) for row in g.adjacency]
    comps = []
    for root in range(g.n):
        if seen[root]:
            continue
        seen[root] = True
        stack, comp = [root], [root]
        while stack:
            x = stack.pop()
            for y in nbrs[x]:
                if not seen[y]:
                    seen[y] = True
                    stack.append(int(y))
                    comp.append(int(y))
        comps.append(tuple(sorted(comp)))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n >= 1 and len(connected_components(g)) == 1


@dataclass(frozen=True)
class ValencyPartition:
    valencies: tuple[int, ...]            # k_1 > ... > k_t
    classes: tuple[tuple[int, ...], ...]  # classes[i] = vertices of degree valencies[i]

    @property
    def t(self) -> int:
        return len(self.valencies)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)


def valency_partition(g: Graph) -> ValencyPartition:
    valencies = tuple(sorted(set(g.degrees), reverse=True))
    classes = tuple(tuple(v for v in range(g.n) if g.degrees[v] == k) for k in valencies)
    return ValencyPartition(valencies, classes)


# ---------------------------------------------------------------------------
# family specs
# ---------------------------------------------------------------------------

_PARAM_FAMILIES = {
    "cliques-union": cliques_union,
    "complete-multipartite": complete_multipartite,
}
_SCALAR_FAMILIES = {
    "cycle": cycle_graph,
    "path": path_graph,
    "star": star_graph,
    "rook": rook_graph,
    "triangular": triangular_graph,
    "complete": complete_graph,
    "empty": empty_graph,
}
FAMILY_TAGS = (
    tuple(_PARAM_FAMILIES) + tuple(_SCALAR_FAMILIES)
    + ("petersen", "cone-over", "multicone-over", "join", "disjoint-union")
)


@dataclass(frozen=True)
class FamilySpec:
    tag: str
    params: tuple[int, ...] = ()
    operands: tuple[Graph, ...] = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(int(p) for p in self.params))
        object.__setattr__(self, "operands", tuple(self.operands))
        tag, p, ops = self.tag, self.params, self.operands
        if tag not in FAMILY_TAGS:
            raise ConstructionError(f"unknown family {tag!r}")
        if tag in _PARAM_FAMILIES:
            if not p or min(p) < 1:
                raise ConstructionError(f"{tag} needs a nonempty list of sizes >= 1")
        elif tag in _SCALAR_FAMILIES:
            if len(p) != 1:
                raise ConstructionError(f"{tag} takes exactly one integer parameter")
        elif tag == "petersen":
            if p or ops:
                raise ConstructionError("petersen takes no parameters")
        elif tag == "cone-over":
            if p or len(ops) != 1:
                raise ConstructionError("cone-over takes one operand graph")
        elif tag == "multicone-over":
            if len(p) != 1 or p[0] < 1 or len(ops) != 1:
                raise ConstructionError("multicone-over takes s >= 1 and one operand graph")
        elif len(ops) != 2 or p:
            raise ConstructionError(f"{tag} takes two operand graphs")


def build_family(spec: FamilySpec) -> Graph:
    tag, p, ops = spec.tag, spec.params, spec.operands
    if tag in _PARAM_FAMILIES:
        return _PARAM_FAMILIES[tag](p)
    if tag in _SCALAR_FAMILIES:
        return _SCALAR_FAMILIES[tag](p[0])
    if tag == "petersen":
        return petersen_graph()
    if tag == "cone-over":
        return cone(ops[0])
    if tag == "multicone-over":
        return multicone(p[0], ops[0])
    return compose(tag, ops[0], ops[1])
