"""Undirected communication graphs and the topology generators used in experiments.

Vertices are 0-indexed in code and 1-indexed in every file or report.
"""

from collections import deque
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import DisconnectedGraph, InfeasibleTopology


@dataclass(frozen=True)
class Graph:
    n_vertices: int
    edges: frozenset
    neighbors: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        normalized = set()
        for i, j in self.edges:
            i, j = int(i), int(j)
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            if not (0 <= i < self.n_vertices and 0 <= j < self.n_vertices):
                raise ValueError(f"edge ({i}, {j}) out of range for {self.n_vertices} vertices")
            normalized.add((min(i, j), max(i, j)))
        adj = [[] for _ in range(self.n_vertices)]
        for i, j in sorted(normalized):
            adj[i].append(j)
            adj[j].append(i)
        object.__setattr__(self, "edges", frozenset(normalized))
        object.__setattr__(self, "neighbors", tuple(tuple(sorted(a)) for a in adj))

    @classmethod
    def from_edges(cls, n, edges):
        return cls(n, frozenset(tuple(e) for e in edges))

    def __len__(self):
        return self.n_vertices

    @property
    def edge_list(self):
        """Edges as sorted (i, j) pairs with i < j."""
        return sorted(self.edges)

    def degree(self, i):
        return len(self.neighbors[i])

    def laplacian(self):
        lap = np.zeros((self.n_vertices, self.n_vertices))
        for i, j in self.edges:
            lap[i, j] = lap[j, i] = -1.0
            lap[i, i] += 1.0
            lap[j, j] += 1.0
        return lap


def max_degree(g: Graph) -> int:
    return max((len(a) for a in g.neighbors), default=0)


def _bfs(g: Graph, source: int):
    hops = [-1] * g.n_vertices
    hops[source] = 0
    queue = deque([source])
    while queue:
        i = queue.popleft()
        for j in g.neighbors[i]:
            if hops[j] < 0:
                hops[j] = hops[i] + 1
                queue.append(j)
    return hops


def is_connected(g: Graph) -> bool:
    if g.n_vertices == 0:
        return True
    return min(_bfs(g, 0)) >= 0


def is_tree(g: Graph) -> bool:
    return is_connected(g) and len(g.edges) == g.n_vertices - 1


def diameter(g: Graph) -> int:
    """Largest shortest-path hop count between any two vertices."""
    best = 0
    for s in range(g.n_vertices):
        hops = _bfs(g, s)
        if min(hops) < 0:
            raise DisconnectedGraph("diameter is undefined for a disconnected graph")
        best = max(best, max(hops))
    return best


# -- generators ---------------------------------------------------------------

def line(n: int) -> Graph:
    if n < 1:
        raise InfeasibleTopology("line needs at least one vertex")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def ring(n: int) -> Graph:
    if n < 3:
        raise InfeasibleTopology("ring needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def circulant(n: int, offsets) -> Graph:
    """Vertex i is joined to i +/- k (mod n) for each k in ``offsets``."""
    edges = set()
    for k in offsets:
        k = int(k)
        if not 0 < k <= n // 2:
            raise InfeasibleTopology(f"circulant offset {k} must lie in [1, {n // 2}]")
        for i in range(n):
            j = (i + k) % n
            edges.add((min(i, j), max(i, j)))
    g = Graph.from_edges(n, edges)
    if not is_connected(g):
        raise InfeasibleTopology(f"circulant({n}, {list(offsets)}) is disconnected")
    return g


def complete(n: int) -> Graph:
    if n < 1:
        raise InfeasibleTopology("complete graph needs at least one vertex")
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def random_tree(n: int, seed: int) -> Graph:
    """Uniform random labelled tree, decoded from a random Pruefer sequence."""
    if n < 1:
        raise InfeasibleTopology("tree needs at least one vertex")
    if n <= 2:
        return line(n)
    rng = np.random.default_rng(seed)
    seq = rng.integers(0, n, size=n - 2).tolist()
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    for v in seq:
        leaf = min(i for i in range(n) if degree[i] == 1)
        edges.append((leaf, v))
        degree[leaf] -= 1
        degree[v] -= 1
    a, b = (i for i in range(n) if degree[i] == 1)
    edges.append((a, b))
    return Graph.from_edges(n, edges)


def random_regular(n: int, k: int, seed: int, max_tries: int = 10_000) -> Graph:
    """k-regular graph from the pairing model, resampled until simple and connected.

    Dense requests (2k > n - 1) draw the sparser complement instead; a graph
    with minimum degree >= n/2 is always connected.
    """
    if k < 1 or k >= n or (n * k) % 2:
        raise InfeasibleTopology(f"no {k}-regular graph on {n} vertices")
    rng = np.random.default_rng(seed)
    if 2 * k > n - 1:
        sparse = _pairing_model(n, n - 1 - k, rng, max_tries, need_connected=False)
        every = {(i, j) for i in range(n) for j in range(i + 1, n)}
        return Graph.from_edges(n, every - sparse)
    return Graph.from_edges(n, _pairing_model(n, k, rng, max_tries, need_connected=True))


def _pairing_model(n, k, rng, max_tries, need_connected):
    if k == 0:
        return set()
    stubs = np.repeat(np.arange(n), k)
    for _ in range(max_tries):
        rng.shuffle(stubs)
        pairs = stubs.reshape(-1, 2)
        if np.any(pairs[:, 0] == pairs[:, 1]):
            continue
        edges = {(int(min(a, b)), int(max(a, b))) for a, b in pairs}
        if len(edges) != len(pairs):
            continue
        if not need_connected or is_connected(Graph.from_edges(n, edges)):
            return edges
    raise InfeasibleTopology(f"pairing model failed for n={n}, k={k} after {max_tries} tries")


def make_topology(text: str) -> Graph:
    """Parse a topology description.

    Accepted forms: ``line:N``, ``ring:N``, ``circulant:N:k1,k2,...``,
    ``tree:N:SEED``, ``regular:N:K:SEED``, ``complete:N``, ``file:PATH``.
    """
    kind, _, rest = text.strip().partition(":")
    kind = kind.lower()
    if kind == "file":
        return read_edge_list(rest)
    args = rest.split(":") if rest else []
    try:
        if kind == "line":
            return line(int(args[0]))
        if kind == "ring":
            return ring(int(args[0]))
        if kind == "complete":
            return complete(int(args[0]))
        if kind == "circulant":
            return circulant(int(args[0]), [int(k) for k in args[1].split(",")])
        if kind == "tree":
            return random_tree(int(args[0]), int(args[1]) if len(args) > 1 else 0)
        if kind in ("regular", "random-regular"):
            return random_regular(int(args[0]), int(args[1]), int(args[2]) if len(args) > 2 else 0)
    except (IndexError, ValueError) as exc:
        if isinstance(exc, InfeasibleTopology):
            raise
        raise ValueError(f"malformed topology {text!r}") from exc
    raise ValueError(f"unknown topology kind {kind!r}")


# -- edge-list files ------------------------------------------------------------

def format_edge_list(g: Graph) -> str:
    lines = [str(g.n_vertices)] + [f"{i + 1} {j + 1}" for i, j in g.edge_list]
    return "\n".join(lines) + "\n"


def write_edge_list(g: Graph, path):
    Path(path).write_text(format_edge_list(g))


def parse_edge_list(text: str) -> Graph:
    rows = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    rows = [r for r in rows if r]
    if not rows:
        raise ValueError("empty edge-list file")
    n = int(rows[0])
    edges = []
    for r in rows[1:]:
        i, j = (int(t) for t in r.split())
        edges.append((i - 1, j - 1))
    return Graph.from_edges(n, edges)


def read_edge_list(path) -> Graph:
    return parse_edge_list(Path(path).read_text())
