"""Simple undirected graphs: construction, named families, seeded random
sampling, a plain text edge-list format, and exact subgraph detectors.

Vertices are always 0..n-1.  Graphs are immutable; adjacency is stored as
one frozenset per vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence

from .errors import ParseError, ResourceCapError
from .seeds import mix64, unit_threshold


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1.

    ``adj[v]`` is the neighbor set of v.  Loops and multi-edges cannot be
    represented; symmetry holds by construction in :meth:`from_edges`.
    """

    n: int
    adj: tuple[frozenset[int], ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {n}")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u} not allowed")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(frozenset(s) for s in nbrs))

    def neighbors(self, v: int) -> frozenset[int]:
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range for n={self.n}")
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise ValueError(f"edge query ({u}, {v}) out of range for n={self.n}")
        return v in self.adj[u]

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges as (u, v) with u < v, in lexicographic order."""
        for u in range(self.n):
            for v in sorted(self.adj[u]):
                if u < v:
                    yield (u, v)

    @property
    def edge_count(self) -> int:
        return sum(len(s) for s in self.adj) // 2

    def complement_nonedges(self) -> Iterator[tuple[int, int]]:
        for u, v in combinations(range(self.n), 2):
            if v not in self.adj[u]:
                yield (u, v)

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph, relabeled 0..len(vertices)-1 in the given order."""
        index = {v: i for i, v in enumerate(vertices)}
        if len(index) != len(vertices):
            raise ValueError("duplicate vertices in induced subgraph request")
        es = []
        for u, v in combinations(vertices, 2):
            if self.has_edge(u, v):
                es.append((index[u], index[v]))
        return Graph.from_edges(len(vertices), es)

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for w in self.adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n


# ---------------------------------------------------------------------------
# edge-list text format


def serialize_edge_list(g: Graph) -> str:
    """Render a graph in the plain edge-list format.

    First line is ``n <count>``; each following line is one edge ``u v``
    with u < v, sorted lexicographically.  Lines starting with ``#`` are
    comments on input and are never emitted.
    """
    lines = [f"n {g.n}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    """Parse the edge-list format produced by :func:`serialize_edge_list`.

    Duplicate edges collapse silently; loops, malformed lines, and
    out-of-range endpoints raise :class:`ParseError` with the line number.
    """
    n: Optional[int] = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if n is None:
            if len(tokens) != 2 or tokens[0] != "n":
                raise ParseError(f"expected header 'n <count>', got {line!r}", lineno)
            try:
                n = int(tokens[1])
            except ValueError:
                raise ParseError(f"bad vertex count {tokens[1]!r}", lineno) from None
            if n < 0:
                raise ParseError(f"negative vertex count {n}", lineno)
            continue
        if len(tokens) != 2:
            raise ParseError(f"expected 'u v', got {line!r}", lineno)
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise ParseError(f"non-integer endpoint in {line!r}", lineno) from None
        if u == v:
            raise ParseError(f"loop at vertex {u}", lineno)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"edge ({u}, {v}) out of range for n={n}", lineno)
        edges.append((u, v))
    if n is None:
        raise ParseError("missing 'n <count>' header")
    return Graph.from_edges(n, edges)


# ---------------------------------------------------------------------------
# named families

_FAMILIES = ("complete", "cycle", "path", "complete_bipartite", "kneser", "xn")

_KNESER_VERTEX_CAP = 50_000


def complete_graph(m: int) -> Graph:
    if m < 0:
        raise ValueError(f"complete graph order must be nonnegative, got {m}")
    return Graph.from_edges(m, combinations(range(m), 2))


def cycle_graph(m: int) -> Graph:
    if m < 3:
        raise ValueError(f"cycle length must be at least 3, got {m}")
    return Graph.from_edges(m, [(i, (i + 1) % m) for i in range(m)])


def path_graph(m: int) -> Graph:
    if m < 1:
        raise ValueError(f"path order must be at least 1, got {m}")
    return Graph.from_edges(m, [(i, i + 1) for i in range(m - 1)])


def complete_bipartite_graph(a: int, b: int) -> Graph:
    """K_{a,b}: part one is vertices 0..a-1, part two is a..a+b-1."""
    if a < 1 or b < 1:
        raise ValueError(f"both part sizes must be positive, got ({a}, {b})")
    return Graph.from_edges(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def kneser_graph(n: int, k: int) -> Graph:
    """Kneser graph: vertices are the n-subsets of a (2n+k)-set, labeled
    0.. in lexicographic subset order; edges join disjoint subsets."""
    if n < 1 or k < 0:
        raise ValueError(f"kneser parameters need n >= 1 and k >= 0, got ({n}, {k})")
    subsets = [frozenset(c) for c in combinations(range(2 * n + k), n)]
    if len(subsets) > _KNESER_VERTEX_CAP:
        raise ValueError(
            f"kneser({n}, {k}) has {len(subsets)} vertices, beyond the "
            f"supported {_KNESER_VERTEX_CAP}")
    edges = [(i, j) for i, j in combinations(range(len(subsets)), 2)
             if not subsets[i] & subsets[j]]
    return Graph.from_edges(len(subsets), edges)


def xn_graph(k: int) -> Graph:
    """The partnered-clique family xn.

    Vertices 0..k-1 form a clique; partner vertices k..2k-1 are attached so
    that partner k+i is adjacent to every clique vertex except vertex i.
    No edges are placed among the partners.  2k vertices, 3k(k-1)/2 edges.
    """
    if k < 1:
        raise ValueError(f"xn order must be at least 1, got {k}")
    edges = list(combinations(range(k), 2))
    edges.extend((i, k + j) for i in range(k) for j in range(k) if i != j)
    return Graph.from_edges(2 * k, edges)


def make_named_graph(family: str, params: Sequence[int]) -> Graph:
    """Build a named graph; see the individual constructors for labeling."""
    params = list(params)
    if family == "complete":
        (m,) = params
        return complete_graph(m)
    if family == "cycle":
        (m,) = params
        return cycle_graph(m)
    if family == "path":
        (m,) = params
        return path_graph(m)
    if family == "complete_bipartite":
        a, b = params
        return complete_bipartite_graph(a, b)
    if family == "kneser":
        n, k = params
        return kneser_graph(n, k)
    if family == "xn":
        (k,) = params
        return xn_graph(k)
    raise ValueError(f"unknown family {family!r}; known: {', '.join(_FAMILIES)}")


def from_family_spec(spec: str) -> Graph:
    """Parse a compact family spec like ``complete:5`` or ``kneser:2,1``."""
    name, sep, rest = spec.partition(":")
    if not sep or not rest:
        raise ValueError(f"family spec needs the form name:p1[,p2], got {spec!r}")
    try:
        params = [int(tok) for tok in rest.split(",")]
    except ValueError:
        raise ValueError(f"non-integer parameter in family spec {spec!r}") from None
    try:
        return make_named_graph(name, params)
    except ValueError as exc:
        # surface arity mistakes (tuple unpack) uniformly
        raise ValueError(f"bad family spec {spec!r}: {exc}") from None


# ---------------------------------------------------------------------------
# seeded G(n, p)


@dataclass(frozen=True)
class GnpParams:
    """Parameters of one G(n, p) draw."""

    n: int
    p: float
    seed: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {self.n}")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"edge probability out of range: {self.p}")

    def sample(self) -> Graph:
        return gnp_sample(self.n, self.p, self.seed)


def gnp_sample(n: int, p: float, seed: int) -> Graph:
    """Sample G(n, p) deterministically.

    Each unordered pair gets an independent 64-bit draw keyed on
    ``(seed, pair_index)`` where pair_index enumerates pairs (u, v), u < v,
    in lexicographic order.  The same arguments always give the same graph,
    independent of call order or platform.
    """
    GnpParams(n, p, seed)  # validate
    threshold = unit_threshold(p)
    edges = []
    for t, (u, v) in enumerate(combinations(range(n), 2)):
        if mix64(seed, t) < threshold:
            edges.append((u, v))
    return Graph.from_edges(n, edges)


def derive_trial_seed(master_seed: int, p_index: int, trial_index: int) -> int:
    """Fixed public derivation of per-trial seeds used by surveys."""
    return mix64(master_seed, p_index, trial_index)


# ---------------------------------------------------------------------------
# cliques


def maximal_cliques(g: Graph, vertex_cap: int = 64) -> list[tuple[int, ...]]:
    """All inclusion-maximal cliques, each sorted, listed lexicographically.

    Classic pivoting branch and bound; the pivot is the candidate with the
    most eliminations, smallest index on ties, so output order never varies.
    """
    if g.n > vertex_cap:
        raise ResourceCapError(
            f"maximal clique enumeration capped at {vertex_cap} vertices "
            f"(got {g.n}); raise vertex_cap to override")
    if g.n == 0:
        return []
    out: list[tuple[int, ...]] = []

    def expand(r: set[int], p: set[int], x: set[int]) -> None:
        if not p and not x:
            out.append(tuple(sorted(r)))
            return
        pivot = max(sorted(p | x), key=lambda u: len(g.adj[u] & p))
        for v in sorted(p - g.adj[pivot]):
            expand(r | {v}, p & g.adj[v], x & g.adj[v])
            p = p - {v}
            x = x | {v}

    expand(set(), set(range(g.n)), set())
    return sorted(out)


def clique_number(g: Graph, vertex_cap: int = 64) -> int:
    """Order of the largest clique (0 for the empty graph)."""
    cliques = maximal_cliques(g, vertex_cap=vertex_cap)
    return max((len(c) for c in cliques), default=0)


# ---------------------------------------------------------------------------
# subgraph witnesses and detectors


@dataclass(frozen=True)
class SubgraphWitness:
    """A concrete placement of a sought subgraph.

    ``kind`` is one of ``clique``, ``complete_bipartite``, ``xn``.  For a
    clique there is one part; for the bipartite and xn kinds there are two
    (for xn: the clique vertices, then their partners in matching order).
    """

    kind: str
    parts: tuple[tuple[int, ...], ...]


def witness_is_valid(g: Graph, w: SubgraphWitness) -> bool:
    """Recheck every edge and non-edge a witness asserts."""
    flat = [v for part in w.parts for v in part]
    if len(set(flat)) != len(flat):
        return False
    if any(not 0 <= v < g.n for v in flat):
        return False
    if w.kind == "clique":
        (part,) = w.parts
        return all(g.has_edge(u, v) for u, v in combinations(part, 2))
    if w.kind == "complete_bipartite":
        a, b = w.parts
        return all(g.has_edge(u, v) for u in a for v in b)
    if w.kind == "xn":
        us, vs = w.parts
        if len(us) != len(vs):
            return False
        if not all(g.has_edge(u, v) for u, v in combinations(us, 2)):
            return False
        for i, vi in enumerate(vs):
            for j, uj in enumerate(us):
                if i == j:
                    if g.has_edge(uj, vi):
                        return False
                elif not g.has_edge(uj, vi):
                    return False
        return True
    raise ValueError(f"unknown witness kind {w.kind!r}")


def contains_complete_bipartite(g: Graph, a: int, b: int,
                                work_cap: int = 2_000_000) -> Optional[SubgraphWitness]:
    """First (A, B) placement of K_{a,b} as a subgraph, or None.

    Subgraph containment, not induced: the two parts need only be disjoint
    with all cross edges present.  A-sets are scanned in lexicographic
    order; B is the least b common neighbors outside A.
    """
    if a < 1 or b < 1:
        raise ValueError(f"part sizes must be positive, got ({a}, {b})")
    steps = 0
    for A in combinations(range(g.n), a):
        steps += 1
        if steps > work_cap:
            raise ResourceCapError(
                f"complete-bipartite search exceeded work cap {work_cap}")
        common = frozenset.intersection(*(g.adj[v] for v in A))
        cand = sorted(common - set(A))
        if len(cand) >= b:
            return SubgraphWitness("complete_bipartite", (A, tuple(cand[:b])))
    return None


def contains_xn(g: Graph, k: int,
                work_cap: int = 2_000_000) -> Optional[SubgraphWitness]:
    """First placement of the partnered-clique graph xn(k), or None.

    Needs a k-clique U plus distinct partners outside U, where the partner
    of u is adjacent to every other clique vertex but not to u.  Edges among
    partners are permitted; only the listed edges and non-edges are required.
    """
    if k < 1:
        raise ValueError(f"xn order must be at least 1, got {k}")
    every = frozenset(range(g.n))
    steps = 0
    for U in combinations(range(g.n), k):
        steps += 1
        if steps > work_cap:
            raise ResourceCapError(f"xn search exceeded work cap {work_cap}")
        if not all(g.has_edge(u, v) for u, v in combinations(U, 2)):
            continue
        uset = set(U)
        partners = []
        for u in U:
            rest = uset - {u}
            if rest:
                cand = frozenset.intersection(*(g.adj[w] for w in rest))
            else:
                cand = every
            cand = cand - g.adj[u] - uset
            cand = cand - {u}
            if not cand:
                break
            partners.append(min(cand))
        else:
            # partner pools for distinct clique vertices are disjoint when
            # k >= 2 (a shared partner would need an edge and a non-edge to
            # the same vertex), so the chosen partners are distinct
            return SubgraphWitness("xn", (U, tuple(partners)))
    return None


# ---------------------------------------------------------------------------
# density and balance


def density(g: Graph) -> Fraction:
    """Edge-vertex ratio e/v as an exact rational."""
    if g.n == 0:
        raise ValueError("density of the empty graph is undefined")
    return Fraction(g.edge_count, g.n)


def is_strictly_balanced(g: Graph, vertex_cap: int = 12) -> bool:
    """Whether every proper subgraph has strictly smaller density.

    It suffices to check induced subgraphs on proper nonempty vertex
    subsets: dropping edges alone always lowers density.  Exhaustive over
    2**n subsets, so capped.
    """
    if g.n == 0:
        raise ValueError("balance of the empty graph is undefined")
    if g.n > vertex_cap:
        raise ResourceCapError(
            f"strict balance check is exhaustive and capped at {vertex_cap} "
            f"vertices (got {g.n}); raise vertex_cap to override")
    d = density(g)
    for size in range(1, g.n):
        for sub in combinations(range(g.n), size):
            inside = set(sub)
            e = sum(1 for u in sub for w in g.adj[u] if w in inside) // 2
            if Fraction(e, size) >= d:
                return False
    return True
