"""Neighborhood complexes, the common-neighbor closure, and the poset
retract used to shrink homology computations.

The complex N[G] has a face for every vertex subset with a common neighbor,
so its facets are exactly the inclusion-maximal neighborhoods.  Closing the
nonempty neighborhoods under intersection yields the poset of closed sets;
its order complex (vertices are closed sets, faces are chains) is a
deformation retract of N[G] and usually far smaller.  The face poset itself
is never materialized.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .errors import ParseError, ResourceCapError
from .graphs import Graph


@dataclass(frozen=True)
class SimplicialComplex:
    """A finite simplicial complex given by its facets.

    ``ground_set`` is the number of potential vertices (labels are
    0..ground_set-1; not all need appear).  Facets are sorted tuples,
    pairwise inclusion-incomparable, each nonempty.  The empty complex has
    no facets and dimension -1.
    """

    ground_set: int
    facets: tuple[tuple[int, ...], ...]

    @classmethod
    def from_faces(cls, ground_set: int,
                   faces: Iterable[Sequence[int]]) -> "SimplicialComplex":
        """Build from arbitrary faces, keeping the inclusion-maximal ones."""
        if ground_set < 0:
            raise ValueError(f"ground set size must be nonnegative, got {ground_set}")
        sets = {frozenset(f) for f in faces}
        sets.discard(frozenset())
        for f in sets:
            for v in f:
                if not 0 <= v < ground_set:
                    raise ValueError(
                        f"face vertex {v} out of range for ground set {ground_set}")
        by_size = sorted(sets, key=len, reverse=True)
        maximal: list[frozenset[int]] = []
        for f in by_size:
            if not any(f < m for m in maximal):
                maximal.append(f)
        facets = tuple(sorted(tuple(sorted(f)) for f in maximal))
        return cls(ground_set, facets)

    @property
    def dimension(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    def vertices(self) -> tuple[int, ...]:
        """Vertices that actually appear in some facet, sorted."""
        seen: set[int] = set()
        for f in self.facets:
            seen.update(f)
        return tuple(sorted(seen))

    def is_face(self, s: Iterable[int]) -> bool:
        """Whether s lies inside some facet.  The empty set is a face of any
        nonempty complex and not of the empty complex."""
        ss = frozenset(s)
        if not ss:
            return bool(self.facets)
        return any(ss.issubset(f) for f in self.facets)

    def k_faces(self, k: int) -> list[tuple[int, ...]]:
        """All faces of dimension k (size k+1), sorted."""
        if k < 0:
            raise ValueError(f"face dimension must be nonnegative, got {k}")
        out: set[tuple[int, ...]] = set()
        for f in self.facets:
            if len(f) >= k + 1:
                out.update(combinations(f, k + 1))
        return sorted(out)

    def f_vector(self) -> tuple[int, ...]:
        """(f_0, ..., f_dim); empty tuple for the empty complex."""
        return tuple(len(self.k_faces(k)) for k in range(self.dimension + 1))

    def component_count(self) -> int:
        """Connected components of the underlying 1-skeleton."""
        verts = self.vertices()
        parent = {v: v for v in verts}

        def find(v: int) -> int:
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for f in self.facets:
            root = find(f[0])
            for v in f[1:]:
                parent[find(v)] = root
        return len({find(v) for v in verts})


def facet_list_text(c: SimplicialComplex) -> str:
    """Render a complex as a ``dim <d>`` header plus one facet per line."""
    lines = [f"dim {c.dimension}"]
    lines.extend(" ".join(str(v) for v in f) for f in c.facets)
    return "\n".join(lines) + "\n"


def parse_facet_list(text: str) -> SimplicialComplex:
    """Parse the facet-list format.  The ground set is taken to be one more
    than the largest vertex mentioned (labels outside facets are lost)."""
    dim: Optional[int] = None
    facets: list[tuple[int, ...]] = []
    top = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if dim is None:
            if len(tokens) != 2 or tokens[0] != "dim":
                raise ParseError(f"expected header 'dim <d>', got {line!r}", lineno)
            try:
                dim = int(tokens[1])
            except ValueError:
                raise ParseError(f"bad dimension {tokens[1]!r}", lineno) from None
            continue
        try:
            face = tuple(int(t) for t in tokens)
        except ValueError:
            raise ParseError(f"non-integer vertex in {line!r}", lineno) from None
        if any(v < 0 for v in face):
            raise ParseError("negative vertex label", lineno)
        if len(set(face)) != len(face):
            raise ParseError(f"repeated vertex in facet {line!r}", lineno)
        facets.append(tuple(sorted(face)))
        top = max(top, max(face))
    if dim is None:
        raise ParseError("missing 'dim <d>' header")
    c = SimplicialComplex.from_faces(top + 1, facets)
    if c.dimension != dim:
        raise ParseError(
            f"declared dim {dim} but facets give dimension {c.dimension}")
    return c


# ---------------------------------------------------------------------------
# the complex and the closure operator


def neighborhood_complex(g: Graph) -> SimplicialComplex:
    """The complex whose faces are vertex sets with a common neighbor.

    Facets are the inclusion-maximal neighborhoods, so the dimension is
    max degree - 1.  Graphs with no edges give the empty complex.
    """
    return SimplicialComplex.from_faces(g.n, (g.adj[v] for v in range(g.n)))


def common_neighbors(g: Graph, s: Iterable[int]) -> frozenset[int]:
    """Vertices adjacent to everything in s; all of V for s empty.

    This is the order-reversing operator whose nonempty values are exactly
    the faces of the neighborhood complex.
    """
    ss = set(s)
    for v in ss:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range for n={g.n}")
    if not ss:
        return frozenset(range(g.n))
    return frozenset.intersection(*(g.adj[v] for v in ss))


def closure(g: Graph, s: Iterable[int]) -> frozenset[int]:
    """Common neighbors applied twice: the least closed set containing s.

    Defined only on faces (nonempty s must have a common neighbor) and on
    the empty set.  Extensive and idempotent.
    """
    ss = frozenset(s)
    first = common_neighbors(g, ss)
    if ss and not first:
        raise ValueError(f"{sorted(ss)} has no common neighbor, closure undefined")
    return common_neighbors(g, first)


def neighborliness(g: Graph, work_cap: int = 5_000_000) -> int:
    """Largest i such that every i-subset of vertices has a common neighbor.

    Checked level by level directly against the graph; 0 when some vertex
    is isolated.  The whole vertex set never has a common neighbor, so the
    value is at most n - 1.
    """
    if g.n < 1:
        raise ValueError("neighborliness needs at least one vertex")
    steps = 0
    i = 1
    while i <= g.n:
        for s in combinations(range(g.n), i):
            steps += 1
            if steps > work_cap:
                raise ResourceCapError(
                    f"neighborliness exceeded work cap {work_cap} at level {i}",
                    best=i - 1)
            if not frozenset.intersection(*(g.adj[v] for v in s)):
                return i - 1
        i += 1
    return g.n  # unreachable: level n always fails


# ---------------------------------------------------------------------------
# closed-set poset and its order complex


@dataclass(frozen=True)
class ClosedSetPoset:
    """The nonempty closed vertex sets of a graph, ordered by inclusion.

    ``elements`` are sorted by (size, lexicographic); ``covers`` lists the
    Hasse relation as (lower index, upper index) pairs; ``height`` is the
    longest chain length minus one (-1 for the empty poset).
    """

    elements: tuple[tuple[int, ...], ...]
    covers: tuple[tuple[int, int], ...]
    height: int

    def element_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(e) for e in self.elements)

    def to_json_dict(self) -> dict:
        return {
            "elements": [list(e) for e in self.elements],
            "covers": [list(c) for c in self.covers],
            "height": self.height,
        }


def closed_set_poset(g: Graph, vertex_cap: int = 16,
                     element_cap: int = 20_000) -> ClosedSetPoset:
    """Close the nonempty neighborhoods under pairwise intersection.

    The resulting family is exactly the image of the double common-neighbor
    closure on nonempty faces, so it carries the homotopy type of the
    neighborhood complex without ever enumerating faces.
    """
    if g.n > vertex_cap:
        raise ResourceCapError(
            f"closed-set construction capped at {vertex_cap} vertices "
            f"(got {g.n}); raise vertex_cap to override")
    family: set[frozenset[int]] = {g.adj[v] for v in range(g.n) if g.adj[v]}
    items: list[frozenset[int]] = sorted(
        family, key=lambda s: (len(s), tuple(sorted(s))))
    i = 0
    while i < len(items):
        s = items[i]
        for j in range(i):
            c = s & items[j]
            if c and c not in family:
                family.add(c)
                items.append(c)
                if len(family) > element_cap:
                    raise ResourceCapError(
                        f"closed-set family exceeded element cap {element_cap}",
                        partial_count=len(family))
        i += 1

    elements = tuple(sorted((tuple(sorted(s)) for s in family),
                            key=lambda t: (len(t), t)))
    sets = [frozenset(e) for e in elements]
    m = len(sets)

    # Hasse relation: t covers s when s < t with nothing strictly between.
    strict_subs: list[list[int]] = [[] for _ in range(m)]
    for j in range(m):
        for i2 in range(j):
            if len(sets[i2]) < len(sets[j]) and sets[i2] < sets[j]:
                strict_subs[j].append(i2)
    covers: list[tuple[int, int]] = []
    for j in range(m):
        subs = strict_subs[j]
        for i2 in subs:
            if not any(i2 != k and sets[i2] < sets[k] for k in subs):
                covers.append((i2, j))
    covers.sort()

    heights = [0] * m
    for i2, j in covers:  # element order is a linear extension
        heights[j] = max(heights[j], heights[i2] + 1)
    height = max(heights, default=0) if m else -1

    return ClosedSetPoset(elements, tuple(covers), height)


def poset_height(p: ClosedSetPoset) -> int:
    """Longest chain length minus one; -1 for the empty poset."""
    return p.height


def lovasz_retract(p: ClosedSetPoset,
                   chain_cap: int = 500_000) -> SimplicialComplex:
    """Order complex of the closed-set poset.

    Vertices are poset element indices; faces are chains, so facets are the
    maximal chains and the dimension equals the poset height.  Homology of
    this complex equals that of the source neighborhood complex.
    """
    m = len(p.elements)
    if m == 0:
        return SimplicialComplex(0, ())
    uppers: list[list[int]] = [[] for _ in range(m)]
    has_lower = [False] * m
    for i, j in p.covers:
        uppers[i].append(j)
        has_lower[j] = True
    for ups in uppers:
        ups.sort()

    chains: list[tuple[int, ...]] = []
    stack: list[int] = []

    def descend(v: int) -> None:
        stack.append(v)
        if uppers[v]:
            for w in uppers[v]:
                descend(w)
        else:
            if len(chains) >= chain_cap:
                raise ResourceCapError(
                    f"maximal chain enumeration exceeded cap {chain_cap}",
                    partial_count=len(chains))
            chains.append(tuple(stack))
        stack.pop()

    for v in range(m):
        if not has_lower[v]:
            descend(v)
    # element indices ascend along any chain (sorted by size first), so the
    # tuples are already sorted; distinct maximal chains are incomparable
    return SimplicialComplex(m, tuple(sorted(chains)))
