"""Sphere certificates from maximal cliques, and chromatic comparisons.

A maximal clique X of order m spans an (m-2)-sphere inside the neighborhood
complex.  If for some clique member u there is no pair (u* outside X, v)
with v adjacent to all of (X minus u) plus u*, then the complex retracts
onto that sphere and reduced homology in dimension m-2 is nonzero.  When
every member is obstructed and the obstructing v-vertices all lie outside
X, those vertices extend X to a partnered-clique subgraph: the two outcomes
of the search are both certified, never guessed.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

from .complexes import neighborliness
from .errors import ResourceCapError
from .graphs import Graph, SubgraphWitness, clique_number, maximal_cliques, \
    witness_is_valid
from .homology import AtLeast, Connectivity, graph_homology, \
    homological_connectivity


@dataclass(frozen=True)
class ObstructionWitness:
    """A pair blocking one candidate retraction index.

    ``v`` is adjacent to every clique vertex except the one at ``index``
    and also to ``u_star``, which lies outside the clique.  ``v`` may equal
    the excluded clique vertex itself; that degenerate witness still blocks
    the retraction but cannot extend the clique to a partnered-clique
    subgraph.
    """

    u_star: int
    v: int
    index: int


@dataclass(frozen=True)
class SphereCertificate:
    """A maximal clique whose index-th member admits no obstruction.

    Guarantees reduced homology of the neighborhood complex is nonzero in
    dimension ``sphere_dim`` = len(clique) - 2.  ``validated`` is set after
    the independent rescan in :func:`find_sphere_certificates`.
    """

    clique: tuple[int, ...]
    retract_index: int
    sphere_dim: int
    validated: bool = False

    def to_json_dict(self) -> dict:
        return {
            "clique": list(self.clique),
            "retract_index": self.retract_index,
            "sphere_dim": self.sphere_dim,
            "validated": self.validated,
        }


def _require_maximal_clique(g: Graph, clique: Sequence[int]) -> tuple[int, ...]:
    x = tuple(sorted(clique))
    if len(set(x)) != len(x) or not x:
        raise ValueError(f"clique must be a nonempty set of vertices, got {clique}")
    for v in x:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range for n={g.n}")
    for u, v in combinations(x, 2):
        if not g.has_edge(u, v):
            raise ValueError(f"{list(x)} is not a clique: missing edge ({u}, {v})")
    ext = frozenset.intersection(*(g.adj[v] for v in x))
    if ext:
        raise ValueError(
            f"{list(x)} is not maximal: vertex {min(ext)} extends it")
    return x


def _search_obstruction(g: Graph, x: tuple[int, ...],
                        index: int) -> Optional[ObstructionWitness]:
    rest = [u for i, u in enumerate(x) if i != index]
    xset = set(x)
    for u_star in range(g.n):
        if u_star in xset:
            continue
        needed = rest + [u_star]
        cand = frozenset.intersection(*(g.adj[w] for w in needed))
        if cand:
            return ObstructionWitness(u_star, min(cand), index)
    return None


def obstruction_test(g: Graph, clique: Sequence[int],
                     index: int) -> Optional[ObstructionWitness]:
    """First obstruction to retracting onto the clique minus its index-th
    member, scanning (u_star, v) in lexicographic order; None if unblocked.

    The clique must be maximal (checked).  None means the neighborhood
    complex retracts onto the sphere spanned by the clique.
    """
    x = _require_maximal_clique(g, clique)
    if not 0 <= index < len(x):
        raise ValueError(f"index {index} out of range for clique of size {len(x)}")
    return _search_obstruction(g, x, index)


def sphere_certificate(g: Graph,
                       clique: Sequence[int]) -> Optional[SphereCertificate]:
    """Certificate from the first unobstructed index of a maximal clique.

    Cliques of size one are never certified (there is no sphere to name).
    """
    x = _require_maximal_clique(g, clique)
    if len(x) < 2:
        return None
    for i in range(len(x)):
        if _search_obstruction(g, x, i) is None:
            return SphereCertificate(x, i, len(x) - 2)
    return None


def _revalidate(g: Graph, cert: SphereCertificate) -> bool:
    """Naive rescan of a certificate: plain loops over raw adjacency."""
    x = cert.clique
    if len(x) != len(set(x)) or len(x) < 2:
        return False
    for u in x:
        for v in x:
            if u < v and not g.has_edge(u, v):
                return False
    for w in range(g.n):
        if w not in x and all(g.has_edge(w, u) for u in x):
            return False  # not maximal
    if cert.sphere_dim != len(x) - 2:
        return False
    kept = [u for i, u in enumerate(x) if i != cert.retract_index]
    for u_star in range(g.n):
        if u_star in x:
            continue
        for v in range(g.n):
            if g.has_edge(v, u_star) and all(g.has_edge(v, u) for u in kept):
                return False  # obstruction exists after all
    return True


def find_sphere_certificates(g: Graph,
                             vertex_cap: int = 64) -> list[SphereCertificate]:
    """All certificates over maximal cliques of size at least two.

    Sorted by sphere dimension descending, then by clique.  Every returned
    certificate has been re-validated by the independent naive scanner.
    """
    certs = []
    for clique in maximal_cliques(g, vertex_cap=vertex_cap):
        if len(clique) < 2:
            continue
        cert = sphere_certificate(g, clique)
        if cert is not None:
            if not _revalidate(g, cert):
                raise RuntimeError(
                    f"certificate {cert} failed independent revalidation")
            certs.append(SphereCertificate(cert.clique, cert.retract_index,
                                           cert.sphere_dim, validated=True))
    certs.sort(key=lambda c: (-c.sphere_dim, c.clique))
    return certs


def obstructed_clique_extension(g: Graph,
                                clique: Sequence[int]) -> Optional[SubgraphWitness]:
    """Partnered-clique witness built from a fully obstructed maximal clique.

    For each index this searches for an obstruction whose blocking vertex v
    lies outside the clique (v inside the clique blocks the retraction but
    contributes no partner).  Returns the witness when every index yields
    one, None otherwise.  The witness is revalidated before being returned.
    """
    x = _require_maximal_clique(g, clique)
    xset = set(x)
    partners = []
    for i in range(len(x)):
        rest = [u for j, u in enumerate(x) if j != i]
        found = None
        for u_star in range(g.n):
            if u_star in xset:
                continue
            cand = frozenset.intersection(
                *(g.adj[w] for w in rest + [u_star])) - xset
            if cand:
                found = min(cand)
                break
        if found is None:
            return None
        partners.append(found)
    witness = SubgraphWitness("xn", (x, tuple(partners)))
    if not witness_is_valid(g, witness):
        raise RuntimeError(
            f"extension witness {witness} failed validation; "
            "obstruction bookkeeping is inconsistent")
    return witness


# ---------------------------------------------------------------------------
# chromatic numbers and the comparison record


def neighborliness_chromatic_bound(g: Graph, work_cap: int = 5_000_000) -> int:
    """Lower bound on the chromatic number from neighborliness.

    An i-neighborly neighborhood complex forces at least i + 1 colors.
    """
    if g.n < 1:
        raise ValueError("chromatic bound needs at least one vertex")
    try:
        return neighborliness(g, work_cap=work_cap) + 1
    except ResourceCapError as err:
        raise ResourceCapError(
            str(err),
            best=None if err.best is None else err.best + 1) from None


def _greedy_bound(g: Graph) -> int:
    order = sorted(range(g.n), key=lambda v: (-len(g.adj[v]), v))
    color: dict[int, int] = {}
    best = 0
    for v in order:
        used = {color[w] for w in g.adj[v] if w in color}
        c = 0
        while c in used:
            c += 1
        color[v] = c
        best = max(best, c + 1)
    return best


def chromatic_number_exact(g: Graph, vertex_cap: int = 20) -> int:
    """Exact chromatic number by branch and bound.

    Seeded with the clique number below and a greedy coloring above; the
    first maximum clique is pre-colored to break symmetry; branching picks
    the uncolored vertex with the most distinct neighbor colors, smallest
    index on ties, and tries colors in numeric order.
    """
    if g.n > vertex_cap:
        raise ResourceCapError(
            f"exact coloring capped at {vertex_cap} vertices (got {g.n}); "
            f"raise vertex_cap to override")
    if g.n == 0:
        return 0
    cliques = maximal_cliques(g)
    omega = max(len(c) for c in cliques)
    ub = _greedy_bound(g)
    if omega == ub:
        return omega
    seed_clique = next(c for c in cliques if len(c) == omega)

    def colorable(k: int) -> bool:
        color: dict[int, int] = {v: i for i, v in enumerate(seed_clique)}

        def step() -> bool:
            if len(color) == g.n:
                return True
            best_v, best_sat = -1, -1
            for v in range(g.n):
                if v in color:
                    continue
                sat = len({color[w] for w in g.adj[v] if w in color})
                if sat > best_sat:
                    best_v, best_sat = v, sat
            used_count = max(color.values()) + 1
            for c in range(min(k, used_count + 1)):
                if all(color.get(w) != c for w in g.adj[best_v]):
                    color[best_v] = c
                    if step():
                        return True
                    del color[best_v]
            return False

        return step()

    for k in range(omega, ub):
        if colorable(k):
            return k
    return ub


@dataclass(frozen=True)
class BoundComparison:
    """Side-by-side chromatic lower bounds for one graph.

    ``hom_connectivity`` is the homological connectivity of the
    neighborhood complex; it is recorded as a heuristic observation only,
    never folded into the asserted bounds.  Fields are None when a work cap
    stopped them; ``missing`` names those fields.
    """

    n: int
    edges: int
    chromatic_number: Optional[int]
    clique_number: Optional[int]
    neighborliness_bound: Optional[int]
    hom_connectivity: Optional[Connectivity]
    best_certificate_dim: Optional[int]
    missing: tuple[str, ...]


def bound_comparison(g: Graph, coloring_cap: int = 20) -> BoundComparison:
    """Compute the comparison record, asserting the provable inequalities
    (chromatic number at least clique number and at least the
    neighborliness bound) before returning."""
    if g.n < 1:
        raise ValueError("comparison needs at least one vertex")
    missing: list[str] = []

    def attempt(name, fn):
        try:
            return fn()
        except ResourceCapError:
            missing.append(name)
            return None

    chi = attempt("chromatic_number",
                  lambda: chromatic_number_exact(g, vertex_cap=coloring_cap))
    omega = attempt("clique_number", lambda: clique_number(g))
    nbound = attempt("neighborliness_bound",
                     lambda: neighborliness_chromatic_bound(g))
    conn = attempt("hom_connectivity",
                   lambda: homological_connectivity(graph_homology(g)[0]))
    certs = attempt("best_certificate_dim",
                    lambda: find_sphere_certificates(g))
    best_dim = None
    if certs is not None:
        best_dim = max((c.sphere_dim for c in certs), default=None)

    if chi is not None and omega is not None and chi < omega:
        raise RuntimeError(f"coloring bug: chi={chi} below clique number {omega}")
    if chi is not None and nbound is not None and chi < nbound:
        raise RuntimeError(
            f"bound violation: chi={chi} below neighborliness bound {nbound}")
    return BoundComparison(g.n, g.edge_count, chi, omega, nbound, conn,
                           best_dim, tuple(missing))


_CSV_COLUMNS = ("n", "edges", "chromatic_number", "clique_number",
                "neighborliness_bound", "hom_connectivity",
                "best_certificate_dim", "missing")


def comparisons_csv(records: Sequence[BoundComparison]) -> str:
    """Render comparison records as CSV with a fixed header."""
    lines = [",".join(_CSV_COLUMNS)]
    for r in records:
        conn = "" if r.hom_connectivity is None else str(r.hom_connectivity)
        row = [str(r.n), str(r.edges),
               "" if r.chromatic_number is None else str(r.chromatic_number),
               "" if r.clique_number is None else str(r.clique_number),
               "" if r.neighborliness_bound is None else str(r.neighborliness_bound),
               conn,
               "" if r.best_certificate_dim is None else str(r.best_certificate_dim),
               ";".join(r.missing)]
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"
