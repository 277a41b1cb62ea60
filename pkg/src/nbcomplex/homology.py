"""Exact reduced simplicial homology over the integers and over GF(2).

Boundary matrices are assembled from facet data with the usual alternating
sign convention, plus an augmentation row in degree zero so that Betti
numbers come out reduced.  Integer ranks, torsion, and GF(2) ranks are all
computed exactly: arbitrary-precision Smith reduction for the former, bitset
elimination for the latter.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import combinations
from math import gcd
from typing import NamedTuple, Optional, Union

from .complexes import SimplicialComplex
from .errors import ResourceCapError


@dataclass(frozen=True)
class SparseIntMatrix:
    """Integer matrix stored by columns: cols[j] maps row index to entry."""

    nrows: int
    ncols: int
    cols: tuple[dict, ...]

    def entries(self):
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                yield i, j, v

    def gf2_row_masks(self) -> list[int]:
        masks = [0] * self.nrows
        for i, j, v in self.entries():
            if v & 1:
                masks[i] ^= 1 << j
        return masks


def gf2_rank(row_masks: list[int]) -> int:
    """Rank over GF(2) of rows given as bitmasks."""
    pivots: dict[int, int] = {}
    rank = 0
    for row in row_masks:
        cur = row
        while cur:
            top = cur.bit_length() - 1
            piv = pivots.get(top)
            if piv is None:
                pivots[top] = cur
                rank += 1
                break
            cur ^= piv
    return rank


def smith_normal_form(m: SparseIntMatrix) -> tuple[int, tuple[int, ...]]:
    """Rank and invariant factors of an integer matrix.

    Reduction picks the entry of smallest absolute value (ties broken by
    position) as pivot, clears its row and column with exact integer row
    and column operations, and finally normalizes the diagonal to the
    divisibility chain d1 | d2 | ... via pairwise gcd/lcm swaps.
    """
    rows: dict[int, dict[int, int]] = {}
    colrows: dict[int, set] = {}
    heap: list[tuple[int, int, int]] = []

    def push(r: int, c: int, v: int) -> None:
        heapq.heappush(heap, (abs(v), r, c))

    for c, col in enumerate(m.cols):
        for r, v in col.items():
            if v:
                rows.setdefault(r, {})[c] = v
                colrows.setdefault(c, set()).add(r)
                push(r, c, v)

    def write(r: int, c: int, v: int) -> None:
        if v:
            rows.setdefault(r, {})[c] = v
            colrows.setdefault(c, set()).add(r)
            push(r, c, v)
        else:
            row = rows.get(r)
            if row is not None and c in row:
                del row[c]
                if not row:
                    del rows[r]
                rs = colrows[c]
                rs.discard(r)
                if not rs:
                    del colrows[c]

    def row_axpy(dst: int, src: int, coef: int) -> None:
        for c, v in list(rows.get(src, {}).items()):
            write(dst, c, rows.get(dst, {}).get(c, 0) + coef * v)

    def col_axpy(dst: int, src: int, coef: int) -> None:
        for r in list(colrows.get(src, set())):
            v = rows[r][src]
            write(r, dst, rows.get(r, {}).get(dst, 0) + coef * v)

    diag: list[int] = []
    while heap:
        a, r, c = heapq.heappop(heap)
        v = rows.get(r, {}).get(c)
        if v is None or abs(v) != a:
            continue  # stale heap entry
        clean = True
        for r2 in sorted(colrows.get(c, set()) - {r}):
            q = rows[r2][c] // v
            if q:
                row_axpy(r2, r, -q)
            if rows.get(r2, {}).get(c):
                clean = False  # remainder smaller than |v| remains
        if not clean:
            push(r, c, v)
            continue
        for c2 in sorted(set(rows.get(r, {})) - {c}):
            q = rows[r][c2] // v
            if q:
                col_axpy(c2, c, -q)
            if rows.get(r, {}).get(c2):
                clean = False
        if not clean:
            push(r, c, v)
            continue
        diag.append(abs(v))
        write(r, c, 0)

    vals = sorted(diag)
    changed = True
    while changed:
        changed = False
        for i in range(len(vals)):
            for j in range(i + 1, len(vals)):
                if vals[j] % vals[i]:
                    g = gcd(vals[i], vals[j])
                    vals[i], vals[j] = g, vals[i] * vals[j] // g
                    changed = True
        if changed:
            vals.sort()
    return len(diag), tuple(vals)


# ---------------------------------------------------------------------------
# chain complex assembly


@dataclass(frozen=True)
class ChainComplexData:
    """Faces and boundary maps of a complex up to one past max_dim.

    ``faces[k]`` lists the dimension-k faces (sorted tuples) for
    k = 0..max_dim+1.  ``boundaries[k]`` maps k-chains to (k-1)-chains;
    index 0 is the 1 x f_0 augmentation row of ones, so kernels and ranks
    combine directly into reduced Betti numbers.
    """

    max_dim: int
    complex_dim: int
    faces: tuple[tuple[tuple[int, ...], ...], ...]
    boundaries: tuple[SparseIntMatrix, ...]

    @property
    def truncated(self) -> bool:
        return self.max_dim < self.complex_dim

    def face_count(self, k: int) -> int:
        return len(self.faces[k]) if 0 <= k < len(self.faces) else 0


def boundary_matrices(c: SimplicialComplex, max_dim: Optional[int] = None,
                      face_cap: int = 500_000) -> ChainComplexData:
    """Assemble boundary maps of a complex for dimensions 0..max_dim.

    Faces are enumerated per facet and deduplicated; the per-dimension face
    count is capped.  Signs follow the ascending-vertex convention: deleting
    the i-th smallest vertex carries (-1)**i.
    """
    dim = c.dimension
    if max_dim is None:
        max_dim = max(dim, 0)
    if max_dim < 0:
        raise ValueError(f"max_dim must be nonnegative, got {max_dim}")

    faces: list[tuple[tuple[int, ...], ...]] = []
    for k in range(0, max_dim + 2):
        layer: set[tuple[int, ...]] = set()
        for f in c.facets:
            if len(f) >= k + 1:
                layer.update(combinations(f, k + 1))
                if len(layer) > face_cap:
                    raise ResourceCapError(
                        f"face enumeration exceeded cap {face_cap} in "
                        f"dimension {k}")
        faces.append(tuple(sorted(layer)))

    index: list[dict] = [{f: i for i, f in enumerate(layer)} for layer in faces]

    boundaries: list[SparseIntMatrix] = []
    # augmentation: every vertex maps to the generator of degree -1
    boundaries.append(SparseIntMatrix(
        1, len(faces[0]), tuple({0: 1} for _ in faces[0])))
    for k in range(1, max_dim + 2):
        cols = []
        for f in faces[k]:
            col: dict = {}
            for i in range(len(f)):
                sub = f[:i] + f[i + 1:]
                col[index[k - 1][sub]] = -1 if i % 2 else 1
            cols.append(col)
        boundaries.append(SparseIntMatrix(len(faces[k - 1]), len(faces[k]),
                                          tuple(cols)))
    return ChainComplexData(max_dim, dim, tuple(faces), tuple(boundaries))


def boundary_composition_is_zero(d: ChainComplexData) -> bool:
    """Check d(k-1) after d(k) vanishes for every k (chain complex law)."""
    for k in range(1, d.max_dim + 2):
        lower = d.boundaries[k - 1]
        for col in d.boundaries[k].cols:
            acc: dict = {}
            for r, v in col.items():
                for r2, v2 in lower.cols[r].items():
                    acc[r2] = acc.get(r2, 0) + v * v2
            if any(acc.values()):
                return False
    return True


# ---------------------------------------------------------------------------
# results


class AtLeast(NamedTuple):
    """Sentinel for 'no nonvanishing homology found up to this dimension'."""

    bound: int

    def __str__(self) -> str:
        return f">={self.bound}"


@dataclass(frozen=True)
class HomologyResult:
    """Reduced homology in dimensions 0..max_dim.

    ``betti`` are free ranks over the integers; ``torsion[k]`` lists the
    nontrivial invariant factors of H_k in divisibility order; ``field2``
    holds GF(2) Betti numbers when they were requested.  ``empty`` marks the
    empty complex, whose reported groups all vanish.
    """

    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]
    field2: Optional[tuple[int, ...]]
    truncated: bool
    empty: bool

    @property
    def max_dim(self) -> int:
        return len(self.betti) - 1

    def to_json_dict(self) -> dict:
        return {
            "betti": list(self.betti),
            "torsion": [list(t) for t in self.torsion],
            "field2": list(self.field2) if self.field2 is not None else None,
            "truncated": self.truncated,
        }


def betti_field2(d: ChainComplexData) -> tuple[int, ...]:
    """Reduced Betti numbers over GF(2) for dimensions 0..max_dim."""
    ranks = [gf2_rank(b.gf2_row_masks()) for b in d.boundaries]
    return tuple(d.face_count(k) - ranks[k] - ranks[k + 1]
                 for k in range(d.max_dim + 1))


def homology_integer(d: ChainComplexData,
                     with_field2: bool = False) -> HomologyResult:
    """Exact integer homology (free ranks plus torsion) from boundary data."""
    snf = [smith_normal_form(b) for b in d.boundaries]
    betti = []
    torsion = []
    for k in range(d.max_dim + 1):
        rank_k = snf[k][0]
        rank_up = snf[k + 1][0]
        betti.append(d.face_count(k) - rank_k - rank_up)
        torsion.append(tuple(f for f in snf[k + 1][1] if f > 1))
    field2 = betti_field2(d) if with_field2 else None
    return HomologyResult(tuple(betti), tuple(torsion), field2,
                          d.truncated, d.face_count(0) == 0)


def euler_characteristic(c: SimplicialComplex, d: ChainComplexData) -> int:
    """Alternating face-count sum.  Requires untruncated boundary data.

    For a nonempty complex this equals 1 plus the alternating sum of the
    reduced Betti numbers; the empty complex gives 0 and is exempt.
    """
    if d.truncated:
        raise ValueError("Euler characteristic needs the full complex, "
                         "but the chain data is dimension-capped")
    if c.dimension != d.complex_dim:
        raise ValueError("chain data does not match the complex")
    return sum((-1) ** k * d.face_count(k) for k in range(d.complex_dim + 1))


Connectivity = Union[int, AtLeast]


def homological_connectivity(h: HomologyResult) -> Connectivity:
    """One less than the smallest dimension with nonvanishing homology
    (torsion counts).  Returns an AtLeast sentinel when everything vanishes
    up to the computed dimension."""
    for k in range(h.max_dim + 1):
        if h.betti[k] != 0 or h.torsion[k]:
            return k - 1
    return AtLeast(h.max_dim)


def _total_faces(c: SimplicialComplex, max_dim: int, cap: int) -> Optional[int]:
    """Total face count of c through dimension max_dim+1, or None past cap."""
    total = 0
    for k in range(0, max_dim + 2):
        layer: set = set()
        for f in c.facets:
            if len(f) >= k + 1:
                layer.update(combinations(f, k + 1))
                if total + len(layer) > cap:
                    return None
        total += len(layer)
    return total


def _pad(h: HomologyResult, length: int) -> HomologyResult:
    """Extend a result with vanishing groups up to the requested length."""
    if len(h.betti) >= length:
        return h
    extra = length - len(h.betti)
    return HomologyResult(
        h.betti + (0,) * extra,
        h.torsion + ((),) * extra,
        h.field2 + (0,) * extra if h.field2 is not None else None,
        h.truncated, h.empty)


def graph_homology(g, max_dim: Optional[int] = None, with_field2: bool = False,
                   vertex_cap: int = 16, element_cap: int = 20_000,
                   chain_cap: int = 500_000, face_cap: int = 500_000,
                   poset=None,
                   use_retract: bool = True) -> tuple[HomologyResult, str]:
    """Homology of a graph's neighborhood complex, route chosen by size.

    Builds the closed-set retract when its caps allow, counts faces on both
    candidates, and runs the exact computation on the smaller one.  Returns
    the result and which route ran ("retract" or "direct").  Both routes
    compute the same groups; with max_dim=None the answer always covers
    every dimension of the neighborhood complex.

    A caller that already holds the graph's closed-set poset can pass it as
    ``poset``; ``use_retract=False`` skips the retract route entirely.
    """
    from .complexes import closed_set_poset, lovasz_retract, neighborhood_complex

    nc = neighborhood_complex(g)
    candidates: list[tuple[str, SimplicialComplex]] = []
    if use_retract:
        try:
            if poset is None:
                poset = closed_set_poset(g, vertex_cap=vertex_cap,
                                         element_cap=element_cap)
            candidates.append(
                ("retract", lovasz_retract(poset, chain_cap=chain_cap)))
        except ResourceCapError:
            pass
    candidates.append(("direct", nc))

    best: Optional[tuple[int, str, SimplicialComplex, int]] = None
    for source, comp in candidates:
        dm = comp.dimension if max_dim is None else min(max_dim, comp.dimension)
        dm = max(dm, 0)
        total = _total_faces(comp, dm, face_cap)
        if total is not None and (best is None or total < best[0]):
            best = (total, source, comp, dm)
    if best is None:
        raise ResourceCapError(
            f"every homology route exceeds the face cap {face_cap}")
    _, source, comp, dm = best
    data = boundary_matrices(comp, max_dim=dm, face_cap=face_cap)
    result = homology_integer(data, with_field2=with_field2)
    if max_dim is None:
        result = _pad(result, max(nc.dimension, 0) + 1)
        result = HomologyResult(result.betti, result.torsion, result.field2,
                                False, result.empty)
    else:
        result = _pad(result, max_dim + 1)
        truncated = max_dim < comp.dimension
        result = HomologyResult(result.betti, result.torsion, result.field2,
                                truncated, result.empty)
    return result, source
