"""Closed-form bounds and threshold windows for random neighborhood
complexes.

Two first-moment bounds drive everything: the expected number of vertex
i-sets with no common neighbor controls neighborliness (and hence
connectivity), and the expected number of complete-bipartite (j, k) pairs
controls the dimension of the closed-set poset.  The window helpers
package the regimes where those bounds vanish, either in the dimension at
p = 1/2 or in the exponent alpha when p = n**alpha.

Everything here is asymptotic: endpoints are exact, but desk-scale n may
sit far from the limiting behavior.  Bounds are evaluated in log space so
huge n never overflows, with exact rational twins for cross-checking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .graphs import Graph, density, is_strictly_balanced

Real = Union[float, Fraction]

_ASYMPTOTIC_NOTE = ("asymptotic statement; desk-scale values are "
                    "indicative only")


@dataclass(frozen=True)
class WindowReport:
    """An interval endpoint pair with provenance notes.

    ``kind`` names the regime; ``exact`` is True when both endpoints are
    exact rationals.  ``parameters`` echoes the inputs (and any secondary
    constants worth exposing).
    """

    kind: str
    lower: Real
    upper: Real
    exact: bool
    parameters: dict = field(default_factory=dict)
    notes: tuple[str, ...] = ()

    def to_json_dict(self) -> dict:
        def enc(x):
            return str(x) if isinstance(x, Fraction) else x

        return {
            "kind": self.kind,
            "lower": enc(self.lower),
            "upper": enc(self.upper),
            "exact": self.exact,
            "parameters": {k: enc(v) for k, v in self.parameters.items()},
            "notes": list(self.notes),
        }


def _check_probability(p) -> None:
    if not 0 <= p <= 1:
        raise ValueError(f"probability out of range: {p}")


def neighborliness_failure_bound(n: int, i: int, p: float) -> float:
    """Expected number of vertex i-sets with no common neighbor in G(n, p).

    Equals C(n, i) * (1 - p**i) ** (n - i), evaluated in log space so very
    large n cannot underflow or overflow.  When this is small, the
    neighborhood complex is almost surely i-neighborly, hence highly
    connected.
    """
    if not 1 <= i <= n:
        raise ValueError(f"need 1 <= i <= n, got i={i}, n={n}")
    _check_probability(p)
    if p == 1:
        return 1.0 if i == n else 0.0
    log_fail = (n - i) * math.log1p(-p ** i)
    log_total = math.log(math.comb(n, i)) + log_fail
    try:
        return math.exp(log_total)
    except OverflowError:
        return math.inf


def neighborliness_failure_bound_exact(n: int, i: int, p: Fraction) -> Fraction:
    """Exact rational twin of :func:`neighborliness_failure_bound`."""
    if not 1 <= i <= n:
        raise ValueError(f"need 1 <= i <= n, got i={i}, n={n}")
    p = Fraction(p)
    _check_probability(p)
    return math.comb(n, i) * (1 - p ** i) ** (n - i)


def biclique_count_bound(n: int, j: int, k: int, p: float) -> float:
    """Expected number of complete-bipartite (j, k) vertex pair placements:
    C(n, j) * C(n, k) * p ** (j*k), in log space.

    When this vanishes, the closed-set poset almost surely has no chain of
    length j + k - 1, bounding homology dimension from above.
    """
    if not (1 <= j <= n and 1 <= k <= n):
        raise ValueError(f"need 1 <= j, k <= n, got j={j}, k={k}, n={n}")
    _check_probability(p)
    if p == 0:
        return 0.0
    log_total = (math.log(math.comb(n, j)) + math.log(math.comb(n, k))
                 + j * k * math.log(p))
    try:
        return math.exp(log_total)
    except OverflowError:
        return math.inf


def biclique_count_bound_exact(n: int, j: int, k: int, p: Fraction) -> Fraction:
    """Exact rational twin of :func:`biclique_count_bound`."""
    if not (1 <= j <= n and 1 <= k <= n):
        raise ValueError(f"need 1 <= j, k <= n, got j={j}, k={k}, n={n}")
    p = Fraction(p)
    _check_probability(p)
    return math.comb(n, j) * math.comb(n, k) * p ** (j * k)


def clique_extension_bound(n: int, p: float, k: int) -> float:
    """Expected count n * p**(k+2) controlling extensions of a (k+2)-clique
    by one more common neighbor."""
    if n < 1 or k < 0:
        raise ValueError(f"need n >= 1 and k >= 0, got n={n}, k={k}")
    _check_probability(p)
    return n * p ** (k + 2)


# ---------------------------------------------------------------------------
# windows


def vanishing_dimension_window(n: int, eps: float = 0.0) -> WindowReport:
    """Dimensions where homology almost surely vanishes at p = 1/2.

    Reduced homology in dimension l vanishes for l below
    (1 - eps) * log2(n) (by neighborliness) and above (4 + eps) * log2(n)
    (by poset height).  eps = 0 is the limiting window.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got n={n}")
    if eps < 0:
        raise ValueError(f"need eps >= 0, got {eps}")
    lg = math.log2(n)
    notes = [_ASYMPTOTIC_NOTE,
             "vanishing below the lower and above the upper endpoint"]
    if eps == 0:
        notes.append("eps = 0 gives the limiting endpoints")
    return WindowReport(
        kind="vanishing_dimension",
        lower=(1 - eps) * lg,
        upper=(4 + eps) * lg,
        exact=False,
        parameters={"n": n, "eps": eps},
        notes=tuple(notes),
    )


def vanishing_exponent_bounds(l: int) -> WindowReport:
    """Exponent thresholds for H_l when p = n**alpha, as exact rationals.

    Dimension-l homology almost surely vanishes for alpha above -1/(l+2),
    and also for alpha below -4/(l+2) when l is even, below
    -4(l+2)/((l+1)(l+3)) when l is odd.
    """
    if l < 0:
        raise ValueError(f"dimension must be nonnegative, got {l}")
    upper = Fraction(-1, l + 2)
    if l % 2 == 0:
        lower = Fraction(-4, l + 2)
        parity = "even: lower endpoint -4/(l+2)"
    else:
        lower = Fraction(-4 * (l + 2), (l + 1) * (l + 3))
        parity = "odd: lower endpoint -4(l+2)/((l+1)(l+3))"
    return WindowReport(
        kind="vanishing_exponent",
        lower=lower,
        upper=upper,
        exact=True,
        parameters={"l": l},
        notes=(_ASYMPTOTIC_NOTE,
               "vanishing outside the closed interval [lower, upper]",
               parity),
    )


def nonvanishing_dimension_window(n: int, eps: float = 0.0) -> WindowReport:
    """Dimensions with almost-sure nonvanishing homology at p = 1/2.

    Holds for (4/3 + eps) * log2(n) < k < (2 - eps) * log2(n); the window
    is empty once eps reaches 1/3.  Maximal cliques of the relevant orders
    already exist above (1 + eps) * log2(n); the stronger 4/3 coefficient
    is what rules out every partnered-clique obstruction, so both constants
    are echoed in the parameters.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got n={n}")
    if eps < 0:
        raise ValueError(f"need eps >= 0, got {eps}")
    if eps >= Fraction(1, 3):
        raise ValueError(
            f"window is empty for eps >= 1/3, got eps={eps}")
    lg = math.log2(n)
    notes = [_ASYMPTOTIC_NOTE,
             "nonvanishing strictly inside (lower, upper)",
             "clique existence alone needs only the (1 + eps) coefficient; "
             "4/3 + eps additionally removes all partnered-clique "
             "obstructions"]
    if eps == 0:
        notes.append("eps = 0 gives the limiting endpoints")
    return WindowReport(
        kind="nonvanishing_dimension",
        lower=(4 / 3 + eps) * lg,
        upper=(2 - eps) * lg,
        exact=False,
        parameters={"n": n, "eps": eps,
                    "obstruction_free_coefficient": 4 / 3 + eps,
                    "clique_exists_coefficient": 1 + eps},
        notes=tuple(notes),
    )


def nonvanishing_exponent_window(k: int) -> WindowReport:
    """Exponent window (-2/(k+1), -4/(3(k+1))) where dimension-k homology
    is almost surely nonzero for p = n**alpha, as exact rationals.

    The endpoints are the appearance thresholds of the complete graph on
    k+2 vertices (below: no such cliques, so no sphere) and of the
    partnered-clique graph on the same clique order (above: obstructions
    appear).
    """
    if k < 0:
        raise ValueError(f"dimension must be nonnegative, got {k}")
    return WindowReport(
        kind="nonvanishing_exponent",
        lower=Fraction(-2, k + 1),
        upper=Fraction(-4, 3 * (k + 1)),
        exact=True,
        parameters={"k": k},
        notes=(_ASYMPTOTIC_NOTE,
               "nonvanishing strictly inside (lower, upper)",
               "lower endpoint: clique appearance threshold; upper "
               "endpoint: partnered-clique appearance threshold"),
    )


def subgraph_threshold_exponent(g: Graph, vertex_cap: int = 14) -> Fraction:
    """Sharp appearance threshold exponent -1/density(g) for a strictly
    balanced graph: with p = n**alpha, copies of g appear almost surely
    above this alpha and are almost surely absent below it."""
    if g.n == 0:
        raise ValueError("threshold of the empty graph is undefined")
    if not is_strictly_balanced(g, vertex_cap=vertex_cap):
        raise ValueError("appearance threshold requires a strictly "
                         "balanced graph")
    d = density(g)
    if d == 0:
        raise ValueError("appearance threshold requires at least one edge")
    return -1 / d
