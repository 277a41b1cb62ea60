"""Seeded random-graph surveys with reproducible, order-independent output.

Every trial seed is derived from (master seed, p index, trial index), so a
survey is a pure function of its config: reruns, different worker counts,
and different trial orderings all produce byte-identical records.  Records
never carry timestamps; per-trial wall time is kept in memory for
interactive use but excluded from serialization and equality.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import time
from dataclasses import dataclass, field, asdict
from multiprocessing import Pool
from typing import Optional, Sequence, Union

from .certificates import find_sphere_certificates
from .complexes import closed_set_poset, lovasz_retract, neighborhood_complex
from .errors import FormatError, ResourceCapError
from .graphs import clique_number, derive_trial_seed, gnp_sample
from .complexes import neighborliness
from .homology import graph_homology

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Caps:
    """Work caps threaded through survey trials."""

    clique_vertices: int = 64
    poset_vertices: int = 16
    poset_elements: int = 20_000
    retract_chains: int = 500_000
    neighborliness_steps: int = 5_000_000
    faces_per_dim: int = 500_000
    full_homology_vertices: int = 12
    capped_homology_vertices: int = 30
    capped_homology_max_dim: int = 4


@dataclass(frozen=True)
class ExperimentConfig:
    """One survey: a vertex count, a probability grid, and feature flags.

    Exact homology runs for n up to the full-homology cap; between that and
    the capped-homology cap only Betti numbers up to a small max_dim are
    allowed; beyond it the homology flag must be off.
    """

    n: int
    p_grid: tuple[float, ...]
    trials: int
    master_seed: int
    max_dim: int = 4
    homology: bool = True
    neighborliness: bool = False
    certificates: bool = False
    clique_stats: bool = False
    caps: Caps = field(default_factory=Caps)

    def __post_init__(self):
        object.__setattr__(self, "p_grid", tuple(float(p) for p in self.p_grid))
        if self.n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {self.n}")
        if not self.p_grid:
            raise ValueError("p_grid must be nonempty")
        for p in self.p_grid:
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"probability out of range: {p}")
        if self.trials < 1:
            raise ValueError(f"need at least one trial, got {self.trials}")
        if self.max_dim < 0:
            raise ValueError(f"max_dim must be nonnegative, got {self.max_dim}")
        if self.homology:
            if self.n > self.caps.capped_homology_vertices:
                raise ValueError(
                    f"homology is limited to n <= "
                    f"{self.caps.capped_homology_vertices}; disable the "
                    f"homology flag for n={self.n}")
            if (self.n > self.caps.full_homology_vertices
                    and self.max_dim > self.caps.capped_homology_max_dim):
                raise ValueError(
                    f"for n > {self.caps.full_homology_vertices} only "
                    f"max_dim <= {self.caps.capped_homology_max_dim} is "
                    f"supported, got max_dim={self.max_dim}")

    def to_json_dict(self) -> dict:
        d = asdict(self)
        d["p_grid"] = list(self.p_grid)
        return d


@dataclass(frozen=True)
class TrialRecord:
    """Measurements from one sampled graph.

    Optional fields are None when their feature was off or a cap stopped
    them (the cap event is then listed in ``errors``).  ``wall_time_ms`` is
    informational only: excluded from equality and from serialization.
    """

    trial_index: int
    p_index: int
    p: float
    seed: int
    edge_count: int
    complex_connected: bool
    empty_complex: bool
    clique_number: Optional[int]
    neighborliness: Optional[int]
    closed_set_count: Optional[int]
    retract_dimension: Optional[int]
    homology_source: Optional[str]
    betti: Optional[tuple[int, ...]]
    torsion_seen: Optional[bool]
    certificates: Optional[tuple[int, ...]]
    errors: tuple[str, ...] = ()
    wall_time_ms: float = field(default=0.0, compare=False)


def run_trial(cfg: ExperimentConfig, p_index: int,
              trial_index: int) -> TrialRecord:
    """Run one trial; a pure function of (cfg, p_index, trial_index)."""
    started = time.perf_counter()
    p = cfg.p_grid[p_index]
    seed = derive_trial_seed(cfg.master_seed, p_index, trial_index)
    g = gnp_sample(cfg.n, p, seed)
    caps = cfg.caps
    errors: list[str] = []

    nc = neighborhood_complex(g)
    connected = nc.component_count() <= 1
    empty = nc.dimension == -1

    cliques: Optional[int] = None
    if cfg.clique_stats:
        try:
            cliques = clique_number(g, vertex_cap=caps.clique_vertices)
        except ResourceCapError as err:
            errors.append(f"clique_number: {err}")

    nbl: Optional[int] = None
    if cfg.neighborliness:
        try:
            nbl = neighborliness(g, work_cap=caps.neighborliness_steps)
        except ResourceCapError as err:
            errors.append(f"neighborliness: {err}")

    closed_count: Optional[int] = None
    retract_dim: Optional[int] = None
    poset = None
    if cfg.homology:
        try:
            poset = closed_set_poset(g, vertex_cap=caps.poset_vertices,
                                     element_cap=caps.poset_elements)
            closed_count = len(poset.elements)
            retract_dim = poset.height
        except ResourceCapError as err:
            errors.append(f"closed_set_poset: {err}")

    betti: Optional[tuple[int, ...]] = None
    torsion_seen: Optional[bool] = None
    source: Optional[str] = None
    if cfg.homology:
        try:
            result, source = graph_homology(
                g, max_dim=cfg.max_dim,
                vertex_cap=caps.poset_vertices,
                element_cap=caps.poset_elements,
                chain_cap=caps.retract_chains,
                face_cap=caps.faces_per_dim,
                poset=poset, use_retract=poset is not None)
            betti = result.betti
            torsion_seen = any(t for t in result.torsion)
            if torsion_seen:
                log.warning("torsion at n=%d p=%.4g trial=%d: %s",
                            cfg.n, p, trial_index, result.torsion)
        except ResourceCapError as err:
            errors.append(f"homology: {err}")

    certs: Optional[tuple[int, ...]] = None
    if cfg.certificates:
        try:
            found = find_sphere_certificates(g, vertex_cap=caps.clique_vertices)
            certs = tuple(c.sphere_dim for c in found)
        except ResourceCapError as err:
            errors.append(f"certificates: {err}")

    return TrialRecord(
        trial_index=trial_index, p_index=p_index, p=p, seed=seed,
        edge_count=g.edge_count, complex_connected=connected,
        empty_complex=empty, clique_number=cliques, neighborliness=nbl,
        closed_set_count=closed_count, retract_dimension=retract_dim,
        homology_source=source, betti=betti, torsion_seen=torsion_seen,
        certificates=certs, errors=tuple(errors),
        wall_time_ms=(time.perf_counter() - started) * 1000.0)


def _trial_star(args: tuple) -> TrialRecord:
    return run_trial(*args)


def run_survey(cfg: ExperimentConfig, jobs: int = 1) -> list[TrialRecord]:
    """All trials of a survey, ordered by (p index, trial index).

    ``jobs`` > 1 fans trials out to a process pool; results are identical
    to a serial run because every trial is seeded independently.
    """
    if jobs < 1:
        raise ValueError(f"jobs must be positive, got {jobs}")
    work = [(cfg, pi, ti)
            for pi in range(len(cfg.p_grid)) for ti in range(cfg.trials)]
    if jobs == 1:
        return [run_trial(*w) for w in work]
    with Pool(jobs) as pool:
        return pool.map(_trial_star, work)


# ---------------------------------------------------------------------------
# aggregation


@dataclass(frozen=True)
class ProbabilitySummary:
    """Aggregates for one grid point.

    The Betti statistics are over trials where homology completed; the
    certificate frequencies over trials where the search ran.  Variance is
    the population variance.
    """

    p_index: int
    p: float
    trials: int
    betti_trials: int
    betti_mean: Optional[tuple[float, ...]]
    betti_variance: Optional[tuple[float, ...]]
    vanishing_freq: Optional[tuple[float, ...]]
    certificate_trials: int
    certificate_freq: Optional[tuple[float, ...]]
    mean_closed_sets: Optional[float]


@dataclass(frozen=True)
class SurveySummary:
    """Per-probability aggregates plus the full config echo.

    ``local_maxima`` counts strict local maxima of each dimension's mean
    Betti curve across the grid (after collapsing plateaus).  It is a shape
    diagnostic only; nothing in the library asserts unimodality.
    """

    config: ExperimentConfig
    per_p: tuple[ProbabilitySummary, ...]
    local_maxima: Optional[tuple[int, ...]] = None

    def to_json_dict(self) -> dict:
        return {
            "config": self.config.to_json_dict(),
            "per_p": [asdict(s) for s in self.per_p],
            "local_maxima": (list(self.local_maxima)
                             if self.local_maxima is not None else None),
        }


def aggregate(records: Sequence[TrialRecord],
              cfg: ExperimentConfig) -> SurveySummary:
    """Aggregate records against their config; shapes must match exactly."""
    expected = len(cfg.p_grid) * cfg.trials
    if len(records) != expected:
        raise ValueError(
            f"record/config mismatch: {len(records)} records for "
            f"{len(cfg.p_grid)} x {cfg.trials} trials")
    dims = cfg.max_dim + 1
    per_p: list[ProbabilitySummary] = []
    for pi, p in enumerate(cfg.p_grid):
        rows = [r for r in records if r.p_index == pi]
        if len(rows) != cfg.trials or any(r.p != p for r in rows):
            raise ValueError(f"record/config mismatch at p index {pi}")
        brows = [r for r in rows if r.betti is not None]
        if brows and any(len(r.betti) != dims for r in brows):
            raise ValueError(f"betti width mismatch at p index {pi}")
        if brows:
            means, variances, vanishing = [], [], []
            for k in range(dims):
                vals = [r.betti[k] for r in brows]
                s1 = sum(vals)
                s2 = sum(v * v for v in vals)
                mean = s1 / len(vals)
                means.append(mean)
                variances.append(s2 / len(vals) - mean * mean)
                vanishing.append(sum(1 for v in vals if v == 0) / len(vals))
            betti_mean = tuple(means)
            betti_var = tuple(variances)
            vanish = tuple(vanishing)
        else:
            betti_mean = betti_var = vanish = None
        crows = [r for r in rows if r.certificates is not None]
        if crows:
            cert_freq = tuple(
                sum(1 for r in crows if k in r.certificates) / len(crows)
                for k in range(dims))
        else:
            cert_freq = None
        closed = [r.closed_set_count for r in rows
                  if r.closed_set_count is not None]
        per_p.append(ProbabilitySummary(
            p_index=pi, p=p, trials=len(rows), betti_trials=len(brows),
            betti_mean=betti_mean, betti_variance=betti_var,
            vanishing_freq=vanish, certificate_trials=len(crows),
            certificate_freq=cert_freq,
            mean_closed_sets=sum(closed) / len(closed) if closed else None))
    return SurveySummary(cfg, tuple(per_p))


def count_strict_local_maxima(values: Sequence[float]) -> int:
    """Strict local maxima after collapsing equal-value plateaus.

    A constant curve has none; a boundary point counts when it strictly
    dominates its single neighbor.
    """
    collapsed: list[float] = []
    for v in values:
        if not collapsed or collapsed[-1] != v:
            collapsed.append(v)
    if len(collapsed) < 2:
        return 0
    count = 0
    for i, v in enumerate(collapsed):
        left = i == 0 or collapsed[i - 1] < v
        right = i == len(collapsed) - 1 or collapsed[i + 1] < v
        if left and right:
            count += 1
    return count


def betti_sweep(n: int, p_grid: Sequence[float], trials: int,
                master_seed: int, max_dim: int, jobs: int = 1,
                caps: Caps = Caps()) -> tuple[list[TrialRecord], SurveySummary]:
    """Survey expected Betti numbers across a probability grid.

    Returns the trial records and a summary whose ``local_maxima`` entry
    counts strict local maxima of each mean curve, as a peak-shape
    diagnostic.
    """
    cfg = ExperimentConfig(n=n, p_grid=tuple(p_grid), trials=trials,
                           master_seed=master_seed, max_dim=max_dim,
                           homology=True, caps=caps)
    records = run_survey(cfg, jobs=jobs)
    summary = aggregate(records, cfg)
    curves_ok = all(s.betti_mean is not None for s in summary.per_p)
    maxima = None
    if curves_ok:
        maxima = tuple(
            count_strict_local_maxima([s.betti_mean[k] for s in summary.per_p])
            for k in range(max_dim + 1))
    return records, SurveySummary(cfg, summary.per_p, maxima)


# ---------------------------------------------------------------------------
# serialization

_RECORD_KEYS = ("trial", "p", "edges", "p_index", "seed", "connected",
                "empty", "clique_number", "neighborliness", "closed_sets",
                "retract_dim", "homology_source", "torsion_seen", "betti",
                "certificates", "errors")


def _record_to_dict(r: TrialRecord) -> dict:
    return {
        "trial": r.trial_index,
        "p": r.p,
        "edges": r.edge_count,
        "p_index": r.p_index,
        "seed": r.seed,
        "connected": r.complex_connected,
        "empty": r.empty_complex,
        "clique_number": r.clique_number,
        "neighborliness": r.neighborliness,
        "closed_sets": r.closed_set_count,
        "retract_dim": r.retract_dimension,
        "homology_source": r.homology_source,
        "torsion_seen": r.torsion_seen,
        "betti": list(r.betti) if r.betti is not None else None,
        "certificates": (list(r.certificates)
                         if r.certificates is not None else None),
        "errors": list(r.errors),
    }


def _record_from_dict(d: dict, line: int) -> TrialRecord:
    if set(d) != set(_RECORD_KEYS):
        missing = set(_RECORD_KEYS) - set(d)
        extra = set(d) - set(_RECORD_KEYS)
        raise FormatError(
            f"record schema mismatch (missing {sorted(missing)}, "
            f"unexpected {sorted(extra)})", line)
    try:
        return TrialRecord(
            trial_index=d["trial"], p_index=d["p_index"], p=d["p"],
            seed=d["seed"], edge_count=d["edges"],
            complex_connected=d["connected"], empty_complex=d["empty"],
            clique_number=d["clique_number"],
            neighborliness=d["neighborliness"],
            closed_set_count=d["closed_sets"],
            retract_dimension=d["retract_dim"],
            homology_source=d["homology_source"],
            betti=tuple(d["betti"]) if d["betti"] is not None else None,
            torsion_seen=d["torsion_seen"],
            certificates=(tuple(d["certificates"])
                          if d["certificates"] is not None else None),
            errors=tuple(d["errors"]))
    except (TypeError, KeyError) as exc:
        raise FormatError(f"bad record value: {exc}", line) from None


def records_to_jsonl(records: Sequence[TrialRecord]) -> str:
    return "".join(
        json.dumps(_record_to_dict(r), separators=(",", ":")) + "\n"
        for r in records)


def records_from_jsonl(text: str) -> list[TrialRecord]:
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            d = json.loads(line)
        except json.JSONDecodeError as exc:
            raise FormatError(f"bad JSON: {exc}", lineno) from None
        if not isinstance(d, dict):
            raise FormatError("record line is not an object", lineno)
        out.append(_record_from_dict(d, lineno))
    return out


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return "[" + ";".join(str(v) for v in value) + "]"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _uncell_list(text: str, line: int) -> Optional[tuple]:
    if text == "":
        return None
    if not (text.startswith("[") and text.endswith("]")):
        raise FormatError(f"expected bracketed list, got {text!r}", line)
    inner = text[1:-1]
    if not inner:
        return ()
    return tuple(inner.split(";"))


def records_to_csv(records: Sequence[TrialRecord]) -> str:
    widths = {len(r.betti) for r in records if r.betti is not None}
    if len(widths) > 1:
        raise ValueError(f"records carry mixed betti widths {sorted(widths)}")
    width = widths.pop() if widths else 0
    header = list(_RECORD_KEYS[:13])
    header.extend(f"betti{k}" for k in range(width))
    header.extend(["certificates", "errors"])
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for r in records:
        d = _record_to_dict(r)
        row = [_cell(d[k]) for k in _RECORD_KEYS[:13]]
        if r.betti is None:
            row.extend("" for _ in range(width))
        else:
            row.extend(str(b) for b in r.betti)
        row.append(_cell(d["certificates"]))
        row.append(_cell(d["errors"]))
        writer.writerow(row)
    return buf.getvalue()


def records_from_csv(text: str) -> list[TrialRecord]:
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise FormatError("empty CSV") from None
    base = list(_RECORD_KEYS[:13])
    if header[:13] != base or header[-2:] != ["certificates", "errors"]:
        raise FormatError("unexpected CSV header")
    betti_cols = header[13:-2]
    if betti_cols != [f"betti{k}" for k in range(len(betti_cols))]:
        raise FormatError("unexpected betti columns in CSV header")

    def opt_int(s: str) -> Optional[int]:
        return None if s == "" else int(s)

    def opt_bool(s: str) -> Optional[bool]:
        if s == "":
            return None
        if s not in ("true", "false"):
            raise ValueError(f"bad boolean {s!r}")
        return s == "true"

    out = []
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise FormatError(
                f"expected {len(header)} cells, got {len(row)}", lineno)
        vals = dict(zip(header, row))
        try:
            bcells = [vals[c] for c in betti_cols]
            if bcells and bcells[0] != "":
                betti = tuple(int(b) for b in bcells)
            else:
                betti = None
            certs = _uncell_list(vals["certificates"], lineno)
            errs = _uncell_list(vals["errors"], lineno)
            out.append(TrialRecord(
                trial_index=int(vals["trial"]), p_index=int(vals["p_index"]),
                p=float(vals["p"]), seed=int(vals["seed"]),
                edge_count=int(vals["edges"]),
                complex_connected=opt_bool(vals["connected"]),
                empty_complex=opt_bool(vals["empty"]),
                clique_number=opt_int(vals["clique_number"]),
                neighborliness=opt_int(vals["neighborliness"]),
                closed_set_count=opt_int(vals["closed_sets"]),
                retract_dimension=opt_int(vals["retract_dim"]),
                homology_source=vals["homology_source"] or None,
                betti=betti, torsion_seen=opt_bool(vals["torsion_seen"]),
                certificates=(tuple(int(c) for c in certs)
                              if certs is not None else None),
                errors=tuple(errs) if errs is not None else ()))
        except ValueError as exc:
            raise FormatError(f"bad cell: {exc}", lineno) from None
    return out


def write_records(obj: Union[Sequence[TrialRecord], SurveySummary],
                  path: str, fmt: str = "jsonl") -> None:
    """Write trial records or a summary to disk.

    Records support ``jsonl`` (canonical, loss-free) and ``csv`` (flattened
    Betti columns).  A summary is written as one JSON document regardless
    of format.
    """
    if fmt not in ("jsonl", "csv"):
        raise FormatError(f"unknown format {fmt!r}; use jsonl or csv")
    if isinstance(obj, SurveySummary):
        text = json.dumps(obj.to_json_dict(), indent=2) + "\n"
    elif fmt == "jsonl":
        text = records_to_jsonl(obj)
    else:
        text = records_to_csv(obj)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def read_records(path: str, fmt: Optional[str] = None) -> list[TrialRecord]:
    """Read trial records back; format inferred from the suffix by default."""
    if fmt is None:
        fmt = "csv" if path.endswith(".csv") else "jsonl"
    if fmt not in ("jsonl", "csv"):
        raise FormatError(f"unknown format {fmt!r}; use jsonl or csv")
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return records_from_csv(text) if fmt == "csv" else records_from_jsonl(text)
