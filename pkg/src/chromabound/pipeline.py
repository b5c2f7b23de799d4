"""Batch verification of graph catalogs and the supporting checks."""

from __future__ import annotations

import logging
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Sequence

from .chromatic import PolyCache, compare_to_bound, q_poly
from .graph import (
    Graph,
    Graph6Error,
    chromatic_number,
    enumerate_unlabeled,
    has_clique,
    has_independent_set,
    is_connected,
    is_edge_critical,
    is_vertex_critical,
    parse_graph6,
    to_graph6,
)
from .partitions import independent_partitions, single_vertex_bound
from .poly import IntPoly, bound_poly, format_poly, ll_leq
from .reference import CHAIN_COFACTORS, CHAIN_STEPS, CHAIN_TARGET

log = logging.getLogger(__name__)

FILTERS = ("5-edge-critical", "ramsey44", "none")
DEFAULT_SAMPLE = 5000


# manifest -------------------------------------------------------------------

@dataclass(frozen=True)
class CatalogSpec:
    path: str
    expected_filter: str = "none"
    expected_count: int | None = None

    def __post_init__(self) -> None:
        if self.expected_filter not in FILTERS:
            raise ValueError(f"unknown filter {self.expected_filter!r}; choose from {', '.join(FILTERS)}")


def read_manifest(path: str) -> list[CatalogSpec]:
    """Parse ``path TAB filter TAB expected_count`` lines; ``#`` starts a comment.

    Relative catalog paths are resolved against the manifest's directory.
    """
    base = os.path.dirname(os.path.abspath(path))
    specs = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            fields = line.split("\t")
            if len(fields) not in (2, 3):
                raise ValueError(f"{path}:{lineno}: expected 2 or 3 tab-separated fields")
            cat = fields[0] if os.path.isabs(fields[0]) else os.path.join(base, fields[0])
            count = int(fields[2]) if len(fields) == 3 and fields[2].strip() else None
            specs.append(CatalogSpec(cat, fields[1].strip(), count))
    return specs


# filters --------------------------------------------------------------------

def ramsey44_filter(g: Graph) -> bool:
    """No clique and no independent set of size 4."""
    return not has_clique(g, 4) and not has_independent_set(g, 4)


def passes_filter(g: Graph, name: str) -> bool:
    if name == "none":
        return is_connected(g) and chromatic_number(g) == 5
    if name == "5-edge-critical":
        return is_edge_critical(g, 5)
    if name == "ramsey44":
        return ramsey44_filter(g) and is_edge_critical(g, 5)
    raise ValueError(f"unknown filter {name!r}")


# reports --------------------------------------------------------------------

@dataclass
class CatalogReport:
    source: str
    filter: str
    parsed: int = 0
    parse_errors: int = 0
    filtered: int = 0
    rejected: int = 0
    expected_count: int | None = None
    verified: int = 0
    sampled: bool = False
    verified_strict: int = 0
    equalities: int = 0
    pointwise_only: list[str] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)
    by_order: dict[int, int] = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def count_ok(self) -> bool:
        return self.expected_count is None or self.expected_count == self.filtered

    @property
    def ok(self) -> bool:
        return not self.violations and not self.pointwise_only and self.count_ok

    def to_dict(self) -> dict:
        d = asdict(self)
        d["count_ok"] = self.count_ok
        d["ok"] = self.ok
        d["by_order"] = {str(k): v for k, v in sorted(self.by_order.items())}
        return d


# worker functions (module level so they pickle) ------------------------------

_worker_cache: PolyCache | None = None


def _init_worker(cache_path: str | None) -> None:
    global _worker_cache
    _worker_cache = PolyCache(cache_path, audit=0)


def _filter_item(item: tuple[str, str]) -> bool:
    g6, name = item
    return passes_filter(parse_graph6(g6), name)


def _verify_item(item: tuple[str, int]) -> tuple[str, str | None, dict[str, tuple[int, ...]]]:
    """Verdict for one graph plus the cache entries computed along the way."""
    global _worker_cache
    g6, shift = item
    if _worker_cache is None:
        _worker_cache = PolyCache()
    g = parse_graph6(g6)
    v = compare_to_bound(q_poly(g, _worker_cache), 5, g.n, shift)
    fresh = {k: p.coeffs for k, p in _worker_cache.take_pending().items()}
    return v.status, v.certificate, fresh


def _map(fn: Callable, items: Sequence, jobs: int, cache_path: str | None = None) -> list:
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    chunk = max(1, len(items) // (jobs * 8))
    with ProcessPoolExecutor(max_workers=jobs, initializer=_init_worker, initargs=(cache_path,)) as ex:
        return list(ex.map(fn, items, chunksize=chunk))


def stratified_sample(items: Sequence[tuple[int, str]], size: int, seed: int) -> list[int]:
    """Indices of a sample of ``size`` items, allocated to each order in proportion.

    ``items`` holds ``(order, payload)``; allocation uses largest remainders,
    and indices come back sorted so downstream output is stable.
    """
    if size >= len(items):
        return list(range(len(items)))
    strata: dict[int, list[int]] = {}
    for i, (n, _) in enumerate(items):
        strata.setdefault(n, []).append(i)
    total = len(items)
    quotas = {n: size * len(ix) / total for n, ix in strata.items()}
    alloc = {n: int(q) for n, q in quotas.items()}
    left = size - sum(alloc.values())
    for n in sorted(quotas, key=lambda n: (-(quotas[n] - alloc[n]), n))[:left]:
        alloc[n] += 1
    rng = random.Random(seed)
    chosen: list[int] = []
    for n in sorted(strata):
        chosen.extend(rng.sample(strata[n], alloc[n]))
    return sorted(chosen)


def verify_graphs(
    graphs: Iterable[Graph],
    report: CatalogReport,
    *,
    shift: int = 4,
    jobs: int = 1,
    cache: PolyCache | None = None,
) -> CatalogReport:
    """Compare each graph's ``Q`` with ``bound_poly(5, n)``; graphs must already be filtered."""
    gs = list(graphs)
    codes = [to_graph6(g) for g in gs]
    cache = cache if cache is not None else PolyCache()
    if jobs <= 1:
        results = [
            (v.status, v.certificate)
            for v in (compare_to_bound(q_poly(g, cache), 5, g.n, shift) for g in gs)
        ]
    else:
        results = []
        for status, cert, fresh in _map(_verify_item, [(c, shift) for c in codes], jobs, cache.path):
            cache.merge({k: IntPoly(c) for k, c in fresh.items()})
            results.append((status, cert))
    for code, g, (status, cert) in zip(codes, gs, results):
        report.verified += 1
        report.by_order[g.n] = report.by_order.get(g.n, 0) + 1
        if status == "equality":
            report.equalities += 1
        elif status == "violation":
            report.violations.append(code)
        elif cert == "ll":
            report.verified_strict += 1
        else:
            report.pointwise_only.append(code)
    return report


def verify_catalog(
    spec: CatalogSpec,
    *,
    jobs: int = 1,
    cache: PolyCache | None = None,
    sample: int = DEFAULT_SAMPLE,
    full: bool = False,
    seed: int = 0,
) -> CatalogReport:
    """Filter a graph6 catalog and check the survivors against the bound.

    Counting always covers the whole file.  Unless ``full`` is set, the
    bound check runs on a stratified sample of ``sample`` graphs.  The
    shifted order with shift 4 must certify every strict case.
    """
    start = time.perf_counter()
    report = CatalogReport(spec.path, spec.expected_filter, expected_count=spec.expected_count)
    codes: list[str] = []
    with open(spec.path, "rb") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line:
                continue
            try:
                g = parse_graph6(line)
            except Graph6Error as exc:
                report.parse_errors += 1
                log.warning("%s:%d: %s", spec.path, lineno, exc)
                continue
            report.parsed += 1
            codes.append(to_graph6(g))
    keep = _map(_filter_item, [(c, spec.expected_filter) for c in codes], jobs)
    survivors = [c for c, k in zip(codes, keep) if k]
    report.filtered = len(survivors)
    report.rejected = report.parsed - report.filtered
    if not report.count_ok:
        log.warning("%s: expected %s graphs after filtering, found %d", spec.path, spec.expected_count, report.filtered)
    pool = [(parse_graph6(c).n, c) for c in survivors]
    idx = list(range(len(pool))) if full else stratified_sample(pool, sample, seed)
    report.sampled = len(idx) < len(pool)
    verify_graphs((parse_graph6(pool[i][1]) for i in idx), report, jobs=jobs, cache=cache)
    report.wall_time = time.perf_counter() - start
    return report


# theorem chain --------------------------------------------------------------

@dataclass(frozen=True)
class ChainStep:
    index: int
    b_exponent: int
    r: int
    n_r: int
    qprime: IntPoly
    result: IntPoly
    expected: IntPoly

    @property
    def ok(self) -> bool:
        return self.result == self.expected


@dataclass
class ChainTranscript:
    steps: list[ChainStep]
    final: IntPoly
    target: IntPoly
    final_ok: bool
    lines: list[str]

    @property
    def ok(self) -> bool:
        return self.final_ok and all(s.ok for s in self.steps)


class ChainMismatchError(AssertionError):
    pass


def replay_theorem_chain(d: int = 4, check: bool = True) -> ChainTranscript:
    """Replay the four single-vertex steps for a degree-four vertex set.

    Polynomials are cofactors of ``Q_0``.  Step ``i`` uses ``B = y^e Q_0``;
    the starting ``Q'`` is ``y^2 Q_0``, the degree-four bound two orders up.
    ``N_r`` is recounted from the partitions of an independent 4-set.
    """
    y2 = IntPoly.monomial(2)
    for m in range(4, 12):
        if bound_poly(4, m + 2) != y2 * bound_poly(4, m):
            raise ChainMismatchError("bound_poly(4, m + 2) is not y^2 bound_poly(4, m)")
    nbhd = Graph.empty(d)
    qprime = y2
    lines = ["cofactors of Q_0; starting Q' = y^2"]
    steps: list[ChainStep] = []
    for i, ((e, r, n_r), want) in enumerate(zip(CHAIN_STEPS, CHAIN_COFACTORS), 1):
        counted = len(independent_partitions(nbhd, range(d), r))
        if counted != n_r:
            raise ChainMismatchError(f"step {i}: found {counted} partitions into {r} sets, expected {n_r}")
        result = single_vertex_bound(qprime, n_r, r, d, IntPoly.monomial(e))
        step = ChainStep(i, e, r, n_r, qprime, result, IntPoly(want))
        steps.append(step)
        lines.append(
            f"step {i}: B = y^{e} Q_0, r = {r}, N_r = {n_r}: "
            f"(y - {r})({format_poly(qprime)}) + {format_poly(IntPoly.monomial(e - (d - r), n_r))}"
            f" = {format_poly(result)}"
            + ("" if step.ok else f"   MISMATCH, expected {format_poly(step.expected)}")
        )
        if check and not step.ok:
            raise ChainMismatchError(lines[-1])
        qprime = result
    target = IntPoly(CHAIN_TARGET)
    final_ok = ll_leq(qprime, target, 4)
    lines.append(f"final: {format_poly(qprime)} << {format_poly(target)}: {final_ok}")
    if check and not final_ok:
        raise ChainMismatchError(lines[-1])
    return ChainTranscript(steps, qprime, target, final_ok, lines)


# constructions and fallback searches ----------------------------------------

def extremal_family(n: int, seed: int) -> Graph:
    """``K_5`` with ``n - 5`` further vertices, each joined to one uniformly chosen earlier vertex."""
    if n < 5:
        raise ValueError("need n >= 5")
    rng = random.Random(seed)
    edges = [(a, b) for a in range(5) for b in range(a + 1, 5)]
    for v in range(5, n):
        edges.append((rng.randrange(v), v))
    return Graph.from_edges(n, edges)


def random_graph(n: int, rng: random.Random, p_range: tuple[float, float] = (0.35, 0.95)) -> Graph:
    p = rng.uniform(*p_range)
    return Graph.from_edges(n, [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < p])


def random_critical_search(
    n: int, trials: int, seed: int, cache: PolyCache | None = None, jobs: int = 1
) -> CatalogReport:
    """Random graphs of order ``n`` with edge density drawn per trial; connected 5-chromatic ones are checked.

    Strict verdicts may rest on point checks here, since the shifted order
    is only a sufficient test.
    """
    if not 6 <= n <= 11:
        raise ValueError("random search supports 6 <= n <= 11")
    start = time.perf_counter()
    rng = random.Random(seed)
    report = CatalogReport(f"random:n={n},trials={trials},seed={seed}", "none")
    keep: list[Graph] = []
    for _ in range(trials):
        g = random_graph(n, rng)
        report.parsed += 1
        if passes_filter(g, "none"):
            keep.append(g)
    report.filtered = len(keep)
    report.rejected = report.parsed - report.filtered
    cache = cache if cache is not None else PolyCache()
    for g in keep:
        v = compare_to_bound(q_poly(g, cache), 5, g.n)
        report.verified += 1
        report.by_order[n] = report.by_order.get(n, 0) + 1
        if v.status == "equality":
            report.equalities += 1
        elif v.status == "violation":
            report.violations.append(to_graph6(g))
        else:
            report.verified_strict += 1
    report.wall_time = time.perf_counter() - start
    return report


@dataclass
class SliceResult:
    n: int
    status: str
    graphs: list[str] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)


@dataclass
class SmallCriticalReport:
    criticality: str
    slices: list[SliceResult]

    @property
    def ok(self) -> bool:
        return all(not s.violations for s in self.slices)

    def to_dict(self) -> dict:
        return {"criticality": self.criticality, "ok": self.ok, "slices": [asdict(s) for s in self.slices]}


def small_critical_check(
    max_n: int = 7, criticality: str = "vertex", catalog: str | None = None
) -> SmallCriticalReport:
    """Every 5-critical graph of order at most ``max_n`` meets the bound.

    Orders up to 7 come from exhaustive enumeration; order 8 needs a graph6
    ``catalog`` of 5-critical graphs and is marked skipped without one.
    """
    test = {"vertex": is_vertex_critical, "edge": is_edge_critical}[criticality]
    slices = []
    external: dict[int, list[Graph]] = {}
    if catalog is not None:
        with open(catalog, "rb") as fh:
            for line in fh:
                if line.strip():
                    g = parse_graph6(line.strip())
                    external.setdefault(g.n, []).append(g)
    for n in range(5, max_n + 1):
        if n <= 7:
            found = [g for g in enumerate_unlabeled(n) if test(g, 5)]
        elif n in external:
            found = [g for g in external[n] if test(g, 5)]
        else:
            slices.append(SliceResult(n, "skipped: data unavailable"))
            continue
        res = SliceResult(n, "checked")
        for g in found:
            code = to_graph6(g)
            res.graphs.append(code)
            if compare_to_bound(q_poly(g), 5, n).status == "violation":
                res.violations.append(code)
        slices.append(res)
    return SmallCriticalReport(criticality, slices)
