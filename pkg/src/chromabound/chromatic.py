"""Shifted chromatic polynomials ``Q_G(y) = P_G(y + 1)`` and the extremal bound check."""

from __future__ import annotations

import logging
import os
import random
import threading
from dataclasses import dataclass, field
from typing import Iterable

from .graph import (
    CanonicalKey,
    Graph,
    _bit,
    add_edge,
    _iter_bits,
    _popcount,
    canonical_form,
    chromatic_number,
    component_masks,
    delete_edge,
    delete_vertex,
    identify,
    induced_subgraph,
    is_connected,
    parse_graph6,
    to_graph6,
)
from .poly import ONE, IntPoly, bound_poly, ll_leq

log = logging.getLogger(__name__)

Y_PLUS_1 = IntPoly((1, 1))
Y = IntPoly((0, 1))

# graphs at or below this size are cheap enough that canonicalising them
# costs more than recomputing
_MEMO_MIN_VERTICES = 6


class CacheCorruptionError(RuntimeError):
    """A cached polynomial disagreed with a fresh computation."""


class PolyCache:
    """Memo table from canonical graph6 keys to ``Q`` polynomials.

    When ``path`` is given, existing records are loaded (bad lines are
    skipped and counted) and a few entries are recomputed from scratch to
    catch a stale or tampered file.  New entries are appended on ``flush``.
    """

    def __init__(self, path: str | os.PathLike | None = None, audit: int = 3, seed: int = 0) -> None:
        self._data: dict[CanonicalKey, IntPoly] = {}
        self._pending: dict[CanonicalKey, IntPoly] = {}
        self._lock = threading.Lock()
        self.path = os.fspath(path) if path is not None else None
        self.corrupt_lines = 0
        self.hits = 0
        self.misses = 0
        if self.path and os.path.exists(self.path):
            self._load(audit, seed)

    def _load(self, audit: int, seed: int) -> None:
        assert self.path is not None
        with open(self.path, encoding="ascii", errors="replace") as fh:
            for line in fh:
                line = line.rstrip("\n")
                if not line:
                    continue
                try:
                    key, coeffs = line.split("\t")
                    g = parse_graph6(key)
                    p = IntPoly(int(c) for c in coeffs.split(","))
                    if p.degree != g.n:
                        raise ValueError("degree does not match vertex count")
                except (ValueError, TypeError):
                    self.corrupt_lines += 1
                    continue
                self._data[key] = p
        if self.corrupt_lines:
            log.warning("skipped %d corrupt cache lines in %s", self.corrupt_lines, self.path)
        keys = sorted(self._data)
        for key in random.Random(seed).sample(keys, min(audit, len(keys))):
            fresh = q_poly(parse_graph6(key), PolyCache())
            if fresh != self._data[key]:
                raise CacheCorruptionError(f"cache entry {key} disagrees with a fresh computation")

    def get(self, key: CanonicalKey) -> IntPoly | None:
        p = self._data.get(key)
        if p is None:
            self.misses += 1
        else:
            self.hits += 1
        return p

    def put(self, key: CanonicalKey, p: IntPoly) -> None:
        with self._lock:
            if key not in self._data:
                self._pending[key] = p
            self._data[key] = p

    def merge(self, entries: dict[CanonicalKey, IntPoly]) -> None:
        """Fold in entries computed elsewhere, e.g. by a worker process."""
        for key, p in entries.items():
            self.put(key, p)

    def take_pending(self) -> dict[CanonicalKey, IntPoly]:
        with self._lock:
            out, self._pending = self._pending, {}
        return out

    def flush(self) -> int:
        """Append unsaved entries to the backing file; returns how many."""
        pending = self.take_pending()
        if not self.path or not pending:
            return 0
        with open(self.path, "a", encoding="ascii") as fh:
            for key in sorted(pending):
                fh.write(f"{key}\t{','.join(str(c) for c in pending[key].coeffs)}\n")
        return len(pending)

    def __len__(self) -> int:
        return len(self._data)

    def __contains__(self, key: object) -> bool:
        return key in self._data


def clique_q(n: int) -> IntPoly:
    """``(y+1) y (y-1) ... (y-n+2)``."""
    return IntPoly.from_roots(range(-1, n - 1))


def _is_clique_mask(adj: tuple[int, ...], mask: int) -> bool:
    return all((adj[v] | _bit(v)) & mask == mask for v in _iter_bits(mask))


def _branch_edge(g: Graph) -> tuple[int, int]:
    """Edge whose endpoints share the most neighbours; ties go to the first in edge order."""
    adj = g.adj
    best, best_score = (-1, -1), -1
    for v in range(g.n):
        for u in _iter_bits(adj[v] & (_bit(v) - 1)):
            score = _popcount(adj[u] & adj[v])
            if score > best_score:
                best, best_score = (u, v), score
    return best


def _branch_non_edge(g: Graph) -> tuple[int, int]:
    """Non-adjacent pair sharing the most neighbours; ties go to the first pair."""
    adj = g.adj
    full = (1 << g.n) - 1
    best, best_score = (-1, -1), -1
    for v in range(g.n):
        for u in _iter_bits(full & ~adj[v] & (_bit(v) - 1)):
            score = _popcount(adj[u] & adj[v])
            if score > best_score:
                best, best_score = (u, v), score
    return best


DENSE_ADDITION = True


def q_poly(g: Graph, cache: PolyCache | None = None) -> IntPoly:
    """Exact shifted chromatic polynomial by deletion-contraction.

    Before branching: components multiply; a vertex whose neighbourhood is a
    clique of size ``d`` contributes ``y + 1 - d`` (this covers isolated and
    pendant vertices); cliques use the closed form.  Intermediate graphs are
    memoised on their canonical key.
    """
    if cache is None:
        cache = PolyCache()
    return _q(g, cache)


def _q(g: Graph, cache: PolyCache) -> IntPoly:
    n = g.n
    if n == 0:
        return ONE
    factor = ONE
    # peel simplicial vertices, which include isolated and pendant ones
    while True:
        adj = g.adj
        for v in range(g.n):
            nb = adj[v]
            if _is_clique_mask(adj, nb):
                factor = factor * IntPoly((1 - _popcount(nb), 1))
                g = delete_vertex(g, v)
                break
        else:
            break
        if g.n == 0:
            return factor
    comps = component_masks(g)
    if len(comps) > 1:
        for c in comps:
            factor = factor * _q(induced_subgraph(g, _iter_bits(c)), cache)
        return factor
    if g.m == g.n * (g.n - 1) // 2:
        return factor * clique_q(g.n)
    key = None
    if g.n >= _MEMO_MIN_VERTICES:
        cf = canonical_form(g)
        key = to_graph6(cf)
        hit = cache.get(key)
        if hit is not None:
            return factor * hit
        g = cf
    m = g.m
    if DENSE_ADDITION and 2 * m > g.n * (g.n - 1) // 2:
        # dense: Q(G) = Q(G + uv) + Q(G / uv) on a non-edge, heading towards cliques
        u, v = _branch_non_edge(g)
        result = _q(add_edge(g, u, v), cache) + _q(identify(g, u, v), cache)
    else:
        u, v = _branch_edge(g)
        result = _q(delete_edge(g, u, v), cache) - _q(identify(g, u, v), cache)
    if key is not None:
        cache.put(key, result)
    return factor * result


def independent_partition_counts(g: Graph) -> list[int]:
    """``a[r]`` = number of partitions of ``V(G)`` into ``r`` non-empty independent sets.

    Subset dynamic programme over ``3^n`` pairs: the block containing the
    lowest remaining vertex is chosen first, so each partition is counted
    once.
    """
    n = g.n
    full = (1 << n) - 1
    indep = [True] * (1 << n)
    for s in range(1, 1 << n):
        v = (s & -s).bit_length() - 1
        rest = s & ~_bit(v)
        indep[s] = indep[rest] and not g.adj[v] & rest
    layer = {0: 1}
    counts = [1 if n == 0 else 0]
    for _ in range(n):
        nxt: dict[int, int] = {}
        for used, ways in layer.items():
            free = full & ~used
            if not free:
                continue
            low = free & -free
            others = free & ~low
            sub = others
            while True:
                block = sub | low
                if indep[block]:
                    key = used | block
                    nxt[key] = nxt.get(key, 0) + ways
                if not sub:
                    break
                sub = (sub - 1) & others
        counts.append(nxt.get(full, 0))
        layer = nxt
    return counts


def q_poly_from_partitions(g: Graph) -> IntPoly:
    """``Q`` as ``sum_r a_r (y+1) y ... (y-r+2)``, a route independent of deletion-contraction."""
    if g.n > 12:
        raise ValueError("partition expansion limited to 12 vertices")
    total = IntPoly(())
    for r, a in enumerate(independent_partition_counts(g)):
        if a:
            total = total + clique_q(r) * a
    return total


def count_colourings_bruteforce(g: Graph, x: int) -> int:
    """Count proper ``x``-colourings by exhaustive backtracking.

    Deliberately naive: no symmetry breaking and no decomposition.
    Refuses ``n > 10`` or ``x > 8``.
    """
    if g.n > 10 or x > 8:
        raise ValueError(f"brute force limited to n <= 10 and x <= 8, got n={g.n}, x={x}")
    if x < 0:
        raise ValueError("negative colour count")
    n = g.n
    earlier = [list(_iter_bits(g.adj[v] & (_bit(v) - 1))) for v in range(n)]
    colour = [0] * n

    def rec(v: int) -> int:
        if v == n:
            return 1
        used = {colour[u] for u in earlier[v]}
        total = 0
        for c in range(x):
            if c not in used:
                colour[v] = c
                total += rec(v + 1)
        return total

    return rec(0)


class PreconditionError(ValueError):
    """The input graph does not satisfy an operation's precondition."""


@dataclass(frozen=True)
class BoundVerdict:
    """Comparison of ``Q_G`` with ``bound_poly(k, n)``.

    ``certificate`` is ``identical``, ``ll`` (shifted coefficients) or
    ``pointwise``; pointwise verdicts cover only ``checked_range``.
    """

    status: str
    certificate: str | None
    k: int
    shift: int
    q: IntPoly
    bound: IntPoly
    checked_range: tuple[int, int] | None = None
    witness: int | None = None
    witnesses: tuple[int, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return self.status != "violation"


def compare_to_bound(q: IntPoly, k: int, n: int, shift: int | None = None) -> BoundVerdict:
    """Verdict for a precomputed ``Q`` against the ``k``-chromatic bound."""
    bound = bound_poly(k, n)
    s = k if shift is None else shift
    if q == bound:
        return BoundVerdict("equality", "identical", k, s, q, bound)
    if ll_leq(q, bound, s):
        return BoundVerdict("strict", "ll", k, s, q, bound)
    lo, hi = k, k + max(q.degree, bound.degree) + 1
    bad = tuple(y for y in range(lo, hi + 1) if q(y) > bound(y))
    if bad:
        return BoundVerdict("violation", None, k, s, q, bound, (lo, hi), bad[0], bad)
    return BoundVerdict("strict", "pointwise", k, s, q, bound, (lo, hi))


def verify_bound(g: Graph, k: int, cache: PolyCache | None = None, shift: int | None = None) -> BoundVerdict:
    """Check ``Q_G`` against ``bound_poly(k, n)`` for a connected ``k``-chromatic ``G``.

    The shifted order uses ``shift`` (default ``k``); when it fails, values
    at the integers ``k .. k + deg + 1`` decide between a pointwise strict
    verdict and a violation.
    """
    if not is_connected(g):
        raise PreconditionError("graph is not connected")
    chi = chromatic_number(g)
    if chi != k:
        raise PreconditionError(f"chromatic number is {chi}, expected {k}")
    return compare_to_bound(q_poly(g, cache), k, g.n, shift)


def q_poly_many(graphs: Iterable[Graph], cache: PolyCache | None = None) -> list[IntPoly]:
    cache = cache if cache is not None else PolyCache()
    return [q_poly(g, cache) for g in graphs]
