"""Small simple graphs stored as adjacency bitmasks.

Vertices are ``0..n-1`` with ``n <= 32``.  Every operation that removes a
vertex compacts the labels while keeping their relative order, so vertex
``w > v`` becomes ``w - 1`` after ``v`` is deleted or merged away.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator, Sequence

MAX_VERTICES = 32

CanonicalKey = str
"""graph6 text of the canonical relabelling; equal exactly for isomorphic graphs."""


class Graph6Error(ValueError):
    """Malformed graph6 input; ``offset`` is the index of the offending byte."""

    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


def _bit(v: int) -> int:
    return 1 << v


def _popcount(x: int) -> int:
    return x.bit_count()


def _iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """Immutable simple undirected graph."""

    __slots__ = ("n", "adj", "_hash")

    def __init__(self, n: int, adj: Sequence[int]) -> None:
        if not 0 <= n <= MAX_VERTICES:
            raise ValueError(f"vertex count {n} outside 0..{MAX_VERTICES}")
        if len(adj) != n:
            raise ValueError("adjacency list length does not match n")
        full = (1 << n) - 1
        for v, row in enumerate(adj):
            if row & ~full or row >> v & 1:
                raise ValueError(f"bad adjacency row for vertex {v}")
            for u in _iter_bits(row):
                if not adj[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")
        self.n = n
        self.adj = tuple(adj)
        self._hash = hash((n, self.adj))

    @classmethod
    def _trusted(cls, n: int, adj: tuple[int, ...]) -> "Graph":
        g = cls.__new__(cls)
        g.n = n
        g.adj = adj
        g._hash = hash((n, adj))
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range")
            adj[u] |= _bit(v)
            adj[v] |= _bit(u)
        return cls._trusted(n, tuple(adj))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls._trusted(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls._trusted(n, tuple(full ^ _bit(v) for v in range(n)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls.from_edges(n, ((i, (i + 1) % n) for i in range(n)))

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, ((i, i + 1) for i in range(n - 1)))

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for v in range(self.n) for u in _iter_bits(self.adj[v] & (_bit(v) - 1))]

    @property
    def m(self) -> int:
        return sum(_popcount(a) for a in self.adj) // 2

    def degree(self, v: int) -> int:
        return _popcount(self.adj[v])

    def degrees(self) -> list[int]:
        return [_popcount(a) for a in self.adj]

    def neighbours(self, v: int) -> list[int]:
        return list(_iter_bits(self.adj[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


# graph6 ---------------------------------------------------------------------

def parse_graph6(text: str | bytes) -> Graph:
    """Decode one graph6 record (an optional ``>>graph6<<`` header is allowed)."""
    data = text.encode("ascii", "replace") if isinstance(text, str) else bytes(text)
    data = data.rstrip(b"\r\n")
    start = 0
    if data.startswith(b">>graph6<<"):
        start = 10
    if len(data) <= start:
        raise Graph6Error("empty graph6 record", start)
    for i in range(start, len(data)):
        if not 63 <= data[i] <= 126:
            raise Graph6Error(f"byte {data[i]!r} outside the printable range 63..126", i)
    if data[start] == 126:
        raise Graph6Error(f"graphs with more than {MAX_VERTICES} vertices are not supported", start)
    n = data[start] - 63
    if n > MAX_VERTICES:
        raise Graph6Error(f"vertex count {n} exceeds {MAX_VERTICES}", start)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = data[start + 1:]
    if len(body) != nbytes:
        off = start + 1 + min(len(body), nbytes)
        raise Graph6Error(f"expected {nbytes} adjacency bytes for n={n}, found {len(body)}", off)
    adj = [0] * n
    idx = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[idx // 6] - 63
            if byte >> (5 - idx % 6) & 1:
                adj[i] |= _bit(j)
                adj[j] |= _bit(i)
            idx += 1
    if nbytes and nbits % 6:
        pad = (body[-1] - 63) & ((1 << (6 - nbits % 6)) - 1)
        if pad:
            raise Graph6Error("non-zero padding bits", start + nbytes)
    return Graph._trusted(n, tuple(adj))


def to_graph6(g: Graph) -> str:
    n = g.n
    out = [chr(n + 63)]
    acc = 0
    cnt = 0
    for j in range(1, n):
        aj = g.adj[j]
        for i in range(j):
            acc = acc << 1 | (aj >> i & 1)
            cnt += 1
            if cnt == 6:
                out.append(chr(acc + 63))
                acc = cnt = 0
    if cnt:
        out.append(chr((acc << (6 - cnt)) + 63))
    return "".join(out)


def read_graph6_file(path: str) -> Iterator[tuple[int, Graph]]:
    """Yield ``(line_number, graph)`` for each non-blank record of a file."""
    with open(path, "rb") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if line:
                yield lineno, parse_graph6(line)


# structural operations ------------------------------------------------------

def _compact_row(row: int, v: int) -> int:
    low = row & (_bit(v) - 1)
    return low | (row >> (v + 1)) << v


def delete_vertex(g: Graph, v: int) -> Graph:
    adj = tuple(_compact_row(g.adj[w], v) for w in range(g.n) if w != v)
    return Graph._trusted(g.n - 1, adj)


def delete_edge(g: Graph, u: int, v: int) -> Graph:
    if not g.has_edge(u, v):
        raise ValueError(f"({u}, {v}) is not an edge")
    adj = list(g.adj)
    adj[u] &= ~_bit(v)
    adj[v] &= ~_bit(u)
    return Graph._trusted(g.n, tuple(adj))


def add_edge(g: Graph, u: int, v: int) -> Graph:
    if u == v:
        raise ValueError("loops are not allowed")
    adj = list(g.adj)
    adj[u] |= _bit(v)
    adj[v] |= _bit(u)
    return Graph._trusted(g.n, tuple(adj))


def identify(g: Graph, u: int, v: int) -> Graph:
    """Merge ``v`` into ``u``; parallel edges collapse and the ``uv`` edge vanishes."""
    if u == v:
        raise ValueError("cannot identify a vertex with itself")
    adj = list(g.adj)
    bu, bv = _bit(u), _bit(v)
    for w in range(g.n):
        if adj[w] & bv:
            adj[w] = (adj[w] & ~bv) | bu
    adj[u] = (g.adj[u] | g.adj[v]) & ~(bu | bv)
    out = tuple(_compact_row(adj[w], v) for w in range(g.n) if w != v)
    return Graph._trusted(g.n - 1, out)


def contract_edge(g: Graph, u: int, v: int) -> Graph:
    if not g.has_edge(u, v):
        raise ValueError(f"({u}, {v}) is not an edge")
    return identify(g, u, v)


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    vs = sorted(set(vertices))
    pos = {v: i for i, v in enumerate(vs)}
    adj = []
    for v in vs:
        row = 0
        for u in _iter_bits(g.adj[v]):
            if u in pos:
                row |= _bit(pos[u])
        adj.append(row)
    return Graph._trusted(len(vs), tuple(adj))


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph._trusted(g.n, tuple(full & ~a & ~_bit(v) for v, a in enumerate(g.adj)))


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Graph in which old vertex ``v`` becomes ``perm[v]``."""
    adj = [0] * g.n
    for v, row in enumerate(g.adj):
        nr = 0
        for u in _iter_bits(row):
            nr |= _bit(perm[u])
        adj[perm[v]] = nr
    return Graph._trusted(g.n, tuple(adj))


def disjoint_union(*graphs: Graph) -> Graph:
    adj: list[int] = []
    off = 0
    for h in graphs:
        adj.extend(row << off for row in h.adj)
        off += h.n
    return Graph._trusted(off, tuple(adj))


def join(a: Graph, b: Graph) -> Graph:
    """Disjoint union plus every edge between the two sides."""
    u = disjoint_union(a, b)
    left = (1 << a.n) - 1
    right = ((1 << b.n) - 1) << a.n
    adj = [row | (right if v < a.n else left) for v, row in enumerate(u.adj)]
    return Graph._trusted(u.n, tuple(adj))


def component_masks(g: Graph) -> list[int]:
    seen = 0
    comps = []
    for s in range(g.n):
        if seen >> s & 1:
            continue
        comp = frontier = _bit(s)
        while frontier:
            nxt = 0
            for v in _iter_bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & ~comp
            comp |= nxt
        seen |= comp
        comps.append(comp)
    return comps


def components(g: Graph) -> list[Graph]:
    return [induced_subgraph(g, _iter_bits(c)) for c in component_masks(g)]


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(component_masks(g)) == 1


def is_complete(g: Graph) -> bool:
    full = (1 << g.n) - 1
    return all(row == full ^ _bit(v) for v, row in enumerate(g.adj))


# cliques and colourings -----------------------------------------------------

def _max_clique(adj: Sequence[int], cand: int, size: int, best: int, target: int | None) -> int:
    if not cand:
        return max(size, best)
    if size + _popcount(cand) <= best:
        return best
    # branch on candidates outside the neighbourhood of a pivot
    pivot = max(_iter_bits(cand), key=lambda v: _popcount(adj[v] & cand))
    for v in _iter_bits(cand & ~adj[pivot]):
        best = _max_clique(adj, cand & adj[v], size + 1, best, target)
        if target is not None and best >= target:
            return best
        cand &= ~_bit(v)
        if size + _popcount(cand) <= best:
            break
    return best


def clique_number(g: Graph) -> int:
    return _max_clique(g.adj, (1 << g.n) - 1, 0, 0, None)


def has_clique(g: Graph, k: int) -> bool:
    if k <= 0:
        return True
    return _max_clique(g.adj, (1 << g.n) - 1, 0, k - 1, k) >= k


def has_independent_set(g: Graph, k: int) -> bool:
    return has_clique(complement(g), k)


def find_colouring(g: Graph, k: int) -> list[int] | None:
    """A proper colouring with colours ``0..k-1``, or ``None`` if none exists.

    Exhaustive DSATUR-ordered backtracking; a fresh colour is only ever the
    smallest unused one, which removes colour-permutation symmetry.
    """
    n = g.n
    if n == 0:
        return []
    if k <= 0:
        return None
    adj = g.adj
    colour = [-1] * n
    classes = [0] * k

    def rec(done: int, used: int) -> bool:
        if done == n:
            return True
        best_v, best_key = -1, (-1, -1)
        for v in range(n):
            if colour[v] >= 0:
                continue
            sat = sum(1 for c in range(used) if adj[v] & classes[c])
            key = (sat, _popcount(adj[v]))
            if key > best_key:
                best_v, best_key = v, key
        v = best_v
        for c in range(min(used + 1, k)):
            if adj[v] & classes[c]:
                continue
            colour[v] = c
            classes[c] |= _bit(v)
            if rec(done + 1, max(used, c + 1)):
                return True
            classes[c] &= ~_bit(v)
            colour[v] = -1
        return False

    return colour if rec(0, 0) else None


def is_colourable(g: Graph, k: int) -> bool:
    return find_colouring(g, k) is not None


def greedy_colouring_size(g: Graph) -> int:
    """Colours used by a static DSATUR-free largest-first greedy pass."""
    order = sorted(range(g.n), key=lambda v: -g.degree(v))
    classes: list[int] = []
    for v in order:
        for i, cls in enumerate(classes):
            if not g.adj[v] & cls:
                classes[i] |= _bit(v)
                break
        else:
            classes.append(_bit(v))
    return len(classes)


def chromatic_number(g: Graph) -> int:
    """Exact chromatic number by branch and bound between clique and greedy bounds."""
    if g.n == 0:
        return 0
    lo = clique_number(g)
    hi = greedy_colouring_size(g)
    for k in range(lo, hi):
        if is_colourable(g, k):
            return k
    return hi


def is_vertex_critical(g: Graph, k: int) -> bool:
    if chromatic_number(g) != k:
        return False
    return all(is_colourable(delete_vertex(g, v), k - 1) for v in range(g.n))


def is_edge_critical(g: Graph, k: int) -> bool:
    """``chi(G) = k`` and every proper subgraph is (k-1)-colourable."""
    if chromatic_number(g) != k:
        return False
    if g.n > 1 and any(a == 0 for a in g.adj):
        return False
    return all(is_colourable(delete_edge(g, u, v), k - 1) for u, v in g.edges())


# canonical form -------------------------------------------------------------

def _refine(adj: Sequence[int], cells: list[list[int]]) -> list[list[int]]:
    """Coarsest equitable refinement of an ordered partition.

    Cells split by their neighbour counts into every current cell, sub-cells
    ordered by that count vector, until nothing splits.  All decisions depend
    only on the ordered partition, never on vertex names.
    """
    while True:
        masks = []
        for c in cells:
            w = 0
            for v in c:
                w |= 1 << v
            masks.append(w)
        out: list[list[int]] = []
        split = False
        for c in cells:
            if len(c) == 1:
                out.append(c)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in c:
                a = adj[v]
                groups.setdefault(tuple([(a & w).bit_count() for w in masks]), []).append(v)
            if len(groups) == 1:
                out.append(c)
            else:
                split = True
                out.extend(groups[key] for key in sorted(groups))
        if not split:
            return out
        cells = out


def _orbit_roots(cands: list[int], autos: list[tuple[int, ...]], prefix: list[int]) -> dict[int, int]:
    """Orbit representative of each candidate under automorphisms fixing ``prefix``."""
    parent = {v: v for v in cands}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for gamma in autos:
        if any(gamma[p] != p for p in prefix):
            continue
        for v in cands:
            w = gamma[v]
            if w in parent:
                a, b = find(v), find(w)
                if a != b:
                    parent[max(a, b)] = min(a, b)
    return {v: find(v) for v in cands}


def canonical_labelling(g: Graph) -> tuple[int, ...]:
    """A permutation ``perm`` with ``relabel(g, perm)`` canonical.

    Individualisation-refinement search over equitable partitions, keeping
    the lexicographically smallest adjacency certificate.  Automorphisms
    found along the way (plus twin transpositions) prune sibling branches.
    """
    n = g.n
    adj = g.adj
    if n <= 1:
        return tuple(range(n))
    autos: list[tuple[int, ...]] = []
    for u, v in combinations(range(n), 2):
        if adj[u] & ~_bit(v) == adj[v] & ~_bit(u):
            t = list(range(n))
            t[u], t[v] = v, u
            autos.append(tuple(t))
    best: list = [None, None]

    def certificate(order: list[int]) -> tuple[int, ...]:
        pos = [0] * n
        for i, v in enumerate(order):
            pos[v] = i
        rows = []
        for v in order:
            r = 0
            for u in _iter_bits(adj[v]):
                r |= _bit(pos[u])
            rows.append(r)
        return tuple(rows)

    def search(cells: list[list[int]], prefix: list[int]) -> None:
        cells = _refine(adj, cells)
        if len(cells) == n:
            order = [c[0] for c in cells]
            cert = certificate(order)
            if best[0] is None or cert < best[0]:
                best[0], best[1] = cert, order
            elif cert == best[0]:
                gamma = [0] * n
                for a, b in zip(best[1], order):
                    gamma[a] = b
                autos.append(tuple(gamma))
            return
        idx = min((i for i, c in enumerate(cells) if len(c) > 1), key=lambda i: (len(cells[i]), i))
        target = cells[idx]
        tried: list[int] = []
        for v in sorted(target):
            if tried:
                roots = _orbit_roots(target, autos, prefix)
                if roots[v] in {roots[t] for t in tried}:
                    continue
            rest = [w for w in target if w != v]
            search(cells[:idx] + [[v], rest] + cells[idx + 1:], prefix + [v])
            tried.append(v)

    search([list(range(n))], [])
    perm = [0] * n
    for i, v in enumerate(best[1]):
        perm[v] = i
    return tuple(perm)


def canonical_form(g: Graph) -> Graph:
    return relabel(g, canonical_labelling(g))


def canonical_key(g: Graph) -> CanonicalKey:
    return to_graph6(canonical_form(g))


def is_isomorphic(a: Graph, b: Graph) -> bool:
    return a.n == b.n and a.m == b.m and canonical_key(a) == canonical_key(b)


def enumerate_unlabeled(n: int) -> list[Graph]:
    """One canonical representative per isomorphism class on ``n`` vertices.

    Graphs on ``n`` vertices are grown from those on ``n - 1`` by adding a
    vertex with every possible neighbourhood, then deduplicated by key.
    Supported for ``n <= 7``.
    """
    if not 0 <= n <= 7:
        raise ValueError("enumerate_unlabeled supports 0 <= n <= 7")
    level: dict[CanonicalKey, Graph] = {to_graph6(Graph.empty(0)): Graph.empty(0)}
    for size in range(1, n + 1):
        nxt: dict[CanonicalKey, Graph] = {}
        for h in level.values():
            for nb in range(1 << (size - 1)):
                adj = [row | (_bit(size - 1) if nb >> v & 1 else 0) for v, row in enumerate(h.adj)]
                adj.append(nb)
                cf = canonical_form(Graph._trusted(size, tuple(adj)))
                nxt.setdefault(to_graph6(cf), cf)
        level = nxt
    return sorted(level.values(), key=lambda h: (h.m, to_graph6(h)))
