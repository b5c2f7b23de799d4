"""Partitions of a vertex set into independent sets, and the single-vertex bound."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .graph import Graph, _bit, _iter_bits
from .poly import IntPoly


def _as_mask(vertices: Iterable[int] | int) -> int:
    if isinstance(vertices, int):
        return vertices
    m = 0
    for v in vertices:
        m |= _bit(v)
    return m


@dataclass(frozen=True)
class IndepPartition:
    """Disjoint non-empty vertex masks covering ``ground``, sorted by least element."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        seen = 0
        for p in self.parts:
            if not p:
                raise ValueError("empty part")
            if seen & p:
                raise ValueError("parts overlap")
            seen |= p
        lows = [p & -p for p in self.parts]
        if lows != sorted(lows):
            raise ValueError("parts must be ordered by their smallest vertex")

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]]) -> "IndepPartition":
        masks = [_as_mask(b) for b in blocks]
        return cls(tuple(sorted(masks, key=lambda m: m & -m)))

    @property
    def ground(self) -> int:
        out = 0
        for p in self.parts:
            out |= p
        return out

    def __len__(self) -> int:
        return len(self.parts)

    def blocks(self) -> list[list[int]]:
        return [list(_iter_bits(p)) for p in self.parts]

    def is_independent_in(self, g: Graph) -> bool:
        return all(not g.adj[v] & p for p in self.parts for v in _iter_bits(p))

    def label(self, names: str = "abcdefghijklmnopqrstuvwxyz") -> str:
        """Report form such as ``ab|c|d``."""
        return "|".join("".join(names[v] for v in _iter_bits(p)) for p in self.parts)


def _rgs_partitions(g: Graph, verts: list[int], r: int) -> Iterator[list[int]]:
    """Restricted growth strings over ``verts`` with exactly ``r`` independent blocks."""
    n = len(verts)
    blocks: list[int] = []

    def rec(i: int) -> Iterator[list[int]]:
        if n - i < r - len(blocks):
            return
        if i == n:
            if len(blocks) == r:
                yield list(blocks)
            return
        v = verts[i]
        nb = g.adj[v]
        for j in range(len(blocks)):
            if not blocks[j] & nb:
                blocks[j] |= _bit(v)
                yield from rec(i + 1)
                blocks[j] &= ~_bit(v)
        if len(blocks) < r:
            blocks.append(_bit(v))
            yield from rec(i + 1)
            blocks.pop()

    yield from rec(0)


def independent_partitions(g: Graph, U: Iterable[int] | int, r: int) -> list[IndepPartition]:
    """All partitions of ``U`` into exactly ``r`` non-empty independent sets."""
    verts = sorted(_iter_bits(_as_mask(U)))
    if not 1 <= r <= len(verts):
        raise ValueError(f"need 1 <= r <= |U| = {len(verts)}, got r={r}")
    return [IndepPartition(tuple(b)) for b in _rgs_partitions(g, verts, r)]


def partition_counts(g: Graph, U: Iterable[int] | int) -> dict[int, int]:
    """``{r: N_r}`` for ``r = 1..|U|``."""
    size = len(list(_iter_bits(_as_mask(U))))
    return {r: len(independent_partitions(g, U, r)) for r in range(1, size + 1)}


def refines(p: IndepPartition, q: IndepPartition) -> bool:
    """True iff every part of ``p`` lies inside some part of ``q``."""
    if p.ground != q.ground:
        raise ValueError("partitions are over different ground sets")
    return all(any(a & ~b == 0 for b in q.parts) for a in p.parts)


def single_vertex_bound(Qprime: IntPoly, Nr: int, r: int, d: int, B: IntPoly) -> IntPoly:
    """``(y - r) Q' + N_r B / y^(d - r)``, with the division checked to be exact."""
    if not 1 <= r <= d - 1:
        raise ValueError(f"need 1 <= r <= d - 1, got r={r}, d={d}")
    return IntPoly.linear(r) * Qprime + B.divide_by_power_of_y(d - r) * Nr
